use serde::Serialize;

use crate::rational::{log2, Rational};
use crate::werner::Dimension;

/// How `ζ` is obtained for the cost and relative-entropy bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaMode {
    /// Exact optimum of the symmetry-reduced LP.
    Lp,
    /// The closed-form dual point, `ζ ≤ (3/4)^n`.
    Analytic,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<Dimension>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<ZetaMode>,
}

/// A bound of the form `value = scale · log₂(exact_core)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    #[serde(skip)]
    pub exact_core: Option<Rational>,
    #[serde(skip)]
    pub scale: Rational,
    /// `log₂(exact_core)`.
    pub log2_value: f64,
    pub value: f64,
    pub params: BoundParams,
    pub provenance: String,
}

impl BoundReport {
    pub fn from_log(
        name: impl Into<String>,
        core: Rational,
        scale: Rational,
        params: BoundParams,
        provenance: impl Into<String>,
    ) -> Self {
        let log2_value = log2(&core);
        let value = crate::rational::to_f64(&scale) * log2_value;
        Self {
            name: name.into(),
            exact_core: Some(core),
            scale,
            log2_value,
            value,
            params,
            provenance: provenance.into(),
        }
    }
}
