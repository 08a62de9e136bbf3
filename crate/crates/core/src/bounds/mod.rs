//! Entanglement bounds for the antisymmetric Werner state `α_d`.

mod report;
mod seesaw;

pub use report::{BoundParams, BoundReport, ZetaMode};
pub use seesaw::{purity_seesaw, PurityResult, SeesawConfig, MAX_SEESAW_DIM};

use num::{One, Zero};
use serde::Serialize;

use crate::error::{ensure, Result};
use crate::lp::{analytic_dual_default, solve_zeta, LpForm, Parity};
use crate::rational::{binomial, int, log2, ratio, Rational};
use crate::werner::Dimension;

/// Conditional mutual information of the antisymmetric extension with `k`
/// parties, as `log₂ ratio`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CmiExtension {
    pub d: usize,
    pub k: usize,
    #[serde(skip)]
    pub ratio: Rational,
    pub bits: f64,
}

/// `ratio = (k/(k−1)) · ((d−k+2)/(d−k+1)) = C(d,k−1)² / (C(d,k−2) C(d,k))`.
pub fn cmi_extension(d: usize, k: usize) -> Result<CmiExtension> {
    ensure!(d >= 3, Domain, "need d >= 3, got {d}");
    ensure!((2..=d).contains(&k), Domain, "need 2 <= k <= d, got k={k} for d={d}");
    let (di, ki) = (d as i64, k as i64);
    let closed = ratio(ki, ki - 1) * ratio(di - ki + 2, di - ki + 1);
    let c = |j: usize| Rational::from_integer(binomial(d as u64, j as u64));
    let via_binomials = c(k - 1) * c(k - 1) / (c(k - 2) * c(k));
    ensure!(
        closed == via_binomials,
        Verification,
        "cmi ratio mismatch at d={d}, k={k}: {closed} vs {via_binomials}"
    );
    Ok(CmiExtension {
        d,
        k,
        bits: log2(&closed),
        ratio: closed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquashedBound {
    pub report: BoundReport,
    /// Smallest minimizing `k`.
    pub argmin: usize,
    pub table: Vec<CmiExtension>,
}

/// `½ min_k cmi_extension(d, k).bits`, compared exactly on the ratios. For
/// even `d` this is `log₂((d+2)/d)` at `k = d/2 + 1`; for odd `d` it is
/// `½ log₂((d+3)/(d−1))`, attained at `k = (d+1)/2` and `k = (d+3)/2`.
pub fn squashed_upper(d: usize) -> Result<SquashedBound> {
    ensure!(d >= 3, Domain, "need d >= 3, got {d}");
    let table = (2..=d).map(|k| cmi_extension(d, k)).collect::<Result<Vec<_>>>()?;
    let best = table
        .iter()
        .min_by(|a, b| a.ratio.cmp(&b.ratio).then(a.k.cmp(&b.k)))
        .expect("k = 2 always present");
    let di = d as i64;
    let (closed, argmin) = if d % 2 == 0 {
        let r = ratio(di + 2, di);
        (&r * &r, d / 2 + 1)
    } else {
        (ratio(di + 3, di - 1), (d + 1) / 2)
    };
    ensure!(
        best.ratio == closed && best.k == argmin,
        Verification,
        "minimum at k={} ratio {} disagrees with closed form k={argmin} ratio {closed}",
        best.k,
        best.ratio
    );
    let report = BoundReport::from_log(
        "E_sq upper",
        best.ratio.clone(),
        ratio(1, 2),
        BoundParams {
            d: Some(Dimension::Finite(d)),
            k: Some(argmin),
            ..Default::default()
        },
        "antisymmetric extension cmi",
    );
    Ok(SquashedBound {
        report,
        argmin,
        table,
    })
}

/// The same quantity read as an upper bound on distillable key.
pub fn key_upper(d: usize) -> Result<BoundReport> {
    let mut report = squashed_upper(d)?.report;
    report.name = "K_D upper".into();
    report.provenance = "key rate <= squashed entanglement".into();
    Ok(report)
}

/// `ζ` for the given mode: the exact LP optimum (truncated form at `d = ∞`,
/// full form otherwise) or the analytic dual value `(3/4)^n`.
pub fn zeta_value(n: usize, d: Dimension, mode: ZetaMode) -> Result<Rational> {
    match mode {
        ZetaMode::Lp => {
            let form = if d == Dimension::Infinite { LpForm::Truncated2 } else { LpForm::Full3 };
            Ok(solve_zeta(n, d, Parity::None, form)?.0)
        }
        ZetaMode::Analytic => {
            let dual = analytic_dual_default(n)?;
            ensure!(dual.feasible, Verification, "analytic dual point infeasible at n={n}");
            Ok(dual.z)
        }
    }
}

fn zeta_report(name: &str, n: usize, d: Dimension, mode: ZetaMode, halve: bool) -> Result<BoundReport> {
    ensure!(n >= 1, Domain, "need n >= 1");
    let zeta = zeta_value(n, d, mode)?;
    ensure!(zeta > Rational::zero(), Solver, "zeta = {zeta} is not positive");
    let denom = if halve { 2 * n as i64 } else { n as i64 };
    let provenance = match mode {
        ZetaMode::Lp => "ppt purity lp optimum",
        ZetaMode::Analytic => "analytic dual point",
    };
    Ok(BoundReport::from_log(
        name,
        zeta,
        ratio(-1, denom),
        BoundParams {
            d: Some(d),
            n: Some(n),
            mode: Some(mode),
            ..Default::default()
        },
        provenance,
    ))
}

/// `−(1/n) log₂ ζ`, a lower bound on the entanglement cost.
pub fn ec_lower(n: usize, d: Dimension, mode: ZetaMode) -> Result<BoundReport> {
    zeta_report("E_C lower", n, d, mode, false)
}

/// `−(1/(2n)) log₂ ζ`, a lower bound on the regularized relative entropy of
/// entanglement.
pub fn er_lower(n: usize, d: Dimension, mode: ZetaMode) -> Result<BoundReport> {
    zeta_report("E_R lower", n, d, mode, true)
}

/// `log₂((d+2)/d)`, the regularized PPT relative entropy, for contrast with
/// [`er_lower`]. Zero at `d = ∞`.
pub fn er_ppt_contrast(d: Dimension) -> Result<BoundReport> {
    let core = match d {
        Dimension::Finite(d) => {
            ensure!(d >= 3, Domain, "need d >= 3, got {d}");
            ratio(d as i64 + 2, d as i64)
        }
        Dimension::Infinite => Rational::one(),
    };
    Ok(BoundReport::from_log(
        "E_R,PPT regularized",
        core,
        int(1),
        BoundParams {
            d: Some(d),
            ..Default::default()
        },
        "ppt relative entropy",
    ))
}

/// Binary entropy in bits, with `h(0) = h(1) = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// `2(ε + h(ε)) log₂ d`.
pub fn continuity_delta(eps: f64, d: usize) -> Result<f64> {
    ensure!((0.0..=1.0).contains(&eps), Domain, "need 0 <= eps <= 1, got {eps}");
    ensure!(d >= 2, Domain, "need d >= 2, got {d}");
    Ok(2.0 * (eps + binary_entropy(eps)) * (d as f64).log2())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cmi_examples() {
        let c = cmi_extension(4, 3).unwrap();
        assert_eq!(c.ratio, ratio(9, 4));
        assert!((c.bits - 2.0 * 1.5f64.log2()).abs() < 1e-12);
        assert_eq!(cmi_extension(4, 2).unwrap().ratio, ratio(8, 3));
        let c = cmi_extension(5, 3).unwrap();
        assert_eq!(c.ratio, int(2));
        assert_eq!(c.bits, 1.0);
        assert!(cmi_extension(4, 1).is_err());
        assert!(cmi_extension(4, 5).is_err());
    }

    #[test]
    fn squashed_examples() {
        let s4 = squashed_upper(4).unwrap();
        assert_eq!(s4.argmin, 3);
        assert!((s4.report.value - 1.5f64.log2()).abs() < 1e-12);
        let s5 = squashed_upper(5).unwrap();
        assert_eq!(s5.argmin, 3);
        assert!((s5.report.value - 0.5).abs() < 1e-12);
        let s100 = squashed_upper(100).unwrap();
        assert!((s100.report.value - 1.02f64.log2()).abs() < 1e-12);
        assert_eq!(squashed_upper(3).unwrap().table.len(), 2);
        assert_eq!(key_upper(4).unwrap().value, s4.report.value);
    }

    #[test]
    fn cost_and_relative_entropy() {
        let ec = ec_lower(5, Dimension::Infinite, ZetaMode::Analytic).unwrap();
        assert!((ec.value - (4.0f64 / 3.0).log2()).abs() < 1e-12);
        let ec = ec_lower(4, Dimension::Finite(3), ZetaMode::Lp).unwrap();
        assert_eq!(ec.exact_core, Some(ratio(1, 16)));
        assert_eq!(ec.value, 1.0);
        let er = er_lower(1, Dimension::Infinite, ZetaMode::Lp).unwrap();
        assert_eq!(er.value, 0.5);
        let contrast = er_ppt_contrast(Dimension::Finite(4)).unwrap();
        assert!((contrast.value - 0.5849625007211562).abs() < 1e-12);
        assert_eq!(er_ppt_contrast(Dimension::Infinite).unwrap().value, 0.0);
    }

    #[test]
    fn continuity() {
        assert_eq!(continuity_delta(0.0, 7).unwrap(), 0.0);
        assert_eq!(continuity_delta(0.5, 2).unwrap(), 3.0);
        let h = 2.0 - 0.75 * 3f64.log2();
        assert!((continuity_delta(0.25, 4).unwrap() - 2.0 * (0.25 + h) * 2.0).abs() < 1e-12);
        assert!(continuity_delta(1.5, 4).is_err());
        assert!(continuity_delta(f64::NAN, 4).is_err());
        let (a, b) = (continuity_delta(1e-3, 8).unwrap() / 3.0, continuity_delta(1e-6, 8).unwrap() / 3.0);
        assert!(a < 0.03 && b < 1e-4 && b < a);
    }
}
