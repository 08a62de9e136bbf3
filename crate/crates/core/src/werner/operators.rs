use std::fmt;

use num::One;
use serde::Serialize;

use super::perm::{GroupAlgebraElement, Perm4};
use crate::error::{ensure, Error, Result};
use crate::linalg::{RMatrix, SparseRMatrix};
use crate::rational::{int, ratio, Rational};
use crate::young::{rep_dims, Partition};

/// The three `U(d)` irreps inside `∧² ⊗ ∧²` on slots `A B A' B'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum YoungLabel {
    /// (1,1,1,1), the totally antisymmetric part
    #[serde(rename = "1111")]
    Alt4,
    /// (2,2)
    #[serde(rename = "22")]
    Box22,
    /// (2,1,1) = ∧²(∧²)
    #[serde(rename = "211")]
    Box211,
}

impl YoungLabel {
    pub const ALL: [YoungLabel; 3] = [YoungLabel::Alt4, YoungLabel::Box22, YoungLabel::Box211];

    pub fn partition(self) -> Partition {
        match self {
            YoungLabel::Alt4 => Partition::of(&[1, 1, 1, 1]),
            YoungLabel::Box22 => Partition::of(&[2, 2]),
            YoungLabel::Box211 => Partition::of(&[2, 1, 1]),
        }
    }

    /// Dimension of the irrep for `U(d)`, `d ≥ 3`.
    pub fn dimension(self, d: usize) -> Result<u64> {
        let dims = rep_dims(d)?;
        Ok(match self {
            YoungLabel::Alt4 => dims.alt4,
            YoungLabel::Box22 => dims.box22,
            YoungLabel::Box211 => dims.box211,
        })
    }

    /// Labels whose irrep is non-zero at dimension `d`.
    pub fn present(d: usize) -> Vec<YoungLabel> {
        Self::ALL
            .into_iter()
            .filter(|y| y.dimension(d).is_ok_and(|n| n > 0))
            .collect()
    }

    pub fn from_str_label(s: &str) -> Option<Self> {
        match s.trim_matches(|c| c == '(' || c == ')').replace(',', "").as_str() {
            "1111" => Some(YoungLabel::Alt4),
            "22" => Some(YoungLabel::Box22),
            "211" => Some(YoungLabel::Box211),
            _ => None,
        }
    }
}

impl fmt::Display for YoungLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition())
    }
}

fn t(a: u8, b: u8) -> Perm4 {
    Perm4::transposition(a, b)
}

/// `¼(e − (12))(e − (34))`, the projector onto `∧²_{AB} ⊗ ∧²_{A'B'}`.
pub fn alt2_alt2_element() -> GroupAlgebraElement {
    GroupAlgebraElement::e_plus(-1, t(1, 2))
        .mul(&GroupAlgebraElement::e_plus(-1, t(3, 4)))
        .scale(&ratio(1, 4))
}

/// Group-algebra form of the Young projector onto `y`.
pub fn young_element(y: YoungLabel) -> GroupAlgebraElement {
    match y {
        YoungLabel::Alt4 => GroupAlgebraElement::from_terms(
            Perm4::all().into_iter().map(|p| (p, ratio(p.sign(), 24))),
        ),
        YoungLabel::Box22 => {
            let factors = [
                GroupAlgebraElement::e_plus(-1, t(1, 2)),
                GroupAlgebraElement::e_plus(-1, t(3, 4)),
                GroupAlgebraElement::e_plus(1, t(1, 3)),
                GroupAlgebraElement::e_plus(1, t(2, 4)),
                GroupAlgebraElement::e_plus(-1, t(1, 2)),
                GroupAlgebraElement::e_plus(-1, t(3, 4)),
            ];
            factors
                .iter()
                .fold(GroupAlgebraElement::identity(), |acc, f| acc.mul(f))
                .scale(&ratio(1, 48))
        }
        YoungLabel::Box211 => alt2_alt2_element()
            .sub(&young_element(YoungLabel::Alt4))
            .sub(&young_element(YoungLabel::Box22)),
    }
}

fn require_d3(d: usize, what: &str) -> Result<()> {
    ensure!(d >= 3, Domain, "{what} requires d >= 3, got {d}");
    Ok(())
}

/// Explicit Young projector on `(C^d)^{⊗4}`.
pub fn young_projector(y: YoungLabel, d: usize) -> Result<SparseRMatrix> {
    require_d3(d, "Young projector")?;
    Ok(young_element(y).operator(d))
}

/// Permutation operator for `π` on `(C^d)^{⊗4}`.
pub fn perm_operator(pi: Perm4, d: usize) -> Result<SparseRMatrix> {
    ensure!(d >= 2, Domain, "permutation operator requires d >= 2, got {d}");
    Ok(pi.operator(d))
}

/// `ρ_y = P_y / dim y`. The (1,1,1,1) state does not exist at `d = 3`.
pub fn rho_state(y: YoungLabel, d: usize) -> Result<SparseRMatrix> {
    require_d3(d, "rho state")?;
    let dim = y.dimension(d)?;
    if dim == 0 {
        return Err(Error::Degenerate(format!("irrep {y} is zero-dimensional at d={d}")));
    }
    Ok(young_projector(y, d)?.scale(&Rational::new(1.into(), dim.into())))
}

/// Group-algebra form of `ρ_y` (for symbolic traces).
pub fn rho_element(y: YoungLabel, d: usize) -> Result<GroupAlgebraElement> {
    let dim = y.dimension(d)?;
    if dim == 0 {
        return Err(Error::Degenerate(format!("irrep {y} is zero-dimensional at d={d}")));
    }
    Ok(young_element(y).scale(&Rational::new(1.into(), dim.into())))
}

/// Flip operator on `C^d ⊗ C^d`.
pub fn flip2(d: usize) -> RMatrix {
    let mut m = RMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m.set(i * d + j, j * d + i, Rational::one());
        }
    }
    m.with_factor_dims(vec![d, d]).expect("d*d")
}

fn two_factor(d: usize, sign: i64) -> RMatrix {
    let id = RMatrix::identity(d).tensor_product(&RMatrix::identity(d));
    let f = flip2(d);
    id.add(&f.scale(&int(sign)))
        .expect("same shape")
        .scale(&ratio(1, 2))
        .with_factor_dims(vec![d, d])
        .expect("d*d")
}

/// Projector onto `∧²(C^d)`, i.e. `(1 − F)/2`.
pub fn antisym_projector(d: usize) -> RMatrix {
    two_factor(d, -1)
}

/// Projector onto `Sym²(C^d)`, i.e. `(1 + F)/2`.
pub fn sym_projector(d: usize) -> RMatrix {
    two_factor(d, 1)
}

/// Antisymmetric Werner state `α_d`.
pub fn alpha_state(d: usize) -> RMatrix {
    antisym_projector(d).scale(&ratio(2, (d * (d - 1)) as i64))
}

/// Symmetric Werner state `σ_d`.
pub fn sigma_state(d: usize) -> RMatrix {
    sym_projector(d).scale(&ratio(2, (d * (d + 1)) as i64))
}

/// Maximally entangled state `Φ = (1/d)Σ_{ij}|ii⟩⟨jj|` on `C^d ⊗ C^d`.
pub fn max_entangled(d: usize) -> RMatrix {
    let mut m = RMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m.set(i * d + i, j * d + j, ratio(1, d as i64));
        }
    }
    m.with_factor_dims(vec![d, d]).expect("d*d")
}

/// Flat index of `|a b a' b'⟩`.
fn idx4(d: usize, a: usize, b: usize, a2: usize, b2: usize) -> usize {
    ((a * d + b) * d + a2) * d + b2
}

/// `1_{AA'} ⊗ Φ_{BB'}` (with `ident_aa = true`) or `Φ_{AA'} ⊗ Φ_{BB'}`.
fn phi_bb(d: usize, ident_aa: bool) -> SparseRMatrix {
    let mut triplets = Vec::new();
    let w = if ident_aa { ratio(1, d as i64) } else { ratio(1, (d * d) as i64) };
    for a in 0..d {
        for a2 in 0..d {
            for x in 0..d {
                for y in 0..d {
                    if ident_aa {
                        triplets.push((idx4(d, a, x, a2, x), idx4(d, a, y, a2, y), w.clone()));
                    } else if a == a2 {
                        for c in 0..d {
                            triplets.push((idx4(d, a, x, a, x), idx4(d, c, y, c, y), w.clone()));
                        }
                    }
                }
            }
        }
    }
    SparseRMatrix::from_triplets(d.pow(4), d.pow(4), triplets)
        .expect("indices in range")
        .with_factor_dims(vec![d; 4])
        .expect("d^4")
}

/// The three projectors decomposing `∧² ⊗ ∧²` under `g ⊗ g ⊗ ḡ ⊗ ḡ`.
#[derive(Clone, Debug)]
pub struct PsiQProjectors {
    pub d: usize,
    pub psi: SparseRMatrix,
    pub q: SparseRMatrix,
    pub p_tilde: SparseRMatrix,
}

impl PsiQProjectors {
    pub fn get(&self, row: OverlapRow) -> &SparseRMatrix {
        match row {
            OverlapRow::Psi => &self.psi,
            OverlapRow::Q => &self.q,
            OverlapRow::PTilde => &self.p_tilde,
        }
    }
}

/// Row labels of the overlap table and of the LP constraint matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OverlapRow {
    Psi,
    Q,
    PTilde,
}

impl OverlapRow {
    pub const ALL: [OverlapRow; 3] = [OverlapRow::Psi, OverlapRow::Q, OverlapRow::PTilde];

    pub fn name(self) -> &'static str {
        match self {
            OverlapRow::Psi => "Psi",
            OverlapRow::Q => "Q",
            OverlapRow::PTilde => "P~",
        }
    }
}

/// `|Ψ⟩⟨Ψ|` with `|Ψ⟩ ∝ Σ_{i<j} |ψ_ij⟩_{AB}|ψ_ij⟩_{A'B'}`, built from its
/// unnormalized ±1 coordinates.
pub fn psi_projector(d: usize) -> SparseRMatrix {
    let mut v: Vec<(usize, i64)> = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for (a, b, s1) in [(i, j, 1), (j, i, -1)] {
                for (a2, b2, s2) in [(i, j, 1), (j, i, -1)] {
                    v.push((idx4(d, a, b, a2, b2), s1 * s2));
                }
            }
        }
    }
    let norm2 = v.len() as i64;
    let triplets = v
        .iter()
        .flat_map(|&(r, sr)| v.iter().map(move |&(c, sc)| (r, c, ratio(sr * sc, norm2))));
    SparseRMatrix::from_triplets(d.pow(4), d.pow(4), triplets)
        .expect("indices in range")
        .with_factor_dims(vec![d; 4])
        .expect("d^4")
}

/// `Ψ`, `Q` and `P̃` on `(C^d)^{⊗4}` (slot order `A B A' B'`).
///
/// `Q = 4d/(d−2) · (P⊗P)((1−Φ)_{AA'} ⊗ Φ_{BB'})(P⊗P)` with `P` the
/// antisymmetrizer on each pair, and `P̃ = P⊗P − Q − Ψ`. With prefactor
/// `2d/(d−2)` the same sandwich squares to half of itself and has trace
/// `(d²−1)/2`.
pub fn psi_q_pp(d: usize) -> Result<PsiQProjectors> {
    if d < 3 {
        return Err(Error::Degenerate(format!(
            "P~ has negative nominal dimension at d={d}; need d >= 3"
        )));
    }
    let pp = alt2_alt2_element().operator(d);
    let psi = psi_projector(d);
    let middle = phi_bb(d, true).sub(&phi_bb(d, false))?;
    let q = pp
        .mul(&middle)?
        .mul(&pp)?
        .scale(&ratio(4 * d as i64, d as i64 - 2));
    let p_tilde = pp.sub(&q)?.sub(&psi)?;
    Ok(PsiQProjectors { d, psi, q, p_tilde })
}

/// `2d/(d−1) · (P⊗P)(Φ_{AA'} ⊗ Φ_{BB'})(P⊗P)`, the second route to `Ψ`.
pub fn psi_from_phi(d: usize) -> Result<SparseRMatrix> {
    require_d3(d, "Psi")?;
    let pp = alt2_alt2_element().operator(d);
    Ok(pp
        .mul(&phi_bb(d, false))?
        .mul(&pp)?
        .scale(&ratio(2 * d as i64, d as i64 - 1)))
}
