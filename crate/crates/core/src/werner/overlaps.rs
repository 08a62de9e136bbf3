use std::fmt;

use num::One;
use serde::Serialize;

use super::operators::{
    alpha_state, alt2_alt2_element, flip2, psi_q_pp, rho_element, rho_state, sigma_state, OverlapRow,
    PsiQProjectors, YoungLabel,
};
use super::perm::{GroupAlgebraElement, Perm4};
use crate::error::{ensure, Error, Result};
use crate::linalg::RMatrix;
use crate::rational::{int, ratio, Rational};

/// Local dimension `d`, or the `d → ∞` limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl Dimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dimension::Finite(d) => Some(d),
            Dimension::Infinite => None,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(d) => write!(f, "{d}"),
            Dimension::Infinite => write!(f, "inf"),
        }
    }
}

/// Slot indices (0-based) in the `A B A' B'` order.
const A: usize = 0;
const A2: usize = 2;
/// The `AB : A'B'` partial transpose flips `A'` and `B'`.
pub const GAMMA_FLIP: [usize; 2] = [2, 3];

fn r(n: i64) -> Rational {
    int(n)
}

fn psi_overlap(y: YoungLabel, di: i64) -> Rational {
    let psi = ratio(2, di * (di - 1));
    if y == YoungLabel::Box211 {
        -psi
    } else {
        psi
    }
}

/// `tr(ρ_y^Γ Q_½)` for the half-normalized sandwich `Q_½ = Q/2`.
fn half_q_overlap(y: YoungLabel, di: i64) -> Rational {
    match y {
        YoungLabel::Alt4 => ratio(-2 * (di + 1), di * (di - 2)),
        YoungLabel::Box22 => ratio(1, di),
        YoungLabel::Box211 => ratio(2, di * (di - 2)),
    }
}

/// Closed-form `tr(ρ_y^Γ X)` for the orthogonal projectors `X ∈ {Ψ, Q, P̃}`.
pub fn overlap_closed_form(row: OverlapRow, y: YoungLabel, d: usize) -> Rational {
    let di = d as i64;
    let psi = psi_overlap(y, di);
    let q = half_q_overlap(y, di) * int(2);
    match row {
        OverlapRow::Psi => psi,
        OverlapRow::Q => q,
        OverlapRow::PTilde => r(1) - psi - q,
    }
}

/// Rows `Ψ`, `Q_½`, `P⊗P − Ψ − Q_½` against `ρ_y^Γ`. The last row is the
/// overlap with `P̃ + Q/2`, which is not a projector.
fn half_q_closed_form(row: OverlapRow, y: YoungLabel, d: usize) -> Rational {
    let di = d as i64;
    let psi = psi_overlap(y, di);
    let q = half_q_overlap(y, di);
    match row {
        OverlapRow::Psi => psi,
        OverlapRow::Q => q,
        OverlapRow::PTilde => r(1) - psi - q,
    }
}

/// Werner-state parameters of the reduced states `ρ̃_y = tr_{BB'} ρ_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TVector {
    pub d: usize,
    /// `(y, t_y)` for every irrep present at this `d`.
    pub entries: Vec<(YoungLabel, Rational)>,
}

impl TVector {
    pub fn get(&self, y: YoungLabel) -> Option<&Rational> {
        self.entries.iter().find(|(l, _)| *l == y).map(|(_, v)| v)
    }
}

/// Expected decomposition `ρ̃_y = p α + (1 − p) σ`.
fn werner_weight(y: YoungLabel) -> Rational {
    match y {
        YoungLabel::Alt4 => r(1),
        YoungLabel::Box22 => ratio(1, 4),
        YoungLabel::Box211 => ratio(1, 2),
    }
}

/// `t_y = tr(ρ̃_y F_{A:A'})` from explicit matrices, also checking that each
/// `ρ̃_y` is the expected mixture of `α` and `σ`.
pub fn t_vector(d: usize) -> Result<TVector> {
    ensure!(d >= 3, Domain, "t vector requires d >= 3, got {d}");
    let flip = flip2(d);
    let (alpha, sigma) = (alpha_state(d), sigma_state(d));
    let mut entries = Vec::new();
    for y in YoungLabel::present(d) {
        let reduced = rho_state(y, d)?.partial_trace(&[A, A2])?;
        let p = werner_weight(y);
        let expected = alpha.scale(&p).add(&sigma.scale(&(r(1) - &p)))?;
        if reduced != expected {
            return Err(Error::Verification(format!(
                "reduced state of rho_{y} at d={d} is not {p} alpha + {} sigma",
                r(1) - &p
            )));
        }
        entries.push((y, reduced.mul(&flip)?.trace()?));
    }
    Ok(TVector { d, entries })
}

/// Symbolic `t_y = tr ρ_y (13)` via cycle counts.
pub fn t_vector_symbolic(d: usize) -> Result<TVector> {
    ensure!(d >= 3, Domain, "t vector requires d >= 3, got {d}");
    let flip_aa = GroupAlgebraElement::from_perm(Perm4::transposition(1, 3));
    let entries = YoungLabel::present(d)
        .into_iter()
        .map(|y| Ok((y, rho_element(y, d)?.mul(&flip_aa).trace(d))))
        .collect::<Result<_>>()?;
    Ok(TVector { d, entries })
}

/// `tr(ρ_y^Γ X)` with rows `Ψ, Q, P̃` and one column per present irrep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapTable {
    pub d: usize,
    pub columns: Vec<YoungLabel>,
    /// `entries[row][col]`, rows in `OverlapRow::ALL` order.
    pub entries: Vec<Vec<Rational>>,
}

impl OverlapTable {
    pub fn get(&self, row: OverlapRow, y: YoungLabel) -> Option<&Rational> {
        let ri = OverlapRow::ALL.iter().position(|&x| x == row)?;
        let ci = self.columns.iter().position(|&c| c == y)?;
        Some(&self.entries[ri][ci])
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        (0..self.columns.len())
            .map(|c| self.entries.iter().map(|row| row[c].clone()).sum())
            .collect()
    }

    /// The table predicted by the closed forms.
    pub fn closed_form(d: usize) -> Self {
        let columns = YoungLabel::present(d);
        let entries = OverlapRow::ALL
            .iter()
            .map(|&row| columns.iter().map(|&y| overlap_closed_form(row, y, d)).collect())
            .collect();
        Self { d, columns, entries }
    }
}

/// Overlap table from explicit `d^4 × d^4` matrices.
pub fn overlap_table(d: usize) -> Result<OverlapTable> {
    let ops = psi_q_pp(d)?;
    overlap_table_with(&ops)
}

pub fn overlap_table_with(ops: &PsiQProjectors) -> Result<OverlapTable> {
    let d = ops.d;
    let columns = YoungLabel::present(d);
    let transposed = columns
        .iter()
        .map(|&y| rho_state(y, d)?.partial_transpose(&GAMMA_FLIP))
        .collect::<Result<Vec<_>>>()?;
    let entries = OverlapRow::ALL
        .iter()
        .map(|&row| {
            transposed
                .iter()
                .map(|rho_gamma| rho_gamma.trace_product(ops.get(row)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OverlapTable { d, columns, entries })
}

/// Overlap table from cycle-count traces only:
/// `tr ρ^Γ Ψ = 2/(d(d−1)) tr ρ (13)(24)`,
/// `tr ρ^Γ Q = 4/(d−2) tr ρ (24) − 4/(d(d−2)) tr ρ (13)(24)`,
/// `tr ρ^Γ P̃ = tr ρ (P⊗P) − (Ψ) − (Q)`.
pub fn overlap_table_symbolic(d: usize) -> Result<OverlapTable> {
    ensure!(d >= 3, Domain, "overlap table requires d >= 3, got {d}");
    let di = d as i64;
    let ff = GroupAlgebraElement::from_perm(Perm4::from_cycles(&[&[1, 3], &[2, 4]])?);
    let f_bb = GroupAlgebraElement::from_perm(Perm4::transposition(2, 4));
    let pp = alt2_alt2_element();
    let columns = YoungLabel::present(d);
    let mut entries = vec![Vec::new(), Vec::new(), Vec::new()];
    for &y in &columns {
        let rho = rho_element(y, d)?;
        let both = rho.mul(&ff).trace(d);
        let psi = ratio(2, di * (di - 1)) * &both;
        let q = ratio(4, di - 2) * rho.mul(&f_bb).trace(d) - ratio(4, di * (di - 2)) * &both;
        let pt = rho.mul(&pp).trace(d) - &psi - &q;
        entries[0].push(psi);
        entries[1].push(q);
        entries[2].push(pt);
    }
    Ok(OverlapTable { d, columns, entries })
}

/// `tr ρ_y (F_{AA'} ⊗ F_{BB'})`, symbolically.
pub fn f_symmetry_sign(y: YoungLabel, d: usize) -> Result<Rational> {
    let ff = GroupAlgebraElement::from_perm(Perm4::from_cycles(&[&[1, 3], &[2, 4]])?);
    Ok(rho_element(y, d)?.mul(&ff).trace(d))
}

/// Which overlap table the finite-`d` constraint matrices are built from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TdVariant {
    /// Overlaps with the orthogonal projectors `Ψ, Q, P̃`. Corner entry
    /// `1 − 2/((d−1)(d−2))`.
    #[default]
    Projector,
    /// Overlaps with `Ψ, Q/2, P̃ + Q/2`. Corner entry `1 − 2/(d(d−1)(d−2))`.
    HalfQ,
    /// `HalfQ` with corner entry `1 − (2d−3)/(d(d−1)(d−2))`.
    HalfQAltCorner,
}

impl TdVariant {
    pub const ALL: [TdVariant; 3] = [TdVariant::Projector, TdVariant::HalfQ, TdVariant::HalfQAltCorner];
}

/// `T̂_d` (absent for `d = ∞`) and the rescaled `T_d` / `T_∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintMatrices {
    pub t_hat: Option<RMatrix>,
    pub t: RMatrix,
}

/// `T_∞ = [[1,1,−1],[−2,1,0],[1,1,1]]`.
pub fn t_infinity() -> RMatrix {
    RMatrix::from_i64_rows(&[&[1, 1, -1], &[-2, 1, 0], &[1, 1, 1]]).expect("3x3")
}

/// Builds the PPT constraint matrices. Rows are `Ψ, Q, P̃`; columns are
/// `(1,1,1,1), (2,2), (2,1,1)`. `T_d` rescales row `Ψ` by `d(d−1)/2` and row
/// `Q` so that its `(2,2)` entry is 1, which leaves the sign constraints
/// unchanged. At `d = 3` the `(1,1,1,1)` column is still filled in but the
/// corresponding state does not exist.
pub fn constraint_matrices(d: Dimension, variant: TdVariant) -> Result<ConstraintMatrices> {
    let d = match d {
        Dimension::Infinite => {
            return Ok(ConstraintMatrices {
                t_hat: None,
                t: t_infinity(),
            })
        }
        Dimension::Finite(d) => d,
    };
    ensure!(d >= 3, Domain, "constraint matrices require d >= 3, got {d}");
    let di = d as i64;
    let entry = |row, y| match variant {
        TdVariant::Projector => overlap_closed_form(row, y, d),
        _ => half_q_closed_form(row, y, d),
    };
    let t_hat = RMatrix::from_rows(
        OverlapRow::ALL
            .iter()
            .map(|&row| YoungLabel::ALL.iter().map(|&y| entry(row, y)).collect())
            .collect(),
    )?;
    let q_scale = match variant {
        TdVariant::Projector => ratio(di, 2),
        _ => int(di),
    };
    let scales = [ratio(di * (di - 1), 2), q_scale, Rational::one()];
    let mut t = RMatrix::from_rows(
        (0..3)
            .map(|i| t_hat.row(i).iter().map(|v| v * &scales[i]).collect())
            .collect(),
    )?;
    if variant == TdVariant::HalfQAltCorner {
        t.set(2, 2, r(1) - ratio(2 * di - 3, di * (di - 1) * (di - 2)));
    }
    Ok(ConstraintMatrices {
        t_hat: Some(t_hat),
        t,
    })
}
