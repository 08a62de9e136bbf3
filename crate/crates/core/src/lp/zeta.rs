//! Permutation-symmetric PPT linear programmes over Young-diagram strings.
//!
//! A symmetric distribution `p` on strings `y^n` is described by one mass per
//! type (occurrence counts), `q_c = multinomial(c) · p_c`. The constraint
//! `T^{⊗n} p ≥ 0` has one distinct row per row-type `r`, with coefficient on
//! `q_c` equal to `[z^c] Π_x (Σ_y T[x][y] z_y)^{r_x}` divided by
//! `multinomial(c)`.

use std::collections::HashMap;

use num::{BigInt, One, Zero};
use serde::Serialize;

use super::simplex::{simplex_solve, LPProblem, LPSolution, Relation, Sense};
use crate::error::{ensure, Error, Result};
use crate::rational::{binomial, int, multinomial, ratio, Rational};
use crate::werner::{constraint_matrices, Dimension, OverlapRow, TdVariant, YoungLabel};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    #[default]
    None,
    /// Only types with an even number of `(2,1,1)` symbols.
    Even211,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LpForm {
    /// Three symbols, three constraint rows, `Σ p = 1`.
    #[default]
    Full3,
    /// `d = ∞` only: symbols `(1,1,1,1), (2,2)`, rows `Q, P̃`, `Σ p ≤ 1`.
    Truncated2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Symbol {
    pub label: YoungLabel,
    #[serde(skip)]
    pub weight: Rational,
}

/// A symmetry-reduced LP: variables are types over `symbols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymLP {
    pub n: usize,
    pub d: Dimension,
    pub symbols: Vec<Symbol>,
    pub row_labels: Vec<OverlapRow>,
    /// `rows[x][y]`: single-copy constraint matrix restricted to `symbols`.
    pub rows: Vec<Vec<Rational>>,
    /// `Eq` for `Σ q = 1`, `Le` for `Σ q ≤ 1`.
    pub normalization: Relation,
    pub parity: Parity,
    /// Variable types, as counts per symbol.
    pub types: Vec<Vec<usize>>,
    pub multiplicities: Vec<BigInt>,
}

/// All `c ∈ ℕ^s` with `Σ c = n`, lexicographically descending.
pub fn compositions(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, s: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if s == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=n).rev() {
            prefix.push(first);
            rec(n - first, s - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if s == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, s, &mut Vec::with_capacity(s), &mut out);
    out
}

type Poly = HashMap<Vec<usize>, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::with_capacity(a.len() * b.len());
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_one(s: usize) -> Poly {
    Poly::from([(vec![0; s], Rational::one())])
}

/// `(Σ_y a_y z_y)^0, …, (Σ_y a_y z_y)^n`.
fn linear_form_powers(a: &[Rational], n: usize) -> Vec<Poly> {
    let s = a.len();
    let mut base = Poly::new();
    for (y, c) in a.iter().enumerate() {
        if !c.is_zero() {
            let mut e = vec![0; s];
            e[y] = 1;
            base.insert(e, c.clone());
        }
    }
    let mut out = vec![poly_one(s)];
    for k in 1..=n {
        out.push(poly_mul(&out[k - 1], &base));
    }
    out
}

fn symbol_weight(y: YoungLabel) -> Rational {
    match y {
        YoungLabel::Alt4 => int(-1),
        YoungLabel::Box22 => ratio(1, 2),
        YoungLabel::Box211 => int(0),
    }
}

fn pow_usize(base: &Rational, e: usize) -> Rational {
    num::pow(base.clone(), e)
}

impl SymLP {
    /// Builds from a single-copy matrix; `rows[x][y]` over `symbols`.
    pub fn new(
        n: usize,
        d: Dimension,
        symbols: Vec<Symbol>,
        row_labels: Vec<OverlapRow>,
        rows: Vec<Vec<Rational>>,
        normalization: Relation,
        parity: Parity,
    ) -> Result<Self> {
        ensure!(n >= 1, Domain, "need at least one copy");
        ensure!(!symbols.is_empty(), Structural, "empty alphabet");
        ensure!(rows.len() == row_labels.len(), Structural, "row labels do not match rows");
        ensure!(
            rows.iter().all(|r| r.len() == symbols.len()),
            Structural,
            "constraint rows must have one entry per symbol"
        );
        ensure!(
            normalization != Relation::Ge,
            Domain,
            "normalization must be `=` or `<=`"
        );
        let odd_211 = |c: &[usize]| {
            symbols
                .iter()
                .zip(c)
                .any(|(s, &k)| s.label == YoungLabel::Box211 && k % 2 == 1)
        };
        let types: Vec<Vec<usize>> = compositions(n, symbols.len())
            .into_iter()
            .filter(|c| parity == Parity::None || !odd_211(c))
            .collect();
        let multiplicities = types.iter().map(|c| multinomial(c)).collect();
        Ok(Self {
            n,
            d,
            symbols,
            row_labels,
            rows,
            normalization,
            parity,
            types,
            multiplicities,
        })
    }

    /// `C(n+s−1, s−1)` before any parity filtering.
    pub fn full_type_count(&self) -> BigInt {
        let s = self.symbols.len() as u64;
        binomial(self.n as u64 + s - 1, s - 1)
    }

    /// Objective coefficient of `q_c`: `Π_y t_y^{c_y}`.
    pub fn objective(&self) -> Vec<Rational> {
        self.types
            .iter()
            .map(|c| {
                self.symbols
                    .iter()
                    .zip(c)
                    .map(|(s, &k)| pow_usize(&s.weight, k))
                    .product()
            })
            .collect()
    }

    /// One row per row-type, coefficients on `q`. Identically zero rows are
    /// dropped.
    pub fn constraint_rows(&self) -> Vec<(Vec<usize>, Vec<Rational>)> {
        let powers: Vec<Vec<Poly>> = self.rows.iter().map(|r| linear_form_powers(r, self.n)).collect();
        let index: HashMap<&[usize], usize> = self.types.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
        let mut out = Vec::new();
        for rt in compositions(self.n, self.rows.len()) {
            let mut poly = poly_one(self.symbols.len());
            for (x, &k) in rt.iter().enumerate() {
                if k > 0 {
                    poly = poly_mul(&poly, &powers[x][k]);
                }
            }
            let mut coeffs = vec![Rational::zero(); self.types.len()];
            for (e, c) in poly {
                if let Some(&i) = index.get(e.as_slice()) {
                    coeffs[i] = c / Rational::from_integer(self.multiplicities[i].clone());
                }
            }
            if coeffs.iter().any(|c| !c.is_zero()) {
                out.push((rt, coeffs));
            }
        }
        out
    }

    /// The reduced LP: `max objective·q`, rows `−coeffs·q ≤ 0`, then the
    /// normalization as the last constraint.
    pub fn to_lp(&self) -> Result<LPProblem> {
        let mut lp = LPProblem::new(Sense::Maximize, self.objective());
        for (_, coeffs) in self.constraint_rows() {
            lp.add_constraint(coeffs.into_iter().map(|c| -c).collect(), Relation::Le, Rational::zero())?;
        }
        lp.add_constraint(vec![int(1); self.types.len()], self.normalization, int(1))?;
        Ok(lp)
    }

    /// Per-string probabilities `p_c = q_c / multinomial(c)`.
    pub fn per_string(&self, q: &[Rational]) -> Vec<Rational> {
        q.iter()
            .zip(&self.multiplicities)
            .map(|(v, m)| v / Rational::from_integer(m.clone()))
            .collect()
    }

    fn row_position(&self, row: OverlapRow) -> Option<usize> {
        self.row_labels.iter().position(|&r| r == row)
    }

    fn symbol_position(&self, y: YoungLabel) -> Option<usize> {
        self.symbols.iter().position(|s| s.label == y)
    }

    /// Relaxation that forgets one constraint row.
    pub fn without_row(&self, row: OverlapRow) -> Result<SymLP> {
        let pos = self
            .row_position(row)
            .ok_or_else(|| Error::Domain(format!("row {} not present", row.name())))?;
        let mut out = self.clone();
        out.row_labels.remove(pos);
        out.rows.remove(pos);
        Ok(out)
    }

    /// The truncated two-symbol LP at `d = ∞`: drop row `Ψ` and replace
    /// `(2,1,1)` by `⅓ (1,1,1,1) + ⅔ (2,2)`, whose column and weight it
    /// matches once `Ψ` is gone.
    pub fn truncate(&self) -> Result<SymLP> {
        self.check_truncatable()?;
        let relaxed = self.without_row(OverlapRow::Psi)?;
        let keep = [
            self.symbol_position(YoungLabel::Alt4).expect("checked"),
            self.symbol_position(YoungLabel::Box22).expect("checked"),
        ];
        let rows = relaxed
            .rows
            .iter()
            .map(|r| keep.iter().map(|&i| r[i].clone()).collect())
            .collect();
        let symbols = keep.iter().map(|&i| self.symbols[i].clone()).collect();
        SymLP::new(
            self.n,
            self.d,
            symbols,
            relaxed.row_labels,
            rows,
            Relation::Le,
            Parity::None,
        )
    }

    fn check_truncatable(&self) -> Result<()> {
        let (a, b, c) = match (
            self.symbol_position(YoungLabel::Alt4),
            self.symbol_position(YoungLabel::Box22),
            self.symbol_position(YoungLabel::Box211),
        ) {
            (Some(a), Some(b), Some(c)) if self.symbols.len() == 3 => (a, b, c),
            _ => return Err(Error::Domain("truncation needs the three-symbol alphabet".into())),
        };
        let (third, two_thirds) = (ratio(1, 3), ratio(2, 3));
        let psi = self.row_position(OverlapRow::Psi);
        for (x, row) in self.rows.iter().enumerate() {
            if Some(x) == psi {
                continue;
            }
            ensure!(
                row[c] == &third * &row[a] + &two_thirds * &row[b],
                Domain,
                "column (2,1,1) is not 1/3 (1,1,1,1) + 2/3 (2,2) in row {}",
                self.row_labels[x].name()
            );
        }
        let w = |i: usize| &self.symbols[i].weight;
        ensure!(
            *w(c) == &third * w(a) + &two_thirds * w(b),
            Domain,
            "weight of (2,1,1) is not the matching mixture"
        );
        Ok(())
    }

    /// Maps a feasible point of this three-symbol LP to a feasible point of
    /// [`SymLP::truncate`] with the same objective value, splitting each
    /// `(2,1,1)` count binomially.
    pub fn map_to_truncated(&self, q: &[Rational]) -> Result<Vec<Rational>> {
        self.check_truncatable()?;
        ensure!(q.len() == self.types.len(), Structural, "point has wrong length");
        let a = self.symbol_position(YoungLabel::Alt4).expect("checked");
        let b = self.symbol_position(YoungLabel::Box22).expect("checked");
        let c = self.symbol_position(YoungLabel::Box211).expect("checked");
        let (third, two_thirds) = (ratio(1, 3), ratio(2, 3));
        // truncated types are (count of (1,1,1,1), count of (2,2)), descending
        let mut out = vec![Rational::zero(); self.n + 1];
        for (ty, mass) in self.types.iter().zip(q) {
            if mass.is_zero() {
                continue;
            }
            let k = ty[c];
            for j in 0..=k {
                let w = Rational::from_integer(binomial(k as u64, j as u64))
                    * pow_usize(&third, j)
                    * pow_usize(&two_thirds, k - j);
                let alt = ty[a] + j;
                debug_assert_eq!(alt + ty[b] + k - j, self.n);
                out[self.n - alt] += mass * w;
            }
        }
        Ok(out)
    }
}

/// Builds the reduced LP for `ζ_{n,d}` (or `ζ_n` at `d = ∞`) with the default
/// constraint matrices.
pub fn build_zeta(n: usize, d: Dimension, parity: Parity, form: LpForm) -> Result<SymLP> {
    build_zeta_with(n, d, parity, form, TdVariant::default())
}

pub fn build_zeta_with(n: usize, d: Dimension, parity: Parity, form: LpForm, variant: TdVariant) -> Result<SymLP> {
    ensure!(n >= 1, Domain, "need n >= 1, got {n}");
    if let Dimension::Finite(d) = d {
        ensure!(d >= 3, Domain, "need d >= 3, got {d}");
    }
    match form {
        LpForm::Truncated2 => {
            ensure!(d == Dimension::Infinite, Domain, "the truncated form requires d = inf");
            ensure!(parity == Parity::None, Domain, "parity filtering requires the full form");
            let symbols = [YoungLabel::Alt4, YoungLabel::Box22]
                .into_iter()
                .map(|label| Symbol {
                    label,
                    weight: symbol_weight(label),
                })
                .collect();
            let rows = vec![vec![int(-2), int(1)], vec![int(1), int(1)]];
            SymLP::new(
                n,
                d,
                symbols,
                vec![OverlapRow::Q, OverlapRow::PTilde],
                rows,
                Relation::Le,
                Parity::None,
            )
        }
        LpForm::Full3 => {
            let t = constraint_matrices(d, variant)?.t;
            let present: Vec<(usize, YoungLabel)> = YoungLabel::ALL
                .iter()
                .copied()
                .enumerate()
                .filter(|(_, y)| match d {
                    Dimension::Finite(d) => YoungLabel::present(d).contains(y),
                    Dimension::Infinite => true,
                })
                .collect();
            let symbols = present
                .iter()
                .map(|&(_, label)| Symbol {
                    label,
                    weight: symbol_weight(label),
                })
                .collect();
            let rows = (0..3)
                .map(|x| present.iter().map(|&(j, _)| t.get(x, j).clone()).collect())
                .collect();
            SymLP::new(n, d, symbols, OverlapRow::ALL.to_vec(), rows, Relation::Eq, parity)
        }
    }
}

/// Solves [`build_zeta`] exactly.
pub fn solve_zeta(n: usize, d: Dimension, parity: Parity, form: LpForm) -> Result<(Rational, LPSolution)> {
    solve_sym(&build_zeta(n, d, parity, form)?)
}

pub fn solve_sym(sym: &SymLP) -> Result<(Rational, LPSolution)> {
    let sol = simplex_solve(&sym.to_lp()?)?;
    let value = sol.optimum()?.clone();
    Ok((value, sol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::simplex::verify_certificate;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 2), vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert_eq!(compositions(12, 3).len(), 91);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
    }

    #[test]
    fn single_copy_instances() {
        let (v, sol) = solve_zeta(1, Dimension::Infinite, Parity::None, LpForm::Truncated2).unwrap();
        assert_eq!(v, ratio(1, 2));
        assert_eq!(sol.x, vec![int(0), int(1)]);
        let (v, sol) = solve_zeta(1, Dimension::Finite(17), Parity::None, LpForm::Full3).unwrap();
        assert_eq!(v, ratio(1, 2));
        assert_eq!(sol.x, vec![int(0), int(1), int(0)]);
    }

    #[test]
    fn d3_excludes_alt4() {
        let sym = build_zeta(3, Dimension::Finite(3), Parity::None, LpForm::Full3).unwrap();
        assert_eq!(sym.symbols.len(), 2);
        assert_eq!(sym.types.len(), 4);
        let (v, sol) = solve_sym(&sym).unwrap();
        assert_eq!(v, ratio(1, 8));
        verify_certificate(&sym.to_lp().unwrap(), &sol).unwrap();
    }

    #[test]
    fn type_counts() {
        for n in 1..=6 {
            let sym = build_zeta(n, Dimension::Infinite, Parity::None, LpForm::Full3).unwrap();
            assert_eq!(BigInt::from(sym.types.len()), sym.full_type_count());
            let total: BigInt = sym.multiplicities.iter().sum();
            assert_eq!(total, BigInt::from(3u32.pow(n as u32)));
            let even = build_zeta(n, Dimension::Infinite, Parity::Even211, LpForm::Full3).unwrap();
            assert!(even.types.iter().all(|c| c[2] % 2 == 0));
        }
    }

    #[test]
    fn invalid_combinations() {
        assert!(build_zeta(2, Dimension::Finite(5), Parity::None, LpForm::Truncated2).is_err());
        assert!(build_zeta(2, Dimension::Infinite, Parity::Even211, LpForm::Truncated2).is_err());
        assert!(build_zeta(0, Dimension::Infinite, Parity::None, LpForm::Full3).is_err());
        assert!(build_zeta(2, Dimension::Finite(2), Parity::None, LpForm::Full3).is_err());
    }

    #[test]
    fn truncation_matches_direct_build() {
        let full = build_zeta(4, Dimension::Infinite, Parity::None, LpForm::Full3).unwrap();
        let direct = build_zeta(4, Dimension::Infinite, Parity::None, LpForm::Truncated2).unwrap();
        assert_eq!(full.truncate().unwrap(), direct);
        let finite = build_zeta(2, Dimension::Finite(6), Parity::None, LpForm::Full3).unwrap();
        assert!(finite.truncate().is_err());
    }

    #[test]
    fn mapper_preserves_value_and_feasibility() {
        for n in 1..=4 {
            let full = build_zeta(n, Dimension::Infinite, Parity::None, LpForm::Full3).unwrap();
            let relaxed = full.without_row(OverlapRow::Psi).unwrap();
            let (v, sol) = solve_sym(&relaxed).unwrap();
            let mapped = full.map_to_truncated(&sol.x).unwrap();
            let trunc = full.truncate().unwrap();
            let lp = trunc.to_lp().unwrap();
            assert!(lp.is_feasible(&mapped), "n={n}");
            assert_eq!(lp.objective_value(&mapped), v);
        }
    }
}
