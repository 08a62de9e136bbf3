//! Partitions, Weyl dimensions, semistandard tableaux and Schur polynomials,
//! plus exact character checks for the plethysms `Sym²(∧²)` and `∧²(∧²)`.
//!
//! Semistandard means weakly increasing along rows and strictly increasing
//! down columns. Counting and evaluation use the branching rule
//! `s_λ(x_1..x_k) = Σ_μ s_μ(x_1..x_{k-1}) x_k^{|λ/μ|}` over horizontal strips
//! `λ/μ`, memoized per call on `(μ, k)`.

use std::collections::HashMap;
use std::fmt;

use num::bigint::BigInt;
use num::{One, Zero};
use serde::Serialize;

use crate::error::{ensure, Error, Result};
use crate::rational::{binomial, Rational};

/// Weakly decreasing sequence of non-negative integers; trailing zeros are
/// dropped on construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self> {
        let mut parts = parts.into();
        ensure!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            Domain,
            "partition parts must be weakly decreasing: {parts:?}"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self(parts))
    }

    /// Panicking constructor for literals known to be valid.
    pub fn of(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("valid partition literal")
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=remaining.min(max)).rev() {
                prefix.push(p);
                rec(remaining - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Every `μ ⊆ self` such that `self/μ` is a horizontal strip with `μ`
    /// having at most `max_len` rows.
    fn strip_predecessors(&self, max_len: usize) -> Vec<Partition> {
        let len = self.len();
        let mut out = Vec::new();
        let mut current = vec![0; len];
        fn rec(lambda: &[usize], i: usize, current: &mut Vec<usize>, max_len: usize, out: &mut Vec<Partition>) {
            if i == lambda.len() {
                let mu = Partition::new(current.clone()).expect("interlacing keeps order");
                if mu.len() <= max_len {
                    out.push(mu);
                }
                return;
            }
            let lo = lambda.get(i + 1).copied().unwrap_or(0);
            for v in lo..=lambda[i] {
                current[i] = v;
                rec(lambda, i + 1, current, max_len, out);
            }
        }
        rec(&self.0, 0, &mut current, max_len, &mut out);
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A filling of a Young diagram with entries in `1..=max_entry`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(shape: Partition, rows: Vec<Vec<usize>>) -> Result<Self> {
        ensure!(
            rows.len() == shape.len() && rows.iter().enumerate().all(|(i, r)| r.len() == shape.part(i)),
            Structural,
            "filling does not match shape {shape}"
        );
        Ok(Self { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|pair| pair[1].iter().zip(&pair[0]).all(|(below, above)| below > above));
        rows_ok && cols_ok
    }

    /// `Π_boxes values[entry - 1]`.
    pub fn monomial(&self, values: &[Rational]) -> Rational {
        self.rows
            .iter()
            .flatten()
            .map(|&e| values[e - 1].clone())
            .product()
    }
}

/// Weyl's dimension formula for the `U(d)` irrep with highest weight `λ`:
/// `Π_{i<j}(λ_i − λ_j − i + j) / Π_{k=1}^{d−1} k!`. Zero if `λ` has more
/// than `d` rows.
pub fn weyl_dimension(lambda: &Partition, d: usize) -> BigInt {
    if lambda.len() > d || d == 0 {
        return if d == 0 && lambda.is_empty() { BigInt::one() } else { BigInt::zero() };
    }
    let mut num = BigInt::one();
    for i in 0..d {
        for j in i + 1..d {
            let diff = lambda.part(i) as i64 - lambda.part(j) as i64 + (j - i) as i64;
            num *= diff;
        }
    }
    let mut den = BigInt::one();
    let mut fact = BigInt::one();
    for k in 1..d {
        fact *= k;
        den *= &fact;
    }
    num / den
}

/// Number of semistandard tableaux of shape `λ` with entries in `1..=d`.
pub fn ssyt_count(lambda: &Partition, d: usize) -> BigInt {
    fn rec(lambda: &Partition, k: usize, memo: &mut HashMap<(Partition, usize), BigInt>) -> BigInt {
        if lambda.is_empty() {
            return BigInt::one();
        }
        if lambda.len() > k {
            return BigInt::zero();
        }
        if let Some(v) = memo.get(&(lambda.clone(), k)) {
            return v.clone();
        }
        let total = lambda
            .strip_predecessors(k - 1)
            .iter()
            .map(|mu| rec(mu, k - 1, memo))
            .sum::<BigInt>();
        memo.insert((lambda.clone(), k), total.clone());
        total
    }
    rec(lambda, d, &mut HashMap::new())
}

/// Schur polynomial `s_λ(values)` with `d = values.len()` variables.
pub fn schur_eval(lambda: &Partition, values: &[Rational]) -> Rational {
    fn rec(
        lambda: &Partition,
        values: &[Rational],
        memo: &mut HashMap<(Partition, usize), Rational>,
    ) -> Rational {
        let k = values.len();
        if lambda.is_empty() {
            return Rational::one();
        }
        if lambda.len() > k {
            return Rational::zero();
        }
        if let Some(v) = memo.get(&(lambda.clone(), k)) {
            return v.clone();
        }
        let last = &values[k - 1];
        let total = lambda
            .strip_predecessors(k - 1)
            .iter()
            .map(|mu| {
                let strip = lambda.size() - mu.size();
                rec(mu, &values[..k - 1], memo) * num::pow(last.clone(), strip)
            })
            .sum::<Rational>();
        memo.insert((lambda.clone(), k), total.clone());
        total
    }
    rec(lambda, values, &mut HashMap::new())
}

/// Largest shape `enumerate_ssyt` will expand explicitly.
pub const MAX_ENUMERATED_BOXES: usize = 8;

/// Lists every semistandard tableau of shape `λ` with entries in `1..=d`.
pub fn enumerate_ssyt(lambda: &Partition, d: usize) -> Result<Vec<Tableau>> {
    ensure!(
        lambda.size() <= MAX_ENUMERATED_BOXES,
        Resource,
        "explicit tableau enumeration is capped at {MAX_ENUMERATED_BOXES} boxes, got {}",
        lambda.size()
    );
    let boxes: Vec<(usize, usize)> = (0..lambda.len())
        .flat_map(|r| (0..lambda.part(r)).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<usize>> = (0..lambda.len()).map(|r| vec![0; lambda.part(r)]).collect();
    let mut out = Vec::new();
    fn rec(
        idx: usize,
        boxes: &[(usize, usize)],
        rows: &mut Vec<Vec<usize>>,
        d: usize,
        shape: &Partition,
        out: &mut Vec<Tableau>,
    ) {
        if idx == boxes.len() {
            out.push(Tableau {
                shape: shape.clone(),
                rows: rows.clone(),
            });
            return;
        }
        let (r, c) = boxes[idx];
        let left = if c > 0 { rows[r][c - 1] } else { 1 };
        let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        for v in left.max(above)..=d {
            rows[r][c] = v;
            rec(idx + 1, boxes, rows, d, shape, out);
        }
    }
    rec(0, &boxes, &mut rows, d, lambda, &mut out);
    Ok(out)
}

/// Which plethysm of `∧²` to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Plethysm {
    /// `Sym²(∧²) ≅ (1,1,1,1) ⊕ (2,2)`
    Sym2,
    /// `∧²(∧²) ≅ (2,1,1)`
    Alt2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlethysmCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

/// The `d(d−1)/2` products `x_k x_l` for `k < l`, in lexicographic order.
fn pair_products(values: &[Rational]) -> Vec<Rational> {
    let d = values.len();
    let mut out = Vec::with_capacity(d * (d - 1) / 2);
    for k in 0..d {
        for l in k + 1..d {
            out.push(&values[k] * &values[l]);
        }
    }
    out
}

/// Evaluates both sides of a plethysm character identity at `values`.
pub fn plethysm_check(kind: Plethysm, d: usize, values: &[Rational]) -> Result<PlethysmCheck> {
    ensure!(d >= 3, Domain, "plethysm decomposition requires d >= 3, got {d}");
    ensure!(
        values.len() == d,
        Structural,
        "expected {d} evaluation points, got {}",
        values.len()
    );
    let z = pair_products(values);
    let mut lhs = Rational::zero();
    for i in 0..z.len() {
        let start = match kind {
            Plethysm::Sym2 => i,
            Plethysm::Alt2 => i + 1,
        };
        for j in start..z.len() {
            lhs += &z[i] * &z[j];
        }
    }
    let rhs = match kind {
        Plethysm::Sym2 => {
            schur_eval(&Partition::of(&[2, 2]), values) + schur_eval(&Partition::of(&[1, 1, 1, 1]), values)
        }
        Plethysm::Alt2 => schur_eval(&Partition::of(&[2, 1, 1]), values),
    };
    let equal = lhs == rhs;
    Ok(PlethysmCheck { lhs, rhs, equal })
}

/// Dimensions of the representations appearing in `(∧²)^{⊗2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepDims {
    pub sym2_alt2: u64,
    pub alt4: u64,
    pub box22: u64,
    pub box211: u64,
}

impl RepDims {
    pub fn as_tuple(&self) -> (u64, u64, u64, u64) {
        (self.sym2_alt2, self.alt4, self.box22, self.box211)
    }
}

/// Closed-form dimensions of `Sym²(∧²)`, `(1,1,1,1)`, `(2,2)` and
/// `(2,1,1) = ∧²(∧²)`, each cross-checked against Weyl's formula.
pub fn rep_dims(d: usize) -> Result<RepDims> {
    ensure!(d >= 3, Domain, "representation dimensions need d >= 3, got {d}");
    let n = d as u64;
    let dims = RepDims {
        sym2_alt2: n * (n - 1) * (n * n - n + 2) / 8,
        alt4: n * (n - 1) * (n - 2) * (n - 3) / 24,
        box22: (n + 1) * n * n * (n - 1) / 12,
        box211: (n + 1) * n * (n - 1) * (n - 2) / 8,
    };
    let checks = [
        ("(1,1,1,1)", dims.alt4, &[1usize, 1, 1, 1][..]),
        ("(2,2)", dims.box22, &[2, 2][..]),
        ("(2,1,1)", dims.box211, &[2, 1, 1][..]),
    ];
    for (name, closed, parts) in checks {
        let weyl = weyl_dimension(&Partition::of(parts), d);
        if weyl != BigInt::from(closed) {
            return Err(Error::Verification(format!(
                "dim {name} at d={d}: closed form {closed} != Weyl {weyl}"
            )));
        }
    }
    if dims.sym2_alt2 != dims.alt4 + dims.box22 {
        return Err(Error::Verification(format!(
            "dim Sym2(Alt2) = {} != {} + {} at d={d}",
            dims.sym2_alt2, dims.alt4, dims.box22
        )));
    }
    let m = n * (n - 1) / 2;
    if BigInt::from(dims.sym2_alt2) != binomial(m + 1, 2) || BigInt::from(dims.box211) != binomial(m, 2) {
        return Err(Error::Verification(format!(
            "plethysm dimensions do not match C(m+1,2), C(m,2) with m={m}"
        )));
    }
    Ok(dims)
}

/// `Rational` view of a dimension, handy when normalizing projectors.
pub fn dimension_rational(lambda: &Partition, d: usize) -> Rational {
    Rational::from_integer(weyl_dimension(lambda, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn partition_normalizes_and_validates() {
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap().parts(), &[2, 1]);
        assert!(matches!(Partition::new(vec![1, 2]), Err(Error::Domain(_))));
        assert_eq!(Partition::all_of_size(4).len(), 5);
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_dimension(&Partition::of(&[1, 1]), 3), BigInt::from(3));
        assert_eq!(weyl_dimension(&Partition::of(&[1, 1, 1, 1]), 3), BigInt::zero());
        assert_eq!(weyl_dimension(&Partition::of(&[2, 2]), 4), BigInt::from(20));
        // fundamental reps give binomials
        for d in 1..8 {
            for k in 1..=d {
                assert_eq!(weyl_dimension(&Partition::of(&vec![1; k]), d), binomial(d as u64, k as u64));
            }
        }
    }

    #[test]
    fn ssyt_examples() {
        assert_eq!(ssyt_count(&Partition::of(&[2, 1, 1]), 3), BigInt::from(3));
        assert_eq!(ssyt_count(&Partition::of(&[5]), 1), BigInt::one());
        assert_eq!(ssyt_count(&Partition::of(&[2, 2]), 3), BigInt::from(6));
    }

    #[test]
    fn schur_examples() {
        let ones = vec![int(1); 3];
        assert_eq!(schur_eval(&Partition::of(&[1, 1]), &ones), int(3));
        assert_eq!(schur_eval(&Partition::of(&[1, 1]), &[int(1), int(2), int(3)]), int(11));
        assert_eq!(schur_eval(&Partition::of(&[4]), &[int(1), int(1)]), int(5));
        assert_eq!(schur_eval(&Partition::of(&[]), &[int(7)]), int(1));
    }

    #[test]
    fn enumeration_respects_semistandard_rule() {
        let tabs = enumerate_ssyt(&Partition::of(&[2, 2]), 3).unwrap();
        assert_eq!(tabs.len(), 6);
        assert!(tabs.iter().all(Tableau::is_semistandard));
        assert!(matches!(
            enumerate_ssyt(&Partition::of(&[9]), 2),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn plethysm_examples() {
        let ones = vec![int(1); 4];
        let c = plethysm_check(Plethysm::Sym2, 4, &ones).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone(), c.equal), (int(21), int(21), true));
        let c = plethysm_check(Plethysm::Alt2, 3, &[ratio(1, 2), ratio(-3, 7), int(5)]).unwrap();
        assert!(c.equal);
        let c = plethysm_check(Plethysm::Sym2, 3, &[int(1), int(2), int(3)]).unwrap();
        assert!(c.equal);
        assert!(matches!(
            plethysm_check(Plethysm::Sym2, 2, &[int(1), int(1)]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rep_dims_examples() {
        assert_eq!(rep_dims(3).unwrap().as_tuple(), (6, 0, 6, 3));
        assert_eq!(rep_dims(4).unwrap().as_tuple(), (21, 1, 20, 15));
        let d5 = rep_dims(5).unwrap();
        assert_eq!((d5.sym2_alt2, d5.alt4, d5.box22), (55, 5, 50));
        assert_eq!(d5.box211, 45);
        assert!(matches!(rep_dims(2), Err(Error::Domain(_))));
    }
}
