//! The symmetrized dual of the truncated `d = ∞` programme.
//!
//! Dual variables are one multiplier `δ_k` per row string with `k` copies of
//! the `Q` row, plus `z` for `Σ p ≤ 1`. For each `m` (number of
//! `(1,1,1,1)` symbols in a column string) the constraint reads
//! `z ≥ (−1)^m 2^{m−n} + Σ_k δ_k · dual_coeff(n, m, k)`.

use num::{BigInt, Signed, Zero};

use super::simplex::{LPProblem, Relation, Sense};
use crate::error::{ensure, Result};
use crate::rational::{binomial, int, pow, ratio, Rational};

/// `Σ_ℓ (−2)^ℓ C(m,ℓ) C(n−m,k−ℓ)`.
pub fn dual_coeff(n: usize, m: usize, k: usize) -> Result<BigInt> {
    ensure!(m <= n && k <= n, Domain, "need m, k <= n (n={n}, m={m}, k={k})");
    let lo = (k + m).saturating_sub(n);
    let hi = k.min(m);
    let mut total = BigInt::zero();
    for l in lo..=hi {
        let term = binomial(m as u64, l as u64) * binomial((n - m) as u64, (k - l) as u64);
        let sign_pow = BigInt::from(-2).pow(l as u32);
        total += sign_pow * term;
    }
    Ok(total)
}

/// `t^{⊗n}` on a column string with `m` symbols `(1,1,1,1)`.
fn objective_entry(n: usize, m: usize) -> Rational {
    let sign = if m % 2 == 0 { int(1) } else { int(-1) };
    sign * pow(&int(2), m as i32 - n as i32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyticDual {
    pub n: usize,
    pub beta: Rational,
    pub gamma: Rational,
    /// `δ_0, …, δ_n`.
    pub delta: Vec<Rational>,
    pub z: Rational,
    /// Right-hand side of each reduced constraint, indexed by `m`.
    pub rhs: Vec<Rational>,
    pub feasible: bool,
    /// `Σ_k γβ^{n−k} dual_coeff(n,m,k) = γ(β+1)^{n−m}(β−2)^m` for every `m`.
    pub identity_holds: bool,
}

/// The point `δ_k = γβ^{n−k}` (`k < n`), `δ_n = 0`, with `z` the largest
/// right-hand side. Feasibility is checked exactly.
pub fn analytic_dual(n: usize, beta: &Rational, gamma: &Rational) -> Result<AnalyticDual> {
    ensure!(n >= 1, Domain, "need n >= 1");
    ensure!(
        !beta.is_negative() && *beta < int(1),
        Domain,
        "need 0 <= beta < 1, got {beta}"
    );
    let delta: Vec<Rational> = (0..=n)
        .map(|k| if k < n { gamma * pow(beta, (n - k) as i32) } else { Rational::zero() })
        .collect();
    let mut rhs = Vec::with_capacity(n + 1);
    let mut identity_holds = true;
    for m in 0..=n {
        let mut with_delta = Rational::zero();
        let mut full = Rational::zero();
        for k in 0..=n {
            let c = Rational::from_integer(dual_coeff(n, m, k)?);
            with_delta += &delta[k] * &c;
            full += gamma * pow(beta, (n - k) as i32) * c;
        }
        let closed = gamma * pow(&(beta + int(1)), (n - m) as i32) * pow(&(beta - int(2)), m as i32);
        identity_holds &= full == closed;
        rhs.push(objective_entry(n, m) + with_delta);
    }
    let z = rhs.iter().max().cloned().expect("n + 1 >= 1 constraints");
    let feasible = !z.is_negative() && delta.iter().all(|v| !v.is_negative()) && rhs.iter().all(|r| z >= *r);
    Ok(AnalyticDual {
        n,
        beta: beta.clone(),
        gamma: gamma.clone(),
        delta,
        z,
        rhs,
        feasible,
        identity_holds,
    })
}

/// [`analytic_dual`] at `β = 1/2`, `γ = 2^{−n}`, where `z = (3/4)^n`.
pub fn analytic_dual_default(n: usize) -> Result<AnalyticDual> {
    analytic_dual(n, &ratio(1, 2), &pow(&int(2), -(n as i32)))
}

/// `min z` over `(z, δ_0, …, δ_n) ≥ 0` subject to the reduced dual
/// constraints, one per `m = 0..=n`.
pub fn build_dual(n: usize) -> Result<LPProblem> {
    ensure!(n >= 1, Domain, "need n >= 1");
    let mut objective = vec![Rational::zero(); n + 2];
    objective[0] = int(1);
    let mut lp = LPProblem::new(Sense::Minimize, objective);
    for m in 0..=n {
        let mut coeffs = Vec::with_capacity(n + 2);
        coeffs.push(int(1));
        for k in 0..=n {
            coeffs.push(-Rational::from_integer(dual_coeff(n, m, k)?));
        }
        lp.add_constraint(coeffs, Relation::Ge, objective_entry(n, m))?;
    }
    Ok(lp)
}

/// The point `(z, δ)` as a vector for [`build_dual`].
pub fn dual_point(d: &AnalyticDual) -> Vec<Rational> {
    std::iter::once(d.z.clone()).chain(d.delta.iter().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::simplex::simplex_solve;

    #[test]
    fn coefficient_examples() {
        assert_eq!(dual_coeff(2, 1, 1).unwrap(), BigInt::from(-1));
        assert_eq!(dual_coeff(5, 2, 0).unwrap(), BigInt::from(1));
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(dual_coeff(n, 0, k).unwrap(), binomial(n as u64, k as u64));
            }
        }
        assert!(dual_coeff(2, 3, 0).is_err());
    }

    #[test]
    fn default_point() {
        let d1 = analytic_dual_default(1).unwrap();
        assert_eq!(d1.z, ratio(3, 4));
        assert!(d1.feasible && d1.identity_holds);
        let d12 = analytic_dual_default(12).unwrap();
        assert_eq!(d12.z, ratio(531441, 16777216));
        assert!(d12.z >= ratio(26, 1119));
        assert!(build_dual(12).unwrap().is_feasible(&dual_point(&d12)));
    }

    #[test]
    fn other_parameters() {
        let d = analytic_dual(2, &int(0), &ratio(1, 4)).unwrap();
        assert!(d.identity_holds);
        assert_eq!(d.delta, vec![int(0), int(0), int(0)]);
        assert_eq!(d.z, ratio(1, 1));
        assert!(analytic_dual(2, &int(1), &ratio(1, 4)).is_err());
    }

    #[test]
    fn dual_optima() {
        for (n, want) in [(1, ratio(1, 2)), (2, ratio(1, 2)), (6, ratio(1, 7))] {
            let sol = simplex_solve(&build_dual(n).unwrap()).unwrap();
            assert_eq!(sol.value, Some(want), "n={n}");
        }
    }
}
