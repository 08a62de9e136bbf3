//! Alternating maximization of `tr(ψ_A φ_A)` over real unit vectors in
//! `(∧²ℂ^d)^{⊗n}`, a lower-bound oracle for the maximal reduced purity.
//!
//! Vectors are stored in the orthonormal basis `⊗_t (|ij⟩ − |ji⟩)/√2`,
//! `i < j` lexicographic. A vector is embedded as a `d^n × d^n` matrix `M`
//! with rows `A_1…A_n` and columns `B_1…B_n`, so `ψ_A = M Mᵀ`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ensure, Result};

/// Largest allowed `d^{2n}`.
pub const MAX_SEESAW_DIM: usize = 1 << 16;

const IMPROVEMENT_TOL: f64 = 1e-12;
const POWER_TOL: f64 = 1e-13;
const POWER_MAX_ITERS: usize = 20_000;
const WARM_START_NOISE: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeesawConfig {
    pub n: usize,
    pub d: usize,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PurityResult {
    pub value: f64,
    pub n: usize,
    pub d: usize,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
    pub best_restart: usize,
    /// Purity after each accepted step of the best restart.
    pub history: Vec<f64>,
}

struct Embedding {
    side: usize,
    /// Per basis vector: `(row, col, coefficient)` entries of its matrix.
    terms: Vec<Vec<(usize, usize, f64)>>,
}

impl Embedding {
    fn new(n: usize, d: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        let side = d.pow(n as u32);
        let dim = pairs.len().pow(n as u32);
        let norm = std::f64::consts::FRAC_1_SQRT_2.powi(n as i32);
        let mut terms = Vec::with_capacity(dim);
        for s in 0..dim {
            let mut digits = Vec::with_capacity(n);
            let mut rest = s;
            for _ in 0..n {
                digits.push(pairs[rest % pairs.len()]);
                rest /= pairs.len();
            }
            digits.reverse();
            let mut entries = vec![(0usize, 0usize, norm)];
            for &(i, j) in &digits {
                let mut next = Vec::with_capacity(entries.len() * 2);
                for (a, b, c) in entries {
                    next.push((a * d + i, b * d + j, c));
                    next.push((a * d + j, b * d + i, -c));
                }
                entries = next;
            }
            terms.push(entries);
        }
        Self { side, terms }
    }

    fn dim(&self) -> usize {
        self.terms.len()
    }

    fn embed(&self, v: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.side, self.side);
        for (entries, &x) in self.terms.iter().zip(v.iter()) {
            if x == 0.0 {
                continue;
            }
            for &(a, b, c) in entries {
                m[(a, b)] += c * x;
            }
        }
        m
    }

    fn project(&self, m: &DMatrix<f64>) -> DVector<f64> {
        DVector::from_iterator(
            self.dim(),
            self.terms
                .iter()
                .map(|entries| entries.iter().map(|&(a, b, c)| c * m[(a, b)]).sum()),
        )
    }

    fn reduced(&self, v: &DVector<f64>) -> DMatrix<f64> {
        let m = self.embed(v);
        &m * m.transpose()
    }
}

fn purity(rho_a: &DMatrix<f64>) -> f64 {
    rho_a.norm_squared()
}

fn gaussian_unit(rng: &mut ChaCha8Rng, dim: usize) -> DVector<f64> {
    let v = DVector::from_iterator(dim, (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)));
    v.normalize()
}

/// Top eigenvector of `φ ↦ P_S (ρ_A ⊗ 1) P_S φ` by power iteration.
fn top_eigenvector(emb: &Embedding, rho_a: &DMatrix<f64>, start: DVector<f64>) -> DVector<f64> {
    let mut v = start;
    let mut last = f64::NEG_INFINITY;
    for _ in 0..POWER_MAX_ITERS {
        let w = emb.project(&(rho_a * emb.embed(&v)));
        let lambda = v.dot(&w);
        let norm = w.norm();
        if norm == 0.0 {
            break;
        }
        v = w / norm;
        if (lambda - last).abs() <= POWER_TOL * lambda.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        last = lambda;
    }
    v
}

fn run_restart(emb: &Embedding, iterations: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut psi = gaussian_unit(&mut rng, emb.dim());
    let mut rho = emb.reduced(&psi);
    let mut history = vec![purity(&rho)];
    for _ in 0..iterations {
        let noise = gaussian_unit(&mut rng, emb.dim()) * WARM_START_NOISE;
        let phi = top_eigenvector(emb, &rho, (&psi + noise).normalize());
        let rho_phi = emb.reduced(&phi);
        let p = purity(&rho_phi);
        let prev = *history.last().expect("non-empty");
        if p < prev {
            break;
        }
        history.push(p);
        psi = phi;
        rho = rho_phi;
        if p - prev < IMPROVEMENT_TOL {
            break;
        }
    }
    history
}

/// Best reduced purity found over `restarts` seeded see-saw runs. Restart
/// `r` draws from `seed + r`, so the result does not depend on the thread
/// count.
pub fn purity_seesaw(config: SeesawConfig) -> Result<PurityResult> {
    let SeesawConfig {
        n,
        d,
        restarts,
        iterations,
        seed,
    } = config;
    ensure!(n >= 1 && d >= 2, Domain, "need n >= 1 and d >= 2, got n={n}, d={d}");
    ensure!(restarts >= 1 && iterations >= 1, Domain, "need at least one restart and one iteration");
    let full = (d as u128).checked_pow(2 * n as u32);
    ensure!(
        full.is_some_and(|f| f <= MAX_SEESAW_DIM as u128),
        Resource,
        "d^(2n) exceeds {MAX_SEESAW_DIM} for d={d}, n={n}"
    );
    let emb = Embedding::new(n, d);
    let runs: Vec<Vec<f64>> = (0..restarts)
        .into_par_iter()
        .map(|r| run_restart(&emb, iterations, seed.wrapping_add(r as u64)))
        .collect();
    let (best_restart, history) = runs
        .into_iter()
        .enumerate()
        .fold(None::<(usize, Vec<f64>)>, |best, (r, h)| match best {
            Some((br, bh)) if bh.last() >= h.last() => Some((br, bh)),
            _ => Some((r, h)),
        })
        .expect("restarts >= 1");
    Ok(PurityResult {
        value: *history.last().expect("non-empty"),
        n,
        d,
        restarts,
        iterations,
        seed,
        best_restart,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn cfg(n: usize, d: usize, restarts: usize) -> SeesawConfig {
        SeesawConfig {
            n,
            d,
            restarts,
            iterations: 300,
            seed: 11,
        }
    }

    #[test]
    fn embedding_is_isometric() {
        let emb = Embedding::new(2, 3);
        assert_eq!(emb.dim(), 9);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = gaussian_unit(&mut rng, emb.dim());
        let m = emb.embed(&v);
        assert!((m.norm() - 1.0).abs() < 1e-12);
        assert!((emb.project(&m) - &v).norm() < 1e-12);
        // antisymmetric in each A_t B_t pair: trace of ρ_A is 1
        assert!((emb.reduced(&v).trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_copy_is_one_half() {
        for d in [3, 6] {
            let r = purity_seesaw(cfg(1, d, 3)).unwrap();
            assert!((r.value - 0.5).abs() < 1e-9, "d={d}: {}", r.value);
        }
    }

    #[test]
    fn history_is_monotone_and_reproducible() {
        let a = purity_seesaw(cfg(2, 3, 4)).unwrap();
        assert!(a.history.windows(2).all(|w| w[0] <= w[1]));
        assert!((a.value - 0.25).abs() < 1e-6);
        assert_eq!(a, purity_seesaw(cfg(2, 3, 4)).unwrap());
    }

    #[test]
    fn guards() {
        assert!(matches!(purity_seesaw(cfg(3, 7, 1)), Err(Error::Resource(_))));
        assert!(matches!(purity_seesaw(cfg(0, 3, 1)), Err(Error::Domain(_))));
    }
}
