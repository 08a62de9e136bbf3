use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{ensure, Result};
use crate::linalg::SparseRMatrix;
use crate::rational::{int, Rational};

/// A permutation of the four tensor slots `{1,2,3,4}` (stored 0-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// From 0-based images; `images[i]` is where slot `i` is sent.
    pub fn new(images: [u8; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            ensure!(i < 4 && !seen[i as usize], Domain, "not a bijection on 4 points: {images:?}");
            seen[i as usize] = true;
        }
        Ok(Self(images))
    }

    /// Builds from 1-based cycles, e.g. `&[&[1, 3], &[2, 4]]` for `(13)(24)`.
    pub fn from_cycles(cycles: &[&[u8]]) -> Result<Self> {
        let mut images = [0u8, 1, 2, 3];
        let mut used = [false; 4];
        for cycle in cycles {
            for (k, &from) in cycle.iter().enumerate() {
                ensure!((1..=4).contains(&from), Domain, "cycle entry {from} outside 1..=4");
                ensure!(!used[from as usize - 1], Domain, "cycles {cycles:?} are not disjoint");
                used[from as usize - 1] = true;
                let to = cycle[(k + 1) % cycle.len()];
                images[from as usize - 1] = to - 1;
            }
        }
        Self::new(images)
    }

    /// 1-based transposition `(a b)`.
    pub fn transposition(a: u8, b: u8) -> Self {
        Self::from_cycles(&[&[a, b]]).expect("valid transposition")
    }

    pub fn images(&self) -> [u8; 4] {
        self.0
    }

    pub fn apply(&self, slot: usize) -> usize {
        self.0[slot] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        let mut images = [0u8; 4];
        for (i, img) in images.iter_mut().enumerate() {
            *img = self.0[other.0[i] as usize];
        }
        Perm4(images)
    }

    pub fn inverse(&self) -> Perm4 {
        let mut images = [0u8; 4];
        for i in 0..4 {
            images[self.0[i] as usize] = i as u8;
        }
        Perm4(images)
    }

    pub fn cycle_count(&self) -> u32 {
        let mut seen = [false; 4];
        let mut cycles = 0;
        for start in 0..4 {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
            }
        }
        cycles
    }

    pub fn sign(&self) -> i64 {
        if (4 - self.cycle_count()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All 24 elements of S₄ in lexicographic order of images.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        if let Ok(p) = Perm4::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    /// The operator on `(C^d)^{⊗4}` sending the content of slot `i` to slot
    /// `π(i)`. This is a homomorphism: `op(σ)·op(τ) = op(σ∘τ)`.
    pub fn operator(&self, d: usize) -> SparseRMatrix {
        let size = d.pow(4);
        let strides = [d * d * d, d * d, d, 1];
        let image: Vec<usize> = (0..size)
            .map(|col| {
                let mut row = 0;
                for (slot, &stride) in strides.iter().enumerate() {
                    let digit = (col / stride) % d;
                    row += digit * strides[self.apply(slot)];
                }
                row
            })
            .collect();
        SparseRMatrix::permutation(&image)
            .expect("slot relabelling is a bijection")
            .with_factor_dims(vec![d; 4])
            .expect("d^4 = product of four factors")
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; 4];
        let mut wrote = false;
        for start in 0..4 {
            if seen[start] || self.0[start] as usize == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                write!(f, "{}", i + 1)?;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "e")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Finitely supported rational combination of S₄ elements, multiplied by
/// convolution.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement {
    coeffs: BTreeMap<Perm4, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from_perm(Perm4::IDENTITY)
    }

    pub fn from_perm(p: Perm4) -> Self {
        Self::from_terms([(p, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Perm4, Rational)>) -> Self {
        let mut out = Self::zero();
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    /// `e + sign·π`
    pub fn e_plus(sign: i64, p: Perm4) -> Self {
        Self::from_terms([(Perm4::IDENTITY, Rational::one()), (p, int(sign))])
    }

    fn add_term(&mut self, p: Perm4, c: Rational) {
        let entry = self.coeffs.entry(p).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Perm4) -> Rational {
        self.coeffs.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm4, &Rational)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(*p, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(p, c)| (*p, c * s)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.coeffs {
            for (q, b) in &other.coeffs {
                out.add_term(p.compose(q), a * b);
            }
        }
        out
    }

    /// Adjoint under `π ↦ π⁻¹` (permutation operators are real orthogonal).
    pub fn adjoint(&self) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(p, c)| (p.inverse(), c.clone())))
    }

    /// Trace of the represented operator on `(C^d)^{⊗4}`, from
    /// `tr op(π) = d^{#cycles(π)}`.
    pub fn trace(&self, d: usize) -> Rational {
        self.coeffs
            .iter()
            .map(|(p, c)| c * int((d as i64).pow(p.cycle_count())))
            .sum()
    }

    pub fn operator(&self, d: usize) -> SparseRMatrix {
        let mut acc = SparseRMatrix::zeros(d.pow(4), d.pow(4))
            .with_factor_dims(vec![d; 4])
            .expect("d^4 factors");
        for (p, c) in &self.coeffs {
            acc = acc.add(&p.operator(d).scale(c)).expect("same shape");
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_structure() {
        let all = Perm4::all();
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().filter(|p| p.sign() == 1).count(), 12);
        let c = Perm4::from_cycles(&[&[1, 2, 3, 4]]).unwrap();
        assert_eq!(c.cycle_count(), 1);
        assert_eq!(c.sign(), -1);
        assert_eq!(c.compose(&c.inverse()), Perm4::IDENTITY);
        assert_eq!(c.to_string(), "(1234)");
        assert_eq!(Perm4::IDENTITY.to_string(), "e");
        assert!(Perm4::from_cycles(&[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn operator_traces_count_cycles() {
        assert_eq!(Perm4::IDENTITY.operator(3).trace().unwrap(), int(81));
        assert_eq!(Perm4::transposition(1, 3).operator(4).trace().unwrap(), int(64));
        let four_cycle = Perm4::from_cycles(&[&[1, 2, 3, 4]]).unwrap();
        assert_eq!(four_cycle.operator(5).trace().unwrap(), int(5));
    }

    #[test]
    fn operator_is_a_homomorphism() {
        let d = 2;
        let all = Perm4::all();
        for s in &all {
            for t in all.iter().step_by(5) {
                let lhs = s.operator(d).mul(&t.operator(d)).unwrap();
                assert_eq!(lhs, s.compose(t).operator(d), "{s} * {t}");
            }
        }
    }

    #[test]
    fn transposition_swaps_slots() {
        // (13) on |x1 x2 x3 x4> swaps x1 and x3
        let d = 3;
        let op = Perm4::transposition(1, 3).operator(d);
        let col = 27 + 2 * 3; // digits (1, 0, 2, 0)
        let row = 2 * 27 + 3; // digits (2, 0, 1, 0)
        assert_eq!(op.get(row, col), int(1));
    }

    #[test]
    fn symbolic_trace_matches_operator() {
        let x = GroupAlgebraElement::e_plus(-1, Perm4::transposition(1, 2))
            .mul(&GroupAlgebraElement::e_plus(1, Perm4::from_cycles(&[&[2, 3, 4]]).unwrap()));
        for d in 2..4 {
            assert_eq!(x.trace(d), x.operator(d).trace().unwrap());
        }
    }
}
