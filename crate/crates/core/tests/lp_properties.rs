use antisym_core::linalg::RMatrix;
use antisym_core::lp::{
    analytic_dual_default, build_dual, build_zeta, dual_point, simplex_solve, solve_sym, solve_zeta, verify_certificate,
    LPProblem, LPStatus, Relation, Sense, SymLP,
};
use antisym_core::rational::{int, pow, ratio, Rational};
use antisym_core::werner::OverlapRow;
use antisym_core::{Dimension, LpForm, Parity, YoungLabel};
use num::Zero;
use proptest::prelude::*;

const INF: Dimension = Dimension::Infinite;

/// The LP over all `s^n` strings, with no symmetry reduction.
fn unreduced(sym: &SymLP) -> LPProblem {
    let n = sym.n;
    let s = sym.symbols.len();
    let single = RMatrix::from_rows(sym.rows.clone()).unwrap();
    let big = single.tensor_power(n);
    let weights: Vec<Rational> = sym.symbols.iter().map(|x| x.weight.clone()).collect();
    let odd_pos = sym.symbols.iter().position(|x| x.label == YoungLabel::Box211);
    let strings: Vec<Vec<usize>> = (0..s.pow(n as u32))
        .map(|mut i| {
            let mut digits = vec![0; n];
            for slot in digits.iter_mut().rev() {
                *slot = i % s;
                i /= s;
            }
            digits
        })
        .collect();
    let allowed: Vec<bool> = strings
        .iter()
        .map(|w| match (sym.parity, odd_pos) {
            (Parity::Even211, Some(p)) => w.iter().filter(|&&y| y == p).count() % 2 == 0,
            _ => true,
        })
        .collect();
    let objective = strings.iter().map(|w| w.iter().map(|&y| weights[y].clone()).product()).collect();
    let mut lp = LPProblem::new(Sense::Maximize, objective);
    for r in 0..big.rows() {
        lp.add_constraint(big.row(r).to_vec(), Relation::Ge, int(0)).unwrap();
    }
    lp.add_constraint(vec![int(1); strings.len()], sym.normalization, int(1)).unwrap();
    for (j, ok) in allowed.iter().enumerate() {
        if !ok {
            let mut coeffs = vec![int(0); strings.len()];
            coeffs[j] = int(1);
            lp.add_constraint(coeffs, Relation::Eq, int(0)).unwrap();
        }
    }
    lp
}

#[test]
fn reduced_lp_matches_unreduced_oracle() {
    let cases = [
        (INF, Parity::None, LpForm::Truncated2),
        (INF, Parity::None, LpForm::Full3),
        (INF, Parity::Even211, LpForm::Full3),
        (Dimension::Finite(3), Parity::None, LpForm::Full3),
        (Dimension::Finite(4), Parity::None, LpForm::Full3),
        (Dimension::Finite(6), Parity::Even211, LpForm::Full3),
    ];
    for (d, parity, form) in cases {
        for n in 1..=3 {
            let sym = build_zeta(n, d, parity, form).unwrap();
            let (reduced, _) = solve_sym(&sym).unwrap();
            let lp = unreduced(&sym);
            let sol = simplex_solve(&lp).unwrap();
            verify_certificate(&lp, &sol).unwrap();
            assert_eq!(*sol.optimum().unwrap(), reduced, "d={d} {parity:?} {form:?} n={n}");
        }
    }
}

#[test]
fn every_reduced_instance_has_a_certificate() {
    for n in 1..=8 {
        for (d, form) in [(INF, LpForm::Truncated2), (INF, LpForm::Full3), (Dimension::Finite(5), LpForm::Full3)] {
            let sym = build_zeta(n, d, Parity::None, form).unwrap();
            let lp = sym.to_lp().unwrap();
            let sol = simplex_solve(&lp).unwrap();
            verify_certificate(&lp, &sol).unwrap();
            assert_eq!(sol.dual_value(&lp), *sol.optimum().unwrap());
        }
    }
}

#[test]
fn dual_sandwich_up_to_twenty_copies() {
    for n in 1..=20 {
        let (zeta, _) = solve_zeta(n, INF, Parity::None, LpForm::Truncated2).unwrap();
        let dual = build_dual(n).unwrap();
        let sol = simplex_solve(&dual).unwrap();
        verify_certificate(&dual, &sol).unwrap();
        let analytic = analytic_dual_default(n).unwrap();
        assert!(dual.is_feasible(&dual_point(&analytic)), "n={n}");
        assert_eq!(*sol.optimum().unwrap(), zeta, "n={n}");
        assert!(zeta <= analytic.z, "n={n}");
        assert!(zeta > Rational::zero());
    }
}

#[test]
fn relaxations_are_ordered() {
    for n in 1..=6 {
        let full = build_zeta(n, INF, Parity::None, LpForm::Full3).unwrap();
        let even = build_zeta(n, INF, Parity::Even211, LpForm::Full3).unwrap();
        let v = |s: &SymLP| solve_sym(s).unwrap().0;
        let (ve, vf) = (v(&even), v(&full));
        let vr = v(&full.without_row(OverlapRow::Psi).unwrap());
        let vt = v(&full.truncate().unwrap());
        assert!(ve <= vf && vf <= vr && vr <= vt, "n={n}: {ve} {vf} {vr} {vt}");
        assert_eq!(vt, solve_zeta(n, INF, Parity::None, LpForm::Truncated2).unwrap().0);

        let (_, sol) = solve_sym(&full).unwrap();
        let mapped = full.map_to_truncated(&sol.x).unwrap();
        let truncated = full.truncate().unwrap().to_lp().unwrap();
        assert!(truncated.is_feasible(&mapped), "n={n}");
        assert_eq!(truncated.objective_value(&mapped), vf);
    }
}

#[test]
fn qutrit_values_halve_per_copy() {
    for n in 1..=8 {
        let (v, _) = solve_zeta(n, Dimension::Finite(3), Parity::None, LpForm::Full3).unwrap();
        assert_eq!(v, pow(&ratio(1, 2), n as i32));
    }
}

#[test]
fn finite_dimension_optima_are_monotone_in_n() {
    for d in [Dimension::Finite(4), Dimension::Finite(7), INF] {
        let values: Vec<Rational> = (1..=5)
            .map(|n| solve_zeta(n, d, Parity::None, LpForm::Full3).unwrap().0)
            .collect();
        assert!(values.windows(2).all(|w| w[1] <= w[0]), "d={d}: {values:?}");
    }
}

fn small_int() -> impl Strategy<Value = Rational> {
    (-4i64..=4).prop_map(int)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_packing_lps_satisfy_strong_duality(
        a in proptest::collection::vec(small_int(), 12),
        b in proptest::collection::vec(0i64..=6, 3),
        c in proptest::collection::vec(small_int(), 4),
    ) {
        let mut lp = LPProblem::new(Sense::Maximize, c);
        for (i, rhs) in b.iter().enumerate() {
            lp.add_constraint(a[4 * i..4 * i + 4].to_vec(), Relation::Le, int(*rhs)).unwrap();
        }
        let sol = simplex_solve(&lp).unwrap();
        prop_assert_ne!(sol.status, LPStatus::Infeasible);
        if sol.status == LPStatus::Optimal {
            verify_certificate(&lp, &sol).unwrap();
            prop_assert_eq!(sol.dual_value(&lp), sol.optimum().unwrap().clone());
        }
    }

    #[test]
    fn random_equality_lps_agree_with_their_duals(
        a in proptest::collection::vec(small_int(), 6),
        x0 in proptest::collection::vec(0i64..=3, 3),
        c in proptest::collection::vec(small_int(), 3),
    ) {
        // b = A x0 keeps the primal feasible.
        let mut lp = LPProblem::new(Sense::Minimize, c);
        for i in 0..2 {
            let row = a[3 * i..3 * i + 3].to_vec();
            let rhs: Rational = row.iter().zip(&x0).map(|(r, &x)| r * int(x)).sum();
            lp.add_constraint(row, Relation::Eq, rhs).unwrap();
        }
        let sol = simplex_solve(&lp).unwrap();
        prop_assert_ne!(sol.status, LPStatus::Infeasible);
        if sol.status == LPStatus::Optimal {
            verify_certificate(&lp, &sol).unwrap();
            let x0r: Vec<Rational> = x0.iter().map(|&v| int(v)).collect();
            prop_assert!(*sol.optimum().unwrap() <= lp.objective_value(&x0r));
        }
    }
}
