//! Exact linear programming: a rational simplex solver with dual
//! certificates and the symmetry-reduced PPT programmes built on it.

mod dual;
mod simplex;
mod zeta;

pub use dual::{analytic_dual, analytic_dual_default, build_dual, dual_coeff, dual_point, AnalyticDual};
pub use simplex::{
    simplex_solve, verify_certificate, Constraint, LPProblem, LPSolution, LPStatus, Relation, Sense,
};
pub use zeta::{build_zeta, build_zeta_with, compositions, solve_sym, solve_zeta, LpForm, Parity, SymLP, Symbol};
