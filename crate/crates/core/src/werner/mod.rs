//! Exact operators on `(C^d)^{⊗4}` with slots ordered `A B A' B'`.
//!
//! Young projectors are first built in the group algebra of S₄ and then
//! realized as sparse permutation sums, so every identity can be checked
//! twice: symbolically through cycle-count traces (`tr π = d^{#cycles}`),
//! and on the explicit `d^4 × d^4` matrices.

mod operators;
mod overlaps;
mod perm;
mod verify;

pub use operators::{
    alpha_state, alt2_alt2_element, antisym_projector, flip2, max_entangled, perm_operator, psi_from_phi,
    psi_projector, psi_q_pp, rho_element, rho_state, sigma_state, sym_projector, young_element,
    young_projector, OverlapRow, PsiQProjectors, YoungLabel,
};
pub use overlaps::{
    constraint_matrices, f_symmetry_sign, overlap_closed_form, overlap_table, overlap_table_symbolic,
    overlap_table_with, t_infinity, t_vector, t_vector_symbolic, ConstraintMatrices, Dimension,
    OverlapTable, TVector, TdVariant, GAMMA_FLIP,
};
pub use perm::{GroupAlgebraElement, Perm4};
pub use verify::{verify_rep, Check, VerifyLevel, VerifyReport};
