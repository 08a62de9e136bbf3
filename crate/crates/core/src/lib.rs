//! Exact constructions around the antisymmetric Werner state `α_d`:
//! rational tensor algebra, Young projectors of `S₄`, partial-transpose
//! overlap tables, an exact simplex solver for the symmetry-reduced PPT
//! programmes, and the bounds derived from them.

pub mod bounds;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod rational;
pub mod werner;
pub mod young;

pub use bounds::{BoundReport, PurityResult, ZetaMode};
pub use error::{Error, Result};
pub use linalg::{RMatrix, SparseRMatrix};
pub use lp::{LPProblem, LPSolution, LPStatus, LpForm, Parity, SymLP};
pub use rational::Rational;
pub use werner::{Dimension, OverlapRow, OverlapTable, TdVariant, YoungLabel};
pub use young::Partition;
