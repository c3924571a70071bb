//! Exact symbolic kernel: polynomials over conjugate variable pairs with an
//! optional Gaussian weight, differential operators, Gaussian moments and a
//! normal-ordering engine for the Weyl algebra.

mod coeff;
mod diffop;
mod expr;
mod moment;
mod weyl;

pub use coeff::{cq, cq_i, cq_int, Cq, Scalar, Q};
pub use diffop::{apply_diffop, Action, DiffOp};
pub use expr::{poly_arith, ArithOp, Kind, Monomial, Param, SymExpr, Symbol, VarId, DEFAULT_DEGREE_CAP};
pub use moment::{canonical_skeleton, gaussian_moment, CanonicalSkeleton};
pub use weyl::{normal_order, normal_order_by, symplectic_e, WeylExpr, WeylWord, MAX_WORD_LEN};
