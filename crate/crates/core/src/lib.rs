//! Exact calculus on step functions over the half-line: rearrangements,
//! Hardy-type averaging operators, Lorentz-Zygmund norms, optimal range and
//! domain functionals, and direct one-dimensional maximal/singular operators.

pub mod error;
pub mod euclid;
pub mod expr;
pub mod lz;
pub mod operators;
pub mod optimal;
pub mod quad;
pub mod stepfn;
pub mod value;
pub mod verify;

pub use error::{Error, Result};
pub use expr::{PiecewiseExpr, Segment, Term, TermKind};
pub use lz::{LZParams, Variant};
pub use stepfn::StepFunction;
pub use value::Extended;
