//! Exact arithmetic: the scalar field Q(i, sqrt2), sparse polynomials and
//! rational functions in (k1, k2, k3, m, t), and the degree-2 extension by
//! the frequency symbol `w`.
//!
//! All values are immutable and all operations are pure, so the verification
//! suites can share them freely.

mod gcd;
mod omega;
mod poly;
mod ratfunc;
mod scalar;

pub use gcd::{gcd as poly_gcd, gcd_fast as poly_gcd_fast, normalize as poly_normalize};
pub use omega::{EvalPoint, OmegaElem};
pub use poly::{MPoly, Mono, Var, NVARS};
pub use ratfunc::RatFunc;
pub use scalar::{Q2, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    /// A symbolic denominator is identically zero.
    #[error("division by an identically zero element")]
    DivisionByZero,
    /// A denominator vanishes at the requested numeric point.
    #[error("denominator vanishes at the evaluation point")]
    EvalSingularity,
}

/// Binary field operation selector, mirroring the suite vocabulary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Dispatch a field operation on `OmegaElem`.
pub fn arith(a: &OmegaElem, b: &OmegaElem, op: FieldOp) -> Result<OmegaElem, ExactError> {
    match op {
        FieldOp::Add => Ok(a.add(b)),
        FieldOp::Sub => Ok(a.sub(b)),
        FieldOp::Mul => Ok(a.mul(b)),
        FieldOp::Div => a.div(b),
    }
}
