//! Exact scalars: rationals, Laurent polynomials in `q`, and the field `Q(q)`.
//!
//! ```
//! use qborel::qfield::RatFunc;
//!
//! let x: RatFunc = "(q^2 - 1)/(q - 1)".parse().unwrap();
//! assert_eq!(x.to_string(), "q + 1");
//! ```

mod laurent;
mod parse;
mod qnum;
mod rat;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use qnum::{q_diff, q_number, qbinom, qbrace, qbrace_plain, qfact, qint, QNumberKind};
pub use rat::BigRat;
pub use ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("cannot parse rational function: {0}")]
    Parse(String),
}

/// The four field operations, for callers that pick one at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_op(a: &RatFunc, b: &RatFunc, op: FieldOp) -> Result<RatFunc, FieldError> {
    match op {
        FieldOp::Add => Ok(a + b),
        FieldOp::Sub => Ok(a - b),
        FieldOp::Mul => Ok(a * b),
        FieldOp::Div => a.try_div(b),
    }
}

/// `q^{-1}`-free shorthand used all over the crate.
pub fn q(k: i32) -> RatFunc {
    RatFunc::q_pow(k)
}

/// Parses a literal; panics on malformed input. Intended for constants in code.
pub fn rf(s: &str) -> RatFunc {
    s.parse().unwrap_or_else(|e| panic!("bad literal {s:?}: {e}"))
}
