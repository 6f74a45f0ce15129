//! Exact sparse multivariate polynomial arithmetic over the rationals and
//! prime fields, with configurable monomial orders.

pub mod enumerate;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod var;

pub use enumerate::{binom_u128, monomial_by_index, monomials_of_degree};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use parse::{parse_polynomial, ParseError};
pub use poly::{BinOp, Polynomial};
pub use scalar::{Field, FieldError, Scalar};
pub use var::VarId;
