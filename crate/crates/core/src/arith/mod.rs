//! Exact scalars, monomials, orders and polynomials.

mod field;
mod monomial;
mod poly;
mod ring;

pub use field::{is_prime, Field, Scalar, MAX_PRIME};
pub use monomial::{Monomial, MonomialOrder, OrderKind, MAX_VARS};
pub use poly::Polynomial;
pub(crate) use poly::{masked_degree, primitive_scale};
pub use ring::{is_valid_var_name, Ring, RESERVED_PREFIX};
