//! Exact computation of the ticket of a family of forms: the set of exponents
//! m for which the m-th powers of the members are linearly dependent.
//!
//! The algorithms are generic over an exact scalar type implementing
//! [`scalar::Field`]; the aliases below fix the two supported scalars.

pub mod codec;
pub mod families;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod ticket;
pub mod unipoly;

pub use field::{FieldElem, FieldTower};
pub use scalar::{FieldError, Rational};

pub type QPoly = poly::Poly<Rational>;
pub type NfPoly = poly::Poly<FieldElem>;
pub type QMatrix = linalg::Matrix<Rational>;
pub type NfMatrix = linalg::Matrix<FieldElem>;
pub type QUniPoly = unipoly::UniPoly<Rational>;
pub type NfUniPoly = unipoly::UniPoly<FieldElem>;
pub type QFamily = ticket::Family<Rational>;
pub type NfFamily = ticket::Family<FieldElem>;
pub type NfReport = ticket::TicketReport<FieldElem>;
