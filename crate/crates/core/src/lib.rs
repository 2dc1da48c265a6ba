//! Representation theory of finite regular left duo monoids over prime
//! fields: support lattices, primitive idempotents, Ext between simple
//! modules, quivers with relations, and minimal projective resolutions.

pub mod error;
pub mod ext;
pub mod field;
pub mod hsiao;
pub mod linalg;
pub mod monoid;
pub mod oracle;
pub mod rep;
pub mod topology;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use monoid::FiniteMonoid;
