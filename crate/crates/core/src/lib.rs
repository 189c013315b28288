pub mod arrangement;
pub mod certificate;
pub mod dataset;
pub mod error;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod pipeline;
pub mod point;
pub mod poly;
pub mod render;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldRef, NumberField, Rational};
pub use point::PointP2;
pub use poly::{HomForm, LinearForm, Monomial, Var};
