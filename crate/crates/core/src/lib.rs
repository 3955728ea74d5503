//! Exact computations around the `D4`, `B4`, `F4` and `H4` point
//! configurations in `P^3`: reflection groups, invariant rings, the bigraded
//! ring of leading forms at a point of the `H4` orbit, and Waldschmidt
//! constant certificates.

pub mod cache;
pub mod configs;
pub mod error;
pub mod field;
pub mod graded;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod matrix;
pub mod pipeline;
pub mod poly;
pub mod projective;
pub mod properties;
pub mod waldschmidt;

pub use error::{Error, Result};
pub use field::{FieldElement, Rational};
pub use group::MatrixGroup;
pub use matrix::Matrix4;
pub use poly::{Monomial, Polynomial, VarSet};
pub use projective::{Plane, ProjectivePoint};
