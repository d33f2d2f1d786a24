//! Exact computation of highest weight vectors in k[gl_n] under the
//! conjugation action of GL_n.
//!
//! The crate builds the semi-invariants obtained by differentiating the
//! fundamental invariants, checks them exactly, and computes the graded
//! pieces of the module of highest weight vectors by brute-force linear
//! algebra, so that generation statements can be decided degree by degree.

pub mod combinat;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod nilcone;
pub mod poly;
pub mod report;
pub mod ring;
pub mod semiinv;
pub mod tensor;
pub mod text;
pub mod weight;

pub use error::{Error, Result};
pub use linalg::{PolyMatrix, RationalMatrix};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ring::{Characteristic, Ctx, RingContext, Scalar};
pub use weight::Weight;
