//! Exact computations on generalized quaternion algebras `H^{a,b}` viewed as
//! superalgebras: superderivations, local superderivations and
//! super-biderivations, each with an exact solver and an independent check.

pub mod algebra;
pub mod biderivations;
pub mod cli;
pub mod derivations;
pub mod error;
pub mod json;
pub mod linear;
pub mod local;
pub mod ring;
pub mod sampling;
pub mod theorems;

pub use algebra::{AlgebraParams, Parity, Quaternion};
pub use biderivations::{BiderivationSpec, CanonicalFamily, Symmetry};
pub use derivations::DerivationParams;
pub use error::{Error, Result};
pub use linear::{BilinMap, LinMap, Matrix, SolutionSpace};
pub use local::LocalVerdict;
pub use ring::{Ring, RingElement};
