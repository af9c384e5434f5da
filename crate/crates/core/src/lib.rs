pub mod error;
pub mod exactform;
pub mod nearest;
pub mod poly;
pub mod polyhermite;
pub mod randgeom;
pub mod rng;
pub mod strata;
pub mod symmat;

pub use error::{Error, Result};
pub use exactform::ClosedFormScalar;
pub use nearest::{CriticalPoint, Tolerances};
pub use poly::{IntPolynomial, Polynomial, RatPolynomial};
pub use randgeom::{MonteCarloReport, QuadratureRule, TwoPlaneConfig};
pub use strata::{MultiplicityVector, SetPartition};
pub use symmat::{SpectralDecomposition, SymmetricMatrix};
