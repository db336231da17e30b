//! Exact computations on arbres, involutions and harmonic division.

pub mod error;
pub mod euclid;
pub mod field;
pub mod gen;
pub mod involution;
pub mod line;
pub mod ordering;
pub mod plane;

pub use error::{Error, Result};
pub use field::{make_rational, FieldSpec, Scalar};
pub use involution::{Arbre, InvolutionClass, InvolutionConfig, InvolutiveMap, Souche};
pub use line::{cross_ratio, is_harmonic, Homography, PointPair, ProjPoint};
pub use plane::{Conic, LineChart, PlaneLine, PlanePoint};
