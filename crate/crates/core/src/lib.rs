//! Exact construction and certification of centrally symmetric
//! 2-neighborly polytopes with `2^(d-1) + 2` vertices.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalar`], [`point`], [`format`]: exact rational vectors, point sets and
//!   their text encoding.
//! - [`predicates`]: angle, symmetry and span predicates (acute, antipodal,
//!   almost acute sets).
//! - [`constructor`]: the perturbed-cube construction of an almost acute set.
//! - [`lp`], [`certifier`], [`oracle`]: exact face certificates, a phase-1
//!   simplex for the fallback route, and a brute-force facet enumerator used
//!   to cross-check edge verdicts on small instances.
//! - [`families`]: cubes, cross-polytopes and random cs sets for tests.
//! - [`bounds`]: closed-form vertex and edge bounds used as report gates.
//!
//! All certification arithmetic is exact. The only floating point anywhere is
//! in timing output.

pub mod bounds;
pub mod certifier;
pub mod constructor;
pub mod error;
pub mod families;
pub mod format;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod point;
pub mod predicates;
pub mod scalar;

pub use certifier::{
    certify_theorem, is_antipodal_set, is_edge, is_two_neighborly, CertifyOptions, EdgeMethod, EdgeReport, EdgeVerdict,
    FaceCertificate, FaceKind, TheoremReport,
};
pub use constructor::{construct, ConstructionParams, ConstructionTrace};
pub use error::{Error, Result};
pub use point::{Point, PointSet};
pub use predicates::{is_almost_acute, AlmostAcuteReport, TripleViolation};
pub use scalar::Scalar;
