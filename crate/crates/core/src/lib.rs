//! Anti-commutative dual complex numbers (DCN) for 2D rigid transformations.
//!
//! A DCN is a pair of complex numbers `p0 + p1·ε` multiplied with the twisted
//! rule `(p0 + p1ε)(q0 + q1ε) = p0q0 + (p1·q̄0 + p0q1)ε`. Unit DCNs (`|p0| = 1`)
//! double-cover SE(2): `p` and `-p` describe the same rotation + translation.
//! On top of the algebra this crate provides exp/log, SLERP, linear blending
//! (DLB), conversions to the usual SE(2) encodings, a probe-based mesh
//! deformer and an operation-count / throughput comparison harness.
//!
//! ```
//! use dcn::{Point2, UnitDcn};
//!
//! let quarter_turn = UnitDcn::from_rotation(std::f64::consts::FRAC_PI_2, Point2::new(1.0, 0.0));
//! let moved = quarter_turn.act(Point2::new(2.0, 0.0));
//! assert!((moved - Point2::new(1.0, 1.0)).norm() < 1e-12);
//! ```

pub mod bench;
pub mod cmat2;
mod dcn;
pub mod deform;
pub mod dualquat;
mod error;
pub mod io;
pub mod se2;
mod tolerance;

pub use crate::dcn::{dlb, exp, slerp, Complex, Dcn, DcnTangent, Point2, UnitDcn};
pub use crate::error::DcnError;
pub use crate::tolerance::Tolerances;
