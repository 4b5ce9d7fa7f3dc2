//! Homogeneous 3×3 SE(2) matrices and the covering map from unit DCNs.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::dcn::{Complex, DcnTangent, Point2, UnitDcn};
use crate::error::DcnError;

/// Inputs to [`from_se2`] must be rotations to within this per entry.
pub const RIGID_TOL: f64 = 1e-6;

const SERIES_TOL: f64 = 1e-4;

/// `[[r00, r01, tx], [r10, r11, ty], [0, 0, 1]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Se2Mat {
    pub r00: f64,
    pub r01: f64,
    pub r10: f64,
    pub r11: f64,
    pub tx: f64,
    pub ty: f64,
}

impl Se2Mat {
    pub const IDENTITY: Se2Mat = Se2Mat {
        r00: 1.0,
        r01: 0.0,
        r10: 0.0,
        r11: 1.0,
        tx: 0.0,
        ty: 0.0,
    };

    pub fn from_angle_translation(angle: f64, t: Point2) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            r00: c,
            r01: -s,
            r10: s,
            r11: c,
            tx: t.x,
            ty: t.y,
        }
    }

    pub fn apply(&self, v: Point2) -> Point2 {
        Point2::new(
            self.r00 * v.x + self.r01 * v.y + self.tx,
            self.r10 * v.x + self.r11 * v.y + self.ty,
        )
    }

    /// Row-major, bottom row included.
    pub fn to_rows(&self) -> [f64; 9] {
        [self.r00, self.r01, self.tx, self.r10, self.r11, self.ty, 0.0, 0.0, 1.0]
    }

    /// Parses nine row-major entries and checks the affine bottom row and
    /// the rotation block.
    pub fn from_rows(m: [f64; 9]) -> Result<Self, DcnError> {
        if m.iter().any(|x| !x.is_finite()) {
            return Err(DcnError::NonFinite);
        }
        let bottom = [m[6], m[7], m[8] - 1.0];
        if bottom.iter().any(|x| x.abs() > RIGID_TOL) {
            return Err(DcnError::NotRigid(format!(
                "bottom row is [{}, {}, {}], expected [0, 0, 1]",
                m[6], m[7], m[8]
            )));
        }
        let mat = Self {
            r00: m[0],
            r01: m[1],
            tx: m[2],
            r10: m[3],
            r11: m[4],
            ty: m[5],
        };
        mat.check_rigid(RIGID_TOL)?;
        Ok(mat)
    }

    /// Checks `RᵀR = I` entrywise and `det R = 1`.
    pub fn check_rigid(&self, tol: f64) -> Result<(), DcnError> {
        let Self { r00, r01, r10, r11, .. } = *self;
        let gram = [
            r00 * r00 + r10 * r10 - 1.0,
            r00 * r01 + r10 * r11,
            r01 * r01 + r11 * r11 - 1.0,
        ];
        if gram.iter().any(|e| e.abs() > tol) {
            return Err(DcnError::NotRigid(format!(
                "rotation block is not orthogonal (RᵀR - I = [{:e}, {:e}, {:e}])",
                gram[0], gram[1], gram[2]
            )));
        }
        let det = r00 * r11 - r01 * r10;
        if (det - 1.0).abs() > tol {
            return Err(DcnError::NotRigid(format!("rotation block has determinant {det}")));
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &Se2Mat) -> f64 {
        self.to_rows()
            .iter()
            .zip(other.to_rows())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Mul for Se2Mat {
    type Output = Se2Mat;
    fn mul(self, b: Se2Mat) -> Se2Mat {
        let a = self;
        Se2Mat {
            r00: a.r00 * b.r00 + a.r01 * b.r10,
            r01: a.r00 * b.r01 + a.r01 * b.r11,
            r10: a.r10 * b.r00 + a.r11 * b.r10,
            r11: a.r10 * b.r01 + a.r11 * b.r11,
            tx: a.r00 * b.tx + a.r01 * b.ty + a.tx,
            ty: a.r10 * b.tx + a.r11 * b.ty + a.ty,
        }
    }
}

impl Serialize for Se2Mat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Se2Mat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = <[f64; 9]>::deserialize(d)?;
        Se2Mat::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Element of se(2): angular velocity `omega` and translational part `(ux, uy)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Se2Tangent {
    pub omega: f64,
    pub ux: f64,
    pub uy: f64,
}

impl Se2Tangent {
    pub const fn new(omega: f64, ux: f64, uy: f64) -> Self {
        Self { omega, ux, uy }
    }

    /// Homogeneous form `[[0, -ω, ux], [ω, 0, uy], [0, 0, 0]]`, row-major.
    pub fn to_rows(&self) -> [f64; 9] {
        [0.0, -self.omega, self.ux, self.omega, 0.0, self.uy, 0.0, 0.0, 0.0]
    }
}

/// The covering map: rotation block from `p0²`, translation `2·p0·p1`.
pub fn to_se2(p: UnitDcn) -> Se2Mat {
    let (p0, p1) = (p.p0(), p.p1());
    let rot = p0 * p0;
    let t = 2.0 * p0 * p1;
    Se2Mat {
        r00: rot.re,
        r01: -rot.im,
        r10: rot.im,
        r11: rot.re,
        tx: t.re,
        ty: t.im,
    }
}

/// The lift of `m` with `Re(p0) > 0` (or `p0 = i` for a half turn).
pub fn from_se2(m: &Se2Mat) -> Result<UnitDcn, DcnError> {
    if m.to_rows().iter().any(|x| !x.is_finite()) {
        return Err(DcnError::NonFinite);
    }
    m.check_rigid(RIGID_TOL)?;
    let theta = m.r10.atan2(m.r00);
    let p0 = Complex::from_polar(1.0, 0.5 * theta);
    let p1 = p0.conj() * Complex::new(m.tx, m.ty) * 0.5;
    UnitDcn::new(p0, p1)
}

/// Differential of the covering map: `θi + (x + iy)ε ↦ (2θ, 2x, 2y)`.
pub fn dphi(x: DcnTangent) -> Se2Tangent {
    Se2Tangent::new(2.0 * x.theta, 2.0 * x.t.re, 2.0 * x.t.im)
}

/// Inverse of [`dphi`].
pub fn dphi_inverse(v: Se2Tangent) -> DcnTangent {
    DcnTangent::new(0.5 * v.omega, Complex::new(0.5 * v.ux, 0.5 * v.uy))
}

/// Closed-form matrix exponential on se(2).
pub fn se2_exp(v: Se2Tangent) -> Se2Mat {
    let w = v.omega;
    let (a, b) = if w.abs() < SERIES_TOL {
        let w2 = w * w;
        (1.0 - w2 / 6.0, w / 2.0 - w * w2 / 24.0)
    } else {
        (w.sin() / w, (1.0 - w.cos()) / w)
    };
    let t = Point2::new(a * v.ux - b * v.uy, b * v.ux + a * v.uy);
    Se2Mat::from_angle_translation(w, t)
}
