//! Dual quaternions, used as an independent model of the DCN ring.
//!
//! Quaternions are stored `(w, x, y, z)` for `w + xi + yj + zk`. A DCN
//! `p0 + p1ε` embeds as `p0 + p1·j·ε`, so the plane sits inside ℝ³ as the
//! `jk` plane: the point `(x, y)` corresponds to the 3-vector `(0, x, y)`.

use std::ops::{Add, Mul, Neg};

use crate::dcn::{Complex, Dcn, Point2};
use crate::error::DcnError;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub const ZERO: Quat = Quat::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quat = Quat::new(1.0, 0.0, 0.0, 0.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm(self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, b: Quat) -> Quat {
        Quat::new(self.w + b.w, self.x + b.x, self.y + b.y, self.z + b.z)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quat {
    type Output = Quat;
    /// Hamilton product.
    fn mul(self, b: Quat) -> Quat {
        let a = self;
        Quat::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

/// `q0 + q1·ε` with the ordinary commuting `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualQuat {
    pub q0: Quat,
    pub q1: Quat,
}

impl DualQuat {
    pub const ONE: DualQuat = DualQuat {
        q0: Quat::ONE,
        q1: Quat::ZERO,
    };

    pub const fn new(q0: Quat, q1: Quat) -> Self {
        Self { q0, q1 }
    }

    /// `(q0 + q1ε)~ = q0* - q1*·ε`.
    pub fn involution(self) -> Self {
        Self::new(self.q0.conj(), -self.q1.conj())
    }

    pub fn norm(self) -> f64 {
        self.q0.norm()
    }

    /// Sandwich action `p(1 + vε)p̃` on `v = (x, y, z) ↦ xi + yj + zk`.
    pub fn act(self, v: [f64; 3]) -> [f64; 3] {
        let embedded = DualQuat::new(Quat::ONE, Quat::new(0.0, v[0], v[1], v[2]));
        let r = self * embedded * self.involution();
        [r.q1.x, r.q1.y, r.q1.z]
    }

    pub fn to_array(self) -> [f64; 8] {
        let [a, b, c, d] = self.q0.to_array();
        let [e, f, g, h] = self.q1.to_array();
        [a, b, c, d, e, f, g, h]
    }

    pub fn from_array(a: [f64; 8]) -> Self {
        Self::new(Quat::new(a[0], a[1], a[2], a[3]), Quat::new(a[4], a[5], a[6], a[7]))
    }
}

impl Add for DualQuat {
    type Output = DualQuat;
    fn add(self, b: DualQuat) -> DualQuat {
        DualQuat::new(self.q0 + b.q0, self.q1 + b.q1)
    }
}

impl Mul for DualQuat {
    type Output = DualQuat;
    fn mul(self, b: DualQuat) -> DualQuat {
        DualQuat::new(self.q0 * b.q0, self.q0 * b.q1 + self.q1 * b.q0)
    }
}

/// `p0 + p1ε ↦ p0 + p1·j·ε`, with `(x + yi)·j = xj + yk`.
pub fn to_dualquat(p: Dcn) -> DualQuat {
    DualQuat::new(
        Quat::new(p.p0.re, p.p0.im, 0.0, 0.0),
        Quat::new(0.0, 0.0, p.p1.re, p.p1.im),
    )
}

/// Inverse of [`to_dualquat`] on its image.
pub fn from_dualquat(q: DualQuat, tol: f64) -> Result<Dcn, DcnError> {
    let off = [q.q0.y, q.q0.z, q.q1.w, q.q1.x];
    if off.iter().any(|x| x.abs() > tol) {
        return Err(DcnError::NotEmbedded(
            "dual quaternion has components outside span{1, i} + span{j, k}ε".into(),
        ));
    }
    Dcn::try_new(Complex::new(q.q0.w, q.q0.x), Complex::new(q.q1.y, q.q1.z))
}

/// The plane point `(x, y)` as the 3-vector `(0, x, y)`.
pub fn embed_point(v: Point2) -> [f64; 3] {
    [0.0, v.x, v.y]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::UnitDcn;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(to_dualquat(Dcn::ONE), DualQuat::ONE);
        let i = to_dualquat(Dcn::new(c(0.0, 1.0), c(0.0, 0.0)));
        assert_eq!(i, DualQuat::new(Quat::new(0.0, 1.0, 0.0, 0.0), Quat::ZERO));
        let v = to_dualquat(Dcn::new(c(0.0, 0.0), c(2.0, 3.0)));
        assert_eq!(v.q1, Quat::new(0.0, 0.0, 2.0, 3.0));
    }

    #[test]
    fn hamilton_units() {
        let (i, j, k) = (
            Quat::new(0.0, 1.0, 0.0, 0.0),
            Quat::new(0.0, 0.0, 1.0, 0.0),
            Quat::new(0.0, 0.0, 0.0, 1.0),
        );
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * j * k, -Quat::ONE);
    }

    #[test]
    fn rotation_quaternion_rotates_vectors() {
        // e^{iπ/4} is a quarter turn about the i axis: j ↦ k
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let q = DualQuat::new(Quat::new(h, h, 0.0, 0.0), Quat::ZERO);
        let r = q.act([0.0, 1.0, 0.0]);
        assert!((r[0]).abs() < 1e-15 && (r[1]).abs() < 1e-15 && (r[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn action_matches_planar_action() {
        let p = UnitDcn::from_rotation(0.7, Point2::new(1.0, -2.0));
        let v = Point2::new(0.3, 4.0);
        let r = to_dualquat(p.as_dcn()).act(embed_point(v));
        let w = p.act(v);
        assert!(r[0].abs() < 1e-14);
        assert!((r[1] - w.x).abs() < 1e-14 && (r[2] - w.y).abs() < 1e-14);
    }

    #[test]
    fn from_dualquat_inverts_embedding() {
        let p = Dcn::new(c(0.2, -1.0), c(3.0, 0.5));
        assert_eq!(from_dualquat(to_dualquat(p), 1e-12).unwrap(), p);
        let bad = DualQuat::new(Quat::new(1.0, 0.0, 0.5, 0.0), Quat::ZERO);
        assert!(matches!(from_dualquat(bad, 1e-12), Err(DcnError::NotEmbedded(_))));
    }
}
