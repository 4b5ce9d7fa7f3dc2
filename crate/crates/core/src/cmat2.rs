//! Upper-triangular 2×2 complex matrix model of the DCN ring.

use std::ops::{Add, Mul};

use crate::dcn::{Complex, Dcn};
use crate::error::DcnError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2 {
    pub m00: Complex,
    pub m01: Complex,
    pub m10: Complex,
    pub m11: Complex,
}

impl CMat2 {
    pub fn identity() -> Self {
        let (o, z) = (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0));
        Self {
            m00: o,
            m01: z,
            m10: z,
            m11: o,
        }
    }

    pub fn det(&self) -> Complex {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    /// The DCN involution carried over: swap the diagonal.
    pub fn tilde(&self) -> Self {
        Self {
            m00: self.m11,
            m01: self.m01,
            m10: self.m10,
            m11: self.m00,
        }
    }

    /// `[m00.re, m00.im, m01.re, m01.im, m10.re, m10.im, m11.re, m11.im]`.
    pub fn to_array(&self) -> [f64; 8] {
        [
            self.m00.re,
            self.m00.im,
            self.m01.re,
            self.m01.im,
            self.m10.re,
            self.m10.im,
            self.m11.re,
            self.m11.im,
        ]
    }

    pub fn from_array(a: [f64; 8]) -> Self {
        Self {
            m00: Complex::new(a[0], a[1]),
            m01: Complex::new(a[2], a[3]),
            m10: Complex::new(a[4], a[5]),
            m11: Complex::new(a[6], a[7]),
        }
    }
}

impl Add for CMat2 {
    type Output = CMat2;
    fn add(self, b: CMat2) -> CMat2 {
        CMat2 {
            m00: self.m00 + b.m00,
            m01: self.m01 + b.m01,
            m10: self.m10 + b.m10,
            m11: self.m11 + b.m11,
        }
    }
}

impl Mul for CMat2 {
    type Output = CMat2;
    fn mul(self, b: CMat2) -> CMat2 {
        let a = self;
        CMat2 {
            m00: a.m00 * b.m00 + a.m01 * b.m10,
            m01: a.m00 * b.m01 + a.m01 * b.m11,
            m10: a.m10 * b.m00 + a.m11 * b.m10,
            m11: a.m10 * b.m01 + a.m11 * b.m11,
        }
    }
}

/// `p0 + p1ε ↦ [[p0, p1], [0, p̄0]]`.
pub fn to_cmat2(p: Dcn) -> CMat2 {
    CMat2 {
        m00: p.p0,
        m01: p.p1,
        m10: Complex::new(0.0, 0.0),
        m11: p.p0.conj(),
    }
}

/// Inverse of [`to_cmat2`] on its image.
pub fn from_cmat2(m: &CMat2, tol: f64) -> Result<Dcn, DcnError> {
    if m.m10.norm() > tol || (m.m11 - m.m00.conj()).norm() > tol {
        return Err(DcnError::NotEmbedded(
            "matrix is not of the form [[p0, p1], [0, conj(p0)]]".into(),
        ));
    }
    Dcn::try_new(m.m00, m.m01)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_maps_to_identity() {
        assert_eq!(to_cmat2(Dcn::ONE), CMat2::identity());
    }

    #[test]
    fn determinant_is_squared_norm() {
        let p = Dcn::new(Complex::new(3.0, 4.0), Complex::new(-7.0, 2.0));
        let det = to_cmat2(p).det();
        assert_eq!(det, Complex::new(25.0, 0.0));
    }

    #[test]
    fn tilde_commutes_with_embedding() {
        let p = Dcn::new(Complex::new(0.5, -2.0), Complex::new(1.0, 1.0));
        assert_eq!(to_cmat2(p.conj_tilde()), to_cmat2(p).tilde());
    }

    #[test]
    fn from_cmat2_rejects_general_matrices() {
        let p = Dcn::new(Complex::new(0.5, -2.0), Complex::new(1.0, 1.0));
        assert_eq!(from_cmat2(&to_cmat2(p), 1e-12).unwrap(), p);
        let mut m = to_cmat2(p);
        m.m11 = Complex::new(0.0, 0.0);
        assert!(from_cmat2(&m, 1e-12).is_err());
    }
}
