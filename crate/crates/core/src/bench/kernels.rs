//! Straight-line transform / compose / convert kernels for the four
//! representations, generic over the scalar so the same code is both timed
//! (`f64`) and audited ([`Counted`](super::flops::Counted)).
//!
//! Each kernel is the direct formula with no structural shortcuts: the DQN
//! and 2×2 complex matrix transforms are full sandwich products, and the 3×3
//! matrix product multiplies every entry including the constant bottom row.
//! The 3×3 point transform evaluates only the two affine rows.

#![allow(clippy::should_implement_trait)]

use super::flops::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cx<S> {
    pub re: S,
    pub im: S,
}

impl<S: Scalar> Cx<S> {
    #[inline(always)]
    pub fn new(re: S, im: S) -> Self {
        Self { re, im }
    }
    #[inline(always)]
    pub fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
    #[inline(always)]
    pub fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
    #[inline(always)]
    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }
    #[inline(always)]
    pub fn scale(self, s: S) -> Self {
        Self::new(self.re * s, self.im * s)
    }
}

/// Homogeneous 3×3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3<S>(pub [S; 9]);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcnK<S> {
    pub p0: Cx<S>,
    pub p1: Cx<S>,
}

impl<S: Scalar> DcnK<S> {
    #[inline(always)]
    pub fn compose(self, q: Self) -> Self {
        Self {
            p0: self.p0.mul(q.p0),
            p1: self.p1.mul(q.p0.conj()).add(self.p0.mul(q.p1)),
        }
    }

    #[inline(always)]
    pub fn transform(self, v: Cx<S>) -> Cx<S> {
        let rot = self.p0.mul(self.p0);
        rot.mul(v).add(self.p0.mul(self.p1).scale(S::lit(2.0)))
    }

    #[inline(always)]
    pub fn to_mat3(self) -> Mat3<S> {
        let rot = self.p0.mul(self.p0);
        let t = self.p0.mul(self.p1).scale(S::lit(2.0));
        let (z, o) = (S::lit(0.0), S::lit(1.0));
        Mat3([rot.re, -rot.im, t.re, rot.im, rot.re, t.im, z, z, o])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat<S>(pub [S; 4]);

impl<S: Scalar> Quat<S> {
    #[inline(always)]
    pub fn mul(self, b: Self) -> Self {
        let [aw, ax, ay, az] = self.0;
        let [bw, bx, by, bz] = b.0;
        Quat([
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ])
    }
    #[inline(always)]
    pub fn add(self, b: Self) -> Self {
        let [aw, ax, ay, az] = self.0;
        let [bw, bx, by, bz] = b.0;
        Quat([aw + bw, ax + bx, ay + by, az + bz])
    }
    #[inline(always)]
    pub fn conj(self) -> Self {
        let [w, x, y, z] = self.0;
        Quat([w, -x, -y, -z])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DqK<S> {
    pub q0: Quat<S>,
    pub q1: Quat<S>,
}

impl<S: Scalar> DqK<S> {
    #[inline(always)]
    pub fn compose(self, b: Self) -> Self {
        Self {
            q0: self.q0.mul(b.q0),
            q1: self.q0.mul(b.q1).add(self.q1.mul(b.q0)),
        }
    }

    #[inline(always)]
    fn involution(self) -> Self {
        let d = self.q1.conj().0;
        Self {
            q0: self.q0.conj(),
            q1: Quat([-d[0], -d[1], -d[2], -d[3]]),
        }
    }

    /// `p (1 + (x j + y k) ε) p̃`, reading the result back off the `j`, `k` slots.
    #[inline(always)]
    pub fn transform(self, v: Cx<S>) -> Cx<S> {
        let (z, o) = (S::lit(0.0), S::lit(1.0));
        let point = DqK {
            q0: Quat([o, z, z, z]),
            q1: Quat([z, z, v.re, v.im]),
        };
        let r = self.compose(point).compose(self.involution());
        Cx::new(r.q1.0[2], r.q1.0[3])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMatK<S> {
    pub m: [Cx<S>; 4],
}

impl<S: Scalar> CMatK<S> {
    #[inline(always)]
    pub fn compose(self, b: Self) -> Self {
        let [a00, a01, a10, a11] = self.m;
        let [b00, b01, b10, b11] = b.m;
        Self {
            m: [
                a00.mul(b00).add(a01.mul(b10)),
                a00.mul(b01).add(a01.mul(b11)),
                a10.mul(b00).add(a11.mul(b10)),
                a10.mul(b01).add(a11.mul(b11)),
            ],
        }
    }

    #[inline(always)]
    fn tilde(self) -> Self {
        let [m00, m01, m10, m11] = self.m;
        Self {
            m: [m11, m01, m10, m00],
        }
    }

    /// `M · [[1, v], [0, 1]] · M̃`, reading the result off the upper-right entry.
    #[inline(always)]
    pub fn transform(self, v: Cx<S>) -> Cx<S> {
        let (z, o) = (S::lit(0.0), S::lit(1.0));
        let point = CMatK {
            m: [Cx::new(o, z), v, Cx::new(z, z), Cx::new(o, z)],
        };
        self.compose(point).compose(self.tilde()).m[1]
    }

    #[inline(always)]
    pub fn to_mat3(self) -> Mat3<S> {
        DcnK {
            p0: self.m[0],
            p1: self.m[1],
        }
        .to_mat3()
    }
}

impl<S: Scalar> Mat3<S> {
    #[inline(always)]
    pub fn compose(self, b: Self) -> Self {
        let a = self.0;
        let b = b.0;
        let e = |r: usize, c: usize| a[3 * r] * b[c] + a[3 * r + 1] * b[3 + c] + a[3 * r + 2] * b[6 + c];
        Mat3([
            e(0, 0),
            e(0, 1),
            e(0, 2),
            e(1, 0),
            e(1, 1),
            e(1, 2),
            e(2, 0),
            e(2, 1),
            e(2, 2),
        ])
    }

    /// Product with the homogeneous column `(x, y, 1)`; the third row is
    /// always 1 and is skipped.
    #[inline(always)]
    pub fn transform(self, v: Cx<S>) -> Cx<S> {
        let m = self.0;
        let o = S::lit(1.0);
        Cx::new(
            m[0] * v.re + m[1] * v.im + m[2] * o,
            m[3] * v.re + m[4] * v.im + m[5] * o,
        )
    }

    /// Half-angle lift with `Re(p0) ≥ 0`; no trigonometry.
    #[inline(always)]
    pub fn to_dcn(self) -> DcnK<S> {
        let m = self.0;
        let (c, s) = (m[0], m[3]);
        let (zero, one, half) = (S::lit(0.0), S::lit(1.0), S::lit(0.5));
        let (ch, sh) = if c >= zero {
            let ch = ((one + c) * half).sqrt();
            (ch, s / (ch + ch))
        } else {
            let mut sh = ((one - c) * half).sqrt();
            if s < zero {
                sh = -sh;
            }
            (s / (sh + sh), sh)
        };
        let p0 = Cx::new(ch, sh);
        let p1 = p0.conj().mul(Cx::new(m[2], m[5])).scale(half);
        DcnK { p0, p1 }
    }
}
