use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::DcnError;
use crate::tolerance::Tolerances;

pub type Complex = num_complex::Complex64;

const ONE: Complex = Complex::new(1.0, 0.0);
const ZERO: Complex = Complex::new(0.0, 0.0);

fn finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// A point of the plane, identified with the complex number `x + iy`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<Complex> for Point2 {
    fn from(z: Complex) -> Self {
        Self::new(z.re, z.im)
    }
}

impl From<Point2> for Complex {
    fn from(p: Point2) -> Self {
        Complex::new(p.x, p.y)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Self::new(x, y)
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// A dual complex number `p0 + p1·ε` with the anti-commutative product
/// `ε·z = z̄·ε`.
///
/// Serialized as the flat array `[p0.re, p0.im, p1.re, p1.im]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dcn {
    pub p0: Complex,
    pub p1: Complex,
}

impl Dcn {
    pub const ZERO: Dcn = Dcn { p0: ZERO, p1: ZERO };
    pub const ONE: Dcn = Dcn { p0: ONE, p1: ZERO };
    /// The nilpotent unit `ε`.
    pub const EPSILON: Dcn = Dcn { p0: ZERO, p1: ONE };

    /// Builds a DCN without checking finiteness; use [`Dcn::try_new`] for
    /// untrusted input.
    pub const fn new(p0: Complex, p1: Complex) -> Self {
        Self { p0, p1 }
    }

    pub fn try_new(p0: Complex, p1: Complex) -> Result<Self, DcnError> {
        if finite(p0) && finite(p1) {
            Ok(Self { p0, p1 })
        } else {
            Err(DcnError::NonFinite)
        }
    }

    pub fn from_array(a: [f64; 4]) -> Result<Self, DcnError> {
        Self::try_new(Complex::new(a[0], a[1]), Complex::new(a[2], a[3]))
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.p0.re, self.p0.im, self.p1.re, self.p1.im]
    }

    /// The involution `p̃ = p̄0 + p1·ε`: only the primal part is conjugated.
    pub fn conj_tilde(self) -> Self {
        Self::new(self.p0.conj(), self.p1)
    }

    /// `|p| = |p0|`; the dual part does not contribute.
    pub fn norm(self) -> f64 {
        self.p0.norm()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.p0 * s, self.p1 * s)
    }

    pub fn inverse(self) -> Result<Self, DcnError> {
        self.inverse_with(&Tolerances::DEFAULT)
    }

    /// Two-sided inverse `(1/p0, -p1/|p0|²)`.
    pub fn inverse_with(self, tol: &Tolerances) -> Result<Self, DcnError> {
        let n = self.norm();
        // also rejects NaN
        if n.is_nan() || n <= tol.singular {
            return Err(DcnError::SingularDcn { norm: n });
        }
        Ok(Self::new(self.p0.inv(), -self.p1 / (n * n)))
    }

    pub fn normalize(self) -> Result<UnitDcn, DcnError> {
        self.normalize_with(&Tolerances::DEFAULT)
    }

    pub fn normalize_with(self, tol: &Tolerances) -> Result<UnitDcn, DcnError> {
        let n = self.norm();
        // also rejects NaN
        if n.is_nan() || n <= tol.singular {
            return Err(DcnError::SingularDcn { norm: n });
        }
        Ok(UnitDcn(Self::new(self.p0 / n, self.p1 / n)))
    }

    pub fn is_finite(self) -> bool {
        finite(self.p0) && finite(self.p1)
    }
}

impl Add for Dcn {
    type Output = Dcn;
    fn add(self, rhs: Dcn) -> Dcn {
        Dcn::new(self.p0 + rhs.p0, self.p1 + rhs.p1)
    }
}

impl Sub for Dcn {
    type Output = Dcn;
    fn sub(self, rhs: Dcn) -> Dcn {
        Dcn::new(self.p0 - rhs.p0, self.p1 - rhs.p1)
    }
}

impl Neg for Dcn {
    type Output = Dcn;
    fn neg(self) -> Dcn {
        Dcn::new(-self.p0, -self.p1)
    }
}

impl Mul for Dcn {
    type Output = Dcn;
    fn mul(self, rhs: Dcn) -> Dcn {
        Dcn::new(self.p0 * rhs.p0, self.p1 * rhs.p0.conj() + self.p0 * rhs.p1)
    }
}

impl Mul<f64> for Dcn {
    type Output = Dcn;
    fn mul(self, rhs: f64) -> Dcn {
        self.scale(rhs)
    }
}

impl Serialize for Dcn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dcn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let a = <[f64; 4]>::deserialize(d)?;
        Dcn::from_array(a).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Dcn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}i) + ({} + {}i)ε",
            self.p0.re, self.p0.im, self.p1.re, self.p1.im
        )
    }
}

/// A unit DCN (`|p0| = 1`): one of the two lifts of a 2D rigid motion.
///
/// Constructors accept inputs with `||p0| - 1|` up to
/// [`Tolerances::unit_repair`] and rescale them onto the unit circle.
/// Products of units are not renormalized; call [`UnitDcn::renormalized`]
/// after long composition chains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitDcn(Dcn);

impl UnitDcn {
    pub const IDENTITY: UnitDcn = UnitDcn(Dcn::ONE);

    pub fn new(p0: Complex, p1: Complex) -> Result<Self, DcnError> {
        Self::from_dcn_with(Dcn::try_new(p0, p1)?, &Tolerances::DEFAULT)
    }

    pub fn from_dcn(d: Dcn) -> Result<Self, DcnError> {
        Self::from_dcn_with(d, &Tolerances::DEFAULT)
    }

    pub fn from_dcn_with(d: Dcn, tol: &Tolerances) -> Result<Self, DcnError> {
        if !d.is_finite() {
            return Err(DcnError::NonFinite);
        }
        let n = d.norm();
        if (n - 1.0).abs() > tol.unit_repair {
            return Err(DcnError::NotUnit { norm: n });
        }
        if n == 1.0 {
            Ok(Self(d))
        } else {
            Ok(Self(d.scale(1.0 / n)))
        }
    }

    pub fn from_array(a: [f64; 4]) -> Result<Self, DcnError> {
        Self::from_dcn(Dcn::from_array(a)?)
    }

    /// Used where the construction is unit by algebra (products, inverses,
    /// exp). Callers must not feed arbitrary data through here.
    pub(crate) const fn new_unchecked(p0: Complex, p1: Complex) -> Self {
        Self(Dcn::new(p0, p1))
    }

    /// Pure translation by `d`: `(1, d/2)`.
    pub fn from_translation(d: Point2) -> Self {
        Self::new_unchecked(ONE, Complex::from(d) * 0.5)
    }

    /// Rotation by `theta` radians counter-clockwise about `center`.
    ///
    /// The primal part is `e^{iθ/2}` on the principal branch, so turning by
    /// `θ + 2π` yields the other lift `-p`.
    pub fn from_rotation(theta: f64, center: Point2) -> Self {
        let half = Complex::from_polar(1.0, 0.5 * theta);
        let v = Complex::from(center);
        Self::new_unchecked(half, (half.conj() - half) * v * 0.5)
    }

    pub fn p0(self) -> Complex {
        self.0.p0
    }

    pub fn p1(self) -> Complex {
        self.0.p1
    }

    pub fn as_dcn(self) -> Dcn {
        self.0
    }

    pub fn to_array(self) -> [f64; 4] {
        self.0.to_array()
    }

    /// Inverse of a unit: `(p̄0, -p1)`.
    pub fn inverse(self) -> Self {
        Self::new_unchecked(self.0.p0.conj(), -self.0.p1)
    }

    /// Rigid action `v ↦ p0²·v + 2·p0·p1`, i.e. the ε-part of `p(1 + vε)p̃`.
    pub fn act(self, v: Point2) -> Point2 {
        let Dcn { p0, p1 } = self.0;
        Point2::from(p0 * p0 * Complex::from(v) + 2.0 * p0 * p1)
    }

    /// Rotation angle of the represented motion, in `(-π, π]`.
    pub fn rotation_angle(self) -> f64 {
        let p0 = self.0.p0;
        (p0 * p0).arg()
    }

    /// Image of the origin, `2·p0·p1`.
    pub fn translation(self) -> Point2 {
        Point2::from(2.0 * self.0.p0 * self.0.p1)
    }

    pub fn renormalized(self) -> Self {
        let n = self.0.norm();
        Self(self.0.scale(1.0 / n))
    }

    /// Returns `-self` when `self` lies in the opposite hemisphere from
    /// `reference`, i.e. when `Re(p0 · r̄0) < 0`.
    pub fn hemisphere_aligned(self, reference: UnitDcn) -> Self {
        if (self.0.p0 * reference.0.p0.conj()).re < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn log(self) -> Result<DcnTangent, DcnError> {
        self.log_with(&Tolerances::DEFAULT)
    }

    /// Principal logarithm `θi + (θ / sin θ)·p1·ε` with `θ = arg p0 ∈ [-π, π)`.
    pub fn log_with(self, tol: &Tolerances) -> Result<DcnTangent, DcnError> {
        let Dcn { p0, p1 } = self.0;
        let mut theta = p0.arg();
        if theta == std::f64::consts::PI {
            theta = -theta;
        }
        let s = theta.sin();
        if s.abs() <= tol.log && theta.cos() < 0.0 {
            if p1.norm() <= tol.singular {
                return Ok(DcnTangent::new(theta, ZERO));
            }
            return Err(DcnError::LogSingular { theta });
        }
        let factor = if theta.abs() < tol.taylor {
            let t2 = theta * theta;
            1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0
        } else {
            theta / s
        };
        Ok(DcnTangent::new(theta, p1 * factor))
    }

    pub fn pow(self, t: f64) -> Result<Self, DcnError> {
        self.pow_with(t, &Tolerances::DEFAULT)
    }

    /// `exp(t·log(self))`.
    pub fn pow_with(self, t: f64, tol: &Tolerances) -> Result<Self, DcnError> {
        Ok(exp_with(self.log_with(tol)?.scale(t), tol))
    }
}

impl Mul for UnitDcn {
    type Output = UnitDcn;
    fn mul(self, rhs: UnitDcn) -> UnitDcn {
        UnitDcn(self.0 * rhs.0)
    }
}

impl Neg for UnitDcn {
    type Output = UnitDcn;
    fn neg(self) -> UnitDcn {
        UnitDcn(-self.0)
    }
}

impl From<UnitDcn> for Dcn {
    fn from(p: UnitDcn) -> Dcn {
        p.0
    }
}

impl TryFrom<Dcn> for UnitDcn {
    type Error = DcnError;
    fn try_from(d: Dcn) -> Result<Self, DcnError> {
        UnitDcn::from_dcn(d)
    }
}

impl Serialize for UnitDcn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitDcn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let a = <[f64; 4]>::deserialize(d)?;
        UnitDcn::from_array(a).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for UnitDcn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Lie-algebra element `θi + t·ε`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DcnTangent {
    pub theta: f64,
    pub t: Complex,
}

impl DcnTangent {
    pub const fn new(theta: f64, t: Complex) -> Self {
        Self { theta, t }
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.theta * s, self.t * s)
    }

    /// The tangent as a (non-unit) DCN with zero real primal part.
    pub fn as_dcn(self) -> Dcn {
        Dcn::new(Complex::new(0.0, self.theta), self.t)
    }
}

impl Add for DcnTangent {
    type Output = DcnTangent;
    fn add(self, rhs: DcnTangent) -> DcnTangent {
        DcnTangent::new(self.theta + rhs.theta, self.t + rhs.t)
    }
}

fn sinc(theta: f64, tol: &Tolerances) -> f64 {
    if theta.abs() < tol.taylor {
        let t2 = theta * theta;
        1.0 - t2 / 6.0 + t2 * t2 / 120.0
    } else {
        theta.sin() / theta
    }
}

/// Exponential map `θi + tε ↦ e^{iθ} + (sin θ / θ)·t·ε`.
pub fn exp(x: DcnTangent) -> UnitDcn {
    exp_with(x, &Tolerances::DEFAULT)
}

pub(crate) fn exp_with(x: DcnTangent, tol: &Tolerances) -> UnitDcn {
    UnitDcn::new_unchecked(Complex::from_polar(1.0, x.theta), x.t * sinc(x.theta, tol))
}

/// Dual-number linear blending: the normalized weighted sum `Σ wᵢ·pᵢ`.
///
/// Each `pᵢ` is first flipped into the hemisphere of `ps[0]` so the blend
/// follows the short path.
pub fn dlb(ps: &[UnitDcn], ws: &[f64]) -> Result<UnitDcn, DcnError> {
    dlb_with(ps, ws, &Tolerances::DEFAULT)
}

pub fn dlb_with(ps: &[UnitDcn], ws: &[f64], tol: &Tolerances) -> Result<UnitDcn, DcnError> {
    if ps.len() != ws.len() {
        return Err(DcnError::LengthMismatch {
            transforms: ps.len(),
            weights: ws.len(),
        });
    }
    let Some(&reference) = ps.first() else {
        return Err(DcnError::EmptyBlend);
    };
    let sum = ps.iter().zip(ws).fold(Dcn::ZERO, |acc, (&p, &w)| {
        acc + p.hemisphere_aligned(reference).as_dcn().scale(w)
    });
    sum.normalize_with(tol).map_err(|e| match e {
        DcnError::SingularDcn { norm } => DcnError::DegenerateBlend { norm },
        other => other,
    })
}

/// Geodesic interpolation `exp(t·log(q·p⁻¹))·p`.
///
/// `q` is hemisphere-aligned to `p` first, so at `t = 1` the result is the
/// lift of `q` closest to `p` (either `q` or `-q`).
pub fn slerp(p: UnitDcn, q: UnitDcn, t: f64) -> Result<UnitDcn, DcnError> {
    slerp_with(p, q, t, &Tolerances::DEFAULT)
}

pub fn slerp_with(p: UnitDcn, q: UnitDcn, t: f64, tol: &Tolerances) -> Result<UnitDcn, DcnError> {
    let q = q.hemisphere_aligned(p);
    let delta = q * p.inverse();
    Ok(delta.pow_with(t, tol)? * p)
}
