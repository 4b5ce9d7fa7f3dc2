#![allow(dead_code)]

use std::f64::consts::PI;

use dcn::{Complex, Dcn, DcnTangent, Point2, UnitDcn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut impl Rng, r: f64) -> Complex {
    Complex::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

pub fn dcn(rng: &mut impl Rng) -> Dcn {
    Dcn::new(complex(rng, 10.0), complex(rng, 10.0))
}

pub fn point(rng: &mut impl Rng, r: f64) -> Point2 {
    Point2::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// Uniform primal angle on the whole circle, dual part in `[-10, 10]²`.
pub fn unit(rng: &mut impl Rng) -> UnitDcn {
    let p0 = Complex::from_polar(1.0, rng.gen_range(-PI..PI));
    UnitDcn::new(p0, complex(rng, 10.0)).unwrap()
}

pub fn tangent(rng: &mut impl Rng, theta_max: f64) -> DcnTangent {
    DcnTangent::new(rng.gen_range(-theta_max..theta_max), complex(rng, 10.0))
}

pub fn max_abs(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn dcn_err(a: Dcn, b: Dcn) -> f64 {
    max_abs(&a.to_array(), &b.to_array())
}

/// Plain row-major 3×3 product, independent of `Se2Mat`'s own `Mul`.
pub fn mat3_mul(a: &[f64; 9], b: &[f64; 9]) -> [f64; 9] {
    let mut out = [0.0; 9];
    for r in 0..3 {
        for c in 0..3 {
            out[3 * r + c] = (0..3).map(|k| a[3 * r + k] * b[3 * k + c]).sum();
        }
    }
    out
}

pub fn mat3_apply(m: &[f64; 9], v: Point2) -> [f64; 3] {
    let h = [v.x, v.y, 1.0];
    let mut out = [0.0; 3];
    for r in 0..3 {
        out[r] = (0..3).map(|k| m[3 * r + k] * h[k]).sum();
    }
    out
}

/// Plain 2×2 complex product on `[m00, m01, m10, m11]`.
pub fn cmat_mul(a: &[Complex; 4], b: &[Complex; 4]) -> [Complex; 4] {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// Hamilton product on `(w, x, y, z)`, written from the basis rules
/// `i² = j² = k² = ijk = -1` rather than copied from the library.
pub fn quat_mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    // table[p][q] = (sign, index) of e_p * e_q for basis 1, i, j, k
    const TABLE: [[(f64, usize); 4]; 4] = [
        [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
        [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
        [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
        [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
    ];
    let mut out = [0.0; 4];
    for p in 0..4 {
        for q in 0..4 {
            let (s, k) = TABLE[p][q];
            out[k] += s * a[p] * b[q];
        }
    }
    out
}

/// Unwraps `angles` so consecutive entries differ by less than π.
pub fn unwrap(angles: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(angles.len());
    let mut offset = 0.0;
    for (k, &a) in angles.iter().enumerate() {
        if k > 0 {
            let prev = angles[k - 1];
            let d = a - prev;
            if d > PI {
                offset -= 2.0 * PI;
            } else if d < -PI {
                offset += 2.0 * PI;
            }
        }
        out.push(a + offset);
    }
    out
}
