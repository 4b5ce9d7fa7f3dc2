//! A scalar type that tallies the arithmetic performed on it.
//!
//! Counting convention: `+`, `-`, `*`, `/` and `sqrt` each cost one FLOP;
//! negation and comparisons are free.

// the operator impls bump a counter alongside the real operation
#![allow(clippy::suspicious_arithmetic_impl)]

use std::cell::Cell;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

/// The arithmetic the benchmark kernels are written against.
pub trait Scalar:
    Copy
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn lit(x: f64) -> Self;
    fn sqrt(self) -> Self;
    fn value(self) -> f64;
}

impl Scalar for f64 {
    #[inline(always)]
    fn lit(x: f64) -> Self {
        x
    }
    #[inline(always)]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline(always)]
    fn value(self) -> f64 {
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FlopCount {
    pub add: u64,
    pub mul: u64,
    pub div: u64,
    pub sqrt: u64,
}

impl FlopCount {
    pub fn total(&self) -> u64 {
        self.add + self.mul + self.div + self.sqrt
    }
}

thread_local! {
    static TALLY: Cell<FlopCount> = const { Cell::new(FlopCount { add: 0, mul: 0, div: 0, sqrt: 0 }) };
}

fn bump(f: impl FnOnce(&mut FlopCount)) {
    TALLY.with(|t| {
        let mut c = t.get();
        f(&mut c);
        t.set(c);
    });
}

/// Runs `f` and returns the operations performed on [`Counted`] values.
pub fn count<R>(f: impl FnOnce() -> R) -> (R, FlopCount) {
    TALLY.with(|t| t.set(FlopCount::default()));
    let r = f();
    (r, TALLY.with(Cell::get))
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Counted(pub f64);

impl PartialOrd for Counted {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Add for Counted {
    type Output = Counted;
    fn add(self, rhs: Counted) -> Counted {
        bump(|c| c.add += 1);
        Counted(self.0 + rhs.0)
    }
}

impl Sub for Counted {
    type Output = Counted;
    fn sub(self, rhs: Counted) -> Counted {
        bump(|c| c.add += 1);
        Counted(self.0 - rhs.0)
    }
}

impl Mul for Counted {
    type Output = Counted;
    fn mul(self, rhs: Counted) -> Counted {
        bump(|c| c.mul += 1);
        Counted(self.0 * rhs.0)
    }
}

impl Div for Counted {
    type Output = Counted;
    fn div(self, rhs: Counted) -> Counted {
        bump(|c| c.div += 1);
        Counted(self.0 / rhs.0)
    }
}

impl Neg for Counted {
    type Output = Counted;
    fn neg(self) -> Counted {
        Counted(-self.0)
    }
}

impl Scalar for Counted {
    fn lit(x: f64) -> Self {
        Counted(x)
    }
    fn sqrt(self) -> Self {
        bump(|c| c.sqrt += 1);
        Counted(self.0.sqrt())
    }
    fn value(self) -> f64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tallies_each_kind() {
        let (r, n) = count(|| {
            let a = Counted(3.0);
            let b = Counted(4.0);
            (a * a + b * b).sqrt() / Counted(5.0) - -a
        });
        assert_eq!(r.0, 4.0);
        assert_eq!(
            n,
            FlopCount {
                add: 2,
                mul: 2,
                div: 1,
                sqrt: 1
            }
        );
        assert_eq!(n.total(), 6);
    }

    #[test]
    fn count_resets() {
        let _ = count(|| Counted(1.0) + Counted(1.0));
        let (_, n) = count(|| Counted(1.0) * Counted(1.0));
        assert_eq!(
            n,
            FlopCount {
                mul: 1,
                ..FlopCount::default()
            }
        );
    }
}
