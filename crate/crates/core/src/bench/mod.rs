//! Cost comparison of four encodings of 2D rigid motions: DCN, dual
//! quaternions, 2×2 complex matrices and 3×3 homogeneous real matrices.
//!
//! Two kinds of numbers are produced. Operation counts come from running the
//! kernels in [`kernels`] on the tallying scalar in [`flops`], so they are the
//! counts of the code that is actually timed. They are printed next to the
//! reference counts; mismatches are listed rather than hidden.
//! Throughput is measured by chaining each operation over a seeded workload.

pub mod flops;
pub mod kernels;

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cmat2::to_cmat2;
use crate::dcn::{Point2, UnitDcn};
use crate::dualquat::to_dualquat;
use crate::se2::to_se2;

use self::flops::{count, Counted, Scalar};
use self::kernels::{CMatK, Cx, DcnK, DqK, Mat3, Quat};

pub const MIN_ITERATIONS: usize = 100_000;
pub const DEFAULT_RUNS: usize = 5;
/// All representations must move every benchmark point to within this of
/// the DCN result.
pub const AGREEMENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Representation {
    #[serde(rename = "DCN")]
    Dcn,
    #[serde(rename = "DQN")]
    DualQuat,
    #[serde(rename = "2x2 complex matrix")]
    ComplexMat2,
    #[serde(rename = "3x3 real matrix")]
    RealMat3,
}

impl Representation {
    pub const ALL: [Representation; 4] = [
        Representation::Dcn,
        Representation::DualQuat,
        Representation::ComplexMat2,
        Representation::RealMat3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Representation::Dcn => "DCN",
            Representation::DualQuat => "DQN",
            Representation::ComplexMat2 => "2x2 complex matrix",
            Representation::RealMat3 => "3x3 real matrix",
        }
    }

    /// Reference counts. The conversion column is "to 3×3 matrix",
    /// except for the 3×3 matrix itself where it is "to DCN".
    pub fn reference(self) -> Counts {
        let (transform, compose, convert, memory) = match self {
            Representation::Dcn => (22, 20, Some(15), 4),
            Representation::DualQuat => (92, 88, None, 8),
            Representation::ComplexMat2 => (112, 56, Some(15), 8),
            Representation::RealMat3 => (15, 45, Some(18), 9),
        };
        Counts {
            transform,
            compose,
            convert,
            memory,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub transform: u64,
    pub compose: u64,
    /// `None` where no conversion is defined.
    pub convert: Option<u64>,
    pub memory: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rates {
    /// Point transforms per second.
    pub transform: f64,
    /// Compositions per second.
    pub compose: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostRow {
    pub representation: Representation,
    pub counts: Counts,
    pub paper_counts: Counts,
    pub rates: Option<Rates>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub rows: Vec<CostRow>,
    pub discrepancies: Vec<String>,
    pub iterations: usize,
    pub runs: usize,
    pub seed: u64,
    /// Largest distance between a representation's transformed point and
    /// the DCN one, over the whole workload.
    pub max_disagreement: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error("at least {MIN_ITERATIONS} iterations are required, got {0}")]
    TooFewIterations(usize),
    #[error("at least one timed run is required")]
    NoRuns,
    #[error("representations disagree by {0:e} on a transformed point")]
    Disagreement(f64),
}

pub(crate) fn dcn_kernel<S: Scalar>(p: UnitDcn) -> DcnK<S> {
    let [a, b, c, d] = p.to_array().map(S::lit);
    DcnK {
        p0: Cx::new(a, b),
        p1: Cx::new(c, d),
    }
}

pub(crate) fn dq_kernel<S: Scalar>(p: UnitDcn) -> DqK<S> {
    let q = to_dualquat(p.as_dcn());
    DqK {
        q0: Quat(q.q0.to_array().map(S::lit)),
        q1: Quat(q.q1.to_array().map(S::lit)),
    }
}

pub(crate) fn cmat_kernel<S: Scalar>(p: UnitDcn) -> CMatK<S> {
    let a = to_cmat2(p.as_dcn()).to_array().map(S::lit);
    CMatK {
        m: [
            Cx::new(a[0], a[1]),
            Cx::new(a[2], a[3]),
            Cx::new(a[4], a[5]),
            Cx::new(a[6], a[7]),
        ],
    }
}

pub(crate) fn mat3_kernel<S: Scalar>(p: UnitDcn) -> Mat3<S> {
    Mat3(to_se2(p).to_rows().map(S::lit))
}

fn cx<S: Scalar>(v: Point2) -> Cx<S> {
    Cx::new(S::lit(v.x), S::lit(v.y))
}

fn total<R>((_, n): (R, flops::FlopCount)) -> u64 {
    n.total()
}

fn scalars<T>() -> u64 {
    (std::mem::size_of::<T>() / std::mem::size_of::<f64>()) as u64
}

/// Audited counts for one representation, measured on a sample input.
pub fn audited_counts(rep: Representation) -> Counts {
    let a = UnitDcn::from_rotation(0.7, Point2::new(1.0, -2.0));
    let b = UnitDcn::from_rotation(-1.3, Point2::new(0.5, 3.0));
    let v: Cx<Counted> = cx(Point2::new(0.25, -4.0));
    match rep {
        Representation::Dcn => {
            let (x, y) = (dcn_kernel::<Counted>(a), dcn_kernel::<Counted>(b));
            Counts {
                transform: total(count(|| x.transform(v))),
                compose: total(count(|| x.compose(y))),
                convert: Some(total(count(|| x.to_mat3()))),
                memory: scalars::<DcnK<f64>>(),
            }
        }
        Representation::DualQuat => {
            let (x, y) = (dq_kernel::<Counted>(a), dq_kernel::<Counted>(b));
            Counts {
                transform: total(count(|| x.transform(v))),
                compose: total(count(|| x.compose(y))),
                convert: None,
                memory: scalars::<DqK<f64>>(),
            }
        }
        Representation::ComplexMat2 => {
            let (x, y) = (cmat_kernel::<Counted>(a), cmat_kernel::<Counted>(b));
            Counts {
                transform: total(count(|| x.transform(v))),
                compose: total(count(|| x.compose(y))),
                convert: Some(total(count(|| x.to_mat3()))),
                memory: scalars::<CMatK<f64>>(),
            }
        }
        Representation::RealMat3 => {
            let (x, y) = (mat3_kernel::<Counted>(a), mat3_kernel::<Counted>(b));
            Counts {
                transform: total(count(|| x.transform(v))),
                compose: total(count(|| x.compose(y))),
                convert: Some(total(count(|| x.to_dcn()))),
                memory: scalars::<Mat3<f64>>(),
            }
        }
    }
}

fn discrepancies(rows: &[CostRow]) -> Vec<String> {
    let mut out = Vec::new();
    for row in rows {
        let (a, p) = (row.counts, row.paper_counts);
        let name = row.representation.name();
        let mut note = |what: &str, audited: Option<u64>, reference: Option<u64>| {
            if audited != reference {
                let show = |x: Option<u64>| x.map_or("NA".to_string(), |n| n.to_string());
                out.push(format!(
                    "{name} {what}: audited {} vs reference {}",
                    show(audited),
                    show(reference)
                ));
            }
        };
        note("transform", Some(a.transform), Some(p.transform));
        note("compose", Some(a.compose), Some(p.compose));
        note("convert", a.convert, p.convert);
        note("memory", Some(a.memory), Some(p.memory));
    }
    out
}

/// Operation counts and memory for every representation; no timing.
pub fn static_counts() -> Report {
    let rows: Vec<CostRow> = Representation::ALL
        .iter()
        .map(|&rep| CostRow {
            representation: rep,
            counts: audited_counts(rep),
            paper_counts: rep.reference(),
            rates: None,
        })
        .collect();
    Report {
        discrepancies: discrepancies(&rows),
        rows,
        iterations: 0,
        runs: 0,
        seed: 0,
        max_disagreement: 0.0,
    }
}

/// The seeded workload: `n` random rigid motions and `n` points.
pub fn workload(n: usize, seed: u64) -> (Vec<UnitDcn>, Vec<Point2>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pt = |rng: &mut ChaCha8Rng| Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let mut motions = Vec::with_capacity(n);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let angle = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let center = pt(&mut rng);
        let shift = pt(&mut rng);
        motions.push(UnitDcn::from_translation(shift) * UnitDcn::from_rotation(angle, center));
        points.push(pt(&mut rng));
    }
    (motions, points)
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    xs[xs.len() / 2]
}

fn time_runs(runs: usize, mut f: impl FnMut()) -> Duration {
    f();
    median(
        (0..runs)
            .map(|_| {
                let start = Instant::now();
                f();
                start.elapsed()
            })
            .collect(),
    )
}

#[inline(never)]
fn compose_chain<T: Copy>(xs: &[T], id: T, f: impl Fn(T, T) -> T) -> T {
    xs.iter().fold(id, |acc, &x| f(acc, x))
}

#[inline(never)]
fn transform_chain<T: Copy>(xs: &[T], start: Cx<f64>, f: impl Fn(T, Cx<f64>) -> Cx<f64>) -> Cx<f64> {
    xs.iter().fold(start, |acc, &x| f(x, acc))
}

fn measure<T: Copy>(
    xs: &[T],
    id: T,
    runs: usize,
    compose: impl Fn(T, T) -> T + Copy,
    transform: impl Fn(T, Cx<f64>) -> Cx<f64> + Copy,
) -> Rates {
    let n = xs.len() as f64;
    let start = Cx::new(0.5, -0.5);
    let tc = time_runs(runs, || {
        black_box(compose_chain(black_box(xs), id, compose));
    });
    let tt = time_runs(runs, || {
        black_box(transform_chain(black_box(xs), start, transform));
    });
    let rate = |d: Duration| n / d.as_secs_f64().max(1e-12);
    Rates {
        transform: rate(tt),
        compose: rate(tc),
    }
}

fn max_disagreement(motions: &[UnitDcn], points: &[Point2]) -> f64 {
    let mut worst = 0.0f64;
    for (&p, &v) in motions.iter().zip(points) {
        let v = cx::<f64>(v);
        let reference = dcn_kernel::<f64>(p).transform(v);
        let others = [
            dq_kernel::<f64>(p).transform(v),
            cmat_kernel::<f64>(p).transform(v),
            mat3_kernel::<f64>(p).transform(v),
            // the 3×3 → DCN conversion path as well
            mat3_kernel::<f64>(p).to_dcn().transform(v),
        ];
        for o in others {
            worst = worst.max((o.re - reference.re).hypot(o.im - reference.im));
        }
    }
    worst
}

/// Times transform and compose for every representation on the same
/// workload (median of `runs` runs after one warmup run each).
pub fn run_throughput(iterations: usize, seed: u64) -> Result<Report, BenchError> {
    run_throughput_with(iterations, DEFAULT_RUNS, seed)
}

pub fn run_throughput_with(iterations: usize, runs: usize, seed: u64) -> Result<Report, BenchError> {
    if iterations < MIN_ITERATIONS {
        return Err(BenchError::TooFewIterations(iterations));
    }
    if runs == 0 {
        return Err(BenchError::NoRuns);
    }
    let (motions, points) = workload(iterations, seed);
    let max_disagreement = max_disagreement(&motions, &points);
    if max_disagreement.is_nan() || max_disagreement > AGREEMENT_TOL {
        return Err(BenchError::Disagreement(max_disagreement));
    }

    let id = UnitDcn::IDENTITY;
    let dcn: Vec<DcnK<f64>> = motions.iter().map(|&p| dcn_kernel(p)).collect();
    let dq: Vec<DqK<f64>> = motions.iter().map(|&p| dq_kernel(p)).collect();
    let cm: Vec<CMatK<f64>> = motions.iter().map(|&p| cmat_kernel(p)).collect();
    let m3: Vec<Mat3<f64>> = motions.iter().map(|&p| mat3_kernel(p)).collect();

    let rates = [
        measure(&dcn, dcn_kernel(id), runs, DcnK::compose, DcnK::transform),
        measure(&dq, dq_kernel(id), runs, DqK::compose, DqK::transform),
        measure(&cm, cmat_kernel(id), runs, CMatK::compose, CMatK::transform),
        measure(&m3, mat3_kernel(id), runs, Mat3::compose, Mat3::transform),
    ];

    let mut report = static_counts();
    for (row, r) in report.rows.iter_mut().zip(rates) {
        row.rates = Some(r);
    }
    report.iterations = iterations;
    report.runs = runs;
    report.seed = seed;
    report.max_disagreement = max_disagreement;
    Ok(report)
}

impl Report {
    pub fn row(&self, rep: Representation) -> &CostRow {
        self.rows
            .iter()
            .find(|r| r.representation == rep)
            .expect("every representation has a row")
    }

    /// Aligned plain-text table, audited counts first with the reference
    /// ones in parentheses.
    pub fn to_text(&self) -> String {
        let show = |x: Option<u64>| x.map_or("NA".to_string(), |n| n.to_string());
        let pair = |a: Option<u64>, p: Option<u64>| format!("{} ({})", show(a), show(p));
        let rate = |r: Option<f64>| r.map_or("-".to_string(), |x| format!("{:.3e}/s", x));
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<20} {:>12} {:>12} {:>12} {:>10} {:>14} {:>14}",
            "representation", "transform", "compose", "convert", "memory", "transform rate", "compose rate"
        );
        for row in &self.rows {
            let (a, p) = (row.counts, row.paper_counts);
            let _ = writeln!(
                s,
                "{:<20} {:>12} {:>12} {:>12} {:>10} {:>14} {:>14}",
                row.representation.name(),
                pair(Some(a.transform), Some(p.transform)),
                pair(Some(a.compose), Some(p.compose)),
                pair(a.convert, p.convert),
                pair(Some(a.memory), Some(p.memory)),
                rate(row.rates.map(|r| r.transform)),
                rate(row.rates.map(|r| r.compose)),
            );
        }
        let _ = writeln!(
            s,
            "\nFLOPs: + - * / sqrt count 1 each; negation is free. Reference counts in parentheses."
        );
        if self.iterations > 0 {
            let _ = writeln!(
                s,
                "{} iterations, median of {} runs, seed {}; max disagreement {:.3e}",
                self.iterations, self.runs, self.seed, self.max_disagreement
            );
        }
        if !self.discrepancies.is_empty() {
            let _ = writeln!(s, "\ndiscrepancies:");
            for d in &self.discrepancies {
                let _ = writeln!(s, "  {d}");
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Complex, Dcn};

    #[test]
    fn memory_matches_reference() {
        for rep in Representation::ALL {
            assert_eq!(audited_counts(rep).memory, rep.reference().memory, "{}", rep.name());
        }
    }

    #[test]
    fn audited_counts_are_the_formula_counts() {
        // 3 complex products (4 mul + 2 add each) and one complex add
        let dcn = audited_counts(Representation::Dcn);
        assert_eq!(dcn.compose, 20);
        // p0², p0²·v, p0·p1, doubling (2 mul), final add (2)
        assert_eq!(dcn.transform, 22);
        assert_eq!(dcn.convert, Some(14));
        let dq = audited_counts(Representation::DualQuat);
        assert_eq!(dq.compose, 3 * 28 + 4);
        assert_eq!(dq.transform, 2 * 88);
        let cm = audited_counts(Representation::ComplexMat2);
        assert_eq!(cm.compose, 8 * 6 + 4 * 2);
        assert_eq!(cm.transform, 2 * 56);
        let m3 = audited_counts(Representation::RealMat3);
        assert_eq!(m3.compose, 27 + 18);
        // only the two affine rows of the homogeneous product are evaluated
        assert_eq!(m3.transform, 6 + 4);
        assert_eq!(m3.convert, Some(13));
    }

    #[test]
    fn discrepancies_are_listed() {
        let r = static_counts();
        assert!(r
            .discrepancies
            .iter()
            .any(|d| d.starts_with("DQN transform: audited 176 vs reference 92")));
        assert!(!r.discrepancies.iter().any(|d| d.starts_with("DCN compose")));
        assert!(r.to_text().contains("discrepancies:"));
    }

    #[test]
    fn kernels_agree_with_library() {
        let (motions, points) = workload(200, 3);
        for w in motions.windows(2) {
            let (p, q) = (w[0], w[1]);
            let k = dcn_kernel::<f64>(p).compose(dcn_kernel(q));
            let lib = (p * q).as_dcn();
            let got = Dcn::new(Complex::new(k.p0.re, k.p0.im), Complex::new(k.p1.re, k.p1.im));
            assert!((got - lib).to_array().iter().all(|x| x.abs() < 1e-15));
            let m = mat3_kernel::<f64>(p).compose(mat3_kernel(q));
            let want = to_se2(p * q).to_rows();
            assert!(m.0.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12));
        }
        for (&p, &v) in motions.iter().zip(&points) {
            let k = dcn_kernel::<f64>(p).transform(cx(v));
            assert!(Point2::new(k.re, k.im).distance(p.act(v)) < 1e-15);
        }
    }

    #[test]
    fn mat3_to_dcn_handles_both_branches() {
        for angle in [0.0, 1.0, -2.5, 3.0, std::f64::consts::PI, -3.1] {
            let p = UnitDcn::from_translation(Point2::new(0.3, -0.7))
                * UnitDcn::from_rotation(angle, Point2::new(1.0, 1.0));
            let back = mat3_kernel::<f64>(p).to_dcn();
            let want = crate::se2::from_se2(&to_se2(p)).unwrap();
            let got = Dcn::new(
                Complex::new(back.p0.re, back.p0.im),
                Complex::new(back.p1.re, back.p1.im),
            );
            assert!(
                (got - want.as_dcn()).to_array().iter().all(|x| x.abs() < 1e-12),
                "{angle}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn throughput_preconditions() {
        assert_eq!(run_throughput(10, 1), Err(BenchError::TooFewIterations(10)));
        assert_eq!(run_throughput_with(MIN_ITERATIONS, 0, 1), Err(BenchError::NoRuns));
    }

    #[test]
    fn workload_is_seeded() {
        assert_eq!(workload(50, 9), workload(50, 9));
        assert_ne!(workload(50, 9).0, workload(50, 10).0);
    }
}
