/// Scalar thresholds used by the algebra.
///
/// Every operation that needs a threshold has a `*_with` variant taking a
/// `Tolerances`; the plain variant uses [`Tolerances::default`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|p0|` at or below this is treated as zero (inverse, normalize, DLB).
    pub singular: f64,
    /// `|sin θ|` at or below this puts `log` on the θ = ±π branch cut.
    pub log: f64,
    /// Below this `|θ|` the `sin θ / θ` style factors use their Taylor series.
    pub taylor: f64,
    /// Unit constructors silently renormalize inputs with `||p0| - 1|` up to this.
    pub unit_repair: f64,
}

impl Tolerances {
    pub const SINGULAR: f64 = 1e-12;
    pub const LOG: f64 = 1e-9;
    pub const TAYLOR: f64 = 1e-4;
    pub const UNIT_REPAIR: f64 = 1e-6;

    pub const DEFAULT: Tolerances = Tolerances {
        singular: Self::SINGULAR,
        log: Self::LOG,
        taylor: Self::TAYLOR,
        unit_repair: Self::UNIT_REPAIR,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
