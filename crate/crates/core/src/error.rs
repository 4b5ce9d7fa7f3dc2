use thiserror::Error;

/// Failures of the DCN algebra and its conversions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DcnError {
    #[error("SingularDcn: |p0| = {norm:e} is too small to invert or normalize")]
    SingularDcn { norm: f64 },

    #[error("NotUnit: |p0| = {norm} is too far from 1 to be repaired")]
    NotUnit { norm: f64 },

    #[error("NonFinite: component is NaN or infinite")]
    NonFinite,

    #[error("DegenerateBlend: weighted sum has norm {norm:e}")]
    DegenerateBlend { norm: f64 },

    #[error("LogSingular: rotation by pi combined with a translation has no principal logarithm (theta = {theta})")]
    LogSingular { theta: f64 },

    #[error("EmptyBlend: at least one transformation is required")]
    EmptyBlend,

    #[error("LengthMismatch: {transforms} transformations but {weights} weights")]
    LengthMismatch { transforms: usize, weights: usize },

    #[error("NotRigid: {0}")]
    NotRigid(String),

    #[error("NotEmbedded: {0}")]
    NotEmbedded(String),
}
