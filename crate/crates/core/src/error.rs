use thiserror::Error;

/// Errors raised while validating a design or evaluating its geometry.
///
/// Every variant has a stable [`Error::name`] that front ends report verbatim.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("`{field}` must be a strictly positive length, got {value}")]
    NonPositiveLength { field: &'static str, value: f64 },
    #[error("`{field}` must be finite, got {value}")]
    NonFiniteValue { field: &'static str, value: f64 },
    #[error("micro image resolution must be at least 2 pixels, got {0}")]
    MTooSmall(u32),
    #[error("focus must lie beyond the main lens focal length ({focal} mm), got {value} mm")]
    FocusNotBeyondFocal { focal: f64, value: f64 },
    #[error("exactly one of focus_distance and image_distance must be given")]
    BothOrNeitherFocusGiven,
    #[error("image distance {image} mm lies inside the focal length {focal} mm; the object is virtual")]
    VirtualObject { focal: f64, image: f64 },
    #[error("linear system is singular (|det| = {det:e}, threshold {threshold:e})")]
    SingularSystem { det: f64, threshold: f64 },
    #[error("linear system needs at least 2 equations, got {0}")]
    Underdetermined(usize),
    #[error("matrix has {rows} rows but right-hand side has {rhs} entries")]
    ShapeMismatch { rows: usize, rhs: usize },
    #[error("rays are parallel; their intersection lies at infinity")]
    ParallelRays,
    #[error("rays belong to different sides of the main lens")]
    MixedSides,
    #[error("refocus image distance {image} mm is shorter than the focal length {focal} mm")]
    VirtualRefocusPlane { focal: f64, image: f64 },
    #[error("depth of field is degenerate for |a| = {a} < {a_min}")]
    DegenerateDOF { a: f64, a_min: f64 },
    #[error("parameter list is empty")]
    EmptySeries,
    #[error("triangulation plane lies behind H1U or the entrance pupil (z = {z} mm from H1U)")]
    VirtualPlane { z: f64 },
    #[error("triangulation needs a nonzero viewpoint gap")]
    ZeroGap,
    #[error("scene kind `{0}` cannot be rendered as a cross-section")]
    UnsupportedKind(String),
    #[error("unsupported scene schema version `{0}`")]
    UnknownSceneVersion(String),
    #[error("invalid scene: {0}")]
    InvalidScene(String),
}

impl Error {
    /// Stable machine-readable error name.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPositiveLength { .. } => "NonPositiveLength",
            Error::NonFiniteValue { .. } => "NonFiniteValue",
            Error::MTooSmall(_) => "MTooSmall",
            Error::FocusNotBeyondFocal { .. } => "FocusNotBeyondFocal",
            Error::BothOrNeitherFocusGiven => "BothOrNeitherFocusGiven",
            Error::VirtualObject { .. } => "VirtualObject",
            Error::SingularSystem { .. } => "SingularSystem",
            Error::Underdetermined(_) => "Underdetermined",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::ParallelRays => "ParallelRays",
            Error::MixedSides => "MixedSides",
            Error::VirtualRefocusPlane { .. } => "VirtualRefocusPlane",
            Error::DegenerateDOF { .. } => "DegenerateDOF",
            Error::EmptySeries => "EmptySeries",
            Error::VirtualPlane { .. } => "VirtualPlane",
            Error::ZeroGap => "ZeroGap",
            Error::UnsupportedKind(_) => "UnsupportedKind",
            Error::UnknownSceneVersion(_) => "UnknownSceneVersion",
            Error::InvalidScene(_) => "InvalidScene",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
