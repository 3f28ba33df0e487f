//! Error type shared by every module.
//!
//! Precondition violations raise [`Error`]; numerical non-convergence never
//! does (it is reported through flags on the result types, so sweeps and
//! grid scans stay total).

use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A boundary arc set must contain at least one arc of positive length.
    #[error("empty boundary set")]
    EmptyBoundarySet,

    /// An interval handed to the arc-set constructor has non-positive length.
    #[error("arc interval has non-positive length: [{lo}, {hi}]")]
    EmptyArc { lo: f64, hi: f64 },

    /// Evaluation point must lie strictly inside the unit disc.
    #[error("not interior: |z| = {modulus} >= 1")]
    NotInterior { modulus: f64 },

    /// Stolz region vertex must lie on the unit circle.
    #[error("stolz vertex not on the unit circle: |zeta| = {modulus}")]
    BadStolzVertex { modulus: f64 },

    /// Stolz half-angle must lie in (0, π/2).
    #[error("stolz half-angle out of range: alpha = {alpha} (need 0 < alpha < pi/2)")]
    BadStolzAngle { alpha: f64 },

    /// The angular Jordan domain needs `diam F < h < 1 − √2/2`.
    #[error("height constraint violated: diam(F) = {diameter}, h = {h} (need diam(F) < h < 1 - sqrt(2)/2)")]
    HeightConstraint { diameter: f64, h: f64 },

    /// Contour shrink parameter must satisfy `0 < ε < h/4`.
    #[error("contour parameter out of range: eps = {eps} (need 0 < eps < h/4 = {limit})")]
    EpsOutOfRange { eps: f64, limit: f64 },

    /// A gap of the base set is wide enough that the shrunken contour pinches
    /// off; the configuration is outside the supported range.
    #[error("contour pinched at a base gap (gap half-angle {gap} >= reach {reach}); configuration unsupported")]
    ContourPinched { gap: f64, reach: f64 },

    /// Quadrature evaluation point is too close to a contour node.
    #[error("too close to contour: distance {distance} < pole guard {guard}")]
    TooCloseToContour { distance: f64, guard: f64 },

    /// A Monte Carlo walk cannot start inside the absorption band.
    #[error("start too close to boundary: distance {distance} <= absorption band {band}")]
    StartTooCloseToBoundary { distance: f64, band: f64 },

    /// The requested point lies outside the open wedge `{ω(z)+ω(w) < 1}`.
    #[error("outside wedge: omega_sum = {omega_sum}")]
    OutsideWedge { omega_sum: f64 },

    /// A wedge grid filtered down to nothing.
    #[error("wedge cap too tight: no tensor-grid point has omega_sum <= {cap}")]
    WedgeCapTooTight { cap: f64 },

    /// Gram matrices must be Hermitian positive definite.
    #[error("degenerate condenser: Gram matrix not positive definite")]
    DegenerateCondenser,

    /// Level-set threshold must satisfy `0 <= eps < 1`.
    #[error("level threshold out of range: eps = {eps} (need 0 <= eps < 1)")]
    LevelEpsOutOfRange { eps: f64 },

    /// Configuration file rejected; `pointer` is the JSON pointer of the
    /// offending element.
    #[error("config error at \"{pointer}\": {message}")]
    Config { pointer: String, message: String },

    /// Unknown fixture name; the message lists the catalog.
    #[error("unknown fixture \"{name}\"; catalog: {catalog}")]
    UnknownFixture { name: String, catalog: String },

    /// I/O failure while reading configs or writing artifacts.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Build a [`Error::Config`] with a JSON-pointer path.
    pub fn config(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    /// Build an [`Error::Io`] tagged with the path it concerns.
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
