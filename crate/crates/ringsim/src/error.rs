use thiserror::Error;

/// Errors produced by the simulation library.
///
/// `Config` maps to CLI exit code 2, everything else to exit code 3.
#[derive(Debug, Error)]
pub enum RingsimError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("emitters {0} and {1} overlap (separation {2:.3e} < 1e-9)")]
    Overlap(usize, usize, f64),

    #[error("singular separation: |r| = {0:.3e} below the 1e-6 guard")]
    SingularSeparation(f64),

    #[error("operation requires a ring-based geometry, got {0}")]
    WrongGeometry(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    #[error("linear solve failed: {0}")]
    LinearSolve(String),

    #[error("symmetry check failed: {0}")]
    Symmetry(String),

    #[error("integration accuracy: {0}")]
    IntegrationAccuracy(String),

    #[error("non-finite amplitudes encountered: {0}")]
    NonFinite(String),

    #[error("Wilson loop ill-conditioned: successive overlap {0:.3e} < 0.1, refine the k grid")]
    IllConditionedLoop(f64),

    #[error("no k resonant with detuning {0} in any band")]
    NoResonantMomentum(f64),

    #[error("time {0} outside the trace window [0, {1}]")]
    OutOfWindow(f64, f64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("realization with seed {seed} failed: {source}")]
    Realization {
        seed: u64,
        #[source]
        source: Box<RingsimError>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, RingsimError>;
