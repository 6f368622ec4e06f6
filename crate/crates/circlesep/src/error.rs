use thiserror::Error;

/// Everything that can go wrong across the toolkit.
///
/// Degeneracy reports carry the witnesses (which dots are cocircular, which
/// quadruples collide, …) so callers can perturb or reject intelligently.
/// `InternalInconsistency` is reserved for "the mathematics promised this
/// cannot happen": it indicates a bug, never bad input, and callers should
/// treat it as fatal rather than retry.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational literal {0:?}: expected a canonical \"p\" or \"p/q\" string")]
    InvalidRational(String),

    #[error("point ({0}, {1}, {2}) is not on the unit sphere")]
    NotOnSphere(String, String, String),

    #[error("the projection pole (0, 0, 1) has no planar image")]
    PoleProjection,

    #[error("dot {0} coincides with the projection pole (0, 0, 1)")]
    DotAtPole(usize),

    #[error("dots {0} and {1} coincide")]
    DuplicateDot(usize, usize),

    #[error("configurations of more than 64 dots are unsupported (got {0})")]
    UnsupportedSize(usize),

    #[error("at least {min} dots required (got {n})")]
    TooFewDots { n: usize, min: usize },

    #[error("dots {0:?} are cocircular: configuration is not in general position")]
    NotGeneralPosition([usize; 4]),

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("side sizes {k} + {l} must add up to n = {n} with both sides nonempty")]
    SizeMismatch { k: usize, l: usize, n: usize },

    #[error("family endpoints have different sizes ({0} vs {1} dots)")]
    FamilySizeMismatch(usize, usize),

    #[error("antipodal symmetry is only defined for n = 2k (got n = {n}, k = {k})")]
    WrongOrder { n: usize, k: usize },

    #[error("an incident circle through dots {0:?} passes through the projection pole, so its interior is undefined")]
    PoleOnCircle([usize; 3]),

    #[error("the four dots {0:?} stay cocircular along the whole path")]
    IdenticallyDegeneratePath([usize; 4]),

    #[error("quadruples {0:?} and {1:?} become cocircular at the same instant: path is not semigeneral")]
    NotSemigeneral([usize; 4], [usize; 4]),

    #[error("graph change at a wall crossing of {0:?} touches triples outside the quadruple")]
    NonLocalChange([usize; 4]),

    #[error("still not semigeneral after {0} perturbation retries")]
    RetriesExhausted(usize),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}
