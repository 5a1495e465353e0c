use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors carry enough of a witness to reproduce the failing check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown space spec `{0}`")]
    UnknownSpace(String),
    #[error("radius must be at least 1")]
    RadiusTooSmall,
    #[error("point {point} lies outside the window interior")]
    NotInterior { point: usize },
    #[error("point {point} is out of range for a window of {size} points")]
    PointOutOfRange { point: usize, size: usize },
    #[error("a nonempty point set is required")]
    EmptySet,
    #[error("start point {start} is forbidden")]
    ForbiddenStart { start: usize },
    #[error("the empty word has no syllable decomposition")]
    EmptyWordSyllables,
    #[error("the empty word admits no generator pair")]
    EmptyWordGenerators,
    #[error("index {index} is out of range for a permutation module of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("cannot parse `{0}` as a word over a, A, b, B")]
    BadWord(String),
    #[error("cannot parse `{0}` as an exact rational")]
    BadRational(String),
    #[error("table of length {got} is not a bijection of {expected} points")]
    NotABijection { got: usize, expected: usize },
    #[error("permutation moves point {point} outside the window's connectivity")]
    DisplacementUnbounded { point: usize },
    #[error("fiber bound d must be at least 3, got {0}")]
    FiberBoundTooSmall(usize),
    #[error("relation must be irreflexive for matching; pair ({0}, {0}) present")]
    ReflexivePair(usize),
    #[error("relation must be symmetric; pair ({0}, {1}) present without its mirror")]
    AsymmetricPair(usize, usize),
    #[error(
        "matching infeasible: {detail}{}",
        hall_witness.as_ref().map(|w| format!(
            "; Hall witness F ({} points) with |R[F]| = {} < {}",
            w.set.len(), w.image_size, w.required
        )).unwrap_or_default()
    )]
    HaremInfeasible {
        detail: String,
        hall_witness: Option<HallWitness>,
    },
    #[error(
        "window capacity exhausted: need {needed} interior points for `{word}`, {available} usable"
    )]
    PathCapacity {
        word: String,
        needed: usize,
        available: usize,
    },
    #[error("path search budget of {budget} nodes exhausted before `{word}` was placed")]
    PathBudget { word: String, budget: usize },
    #[error("embedding words must be distinct and nonempty")]
    BadEmbedWords,
    #[error("lamplighter arity mismatch: {0} vs {1}")]
    LamplighterArity(u64, u64),
    #[error("transported image {image} escapes the target window of {size} points")]
    TransportEscapes { image: i64, size: usize },
    #[error("operation needs a {expected} window, got {got}")]
    WrongAmbient { expected: String, got: String },
    #[error("group model mismatch: {0}")]
    ModelMismatch(String),
    #[error("action is not semi-regular: element {element} fixes point {point}")]
    NotSemiRegular { element: usize, point: usize },
    #[error("sigma is not an orbit cross-section: {0}")]
    BadCrossSection(String),
    #[error("piecewise translation invalid: {0}")]
    InvalidPiecewise(String),
    #[error("equivariance check failed at {0}")]
    EquivarianceFailure(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("cannot export object as DOT: {0}")]
    UnsupportedDot(String),
    #[error("malformed JSON input: {0}")]
    BadJson(String),
    #[error("io: {0}")]
    Io(String),
}

/// A set failing the expansion lower bound, extracted from an infeasible matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallWitness {
    pub set: Vec<usize>,
    pub image_size: usize,
    pub required: usize,
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::BadJson(e.to_string())
    }
}
