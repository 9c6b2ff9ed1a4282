use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Each variant maps to a stable
/// machine-readable code via [`Error::code`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: expected two non-negative integer labels, got {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("self-loop on node {0}")]
    SelfLoop(u64),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph is disconnected into {} components", .0.len())]
    Disconnected(Vec<Vec<u64>>),
    #[error("unknown node label {0}")]
    UnknownLabel(u64),
    #[error("target set is empty")]
    EmptyTarget,
    #[error("target set contains every node")]
    FullTarget,
    #[error("linear solve failed (condition estimate {condition:e})")]
    SolverFailure { condition: f64 },
    #[error("start node {0} lies inside the target set")]
    StartInsideTarget(u64),
    #[error("walk exceeded {0} steps without reaching the target")]
    WalkCapExceeded(u64),
    #[error("set is not a vertex cover: edge ({0}, {1}) is uncovered")]
    NotACover(u64, u64),
    #[error("no vertex cover of cardinality {0} could be found")]
    NoCoverOfSize(usize),
    #[error("rank context is degenerate: F_max = F_min = {0}")]
    DegenerateContext(f64),
    #[error("enumeration of {count} sets exceeds the cap of {cap}")]
    TooLarge { count: u128, cap: u128 },
    #[error("threshold nu must lie in (0, 1], got {0}")]
    InvalidThreshold(f64),
    #[error("no set of cardinality <= {0} reaches the threshold")]
    CapTooSmall(usize),
    #[error("no starter sets selected")]
    NoStarters,
    #[error("starter set has {size} elements but K = {k}")]
    StarterTooLarge { size: usize, k: usize },
    #[error("K = {k} is below the minimum family cardinality m = {m}; use backward greedy instead")]
    KBelowMinimum { k: usize, m: usize },
    #[error("target set has {size} elements but must exceed K = {k}")]
    TargetTooSmall { size: usize, k: usize },
    #[error("K = {k} is out of range 1..={n}")]
    InvalidCardinality { k: usize, n: usize },
    #[error("element {0} already belongs to the set")]
    ElementInSet(u64),
    #[error("greedoid construction failed: {0}")]
    ConstructionFailed(String),
    #[error("curvature undefined: every increment denominator is zero")]
    NoValidPairs,
    #[error("greedy rank is zero, improvement factor undefined")]
    ZeroGreedyRank,
    #[error("eta must be positive, got {0}")]
    NonPositiveEta(f64),
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedLine { .. } => "MalformedLine",
            Error::SelfLoop(_) => "SelfLoop",
            Error::EmptyGraph => "EmptyGraph",
            Error::Disconnected(_) => "Disconnected",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::EmptyTarget => "EmptyTarget",
            Error::FullTarget => "FullTarget",
            Error::SolverFailure { .. } => "SolverFailure",
            Error::StartInsideTarget(_) => "StartInsideTarget",
            Error::WalkCapExceeded(_) => "WalkCapExceeded",
            Error::NotACover(..) => "NotACover",
            Error::NoCoverOfSize(_) => "NoCoverOfSize",
            Error::DegenerateContext(_) => "DegenerateContext",
            Error::TooLarge { .. } => "TooLarge",
            Error::InvalidThreshold(_) => "InvalidThreshold",
            Error::CapTooSmall(_) => "CapTooSmall",
            Error::NoStarters => "NoStarters",
            Error::StarterTooLarge { .. } => "StarterTooLarge",
            Error::KBelowMinimum { .. } => "KBelowMinimum",
            Error::TargetTooSmall { .. } => "TargetTooSmall",
            Error::InvalidCardinality { .. } => "InvalidCardinality",
            Error::ElementInSet(_) => "ElementInSet",
            Error::ConstructionFailed(_) => "ConstructionFailed",
            Error::NoValidPairs => "NoValidPairs",
            Error::ZeroGreedyRank => "ZeroGreedyRank",
            Error::NonPositiveEta(_) => "NonPositiveEta",
            Error::Io(_) => "Io",
        }
    }
}
