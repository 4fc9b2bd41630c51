use crate::label::Label;
use crate::rational::Rational;

/// Index path into Δ identifying which likelihood mappings produced a value.
/// A single observation has a path of length one; a sequence under
/// per-observation combination has one index per observation.
pub type Tag = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{labels} labels but {masses} masses")]
    LengthMismatch { labels: usize, masses: usize },
    #[error("masses sum to {sum}, not 1")]
    NonNormalized { sum: Rational },
    #[error("negative mass {mass} on {label}")]
    NegativeMass { label: Label, mass: Rational },
    #[error("duplicate label {0}")]
    DuplicateLabel(Label),
    #[error("distributions are over different label sets")]
    SupportMismatch,
    #[error("total conflict: the combination is undefined")]
    TotalConflict,
    #[error("total conflict along mapping path {}", format_tag(.tag))]
    ConflictAt { tag: Tag },
    #[error("unknown observation {0}")]
    UnknownObservation(Label),
    #[error("unknown hypothesis {0}")]
    UnknownHypothesis(Label),
    #[error("observation {0} is impossible under every hypothesis")]
    ImpossibleObservation(Label),
    #[error("observation {0} has zero probability under the joint distribution")]
    ZeroProbabilityObservation(Label),
    #[error("likelihood mapping has no hypotheses")]
    NoHypotheses,
    #[error("hypothesis {hypothesis} has a likelihood over a different observation set")]
    ObservationMismatch { hypothesis: Label },
    #[error("likelihood mapping {index} covers a different hypothesis set")]
    HypothesisMismatch { index: usize },
    #[error("set of likelihood mappings is empty")]
    EmptyMappings,
    #[error("likelihood mappings {first} and {second} are identical")]
    DuplicateMapping { first: usize, second: usize },
    #[error("in likelihood mapping {index}: {source}")]
    InMapping {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("operation requires an uncorrelated set of likelihood mappings")]
    CorrelatedSpace,
    #[error("bound formula has a zero denominator")]
    ZeroDenominator,
    #[error("observation sequence is empty")]
    EmptySequence,
    #[error("surjection is not onto the coarse hypotheses (missing {0})")]
    NotSurjective(Label),
    #[error("refined hypothesis {0} has no image under the surjection")]
    UnmappedHypothesis(Label),
    #[error("hypotheses {0} and {1} in the same fiber share a likelihood function")]
    DuplicateInFiber(Label, Label),
    #[error("prior on the refined hypotheses does not extend the coarse prior at {0}")]
    NotAnExtension(Label),
}

pub type Result<T> = std::result::Result<T, Error>;

/// One-based, dot-separated rendering of a tag, e.g. `[0, 3]` → `1.4`.
pub fn format_tag(tag: &[usize]) -> String {
    tag.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(".")
}
