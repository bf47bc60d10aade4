//! The crate-wide error type. Variants are grouped by the subsystem that
//! raises them; everything funnels into [`MasimError`] so callers deal with
//! one `Result` alias.

use thiserror::Error;

/// Unified error type for the simulation kernel and experiment harnesses.
#[derive(Debug, Error)]
pub enum MasimError {
    /// An agent id was referenced that the current context does not know.
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),

    /// A structural precondition was violated (malformed input, missing
    /// entry, index out of range, and similar).
    #[error("{0}")]
    Structural(String),

    /// A graph failed validation; each entry describes one violation.
    #[error("invalid graph: {}", .0.join("; "))]
    InvalidGraph(Vec<String>),

    /// A cycle was found where a DAG was required. The ids trace one cycle.
    #[error("cycle detected: {}", .0.join(" -> "))]
    Cycle(Vec<String>),

    /// A transition kernel broke its declared contract.
    #[error("agent `{agent}` violated its kernel contract: {detail}")]
    KernelContract { agent: String, detail: String },

    /// Wraps an error with the step index at which it surfaced.
    #[error("step {t}: {source}")]
    AtStep {
        t: u64,
        #[source]
        source: Box<MasimError>,
    },

    /// Every support point of a posterior update had zero likelihood.
    #[error("feedback inconsistent with prior: all likelihoods are zero")]
    InconsistentFeedback,

    /// A dataset was too small for the requested sampling plan.
    #[error("insufficient data: need {needed} rows, have {available}")]
    Capacity { needed: usize, available: usize },

    /// An exact-enumeration routine was asked to exceed its budget.
    #[error("enumeration budget exceeded: {size} items (max {max})")]
    Budget { size: usize, max: usize },

    /// A configuration the implementation deliberately does not support.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// Message dispatch found no function registered under the tool name.
    #[error("no tool registered under `{0}`")]
    UnknownTool(String),

    /// A registered tool function itself failed.
    #[error("tool `{tool}` failed: {detail}")]
    ToolFailed { tool: String, detail: String },

    /// Directory re-registration with a version that does not supersede the
    /// one already stored.
    #[error("version conflict for `{agent}`: offered {offered}, registered {registered}")]
    VersionConflict {
        agent: String,
        offered: String,
        registered: String,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, MasimError>;
