//! The agent model: identifiers, typed values, serializable state, transition
//! kernels, and input assembly for both timing modes.
//!
//! An agent couples a state space, declared input/output content tags, and a
//! transition kernel mapping (previous state, input) to (new state, output).
//! All stochasticity flows through the random stream handed to the kernel, so
//! identical seeds reproduce identical runs bit for bit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{MasimError, Result};
use crate::feedback::FeedbackSignal;
use crate::rng::SubRng;
use crate::topology::TopologyGraph;

/// Opaque, stable identifier for one agent. Ordered so that every map keyed
/// by agents iterates in a reproducible order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(pub String);

impl AgentId {
    pub fn new(id: impl Into<String>) -> Self {
        AgentId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for AgentId {
    fn from(s: &str) -> Self {
        AgentId(s.to_owned())
    }
}

/// A typed message: a content tag plus a structured payload.
///
/// Tags are what interface declarations and compatibility graphs reason
/// about; payloads are opaque to the kernel runner.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Value {
    pub tag: String,
    pub payload: serde_json::Value,
}

/// Tag of the distinguished "nothing yet" value.
pub const EMPTY_TAG: &str = "empty";

impl Value {
    pub fn new(tag: impl Into<String>, payload: serde_json::Value) -> Self {
        Value {
            tag: tag.into(),
            payload,
        }
    }

    /// The distinguished value agents are considered to have emitted before
    /// their first step. Always permitted regardless of declared output tags.
    pub fn empty() -> Self {
        Value {
            tag: EMPTY_TAG.to_owned(),
            payload: serde_json::Value::Null,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.tag == EMPTY_TAG
    }
}

/// Serializable snapshot of an agent's internal state. Opaque to the runner;
/// equality and hashing go through the serialized form, which is what replay
/// checks compare.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentState(pub serde_json::Value);

impl AgentState {
    pub fn new(data: serde_json::Value) -> Self {
        AgentState(data)
    }

    /// The default "no state" snapshot.
    pub fn null() -> Self {
        AgentState(serde_json::Value::Null)
    }
}

/// Everything one agent observes in one step: the outputs of its in-neighbors
/// keyed by source agent, plus an optional exogenous feedback signal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputBundle {
    pub neighbor_outputs: BTreeMap<AgentId, Value>,
    pub feedback: Option<FeedbackSignal>,
}

impl InputBundle {
    pub fn empty() -> Self {
        InputBundle {
            neighbor_outputs: BTreeMap::new(),
            feedback: None,
        }
    }

    /// The same bundle with the feedback slot cleared. Conditioning code uses
    /// this to separate "what the agent saw" from "what the environment said".
    pub fn without_feedback(&self) -> InputBundle {
        InputBundle {
            neighbor_outputs: self.neighbor_outputs.clone(),
            feedback: None,
        }
    }
}

/// State-and-output update rule.
///
/// Implementations must be pure up to the random stream: identical
/// (previous state, input, rng state) must produce identical results. That
/// contract is what makes whole-system replay possible.
pub trait TransitionKernel: Send + Sync {
    fn step(&self, prev: &AgentState, input: &InputBundle, rng: &mut SubRng) -> Result<(AgentState, Value)>;
}

/// One agent: identity, declared interface tags, kernel, and initial data.
///
/// `initial_output` is what neighbors observe from this agent before its
/// first step; it defaults to [`Value::empty`].
#[derive(Clone)]
pub struct AgentSpec {
    pub id: AgentId,
    pub input_tags: BTreeSet<String>,
    pub output_tags: BTreeSet<String>,
    pub kernel: Arc<dyn TransitionKernel>,
    pub initial_state: AgentState,
    pub initial_output: Value,
}

impl AgentSpec {
    /// Build a spec, checking that both tag sets are non-empty.
    pub fn new(
        id: impl Into<AgentId>,
        input_tags: impl IntoIterator<Item = String>,
        output_tags: impl IntoIterator<Item = String>,
        kernel: Arc<dyn TransitionKernel>,
        initial_state: AgentState,
    ) -> Result<Self> {
        let id = id.into();
        let input_tags: BTreeSet<String> = input_tags.into_iter().collect();
        let output_tags: BTreeSet<String> = output_tags.into_iter().collect();
        if input_tags.is_empty() || output_tags.is_empty() {
            return Err(MasimError::Structural(format!(
                "agent `{id}`: input and output tag sets must be non-empty"
            )));
        }
        Ok(AgentSpec {
            id,
            input_tags,
            output_tags,
            kernel,
            initial_state,
            initial_output: Value::empty(),
        })
    }

    pub fn with_initial_output(mut self, output: Value) -> Self {
        self.initial_output = output;
        self
    }
}

impl fmt::Debug for AgentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AgentSpec")
            .field("id", &self.id)
            .field("input_tags", &self.input_tags)
            .field("output_tags", &self.output_tags)
            .field("initial_state", &self.initial_state)
            .field("initial_output", &self.initial_output)
            .finish_non_exhaustive()
    }
}

/// Assemble one agent's input for a synchronous step: the previous-step
/// outputs of exactly its in-neighbors in `graph_prev`, plus any feedback.
pub fn assemble_input(
    agent: &AgentId,
    graph_prev: &TopologyGraph,
    outputs_prev: &BTreeMap<AgentId, Value>,
    feedback: Option<FeedbackSignal>,
) -> Result<InputBundle> {
    if !graph_prev.active.contains(agent) {
        return Err(MasimError::UnknownAgent(agent.to_string()));
    }
    let mut neighbor_outputs = BTreeMap::new();
    for (src, dst) in &graph_prev.edges {
        if dst == agent {
            let out = outputs_prev.get(src).ok_or_else(|| {
                MasimError::Structural(format!(
                    "edge ({src} -> {dst}) references `{src}` which has no recorded output"
                ))
            })?;
            neighbor_outputs.insert(src.clone(), out.clone());
        }
    }
    Ok(InputBundle {
        neighbor_outputs,
        feedback,
    })
}

/// Assemble one agent's input under DAG-ordered timing: in-neighbors that
/// precede the agent in `precedence` contribute their current-step outputs,
/// everyone else contributes previous-step outputs.
pub fn assemble_input_dag(
    agent: &AgentId,
    graph: &TopologyGraph,
    outputs_prev: &BTreeMap<AgentId, Value>,
    outputs_current_partial: &BTreeMap<AgentId, Value>,
    precedence: &[AgentId],
    feedback: Option<FeedbackSignal>,
) -> Result<InputBundle> {
    if !graph.active.contains(agent) {
        return Err(MasimError::UnknownAgent(agent.to_string()));
    }
    let position: BTreeMap<&AgentId, usize> =
        precedence.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let own_pos = *position.get(agent).ok_or_else(|| {
        MasimError::Structural(format!("agent `{agent}` missing from the precedence order"))
    })?;
    let mut neighbor_outputs = BTreeMap::new();
    for (src, dst) in &graph.edges {
        if dst == agent {
            let src_pos = position.get(src);
            let out = match src_pos {
                Some(&p) if p < own_pos => outputs_current_partial.get(src).ok_or_else(|| {
                    MasimError::Structural(format!(
                        "predecessor `{src}` of `{agent}` has no current-step output yet"
                    ))
                })?,
                _ => outputs_prev.get(src).ok_or_else(|| {
                    MasimError::Structural(format!(
                        "edge ({src} -> {dst}) references `{src}` which has no recorded output"
                    ))
                })?,
            };
            neighbor_outputs.insert(src.clone(), out.clone());
        }
    }
    Ok(InputBundle {
        neighbor_outputs,
        feedback,
    })
}

/// Run one agent's kernel and enforce the output-tag contract. The
/// distinguished empty value is always permitted.
pub fn step_agent(
    spec: &AgentSpec,
    prev_state: &AgentState,
    input: &InputBundle,
    rng: &mut SubRng,
) -> Result<(AgentState, Value)> {
    let (state, output) = spec.kernel.step(prev_state, input, rng)?;
    if !output.is_empty() && !spec.output_tags.contains(&output.tag) {
        return Err(MasimError::KernelContract {
            agent: spec.id.to_string(),
            detail: format!("emitted undeclared output tag `{}`", output.tag),
        });
    }
    Ok((state, output))
}
