//! Shared domain vocabulary: quality approaches, element instances, process
//! nodes and edges, mappings and ledgers.
//!
//! All types here are plain value data. After construction they are never
//! mutated in place except through the workspace module's single-writer
//! operations, so they can be shared freely across concurrent readers.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("unknown conformance keyword {0:?} (expected shall, should, may or empty)")]
    UnknownConformance(String),
}

/// Checks the workspace-wide identifier rule: nonempty, no tab/newline/CR,
/// no leading or trailing whitespace.
pub fn validate_identifier(raw: &str) -> bool {
    if raw.is_empty() {
        return false;
    }
    if raw.contains(['\t', '\n', '\r']) {
        return false;
    }
    raw.trim() == raw
}

/// Directory-safe identifier rule for approach and process ids, which become
/// path components of the workspace layout.
pub fn validate_dir_identifier(raw: &str) -> bool {
    !raw.is_empty()
        && raw
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
        && raw != "."
        && raw != ".."
}

/// Requirement strength vocabulary of IEEE/ISO standards.
///
/// Ordered by severity: mandatory > recommendation > optional > unspecified.
/// The derived `Ord` follows declaration order, so `Mandatory` is the
/// smallest value; use [`ConformanceLevel::severity_rank`] for comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConformanceLevel {
    Mandatory,
    Recommendation,
    Optional,
    Unspecified,
}

impl ConformanceLevel {
    pub const ALL: [ConformanceLevel; 4] = [
        ConformanceLevel::Mandatory,
        ConformanceLevel::Recommendation,
        ConformanceLevel::Optional,
        ConformanceLevel::Unspecified,
    ];

    /// Larger rank = stronger requirement.
    pub fn severity_rank(self) -> u8 {
        match self {
            ConformanceLevel::Mandatory => 3,
            ConformanceLevel::Recommendation => 2,
            ConformanceLevel::Optional => 1,
            ConformanceLevel::Unspecified => 0,
        }
    }

    /// Canonical spelling used in workspace files.
    pub fn as_str(self) -> &'static str {
        match self {
            ConformanceLevel::Mandatory => "mandatory",
            ConformanceLevel::Recommendation => "recommendation",
            ConformanceLevel::Optional => "optional",
            ConformanceLevel::Unspecified => "unspecified",
        }
    }
}

impl fmt::Display for ConformanceLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Maps a conformance keyword to its level, case-insensitively:
/// shall -> mandatory, should -> recommendation, may -> optional,
/// empty -> unspecified. Canonical level names are accepted as well, which
/// makes the function idempotent on its own output spellings.
pub fn normalize_conformance(raw: &str) -> Result<ConformanceLevel, ModelError> {
    let token = raw.trim().to_ascii_lowercase();
    match token.as_str() {
        "" => Ok(ConformanceLevel::Unspecified),
        "shall" | "mandatory" => Ok(ConformanceLevel::Mandatory),
        "should" | "recommendation" => Ok(ConformanceLevel::Recommendation),
        "may" | "optional" => Ok(ConformanceLevel::Optional),
        "unspecified" => Ok(ConformanceLevel::Unspecified),
        _ => Err(ModelError::UnknownConformance(raw.to_string())),
    }
}

/// One standard, model or method prescribing process requirements
/// (e.g. CMMI-DEV, IEEE 1028, a vendor process description).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QualityApproach {
    pub id: String,
    pub name: String,
    pub version_label: String,
    /// Free-form classification attributes (origin, popularity, ...),
    /// ordered; names unique within the approach.
    pub attributes: Vec<(String, String)>,
}

/// A typed category of content within one approach, e.g. "specific practice"
/// or "input", with an optional default process element it usually maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementKind {
    pub kind_name: String,
    pub default_process_target: Option<ProcessTarget>,
}

/// Process element vocabulary a quality approach kind can default-map to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProcessTarget {
    Process,
    Subprocess,
    Activity,
    Gateway,
    DataObject,
    Role,
    Criteria,
}

impl ProcessTarget {
    pub fn as_str(self) -> &'static str {
        match self {
            ProcessTarget::Process => "process",
            ProcessTarget::Subprocess => "subprocess",
            ProcessTarget::Activity => "activity",
            ProcessTarget::Gateway => "gateway",
            ProcessTarget::DataObject => "data-object",
            ProcessTarget::Role => "role",
            ProcessTarget::Criteria => "criteria",
        }
    }

    pub fn parse(raw: &str) -> Option<ProcessTarget> {
        match raw {
            "process" => Some(ProcessTarget::Process),
            "subprocess" => Some(ProcessTarget::Subprocess),
            "activity" => Some(ProcessTarget::Activity),
            "gateway" => Some(ProcessTarget::Gateway),
            "data-object" => Some(ProcessTarget::DataObject),
            "role" => Some(ProcessTarget::Role),
            "criteria" => Some(ProcessTarget::Criteria),
            _ => None,
        }
    }
}

/// One decomposed fragment of a quality approach: a single shall statement,
/// subpractice, input, task, role description and so on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QaInstance {
    pub id: String,
    pub kind_name: String,
    pub conformance: ConformanceLevel,
    /// Another instance of the same approach this one is contained in.
    pub parent_id: Option<String>,
    /// Position among siblings where the approach defines an order.
    pub order: Option<u32>,
    pub text: String,
}

/// Relation between two element instances of the same approach.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QaRelation {
    pub from_id: String,
    pub to_id: String,
    pub relation_type: QaRelationType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum QaRelationType {
    PartOf,
    RefersTo,
    Requires,
    VersionOf,
}

impl QaRelationType {
    pub fn as_str(self) -> &'static str {
        match self {
            QaRelationType::PartOf => "part-of",
            QaRelationType::RefersTo => "refers-to",
            QaRelationType::Requires => "requires",
            QaRelationType::VersionOf => "version-of",
        }
    }

    pub fn parse(raw: &str) -> Option<QaRelationType> {
        match raw {
            "part-of" => Some(QaRelationType::PartOf),
            "refers-to" => Some(QaRelationType::RefersTo),
            "requires" => Some(QaRelationType::Requires),
            "version-of" => Some(QaRelationType::VersionOf),
            _ => None,
        }
    }
}

/// Node kinds of the unified process model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Process,
    Subprocess,
    Activity,
    Gateway,
    StartEvent,
    EndEvent,
    DataObject,
    Role,
    CriteriaSet,
}

impl NodeKind {
    pub const ALL: [NodeKind; 9] = [
        NodeKind::Process,
        NodeKind::Subprocess,
        NodeKind::Activity,
        NodeKind::Gateway,
        NodeKind::StartEvent,
        NodeKind::EndEvent,
        NodeKind::DataObject,
        NodeKind::Role,
        NodeKind::CriteriaSet,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Process => "process",
            NodeKind::Subprocess => "subprocess",
            NodeKind::Activity => "activity",
            NodeKind::Gateway => "gateway",
            NodeKind::StartEvent => "start-event",
            NodeKind::EndEvent => "end-event",
            NodeKind::DataObject => "data-object",
            NodeKind::Role => "role",
            NodeKind::CriteriaSet => "criteria-set",
        }
    }

    pub fn parse(raw: &str) -> Option<NodeKind> {
        match raw {
            "process" => Some(NodeKind::Process),
            "subprocess" => Some(NodeKind::Subprocess),
            "activity" => Some(NodeKind::Activity),
            "gateway" => Some(NodeKind::Gateway),
            "start-event" => Some(NodeKind::StartEvent),
            "end-event" => Some(NodeKind::EndEvent),
            "data-object" => Some(NodeKind::DataObject),
            "role" => Some(NodeKind::Role),
            "criteria-set" => Some(NodeKind::CriteriaSet),
            _ => None,
        }
    }

    /// Flow nodes participate in sequence edges.
    pub fn is_flow(self) -> bool {
        matches!(
            self,
            NodeKind::Subprocess
                | NodeKind::Activity
                | NodeKind::Gateway
                | NodeKind::StartEvent
                | NodeKind::EndEvent
        )
    }

    /// Kinds that carry an item list: responsibilities for roles, data items
    /// for data objects, criterion texts for criteria sets.
    pub fn carries_items(self) -> bool {
        matches!(
            self,
            NodeKind::Role | NodeKind::DataObject | NodeKind::CriteriaSet
        )
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One element instance of the unified process model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessNode {
    pub id: String,
    pub kind: NodeKind,
    pub parent_id: Option<String>,
    pub name: String,
    pub description: String,
    /// Nonempty only for role / data-object / criteria-set kinds.
    pub items: Vec<String>,
}

/// Edge relations of the process graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeRelation {
    /// Flow order between two flow nodes sharing a parent. A sequence edge
    /// closing a cycle is how loops are drawn.
    Sequence,
    /// role -> flow node.
    Performs,
    /// data-object -> flow node.
    Input,
    /// flow node -> data-object.
    Output,
}

impl EdgeRelation {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeRelation::Sequence => "sequence",
            EdgeRelation::Performs => "performs",
            EdgeRelation::Input => "input",
            EdgeRelation::Output => "output",
        }
    }

    pub fn parse(raw: &str) -> Option<EdgeRelation> {
        match raw {
            "sequence" => Some(EdgeRelation::Sequence),
            "performs" => Some(EdgeRelation::Performs),
            "input" => Some(EdgeRelation::Input),
            "output" => Some(EdgeRelation::Output),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProcessEdge {
    pub from_id: String,
    pub to_id: String,
    pub relation: EdgeRelation,
    /// Only meaningful on sequence edges leaving a gateway. Absent and
    /// empty are the same thing; the stored form is the empty field.
    pub guard: Option<String>,
}

/// A correspondence between a set of quality approach element instances and
/// a set of process element instances. The instances may come from different
/// approaches; per-approach views are derived, never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mapping {
    pub id: String,
    pub qa_ids: BTreeSet<String>,
    pub node_ids: BTreeSet<String>,
    /// The strongest source instance, when one was chosen.
    pub primary_source: Option<String>,
    pub note: String,
}

/// A deliberately unmapped instance together with the reason, so that
/// "not mapped" is always distinguishable from "not yet looked at".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exclusion {
    pub qa_id: String,
    pub rationale: String,
}

/// One entry of the append-only repeatability log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    /// ISO-8601 UTC, seconds precision, e.g. `2012-06-15T10:00:00Z`.
    pub timestamp: String,
    pub actor: String,
    pub context: String,
    pub decision: String,
    pub rationale: String,
}
