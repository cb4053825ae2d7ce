//! Structural validation of unified process models, node censuses, and the
//! granularity decompositions (activity-to-subprocess conversion, role and
//! data-object splits).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::mapping::{Finding, Severity, VerificationReport};
use crate::model::{EdgeRelation, NodeKind, ProcessEdge, ProcessNode};
use crate::workspace::{ProcessData, Workspace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProcessError {
    #[error("unknown process {0:?}")]
    UnknownProcess(String),
    #[error("process {0:?} has validation errors; fix them before exporting")]
    InvalidProcess(String),
    #[error("{0:?} is not an activity")]
    NotAnActivity(String),
    #[error("decomposition needs at least one child")]
    EmptyChildren,
    #[error("{0:?} is not a role")]
    NotARole(String),
    #[error("{0:?} is not a data object")]
    NotADataObject(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("edge to {0:?} has no reassignment side")]
    MissingReassignment(String),
}

/// Structural checks over one process. Empty report means the process obeys
/// every rule: single root, parents on activities and gateways, acyclic
/// containment, gateway fan-out of at least two, sequence flow inside one
/// scope, guards only behind gateways, edge endpoint kinds, and reachability
/// from the scope's start event where one exists.
pub fn validate_process(
    ws: &Workspace,
    process_id: &str,
) -> Result<VerificationReport, ProcessError> {
    let Some(process) = ws.processes.get(process_id) else {
        return Err(ProcessError::UnknownProcess(process_id.to_string()));
    };
    let mut findings = Vec::new();
    let nodes = &process.nodes;

    let error = |code: &'static str, subjects: Vec<String>, message: String| Finding {
        severity: Severity::Error,
        code,
        subject_ids: subjects,
        message,
    };

    // Roots and parents.
    let roots: Vec<&ProcessNode> = nodes
        .values()
        .filter(|n| n.kind == NodeKind::Process && n.parent_id.is_none())
        .collect();
    if roots.len() > 1 {
        findings.push(error(
            "MultipleRoots",
            roots.iter().map(|n| n.id.clone()).collect(),
            format!(
                "{} parentless process nodes; expected exactly one root",
                roots.len()
            ),
        ));
    }
    if roots.is_empty() {
        findings.push(error(
            "NoRoot",
            vec![],
            "no parentless process node; expected exactly one root".to_string(),
        ));
    }
    for node in nodes.values() {
        if matches!(node.kind, NodeKind::Activity | NodeKind::Gateway) && node.parent_id.is_none() {
            findings.push(error(
                "MissingParent",
                vec![node.id.clone()],
                format!("{} {:?} has no parent", node.kind, node.id),
            ));
        }
        if !node.items.is_empty() && !node.kind.carries_items() {
            findings.push(error(
                "ItemsOnWrongKind",
                vec![node.id.clone()],
                format!("{} {:?} cannot carry items", node.kind, node.id),
            ));
        }
    }

    // Containment cycles.
    for start in nodes.values() {
        let mut seen = BTreeSet::new();
        seen.insert(start.id.as_str());
        let mut current = start;
        while let Some(parent_id) = &current.parent_id {
            let Some(parent) = nodes.get(parent_id) else {
                findings.push(error(
                    "DanglingParent",
                    vec![start.id.clone(), parent_id.clone()],
                    format!(
                        "node {:?} references unknown parent {parent_id:?}",
                        current.id
                    ),
                ));
                break;
            };
            if !seen.insert(parent.id.as_str()) {
                findings.push(error(
                    "ContainmentCycle",
                    vec![start.id.clone()],
                    format!("containment cycle through {:?}", start.id),
                ));
                break;
            }
            current = parent;
        }
    }

    // Edge rules.
    for edge in &process.edges {
        let (Some(from), Some(to)) = (nodes.get(&edge.from_id), nodes.get(&edge.to_id)) else {
            findings.push(error(
                "DanglingEdge",
                vec![edge.from_id.clone(), edge.to_id.clone()],
                format!(
                    "edge {} -> {} references a missing node",
                    edge.from_id, edge.to_id
                ),
            ));
            continue;
        };
        match edge.relation {
            EdgeRelation::Sequence => {
                if !from.kind.is_flow() || !to.kind.is_flow() {
                    findings.push(error(
                        "BadEndpoints",
                        vec![from.id.clone(), to.id.clone()],
                        format!(
                            "sequence edge {} -> {} must connect flow nodes, found {} -> {}",
                            from.id, to.id, from.kind, to.kind
                        ),
                    ));
                } else if from.parent_id != to.parent_id {
                    findings.push(error(
                        "CrossScopeSequence",
                        vec![from.id.clone(), to.id.clone()],
                        format!(
                            "sequence edge {} -> {} crosses parent scopes",
                            from.id, to.id
                        ),
                    ));
                }
                if edge.guard.is_some() && from.kind != NodeKind::Gateway {
                    findings.push(error(
                        "GuardOutsideGateway",
                        vec![from.id.clone(), to.id.clone()],
                        format!(
                            "guard on sequence edge {} -> {} whose source is not a gateway",
                            from.id, to.id
                        ),
                    ));
                }
            }
            EdgeRelation::Performs => {
                if from.kind != NodeKind::Role || !to.kind.is_flow() {
                    findings.push(error(
                        "BadEndpoints",
                        vec![from.id.clone(), to.id.clone()],
                        format!(
                            "performs edge {} -> {} must connect role to flow node, found {} -> {}",
                            from.id, to.id, from.kind, to.kind
                        ),
                    ));
                }
            }
            EdgeRelation::Input => {
                if from.kind != NodeKind::DataObject || !to.kind.is_flow() {
                    findings.push(error(
                        "BadEndpoints",
                        vec![from.id.clone(), to.id.clone()],
                        format!(
                            "input edge {} -> {} must connect data object to flow node, found {} -> {}",
                            from.id, to.id, from.kind, to.kind
                        ),
                    ));
                }
            }
            EdgeRelation::Output => {
                if !from.kind.is_flow() || to.kind != NodeKind::DataObject {
                    findings.push(error(
                        "BadEndpoints",
                        vec![from.id.clone(), to.id.clone()],
                        format!(
                            "output edge {} -> {} must connect flow node to data object, found {} -> {}",
                            from.id, to.id, from.kind, to.kind
                        ),
                    ));
                }
            }
        }
        if edge.guard.is_some() && edge.relation != EdgeRelation::Sequence {
            findings.push(error(
                "GuardOutsideGateway",
                vec![edge.from_id.clone(), edge.to_id.clone()],
                format!(
                    "guard on non-sequence edge {} -> {}",
                    edge.from_id, edge.to_id
                ),
            ));
        }
    }

    // Gateway fan-out: two or more outgoing sequence flows.
    let mut outgoing: BTreeMap<&str, usize> = BTreeMap::new();
    for edge in &process.edges {
        if edge.relation == EdgeRelation::Sequence {
            *outgoing.entry(edge.from_id.as_str()).or_default() += 1;
        }
    }
    for node in nodes.values() {
        if node.kind == NodeKind::Gateway {
            let degree = outgoing.get(node.id.as_str()).copied().unwrap_or(0);
            if degree < 2 {
                findings.push(error(
                    "GatewayDegree",
                    vec![node.id.clone()],
                    format!(
                        "gateway {:?} has {degree} outgoing sequence flow(s); a gateway outputs two or more",
                        node.id
                    ),
                ));
            }
        }
    }

    // Reachability inside scopes that contain a start event.
    let mut scopes: BTreeMap<Option<&str>, Vec<&ProcessNode>> = BTreeMap::new();
    for node in nodes.values() {
        if node.kind.is_flow() {
            scopes
                .entry(node.parent_id.as_deref())
                .or_default()
                .push(node);
        }
    }
    let mut adjacency: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for edge in &process.edges {
        if edge.relation == EdgeRelation::Sequence {
            adjacency
                .entry(edge.from_id.as_str())
                .or_default()
                .push(edge.to_id.as_str());
        }
    }
    for members in scopes.values() {
        let starts: Vec<&&ProcessNode> = members
            .iter()
            .filter(|n| n.kind == NodeKind::StartEvent)
            .collect();
        if starts.is_empty() {
            continue;
        }
        let mut reached: BTreeSet<&str> = BTreeSet::new();
        let mut queue: VecDeque<&str> = starts.iter().map(|n| n.id.as_str()).collect();
        for start in &starts {
            reached.insert(start.id.as_str());
        }
        while let Some(current) = queue.pop_front() {
            for next in adjacency.get(current).into_iter().flatten() {
                if reached.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        for member in members {
            if member.kind != NodeKind::StartEvent && !reached.contains(member.id.as_str()) {
                findings.push(error(
                    "Unreachable",
                    vec![member.id.clone()],
                    format!(
                        "flow node {:?} is unreachable from its scope's start event",
                        member.id
                    ),
                ));
            }
        }
    }

    findings.sort_by(|a, b| {
        (a.severity, a.code, &a.subject_ids).cmp(&(b.severity, b.code, &b.subject_ids))
    });
    Ok(VerificationReport { findings })
}

/// Exact node counts per kind, plus the number of criterion items across all
/// criteria sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodeCensus {
    pub by_kind: BTreeMap<NodeKind, u64>,
    pub criteria_items: u64,
    pub total: u64,
}

pub fn node_census(ws: &Workspace, process_id: &str) -> Result<NodeCensus, ProcessError> {
    let Some(process) = ws.processes.get(process_id) else {
        return Err(ProcessError::UnknownProcess(process_id.to_string()));
    };
    let mut census = NodeCensus::default();
    for node in process.nodes.values() {
        *census.by_kind.entry(node.kind).or_default() += 1;
        census.total += 1;
        if node.kind == NodeKind::CriteriaSet {
            census.criteria_items += node.items.len() as u64;
        }
    }
    Ok(census)
}

fn fresh_id(nodes: &BTreeMap<String, ProcessNode>, base: &str) -> String {
    if !nodes.contains_key(base) {
        return base.to_string();
    }
    let mut i = 2;
    loop {
        let candidate = format!("{base}-{i}");
        if !nodes.contains_key(&candidate) {
            return candidate;
        }
        i += 1;
    }
}

/// Kinds a decomposition may introduce under the new subprocess.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChildKind {
    Activity,
    Gateway,
}

impl From<ChildKind> for NodeKind {
    fn from(kind: ChildKind) -> NodeKind {
        match kind {
            ChildKind::Activity => NodeKind::Activity,
            ChildKind::Gateway => NodeKind::Gateway,
        }
    }
}

/// Replaces an activity by a subprocess with the given children laid out in
/// sequence between a fresh start and end event. The node keeps its id,
/// name and description, so mappings, performs and input/output edges stay
/// valid without rewriting.
pub fn decompose_activity(
    ws: &mut Workspace,
    process_id: &str,
    activity_id: &str,
    children: &[(ChildKind, String)],
) -> Result<(), ProcessError> {
    if children.is_empty() {
        return Err(ProcessError::EmptyChildren);
    }
    let Some(process) = ws.processes.get_mut(process_id) else {
        return Err(ProcessError::UnknownProcess(process_id.to_string()));
    };
    match process.nodes.get(activity_id).map(|n| n.kind) {
        Some(NodeKind::Activity) => {}
        Some(_) => return Err(ProcessError::NotAnActivity(activity_id.to_string())),
        None => return Err(ProcessError::NotAnActivity(activity_id.to_string())),
    }

    process.nodes.get_mut(activity_id).unwrap().kind = NodeKind::Subprocess;

    let start_id = fresh_id(&process.nodes, &format!("{activity_id}-start"));
    process.nodes.insert(
        start_id.clone(),
        ProcessNode {
            id: start_id.clone(),
            kind: NodeKind::StartEvent,
            parent_id: Some(activity_id.to_string()),
            name: "Start".to_string(),
            description: String::new(),
            items: Vec::new(),
        },
    );
    let mut previous = start_id;
    for (index, (kind, name)) in children.iter().enumerate() {
        let child_id = fresh_id(&process.nodes, &format!("{activity_id}-c{}", index + 1));
        process.nodes.insert(
            child_id.clone(),
            ProcessNode {
                id: child_id.clone(),
                kind: (*kind).into(),
                parent_id: Some(activity_id.to_string()),
                name: name.clone(),
                description: String::new(),
                items: Vec::new(),
            },
        );
        process.edges.insert(ProcessEdge {
            from_id: previous,
            to_id: child_id.clone(),
            relation: EdgeRelation::Sequence,
            guard: None,
        });
        previous = child_id;
    }
    let end_id = fresh_id(&process.nodes, &format!("{activity_id}-end"));
    process.nodes.insert(
        end_id.clone(),
        ProcessNode {
            id: end_id.clone(),
            kind: NodeKind::EndEvent,
            parent_id: Some(activity_id.to_string()),
            name: "End".to_string(),
            description: String::new(),
            items: Vec::new(),
        },
    );
    process.edges.insert(ProcessEdge {
        from_id: previous,
        to_id: end_id,
        relation: EdgeRelation::Sequence,
        guard: None,
    });
    Ok(())
}

/// Which side of a split an edge goes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitSide {
    Original,
    New,
}

fn split_items(
    items: &[String],
    move_indices: &BTreeSet<usize>,
) -> Result<(Vec<String>, Vec<String>), ProcessError> {
    if items.len() < 2 {
        return Err(ProcessError::BadPartition(format!(
            "need at least two items to split, found {}",
            items.len()
        )));
    }
    if let Some(&bad) = move_indices.iter().find(|&&i| i >= items.len()) {
        return Err(ProcessError::BadPartition(format!(
            "item index {bad} out of range ({} items)",
            items.len()
        )));
    }
    if move_indices.is_empty() || move_indices.len() == items.len() {
        return Err(ProcessError::BadPartition(
            "both sides of the partition must be nonempty".to_string(),
        ));
    }
    let mut keep = Vec::new();
    let mut moved = Vec::new();
    for (index, item) in items.iter().enumerate() {
        if move_indices.contains(&index) {
            moved.push(item.clone());
        } else {
            keep.push(item.clone());
        }
    }
    Ok((keep, moved))
}

fn kebab(name: &str) -> String {
    let mut out = String::new();
    for c in name.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.ends_with('-') && !out.is_empty() {
            out.push('-');
        }
    }
    let trimmed = out.trim_end_matches('-').to_string();
    if trimmed.is_empty() {
        "node".to_string()
    } else {
        trimmed
    }
}

/// Splits a role's responsibilities between the original role and a new one.
/// Every performs edge of the role must be assigned to a side, keyed by its
/// target node id.
pub fn split_role(
    ws: &mut Workspace,
    process_id: &str,
    role_id: &str,
    move_indices: &BTreeSet<usize>,
    new_role_name: &str,
    reassignment: &BTreeMap<String, SplitSide>,
) -> Result<String, ProcessError> {
    let Some(process) = ws.processes.get_mut(process_id) else {
        return Err(ProcessError::UnknownProcess(process_id.to_string()));
    };
    let role = match process.nodes.get(role_id) {
        Some(node) if node.kind == NodeKind::Role => node.clone(),
        _ => return Err(ProcessError::NotARole(role_id.to_string())),
    };
    let (keep, moved) = split_items(&role.items, move_indices)?;

    let role_edges: Vec<ProcessEdge> = process
        .edges
        .iter()
        .filter(|e| e.relation == EdgeRelation::Performs && e.from_id == role_id)
        .cloned()
        .collect();
    for edge in &role_edges {
        if !reassignment.contains_key(&edge.to_id) {
            return Err(ProcessError::MissingReassignment(edge.to_id.clone()));
        }
    }

    let new_id = fresh_id(&process.nodes, &kebab(new_role_name));
    process.nodes.get_mut(role_id).unwrap().items = keep;
    process.nodes.insert(
        new_id.clone(),
        ProcessNode {
            id: new_id.clone(),
            kind: NodeKind::Role,
            parent_id: role.parent_id.clone(),
            name: new_role_name.to_string(),
            description: String::new(),
            items: moved,
        },
    );
    for edge in role_edges {
        if reassignment[&edge.to_id] == SplitSide::New {
            process.edges.remove(&edge);
            process.edges.insert(ProcessEdge {
                from_id: new_id.clone(),
                ..edge
            });
        }
    }
    Ok(new_id)
}

/// Splits a data object's items between the original object and a new one.
/// Every input/output edge of the object must be assigned to a side, keyed
/// by (counterpart node id, relation).
pub fn split_data_object(
    ws: &mut Workspace,
    process_id: &str,
    object_id: &str,
    move_indices: &BTreeSet<usize>,
    new_object_name: &str,
    reassignment: &BTreeMap<(String, EdgeRelation), SplitSide>,
) -> Result<String, ProcessError> {
    let Some(process) = ws.processes.get_mut(process_id) else {
        return Err(ProcessError::UnknownProcess(process_id.to_string()));
    };
    let object = match process.nodes.get(object_id) {
        Some(node) if node.kind == NodeKind::DataObject => node.clone(),
        _ => return Err(ProcessError::NotADataObject(object_id.to_string())),
    };
    let (keep, moved) = split_items(&object.items, move_indices)?;

    let object_edges: Vec<ProcessEdge> = process
        .edges
        .iter()
        .filter(|e| match e.relation {
            EdgeRelation::Input => e.from_id == object_id,
            EdgeRelation::Output => e.to_id == object_id,
            _ => false,
        })
        .cloned()
        .collect();
    for edge in &object_edges {
        let counterpart = if edge.relation == EdgeRelation::Input {
            edge.to_id.clone()
        } else {
            edge.from_id.clone()
        };
        if !reassignment.contains_key(&(counterpart.clone(), edge.relation)) {
            return Err(ProcessError::MissingReassignment(counterpart));
        }
    }

    let new_id = fresh_id(&process.nodes, &kebab(new_object_name));
    process.nodes.get_mut(object_id).unwrap().items = keep;
    process.nodes.insert(
        new_id.clone(),
        ProcessNode {
            id: new_id.clone(),
            kind: NodeKind::DataObject,
            parent_id: object.parent_id.clone(),
            name: new_object_name.to_string(),
            description: String::new(),
            items: moved,
        },
    );
    for edge in object_edges {
        let (counterpart, is_input) = if edge.relation == EdgeRelation::Input {
            (edge.to_id.clone(), true)
        } else {
            (edge.from_id.clone(), false)
        };
        if reassignment[&(counterpart, edge.relation)] == SplitSide::New {
            process.edges.remove(&edge);
            let rerouted = if is_input {
                ProcessEdge {
                    from_id: new_id.clone(),
                    ..edge
                }
            } else {
                ProcessEdge {
                    to_id: new_id.clone(),
                    ..edge
                }
            };
            process.edges.insert(rerouted);
        }
    }
    Ok(new_id)
}

/// Convenience access used by the exporters.
pub(crate) fn get_process<'a>(
    ws: &'a Workspace,
    process_id: &str,
) -> Result<&'a ProcessData, ProcessError> {
    ws.processes
        .get(process_id)
        .ok_or_else(|| ProcessError::UnknownProcess(process_id.to_string()))
}
