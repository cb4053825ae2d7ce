//! Deterministic exports of a process model: the tabular textual
//! description, a neutral XML serialization, and DOT graphs.
//!
//! All three are pure functions of the workspace value. Nodes are ordered by
//! id and attribute order is fixed, so equal processes always export to
//! byte-identical documents.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::model::{EdgeRelation, NodeKind, ProcessNode};
use crate::process::{get_process, validate_process, ProcessError};
use crate::workspace::{ProcessData, Workspace};

/// Row labels of the (sub)process tables.
pub const PROCESS_LABELS: [&str; 8] = [
    "Process ID",
    "Parent ID",
    "Process name",
    "Process description",
    "Entry criteria",
    "Inputs",
    "Outputs",
    "Exit criteria",
];

/// Row labels of the activity tables.
pub const ACTIVITY_LABELS: [&str; 7] = [
    "Activity ID",
    "Parent ID",
    "Activity name",
    "Activity description",
    "Inputs",
    "Outputs",
    "Roles/responsibilities",
];

/// Row labels of the data object tables.
pub const DATA_OBJECT_LABELS: [&str; 3] = [
    "Data object ID",
    "Data object name",
    "Data object description",
];

/// Row labels of the role tables.
pub const ROLE_LABELS: [&str; 3] = ["Role ID", "Role name", "Responsibilities"];

fn ensure_valid(ws: &Workspace, process_id: &str) -> Result<(), ProcessError> {
    let report = validate_process(ws, process_id)?;
    if report.has_errors() {
        return Err(ProcessError::InvalidProcess(process_id.to_string()));
    }
    Ok(())
}

/// Description of a node with the notes of every mapping that covers it
/// appended, in mapping id order.
fn described(ws: &Workspace, process_id: &str, node: &ProcessNode) -> String {
    let mut text = node.description.clone();
    for mapping in ws.process_mappings(process_id) {
        if mapping.node_ids.contains(&node.id) && !mapping.note.is_empty() {
            if !text.is_empty() {
                text.push(' ');
            }
            let _ = write!(text, "[{}]", mapping.note);
        }
    }
    text
}

fn join_items(values: Vec<String>) -> String {
    values.join("; ")
}

fn criteria_items(process: &ProcessData, scope_id: &str, entry: bool) -> Vec<String> {
    let mut items = Vec::new();
    for node in process.nodes.values() {
        if node.kind == NodeKind::CriteriaSet
            && node.parent_id.as_deref() == Some(scope_id)
            && node
                .name
                .to_ascii_lowercase()
                .starts_with(if entry { "entry" } else { "exit" })
        {
            items.extend(node.items.iter().cloned());
        }
    }
    items
}

fn data_names(process: &ProcessData, ids: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut names: Vec<String> = ids
        .into_iter()
        .filter_map(|id| process.nodes.get(&id).map(|n| n.name.clone()))
        .collect();
    names.sort();
    names
}

fn inputs_of(process: &ProcessData, node_id: &str) -> Vec<String> {
    data_names(
        process,
        process
            .edges
            .iter()
            .filter(|e| e.relation == EdgeRelation::Input && e.to_id == node_id)
            .map(|e| e.from_id.clone()),
    )
}

fn outputs_of(process: &ProcessData, node_id: &str) -> Vec<String> {
    data_names(
        process,
        process
            .edges
            .iter()
            .filter(|e| e.relation == EdgeRelation::Output && e.from_id == node_id)
            .map(|e| e.to_id.clone()),
    )
}

fn roles_of(process: &ProcessData, node_id: &str) -> Vec<String> {
    let mut names: Vec<String> = process
        .edges
        .iter()
        .filter(|e| e.relation == EdgeRelation::Performs && e.to_id == node_id)
        .filter_map(|e| process.nodes.get(&e.from_id).map(|n| n.name.clone()))
        .collect();
    names.sort();
    names
}

fn push_table(out: &mut String, rows: &[(&str, String)]) {
    for (label, value) in rows {
        let _ = writeln!(out, "{label}: {value}");
    }
    out.push('\n');
}

/// Renders the textual process representation: one table per (sub)process,
/// activity, data object and role, each as `<label>: <value>` rows with a
/// blank line between tables. Parent ID is 0 for the root process.
pub fn export_textual(ws: &Workspace, process_id: &str) -> Result<String, ProcessError> {
    ensure_valid(ws, process_id)?;
    let process = get_process(ws, process_id)?;
    let mut out = String::new();

    for node in process.nodes.values() {
        if !matches!(node.kind, NodeKind::Process | NodeKind::Subprocess) {
            continue;
        }
        push_table(
            &mut out,
            &[
                ("Process ID", node.id.clone()),
                (
                    "Parent ID",
                    node.parent_id.clone().unwrap_or_else(|| "0".to_string()),
                ),
                ("Process name", node.name.clone()),
                ("Process description", described(ws, process_id, node)),
                (
                    "Entry criteria",
                    join_items(criteria_items(process, &node.id, true)),
                ),
                ("Inputs", join_items(inputs_of(process, &node.id))),
                ("Outputs", join_items(outputs_of(process, &node.id))),
                (
                    "Exit criteria",
                    join_items(criteria_items(process, &node.id, false)),
                ),
            ],
        );
    }

    for node in process.nodes.values() {
        if node.kind != NodeKind::Activity {
            continue;
        }
        push_table(
            &mut out,
            &[
                ("Activity ID", node.id.clone()),
                (
                    "Parent ID",
                    node.parent_id.clone().unwrap_or_else(|| "0".to_string()),
                ),
                ("Activity name", node.name.clone()),
                ("Activity description", described(ws, process_id, node)),
                ("Inputs", join_items(inputs_of(process, &node.id))),
                ("Outputs", join_items(outputs_of(process, &node.id))),
                (
                    "Roles/responsibilities",
                    join_items(roles_of(process, &node.id)),
                ),
            ],
        );
    }

    for node in process.nodes.values() {
        if node.kind != NodeKind::DataObject {
            continue;
        }
        push_table(
            &mut out,
            &[
                ("Data object ID", node.id.clone()),
                ("Data object name", node.name.clone()),
                ("Data object description", described(ws, process_id, node)),
            ],
        );
    }

    for node in process.nodes.values() {
        if node.kind != NodeKind::Role {
            continue;
        }
        push_table(
            &mut out,
            &[
                ("Role ID", node.id.clone()),
                ("Role name", node.name.clone()),
                ("Responsibilities", join_items(node.items.clone())),
            ],
        );
    }

    // One blank line between tables, none after the last.
    while out.ends_with('\n') {
        out.pop();
    }
    out.push('\n');
    Ok(out)
}

fn xml_escape(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\n' => out.push_str("&#10;"),
            '\t' => out.push_str("&#9;"),
            '\r' => out.push_str("&#13;"),
            _ => out.push(c),
        }
    }
    out
}

/// Neutral XML serialization: a `process` root with `node` and `edge`
/// children carrying every field as attributes, children sorted by id.
pub fn export_xml(ws: &Workspace, process_id: &str) -> Result<String, ProcessError> {
    ensure_valid(ws, process_id)?;
    let process = get_process(ws, process_id)?;
    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(out, "<process id=\"{}\">", xml_escape(process_id));
    for node in process.nodes.values() {
        let items = crate::workspace::join_list(&node.items);
        let _ = writeln!(
            out,
            "  <node id=\"{}\" kind=\"{}\" parent=\"{}\" name=\"{}\" description=\"{}\" items=\"{}\"/>",
            xml_escape(&node.id),
            node.kind.as_str(),
            xml_escape(node.parent_id.as_deref().unwrap_or("")),
            xml_escape(&node.name),
            xml_escape(&node.description),
            xml_escape(&items),
        );
    }
    for edge in &process.edges {
        let _ = writeln!(
            out,
            "  <edge from=\"{}\" to=\"{}\" relation=\"{}\" guard=\"{}\"/>",
            xml_escape(&edge.from_id),
            xml_escape(&edge.to_id),
            edge.relation.as_str(),
            xml_escape(edge.guard.as_deref().unwrap_or("")),
        );
    }
    out.push_str("</process>\n");
    Ok(out)
}

/// A small digraph ready for DOT rendering.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    /// (id, optional display label)
    pub nodes: Vec<(String, Option<String>)>,
    /// (from, to, optional edge label)
    pub edges: Vec<(String, String, Option<String>)>,
}

impl Digraph {
    fn normalized(mut self) -> Digraph {
        self.nodes.sort();
        self.nodes.dedup();
        self.edges.sort();
        self
    }
}

fn dot_escape(value: &str) -> String {
    value.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders a digraph as DOT text, nodes sorted, one statement per line.
pub fn export_dot(graph: &Digraph) -> String {
    let graph = graph.clone().normalized();
    let mut out = String::from("digraph G {\n");
    for (id, label) in &graph.nodes {
        match label {
            Some(label) => {
                let _ = writeln!(
                    out,
                    "  \"{}\" [label=\"{}\"];",
                    dot_escape(id),
                    dot_escape(label)
                );
            }
            None => {
                let _ = writeln!(out, "  \"{}\";", dot_escape(id));
            }
        }
    }
    for (from, to, label) in &graph.edges {
        match label {
            Some(label) => {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{}\"];",
                    dot_escape(from),
                    dot_escape(to),
                    dot_escape(label)
                );
            }
            None => {
                let _ = writeln!(out, "  \"{}\" -> \"{}\";", dot_escape(from), dot_escape(to));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Containment tree of a process: parent -> child edges over all nodes.
pub fn containment_graph(ws: &Workspace, process_id: &str) -> Result<Digraph, ProcessError> {
    let process = get_process(ws, process_id)?;
    let mut graph = Digraph::default();
    for node in process.nodes.values() {
        graph.nodes.push((node.id.clone(), Some(node.name.clone())));
        if let Some(parent) = &node.parent_id {
            graph.edges.push((parent.clone(), node.id.clone(), None));
        }
    }
    Ok(graph)
}

/// Sequence-flow graph of a process; guards become edge labels.
pub fn flow_graph(ws: &Workspace, process_id: &str) -> Result<Digraph, ProcessError> {
    let process = get_process(ws, process_id)?;
    let mut graph = Digraph::default();
    for node in process.nodes.values() {
        if node.kind.is_flow() {
            graph.nodes.push((node.id.clone(), Some(node.name.clone())));
        }
    }
    for edge in &process.edges {
        if edge.relation == EdgeRelation::Sequence {
            graph
                .edges
                .push((edge.from_id.clone(), edge.to_id.clone(), edge.guard.clone()));
        }
    }
    Ok(graph)
}

/// Reference-matrix graph: one edge per (from, to) pair labeled with the
/// aggregated count.
pub fn matrix_graph(matrix: &BTreeMap<(String, String), u64>) -> Digraph {
    let mut graph = Digraph::default();
    for ((from, to), count) in matrix {
        graph.nodes.push((from.clone(), None));
        graph.nodes.push((to.clone(), None));
        graph
            .edges
            .push((from.clone(), to.clone(), Some(count.to_string())));
    }
    graph
}
