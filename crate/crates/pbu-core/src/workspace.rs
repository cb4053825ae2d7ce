//! The on-disk workspace: a directory of UTF-8, tab-separated files with one
//! file per entity, plus the append-only decision log.
//!
//! Layout (all files LF line endings, first line is the header):
//!
//! ```text
//! workspace.meta                       key/value lines: format_version=1
//! approaches/<aid>/approach.meta       id, name, version_label, attr:* rows
//! approaches/<aid>/kinds.tsv           kind_name, default_process_target
//! approaches/<aid>/instances.tsv       id, kind_name, conformance, parent_id, order, text
//! approaches/<aid>/relations.tsv       from_id, to_id, relation_type
//! processes/<pid>/nodes.tsv            id, kind, parent_id, name, description, items
//! processes/<pid>/edges.tsv            from_id, to_id, relation, guard
//! mappings/<pid>.tsv                   id, qa_ids, node_ids, primary_source, note
//! exclusions/<aid>.tsv                 qa_id, rationale
//! decisions.log                        timestamp, actor, context, decision, rationale
//! ```
//!
//! Save is atomic per file (write temp, then rename) and sorts records by ID,
//! so equal workspaces produce byte-identical directories. `decisions.log` is
//! append-only: save creates it when missing and never rewrites it.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::model::{
    normalize_conformance, validate_dir_identifier, validate_identifier, Decision, EdgeRelation,
    ElementKind, Exclusion, Mapping, NodeKind, ProcessEdge, ProcessNode, ProcessTarget, QaInstance,
    QaRelation, QaRelationType, QualityApproach,
};

pub const FORMAT_VERSION: &str = "1";
const LOCK_FILE: &str = ".lock";

#[derive(Debug, Error)]
pub enum WorkspaceError {
    /// Bad header, wrong column count, bad escape, unparseable value.
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    /// Dangling reference, duplicate ID or containment cycle.
    #[error("{file}:{line}: {message}")]
    Integrity {
        file: String,
        line: usize,
        message: String,
    },
    #[error("malformed escape: {0}")]
    MalformedEscape(String),
    #[error("workspace at {0} is locked by another writer")]
    Locked(String),
    #[error("not a workspace (missing workspace.meta): {0}")]
    NotAWorkspace(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl WorkspaceError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        WorkspaceError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

// ---------------------------------------------------------------------------
// Field escaping
// ---------------------------------------------------------------------------

/// Escapes a field for storage: backslash, tab, newline and carriage return
/// become two-character escapes. Everything else passes through.
pub fn escape_field(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for c in raw.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            _ => out.push(c),
        }
    }
    out
}

/// Exact inverse of [`escape_field`]. List items additionally use `\;` so a
/// literal semicolon survives the `;`-joined list fields; it is accepted here
/// so one decoder serves both contexts.
pub fn unescape_field(escaped: &str) -> Result<String, WorkspaceError> {
    let mut out = String::with_capacity(escaped.len());
    let mut chars = escaped.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some(';') => out.push(';'),
            Some(other) => {
                return Err(WorkspaceError::MalformedEscape(format!(
                    "unknown escape \\{other} in {escaped:?}"
                )))
            }
            None => {
                return Err(WorkspaceError::MalformedEscape(format!(
                    "dangling backslash in {escaped:?}"
                )))
            }
        }
    }
    Ok(out)
}

fn escape_list_item(raw: &str) -> String {
    escape_field(raw).replace(';', "\\;")
}

/// Joins list items into one field; each item escaped, `;` as separator.
pub fn join_list<I: IntoIterator<Item = S>, S: AsRef<str>>(items: I) -> String {
    let parts: Vec<String> = items
        .into_iter()
        .map(|s| escape_list_item(s.as_ref()))
        .collect();
    parts.join(";")
}

/// Splits a `;`-joined list field back into unescaped items. An empty field
/// is the empty list.
pub fn split_list(field: &str) -> Result<Vec<String>, WorkspaceError> {
    if field.is_empty() {
        return Ok(Vec::new());
    }
    // Split on separators, honouring escapes; a backslash always consumes the
    // next character.
    let mut parts = Vec::new();
    let mut current = String::new();
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        match c {
            ';' => {
                parts.push(std::mem::take(&mut current));
            }
            '\\' => {
                current.push('\\');
                if let Some(next) = chars.next() {
                    current.push(next);
                }
            }
            _ => current.push(c),
        }
    }
    parts.push(current);
    parts.iter().map(|p| unescape_field(p)).collect()
}

// ---------------------------------------------------------------------------
// In-memory workspace
// ---------------------------------------------------------------------------

/// One quality approach together with its kinds, instances and relations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ApproachData {
    pub meta: QualityApproach,
    /// Keyed by kind name.
    pub kinds: BTreeMap<String, ElementKind>,
    /// Keyed by instance id.
    pub instances: BTreeMap<String, QaInstance>,
    pub relations: BTreeSet<QaRelation>,
}

/// One process model: nodes keyed by id plus the edge set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProcessData {
    pub nodes: BTreeMap<String, ProcessNode>,
    pub edges: BTreeSet<ProcessEdge>,
}

/// The whole workspace value. Immutable for readers; mutation goes through
/// the single-writer operations of the library plus [`save_workspace`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Workspace {
    /// Keyed by approach id.
    pub approaches: BTreeMap<String, ApproachData>,
    /// Keyed by process id.
    pub processes: BTreeMap<String, ProcessData>,
    /// Mappings per process id, keyed by mapping id.
    pub mappings: BTreeMap<String, BTreeMap<String, Mapping>>,
    /// Exclusions per approach id, keyed by excluded instance id.
    pub exclusions: BTreeMap<String, BTreeMap<String, Exclusion>>,
    /// Decision log in file order.
    pub decisions: Vec<Decision>,
}

impl Workspace {
    /// Looks up an instance anywhere in the workspace.
    pub fn find_instance(&self, qa_id: &str) -> Option<(&str, &QaInstance)> {
        for (aid, data) in &self.approaches {
            if let Some(instance) = data.instances.get(qa_id) {
                return Some((aid.as_str(), instance));
            }
        }
        None
    }

    /// True when the instance appears in any mapping of any process.
    pub fn is_mapped(&self, qa_id: &str) -> bool {
        self.mappings
            .values()
            .flat_map(|m| m.values())
            .any(|mapping| mapping.qa_ids.contains(qa_id))
    }

    /// The exclusion for an instance, when one is recorded.
    pub fn exclusion_for(&self, qa_id: &str) -> Option<&Exclusion> {
        self.exclusions.values().find_map(|per| per.get(qa_id))
    }

    /// All mappings of one process, in id order.
    pub fn process_mappings(&self, process_id: &str) -> impl Iterator<Item = &Mapping> {
        self.mappings
            .get(process_id)
            .into_iter()
            .flat_map(|m| m.values())
    }
}

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

struct TsvFile {
    name: String,
    /// (line number, fields) for each record line.
    records: Vec<(usize, Vec<String>)>,
}

fn parse_err(file: &str, line: usize, message: impl Into<String>) -> WorkspaceError {
    WorkspaceError::Parse {
        file: file.to_string(),
        line,
        message: message.into(),
    }
}

fn integrity_err(file: &str, line: usize, message: impl Into<String>) -> WorkspaceError {
    WorkspaceError::Integrity {
        file: file.to_string(),
        line,
        message: message.into(),
    }
}

/// Reads a TSV file, checks the header and column count, and unescapes every
/// scalar column. Columns listed in `list_columns` are left escaped so the
/// caller can split them with [`split_list`].
fn read_tsv(
    path: &Path,
    display_name: &str,
    header: &[&str],
    list_columns: &[usize],
) -> Result<TsvFile, WorkspaceError> {
    let content = fs::read(path).map_err(|e| WorkspaceError::io(path, e))?;
    let content = String::from_utf8(content)
        .map_err(|_| parse_err(display_name, 1, "file is not valid UTF-8"))?;
    if content.contains('\r') {
        return Err(parse_err(
            display_name,
            1,
            "carriage return in file; expected LF line endings with \\r escapes",
        ));
    }
    let mut lines = content.split('\n').enumerate();
    let expected_header = header.join("\t");
    match lines.next() {
        Some((_, first)) if first == expected_header => {}
        Some((_, first)) => {
            return Err(parse_err(
                display_name,
                1,
                format!("bad header {first:?}, expected {expected_header:?}"),
            ))
        }
        None => return Err(parse_err(display_name, 1, "empty file")),
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue; // trailing newline
        }
        let raw: Vec<&str> = line.split('\t').collect();
        if raw.len() != header.len() {
            return Err(parse_err(
                display_name,
                idx + 1,
                format!("expected {} columns, found {}", header.len(), raw.len()),
            ));
        }
        let mut fields = Vec::with_capacity(raw.len());
        for (col, value) in raw.iter().enumerate() {
            if list_columns.contains(&col) {
                fields.push(value.to_string());
            } else {
                let unescaped = unescape_field(value)
                    .map_err(|e| parse_err(display_name, idx + 1, e.to_string()))?;
                fields.push(unescaped);
            }
        }
        records.push((idx + 1, fields));
    }
    Ok(TsvFile {
        name: display_name.to_string(),
        records,
    })
}

fn opt_string(field: &str) -> Option<String> {
    if field.is_empty() {
        None
    } else {
        Some(field.to_string())
    }
}

fn check_identifier(
    file: &str,
    line: usize,
    what: &str,
    value: &str,
) -> Result<(), WorkspaceError> {
    if validate_identifier(value) {
        Ok(())
    } else {
        Err(integrity_err(
            file,
            line,
            format!("invalid {what} identifier {value:?}"),
        ))
    }
}

/// Checks that `parent` links form a forest: every chain terminates without
/// revisiting a member.
fn check_forest<'a>(
    file: &str,
    members: impl Iterator<Item = (&'a str, usize)>,
    parent_of: &dyn Fn(&str) -> Option<&'a str>,
    what: &str,
) -> Result<(), WorkspaceError> {
    for (start, line) in members {
        let mut seen = BTreeSet::new();
        seen.insert(start);
        let mut current = start;
        while let Some(next) = parent_of(current) {
            if !seen.insert(next) {
                return Err(integrity_err(
                    file,
                    line,
                    format!("{what} containment cycle through {start:?}"),
                ));
            }
            current = next;
        }
    }
    Ok(())
}

/// Loads a workspace directory, validating parse- and reference-level
/// integrity. Violations carry the offending file name and line number.
pub fn load_workspace(path: &Path) -> Result<Workspace, WorkspaceError> {
    let meta_path = path.join("workspace.meta");
    if !meta_path.is_file() {
        return Err(WorkspaceError::NotAWorkspace(path.display().to_string()));
    }
    let meta = read_tsv(&meta_path, "workspace.meta", &["key", "value"], &[])?;
    let mut format_version = None;
    for (line, fields) in &meta.records {
        if fields[0] == "format_version" {
            format_version = Some((line, fields[1].clone()));
        }
    }
    match format_version {
        Some((_, v)) if v == FORMAT_VERSION => {}
        Some((line, v)) => {
            return Err(parse_err(
                "workspace.meta",
                *line,
                format!("unsupported format_version {v:?}, expected {FORMAT_VERSION:?}"),
            ))
        }
        None => {
            return Err(parse_err(
                "workspace.meta",
                1,
                "missing format_version entry",
            ))
        }
    }

    let mut ws = Workspace::default();

    // Approaches.
    let approaches_dir = path.join("approaches");
    if approaches_dir.is_dir() {
        for aid in sorted_subdirs(&approaches_dir)? {
            let data = load_approach(&approaches_dir.join(&aid), &aid)?;
            ws.approaches.insert(aid, data);
        }
    }

    // Instance ids must be unique across the whole workspace.
    let mut instance_owner: BTreeMap<&str, &str> = BTreeMap::new();
    for (aid, data) in &ws.approaches {
        for id in data.instances.keys() {
            if let Some(other) = instance_owner.insert(id.as_str(), aid.as_str()) {
                return Err(integrity_err(
                    &format!("approaches/{aid}/instances.tsv"),
                    1,
                    format!("instance id {id:?} already used by approach {other:?}"),
                ));
            }
        }
    }

    // Processes.
    let processes_dir = path.join("processes");
    if processes_dir.is_dir() {
        for pid in sorted_subdirs(&processes_dir)? {
            let data = load_process(&processes_dir.join(&pid), &pid)?;
            ws.processes.insert(pid, data);
        }
    }

    // Mappings.
    let mappings_dir = path.join("mappings");
    if mappings_dir.is_dir() {
        for (pid, file) in sorted_tsv_files(&mappings_dir)? {
            let display = format!("mappings/{pid}.tsv");
            if !ws.processes.contains_key(&pid) {
                return Err(integrity_err(
                    &display,
                    1,
                    format!("mapping file references unknown process {pid:?}"),
                ));
            }
            let tsv = read_tsv(
                &file,
                &display,
                &["id", "qa_ids", "node_ids", "primary_source", "note"],
                &[1, 2],
            )?;
            let per_process = load_mappings(&ws, &pid, tsv)?;
            if !per_process.is_empty() {
                ws.mappings.insert(pid, per_process);
            }
        }
    }

    // Exclusions.
    let exclusions_dir = path.join("exclusions");
    if exclusions_dir.is_dir() {
        for (aid, file) in sorted_tsv_files(&exclusions_dir)? {
            let display = format!("exclusions/{aid}.tsv");
            let Some(approach) = ws.approaches.get(&aid) else {
                return Err(integrity_err(
                    &display,
                    1,
                    format!("exclusion file references unknown approach {aid:?}"),
                ));
            };
            let tsv = read_tsv(&file, &display, &["qa_id", "rationale"], &[])?;
            let mut per_approach = BTreeMap::new();
            for (line, fields) in tsv.records {
                let qa_id = fields[0].clone();
                if !approach.instances.contains_key(&qa_id) {
                    return Err(integrity_err(
                        &display,
                        line,
                        format!("exclusion references unknown instance {qa_id:?}"),
                    ));
                }
                let exclusion = Exclusion {
                    qa_id: qa_id.clone(),
                    rationale: fields[1].clone(),
                };
                if per_approach.insert(qa_id.clone(), exclusion).is_some() {
                    return Err(integrity_err(
                        &display,
                        line,
                        format!("duplicate exclusion for {qa_id:?}"),
                    ));
                }
            }
            if !per_approach.is_empty() {
                ws.exclusions.insert(aid, per_approach);
            }
        }
    }

    // Decision log.
    let decisions_path = path.join("decisions.log");
    if decisions_path.is_file() {
        ws.decisions = read_decisions(&decisions_path)?;
    }

    Ok(ws)
}

fn sorted_subdirs(dir: &Path) -> Result<Vec<String>, WorkspaceError> {
    let mut names = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| WorkspaceError::io(dir, e))? {
        let entry = entry.map_err(|e| WorkspaceError::io(dir, e))?;
        if entry.path().is_dir() {
            names.push(entry.file_name().to_string_lossy().into_owned());
        }
    }
    names.sort();
    Ok(names)
}

fn sorted_tsv_files(dir: &Path) -> Result<Vec<(String, PathBuf)>, WorkspaceError> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| WorkspaceError::io(dir, e))? {
        let entry = entry.map_err(|e| WorkspaceError::io(dir, e))?;
        let path = entry.path();
        if path.extension().map(|e| e == "tsv").unwrap_or(false) {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            files.push((stem, path));
        }
    }
    files.sort();
    Ok(files)
}

fn load_approach(dir: &Path, aid: &str) -> Result<ApproachData, WorkspaceError> {
    let meta_display = format!("approaches/{aid}/approach.meta");
    let meta = read_tsv(
        &dir.join("approach.meta"),
        &meta_display,
        &["key", "value"],
        &[],
    )?;

    let mut approach = QualityApproach::default();
    let mut seen_attr_names = BTreeSet::new();
    for (line, fields) in &meta.records {
        let key = fields[0].as_str();
        let value = fields[1].clone();
        match key {
            "id" => approach.id = value,
            "name" => approach.name = value,
            "version_label" => approach.version_label = value,
            _ => {
                if let Some(attr_name) = key.strip_prefix("attr:") {
                    if !seen_attr_names.insert(attr_name.to_string()) {
                        return Err(integrity_err(
                            &meta_display,
                            *line,
                            format!("duplicate attribute name {attr_name:?}"),
                        ));
                    }
                    approach.attributes.push((attr_name.to_string(), value));
                } else {
                    return Err(parse_err(
                        &meta_display,
                        *line,
                        format!("unknown key {key:?}"),
                    ));
                }
            }
        }
    }
    if approach.id != aid {
        return Err(integrity_err(
            &meta_display,
            1,
            format!(
                "approach id {:?} does not match directory name {aid:?}",
                approach.id
            ),
        ));
    }

    let kinds_display = format!("approaches/{aid}/kinds.tsv");
    let kinds_tsv = read_tsv(
        &dir.join("kinds.tsv"),
        &kinds_display,
        &["kind_name", "default_process_target"],
        &[],
    )?;
    let mut kinds = BTreeMap::new();
    for (line, fields) in kinds_tsv.records {
        let kind_name = fields[0].clone();
        let default_process_target = if fields[1].is_empty() {
            None
        } else {
            Some(ProcessTarget::parse(&fields[1]).ok_or_else(|| {
                parse_err(
                    &kinds_display,
                    line,
                    format!("unknown process target {:?}", fields[1]),
                )
            })?)
        };
        let kind = ElementKind {
            kind_name: kind_name.clone(),
            default_process_target,
        };
        if kinds.insert(kind_name.clone(), kind).is_some() {
            return Err(integrity_err(
                &kinds_display,
                line,
                format!("duplicate kind {kind_name:?}"),
            ));
        }
    }

    let inst_display = format!("approaches/{aid}/instances.tsv");
    let inst_tsv = read_tsv(
        &dir.join("instances.tsv"),
        &inst_display,
        &[
            "id",
            "kind_name",
            "conformance",
            "parent_id",
            "order",
            "text",
        ],
        &[],
    )?;
    let mut instances: BTreeMap<String, QaInstance> = BTreeMap::new();
    let mut lines_by_id: BTreeMap<String, usize> = BTreeMap::new();
    for (line, fields) in inst_tsv.records {
        let id = fields[0].clone();
        check_identifier(&inst_display, line, "instance", &id)?;
        if !kinds.contains_key(&fields[1]) {
            return Err(integrity_err(
                &inst_display,
                line,
                format!("instance {id:?} references undeclared kind {:?}", fields[1]),
            ));
        }
        let conformance = normalize_conformance(&fields[2])
            .map_err(|e| parse_err(&inst_display, line, e.to_string()))?;
        let order = if fields[4].is_empty() {
            None
        } else {
            Some(fields[4].parse::<u32>().map_err(|_| {
                parse_err(&inst_display, line, format!("bad order {:?}", fields[4]))
            })?)
        };
        let instance = QaInstance {
            id: id.clone(),
            kind_name: fields[1].clone(),
            conformance,
            parent_id: opt_string(&fields[3]),
            order,
            text: fields[5].clone(),
        };
        if instances.insert(id.clone(), instance).is_some() {
            return Err(integrity_err(
                &inst_display,
                line,
                format!("duplicate instance id {id:?}"),
            ));
        }
        lines_by_id.insert(id, line);
    }
    for (id, instance) in &instances {
        if let Some(parent) = &instance.parent_id {
            if !instances.contains_key(parent) {
                return Err(integrity_err(
                    &inst_display,
                    lines_by_id[id],
                    format!("instance {id:?} references unknown parent {parent:?}"),
                ));
            }
        }
    }
    check_forest(
        &inst_display,
        instances.keys().map(|id| (id.as_str(), lines_by_id[id])),
        &|id| instances.get(id).and_then(|i| i.parent_id.as_deref()),
        "instance",
    )?;

    let rel_display = format!("approaches/{aid}/relations.tsv");
    let rel_tsv = read_tsv(
        &dir.join("relations.tsv"),
        &rel_display,
        &["from_id", "to_id", "relation_type"],
        &[],
    )?;
    let mut relations = BTreeSet::new();
    let mut part_of: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut rel_records = Vec::new();
    for (line, fields) in &rel_tsv.records {
        let relation_type = QaRelationType::parse(&fields[2]).ok_or_else(|| {
            parse_err(
                &rel_display,
                *line,
                format!("unknown relation type {:?}", fields[2]),
            )
        })?;
        for endpoint in [&fields[0], &fields[1]] {
            if !instances.contains_key(endpoint.as_str()) {
                return Err(integrity_err(
                    &rel_display,
                    *line,
                    format!("relation references unknown instance {endpoint:?}"),
                ));
            }
        }
        rel_records.push((*line, fields[0].clone(), fields[1].clone(), relation_type));
    }
    for (line, from, to, relation_type) in rel_records {
        if relation_type == QaRelationType::PartOf {
            part_of
                .entry(instances.get_key_value(&from).unwrap().0.as_str())
                .or_default()
                .push(instances.get_key_value(&to).unwrap().0.as_str());
        }
        relations.insert(QaRelation {
            from_id: from,
            to_id: to,
            relation_type,
        });
        let _ = line;
    }
    // part-of must be acyclic.
    {
        let mut visiting = BTreeSet::new();
        let mut done = BTreeSet::new();
        fn visit<'a>(
            node: &'a str,
            adj: &BTreeMap<&'a str, Vec<&'a str>>,
            visiting: &mut BTreeSet<&'a str>,
            done: &mut BTreeSet<&'a str>,
        ) -> bool {
            if done.contains(node) {
                return true;
            }
            if !visiting.insert(node) {
                return false;
            }
            for next in adj.get(node).into_iter().flatten() {
                if !visit(next, adj, visiting, done) {
                    return false;
                }
            }
            visiting.remove(node);
            done.insert(node);
            true
        }
        let starts: Vec<&str> = part_of.keys().copied().collect();
        for start in starts {
            if !visit(start, &part_of, &mut visiting, &mut done) {
                return Err(integrity_err(
                    &rel_display,
                    1,
                    format!("part-of cycle through {start:?}"),
                ));
            }
        }
    }

    Ok(ApproachData {
        meta: approach,
        kinds,
        instances,
        relations,
    })
}

fn load_process(dir: &Path, pid: &str) -> Result<ProcessData, WorkspaceError> {
    let nodes_display = format!("processes/{pid}/nodes.tsv");
    let nodes_tsv = read_tsv(
        &dir.join("nodes.tsv"),
        &nodes_display,
        &["id", "kind", "parent_id", "name", "description", "items"],
        &[5],
    )?;
    let mut nodes: BTreeMap<String, ProcessNode> = BTreeMap::new();
    let mut lines_by_id: BTreeMap<String, usize> = BTreeMap::new();
    for (line, fields) in nodes_tsv.records {
        let id = fields[0].clone();
        check_identifier(&nodes_display, line, "node", &id)?;
        let kind = NodeKind::parse(&fields[1]).ok_or_else(|| {
            parse_err(
                &nodes_display,
                line,
                format!("unknown node kind {:?}", fields[1]),
            )
        })?;
        let items =
            split_list(&fields[5]).map_err(|e| parse_err(&nodes_display, line, e.to_string()))?;
        if !items.is_empty() && !kind.carries_items() {
            return Err(integrity_err(
                &nodes_display,
                line,
                format!("node {id:?} of kind {kind} cannot carry items"),
            ));
        }
        let node = ProcessNode {
            id: id.clone(),
            kind,
            parent_id: opt_string(&fields[2]),
            name: fields[3].clone(),
            description: fields[4].clone(),
            items,
        };
        if nodes.insert(id.clone(), node).is_some() {
            return Err(integrity_err(
                &nodes_display,
                line,
                format!("duplicate node id {id:?}"),
            ));
        }
        lines_by_id.insert(id, line);
    }
    for (id, node) in &nodes {
        if let Some(parent) = &node.parent_id {
            if !nodes.contains_key(parent) {
                return Err(integrity_err(
                    &nodes_display,
                    lines_by_id[id],
                    format!("node {id:?} references unknown parent {parent:?}"),
                ));
            }
        }
    }
    check_forest(
        &nodes_display,
        nodes.keys().map(|id| (id.as_str(), lines_by_id[id])),
        &|id| nodes.get(id).and_then(|n| n.parent_id.as_deref()),
        "node",
    )?;

    let edges_display = format!("processes/{pid}/edges.tsv");
    let edges_tsv = read_tsv(
        &dir.join("edges.tsv"),
        &edges_display,
        &["from_id", "to_id", "relation", "guard"],
        &[],
    )?;
    let mut edges = BTreeSet::new();
    for (line, fields) in edges_tsv.records {
        let relation = EdgeRelation::parse(&fields[2]).ok_or_else(|| {
            parse_err(
                &edges_display,
                line,
                format!("unknown edge relation {:?}", fields[2]),
            )
        })?;
        for endpoint in [&fields[0], &fields[1]] {
            if !nodes.contains_key(endpoint.as_str()) {
                return Err(integrity_err(
                    &edges_display,
                    line,
                    format!("edge references unknown node {endpoint:?}"),
                ));
            }
        }
        edges.insert(ProcessEdge {
            from_id: fields[0].clone(),
            to_id: fields[1].clone(),
            relation,
            guard: opt_string(&fields[3]),
        });
    }

    Ok(ProcessData { nodes, edges })
}

fn load_mappings(
    ws: &Workspace,
    pid: &str,
    tsv: TsvFile,
) -> Result<BTreeMap<String, Mapping>, WorkspaceError> {
    let display = tsv.name;
    let nodes = &ws.processes[pid].nodes;
    let mut result = BTreeMap::new();
    for (line, fields) in tsv.records {
        let id = fields[0].clone();
        check_identifier(&display, line, "mapping", &id)?;
        let qa_ids: BTreeSet<String> = split_list(&fields[1])
            .map_err(|e| parse_err(&display, line, e.to_string()))?
            .into_iter()
            .collect();
        let node_ids: BTreeSet<String> = split_list(&fields[2])
            .map_err(|e| parse_err(&display, line, e.to_string()))?
            .into_iter()
            .collect();
        if qa_ids.is_empty() || node_ids.is_empty() {
            return Err(integrity_err(
                &display,
                line,
                format!("mapping {id:?} has an empty side"),
            ));
        }
        for qa_id in &qa_ids {
            if ws.find_instance(qa_id).is_none() {
                return Err(integrity_err(
                    &display,
                    line,
                    format!("mapping {id:?} references unknown instance {qa_id:?}"),
                ));
            }
        }
        for node_id in &node_ids {
            if !nodes.contains_key(node_id) {
                return Err(integrity_err(
                    &display,
                    line,
                    format!("mapping {id:?} references unknown node {node_id:?}"),
                ));
            }
        }
        let primary_source = opt_string(&fields[3]);
        if let Some(primary) = &primary_source {
            if !qa_ids.contains(primary) {
                return Err(integrity_err(
                    &display,
                    line,
                    format!("mapping {id:?} primary source {primary:?} not among its qa_ids"),
                ));
            }
        }
        let mapping = Mapping {
            id: id.clone(),
            qa_ids,
            node_ids,
            primary_source,
            note: fields[4].clone(),
        };
        if result.insert(id.clone(), mapping).is_some() {
            return Err(integrity_err(
                &display,
                line,
                format!("duplicate mapping id {id:?}"),
            ));
        }
    }
    Ok(result)
}

const DECISIONS_HEADER: [&str; 5] = ["timestamp", "actor", "context", "decision", "rationale"];

fn read_decisions(path: &Path) -> Result<Vec<Decision>, WorkspaceError> {
    let tsv = read_tsv(path, "decisions.log", &DECISIONS_HEADER, &[])?;
    let mut decisions = Vec::new();
    let mut last_timestamp = String::new();
    for (line, fields) in tsv.records {
        let timestamp = fields[0].clone();
        if !is_utc_timestamp(&timestamp) {
            return Err(parse_err(
                "decisions.log",
                line,
                format!("bad timestamp {timestamp:?}, expected YYYY-MM-DDTHH:MM:SSZ"),
            ));
        }
        if timestamp < last_timestamp {
            return Err(integrity_err(
                "decisions.log",
                line,
                format!("timestamp {timestamp:?} decreases from {last_timestamp:?}"),
            ));
        }
        last_timestamp = timestamp.clone();
        decisions.push(Decision {
            timestamp,
            actor: fields[1].clone(),
            context: fields[2].clone(),
            decision: fields[3].clone(),
            rationale: fields[4].clone(),
        });
    }
    Ok(decisions)
}

fn is_utc_timestamp(value: &str) -> bool {
    let bytes = value.as_bytes();
    if bytes.len() != 20 {
        return false;
    }
    for (i, b) in bytes.iter().enumerate() {
        let ok = match i {
            4 | 7 => *b == b'-',
            10 => *b == b'T',
            13 | 16 => *b == b':',
            19 => *b == b'Z',
            _ => b.is_ascii_digit(),
        };
        if !ok {
            return false;
        }
    }
    chrono::NaiveDateTime::parse_from_str(value, "%Y-%m-%dT%H:%M:%SZ").is_ok()
}

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

fn write_atomic(path: &Path, content: &str) -> Result<(), WorkspaceError> {
    let tmp = path.with_extension("tmp");
    {
        let mut file = fs::File::create(&tmp).map_err(|e| WorkspaceError::io(&tmp, e))?;
        file.write_all(content.as_bytes())
            .map_err(|e| WorkspaceError::io(&tmp, e))?;
        file.sync_all().map_err(|e| WorkspaceError::io(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| WorkspaceError::io(path, e))?;
    Ok(())
}

fn tsv_line(fields: &[&str]) -> String {
    let escaped: Vec<String> = fields.iter().map(|f| escape_field(f)).collect();
    escaped.join("\t")
}

fn render_tsv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join("\t"));
    out.push('\n');
    for row in rows {
        let fields: Vec<&str> = row.iter().map(|s| s.as_str()).collect();
        out.push_str(&fields.join("\t"));
        out.push('\n');
    }
    out
}

fn opt_str(value: &Option<String>) -> &str {
    value.as_deref().unwrap_or("")
}

/// Removes entries of `dir` that are not in `keep`. Only the managed
/// subtrees go through this, so a save over an existing workspace directory
/// leaves byte-identical content for equal workspaces.
fn prune_dir(dir: &Path, keep: &BTreeSet<String>, dirs: bool) -> Result<(), WorkspaceError> {
    if !dir.is_dir() {
        return Ok(());
    }
    for entry in fs::read_dir(dir).map_err(|e| WorkspaceError::io(dir, e))? {
        let entry = entry.map_err(|e| WorkspaceError::io(dir, e))?;
        let path = entry.path();
        let name = if dirs {
            entry.file_name().to_string_lossy().into_owned()
        } else {
            match path.file_stem() {
                Some(stem) if path.extension().map(|e| e == "tsv").unwrap_or(false) => {
                    stem.to_string_lossy().into_owned()
                }
                _ => continue,
            }
        };
        if !keep.contains(&name) {
            if path.is_dir() {
                fs::remove_dir_all(&path).map_err(|e| WorkspaceError::io(&path, e))?;
            } else {
                fs::remove_file(&path).map_err(|e| WorkspaceError::io(&path, e))?;
            }
        }
    }
    Ok(())
}

/// Saves a workspace. Every file is written atomically, records are sorted
/// by ID, and `decisions.log` is only created when missing, never rewritten.
pub fn save_workspace(ws: &Workspace, path: &Path) -> Result<(), WorkspaceError> {
    fs::create_dir_all(path).map_err(|e| WorkspaceError::io(path, e))?;
    for aid in ws.approaches.keys() {
        if !validate_dir_identifier(aid) {
            return Err(WorkspaceError::Integrity {
                file: "approaches".to_string(),
                line: 0,
                message: format!("approach id {aid:?} is not directory-safe"),
            });
        }
    }
    for pid in ws.processes.keys() {
        if !validate_dir_identifier(pid) {
            return Err(WorkspaceError::Integrity {
                file: "processes".to_string(),
                line: 0,
                message: format!("process id {pid:?} is not directory-safe"),
            });
        }
    }

    write_atomic(
        &path.join("workspace.meta"),
        &format!("key\tvalue\nformat_version\t{FORMAT_VERSION}\n"),
    )?;

    let approaches_dir = path.join("approaches");
    let keep: BTreeSet<String> = ws.approaches.keys().cloned().collect();
    prune_dir(&approaches_dir, &keep, true)?;
    for (aid, data) in &ws.approaches {
        let dir = approaches_dir.join(aid);
        fs::create_dir_all(&dir).map_err(|e| WorkspaceError::io(&dir, e))?;

        let mut meta_rows: Vec<Vec<String>> = vec![
            vec!["id".to_string(), escape_field(&data.meta.id)],
            vec!["name".to_string(), escape_field(&data.meta.name)],
            vec![
                "version_label".to_string(),
                escape_field(&data.meta.version_label),
            ],
        ];
        for (name, value) in &data.meta.attributes {
            meta_rows.push(vec![
                escape_field(&format!("attr:{name}")),
                escape_field(value),
            ]);
        }
        write_atomic(
            &dir.join("approach.meta"),
            &render_tsv(&["key", "value"], &meta_rows),
        )?;

        let kind_rows: Vec<Vec<String>> = data
            .kinds
            .values()
            .map(|k| {
                vec![
                    escape_field(&k.kind_name),
                    k.default_process_target
                        .map(|t| t.as_str().to_string())
                        .unwrap_or_default(),
                ]
            })
            .collect();
        write_atomic(
            &dir.join("kinds.tsv"),
            &render_tsv(&["kind_name", "default_process_target"], &kind_rows),
        )?;

        let inst_rows: Vec<Vec<String>> = data
            .instances
            .values()
            .map(|i| {
                vec![
                    escape_field(&i.id),
                    escape_field(&i.kind_name),
                    i.conformance.as_str().to_string(),
                    escape_field(opt_str(&i.parent_id)),
                    i.order.map(|o| o.to_string()).unwrap_or_default(),
                    escape_field(&i.text),
                ]
            })
            .collect();
        write_atomic(
            &dir.join("instances.tsv"),
            &render_tsv(
                &[
                    "id",
                    "kind_name",
                    "conformance",
                    "parent_id",
                    "order",
                    "text",
                ],
                &inst_rows,
            ),
        )?;

        let rel_rows: Vec<Vec<String>> = data
            .relations
            .iter()
            .map(|r| {
                vec![
                    escape_field(&r.from_id),
                    escape_field(&r.to_id),
                    r.relation_type.as_str().to_string(),
                ]
            })
            .collect();
        write_atomic(
            &dir.join("relations.tsv"),
            &render_tsv(&["from_id", "to_id", "relation_type"], &rel_rows),
        )?;
    }

    let processes_dir = path.join("processes");
    let keep: BTreeSet<String> = ws.processes.keys().cloned().collect();
    prune_dir(&processes_dir, &keep, true)?;
    for (pid, data) in &ws.processes {
        let dir = processes_dir.join(pid);
        fs::create_dir_all(&dir).map_err(|e| WorkspaceError::io(&dir, e))?;

        let node_rows: Vec<Vec<String>> = data
            .nodes
            .values()
            .map(|n| {
                vec![
                    escape_field(&n.id),
                    n.kind.as_str().to_string(),
                    escape_field(opt_str(&n.parent_id)),
                    escape_field(&n.name),
                    escape_field(&n.description),
                    join_list(&n.items),
                ]
            })
            .collect();
        write_atomic(
            &dir.join("nodes.tsv"),
            &render_tsv(
                &["id", "kind", "parent_id", "name", "description", "items"],
                &node_rows,
            ),
        )?;

        let edge_rows: Vec<Vec<String>> = data
            .edges
            .iter()
            .map(|e| {
                vec![
                    escape_field(&e.from_id),
                    escape_field(&e.to_id),
                    e.relation.as_str().to_string(),
                    escape_field(opt_str(&e.guard)),
                ]
            })
            .collect();
        write_atomic(
            &dir.join("edges.tsv"),
            &render_tsv(&["from_id", "to_id", "relation", "guard"], &edge_rows),
        )?;
    }

    let mappings_dir = path.join("mappings");
    fs::create_dir_all(&mappings_dir).map_err(|e| WorkspaceError::io(&mappings_dir, e))?;
    let keep: BTreeSet<String> = ws.processes.keys().cloned().collect();
    prune_dir(&mappings_dir, &keep, false)?;
    for pid in ws.processes.keys() {
        let empty = BTreeMap::new();
        let per_process = ws.mappings.get(pid).unwrap_or(&empty);
        let rows: Vec<Vec<String>> = per_process
            .values()
            .map(|m| {
                vec![
                    escape_field(&m.id),
                    join_list(&m.qa_ids),
                    join_list(&m.node_ids),
                    escape_field(opt_str(&m.primary_source)),
                    escape_field(&m.note),
                ]
            })
            .collect();
        write_atomic(
            &mappings_dir.join(format!("{pid}.tsv")),
            &render_tsv(
                &["id", "qa_ids", "node_ids", "primary_source", "note"],
                &rows,
            ),
        )?;
    }

    let exclusions_dir = path.join("exclusions");
    fs::create_dir_all(&exclusions_dir).map_err(|e| WorkspaceError::io(&exclusions_dir, e))?;
    let keep: BTreeSet<String> = ws.approaches.keys().cloned().collect();
    prune_dir(&exclusions_dir, &keep, false)?;
    for aid in ws.approaches.keys() {
        let empty = BTreeMap::new();
        let per_approach = ws.exclusions.get(aid).unwrap_or(&empty);
        let rows: Vec<Vec<String>> = per_approach
            .values()
            .map(|e| vec![escape_field(&e.qa_id), escape_field(&e.rationale)])
            .collect();
        write_atomic(
            &exclusions_dir.join(format!("{aid}.tsv")),
            &render_tsv(&["qa_id", "rationale"], &rows),
        )?;
    }

    let decisions_path = path.join("decisions.log");
    if !decisions_path.exists() {
        let rows: Vec<Vec<String>> = ws
            .decisions
            .iter()
            .map(|d| {
                vec![
                    escape_field(&d.timestamp),
                    escape_field(&d.actor),
                    escape_field(&d.context),
                    escape_field(&d.decision),
                    escape_field(&d.rationale),
                ]
            })
            .collect();
        write_atomic(&decisions_path, &render_tsv(&DECISIONS_HEADER, &rows))?;
    }

    Ok(())
}

/// Creates an empty workspace: the marker file plus an empty decision log.
pub fn init_workspace(path: &Path) -> Result<(), WorkspaceError> {
    save_workspace(&Workspace::default(), path)
}

/// Appends one record to `decisions.log` with the current UTC time. Prior
/// content is never touched. Returns the appended decision.
pub fn append_decision(
    ws_path: &Path,
    actor: &str,
    context: &str,
    decision: &str,
    rationale: &str,
) -> Result<Decision, WorkspaceError> {
    if !ws_path.join("workspace.meta").is_file() {
        return Err(WorkspaceError::NotAWorkspace(ws_path.display().to_string()));
    }
    let path = ws_path.join("decisions.log");
    let mut timestamp = chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string();
    let mut content = if path.is_file() {
        let existing = fs::read_to_string(&path).map_err(|e| WorkspaceError::io(&path, e))?;
        // Keep file order non-decreasing even if the clock stepped back.
        if let Some(last) = existing
            .lines()
            .skip(1)
            .filter(|l| !l.is_empty())
            .last()
            .and_then(|l| l.split('\t').next())
        {
            if timestamp.as_str() < last {
                timestamp = last.to_string();
            }
        }
        existing
    } else {
        format!("{}\n", DECISIONS_HEADER.join("\t"))
    };
    let record = Decision {
        timestamp,
        actor: actor.to_string(),
        context: context.to_string(),
        decision: decision.to_string(),
        rationale: rationale.to_string(),
    };
    content.push_str(&tsv_line(&[
        &record.timestamp,
        &record.actor,
        &record.context,
        &record.decision,
        &record.rationale,
    ]));
    content.push('\n');
    write_atomic(&path, &content)?;
    Ok(record)
}

/// Advisory single-writer lock over a workspace directory. Held for the
/// lifetime of the value; readers do not take it.
pub struct WorkspaceLock {
    path: PathBuf,
}

impl WorkspaceLock {
    pub fn acquire(ws_path: &Path) -> Result<WorkspaceLock, WorkspaceError> {
        fs::create_dir_all(ws_path).map_err(|e| WorkspaceError::io(ws_path, e))?;
        let path = ws_path.join(LOCK_FILE);
        match fs::OpenOptions::new()
            .write(true)
            .create_new(true)
            .open(&path)
        {
            Ok(_) => Ok(WorkspaceLock { path }),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                Err(WorkspaceError::Locked(ws_path.display().to_string()))
            }
            Err(e) => Err(WorkspaceError::io(&path, e)),
        }
    }
}

impl Drop for WorkspaceLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escape_is_identity_on_clean_text() {
        assert_eq!(escape_field("a b"), "a b");
    }

    #[test]
    fn escape_rewrites_separators() {
        assert_eq!(escape_field("a\tb"), "a\\tb");
        assert_eq!(escape_field("a\nb"), "a\\nb");
        assert_eq!(escape_field("a\\b"), "a\\\\b");
        assert_eq!(escape_field("a\rb"), "a\\rb");
    }

    #[test]
    fn unescape_rejects_unknown_escape() {
        assert!(matches!(
            unescape_field("a\\q"),
            Err(WorkspaceError::MalformedEscape(_))
        ));
    }

    #[test]
    fn unescape_rejects_dangling_backslash() {
        assert!(matches!(
            unescape_field("a\\"),
            Err(WorkspaceError::MalformedEscape(_))
        ));
    }

    #[test]
    fn list_round_trips_semicolons() {
        let items = vec![
            "plain".to_string(),
            "with;semi".to_string(),
            "tab\there".to_string(),
        ];
        let joined = join_list(&items);
        assert_eq!(split_list(&joined).unwrap(), items);
    }

    #[test]
    fn empty_list_is_empty_field() {
        assert_eq!(join_list(Vec::<String>::new()), "");
        assert!(split_list("").unwrap().is_empty());
    }

    #[test]
    fn timestamp_shape() {
        assert!(is_utc_timestamp("2012-06-15T10:00:00Z"));
        assert!(!is_utc_timestamp("2012-06-15 10:00:00"));
        assert!(!is_utc_timestamp("2012-13-15T10:00:00Z"));
    }

    #[test]
    fn lock_excludes_second_writer() {
        let dir = tempfile::tempdir().unwrap();
        let first = WorkspaceLock::acquire(dir.path()).unwrap();
        assert!(matches!(
            WorkspaceLock::acquire(dir.path()),
            Err(WorkspaceError::Locked(_))
        ));
        drop(first);
        WorkspaceLock::acquire(dir.path()).unwrap();
    }

    #[test]
    fn init_then_load_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        init_workspace(dir.path()).unwrap();
        let ws = load_workspace(dir.path()).unwrap();
        assert!(ws.approaches.is_empty());
        assert!(ws.processes.is_empty());
    }

    #[test]
    fn load_rejects_missing_marker() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            load_workspace(dir.path()),
            Err(WorkspaceError::NotAWorkspace(_))
        ));
    }

    #[test]
    fn marker_only_directory_is_an_empty_workspace() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(
            dir.path().join("workspace.meta"),
            "key\tvalue\nformat_version\t1\n",
        )
        .unwrap();
        let ws = load_workspace(dir.path()).unwrap();
        assert_eq!(ws, Workspace::default());
    }

    #[test]
    fn load_rejects_future_format_version() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(
            dir.path().join("workspace.meta"),
            "key\tvalue\nformat_version\t2\n",
        )
        .unwrap();
        assert!(matches!(
            load_workspace(dir.path()),
            Err(WorkspaceError::Parse { .. })
        ));
    }

    #[test]
    fn load_rejects_bad_header() {
        let dir = tempfile::tempdir().unwrap();
        init_workspace(dir.path()).unwrap();
        let adir = dir.path().join("approaches/a1");
        fs::create_dir_all(&adir).unwrap();
        fs::write(
            adir.join("approach.meta"),
            "key\tvalue\nid\ta1\nname\tA\nversion_label\t1\n",
        )
        .unwrap();
        fs::write(
            adir.join("kinds.tsv"),
            "kind_name\tdefault_process_target\n",
        )
        .unwrap();
        // header lacks the id column
        fs::write(
            adir.join("instances.tsv"),
            "kind_name\tconformance\tparent_id\torder\ttext\n",
        )
        .unwrap();
        fs::write(
            adir.join("relations.tsv"),
            "from_id\tto_id\trelation_type\n",
        )
        .unwrap();
        let err = load_workspace(dir.path()).unwrap_err();
        match err {
            WorkspaceError::Parse { file, line, .. } => {
                assert_eq!(file, "approaches/a1/instances.tsv");
                assert_eq!(line, 1);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn append_decision_grows_log_by_one_line() {
        let dir = tempfile::tempdir().unwrap();
        init_workspace(dir.path()).unwrap();
        let before = fs::read_to_string(dir.path().join("decisions.log")).unwrap();
        append_decision(
            dir.path(),
            "zdk",
            "map/peer-review",
            "used PI term 'moderator'",
            "clearest of the three synonyms",
        )
        .unwrap();
        let after = fs::read_to_string(dir.path().join("decisions.log")).unwrap();
        assert_eq!(after.lines().count(), before.lines().count() + 1);
        assert!(after.starts_with(&before));
    }

    #[test]
    fn append_decision_timestamps_non_decreasing() {
        let dir = tempfile::tempdir().unwrap();
        init_workspace(dir.path()).unwrap();
        append_decision(dir.path(), "a", "c", "d", "r").unwrap();
        append_decision(dir.path(), "a", "c", "d2", "r").unwrap();
        let ws = load_workspace(dir.path()).unwrap();
        assert_eq!(ws.decisions.len(), 2);
        assert!(ws.decisions[0].timestamp <= ws.decisions[1].timestamp);
    }

    #[test]
    fn append_decision_escapes_tab_in_actor() {
        let dir = tempfile::tempdir().unwrap();
        init_workspace(dir.path()).unwrap();
        append_decision(dir.path(), "a\tb", "c", "d", "r").unwrap();
        let ws = load_workspace(dir.path()).unwrap();
        assert_eq!(ws.decisions[0].actor, "a\tb");
    }
}
