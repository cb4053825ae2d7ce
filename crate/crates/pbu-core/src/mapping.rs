//! Mapping engine: classification, candidate counting, creation,
//! verification and traceability queries over the instance-to-node mappings.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Exclusion, Mapping};
use crate::workspace::Workspace;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MappingError {
    #[error("unknown quality approach instance {0:?}")]
    UnknownSource(String),
    #[error("unknown process node {0:?}")]
    UnknownTarget(String),
    #[error("unknown process {0:?}")]
    UnknownProcess(String),
    #[error("primary source {0:?} is not among the mapped instances")]
    BadPrimary(String),
    #[error("a mapping needs at least one instance and one node")]
    EmptySide,
    #[error("candidate count exceeds the checked integer range")]
    Overflow,
}

/// Cardinality classification of a single mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MappingKind {
    Elementary,
    ComplexOneToMany,
    ComplexManyToOne,
    ComplexManyToMany,
}

impl MappingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MappingKind::Elementary => "elementary",
            MappingKind::ComplexOneToMany => "complex-1-to-n",
            MappingKind::ComplexManyToOne => "complex-n-to-1",
            MappingKind::ComplexManyToMany => "complex-m-to-n",
        }
    }
}

/// Determined solely by the side cardinalities.
pub fn classify_mapping(mapping: &Mapping) -> MappingKind {
    match (mapping.qa_ids.len(), mapping.node_ids.len()) {
        (1, 1) => MappingKind::Elementary,
        (1, _) => MappingKind::ComplexOneToMany,
        (_, 1) => MappingKind::ComplexManyToOne,
        _ => MappingKind::ComplexManyToMany,
    }
}

fn binomial_checked(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut result: u64 = 1;
    for i in 0..k {
        // result * (n - i) / (i + 1) stays integral at each step.
        result = result.checked_mul(n - i)?;
        result /= i + 1;
    }
    Some(result)
}

/// Number of candidate 1:x plus x:1 mappings between an n-element and an
/// m-element instance set: `n * C(m, x) + m * C(n, x)`.
///
/// Implemented verbatim as printed; note that for x = 1 the formula counts
/// each cross pair once per direction, so (1, 1, 1) evaluates to 2.
pub fn count_candidate_mappings(n: u64, m: u64, x: u64) -> Result<u64, MappingError> {
    let left = n
        .checked_mul(binomial_checked(m, x).ok_or(MappingError::Overflow)?)
        .ok_or(MappingError::Overflow)?;
    let right = m
        .checked_mul(binomial_checked(n, x).ok_or(MappingError::Overflow)?)
        .ok_or(MappingError::Overflow)?;
    left.checked_add(right).ok_or(MappingError::Overflow)
}

/// Outcome of [`add_mapping`]: the fresh id plus any exclusions retired
/// because the instance is now mapped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddedMapping {
    pub mapping_id: String,
    pub retired_exclusions: Vec<Exclusion>,
}

/// Stores a new mapping under a fresh per-process id (`m-0001`, `m-0002`,
/// ...). A previously excluded instance that is now mapped has its exclusion
/// retired; callers should log that as a decision.
pub fn add_mapping(
    ws: &mut Workspace,
    process_id: &str,
    qa_ids: &BTreeSet<String>,
    node_ids: &BTreeSet<String>,
    primary_source: Option<&str>,
    note: &str,
) -> Result<AddedMapping, MappingError> {
    if qa_ids.is_empty() || node_ids.is_empty() {
        return Err(MappingError::EmptySide);
    }
    let Some(process) = ws.processes.get(process_id) else {
        return Err(MappingError::UnknownProcess(process_id.to_string()));
    };
    for qa_id in qa_ids {
        if ws.find_instance(qa_id).is_none() {
            return Err(MappingError::UnknownSource(qa_id.clone()));
        }
    }
    for node_id in node_ids {
        if !process.nodes.contains_key(node_id) {
            return Err(MappingError::UnknownTarget(node_id.clone()));
        }
    }
    if let Some(primary) = primary_source {
        if !qa_ids.contains(primary) {
            return Err(MappingError::BadPrimary(primary.to_string()));
        }
    }

    let per_process = ws.mappings.entry(process_id.to_string()).or_default();
    let mut counter = per_process.len() as u64;
    let mapping_id = loop {
        counter += 1;
        let candidate = format!("m-{counter:04}");
        if !per_process.contains_key(&candidate) {
            break candidate;
        }
    };
    per_process.insert(
        mapping_id.clone(),
        Mapping {
            id: mapping_id.clone(),
            qa_ids: qa_ids.clone(),
            node_ids: node_ids.clone(),
            primary_source: primary_source.map(str::to_string),
            note: note.to_string(),
        },
    );

    let mut retired = Vec::new();
    for per_approach in ws.exclusions.values_mut() {
        for qa_id in qa_ids {
            if let Some(exclusion) = per_approach.remove(qa_id) {
                retired.push(exclusion);
            }
        }
    }
    retired.sort_by(|a, b| a.qa_id.cmp(&b.qa_id));

    Ok(AddedMapping {
        mapping_id,
        retired_exclusions: retired,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

/// One verification or validation finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub code: &'static str,
    /// The ids the finding is about: first the offending id, then the
    /// records it appears in.
    pub subject_ids: Vec<String>,
    pub message: String,
}

/// Result of a consistency check; empty findings means consistent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub findings: Vec<Finding>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn has_errors(&self) -> bool {
        self.findings.iter().any(|f| f.severity == Severity::Error)
    }
}

/// Checks that previous mappings are still consistent: no dangling instance
/// or node references, primary sources inside their own mapping, no instance
/// both mapped and excluded, and no two mappings with identical sides.
///
/// Dangling references are aggregated per missing id, so deleting one
/// element yields exactly one finding naming every affected mapping.
pub fn verify_mappings(
    ws: &Workspace,
    process_id: &str,
) -> Result<VerificationReport, MappingError> {
    let Some(process) = ws.processes.get(process_id) else {
        return Err(MappingError::UnknownProcess(process_id.to_string()));
    };
    let mut findings = Vec::new();

    let mut dangling_sources: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut dangling_targets: BTreeMap<&str, Vec<&str>> = BTreeMap::new();

    for mapping in ws.process_mappings(process_id) {
        for qa_id in &mapping.qa_ids {
            if ws.find_instance(qa_id).is_none() {
                dangling_sources
                    .entry(qa_id.as_str())
                    .or_default()
                    .push(mapping.id.as_str());
            }
        }
        for node_id in &mapping.node_ids {
            if !process.nodes.contains_key(node_id) {
                dangling_targets
                    .entry(node_id.as_str())
                    .or_default()
                    .push(mapping.id.as_str());
            }
        }
        if let Some(primary) = &mapping.primary_source {
            if !mapping.qa_ids.contains(primary) {
                findings.push(Finding {
                    severity: Severity::Error,
                    code: "BadPrimary",
                    subject_ids: vec![primary.clone(), mapping.id.clone()],
                    message: format!(
                        "mapping {} names primary source {primary:?} outside its own instances",
                        mapping.id
                    ),
                });
            }
        }
    }

    for (qa_id, mapping_ids) in dangling_sources {
        let mut subject_ids = vec![qa_id.to_string()];
        subject_ids.extend(mapping_ids.iter().map(|m| m.to_string()));
        findings.push(Finding {
            severity: Severity::Error,
            code: "DanglingSource",
            subject_ids,
            message: format!(
                "instance {qa_id:?} referenced by mapping(s) {} does not exist",
                mapping_ids.join(", ")
            ),
        });
    }
    for (node_id, mapping_ids) in dangling_targets {
        let mut subject_ids = vec![node_id.to_string()];
        subject_ids.extend(mapping_ids.iter().map(|m| m.to_string()));
        findings.push(Finding {
            severity: Severity::Error,
            code: "DanglingTarget",
            subject_ids,
            message: format!(
                "node {node_id:?} referenced by mapping(s) {} does not exist",
                mapping_ids.join(", ")
            ),
        });
    }

    // Mapped and excluded at once.
    for (aid, per_approach) in &ws.exclusions {
        for qa_id in per_approach.keys() {
            let in_this_process = ws
                .process_mappings(process_id)
                .any(|m| m.qa_ids.contains(qa_id));
            if in_this_process {
                findings.push(Finding {
                    severity: Severity::Error,
                    code: "MappedAndExcluded",
                    subject_ids: vec![qa_id.clone(), aid.clone()],
                    message: format!("instance {qa_id:?} is both mapped and excluded"),
                });
            }
        }
    }

    // Duplicate mappings: identical instance and node sets.
    let mut by_sides: BTreeMap<(Vec<&str>, Vec<&str>), Vec<&str>> = BTreeMap::new();
    for mapping in ws.process_mappings(process_id) {
        let key = (
            mapping.qa_ids.iter().map(String::as_str).collect(),
            mapping.node_ids.iter().map(String::as_str).collect(),
        );
        by_sides.entry(key).or_default().push(mapping.id.as_str());
    }
    for ids in by_sides.values() {
        if ids.len() > 1 {
            findings.push(Finding {
                severity: Severity::Warning,
                code: "DuplicateMapping",
                subject_ids: ids.iter().map(|s| s.to_string()).collect(),
                message: format!("mappings {} have identical sides", ids.join(", ")),
            });
        }
    }

    findings.sort_by(|a, b| {
        (a.severity, a.code, &a.subject_ids).cmp(&(b.severity, b.code, &b.subject_ids))
    });
    Ok(VerificationReport { findings })
}

/// All process nodes a quality approach instance is mapped to, across every
/// process of the workspace. Empty for unmapped instances.
pub fn trace_to_process(ws: &Workspace, qa_id: &str) -> Result<BTreeSet<String>, MappingError> {
    if ws.find_instance(qa_id).is_none() {
        return Err(MappingError::UnknownSource(qa_id.to_string()));
    }
    let mut nodes = BTreeSet::new();
    for per_process in ws.mappings.values() {
        for mapping in per_process.values() {
            if mapping.qa_ids.contains(qa_id) {
                nodes.extend(mapping.node_ids.iter().cloned());
            }
        }
    }
    Ok(nodes)
}

/// All source instances mapped to a node, grouped by approach id and sorted.
pub fn trace_to_sources(
    ws: &Workspace,
    node_id: &str,
) -> Result<BTreeMap<String, BTreeSet<String>>, MappingError> {
    if !ws.processes.values().any(|p| p.nodes.contains_key(node_id)) {
        return Err(MappingError::UnknownTarget(node_id.to_string()));
    }
    let mut grouped: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for per_process in ws.mappings.values() {
        for mapping in per_process.values() {
            if !mapping.node_ids.contains(node_id) {
                continue;
            }
            for qa_id in &mapping.qa_ids {
                if let Some((aid, _)) = ws.find_instance(qa_id) {
                    grouped
                        .entry(aid.to_string())
                        .or_default()
                        .insert(qa_id.clone());
                }
            }
        }
    }
    Ok(grouped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NodeKind;
    use crate::testutil::{approach, instance, node, process_with, ws_with};

    fn mapping_of(qa: &[&str], nodes: &[&str]) -> Mapping {
        Mapping {
            id: "m-0001".to_string(),
            qa_ids: qa.iter().map(|s| s.to_string()).collect(),
            node_ids: nodes.iter().map(|s| s.to_string()).collect(),
            primary_source: None,
            note: String::new(),
        }
    }

    #[test]
    fn classify_by_cardinality() {
        // The Table 8 patterns: 1:1 simple, 1:N with N = 2, M:N with M = 3, N = 4.
        assert_eq!(
            classify_mapping(&mapping_of(
                &["PI: Present Work Product"],
                &["present-product"]
            )),
            MappingKind::Elementary
        );
        assert_eq!(
            classify_mapping(&mapping_of(&["a"], &["n1", "n2"])),
            MappingKind::ComplexOneToMany
        );
        assert_eq!(
            classify_mapping(&mapping_of(&["a", "b", "c"], &["n1"])),
            MappingKind::ComplexManyToOne
        );
        assert_eq!(
            classify_mapping(&mapping_of(&["a", "b", "c"], &["n1", "n2", "n3", "n4"])),
            MappingKind::ComplexManyToMany
        );
    }

    /// Independent oracle: enumerate every (1-subset, x-subset) and
    /// (x-subset, 1-subset) pair by bitmask.
    fn brute_force_candidates(n: u64, m: u64, x: u64) -> u64 {
        fn subsets_of_size(set_size: u64, want: u64) -> u64 {
            let mut count = 0;
            for mask in 0u64..(1 << set_size) {
                if mask.count_ones() as u64 == want {
                    count += 1;
                }
            }
            count
        }
        subsets_of_size(n, 1) * subsets_of_size(m, x)
            + subsets_of_size(m, 1) * subsets_of_size(n, x)
    }

    #[test]
    fn candidate_count_examples() {
        assert_eq!(count_candidate_mappings(3, 2, 2), Ok(9));
        assert_eq!(count_candidate_mappings(1, 1, 1), Ok(2));
        // x = 0: C(k, 0) = 1, so the sum degenerates to n + m.
        for n in 0..5 {
            for m in 0..5 {
                assert_eq!(count_candidate_mappings(n, m, 0), Ok(n + m));
            }
        }
    }

    #[test]
    fn candidate_count_matches_brute_force() {
        for n in 0..=6 {
            for m in 0..=6 {
                for x in 0..=3 {
                    assert_eq!(
                        count_candidate_mappings(n, m, x),
                        Ok(brute_force_candidates(n, m, x)),
                        "n={n} m={m} x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn candidate_count_overflows_checked() {
        assert_eq!(
            count_candidate_mappings(u64::MAX, u64::MAX, 1),
            Err(MappingError::Overflow)
        );
    }

    fn small_ws() -> Workspace {
        let mut ws = ws_with(
            vec![approach(
                "qa1",
                vec![("stmt", None)],
                vec![
                    instance("i1", "stmt", "shall"),
                    instance("i2", "stmt", "should"),
                ],
            )],
            vec![process_with(
                "p1",
                vec![
                    node("root", NodeKind::Process, None),
                    node("a1", NodeKind::Activity, Some("root")),
                    node("a2", NodeKind::Activity, Some("root")),
                ],
                vec![],
            )],
        );
        ws.exclusions.entry("qa1".to_string()).or_default().insert(
            "i2".to_string(),
            Exclusion {
                qa_id: "i2".to_string(),
                rationale: "out of scope".to_string(),
            },
        );
        ws
    }

    #[test]
    fn add_mapping_assigns_fresh_id_and_keeps_verification_clean() {
        let mut ws = small_ws();
        let added = add_mapping(
            &mut ws,
            "p1",
            &["i1".to_string()].into_iter().collect(),
            &["a1".to_string()].into_iter().collect(),
            Some("i1"),
            "",
        )
        .unwrap();
        assert_eq!(added.mapping_id, "m-0001");
        assert!(verify_mappings(&ws, "p1").unwrap().is_clean());
    }

    #[test]
    fn add_mapping_rejects_unknown_source_and_target() {
        let mut ws = small_ws();
        let err = add_mapping(
            &mut ws,
            "p1",
            &["NO-SUCH".to_string()].into_iter().collect(),
            &["a1".to_string()].into_iter().collect(),
            None,
            "",
        )
        .unwrap_err();
        assert_eq!(err, MappingError::UnknownSource("NO-SUCH".to_string()));

        let err = add_mapping(
            &mut ws,
            "p1",
            &["i1".to_string()].into_iter().collect(),
            &["NO-NODE".to_string()].into_iter().collect(),
            None,
            "",
        )
        .unwrap_err();
        assert_eq!(err, MappingError::UnknownTarget("NO-NODE".to_string()));
    }

    #[test]
    fn add_mapping_rejects_foreign_primary() {
        let mut ws = small_ws();
        let err = add_mapping(
            &mut ws,
            "p1",
            &["i1".to_string()].into_iter().collect(),
            &["a1".to_string()].into_iter().collect(),
            Some("VER SP2.1 SUBP1"),
            "",
        )
        .unwrap_err();
        assert_eq!(err, MappingError::BadPrimary("VER SP2.1 SUBP1".to_string()));
    }

    #[test]
    fn add_mapping_retires_exclusion() {
        let mut ws = small_ws();
        assert!(ws.exclusion_for("i2").is_some());
        let added = add_mapping(
            &mut ws,
            "p1",
            &["i2".to_string()].into_iter().collect(),
            &["a1".to_string()].into_iter().collect(),
            None,
            "",
        )
        .unwrap();
        assert_eq!(added.retired_exclusions.len(), 1);
        assert!(ws.exclusion_for("i2").is_none());
        assert!(verify_mappings(&ws, "p1").unwrap().is_clean());
    }

    #[test]
    fn verify_reports_dangling_target_once_per_missing_node() {
        let mut ws = small_ws();
        add_mapping(
            &mut ws,
            "p1",
            &["i1".to_string()].into_iter().collect(),
            &["a1".to_string()].into_iter().collect(),
            None,
            "",
        )
        .unwrap();
        ws.processes.get_mut("p1").unwrap().nodes.remove("a1");
        let report = verify_mappings(&ws, "p1").unwrap();
        assert_eq!(report.findings.len(), 1);
        let finding = &report.findings[0];
        assert_eq!(finding.code, "DanglingTarget");
        assert_eq!(finding.severity, Severity::Error);
        assert_eq!(finding.subject_ids[0], "a1");
        assert!(finding.subject_ids.contains(&"m-0001".to_string()));
    }

    #[test]
    fn verify_warns_on_duplicate_mapping() {
        let mut ws = small_ws();
        for _ in 0..2 {
            add_mapping(
                &mut ws,
                "p1",
                &["i1".to_string()].into_iter().collect(),
                &["a1".to_string()].into_iter().collect(),
                None,
                "",
            )
            .unwrap();
        }
        let report = verify_mappings(&ws, "p1").unwrap();
        assert_eq!(report.findings.len(), 1);
        assert_eq!(report.findings[0].code, "DuplicateMapping");
        assert_eq!(report.findings[0].severity, Severity::Warning);
        assert!(!report.has_errors());
    }

    #[test]
    fn verify_unknown_process() {
        let ws = small_ws();
        assert_eq!(
            verify_mappings(&ws, "nope").unwrap_err(),
            MappingError::UnknownProcess("nope".to_string())
        );
    }

    #[test]
    fn trace_duality() {
        let mut ws = small_ws();
        add_mapping(
            &mut ws,
            "p1",
            &["i1".to_string()].into_iter().collect(),
            &["a1".to_string(), "a2".to_string()].into_iter().collect(),
            None,
            "",
        )
        .unwrap();
        let nodes = trace_to_process(&ws, "i1").unwrap();
        for node_id in &nodes {
            let sources = trace_to_sources(&ws, node_id).unwrap();
            assert!(sources["qa1"].contains("i1"));
        }
        // Excluded instance traces to nothing.
        assert!(trace_to_process(&ws, "i2").unwrap().is_empty());
        // Unknown ids are errors on both sides.
        assert_eq!(
            trace_to_process(&ws, "NO-SUCH").unwrap_err(),
            MappingError::UnknownSource("NO-SUCH".to_string())
        );
        assert_eq!(
            trace_to_sources(&ws, "NO-NODE").unwrap_err(),
            MappingError::UnknownTarget("NO-NODE".to_string())
        );
    }
}
