//! Version diffing between approach snapshots and detection of mappings made
//! stale by a new version.
//!
//! Identity across versions is the instance id; the attested id schemes
//! (`VER SP2.1 SUBP1` and friends) are stable across releases.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::workspace::{ApproachData, Workspace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VersioningError {
    #[error("unknown process {0:?}")]
    UnknownProcess(String),
    #[error("unknown mapping {0:?}")]
    UnknownMapping(String),
    #[error("mapping {mapping:?} does not contain instance {qa_id:?}")]
    SourceNotInMapping { mapping: String, qa_id: String },
    #[error("unknown quality approach instance {0:?}")]
    UnknownSource(String),
}

/// Fields of an instance that can change between versions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum InstanceField {
    KindName,
    Conformance,
    Text,
    ParentId,
    Order,
}

impl InstanceField {
    pub fn as_str(self) -> &'static str {
        match self {
            InstanceField::KindName => "kind_name",
            InstanceField::Conformance => "conformance",
            InstanceField::Text => "text",
            InstanceField::ParentId => "parent_id",
            InstanceField::Order => "order",
        }
    }
}

/// Id-keyed three-way classification of two snapshots of one approach.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VersionDiff {
    pub added: BTreeSet<String>,
    pub removed: BTreeSet<String>,
    pub modified: Vec<(String, BTreeSet<InstanceField>)>,
}

impl VersionDiff {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.removed.is_empty() && self.modified.is_empty()
    }

    pub fn modified_ids(&self) -> BTreeSet<&str> {
        self.modified.iter().map(|(id, _)| id.as_str()).collect()
    }
}

/// Classifies instance deletion, modification and appearance between two
/// snapshots of the same approach.
pub fn diff_versions(old: &ApproachData, new: &ApproachData) -> VersionDiff {
    let mut diff = VersionDiff::default();
    for (id, old_instance) in &old.instances {
        match new.instances.get(id) {
            None => {
                diff.removed.insert(id.clone());
            }
            Some(new_instance) => {
                let mut changed = BTreeSet::new();
                if old_instance.kind_name != new_instance.kind_name {
                    changed.insert(InstanceField::KindName);
                }
                if old_instance.conformance != new_instance.conformance {
                    changed.insert(InstanceField::Conformance);
                }
                if old_instance.text != new_instance.text {
                    changed.insert(InstanceField::Text);
                }
                if old_instance.parent_id != new_instance.parent_id {
                    changed.insert(InstanceField::ParentId);
                }
                if old_instance.order != new_instance.order {
                    changed.insert(InstanceField::Order);
                }
                if !changed.is_empty() {
                    diff.modified.push((id.clone(), changed));
                }
            }
        }
    }
    for id in new.instances.keys() {
        if !old.instances.contains_key(id) {
            diff.added.insert(id.clone());
        }
    }
    diff
}

/// Mappings flagged by a version diff, per (mapping, instance) pair.
/// A mapping can appear under both headings for different instances.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StaleReport {
    /// Mapping references an instance the new version removed.
    pub broken: Vec<(String, String)>,
    /// Mapping references an instance the new version modified.
    pub review: Vec<(String, String)>,
}

impl StaleReport {
    pub fn is_empty(&self) -> bool {
        self.broken.is_empty() && self.review.is_empty()
    }
}

/// Lists every mapping of the process touched by the diff: removed ids break
/// a mapping, modified ids put it up for review, untouched mappings are not
/// reported.
pub fn stale_mapping_report(
    ws: &Workspace,
    process_id: &str,
    diff: &VersionDiff,
) -> Result<StaleReport, VersioningError> {
    if !ws.processes.contains_key(process_id) {
        return Err(VersioningError::UnknownProcess(process_id.to_string()));
    }
    let modified = diff.modified_ids();
    let mut report = StaleReport::default();
    for mapping in ws.process_mappings(process_id) {
        for qa_id in &mapping.qa_ids {
            if diff.removed.contains(qa_id) {
                report.broken.push((mapping.id.clone(), qa_id.clone()));
            }
            if modified.contains(qa_id.as_str()) {
                report.review.push((mapping.id.clone(), qa_id.clone()));
            }
        }
    }
    report.broken.sort();
    report.review.sort();
    Ok(report)
}

/// Swaps one instance id for another inside a mapping, the remediation step
/// after a version bump. The primary source follows the rename. Callers
/// append a decision entry recording the rebind.
pub fn rebind_mapping(
    ws: &mut Workspace,
    process_id: &str,
    mapping_id: &str,
    old_qa_id: &str,
    new_qa_id: &str,
) -> Result<(), VersioningError> {
    if ws.find_instance(new_qa_id).is_none() {
        return Err(VersioningError::UnknownSource(new_qa_id.to_string()));
    }
    let Some(per_process) = ws.mappings.get_mut(process_id) else {
        return Err(VersioningError::UnknownProcess(process_id.to_string()));
    };
    let Some(mapping) = per_process.get_mut(mapping_id) else {
        return Err(VersioningError::UnknownMapping(mapping_id.to_string()));
    };
    if !mapping.qa_ids.remove(old_qa_id) {
        return Err(VersioningError::SourceNotInMapping {
            mapping: mapping_id.to_string(),
            qa_id: old_qa_id.to_string(),
        });
    }
    mapping.qa_ids.insert(new_qa_id.to_string());
    if mapping.primary_source.as_deref() == Some(old_qa_id) {
        mapping.primary_source = Some(new_qa_id.to_string());
    }
    Ok(())
}
