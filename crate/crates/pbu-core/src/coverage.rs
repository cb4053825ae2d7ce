//! Coverage, appraisal and census reports per quality approach, plus the
//! exclusion ledger for deliberately unmapped text.
//!
//! Every instance of an approach is classified exactly once as mapped,
//! excluded or unaccounted; coverage ratios are exact rationals rendered to
//! four decimals (half-up) so reports are identical on every platform.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::model::{ConformanceLevel, Exclusion};
use crate::workspace::Workspace;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverageError {
    #[error("unknown quality approach {0:?}")]
    UnknownApproach(String),
    #[error("unknown quality approach instance {0:?}")]
    UnknownSource(String),
    #[error("instance {0:?} is mapped; unmap it before excluding")]
    AlreadyMapped(String),
    #[error("instance {0:?} is already excluded")]
    DuplicateExclusion(String),
}

/// Accounting state of one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceStatus {
    Mapped,
    Excluded,
    Unaccounted,
}

impl InstanceStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            InstanceStatus::Mapped => "mapped",
            InstanceStatus::Excluded => "excluded",
            InstanceStatus::Unaccounted => "unaccounted",
        }
    }
}

/// total = mapped + excluded + unaccounted, always.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CoverageCounts {
    pub total: u64,
    pub mapped: u64,
    pub excluded: u64,
    pub unaccounted: u64,
}

impl CoverageCounts {
    fn add(&mut self, status: InstanceStatus) {
        self.total += 1;
        match status {
            InstanceStatus::Mapped => self.mapped += 1,
            InstanceStatus::Excluded => self.excluded += 1,
            InstanceStatus::Unaccounted => self.unaccounted += 1,
        }
    }

    /// mapped / total to four decimals; 1.0000 when the row is empty.
    pub fn mapped_ratio(&self) -> String {
        render_ratio(self.mapped, self.total)
    }

    ///REACHED = (mapped + excluded) / total to four decimals.
    pub fn accounted_ratio(&self) -> String {
        render_ratio(self.mapped + self.excluded, self.total)
    }
}

/// Renders `numerator / denominator` with `decimals` digits, rounding
/// half-up, using integer arithmetic only. An empty denominator renders as
/// 1 (vacuously covered).
pub fn render_ratio_with(numerator: u64, denominator: u64, decimals: u32) -> String {
    let scale = 10u128.pow(decimals);
    let (int_part, frac_part) = if denominator == 0 {
        (1u128, 0u128)
    } else {
        let scaled = (numerator as u128) * scale * 2 + denominator as u128;
        let rounded = scaled / (2 * denominator as u128);
        (rounded / scale, rounded % scale)
    };
    if decimals == 0 {
        format!("{int_part}")
    } else {
        format!("{int_part}.{frac_part:0width$}", width = decimals as usize)
    }
}

fn render_ratio(numerator: u64, denominator: u64) -> String {
    render_ratio_with(numerator, denominator, 4)
}

/// Completeness of mapping for one approach, per conformance level and per
/// element kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub approach_id: String,
    pub level_filter: Option<ConformanceLevel>,
    pub per_level: Vec<(ConformanceLevel, CoverageCounts)>,
    pub per_kind: Vec<(String, CoverageCounts)>,
    pub total: CoverageCounts,
}

fn instance_status(ws: &Workspace, qa_id: &str) -> InstanceStatus {
    if ws.is_mapped(qa_id) {
        InstanceStatus::Mapped
    } else if ws.exclusion_for(qa_id).is_some() {
        InstanceStatus::Excluded
    } else {
        InstanceStatus::Unaccounted
    }
}

/// Classifies every instance of the approach exactly once. With a level
/// filter only instances at that conformance level are counted.
pub fn coverage_report(
    ws: &Workspace,
    approach_id: &str,
    level_filter: Option<ConformanceLevel>,
) -> Result<CoverageReport, CoverageError> {
    let Some(data) = ws.approaches.get(approach_id) else {
        return Err(CoverageError::UnknownApproach(approach_id.to_string()));
    };
    let mut per_level: BTreeMap<ConformanceLevel, CoverageCounts> = BTreeMap::new();
    let mut per_kind: BTreeMap<&str, CoverageCounts> = BTreeMap::new();
    let mut total = CoverageCounts::default();
    for instance in data.instances.values() {
        if let Some(filter) = level_filter {
            if instance.conformance != filter {
                continue;
            }
        }
        let status = instance_status(ws, &instance.id);
        per_level
            .entry(instance.conformance)
            .or_default()
            .add(status);
        per_kind
            .entry(instance.kind_name.as_str())
            .or_default()
            .add(status);
        total.add(status);
    }
    Ok(CoverageReport {
        approach_id: approach_id.to_string(),
        level_filter,
        per_level: per_level.into_iter().collect(),
        per_kind: per_kind
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        total,
    })
}

/// One line of the appraisal evidence: where the instance went, or why not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppraisalRow {
    pub qa_id: String,
    pub conformance: ConformanceLevel,
    pub status: InstanceStatus,
    /// Mapped: sorted target node ids. Excluded: the recorded rationale.
    pub targets: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AppraisalVerdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppraisalReport {
    pub approach_id: String,
    pub fail_level: ConformanceLevel,
    pub rows: Vec<AppraisalRow>,
    pub verdict: AppraisalVerdict,
}

/// Produces the per-instance evidence rows and fails iff any instance at or
/// above the fail level is unaccounted (neither mapped nor excluded).
pub fn appraisal_report(
    ws: &Workspace,
    approach_id: &str,
    fail_level: ConformanceLevel,
) -> Result<AppraisalReport, CoverageError> {
    let Some(data) = ws.approaches.get(approach_id) else {
        return Err(CoverageError::UnknownApproach(approach_id.to_string()));
    };
    let mut rows = Vec::new();
    let mut verdict = AppraisalVerdict::Pass;
    for instance in data.instances.values() {
        let status = instance_status(ws, &instance.id);
        let targets = match status {
            InstanceStatus::Mapped => crate::mapping::trace_to_process(ws, &instance.id)
                .map(|set| set.into_iter().collect())
                .unwrap_or_default(),
            InstanceStatus::Excluded => ws
                .exclusion_for(&instance.id)
                .map(|e| vec![e.rationale.clone()])
                .unwrap_or_default(),
            InstanceStatus::Unaccounted => Vec::new(),
        };
        if status == InstanceStatus::Unaccounted
            && instance.conformance.severity_rank() >= fail_level.severity_rank()
        {
            verdict = AppraisalVerdict::Fail;
        }
        rows.push(AppraisalRow {
            qa_id: instance.id.clone(),
            conformance: instance.conformance,
            status,
            targets,
        });
    }
    Ok(AppraisalReport {
        approach_id: approach_id.to_string(),
        fail_level,
        rows,
        verdict,
    })
}

/// Exact instance counts of one approach, by kind name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceCensus {
    pub approach_id: String,
    pub by_kind: BTreeMap<String, u64>,
    pub total: u64,
}

pub fn instance_census(ws: &Workspace, approach_id: &str) -> Result<InstanceCensus, CoverageError> {
    let Some(data) = ws.approaches.get(approach_id) else {
        return Err(CoverageError::UnknownApproach(approach_id.to_string()));
    };
    let mut by_kind: BTreeMap<String, u64> = BTreeMap::new();
    for instance in data.instances.values() {
        *by_kind.entry(instance.kind_name.clone()).or_default() += 1;
    }
    Ok(InstanceCensus {
        approach_id: approach_id.to_string(),
        total: data.instances.len() as u64,
        by_kind,
    })
}

/// Records a deliberate omission. The instance then counts as accounted in
/// coverage. Mapped instances cannot be excluded.
pub fn record_exclusion(
    ws: &mut Workspace,
    qa_id: &str,
    rationale: &str,
) -> Result<(), CoverageError> {
    let Some((approach_id, _)) = ws.find_instance(qa_id) else {
        return Err(CoverageError::UnknownSource(qa_id.to_string()));
    };
    let approach_id = approach_id.to_string();
    if ws.is_mapped(qa_id) {
        return Err(CoverageError::AlreadyMapped(qa_id.to_string()));
    }
    if ws.exclusion_for(qa_id).is_some() {
        return Err(CoverageError::DuplicateExclusion(qa_id.to_string()));
    }
    ws.exclusions.entry(approach_id).or_default().insert(
        qa_id.to_string(),
        Exclusion {
            qa_id: qa_id.to_string(),
            rationale: rationale.to_string(),
        },
    );
    Ok(())
}
