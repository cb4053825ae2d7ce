//! Small builders shared by the unit tests.

use std::collections::BTreeMap;

use crate::model::{
    normalize_conformance, ElementKind, NodeKind, ProcessEdge, ProcessNode, ProcessTarget,
    QaInstance, QualityApproach,
};
use crate::workspace::{ApproachData, ProcessData, Workspace};

pub fn instance(id: &str, kind: &str, conformance: &str) -> QaInstance {
    QaInstance {
        id: id.to_string(),
        kind_name: kind.to_string(),
        conformance: normalize_conformance(conformance).unwrap(),
        parent_id: None,
        order: None,
        text: format!("text of {id}"),
    }
}

pub fn approach(
    id: &str,
    kinds: Vec<(&str, Option<ProcessTarget>)>,
    instances: Vec<QaInstance>,
) -> ApproachData {
    ApproachData {
        meta: QualityApproach {
            id: id.to_string(),
            name: id.to_uppercase(),
            version_label: "1".to_string(),
            attributes: Vec::new(),
        },
        kinds: kinds
            .into_iter()
            .map(|(name, target)| {
                (
                    name.to_string(),
                    ElementKind {
                        kind_name: name.to_string(),
                        default_process_target: target,
                    },
                )
            })
            .collect(),
        instances: instances.into_iter().map(|i| (i.id.clone(), i)).collect(),
        relations: Default::default(),
    }
}

pub fn node(id: &str, kind: NodeKind, parent: Option<&str>) -> ProcessNode {
    ProcessNode {
        id: id.to_string(),
        kind,
        parent_id: parent.map(str::to_string),
        name: id.replace('-', " "),
        description: String::new(),
        items: Vec::new(),
    }
}

pub fn process_with(
    _id: &str,
    nodes: Vec<ProcessNode>,
    edges: Vec<ProcessEdge>,
) -> (String, ProcessData) {
    (
        _id.to_string(),
        ProcessData {
            nodes: nodes.into_iter().map(|n| (n.id.clone(), n)).collect(),
            edges: edges.into_iter().collect(),
        },
    )
}

pub fn ws_with(approaches: Vec<ApproachData>, processes: Vec<(String, ProcessData)>) -> Workspace {
    Workspace {
        approaches: approaches
            .into_iter()
            .map(|a| (a.meta.id.clone(), a))
            .collect(),
        processes: processes.into_iter().collect(),
        mappings: BTreeMap::new(),
        exclusions: BTreeMap::new(),
        decisions: Vec::new(),
    }
}
