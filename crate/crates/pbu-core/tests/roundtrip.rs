//! Save/load round-trip and determinism checks for the workspace format.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use proptest::prelude::*;

use pbu_core::model::{
    ConformanceLevel, EdgeRelation, ElementKind, NodeKind, ProcessEdge, ProcessNode, QaInstance,
    QualityApproach,
};
use pbu_core::workspace::{
    escape_field, load_workspace, save_workspace, unescape_field, ApproachData, ProcessData,
    Workspace,
};

/// Byte-compares two directory trees.
fn assert_same_tree(a: &Path, b: &Path) {
    fn walk(root: &Path, prefix: &Path, out: &mut Vec<std::path::PathBuf>) {
        for entry in fs::read_dir(root.join(prefix)).unwrap() {
            let entry = entry.unwrap();
            let rel = prefix.join(entry.file_name());
            if entry.path().is_dir() {
                walk(root, &rel, out);
            } else {
                out.push(rel);
            }
        }
    }
    let mut files_a = Vec::new();
    let mut files_b = Vec::new();
    walk(a, Path::new(""), &mut files_a);
    walk(b, Path::new(""), &mut files_b);
    files_a.sort();
    files_b.sort();
    assert_eq!(files_a, files_b, "directory trees differ in file sets");
    for rel in &files_a {
        let bytes_a = fs::read(a.join(rel)).unwrap();
        let bytes_b = fs::read(b.join(rel)).unwrap();
        assert_eq!(bytes_a, bytes_b, "file {} differs", rel.display());
    }
}

#[test]
fn fixture_round_trips_and_saves_deterministically() {
    let ws = pbu_core::fixture::peer_review();
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    save_workspace(&ws, dir_a.path()).unwrap();
    let loaded = load_workspace(dir_a.path()).unwrap();
    assert_eq!(ws, loaded);
    save_workspace(&loaded, dir_b.path()).unwrap();
    assert_same_tree(dir_a.path(), dir_b.path());
    // Saving again over an existing directory changes nothing.
    save_workspace(&loaded, dir_a.path()).unwrap();
    assert_same_tree(dir_a.path(), dir_b.path());
}

/// Free-form text fields: includes the escape-relevant characters.
fn text_strategy() -> impl Strategy<Value = String> {
    proptest::string::string_regex("[a-zA-Z0-9 ;\\\\\t\n\r,.'()-]{0,24}").unwrap()
}

/// Identifier-safe strings: nonempty, no separators, no outer whitespace.
fn ident_strategy() -> impl Strategy<Value = String> {
    proptest::string::string_regex("[a-z0-9][a-z0-9 .-]{0,8}[a-z0-9]|[a-z0-9]").unwrap()
}

fn conformance_strategy() -> impl Strategy<Value = ConformanceLevel> {
    prop_oneof![
        Just(ConformanceLevel::Mandatory),
        Just(ConformanceLevel::Recommendation),
        Just(ConformanceLevel::Optional),
        Just(ConformanceLevel::Unspecified),
    ]
}

prop_compose! {
    fn approach_strategy(tag: usize)(
        ids in proptest::collection::btree_set(ident_strategy(), 1..6),
        texts in proptest::collection::vec(text_strategy(), 6),
        conformances in proptest::collection::vec(conformance_strategy(), 6),
        parent_choice in proptest::collection::vec(any::<prop::sample::Index>(), 6),
        with_parent in proptest::collection::vec(any::<bool>(), 6),
        orders in proptest::collection::vec(proptest::option::of(0u32..50), 6),
        attr_value in text_strategy(),
    ) -> ApproachData {
        let aid = format!("approach-{tag}");
        let ids: Vec<String> = ids.into_iter().map(|id| format!("a{tag} {id}")).collect();
        let mut instances = BTreeMap::new();
        for (index, id) in ids.iter().enumerate() {
            // Parents point at earlier instances only, keeping chains acyclic.
            let parent_id = if index > 0 && with_parent[index % 6] {
                Some(ids[parent_choice[index % 6].index(index)].clone())
            } else {
                None
            };
            instances.insert(id.clone(), QaInstance {
                id: id.clone(),
                kind_name: "statement".to_string(),
                conformance: conformances[index % 6],
                parent_id,
                order: orders[index % 6],
                text: texts[index % 6].clone(),
            });
        }
        ApproachData {
            meta: QualityApproach {
                id: aid.clone(),
                name: format!("Approach {tag}"),
                version_label: "1".to_string(),
                attributes: vec![("origin".to_string(), attr_value)],
            },
            kinds: [("statement".to_string(), ElementKind {
                kind_name: "statement".to_string(),
                default_process_target: None,
            })].into_iter().collect(),
            instances,
            relations: Default::default(),
        }
    }
}

prop_compose! {
    fn process_strategy()(
        node_ids in proptest::collection::btree_set(ident_strategy(), 1..6),
        items in proptest::collection::vec(
            proptest::string::string_regex("[a-zA-Z0-9 ;\\\\,]{1,12}").unwrap(), 3),
        // empty guards are stored identically to absent ones, so generate
        // only meaningful guard texts
        guards in proptest::collection::vec(
            proptest::option::of(
                proptest::string::string_regex("[a-zA-Z0-9 ;\\\\\t,.-]{1,16}").unwrap()
            ),
            4,
        ),
    ) -> ProcessData {
        let mut nodes = BTreeMap::new();
        nodes.insert("root".to_string(), ProcessNode {
            id: "root".to_string(),
            kind: NodeKind::Process,
            parent_id: None,
            name: "Root".to_string(),
            description: String::new(),
            items: Vec::new(),
        });
        let node_ids: Vec<String> = node_ids.into_iter().collect();
        for (index, id) in node_ids.iter().enumerate() {
            let kind = if index == 0 { NodeKind::Role } else { NodeKind::Activity };
            nodes.insert(id.clone(), ProcessNode {
                id: id.clone(),
                kind,
                parent_id: Some("root".to_string()),
                name: id.clone(),
                description: String::new(),
                items: if kind == NodeKind::Role { items.clone() } else { Vec::new() },
            });
        }
        let mut edges = std::collections::BTreeSet::new();
        for (index, pair) in node_ids.windows(2).enumerate() {
            edges.insert(ProcessEdge {
                from_id: pair[0].clone(),
                to_id: pair[1].clone(),
                relation: EdgeRelation::Sequence,
                guard: guards[index % 4].clone(),
            });
        }
        ProcessData { nodes, edges }
    }
}

prop_compose! {
    fn workspace_strategy()(
        approaches in proptest::collection::vec(any::<u8>(), 1..3),
        process in process_strategy(),
    )(
        data in approaches.iter().enumerate()
            .map(|(i, _)| approach_strategy(i))
            .collect::<Vec<_>>(),
        process in Just(process),
        map_first in any::<bool>(),
    ) -> Workspace {
        let mut ws = Workspace::default();
        for approach in data {
            ws.approaches.insert(approach.meta.id.clone(), approach);
        }
        ws.processes.insert("proc-1".to_string(), process);
        // One mapping from the first instance to the first activity, when
        // both exist.
        if map_first {
            let qa = ws.approaches.values().next()
                .and_then(|a| a.instances.keys().next().cloned());
            let node = ws.processes["proc-1"].nodes.values()
                .find(|n| n.kind == NodeKind::Activity)
                .map(|n| n.id.clone());
            if let (Some(qa), Some(node)) = (qa, node) {
                ws.mappings.entry("proc-1".to_string()).or_default().insert(
                    "m-0001".to_string(),
                    pbu_core::model::Mapping {
                        id: "m-0001".to_string(),
                        qa_ids: [qa.clone()].into_iter().collect(),
                        node_ids: [node].into_iter().collect(),
                        primary_source: Some(qa),
                        note: "generated".to_string(),
                    },
                );
            }
        }
        ws.decisions = vec![pbu_core::model::Decision {
            timestamp: "2012-06-15T10:00:00Z".to_string(),
            actor: "prop".to_string(),
            context: "generated".to_string(),
            decision: "also generated".to_string(),
            rationale: "round-trip input".to_string(),
        }];
        ws
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn escape_round_trips(text in "\\PC*") {
        prop_assert_eq!(unescape_field(&escape_field(&text)).unwrap(), text);
    }

    #[test]
    fn random_workspaces_round_trip(ws in workspace_strategy()) {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        save_workspace(&ws, dir_a.path()).unwrap();
        let loaded = load_workspace(dir_a.path()).unwrap();
        prop_assert_eq!(&ws, &loaded);
        save_workspace(&loaded, dir_b.path()).unwrap();
        assert_same_tree(dir_a.path(), dir_b.path());
    }
}

#[test]
fn ledger_is_never_rewritten_by_save() {
    let ws = pbu_core::fixture::peer_review();
    let dir = tempfile::tempdir().unwrap();
    save_workspace(&ws, dir.path()).unwrap();
    let log_path = dir.path().join("decisions.log");
    let before = fs::read_to_string(&log_path).unwrap();
    pbu_core::workspace::append_decision(dir.path(), "t", "c", "d", "r").unwrap();
    let appended = fs::read_to_string(&log_path).unwrap();
    // A later save of the (stale) in-memory value must not touch the log.
    save_workspace(&ws, dir.path()).unwrap();
    let after = fs::read_to_string(&log_path).unwrap();
    assert_eq!(appended, after);
    assert!(after.starts_with(&before));
}

#[test]
fn save_to_unwritable_path_fails_with_io_error() {
    // A plain file where the workspace directory should be blocks every
    // writer, regardless of process privileges.
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("blocked");
    fs::write(&target, b"file, not a directory").unwrap();
    let ws = Workspace::default();
    assert!(matches!(
        save_workspace(&ws, &target),
        Err(pbu_core::workspace::WorkspaceError::Io { .. })
    ));
}

#[test]
fn approach_with_zero_instances_writes_header_only_file() {
    let mut ws = Workspace::default();
    ws.approaches.insert(
        "empty-approach".to_string(),
        ApproachData {
            meta: QualityApproach {
                id: "empty-approach".to_string(),
                name: "Empty".to_string(),
                version_label: "1".to_string(),
                attributes: Vec::new(),
            },
            ..Default::default()
        },
    );
    let dir = tempfile::tempdir().unwrap();
    save_workspace(&ws, dir.path()).unwrap();
    let instances =
        fs::read_to_string(dir.path().join("approaches/empty-approach/instances.tsv")).unwrap();
    assert_eq!(
        instances,
        "id\tkind_name\tconformance\tparent_id\torder\ttext\n"
    );
    assert_eq!(load_workspace(dir.path()).unwrap(), ws);
}
