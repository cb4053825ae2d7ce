//! Property tests for the cross-module invariants.

use proptest::prelude::*;

use pbu_core::analysis::{
    extract_cross_references, tokenize_and_count, AreaDocument, MiningConfig, StemmerChoice,
};
use pbu_core::mapping::{classify_mapping, trace_to_process, trace_to_sources};
use pbu_core::model::Mapping;
use pbu_core::porter::porter_stem;

proptest! {
    /// Sum of counts with no filters equals the raw token count.
    #[test]
    fn frequency_conservation(text in "[a-zA-Z0-9 ,.!?\n-]{0,200}") {
        let table = tokenize_and_count(&text, &MiningConfig::default());
        let tokens = text
            .split(|c: char| !c.is_alphanumeric())
            .filter(|t| !t.is_empty())
            .count() as u64;
        prop_assert_eq!(table.total_count(), tokens);
    }

    /// Stemming merges tokens, never splits them.
    #[test]
    fn stemming_never_increases_table_size(text in "[a-z ]{0,200}") {
        let plain = tokenize_and_count(&text, &MiningConfig::default());
        let stemmed = tokenize_and_count(&text, &MiningConfig {
            stemmer: StemmerChoice::Porter,
            ..MiningConfig::default()
        });
        prop_assert!(stemmed.entries.len() <= plain.entries.len());
        prop_assert_eq!(stemmed.total_count(), plain.total_count());
    }

    /// The stemmer is total and never grows a word.
    #[test]
    fn stemmer_is_total_and_shrinking(word in "[a-z]{0,20}") {
        let stem = porter_stem(&word);
        prop_assert!(stem.len() <= word.len() + 1, "{word} -> {stem}");
    }

    /// Ordering of the frequency table is total: count desc, token asc.
    #[test]
    fn frequency_table_ordering(text in "[a-z ]{0,120}") {
        let table = tokenize_and_count(&text, &MiningConfig::default());
        for pair in table.entries.windows(2) {
            let ordered = pair[0].1 > pair[1].1
                || (pair[0].1 == pair[1].1 && pair[0].0 < pair[1].0);
            prop_assert!(ordered, "{pair:?}");
        }
    }

    /// Classification depends only on the cardinalities of the two sides.
    #[test]
    fn classification_ignores_member_names(
        qa in proptest::collection::btree_set("[a-z]{1,6}", 1..5),
        nodes in proptest::collection::btree_set("[a-z]{1,6}", 1..5),
        suffix in "[0-9]{1,3}",
    ) {
        let mapping = Mapping {
            id: "m".to_string(),
            qa_ids: qa.clone(),
            node_ids: nodes.clone(),
            primary_source: None,
            note: String::new(),
        };
        let renamed = Mapping {
            id: "m".to_string(),
            qa_ids: qa.iter().map(|q| format!("{q}-{suffix}")).collect(),
            node_ids: nodes.iter().map(|n| format!("{n}-{suffix}")).collect(),
            primary_source: None,
            note: String::new(),
        };
        prop_assert_eq!(classify_mapping(&mapping), classify_mapping(&renamed));
    }

    /// Doubling every document doubles every extracted edge count.
    #[test]
    fn corpus_doubling_doubles_counts(
        sentences in proptest::collection::vec(0usize..4, 1..5),
    ) {
        let areas = ["Alpha", "Beta", "Gamma", "Delta"];
        let names: Vec<String> = areas.iter().map(|s| s.to_string()).collect();
        let corpus: Vec<AreaDocument> = sentences
            .iter()
            .enumerate()
            .map(|(index, target)| AreaDocument {
                area_id: format!("doc-{index}"),
                text: format!("Refer to the {} process area.", areas[*target]),
            })
            .collect();
        let mut doubled = corpus.clone();
        doubled.extend(corpus.clone());
        let single = extract_cross_references(&corpus, &names, &[]);
        let twice = extract_cross_references(&doubled, &names, &[]);
        prop_assert_eq!(single.len(), twice.len());
        for (a, b) in single.iter().zip(twice.iter()) {
            prop_assert_eq!(&a.from_area, &b.from_area);
            prop_assert_eq!(&a.to_area, &b.to_area);
            prop_assert_eq!(a.count * 2, b.count);
        }
    }
}

/// node in trace_to_process(q) iff q in trace_to_sources(node), over the
/// whole shipped fixture.
#[test]
fn traceability_duality_on_the_fixture() {
    let ws = pbu_core::fixture::peer_review();
    for approach in ws.approaches.values() {
        for qa_id in approach.instances.keys() {
            for node_id in trace_to_process(&ws, qa_id).unwrap() {
                let sources = trace_to_sources(&ws, &node_id).unwrap();
                assert!(
                    sources.values().any(|set| set.contains(qa_id)),
                    "{qa_id} -> {node_id} not mirrored"
                );
            }
        }
    }
    for process in ws.processes.values() {
        for node_id in process.nodes.keys() {
            for qa_ids in trace_to_sources(&ws, node_id).unwrap().values() {
                for qa_id in qa_ids {
                    assert!(
                        trace_to_process(&ws, qa_id).unwrap().contains(node_id),
                        "{node_id} -> {qa_id} not mirrored"
                    );
                }
            }
        }
    }
}
