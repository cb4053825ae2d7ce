//! Quantitative document analysis: cross-reference extraction with coupling
//! statistics, and the word-frequency pipeline (tokenize, stopword filter,
//! lowercase, optional Porter truncation).
//!
//! Per-document work runs on a rayon pool when the `parallel` feature is on;
//! results are aggregated in document order, so the output is byte-identical
//! to the sequential fallback.

use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::coverage::render_ratio_with;
use crate::porter::porter_stem;

/// One document of a corpus, identified by the area it describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaDocument {
    pub area_id: String,
    pub text: String,
}

/// An aggregated directed reference: `from_area` mentions `to_area`
/// `count` times.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ReferenceEdge {
    pub from_area: String,
    pub to_area: String,
    pub count: u64,
}

/// Lowercased comparison key used to match area ids against matched names:
/// hyphens and underscores count as spaces.
fn area_key(value: &str) -> String {
    value
        .chars()
        .map(|c| match c {
            '-' | '_' => ' ',
            _ => c.to_ascii_lowercase(),
        })
        .collect()
}

/// Splits text into sentences at '.', '!' or '?' followed by whitespace or
/// end of input.
fn split_sentences(text: &str) -> Vec<&str> {
    let bytes = text.as_bytes();
    let mut sentences = Vec::new();
    let mut start = 0;
    for (i, b) in bytes.iter().enumerate() {
        if matches!(b, b'.' | b'!' | b'?') {
            let at_boundary = bytes
                .get(i + 1)
                .map(|next| next.is_ascii_whitespace())
                .unwrap_or(true);
            if at_boundary {
                sentences.push(&text[start..=i]);
                start = i + 1;
            }
        }
    }
    if start < text.len() {
        sentences.push(&text[start..]);
    }
    sentences
}

const REFER_MARKER: &str = "refer to the";
const AREA_MARKER: &str = "process area";
const PRACTICE_MARKER: &str = "specific practice in";

/// Scans one sentence for reference patterns and returns the canonical names
/// of the referenced areas, one entry per occurrence. `area_names` must be
/// paired lowercase/original spellings.
fn sentence_references(sentence_lower: &str, area_names: &[(String, &str)]) -> Vec<String> {
    let mut found = Vec::new();
    let mut search_from = 0;
    while let Some(rel_start) = sentence_lower[search_from..].find(REFER_MARKER) {
        let marker_end = search_from + rel_start + REFER_MARKER.len();
        let Some(rel_area) = sentence_lower[marker_end..].find(AREA_MARKER) else {
            break;
        };
        let mut window = &sentence_lower[marker_end..marker_end + rel_area];
        // "refer to the <x> specific practice in <y> process area" credits
        // the area, not the practice.
        if let Some(pos) = window.rfind(PRACTICE_MARKER) {
            window = &window[pos + PRACTICE_MARKER.len()..];
        }
        let mut best: Option<&(String, &str)> = None;
        for pair in area_names {
            if window.contains(pair.0.as_str()) {
                let better = match best {
                    Some(current) => pair.0.len() > current.0.len(),
                    None => true,
                };
                if better {
                    best = Some(pair);
                }
            }
        }
        if let Some((_, original)) = best {
            found.push(original.to_string());
        }
        search_from = marker_end + rel_area + AREA_MARKER.len();
    }
    found
}

fn extract_document(
    doc: &AreaDocument,
    area_names: &[(String, &str)],
    exclusion_phrases: &[String],
) -> Vec<(String, String)> {
    let from_key = area_key(&doc.area_id);
    let mut references = Vec::new();
    for sentence in split_sentences(&doc.text) {
        let lower = sentence.to_lowercase();
        if exclusion_phrases
            .iter()
            .any(|phrase| lower.contains(phrase))
        {
            continue;
        }
        for to_area in sentence_references(&lower, area_names) {
            if area_key(&to_area) == from_key {
                continue; // self-reference
            }
            references.push((doc.area_id.clone(), to_area));
        }
    }
    references
}

/// Extracts cross-reference edges from a corpus. A sentence yields one
/// occurrence per `refer to the ... process area` pattern it contains,
/// matched case-insensitively against the longest fitting area name.
/// Sentences containing an exclusion phrase are skipped, self-references are
/// dropped, and occurrences aggregate into per-(from, to) counts.
pub fn extract_cross_references(
    corpus: &[AreaDocument],
    area_names: &[String],
    exclusion_phrases: &[String],
) -> Vec<ReferenceEdge> {
    let name_pairs: Vec<(String, &str)> = area_names
        .iter()
        .map(|name| (name.to_lowercase(), name.as_str()))
        .collect();
    let exclusions_lower: Vec<String> =
        exclusion_phrases.iter().map(|p| p.to_lowercase()).collect();

    let per_document = map_documents(corpus, |doc| {
        extract_document(doc, &name_pairs, &exclusions_lower)
    });

    let mut counts: BTreeMap<(String, String), u64> = BTreeMap::new();
    for references in per_document {
        for key in references {
            *counts.entry(key).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .map(|((from_area, to_area), count)| ReferenceEdge {
            from_area,
            to_area,
            count,
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn map_documents<T: Send, F: Fn(&AreaDocument) -> T + Sync + Send>(
    corpus: &[AreaDocument],
    per_doc: F,
) -> Vec<T> {
    corpus.par_iter().map(per_doc).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_documents<T, F: Fn(&AreaDocument) -> T>(corpus: &[AreaDocument], per_doc: F) -> Vec<T> {
    corpus.iter().map(per_doc).collect()
}

/// Sequential twin of [`extract_cross_references`], kept callable for the
/// equivalence tests and the benchmark suite.
pub fn extract_cross_references_seq(
    corpus: &[AreaDocument],
    area_names: &[String],
    exclusion_phrases: &[String],
) -> Vec<ReferenceEdge> {
    let name_pairs: Vec<(String, &str)> = area_names
        .iter()
        .map(|name| (name.to_lowercase(), name.as_str()))
        .collect();
    let exclusions_lower: Vec<String> =
        exclusion_phrases.iter().map(|p| p.to_lowercase()).collect();
    let mut counts: BTreeMap<(String, String), u64> = BTreeMap::new();
    for doc in corpus {
        for key in extract_document(doc, &name_pairs, &exclusions_lower) {
            *counts.entry(key).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .map(|((from_area, to_area), count)| ReferenceEdge {
            from_area,
            to_area,
            count,
        })
        .collect()
}

/// Reference matrix plus in/out rankings.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReferenceMatrix {
    pub cells: BTreeMap<(String, String), u64>,
    /// Total references to each area, descending, ties ascending by name.
    pub in_ranking: Vec<(String, u64)>,
    /// Total references from each area, descending, ties ascending by name.
    pub out_ranking: Vec<(String, u64)>,
}

fn ranked(totals: BTreeMap<String, u64>) -> Vec<(String, u64)> {
    let mut ranking: Vec<(String, u64)> = totals.into_iter().collect();
    ranking.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranking
}

pub fn reference_matrix(edges: &[ReferenceEdge]) -> ReferenceMatrix {
    let mut cells = BTreeMap::new();
    let mut in_totals: BTreeMap<String, u64> = BTreeMap::new();
    let mut out_totals: BTreeMap<String, u64> = BTreeMap::new();
    for edge in edges {
        *cells
            .entry((edge.from_area.clone(), edge.to_area.clone()))
            .or_default() += edge.count;
        *in_totals.entry(edge.to_area.clone()).or_default() += edge.count;
        *out_totals.entry(edge.from_area.clone()).or_default() += edge.count;
    }
    ReferenceMatrix {
        cells,
        in_ranking: ranked(in_totals),
        out_ranking: ranked(out_totals),
    }
}

/// One unordered coupled pair with its two directional counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingPair {
    pub area_a: String,
    pub area_b: String,
    /// References from a to b.
    pub a_to_b: u64,
    /// References from b to a.
    pub b_to_a: u64,
}

impl CouplingPair {
    pub fn total(&self) -> u64 {
        self.a_to_b + self.b_to_a
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingStats {
    pub pairs: Vec<CouplingPair>,
    pub over_threshold: u64,
    /// |pairs with total > k| / |pairs with total >= 1|, three decimals.
    pub fraction_over_k: String,
}

/// Folds the directed matrix into unordered pairs and reports which fraction
/// of coupled pairs exceeds the threshold.
pub fn coupling_stats(matrix: &ReferenceMatrix, k: u64) -> CouplingStats {
    let mut by_pair: BTreeMap<(String, String), (u64, u64)> = BTreeMap::new();
    for ((from, to), count) in &matrix.cells {
        if *count == 0 {
            continue;
        }
        let (key, forward) = if from <= to {
            ((from.clone(), to.clone()), true)
        } else {
            ((to.clone(), from.clone()), false)
        };
        let entry = by_pair.entry(key).or_default();
        if forward {
            entry.0 += count;
        } else {
            entry.1 += count;
        }
    }
    let pairs: Vec<CouplingPair> = by_pair
        .into_iter()
        .map(|((area_a, area_b), (a_to_b, b_to_a))| CouplingPair {
            area_a,
            area_b,
            a_to_b,
            b_to_a,
        })
        .collect();
    let coupled = pairs.iter().filter(|p| p.total() >= 1).count() as u64;
    let over = pairs.iter().filter(|p| p.total() > k).count() as u64;
    CouplingStats {
        over_threshold: over,
        fraction_over_k: render_ratio_with(over, coupled, 3),
        pairs,
    }
}

/// Configuration of the word-frequency pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiningConfig {
    /// Case-insensitive stopword list.
    pub stopwords: Vec<String>,
    /// Tokens shorter than this are dropped.
    pub min_token_length: usize,
    pub stemmer: StemmerChoice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StemmerChoice {
    None,
    Porter,
}

impl Default for MiningConfig {
    fn default() -> Self {
        MiningConfig {
            stopwords: Vec::new(),
            min_token_length: 1,
            stemmer: StemmerChoice::None,
        }
    }
}

/// Frequency table ordered by count descending, ties ascending by token.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FrequencyTable {
    pub entries: Vec<(String, u64)>,
}

impl FrequencyTable {
    pub fn total_count(&self) -> u64 {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    fn from_counts(counts: BTreeMap<String, u64>) -> FrequencyTable {
        let mut entries: Vec<(String, u64)> = counts.into_iter().collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        FrequencyTable { entries }
    }
}

fn count_tokens(text: &str, config: &MiningConfig, stopwords: &[String]) -> BTreeMap<String, u64> {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for raw in text.split(|c: char| !c.is_alphanumeric()) {
        if raw.is_empty() {
            continue;
        }
        let token = raw.to_lowercase();
        if token.chars().count() < config.min_token_length {
            continue;
        }
        if stopwords.iter().any(|s| s == &token) {
            continue;
        }
        let token = match config.stemmer {
            StemmerChoice::None => token,
            StemmerChoice::Porter => porter_stem(&token),
        };
        *counts.entry(token).or_default() += 1;
    }
    counts
}

/// Tokenizes one text (split on any non-alphanumeric, lowercase), applies
/// the length and stopword filters and the optional Porter truncation, and
/// counts the surviving tokens.
pub fn tokenize_and_count(text: &str, config: &MiningConfig) -> FrequencyTable {
    let stopwords: Vec<String> = config.stopwords.iter().map(|s| s.to_lowercase()).collect();
    FrequencyTable::from_counts(count_tokens(text, config, &stopwords))
}

/// Word frequencies over a corpus; documents are processed concurrently and
/// merged into one table.
pub fn corpus_frequencies(corpus: &[AreaDocument], config: &MiningConfig) -> FrequencyTable {
    let stopwords: Vec<String> = config.stopwords.iter().map(|s| s.to_lowercase()).collect();
    let per_document = map_documents(corpus, |doc| count_tokens(&doc.text, config, &stopwords));
    let mut merged: BTreeMap<String, u64> = BTreeMap::new();
    for counts in per_document {
        for (token, count) in counts {
            *merged.entry(token).or_default() += count;
        }
    }
    FrequencyTable::from_counts(merged)
}

/// Sequential twin of [`corpus_frequencies`].
pub fn corpus_frequencies_seq(corpus: &[AreaDocument], config: &MiningConfig) -> FrequencyTable {
    let stopwords: Vec<String> = config.stopwords.iter().map(|s| s.to_lowercase()).collect();
    let mut merged: BTreeMap<String, u64> = BTreeMap::new();
    for doc in corpus {
        for (token, count) in count_tokens(&doc.text, config, &stopwords) {
            *merged.entry(token).or_default() += count;
        }
    }
    FrequencyTable::from_counts(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(id: &str, text: &str) -> AreaDocument {
        AreaDocument {
            area_id: id.to_string(),
            text: text.to_string(),
        }
    }

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn basic_pattern_yields_one_edge() {
        let corpus = vec![doc(
            "CM",
            "Refer to the Project Planning process area for more information.",
        )];
        let edges = extract_cross_references(
            &corpus,
            &names(&["Project Planning", "Configuration Management"]),
            &[],
        );
        assert_eq!(
            edges,
            vec![ReferenceEdge {
                from_area: "CM".to_string(),
                to_area: "Project Planning".to_string(),
                count: 1
            }]
        );
    }

    #[test]
    fn exclusion_phrase_suppresses_sentence() {
        let corpus = vec![doc(
            "OPD",
            "The organization's set of standard processes can refer to the standard \
             processes established at the organization level process area.",
        )];
        let edges = extract_cross_references(
            &corpus,
            &names(&["standard processes established at the organization level"]),
            &["can refer to the standard processes".to_string()],
        );
        assert!(edges.is_empty());
    }

    #[test]
    fn empty_corpus_yields_no_edges() {
        assert!(extract_cross_references(&[], &names(&["A"]), &[]).is_empty());
    }

    #[test]
    fn specific_practice_pattern_credits_the_area() {
        let corpus = vec![doc(
            "VER",
            "Refer to the Select Work Products specific practice in the Verification process area.",
        )];
        let edges = extract_cross_references(
            &corpus,
            &names(&["Verification", "Select Work Products"]),
            &[],
        );
        // Self-reference: VER is the Verification area itself? The id "VER"
        // does not normalize to "verification", so the edge stays.
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].to_area, "Verification");
    }

    #[test]
    fn longest_area_name_wins() {
        let corpus = vec![doc(
            "X",
            "Refer to the Organizational Process Definition process area.",
        )];
        let edges = extract_cross_references(
            &corpus,
            &names(&["Process Definition", "Organizational Process Definition"]),
            &[],
        );
        assert_eq!(edges[0].to_area, "Organizational Process Definition");
    }

    #[test]
    fn self_references_are_dropped() {
        let corpus = vec![doc(
            "project-planning",
            "Refer to the Project Planning process area.",
        )];
        let edges = extract_cross_references(&corpus, &names(&["Project Planning"]), &[]);
        assert!(edges.is_empty());
    }

    #[test]
    fn doubling_the_corpus_doubles_every_count() {
        let base = vec![
            doc(
                "A",
                "Refer to the Beta process area. Refer to the Beta process area!",
            ),
            doc("B", "Refer to the Alpha process area?"),
        ];
        let mut doubled = base.clone();
        doubled.extend(base.clone());
        let single = extract_cross_references(&base, &names(&["Alpha", "Beta"]), &[]);
        let twice = extract_cross_references(&doubled, &names(&["Alpha", "Beta"]), &[]);
        assert_eq!(single.len(), twice.len());
        for (a, b) in single.iter().zip(twice.iter()) {
            assert_eq!(a.from_area, b.from_area);
            assert_eq!(a.to_area, b.to_area);
            assert_eq!(a.count * 2, b.count);
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let corpus: Vec<AreaDocument> = (0..40)
            .map(|i| {
                doc(
                    &format!("area-{i}"),
                    "Refer to the Target process area. Some filler. \
                     Refer to the Other process area for details.",
                )
            })
            .collect();
        let names = names(&["Target", "Other"]);
        assert_eq!(
            extract_cross_references(&corpus, &names, &[]),
            extract_cross_references_seq(&corpus, &names, &[])
        );
        let config = MiningConfig {
            stopwords: vec!["the".to_string()],
            min_token_length: 2,
            stemmer: StemmerChoice::Porter,
        };
        assert_eq!(
            corpus_frequencies(&corpus, &config),
            corpus_frequencies_seq(&corpus, &config)
        );
    }

    #[test]
    fn matrix_and_rankings() {
        let edges = vec![
            ReferenceEdge {
                from_area: "A".to_string(),
                to_area: "B".to_string(),
                count: 2,
            },
            ReferenceEdge {
                from_area: "B".to_string(),
                to_area: "A".to_string(),
                count: 1,
            },
        ];
        let matrix = reference_matrix(&edges);
        assert_eq!(
            matrix.in_ranking,
            vec![("B".to_string(), 2), ("A".to_string(), 1)]
        );
        assert_eq!(
            matrix.out_ranking,
            vec![("A".to_string(), 2), ("B".to_string(), 1)]
        );

        let empty = reference_matrix(&[]);
        assert!(empty.cells.is_empty());
        assert!(empty.in_ranking.is_empty());
    }

    #[test]
    fn coupling_fraction_examples() {
        // One pair totaling 9 (8 + 1): everything over k = 6.
        let edges = vec![
            ReferenceEdge {
                from_area: "TS".to_string(),
                to_area: "RD".to_string(),
                count: 8,
            },
            ReferenceEdge {
                from_area: "RD".to_string(),
                to_area: "TS".to_string(),
                count: 1,
            },
        ];
        let stats = coupling_stats(&reference_matrix(&edges), 6);
        assert_eq!(stats.pairs.len(), 1);
        assert_eq!(stats.pairs[0].total(), 9);
        assert_eq!(stats.fraction_over_k, "1.000");

        // Pair totals {9, 3}: half of them over 6.
        let edges = vec![
            ReferenceEdge {
                from_area: "TS".to_string(),
                to_area: "RD".to_string(),
                count: 9,
            },
            ReferenceEdge {
                from_area: "PP".to_string(),
                to_area: "PMC".to_string(),
                count: 3,
            },
        ];
        let stats = coupling_stats(&reference_matrix(&edges), 6);
        assert_eq!(stats.fraction_over_k, "0.500");

        // Empty matrix: no pairs, fraction renders as zero pairs over zero.
        let stats = coupling_stats(&reference_matrix(&[]), 6);
        assert!(stats.pairs.is_empty());
        assert_eq!(stats.over_threshold, 0);
    }

    #[test]
    fn directional_counts_are_kept_per_pair() {
        let edges = vec![ReferenceEdge {
            from_area: "A".to_string(),
            to_area: "B".to_string(),
            count: 9,
        }];
        let stats = coupling_stats(&reference_matrix(&edges), 0);
        assert_eq!(stats.pairs[0].a_to_b, 9);
        assert_eq!(stats.pairs[0].b_to_a, 0);
    }

    #[test]
    fn the_process_example() {
        let config = MiningConfig {
            stopwords: vec!["the".to_string()],
            min_token_length: 2,
            stemmer: StemmerChoice::None,
        };
        let table = tokenize_and_count("The process, the PROCESS!", &config);
        assert_eq!(table.entries, vec![("process".to_string(), 2)]);
    }

    #[test]
    fn length_filter_drops_short_tokens() {
        let config = MiningConfig {
            min_token_length: 2,
            ..MiningConfig::default()
        };
        let table = tokenize_and_count("a", &config);
        assert!(table.entries.is_empty());
    }

    #[test]
    fn porter_merges_inflections() {
        let config = MiningConfig {
            stemmer: StemmerChoice::Porter,
            ..MiningConfig::default()
        };
        let table = tokenize_and_count("processes processing", &config);
        assert_eq!(table.entries, vec![("process".to_string(), 2)]);
    }

    #[test]
    fn frequency_conservation_without_filters() {
        let text = "one two two three three three";
        let table = tokenize_and_count(text, &MiningConfig::default());
        assert_eq!(table.total_count(), 6);
    }

    #[test]
    fn stemming_never_grows_the_table() {
        let text = "relational relations relate relating connection connected connects";
        let plain = tokenize_and_count(text, &MiningConfig::default());
        let stemmed = tokenize_and_count(
            text,
            &MiningConfig {
                stemmer: StemmerChoice::Porter,
                ..MiningConfig::default()
            },
        );
        assert!(stemmed.entries.len() <= plain.entries.len());
    }

    #[test]
    fn ordering_is_count_desc_then_token_asc() {
        let table = tokenize_and_count("b a b a c", &MiningConfig::default());
        assert_eq!(
            table.entries,
            vec![
                ("a".to_string(), 2),
                ("b".to_string(), 2),
                ("c".to_string(), 1)
            ]
        );
    }
}
