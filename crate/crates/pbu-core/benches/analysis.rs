//! Compares the rayon-backed analysis pipelines against their sequential
//! twins on a synthetic corpus.
//!
//! Run with `cargo bench -p pbu-core`; build with `--no-default-features`
//! to measure the sequential code path behind the public functions too.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use pbu_core::analysis::{
    corpus_frequencies, corpus_frequencies_seq, extract_cross_references,
    extract_cross_references_seq, AreaDocument, MiningConfig, StemmerChoice,
};

fn synthetic_corpus(documents: usize, sentences: usize) -> (Vec<AreaDocument>, Vec<String>) {
    let areas = [
        "Project Planning",
        "Configuration Management",
        "Requirements Development",
        "Technical Solution",
        "Verification",
        "Measurement and Analysis",
    ];
    let mut corpus = Vec::new();
    for d in 0..documents {
        let mut text = String::new();
        for s in 0..sentences {
            let target = areas[(d + s) % areas.len()];
            text.push_str(&format!(
                "The work products of iteration {s} are reviewed before processing continues. \
                 Refer to the {target} process area for more information. \
                 Preparation and planning data are recorded for analysis purposes. "
            ));
        }
        corpus.push(AreaDocument {
            area_id: format!("area-{d}"),
            text,
        });
    }
    let names = areas.iter().map(|s| s.to_string()).collect();
    (corpus, names)
}

fn bench_xref(c: &mut Criterion) {
    let (corpus, names) = synthetic_corpus(64, 60);
    let exclusions = vec!["can refer to the standard processes".to_string()];
    let mut group = c.benchmark_group("xref");
    group.bench_function("parallel", |b| {
        b.iter(|| {
            extract_cross_references(
                black_box(&corpus),
                black_box(&names),
                black_box(&exclusions),
            )
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            extract_cross_references_seq(
                black_box(&corpus),
                black_box(&names),
                black_box(&exclusions),
            )
        })
    });
    group.finish();
}

fn bench_wordfreq(c: &mut Criterion) {
    let (corpus, _) = synthetic_corpus(64, 60);
    let config = MiningConfig {
        stopwords: vec!["the".to_string(), "of".to_string(), "for".to_string()],
        min_token_length: 2,
        stemmer: StemmerChoice::Porter,
    };
    let mut group = c.benchmark_group("wordfreq");
    group.bench_function("parallel", |b| {
        b.iter(|| corpus_frequencies(black_box(&corpus), black_box(&config)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| corpus_frequencies_seq(black_box(&corpus), black_box(&config)))
    });
    group.finish();
}

criterion_group!(benches, bench_xref, bench_wordfreq);
criterion_main!(benches);
