mod common;

use topoarg::corpus::{builtin_corpus, find, Label};
use topoarg::diagram::{bottleneck_distance, diagram_to_json};
use topoarg::embeddings::{load_glove_path, lookup_sequence, tokenize, EmbeddingTable};
use topoarg::persistence::PersistenceDiagram;
use topoarg::pipeline::{analyze, sweep, AnalysisConfig, SweepAxis, SweepPlan};
use topoarg::series::ProjectionSeed;
use topoarg::takens::DelayParams;

fn table(dim: usize) -> EmbeddingTable {
    load_glove_path(common::glove_path(dim), Some(dim)).unwrap()
}

fn run(table: &EmbeddingTable, id: &str, seed: u64) -> PersistenceDiagram {
    let corpus = builtin_corpus();
    let mut config = AnalysisConfig::new(find(&corpus, id).unwrap());
    config.seed = ProjectionSeed(seed);
    analyze(table, &config).unwrap()
}

#[test]
fn fixture_loads_with_requested_dimension() {
    let t = table(50);
    assert_eq!(t.dimension(), 50);
    let lines = std::fs::read_to_string(common::glove_path(50)).unwrap().lines().count();
    assert_eq!(t.len(), lines);
}

#[test]
fn point_count_follows_in_vocabulary_tokens() {
    let t = table(50);
    let corpus = builtin_corpus();
    let c1 = find(&corpus, "c1").unwrap();
    let (vectors, _) = lookup_sequence(&t, &tokenize(&c1.text)).unwrap();

    let mut config = AnalysisConfig::new(c1);
    let d = analyze(&t, &config).unwrap();
    assert_eq!(d.metadata.point_count, vectors.len() - 2);
    assert_eq!(d.pairs_in(0).filter(|p| p.is_essential()).count(), 1);

    config.persistence.keep_zero_bars = true;
    let d = analyze(&t, &config).unwrap();
    assert_eq!(d.pairs_in(0).count(), d.metadata.point_count);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let t = table(100);
    assert_eq!(diagram_to_json(&run(&t, "nc2", 7)), diagram_to_json(&run(&t, "nc2", 7)));
}

#[test]
fn different_seeds_give_different_diagrams() {
    let t = table(50);
    let a = run(&t, "c1", 1);
    let b = run(&t, "c1", 2);
    let r = bottleneck_distance(&a, &b, 0);
    assert!(r.distance > 0.0 && !r.infinite);
    assert_eq!(bottleneck_distance(&a, &a, 1).distance, 0.0);
}

#[test]
fn full_grid_has_every_cell() {
    let tables: Vec<EmbeddingTable> = common::DIMENSIONS.iter().map(|&d| table(d)).collect();
    let texts = builtin_corpus();
    let plan = SweepPlan {
        texts: &texts,
        tables: &tables,
        seeds: [1, 2, 3, 42].map(ProjectionSeed).to_vec(),
        delay_params: vec![
            DelayParams::new(2, 2).unwrap(),
            DelayParams::new(3, 2).unwrap(),
            DelayParams::new(2, 3).unwrap(),
        ],
        persistence: Default::default(),
        distance_homology_dim: 1,
    };
    assert_eq!(plan.cell_count(), 384);
    let report = sweep(&plan);
    assert_eq!(report.cells.len(), 384);
    assert!(report.failures.is_empty());
    assert!(report.cells.iter().enumerate().all(|(i, c)| c.index == i));
    assert!(report.distances_along(SweepAxis::Seed).count() > 0);
    assert!(report.distances_along(SweepAxis::EmbeddingDimension).count() > 0);
}

#[test]
fn absurd_text_grid_over_dimension_and_seed() {
    let corpus = builtin_corpus();
    let abs = corpus.iter().find(|t| t.label == Label::Absurd).unwrap();
    let mut diagrams = Vec::new();
    for dim in [50, 100, 200] {
        let t = table(dim);
        for seed in [1, 2, 3] {
            let mut config = AnalysisConfig::new(abs);
            config.seed = ProjectionSeed(seed);
            let d = analyze(&t, &config).unwrap();
            assert_eq!(d.metadata.embedding_dimension, Some(dim));
            diagrams.push(d);
        }
    }
    assert_eq!(diagrams.len(), 9);
    assert!(diagrams.iter().all(|d| d.pairs_in(0).count() > 0));
}
