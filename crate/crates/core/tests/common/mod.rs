//! Test support: embedding tables for the built-in corpus.
//!
//! When `TOPOARG_GLOVE_DIR` points at a directory containing the
//! `glove.6B.{50,100,200,300}d.txt` files, those are used. Otherwise a
//! deterministic GloVe-format file is generated for the corpus vocabulary
//! (token-hashed Gaussian components, six decimals), written to a temporary
//! directory and loaded through the normal file loader.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use topoarg::corpus::builtin_corpus;
use topoarg::embeddings::tokenize;
use topoarg::series::SplitMix64;

pub const DIMENSIONS: [usize; 4] = [50, 100, 200, 300];

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Corpus tokens plus some filler vocabulary.
pub fn vocabulary() -> Vec<String> {
    let mut vocab: BTreeSet<String> = builtin_corpus()
        .iter()
        .flat_map(|t| tokenize(&t.text).tokens)
        .collect();
    for w in ["the", "of", "and", "to", "in", "circle", "argument", "reason", "loop", "shape"] {
        vocab.insert(w.to_string());
    }
    vocab.into_iter().collect()
}

pub fn synthetic_glove(dimension: usize) -> String {
    let mut out = String::new();
    for token in vocabulary() {
        let mut rng = SplitMix64::new(fnv1a(token.as_bytes()) ^ (dimension as u64).wrapping_mul(0x9E37_79B9));
        out.push_str(&token);
        for _ in 0..dimension {
            // Irwin–Hall approximation of a normal, scaled like GloVe components
            let z: f64 = (0..12).map(|_| rng.next_open01()).sum::<f64>() - 6.0;
            let _ = write!(out, " {:.6}", 0.4 * z);
        }
        out.push('\n');
    }
    out
}

struct Fixtures {
    _dir: Option<tempfile::TempDir>,
    paths: Vec<(usize, PathBuf)>,
    real: bool,
}

fn fixtures() -> &'static Fixtures {
    static FIXTURES: OnceLock<Fixtures> = OnceLock::new();
    FIXTURES.get_or_init(|| {
        if let Ok(dir) = std::env::var("TOPOARG_GLOVE_DIR") {
            let paths: Vec<(usize, PathBuf)> = DIMENSIONS
                .iter()
                .map(|&d| (d, Path::new(&dir).join(format!("glove.6B.{d}d.txt"))))
                .collect();
            if paths.iter().all(|(_, p)| p.exists()) {
                return Fixtures { _dir: None, paths, real: true };
            }
        }
        let dir = tempfile::tempdir().expect("temp dir");
        let paths = DIMENSIONS
            .iter()
            .map(|&d| {
                let path = dir.path().join(format!("synthetic.{d}d.txt"));
                std::fs::write(&path, synthetic_glove(d)).expect("write fixture");
                (d, path)
            })
            .collect();
        Fixtures { _dir: Some(dir), paths, real: false }
    })
}

/// Path of the GloVe file for `dimension`.
pub fn glove_path(dimension: usize) -> &'static Path {
    &fixtures().paths.iter().find(|(d, _)| *d == dimension).expect("known dimension").1
}

pub fn using_real_glove() -> bool {
    fixtures().real
}
