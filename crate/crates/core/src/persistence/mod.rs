//! Vietoris–Rips persistent homology in degrees 0 and 1 over Z/2.
//!
//! [`rips_persistence`] is the engine used by the pipeline; it reduces a
//! sparse boundary matrix with clearing. [`naive_reduction`] is a dense,
//! unoptimized reduction kept as a correctness oracle for small inputs.
//!
//! Both build the same filtration: every simplex of dimension at most
//! `max_homology_dim + 1` whose diameter is within the threshold, ordered by
//! diameter, then dimension, then vertex tuple.

mod filtration;
mod naive;
mod reduction;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::takens::PointCloud;

pub use filtration::FiltrationSimplex;
pub use naive::{naive_reduction, NAIVE_MAX_POINTS};
pub use reduction::rips_persistence;

/// Symmetric matrix of pairwise distances with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Euclidean distances between the points of `cloud`.
    pub fn from_cloud(cloud: &PointCloud) -> Result<Self> {
        Self::from_points(&cloud.points)
    }

    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::EmptyCloud);
        }
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = points[i]
                    .iter()
                    .zip(&points[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        Self::validated(n, data)
    }

    /// Builds a matrix from explicit rows, checking shape, symmetry, the
    /// zero diagonal and that entries are finite and nonnegative.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyCloud);
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidDistanceMatrix(format!(
                "row {bad} has length {}, expected {n}",
                rows[bad].len()
            )));
        }
        Self::validated(n, rows.concat())
    }

    fn validated(n: usize, data: Vec<f64>) -> Result<Self> {
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::InvalidDistanceMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let d = data[i * n + j];
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "entry ({i}, {j}) = {d} is not a finite nonnegative number"
                    )));
                }
                if d != data[j * n + i] {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "asymmetric entries at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(DistanceMatrix { n, data })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Largest pairwise distance (0 for a single point).
    pub fn diameter(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }

    /// Matrix with points reordered so that new point `k` is old point `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        if order.len() != self.n || order.iter().any(|&o| o >= self.n || std::mem::replace(&mut seen[o], true)) {
            return Err(Error::InvalidDistanceMatrix("not a permutation".to_string()));
        }
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for (a, &i) in order.iter().enumerate() {
            for (b, &j) in order.iter().enumerate() {
                data[a * n + b] = self.get(i, j);
            }
        }
        Ok(DistanceMatrix { n, data })
    }

    /// Every entry multiplied by `factor` (which must be positive and finite).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::InvalidDistanceMatrix(format!("bad scale factor {factor}")));
        }
        Self::validated(self.n, self.data.iter().map(|d| d * factor).collect())
    }
}

/// Parameters for a persistence computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistenceOptions {
    /// Highest homology degree to report (0 or 1).
    pub max_homology_dim: usize,
    /// Largest simplex diameter admitted; `None` means the matrix diameter.
    pub threshold: Option<f64>,
    /// Retain pairs with `death == birth`.
    pub keep_zero_bars: bool,
}

impl Default for PersistenceOptions {
    fn default() -> Self {
        PersistenceOptions {
            max_homology_dim: 1,
            threshold: None,
            keep_zero_bars: false,
        }
    }
}

impl PersistenceOptions {
    /// The threshold actually applied to `dm`. Negative values clamp to 0;
    /// anything at or beyond the diameter admits the full complex and is
    /// recorded as the diameter when it is infinite.
    pub(crate) fn resolve_threshold(&self, dm: &DistanceMatrix) -> Result<f64> {
        if self.max_homology_dim > 1 {
            return Err(Error::UnsupportedHomologyDimension(self.max_homology_dim));
        }
        match self.threshold {
            None => Ok(dm.diameter()),
            Some(t) if t.is_nan() => Err(Error::InvalidThreshold(t)),
            Some(t) if t == f64::INFINITY => Ok(dm.diameter()),
            Some(t) => Ok(t.max(0.0)),
        }
    }
}

/// One bar of a persistence diagram. `death` is `f64::INFINITY` for
/// essential classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PersistencePair {
    #[serde(rename = "dimension")]
    pub homology_dimension: usize,
    pub birth: f64,
    #[serde(with = "death_as_null")]
    pub death: f64,
}

impl PersistencePair {
    pub fn new(homology_dimension: usize, birth: f64, death: f64) -> Self {
        PersistencePair {
            homology_dimension,
            birth,
            death,
        }
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    /// Canonical order: dimension, then birth, then death (infinity last).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.homology_dimension
            .cmp(&other.homology_dimension)
            .then(self.birth.total_cmp(&other.birth))
            .then(self.death.total_cmp(&other.death))
    }
}

mod death_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(death: &f64, s: S) -> Result<S::Ok, S::Error> {
        if death.is_infinite() {
            s.serialize_none()
        } else {
            s.serialize_some(death)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedToken {
    pub position: usize,
    pub token: String,
}

/// Every parameter that produced a diagram.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramMetadata {
    pub text_id: Option<String>,
    pub embedding_dimension: Option<usize>,
    pub seed: Option<u64>,
    pub takens_dimension: Option<usize>,
    pub takens_delay: Option<usize>,
    pub max_homology_dim: usize,
    pub threshold: f64,
    pub keep_zero_bars: bool,
    pub point_count: usize,
    #[serde(default)]
    pub skipped_tokens: Vec<SkippedToken>,
}

impl DiagramMetadata {
    pub(crate) fn for_matrix(dm: &DistanceMatrix, options: &PersistenceOptions, threshold: f64) -> Self {
        DiagramMetadata {
            text_id: None,
            embedding_dimension: None,
            seed: None,
            takens_dimension: None,
            takens_delay: None,
            max_homology_dim: options.max_homology_dim,
            threshold,
            keep_zero_bars: options.keep_zero_bars,
            point_count: dm.len(),
            skipped_tokens: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pub pairs: Vec<PersistencePair>,
    pub metadata: DiagramMetadata,
}

impl PersistenceDiagram {
    /// Pairs of one homology degree, in stored order.
    pub fn pairs_in(&self, homology_dimension: usize) -> impl Iterator<Item = &PersistencePair> {
        self.pairs
            .iter()
            .filter(move |p| p.homology_dimension == homology_dimension)
    }

    /// Sorts pairs into canonical order.
    pub fn canonicalize(&mut self) {
        self.pairs.sort_by(PersistencePair::canonical_cmp);
    }

    /// Multiset equality of the pairs, ignoring metadata.
    pub fn same_pairs(&self, other: &PersistenceDiagram) -> bool {
        let mut a = self.pairs.clone();
        let mut b = other.pairs.clone();
        a.sort_by(PersistencePair::canonical_cmp);
        b.sort_by(PersistencePair::canonical_cmp);
        a.len() == b.len()
            && a.iter().zip(&b).all(|(x, y)| x.canonical_cmp(y) == Ordering::Equal)
    }
}

pub(crate) fn finish_pairs(pairs: &mut Vec<PersistencePair>, keep_zero_bars: bool) {
    if !keep_zero_bars {
        pairs.retain(|p| p.death > p.birth);
    }
    pairs.sort_by(PersistencePair::canonical_cmp);
}
