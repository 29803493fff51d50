//! Seeded random projection of a vector sequence onto one dimension.
//!
//! The direction is drawn from a fixed generator chain so that a seed means
//! the same thing everywhere: splitmix64 words, mapped to open-interval
//! uniforms from their top 53 bits, turned into standard normals by
//! Box–Muller. Transcendentals come from `libm` rather than the platform
//! math library.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectionSeed(pub u64);

impl Default for ProjectionSeed {
    fn default() -> Self {
        ProjectionSeed(42)
    }
}

/// The splitmix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in the open interval (0, 1).
    pub fn next_open01(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        ((self.next_u64() >> 11) as f64 + 0.5) * SCALE
    }
}

/// `dimension` i.i.d. standard normal components for `seed`.
pub fn random_direction(seed: ProjectionSeed, dimension: usize) -> Result<Vec<f64>> {
    if dimension == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut rng = SplitMix64::new(seed.0);
    let mut out = Vec::with_capacity(dimension + 1);
    while out.len() < dimension {
        let u1 = rng.next_open01();
        let u2 = rng.next_open01();
        let radius = libm::sqrt(-2.0 * libm::log(u1));
        let angle = 2.0 * std::f64::consts::PI * u2;
        out.push(radius * libm::cos(angle));
        out.push(radius * libm::sin(angle));
    }
    out.truncate(dimension);
    Ok(out)
}

/// A one-dimensional series obtained from a projection.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub values: Vec<f64>,
    pub seed: ProjectionSeed,
    pub embedding_dimension: usize,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Dot product of every vector with `direction`. No normalization.
pub fn project(vectors: &[Vec<f64>], direction: &[f64]) -> Result<Vec<f64>> {
    vectors
        .iter()
        .map(|v| {
            if v.len() != direction.len() {
                return Err(Error::VectorLengthMismatch {
                    expected: direction.len(),
                    found: v.len(),
                });
            }
            Ok(v.iter().zip(direction).map(|(a, b)| a * b).sum())
        })
        .collect()
}

/// Draws the direction for `seed` and projects `vectors` onto it.
pub fn project_seeded(vectors: &[Vec<f64>], seed: ProjectionSeed) -> Result<TimeSeries> {
    let dimension = vectors.first().map_or(0, Vec::len);
    let direction = random_direction(seed, dimension)?;
    Ok(TimeSeries {
        values: project(vectors, &direction)?,
        seed,
        embedding_dimension: dimension,
    })
}
