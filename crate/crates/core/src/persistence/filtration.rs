use std::cmp::Ordering;

use super::DistanceMatrix;

/// A vertex, edge or triangle of the Rips filtration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiltrationSimplex {
    vertices: [u32; 3],
    len: u8,
    pub diameter: f64,
}

impl FiltrationSimplex {
    pub fn vertex(v: usize) -> Self {
        FiltrationSimplex {
            vertices: [v as u32, 0, 0],
            len: 1,
            diameter: 0.0,
        }
    }

    pub fn edge(dm: &DistanceMatrix, i: usize, j: usize) -> Self {
        debug_assert!(i < j);
        FiltrationSimplex {
            vertices: [i as u32, j as u32, 0],
            len: 2,
            diameter: dm.get(i, j),
        }
    }

    pub fn triangle(dm: &DistanceMatrix, i: usize, j: usize, k: usize) -> Self {
        debug_assert!(i < j && j < k);
        FiltrationSimplex {
            vertices: [i as u32, j as u32, k as u32],
            len: 3,
            diameter: dm.get(i, j).max(dm.get(i, k)).max(dm.get(j, k)),
        }
    }

    /// Strictly increasing vertex indices.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices[..self.len as usize]
    }

    pub fn dimension(&self) -> usize {
        self.len as usize - 1
    }

    /// Filtration order: diameter, then dimension, then vertex tuple.
    pub fn filtration_cmp(&self, other: &Self) -> Ordering {
        self.diameter
            .total_cmp(&other.diameter)
            .then(self.len.cmp(&other.len))
            .then_with(|| self.vertices().cmp(other.vertices()))
    }
}

/// Edges and (optionally) triangles within `threshold`, in filtration order.
/// Vertices are implicit: they always occupy the first `n` positions.
pub(super) fn higher_simplices(
    dm: &DistanceMatrix,
    with_triangles: bool,
    threshold: f64,
) -> Vec<FiltrationSimplex> {
    let n = dm.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if dm.get(i, j) > threshold {
                continue;
            }
            out.push(FiltrationSimplex::edge(dm, i, j));
            if !with_triangles {
                continue;
            }
            for k in (j + 1)..n {
                if dm.get(i, k) <= threshold && dm.get(j, k) <= threshold {
                    out.push(FiltrationSimplex::triangle(dm, i, j, k));
                }
            }
        }
    }
    out.sort_unstable_by(FiltrationSimplex::filtration_cmp);
    out
}
