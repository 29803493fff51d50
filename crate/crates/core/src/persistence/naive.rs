use std::collections::HashMap;

use super::{finish_pairs, DiagramMetadata, DistanceMatrix, PersistenceDiagram, PersistenceOptions, PersistencePair};
use crate::error::{Error, Result};

pub const NAIVE_MAX_POINTS: usize = 16;

/// Textbook persistence: enumerate every simplex, fill a dense Z/2 boundary
/// matrix and reduce it left to right with no shortcuts. Only meant as an
/// oracle for [`super::rips_persistence`]; refuses more than 16 points.
pub fn naive_reduction(dm: &DistanceMatrix, options: &PersistenceOptions) -> Result<PersistenceDiagram> {
    let n = dm.len();
    if n > NAIVE_MAX_POINTS {
        return Err(Error::RefusesLargeInput(n));
    }
    let threshold = options.resolve_threshold(dm)?;
    let top = options.max_homology_dim + 1;

    // All vertex subsets of size 1..=top+1, as sorted index lists.
    let mut simplices: Vec<(f64, Vec<usize>)> = Vec::new();
    for mask in 1u32..(1 << n) {
        let vertices: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if vertices.len() > top + 1 {
            continue;
        }
        let mut diameter = 0.0f64;
        for a in 0..vertices.len() {
            for b in 0..a {
                diameter = diameter.max(dm.get(vertices[a], vertices[b]));
            }
        }
        if vertices.len() == 1 || diameter <= threshold {
            simplices.push((diameter, vertices));
        }
    }
    simplices.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.len().cmp(&b.1.len()))
            .then_with(|| a.1.cmp(&b.1))
    });

    let index: HashMap<&[usize], usize> = simplices
        .iter()
        .enumerate()
        .map(|(i, (_, v))| (v.as_slice(), i))
        .collect();
    let size = simplices.len();
    let mut matrix = vec![vec![false; size]; size];
    for (col, (_, vertices)) in simplices.iter().enumerate() {
        if vertices.len() < 2 {
            continue;
        }
        for skip in 0..vertices.len() {
            let face: Vec<usize> = vertices
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &v)| v)
                .collect();
            matrix[col][index[face.as_slice()]] = true;
        }
    }

    let low = |column: &[bool]| column.iter().rposition(|&x| x);
    let mut lows: Vec<Option<usize>> = vec![None; size];
    for j in 0..size {
        while let Some(l) = low(&matrix[j]) {
            let Some(k) = (0..j).find(|&k| lows[k] == Some(l)) else { break };
            let source = matrix[k].clone();
            for (x, y) in matrix[j].iter_mut().zip(source) {
                *x ^= y;
            }
        }
        lows[j] = low(&matrix[j]);
    }

    let mut is_pivot = vec![false; size];
    let mut pairs = Vec::new();
    for (j, l) in lows.iter().enumerate() {
        if let Some(i) = *l {
            is_pivot[i] = true;
            let dimension = simplices[i].1.len() - 1;
            if dimension <= options.max_homology_dim {
                pairs.push(PersistencePair::new(dimension, simplices[i].0, simplices[j].0));
            }
        }
    }
    for j in 0..size {
        let dimension = simplices[j].1.len() - 1;
        if lows[j].is_none() && !is_pivot[j] && dimension <= options.max_homology_dim {
            pairs.push(PersistencePair::new(dimension, simplices[j].0, f64::INFINITY));
        }
    }

    finish_pairs(&mut pairs, options.keep_zero_bars);
    Ok(PersistenceDiagram {
        pairs,
        metadata: DiagramMetadata::for_matrix(dm, options, threshold),
    })
}
