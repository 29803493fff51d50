use super::filtration::{higher_simplices, FiltrationSimplex};
use super::{finish_pairs, DiagramMetadata, DistanceMatrix, PersistenceDiagram, PersistenceOptions, PersistencePair};
use crate::error::Result;

const NONE: u32 = u32::MAX;

/// Sparse Z/2 column, row indices ascending. The pivot is the last entry.
type Column = Vec<u32>;

/// `acc ← acc + other` over Z/2 (symmetric difference of sorted rows).
fn add_into(acc: &mut Column, other: &[u32], scratch: &mut Column) {
    scratch.clear();
    scratch.reserve(acc.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() && j < other.len() {
        match acc[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                scratch.push(acc[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&acc[i..]);
    scratch.extend_from_slice(&other[j..]);
    std::mem::swap(acc, scratch);
}

struct Reducer {
    // row -> position of the column that owns it as pivot
    owner: Vec<u32>,
    reduced: Vec<Column>,
    scratch: Column,
}

impl Reducer {
    fn new(total: usize) -> Self {
        Reducer {
            owner: vec![NONE; total],
            reduced: vec![Vec::new(); total],
            scratch: Vec::new(),
        }
    }

    /// Reduces `column` (the boundary of the simplex at `position`) against
    /// earlier columns. Returns the pivot row if the result is nonzero.
    fn reduce(&mut self, position: usize, mut column: Column) -> Option<u32> {
        while let Some(&pivot) = column.last() {
            let other = self.owner[pivot as usize];
            if other == NONE {
                self.owner[pivot as usize] = position as u32;
                self.reduced[position] = column;
                return Some(pivot);
            }
            add_into(&mut column, &self.reduced[other as usize], &mut self.scratch);
        }
        None
    }
}

/// Vietoris–Rips persistence of `dm` in degrees `0..=options.max_homology_dim`.
///
/// Columns are reduced one dimension at a time from the top down. A
/// triangle column whose pivot is edge `e` proves the column of `e` reduces
/// to zero, so `e` is skipped when the edges are reduced.
pub fn rips_persistence(dm: &DistanceMatrix, options: &PersistenceOptions) -> Result<PersistenceDiagram> {
    let threshold = options.resolve_threshold(dm)?;
    let n = dm.len();
    let with_h1 = options.max_homology_dim >= 1;
    let higher = higher_simplices(dm, with_h1, threshold);
    let total = n + higher.len();
    let simplex = |pos: usize| -> FiltrationSimplex {
        if pos < n {
            FiltrationSimplex::vertex(pos)
        } else {
            higher[pos - n]
        }
    };

    let mut edge_pos = vec![NONE; n * n];
    for (k, s) in higher.iter().enumerate() {
        if let [i, j] = *s.vertices() {
            edge_pos[i as usize * n + j as usize] = (n + k) as u32;
        }
    }

    let mut reducer = Reducer::new(total);
    let mut pairs = Vec::new();
    let mut edge_paired = vec![false; total];

    if with_h1 {
        for (k, s) in higher.iter().enumerate() {
            let &[i, j, l] = s.vertices() else { continue };
            let (i, j, l) = (i as usize, j as usize, l as usize);
            let mut column = vec![
                edge_pos[i * n + j],
                edge_pos[i * n + l],
                edge_pos[j * n + l],
            ];
            column.sort_unstable();
            if let Some(pivot) = reducer.reduce(n + k, column) {
                edge_paired[pivot as usize] = true;
                let birth = simplex(pivot as usize).diameter;
                pairs.push(PersistencePair::new(1, birth, s.diameter));
            }
        }
    }

    let mut vertex_paired = vec![false; n];
    for (k, s) in higher.iter().enumerate() {
        let &[i, j] = s.vertices() else { continue };
        let position = n + k;
        if edge_paired[position] {
            continue;
        }
        match reducer.reduce(position, vec![i, j]) {
            Some(pivot) => {
                vertex_paired[pivot as usize] = true;
                edge_paired[position] = true;
                pairs.push(PersistencePair::new(0, 0.0, s.diameter));
            }
            None if with_h1 => pairs.push(PersistencePair::new(1, s.diameter, f64::INFINITY)),
            None => {}
        }
    }
    pairs.extend(
        vertex_paired
            .iter()
            .filter(|&&paired| !paired)
            .map(|_| PersistencePair::new(0, 0.0, f64::INFINITY)),
    );

    finish_pairs(&mut pairs, options.keep_zero_bars);
    Ok(PersistenceDiagram {
        pairs,
        metadata: DiagramMetadata::for_matrix(dm, options, threshold),
    })
}
