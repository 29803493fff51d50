use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::persistence::PersistenceDiagram;

/// One side of a matched pair: an index into a diagram's `pairs`, or the
/// diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchEnd {
    Point(usize),
    Diagonal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub a: MatchEnd,
    pub b: MatchEnd,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BottleneckResult {
    pub homology_dimension: usize,
    /// `f64::INFINITY` when the essential classes cannot be matched.
    #[serde(with = "infinite_as_null")]
    pub distance: f64,
    pub infinite: bool,
    pub matched_pairs: Vec<MatchedPair>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

mod infinite_as_null {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        v.is_finite().then_some(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn to_diagonal(p: (f64, f64)) -> f64 {
    (p.1 - p.0) / 2.0
}

/// Exact bottleneck distance between the degree-`homology_dimension` parts of
/// two diagrams.
///
/// Essential classes are matched among themselves by sorted birth; a
/// different number of them gives an infinite distance. Finite points use the
/// L∞ metric and may be sent to the diagonal at half their persistence. The
/// finite part is solved exactly by binary search over all candidate costs,
/// testing each with a maximum bipartite matching.
pub fn bottleneck_distance(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    homology_dimension: usize,
) -> BottleneckResult {
    let mut warnings = Vec::new();
    for (name, d) in [("first", a), ("second", b)] {
        if d.metadata.max_homology_dim < homology_dimension {
            warnings.push(format!(
                "{name} diagram was computed up to degree {}, compared in degree {homology_dimension}",
                d.metadata.max_homology_dim
            ));
        }
    }

    let split = |d: &PersistenceDiagram| {
        let mut finite = Vec::new();
        let mut essential = Vec::new();
        for (i, p) in d.pairs.iter().enumerate() {
            if p.homology_dimension != homology_dimension {
                continue;
            }
            if p.is_essential() {
                essential.push((i, p.birth));
            } else {
                finite.push((i, (p.birth, p.death)));
            }
        }
        essential.sort_by(|x, y| x.1.total_cmp(&y.1).then(x.0.cmp(&y.0)));
        (finite, essential)
    };
    let (fa, ea) = split(a);
    let (fb, eb) = split(b);

    if ea.len() != eb.len() {
        warnings.push(format!(
            "essential class counts differ ({} vs {})",
            ea.len(),
            eb.len()
        ));
        return BottleneckResult {
            homology_dimension,
            distance: f64::INFINITY,
            infinite: true,
            matched_pairs: Vec::new(),
            warnings,
        };
    }

    let mut matched_pairs: Vec<MatchedPair> = ea
        .iter()
        .zip(&eb)
        .map(|(x, y)| MatchedPair {
            a: MatchEnd::Point(x.0),
            b: MatchEnd::Point(y.0),
            cost: (x.1 - y.1).abs(),
        })
        .collect();
    matched_pairs.extend(finite_matching(&fa, &fb));
    let distance = matched_pairs.iter().map(|m| m.cost).fold(0.0, f64::max);

    BottleneckResult {
        homology_dimension,
        distance,
        infinite: false,
        matched_pairs,
        warnings,
    }
}

/// Optimal bottleneck matching of finite points, diagonal-to-diagonal
/// matches omitted.
fn finite_matching(fa: &[(usize, (f64, f64))], fb: &[(usize, (f64, f64))]) -> Vec<MatchedPair> {
    let (p, q) = (fa.len(), fb.len());
    let size = p + q;
    if size == 0 {
        return Vec::new();
    }
    // Left: A points, then one diagonal copy per B point.
    // Right: B points, then one diagonal copy per A point.
    let cost = |l: usize, r: usize| -> Option<f64> {
        match (l < p, r < q) {
            (true, true) => Some(linf(fa[l].1, fb[r].1)),
            (true, false) => (r - q == l).then(|| to_diagonal(fa[l].1)),
            (false, true) => (l - p == r).then(|| to_diagonal(fb[r].1)),
            (false, false) => Some(0.0),
        }
    };

    let mut candidates: Vec<f64> = (0..size)
        .flat_map(|l| (0..size).filter_map(move |r| cost(l, r)))
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let solve = |limit: f64| -> Option<Vec<usize>> {
        let adjacency: Vec<Vec<usize>> = (0..size)
            .map(|l| (0..size).filter(|&r| cost(l, r).is_some_and(|c| c <= limit)).collect())
            .collect();
        hopcroft_karp(&adjacency, size)
    };

    // The largest candidate always admits a perfect matching.
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    let mut best = solve(candidates[hi]).expect("complete bipartite graph has a perfect matching");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match solve(candidates[mid]) {
            Some(m) => {
                best = m;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }

    best.iter()
        .enumerate()
        .filter(|&(l, &r)| l < p || r < q)
        .map(|(l, &r)| MatchedPair {
            a: if l < p { MatchEnd::Point(fa[l].0) } else { MatchEnd::Diagonal },
            b: if r < q { MatchEnd::Point(fb[r].0) } else { MatchEnd::Diagonal },
            cost: cost(l, r).unwrap_or(0.0),
        })
        .collect()
}

/// Maximum matching on a bipartite graph with `size` nodes per side.
/// Returns `match_of_left` if the matching is perfect.
fn hopcroft_karp(adjacency: &[Vec<usize>], size: usize) -> Option<Vec<usize>> {
    const FREE: usize = usize::MAX;
    let mut left_match = vec![FREE; size];
    let mut right_match = vec![FREE; size];
    let mut layer = vec![0usize; size];

    loop {
        // BFS from free left nodes builds the layered graph.
        let mut queue = VecDeque::new();
        for l in 0..size {
            if left_match[l] == FREE {
                layer[l] = 0;
                queue.push_back(l);
            } else {
                layer[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adjacency[l] {
                let next = right_match[r];
                if next == FREE {
                    found = true;
                } else if layer[next] == usize::MAX {
                    layer[next] = layer[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..size {
            if left_match[l] == FREE {
                augment(l, adjacency, &mut left_match, &mut right_match, &mut layer);
            }
        }
    }

    left_match.iter().all(|&r| r != FREE).then_some(left_match)
}

fn augment(
    l: usize,
    adjacency: &[Vec<usize>],
    left_match: &mut [usize],
    right_match: &mut [usize],
    layer: &mut [usize],
) -> bool {
    for &r in &adjacency[l] {
        let next = right_match[r];
        let ok = next == usize::MAX
            || (layer[next] == layer[l] + 1 && augment(next, adjacency, left_match, right_match, layer));
        if ok {
            left_match[l] = r;
            right_match[r] = l;
            return true;
        }
    }
    layer[l] = usize::MAX;
    false
}
