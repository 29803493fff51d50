//! Time-delay (Takens) embedding of a scalar series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Embedding dimension `m` and delay `τ`, both at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DelayParams {
    pub dimension: usize,
    pub delay: usize,
}

impl DelayParams {
    pub fn new(dimension: usize, delay: usize) -> Result<Self> {
        if dimension == 0 || delay == 0 {
            return Err(Error::InvalidDelayParams { dimension, delay });
        }
        Ok(DelayParams { dimension, delay })
    }

    /// Shortest series that yields at least one point: `(m − 1)·τ + 1`.
    pub fn min_series_len(&self) -> usize {
        (self.dimension - 1) * self.delay + 1
    }

    /// Number of points produced from a series of length `n`.
    pub fn point_count(&self, n: usize) -> usize {
        n.saturating_sub(self.min_series_len() - 1)
    }
}

impl Default for DelayParams {
    fn default() -> Self {
        DelayParams {
            dimension: 2,
            delay: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub points: Vec<Vec<f64>>,
    pub params: DelayParams,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Point `i` is `(s[i], s[i+τ], …, s[i+(m−1)τ])`; the window advances by one.
pub fn takens_embed(series: &[f64], params: DelayParams) -> Result<PointCloud> {
    DelayParams::new(params.dimension, params.delay)?;
    let required = params.min_series_len();
    if series.len() < required {
        return Err(Error::SeriesTooShort {
            length: series.len(),
            required,
        });
    }
    let points = (0..params.point_count(series.len()))
        .map(|i| {
            (0..params.dimension)
                .map(|k| series[i + k * params.delay])
                .collect()
        })
        .collect();
    Ok(PointCloud { points, params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(m: usize, tau: usize) -> DelayParams {
        DelayParams::new(m, tau).unwrap()
    }

    #[test]
    fn unrolled_definition() {
        let cloud = takens_embed(&[1.0, 2.0, 3.0, 4.0, 5.0], p(2, 2)).unwrap();
        assert_eq!(
            cloud.points,
            vec![vec![1.0, 3.0], vec![2.0, 4.0], vec![3.0, 5.0]]
        );
    }

    #[test]
    fn dimension_one_is_identity() {
        let s = [0.5, -1.0, 2.0];
        for tau in 1..4 {
            let cloud = takens_embed(&s, p(1, tau)).unwrap();
            assert_eq!(cloud.points, vec![vec![0.5], vec![-1.0], vec![2.0]]);
        }
    }

    #[test]
    fn too_short() {
        assert!(matches!(
            takens_embed(&[1.0, 2.0, 3.0, 4.0], p(3, 2)),
            Err(Error::SeriesTooShort { length: 4, required: 5 })
        ));
    }

    #[test]
    fn invalid_params() {
        assert!(DelayParams::new(0, 1).is_err());
        assert!(DelayParams::new(1, 0).is_err());
        let bad = DelayParams { dimension: 2, delay: 0 };
        assert!(matches!(takens_embed(&[1.0; 4], bad), Err(Error::InvalidDelayParams { .. })));
    }

    #[test]
    fn circle_recovery() {
        let period = 20usize;
        let series: Vec<f64> = (0..5 * period)
            .map(|t| (2.0 * std::f64::consts::PI * t as f64 / period as f64).sin())
            .collect();
        let cloud = takens_embed(&series, p(2, period / 4)).unwrap();
        for point in &cloud.points {
            let r = (point[0] * point[0] + point[1] * point[1]).sqrt();
            assert!((r - 1.0).abs() < 1e-9, "radius {r}");
        }
    }

    proptest! {
        #[test]
        fn count_and_bookkeeping(
            series in prop::collection::vec(-100.0f64..100.0, 1..80),
            m in 1usize..6,
            tau in 1usize..6,
        ) {
            let params = p(m, tau);
            match takens_embed(&series, params) {
                Ok(cloud) => {
                    prop_assert_eq!(cloud.len(), series.len() - (m - 1) * tau);
                    for (i, point) in cloud.points.iter().enumerate() {
                        prop_assert_eq!(point.len(), m);
                        for (k, &x) in point.iter().enumerate() {
                            prop_assert_eq!(x, series[i + k * tau]);
                        }
                    }
                }
                Err(Error::SeriesTooShort { required, .. }) => {
                    prop_assert!(series.len() < (m - 1) * tau + 1);
                    prop_assert_eq!(required, (m - 1) * tau + 1);
                }
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }
}
