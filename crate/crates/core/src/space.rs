use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpaceError {
    #[error("bounds have mismatched lengths (lower {lower}, upper {upper}, names {names})")]
    LengthMismatch { lower: usize, upper: usize, names: usize },
    #[error("dimension {index} ({name}) has lower bound {lower} not below upper bound {upper}")]
    EmptyInterval {
        index: usize,
        name: String,
        lower: f64,
        upper: f64,
    },
    #[error("search space has no dimensions")]
    Empty,
}

/// Axis-aligned box of admissible decision vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace", into = "RawSpace")]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
    dimension_names: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
    #[serde(default)]
    dimension_names: Vec<String>,
}

impl TryFrom<RawSpace> for SearchSpace {
    type Error = SpaceError;

    fn try_from(raw: RawSpace) -> Result<Self, SpaceError> {
        let names = if raw.dimension_names.is_empty() {
            (0..raw.lower.len()).map(|i| format!("x{}", i + 1)).collect()
        } else {
            raw.dimension_names
        };
        SearchSpace::new(raw.lower, raw.upper, names)
    }
}

impl From<SearchSpace> for RawSpace {
    fn from(s: SearchSpace) -> Self {
        RawSpace {
            lower: s.lower,
            upper: s.upper,
            dimension_names: s.dimension_names,
        }
    }
}

impl SearchSpace {
    pub fn new(
        lower: Vec<f64>,
        upper: Vec<f64>,
        dimension_names: Vec<String>,
    ) -> Result<Self, SpaceError> {
        if lower.len() != upper.len() || lower.len() != dimension_names.len() {
            return Err(SpaceError::LengthMismatch {
                lower: lower.len(),
                upper: upper.len(),
                names: dimension_names.len(),
            });
        }
        if lower.is_empty() {
            return Err(SpaceError::Empty);
        }
        for (i, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            // Also rejects NaN and infinite bounds.
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(SpaceError::EmptyInterval {
                    index: i,
                    name: dimension_names[i].clone(),
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Self {
            lower,
            upper,
            dimension_names,
        })
    }

    /// The same interval repeated `dim` times.
    pub fn cube(dim: usize, lower: f64, upper: f64) -> Result<Self, SpaceError> {
        Self::new(
            vec![lower; dim],
            vec![upper; dim],
            (0..dim).map(|i| format!("x{}", i + 1)).collect(),
        )
    }

    /// Default controller bounds: gain in [1, 50], lead in [0.1, 1], lag in [0.01, 0.1].
    pub fn lead_lag_default() -> Self {
        Self::new(
            vec![1.0, 0.1, 0.01],
            vec![50.0, 1.0, 0.1],
            vec!["kc".into(), "t1".into(), "t2".into()],
        )
        .expect("default bounds are valid")
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn dimension_names(&self) -> &[String] {
        &self.dimension_names
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }

    pub fn clamp_in_place(&self, x: &mut [f64]) {
        for (v, (&lo, &hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            // NaN maps to the lower bound so it never escapes the box.
            *v = if v.is_nan() { lo } else { v.clamp(lo, hi) };
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| rng.random_range(lo..=hi))
            .collect()
    }

    pub fn sample_dimension<R: Rng + ?Sized>(&self, index: usize, rng: &mut R) -> f64 {
        rng.random_range(self.lower[index]..=self.upper[index])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn rejects_inverted_or_degenerate_bounds() {
        assert!(matches!(
            SearchSpace::new(vec![1.0], vec![1.0], vec!["a".into()]),
            Err(SpaceError::EmptyInterval { index: 0, .. })
        ));
        assert!(SearchSpace::new(vec![0.0, 2.0], vec![1.0, 1.0], vec!["a".into(), "b".into()]).is_err());
        assert!(SearchSpace::new(vec![f64::NAN], vec![1.0], vec!["a".into()]).is_err());
        assert!(matches!(SearchSpace::cube(0, 0.0, 1.0), Err(SpaceError::Empty)));
        assert!(matches!(
            SearchSpace::new(vec![0.0], vec![1.0, 2.0], vec!["a".into()]),
            Err(SpaceError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn lead_lag_defaults() {
        let s = SearchSpace::lead_lag_default();
        assert_eq!(s.dimension(), 3);
        assert_eq!(s.lower(), &[1.0, 0.1, 0.01]);
        assert_eq!(s.upper(), &[50.0, 1.0, 0.1]);
    }

    #[test]
    fn clamp_and_sample_stay_inside() {
        let s = SearchSpace::cube(3, -1.0, 2.0).unwrap();
        let mut x = vec![-7.0, f64::NAN, 9.0];
        s.clamp_in_place(&mut x);
        assert_eq!(x, vec![-1.0, -1.0, 2.0]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert!(s.contains(&s.sample(&mut rng)));
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s: SearchSpace = serde_json::from_str(r#"{"lower":[0,0],"upper":[1,2]}"#).unwrap();
        assert_eq!(s.dimension_names(), &["x1".to_string(), "x2".to_string()]);
        assert!(serde_json::from_str::<SearchSpace>(r#"{"lower":[3],"upper":[1]}"#).is_err());
        assert!(serde_json::from_str::<SearchSpace>(r#"{"lower":[0],"upper":[1],"x":1}"#).is_err());
    }
}
