//! Hilbert series truncated at a degree bound, the common currency of every
//! isomorphism check in the crate.

use serde::Serialize;

/// Graded dimensions in degrees `0..=bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct HilbertSeries(Vec<u64>);

impl HilbertSeries {
    pub fn new(dims: Vec<u64>) -> Self {
        HilbertSeries(dims)
    }

    pub fn zeros(bound: u32) -> Self {
        HilbertSeries(vec![0; bound as usize + 1])
    }

    /// The indicator of degrees satisfying `pred`.
    pub fn indicator(bound: u32, pred: impl Fn(u32) -> bool) -> Self {
        HilbertSeries((0..=bound).map(|d| pred(d) as u64).collect())
    }

    /// Series of a polynomial algebra on generators of the given degrees.
    pub fn polynomial(generator_degrees: &[u32], bound: u32) -> Self {
        let mut dims = vec![0u64; bound as usize + 1];
        dims[0] = 1;
        for &g in generator_degrees.iter().filter(|&&g| g >= 1 && g <= bound) {
            for d in g as usize..dims.len() {
                dims[d] += dims[d - g as usize];
            }
        }
        HilbertSeries(dims)
    }

    pub fn bound(&self) -> u32 {
        self.0.len() as u32 - 1
    }

    pub fn dims(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, degree: u32) -> u64 {
        self.0.get(degree as usize).copied().unwrap_or(0)
    }

    pub fn truncate(&self, bound: u32) -> Self {
        HilbertSeries(self.0.iter().take(bound as usize + 1).copied().collect())
    }

    /// Degree-wise sum; the result has the shorter bound.
    pub fn sum(&self, other: &HilbertSeries) -> Self {
        HilbertSeries(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// The series shifted up by `k` degrees (suspension), same bound.
    pub fn shift(&self, k: u32) -> Self {
        let n = self.0.len();
        let mut dims = vec![0; n];
        for (d, &v) in self.0.iter().enumerate() {
            if d + (k as usize) < n {
                dims[d + k as usize] = v;
            }
        }
        HilbertSeries(dims)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SeriesComparison {
    Equal { through: u32 },
    Disagree { degree: u32, left: u64, right: u64 },
    BoundMismatch { left: u32, right: u32 },
}

impl SeriesComparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, SeriesComparison::Equal { .. })
    }

    pub fn witness_degree(&self) -> Option<u32> {
        match self {
            SeriesComparison::Disagree { degree, .. } => Some(*degree),
            _ => None,
        }
    }
}

/// First degree where the two series differ, or equality through the bound.
pub fn compare_series(a: &HilbertSeries, b: &HilbertSeries) -> SeriesComparison {
    if a.bound() != b.bound() {
        return SeriesComparison::BoundMismatch {
            left: a.bound(),
            right: b.bound(),
        };
    }
    match a.0.iter().zip(&b.0).position(|(x, y)| x != y) {
        None => SeriesComparison::Equal { through: a.bound() },
        Some(d) => SeriesComparison::Disagree {
            degree: d as u32,
            left: a.0[d],
            right: b.0[d],
        },
    }
}
