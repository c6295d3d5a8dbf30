use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::{Error, Real, Result};

/// Sample points `z_j` with values `f_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SampleRepr<T>", into = "SampleRepr<T>")]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>", serialize = "T: Real + Serialize"))]
pub struct SampleSet<T> {
    points: Vec<Complex<T>>,
    values: Vec<Complex<T>>,
    closed_curve: bool,
}

#[derive(Serialize, Deserialize)]
struct SampleRepr<T> {
    points: Vec<Complex<T>>,
    values: Vec<Complex<T>>,
    #[serde(default)]
    closed_curve: bool,
}

impl<T: Real> TryFrom<SampleRepr<T>> for SampleSet<T> {
    type Error = Error;
    fn try_from(r: SampleRepr<T>) -> Result<Self> {
        SampleSet::new(r.points, r.values, r.closed_curve)
    }
}

impl<T: Real> From<SampleSet<T>> for SampleRepr<T> {
    fn from(s: SampleSet<T>) -> Self {
        SampleRepr {
            points: s.points,
            values: s.values,
            closed_curve: s.closed_curve,
        }
    }
}

impl<T: Real> SampleSet<T> {
    pub fn new(points: Vec<Complex<T>>, values: Vec<Complex<T>>, closed_curve: bool) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::Dimension(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        if points.is_empty() {
            return Err(Error::Input("sample set is empty".into()));
        }
        if let Some(j) = points.iter().position(|z| !finite(*z)) {
            return Err(Error::Input(format!("sample point {j} is not finite")));
        }
        if let Some(j) = values.iter().position(|z| !finite(*z)) {
            return Err(Error::Input(format!("sample value {j} is not finite")));
        }
        let dups = duplicate_pairs(&points);
        if let Some(&(i, j)) = dups.first() {
            return Err(Error::Input(format!(
                "sample points {i} and {j} coincide ({} duplicate pairs)",
                dups.len()
            )));
        }
        Ok(SampleSet {
            points,
            values,
            closed_curve,
        })
    }

    /// Samples `f` at the given points; fails on the first non-finite value.
    pub fn from_fn(
        points: Vec<Complex<T>>,
        closed_curve: bool,
        mut f: impl FnMut(Complex<T>) -> Result<Complex<T>>,
    ) -> Result<Self> {
        let values = points
            .iter()
            .enumerate()
            .map(|(j, &z)| {
                let v = f(z)?;
                if finite(v) {
                    Ok(v)
                } else {
                    Err(Error::Evaluation(format!("non-finite function value at sample {j} ({z})")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SampleSet::new(points, values, closed_curve)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Complex<T>] {
        &self.points
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn closed_curve(&self) -> bool {
        self.closed_curve
    }

    pub fn max_abs_value(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }
}

pub(crate) fn finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Index pairs `(i, j)`, `i < j`, of exactly equal points.
pub(crate) fn duplicate_pairs<T: Real>(points: &[Complex<T>]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (points[a], points[b]);
        p.re.partial_cmp(&q.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(p.im.partial_cmp(&q.im).unwrap_or(std::cmp::Ordering::Equal))
            .then(a.cmp(&b))
    });
    let mut out = Vec::new();
    for w in order.windows(2) {
        if points[w[0]] == points[w[1]] {
            out.push((w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn rejects_duplicates_and_mismatch() {
        let p = vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let err = SampleSet::new(p.clone(), vec![c(1.0, 0.0); 3], false).unwrap_err();
        assert!(err.to_string().contains("0 and 2"), "{err}");
        assert!(SampleSet::new(p, vec![c(1.0, 0.0); 2], false).is_err());
        assert!(SampleSet::<f64>::new(vec![], vec![], false).is_err());
    }

    #[test]
    fn json_round_trip_validates() {
        let s = SampleSet::new(vec![c(0.5, 1.0), c(-1.0, 0.25)], vec![c(2.0, 0.0), c(0.0, -3.0)], true).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"points":[[0.5,1.0],[-1.0,0.25]],"values":[[2.0,0.0],[0.0,-3.0]],"closed_curve":true}"#);
        let back: SampleSet<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"points":[[0,0],[0,0]],"values":[[1,0],[1,0]]}"#;
        assert!(serde_json::from_str::<SampleSet<f64>>(bad).is_err());
    }

    #[test]
    fn from_fn_rejects_non_finite_values() {
        let err = SampleSet::from_fn(vec![c(0.0, 0.0), c(1.0, 0.0)], false, |z| Ok(Complex::new(1.0, 0.0) / z)).unwrap_err();
        assert!(matches!(err, Error::Evaluation(_)));
    }
}
