//! Greedy AAA fit: the interpolatory starting point for the Lawson phase.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::barycentric::BarycentricRational;
use crate::numerics::{smallest_singular_vector, ComplexMatrix};
use crate::samples::SampleSet;
use crate::{rel_tol, Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AaaRecord<T> {
    pub support_index: usize,
    /// Max error over the samples that are not support points.
    pub max_error: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AaaTrace<T> {
    pub records: Vec<AaaRecord<T>>,
    /// The data were matched to `1e-13 max|F|` before `n + 1` points were placed.
    pub early_exact: bool,
}

impl<T: Real> AaaTrace<T> {
    pub fn support_indices(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.support_index).collect()
    }
}

/// Degree-`n` AAA interpolant with exactly `n + 1` greedy support points
/// (fewer only when the data are matched early, see [`AaaTrace::early_exact`]).
pub fn aaa_fit<T: Real>(samples: &SampleSet<T>, degree: usize) -> Result<(BarycentricRational<T>, AaaTrace<T>)> {
    let m = samples.len();
    if m < 2 * degree + 2 {
        return Err(Error::InsufficientSamples {
            degree,
            needed: 2 * degree + 2,
            got: m,
        });
    }
    let z = samples.points();
    let f = samples.values();
    let tol = rel_tol::<T>(1e-13) * samples.max_abs_value();
    let mean = f.iter().fold(Complex::new(T::zero(), T::zero()), |s, v| s + v)
        / T::from_usize(m).expect("sample count fits the scalar type");
    let mut r = vec![mean; m];
    let mut is_support = vec![false; m];
    let mut support = Vec::with_capacity(degree + 1);
    let mut records = Vec::with_capacity(degree + 1);
    let mut weights = Vec::new();
    let mut early_exact = false;

    for it in 0..=degree {
        let mut pick = None;
        let mut best = T::neg_infinity();
        for j in 0..m {
            if is_support[j] {
                continue;
            }
            let e = (f[j] - r[j]).norm();
            let e = if e.is_nan() { T::infinity() } else { e };
            if e > best {
                best = e;
                pick = Some(j);
            }
        }
        let j = pick.expect("non-support samples remain while m < M");
        is_support[j] = true;
        support.push(j);

        let fk: Vec<_> = support.iter().map(|&k| f[k]).collect();
        let a = loewner_matrix(samples, &support, &fk)?;
        let (w, _) = smallest_singular_vector(&a)?;
        weights = w;

        let mut err = T::zero();
        for i in 0..m {
            if is_support[i] {
                r[i] = f[i];
                continue;
            }
            let mut num = Complex::new(T::zero(), T::zero());
            let mut den = num;
            for (&k, w) in support.iter().zip(&weights) {
                let c = w / (z[i] - z[k]);
                num += c * f[k];
                den += c;
            }
            r[i] = num / den;
            let e = (f[i] - r[i]).norm();
            err = if e.is_nan() { T::infinity() } else { err.max(e) };
        }
        records.push(AaaRecord {
            support_index: j,
            max_error: err,
        });
        if err <= tol && it < degree {
            early_exact = true;
            break;
        }
    }

    let t = support.iter().map(|&k| z[k]).collect();
    let fk = support.iter().map(|&k| f[k]).collect();
    let r0 = BarycentricRational::interpolatory(t, fk, weights)?;
    Ok((r0, AaaTrace { records, early_exact }))
}

/// Loewner matrix `(f_j − f_{t_k})/(z_j − t_k)` over the non-support rows.
pub fn loewner_matrix<T: Real>(
    samples: &SampleSet<T>,
    support_indices: &[usize],
    support_values: &[Complex<T>],
) -> Result<ComplexMatrix<T>> {
    let m = samples.len();
    if support_values.len() != support_indices.len() {
        return Err(Error::Dimension(format!(
            "{} support values for {} support indices",
            support_values.len(),
            support_indices.len()
        )));
    }
    let mut is_support = vec![false; m];
    for &k in support_indices {
        if k >= m {
            return Err(Error::Input(format!("support index {k} out of range for {m} samples")));
        }
        if is_support[k] {
            return Err(Error::Input(format!("support index {k} repeated")));
        }
        is_support[k] = true;
    }
    let z = samples.points();
    let f = samples.values();
    let cols = support_indices.len();
    let mut entries = Vec::with_capacity((m - cols) * cols);
    for j in (0..m).filter(|&j| !is_support[j]) {
        for (&k, &fk) in support_indices.iter().zip(support_values) {
            entries.push((f[j] - fk) / (z[j] - z[k]));
        }
    }
    ComplexMatrix::new(m - cols, cols, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn circle(m: usize) -> Vec<Complex<f64>> {
        (1..=m)
            .map(|k| Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64))
            .collect()
    }

    #[test]
    fn loewner_hand_example() {
        let s = SampleSet::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0), c(4.0, 0.0)], false).unwrap();
        let a = loewner_matrix(&s, &[0], &[c(0.0, 0.0)]).unwrap();
        assert_eq!((a.rows(), a.cols()), (2, 1));
        assert_eq!(a[(0, 0)], c(1.0, 0.0));
        assert_eq!(a[(1, 0)], c(2.0, 0.0));
    }

    #[test]
    fn loewner_shape_and_index_checks() {
        let z = circle(500);
        let s = SampleSet::from_fn(z, true, |z| Ok(z.exp())).unwrap();
        let idx = [0, 10, 20, 30, 40, 50];
        let fk: Vec<_> = idx.iter().map(|&k| s.values()[k]).collect();
        let a = loewner_matrix(&s, &idx, &fk).unwrap();
        assert_eq!((a.rows(), a.cols()), (494, 6));
        assert!(loewner_matrix(&s, &[0, 0], &fk[..2]).is_err());
        assert!(loewner_matrix(&s, &[500], &fk[..1]).is_err());
    }

    #[test]
    fn constant_data_degree_zero() {
        let s = SampleSet::from_fn(circle(10), true, |_| Ok(c(3.0, -1.0))).unwrap();
        let (r, trace) = aaa_fit(&s, 0).unwrap();
        assert_eq!(r.degree(), 0);
        assert_eq!(trace.records.len(), 1);
        assert!(trace.records[0].max_error < 1e-14);
        assert!((r.evaluate(c(0.3, 0.3)).value().unwrap() - c(3.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn too_few_samples() {
        let s = SampleSet::from_fn(circle(5), true, Ok).unwrap();
        assert!(matches!(aaa_fit(&s, 2), Err(Error::InsufficientSamples { needed: 6, got: 5, .. })));
    }

    #[test]
    fn low_degree_rational_data_stops_early() {
        let s = SampleSet::from_fn(circle(40), true, |z| Ok(1.0 / (z - 3.0))).unwrap();
        let (r, trace) = aaa_fit(&s, 5).unwrap();
        assert!(trace.early_exact);
        assert_eq!(r.degree(), 1);
    }

    #[test]
    fn interpolates_at_support_points() {
        let s = SampleSet::from_fn(circle(100), true, |z| Ok(z.exp())).unwrap();
        let (r, trace) = aaa_fit(&s, 4).unwrap();
        for (k, &j) in trace.support_indices().iter().enumerate() {
            assert_eq!(r.support_points()[k], s.points()[j]);
            assert_eq!(r.evaluate(s.points()[j]).value().unwrap(), s.values()[j]);
        }
    }
}
