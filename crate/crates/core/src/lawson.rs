//! Linearized barycentric Lawson iteration (iteratively reweighted least
//! squares in the `[α; β]` coefficients).

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::barycentric::{argmax_modulus, max_error, BarycentricRational, Eval};
use crate::numerics::{smallest_singular_vector, ComplexMatrix};
use crate::samples::SampleSet;
use crate::{lit, Error, Real, Result};

/// Keep stepping past `nsteps` while each step still shrinks the max error
/// by at least the factor `ratio`, up to `max_steps` steps in total.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRule<T> {
    pub ratio: T,
    pub max_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawsonConfig<T> {
    pub nsteps: usize,
    pub update_exponent: T,
    /// Starting weights; they also multiply every update, so the iteration
    /// targets `max_j ρ_j |e_j|`.
    pub initial_weights: Option<Vec<T>>,
    pub keep_best: bool,
    pub extend: Option<StepRule<T>>,
}

impl<T: Real> Default for LawsonConfig<T> {
    fn default() -> Self {
        LawsonConfig {
            nsteps: 20,
            update_exponent: T::one(),
            initial_weights: None,
            keep_best: true,
            extend: None,
        }
    }
}

impl<T: Real> LawsonConfig<T> {
    pub fn with_steps(nsteps: usize) -> Self {
        LawsonConfig {
            nsteps,
            ..Self::default()
        }
    }

    fn validate(&self, m: usize) -> Result<()> {
        if !(self.update_exponent > T::zero() && self.update_exponent.is_finite()) {
            return Err(Error::Input("update exponent must be positive".into()));
        }
        if let Some(w) = &self.initial_weights {
            if w.len() != m {
                return Err(Error::Dimension(format!("{} initial weights for {m} samples", w.len())));
            }
            if w.iter().any(|x| !(*x >= T::zero() && x.is_finite())) {
                return Err(Error::Input("initial weights must be finite and nonnegative".into()));
            }
            if w.iter().all(|x| *x == T::zero()) {
                return Err(Error::Input("at least one initial weight must be positive".into()));
            }
        }
        if let Some(rule) = &self.extend {
            if !(rule.ratio > T::zero() && rule.ratio <= T::one()) {
                return Err(Error::Input("step-rule ratio must lie in (0, 1]".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepStatus {
    Updated,
    /// Every positive-weight error vanished; the weights are all zero.
    ConvergedExactly,
    /// The new coefficients gave a non-finite error and were discarded.
    Divergent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawsonState<T> {
    pub weights: Vec<T>,
    pub gamma: Vec<Complex<T>>,
    pub step: usize,
    pub history: Vec<T>,
    /// Errors of `gamma` at the samples.
    #[serde(skip)]
    pub errors: Vec<Eval<T>>,
}

impl<T: Real> LawsonState<T> {
    /// State before the first step, with `r0`'s coefficients.
    pub fn start(samples: &SampleSet<T>, r0: &BarycentricRational<T>, config: &LawsonConfig<T>) -> Result<Self> {
        config.validate(samples.len())?;
        let mut weights = config
            .initial_weights
            .clone()
            .unwrap_or_else(|| vec![T::one(); samples.len()]);
        let wmax = weights.iter().fold(T::zero(), |m, w| m.max(*w));
        for w in weights.iter_mut() {
            *w /= wmax;
        }
        let mut gamma = r0.gamma();
        let nrm = crate::numerics::norm2(&gamma);
        for g in gamma.iter_mut() {
            *g /= nrm;
        }
        Ok(LawsonState {
            weights,
            gamma,
            step: 0,
            history: Vec::new(),
            errors: max_error(r0, samples).errors,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    StepsCompleted,
    ConvergedExactly,
    Stagnated,
    StepCap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>", serialize = "T: Real + Serialize"))]
pub struct LawsonOutcome<T> {
    pub rational: BarycentricRational<T>,
    pub state: LawsonState<T>,
    pub reverted: bool,
    /// (Weighted) max error of `rational` on the samples.
    pub max_error: T,
    pub aaa_error: T,
    /// Step whose coefficients were returned (1-based); `None` for `r0`.
    pub returned_step: Option<usize>,
    pub stop: StopReason,
}

/// Indices of the samples equal to each support point.
pub fn locate_support<T: Real>(samples: &SampleSet<T>, support_points: &[Complex<T>]) -> Result<Vec<usize>> {
    support_points
        .iter()
        .map(|t| {
            samples
                .points()
                .iter()
                .position(|z| z == t)
                .ok_or_else(|| Error::Consistency(format!("support point {t} is not a sample point")))
        })
        .collect()
}

fn check_support<T: Real>(samples: &SampleSet<T>, support_points: &[Complex<T>], support_indices: &[usize]) -> Result<()> {
    if support_points.len() != support_indices.len() {
        return Err(Error::Dimension(format!(
            "{} support points with {} indices",
            support_points.len(),
            support_indices.len()
        )));
    }
    for (t, &j) in support_points.iter().zip(support_indices) {
        if samples.points().get(j) != Some(t) {
            return Err(Error::Consistency(format!("support point {t} is not sample {j}")));
        }
    }
    Ok(())
}

/// `diag(W^{1/2}) [C, −diag(F) C]` with the support rows replaced by
/// `e_k` in the left block and `−f_j e_k` in the right block.
pub fn lawson_matrix<T: Real>(
    samples: &SampleSet<T>,
    support_points: &[Complex<T>],
    support_indices: &[usize],
    weights: &[T],
) -> Result<ComplexMatrix<T>> {
    check_support(samples, support_points, support_indices)?;
    let m = samples.len();
    if weights.len() != m {
        return Err(Error::Dimension(format!("{} weights for {m} samples", weights.len())));
    }
    if weights.iter().any(|w| !(*w >= T::zero() && w.is_finite())) {
        return Err(Error::Input("weights must be finite and nonnegative".into()));
    }
    let n1 = support_points.len();
    let mut special = vec![None; m];
    for (k, &j) in support_indices.iter().enumerate() {
        special[j] = Some(k);
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut entries = vec![zero; m * 2 * n1];
    for (j, ((&z, &f), &w)) in samples.points().iter().zip(samples.values()).zip(weights).enumerate() {
        let s = w.sqrt();
        let row = &mut entries[j * 2 * n1..(j + 1) * 2 * n1];
        match special[j] {
            Some(k) => {
                row[k] = Complex::new(s, T::zero());
                row[n1 + k] = -f * s;
            }
            None => {
                for (k, t) in support_points.iter().enumerate() {
                    let c = (z - t).inv() * s;
                    row[k] = c;
                    row[n1 + k] = -f * c;
                }
            }
        }
    }
    ComplexMatrix::new(m, 2 * n1, entries)
}

/// `e_j = f_j − r_γ(z_j)`, with `f_j − α_k/β_k` at support points.
pub fn nonlinear_errors<T: Real>(
    samples: &SampleSet<T>,
    support_points: &[Complex<T>],
    support_indices: &[usize],
    gamma: &[Complex<T>],
) -> Result<Vec<Eval<T>>> {
    check_support(samples, support_points, support_indices)?;
    let r = BarycentricRational::from_gamma(support_points.to_vec(), gamma)?;
    Ok(max_error(&r, samples).errors)
}

fn objective<T: Real>(errors: &[Eval<T>], rho: Option<&[T]>) -> T {
    match rho {
        None => argmax_modulus(errors).1,
        Some(rho) => errors.iter().zip(rho).fold(T::zero(), |m, (e, &p)| {
            if p == T::zero() {
                m
            } else {
                m.max(e.modulus() * p)
            }
        }),
    }
}

/// One Lawson step: solve the weighted linearized problem, measure the
/// nonlinear error, and reweight `w_j ← w_j (ρ_j |e_j|)^p / max`.
pub fn lawson_step<T: Real>(
    state: &LawsonState<T>,
    samples: &SampleSet<T>,
    support_points: &[Complex<T>],
    support_indices: &[usize],
    config: &LawsonConfig<T>,
) -> Result<(LawsonState<T>, StepStatus)> {
    config.validate(samples.len())?;
    let rho = config.initial_weights.as_deref();
    let a = lawson_matrix(samples, support_points, support_indices, &state.weights)?;
    let (gamma, _) = smallest_singular_vector(&a)?;
    let m = support_points.len();
    let zero = Complex::new(T::zero(), T::zero());
    let errors = if gamma[m..].iter().all(|b| *b == zero) {
        vec![Eval::Infinite; samples.len()]
    } else {
        nonlinear_errors(samples, support_points, support_indices, &gamma)?
    };
    let emax = objective(&errors, rho);

    let mut next = state.clone();
    next.step += 1;
    next.history.push(if emax.is_nan() { T::infinity() } else { emax });

    let (basis, status) = if emax.is_finite() {
        next.gamma = gamma;
        next.errors = errors;
        (&next.errors, StepStatus::Updated)
    } else {
        (&state.errors, StepStatus::Divergent)
    };
    let mut weights = reweight(&state.weights, basis, rho, config.update_exponent);
    let wmax = weights.iter().fold(T::zero(), |mx, w| mx.max(*w));
    let status = if wmax == T::zero() {
        StepStatus::ConvergedExactly
    } else if !wmax.is_finite() {
        return Err(Error::Numerical("Lawson weights overflowed".into()));
    } else {
        for w in weights.iter_mut() {
            *w /= wmax;
        }
        status
    };
    next.weights = weights;
    Ok((next, status))
}

fn reweight<T: Real>(w: &[T], errors: &[Eval<T>], rho: Option<&[T]>, p: T) -> Vec<T> {
    w.iter()
        .zip(errors)
        .enumerate()
        .map(|(j, (&w, e))| {
            if w == T::zero() {
                return T::zero();
            }
            let mut x = e.modulus();
            if let Some(rho) = rho {
                x *= rho[j];
            }
            if p == T::one() {
                w * x
            } else {
                w * x.powf(p)
            }
        })
        .collect()
}

/// Runs the Lawson phase from `r0` and applies the revert rule: if no
/// iterate beats `r0`, `r0` is returned in alpha-beta mode.
pub fn lawson_run<T: Real>(
    samples: &SampleSet<T>,
    r0: &BarycentricRational<T>,
    config: &LawsonConfig<T>,
) -> Result<LawsonOutcome<T>> {
    let mut state = LawsonState::start(samples, r0, config)?;
    let rho = config.initial_weights.as_deref();
    let aaa_error = objective(&state.errors, rho);
    if config.nsteps == 0 {
        return Ok(LawsonOutcome {
            rational: r0.clone(),
            state,
            reverted: false,
            max_error: aaa_error,
            aaa_error,
            returned_step: None,
            stop: StopReason::StepsCompleted,
        });
    }
    let support = r0.support_points();
    let indices = locate_support(samples, support)?;
    let cap = config.extend.map_or(config.nsteps, |r| r.max_steps.max(config.nsteps));

    let mut best: Option<(T, usize, Vec<Complex<T>>)> = None;
    let mut last_finite: Option<(T, usize, Vec<Complex<T>>)> = None;
    let stop = loop {
        let (next, status) = lawson_step(&state, samples, support, &indices, config)?;
        state = next;
        let k = state.step;
        let err = *state.history.last().expect("one entry per step");
        if status != StepStatus::Divergent {
            if best.as_ref().is_none_or(|b| err < b.0) {
                best = Some((err, k, state.gamma.clone()));
            }
            last_finite = Some((err, k, state.gamma.clone()));
        }
        if status == StepStatus::ConvergedExactly {
            break StopReason::ConvergedExactly;
        }
        if k < config.nsteps {
            continue;
        }
        let Some(rule) = config.extend else {
            break StopReason::StepsCompleted;
        };
        if k >= cap {
            break StopReason::StepCap;
        }
        let h = &state.history;
        if !(h.len() >= 2 && h[k - 1] < h[k - 2] * rule.ratio) {
            break StopReason::Stagnated;
        }
    };

    let candidate = if config.keep_best { best } else { last_finite };
    match candidate {
        Some((err, k, gamma)) if err < aaa_error => Ok(LawsonOutcome {
            rational: BarycentricRational::from_gamma(support.to_vec(), &gamma)?,
            state,
            reverted: false,
            max_error: err,
            aaa_error,
            returned_step: Some(k),
            stop,
        }),
        _ => Ok(LawsonOutcome {
            rational: r0.to_alpha_beta(),
            state,
            reverted: true,
            max_error: aaa_error,
            aaa_error,
            returned_step: None,
            stop,
        }),
    }
}

/// Default extension used by catalog entries whose reference values were
/// obtained with more than the default step count.
pub fn until_stagnation<T: Real>() -> StepRule<T> {
    StepRule {
        ratio: lit(0.999),
        max_steps: 1000,
    }
}
