//! End-to-end runs: grid, samples, AAA, Lawson, analysis, report.

use std::path::Path;
use std::time::Instant;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::aaa::aaa_fit;
use crate::barycentric::{max_error, winding_number, BarycentricRational, Eval};
use crate::catalog::{self, FailureClass, Pattern, ProblemEntry};
use crate::io::{ext_f64, ext_f64_vec};
use crate::lawson::{lawson_run, LawsonConfig, StepRule, StopReason};
use crate::samples::SampleSet;
use crate::{Error, Result};

type C64 = Complex<f64>;

/// A pole is spurious (half of a pole-zero doublet) when its residue term
/// stays below `SPURIOUS_RESIDUE` times the max error on the samples and a
/// zero lies within `SPURIOUS_PAIRING` times its distance to the samples.
pub const SPURIOUS_RESIDUE: f64 = 10.0;
pub const SPURIOUS_PAIRING: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    pub nsteps: usize,
    pub exponent: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extend: Option<StepRule<f64>>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            nsteps: 20,
            exponent: 1.0,
            extend: None,
        }
    }
}

impl RunOptions {
    fn config(&self) -> LawsonConfig<f64> {
        LawsonConfig {
            nsteps: self.nsteps,
            update_exponent: self.exponent,
            extend: self.extend,
            ..LawsonConfig::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Overrides {
    pub degree: Option<usize>,
    pub nsteps: Option<usize>,
    pub exponent: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Winding {
    Resolved { value: i64 },
    /// Some error is below 1e-3 of the maximum.
    Undefined,
    /// A phase jump between neighbours reaches π.
    Unresolved,
    /// The samples do not form a closed curve.
    NotClosed,
}

/// Wall-clock seconds per phase. Informational: always compares equal.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct Timings {
    pub samples: f64,
    pub aaa: f64,
    pub lawson: f64,
    pub analysis: f64,
}

impl PartialEq for Timings {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    /// Problem name or input path.
    pub name: String,
    pub degree: usize,
    pub m: usize,
    pub options: RunOptions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(with = "ext_f64")]
    pub aaa_max_error: f64,
    #[serde(with = "ext_f64")]
    pub lawson_max_error: f64,
    pub reverted: bool,
    /// AAA matched the data before placing `degree + 1` support points.
    pub early_exact: bool,
    pub stop: StopReason,
    /// Lawson step whose coefficients were returned.
    pub returned_step: Option<usize>,
    pub rational: BarycentricRational<f64>,
    pub poles: Vec<C64>,
    pub residues: Vec<C64>,
    pub zeros: Vec<C64>,
    pub winding: Winding,
    #[serde(with = "ext_f64_vec")]
    pub history: Vec<f64>,
    pub samples: SampleSet<f64>,
    /// `f − r` at each sample; `None` where `r` is infinite.
    pub errors: Vec<Option<C64>>,
    pub argmax: usize,
    pub failure: Option<FailureClass>,
    #[serde(default)]
    pub checks: Vec<CheckOutcome>,
    pub timings: Timings,
}

impl ApproxReport {
    pub fn checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// AAA followed by Lawson on the given samples.
pub fn run_samples(name: &str, samples: &SampleSet<f64>, degree: usize, options: &RunOptions) -> Result<ApproxReport> {
    let config = options.config();
    let t0 = Instant::now();
    let (r0, trace) = aaa_fit(samples, degree)?;
    let t1 = Instant::now();
    let out = lawson_run(samples, &r0, &config)?;
    let t2 = Instant::now();

    let me = max_error(&out.rational, samples);
    let errors: Vec<Option<C64>> = me
        .errors
        .iter()
        .map(|e| match e {
            Eval::Infinite => None,
            e => e.value(),
        })
        .collect();
    let pr = out.rational.poles()?;
    let winding = if !samples.closed_curve() {
        Winding::NotClosed
    } else if errors.iter().any(Option::is_none) {
        Winding::Undefined
    } else {
        let e: Vec<C64> = errors.iter().map(|e| e.expect("all finite")).collect();
        match winding_number(&e) {
            Ok(value) => Winding::Resolved { value },
            Err(Error::WindingUnresolved(_)) => Winding::Unresolved,
            Err(_) => Winding::Undefined,
        }
    };
    let spurious = spurious_poles(&pr.poles, &pr.residues, &pr.zeros, samples, me.max);
    let failure = diagnose(samples, out.aaa_error, me.max, out.reverted, &out.state.history, &pr.poles, &spurious);
    let t3 = Instant::now();

    Ok(ApproxReport {
        name: name.into(),
        degree,
        m: samples.len(),
        options: options.clone(),
        seed: None,
        aaa_max_error: out.aaa_error,
        lawson_max_error: out.max_error,
        reverted: out.reverted,
        early_exact: trace.early_exact,
        stop: out.stop,
        returned_step: out.returned_step,
        rational: out.rational,
        poles: pr.poles,
        residues: pr.residues,
        zeros: pr.zeros,
        winding,
        history: out.state.history,
        samples: samples.clone(),
        errors,
        argmax: me.argmax,
        failure,
        checks: Vec::new(),
        timings: Timings {
            samples: 0.0,
            aaa: (t1 - t0).as_secs_f64(),
            lawson: (t2 - t1).as_secs_f64(),
            analysis: (t3 - t2).as_secs_f64(),
        },
    })
}

/// Samples of a catalog entry, after applying a seed override.
pub fn problem_samples(entry: &ProblemEntry) -> Result<SampleSet<f64>> {
    if let Some(reason) = &entry.stub {
        return Err(Error::Stub {
            name: entry.name.clone(),
            reason: reason.clone(),
        });
    }
    entry.domain.build::<f64>()?.sample(|z| entry.function.eval(z))
}

/// Runs a catalog problem. Expectations are assessed unless the degree is
/// overridden.
pub fn run_problem(name: &str, overrides: &Overrides) -> Result<ApproxReport> {
    let base = catalog::get(name)?;
    let entry = match overrides.seed {
        Some(seed) => base.with_seed(seed),
        None => base.clone(),
    };
    let t = Instant::now();
    let samples = problem_samples(&entry)?;
    let sample_time = t.elapsed().as_secs_f64();
    let options = RunOptions {
        nsteps: overrides.nsteps.unwrap_or(entry.nsteps),
        exponent: overrides.exponent.unwrap_or(entry.exponent),
        // an explicit step count means exactly that many steps
        extend: if overrides.nsteps.is_some() { None } else { entry.extend },
    };
    let degree = overrides.degree.unwrap_or(entry.degree);
    let mut report = run_samples(&entry.name, &samples, degree, &options)?;
    report.timings.samples = sample_time;
    report.seed = overrides.seed;
    if overrides.degree.is_none() {
        report.checks = assess(&entry, &report)?;
    }
    Ok(report)
}

pub fn run_file(path: &Path, degree: usize, options: &RunOptions) -> Result<ApproxReport> {
    let samples = crate::io::read_samples(path)?;
    run_samples(&path.display().to_string(), &samples, degree, options)
}

fn dist_to_samples(p: C64, samples: &SampleSet<f64>) -> f64 {
    samples.points().iter().map(|z| (z - p).norm()).fold(f64::INFINITY, f64::min)
}

/// Indices of spurious poles, see [`SPURIOUS_RESIDUE`].
pub fn spurious_poles(poles: &[C64], residues: &[C64], zeros: &[C64], samples: &SampleSet<f64>, max_error: f64) -> Vec<usize> {
    poles
        .iter()
        .zip(residues)
        .enumerate()
        .filter(|(_, (&p, res))| {
            let ds = dist_to_samples(p, samples);
            let dz = zeros.iter().map(|z| (z - p).norm()).fold(f64::INFINITY, f64::min);
            res.norm() < SPURIOUS_RESIDUE * max_error * ds && dz <= SPURIOUS_PAIRING * ds
        })
        .map(|(k, _)| k)
        .collect()
}

fn period_two(history: &[f64]) -> bool {
    let n = history.len();
    if n < 8 || history[n - 8..].iter().any(|h| !h.is_finite()) {
        return false;
    }
    (n - 6..n).all(|k| {
        let h = history[k];
        (h - history[k - 2]).abs() <= 1e-3 * h && (h - history[k - 1]).abs() >= 1e-2 * h
    })
}

/// Failure class of a run, or `None` when it succeeded. A run fails when it
/// reverts, ends with an infinite error, or keeps a spurious pole.
pub fn diagnose(
    samples: &SampleSet<f64>,
    aaa_error: f64,
    final_error: f64,
    reverted: bool,
    history: &[f64],
    poles: &[C64],
    spurious: &[usize],
) -> Option<FailureClass> {
    if !(reverted || !final_error.is_finite() || !spurious.is_empty()) {
        return None;
    }
    let scale = samples.max_abs_value();
    if aaa_error <= 1e-12 * scale {
        return Some(FailureClass::NearMachinePrecision);
    }
    if !spurious.is_empty() {
        return Some(FailureClass::Degeneracy);
    }
    if period_two(history) {
        return Some(FailureClass::Oscillation);
    }
    let pts = samples.points();
    let coarse = poles.iter().any(|&p| {
        let (j, d) = pts
            .iter()
            .enumerate()
            .map(|(j, z)| (j, (z - p).norm()))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
        let spacing = pts
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, z)| (z - pts[j]).norm())
            .fold(f64::INFINITY, f64::min);
        d < spacing
    });
    if coarse {
        return Some(FailureClass::CoarseGrid);
    }
    if pts.iter().all(|z| z.im == 0.0) {
        return Some(FailureClass::RealDomain);
    }
    Some(FailureClass::Nonanalytic)
}

/// Compares a report with the entry's expectations.
pub fn assess(entry: &ProblemEntry, report: &ApproxReport) -> Result<Vec<CheckOutcome>> {
    let x = &entry.expected;
    let mut out = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        out.push(CheckOutcome {
            name: name.into(),
            passed,
            detail,
        })
    };
    if let Some(c) = &x.aaa_error {
        push("aaa_error", c.accepts(report.aaa_max_error), format!("{:.6e} vs {:e}", report.aaa_max_error, c.value));
    }
    if let Some(c) = &x.lawson_error {
        push(
            "lawson_error",
            c.accepts(report.lawson_max_error),
            format!("{:.6e} vs {:e}", report.lawson_max_error, c.value),
        );
    }
    if let Some(w) = &x.winding {
        let got = match report.winding {
            Winding::Resolved { value } => Some(value),
            _ => None,
        };
        push("winding", got == Some(w.value), format!("{:?} vs {}", report.winding, w.value));
    }
    for (k, pc) in x.poles.iter().enumerate() {
        let (ok, detail) = pc.assess(&report.poles);
        push(&format!("poles[{k}]"), ok, detail);
    }
    for pc in &x.patterns {
        match &pc.pattern {
            Pattern::Improves => push(
                "improves",
                report.lawson_max_error < report.aaa_max_error,
                format!("{:.4e} -> {:.4e}", report.aaa_max_error, report.lawson_max_error),
            ),
            Pattern::NoRevert => push("no_revert", !report.reverted, format!("reverted = {}", report.reverted)),
            Pattern::RevertsOrFails { class } => push(
                "reverts_or_fails",
                report.reverted || report.failure == Some(*class),
                format!("reverted = {}, failure = {:?}", report.reverted, report.failure),
            ),
            Pattern::EquiError { spread } => {
                let mags: Vec<f64> = report.errors.iter().map(|e| e.map_or(f64::INFINITY, |e| e.norm())).collect();
                let max = mags.iter().cloned().fold(0.0, f64::max);
                let min = mags.iter().cloned().fold(f64::INFINITY, f64::min);
                let s = (max - min) / max;
                push("equi_error", s <= *spread, format!("relative spread {s:.3e}"));
            }
            Pattern::PieceRatio {
                numerator,
                denominator,
                value,
                rel,
            } => {
                let ranges = entry.domain.piece_ranges()?;
                let over = |pieces: &[usize]| {
                    pieces
                        .iter()
                        .flat_map(|&p| ranges[p].clone())
                        .map(|j| report.errors[j].map_or(f64::INFINITY, |e| e.norm()))
                        .fold(0.0, f64::max)
                };
                let r = over(numerator) / over(denominator);
                push(
                    "piece_ratio",
                    (r - value).abs() <= rel * value,
                    format!("{r:.5e} (1/{:.2}) vs {value:.5e}", 1.0 / r),
                );
            }
            Pattern::PolesInside { center, radius } => {
                let worst = report.poles.iter().map(|p| (p - center).norm()).fold(0.0, f64::max);
                push("poles_inside", worst < *radius, format!("max |p - c| = {worst:.4}"));
            }
        }
    }
    Ok(out)
}
