//! Registry of reference problems with their expected outcomes.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::domains::{DomainSpec, Law, Piece};
use crate::functions::FunctionDescriptor;
use crate::lawson::StepRule;
use crate::{Error, Result};

type C64 = Complex<f64>;

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Printed in the published example.
    Published,
    /// Computed here by an independent reconstruction.
    Reconstructed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tolerance {
    /// `|x − value| ≤ rel·value`
    Relative(f64),
    /// `value/k ≤ x ≤ k·value`
    Factor(f64),
    Range { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorCheck {
    pub value: f64,
    pub tolerance: Tolerance,
    /// Known lower bound that no computed error may beat.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub floor: Option<f64>,
    pub source: Source,
}

impl ErrorCheck {
    fn published(value: f64, tolerance: Tolerance) -> Self {
        ErrorCheck {
            value,
            tolerance,
            floor: None,
            source: Source::Published,
        }
    }

    fn floor(mut self, floor: f64) -> Self {
        self.floor = Some(floor);
        self
    }

    pub fn accepts(&self, x: f64) -> bool {
        let ok = match self.tolerance {
            Tolerance::Relative(r) => (x - self.value).abs() <= r * self.value.abs(),
            Tolerance::Factor(k) => x >= self.value / k && x <= self.value * k,
            Tolerance::Range { lo, hi } => x >= lo && x <= hi,
        };
        ok && self.floor.is_none_or(|f| x >= f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingCheck {
    pub value: i64,
    pub source: Source,
}

/// A printed number and the significant digits it is trusted to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Printed {
    pub value: f64,
    pub digits: u32,
}

impl Printed {
    /// Digits counted from the literal, e.g. `"1.0085"` has 5.
    pub fn parse(text: &str) -> Self {
        let value: f64 = text.parse().expect("printed literal");
        let mantissa = text.split(['e', 'E']).next().unwrap_or(text);
        let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
        let digits = digits.trim_start_matches('0').len().max(1) as u32;
        Printed { value, digits }
    }

    pub fn with_digits(value: f64, digits: u32) -> Self {
        Printed { value, digits }
    }

    /// Half a unit in the last trusted digit.
    pub fn half_unit(&self) -> f64 {
        let e = self.value.abs().log10().floor() as i32;
        0.5 * 10f64.powi(e + 1 - self.digits as i32)
    }

    /// `x` rounds to the printed value.
    pub fn matches(&self, x: f64) -> bool {
        (x - self.value).abs() <= self.half_unit() * (1.0 + 1e-9)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PoleMeasure {
    /// Each signed real target has a pole within tolerance.
    RealPoints,
    /// Pole moduli, sorted and grouped by `multiplicity`.
    Modulus,
    /// Distances to a point, sorted and grouped by `multiplicity`.
    DistanceTo { point: C64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleCheck {
    pub measure: PoleMeasure,
    pub values: Vec<Printed>,
    #[serde(default = "one")]
    pub multiplicity: usize,
    /// Largest allowed `|Re p|/|Im p|` (poles on the imaginary axis).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imaginary_axis: Option<f64>,
    pub source: Source,
}

fn one() -> usize {
    1
}

impl PoleCheck {
    /// Pass flag and a one-line account of the comparison.
    pub fn assess(&self, poles: &[C64]) -> (bool, String) {
        let mut ok = true;
        let mut notes = Vec::new();
        if let Some(ratio) = self.imaginary_axis {
            let worst = poles
                .iter()
                .map(|p| p.re.abs() / p.im.abs())
                .fold(0.0f64, |a, b| if b.is_nan() { f64::INFINITY } else { a.max(b) });
            ok &= worst <= ratio;
            notes.push(format!("max |Re|/|Im| {worst:.2e}"));
        }
        match &self.measure {
            PoleMeasure::RealPoints => {
                for t in &self.values {
                    let best = poles
                        .iter()
                        .map(|p| (p - t.value).norm())
                        .fold(f64::INFINITY, f64::min);
                    let hit = best <= t.half_unit() * (1.0 + 1e-9);
                    ok &= hit;
                    if !hit {
                        notes.push(format!("{} off by {best:.2e}", t.value));
                    }
                }
            }
            PoleMeasure::Modulus | PoleMeasure::DistanceTo { .. } => {
                let origin = match self.measure {
                    PoleMeasure::DistanceTo { point } => point,
                    _ => C64::new(0.0, 0.0),
                };
                let mut d: Vec<f64> = poles.iter().map(|p| (p - origin).norm()).collect();
                d.sort_by(f64::total_cmp);
                let mut want: Vec<Printed> = self.values.clone();
                want.sort_by(|a, b| a.value.total_cmp(&b.value));
                let need = want.len() * self.multiplicity;
                if d.len() != need {
                    ok = false;
                    notes.push(format!("{} poles, expected {need}", d.len()));
                }
                for (g, t) in d.chunks(self.multiplicity).zip(&want) {
                    for &x in g {
                        if !t.matches(x) {
                            ok = false;
                            notes.push(format!("{x:.4e} vs {}", t.value));
                        }
                    }
                }
            }
        }
        if ok && notes.is_empty() {
            notes.push(format!("{} values matched", self.values.len()));
        }
        (ok, notes.join("; "))
    }
}

/// Failure taxonomy for runs that revert, diverge, or leave spurious poles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureClass {
    CoarseGrid,
    NearMachinePrecision,
    Degeneracy,
    Nonanalytic,
    RealDomain,
    Oscillation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pattern {
    /// Lawson strictly improves on AAA.
    Improves,
    /// The run does not revert to the AAA result.
    NoRevert,
    RevertsOrFails { class: FailureClass },
    /// Every sample error is within `spread` (relative) of the maximum.
    EquiError { spread: f64 },
    /// `max|e|` over the `numerator` pieces divided by that over the
    /// `denominator` pieces equals `value` within `rel`.
    PieceRatio {
        numerator: Vec<usize>,
        denominator: Vec<usize>,
        value: f64,
        rel: f64,
    },
    /// All poles strictly inside `|z − center| < radius`.
    PolesInside { center: C64, radius: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternCheck {
    pub pattern: Pattern,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aaa_error: Option<ErrorCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lawson_error: Option<ErrorCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub winding: Option<WindingCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub poles: Vec<PoleCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub patterns: Vec<PatternCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemEntry {
    pub name: String,
    pub description: String,
    pub function: FunctionDescriptor,
    pub domain: DomainSpec,
    pub degree: usize,
    pub nsteps: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extend: Option<StepRule<f64>>,
    pub exponent: f64,
    pub expected: Expected,
    /// Set for problems that need external data; running them is an error.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stub: Option<String>,
}

impl ProblemEntry {
    fn new(name: &str, description: &str, function: FunctionDescriptor, domain: DomainSpec, degree: usize) -> Self {
        ProblemEntry {
            name: name.into(),
            description: description.into(),
            function,
            domain,
            degree,
            nsteps: 20,
            extend: None,
            exponent: 1.0,
            expected: Expected::default(),
            stub: None,
        }
    }

    fn stub(name: &str, description: &str, reason: &str) -> Self {
        let mut e = ProblemEntry::new(name, description, FunctionDescriptor::Exp, DomainSpec::new(vec![]), 0);
        e.stub = Some(reason.into());
        e
    }

    fn expect(mut self, expected: Expected) -> Self {
        self.expected = expected;
        self
    }

    /// Replaces the seed of every random piece.
    pub fn with_seed(&self, seed: u64) -> ProblemEntry {
        let mut e = self.clone();
        for p in &mut e.domain.pieces {
            if let Piece::RandomRectangle { seed: s, .. } = p {
                *s = seed;
            }
        }
        e
    }

    pub fn is_stub(&self) -> bool {
        self.stub.is_some()
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn circle(radius: f64, npts: usize) -> Piece {
    Piece::Circle {
        center: c(0.0, 0.0),
        radius,
        npts,
        law: Law::Equispaced,
    }
}

fn segment(a: f64, b: f64, npts: usize, law: Law) -> Piece {
    Piece::Segment {
        a: c(a, 0.0),
        b: c(b, 0.0),
        npts,
        law,
    }
}

fn arc(center: f64, theta0: f64, theta1: f64, npts: usize, law: Law, skip_first: bool) -> Piece {
    Piece::Arc {
        center: c(center, 0.0),
        radius: 1.0,
        theta0,
        theta1,
        npts,
        law,
        skip_first,
    }
}

fn pattern(pattern: Pattern) -> PatternCheck {
    PatternCheck {
        pattern,
        source: Source::Published,
    }
}

fn improves() -> Expected {
    Expected {
        patterns: vec![pattern(Pattern::Improves)],
        ..Expected::default()
    }
}

fn winding(value: i64) -> Option<WindingCheck> {
    Some(WindingCheck {
        value,
        source: Source::Published,
    })
}

fn printed(list: &[&str]) -> Vec<Printed> {
    list.iter().map(|s| Printed::parse(s)).collect()
}

fn two_digits(list: &[f64]) -> Vec<Printed> {
    list.iter().map(|&v| Printed::with_digits(v, 2)).collect()
}

/// Rectangle used for the random-point problems.
pub const RANDOM_RECTANGLE: (C64, C64) = (C64::new(-4.0, -2.0), C64::new(4.0, 2.0));
pub const RANDOM_SEED: u64 = 1;

fn build() -> Vec<ProblemEntry> {
    use FunctionDescriptor as F;
    let mut v = Vec::new();
    let rel = Tolerance::Relative;

    v.push(
        ProblemEntry::new("expz_circle_n5", "exp(z) on 500 points of the unit circle, degree 5", F::Exp, DomainSpec::new(vec![circle(1.0, 500)]), 5)
            .expect(Expected {
                aaa_error: Some(ErrorCheck::published(3.83e-10, Tolerance::Range { lo: 1e-10, hi: 8e-10 })),
                lawson_error: Some(
                    ErrorCheck::published(9.944364e-11, Tolerance::Range { lo: 9.944144081e-11, hi: 1.01e-10 }).floor(9.944144081e-11),
                ),
                winding: winding(11),
                ..Expected::default()
            }),
    );
    v.push(
        ProblemEntry::new("expz_circle_n3", "exp(z) on 500 points of the unit circle, degree 3", F::Exp, DomainSpec::new(vec![circle(1.0, 500)]), 3)
            .expect(Expected {
                lawson_error: Some(ErrorCheck::published(9.9318e-6, rel(1e-3))),
                winding: winding(7),
                ..Expected::default()
            }),
    );
    v.push(
        ProblemEntry::new("tan2pi_circle_n12", "tan(2 pi z) on 1000 points of the unit circle, degree 12", F::Tan { c: 2.0 * PI }, DomainSpec::new(vec![circle(1.0, 1000)]), 12)
            .expect(Expected {
                aaa_error: Some(ErrorCheck::published(3.16e-7, Tolerance::Factor(2.0))),
                lawson_error: Some(ErrorCheck::published(7.08e-8, rel(0.05))),
                winding: winding(17),
                poles: vec![
                    PoleCheck {
                        measure: PoleMeasure::RealPoints,
                        values: [-0.75, -0.25, 0.25, 0.75].iter().map(|&x| Printed::with_digits(x, 10)).collect(),
                        multiplicity: 1,
                        imaginary_axis: None,
                        source: Source::Published,
                    },
                    PoleCheck {
                        measure: PoleMeasure::RealPoints,
                        values: printed(&["1.250011", "-1.250011", "1.7638", "-1.7638", "2.6420", "-2.6420", "7.3844", "-7.3844"]),
                        multiplicity: 1,
                        imaginary_axis: None,
                        source: Source::Published,
                    },
                ],
                ..Expected::default()
            }),
    );
    v.push(
        ProblemEntry::new(
            "log_ellipse",
            "log(0.5 - z) on a 2000-point ellipse of half-width 0.3 and half-height 1, degree 8",
            F::LogShift { a: 0.5 },
            DomainSpec::new(vec![Piece::Ellipse {
                center: c(0.0, 0.0),
                semi_x: 0.3,
                semi_y: 1.0,
                npts: 2000,
            }]),
            8,
        )
        .expect(improves()),
    );
    v.push(
        ProblemEntry::new(
            "airy_square",
            "Ai(2z) on the square with corners -1-i and 1+i, 1000 Chebyshev points per side, degree 10",
            F::Airy { c: 2.0 },
            DomainSpec::new(vec![Piece::Polygon {
                vertices: vec![c(-1.0, -1.0), c(1.0, -1.0), c(1.0, 1.0), c(-1.0, 1.0)],
                npts: 1000,
                law: Law::Chebyshev,
            }]),
            10,
        )
        .expect(Expected {
            winding: winding(21),
            patterns: vec![pattern(Pattern::Improves)],
            ..Expected::default()
        }),
    );
    {
        let pieces = (0..4)
            .map(|k| {
                let mid = k as f64 * PI / 2.0;
                Piece::Arc {
                    center: c(0.0, 0.0),
                    radius: 1.0,
                    theta0: mid - PI / 4.0,
                    theta1: mid + PI / 4.0,
                    npts: 1000,
                    law: Law::tanh(),
                    skip_first: false,
                }
            })
            .collect();
        let mut e = ProblemEntry::new(
            "quartic_sqrt_n16",
            "sqrt(1 + z^4) on the unit circle, 1000 tanh-clustered points per quarter arc, degree 16",
            F::SqrtOnePlusZ4,
            DomainSpec::new(pieces).closed(true),
            16,
        )
        .expect(Expected {
            aaa_error: Some(ErrorCheck::published(1.38e-1, rel(0.3))),
            lawson_error: Some(ErrorCheck::published(6.49e-3, rel(0.1))),
            poles: vec![PoleCheck {
                measure: PoleMeasure::Modulus,
                values: printed(&["1.00046", "1.0085", "1.075", "1.59"]),
                multiplicity: 4,
                imaginary_axis: None,
                source: Source::Published,
            }],
            ..Expected::default()
        });
        e.extend = Some(StepRule { ratio: 0.999, max_steps: 200 });
        v.push(e);
    }
    let (lo, hi) = RANDOM_RECTANGLE;
    {
        let mut e = ProblemEntry::new(
            "rand14_tanz_n6",
            "tan(z) at 14 random points of a rectangle, degree 6",
            F::Tan { c: 1.0 },
            DomainSpec::new(vec![Piece::RandomRectangle { lo, hi, count: 14, seed: RANDOM_SEED }]),
            6,
        )
        .expect(Expected {
            patterns: vec![PatternCheck {
                pattern: Pattern::EquiError { spread: 1e-6 },
                source: Source::Published,
            }],
            ..Expected::default()
        });
        e.nsteps = 500;
        v.push(e);
    }
    {
        let mut e = ProblemEntry::new(
            "rand100_tanz",
            "tan(z) at 100 random points of a rectangle, degree 6",
            F::Tan { c: 1.0 },
            DomainSpec::new(vec![Piece::RandomRectangle { lo, hi, count: 100, seed: RANDOM_SEED }]),
            6,
        )
        .expect(improves());
        e.nsteps = 300;
        v.push(e);
    }
    v.push(
        ProblemEntry::new(
            "exp_semicircle_arc",
            "exp(z) on the upper unit semicircle, 500 Chebyshev points, degree 4",
            F::Exp,
            DomainSpec::new(vec![arc(0.0, 0.0, PI, 500, Law::Chebyshev, false)]),
            4,
        )
        .expect(improves()),
    );
    v.push(
        ProblemEntry::new(
            "s_curve_arc",
            "exp(z) on an S-curve of two tangent unit semicircles through 0, 500 Chebyshev points each, degree 6",
            F::Exp,
            DomainSpec::new(vec![
                arc(-1.0, 0.0, PI, 500, Law::Chebyshev, false),
                arc(1.0, PI, 2.0 * PI, 500, Law::Chebyshev, true),
            ]),
            6,
        )
        .expect(improves()),
    );
    v.push(
        ProblemEntry::new(
            "essential_circle",
            "exp(4/z) on 1000 points of the unit circle, degree 8",
            F::ExpInverse { c: 4.0 },
            DomainSpec::new(vec![circle(1.0, 1000)]),
            8,
        )
        .expect(Expected {
            winding: winding(-17),
            patterns: vec![
                pattern(Pattern::Improves),
                pattern(Pattern::PolesInside {
                    center: c(0.0, 0.0),
                    radius: 1.0,
                }),
            ],
            ..Expected::default()
        }),
    );
    v.push(
        ProblemEntry::new(
            "annulus_sqrt",
            "sqrt(1 - z^-2) on the annulus 1 <= |z| <= 2: 500 equispaced outer points, 500 tanh-clustered points per inner half circle, degree 16",
            F::SqrtOneMinusInvZ2,
            DomainSpec::new(vec![
                circle(2.0, 500),
                Piece::Arc {
                    center: c(0.0, 0.0),
                    radius: 1.0,
                    theta0: 0.0,
                    theta1: PI,
                    npts: 500,
                    law: Law::tanh(),
                    skip_first: false,
                },
                Piece::Arc {
                    center: c(0.0, 0.0),
                    radius: 1.0,
                    theta0: PI,
                    theta1: 2.0 * PI,
                    npts: 500,
                    law: Law::tanh(),
                    skip_first: false,
                },
            ]),
            16,
        )
        .expect(Expected {
            patterns: vec![
                pattern(Pattern::Improves),
                pattern(Pattern::PieceRatio {
                    numerator: vec![0],
                    denominator: vec![1, 2],
                    value: 1.0 / 57.1,
                    rel: 0.2,
                }),
            ],
            ..Expected::default()
        }),
    );
    v.push(
        ProblemEntry::new(
            "twodisks_sign",
            "z sign(Re z) on two unit circles centred at -1.5 and 1.5, 1000 points each, degree 10",
            F::ZSignRe,
            DomainSpec::new(vec![
                Piece::Circle {
                    center: c(-1.5, 0.0),
                    radius: 1.0,
                    npts: 1000,
                    law: Law::Equispaced,
                },
                Piece::Circle {
                    center: c(1.5, 0.0),
                    radius: 1.0,
                    npts: 1000,
                    law: Law::Equispaced,
                },
            ]),
            10,
        )
        .expect(improves()),
    );
    v.push(
        ProblemEntry::new(
            "airy_interval",
            "Ai(x) on [-10, 10], 1000 Chebyshev points, degree 16",
            F::Airy { c: 1.0 },
            DomainSpec::new(vec![segment(-10.0, 10.0, 1000, Law::Chebyshev)]),
            16,
        )
        .expect(improves()),
    );
    v.push(
        ProblemEntry::new(
            "sqrt1mx_n10",
            "sqrt(1 - x) on [-1, 1], 1000 tanh-clustered points, degree 10",
            F::SqrtOneMinus,
            DomainSpec::new(vec![segment(-1.0, 1.0, 1000, Law::tanh())]),
            10,
        )
        .expect(Expected {
            poles: vec![PoleCheck {
                measure: PoleMeasure::DistanceTo { point: c(1.0, 0.0) },
                values: two_digits(&[15.3, 2.1, 0.19, 3.7e-2, 6.4e-3, 9.5e-4, 1.1e-4, 1.0e-5, 5.9e-7, 1.4e-8]),
                multiplicity: 1,
                imaginary_axis: None,
                source: Source::Published,
            }],
            patterns: vec![pattern(Pattern::NoRevert)],
            ..Expected::default()
        }),
    );
    v.push(
        ProblemEntry::new(
            "newman_absx",
            "|x| on [-1, 1], 100 tanh-clustered points on each of [-1, 0] and [0, 1], degree 12",
            F::Abs,
            DomainSpec::new(vec![segment(-1.0, 0.0, 100, Law::tanh()), segment(0.0, 1.0, 100, Law::tanh())]),
            12,
        )
        .expect(Expected {
            lawson_error: Some(ErrorCheck::published(1.23e-4, rel(0.15)).floor(1.07e-4 * 0.99)),
            poles: vec![PoleCheck {
                measure: PoleMeasure::Modulus,
                values: two_digits(&[0.00138, 0.0102, 0.0448, 0.155, 0.4780, 1.98]),
                multiplicity: 2,
                imaginary_axis: Some(1e-6),
                source: Source::Published,
            }],
            ..Expected::default()
        }),
    );
    v.push(
        ProblemEntry::new(
            "fermi_dirac",
            "1/(1 + exp(10 (x - 2))) on [0, 10], 1000 tanh-clustered points, degree 8",
            F::FermiDirac { beta: 10.0, mu: 2.0 },
            DomainSpec::new(vec![segment(0.0, 10.0, 1000, Law::tanh())]),
            8,
        )
        .expect(Expected {
            lawson_error: Some(ErrorCheck::published(9.09e-6, rel(0.1)).floor(8.77e-6 * 0.99)),
            ..Expected::default()
        }),
    );
    v.push(
        ProblemEntry::new(
            "twoint_sin6x",
            "sin(6x) on [-3, -1] and [1, 3], 500 Chebyshev points each, degree 16",
            F::Sin { c: 6.0 },
            DomainSpec::new(vec![segment(-3.0, -1.0, 500, Law::Chebyshev), segment(1.0, 3.0, 500, Law::Chebyshev)]),
            16,
        )
        .expect(improves()),
    );
    v.push(
        ProblemEntry::new(
            "twoint_absxsinx",
            "|x| sin(x) on [-3, -1] and [1, 3], 500 Chebyshev points each, degree 10",
            F::AbsSin,
            DomainSpec::new(vec![segment(-3.0, -1.0, 500, Law::Chebyshev), segment(1.0, 3.0, 500, Law::Chebyshev)]),
            10,
        )
        .expect(improves()),
    );
    v.push(
        ProblemEntry::new(
            "cmv_expx",
            "exp(x) on (-inf, 0], 2000 log-spaced points from -1e6 to -1e-6, degree 8",
            F::Exp,
            DomainSpec::new(vec![Piece::Logline {
                a: c(-1e6, 0.0),
                b: c(-1e-6, 0.0),
                npts: 2000,
            }]),
            8,
        )
        .expect(improves()),
    );
    {
        // 10^(6/499) is the second point of a 500-point log grid on [1, 1e6];
        // dropping the first avoids duplicating x = ±1 from the middle piece.
        let g = 10f64.powf(6.0 / 499.0);
        v.push(
            ProblemEntry::new(
                "gauss_realline",
                "exp(-x^2) on the real line: 100 equispaced points in [-1, 1] and 499 log-spaced points on each side out to 1e6, degree 12",
                F::Gaussian,
                DomainSpec::new(vec![
                    Piece::Logline {
                        a: c(-1e6, 0.0),
                        b: c(-g, 0.0),
                        npts: 499,
                    },
                    segment(-1.0, 1.0, 100, Law::Equispaced),
                    Piece::Logline {
                        a: c(g, 0.0),
                        b: c(1e6, 0.0),
                        npts: 499,
                    },
                ]),
                12,
            )
            .expect(Expected {
                aaa_error: Some(ErrorCheck::published(6.92e-6, rel(0.2))),
                lawson_error: Some(ErrorCheck::published(1.04e-6, rel(0.1))),
                ..Expected::default()
            }),
        );
    }
    v.push(
        ProblemEntry::new("expz2_circle_n3", "exp(z^2) on 500 points of the unit circle, degree 3 (even function, degenerate)", F::ExpSquare, DomainSpec::new(vec![circle(1.0, 500)]), 3)
            .expect(Expected {
                patterns: vec![pattern(Pattern::RevertsOrFails {
                    class: FailureClass::Degeneracy,
                })],
                ..Expected::default()
            }),
    );
    v.push(
        ProblemEntry::new("expz2_circle_n2", "exp(z^2) on 500 points of the unit circle, degree 2", F::ExpSquare, DomainSpec::new(vec![circle(1.0, 500)]), 2)
            .expect(Expected {
                patterns: vec![pattern(Pattern::Improves), pattern(Pattern::NoRevert)],
                ..Expected::default()
            }),
    );
    v.push(ProblemEntry::stub(
        "sc_lshape",
        "Schwarz-Christoffel map of an L-shaped region",
        "needs an external conformal-map evaluator; sample it yourself and use `approx file`",
    ));
    v.push(ProblemEntry::stub(
        "niconet_beam",
        "clamped beam transfer function c^T (zI - A)^-1 b, A 348x348",
        "needs the external beam matrices; pass them with `approx file --resolvent <A.csv> --vectors <bc.csv>`",
    ));
    v
}

fn registry() -> &'static [ProblemEntry] {
    static REG: OnceLock<Vec<ProblemEntry>> = OnceLock::new();
    REG.get_or_init(build)
}

pub fn list() -> Vec<&'static str> {
    registry().iter().map(|e| e.name.as_str()).collect()
}

pub fn entries() -> &'static [ProblemEntry] {
    registry()
}

pub fn get(name: &str) -> Result<&'static ProblemEntry> {
    registry().iter().find(|e| e.name == name).ok_or_else(|| {
        let suggestion = registry()
            .iter()
            .map(|e| (strsim::normalized_damerau_levenshtein(name, &e.name), &e.name))
            .filter(|(s, _)| *s > 0.4)
            .max_by(|a, b| a.0.total_cmp(&b.0))
            .map(|(_, n)| n.clone());
        Error::UnknownProblem {
            name: name.into(),
            suggestion,
        }
    })
}

/// All entries as pretty-printed JSON.
pub fn to_json() -> String {
    serde_json::to_string_pretty(registry()).expect("catalog serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_and_lookup() {
        let names = list();
        assert!(names.len() >= 18);
        let e = get("expz_circle_n5").unwrap();
        assert_eq!(e.degree, 5);
        assert_eq!(e.expected.lawson_error.as_ref().unwrap().value, 9.944364e-11);
        let e = get("newman_absx").unwrap();
        assert_eq!(e.degree, 12);
        match get("expz_circle_5") {
            Err(Error::UnknownProblem { suggestion, .. }) => assert_eq!(suggestion.as_deref(), Some("expz_circle_n5")),
            other => panic!("{other:?}"),
        }
        assert!(get("sc_lshape").unwrap().is_stub());
    }

    #[test]
    fn every_entry_builds_and_evaluates() {
        for e in entries().iter().filter(|e| !e.is_stub()) {
            let g = e.domain.build::<f64>().unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(g.points.len() >= 2 * e.degree + 2, "{}", e.name);
            g.sample(|z| e.function.eval(z)).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
    }

    #[test]
    fn printed_digits() {
        let p = Printed::parse("1.0085");
        assert_eq!(p.digits, 5);
        assert!(p.matches(1.00854) && p.matches(1.00846) && !p.matches(1.00856));
        assert_eq!(Printed::parse("0.00138").digits, 3);
        assert_eq!(Printed::parse("2.6420").digits, 5);
        assert!((Printed::with_digits(15.3, 2).half_unit() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn error_checks() {
        let e = ErrorCheck::published(1.23e-4, Tolerance::Relative(0.15)).floor(1.0593e-4);
        assert!(e.accepts(1.3e-4));
        assert!(!e.accepts(1.05e-4));
        assert!(ErrorCheck::published(3.16e-7, Tolerance::Factor(2.0)).accepts(6.0e-7));
    }

    #[test]
    fn json_export_parses() {
        let back: Vec<ProblemEntry> = serde_json::from_str(&to_json()).unwrap();
        assert_eq!(back.as_slice(), entries());
    }

    #[test]
    fn seed_override() {
        let e = get("rand14_tanz_n6").unwrap().with_seed(9);
        assert!(matches!(e.domain.pieces[0], Piece::RandomRectangle { seed: 9, .. }));
    }
}
