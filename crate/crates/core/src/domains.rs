//! Declarative sample grids.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::samples::{duplicate_pairs, SampleSet};
use crate::{Error, Real, Result};

type C64 = Complex<f64>;

/// Point distribution along a parametrized piece.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    #[default]
    Equispaced,
    /// Second-kind nodes, endpoints included.
    Chebyshev,
    /// `tanh(u)` with `u` equispaced on `[-strength, strength]`.
    Tanh(f64),
}

impl Law {
    pub fn tanh() -> Self {
        Law::Tanh(12.0)
    }

    /// Parameters `x_k` in `[-1, 1]`, antisymmetric in `k`.
    fn params(self, n: usize) -> Vec<f64> {
        let last = (n - 1) as f64;
        (0..n)
            .map(|k| {
                let u = (2.0 * k as f64 - last) / last;
                match self {
                    Law::Equispaced => u,
                    Law::Chebyshev => (std::f64::consts::FRAC_PI_2 * u).sin(),
                    Law::Tanh(s) => (s * u).tanh(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Piece {
    /// Full circle; equispaced points are `c + ρ e^{2πik/N}`, `k = 1..N`.
    Circle {
        center: C64,
        radius: f64,
        npts: usize,
        #[serde(default)]
        law: Law,
    },
    /// Circular arc from angle `theta0` to `theta1`, endpoints included
    /// unless `skip_first` drops the starting point (for joining arcs).
    Arc {
        center: C64,
        radius: f64,
        theta0: f64,
        theta1: f64,
        npts: usize,
        #[serde(default)]
        law: Law,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        skip_first: bool,
    },
    /// Closed polygon; each side carries `npts` points placed by `law` on
    /// `npts + 1` nodes, the closing node being the next vertex.
    Polygon {
        vertices: Vec<C64>,
        npts: usize,
        #[serde(default)]
        law: Law,
    },
    /// Axis-aligned ellipse `c + a cos θ + i b sin θ`, `θ = 2πk/N`, `k = 1..N`.
    Ellipse {
        center: C64,
        semi_x: f64,
        semi_y: f64,
        npts: usize,
    },
    Segment {
        a: C64,
        b: C64,
        npts: usize,
        #[serde(default)]
        law: Law,
    },
    /// Geometric spacing of `|z|` from `|a|` to `|b|` along the ray through `a`.
    Logline { a: C64, b: C64, npts: usize },
    RandomRectangle { lo: C64, hi: C64, count: usize, seed: u64 },
    Raw { points: Vec<C64> },
}

impl Piece {
    fn points(&self) -> Result<Vec<C64>> {
        let count = |n: usize| {
            if n < 2 {
                Err(Error::Build(format!("a piece needs at least 2 points, got {n}")))
            } else {
                Ok(n)
            }
        };
        let law_ok = |law: &Law| match law {
            Law::Tanh(s) if !(*s > 0.0 && s.is_finite()) => {
                Err(Error::Build(format!("tanh strength must be positive, got {s}")))
            }
            _ => Ok(()),
        };
        let tau = 2.0 * std::f64::consts::PI;
        Ok(match *self {
            Piece::Circle { center, radius, npts, law } => {
                let n = count(npts)?;
                law_ok(&law)?;
                match law {
                    Law::Equispaced => (1..=n)
                        .map(|k| center + Complex::from_polar(radius, tau * k as f64 / n as f64))
                        .collect(),
                    _ => {
                        let mut x = law.params(n + 1);
                        x.pop();
                        let pi = std::f64::consts::PI;
                        x.into_iter().map(|x| center + Complex::from_polar(radius, pi * (1.0 + x))).collect()
                    }
                }
            }
            Piece::Arc {
                center,
                radius,
                theta0,
                theta1,
                npts,
                law,
                skip_first,
            } => {
                let n = count(npts)?;
                law_ok(&law)?;
                let (mid, half) = ((theta0 + theta1) / 2.0, (theta1 - theta0) / 2.0);
                law.params(n)
                    .into_iter()
                    .skip(usize::from(skip_first))
                    .map(|x| center + Complex::from_polar(radius, mid + half * x))
                    .collect()
            }
            Piece::Polygon { ref vertices, npts, law } => {
                let n = count(npts + 1)? - 1;
                law_ok(&law)?;
                if vertices.len() < 3 {
                    return Err(Error::Build(format!("a polygon needs 3 vertices, got {}", vertices.len())));
                }
                let x = law.params(n + 1);
                let mut out = Vec::with_capacity(n * vertices.len());
                for (k, &a) in vertices.iter().enumerate() {
                    let b = vertices[(k + 1) % vertices.len()];
                    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
                    out.push(a);
                    out.extend(x[1..n].iter().map(|&x| mid + half * x));
                }
                out
            }
            Piece::Ellipse {
                center,
                semi_x,
                semi_y,
                npts,
            } => {
                let n = count(npts)?;
                (1..=n)
                    .map(|k| {
                        let t = tau * k as f64 / n as f64;
                        center + Complex::new(semi_x * t.cos(), semi_y * t.sin())
                    })
                    .collect()
            }
            Piece::Segment { a, b, npts, law } => {
                let n = count(npts)?;
                law_ok(&law)?;
                match law {
                    Law::Equispaced => (0..n).map(|k| a + (b - a) * (k as f64 / (n - 1) as f64)).collect(),
                    _ => {
                        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
                        law.params(n).into_iter().map(|x| mid + half * x).collect()
                    }
                }
            }
            Piece::Logline { a, b, npts } => {
                let n = count(npts)?;
                let (ra, rb) = (a.norm(), b.norm());
                if ra == 0.0 || rb == 0.0 {
                    return Err(Error::Build("logline endpoints must be nonzero".into()));
                }
                let dir = a / ra;
                if (b / rb - dir).norm() > 1e-12 {
                    return Err(Error::Build("logline endpoints must lie on one ray".into()));
                }
                let (la, lb) = (ra.ln(), rb.ln());
                (0..n)
                    .map(|k| {
                        let r = if k == 0 {
                            ra
                        } else if k == n - 1 {
                            rb
                        } else {
                            (la + (lb - la) * k as f64 / (n - 1) as f64).exp()
                        };
                        dir * r
                    })
                    .collect()
            }
            Piece::RandomRectangle { lo, hi, count, seed } => random_rectangle(count, lo, hi, seed)?,
            Piece::Raw { ref points } => {
                if points.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
                    return Err(Error::Build("raw points must be finite".into()));
                }
                points.clone()
            }
        })
    }

    fn is_closed(&self) -> bool {
        matches!(self, Piece::Circle { .. } | Piece::Ellipse { .. } | Piece::Polygon { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub pieces: Vec<Piece>,
    /// Overrides the default (closed only for a single circle or ellipse).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed: Option<bool>,
}

/// Built sample points, before function values are attached.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<T> {
    pub points: Vec<Complex<T>>,
    pub closed_curve: bool,
}

impl<T: Real> Grid<T> {
    pub fn sample(&self, f: impl FnMut(Complex<T>) -> Result<Complex<T>>) -> Result<SampleSet<T>> {
        SampleSet::from_fn(self.points.clone(), self.closed_curve, f)
    }
}

impl DomainSpec {
    pub fn new(pieces: Vec<Piece>) -> Self {
        DomainSpec { pieces, closed: None }
    }

    pub fn closed(mut self, closed: bool) -> Self {
        self.closed = Some(closed);
        self
    }

    pub fn closed_curve(&self) -> bool {
        self.closed
            .unwrap_or(self.pieces.len() == 1 && self.pieces[0].is_closed())
    }

    /// Index ranges of each piece's points in the built grid.
    pub fn piece_ranges(&self) -> Result<Vec<std::ops::Range<usize>>> {
        let mut start = 0;
        self.pieces
            .iter()
            .map(|p| {
                let n = p.points()?.len();
                start += n;
                Ok(start - n..start)
            })
            .collect()
    }

    pub fn build<T: Real>(&self) -> Result<Grid<T>> {
        if self.pieces.is_empty() {
            return Err(Error::Build("domain has no pieces".into()));
        }
        let mut pts: Vec<C64> = Vec::new();
        for p in &self.pieces {
            pts.extend(p.points()?);
        }
        let dups = duplicate_pairs(&pts);
        if !dups.is_empty() {
            let list: Vec<String> = dups.iter().take(5).map(|(i, j)| format!("{i}~{j} at {}", pts[*i])).collect();
            return Err(Error::Build(format!(
                "{} duplicate point pairs: {}{}",
                dups.len(),
                list.join(", "),
                if dups.len() > 5 { ", ..." } else { "" }
            )));
        }
        let cast = |x: f64| T::from_f64(x).ok_or_else(|| Error::Build(format!("{x} does not fit the scalar type")));
        let points = pts
            .iter()
            .map(|z| Ok(Complex::new(cast(z.re)?, cast(z.im)?)))
            .collect::<Result<Vec<_>>>()?;
        if !duplicate_pairs(&points).is_empty() {
            return Err(Error::Build("points collide after conversion to the scalar type".into()));
        }
        Ok(Grid {
            points,
            closed_curve: self.closed_curve(),
        })
    }
}

/// Pinned 64-bit LCG (multiplier 6364136223846793005, increment
/// 1442695040888963407); each coordinate takes the top 53 bits of one step.
#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.state
    }

    /// Uniform on `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// `count` distinct uniform points in the rectangle with corners `lo`, `hi`.
pub fn random_rectangle(count: usize, lo: C64, hi: C64, seed: u64) -> Result<Vec<C64>> {
    if count == 0 {
        return Err(Error::Input("random rectangle needs at least one point".into()));
    }
    if !(hi.re > lo.re && hi.im > lo.im) || !(lo.re.is_finite() && lo.im.is_finite() && hi.re.is_finite() && hi.im.is_finite()) {
        return Err(Error::Input(format!("degenerate rectangle {lo} .. {hi}")));
    }
    let mut g = Lcg64::new(seed);
    let mut out: Vec<C64> = Vec::with_capacity(count);
    while out.len() < count {
        let x = lo.re + (hi.re - lo.re) * g.next_f64();
        let y = lo.im + (hi.im - lo.im) * g.next_f64();
        let z = Complex::new(x, y);
        if !out.contains(&z) {
            out.push(z);
        }
    }
    Ok(out)
}
