//! Rational functions in barycentric form
//! `r(z) = Σ α_k/(z − t_k) / Σ β_k/(z − t_k)`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::numerics::{generalized_eigenvalues, ComplexMatrix};
use crate::samples::{duplicate_pairs, finite, SampleSet};
use crate::{lit, Error, Real, Result};

/// Value of a rational function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eval<T> {
    Finite(Complex<T>),
    /// Limit of the reduced sums at a support point where `α_k = β_k = 0`.
    Degenerate(Complex<T>),
    Infinite,
}

impl<T: Real> Eval<T> {
    pub fn value(self) -> Option<Complex<T>> {
        match self {
            Eval::Finite(v) | Eval::Degenerate(v) => Some(v),
            Eval::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Eval::Infinite)
    }

    /// `|value|`, or `+∞` for the point at infinity.
    pub fn modulus(self) -> T {
        self.value().map_or(T::infinity(), |v| v.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Interpolatory,
    AlphaBeta,
}

/// Barycentric rational function of degree `n` on `n + 1` support points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RationalRepr<T>", into = "RationalRepr<T>")]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>", serialize = "T: Real + Serialize"))]
pub struct BarycentricRational<T> {
    support: Vec<Complex<T>>,
    alpha: Vec<Complex<T>>,
    beta: Vec<Complex<T>>,
    values: Option<Vec<Complex<T>>>,
}

#[derive(Serialize, Deserialize)]
struct RationalRepr<T> {
    degree: usize,
    support_points: Vec<Complex<T>>,
    alpha: Vec<Complex<T>>,
    beta: Vec<Complex<T>>,
    mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<Complex<T>>>,
}

impl<T: Real> TryFrom<RationalRepr<T>> for BarycentricRational<T> {
    type Error = Error;
    fn try_from(r: RationalRepr<T>) -> Result<Self> {
        if r.support_points.len() != r.degree + 1 {
            return Err(Error::Input(format!(
                "degree {} needs {} support points, got {}",
                r.degree,
                r.degree + 1,
                r.support_points.len()
            )));
        }
        let out = match (r.mode, r.values) {
            (Mode::AlphaBeta, None) => BarycentricRational::alpha_beta(r.support_points, r.alpha, r.beta)?,
            (Mode::Interpolatory, Some(values)) => {
                let out = BarycentricRational::interpolatory(r.support_points, values, r.beta)?;
                if out.alpha != r.alpha {
                    return Err(Error::Input("alpha is not values times beta".into()));
                }
                out
            }
            (Mode::Interpolatory, None) => {
                return Err(Error::Input("interpolatory mode needs stored values".into()))
            }
            (Mode::AlphaBeta, Some(_)) => {
                return Err(Error::Input("alpha_beta mode takes no stored values".into()))
            }
        };
        Ok(out)
    }
}

impl<T: Real> From<BarycentricRational<T>> for RationalRepr<T> {
    fn from(r: BarycentricRational<T>) -> Self {
        RationalRepr {
            degree: r.degree(),
            mode: r.mode(),
            support_points: r.support,
            alpha: r.alpha,
            beta: r.beta,
            values: r.values,
        }
    }
}

/// Poles with residues, and zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleReport<T> {
    pub poles: Vec<Complex<T>>,
    pub residues: Vec<Complex<T>>,
    pub zeros: Vec<Complex<T>>,
    /// Indices into `poles` that coincide with a support point.
    pub confluent: Vec<usize>,
}

/// `ℓ(z) = Π (z − t_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodePolynomial<T> {
    roots: Vec<Complex<T>>,
}

impl<T: Real> NodePolynomial<T> {
    pub fn new(roots: Vec<Complex<T>>) -> Self {
        NodePolynomial { roots }
    }

    pub fn roots(&self) -> &[Complex<T>] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.roots.iter().fold(one(), |acc, t| acc * (z - t))
    }

    /// Ascending coefficients; the last one is 1.
    pub fn coefficients(&self) -> Vec<Complex<T>> {
        monic_from_roots(self.roots.iter().copied())
    }

    /// Ascending coefficients of `ℓ(z)/(z − t_k)`.
    pub fn basis(&self, k: usize) -> Vec<Complex<T>> {
        monic_from_roots(self.roots.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &t)| t))
    }
}

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn one<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

fn monic_from_roots<T: Real>(roots: impl Iterator<Item = Complex<T>>) -> Vec<Complex<T>> {
    let mut p = vec![one()];
    for r in roots {
        let mut q = vec![zero(); p.len() + 1];
        for (k, &a) in p.iter().enumerate() {
            q[k + 1] += a;
            q[k] -= a * r;
        }
        p = q;
    }
    p
}

impl<T: Real> BarycentricRational<T> {
    /// Free coefficients `α`, `β`.
    pub fn alpha_beta(support: Vec<Complex<T>>, alpha: Vec<Complex<T>>, beta: Vec<Complex<T>>) -> Result<Self> {
        validate(&support, &alpha, &beta)?;
        Ok(BarycentricRational {
            support,
            alpha,
            beta,
            values: None,
        })
    }

    /// Interpolant of `values` at the support points: `α_k = f_k β_k`.
    pub fn interpolatory(support: Vec<Complex<T>>, values: Vec<Complex<T>>, beta: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != support.len() {
            return Err(Error::Dimension(format!(
                "{} values for {} support points",
                values.len(),
                support.len()
            )));
        }
        let alpha: Vec<_> = values.iter().zip(&beta).map(|(f, b)| f * b).collect();
        validate(&support, &alpha, &beta)?;
        if values.iter().any(|v| !finite(*v)) {
            return Err(Error::Input("interpolation values must be finite".into()));
        }
        Ok(BarycentricRational {
            support,
            alpha,
            beta,
            values: Some(values),
        })
    }

    /// Splits `γ = [α; β]`.
    pub fn from_gamma(support: Vec<Complex<T>>, gamma: &[Complex<T>]) -> Result<Self> {
        let m = support.len();
        if gamma.len() != 2 * m {
            return Err(Error::Dimension(format!(
                "gamma of length {} for {m} support points",
                gamma.len()
            )));
        }
        Self::alpha_beta(support, gamma[..m].to_vec(), gamma[m..].to_vec())
    }

    pub fn degree(&self) -> usize {
        self.support.len() - 1
    }

    pub fn mode(&self) -> Mode {
        if self.values.is_some() {
            Mode::Interpolatory
        } else {
            Mode::AlphaBeta
        }
    }

    pub fn support_points(&self) -> &[Complex<T>] {
        &self.support
    }

    pub fn alpha(&self) -> &[Complex<T>] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Complex<T>] {
        &self.beta
    }

    pub fn values(&self) -> Option<&[Complex<T>]> {
        self.values.as_deref()
    }

    /// `[α; β]`.
    pub fn gamma(&self) -> Vec<Complex<T>> {
        self.alpha.iter().chain(&self.beta).copied().collect()
    }

    /// Same coefficients with the stored interpolation values dropped.
    pub fn to_alpha_beta(&self) -> Self {
        BarycentricRational {
            values: None,
            ..self.clone()
        }
    }

    pub fn node_polynomial(&self) -> NodePolynomial<T> {
        NodePolynomial::new(self.support.clone())
    }

    pub fn evaluate(&self, z: Complex<T>) -> Eval<T> {
        if let Some(k) = self.support.iter().position(|&t| t == z) {
            let (a, b) = (self.alpha[k], self.beta[k]);
            if b != zero() {
                return match &self.values {
                    Some(v) => Eval::Finite(v[k]),
                    None => finite_or_inf(a / b),
                };
            }
            if a != zero() {
                return Eval::Infinite;
            }
            return match self.sums(z, Some(k)) {
                Eval::Finite(v) => Eval::Degenerate(v),
                other => other,
            };
        }
        self.sums(z, None)
    }

    fn sums(&self, z: Complex<T>, skip: Option<usize>) -> Eval<T> {
        let mut num = zero::<T>();
        let mut den = zero::<T>();
        for (k, ((t, a), b)) in self.support.iter().zip(&self.alpha).zip(&self.beta).enumerate() {
            if Some(k) == skip {
                continue;
            }
            let c = one::<T>() / (z - t);
            num += a * c;
            den += b * c;
        }
        if den == zero() {
            return Eval::Infinite;
        }
        finite_or_inf(num / den)
    }

    /// Poles with residues and zeros from the arrowhead pencil.
    pub fn poles(&self) -> Result<PoleReport<T>> {
        let poles = self.pencil_roots(&self.beta)?;
        let zeros = if self.alpha.iter().all(|a| *a == zero()) {
            Vec::new()
        } else {
            self.pencil_roots(&self.alpha)?
        };
        let mut residues = Vec::with_capacity(poles.len());
        let mut confluent = Vec::new();
        for (i, &p) in poles.iter().enumerate() {
            if let Some(k) = self.support.iter().position(|&t| t == p) {
                confluent.push(i);
                let mut d = zero();
                for (j, (t, b)) in self.support.iter().zip(&self.beta).enumerate() {
                    if j != k {
                        d += b / (p - t);
                    }
                }
                residues.push(self.alpha[k] / d);
                continue;
            }
            let mut n = zero::<T>();
            let mut dd = zero::<T>();
            for ((t, a), b) in self.support.iter().zip(&self.alpha).zip(&self.beta) {
                let c = one::<T>() / (p - t);
                n += a * c;
                dd -= b * c * c;
            }
            residues.push(n / dd);
        }
        Ok(PoleReport {
            poles,
            residues,
            zeros,
            confluent,
        })
    }

    /// Finite roots of `Σ w_k Π_{j≠k} (z − t_j)`.
    fn pencil_roots(&self, w: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let m = self.support.len() + 1;
        let scale = w.iter().fold(T::zero(), |s, x| s.max(x.norm()));
        let a = ComplexMatrix::from_fn(m, m, |i, j| match (i, j) {
            (0, 0) => zero(),
            (0, j) => w[j - 1] / scale,
            (_, 0) => one(),
            (i, j) if i == j => self.support[i - 1],
            _ => zero(),
        });
        let mut b = ComplexMatrix::identity(m);
        b[(0, 0)] = zero();
        let ev = generalized_eigenvalues(&a, &b)?;
        let mut finite = ev.finite;
        if ev.infinite < 2 {
            finite.sort_by(|x, y| x.norm().partial_cmp(&y.norm()).unwrap_or(std::cmp::Ordering::Equal));
            finite.truncate(m - 2);
        }
        Ok(finite)
    }
}

fn finite_or_inf<T: Real>(v: Complex<T>) -> Eval<T> {
    if finite(v) {
        Eval::Finite(v)
    } else {
        Eval::Infinite
    }
}

fn validate<T: Real>(support: &[Complex<T>], alpha: &[Complex<T>], beta: &[Complex<T>]) -> Result<()> {
    if support.is_empty() {
        return Err(Error::Input("at least one support point is required".into()));
    }
    if alpha.len() != support.len() || beta.len() != support.len() {
        return Err(Error::Dimension(format!(
            "{} support points with {} alpha and {} beta coefficients",
            support.len(),
            alpha.len(),
            beta.len()
        )));
    }
    if support.iter().chain(alpha).chain(beta).any(|z| !finite(*z)) {
        return Err(Error::Input("support points and coefficients must be finite".into()));
    }
    if let Some(&(i, j)) = duplicate_pairs(support).first() {
        return Err(Error::Input(format!("support points {i} and {j} coincide")));
    }
    if beta.iter().all(|b| *b == zero()) {
        return Err(Error::Input("all beta coefficients are zero".into()));
    }
    Ok(())
}

/// Converts `p/q` (ascending coefficients) to barycentric form on the given
/// support points by solving `p = n·ℓ`, `q = d·ℓ` in the basis `ℓ(z)/(z − t_k)`.
pub fn from_quotient<T: Real>(
    p: &[Complex<T>],
    q: &[Complex<T>],
    support: &[Complex<T>],
) -> Result<BarycentricRational<T>> {
    let m = support.len();
    if m == 0 {
        return Err(Error::Input("at least one support point is required".into()));
    }
    let n = m - 1;
    let deg = |c: &[Complex<T>]| c.iter().rposition(|x| *x != zero());
    let dq = deg(q).ok_or_else(|| Error::Input("denominator is identically zero".into()))?;
    if dq > n || deg(p).unwrap_or(0) > n {
        return Err(Error::Input(format!(
            "numerator or denominator degree exceeds {n} for {m} support points"
        )));
    }
    if let Some(&(i, j)) = duplicate_pairs(support).first() {
        return Err(Error::Input(format!("support points {i} and {j} coincide")));
    }
    let node = NodePolynomial::new(support.to_vec());
    let basis: Vec<Vec<Complex<T>>> = (0..m).map(|k| node.basis(k)).collect();
    let mat: Vec<Vec<Complex<T>>> = (0..m).map(|i| (0..m).map(|k| basis[k][i]).collect()).collect();
    let pad = |c: &[Complex<T>]| (0..m).map(|i| c.get(i).copied().unwrap_or_else(zero)).collect::<Vec<_>>();
    let alpha = pivoted_solve(mat.clone(), pad(p))?;
    let beta = pivoted_solve(mat, pad(q))?;
    BarycentricRational::alpha_beta(support.to_vec(), alpha, beta)
}

/// Gaussian elimination with complete pivoting.
fn pivoted_solve<T: Real>(mut a: Vec<Vec<Complex<T>>>, mut b: Vec<Complex<T>>) -> Result<Vec<Complex<T>>> {
    let n = b.len();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (mut pi, mut pj, mut best) = (k, k, T::zero());
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if x.norm() > best {
                    (pi, pj, best) = (i, j, x.norm());
                }
            }
        }
        if best == T::zero() {
            return Err(Error::Numerical("singular basis system".into()));
        }
        a.swap(k, pi);
        b.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        perm.swap(k, pj);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            if f == zero() {
                continue;
            }
            for j in k..n {
                let x = a[k][j];
                a[i][j] -= f * x;
            }
            let x = b[k];
            b[i] -= f * x;
        }
    }
    let mut y = vec![zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in i + 1..n {
            s -= a[i][j] * y[j];
        }
        y[i] = s / a[i][i];
    }
    let mut x = vec![zero(); n];
    for (k, &p) in perm.iter().enumerate() {
        x[p] = y[k];
    }
    Ok(x)
}

/// Largest error `|f_j − r(z_j)|` over the samples.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxError<T> {
    pub max: T,
    /// Smallest index attaining `max` (the first infinite one, if any).
    pub argmax: usize,
    pub errors: Vec<Eval<T>>,
}

pub fn max_error<T: Real>(r: &BarycentricRational<T>, samples: &SampleSet<T>) -> MaxError<T> {
    let errors: Vec<Eval<T>> = samples
        .points()
        .iter()
        .zip(samples.values())
        .map(|(&z, &f)| match r.evaluate(z).value() {
            Some(v) => Eval::Finite(f - v),
            None => Eval::Infinite,
        })
        .collect();
    let (argmax, max) = argmax_modulus(&errors);
    MaxError { max, argmax, errors }
}

pub(crate) fn argmax_modulus<T: Real>(errors: &[Eval<T>]) -> (usize, T) {
    let mut best = (0, errors.first().map_or(T::zero(), |e| e.modulus()));
    for (j, e) in errors.iter().enumerate().skip(1) {
        let m = e.modulus();
        if m > best.1 {
            best = (j, m);
            if m == T::infinity() {
                break;
            }
        }
    }
    best
}

/// Number of turns of a closed error curve about the origin.
pub fn winding_number<T: Real>(errors: &[Complex<T>]) -> Result<i64> {
    if errors.is_empty() {
        return Err(Error::WindingUndefined("no error samples".into()));
    }
    let emax = errors.iter().fold(T::zero(), |m, e| m.max(e.norm()));
    if !emax.is_finite() {
        return Err(Error::WindingUndefined("error curve is not finite".into()));
    }
    let floor = lit::<T>(1e-3) * emax;
    if let Some(j) = errors.iter().position(|e| !(e.norm() > floor)) {
        return Err(Error::WindingUndefined(format!(
            "|e| at sample {j} is below 1e-3 of the maximum"
        )));
    }
    let pi = T::PI();
    let mut total = T::zero();
    for j in 0..errors.len() {
        let next = errors[(j + 1) % errors.len()];
        let d = (next / errors[j]).arg();
        if d.abs() >= pi {
            return Err(Error::WindingUnresolved(format!(
                "phase jump of pi between samples {j} and {}",
                (j + 1) % errors.len()
            )));
        }
        total += d;
    }
    (total / (pi + pi))
        .round()
        .to_i64()
        .ok_or_else(|| Error::WindingUndefined("winding number out of range".into()))
}
