//! Closed-form function descriptors used by the catalog and the CLI.
//!
//! Evaluation is carried out in double precision and converted to the
//! caller's scalar type.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::numerics::ComplexMatrix;
use crate::{Error, Real, Result};

type C64 = Complex<f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionDescriptor {
    /// `exp(z)`
    Exp,
    /// `exp(z²)`
    ExpSquare,
    /// `exp(−z²)`
    Gaussian,
    /// `exp(c/z)`
    ExpInverse { c: f64 },
    /// `tan(c z)`
    Tan { c: f64 },
    /// `sin(c z)`
    Sin { c: f64 },
    /// `log(a − z)`, principal branch
    LogShift { a: f64 },
    /// `Ai(c z)`
    Airy { c: f64 },
    /// `(1 + z⁴)^{1/2}`, principal branch
    SqrtOnePlusZ4,
    /// `(1 − z⁻²)^{1/2}`, principal branch (cut on `[−1, 1]`)
    SqrtOneMinusInvZ2,
    /// `(1 − z)^{1/2}`, principal branch
    SqrtOneMinus,
    /// `z sign(Re z)`
    ZSignRe,
    /// `|z|`
    Abs,
    /// `|z| sin z`
    AbsSin,
    /// `1/(1 + exp(beta (z − mu)))`
    FermiDirac { beta: f64, mu: f64 },
    /// `cᵀ (zI − A)⁻¹ b`
    Resolvent(Resolvent),
}

impl FunctionDescriptor {
    pub fn eval<T: Real>(&self, z: Complex<T>) -> Result<Complex<T>> {
        let w = Complex::new(to_f64(z.re)?, to_f64(z.im)?);
        let v = self.eval_f64(w)?;
        match (T::from_f64(v.re), T::from_f64(v.im)) {
            (Some(re), Some(im)) => Ok(Complex::new(re, im)),
            _ => Err(Error::Evaluation(format!("value {v} at {w} does not fit the scalar type"))),
        }
    }

    pub fn eval_f64(&self, z: C64) -> Result<C64> {
        let one = C64::one();
        let v = match self {
            FunctionDescriptor::Exp => z.exp(),
            FunctionDescriptor::ExpSquare => (z * z).exp(),
            FunctionDescriptor::Gaussian => (-z * z).exp(),
            FunctionDescriptor::ExpInverse { c } => {
                if z.is_zero() {
                    return Err(Error::Evaluation("exp(c/z) at z = 0".into()));
                }
                (*c / z).exp()
            }
            FunctionDescriptor::Tan { c } => (z * c).tan(),
            FunctionDescriptor::Sin { c } => (z * c).sin(),
            FunctionDescriptor::LogShift { a } => (C64::new(*a, 0.0) - z).ln(),
            FunctionDescriptor::Airy { c } => airy_ai(z * c)?,
            FunctionDescriptor::SqrtOnePlusZ4 => (one + z.powi(4)).sqrt(),
            FunctionDescriptor::SqrtOneMinusInvZ2 => (one - (z * z).inv()).sqrt(),
            FunctionDescriptor::SqrtOneMinus => (one - z).sqrt(),
            FunctionDescriptor::ZSignRe => {
                if z.re > 0.0 {
                    z
                } else if z.re < 0.0 {
                    -z
                } else {
                    C64::zero()
                }
            }
            FunctionDescriptor::Abs => C64::new(z.norm(), 0.0),
            FunctionDescriptor::AbsSin => z.sin() * z.norm(),
            FunctionDescriptor::FermiDirac { beta, mu } => (one + ((z - mu) * beta).exp()).inv(),
            FunctionDescriptor::Resolvent(r) => r.eval(z)?,
        };
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation(format!("{} is not finite at {z}", self.label())))
        }
    }

    /// Short human-readable formula.
    pub fn label(&self) -> String {
        match self {
            FunctionDescriptor::Exp => "exp(z)".into(),
            FunctionDescriptor::ExpSquare => "exp(z^2)".into(),
            FunctionDescriptor::Gaussian => "exp(-z^2)".into(),
            FunctionDescriptor::ExpInverse { c } => format!("exp({c}/z)"),
            FunctionDescriptor::Tan { c } => format!("tan({c} z)"),
            FunctionDescriptor::Sin { c } => format!("sin({c} z)"),
            FunctionDescriptor::LogShift { a } => format!("log({a} - z)"),
            FunctionDescriptor::Airy { c } => format!("Ai({c} z)"),
            FunctionDescriptor::SqrtOnePlusZ4 => "sqrt(1 + z^4)".into(),
            FunctionDescriptor::SqrtOneMinusInvZ2 => "sqrt(1 - z^-2)".into(),
            FunctionDescriptor::SqrtOneMinus => "sqrt(1 - z)".into(),
            FunctionDescriptor::ZSignRe => "z sign(Re z)".into(),
            FunctionDescriptor::Abs => "|z|".into(),
            FunctionDescriptor::AbsSin => "|z| sin(z)".into(),
            FunctionDescriptor::FermiDirac { beta, mu } => format!("1/(1 + exp({beta} (z - {mu})))"),
            FunctionDescriptor::Resolvent(r) => format!("c^T (zI - A)^-1 b, A {}x{}", r.a.rows(), r.a.cols()),
        }
    }
}

fn to_f64<T: Real>(x: T) -> Result<f64> {
    x.to_f64()
        .ok_or_else(|| Error::Evaluation(format!("{x} has no double-precision value")))
}

/// Transfer function `cᵀ (zI − A)⁻¹ b` of a dense state-space model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Resolvent {
    pub a: ComplexMatrix<f64>,
    pub b: Vec<C64>,
    pub c: Vec<C64>,
}

impl Resolvent {
    pub fn new(a: ComplexMatrix<f64>, b: Vec<C64>, c: Vec<C64>) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n || n == 0 {
            return Err(Error::Dimension(format!("A must be square and nonempty, got {}x{}", n, a.cols())));
        }
        if b.len() != n || c.len() != n {
            return Err(Error::Dimension(format!(
                "b and c need length {n}, got {} and {}",
                b.len(),
                c.len()
            )));
        }
        Ok(Resolvent { a, b, c })
    }

    /// One LU solve with partial pivoting per call.
    pub fn eval(&self, z: C64) -> Result<C64> {
        let n = self.a.rows();
        let mut m: Vec<C64> = self.a.entries().iter().map(|&x| -x).collect();
        for i in 0..n {
            m[i * n + i] += z;
        }
        let scale = m.iter().fold(0.0f64, |s, x| s.max(x.norm()));
        let mut x = self.b.clone();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| m[i * n + k].norm().total_cmp(&m[j * n + k].norm()))
                .expect("nonempty pivot range");
            if m[p * n + k].norm() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
                return Err(Error::Evaluation(format!("z = {z} is an eigenvalue of A to working precision")));
            }
            if p != k {
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                x.swap(k, p);
            }
            let piv = m[k * n + k];
            for i in k + 1..n {
                let l = m[i * n + k] / piv;
                if l.is_zero() {
                    continue;
                }
                for j in k..n {
                    let u = m[k * n + j];
                    m[i * n + j] -= l * u;
                }
                let xk = x[k];
                x[i] -= l * xk;
            }
        }
        for k in (0..n).rev() {
            let mut s = x[k];
            for j in k + 1..n {
                s -= m[k * n + j] * x[j];
            }
            x[k] = s / m[k * n + k];
        }
        Ok(self.c.iter().zip(&x).map(|(c, x)| c * x).sum())
    }
}

const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = -0.258_819_403_792_806_8;

/// Airy function `Ai(z)`.
///
/// Maclaurin series for `|z| ≤ 3.5`; on the real axis beyond that (and for
/// real `z ≥ 1`, where the series loses relative accuracy) the asymptotic
/// expansion at `|x| = max(|x|, 12)` is carried to `x` by Taylor steps of
/// `y'' = x y`. Complex `z` with `|z| > 3.5` is not supported.
pub fn airy_ai(z: C64) -> Result<C64> {
    if z.im == 0.0 && (z.re >= 1.0 || z.re < -3.5) {
        return Ok(C64::new(airy_real(z.re), 0.0));
    }
    if z.norm() > 3.5 {
        return Err(Error::Evaluation(format!("Ai(z) off the real axis needs |z| <= 3.5, got {z}")));
    }
    // f = Σ 3^k (1/3)_k z^{3k}/(3k)!, g = Σ 3^k (2/3)_k z^{3k+1}/(3k+1)!
    let z3 = z * z * z;
    let mut tf = C64::one();
    let mut tg = z;
    let (mut f, mut g) = (tf, tg);
    for k in 1..200 {
        let k = k as f64;
        tf = tf * z3 / ((3.0 * k - 1.0) * (3.0 * k));
        tg = tg * z3 / ((3.0 * k) * (3.0 * k + 1.0));
        f += tf;
        g += tg;
        if tf.norm() <= 1e-18 * f.norm() && tg.norm() <= 1e-18 * g.norm().max(1e-300) {
            break;
        }
    }
    Ok(f * AI0 + g * AIP0)
}

fn airy_real(x: f64) -> f64 {
    let start = if x > 0.0 { x.max(12.0) } else { x.min(-12.0) };
    let (mut y, mut dy) = airy_asymptotic(start);
    let mut t = start;
    let h = 0.25;
    while (x - t).abs() > 0.0 {
        let step = (x - t).clamp(-h, h);
        let (ny, ndy) = taylor_step(t, y, dy, step);
        y = ny;
        dy = ndy;
        t = if (x - t).abs() <= h { x } else { t + step };
    }
    y
}

/// `(Ai(x), Ai'(x))` from the large-argument expansions, `|x| ≥ 12`.
fn airy_asymptotic(x: f64) -> (f64, f64) {
    let pi = std::f64::consts::PI;
    let ax = x.abs();
    let zeta = 2.0 / 3.0 * ax.powf(1.5);
    let mut u = vec![1.0f64];
    let mut v = vec![1.0f64];
    for k in 1..40 {
        let kf = k as f64;
        let uk = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        u.push(uk);
        v.push(-(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * uk);
    }
    let q = ax.powf(0.25);
    if x > 0.0 {
        let (mut su, mut sv, mut p) = (0.0, 0.0, 1.0);
        for k in 0..40 {
            let tu = u[k] * p;
            su += tu;
            sv += v[k] * p;
            if tu.abs() < 1e-17 * su.abs() {
                break;
            }
            p *= -1.0 / zeta;
        }
        let e = (-zeta).exp() / (2.0 * pi.sqrt());
        (e / q * su, -e * q * sv)
    } else {
        let (mut ue, mut uo, mut ve, mut vo) = (0.0, 0.0, 0.0, 0.0);
        let mut p = 1.0;
        for k in 0..40 {
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                ue += sign * u[k] * p;
                ve += sign * v[k] * p;
            } else {
                uo += sign * u[k] * p;
                vo += sign * v[k] * p;
            }
            p /= zeta;
        }
        let (s, c) = (zeta + pi / 4.0).sin_cos();
        let r = 1.0 / pi.sqrt();
        (r / q * (s * ue - c * uo), -r * q * (c * ve + s * vo))
    }
}

/// Taylor step of `y'' = t y` from `t0` by `h`.
fn taylor_step(t0: f64, y: f64, dy: f64, h: f64) -> (f64, f64) {
    // (k+2)(k+1) a_{k+2} = t0 a_k + a_{k−1}
    let mut a = vec![y, dy, t0 * y / 2.0];
    let (mut sy, mut sd) = (y + dy * h + a[2] * h * h, dy + 2.0 * a[2] * h);
    let mut hk = h * h;
    for k in 1..200 {
        let next = (t0 * a[k] + a[k - 1]) / ((k + 2) as f64 * (k + 1) as f64);
        a.push(next);
        sd += (k + 2) as f64 * next * hk;
        hk *= h;
        sy += next * hk;
        let mag = sy.abs().max(sd.abs()).max(f64::MIN_POSITIVE);
        if k > 4 && (next * hk).abs() < 1e-18 * mag && (a[k] * hk / h).abs() < 1e-18 * mag {
            break;
        }
    }
    (sy, sd)
}
