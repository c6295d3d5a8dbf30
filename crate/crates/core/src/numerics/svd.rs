use num_complex::Complex;

use super::{norm2, unit_phase, ComplexMatrix};
use crate::{lit, Error, Real, Result};

/// Right singular vector for the smallest singular value of a tall matrix.
///
/// Householder QR of `A`, complex Golub-Kahan bidiagonalization of `R`,
/// then implicit-shift QR on the real bidiagonal. Only the right factor is
/// accumulated. The returned vector has unit norm and its largest entry is
/// real and positive; `sigma` is `‖Av‖₂` recomputed from `A`.
pub fn smallest_singular_vector<T: Real>(a: &ComplexMatrix<T>) -> Result<(Vec<Complex<T>>, T)> {
    let (m, n) = (a.rows(), a.cols());
    if n == 0 || m < n {
        return Err(Error::Dimension(format!(
            "smallest singular vector needs rows >= cols >= 1, got {m}x{n}"
        )));
    }
    if !a.is_finite() {
        return Err(Error::Input("matrix has non-finite entries".into()));
    }

    let mut cols = a.to_columns();
    for k in 0..n {
        if let Some((v, tau)) = reflector(&cols[k][k..]) {
            for col in cols.iter_mut().skip(k) {
                reflect(&mut col[k..], &v, tau);
            }
        }
    }
    let mut r: Vec<Vec<Complex<T>>> = (0..n)
        .map(|i| (0..n).map(|j| if i <= j { cols[j][i] } else { zero() }).collect())
        .collect();

    let mut v = vec![vec![zero::<T>(); n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = one();
    }

    for k in 0..n {
        let x: Vec<_> = (k..n).map(|i| r[i][k]).collect();
        if let Some((h, tau)) = reflector(&x) {
            for j in k..n {
                let mut col: Vec<_> = (k..n).map(|i| r[i][j]).collect();
                reflect(&mut col, &h, tau);
                for (i, z) in (k..n).zip(col) {
                    r[i][j] = z;
                }
            }
        }
        if n - k > 2 {
            let x: Vec<_> = r[k][k + 1..].iter().map(|z| z.conj()).collect();
            if let Some((h, tau)) = reflector(&x) {
                for row in r.iter_mut().skip(k) {
                    reflect_row(&mut row[k + 1..], &h, tau);
                }
                for row in v.iter_mut() {
                    reflect_row(&mut row[k + 1..], &h, tau);
                }
            }
        }
    }

    let mut d: Vec<Complex<T>> = (0..n).map(|k| r[k][k]).collect();
    let mut e: Vec<Complex<T>> = (0..n.saturating_sub(1)).map(|k| r[k][k + 1]).collect();
    let mut b = vec![T::zero(); n * n];
    for k in 0..n {
        let ph = unit_phase(d[k]).conj();
        d[k] *= ph;
        if k + 1 < n {
            e[k] *= ph;
            let ph2 = unit_phase(e[k]).conj();
            e[k] *= ph2;
            d[k + 1] *= ph2;
            for row in v.iter_mut() {
                row[k + 1] *= ph2;
            }
            b[k * n + k + 1] = e[k].re;
        }
        b[k * n + k] = d[k].re;
    }

    bidiagonal_qr(&mut b, n, &mut v)?;

    let mut imin = 0;
    for i in 1..n {
        if b[i * n + i].abs() < b[imin * n + imin].abs() {
            imin = i;
        }
    }
    let mut x: Vec<Complex<T>> = v.iter().map(|row| row[imin]).collect();
    let mut big = 0;
    for i in 1..n {
        if x[i].norm() > x[big].norm() {
            big = i;
        }
    }
    let ph = unit_phase(x[big]).conj();
    let nrm = norm2(&x);
    for z in x.iter_mut() {
        *z = *z * ph / nrm;
    }
    x[big].im = T::zero();
    let sigma = norm2(&a.mul_vec(&x)?);
    Ok((x, sigma))
}

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn one<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// Householder vector `v` and factor `tau` with `(I - tau v v^H) x = alpha e_1`.
fn reflector<T: Real>(x: &[Complex<T>]) -> Option<(Vec<Complex<T>>, T)> {
    let nx = norm2(x);
    if nx == T::zero() {
        return None;
    }
    let alpha = -unit_phase(x[0]) * nx;
    let mut v = x.to_vec();
    v[0] -= alpha;
    let nv = norm2(&v);
    if nv == T::zero() {
        return None;
    }
    for z in v.iter_mut() {
        *z /= nv;
    }
    Some((v, lit(2.0)))
}

fn reflect<T: Real>(y: &mut [Complex<T>], v: &[Complex<T>], tau: T) {
    let s = v.iter().zip(y.iter()).fold(zero(), |acc, (a, b)| acc + a.conj() * b) * tau;
    for (yi, vi) in y.iter_mut().zip(v) {
        *yi -= vi * s;
    }
}

fn reflect_row<T: Real>(y: &mut [Complex<T>], v: &[Complex<T>], tau: T) {
    let s = v.iter().zip(y.iter()).fold(zero(), |acc, (a, b)| acc + a * b) * tau;
    for (yi, vi) in y.iter_mut().zip(v) {
        *yi -= vi.conj() * s;
    }
}

fn givens<T: Real>(y: T, z: T) -> (T, T) {
    let r = y.hypot(z);
    if r == T::zero() {
        (T::one(), T::zero())
    } else {
        (y / r, z / r)
    }
}

fn rotate_cols<T: Real>(b: &mut [T], n: usize, rows: std::ops::RangeInclusive<usize>, j: usize, k: usize, c: T, s: T) {
    for i in rows {
        let (x, y) = (b[i * n + j], b[i * n + k]);
        b[i * n + j] = c * x + s * y;
        b[i * n + k] = c * y - s * x;
    }
}

fn rotate_v<T: Real>(v: &mut [Vec<Complex<T>>], j: usize, k: usize, c: T, s: T) {
    for row in v.iter_mut() {
        let (x, y) = (row[j], row[k]);
        row[j] = x * c + y * s;
        row[k] = y * c - x * s;
    }
}

fn rotate_rows<T: Real>(b: &mut [T], n: usize, cols: std::ops::RangeInclusive<usize>, j: usize, k: usize, c: T, s: T) {
    for i in cols {
        let (x, y) = (b[j * n + i], b[k * n + i]);
        b[j * n + i] = c * x + s * y;
        b[k * n + i] = c * y - s * x;
    }
}

/// Diagonalizes the upper bidiagonal `b` (dense, row-major) in place,
/// applying every right rotation to `v` as well.
fn bidiagonal_qr<T: Real>(b: &mut [T], n: usize, v: &mut [Vec<Complex<T>>]) -> Result<()> {
    let eps = T::epsilon();
    let at = |b: &[T], i: usize, j: usize| b[i * n + j];
    let bnorm = (0..n).fold(T::zero(), |m, i| {
        let e = if i + 1 < n { at(b, i, i + 1).abs() } else { T::zero() };
        m.max(at(b, i, i).abs() + e)
    });
    if bnorm == T::zero() {
        return Ok(());
    }
    let max_iter = 100 * n * n + 100;
    let mut iter = 0;
    loop {
        for i in 0..n.saturating_sub(1) {
            if at(b, i, i + 1).abs() <= eps * (at(b, i, i).abs() + at(b, i + 1, i + 1).abs()) {
                b[i * n + i + 1] = T::zero();
            }
        }
        let mut q = n - 1;
        while q > 0 && at(b, q - 1, q) == T::zero() {
            q -= 1;
        }
        if q == 0 {
            return Ok(());
        }
        let mut p = q - 1;
        while p > 0 && at(b, p - 1, p) != T::zero() {
            p -= 1;
        }

        iter += 1;
        if iter > max_iter {
            return Err(Error::Numerical("bidiagonal QR did not converge".into()));
        }

        if let Some(i) = (p..=q).find(|&i| at(b, i, i).abs() <= eps * bnorm) {
            b[i * n + i] = T::zero();
            if i < q {
                for j in i + 1..=q {
                    let (c, s) = givens(at(b, j, j), at(b, i, j));
                    let hi = (j + 1).min(n - 1);
                    for col in j..=hi {
                        let (x, y) = (b[j * n + col], b[i * n + col]);
                        b[j * n + col] = c * x + s * y;
                        b[i * n + col] = c * y - s * x;
                    }
                    b[i * n + j] = T::zero();
                }
            } else {
                for j in (p..q).rev() {
                    let (c, s) = givens(at(b, j, j), at(b, j, q));
                    let lo = j.saturating_sub(1).max(p);
                    rotate_cols(b, n, lo..=j, j, q, c, s);
                    rotate_v(v, j, q, c, s);
                    b[j * n + q] = T::zero();
                }
            }
            continue;
        }

        let dm = at(b, q - 1, q - 1);
        let em = at(b, q - 1, q);
        let dq = at(b, q, q);
        let el = if q - 1 > p { at(b, q - 2, q - 1) } else { T::zero() };
        let t11 = dm * dm + el * el;
        let t12 = dm * em;
        let t22 = dq * dq + em * em;
        let delta = (t11 - t22) / lit(2.0);
        let mu = if t12 == T::zero() {
            t22
        } else {
            let den = delta + delta.signum() * delta.hypot(t12);
            let den = if den == T::zero() { t12.abs() } else { den };
            t22 - t12 * t12 / den
        };

        let mut y = at(b, p, p) * at(b, p, p) - mu;
        let mut z = at(b, p, p) * at(b, p, p + 1);
        for k in p..q {
            let (c, s) = givens(y, z);
            let lo = k.saturating_sub(1).max(p);
            rotate_cols(b, n, lo..=k + 1, k, k + 1, c, s);
            rotate_v(v, k, k + 1, c, s);
            if k > p {
                b[(k - 1) * n + k + 1] = T::zero();
            }
            y = at(b, k, k);
            z = at(b, k + 1, k);
            let (c, s) = givens(y, z);
            let hi = (k + 2).min(q);
            rotate_rows(b, n, k..=hi, k, k + 1, c, s);
            b[(k + 1) * n + k] = T::zero();
            if k + 1 < q {
                y = at(b, k, k + 1);
                z = at(b, k, k + 2);
            }
        }
    }
}
