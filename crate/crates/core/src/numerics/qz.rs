use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{ComplexMatrix, Rot};
use crate::{lit, rel_tol, Error, Real, Result};

/// Finite generalized eigenvalues and the number filtered as infinite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalues<T> {
    pub finite: Vec<Complex<T>>,
    pub infinite: usize,
}

/// Eigenvalues of the pencil `A - λB` by single-shift complex QZ.
///
/// An eigenvalue is reported infinite when the final triangular diagonal
/// entry satisfies `|T_jj| <= 1e-13 ‖B‖_F`.
pub fn generalized_eigenvalues<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<Eigenvalues<T>> {
    let n = a.rows();
    if a.cols() != n || b.rows() != n || b.cols() != n {
        return Err(Error::Dimension(format!(
            "pencil needs two square matrices of equal size, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Input("pencil has non-finite entries".into()));
    }
    if n == 0 {
        return Ok(Eigenvalues { finite: vec![], infinite: 0 });
    }
    let mut qz = Qz {
        n,
        s: a.entries().to_vec(),
        t: b.entries().to_vec(),
    };
    qz.hessenberg_triangular();
    qz.iterate()?;

    let norm_t = b.frobenius_norm();
    let tol = rel_tol::<T>(1e-13) * norm_t;
    let mut finite = Vec::with_capacity(n);
    let mut infinite = 0;
    for i in 0..n {
        let tii = qz.t[i * n + i];
        if norm_t == T::zero() || tii.norm() <= tol {
            infinite += 1;
        } else {
            finite.push(qz.s[i * n + i] / tii);
        }
    }
    Ok(Eigenvalues { finite, infinite })
}

struct Qz<T> {
    n: usize,
    s: Vec<Complex<T>>,
    t: Vec<Complex<T>>,
}

impl<T: Real> Qz<T> {
    fn s(&self, i: usize, j: usize) -> Complex<T> {
        self.s[i * self.n + j]
    }

    fn t(&self, i: usize, j: usize) -> Complex<T> {
        self.t[i * self.n + j]
    }

    fn rows_st(&mut self, g: Rot<T>, i: usize, j: usize, s_cols: std::ops::Range<usize>, t_cols: std::ops::Range<usize>) {
        let n = self.n;
        for c in s_cols {
            let (x, y) = g.apply(self.s[i * n + c], self.s[j * n + c]);
            self.s[i * n + c] = x;
            self.s[j * n + c] = y;
        }
        for c in t_cols {
            let (x, y) = g.apply(self.t[i * n + c], self.t[j * n + c]);
            self.t[i * n + c] = x;
            self.t[j * n + c] = y;
        }
    }

    fn cols_st(&mut self, g: Rot<T>, i: usize, j: usize, s_rows: std::ops::Range<usize>, t_rows: std::ops::Range<usize>) {
        let n = self.n;
        for r in s_rows {
            let (x, y) = g.apply(self.s[r * n + i], self.s[r * n + j]);
            self.s[r * n + i] = x;
            self.s[r * n + j] = y;
        }
        for r in t_rows {
            let (x, y) = g.apply(self.t[r * n + i], self.t[r * n + j]);
            self.t[r * n + i] = x;
            self.t[r * n + j] = y;
        }
    }

    /// Reduces `(S, T)` to upper Hessenberg / upper triangular form.
    fn hessenberg_triangular(&mut self) {
        let n = self.n;
        let zero = Complex::new(T::zero(), T::zero());
        for j in 0..n {
            for i in (j + 1..n).rev() {
                if self.t(i, j) == zero {
                    continue;
                }
                let g = Rot::zeroing(self.t(i - 1, j), self.t(i, j));
                self.rows_st(g, i - 1, i, 0..n, j..n);
                self.t[i * n + j] = zero;
            }
        }
        for j in 0..n.saturating_sub(2) {
            for i in (j + 2..n).rev() {
                if self.s(i, j) == zero {
                    continue;
                }
                let g = Rot::zeroing(self.s(i - 1, j), self.s(i, j));
                self.rows_st(g, i - 1, i, j..n, i - 1..n);
                self.s[i * n + j] = zero;
                let g = Rot::zeroing(self.t(i, i), self.t(i, i - 1));
                self.cols_st(g, i, i - 1, 0..n, 0..i + 1);
                self.t[i * n + i - 1] = zero;
            }
        }
    }

    fn iterate(&mut self) -> Result<()> {
        let n = self.n;
        let eps = T::epsilon();
        let zero = Complex::new(T::zero(), T::zero());
        let norm_s = super::norm2(&self.s);
        let norm_t = super::norm2(&self.t);
        let mut l = n - 1;
        let mut local_iter = 0;
        let mut total_iter = 0;
        let max_iter = 40 * n + 40;
        while l > 0 {
            let mut f = l;
            while f > 0 {
                let mut scale = self.s(f - 1, f - 1).norm() + self.s(f, f).norm();
                if scale == T::zero() {
                    scale = norm_s;
                }
                if self.s(f, f - 1).norm() < eps * scale {
                    break;
                }
                f -= 1;
            }
            if f > 0 {
                self.s[f * n + f - 1] = zero;
            }
            if f == l {
                l -= 1;
                local_iter = 0;
                continue;
            }

            let small = (f..=l).rev().find(|&k| self.t(k, k).norm() <= eps * norm_t);
            if let Some(z) = small {
                self.t[z * n + z] = zero;
                self.push_down_zero(z, f, l);
                local_iter = 0;
                continue;
            }

            local_iter += 1;
            total_iter += 1;
            if total_iter > max_iter {
                return Err(Error::Numerical("QZ iteration did not converge".into()));
            }
            self.single_shift_step(f, l, local_iter);
        }
        Ok(())
    }

    /// Chases a zero at `T(z, z)` to `T(l, l)` and splits off `S(l, l-1)`.
    fn push_down_zero(&mut self, z: usize, f: usize, l: usize) {
        let n = self.n;
        let zero = Complex::new(T::zero(), T::zero());
        for zz in z..l {
            let first = if zz > f { zz - 1 } else { zz };
            let g = Rot::zeroing(self.t(zz, zz + 1), self.t(zz + 1, zz + 1));
            self.rows_st(g, zz, zz + 1, first..n, zz..n);
            self.t[(zz + 1) * n + zz + 1] = zero;
            if zz > f {
                let g = Rot::zeroing(self.s(zz + 1, zz), self.s(zz + 1, zz - 1));
                let hi = (zz + 2).min(n);
                self.cols_st(g, zz, zz - 1, 0..hi, 0..zz + 1);
                self.s[(zz + 1) * n + zz - 1] = zero;
            }
        }
        let g = Rot::zeroing(self.s(l, l), self.s(l, l - 1));
        self.cols_st(g, l, l - 1, 0..l + 1, 0..l);
        self.s[l * n + l - 1] = zero;
    }

    fn single_shift_step(&mut self, f: usize, l: usize, local_iter: usize) {
        let n = self.n;
        let zero = Complex::new(T::zero(), T::zero());
        let mu = if local_iter.is_multiple_of(10) {
            let mut x = self.s(l, l - 1).norm();
            if l >= f + 2 {
                x += self.s(l - 1, l - 2).norm();
            }
            self.s(l, l) / self.t(l, l) + Complex::new(lit::<T>(0.75), lit::<T>(0.4)) * x / self.t(l, l).norm()
        } else {
            self.wilkinson_shift(l)
        };

        let mut x = self.s(f, f) - mu * self.t(f, f);
        let mut y = self.s(f + 1, f);
        for k in f..l {
            let g = Rot::zeroing(x, y);
            let first = if k > f { k - 1 } else { k };
            self.rows_st(g, k, k + 1, first..l + 1, k..l + 1);
            if k > f {
                self.s[(k + 1) * n + k - 1] = zero;
            }
            let g = Rot::zeroing(self.t(k + 1, k + 1), self.t(k + 1, k));
            let hi = (k + 3).min(l + 1);
            self.cols_st(g, k + 1, k, f..hi, f..k + 2);
            self.t[(k + 1) * n + k] = zero;
            if k + 1 < l {
                x = self.s(k + 1, k);
                y = self.s(k + 2, k);
            }
        }
    }

    /// Eigenvalue of the trailing 2x2 pencil closest to `S(l,l)/T(l,l)`.
    fn wilkinson_shift(&self, l: usize) -> Complex<T> {
        let (a, b, c, d) = (self.s(l - 1, l - 1), self.s(l - 1, l), self.s(l, l - 1), self.s(l, l));
        let (p, q, r) = (self.t(l - 1, l - 1), self.t(l - 1, l), self.t(l, l));
        let qa = p * r;
        let qb = a * r + d * p - c * q;
        let qc = a * d - b * c;
        let target = d / r;
        let disc = (qb * qb - qa * qc * lit::<T>(4.0)).sqrt();
        let two = lit::<T>(2.0);
        let (r1, r2) = ((qb + disc) / (qa * two), (qb - disc) / (qa * two));
        let pick = if (r1 - target).norm() <= (r2 - target).norm() { r1 } else { r2 };
        if pick.re.is_finite() && pick.im.is_finite() {
            pick
        } else {
            target
        }
    }
}
