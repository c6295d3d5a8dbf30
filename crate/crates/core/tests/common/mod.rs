//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use aaa_lawson::{ComplexMatrix, Complex};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type C = Complex<f64>;

pub fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn randn(r: &mut StdRng) -> C {
    c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn random_matrix(r: &mut StdRng, rows: usize, cols: usize) -> ComplexMatrix<f64> {
    ComplexMatrix::from_fn(rows, cols, |_, _| randn(r))
}

pub fn vnorm(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn random_unit(r: &mut StdRng, n: usize) -> Vec<C> {
    let v: Vec<C> = (0..n).map(|_| randn(r)).collect();
    let s = vnorm(&v);
    v.into_iter().map(|z| z / s).collect()
}

/// One-sided Jacobi SVD applied directly to the columns of `a`.
/// Returns the right singular vector for the smallest singular value.
pub fn jacobi_smallest(a: &ComplexMatrix<f64>) -> (Vec<C>, f64) {
    let (m, n) = (a.rows(), a.cols());
    let mut u: Vec<Vec<C>> = (0..n).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
    let mut v: Vec<Vec<C>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
        .collect();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = u[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = u[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C = u[p].iter().zip(&u[q]).map(|(x, y)| x.conj() * y).sum();
                if gamma.norm() <= 1e-15 * (alpha * beta).sqrt() || gamma.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                let ph = (gamma / gamma.norm()).conj();
                let zeta = (beta - alpha) / (2.0 * gamma.norm());
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for cols in [&mut u, &mut v] {
                    for i in 0..cols[p].len() {
                        let x = cols[p][i];
                        let y = cols[q][i] * ph;
                        cols[p][i] = x * cs - y * sn;
                        cols[q][i] = x * sn + y * cs;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = u.iter().map(|col| vnorm(col)).collect();
    let k = (0..n).min_by(|&i, &j| norms[i].partial_cmp(&norms[j]).unwrap()).unwrap();
    (v[k].clone(), norms[k])
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(mut a: Vec<Vec<C>>) -> C {
    let n = a.len();
    let mut d = c(1.0, 0.0);
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].norm().partial_cmp(&a[j][k].norm()).unwrap()).unwrap();
        if a[p][k].norm() == 0.0 {
            return c(0.0, 0.0);
        }
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        d *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let x = a[k][j];
                a[i][j] -= f * x;
            }
        }
    }
    d
}

/// Dense LU solve with partial pivoting.
pub fn solve(mut a: Vec<Vec<C>>, mut b: Vec<C>) -> Vec<C> {
    let n = a.len();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].norm().partial_cmp(&a[j][k].norm()).unwrap()).unwrap();
        a.swap(p, k);
        b.swap(p, k);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let x = a[k][j];
                a[i][j] -= f * x;
            }
            let x = b[k];
            b[i] -= f * x;
        }
    }
    let mut x = vec![c(0.0, 0.0); n];
    for i in (0..n).rev() {
        let s: C = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

/// Coefficients (ascending) of det(A - λB), from samples on a circle.
pub fn char_poly(a: &ComplexMatrix<f64>, b: &ComplexMatrix<f64>) -> Vec<C> {
    let n = a.rows();
    let rho = 1.0;
    let m = n + 1;
    let nodes: Vec<C> = (0..m)
        .map(|k| Complex::from_polar(rho, 2.0 * std::f64::consts::PI * k as f64 / m as f64))
        .collect();
    let vals: Vec<C> = nodes
        .iter()
        .map(|&l| det((0..n).map(|i| (0..n).map(|j| a[(i, j)] - l * b[(i, j)]).collect()).collect()))
        .collect();
    (0..m)
        .map(|j| {
            let s: C = nodes.iter().zip(&vals).map(|(z, v)| v * z.powi(-(j as i32))).sum();
            s / m as f64
        })
        .collect()
}

pub fn poly_eval(coef: &[C], z: C) -> C {
    coef.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Roots of a polynomial (ascending coefficients) by Aberth iteration.
pub fn poly_roots(coef: &[C]) -> Vec<C> {
    let mut coef = coef.to_vec();
    while coef.len() > 1 && coef.last().unwrap().norm() == 0.0 {
        coef.pop();
    }
    let n = coef.len() - 1;
    if n == 0 {
        return vec![];
    }
    let lead = *coef.last().unwrap();
    let p: Vec<C> = coef.iter().map(|a| a / lead).collect();
    let dp: Vec<C> = (1..=n).map(|k| p[k] * k as f64).collect();
    let radius = 1.0 + p[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<C> = (0..n)
        .map(|k| Complex::from_polar(0.5 * radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let ratio = poly_eval(&p, z[i]) / poly_eval(&dp, z[i]);
            let s: C = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    z
}

/// Greedy matching distance: for each `a`, the distance to the nearest unused `b`.
pub fn match_sets(a: &[C], b: &[C]) -> Vec<f64> {
    let mut used = vec![false; b.len()];
    a.iter()
        .map(|x| {
            let (k, d) = b
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, y)| (k, (x - y).norm()))
                .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
                .unwrap();
            used[k] = true;
            d
        })
        .collect()
}

/// Polynomial with the given roots, ascending coefficients.
pub fn from_roots(roots: &[C]) -> Vec<C> {
    let mut p = vec![c(1.0, 0.0)];
    for r in roots {
        let mut q = vec![c(0.0, 0.0); p.len() + 1];
        for (k, a) in p.iter().enumerate() {
            q[k + 1] += a;
            q[k] -= a * r;
        }
        p = q;
    }
    p
}
