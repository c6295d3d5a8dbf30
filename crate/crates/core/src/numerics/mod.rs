//! Dense complex kernels: smallest singular vector and generalized eigenvalues.

mod matrix;
mod qz;
mod svd;

pub use matrix::ComplexMatrix;
pub use qz::{generalized_eigenvalues, Eigenvalues};
pub use svd::smallest_singular_vector;

use crate::Real;
use num_complex::Complex;

/// Plane rotation `[c s; -conj(s) c]` with real `c`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Rot<T> {
    pub c: T,
    pub s: Complex<T>,
}

impl<T: Real> Rot<T> {
    /// Rotation mapping `(a, b)` to `(r, 0)`.
    pub fn zeroing(a: Complex<T>, b: Complex<T>) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        if b == zero {
            return Rot { c: T::one(), s: zero };
        }
        if a == zero {
            return Rot {
                c: T::zero(),
                s: b.conj() / b.norm(),
            };
        }
        let na = a.norm();
        let nr = na.hypot(b.norm());
        let phase = a / na;
        Rot {
            c: na / nr,
            s: phase * b.conj() / nr,
        }
    }

    #[inline]
    pub fn apply(&self, x: Complex<T>, y: Complex<T>) -> (Complex<T>, Complex<T>) {
        (x * self.c + self.s * y, y * self.c - self.s.conj() * x)
    }
}

/// Phase `z/|z|`, or one at zero.
pub(crate) fn unit_phase<T: Real>(z: Complex<T>) -> Complex<T> {
    let r = z.norm();
    if r == T::zero() {
        Complex::new(T::one(), T::zero())
    } else {
        z / r
    }
}

pub(crate) fn norm2<T: Real>(v: &[Complex<T>]) -> T {
    let scale = v.iter().fold(T::zero(), |m, z| m.max(z.re.abs()).max(z.im.abs()));
    if scale == T::zero() || !scale.is_finite() {
        return scale;
    }
    let s: T = v.iter().map(|z| (z / scale).norm_sqr()).sum();
    scale * s.sqrt()
}
