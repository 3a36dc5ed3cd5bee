//! Reproducible random streams for sampling initial subspaces and test matrices.
//!
//! Every stream is keyed by `(seed, stream index)`: the pair is scrambled with
//! splitmix64 into the key of a ChaCha8 counter-mode generator, so the values
//! drawn for sample `i` never depend on how other samples were scheduled.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::linalg::{orthonormalize, Matrix};
use crate::scalar::{Real, Scalar};

/// splitmix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub struct SampleRng {
    inner: ChaCha8Rng,
    spare: Option<f64>,
}

impl SampleRng {
    pub fn for_stream(seed: u64, stream: u64) -> Self {
        let key = splitmix64(seed ^ splitmix64(stream.wrapping_add(0x5851_F42D_4C95_7F2D)));
        Self { inner: ChaCha8Rng::seed_from_u64(key), spare: None }
    }

    /// Uniform in the half-open interval (0, 1].
    pub fn uniform(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) as f64 + 1.0) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * (self.uniform() - f64::EPSILON / 2.0).max(0.0)
    }

    /// Integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: usize, hi: usize) -> usize {
        assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.inner.next_u64() % span) as usize
    }

    /// Standard normal via the Box–Muller transform.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let phi = std::f64::consts::TAU * u2;
        self.spare = Some(r * phi.sin());
        r * phi.cos()
    }

    /// Standard normal scalar; complex draws have independent parts of variance 1/2.
    pub fn normal_scalar<S: Scalar>(&mut self) -> S {
        if S::IS_COMPLEX {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            S::from_parts(S::Real::of(h * self.normal()), S::Real::of(h * self.normal()))
        } else {
            S::from_real(S::Real::of(self.normal()))
        }
    }

    pub fn gaussian_matrix<S: Scalar>(&mut self, rows: usize, cols: usize) -> Matrix<S> {
        Matrix::from_fn(rows, cols, |_, _| self.normal_scalar())
    }

    /// Haar-distributed unitary (orthogonal for real scalars), up to column phases.
    pub fn unitary<S: Scalar>(&mut self, n: usize) -> Matrix<S> {
        loop {
            if let Ok(q) = orthonormalize(&self.gaussian_matrix::<S>(n, n)) {
                return q;
            }
        }
    }

    /// Matrix with orthonormal columns.
    pub fn orthonormal<S: Scalar>(&mut self, n: usize, k: usize) -> Matrix<S> {
        loop {
            if let Ok(q) = orthonormalize(&self.gaussian_matrix::<S>(n, k)) {
                return q;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<f64> = {
            let mut r = SampleRng::for_stream(42, 3);
            (0..5).map(|_| r.normal()).collect()
        };
        let b: Vec<f64> = {
            let mut r = SampleRng::for_stream(42, 3);
            (0..5).map(|_| r.normal()).collect()
        };
        let c: Vec<f64> = {
            let mut r = SampleRng::for_stream(42, 4);
            (0..5).map(|_| r.normal()).collect()
        };
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn normal_moments() {
        let mut r = SampleRng::for_stream(7, 0);
        let n = 20000;
        let xs: Vec<f64> = (0..n).map(|_| r.normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.03);
        assert!((var - 1.0).abs() < 0.05);
    }

    #[test]
    fn uniform_range() {
        let mut r = SampleRng::for_stream(1, 1);
        for _ in 0..1000 {
            let u = r.uniform();
            assert!(u > 0.0 && u <= 1.0);
            let k = r.int_in(2, 5);
            assert!((2..=5).contains(&k));
        }
    }
}
