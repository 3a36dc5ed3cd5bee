#![allow(dead_code)]

use clusterbounds::eigensolvers::Spectrum;
use clusterbounds::filters::FilterSpec;
use clusterbounds::linalg::Matrix;
use clusterbounds::rng::SampleRng;
use clusterbounds::subspaces::Subspace;
use clusterbounds::{Complex64, Real, Scalar};

/// Hermitian operator with `p` wanted eigenvalues in `[1.5, 3]` and the rest
/// in `[-1, 1]`, so the wanted block also dominates in modulus.
pub fn hermitian_instance<S: Scalar>(rng: &mut SampleRng, n: usize, p: usize) -> Spectrum<S> {
    let mut vals: Vec<f64> = (0..n).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
    for v in vals.iter_mut().take(p) {
        *v = rng.uniform_in(1.5, 3.0);
    }
    let vals = vals.into_iter().map(S::Real::of).collect();
    Spectrum::hermitian(vals, rng.unitary(n)).unwrap().with_p(p).unwrap()
}

pub fn random_start<S: Scalar>(rng: &mut SampleRng, n: usize, p: usize) -> Subspace<S> {
    Subspace::new(rng.gaussian_matrix(n, p)).unwrap()
}

/// A filter with `min_{i≤p} |f(λᵢ)| > max_{j>p} |f(λⱼ)|`, drawn from one of
/// three families chosen by `kind`.
pub fn admissible_filter(rng: &mut SampleRng, spec: &Spectrum<Complex64>, kind: usize) -> FilterSpec<Complex64> {
    let p = spec.p().unwrap();
    let lam = spec.real_values();
    let n = lam.len();
    loop {
        let f = match kind % 3 {
            0 => {
                let k = rng.int_in(1, 8);
                clusterbounds::filters::make_shifted_chebyshev(lam[p], lam[n - 1], k).unwrap()
            }
            1 => {
                // Random moduli with a gap and random phases.
                let cut = rng.uniform_in(0.2, 0.9);
                let entries = spec
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(j, &l)| {
                        let m = if j < p { rng.uniform_in(cut * 1.05, 2.0) } else { rng.uniform_in(0.0, cut) };
                        let phase = rng.uniform_in(0.0, std::f64::consts::TAU);
                        (l, Complex64::from_polar(m, phase))
                    })
                    .collect();
                FilterSpec::EigenvalueTable { entries }
            }
            _ => {
                // Monic polynomial with roots among the unwanted eigenvalues.
                let deg = rng.int_in(1, 4);
                let mut coeffs = vec![Complex64::new(1.0, 0.0)];
                for _ in 0..deg {
                    let r = Complex64::new(rng.uniform_in(lam[n - 1], lam[p]), 0.0);
                    let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
                    for (d, &c) in coeffs.iter().enumerate() {
                        next[d + 1] += c;
                        next[d] -= r * c;
                    }
                    coeffs = next;
                }
                FilterSpec::Polynomial { coeffs }
            }
        };
        let m: Vec<f64> = f.values_on(spec).unwrap().iter().map(|v| v.norm()).collect();
        let top = m[p..].iter().copied().fold(0.0, f64::max);
        if m[..p].iter().all(|&v| v > top * (1.0 + 1e-6)) {
            return f;
        }
    }
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn max_rel_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| rel_diff(*x, *y)).fold(0.0, f64::max)
}

pub fn frobenius_rel<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> f64 {
    let d = (a - b).frobenius_norm().to_f64_lossy();
    d / b.frobenius_norm().to_f64_lossy().max(f64::MIN_POSITIVE)
}
