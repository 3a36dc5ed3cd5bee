use super::spectrum::{LinearOperator, Spectrum};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, hermitian_eigenvalues, Matrix};
use crate::majorization::DescTuple;
use crate::scalar::{Real, Scalar};
use crate::subspaces::Subspace;

const BASIS_TOL: f64 = 1e-10;

/// Leading Ritz pairs of a Hermitian operator in a trial subspace.
#[derive(Clone, Debug)]
pub struct RitzSet<S: Scalar> {
    /// The `want` largest Ritz values.
    pub values: DescTuple<S::Real>,
    /// Every Ritz value in the trial subspace, descending.
    pub all_values: Vec<S::Real>,
    /// Ritz vectors for `values`, orthonormal.
    pub vectors: Matrix<S>,
    /// Largest minus smallest Ritz value in the trial subspace.
    pub spread: S::Real,
}

/// Rayleigh–Ritz extraction from an orthonormal basis.
pub fn rayleigh_ritz<S: Scalar>(spec: &Spectrum<S>, basis: &Subspace<S>, want: usize) -> Result<RitzSet<S>> {
    if !spec.is_hermitian() {
        return Err(Error::Invalid("Rayleigh–Ritz needs a Hermitian operator".into()));
    }
    let q = basis.basis();
    let r = q.orthonormality_residual();
    if r > S::Real::tol(BASIS_TOL) {
        return Err(Error::NotOrthonormal(r.to_f64_lossy()));
    }
    if want == 0 || want > q.cols() {
        return Err(Error::Invalid(format!("{want} Ritz pairs from a {}-dimensional subspace", q.cols())));
    }
    let h = q.adjoint_mul(&spec.apply(q)).hermitian_part();
    let (all_values, z) = hermitian_eig(&h)?;
    let idx: Vec<usize> = (0..want).collect();
    let vectors = q.matmul(&z.select_columns(&idx));
    let spread = all_values[0] - all_values[all_values.len() - 1];
    Ok(RitzSet { values: DescTuple::new(all_values[..want].to_vec())?, all_values, vectors, spread })
}

/// Ritz values of a Hermitian operator in `range(q)` for orthonormal `q`, descending.
pub fn ritz_values<S: Scalar, Op: LinearOperator<S>>(op: &Op, q: &Matrix<S>) -> Result<Vec<S::Real>> {
    hermitian_eigenvalues(&q.adjoint_mul(&op.apply(q)).hermitian_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensolvers::block_krylov_basis;
    use crate::linalg::norm;
    use crate::rng::SampleRng;
    use num_complex::Complex64;

    fn random_spectrum(seed: u64, n: usize) -> Spectrum<Complex64> {
        let mut rng = SampleRng::for_stream(seed, 0);
        let vals: Vec<f64> = (0..n).map(|_| rng.uniform_in(-1.0, 2.0)).collect();
        Spectrum::hermitian(vals, rng.unitary(n)).unwrap()
    }

    #[test]
    fn invariant_subspace_gives_eigenvalues() {
        let spec = random_spectrum(1, 12);
        let lam = spec.real_values();
        let rs = rayleigh_ritz(&spec, &spec.invariant_subspace(&[0, 1, 2]), 3).unwrap();
        for (a, b) in rs.values.values().iter().zip(&lam) {
            assert!((a - b).abs() < 1e-10);
        }
        let whole = Subspace::from_orthonormal(Matrix::identity(12)).unwrap();
        let rs = rayleigh_ritz(&spec, &whole, 12).unwrap();
        for (a, b) in rs.all_values.iter().zip(&lam) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!((rs.spread - (lam[0] - lam[11])).abs() < 1e-10);
    }

    #[test]
    fn residuals_are_orthogonal_to_the_subspace() {
        let spec = random_spectrum(2, 20);
        let mut rng = SampleRng::for_stream(2, 1);
        let basis = Subspace::spanned_by(&rng.gaussian_matrix::<Complex64>(20, 5)).unwrap();
        let rs = rayleigh_ritz(&spec, &basis, 3).unwrap();
        let av = spec.apply(&rs.vectors);
        for j in 0..3 {
            let eta = Complex64::new(rs.values.values()[j], 0.0);
            let r: Vec<Complex64> = av.col(j).iter().zip(rs.vectors.col(j)).map(|(a, v)| a - eta * v).collect();
            let proj = basis.basis().adjoint_mul(&Matrix::column_vector(&r));
            assert!(norm(proj.as_slice()) < 1e-10);
            assert!(rs.values.values()[j] <= spec.lambda_max() + 1e-12);
            assert!(rs.values.values()[j] >= spec.lambda_min() - 1e-12);
        }
    }

    #[test]
    fn nested_subspaces_raise_ritz_values() {
        let spec = random_spectrum(3, 30);
        let mut rng = SampleRng::for_stream(3, 1);
        let y = Subspace::spanned_by(&rng.gaussian_matrix::<Complex64>(30, 3)).unwrap();
        let small = rayleigh_ritz(&spec, &y, 3).unwrap();
        let big = rayleigh_ritz(&spec, &block_krylov_basis(&spec, &y, 3).unwrap(), 3).unwrap();
        for (a, b) in small.values.values().iter().zip(big.values.values()) {
            assert!(a <= &(b + 1e-12));
        }
    }

    #[test]
    fn rejects_non_orthonormal_basis() {
        let spec = Spectrum::<f64>::diagonal(vec![2.0, 1.0]).unwrap();
        let b = Subspace::new(Matrix::column_vector(&[1.0, 1.0])).unwrap();
        assert!(matches!(rayleigh_ritz(&spec, &b, 1), Err(Error::NotOrthonormal(_))));
    }
}
