//! Subspaces, principal angles and the biorthogonal auxiliary basis.
//!
//! Angles from 𝒰 to 𝒱 are listed in non-increasing order; with orthonormal
//! bases their cosines are the singular values of `VᴴU`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    orthonormal_complement, orthonormalize, pseudoinverse, singular_values, svd, Lu, Matrix, DEFAULT_PINV_TOL,
};
use crate::majorization::DescTuple;
use crate::scalar::{Real, Scalar};

const RANK_TOL: f64 = 1e-12;
const ORTHONORMAL_TOL: f64 = 1e-12;

/// Column space of a full-rank basis matrix.
#[derive(Clone, Debug)]
pub struct Subspace<S: Scalar> {
    basis: Matrix<S>,
    orthonormal: bool,
}

impl<S: Scalar> Subspace<S> {
    /// Wraps a general basis; fails unless it has full column rank.
    pub fn new(basis: Matrix<S>) -> Result<Self> {
        check_full_rank(&basis)?;
        let orthonormal = basis.orthonormality_residual() <= S::Real::tol(ORTHONORMAL_TOL);
        Ok(Self { basis, orthonormal })
    }

    /// Orthonormalizes the given spanning set.
    pub fn spanned_by(m: &Matrix<S>) -> Result<Self> {
        Ok(Self { basis: orthonormalize(m)?, orthonormal: true })
    }

    /// Wraps a basis that must already be orthonormal.
    pub fn from_orthonormal(basis: Matrix<S>) -> Result<Self> {
        basis.ensure_finite()?;
        let r = basis.orthonormality_residual();
        if basis.cols() == 0 || basis.cols() > basis.rows() || r > S::Real::tol(ORTHONORMAL_TOL) {
            return Err(Error::NotOrthonormal(r.to_f64_lossy()));
        }
        Ok(Self { basis, orthonormal: true })
    }

    pub(crate) fn from_orthonormal_unchecked(basis: Matrix<S>) -> Self {
        Self { basis, orthonormal: true }
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn into_basis(self) -> Matrix<S> {
        self.basis
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// The same subspace with an orthonormal basis.
    pub fn orthonormalized(&self) -> Result<Self> {
        if self.orthonormal {
            return Ok(self.clone());
        }
        Self::spanned_by(&self.basis)
    }

    /// Orthonormal basis of the orthogonal complement.
    pub fn complement(&self) -> Result<Self> {
        Ok(Self { basis: orthonormal_complement(&self.basis)?, orthonormal: true })
    }

    /// `self + other`; fails if the sum is not direct. Both bases are
    /// orthonormalized first so that column scaling does not mask the rank.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        let (a, b) = (self.orthonormalized()?, other.orthonormalized()?);
        Self::spanned_by(&a.basis.hstack(&b.basis))
    }

    pub fn select(&self, tau: &IndexSet) -> Result<Self> {
        let basis = select_columns(&self.basis, tau)?;
        Ok(Self { basis, orthonormal: self.orthonormal })
    }
}

fn check_full_rank<S: Scalar>(m: &Matrix<S>) -> Result<()> {
    m.ensure_finite()?;
    let threshold = RANK_TOL;
    if m.cols() == 0 || m.cols() > m.rows() {
        return Err(Error::RankDeficient { ratio: 0.0, threshold });
    }
    let sv = singular_values(m)?;
    let (top, low) = (sv[0], *sv.last().unwrap());
    if top == S::Real::zero() || low <= S::Real::tol(RANK_TOL) * top {
        let ratio = if top == S::Real::zero() { 0.0 } else { (low / top).to_f64_lossy() };
        return Err(Error::RankDeficient { ratio, threshold });
    }
    Ok(())
}

/// Ordered index set `{i₁ < … < i_t}` with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::Invalid("index set must not be empty".into()));
        }
        if indices[0] == 0 {
            return Err(Error::IndexOutOfRange("indices are 1-based".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!("indices {indices:?} are not strictly increasing")));
        }
        Ok(Self { indices })
    }

    /// `{1, …, i}`.
    pub fn leading(i: usize) -> Result<Self> {
        Self::new((1..=i).collect())
    }

    /// `{lo, …, hi}`.
    pub fn range(lo: usize, hi: usize) -> Result<Self> {
        Self::new((lo..=hi).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i - 1).collect()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn first(&self) -> usize {
        self.indices[0]
    }

    pub fn last(&self) -> usize {
        *self.indices.last().unwrap()
    }

    pub fn check_within(&self, p: usize) -> Result<()> {
        if self.last() > p {
            return Err(Error::IndexOutOfRange(format!("index {} exceeds {p}", self.last())));
        }
        Ok(())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for IndexSet {
    type Err = Error;

    /// Accepts `1,2,3` or ranges such as `3-8`, possibly mixed.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad index `{x}`")));
            match part.split_once('-') {
                Some((a, b)) => out.extend(parse(a)?..=parse(b)?),
                None => out.push(parse(part)?),
            }
        }
        Self::new(out)
    }
}

/// The columns of `y` listed in `tau`, in order.
pub fn select_columns<S: Scalar>(y: &Matrix<S>, tau: &IndexSet) -> Result<Matrix<S>> {
    tau.check_within(y.cols())?;
    Ok(y.select_columns(&tau.zero_based()))
}

/// Principal angles, non-increasing, each in `[0, π/2)`.
#[derive(Clone, Debug)]
pub struct AngleTuple<R: Real> {
    angles: DescTuple<R>,
}

impl<R: Real> AngleTuple<R> {
    fn new(angles: Vec<R>) -> Result<Self> {
        let half_pi = R::of(std::f64::consts::FRAC_PI_2);
        if let Some(&a) = angles.iter().find(|&&a| a >= half_pi) {
            return Err(Error::RightAngle(a.cos().to_f64_lossy()));
        }
        Ok(Self { angles: DescTuple::new(angles)? })
    }

    pub fn angles(&self) -> &DescTuple<R> {
        &self.angles
    }

    pub fn largest(&self) -> R {
        self.angles.first()
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn tangents(&self) -> DescTuple<R> {
        self.angles.map(|a| a.tan()).expect("angles below a right angle")
    }

    pub fn tangents_squared(&self) -> DescTuple<R> {
        self.angles.map(|a| a.tan().powi(2)).expect("angles below a right angle")
    }

    pub fn sines(&self) -> DescTuple<R> {
        self.angles.map(|a| a.sin()).expect("finite")
    }
}

fn check_order<S: Scalar>(u: &Subspace<S>, v: &Subspace<S>) -> Result<()> {
    if u.ambient_dim() != v.ambient_dim() {
        return Err(Error::Dimension(format!(
            "subspaces live in dimensions {} and {}",
            u.ambient_dim(),
            v.ambient_dim()
        )));
    }
    if u.dim() > v.dim() {
        return Err(Error::Dimension(format!(
            "angles from a {}-dimensional to a {}-dimensional subspace",
            u.dim(),
            v.dim()
        )));
    }
    Ok(())
}

/// Angles as arccosines of the singular values of `VᴴU`.
///
/// Cosines are clamped into `[0, 1]` before the arccosine. Accuracy for
/// small angles is limited to about `√ε`; [`principal_angles`] avoids that.
pub fn principal_angles_cosine<S: Scalar>(u: &Subspace<S>, v: &Subspace<S>) -> Result<AngleTuple<S::Real>> {
    check_order(u, v)?;
    let (u, v) = (u.orthonormalized()?, v.orthonormalized()?);
    let cos = singular_values(&v.basis.adjoint_mul(&u.basis))?;
    let one = S::Real::one();
    AngleTuple::new(cos.iter().map(|&c| c.max(S::Real::zero()).min(one).acos()).collect())
}

/// Angles from combined sines and cosines, accurate for small and large angles.
///
/// The sines are the singular values of `(I − VVᴴ)U`, the cosines those of
/// `VᴴU`; the `j`-th largest sine pairs with the `j`-th smallest cosine.
pub fn principal_angles<S: Scalar>(u: &Subspace<S>, v: &Subspace<S>) -> Result<AngleTuple<S::Real>> {
    check_order(u, v)?;
    let (u, v) = (u.orthonormalized()?, v.orthonormalized()?);
    let g = v.basis.adjoint_mul(&u.basis);
    let cos = singular_values(&g)?;
    let residual = &u.basis - &v.basis.matmul(&g);
    let sin = singular_values(&residual)?;
    let s = u.dim();
    AngleTuple::new((0..s).map(|j| sin[j].atan2(cos[s - 1 - j])).collect())
}

/// Tangents of the angles from 𝒰 to 𝒱, `tan θⱼ = sin θⱼ / cos θⱼ`.
pub fn principal_tangents<S: Scalar>(u: &Subspace<S>, v: &Subspace<S>) -> Result<DescTuple<S::Real>> {
    check_order(u, v)?;
    let (u, v) = (u.orthonormalized()?, v.orthonormalized()?);
    let g = v.basis.adjoint_mul(&u.basis);
    let cos = singular_values(&g)?;
    let residual = &u.basis - &v.basis.matmul(&g);
    let sin = singular_values(&residual)?;
    let s = u.dim();
    let top = cos[0];
    if cos[s - 1] <= S::Real::tol(RANK_TOL) * top.max(S::Real::one()) {
        return Err(Error::RightAngle(cos[s - 1].to_f64_lossy()));
    }
    DescTuple::new((0..s).map(|j| sin[j] / cos[s - 1 - j]).collect())
}

/// The `s` largest singular values of `V⊥ᴴ Ũ (Vᴴ Ũ)†`, i.e. `tan Θ(𝒰, 𝒱)`
/// for `𝒰 = range(Ũ)` with `s ≤ min(t, n − t)`.
pub fn principal_angles_tangent<S: Scalar>(
    utilde: &Matrix<S>,
    v: &Subspace<S>,
    vperp: &Subspace<S>,
) -> Result<DescTuple<S::Real>> {
    let n = utilde.rows();
    let (s, t) = (utilde.cols(), v.dim());
    if v.ambient_dim() != n || vperp.ambient_dim() != n || t + vperp.dim() != n {
        return Err(Error::Dimension(format!(
            "V ({t}) and V⊥ ({}) must split dimension {n}",
            vperp.dim()
        )));
    }
    if !(v.is_orthonormal() && vperp.is_orthonormal()) {
        return Err(Error::NotOrthonormal(f64::NAN));
    }
    let cross = v.basis.adjoint_mul(&vperp.basis).max_abs();
    if cross > S::Real::tol(1e-10) {
        return Err(Error::NotOrthonormal(cross.to_f64_lossy()));
    }
    if s == 0 || s > t.min(n - t) {
        return Err(Error::Dimension(format!("s = {s} must lie in 1..={}", t.min(n - t))));
    }
    let g = v.basis.adjoint_mul(utilde);
    let gs = singular_values(&g)?;
    let (top, low) = (gs[0], gs[s - 1]);
    if top == S::Real::zero() || low <= S::Real::tol(DEFAULT_PINV_TOL) * top {
        let ratio = if top == S::Real::zero() { 0.0 } else { (low / top).to_f64_lossy() };
        return Err(Error::RightAngle(ratio));
    }
    let ginv = pseudoinverse(&g, S::Real::tol(DEFAULT_PINV_TOL))?;
    let h = vperp.basis.adjoint_mul(utilde).matmul(&ginv);
    let sv = singular_values(&h)?;
    DescTuple::new(sv.into_iter().take(s).collect())
}

/// `Y = Ỹ (XᴴỸ)⁻¹`, so that `xᵢᴴ yⱼ = δᵢⱼ` and `range(Y) = range(Ỹ)`.
pub fn biorthogonal_basis<S: Scalar>(x: &Subspace<S>, ytilde: &Subspace<S>) -> Result<Matrix<S>> {
    if x.dim() != ytilde.dim() || x.ambient_dim() != ytilde.ambient_dim() {
        return Err(Error::Dimension(format!("X has {} and Ỹ has {} columns", x.dim(), ytilde.dim())));
    }
    let g = x.basis.adjoint_mul(&ytilde.basis);
    let gs = singular_values(&g)?;
    let (top, low) = (gs[0], *gs.last().unwrap());
    if top == S::Real::zero() || low <= S::Real::tol(RANK_TOL) * top {
        let ratio = if top == S::Real::zero() { 0.0 } else { (low / top).to_f64_lossy() };
        return Err(Error::RightAngle(ratio));
    }
    let ginv = Lu::new(&g).map_err(|_| Error::RightAngle(0.0))?.inverse();
    Ok(ytilde.basis.matmul(&ginv))
}

/// `‖XᴴY − I‖_max`.
pub fn biorthogonality_residual<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>) -> S::Real {
    (&x.adjoint_mul(y) - &Matrix::identity(x.cols())).max_abs()
}

/// Cosines squared of the angles from 𝒰 to 𝒱, descending (= ascending angles).
pub fn squared_cosines<S: Scalar>(u: &Subspace<S>, v: &Subspace<S>) -> Result<Vec<S::Real>> {
    check_order(u, v)?;
    let (u, v) = (u.orthonormalized()?, v.orthonormalized()?);
    let s = svd(&v.basis.adjoint_mul(&u.basis))?;
    Ok(s.singulars.iter().map(|c| *c * *c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SampleRng;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_PI_4;

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    #[test]
    fn cosine_definition_examples() {
        let u = Subspace::new(Matrix::from_columns(&[e(3, 0), e(3, 1)])).unwrap();
        let a = principal_angles_cosine(&u, &u).unwrap();
        assert_eq!(a.angles().values(), &[0.0, 0.0]);

        let u = Subspace::new(Matrix::from_columns(&[e(2, 0)])).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = Subspace::new(Matrix::from_columns(&[vec![h, h]])).unwrap();
        let a = principal_angles_cosine(&u, &v).unwrap();
        assert!((a.largest() - FRAC_PI_4).abs() < 1e-15);
        let b = principal_angles(&u, &v).unwrap();
        assert!((b.largest() - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn rejects_reversed_dimensions() {
        let u = Subspace::new(Matrix::from_columns(&[e(3, 0), e(3, 1)])).unwrap();
        let v = Subspace::new(Matrix::from_columns(&[e(3, 0)])).unwrap();
        assert!(matches!(principal_angles_cosine(&u, &v), Err(Error::Dimension(_))));
    }

    #[test]
    fn orthogonal_subspaces_are_rejected() {
        let u = Subspace::new(Matrix::from_columns(&[e(3, 0)])).unwrap();
        let v = Subspace::new(Matrix::from_columns(&[e(3, 1)])).unwrap();
        assert!(matches!(principal_angles_cosine(&u, &v), Err(Error::RightAngle(_))));
        assert!(matches!(principal_tangents(&u, &v), Err(Error::RightAngle(_))));
    }

    #[test]
    fn tangent_route_examples() {
        let v = Subspace::from_orthonormal(Matrix::from_columns(&[e(2, 0)])).unwrap();
        let vp = Subspace::from_orthonormal(Matrix::from_columns(&[e(2, 1)])).unwrap();
        let t = principal_angles_tangent(&Matrix::from_columns(&[vec![1.0, 1.0]]), &v, &vp).unwrap();
        assert!((t.first() - 1.0).abs() < 1e-15);

        let v = Subspace::from_orthonormal(Matrix::from_columns(&[e(4, 0), e(4, 1)])).unwrap();
        let vp = v.complement().unwrap();
        let ut = Matrix::from_columns(&[vec![1.0, 2.0, 0.0, 0.0], vec![-1.0, 0.5, 0.0, 0.0]]);
        let t = principal_angles_tangent(&ut, &v, &vp).unwrap();
        assert!(t.values().iter().all(|&x| x.abs() < 1e-15));

        let w = Matrix::from_columns(&[e(4, 2), e(4, 3)]);
        assert!(matches!(principal_angles_tangent(&w, &v, &vp), Err(Error::RightAngle(_))));
    }

    #[test]
    fn tangent_matches_cosine_on_random_complex_instance() {
        let mut rng = SampleRng::for_stream(11, 0);
        let n = 50;
        let v = Subspace::from_orthonormal(rng.orthonormal::<Complex64>(n, 4)).unwrap();
        let vp = v.complement().unwrap();
        let ut = rng.gaussian_matrix::<Complex64>(n, 4);
        let tan = principal_angles_tangent(&ut, &v, &vp).unwrap();
        let u = Subspace::new(ut).unwrap();
        let cos = principal_angles_cosine(&u, &v).unwrap();
        for (a, b) in tan.values().iter().zip(cos.tangents().values()) {
            assert!((a - b).abs() < 1e-8 * b.max(1.0));
        }
    }

    #[test]
    fn biorthogonal_examples() {
        let x = Subspace::from_orthonormal(Matrix::from_columns(&[e(3, 0), e(3, 2)])).unwrap();
        let y = biorthogonal_basis(&x, &x).unwrap();
        assert!((&y - x.basis()).max_abs() < 1e-15);

        let x = Subspace::from_orthonormal(Matrix::from_columns(&[e(2, 0)])).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let yt = Subspace::from_orthonormal(Matrix::from_columns(&[vec![h, h]])).unwrap();
        let y = biorthogonal_basis(&x, &yt).unwrap();
        assert!((y[(0, 0)] - 1.0).abs() < 1e-15 && (y[(1, 0)] - 1.0).abs() < 1e-15);

        let mut rng = SampleRng::for_stream(5, 1);
        let x = Subspace::from_orthonormal(rng.orthonormal::<f64>(30, 4)).unwrap();
        let yt = Subspace::from_orthonormal(rng.orthonormal::<f64>(30, 4)).unwrap();
        let y = biorthogonal_basis(&x, &yt).unwrap();
        assert!(biorthogonality_residual(x.basis(), &y) < 1e-10);
    }

    #[test]
    fn index_sets() {
        let y = Matrix::<f64>::from_fn(2, 4, |i, j| (i + 10 * j) as f64);
        let all: IndexSet = "1-4".parse().unwrap();
        assert_eq!(select_columns(&y, &all).unwrap(), y);
        let second = IndexSet::new(vec![2]).unwrap();
        assert_eq!(select_columns(&y, &second).unwrap().col(0), &[10.0, 11.0]);
        let odd: IndexSet = "1,3".parse().unwrap();
        assert_eq!(select_columns(&y, &odd).unwrap().col(1), &[20.0, 21.0]);
        assert!(select_columns(&y, &IndexSet::new(vec![5]).unwrap()).is_err());
        assert!(IndexSet::new(vec![2, 2]).is_err());
        assert!(IndexSet::new(vec![0]).is_err());
        assert_eq!(IndexSet::range(3, 8).unwrap().to_string(), "3,4,5,6,7,8");
    }

    #[test]
    fn subspace_validation() {
        let m = Matrix::<f64>::from_columns(&[vec![1.0, 0.0, 0.0], vec![2.0, 0.0, 0.0]]);
        assert!(matches!(Subspace::new(m), Err(Error::RankDeficient { .. })));
        let m = Matrix::<f64>::from_columns(&[vec![1.0, 1.0, 0.0]]);
        assert!(!Subspace::new(m.clone()).unwrap().is_orthonormal());
        assert!(Subspace::from_orthonormal(m).is_err());
    }
}
