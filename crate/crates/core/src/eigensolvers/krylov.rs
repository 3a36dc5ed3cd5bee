use num_traits::{Float, Zero};

use super::spectrum::{LinearOperator, Spectrum};
use crate::error::{Error, Result};
use crate::linalg::{axpy, dot, norm, orthonormalize, Matrix};
use crate::scalar::{Real, Scalar};
use crate::subspaces::{principal_angles, Subspace};

/// Columns whose norm after projection falls below this fraction of the
/// block's largest column norm are dropped.
pub const DEFLATION_TOL: f64 = 1e-10;

/// Incrementally built orthonormal basis of `𝒴 + A𝒴 + ⋯ + A^{k−1}𝒴`.
///
/// Each new block is `A` times the previous block, orthogonalized twice
/// against every earlier basis vector and then rank-revealed by pivoted
/// Gram–Schmidt. Deflated directions shrink the dimension.
pub struct BlockKrylov<'a, S: Scalar, Op: LinearOperator<S>> {
    op: &'a Op,
    q: Matrix<S>,
    last: Matrix<S>,
    block_ends: Vec<usize>,
}

impl<'a, S: Scalar, Op: LinearOperator<S>> BlockKrylov<'a, S, Op> {
    pub fn new(op: &'a Op, y: &Matrix<S>) -> Result<Self> {
        if y.rows() != op.dim() {
            return Err(Error::Dimension(format!("start block has {} rows for dimension {}", y.rows(), op.dim())));
        }
        y.ensure_finite()?;
        let q = Matrix::zeros(y.rows(), 0);
        let first = deflated_block(&q, y.clone());
        if first.cols() == 0 {
            return Err(Error::RankDeficient { ratio: 0.0, threshold: DEFLATION_TOL });
        }
        Ok(Self { op, q: first.clone(), last: first.clone(), block_ends: vec![first.cols()] })
    }

    /// Appends the next block; returns the number of new basis vectors.
    pub fn extend(&mut self) -> usize {
        let mut added = 0;
        if self.last.cols() > 0 && self.q.cols() < self.q.rows() {
            let w = self.op.apply(&self.last);
            let fresh = deflated_block(&self.q, w);
            added = fresh.cols();
            self.q = self.q.hstack(&fresh);
            self.last = fresh;
        } else {
            self.last = Matrix::zeros(self.q.rows(), 0);
        }
        self.block_ends.push(self.q.cols());
        added
    }

    /// Extends until `k` blocks have been generated.
    pub fn extend_to(&mut self, k: usize) {
        while self.block_ends.len() < k {
            self.extend();
        }
    }

    /// Number of generated blocks.
    pub fn steps(&self) -> usize {
        self.block_ends.len()
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.q
    }

    /// Dimension of the `k`-block subspace.
    pub fn dim_at(&self, k: usize) -> usize {
        self.block_ends[k - 1]
    }

    /// Orthonormal basis of the `k`-block subspace.
    pub fn subspace(&self, k: usize) -> Subspace<S> {
        Subspace::from_orthonormal_unchecked(self.q.leading_columns(self.dim_at(k)))
    }
}

/// Two-pass block Gram–Schmidt against `q`, then pivoted Gram–Schmidt
/// within the block with deflation.
fn deflated_block<S: Scalar>(q: &Matrix<S>, mut w: Matrix<S>) -> Matrix<S> {
    let reference = (0..w.cols()).map(|j| norm(w.col(j))).fold(S::Real::zero(), S::Real::max);
    let n = w.rows();
    if reference == S::Real::zero() {
        return Matrix::zeros(n, 0);
    }
    let cutoff = S::Real::tol(DEFLATION_TOL) * reference;
    for _ in 0..2 {
        project_out(q, &mut w);
    }
    let mut out = Matrix::zeros(n, 0);
    let mut remaining: Vec<usize> = (0..w.cols()).collect();
    while !remaining.is_empty() && q.cols() + out.cols() < n {
        let (pos, best) = remaining
            .iter()
            .enumerate()
            .map(|(pos, &j)| (pos, norm(w.col(j))))
            .fold((0, S::Real::neg_infinity()), |a, b| if b.1 > a.1 { b } else { a });
        if best <= cutoff {
            break;
        }
        let j = remaining.remove(pos);
        let mut v = w.col(j).to_vec();
        // One more pass keeps the new vector orthogonal to everything so far.
        for basis in [q, &out] {
            for c in 0..basis.cols() {
                let h = dot(basis.col(c), &v);
                axpy(-h, basis.col(c), &mut v);
            }
        }
        let nv = norm(&v);
        if nv <= cutoff {
            continue;
        }
        let inv = S::from_real(nv.recip());
        v.iter_mut().for_each(|x| *x *= inv);
        for &r in &remaining {
            let h = dot(&v, w.col(r));
            axpy(-h, &v, w.col_mut(r));
        }
        out.push_column(&v);
    }
    out
}

fn project_out<S: Scalar>(q: &Matrix<S>, w: &mut Matrix<S>) {
    if q.cols() == 0 {
        return;
    }
    let h = q.adjoint_mul(w);
    let correction = q.matmul(&h);
    *w = &*w - &correction;
}

/// Orthonormal basis of the block Krylov subspace with `k` blocks.
pub fn block_krylov_basis<S: Scalar, Op: LinearOperator<S>>(op: &Op, y: &Subspace<S>, k: usize) -> Result<Subspace<S>> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let mut kr = BlockKrylov::new(op, y.basis())?;
    kr.extend_to(k);
    Ok(kr.subspace(k))
}

/// Basis of `A^steps 𝒴₀`, re-orthonormalized after every multiplication.
pub fn block_power<S: Scalar, Op: LinearOperator<S>>(op: &Op, y0: &Subspace<S>, steps: usize) -> Result<Subspace<S>> {
    let mut y = y0.orthonormalized()?;
    for _ in 0..steps {
        y = Subspace::from_orthonormal_unchecked(orthonormalize(&op.apply(y.basis()))?);
    }
    Ok(y)
}

/// Largest principal angle between `Vᴴ𝒦` and the block Krylov subspace of
/// `VᴴAV` started from `Vᴴ𝒴`, where `V` is an orthonormal basis of a
/// subspace containing `𝒦`. Infinite when the dimensions differ.
pub fn krylov_transform_discrepancy<S: Scalar>(
    spec: &Spectrum<S>,
    y: &Subspace<S>,
    k: usize,
    v: &Subspace<S>,
) -> Result<S::Real> {
    let v = v.orthonormalized()?;
    let kspace = block_krylov_basis(spec, y, k)?;
    let projected = Subspace::from_orthonormal_unchecked(v.basis().adjoint_mul(kspace.basis()));
    let b = spec.compress(v.basis());
    let start = Subspace::new(v.basis().adjoint_mul(y.basis()))?;
    let reduced = block_krylov_basis(&b, &start, k)?;
    if reduced.dim() != projected.dim() {
        return Ok(S::Real::infinity());
    }
    Ok(principal_angles(&projected, &reduced)?.largest())
}

/// Whether `Vᴴ𝒦` is the block Krylov subspace of `VᴴAV` from `Vᴴ𝒴`, to an
/// angle of `1e-8`.
pub fn krylov_transform_check<S: Scalar>(spec: &Spectrum<S>, y: &Subspace<S>, k: usize, v: &Subspace<S>) -> Result<bool> {
    Ok(krylov_transform_discrepancy(spec, y, k, v)? <= S::Real::tol(1e-8))
}
