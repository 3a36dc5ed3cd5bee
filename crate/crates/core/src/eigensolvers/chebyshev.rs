use super::spectrum::LinearOperator;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Real, Scalar};

/// `T_{k−1}(Â) Y` by the three-term recurrence, where `Â` maps the interval
/// `[lo, hi]` affinely onto `[−1, 1]`:
/// `Z₀ = Y`, `Z₁ = ÂY`, `Z_{j+1} = 2ÂZ_j − Z_{j−1}`.
pub fn chebyshev_block_step<S: Scalar, Op: LinearOperator<S>>(
    op: &Op,
    interval: (S::Real, S::Real),
    k: usize,
    y: &Matrix<S>,
) -> Result<Matrix<S>> {
    let (lo, hi) = interval;
    if !(hi > lo) {
        return Err(Error::DegenerateInterval(lo.to_f64_lossy(), hi.to_f64_lossy()));
    }
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let two = S::Real::of(2.0);
    let scale = S::from_real(two / (hi - lo));
    let shift = S::from_real((hi + lo) / (hi - lo));
    let mapped = |z: &Matrix<S>| -> Matrix<S> {
        let az = op.apply(z);
        Matrix::from_fn(z.rows(), z.cols(), |i, j| scale * az[(i, j)] - shift * z[(i, j)])
    };
    if k == 1 {
        return Ok(y.clone());
    }
    let mut prev = y.clone();
    let mut cur = mapped(y);
    let two_s = S::from_real(two);
    for _ in 2..k {
        let m = mapped(&cur);
        let next = Matrix::from_fn(y.rows(), y.cols(), |i, j| two_s * m[(i, j)] - prev[(i, j)]);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
