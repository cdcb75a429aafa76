//! Dense real linear-algebra kernels: the complex-to-real block embedding,
//! smallest singular pair, linear least squares, and the saddle-point solve
//! used for the Newton step.
//!
//! Everything here is a thin contract over `nalgebra` factorizations; the
//! rest of the crate never touches a decomposition directly.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::poly::ComplexMatrix;

pub type RealMatrix = DMatrix<f64>;
pub type RealVector = DVector<f64>;

/// Relative singular-value cutoff below which a matrix is treated as
/// rank-deficient.
pub const RANK_TOLERANCE: f64 = 1e-12;

const SVD_MAX_ITER: usize = 100_000;

/// Embeds a complex matrix `M = M1 + i*M2` as the real block matrix
/// `[[M1, -M2], [M2, M1]]`.
///
/// For any complex vector `w = w1 + i*w2`, the block matrix applied to the
/// stacked `(w1; w2)` equals the stacked real and imaginary parts of `M*w`,
/// so complex linear systems can be solved with real factorizations.
pub fn complex_to_real_block(m: &ComplexMatrix) -> RealMatrix {
    let (r, c) = (m.nrows(), m.ncols());
    let mut out = RealMatrix::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let z = m[(i, j)];
            out[(i, j)] = z.re;
            out[(i, j + c)] = -z.im;
            out[(i + r, j)] = z.im;
            out[(i + r, j + c)] = z.re;
        }
    }
    out
}

/// Returns the smallest singular value of `m` together with its left and
/// right singular vectors `(sigma, u, v)`, so that `m * v = sigma * u` with
/// `u`, `v` unit vectors. Requires at least as many rows as columns.
pub fn smallest_singular_pair(m: &RealMatrix) -> Result<(f64, RealVector, RealVector)> {
    if m.nrows() < m.ncols() {
        return Err(Error::InvalidArgument(format!(
            "smallest_singular_pair requires rows >= cols, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let svd = m
        .clone()
        .try_svd(true, true, f64::EPSILON, SVD_MAX_ITER)
        .ok_or(Error::SvdFailed)?;
    let sv = &svd.singular_values;
    let mut idx = 0;
    for i in 1..sv.len() {
        if sv[i] < sv[idx] {
            idx = i;
        }
    }
    let u = svd.u.as_ref().expect("u requested").column(idx).into_owned();
    let v = svd.v_t.as_ref().expect("v_t requested").row(idx).transpose();
    Ok((sv[idx], u, v))
}

/// Solves `min_x ||A x - b||_2` for a matrix with full column rank.
///
/// Rank deficiency (relative singular-value ratio below [`RANK_TOLERANCE`])
/// is reported as an error carrying the effective rank.
pub fn solve_least_squares(a: &RealMatrix, b: &RealVector) -> Result<RealVector> {
    if a.nrows() < a.ncols() {
        return Err(Error::InvalidArgument(format!(
            "least squares requires rows >= cols, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.nrows() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "dimension mismatch: matrix has {} rows, vector has {}",
            a.nrows(),
            b.len()
        )));
    }
    let svd = a
        .clone()
        .try_svd(true, true, f64::EPSILON, SVD_MAX_ITER)
        .ok_or(Error::SvdFailed)?;
    let sigma_max = svd.singular_values.max();
    let cutoff = RANK_TOLERANCE * sigma_max;
    let rank = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    if rank < a.ncols() {
        return Err(Error::RankDeficient { rank, expected: a.ncols() });
    }
    svd.solve(b, cutoff).map_err(|e| Error::Numeric(e.to_string()))
}

/// Solves the saddle-point (KKT) system
///
/// ```text
/// [ I  J^t ] [ d ]   [ -grad ]
/// [ J   0  ] [ l ] = [ -q    ]
/// ```
///
/// for the step `d` and multipliers `l`, where `J` is `r x c` with
/// `r <= c`. The system is assembled densely and LU-factored, with one
/// iterative refinement pass; the relative residual is checked against
/// `1e-10`. A singular system means `J` lost full row rank.
pub fn solve_saddle_point(
    j: &RealMatrix,
    grad: &RealVector,
    q: &RealVector,
) -> Result<(RealVector, RealVector)> {
    let (r, c) = (j.nrows(), j.ncols());
    if r > c {
        return Err(Error::InvalidArgument(format!(
            "saddle-point solve requires a wide Jacobian, got {r}x{c}"
        )));
    }
    if grad.len() != c || q.len() != r {
        return Err(Error::InvalidArgument(
            "saddle-point dimension mismatch between J, grad, q".into(),
        ));
    }

    let n = c + r;
    let mut k = RealMatrix::zeros(n, n);
    for i in 0..c {
        k[(i, i)] = 1.0;
    }
    k.view_mut((0, c), (c, r)).copy_from(&j.transpose());
    k.view_mut((c, 0), (r, c)).copy_from(j);

    let mut rhs = RealVector::zeros(n);
    rhs.rows_mut(0, c).copy_from(&(-grad));
    rhs.rows_mut(c, r).copy_from(&(-q));

    let lu = k.clone().lu();
    let mut sol = match lu.solve(&rhs) {
        Some(s) => s,
        None => return Err(rank_failure(j, r)),
    };
    // one refinement pass tightens the residual of the unpivoted blocks
    let resid = &rhs - &k * &sol;
    if let Some(delta) = lu.solve(&resid) {
        sol += delta;
    }

    let resid = &rhs - &k * &sol;
    let scale = rhs.norm() + k.norm() * sol.norm() + f64::MIN_POSITIVE;
    if resid.norm() > 1e-10 * scale {
        return Err(rank_failure(j, r));
    }

    Ok((sol.rows(0, c).into_owned(), sol.rows(c, r).into_owned()))
}

/// Estimates the numerical row rank of a wide matrix from its singular
/// values with the relative cutoff [`RANK_TOLERANCE`].
pub fn estimated_rank(m: &RealMatrix) -> usize {
    let sv = m.clone().singular_values();
    let max = sv.max();
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOLERANCE * max).count()
}

fn rank_failure(j: &RealMatrix, rows: usize) -> Error {
    let rank = estimated_rank(j);
    if rank < rows {
        Error::RankDeficient { rank, expected: rows }
    } else {
        Error::Numeric("saddle-point solve did not reach the residual bound".into())
    }
}
