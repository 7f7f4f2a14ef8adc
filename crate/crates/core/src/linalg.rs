//! Small dense linear-algebra helpers shared by the rest of the crate.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{numeric, Result};

pub type RMat = DMatrix<f64>;
pub type RVec = DVector<f64>;
pub type CMat = DMatrix<Complex64>;

/// Largest absolute entry.
pub fn max_abs(m: &RMat) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

pub fn max_abs_c(m: &CMat) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.norm()))
}

pub fn max_abs_diff(a: &RMat, b: &RMat) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()))
}

pub fn is_symmetric(m: &RMat, tol: f64) -> bool {
    m.is_square() && max_abs_diff(m, &m.transpose()) <= tol
}

pub fn symmetrize(m: &RMat) -> RMat {
    (m + m.transpose()) * 0.5
}

pub fn to_complex(m: &RMat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Real part of a complex matrix, failing if any imaginary residue exceeds `tol`.
pub fn real_part(m: &CMat, tol: f64) -> Result<RMat> {
    let worst = m.iter().fold(0.0_f64, |acc, z| acc.max(z.im.abs()));
    if worst > tol {
        return numeric(format!(
            "expected a real matrix, imaginary residue {worst:.3e} exceeds {tol:.1e}"
        ));
    }
    Ok(m.map(|z| z.re))
}

/// Direct sum of square blocks.
pub fn direct_sum(blocks: &[RMat]) -> RMat {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = RMat::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        let k = b.nrows();
        out.view_mut((off, off), (k, k)).copy_from(b);
        off += k;
    }
    out
}

/// Sub-matrix built from the given row/column index list.
pub fn select(m: &RMat, idx: &[usize]) -> RMat {
    RMat::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

pub fn select_rect(m: &RMat, rows: &[usize], cols: &[usize]) -> RMat {
    RMat::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

/// Phase-space coordinate indices (q_k, p_k) for a list of modes.
pub fn quadrature_indices(modes: &[usize]) -> Vec<usize> {
    modes.iter().flat_map(|&k| [2 * k, 2 * k + 1]).collect()
}

/// Eigendecomposition of a real symmetric matrix, eigenvalues ascending.
pub fn sym_eigen(m: &RMat) -> (RVec, RMat) {
    let eig = SymmetricEigen::new(symmetrize(m));
    sort_eigen(eig.eigenvalues, eig.eigenvectors)
}

fn sort_eigen(vals: RVec, vecs: RMat) -> (RVec, RMat) {
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    let sorted_vals = RVec::from_iterator(vals.len(), order.iter().map(|&i| vals[i]));
    let sorted_vecs = RMat::from_fn(vecs.nrows(), vecs.ncols(), |r, c| vecs[(r, order[c])]);
    (sorted_vals, sorted_vecs)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn herm_eigen(m: &CMat) -> (RVec, CMat) {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let vals = eig.eigenvalues;
    let vecs = eig.eigenvectors;
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    let sorted_vals = RVec::from_iterator(vals.len(), order.iter().map(|&i| vals[i]));
    let sorted_vecs = CMat::from_fn(vecs.nrows(), vecs.ncols(), |r, c| vecs[(r, order[c])]);
    (sorted_vals, sorted_vecs)
}

/// Symmetric square root and inverse square root of a positive definite matrix.
pub fn sqrt_and_inv_sqrt(m: &RMat) -> Result<(RMat, RMat)> {
    let (vals, vecs) = sym_eigen(m);
    if vals.iter().any(|&v| !(v > 0.0)) {
        return numeric("matrix is not positive definite");
    }
    let root = RMat::from_diagonal(&vals.map(f64::sqrt));
    let inv_root = RMat::from_diagonal(&vals.map(|v| 1.0 / v.sqrt()));
    Ok((
        symmetrize(&(&vecs * root * vecs.transpose())),
        symmetrize(&(&vecs * inv_root * vecs.transpose())),
    ))
}

pub fn is_positive_definite(m: &RMat) -> bool {
    m.is_square() && m.clone().cholesky().is_some()
}

/// 2x2 rotation by `angle`.
pub fn rotation(angle: f64) -> RMat {
    let (s, c) = angle.sin_cos();
    RMat::from_row_slice(2, 2, &[c, -s, s, c])
}

/// Matrix exponential (scaling and squaring with a Padé approximant).
pub fn expm(m: &CMat) -> CMat {
    m.clone().exp()
}
