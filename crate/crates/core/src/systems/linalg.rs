//! Small dense helpers shared by validation and the solver.

use nalgebra::DMatrix;

/// Relative threshold below which a singular value counts as zero.
pub(crate) const RANK_TOL: f64 = 1e-10;

/// Singular values of `b` in decreasing order (`min(rows, cols)` of them).
pub(crate) fn singular_values(b: &DMatrix<f64>) -> Vec<f64> {
    if b.nrows() == 0 || b.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = b.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub(crate) fn numerical_rank(b: &DMatrix<f64>) -> usize {
    let s = singular_values(b);
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > RANK_TOL * smax).count()
}

/// If every row of `b` is a distinct unit coordinate vector, return the
/// selected columns.
fn selected_columns(b: &DMatrix<f64>) -> Option<Vec<usize>> {
    let mut cols = Vec::with_capacity(b.nrows());
    for row in b.row_iter() {
        let mut hit = None;
        for (j, &v) in row.iter().enumerate() {
            if v == 1.0 && hit.is_none() {
                hit = Some(j);
            } else if v != 0.0 {
                return None;
            }
        }
        let j = hit?;
        if cols.contains(&j) {
            return None;
        }
        cols.push(j);
    }
    Some(cols)
}

/// Orthonormal basis (as columns) of `ker b` where `b` has `m` columns.
///
/// Selection matrices get the complementary identity columns, everything else
/// goes through an SVD of `b` padded to a square matrix.
pub(crate) fn kernel_basis(b: &DMatrix<f64>, m: usize) -> DMatrix<f64> {
    if b.nrows() == 0 {
        return DMatrix::identity(m, m);
    }
    if let Some(cols) = selected_columns(b) {
        let free: Vec<usize> = (0..m).filter(|j| !cols.contains(j)).collect();
        let mut z = DMatrix::zeros(m, free.len());
        for (c, &j) in free.iter().enumerate() {
            z[(j, c)] = 1.0;
        }
        return z;
    }
    let mut padded = DMatrix::zeros(m.max(b.nrows()), m);
    padded.rows_mut(0, b.nrows()).copy_from(b);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let smax = svd.singular_values.max();
    let cols: Vec<_> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| smax == 0.0 || s <= RANK_TOL * smax)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect();
    if cols.is_empty() {
        return DMatrix::zeros(m, 0);
    }
    DMatrix::from_columns(&cols)
}
