use super::C64;
use nalgebra::{DMatrix, DVector};

pub fn from_rows(rows: &[Vec<C64>]) -> DMatrix<C64> {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    DMatrix::from_fn(r, c, |i, j| rows[i][j])
}

/// Singular values in descending order.
pub fn singular_values(m: &DMatrix<C64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return vec![];
    }
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above rel·σ_max.
pub fn numeric_rank(m: &DMatrix<C64>, rel: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        None => 0,
        Some(&top) if top == 0.0 => 0,
        Some(&top) => s.iter().filter(|&&x| x > rel * top).count(),
    }
}

/// Right singular vectors ordered by increasing singular value, together with
/// the full singular spectrum (padded with zeros to ncols).
pub fn right_singular(m: &DMatrix<C64>) -> (Vec<Vec<C64>>, Vec<f64>) {
    let (r, c) = m.shape();
    let a = if r < c {
        let mut p = DMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested V");
    let mut idx: Vec<usize> = (0..c).collect();
    let s = &svd.singular_values;
    idx.sort_by(|&i, &j| s[i].total_cmp(&s[j]));
    let vecs = idx
        .iter()
        .map(|&i| (0..c).map(|j| vt[(i, j)].conj()).collect())
        .collect();
    let sv = idx.iter().map(|&i| s[i]).collect();
    (vecs, sv)
}

/// The k right singular vectors with smallest singular values.
pub fn nullspace(m: &DMatrix<C64>, k: usize) -> Vec<Vec<C64>> {
    right_singular(m).0.into_iter().take(k).collect()
}

/// Null vectors whose singular value is below rel·σ_max.
pub fn nullspace_tol(m: &DMatrix<C64>, rel: f64) -> Vec<Vec<C64>> {
    let (v, s) = right_singular(m);
    let top = s.iter().cloned().fold(0.0, f64::max);
    v.into_iter()
        .zip(s)
        .filter(|(_, x)| *x <= rel * top)
        .map(|(v, _)| v)
        .collect()
}

/// Least-squares solution of A x = b and the relative residual ‖Ax−b‖/‖b‖.
pub fn lstsq(a: &DMatrix<C64>, b: &[C64]) -> (Vec<C64>, f64) {
    let bv = DVector::from_column_slice(b);
    let svd = a.clone().svd(true, true);
    let x = svd.solve(&bv, 1e-14).expect("svd solve");
    let res = (a * &x - &bv).norm() / bv.norm().max(f64::MIN_POSITIVE);
    (x.iter().copied().collect(), res)
}

pub fn det(m: &DMatrix<C64>) -> C64 {
    m.clone().lu().determinant()
}

pub fn mat_vec(m: &DMatrix<C64>, v: &[C64]) -> Vec<C64> {
    (m * DVector::from_column_slice(v)).iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rng::{gauss_vec, stream};

    #[test]
    fn rank_of_product() {
        let mut r = stream(0, "la");
        let a = DMatrix::from_fn(5, 2, |_, _| gauss_vec(&mut r, 1)[0]);
        let b = DMatrix::from_fn(2, 6, |_, _| gauss_vec(&mut r, 1)[0]);
        let m = &a * &b;
        assert_eq!(numeric_rank(&m, 1e-10), 2);
        let ns = nullspace(&m, 4);
        for v in ns {
            assert!(super::super::norm(&mat_vec(&m, &v)) < 1e-12);
        }
    }

    #[test]
    fn wide_nullspace() {
        let m = DMatrix::from_row_slice(1, 3, &[C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let ns = nullspace_tol(&m, 1e-12);
        assert_eq!(ns.len(), 2);
    }
}
