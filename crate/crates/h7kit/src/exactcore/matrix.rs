use super::ring::{Field, Ring, ToComplex};
use super::ExactError;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Ring> Mat<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: &[Vec<C>]) -> Self {
        Self::from_rows(cols.to_vec()).transpose()
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<C> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<C> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Mat<D> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimension");
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        r.data[i * o.cols + j].add_to(&a.times(b));
                    }
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = C::zero();
                for j in 0..self.cols {
                    acc.add_to(&self.get(i, j).times(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn plus(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|a| a.times(s))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &Self) -> Self {
        self.transpose().vstack(&o.transpose()).transpose()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<C: Field> Mat<C> {
    /// Rank by Bareiss fraction-free elimination. Every division is exact.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut prev = C::one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let piv = a.get(r, c).clone();
            for i in r + 1..a.rows {
                let f = a.get(i, c).clone();
                for j in c + 1..a.cols {
                    let v = piv.times(a.get(i, j)).minus(&f.times(a.get(r, j)));
                    let v = v.divide(&prev).expect("Bareiss pivot is nonzero");
                    a.set(i, j, v);
                }
                a.set(i, c, C::zero());
            }
            prev = piv;
            r += 1;
        }
        r
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> Result<C, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut prev = C::one();
        let mut sign = false;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Ok(C::zero());
            };
            if p != c {
                a.swap_rows(c, p);
                sign = !sign;
            }
            let piv = a.get(c, c).clone();
            for i in c + 1..n {
                let f = a.get(i, c).clone();
                for j in c + 1..n {
                    let v = piv.times(a.get(i, j)).minus(&f.times(a.get(c, j)));
                    a.set(i, j, v.divide(&prev).expect("Bareiss pivot is nonzero"));
                }
                a.set(i, c, C::zero());
            }
            prev = piv;
        }
        let d = if n == 0 { C::one() } else { a.get(n - 1, n - 1).clone() };
        Ok(if sign { d.negate() } else { d })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a.get(r, c).recip().expect("nonzero pivot");
            for j in c..a.cols {
                let v = a.get(r, j).times(&inv);
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in c..a.cols {
                    let v = a.get(i, j).minus(&f.times(a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Basis of the right kernel {v : M v = 0}.
    pub fn kernel(&self) -> Vec<Vec<C>> {
        let (a, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C::zero(); self.cols];
                v[f] = C::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = a.get(r, f).negate();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        let n = self.rows;
        if n != self.cols {
            return Err(ExactError::DimensionMismatch { expected: n, found: self.cols });
        }
        let (a, pivots) = self.hstack(&Self::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(ExactError::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| a.get(i, n + j).clone()))
    }

    /// One solution of M x = b, or None if inconsistent.
    pub fn solve(&self, b: &[C]) -> Option<Vec<C>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Mat::from_cols(&[b.to_vec()]));
        let (a, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![C::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = a.get(r, self.cols).clone();
        }
        Some(x)
    }
}

impl<C: Ring + ToComplex> Mat<C> {
    pub fn to_dmatrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_c64())
    }
}

/// Rank of the span of a list of vectors.
pub fn span_rank<C: Field>(vs: &[Vec<C>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    Mat::from_rows(vs.to_vec()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::cyc::CycNum;
    use crate::exactcore::ring::{rat_int, Rat};

    #[test]
    fn identity_rank_and_kernel() {
        let m = Mat::<Rat>::identity(3);
        assert_eq!(m.rank(), 3);
        assert!(m.kernel().is_empty());
    }

    #[test]
    fn zero_matrix_kernel() {
        let m = Mat::<Rat>::zeros(2, 5);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().len(), 5);
    }

    #[test]
    fn cyclotomic_rank_one() {
        let z = CycNum::zeta();
        let m = Mat::from_rows(vec![
            vec![CycNum::one(), z.clone()],
            vec![CycNum::zeta_pow(6), CycNum::one()],
        ]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Mat::from_rows(vec![
            vec![rat_int(2), rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(3), rat_int(1)],
            vec![rat_int(0), rat_int(1), rat_int(4)],
        ]);
        assert_eq!(m.det().unwrap(), rat_int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(3));
        let s = Mat::from_rows(vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]]);
        assert!(matches!(s.inverse(), Err(ExactError::Singular)));
        assert_eq!(s.det().unwrap(), rat_int(0));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Mat::from_rows(vec![vec![rat_int(1), rat_int(1)], vec![rat_int(2), rat_int(2)]]);
        let x = m.solve(&[rat_int(3), rat_int(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat_int(3), rat_int(6)]);
        assert!(m.solve(&[rat_int(1), rat_int(1)]).is_none());
    }
}
