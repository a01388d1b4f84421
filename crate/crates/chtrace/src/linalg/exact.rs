//! Exact linear algebra over tagged scalars (rationals or a fixed
//! cyclotomic field). Plain Gaussian elimination with exact zero tests;
//! all inputs are expected to carry a uniform exact tag.

use crate::arith::Scalar;
use crate::error::{Error, Result};

/// Reduced row echelon form in place. Returns (rank, pivot columns).
pub fn rref_exact(rows: &mut Vec<Vec<Scalar>>) -> (usize, Vec<usize>) {
    let m = rows.len();
    if m == 0 {
        return (0, vec![]);
    }
    let n = rows[0].len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for j in 0..n {
        if r >= m {
            break;
        }
        // first nonzero entry in column j at or below row r
        let Some(pi) = (r..m).find(|&i| !rows[i][j].is_zero()) else {
            continue;
        };
        rows.swap(r, pi);
        let inv = rows[r][j].try_inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m {
            if i == r || rows[i][j].is_zero() {
                continue;
            }
            let f = rows[i][j].clone();
            for k in 0..n {
                let t = &f * &rows[r][k];
                rows[i][k] = &rows[i][k] - &t;
            }
        }
        pivot_cols.push(j);
        r += 1;
    }
    (r, pivot_cols)
}

pub fn rank_exact(rows: &[Vec<Scalar>]) -> usize {
    let mut w = rows.to_vec();
    rref_exact(&mut w).0
}

/// Exact basis of the right kernel.
pub fn nullspace_exact(rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        return vec![];
    }
    let n = rows[0].len();
    let mut w = rows.to_vec();
    let (_, pivot_cols) = rref_exact(&mut w);
    let mut pivot_of_col = vec![None; n];
    for (row, &pc) in pivot_cols.iter().enumerate() {
        pivot_of_col[pc] = Some(row);
    }
    let mut basis = Vec::new();
    for f in 0..n {
        if pivot_of_col[f].is_some() {
            continue;
        }
        let mut v = vec![Scalar::zero(); n];
        v[f] = Scalar::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = w[row][f].neg();
        }
        basis.push(v);
    }
    basis
}

/// Solve the square system A·x = b exactly.
pub fn solve_exact(a: &[Vec<Scalar>], b: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n));
    assert_eq!(b.len(), n);
    let mut aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (rank, pivot_cols) = rref_exact(&mut aug);
    if rank < n || pivot_cols.contains(&n) {
        return Err(Error::Arithmetic("singular exact system".into()));
    }
    let mut x = vec![Scalar::zero(); n];
    for (row, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = aug[row][n].clone();
    }
    Ok(x)
}

/// Exact determinant by fraction-full Gaussian elimination.
pub fn det_exact(a: &[Vec<Scalar>]) -> Scalar {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n));
    let mut w = a.to_vec();
    let mut det = Scalar::one();
    for j in 0..n {
        let Some(pi) = (j..n).find(|&i| !w[i][j].is_zero()) else {
            return Scalar::zero();
        };
        if pi != j {
            w.swap(j, pi);
            det = det.neg();
        }
        det = &det * &w[j][j];
        let inv = w[j][j].try_inv().expect("nonzero pivot");
        for i in (j + 1)..n {
            if w[i][j].is_zero() {
                continue;
            }
            let f = &w[i][j] * &inv;
            for k in j..n {
                let t = &f * &w[j][k];
                w[i][k] = &w[i][k] - &t;
            }
        }
    }
    det
}

/// Square matrix over exact (or complex) scalars, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarMatrix {
    pub n: usize,
    pub entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(n: usize) -> Self {
        ScalarMatrix {
            n,
            entries: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix must be square".into()));
        }
        Ok(ScalarMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        ScalarMatrix {
            n,
            entries: rows
                .iter()
                .flat_map(|r| r.iter().map(|&x| Scalar::from_i64(x)))
                .collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.n + j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        ScalarMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        ScalarMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ScalarMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ScalarMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    out.entries[i * n + j] = &out.entries[i * n + j] + &t;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.n {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|x| x.is_exact())
    }

    /// Exact inverse; errors when singular.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut b = vec![Scalar::zero(); n];
            b[j] = Scalar::one();
            cols.push(solve_exact(&rows, &b)?);
        }
        let mut out = Self::zeros(n);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                out.set(i, j, col[i].clone());
            }
        }
        Ok(out)
    }

    pub fn embed(&self) -> super::cmat::CMat {
        super::cmat::CMat::from_fn(self.n, self.n, |i, j| self.get(i, j).embed())
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }

    #[test]
    fn exact_rank_nullspace() {
        let rows = vec![
            vec![s(1), s(2), s(3)],
            vec![s(2), s(4), s(6)],
            vec![s(0), s(1), s(1)],
        ];
        assert_eq!(rank_exact(&rows), 2);
        let ns = nullspace_exact(&rows);
        assert_eq!(ns.len(), 1);
        // check A v = 0 exactly
        for row in &rows {
            let mut acc = Scalar::zero();
            for (a, v) in row.iter().zip(&ns[0]) {
                acc = &acc + &(a * v);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn exact_solve_and_det() {
        let a = vec![vec![s(2), s(1)], vec![s(1), s(3)]];
        let b = vec![s(5), s(10)];
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(x[0], Scalar::from_i64(1));
        assert_eq!(x[1], Scalar::from_i64(3));
        assert_eq!(det_exact(&a), Scalar::from_i64(5));
        let singular = vec![vec![s(1), s(2)], vec![s(2), s(4)]];
        assert_eq!(det_exact(&singular), Scalar::zero());
    }

    #[test]
    fn matrix_inverse_round_trip() {
        let m = ScalarMatrix::from_i64_rows(&[&[1, 2], &[3, 5]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), ScalarMatrix::identity(2));
    }
}
