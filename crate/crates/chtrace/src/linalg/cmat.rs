//! Dense complex matrices and the small numeric kernels used for
//! splitting: full-pivot elimination for rank/kernel/solve, Householder
//! Hessenberg reduction, and a shifted QR eigenvalue iteration.
//!
//! Everything here targets desk-scale inputs (dimension ≲ a few hundred);
//! clarity and determinism are preferred over blocked performance.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

#[derive(Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<C64>,
}

impl std::fmt::Debug for CMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            write!(f, "  ")?;
            for j in 0..self.cols.min(8) {
                write!(f, "{:.3}{:+.3}i  ", self[(i, j)].re, self[(i, j)].im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn scalar(n: usize, z: C64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = z;
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        CMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        CMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, z: C64) -> Self {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(orow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum::<C64>())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// tr(self · other) without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> C64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
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

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn commutator_norm(&self, other: &Self) -> f64 {
        self.matmul(other).sub(&other.matmul(self)).max_abs()
    }

    /// Off-diagonal deviation from a scalar matrix; returns the scalar
    /// (mean diagonal) and the max deviation.
    pub fn scalar_part(&self) -> (C64, f64) {
        assert!(self.is_square());
        let n = self.rows;
        let mean: C64 = (0..n).map(|i| self[(i, i)]).sum::<C64>() / n as f64;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { mean } else { C64::new(0.0, 0.0) };
                dev = dev.max((self[(i, j)] - expect).norm());
            }
        }
        (mean, dev)
    }

    /// Flatten to a vector, row-major.
    pub fn vectorize(&self) -> Vec<C64> {
        self.data.clone()
    }
}

// ---- elimination: rank, kernel, solve, inverse ----

/// Reduced row echelon form with full pivoting. Returns the rank and the
/// pivot columns in elimination order. `tol_rel` is relative to the
/// largest initial entry.
pub fn rref(a: &mut CMat, tol_rel: f64) -> (usize, Vec<usize>) {
    let cols = a.cols;
    rref_limited(a, tol_rel, cols)
}

/// Like [`rref`] but pivots are only selected among the first
/// `pivot_limit` columns (elimination still clears the full rows); used
/// for augmented systems where trailing columns hold right-hand sides.
pub fn rref_limited(a: &mut CMat, tol_rel: f64, pivot_limit: usize) -> (usize, Vec<usize>) {
    let scale = a.max_abs();
    if scale == 0.0 {
        return (0, vec![]);
    }
    rref_abs(a, tol_rel * scale, pivot_limit)
}

/// [`rref`] with an absolute pivot threshold. Callers anchor the
/// threshold to the scale of the originating data so that numerically
/// zero matrices reduce to rank 0 instead of pivoting on noise.
pub fn rref_abs(a: &mut CMat, tol_abs: f64, pivot_limit: usize) -> (usize, Vec<usize>) {
    let tol = tol_abs;
    let (m, n) = (a.rows, a.cols);
    let n_piv = pivot_limit.min(n);
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut is_pivot = vec![false; n];
    let mut r = 0;
    while r < m {
        // full pivot search over remaining rows and non-pivot columns
        let mut best = 0.0;
        let mut best_ij = None;
        for i in r..m {
            for j in 0..n_piv {
                if is_pivot[j] {
                    continue;
                }
                let v = a[(i, j)].norm();
                if v > best {
                    best = v;
                    best_ij = Some((i, j));
                }
            }
        }
        let (pi, pj) = match best_ij {
            Some(x) if best > tol => x,
            _ => break,
        };
        if pi != r {
            for j in 0..n {
                let tmp = a[(r, j)];
                a[(r, j)] = a[(pi, j)];
                a[(pi, j)] = tmp;
            }
        }
        let inv = 1.0 / a[(r, pj)];
        for j in 0..n {
            a[(r, j)] *= inv;
        }
        a[(r, pj)] = C64::new(1.0, 0.0);
        for i in 0..m {
            if i == r {
                continue;
            }
            let f = a[(i, pj)];
            if f.norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                let t = f * a[(r, j)];
                a[(i, j)] -= t;
            }
            a[(i, pj)] = C64::new(0.0, 0.0);
        }
        is_pivot[pj] = true;
        pivot_cols.push(pj);
        r += 1;
    }
    (r, pivot_cols)
}

pub fn rank(a: &CMat, tol_rel: f64) -> usize {
    let mut w = a.clone();
    rref(&mut w, tol_rel).0
}

/// Rank with an absolute pivot threshold (with a floor, so that
/// numerically zero matrices report rank 0).
pub fn rank_abs(a: &CMat, tol_abs: f64) -> usize {
    let mut w = a.clone();
    let cols = w.cols;
    rref_abs(&mut w, tol_abs, cols).0
}

/// Basis of the right kernel of `a`, one vector per free column.
pub fn nullspace(a: &CMat, tol_rel: f64) -> Vec<Vec<C64>> {
    let scale = a.max_abs();
    nullspace_abs(a, tol_rel * scale)
}

/// Kernel basis with an absolute pivot threshold.
pub fn nullspace_abs(a: &CMat, tol_abs: f64) -> Vec<Vec<C64>> {
    let mut w = a.clone();
    let cols = w.cols;
    let (rank, pivot_cols) = rref_abs(&mut w, tol_abs, cols);
    let n = a.cols;
    let mut is_pivot = vec![None; n];
    for (row, &pc) in pivot_cols.iter().enumerate() {
        is_pivot[pc] = Some(row);
    }
    let mut basis = Vec::with_capacity(n - rank);
    for f in 0..n {
        if is_pivot[f].is_some() {
            continue;
        }
        let mut v = vec![C64::new(0.0, 0.0); n];
        v[f] = C64::new(1.0, 0.0);
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -w[(row, f)];
        }
        basis.push(v);
    }
    basis
}

/// Solve A·x = b for square A; errors when A is numerically singular.
pub fn solve(a: &CMat, b: &[C64], tol_rel: f64) -> Result<Vec<C64>> {
    assert!(a.is_square());
    assert_eq!(a.rows, b.len());
    let n = a.rows;
    let mut aug = CMat::zeros(n, n + 1);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)];
        }
        aug[(i, n)] = b[i];
    }
    let (rank, pivot_cols) = rref_limited(&mut aug, tol_rel, n);
    if rank < n {
        return Err(Error::Arithmetic("singular linear system".into()));
    }
    let mut x = vec![C64::new(0.0, 0.0); n];
    for (row, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = aug[(row, n)];
    }
    Ok(x)
}

pub fn inverse(a: &CMat, tol_rel: f64) -> Result<CMat> {
    assert!(a.is_square());
    let n = a.rows;
    let mut aug = CMat::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)];
        }
        aug[(i, n + i)] = C64::new(1.0, 0.0);
    }
    let (rank, pivot_cols) = rref_limited(&mut aug, tol_rel, n);
    if rank < n {
        return Err(Error::Arithmetic("singular matrix".into()));
    }
    let mut inv = CMat::zeros(n, n);
    for (row, &pc) in pivot_cols.iter().enumerate() {
        for j in 0..n {
            inv[(pc, j)] = aug[(row, n + j)];
        }
    }
    Ok(inv)
}

/// Smallest pivot magnitude of the full-pivot elimination, normalized by
/// the largest initial entry. Rank-revealing proxy for near-singularity.
pub fn min_pivot_ratio(a: &CMat) -> f64 {
    let scale = a.max_abs();
    if scale == 0.0 {
        return 0.0;
    }
    assert!(a.is_square());
    let n = a.rows;
    let mut w = a.clone();
    let mut min_pivot = f64::INFINITY;
    let mut used_col = vec![false; n];
    for r in 0..n {
        let mut best = 0.0;
        let mut best_ij = (r, 0);
        for i in r..n {
            for j in 0..n {
                if used_col[j] {
                    continue;
                }
                let v = w[(i, j)].norm();
                if v > best {
                    best = v;
                    best_ij = (i, j);
                }
            }
        }
        min_pivot = min_pivot.min(best);
        if best == 0.0 {
            return 0.0;
        }
        let (pi, pj) = best_ij;
        if pi != r {
            for j in 0..n {
                let tmp = w[(r, j)];
                w[(r, j)] = w[(pi, j)];
                w[(pi, j)] = tmp;
            }
        }
        for i in (r + 1)..n {
            let f = w[(i, pj)] / w[(r, pj)];
            if f.norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                if used_col[j] || j == pj {
                    continue;
                }
                let t = f * w[(r, j)];
                w[(i, j)] -= t;
            }
            w[(i, pj)] = C64::new(0.0, 0.0);
        }
        used_col[pj] = true;
    }
    min_pivot / scale
}

/// Orthonormalize the given vectors (modified Gram-Schmidt), dropping
/// near-dependent ones.
pub fn orthonormalize(vectors: &[Vec<C64>], tol: f64) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &basis {
            let proj: C64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= proj * bi;
            }
        }
        // second pass for stability
        for b in &basis {
            let proj: C64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= proj * bi;
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > tol {
            for wi in w.iter_mut() {
                *wi /= norm;
            }
            basis.push(w);
        }
    }
    basis
}

// ---- eigenvalues: Hessenberg reduction + shifted QR ----

fn hessenberg(a: &CMat) -> CMat {
    assert!(a.is_square());
    let n = a.rows;
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k, rows k+1..n
        let mut x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            C64::new(1.0, 0.0)
        };
        x[0] += phase * xnorm;
        let vnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for xi in x.iter_mut() {
            *xi /= vnorm;
        }
        // H ← (I − 2vv†) H: rows k+1..n
        for j in 0..n {
            let dot: C64 = x
                .iter()
                .enumerate()
                .map(|(t, v)| v.conj() * h[(k + 1 + t, j)])
                .sum();
            let dot = dot * 2.0;
            for (t, v) in x.iter().enumerate() {
                let d = v * dot;
                h[(k + 1 + t, j)] -= d;
            }
        }
        // H ← H (I − 2vv†): columns k+1..n
        for i in 0..n {
            let dot: C64 = x
                .iter()
                .enumerate()
                .map(|(t, v)| h[(i, k + 1 + t)] * v)
                .sum();
            let dot = dot * 2.0;
            for (t, v) in x.iter().enumerate() {
                let d = dot * v.conj();
                h[(i, k + 1 + t)] -= d;
            }
        }
        // clean the annihilated entries
        for i in k + 2..n {
            h[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    h
}

fn eig2x2(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let half_tr = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (half_tr * half_tr - det).sqrt();
    (half_tr + disc, half_tr - disc)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let (l1, l2) = eig2x2(a, b, c, d);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// All eigenvalues of a square complex matrix, in deterministic order
/// (sorted by real part, then imaginary part).
pub fn eigenvalues(a: &CMat) -> Result<Vec<C64>> {
    assert!(a.is_square());
    let n = a.rows;
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    let mut h = hessenberg(a);
    let scale = h.max_abs().max(1e-300);
    let eps = 1e-14;
    let mut eigs: Vec<C64> = Vec::with_capacity(n);
    let mut hi = n;
    let mut iter_guard = 0usize;
    let max_iter = 200 * n;
    let mut stall = 0usize;
    while hi > 0 {
        // deflation scan from the bottom of the active block
        let mut lo = hi - 1;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let s = if s == 0.0 { scale } else { s };
            if h[(lo, lo - 1)].norm() <= eps * s {
                h[(lo, lo - 1)] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            eigs.push(h[(hi - 1, hi - 1)]);
            hi -= 1;
            stall = 0;
            continue;
        }
        if lo == hi - 2 {
            let (l1, l2) = eig2x2(
                h[(hi - 2, hi - 2)],
                h[(hi - 2, hi - 1)],
                h[(hi - 1, hi - 2)],
                h[(hi - 1, hi - 1)],
            );
            eigs.push(l1);
            eigs.push(l2);
            hi -= 2;
            stall = 0;
            continue;
        }
        iter_guard += 1;
        stall += 1;
        if iter_guard > max_iter {
            return Err(Error::Arithmetic(
                "QR eigenvalue iteration did not converge".into(),
            ));
        }
        let mu = if stall % 12 == 11 {
            // exceptional shift to break rare cycles
            let t = h[(hi - 1, hi - 2)].norm() + h[(hi - 2, hi - 3.min(hi - 2))].norm();
            C64::new(1.5 * t, 0.5 * t)
        } else {
            wilkinson_shift(
                h[(hi - 2, hi - 2)],
                h[(hi - 2, hi - 1)],
                h[(hi - 1, hi - 2)],
                h[(hi - 1, hi - 1)],
            )
        };
        // explicit shifted QR sweep on the active window [lo, hi)
        for i in lo..hi {
            h[(i, i)] -= mu;
        }
        let mut rot: Vec<(C64, C64, f64)> = Vec::with_capacity(hi - lo - 1);
        for k in lo..hi - 1 {
            let f = h[(k, k)];
            let g = h[(k + 1, k)];
            let r = (f.norm_sqr() + g.norm_sqr()).sqrt();
            if r == 0.0 {
                rot.push((C64::new(1.0, 0.0), C64::new(0.0, 0.0), 1.0));
                continue;
            }
            // rows k, k+1 ← G · rows, with G = [[f̄, ḡ],[−g, f]]/r
            for j in k..hi {
                let hk = h[(k, j)];
                let hk1 = h[(k + 1, j)];
                h[(k, j)] = (f.conj() * hk + g.conj() * hk1) / r;
                h[(k + 1, j)] = (-g * hk + f * hk1) / r;
            }
            rot.push((f, g, r));
        }
        for (k, (f, g, r)) in rot.iter().enumerate() {
            let k = lo + k;
            // columns k, k+1 ← columns · G†, with G† = [[f, −ḡ],[g, f̄]]/r
            let top = (k + 2).min(hi);
            for i in lo..top {
                let ck = h[(i, k)];
                let ck1 = h[(i, k + 1)];
                h[(i, k)] = (ck * f + ck1 * g) / r;
                h[(i, k + 1)] = (ck * (-g.conj()) + ck1 * f.conj()) / r;
            }
        }
        for i in lo..hi {
            h[(i, i)] += mu;
        }
    }
    eigs.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(eigs)
}

/// Group complex values into clusters linked at `link_tol` (absolute).
/// Returns (cluster means, cluster sizes) sorted by (re, im), plus the
/// minimal distance between distinct cluster means.
pub fn cluster_values(values: &[C64], link_tol: f64) -> (Vec<C64>, Vec<usize>, f64) {
    let mut sorted: Vec<C64> = values.to_vec();
    sorted.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    let mut clusters: Vec<Vec<C64>> = Vec::new();
    'outer: for v in sorted {
        for c in clusters.iter_mut() {
            if c.iter().any(|w| (w - v).norm() <= link_tol) {
                c.push(v);
                continue 'outer;
            }
        }
        clusters.push(vec![v]);
    }
    let means: Vec<C64> = clusters
        .iter()
        .map(|c| c.iter().sum::<C64>() / c.len() as f64)
        .collect();
    let sizes: Vec<usize> = clusters.iter().map(|c| c.len()).collect();
    let mut min_gap = f64::INFINITY;
    for i in 0..means.len() {
        for j in i + 1..means.len() {
            min_gap = min_gap.min((means[i] - means[j]).norm());
        }
    }
    let mut idx: Vec<usize> = (0..means.len()).collect();
    idx.sort_by(|&i, &j| {
        means[i]
            .re
            .partial_cmp(&means[j].re)
            .unwrap()
            .then(means[i].im.partial_cmp(&means[j].im).unwrap())
    });
    (
        idx.iter().map(|&i| means[i]).collect(),
        idx.iter().map(|&i| sizes[i]).collect(),
        min_gap,
    )
}

/// Basis of the unital matrix algebra generated by `gens`, grown by
/// iterated products with numeric rank tests; capped at n².
pub fn matrix_algebra_closure(n: usize, gens: &[CMat], tol_rel: f64) -> Vec<CMat> {
    assert!(gens.iter().all(|g| g.rows == n && g.cols == n));
    let cap = n * n;
    // echelon of vectorized basis elements: rows of length n², with the
    // pivot bookkeeping of rref maintained incrementally
    let mut echelon: Vec<Vec<C64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut basis: Vec<CMat> = Vec::new();
    let scale = gens.iter().map(|g| g.max_abs()).fold(1.0_f64, f64::max);
    let tol = tol_rel * scale;

    let try_add = |m: &CMat,
                   echelon: &mut Vec<Vec<C64>>,
                   pivots: &mut Vec<usize>,
                   basis: &mut Vec<CMat>|
     -> bool {
        let mut v = m.vectorize();
        for (row, &p) in echelon.iter().zip(pivots.iter()) {
            let f = v[p];
            if f.norm() == 0.0 {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi -= f * ri;
            }
        }
        let (mut best, mut best_j) = (0.0, 0);
        for (j, z) in v.iter().enumerate() {
            if z.norm() > best {
                best = z.norm();
                best_j = j;
            }
        }
        if best <= tol {
            return false;
        }
        let inv = 1.0 / v[best_j];
        for vi in v.iter_mut() {
            *vi *= inv;
        }
        echelon.push(v);
        pivots.push(best_j);
        basis.push(m.clone());
        true
    };

    try_add(&CMat::identity(n), &mut echelon, &mut pivots, &mut basis);
    for g in gens {
        if basis.len() >= cap {
            break;
        }
        try_add(g, &mut echelon, &mut pivots, &mut basis);
    }
    // queue of elements whose products with generators are unexplored
    let mut next = 0;
    while next < basis.len() && basis.len() < cap {
        let b = basis[next].clone();
        for g in gens {
            if basis.len() >= cap {
                break;
            }
            let p = b.matmul(g);
            try_add(&p, &mut echelon, &mut pivots, &mut basis);
        }
        next += 1;
    }
    basis
}
