//! Dense linear algebra kernels: matrices, Cholesky factorization, and
//! symmetric eigendecomposition. Pure Rust, no BLAS or LAPACK bindings.
//!
//! The eigendecomposition is the classical Householder tridiagonalization
//! followed by the implicit-shift QL iteration (EISPACK `tred2`/`tql2`).
//! Everything here is deterministic: the same input always produces the
//! same bits, including eigenvector order under exact ties.

// The factorization kernels are direct ports of classical index-based
// algorithms; keep their loop structure.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a square matrix from rows given as slices, mostly for tests.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            m.row_mut(i).copy_from_slice(row);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// `self * other`, straightforward i-k-j loop over contiguous rows.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let a_row = self.row(i);
            for (k, &aik) in a_row.iter().enumerate() {
                if aik == 0.0 {
                    continue;
                }
                let b_row = other.row(k);
                let o_row = out.row_mut(i);
                for j in 0..b_row.len() {
                    o_row[j] += aik * b_row[j];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len(), "matvec shape");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn scale(&mut self, s: f64) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn add_assign(&mut self, other: &Mat) {
        assert_eq!(self.data.len(), other.data.len());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
    }

    pub fn axpy(&mut self, alpha: f64, other: &Mat) {
        assert_eq!(self.data.len(), other.data.len());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * *b;
        }
    }

    /// Replaces `self` by `(self + selfᵀ) / 2`.
    pub fn symmetrize(&mut self) {
        assert_eq!(self.rows, self.cols);
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let v = 0.5 * (self[(i, j)] + self[(j, i)]);
                self[(i, j)] = v;
                self[(j, i)] = v;
            }
        }
    }

    pub fn frob_norm(&self) -> f64 {
        dot(&self.data, &self.data).sqrt()
    }

    /// Frobenius inner product `⟨self, other⟩`.
    pub fn inner(&self, other: &Mat) -> f64 {
        assert_eq!(self.data.len(), other.data.len());
        dot(&self.data, &other.data)
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Dot product with eight independent accumulators so the reduction
/// vectorizes; deterministic for fixed input lengths.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; 8];
    let mut ca = a.chunks_exact(8);
    let mut cb = b.chunks_exact(8);
    for (xa, xb) in ca.by_ref().zip(cb.by_ref()) {
        for t in 0..8 {
            acc[t] += xa[t] * xb[t];
        }
    }
    let mut s = ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7]));
    for (xa, xb) in ca.remainder().iter().zip(cb.remainder()) {
        s += xa * xb;
    }
    s
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn normalize(a: &[f64]) -> Option<Vec<f64>> {
    let n = norm2(a);
    if n == 0.0 {
        return None;
    }
    Some(a.iter().map(|v| v / n).collect())
}

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
///
/// Blocked right-looking elimination: each panel is factored unblocked, the
/// rows below it are triangular-solved, and the trailing block receives a
/// rank-`NB` update through contiguous row dots. Returns `None` if a pivot
/// is non-positive, i.e. the matrix is not numerically positive definite.
pub fn cholesky(a: &Mat) -> Option<Mat> {
    assert_eq!(a.rows(), a.cols());
    const NB: usize = 64;
    let n = a.rows();
    let mut l = Mat::zeros(n, n);
    for i in 0..n {
        let src = a.row(i);
        l.row_mut(i)[..=i].copy_from_slice(&src[..=i]);
    }

    let mut k0 = 0;
    while k0 < n {
        let k1 = (k0 + NB).min(n);

        // Factor the diagonal block; trailing updates from earlier panels
        // are already applied, so only in-panel history remains.
        for i in k0..k1 {
            for j in k0..=i {
                let s = {
                    let row_i = &l.data[i * n + k0..i * n + j];
                    let row_j = &l.data[j * n + k0..j * n + j];
                    l.data[i * n + j] - dot(row_i, row_j)
                };
                if i == j {
                    if s <= 0.0 || !s.is_finite() {
                        return None;
                    }
                    l.data[i * n + i] = s.sqrt();
                } else {
                    l.data[i * n + j] = s / l.data[j * n + j];
                }
            }
        }

        // Triangular solve of the panel rows below the block.
        for i in k1..n {
            for j in k0..k1 {
                let s = {
                    let row_i = &l.data[i * n + k0..i * n + j];
                    let row_j = &l.data[j * n + k0..j * n + j];
                    l.data[i * n + j] - dot(row_i, row_j)
                };
                l.data[i * n + j] = s / l.data[j * n + j];
            }
        }

        // Rank-NB update of the trailing block: copy the panel to a compact
        // buffer, then subtract pair dots with 4x4 register blocking below
        // the diagonal band.
        if k1 < n {
            let nb = k1 - k0;
            let rows_below = n - k1;
            let mut panel = vec![0.0f64; rows_below * nb];
            for r in 0..rows_below {
                let src = (k1 + r) * n + k0;
                panel[r * nb..(r + 1) * nb].copy_from_slice(&l.data[src..src + nb]);
            }
            for bi in (0..rows_below).step_by(4) {
                let bi_end = (bi + 4).min(rows_below);
                let mut bj = 0;
                while bj + 4 <= bi && bi_end == bi + 4 {
                    // Full 4x4 block strictly below the diagonal.
                    let mut acc = [0.0f64; 16];
                    let pa: [&[f64]; 4] = [
                        &panel[bi * nb..(bi + 1) * nb],
                        &panel[(bi + 1) * nb..(bi + 2) * nb],
                        &panel[(bi + 2) * nb..(bi + 3) * nb],
                        &panel[(bi + 3) * nb..(bi + 4) * nb],
                    ];
                    let pb: [&[f64]; 4] = [
                        &panel[bj * nb..(bj + 1) * nb],
                        &panel[(bj + 1) * nb..(bj + 2) * nb],
                        &panel[(bj + 2) * nb..(bj + 3) * nb],
                        &panel[(bj + 3) * nb..(bj + 4) * nb],
                    ];
                    for t in 0..nb {
                        let a = [pa[0][t], pa[1][t], pa[2][t], pa[3][t]];
                        let bv = [pb[0][t], pb[1][t], pb[2][t], pb[3][t]];
                        for r in 0..4 {
                            for c in 0..4 {
                                acc[r * 4 + c] += a[r] * bv[c];
                            }
                        }
                    }
                    for r in 0..4 {
                        for c in 0..4 {
                            let i = k1 + bi + r;
                            let j = k1 + bj + c;
                            l.data[i * n + j] -= acc[r * 4 + c];
                        }
                    }
                    bj += 4;
                }
                // Remaining columns up to each row's diagonal.
                for r in bi..bi_end {
                    let i = k1 + r;
                    let row_r = &panel[r * nb..(r + 1) * nb];
                    for c in bj..=r {
                        let j = k1 + c;
                        let row_c = &panel[c * nb..(c + 1) * nb];
                        l.data[i * n + j] -= dot(row_r, row_c);
                    }
                }
            }
        }
        k0 = k1;
    }
    Some(l)
}

/// Solves `L x = b` for lower-triangular `L`.
pub fn forward_sub(l: &Mat, b: &[f64]) -> Vec<f64> {
    let n = l.rows();
    let mut x = b.to_vec();
    for i in 0..n {
        let s = dot(&l.row(i)[..i], &x[..i]);
        x[i] = (x[i] - s) / l[(i, i)];
    }
    x
}

/// Solves `Lᵀ x = b` for lower-triangular `L`.
pub fn backward_sub(l: &Mat, b: &[f64]) -> Vec<f64> {
    let n = l.rows();
    let mut x = b.to_vec();
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in (i + 1)..n {
            s -= l[(k, i)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Solves `L Lᵀ x = b` given the Cholesky factor `L`.
pub fn chol_solve(l: &Mat, b: &[f64]) -> Vec<f64> {
    backward_sub(l, &forward_sub(l, b))
}

/// Inverse of an SPD matrix through its Cholesky factor.
pub fn spd_inverse(a: &Mat) -> Option<Mat> {
    let n = a.rows();
    let l = cholesky(a)?;
    let mut inv = Mat::zeros(n, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = chol_solve(&l, &e);
        e[j] = 0.0;
        for i in 0..n {
            inv[(i, j)] = col[i];
        }
    }
    inv.symmetrize();
    Some(inv)
}

/// Symmetric eigendecomposition `A = V diag(d) Vᵀ`.
///
/// Eigenvalues come back ascending; eigenvectors are the columns of `V`.
/// Exact ties keep their original coordinate order (a diagonal input yields
/// the identity eigenvector matrix).
pub fn sym_eigen(a: &Mat) -> Result<(Vec<f64>, Mat)> {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    if n == 0 {
        return Ok((vec![], Mat::zeros(0, 0)));
    }
    let mut v = a.clone();
    v.symmetrize();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut v, &mut d, &mut e);
    tql2(&mut v, &mut d, &mut e)?;
    Ok((d, v))
}

/// Eigenvalues of a symmetric matrix, ascending, without eigenvectors.
pub fn sym_eigenvalues(a: &Mat) -> Result<Vec<f64>> {
    Ok(sym_eigen(a)?.0)
}

/// Householder reduction of a symmetric matrix to tridiagonal form,
/// accumulating the transformation in `v` (EISPACK `tred2`).
fn tred2(v: &mut Mat, d: &mut [f64], e: &mut [f64]) {
    let n = v.rows();
    for (j, dj) in d.iter_mut().enumerate() {
        *dj = v[(n - 1, j)];
    }

    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in d.iter().take(i) {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
                v[(j, i)] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }

            for j in 0..i {
                f = d[j];
                v[(j, i)] = f;
                g = e[j] + v[(j, j)] * f;
                for k in (j + 1)..i {
                    g += v[(k, j)] * d[k];
                    e[k] += v[(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    let val = v[(k, j)] - (f * e[k] + g * d[k]);
                    v[(k, j)] = val;
                }
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n.saturating_sub(1) {
        v[(n - 1, i)] = v[(i, i)];
        v[(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[(k, i + 1)] * v[(k, j)];
                }
                for k in 0..=i {
                    let val = v[(k, j)] - g * d[k];
                    v[(k, j)] = val;
                }
            }
        }
        for k in 0..=i {
            v[(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1, j)];
        v[(n - 1, j)] = 0.0;
    }
    v[(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL iteration on a tridiagonal matrix (EISPACK `tql2`).
fn tql2(v: &mut Mat, d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m >= n {
            m = n - 1;
        }

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 64 {
                    return Err(Error::Linalg("QL iteration failed to converge".to_string()));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        h = v[(k, i + 1)];
                        v[(k, i + 1)] = s * v[(k, i)] + c * h;
                        v[(k, i)] = c * v[(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    // Order eigenvalues ascending; strict comparison keeps ties stable.
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for j in (i + 1)..n {
            if d[j] < p {
                k = j;
                p = d[j];
            }
        }
        if k != i {
            d[k] = d[i];
            d[i] = p;
            for r in 0..n {
                let t = v[(r, i)];
                v[(r, i)] = v[(r, k)];
                v[(r, k)] = t;
            }
        }
    }
    Ok(())
}

/// Singular values of a symmetric matrix: absolute eigenvalues, descending.
pub fn sym_singular_values(a: &Mat) -> Result<Vec<f64>> {
    let mut s: Vec<f64> = sym_eigenvalues(a)?.iter().map(|v| v.abs()).collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(s)
}

/// Leading eigenpair (largest eigenvalue) of a symmetric matrix.
///
/// The returned vector has its largest-magnitude entry made nonnegative so
/// callers get a deterministic sign.
pub fn leading_sym_eigenpair(a: &Mat) -> Result<(f64, Vec<f64>)> {
    let n = a.rows();
    let (vals, vecs) = sym_eigen(a)?;
    // Scan for the maximum eigenvalue; earliest index wins on exact ties so
    // that diagonal inputs keep coordinate order.
    let mut best = 0;
    for i in 1..n {
        if vals[i] > vals[best] {
            best = i;
        }
    }
    let mut v: Vec<f64> = (0..n).map(|r| vecs[(r, best)]).collect();
    fix_sign(&mut v);
    Ok((vals[best], v))
}

/// Flips `v` in place so that its largest-magnitude entry is positive
/// (first such entry on ties).
pub fn fix_sign(v: &mut [f64]) {
    let mut k = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[k].abs() {
            k = i;
        }
    }
    if v[k] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}
