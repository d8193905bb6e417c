//! Tensor storage and the multilinear/homogeneous forms they induce.
//!
//! Symmetric tensors are stored sparsely: one value per orbit of index
//! permutations, keyed by the sorted multi-index. Dense general tensors are
//! row-major. All indices are 0-based inside the library; the text file
//! format is 1-based.

pub mod families;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{norm2, Mat};

/// Symmetric tensor of order `m` over `R^n`, one stored value per sorted
/// multi-index orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor {
    n: usize,
    m: usize,
    entries: BTreeMap<Vec<usize>, f64>,
}

/// Dense tensor over dimensions `(n_1, ..., n_m)`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GenTensor {
    dims: Vec<usize>,
    data: Vec<f64>,
}

/// A rank-1 tensor `lambda * u^1 ⊗ ... ⊗ u^m` with unit factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank1Tensor {
    pub lambda: f64,
    pub factors: Vec<Vec<f64>>,
}

/// Either tensor kind, as read from a tensor file.
#[derive(Debug, Clone, PartialEq)]
pub enum Tensor {
    Sym(SymTensor),
    Gen(GenTensor),
}

/// Number of distinct permutations of a sorted multi-index:
/// `m! / (k_1! k_2! ...)` where `k_j` are the repetition counts.
pub fn orbit_size(sorted_idx: &[usize]) -> f64 {
    let m = sorted_idx.len();
    let mut result = factorial(m);
    let mut run = 1usize;
    for i in 1..=m {
        if i < m && sorted_idx[i] == sorted_idx[i - 1] {
            run += 1;
        } else {
            result /= factorial(run);
            run = 1;
        }
    }
    result as f64
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product::<u64>().max(1)
}

/// Advances a sorted (nondecreasing) multi-index over `{0, ..., n-1}`;
/// returns `false` once the iteration is exhausted.
pub fn next_sorted_index(idx: &mut [usize], n: usize) -> bool {
    let m = idx.len();
    for k in (0..m).rev() {
        if idx[k] + 1 < n {
            let v = idx[k] + 1;
            for slot in idx.iter_mut().skip(k) {
                *slot = v;
            }
            return true;
        }
    }
    false
}

/// Advances a mixed-radix multi-index over `dims`; `false` when exhausted.
pub fn next_index(idx: &mut [usize], dims: &[usize]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < dims[k] {
            return true;
        }
        idx[k] = 0;
    }
    false
}

impl SymTensor {
    /// Zero tensor of order `m` over `R^n`.
    pub fn new(n: usize, m: usize) -> Self {
        assert!(n >= 1 && m >= 1, "order and dimension must be positive");
        SymTensor {
            n,
            m,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.m
    }

    /// Sets the orbit value at `idx` (any permutation; sorted internally).
    pub fn set(&mut self, idx: &[usize], value: f64) -> Result<()> {
        if idx.len() != self.m {
            return Err(Error::Index(format!(
                "index length {} does not match order {}",
                idx.len(),
                self.m
            )));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.n) {
            return Err(Error::Index(format!(
                "index entry {} out of range for dimension {}",
                bad, self.n
            )));
        }
        let mut key = idx.to_vec();
        key.sort_unstable();
        self.entries.insert(key, value);
        Ok(())
    }

    /// Reads the value at `idx` (any permutation); absent orbits are zero.
    pub fn get(&self, idx: &[usize]) -> f64 {
        let mut key = idx.to_vec();
        key.sort_unstable();
        self.entries.get(&key).copied().unwrap_or(0.0)
    }

    /// Stored orbits as `(sorted index, value)` pairs in sorted-key order.
    pub fn orbits(&self) -> impl Iterator<Item = (&Vec<usize>, f64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn num_orbits(&self) -> usize {
        self.entries.len()
    }

    pub fn scale(&mut self, c: f64) {
        for v in self.entries.values_mut() {
            *v *= c;
        }
    }

    /// Frobenius norm, counting every permuted position once.
    pub fn norm(&self) -> f64 {
        let mut s = 0.0;
        for (idx, v) in self.orbits() {
            s += orbit_size(idx) * v * v;
        }
        s.sqrt()
    }

    /// Evaluates the homogeneous form
    /// `f(x) = Σ F_{i_1..i_m} x_{i_1} ... x_{i_m}` over all index tuples.
    pub fn eval_form(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::Shape(format!(
                "vector length {} does not match dimension {}",
                x.len(),
                self.n
            )));
        }
        let mut s = 0.0;
        for (idx, v) in self.orbits() {
            let mut prod = v * orbit_size(idx);
            for &i in idx {
                prod *= x[i];
            }
            s += prod;
        }
        Ok(s)
    }

    /// Gradient of `eval_form` at `x`.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::Shape("gradient: dimension mismatch".to_string()));
        }
        let mut g = vec![0.0; self.n];
        let mut counts = vec![0usize; self.n];
        for (idx, v) in self.orbits() {
            for c in counts.iter_mut() {
                *c = 0;
            }
            for &i in idx {
                counts[i] += 1;
            }
            let coeff = v * orbit_size(idx);
            // d/dx_k of coeff * prod x_i^{counts_i}
            for k in 0..self.n {
                if counts[k] == 0 {
                    continue;
                }
                let mut term = coeff * counts[k] as f64;
                for (i, &c) in counts.iter().enumerate() {
                    let pow = if i == k { c - 1 } else { c };
                    for _ in 0..pow {
                        term *= x[i];
                    }
                }
                g[k] += term;
            }
        }
        Ok(g)
    }

    /// Symmetric power-method contraction `F x^{m-1}`, i.e. `∇f(x) / m`.
    pub fn power_contraction(&self, x: &[f64]) -> Result<Vec<f64>> {
        let g = self.gradient(x)?;
        let m = self.m as f64;
        Ok(g.into_iter().map(|v| v / m).collect())
    }

    /// Expands to a dense general tensor with all `n^m` positions.
    pub fn to_dense(&self) -> GenTensor {
        let dims = vec![self.n; self.m];
        let mut g = GenTensor::zeros(&dims);
        let mut idx = vec![0usize; self.m];
        loop {
            let v = self.get(&idx);
            if v != 0.0 {
                g.set(&idx, v).unwrap();
            }
            if !next_index(&mut idx, &dims) {
                break;
            }
        }
        g
    }

    /// Frobenius distance to a symmetric rank-1 tensor, computed entrywise.
    pub fn residual(&self, r: &Rank1Tensor) -> Result<f64> {
        if r.factors.is_empty() {
            // Zero rank-1 approximation: residual is the norm itself
            // (lambda must be zero for an empty factor list).
            return Ok(self.norm());
        }
        if r.factors.len() != self.m {
            return Err(Error::Shape(
                "rank-1 order does not match tensor order".to_string(),
            ));
        }
        for f in &r.factors {
            if f.len() != self.n {
                return Err(Error::Shape(
                    "rank-1 factor length does not match dimension".to_string(),
                ));
            }
        }
        let u = &r.factors[0];
        for f in &r.factors[1..] {
            let same = f.iter().zip(u).all(|(a, b)| (a - b).abs() <= 1e-12);
            if !same {
                return Err(Error::Shape(
                    "symmetric residual requires identical factors".to_string(),
                ));
            }
        }
        let mut s = 0.0;
        let mut idx = vec![0usize; self.m];
        loop {
            let mut prod = r.lambda;
            for &i in &idx {
                prod *= u[i];
            }
            let d = self.get(&idx) - prod;
            s += orbit_size(&idx) * d * d;
            if !next_sorted_index(&mut idx, self.n) {
                break;
            }
        }
        Ok(s.sqrt())
    }
}

impl GenTensor {
    pub fn zeros(dims: &[usize]) -> Self {
        assert!(!dims.is_empty(), "tensor needs at least one mode");
        assert!(dims.iter().all(|&d| d >= 1), "dims must be positive");
        let len = dims.iter().product();
        GenTensor {
            dims: dims.to_vec(),
            data: vec![0.0; len],
        }
    }

    pub fn from_fn(dims: &[usize], mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut t = GenTensor::zeros(dims);
        let mut idx = vec![0usize; dims.len()];
        loop {
            let flat = t.flat_index(&idx);
            t.data[flat] = f(&idx);
            if !next_index(&mut idx, dims) {
                break;
            }
        }
        t
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut flat = 0;
        for (k, &i) in idx.iter().enumerate() {
            debug_assert!(i < self.dims[k]);
            flat = flat * self.dims[k] + i;
        }
        flat
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) -> Result<()> {
        if idx.len() != self.dims.len() {
            return Err(Error::Index("index length mismatch".to_string()));
        }
        for (k, &i) in idx.iter().enumerate() {
            if i >= self.dims[k] {
                return Err(Error::Index(format!(
                    "index entry {} out of range for mode of size {}",
                    i, self.dims[k]
                )));
            }
        }
        let flat = self.flat_index(idx);
        self.data[flat] = v;
        Ok(())
    }

    pub fn scale(&mut self, c: f64) {
        for v in &mut self.data {
            *v *= c;
        }
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.data)
    }

    /// Evaluates the multilinear form `F(x^1, ..., x^m)`.
    pub fn eval_multilinear(&self, xs: &[Vec<f64>]) -> Result<f64> {
        self.check_args(xs)?;
        let mut s = 0.0;
        let mut idx = vec![0usize; self.dims.len()];
        let mut flat = 0;
        loop {
            let v = self.data[flat];
            if v != 0.0 {
                let mut prod = v;
                for (j, &i) in idx.iter().enumerate() {
                    prod *= xs[j][i];
                }
                s += prod;
            }
            flat += 1;
            if !next_index(&mut idx, &self.dims) {
                break;
            }
        }
        Ok(s)
    }

    /// Contracts every mode except `mode` against the given vectors,
    /// returning the length-`n_mode` vector
    /// `c_k = F(x^1, ..., e_k at mode, ..., x^m)`.
    ///
    /// `xs` must hold one vector per mode; the entry at `mode` is ignored.
    pub fn contract_except(&self, mode: usize, xs: &[Vec<f64>]) -> Result<Vec<f64>> {
        if mode >= self.dims.len() {
            return Err(Error::Index("mode out of range".to_string()));
        }
        self.check_args_except(xs, mode)?;
        let mut out = vec![0.0; self.dims[mode]];
        let mut idx = vec![0usize; self.dims.len()];
        let mut flat = 0;
        loop {
            let v = self.data[flat];
            if v != 0.0 {
                let mut prod = v;
                for (j, &i) in idx.iter().enumerate() {
                    if j != mode {
                        prod *= xs[j][i];
                    }
                }
                out[idx[mode]] += prod;
            }
            flat += 1;
            if !next_index(&mut idx, &self.dims) {
                break;
            }
        }
        Ok(out)
    }

    fn check_args(&self, xs: &[Vec<f64>]) -> Result<()> {
        if xs.len() != self.dims.len() {
            return Err(Error::Shape(format!(
                "{} argument vectors for an order-{} tensor",
                xs.len(),
                self.dims.len()
            )));
        }
        for (j, x) in xs.iter().enumerate() {
            if x.len() != self.dims[j] {
                return Err(Error::Shape(format!(
                    "argument {} has length {}, expected {}",
                    j,
                    x.len(),
                    self.dims[j]
                )));
            }
        }
        Ok(())
    }

    fn check_args_except(&self, xs: &[Vec<f64>], mode: usize) -> Result<()> {
        if xs.len() != self.dims.len() {
            return Err(Error::Shape("argument count mismatch".to_string()));
        }
        for (j, x) in xs.iter().enumerate() {
            if j != mode && x.len() != self.dims[j] {
                return Err(Error::Shape(format!(
                    "argument {} has length {}, expected {}",
                    j,
                    x.len(),
                    self.dims[j]
                )));
            }
        }
        Ok(())
    }

    /// Mode-`mode` unfolding: an `n_mode x (prod of other dims)` matrix.
    /// Columns enumerate the remaining indices in their original order,
    /// row-major.
    pub fn mode_unfold(&self, mode: usize) -> Result<Mat> {
        if mode >= self.dims.len() {
            return Err(Error::Index(format!(
                "mode {} out of range for order {}",
                mode,
                self.dims.len()
            )));
        }
        let rows = self.dims[mode];
        let cols: usize = self
            .dims
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != mode)
            .map(|(_, &d)| d)
            .product();
        let mut a = Mat::zeros(rows, cols);
        let mut idx = vec![0usize; self.dims.len()];
        let mut flat = 0;
        loop {
            let mut col = 0;
            for (j, &i) in idx.iter().enumerate() {
                if j != mode {
                    col = col * self.dims[j] + i;
                }
            }
            a[(idx[mode], col)] = self.data[flat];
            flat += 1;
            if !next_index(&mut idx, &self.dims) {
                break;
            }
        }
        Ok(a)
    }

    /// Inverse of `mode_unfold`.
    pub fn refold(a: &Mat, mode: usize, dims: &[usize]) -> Result<GenTensor> {
        let mut t = GenTensor::zeros(dims);
        let expected_cols: usize = dims
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != mode)
            .map(|(_, &d)| d)
            .product();
        if a.rows() != dims[mode] || a.cols() != expected_cols {
            return Err(Error::Shape("refold: matrix shape mismatch".to_string()));
        }
        let mut idx = vec![0usize; dims.len()];
        let mut flat = 0;
        loop {
            let mut col = 0;
            for (j, &i) in idx.iter().enumerate() {
                if j != mode {
                    col = col * dims[j] + i;
                }
            }
            t.data[flat] = a[(idx[mode], col)];
            flat += 1;
            if !next_index(&mut idx, dims) {
                break;
            }
        }
        Ok(t)
    }

    /// Returns a copy with modes `a` and `b` swapped.
    pub fn swap_modes(&self, a: usize, b: usize) -> GenTensor {
        if a == b {
            return self.clone();
        }
        let mut dims = self.dims.clone();
        dims.swap(a, b);
        let mut out = GenTensor::zeros(&dims);
        let mut idx = vec![0usize; self.dims.len()];
        let mut flat = 0;
        loop {
            let mut jdx = idx.clone();
            jdx.swap(a, b);
            let out_flat = out.flat_index(&jdx);
            out.data[out_flat] = self.data[flat];
            flat += 1;
            if !next_index(&mut idx, &self.dims) {
                break;
            }
        }
        out
    }

    /// Frobenius distance to a rank-1 tensor, computed entrywise.
    pub fn residual(&self, r: &Rank1Tensor) -> Result<f64> {
        if r.factors.is_empty() {
            return Ok(self.norm());
        }
        if r.factors.len() != self.dims.len() {
            return Err(Error::Shape(
                "rank-1 order does not match tensor order".to_string(),
            ));
        }
        for (j, f) in r.factors.iter().enumerate() {
            if f.len() != self.dims[j] {
                return Err(Error::Shape(format!(
                    "rank-1 factor {} has length {}, expected {}",
                    j,
                    f.len(),
                    self.dims[j]
                )));
            }
        }
        let mut s = 0.0;
        let mut idx = vec![0usize; self.dims.len()];
        let mut flat = 0;
        loop {
            let mut prod = r.lambda;
            for (j, &i) in idx.iter().enumerate() {
                prod *= r.factors[j][i];
            }
            let d = self.data[flat] - prod;
            s += d * d;
            flat += 1;
            if !next_index(&mut idx, &self.dims) {
                break;
            }
        }
        Ok(s.sqrt())
    }
}

impl Rank1Tensor {
    /// Builds a rank-1 tensor, checking factors are unit within 1e-12.
    pub fn new(lambda: f64, factors: Vec<Vec<f64>>) -> Result<Self> {
        for f in &factors {
            let n = norm2(f);
            if (n - 1.0).abs() > 1e-12 {
                return Err(Error::Shape(format!(
                    "rank-1 factor norm {n} is not 1 within 1e-12"
                )));
            }
        }
        Ok(Rank1Tensor { lambda, factors })
    }

    /// The zero tensor, written with an empty factor list.
    pub fn zero() -> Self {
        Rank1Tensor {
            lambda: 0.0,
            factors: vec![],
        }
    }

    /// Symmetric rank-1 tensor `lambda * u^{⊗m}`.
    pub fn symmetric(lambda: f64, u: Vec<f64>, m: usize) -> Result<Self> {
        Rank1Tensor::new(lambda, vec![u; m])
    }

    /// Frobenius norm of the represented tensor (`|lambda|` for unit factors).
    pub fn norm(&self) -> f64 {
        let mut v = self.lambda.abs();
        for f in &self.factors {
            v *= norm2(f);
        }
        v
    }

    pub fn order(&self) -> usize {
        self.factors.len()
    }
}

impl Tensor {
    pub fn order(&self) -> usize {
        match self {
            Tensor::Sym(t) => t.order(),
            Tensor::Gen(t) => t.order(),
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            Tensor::Sym(t) => t.norm(),
            Tensor::Gen(t) => t.norm(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        match self {
            Tensor::Sym(t) => vec![t.dim(); t.order()],
            Tensor::Gen(t) => t.dims().to_vec(),
        }
    }

    pub fn residual(&self, r: &Rank1Tensor) -> Result<f64> {
        match self {
            Tensor::Sym(t) => t.residual(r),
            Tensor::Gen(t) => t.residual(r),
        }
    }

    pub fn is_symmetric_kind(&self) -> bool {
        matches!(self, Tensor::Sym(_))
    }
}
