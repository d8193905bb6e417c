//! Moment relaxations for sphere-constrained form optimization.
//!
//! For an even symmetric tensor the relaxation optimizes `⟨f, y⟩` over the
//! pseudo-moment vector `y` subject to `M(y) ⪰ 0` and `⟨g, y⟩ = 1`, where
//! `M(y)` is the moment pencil over the degree-`d` monomial basis and `g`
//! collects the coefficients of `(xᵀx)^d`. Odd orders are lifted by one
//! auxiliary variable; nonsymmetric tensors go through the squared
//! last-mode-slice form over outer products of mode vectors.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::tensor::{orbit_size, GenTensor, SymTensor};

/// Monomials of total degree `d` in `n` variables, graded so that the
/// exponent of `x_1` decreases first: `x_1^d, x_1^{d-1}x_2, ..., x_n^d`.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    n: usize,
    d: usize,
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: usize) -> Self {
        assert!(n >= 1 && d >= 1);
        let mut exps = Vec::new();
        let mut cur = vec![0u32; n];
        gen_exps(n, d, 0, &mut cur, &mut exps);
        let index = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialBasis { n, d, exps, index }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.exps[i]
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// Evaluates every basis monomial at `x`.
    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        self.exps
            .iter()
            .map(|e| {
                let mut p = 1.0;
                for (i, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        p *= x[i];
                    }
                }
                p
            })
            .collect()
    }
}

fn gen_exps(n: usize, remaining: usize, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos == n - 1 {
        cur[pos] = remaining as u32;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for k in (0..=remaining).rev() {
        cur[pos] = k as u32;
        gen_exps(n, remaining - k, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// Which relaxation a [`MomentSdp`] encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdpKind {
    SymMax,
    SymMin,
    OddLifted,
    Nonsym,
}

/// How variables are indexed: monomial exponents for symmetric pencils,
/// per-mode index pairs for the nonsymmetric pencil.
#[derive(Debug, Clone)]
pub enum VarIndexing {
    Sym { n: usize, d: usize },
    Nonsym { dims: Vec<usize> },
}

/// A moment relaxation in variable form: a linear pencil over a shared
/// variable vector, a linear objective and the normalization functional.
#[derive(Debug, Clone)]
pub struct MomentSdp {
    pub(crate) kind: SdpKind,
    pub(crate) pencil_size: usize,
    /// Upper-triangle pencil positions `(p, q)`, `p <= q`, carrying each
    /// variable.
    pub(crate) groups: Vec<Vec<(usize, usize)>>,
    pub(crate) objective: Vec<f64>,
    pub(crate) normalization: Vec<f64>,
    pub(crate) indexing: VarIndexing,
    /// Rescaling constant relating the lifted even optimum to the original
    /// odd optimum, present when `kind == OddLifted`.
    pub(crate) odd_scale: Option<f64>,
}

impl MomentSdp {
    pub fn kind(&self) -> SdpKind {
        self.kind
    }

    pub fn pencil_size(&self) -> usize {
        self.pencil_size
    }

    pub fn variable_count(&self) -> usize {
        self.groups.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn normalization(&self) -> &[f64] {
        &self.normalization
    }

    pub fn indexing(&self) -> &VarIndexing {
        &self.indexing
    }

    pub fn odd_scale(&self) -> Option<f64> {
        self.odd_scale
    }

    /// Assembles the pencil `M(y)` (or `K(w)`) for a variable vector.
    pub fn pencil(&self, y: &[f64]) -> Mat {
        assert_eq!(y.len(), self.groups.len());
        let mut m = Mat::zeros(self.pencil_size, self.pencil_size);
        for (v, group) in self.groups.iter().enumerate() {
            for &(p, q) in group {
                m[(p, q)] = y[v];
                m[(q, p)] = y[v];
            }
        }
        m
    }

    /// Relaxation optimum in the problem's own sense given the value of the
    /// standard-form (maximization) solve.
    pub fn relaxation_value(&self, std_p_obj: f64) -> f64 {
        match self.kind {
            SdpKind::SymMin => -std_p_obj,
            _ => std_p_obj,
        }
    }

    /// `⟨objective, y⟩`.
    pub fn objective_dot(&self, y: &[f64]) -> f64 {
        crate::linalg::dot(&self.objective, y)
    }

    /// `⟨normalization, y⟩`.
    pub fn normalization_dot(&self, y: &[f64]) -> f64 {
        crate::linalg::dot(&self.normalization, y)
    }
}

/// Builds the degree-`m` coefficient vector of the form of a symmetric
/// tensor over the monomial basis, permutation multiplicities folded in.
fn form_coefficients(t: &SymTensor, basis: &MonomialBasis) -> Vec<f64> {
    let mut f = vec![0.0; basis.len()];
    for (idx, v) in t.orbits() {
        let mut exps = vec![0u32; t.dim()];
        for &i in idx {
            exps[i] += 1;
        }
        let vi = basis
            .index_of(&exps)
            .expect("orbit exponent must be in the degree-m basis");
        f[vi] = orbit_size(idx) * v;
    }
    f
}

/// Coefficients of `(xᵀx)^d` over the degree-`2d` basis: the multinomial
/// `d! / λ!` at exponent `2λ`, zero at odd exponents.
fn sphere_power_coefficients(basis: &MonomialBasis) -> Vec<f64> {
    let d = basis.degree() / 2;
    basis
        .exps
        .iter()
        .map(|e| {
            if e.iter().any(|&k| k % 2 == 1) {
                return 0.0;
            }
            let mut num = (1..=d as u64).product::<u64>().max(1) as f64;
            for &k in e {
                let half = (k / 2) as u64;
                num /= (1..=half).product::<u64>().max(1) as f64;
            }
            num
        })
        .collect()
}

/// Moment relaxation of `max/min f(x)` over the unit sphere for an even
/// symmetric tensor.
pub fn sym_relaxation(t: &SymTensor, sense_max: bool) -> Result<MomentSdp> {
    let m = t.order();
    if !m.is_multiple_of(2) {
        return Err(Error::Parity(format!(
            "even relaxation called on odd order {m}; lift first"
        )));
    }
    let n = t.dim();
    let d = m / 2;
    let basis_d = MonomialBasis::new(n, d);
    let basis_2d = MonomialBasis::new(n, 2 * d);
    let pencil_size = basis_d.len();

    let mut groups = vec![Vec::new(); basis_2d.len()];
    for p in 0..pencil_size {
        for q in p..pencil_size {
            let mut exps = basis_d.exponents(p).to_vec();
            for (e, &b) in exps.iter_mut().zip(basis_d.exponents(q)) {
                *e += b;
            }
            let vi = basis_2d
                .index_of(&exps)
                .expect("sum of degree-d exponents is degree-2d");
            groups[vi].push((p, q));
        }
    }

    Ok(MomentSdp {
        kind: if sense_max {
            SdpKind::SymMax
        } else {
            SdpKind::SymMin
        },
        pencil_size,
        groups,
        objective: form_coefficients(t, &basis_2d),
        normalization: sphere_power_coefficients(&basis_2d),
        indexing: VarIndexing::Sym { n, d },
        odd_scale: None,
    })
}

/// Record of the odd-to-even lift `f̃(x, t) = f(x) · t`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedForm {
    /// Original odd order `m = 2d - 1`.
    pub original_order: usize,
    /// Variable count after lifting, `n + 1`.
    pub lifted_vars: usize,
    /// `c(d) = sqrt(2d-1) (1 - 1/(2d))^{-d}` with
    /// `f_max = c(d) · f̃_max`.
    pub scale: f64,
}

/// The rescaling constant for the lift at half-degree `d`.
pub fn odd_lift_scale(d: usize) -> f64 {
    let two_d = (2 * d) as f64;
    (two_d - 1.0).sqrt() * (1.0 - 1.0 / two_d).powi(-(d as i32))
}

/// Lifts an odd symmetric tensor to the even tensor of `f(x) · x_{n+1}`.
pub fn lift_odd(t: &SymTensor) -> Result<(SymTensor, LiftedForm)> {
    let m = t.order();
    if m.is_multiple_of(2) {
        return Err(Error::Parity(format!("lift requires odd order, got {m}")));
    }
    let n = t.dim();
    let d = m.div_ceil(2);
    let mut lifted = SymTensor::new(n + 1, m + 1);
    for (idx, v) in t.orbits() {
        let mut lifted_idx = idx.clone();
        lifted_idx.push(n);
        let value = v * orbit_size(idx) / orbit_size(&lifted_idx);
        lifted.set(&lifted_idx, value)?;
    }
    Ok((
        lifted,
        LiftedForm {
            original_order: m,
            lifted_vars: n + 1,
            scale: odd_lift_scale(d),
        },
    ))
}

/// Lift followed by the even max relaxation, tagged as odd-lifted so the
/// certified bound picks up the rescaling constant.
pub fn odd_relaxation(t: &SymTensor) -> Result<(MomentSdp, LiftedForm)> {
    let (lifted, form) = lift_odd(t)?;
    let mut sdp = sym_relaxation(&lifted, true)?;
    sdp.kind = SdpKind::OddLifted;
    sdp.odd_scale = Some(form.scale);
    Ok((sdp, form))
}

/// Coefficient matrix of the squared last-mode-slice form
/// `F^sq = Σ_j F_j(x^1, ..., x^{m-1})^2` over the outer-product basis
/// `x^1 ⊗ ... ⊗ x^{m-1}`, together with the leading mode sizes.
///
/// Callers wanting the smallest pencil permute modes so the largest
/// dimension comes last before calling this.
pub fn squared_form(t: &GenTensor) -> Result<(Mat, Vec<usize>)> {
    let m = t.order();
    if m < 2 {
        return Err(Error::Shape(
            "squared form needs at least two modes".to_string(),
        ));
    }
    let dims = t.dims();
    let lead: Vec<usize> = dims[..m - 1].to_vec();
    let n_last = dims[m - 1];
    let rows: usize = lead.iter().product();
    // Row-major layout puts the last mode innermost: slice j of the data,
    // strided by n_last, is the coefficient vector of F_j.
    let data = t.data();
    let mut ghat = Mat::zeros(rows, rows);
    for a in 0..rows {
        let ra = &data[a * n_last..(a + 1) * n_last];
        for b in a..rows {
            let rb = &data[b * n_last..(b + 1) * n_last];
            let v = crate::linalg::dot(ra, rb);
            ghat[(a, b)] = v;
            ghat[(b, a)] = v;
        }
    }
    Ok((ghat, lead))
}

/// Unordered index pairs `(a, b)`, `a <= b`, over a mode of size `n`, in
/// lexicographic order.
pub fn mode_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for a in 0..n {
        for b in a..n {
            out.push((a, b));
        }
    }
    out
}

/// Canonical enumeration of the nonsymmetric pencil's variables: per-mode
/// unordered pairs, mode 0 slowest. Exposes the key list and its lookup.
#[derive(Debug, Clone)]
pub struct PairIndexing {
    pub dims: Vec<usize>,
    pub keys: Vec<Vec<(usize, usize)>>,
    index: HashMap<Vec<(usize, usize)>, usize>,
}

impl PairIndexing {
    pub fn new(dims: &[usize]) -> Self {
        let per_mode: Vec<Vec<(usize, usize)>> = dims.iter().map(|&n| mode_pairs(n)).collect();
        let mut keys = vec![Vec::new()];
        for pairs in &per_mode {
            let mut next = Vec::with_capacity(keys.len() * pairs.len());
            for key in &keys {
                for &p in pairs {
                    let mut k = key.clone();
                    k.push(p);
                    next.push(k);
                }
            }
            keys = next;
        }
        let index = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        PairIndexing {
            dims: dims.to_vec(),
            keys,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn index_of(&self, key: &[(usize, usize)]) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Key of the pencil position `(p, q)` given flat indices.
    pub fn position_key(&self, p: usize, q: usize) -> Vec<(usize, usize)> {
        let pi = unflatten(p, &self.dims);
        let qi = unflatten(q, &self.dims);
        pi.iter()
            .zip(&qi)
            .map(|(&a, &b)| (a.min(b), a.max(b)))
            .collect()
    }
}

/// Row-major decode of a flat index over `dims`.
pub fn unflatten(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut idx = vec![0usize; dims.len()];
    for k in (0..dims.len()).rev() {
        idx[k] = flat % dims[k];
        flat /= dims[k];
    }
    idx
}

/// Moment relaxation of `max F^sq` over the product of unit spheres.
///
/// `ghat` is the squared-form coefficient matrix over the outer-product
/// basis of the modes in `dims` (all modes except the eliminated last one).
pub fn nonsym_relaxation(ghat: &Mat, dims: &[usize]) -> Result<MomentSdp> {
    let n: usize = dims.iter().product();
    if ghat.rows() != n || ghat.cols() != n {
        return Err(Error::Shape(format!(
            "coefficient matrix is {}x{}, expected {}x{}",
            ghat.rows(),
            ghat.cols(),
            n,
            n
        )));
    }
    let indexing = PairIndexing::new(dims);
    let v = indexing.len();
    let mut groups = vec![Vec::new(); v];
    let mut objective = vec![0.0; v];
    let mut normalization = vec![0.0; v];

    for p in 0..n {
        for q in p..n {
            let key = indexing.position_key(p, q);
            let vi = indexing.index_of(&key).expect("key enumeration is total");
            groups[vi].push((p, q));
            // Class sum over full (ordered) positions: off-diagonal upper
            // pairs stand for two symmetric entries.
            objective[vi] += if p == q {
                ghat[(p, q)]
            } else {
                2.0 * ghat[(p, q)]
            };
        }
    }
    for p in 0..n {
        let key = indexing.position_key(p, p);
        let vi = indexing.index_of(&key).unwrap();
        normalization[vi] = 1.0;
    }

    Ok(MomentSdp {
        kind: SdpKind::Nonsym,
        pencil_size: n,
        groups,
        objective,
        normalization,
        indexing: VarIndexing::Nonsym {
            dims: dims.to_vec(),
        },
        odd_scale: None,
    })
}

/// Pseudo-moment vector of a point: `y_α = u^α` over the degree-`2d` basis.
pub fn moment_vector(u: &[f64], d2: usize) -> Vec<f64> {
    MonomialBasis::new(u.len(), d2).eval(u)
}

/// Pseudo-moment vector of a tuple over the pair variables:
/// `w_{(a,b) per mode} = Π_j u^j_a u^j_b`.
pub fn pair_moment_vector(us: &[Vec<f64>]) -> Vec<f64> {
    let dims: Vec<usize> = us.iter().map(|u| u.len()).collect();
    let indexing = PairIndexing::new(&dims);
    indexing
        .keys
        .iter()
        .map(|key| {
            key.iter()
                .enumerate()
                .map(|(j, &(a, b))| us[j][a] * us[j][b])
                .product()
        })
        .collect()
}
