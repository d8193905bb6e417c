//! Recovering candidate optimizers from solved relaxations: the numeric
//! rank test, diagonal-moment extraction for symmetric pencils, odd-order
//! unlifting, and per-mode factor extraction for the nonsymmetric pencil.

use crate::error::Result;
use crate::linalg::{norm2, sym_singular_values, Mat};
use crate::moment::{MonomialBasis, PairIndexing};
use crate::tensor::GenTensor;

/// Ratio threshold of the numeric rank rule: the rank is the smallest `r`
/// with `sigma_{r+1} / sigma_r < 1e-6`.
pub const RANK_RATIO_TOL: f64 = 1e-6;

/// Result of extracting candidate factors from a solved pencil.
#[derive(Debug, Clone)]
pub struct ExtractResult {
    /// Candidate unit factors: one vector for symmetric pencils, one per
    /// retained mode for the nonsymmetric pencil. Empty when the zero
    /// tensor was flagged.
    pub vectors: Vec<Vec<f64>>,
    pub pencil_rank: usize,
    /// `pencil_rank == 1`.
    pub certified: bool,
    /// Singular values of the pencil, descending.
    pub singular_values: Vec<f64>,
    /// All relevant moments vanished: the zero tensor is the best rank-1
    /// approximation.
    pub zero: bool,
}

/// Numeric rank of a symmetric matrix: singular values descending, rank is
/// the smallest `r` with `sigma_{r+1}/sigma_r < 1e-6`; all-zero gives 0.
pub fn numeric_rank(a: &Mat) -> Result<(usize, Vec<f64>)> {
    let sv = sym_singular_values(a)?;
    Ok((rank_from_singular_values(&sv), sv))
}

fn rank_from_singular_values(sv: &[f64]) -> usize {
    if sv.is_empty() || sv[0] <= 0.0 {
        return 0;
    }
    for r in 1..sv.len() {
        if sv[r] / sv[r - 1] < RANK_RATIO_TOL {
            return r;
        }
    }
    sv.len()
}

/// Extracts the candidate maximizer from a symmetric pseudo-moment vector
/// over the degree-`2d` basis in `n` variables: pick the coordinate `s`
/// maximizing `y_{2d e_s}`, read off
/// `u_i = y_{(2d-1) e_s + e_i}`, and normalize. The rank comes from the
/// reconstructed pencil `M(y)`.
pub fn extract_sym(y: &[f64], n: usize, d: usize) -> Result<ExtractResult> {
    let basis_2d = MonomialBasis::new(n, 2 * d);
    assert_eq!(y.len(), basis_2d.len(), "moment vector length");
    let basis_d = MonomialBasis::new(n, d);

    // Rank of M(y).
    let pencil = sym_pencil(y, &basis_d, &basis_2d);
    let (pencil_rank, singular_values) = numeric_rank(&pencil)?;

    // s = argmax y_{2d e_i}, smallest index on ties.
    let mut s = 0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        let mut exps = vec![0u32; n];
        exps[i] = 2 * d as u32;
        let v = y[basis_2d.index_of(&exps).unwrap()];
        if v > best {
            best = v;
            s = i;
        }
    }

    let mut u_hat = vec![0.0; n];
    for (i, slot) in u_hat.iter_mut().enumerate() {
        let mut exps = vec![0u32; n];
        exps[s] += (2 * d - 1) as u32;
        exps[i] += 1;
        *slot = y[basis_2d.index_of(&exps).unwrap()];
    }

    let nrm = norm2(&u_hat);
    if nrm == 0.0 {
        return Ok(ExtractResult {
            vectors: vec![],
            pencil_rank,
            certified: false,
            singular_values,
            zero: true,
        });
    }
    for v in &mut u_hat {
        *v /= nrm;
    }
    Ok(ExtractResult {
        vectors: vec![u_hat],
        pencil_rank,
        certified: pencil_rank == 1,
        singular_values,
        zero: false,
    })
}

fn sym_pencil(y: &[f64], basis_d: &MonomialBasis, basis_2d: &MonomialBasis) -> Mat {
    let n = basis_d.len();
    let mut m = Mat::zeros(n, n);
    for p in 0..n {
        for q in p..n {
            let mut exps = basis_d.exponents(p).to_vec();
            for (e, &b) in exps.iter_mut().zip(basis_d.exponents(q)) {
                *e += b;
            }
            let v = y[basis_2d.index_of(&exps).unwrap()];
            m[(p, q)] = v;
            m[(q, p)] = v;
        }
    }
    m
}

/// Maps a maximizer of the lifted even problem back to the original odd
/// problem: with `v = (v̂, t̂)`, the unlifted point is
/// `sign(t̂) · v̂ / sqrt(1 - t̂²)`. Returns `None` when `v̂ = 0` or
/// `t̂ = 0`, which certifies the zero tensor as the best approximation.
pub fn unlift_odd(v_plus: &[f64]) -> Option<Vec<f64>> {
    let n = v_plus.len() - 1;
    let v_hat = &v_plus[..n];
    let t_hat = v_plus[n];
    let v_norm = norm2(v_hat);
    if v_norm == 0.0 || t_hat == 0.0 {
        return None;
    }
    let denom = (1.0 - t_hat * t_hat).max(0.0).sqrt();
    if denom == 0.0 {
        return None;
    }
    let s = t_hat.signum() / denom;
    let mut u: Vec<f64> = v_hat.iter().map(|v| s * v).collect();
    // Guard against accumulated roundoff in the moments.
    let nrm = norm2(&u);
    for v in &mut u {
        *v /= nrm;
    }
    Some(u)
}

/// Extracts per-mode candidate factors from a nonsymmetric pair-moment
/// vector over `dims`: pick the diagonal index tuple `l` with the largest
/// `w_{l,l}`, then read mode `j`'s factor from the pencil column at `l`.
pub fn extract_nonsym(w: &[f64], dims: &[usize]) -> Result<ExtractResult> {
    let indexing = PairIndexing::new(dims);
    assert_eq!(w.len(), indexing.len(), "pair moment vector length");
    let n: usize = dims.iter().product();

    // Rank of K(w).
    let mut pencil = Mat::zeros(n, n);
    for p in 0..n {
        for q in p..n {
            let v = w[indexing.index_of(&indexing.position_key(p, q)).unwrap()];
            pencil[(p, q)] = v;
            pencil[(q, p)] = v;
        }
    }
    let (pencil_rank, singular_values) = numeric_rank(&pencil)?;

    // l = argmax over diagonal variables, smallest flat index on ties.
    let mut l = 0;
    let mut best = f64::NEG_INFINITY;
    for p in 0..n {
        let v = pencil[(p, p)];
        if v > best {
            best = v;
            l = p;
        }
    }
    let l_idx = crate::moment::unflatten(l, dims);

    let mut vectors = Vec::with_capacity(dims.len());
    for (j, &nj) in dims.iter().enumerate() {
        let mut v_hat = vec![0.0; nj];
        for (k, slot) in v_hat.iter_mut().enumerate() {
            let mut shifted = l_idx.clone();
            shifted[j] = k;
            let mut flat = 0;
            for (t, &i) in shifted.iter().enumerate() {
                flat = flat * dims[t] + i;
            }
            *slot = pencil[(flat, l)];
        }
        let nrm = norm2(&v_hat);
        if nrm == 0.0 {
            return Ok(ExtractResult {
                vectors: vec![],
                pencil_rank,
                certified: false,
                singular_values,
                zero: true,
            });
        }
        for v in &mut v_hat {
            *v /= nrm;
        }
        vectors.push(v_hat);
    }

    Ok(ExtractResult {
        vectors,
        pencil_rank,
        certified: pencil_rank == 1,
        singular_values,
        zero: false,
    })
}

/// Completes a factor tuple with the eliminated last mode:
/// `v̂_j = F_j(v^1, ..., v^{m-1})`, normalized. `None` flags the zero
/// tensor.
pub fn last_mode_factor(t: &GenTensor, vs: &[Vec<f64>]) -> Result<Option<Vec<f64>>> {
    let m = t.order();
    let mut xs = vs.to_vec();
    xs.push(vec![0.0; t.dims()[m - 1]]);
    let v_hat = t.contract_except(m - 1, &xs)?;
    let nrm = norm2(&v_hat);
    if nrm == 0.0 {
        return Ok(None);
    }
    Ok(Some(v_hat.iter().map(|v| v / nrm).collect()))
}
