//! Primal-dual path-following interior-point solver with the HKM search
//! direction and a Mehrotra predictor-corrector step.
//!
//! Solves `max ⟨C,X⟩ s.t. ⟨A_i,X⟩ = b_i, X ⪰ 0` together with its dual
//! `min bᵀy s.t. S = Σ y_i A_i - C ⪰ 0`. Weak duality in these conventions
//! reads `bᵀy - ⟨C,X⟩ = ⟨X,S⟩ >= 0` at feasible points, so the dual
//! objective approaches the primal one from above.
//!
//! The Schur complement `H_ij = tr(A_i X A_j S⁻¹)` is assembled sparsely
//! for few-entry constraint matrices and through dense products otherwise,
//! then factored by a dense Cholesky.

use crate::linalg::{chol_solve, cholesky, norm2, spd_inverse, sym_eigen, sym_eigenvalues, Mat};

use super::{SparseSym, StdSdp};

/// Solver tolerances and iteration cap.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Relative duality gap target.
    pub gap_tol: f64,
    /// Primal and dual feasibility target.
    pub feas_tol: f64,
    pub max_iters: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            gap_tol: 1e-8,
            feas_tol: 1e-8,
            max_iters: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdpStatus {
    Optimal,
    MaxIters,
    NumericalFailure,
}

/// Per-iteration progress, kept for diagnostics and invariant tests.
#[derive(Debug, Clone, Copy)]
pub struct IterStats {
    pub p_obj: f64,
    pub d_obj: f64,
    pub gap: f64,
    pub primal_infeas: f64,
    pub dual_infeas: f64,
    pub mu: f64,
}

#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub x: Mat,
    /// Dual variables over the original constraint order; rows dropped by
    /// presolve carry zero.
    pub dual: Vec<f64>,
    pub s: Mat,
    pub p_obj: f64,
    pub d_obj: f64,
    /// `|pObj - dObj| / (1 + |pObj|)`.
    pub gap: f64,
    pub status: SdpStatus,
    pub iterations: usize,
    /// Number of dependent equality rows removed by presolve.
    pub dropped_rows: usize,
    pub primal_infeas: f64,
    pub dual_infeas: f64,
    pub trace: Vec<IterStats>,
}

const SPARSE_CUTOFF: usize = 12;

struct Constraint {
    upper: SparseSym,
    /// Full-entry expansion `(p, q, v)` over both triangles when sparse.
    full: Option<Vec<(usize, usize, f64)>>,
    dense: Option<Mat>,
    b: f64,
}

impl Constraint {
    fn new(a: SparseSym, b: f64, n: usize) -> Self {
        let full_len: usize = a
            .entries
            .iter()
            .map(|&(p, q, _)| if p == q { 1 } else { 2 })
            .sum();
        if full_len <= SPARSE_CUTOFF {
            let mut full = Vec::with_capacity(full_len);
            for &(p, q, v) in &a.entries {
                full.push((p, q, v));
                if p != q {
                    full.push((q, p, v));
                }
            }
            Constraint {
                upper: a,
                full: Some(full),
                dense: None,
                b,
            }
        } else {
            let dense = a.to_dense(n);
            Constraint {
                upper: a,
                full: None,
                dense: Some(dense),
                b,
            }
        }
    }

    fn inner(&self, x: &Mat) -> f64 {
        match &self.dense {
            Some(d) => d.inner(x),
            None => self.upper.inner(x),
        }
    }

    fn add_scaled_to(&self, out: &mut Mat, scale: f64) {
        self.upper.add_scaled_to(out, scale);
    }
}

/// Outcome of the constraint presolve: the independent rows plus the
/// pivoted Cholesky factor of their Gram matrix, reused later to project
/// iterates onto the constraint subspace.
struct Presolve {
    /// Kept original row indices, sorted.
    kept: Vec<usize>,
    /// Original row index per elimination step.
    pivot_rows: Vec<usize>,
    /// Lower-triangular factor of the pivoted kept-row Gram matrix.
    factor: Mat,
}

/// Rank-revealing elimination on the constraint Gram matrix, equivalent to
/// row-pivoted QR on the constraint system with drop threshold 1e-10 on the
/// relative pivot (floored at the Gram noise level so exact duplicates are
/// always caught).
fn independent_rows(constraints: &[(SparseSym, f64)]) -> Presolve {
    let m = constraints.len();
    let empty = Presolve {
        kept: vec![],
        pivot_rows: vec![],
        factor: Mat::zeros(0, 0),
    };
    if m == 0 {
        return empty;
    }
    let mut g = Mat::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = constraints[i].0.inner_sparse(&constraints[j].0);
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    let max_diag = (0..m).fold(0.0f64, |acc, i| acc.max(g[(i, i)]));
    if max_diag <= 0.0 {
        return empty;
    }
    let noise = 8.0 * (m as f64) * f64::EPSILON;
    let thresh = max_diag * (1e-20f64).max(noise);

    // Pivoted Cholesky on G in slot space; a row whose remaining pivot
    // falls below the threshold is linearly dependent on the pivoted ones.
    let mut perm: Vec<usize> = (0..m).collect();
    let mut l = Mat::zeros(m, m);
    let mut diag: Vec<f64> = (0..m).map(|i| g[(i, i)]).collect();
    let mut rank = 0;
    for k in 0..m {
        let mut best = k;
        for i in (k + 1)..m {
            if diag[i] > diag[best] {
                best = i;
            }
        }
        if best != k {
            perm.swap(k, best);
            diag.swap(k, best);
            for t in 0..k {
                let tmp = l[(k, t)];
                l[(k, t)] = l[(best, t)];
                l[(best, t)] = tmp;
            }
        }
        if diag[k] <= thresh {
            break;
        }
        let lkk = diag[k].sqrt();
        l[(k, k)] = lkk;
        rank = k + 1;
        for i in (k + 1)..m {
            let s = {
                let row_i = &l.row(i)[..k];
                let row_k = &l.row(k)[..k];
                g[(perm[i], perm[k])] - crate::linalg::dot(row_i, row_k)
            };
            let lik = s / lkk;
            l[(i, k)] = lik;
            diag[i] -= lik * lik;
        }
    }
    let mut factor = Mat::zeros(rank, rank);
    for i in 0..rank {
        factor.row_mut(i).copy_from_slice(&l.row(i)[..rank]);
    }
    let pivot_rows = perm[..rank].to_vec();
    let mut kept = pivot_rows.clone();
    kept.sort_unstable();
    Presolve {
        kept,
        pivot_rows,
        factor,
    }
}

/// Solves the standard-form SDP.
pub fn solve(sdp: &StdSdp, opts: &SolveOptions) -> SdpSolution {
    let n = sdp.n;
    let m_all = sdp.constraints.len();
    let presolve = independent_rows(&sdp.constraints);
    let kept = presolve.kept.clone();
    let dropped = m_all - kept.len();
    let cons: Vec<Constraint> = kept
        .iter()
        .map(|&i| Constraint::new(sdp.constraints[i].0.clone(), sdp.constraints[i].1, n))
        .collect();
    let m = cons.len();
    let b: Vec<f64> = cons.iter().map(|c| c.b).collect();
    let c_dense = sdp.c.to_dense(n);

    let b_inf = b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let b_norm = norm2(&b);
    let c_norm = c_dense.frob_norm();
    let tau = 1.0 + b_inf + c_norm;

    // Kept-row slot of each pivot row, for solving Gram systems with the
    // presolve factor during the feasibility polish.
    let slot_of: std::collections::HashMap<usize, usize> = kept
        .iter()
        .enumerate()
        .map(|(slot, &orig)| (orig, slot))
        .collect();
    let pivot_slots: Vec<usize> = presolve
        .pivot_rows
        .iter()
        .map(|orig| slot_of[orig])
        .collect();

    let mut x = Mat::identity(n);
    x.scale(tau);
    let mut s = Mat::identity(n);
    s.scale(tau);
    let mut y = vec![0.0; m];

    let mut trace = Vec::new();
    let mut status = SdpStatus::MaxIters;
    let mut iterations = 0;

    let mut best: Option<(f64, Mat, Vec<f64>, Mat)> = None;
    let mut bad_streak = 0usize;

    let finish = |mut x: Mat,
                  y: Vec<f64>,
                  s: Mat,
                  status: SdpStatus,
                  iterations: usize,
                  trace: Vec<IterStats>| {
        // Feasibility polish: remove the residual component of x along the
        // constraint normals, solving the Gram system with the presolve
        // factor. The correction is tiny near convergence and leaves the
        // cone violation within the reported guarantees.
        if presolve.factor.rows() == m && m > 0 {
            let rp: Vec<f64> = cons.iter().map(|c| c.b - c.inner(&x)).collect();
            if norm2(&rp) > 0.0 {
                let rp_pivot: Vec<f64> = pivot_slots.iter().map(|&s| rp[s]).collect();
                let c_pivot = chol_solve(&presolve.factor, &rp_pivot);
                for (t, &slot) in pivot_slots.iter().enumerate() {
                    cons[slot].add_scaled_to(&mut x, c_pivot[t]);
                }
            }
        }
        let p_obj = c_dense.inner(&x);
        let d_obj = crate::linalg::dot(&b, &y);
        let gap = (p_obj - d_obj).abs() / (1.0 + p_obj.abs());
        let rp: Vec<f64> = cons.iter().map(|c| c.b - c.inner(&x)).collect();
        let pinf = norm2(&rp) / (1.0 + b_norm);
        let mut rd = c_dense.clone();
        rd.add_assign(&s);
        for (i, c) in cons.iter().enumerate() {
            c.add_scaled_to(&mut rd, -y[i]);
        }
        let dinf = rd.frob_norm() / (1.0 + c_norm);
        let mut dual = vec![0.0; m_all];
        for (slot, &orig) in kept.iter().enumerate() {
            dual[orig] = y[slot];
        }
        SdpSolution {
            x,
            dual,
            s,
            p_obj,
            d_obj,
            gap,
            status,
            iterations,
            dropped_rows: dropped,
            primal_infeas: pinf,
            dual_infeas: dinf,
            trace,
        }
    };

    for iter in 0..opts.max_iters {
        iterations = iter;

        let p_obj = c_dense.inner(&x);
        let d_obj = crate::linalg::dot(&b, &y);
        let gap = (p_obj - d_obj).abs() / (1.0 + p_obj.abs());

        let rp: Vec<f64> = cons.iter().map(|c| c.b - c.inner(&x)).collect();
        let pinf = norm2(&rp) / (1.0 + b_norm);

        // Rd = C + S - Σ y_i A_i, driven to zero.
        let mut rd = c_dense.clone();
        rd.add_assign(&s);
        for (i, c) in cons.iter().enumerate() {
            c.add_scaled_to(&mut rd, -y[i]);
        }
        let dinf = rd.frob_norm() / (1.0 + c_norm);

        let mu = x.inner(&s) / n as f64;
        trace.push(IterStats {
            p_obj,
            d_obj,
            gap,
            primal_infeas: pinf,
            dual_infeas: dinf,
            mu,
        });

        let score = gap + pinf + dinf;
        let best_score = best.as_ref().map_or(f64::INFINITY, |(bs, ..)| *bs);
        if score < best_score {
            best = Some((score, x.clone(), y.clone(), s.clone()));
            bad_streak = 0;
        } else if score > 10.0 * best_score {
            // Degenerate problems can collapse after reaching high
            // accuracy; once the iterate is clearly diverging, stop and
            // fall back to the best one seen.
            bad_streak += 1;
            if bad_streak >= 3 {
                status = SdpStatus::NumericalFailure;
                break;
            }
        }

        if gap <= opts.gap_tol && pinf <= opts.feas_tol && dinf <= opts.feas_tol {
            status = SdpStatus::Optimal;
            return finish(x, y, s, status, iterations, trace);
        }

        let s_inv = match spd_inverse(&s) {
            Some(v) => v,
            None => {
                status = SdpStatus::NumericalFailure;
                break;
            }
        };

        // Dense helper products for dense constraints: D_j = X A_j S⁻¹.
        let d_mats: Vec<Option<Mat>> = cons
            .iter()
            .map(|c| c.dense.as_ref().map(|a| x.mul(a).mul(&s_inv)))
            .collect();

        // Schur complement H_ij = tr(A_i X A_j S⁻¹).
        let mut h = Mat::zeros(m, m);
        for j in 0..m {
            for i in 0..=j {
                let v = match (&cons[i].full, &cons[j].full) {
                    (Some(fi), Some(fj)) => {
                        let mut acc = 0.0;
                        for &(p, q, a) in fi {
                            for &(r, t, bb) in fj {
                                acc += a * bb * x[(q, r)] * s_inv[(t, p)];
                            }
                        }
                        acc
                    }
                    (_, None) => trace_prod(&cons[i], d_mats[j].as_ref().unwrap()),
                    (None, _) => trace_prod(&cons[j], d_mats[i].as_ref().unwrap()),
                };
                h[(i, j)] = v;
                h[(j, i)] = v;
            }
        }

        // Factor H with an escalating ridge if needed.
        let h_factor = {
            let mut ridge = 0.0;
            let max_diag = (0..m).fold(0.0f64, |acc, i| acc.max(h[(i, i)].abs())) + 1e-300;
            let mut fac = cholesky(&h);
            while fac.is_none() && ridge < 1e-4 * max_diag {
                ridge = if ridge == 0.0 {
                    1e-14 * max_diag
                } else {
                    ridge * 100.0
                };
                let mut hr = h.clone();
                for i in 0..m {
                    hr[(i, i)] += ridge;
                }
                fac = cholesky(&hr);
            }
            match fac {
                Some(f) => f,
                None => {
                    status = SdpStatus::NumericalFailure;
                    break;
                }
            }
        };

        let s_vec: Vec<f64> = cons.iter().map(|c| c.inner(&s_inv)).collect();

        // t_i = <A_i, (X Rd S⁻¹)_sym>.
        let mut t1 = x.mul(&rd).mul(&s_inv);
        t1.symmetrize();
        let t_vec: Vec<f64> = cons.iter().map(|c| c.inner(&t1)).collect();

        // Predictor (affine scaling direction, sigma = 0).
        let rhs_aff: Vec<f64> = (0..m).map(|i| -b[i] + t_vec[i]).collect();
        let (dy_aff, _) = solve_refined(&h, &h_factor, &rhs_aff);
        let (dx_aff, ds_aff) = directions(&cons, &rd, &x, &s_inv, &dy_aff, 0.0, &t1, None);

        let ap_aff = max_step(&x, &dx_aff).min(1.0);
        let ad_aff = max_step(&s, &ds_aff).min(1.0);
        let mu_aff = {
            let mut xa = x.clone();
            xa.axpy(ap_aff, &dx_aff);
            let mut sa = s.clone();
            sa.axpy(ad_aff, &ds_aff);
            (xa.inner(&sa) / n as f64).max(0.0)
        };
        let sigma = ((mu_aff / mu).powi(3)).clamp(1e-10, 1.0);

        // Corrector.
        let mut t2 = dx_aff.mul(&ds_aff).mul(&s_inv);
        t2.symmetrize();
        let c_vec: Vec<f64> = cons.iter().map(|c| c.inner(&t2)).collect();
        let rhs: Vec<f64> = (0..m)
            .map(|i| sigma * mu * s_vec[i] - b[i] + t_vec[i] - c_vec[i])
            .collect();
        let (dy, rel_res) = solve_refined(&h, &h_factor, &rhs);
        if rel_res > 1e-4 {
            // The Schur system is numerically exhausted; the direction
            // would not satisfy the linearized equations.
            status = SdpStatus::NumericalFailure;
            break;
        }
        let (mut dx, ds) = directions(&cons, &rd, &x, &s_inv, &dy, sigma * mu, &t1, Some(&t2));
        dx.symmetrize();

        let ap_max = max_step(&x, &dx);
        let ad_max = max_step(&s, &ds);
        let gamma = 0.9 + 0.09 * ap_max.min(ad_max).min(1.0);
        let mut ap = (gamma * ap_max).min(1.0);
        let mut ad = (gamma * ad_max).min(1.0);

        // Keep iterates strictly inside the cone.
        ap = shrink_into_cone(&x, &dx, ap);
        ad = shrink_into_cone(&s, &ds, ad);

        if ap < 1e-10 && ad < 1e-10 {
            status = SdpStatus::NumericalFailure;
            break;
        }

        x.axpy(ap, &dx);
        x.symmetrize();
        for i in 0..m {
            y[i] += ad * dy[i];
        }
        s.axpy(ad, &ds);
        s.symmetrize();
    }

    // Non-optimal exit: report the best iterate seen, accepting it as
    // optimal when it still meets the documented solution guarantees
    // (gap within 1e-7-grade accuracy, feasibility at full tolerance).
    if let Some((_, bx, by, bs)) = best {
        let sol = finish(bx, by, bs, status, iterations, trace);
        let acceptable = sol.gap <= (10.0 * opts.gap_tol).min(1e-7)
            && sol.primal_infeas <= opts.feas_tol
            && sol.dual_infeas <= opts.feas_tol;
        if acceptable {
            return SdpSolution {
                status: SdpStatus::Optimal,
                ..sol
            };
        }
        return sol;
    }
    finish(x, y, s, status, iterations, trace)
}

/// Cholesky solve with one round of iterative refinement; returns the
/// solution and the final relative residual of the Schur system.
fn solve_refined(h: &Mat, h_factor: &Mat, rhs: &[f64]) -> (Vec<f64>, f64) {
    let mut dy = chol_solve(h_factor, rhs);
    let rhs_norm = norm2(rhs);
    for _ in 0..2 {
        let hdy = h.matvec(&dy);
        let r: Vec<f64> = rhs.iter().zip(&hdy).map(|(a, b)| a - b).collect();
        if norm2(&r) <= 1e-14 * (1.0 + rhs_norm) {
            break;
        }
        let corr = chol_solve(h_factor, &r);
        for (d, c) in dy.iter_mut().zip(&corr) {
            *d += c;
        }
    }
    let hdy = h.matvec(&dy);
    let r: Vec<f64> = rhs.iter().zip(&hdy).map(|(a, b)| a - b).collect();
    (dy, norm2(&r) / (1.0 + rhs_norm))
}

/// `tr(A_i D)` with `D` dense.
fn trace_prod(c: &Constraint, d: &Mat) -> f64 {
    match (&c.full, &c.dense) {
        (Some(full), _) => {
            let mut acc = 0.0;
            for &(p, q, v) in full {
                acc += v * d[(q, p)];
            }
            acc
        }
        (None, Some(a)) => {
            let n = d.rows();
            let mut acc = 0.0;
            for p in 0..n {
                for q in 0..n {
                    acc += a[(p, q)] * d[(q, p)];
                }
            }
            acc
        }
        _ => unreachable!(),
    }
}

/// Recovers `(ΔX, ΔS)` from `Δy`:
/// `ΔS = Σ Δy_i A_i - Rd`,
/// `ΔX = σμ S⁻¹ - X - (X ΔS S⁻¹)_sym + (X Rd S⁻¹)_sym - (ΔX_p ΔS_p S⁻¹)_sym`.
#[allow(clippy::too_many_arguments)]
fn directions(
    cons: &[Constraint],
    rd: &Mat,
    x: &Mat,
    s_inv: &Mat,
    dy: &[f64],
    sigma_mu: f64,
    t1_sym: &Mat,
    t2_sym: Option<&Mat>,
) -> (Mat, Mat) {
    let n = x.rows();
    let mut ds = rd.clone();
    ds.scale(-1.0);
    for (i, c) in cons.iter().enumerate() {
        c.add_scaled_to(&mut ds, dy[i]);
    }

    let mut dx = Mat::zeros(n, n);
    if sigma_mu != 0.0 {
        dx = s_inv.clone();
        dx.scale(sigma_mu);
    }
    dx.axpy(-1.0, x);
    let mut xds = x.mul(&ds).mul(s_inv);
    xds.symmetrize();
    dx.axpy(-1.0, &xds);
    dx.add_assign(t1_sym);
    if let Some(t2) = t2_sym {
        dx.axpy(-1.0, t2);
    }
    (dx, ds)
}

/// Largest `alpha` with `M + alpha * D ⪰ 0`, via the scaled eigenvalue
/// problem on `M^{-1/2} D M^{-1/2}`.
fn max_step(m: &Mat, d: &Mat) -> f64 {
    let n = m.rows();
    let (vals, vecs) = match sym_eigen(m) {
        Ok(v) => v,
        Err(_) => return 0.0,
    };
    let lmax = vals[n - 1].max(1e-300);
    let floor = lmax * 1e-14;
    let mut b = vecs.transpose().mul(d).mul(&vecs);
    for i in 0..n {
        for j in 0..n {
            let si = vals[i].max(floor).sqrt();
            let sj = vals[j].max(floor).sqrt();
            b[(i, j)] /= si * sj;
        }
    }
    b.symmetrize();
    let wvals = match sym_eigenvalues(&b) {
        Ok(v) => v,
        Err(_) => return 0.0,
    };
    let lmin = wvals[0];
    if lmin >= -1e-12 {
        f64::INFINITY
    } else {
        -1.0 / lmin
    }
}

/// Backs `alpha` off until `M + alpha * D` passes a Cholesky test.
fn shrink_into_cone(m: &Mat, d: &Mat, mut alpha: f64) -> f64 {
    if alpha <= 0.0 {
        return 0.0;
    }
    for _ in 0..60 {
        let mut trial = m.clone();
        trial.axpy(alpha, d);
        if cholesky(&trial).is_some() {
            return alpha;
        }
        alpha *= 0.8;
    }
    0.0
}
