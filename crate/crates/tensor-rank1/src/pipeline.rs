//! End-to-end rank-1 approximation: relax, solve, extract, refine, certify,
//! and report. Covers even symmetric, odd symmetric and nonsymmetric
//! tensors, plus power-method baselines for comparison runs.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extract::{extract_nonsym, extract_sym, last_mode_factor, unlift_odd, ExtractResult};
use crate::moment::{nonsym_relaxation, odd_relaxation, squared_form, sym_relaxation, MomentSdp};
use crate::refine::{
    hopm, hosvd_init, hosvd_init_sym, projected_gradient, projected_gradient_tuple, shopm,
    RefineConfig, Sense,
};
use crate::sdp::{back_map, certify_bounds, solve, to_std, SdpSolution, SdpStatus, SolveOptions};
use crate::tensor::{GenTensor, Rank1Tensor, SymTensor, Tensor};

/// Options for a full approximation run.
#[derive(Debug, Clone, Default)]
pub struct ApproxConfig {
    pub sdp: SolveOptions,
    pub refine: RefineConfig,
}

/// Which algorithm produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "sdp+refine")]
    SdpRefine,
    #[serde(rename = "shopm")]
    Shopm,
    #[serde(rename = "hopm")]
    Hopm,
}

/// Solve statistics carried in a report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverStats {
    pub iterations: usize,
    pub gap: f64,
    pub seconds: f64,
}

/// The outcome of a rank-1 approximation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rank1Report {
    pub lambda: f64,
    /// Unit factors of the rank-1 approximation; empty when the best
    /// approximation is the zero tensor.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub factors: Vec<Vec<f64>>,
    pub residual: f64,
    /// Certified upper bound on `|lambda|`; absent when the SDP could not
    /// be solved and only local refinement ran.
    pub ubd: Option<f64>,
    /// `||lambda| - ubd| / max(1, ubd)`.
    pub aprxerr: Option<f64>,
    pub rho: f64,
    pub certified: bool,
    pub pencil_rank: usize,
    pub method: Method,
    pub solver: SolverStats,
}

impl Rank1Report {
    /// The rank-1 tensor this report describes.
    pub fn rank1(&self) -> Result<Rank1Tensor> {
        if self.factors.is_empty() {
            return Ok(Rank1Tensor::zero());
        }
        Rank1Tensor::new(self.lambda, self.factors.clone())
    }
}

fn aprxerr_of(lambda: f64, ubd: f64) -> f64 {
    (lambda.abs() - ubd).abs() / ubd.max(1.0)
}

#[allow(clippy::too_many_arguments)]
fn report_fields(
    t: &Tensor,
    lambda: f64,
    factors: Vec<Vec<f64>>,
    ubd: Option<f64>,
    certified: bool,
    pencil_rank: usize,
    method: Method,
    solver: SolverStats,
) -> Result<Rank1Report> {
    let r = if factors.is_empty() {
        Rank1Tensor::zero()
    } else {
        Rank1Tensor::new(lambda, factors.clone())?
    };
    let residual = t.residual(&r)?;
    let norm = t.norm();
    let rho = if norm > 0.0 { lambda.abs() / norm } else { 0.0 };
    Ok(Rank1Report {
        lambda,
        factors,
        residual,
        ubd,
        aprxerr: ubd.map(|u| aprxerr_of(lambda, u)),
        rho,
        certified,
        pencil_rank,
        method,
        solver,
    })
}

/// Report for an exactly-zero tensor or a pipeline zero flag.
fn zero_report(t: &Tensor, ubd: Option<f64>, method: Method, solver: SolverStats) -> Rank1Report {
    let norm = t.norm();
    Rank1Report {
        lambda: 0.0,
        factors: vec![],
        residual: norm,
        ubd,
        aprxerr: ubd.map(|u| aprxerr_of(0.0, u)),
        rho: 0.0,
        certified: norm == 0.0,
        pencil_rank: 0,
        method,
        solver,
    }
}

const NONZERO_COORD: f64 = 1e-7;

fn first_significant(v: &[f64]) -> Option<usize> {
    v.iter().position(|x| x.abs() > NONZERO_COORD)
}

/// Sign policy for even symmetric outputs: the factor's first nonzero
/// coordinate is made nonnegative; `lambda` is unaffected because the form
/// has even degree.
fn normalize_sign_even(u: &mut [f64]) {
    if let Some(k) = first_significant(u) {
        if u[k] < 0.0 {
            for v in u.iter_mut() {
                *v = -*v;
            }
        }
    }
}

/// Sign policy for odd symmetric outputs: keep `lambda >= 0`, flipping the
/// factor if needed.
fn normalize_sign_odd(lambda: &mut f64, u: &mut [f64]) {
    if *lambda < 0.0 {
        *lambda = -*lambda;
        for v in u.iter_mut() {
            *v = -*v;
        }
    }
}

/// Sign policy for nonsymmetric outputs: every factor's first nonzero
/// coordinate is made nonnegative and `lambda` absorbs the flips.
fn normalize_sign_tuple(lambda: &mut f64, us: &mut [Vec<f64>]) {
    for u in us.iter_mut() {
        if let Some(k) = first_significant(u) {
            if u[k] < 0.0 {
                for v in u.iter_mut() {
                    *v = -*v;
                }
                *lambda = -*lambda;
            }
        }
    }
}

fn polish_config(base: &RefineConfig, rank_is_one: bool) -> RefineConfig {
    if rank_is_one {
        RefineConfig {
            tol_obj: 1e-12,
            ..base.clone()
        }
    } else {
        base.clone()
    }
}

fn solve_ok(sol: &SdpSolution) -> bool {
    sol.status == SdpStatus::Optimal
}

struct SolvedBranch {
    sol: SdpSolution,
    extraction: ExtractResult,
    bound: f64,
}

fn solve_and_extract_sym(
    rel: &MomentSdp,
    n: usize,
    d: usize,
    opts: &SolveOptions,
) -> Result<Option<SolvedBranch>> {
    let std_form = to_std(rel);
    let sol = solve(&std_form, opts);
    if !solve_ok(&sol) {
        return Ok(None);
    }
    let y = back_map(rel, &sol.x);
    let extraction = extract_sym(&y, n, d)?;
    let bound = certify_bounds(&sol, rel)?;
    Ok(Some(SolvedBranch {
        sol,
        extraction,
        bound,
    }))
}

/// Rank-1 approximation of an even symmetric tensor: solve the max and min
/// relaxations, extract candidates, refine, keep the branch with the larger
/// absolute value (max branch on exact ties). Certification requires rank-1
/// pencils on both branches.
pub fn approx_sym_even(t: &SymTensor, cfg: &ApproxConfig) -> Result<Rank1Report> {
    let started = Instant::now();
    let m = t.order();
    if !m.is_multiple_of(2) {
        return Err(Error::Parity(
            "approx_sym_even needs an even order".to_string(),
        ));
    }
    let wrapped = Tensor::Sym(t.clone());
    if t.norm() == 0.0 {
        return Ok(zero_report(
            &wrapped,
            Some(0.0),
            Method::SdpRefine,
            SolverStats {
                iterations: 0,
                gap: 0.0,
                seconds: started.elapsed().as_secs_f64(),
            },
        ));
    }
    let n = t.dim();
    let d = m / 2;

    let rel_max = sym_relaxation(t, true)?;
    let rel_min = sym_relaxation(t, false)?;
    let max_branch = solve_and_extract_sym(&rel_max, n, d, &cfg.sdp)?;
    let min_branch = solve_and_extract_sym(&rel_min, n, d, &cfg.sdp)?;

    let (max_branch, min_branch) = match (max_branch, min_branch) {
        (Some(a), Some(b)) => (a, b),
        _ => return fallback_sym(t, cfg, started),
    };

    let refine_branch = |branch: &SolvedBranch, sense: Sense| -> Result<(f64, Vec<f64>)> {
        let start = if branch.extraction.zero {
            hosvd_init_sym(t)?
        } else {
            branch.extraction.vectors[0].clone()
        };
        let out = projected_gradient(
            t,
            &start,
            sense,
            &polish_config(&cfg.refine, branch.extraction.certified),
        )?;
        Ok((out.value, out.points.into_iter().next().unwrap()))
    };

    let (lam_plus, u_plus) = refine_branch(&max_branch, Sense::Max)?;
    let (lam_minus, u_minus) = refine_branch(&min_branch, Sense::Min)?;

    let ubd = max_branch.bound.max(min_branch.bound);
    let certified =
        max_branch.extraction.pencil_rank == 1 && min_branch.extraction.pencil_rank == 1;

    let (lambda, mut u, pencil_rank) = if lam_plus.abs() >= lam_minus.abs() {
        (lam_plus, u_plus, max_branch.extraction.pencil_rank)
    } else {
        (lam_minus, u_minus, min_branch.extraction.pencil_rank)
    };
    normalize_sign_even(&mut u);

    let solver = SolverStats {
        iterations: max_branch.sol.iterations + min_branch.sol.iterations,
        gap: max_branch.sol.gap.max(min_branch.sol.gap),
        seconds: started.elapsed().as_secs_f64(),
    };
    report_fields(
        &wrapped,
        lambda,
        vec![u; m],
        Some(ubd),
        certified,
        pencil_rank,
        Method::SdpRefine,
        solver,
    )
}

/// Rank-1 approximation of an odd symmetric tensor: lift by one variable,
/// solve the even relaxation, extract and unlift, then refine. The bound is
/// the lift rescaling constant times the relaxation optimum.
pub fn approx_sym_odd(t: &SymTensor, cfg: &ApproxConfig) -> Result<Rank1Report> {
    let started = Instant::now();
    let m = t.order();
    if m.is_multiple_of(2) {
        return Err(Error::Parity(
            "approx_sym_odd needs an odd order".to_string(),
        ));
    }
    let wrapped = Tensor::Sym(t.clone());
    if t.norm() == 0.0 {
        return Ok(zero_report(
            &wrapped,
            Some(0.0),
            Method::SdpRefine,
            SolverStats {
                iterations: 0,
                gap: 0.0,
                seconds: started.elapsed().as_secs_f64(),
            },
        ));
    }
    let n = t.dim();
    let d = m.div_ceil(2);

    let (rel, _lift) = odd_relaxation(t)?;
    let branch = match solve_and_extract_sym(&rel, n + 1, d, &cfg.sdp)? {
        Some(b) => b,
        None => return fallback_sym(t, cfg, started),
    };
    let solver = SolverStats {
        iterations: branch.sol.iterations,
        gap: branch.sol.gap,
        seconds: 0.0,
    };

    if branch.extraction.zero {
        let mut rep = zero_report(&wrapped, Some(branch.bound), Method::SdpRefine, solver);
        rep.pencil_rank = branch.extraction.pencil_rank;
        rep.solver.seconds = started.elapsed().as_secs_f64();
        return Ok(rep);
    }
    let v_plus = &branch.extraction.vectors[0];
    let u0 = match unlift_odd(v_plus) {
        Some(u) => u,
        None => {
            let mut rep = zero_report(&wrapped, Some(branch.bound), Method::SdpRefine, solver);
            rep.pencil_rank = branch.extraction.pencil_rank;
            rep.solver.seconds = started.elapsed().as_secs_f64();
            return Ok(rep);
        }
    };

    let out = projected_gradient(
        t,
        &u0,
        Sense::Max,
        &polish_config(&cfg.refine, branch.extraction.certified),
    )?;
    let mut lambda = out.value;
    let mut u = out.points.into_iter().next().unwrap();
    normalize_sign_odd(&mut lambda, &mut u);

    let solver = SolverStats {
        iterations: branch.sol.iterations,
        gap: branch.sol.gap,
        seconds: started.elapsed().as_secs_f64(),
    };
    report_fields(
        &wrapped,
        lambda,
        vec![u; m],
        Some(branch.bound),
        branch.extraction.certified,
        branch.extraction.pencil_rank,
        Method::SdpRefine,
        solver,
    )
}

/// Rank-1 approximation of a dense nonsymmetric tensor: eliminate the
/// largest mode through the squared-slice form, solve the pair relaxation,
/// extract the leading modes, rebuild the last factor, and refine over the
/// product of spheres.
pub fn approx_nonsym(t: &GenTensor, cfg: &ApproxConfig) -> Result<Rank1Report> {
    let started = Instant::now();
    let m = t.order();
    if m < 2 {
        return Err(Error::Shape(
            "nonsymmetric pipeline needs at least two modes".to_string(),
        ));
    }
    let wrapped = Tensor::Gen(t.clone());
    if t.norm() == 0.0 {
        return Ok(zero_report(
            &wrapped,
            Some(0.0),
            Method::SdpRefine,
            SolverStats {
                iterations: 0,
                gap: 0.0,
                seconds: started.elapsed().as_secs_f64(),
            },
        ));
    }

    // Eliminate the largest mode: swap it to the back (latest mode among
    // the maxima so an already-last maximum stays put).
    let dims = t.dims().to_vec();
    let mut j_star = 0;
    for (j, &nj) in dims.iter().enumerate() {
        if nj >= dims[j_star] {
            j_star = j;
        }
    }
    let tp = t.swap_modes(j_star, m - 1);

    let (ghat, lead) = squared_form(&tp)?;
    let rel = nonsym_relaxation(&ghat, &lead)?;
    let std_form = to_std(&rel);
    let sol = solve(&std_form, &cfg.sdp);
    if !solve_ok(&sol) {
        return fallback_nonsym(t, cfg, started);
    }
    let bound = certify_bounds(&sol, &rel)?;
    let w = back_map(&rel, &sol.x);
    let extraction = extract_nonsym(&w, &lead)?;
    let solver = SolverStats {
        iterations: sol.iterations,
        gap: sol.gap,
        seconds: 0.0,
    };

    if extraction.zero {
        let mut rep = zero_report(&wrapped, Some(bound), Method::SdpRefine, solver);
        rep.pencil_rank = extraction.pencil_rank;
        rep.solver.seconds = started.elapsed().as_secs_f64();
        return Ok(rep);
    }

    let mut tuple = extraction.vectors.clone();
    match last_mode_factor(&tp, &tuple)? {
        Some(v) => tuple.push(v),
        None => {
            let mut rep = zero_report(&wrapped, Some(bound), Method::SdpRefine, solver);
            rep.pencil_rank = extraction.pencil_rank;
            rep.solver.seconds = started.elapsed().as_secs_f64();
            return Ok(rep);
        }
    }

    let out = projected_gradient_tuple(
        &tp,
        &tuple,
        &polish_config(&cfg.refine, extraction.certified),
    )?;
    let mut lambda = out.value;
    let mut factors = out.points;
    factors.swap(j_star, m - 1);
    normalize_sign_tuple(&mut lambda, &mut factors);

    let solver = SolverStats {
        iterations: sol.iterations,
        gap: sol.gap,
        seconds: started.elapsed().as_secs_f64(),
    };
    report_fields(
        &wrapped,
        lambda,
        factors,
        Some(bound),
        extraction.certified,
        extraction.pencil_rank,
        Method::SdpRefine,
        solver,
    )
}

/// Dispatches on the stored tensor kind and order parity. Order 1 returns
/// the vector itself; order 2 runs through the regular pipelines.
pub fn approx_auto(t: &Tensor, cfg: &ApproxConfig) -> Result<Rank1Report> {
    match t {
        Tensor::Sym(s) => {
            if s.order() == 1 {
                let v: Vec<f64> = (0..s.dim()).map(|i| s.get(&[i])).collect();
                return vector_report(t, v);
            }
            if s.order() % 2 == 0 {
                approx_sym_even(s, cfg)
            } else {
                approx_sym_odd(s, cfg)
            }
        }
        Tensor::Gen(g) => {
            if g.order() == 1 {
                let v = g.data().to_vec();
                return vector_report(t, v);
            }
            approx_nonsym(g, cfg)
        }
    }
}

fn vector_report(t: &Tensor, v: Vec<f64>) -> Result<Rank1Report> {
    let lambda = crate::linalg::norm2(&v);
    if lambda == 0.0 {
        return Ok(zero_report(
            t,
            Some(0.0),
            Method::SdpRefine,
            SolverStats {
                iterations: 0,
                gap: 0.0,
                seconds: 0.0,
            },
        ));
    }
    let u: Vec<f64> = v.iter().map(|x| x / lambda).collect();
    report_fields(
        t,
        lambda,
        vec![u],
        Some(lambda),
        true,
        1,
        Method::SdpRefine,
        SolverStats {
            iterations: 0,
            gap: 0.0,
            seconds: 0.0,
        },
    )
}

fn fallback_sym(t: &SymTensor, cfg: &ApproxConfig, started: Instant) -> Result<Rank1Report> {
    let wrapped = Tensor::Sym(t.clone());
    let start = hosvd_init_sym(t)?;
    let up = projected_gradient(t, &start, Sense::Max, &cfg.refine)?;
    let down = projected_gradient(t, &start, Sense::Min, &cfg.refine)?;
    let (mut lambda, mut u, iters) = if up.value.abs() >= down.value.abs() {
        (
            up.value,
            up.points.into_iter().next().unwrap(),
            up.iterations,
        )
    } else {
        (
            down.value,
            down.points.into_iter().next().unwrap(),
            down.iterations,
        )
    };
    if t.order() % 2 == 1 {
        normalize_sign_odd(&mut lambda, &mut u);
    } else {
        normalize_sign_even(&mut u);
    }
    report_fields(
        &wrapped,
        lambda,
        vec![u; t.order()],
        None,
        false,
        0,
        Method::SdpRefine,
        SolverStats {
            iterations: iters,
            gap: f64::NAN,
            seconds: started.elapsed().as_secs_f64(),
        },
    )
}

fn fallback_nonsym(t: &GenTensor, cfg: &ApproxConfig, started: Instant) -> Result<Rank1Report> {
    let wrapped = Tensor::Gen(t.clone());
    let starts = hosvd_init(t)?;
    let out = projected_gradient_tuple(t, &starts, &cfg.refine)?;
    let mut lambda = out.value;
    let mut factors = out.points;
    normalize_sign_tuple(&mut lambda, &mut factors);
    report_fields(
        &wrapped,
        lambda,
        factors,
        None,
        false,
        0,
        Method::SdpRefine,
        SolverStats {
            iterations: out.iterations,
            gap: f64::NAN,
            seconds: started.elapsed().as_secs_f64(),
        },
    )
}

/// Power-method baseline from a truncated-HOSVD start: SHOPM for symmetric
/// input, HOPM otherwise.
pub fn baseline_report(t: &Tensor, cfg: &ApproxConfig) -> Result<Rank1Report> {
    let method = if t.is_symmetric_kind() {
        Method::Shopm
    } else {
        Method::Hopm
    };
    if t.norm() == 0.0 {
        return Ok(zero_report(
            t,
            None,
            method,
            SolverStats {
                iterations: 0,
                gap: 0.0,
                seconds: 0.0,
            },
        ));
    }
    let started = Instant::now();
    match t {
        Tensor::Sym(s) => {
            let x0 = hosvd_init_sym(s)?;
            let out = shopm(s, &x0, &cfg.refine)?;
            let mut lambda = out.value;
            let mut u = out.points.into_iter().next().unwrap();
            if s.order() % 2 == 1 {
                normalize_sign_odd(&mut lambda, &mut u);
            } else {
                normalize_sign_even(&mut u);
            }
            report_fields(
                t,
                lambda,
                vec![u; s.order()],
                None,
                false,
                0,
                Method::Shopm,
                SolverStats {
                    iterations: out.iterations,
                    gap: f64::NAN,
                    seconds: started.elapsed().as_secs_f64(),
                },
            )
        }
        Tensor::Gen(g) => {
            let x0s = hosvd_init(g)?;
            let out = hopm(g, &x0s, &cfg.refine)?;
            let mut lambda = out.value;
            let mut factors = out.points;
            normalize_sign_tuple(&mut lambda, &mut factors);
            report_fields(
                t,
                lambda,
                factors,
                None,
                false,
                0,
                Method::Hopm,
                SolverStats {
                    iterations: out.iterations,
                    gap: f64::NAN,
                    seconds: started.elapsed().as_secs_f64(),
                },
            )
        }
    }
}

/// Runs the relaxation pipeline next to the matching power-method baseline
/// from a truncated-HOSVD start, so their residuals can be compared.
pub fn compare_methods(t: &Tensor, cfg: &ApproxConfig) -> Result<Vec<Rank1Report>> {
    Ok(vec![approx_auto(t, cfg)?, baseline_report(t, cfg)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::next_sorted_index;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn rank1_sym(u: &[f64], lambda: f64, m: usize) -> SymTensor {
        let n = u.len();
        let mut t = SymTensor::new(n, m);
        let mut idx = vec![0usize; m];
        loop {
            let mut v = lambda;
            for &i in &idx {
                v *= u[i];
            }
            t.set(&idx, v).unwrap();
            if !next_sorted_index(&mut idx, n) {
                break;
            }
        }
        t
    }

    #[test]
    fn recovers_exact_rank1_quartic() {
        let u = vec![0.6, 0.0, 0.8];
        let t = rank1_sym(&u, 5.0, 4);
        let rep = approx_sym_even(&t, &ApproxConfig::default()).unwrap();
        assert!(close(rep.lambda, 5.0, 1e-6));
        assert!(rep.residual < 1e-5);
        // The winning max branch is rank one and its bound is tight. The
        // min branch of this degenerate input (f vanishes on a circle) need
        // not have a rank-one pencil, so `certified` is not asserted.
        assert_eq!(rep.pencil_rank, 1);
        assert!(rep.aprxerr.unwrap() < 1e-6);
        assert!(close(rep.rho, 1.0, 1e-8));
    }

    #[test]
    fn vector_case() {
        let mut g = GenTensor::zeros(&[2]);
        g.set(&[0], 3.0).unwrap();
        g.set(&[1], 4.0).unwrap();
        let rep = approx_auto(&Tensor::Gen(g), &ApproxConfig::default()).unwrap();
        assert!(close(rep.lambda, 5.0, 1e-14));
        assert!(close(rep.factors[0][0], 0.6, 1e-14));
        assert!(close(rep.factors[0][1], 0.8, 1e-14));
        assert!(close(rep.residual, 0.0, 1e-12));
    }

    #[test]
    fn symmetric_matrix_eigenpair() {
        // diag(2, -3): best rank-1 is -3 e2 e2ᵀ.
        let mut t = SymTensor::new(2, 2);
        t.set(&[0, 0], 2.0).unwrap();
        t.set(&[1, 1], -3.0).unwrap();
        let rep = approx_auto(&Tensor::Sym(t), &ApproxConfig::default()).unwrap();
        assert!(close(rep.lambda, -3.0, 1e-6));
        assert!(close(rep.factors[0][1].abs(), 1.0, 1e-6));
        assert!(rep.certified);
    }

    #[test]
    fn zero_tensor_reports_zero() {
        let t = SymTensor::new(3, 3);
        let rep = approx_auto(&Tensor::Sym(t), &ApproxConfig::default()).unwrap();
        assert_eq!(rep.lambda, 0.0);
        assert!(rep.factors.is_empty());
        assert_eq!(rep.residual, 0.0);
        assert!(rep.certified);
    }

    #[test]
    fn report_identities_hold() {
        let u = vec![0.8, -0.6];
        let mut t = rank1_sym(&u, 2.0, 3);
        t.set(&[0, 0, 1], 1.3).unwrap();
        let rep = approx_sym_odd(&t, &ApproxConfig::default()).unwrap();
        // Pythagoras.
        let norm2 = t.norm() * t.norm();
        let lhs = rep.residual * rep.residual + rep.lambda * rep.lambda;
        assert!(close(lhs, norm2, 1e-6 * norm2));
        // Upper-bound sandwich.
        let ubd = rep.ubd.unwrap();
        assert!(rep.lambda.abs() <= ubd + 1e-6 * (1.0 + ubd));
        // Sign policy: odd symmetric keeps lambda nonnegative.
        assert!(rep.lambda >= 0.0);
        // rho consistency.
        assert!(close(rep.rho, rep.lambda.abs() / t.norm(), 1e-12));
    }
}
