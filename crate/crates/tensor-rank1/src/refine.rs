//! Local improvement on (products of) unit spheres and the power-method
//! baselines: Armijo projected-gradient ascent, the symmetric higher-order
//! power method (SHOPM), the alternating higher-order power method (HOPM),
//! and truncated-HOSVD starting points.

use crate::error::{Error, Result};
use crate::linalg::{dot, leading_sym_eigenpair, norm2};
use crate::tensor::{GenTensor, SymTensor};

/// Iteration and line-search parameters shared by the local methods.
#[derive(Debug, Clone)]
pub struct RefineConfig {
    pub max_iters: usize,
    /// Stop when the objective changes by less than this.
    pub tol_obj: f64,
    /// Armijo backtracking factor.
    pub armijo_shrink: f64,
    /// Armijo sufficient-decrease slope.
    pub armijo_slope: f64,
    pub initial_step: f64,
}

impl Default for RefineConfig {
    fn default() -> Self {
        RefineConfig {
            max_iters: 1000,
            tol_obj: 1e-8,
            armijo_shrink: 0.5,
            armijo_slope: 1e-4,
            initial_step: 1.0,
        }
    }
}

/// Result of a local method: the best objective value seen, the point(s)
/// attaining it, iterations used, and whether the method stalled on a zero
/// contraction or gradient.
#[derive(Debug, Clone)]
pub struct RefineOutcome {
    pub value: f64,
    pub points: Vec<Vec<f64>>,
    pub iterations: usize,
    pub stalled: bool,
}

/// Maximization sense for the symmetric objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

impl Sense {
    fn sign(self) -> f64 {
        match self {
            Sense::Max => 1.0,
            Sense::Min => -1.0,
        }
    }
}

fn renormalize(x: &mut [f64]) {
    let n = norm2(x);
    if n > 0.0 {
        for v in x.iter_mut() {
            *v /= n;
        }
    }
}

/// Projected-gradient ascent of `sense * f(x)` over the unit sphere with
/// Armijo backtracking; every iterate is renormalized and the objective is
/// nondecreasing.
pub fn projected_gradient(
    t: &SymTensor,
    x0: &[f64],
    sense: Sense,
    cfg: &RefineConfig,
) -> Result<RefineOutcome> {
    let sgn = sense.sign();
    let mut x = x0.to_vec();
    renormalize(&mut x);
    let mut phi = sgn * t.eval_form(&x)?;
    let mut iterations = 0;
    let mut stalled = false;

    for _ in 0..cfg.max_iters {
        iterations += 1;
        let mut g = t.gradient(&x)?;
        for v in &mut g {
            *v *= sgn;
        }
        let gx = dot(&g, &x);
        let gr: Vec<f64> = g.iter().zip(&x).map(|(gi, xi)| gi - gx * xi).collect();
        let gr_norm2 = dot(&gr, &gr);
        if gr_norm2.sqrt() <= 1e-13 * (1.0 + phi.abs()) {
            stalled = gr_norm2 == 0.0 && phi == 0.0;
            break;
        }
        // Armijo backtracking along the retracted ray.
        let mut step = cfg.initial_step;
        let mut accepted = false;
        for _ in 0..60 {
            let mut trial: Vec<f64> = x.iter().zip(&gr).map(|(xi, gi)| xi + step * gi).collect();
            renormalize(&mut trial);
            let phi_trial = sgn * t.eval_form(&trial)?;
            if phi_trial >= phi + cfg.armijo_slope * step * gr_norm2 {
                let improved = phi_trial - phi;
                x = trial;
                phi = phi_trial;
                accepted = true;
                if improved < cfg.tol_obj {
                    return Ok(RefineOutcome {
                        value: sgn * phi,
                        points: vec![x],
                        iterations,
                        stalled: false,
                    });
                }
                break;
            }
            step *= cfg.armijo_shrink;
        }
        if !accepted {
            break;
        }
    }

    Ok(RefineOutcome {
        value: sgn * phi,
        points: vec![x],
        iterations,
        stalled,
    })
}

/// Projected-gradient ascent of the multilinear form over the product of
/// unit spheres. The starting tuple is oriented so the form value is
/// nonnegative (flipping one factor flips the sign).
pub fn projected_gradient_tuple(
    t: &GenTensor,
    x0s: &[Vec<f64>],
    cfg: &RefineConfig,
) -> Result<RefineOutcome> {
    let m = t.order();
    if x0s.len() != m {
        return Err(Error::Shape("one starting vector per mode".to_string()));
    }
    let mut xs: Vec<Vec<f64>> = x0s.to_vec();
    for x in &mut xs {
        renormalize(x);
    }
    let mut phi = t.eval_multilinear(&xs)?;
    if phi < 0.0 {
        for v in &mut xs[0] {
            *v = -*v;
        }
        phi = -phi;
    }
    let mut iterations = 0;

    for _ in 0..cfg.max_iters {
        iterations += 1;
        // Per-mode Riemannian gradients.
        let mut grs: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut total_norm2 = 0.0;
        for j in 0..m {
            let g = t.contract_except(j, &xs)?;
            let gx = dot(&g, &xs[j]);
            let gr: Vec<f64> = g.iter().zip(&xs[j]).map(|(gi, xi)| gi - gx * xi).collect();
            total_norm2 += dot(&gr, &gr);
            grs.push(gr);
        }
        if total_norm2.sqrt() <= 1e-13 * (1.0 + phi.abs()) {
            break;
        }
        let mut step = cfg.initial_step;
        let mut accepted = false;
        for _ in 0..60 {
            let mut trial = xs.clone();
            for j in 0..m {
                for (xi, gi) in trial[j].iter_mut().zip(&grs[j]) {
                    *xi += step * gi;
                }
                renormalize(&mut trial[j]);
            }
            let phi_trial = t.eval_multilinear(&trial)?;
            if phi_trial >= phi + cfg.armijo_slope * step * total_norm2 {
                let improved = phi_trial - phi;
                xs = trial;
                phi = phi_trial;
                accepted = true;
                if improved < cfg.tol_obj {
                    return Ok(RefineOutcome {
                        value: phi,
                        points: xs,
                        iterations,
                        stalled: false,
                    });
                }
                break;
            }
            step *= cfg.armijo_shrink;
        }
        if !accepted {
            break;
        }
    }

    Ok(RefineOutcome {
        value: phi,
        points: xs,
        iterations,
        stalled: false,
    })
}

/// Symmetric higher-order power method: repeatedly apply the tensor `m-1`
/// times and normalize.
///
/// Odd orders align the sign so the tracked value is nonnegative after the
/// first step; the convexity shift is not used. An even-order run whose
/// absolute value drops hands over to projected gradient from the best
/// point, so the reported sequence stays nondecreasing; an odd-order run
/// that exhausts its iteration budget without settling does the same.
pub fn shopm(t: &SymTensor, x0: &[f64], cfg: &RefineConfig) -> Result<RefineOutcome> {
    let m = t.order();
    let mut x = x0.to_vec();
    renormalize(&mut x);
    let mut mu = t.eval_form(&x)?;
    let mut iterations = 0;
    let mut converged = false;

    for _ in 0..cfg.max_iters {
        iterations += 1;
        let c = t.power_contraction(&x)?;
        let c_norm = norm2(&c);
        if c_norm <= 1e-300 {
            return Ok(RefineOutcome {
                value: mu,
                points: vec![x],
                iterations,
                stalled: true,
            });
        }
        let mut x_next: Vec<f64> = c.iter().map(|v| v / c_norm).collect();
        let mut mu_next = t.eval_form(&x_next)?;
        if m % 2 == 1 && mu_next < 0.0 {
            for v in &mut x_next {
                *v = -*v;
            }
            mu_next = -mu_next;
        }
        if m.is_multiple_of(2) && mu_next.abs() < mu.abs() - 1e-12 {
            // Plain power updates are not monotone on even orders without
            // the convexity shift; switch to projected gradient on the
            // matching sense from the best point so far.
            let sense = if mu >= 0.0 { Sense::Max } else { Sense::Min };
            let mut fallback = projected_gradient(t, &x, sense, cfg)?;
            fallback.iterations += iterations;
            return Ok(fallback);
        }
        let delta = (mu_next - mu).abs();
        x = x_next;
        mu = mu_next;
        if delta < cfg.tol_obj {
            converged = true;
            break;
        }
    }

    if !converged && m % 2 == 1 {
        // The odd iteration cycled without settling; refine the last
        // iterate so the returned point is at least a stationary one.
        let mut fallback = projected_gradient(t, &x, Sense::Max, cfg)?;
        fallback.iterations += iterations;
        return Ok(fallback);
    }

    Ok(RefineOutcome {
        value: mu,
        points: vec![x],
        iterations,
        stalled: false,
    })
}

/// Alternating higher-order power method for dense tensors: each mode is
/// set to its normalized contraction in cyclic order. Every block update
/// maximizes the form over that factor, so the value is nondecreasing.
pub fn hopm(t: &GenTensor, x0s: &[Vec<f64>], cfg: &RefineConfig) -> Result<RefineOutcome> {
    let m = t.order();
    if x0s.len() != m {
        return Err(Error::Shape("one starting vector per mode".to_string()));
    }
    let mut xs: Vec<Vec<f64>> = x0s.to_vec();
    for x in &mut xs {
        renormalize(x);
    }
    let mut mu = t.eval_multilinear(&xs)?;
    let mut iterations = 0;

    for _ in 0..cfg.max_iters {
        iterations += 1;
        for j in 0..m {
            let c = t.contract_except(j, &xs)?;
            let c_norm = norm2(&c);
            if c_norm <= 1e-300 {
                return Ok(RefineOutcome {
                    value: mu,
                    points: xs,
                    iterations,
                    stalled: true,
                });
            }
            xs[j] = c.iter().map(|v| v / c_norm).collect();
        }
        let mu_next = t.eval_multilinear(&xs)?;
        let delta = (mu_next - mu).abs();
        mu = mu_next;
        if delta < cfg.tol_obj {
            break;
        }
    }

    Ok(RefineOutcome {
        value: mu,
        points: xs,
        iterations,
        stalled: false,
    })
}

/// Truncated-HOSVD starting tuple: the leading left singular vector of
/// each mode unfolding, computed from the unfolding's Gram matrix.
pub fn hosvd_init(t: &GenTensor) -> Result<Vec<Vec<f64>>> {
    if t.norm() == 0.0 {
        return Err(Error::Shape("zero tensor has no HOSVD start".to_string()));
    }
    let m = t.order();
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let a = t.mode_unfold(j)?;
        let gram = a.mul(&a.transpose());
        let (_, v) = leading_sym_eigenpair(&gram)?;
        out.push(v);
    }
    Ok(out)
}

/// HOSVD start for a symmetric tensor: the mode-1 vector of its dense
/// expansion.
pub fn hosvd_init_sym(t: &SymTensor) -> Result<Vec<f64>> {
    if t.norm() == 0.0 {
        return Err(Error::Shape("zero tensor has no HOSVD start".to_string()));
    }
    let dense = t.to_dense();
    let a = dense.mode_unfold(0)?;
    let gram = a.mul(&a.transpose());
    let (_, v) = leading_sym_eigenpair(&gram)?;
    Ok(v)
}
