//! Acceptance suite: one test per published-value criterion, each printing
//! a PASS line with the measured quantities (run with `--nocapture` to see
//! them). The final group checks the always-required property suite:
//! exact-moment extraction, the Pythagorean residual identity, solver
//! quality on every worked instance, grid-search bound dominance, gradient
//! correctness, and report equivariances.

mod common;

use tensor_rank1::extract::{extract_nonsym, extract_sym};
use tensor_rank1::linalg::norm2;
use tensor_rank1::moment::{
    moment_vector, nonsym_relaxation, odd_relaxation, pair_moment_vector, squared_form,
    sym_relaxation, MomentSdp,
};
use tensor_rank1::pipeline::{approx_auto, baseline_report, compare_methods, ApproxConfig};
use tensor_rank1::rng::Rng;
use tensor_rank1::sdp::{back_map, solve, to_std, SdpSolution, SdpStatus};
use tensor_rank1::tensor::{families, Rank1Tensor, SymTensor, Tensor};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn pass(criterion: &str, detail: String) {
    println!("acceptance {criterion}: PASS - {detail}");
}

fn solve_relaxation(rel: &MomentSdp) -> SdpSolution {
    solve(&to_std(rel), &Default::default())
}

/// Checks a factor against a reference up to overall sign, coordinatewise.
fn matches_up_to_sign(got: &[f64], want: &[f64], tol: f64) -> bool {
    let dir = |s: f64| got.iter().zip(want).all(|(g, w)| (s * g - w).abs() <= tol);
    dir(1.0) || dir(-1.0)
}

#[test]
fn criterion_01_cubic_dim2_pipeline() {
    let t = common::cubic_dim2();
    let rep = approx_auto(&Tensor::Sym(t), &ApproxConfig::default()).unwrap();
    assert!(close(rep.lambda, 3.1155, 2e-3), "lambda {}", rep.lambda);
    assert!(close(rep.rho, 0.6203, 1e-3), "rho {}", rep.rho);
    assert!(
        close(rep.residual, 3.9399, 2e-3),
        "residual {}",
        rep.residual
    );
    assert!(rep.certified, "expected a certified run");
    pass(
        "01",
        format!(
            "lambda={:.4} rho={:.4} residual={:.4} certified={}",
            rep.lambda, rep.rho, rep.residual, rep.certified
        ),
    );
}

#[test]
fn criterion_02_cubic_dim3_value_and_vector() {
    let t = common::cubic_dim3_a();
    let rep = approx_auto(&Tensor::Sym(t), &ApproxConfig::default()).unwrap();
    assert!(close(rep.lambda, 0.8730, 2e-3), "lambda {}", rep.lambda);
    let want = [-0.3921, 0.7249, 0.5664];
    assert!(
        matches_up_to_sign(&rep.factors[0], &want, 2e-3),
        "factor {:?}",
        rep.factors[0]
    );
    pass(
        "02",
        format!(
            "lambda={:.4} u=({:.4}, {:.4}, {:.4})",
            rep.lambda, rep.factors[0][0], rep.factors[0][1], rep.factors[0][2]
        ),
    );
}

#[test]
fn criterion_03_cubic_dim3_b() {
    let t = common::cubic_dim3_b();
    let rep = approx_auto(&Tensor::Sym(t), &ApproxConfig::default()).unwrap();
    assert!(close(rep.lambda, 2.1110, 2e-3), "lambda {}", rep.lambda);
    assert!(close(rep.rho, 0.8574, 1e-3), "rho {}", rep.rho);
    pass("03", format!("lambda={:.4} rho={:.4}", rep.lambda, rep.rho));
}

#[test]
fn criterion_04_quartic_min_branch() {
    let t = common::quartic_dim3();
    let rep = approx_auto(&Tensor::Sym(t), &ApproxConfig::default()).unwrap();
    assert!(
        close(rep.lambda.abs(), 1.0954, 2e-3),
        "lambda {}",
        rep.lambda
    );
    assert!(
        rep.lambda < 0.0,
        "the minimization branch carries the value"
    );
    assert!(close(rep.rho, 0.4863, 1e-3), "rho {}", rep.rho);
    // Certification means both branch pencils had rank one.
    assert!(rep.certified);
    assert_eq!(rep.pencil_rank, 1);
    pass(
        "04",
        format!(
            "lambda={:.4} rho={:.4} both pencils rank 1",
            rep.lambda, rep.rho
        ),
    );
}

#[test]
fn criterion_05_motzkin_relaxation_values_and_ranks() {
    let motz = match families::generate("motzkin-6", None, None, 0).unwrap() {
        Tensor::Sym(t) => t,
        _ => unreachable!(),
    };

    let rel_min = sym_relaxation(&motz, false).unwrap();
    let sol_min = solve_relaxation(&rel_min);
    assert_eq!(sol_min.status, SdpStatus::Optimal);
    let f_min_sdp = rel_min.relaxation_value(sol_min.p_obj);
    assert!(close(f_min_sdp, 1.0, 1e-6), "f_min^sdp {f_min_sdp}");
    let ext_min = extract_sym(&back_map(&rel_min, &sol_min.x), 3, 3).unwrap();
    assert_eq!(ext_min.pencil_rank, 1, "minimization pencil is rank one");

    let rel_max = sym_relaxation(&motz, true).unwrap();
    let sol_max = solve_relaxation(&rel_max);
    assert_eq!(sol_max.status, SdpStatus::Optimal);
    assert!(
        close(sol_max.p_obj, 2.0046, 5e-3),
        "f_max^sdp {}",
        sol_max.p_obj
    );
    let ext_max = extract_sym(&back_map(&rel_max, &sol_max.x), 3, 3).unwrap();
    assert_eq!(ext_max.pencil_rank, 7, "maximization pencil rank");

    let rep = approx_auto(&Tensor::Sym(motz), &ApproxConfig::default()).unwrap();
    assert!(close(rep.lambda, 2.0, 1e-6), "lambda {}", rep.lambda);
    // The form is invariant under swapping the first two coordinates and
    // under per-coordinate sign flips, so (1,0,0) and (0,1,0) are equally
    // valid axis maximizers with f = 2; the solved pencil carries the tie
    // and extraction resolves it by lowest index.
    let u = &rep.factors[0];
    let is_axis_max = matches_up_to_sign(u, &[0.0, 1.0, 0.0], 1e-6)
        || matches_up_to_sign(u, &[1.0, 0.0, 0.0], 1e-6);
    assert!(is_axis_max, "maximizer {u:?}");
    assert!(!rep.certified);
    pass(
        "05",
        format!(
            "f_min^sdp={f_min_sdp:.6} (rank 1), f_max^sdp={:.4} (rank {}), lambda={:.6} at axis, certified={}",
            sol_max.p_obj, ext_max.pencil_rank, rep.lambda, rep.certified
        ),
    );
}

#[test]
fn criterion_06_sparse_2222() {
    let t = common::nonsym_2222();
    let norm = t.norm();
    assert!(close(norm, 49.2890, 1e-3), "norm {norm}");
    let rep = approx_auto(&Tensor::Gen(t), &ApproxConfig::default()).unwrap();
    assert!(close(rep.lambda, 25.6, 1e-3), "lambda {}", rep.lambda);
    assert!(
        close(rep.residual, 42.1195, 2e-3),
        "residual {}",
        rep.residual
    );
    let want: [&[f64]; 4] = [&[1.0, 0.0], &[0.0, 1.0], &[1.0, 0.0], &[0.0, 1.0]];
    for (f, w) in rep.factors.iter().zip(want) {
        assert!(matches_up_to_sign(f, w, 1e-6), "factor {f:?}");
    }
    pass(
        "06",
        format!(
            "lambda={:.4} residual={:.4} norm={:.4} factors at coordinate axes",
            rep.lambda, rep.residual, norm
        ),
    );
}

#[test]
fn criterion_07_dense_333() {
    let t = common::nonsym_333();
    let rep = approx_auto(&Tensor::Gen(t), &ApproxConfig::default()).unwrap();
    assert!(
        close(rep.lambda.abs(), 2.8167, 2e-3),
        "lambda {}",
        rep.lambda
    );
    assert!(close(rep.rho, 0.9017, 1e-3), "rho {}", rep.rho);
    pass("07", format!("lambda={:.4} rho={:.4}", rep.lambda, rep.rho));
}

#[test]
fn criterion_08_biquadratic_3x3x9() {
    let t = match families::generate("biquadratic-3x3x9", None, None, 0).unwrap() {
        Tensor::Gen(t) => t,
        _ => unreachable!(),
    };
    let (ghat, lead) = squared_form(&t).unwrap();
    let rel = nonsym_relaxation(&ghat, &lead).unwrap();
    let sol = solve_relaxation(&rel);
    assert_eq!(sol.status, SdpStatus::Optimal);
    assert!(close(sol.p_obj, 3.0972, 5e-3), "F_max^sdp {}", sol.p_obj);
    let ext = extract_nonsym(&back_map(&rel, &sol.x), &lead).unwrap();
    assert_eq!(ext.pencil_rank, 4, "pencil rank");

    let rep = approx_auto(&Tensor::Gen(t), &ApproxConfig::default()).unwrap();
    assert!(
        close(rep.lambda.abs(), 1.7321, 1e-3),
        "lambda {}",
        rep.lambda
    );
    assert!(close(rep.rho, 0.4083, 1e-3), "rho {}", rep.rho);
    assert!(!rep.certified);
    pass(
        "08",
        format!(
            "F_max^sdp={:.4} rank={} lambda={:.4} rho={:.4}",
            sol.p_obj, ext.pencil_rank, rep.lambda, rep.rho
        ),
    );
}

#[test]
fn criterion_09_structured_family_rows() {
    // Alternating-reciprocal cubic family at n = 10.
    let t = families::generate("alt-reciprocal-3", Some(10), None, 0).unwrap();
    let rep = approx_auto(&t, &ApproxConfig::default()).unwrap();
    assert!(
        close(rep.lambda.abs(), 17.80, 0.02),
        "lambda {}",
        rep.lambda
    );
    assert!(close(rep.rho, 0.80, 0.01), "rho {}", rep.rho);

    // Arctan quartic family at n = 5: the minimization branch dominates.
    let t2 = families::generate("arctan-4", Some(5), None, 0).unwrap();
    let rep2 = approx_auto(&t2, &ApproxConfig::default()).unwrap();
    assert!(
        close(rep2.lambda.abs(), 23.574, 0.02),
        "lambda {}",
        rep2.lambda
    );
    assert!(rep2.lambda < 0.0, "minimization branch must win");
    pass(
        "09",
        format!(
            "alt-reciprocal n=10: lambda={:.2} rho={:.2}; arctan n=5: lambda={:.3}",
            rep.lambda, rep.rho, rep2.lambda
        ),
    );
}

#[test]
fn criterion_10_comparison_protocol_residuals() {
    let t = families::generate("sin-sym", Some(10), Some(3), 0).unwrap();
    let rows = compare_methods(&t, &ApproxConfig::default()).unwrap();
    let res_sdp = rows[0].residual;
    let res_shopm = rows[1].residual;
    assert!(close(res_sdp, 18.79, 0.05), "RES_sdp {res_sdp}");
    assert!(
        res_sdp <= res_shopm + 1e-9,
        "RES_sdp {res_sdp} vs RES_shopm {res_shopm}"
    );
    assert!(rows[0].certified);
    pass(
        "10",
        format!(
            "RES_sdp={res_sdp:.2} <= RES_shopm={res_shopm:.2}, |lambda|={:.2}, |mu|={:.2}",
            rows[0].lambda.abs(),
            rows[1].lambda.abs()
        ),
    );
}

/// The published SHOPM baseline value for the sine family at n = 10 is
/// |mu| = 3.01 from a truncated-HOSVD start. That number is a transient of
/// a chaotic trajectory: the plain power iteration from the (unique up to
/// sign, and sign-irrelevant for odd orders) HOSVD start does not converge
/// within the 1000-iteration protocol and wanders for tens of thousands of
/// iterations before locking onto the global maximizer, so the value at
/// cutoff depends on arithmetic details no reimplementation can reproduce.
/// The assertion is kept as stated and is expected to fail.
#[test]
fn criterion_10_shopm_baseline_value_from_original_run() {
    let t = families::generate("sin-sym", Some(10), Some(3), 0).unwrap();
    let base = baseline_report(&t, &ApproxConfig::default()).unwrap();
    let mu = base.lambda.abs();
    let ok = close(mu, 3.01, 0.5);
    println!(
        "acceptance 10-shopm-value: {} - |mu|={mu:.2} vs published 3.01 +/- 0.5",
        if ok {
            "PASS"
        } else {
            "FAIL (chaotic power-method transient; see doc comment)"
        }
    );
    assert!(ok, "|mu| = {mu:.2}, published transient 3.01");
}

#[test]
fn criterion_11a_exact_moment_extraction_roundtrip() {
    let mut rng = Rng::new(41);
    let mut checked = 0;
    for (n, d) in [(2usize, 1usize), (3, 2), (4, 2), (2, 3)] {
        for _ in 0..5 {
            let mut u: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
            let nu = norm2(&u);
            for v in &mut u {
                *v /= nu;
            }
            let y = moment_vector(&u, 2 * d);
            let ext = extract_sym(&y, n, d).unwrap();
            assert_eq!(ext.pencil_rank, 1);
            assert!(
                matches_up_to_sign(&ext.vectors[0], &u, 1e-10),
                "sym roundtrip n={n} d={d}"
            );
            checked += 1;
        }
    }
    for dims in [[2usize, 2], [2, 3], [3, 3]] {
        for _ in 0..5 {
            let us: Vec<Vec<f64>> = dims
                .iter()
                .map(|&nj| {
                    let mut u: Vec<f64> = (0..nj).map(|_| rng.normal()).collect();
                    let nu = norm2(&u);
                    for v in &mut u {
                        *v /= nu;
                    }
                    u
                })
                .collect();
            let w = pair_moment_vector(&us);
            let ext = extract_nonsym(&w, &dims).unwrap();
            assert_eq!(ext.pencil_rank, 1);
            for (v, u) in ext.vectors.iter().zip(&us) {
                assert!(matches_up_to_sign(v, u, 1e-10), "nonsym roundtrip");
            }
            checked += 1;
        }
    }
    pass("11a", format!("{checked} exact-moment roundtrips at 1e-10"));
}

#[test]
fn criterion_11b_pythagorean_identity_on_random_tensors() {
    let mut rng = Rng::new(97);
    let mut count = 0;
    while count < 100 {
        let sym = rng.next_u64().is_multiple_of(2);
        if sym {
            let n = 2 + (rng.next_u64() % 3) as usize;
            let m = 2 + (rng.next_u64() % 4) as usize;
            let t = families::gaussian_sym(n, m, rng.next_u64());
            let mut u: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
            let nu = norm2(&u);
            for v in &mut u {
                *v /= nu;
            }
            let lambda = t.eval_form(&u).unwrap();
            let r = Rank1Tensor::symmetric(lambda, u, m).unwrap();
            let res = t.residual(&r).unwrap();
            let norm2_t = t.norm() * t.norm();
            let lhs = res * res + lambda * lambda;
            assert!(
                close(lhs, norm2_t, 1e-6 * norm2_t.max(1.0)),
                "sym pythagoras: {lhs} vs {norm2_t}"
            );
        } else {
            let k = (rng.next_u64() % 3) as usize;
            let dims: Vec<usize> = [[2usize, 3, 2], [3, 3, 3], [2, 2, 2]][k].to_vec();
            let t = families::gaussian_gen(&dims, rng.next_u64());
            let us: Vec<Vec<f64>> = dims
                .iter()
                .map(|&nj| {
                    let mut u: Vec<f64> = (0..nj).map(|_| rng.normal()).collect();
                    let nu = norm2(&u);
                    for v in &mut u {
                        *v /= nu;
                    }
                    u
                })
                .collect();
            let lambda = t.eval_multilinear(&us).unwrap();
            let r = Rank1Tensor::new(lambda, us).unwrap();
            let res = t.residual(&r).unwrap();
            let norm2_t = t.norm() * t.norm();
            let lhs = res * res + lambda * lambda;
            assert!(
                close(lhs, norm2_t, 1e-6 * norm2_t.max(1.0)),
                "gen pythagoras: {lhs} vs {norm2_t}"
            );
        }
        count += 1;
    }
    pass(
        "11b",
        "residual^2 + lambda^2 = ||T||^2 on 100 random tensors".to_string(),
    );
}

#[test]
fn criterion_11c_solver_quality_on_all_worked_instances() {
    let mut solved = 0;
    let mut check = |sol: &SdpSolution, name: &str| {
        assert_eq!(sol.status, SdpStatus::Optimal, "{name} status");
        assert!(sol.gap <= 1e-7, "{name} gap {}", sol.gap);
        assert!(
            sol.primal_infeas <= 1e-8,
            "{name} pinf {}",
            sol.primal_infeas
        );
        assert!(sol.dual_infeas <= 1e-8, "{name} dinf {}", sol.dual_infeas);
        solved += 1;
    };

    for (name, t) in [
        ("cubic_dim2", common::cubic_dim2()),
        ("cubic_dim3_a", common::cubic_dim3_a()),
        ("cubic_dim3_b", common::cubic_dim3_b()),
    ] {
        let (rel, _) = odd_relaxation(&t).unwrap();
        check(&solve_relaxation(&rel), name);
    }

    let quartic = common::quartic_dim3();
    check(
        &solve_relaxation(&sym_relaxation(&quartic, true).unwrap()),
        "quartic max",
    );
    check(
        &solve_relaxation(&sym_relaxation(&quartic, false).unwrap()),
        "quartic min",
    );

    let motz = match families::generate("motzkin-6", None, None, 0).unwrap() {
        Tensor::Sym(t) => t,
        _ => unreachable!(),
    };
    check(
        &solve_relaxation(&sym_relaxation(&motz, true).unwrap()),
        "motzkin max",
    );
    check(
        &solve_relaxation(&sym_relaxation(&motz, false).unwrap()),
        "motzkin min",
    );

    for (name, g) in [
        ("nonsym_2222", common::nonsym_2222()),
        ("nonsym_333", common::nonsym_333()),
        (
            "biquadratic",
            match families::generate("biquadratic-3x3x9", None, None, 0).unwrap() {
                Tensor::Gen(t) => t,
                _ => unreachable!(),
            },
        ),
    ] {
        // Largest mode last, as the pipeline arranges it.
        let m = g.order();
        let dims = g.dims().to_vec();
        let mut j_star = 0;
        for (j, &nj) in dims.iter().enumerate() {
            if nj >= dims[j_star] {
                j_star = j;
            }
        }
        let gp = g.swap_modes(j_star, m - 1);
        let (ghat, lead) = squared_form(&gp).unwrap();
        let rel = nonsym_relaxation(&ghat, &lead).unwrap();
        check(&solve_relaxation(&rel), name);
    }

    for (name, t) in [
        (
            "alt-reciprocal n=10",
            families::generate("alt-reciprocal-3", Some(10), None, 0).unwrap(),
        ),
        (
            "sin n=10",
            families::generate("sin-sym", Some(10), Some(3), 0).unwrap(),
        ),
    ] {
        let s = match t {
            Tensor::Sym(s) => s,
            _ => unreachable!(),
        };
        let (rel, _) = odd_relaxation(&s).unwrap();
        check(&solve_relaxation(&rel), name);
    }

    let arctan = match families::generate("arctan-4", Some(5), None, 0).unwrap() {
        Tensor::Sym(s) => s,
        _ => unreachable!(),
    };
    check(
        &solve_relaxation(&sym_relaxation(&arctan, true).unwrap()),
        "arctan max",
    );
    check(
        &solve_relaxation(&sym_relaxation(&arctan, false).unwrap()),
        "arctan min",
    );

    pass(
        "11c",
        format!("{solved} relaxations solved with gap <= 1e-7, feasibility <= 1e-8"),
    );
}

/// Quasi-uniform |f| maximum over the unit circle.
fn grid_max_n2(t: &SymTensor, points: usize) -> f64 {
    let mut best = 0.0f64;
    for j in 0..points {
        let th = std::f64::consts::PI * j as f64 / points as f64;
        let x = [th.cos(), th.sin()];
        best = best.max(t.eval_form(&x).unwrap().abs());
    }
    best
}

/// Quasi-uniform |f| maximum over the unit sphere (Fibonacci lattice).
fn grid_max_n3(t: &SymTensor, points: usize) -> f64 {
    let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mut best = 0.0f64;
    for j in 0..points {
        let z = 1.0 - 2.0 * (j as f64 + 0.5) / points as f64;
        let r = (1.0 - z * z).sqrt();
        let phi = 2.0 * std::f64::consts::PI * (j as f64) / golden;
        let x = [r * phi.cos(), r * phi.sin(), z];
        best = best.max(t.eval_form(&x).unwrap().abs());
    }
    best
}

#[test]
fn criterion_11d_grid_oracle_dominance_and_tightness() {
    let mut rng = Rng::new(2718);
    let mut cases = 0;
    let mut certified_cases = 0;
    for (n, m) in [(2usize, 3usize), (2, 4), (2, 5), (2, 6), (3, 4)] {
        for _ in 0..3 {
            let mut t = families::gaussian_sym(n, m, rng.next_u64());
            let norm = t.norm();
            t.scale(1.0 / norm);
            let oracle = if n == 2 {
                grid_max_n2(&t, 50_000)
            } else {
                grid_max_n3(&t, 50_000)
            };
            let rep = approx_auto(&Tensor::Sym(t), &ApproxConfig::default()).unwrap();
            let bound = rep.ubd.unwrap();
            assert!(
                bound >= oracle - 1e-7,
                "bound {bound} below grid maximum {oracle} (n={n}, m={m})"
            );
            if rep.certified {
                assert!(
                    bound <= oracle + 1e-2,
                    "certified bound {bound} far above grid maximum {oracle} (n={n}, m={m})"
                );
                certified_cases += 1;
            }
            // Refined value always sandwiched under the bound.
            assert!(rep.lambda.abs() <= bound + 1e-7 * (1.0 + bound));
            cases += 1;
        }
    }
    assert!(certified_cases >= 10, "expected mostly certified runs");
    pass(
        "11d",
        format!("{cases} grid comparisons ({certified_cases} certified and tight)"),
    );
}

#[test]
fn criterion_11e_gradient_matches_central_differences() {
    let mut rng = Rng::new(1618);
    let mut checked = 0;
    for (n, m) in [(2usize, 3usize), (3, 3), (4, 4), (3, 5), (4, 2)] {
        let t = families::gaussian_sym(n, m, rng.next_u64());
        let x: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let g = t.gradient(&x).unwrap();
        let h = 1e-5;
        for k in 0..n {
            let mut xp = x.clone();
            xp[k] += h;
            let mut xm = x.clone();
            xm[k] -= h;
            let fd = (t.eval_form(&xp).unwrap() - t.eval_form(&xm).unwrap()) / (2.0 * h);
            assert!(
                close(g[k], fd, 1e-6 * (1.0 + fd.abs())),
                "gradient n={n} m={m} coordinate {k}: {} vs {fd}",
                g[k]
            );
            checked += 1;
        }
    }
    pass(
        "11e",
        format!("{checked} coordinates vs central differences at 1e-6 relative"),
    );
}

#[test]
fn criterion_11f_permutation_and_scaling_equivariance() {
    let cfg = ApproxConfig::default();
    // Mode permutation leaves lambda and the residual unchanged.
    let t = families::gaussian_gen(&[2, 3, 4], 4242);
    let rep = approx_auto(&Tensor::Gen(t.clone()), &cfg).unwrap();
    for (a, b) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let tp = t.swap_modes(a, b);
        let rep_p = approx_auto(&Tensor::Gen(tp), &cfg).unwrap();
        assert!(
            close(
                rep.lambda.abs(),
                rep_p.lambda.abs(),
                1e-8 * (1.0 + rep.lambda.abs())
            ),
            "lambda under swap ({a},{b}): {} vs {}",
            rep.lambda,
            rep_p.lambda
        );
        assert!(
            close(rep.residual, rep_p.residual, 1e-8 * (1.0 + rep.residual)),
            "residual under swap ({a},{b})"
        );
    }

    // Positive scaling multiplies lambda and keeps the factors.
    let s = common::cubic_dim3_a();
    let rep1 = approx_auto(&Tensor::Sym(s.clone()), &cfg).unwrap();
    let mut s2 = s;
    s2.scale(7.5);
    let rep2 = approx_auto(&Tensor::Sym(s2), &cfg).unwrap();
    assert!(
        close(
            rep2.lambda,
            7.5 * rep1.lambda,
            1e-6 * (1.0 + rep2.lambda.abs())
        ),
        "scaled lambda {} vs {}",
        rep2.lambda,
        7.5 * rep1.lambda
    );
    for (a, b) in rep1.factors[0].iter().zip(&rep2.factors[0]) {
        assert!(close(*a, *b, 1e-6), "scaled factors");
    }
    assert!(close(rep1.rho, rep2.rho, 1e-8), "rho is scale invariant");
    pass(
        "11f",
        "mode-permutation and positive-scaling equivariance of reports".to_string(),
    );
}

#[test]
fn criterion_11g_certified_bound_touches_certified_value() {
    // Certification soundness: a certified report's |lambda| matches its
    // bound within 1e-6 * (1 + bound).
    for rep in [
        approx_auto(&Tensor::Sym(common::cubic_dim2()), &ApproxConfig::default()).unwrap(),
        approx_auto(
            &Tensor::Sym(common::quartic_dim3()),
            &ApproxConfig::default(),
        )
        .unwrap(),
        approx_auto(
            &Tensor::Gen(common::nonsym_2222()),
            &ApproxConfig::default(),
        )
        .unwrap(),
    ] {
        assert!(rep.certified);
        let bound = rep.ubd.unwrap();
        assert!(
            close(rep.lambda.abs(), bound, 1e-6 * (1.0 + bound)),
            "certified value {} vs bound {bound}",
            rep.lambda
        );
        assert!(rep.aprxerr.unwrap() <= 1e-5);
    }
    pass(
        "11g",
        "certified reports meet their bounds within 1e-6".to_string(),
    );
}
