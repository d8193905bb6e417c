//! What certification means, on a tensor where it fails.
//!
//! The order-6 tensor below encodes `2||x||^6 - M(x)` with `M` the Motzkin
//! polynomial, the classic nonnegative-but-not-SOS example. The sphere
//! maximum of the form is exactly 2, but the relaxation value is 2.0046:
//! the relaxation is not tight, the moment pencil has rank 7, and the run
//! is reported uncertified even though refinement does land on a global
//! maximizer. The minimization branch is tight with a rank-1 pencil.
//!
//! Run with: `cargo run --example certification_and_bounds`

use tensor_rank1::extract::extract_sym;
use tensor_rank1::moment::sym_relaxation;
use tensor_rank1::pipeline::{approx_auto, ApproxConfig};
use tensor_rank1::sdp::{back_map, certify_bounds, solve, to_std};
use tensor_rank1::tensor::{families, Tensor};

fn main() {
    let motzkin = families::generate("motzkin-6", None, None, 0).unwrap();
    let sym = match &motzkin {
        Tensor::Sym(s) => s.clone(),
        _ => unreachable!(),
    };

    for (sense, name) in [(true, "max"), (false, "min")] {
        let rel = sym_relaxation(&sym, sense).unwrap();
        let sol = solve(&to_std(&rel), &Default::default());
        let value = rel.relaxation_value(sol.p_obj);
        let extraction = extract_sym(&back_map(&rel, &sol.x), 3, 3).unwrap();
        let bound = certify_bounds(&sol, &rel).unwrap();
        println!(
            "{name} branch: relaxation value {value:.6}, pencil rank {}, bound component {bound:.4}",
            extraction.pencil_rank
        );
    }

    let report = approx_auto(&motzkin, &ApproxConfig::default()).unwrap();
    println!(
        "final: lambda = {:.4}, upper bound = {:.4}, aprxerr = {:.2e}, certified = {}",
        report.lambda,
        report.ubd.unwrap(),
        report.aprxerr.unwrap(),
        report.certified
    );

    // The bound is valid even without a certificate: |lambda| <= ubd.
    assert!(report.lambda.abs() <= report.ubd.unwrap() + 1e-9);
    assert!(!report.certified);
}
