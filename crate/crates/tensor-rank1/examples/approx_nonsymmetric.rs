//! Best rank-1 approximation of a dense nonsymmetric tensor.
//!
//! The largest mode is eliminated through the squared last-mode-slice form
//! `F^sq = Σ_j F_j²`, the pair relaxation over the remaining modes is
//! solved, the per-mode factors are extracted, the eliminated factor is
//! rebuilt by contraction, and alternating refinement polishes the tuple.
//!
//! Run with: `cargo run --example approx_nonsymmetric`

use tensor_rank1::io::report_to_text;
use tensor_rank1::pipeline::{approx_nonsym, ApproxConfig};
use tensor_rank1::tensor::GenTensor;

fn main() {
    // A sparse 2x2x2x2 tensor whose best rank-1 part picks one entry.
    let mut t = GenTensor::zeros(&[2, 2, 2, 2]);
    t.set(&[0, 0, 0, 0], 25.1).unwrap();
    t.set(&[0, 1, 0, 1], 25.6).unwrap();
    t.set(&[1, 0, 1, 0], 24.8).unwrap();
    t.set(&[1, 1, 1, 1], 23.0).unwrap();

    let report = approx_nonsym(&t, &ApproxConfig::default()).unwrap();
    print!("{}", report_to_text(&report));

    assert!(report.certified);
    assert!((report.lambda - 25.6).abs() < 1e-3);
    // The optimal factors are coordinate vectors e1, e2, e1, e2.
    for (j, f) in report.factors.iter().enumerate() {
        let k = if j % 2 == 0 { 0 } else { 1 };
        assert!((f[k].abs() - 1.0).abs() < 1e-6);
    }
}
