//! Best rank-1 approximation of an even-order symmetric tensor.
//!
//! Even orders solve two relaxations (maximize f and maximize -f over the
//! sphere) and keep the branch with the larger absolute value. Here the
//! minimization branch wins, so the reported lambda is negative.
//!
//! Run with: `cargo run --example approx_symmetric_even`

use tensor_rank1::io::report_to_text;
use tensor_rank1::pipeline::{approx_sym_even, ApproxConfig};
use tensor_rank1::tensor::SymTensor;

fn main() {
    let mut t = SymTensor::new(3, 4);
    for (idx, v) in [
        ([0, 0, 0, 0], 0.2883),
        ([0, 0, 0, 1], -0.0031),
        ([0, 0, 0, 2], 0.1973),
        ([0, 0, 1, 1], -0.2485),
        ([0, 0, 1, 2], -0.2939),
        ([0, 0, 2, 2], 0.3847),
        ([0, 1, 1, 1], 0.2972),
        ([0, 1, 1, 2], 0.1862),
        ([0, 1, 2, 2], 0.0919),
        ([0, 2, 2, 2], -0.3619),
        ([1, 1, 1, 1], 0.1241),
        ([1, 1, 1, 2], -0.3420),
        ([1, 1, 2, 2], 0.2127),
        ([1, 2, 2, 2], 0.2727),
        ([2, 2, 2, 2], -0.3054),
    ] {
        t.set(&idx, v).unwrap();
    }

    let report = approx_sym_even(&t, &ApproxConfig::default()).unwrap();
    print!("{}", report_to_text(&report));

    assert!(report.certified, "both branch pencils have rank one");
    assert!(report.lambda < 0.0, "the minimization branch dominates");
    assert!((report.lambda.abs() - 1.0954).abs() < 2e-3);
}
