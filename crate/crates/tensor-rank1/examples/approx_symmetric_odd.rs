//! Best rank-1 approximation of an odd-order symmetric tensor.
//!
//! The cubic form is lifted by one variable to even degree, the moment
//! relaxation is solved, a candidate is extracted from the pseudo-moment
//! vector and unlifted, and projected gradient polishes the result. A
//! rank-one moment pencil certifies global optimality.
//!
//! Run with: `cargo run --example approx_symmetric_odd`

use tensor_rank1::io::report_to_text;
use tensor_rank1::pipeline::{approx_auto, ApproxConfig};
use tensor_rank1::tensor::{SymTensor, Tensor};

fn main() {
    // A 3rd-order tensor over R^2, given by one value per sorted index.
    let mut t = SymTensor::new(2, 3);
    t.set(&[0, 0, 0], 1.5578).unwrap();
    t.set(&[0, 0, 1], -2.4443).unwrap();
    t.set(&[0, 1, 1], -1.0982).unwrap();
    t.set(&[1, 1, 1], 1.1226).unwrap();

    let report = approx_auto(&Tensor::Sym(t), &ApproxConfig::default()).unwrap();
    print!("{}", report_to_text(&report));

    // With a certificate, |lambda| equals the semidefinite upper bound and
    // lambda * u^{⊗3} is a best rank-1 approximation.
    assert!(report.certified);
    assert!((report.lambda - 3.1155).abs() < 2e-3);
}
