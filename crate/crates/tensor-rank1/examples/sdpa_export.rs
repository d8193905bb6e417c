//! Exporting a relaxation in SDPA sparse format for cross-checking with
//! external solvers.
//!
//! Run with: `cargo run --example sdpa_export`

use tensor_rank1::moment::odd_relaxation;
use tensor_rank1::sdp::{to_std, write_sdpa_sparse};
use tensor_rank1::tensor::SymTensor;

fn main() {
    let mut t = SymTensor::new(2, 3);
    t.set(&[0, 0, 0], 1.5578).unwrap();
    t.set(&[0, 0, 1], -2.4443).unwrap();
    t.set(&[0, 1, 1], -1.0982).unwrap();
    t.set(&[1, 1, 1], 1.1226).unwrap();

    let (rel, lift) = odd_relaxation(&t).unwrap();
    let std_form = to_std(&rel);
    println!(
        "lifted to {} variables, pencil size {}, {} equality constraints",
        lift.lifted_vars,
        rel.pencil_size(),
        std_form.num_constraints()
    );

    let text = write_sdpa_sparse(&std_form);
    for line in text.lines().take(12) {
        println!("{line}");
    }
    println!("... ({} lines total)", text.lines().count());
}
