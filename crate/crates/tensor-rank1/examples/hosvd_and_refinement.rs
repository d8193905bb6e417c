//! The local toolbox on its own: truncated-HOSVD starting points, the
//! symmetric and alternating power methods, and projected-gradient ascent.
//!
//! Run with: `cargo run --example hosvd_and_refinement`

use tensor_rank1::refine::{
    hopm, hosvd_init, hosvd_init_sym, projected_gradient, shopm, RefineConfig, Sense,
};
use tensor_rank1::tensor::families;
use tensor_rank1::tensor::Tensor;

fn main() {
    let cfg = RefineConfig::default();

    // Symmetric: SHOPM from the HOSVD start, then projected gradient from
    // the same start for comparison.
    let t = match families::generate("alt-reciprocal-3", Some(6), None, 0).unwrap() {
        Tensor::Sym(t) => t,
        _ => unreachable!(),
    };
    let x0 = hosvd_init_sym(&t).unwrap();
    let power = shopm(&t, &x0, &cfg).unwrap();
    let ascent = projected_gradient(&t, &x0, Sense::Max, &cfg).unwrap();
    println!(
        "symmetric n=6: shopm |mu| = {:.4} ({} its), projected gradient f = {:.4} ({} its)",
        power.value.abs(),
        power.iterations,
        ascent.value,
        ascent.iterations
    );

    // Nonsymmetric: HOPM from per-mode HOSVD starts.
    let g = match families::generate("cos-nonsym-3", Some(5), None, 0).unwrap() {
        Tensor::Gen(g) => g,
        _ => unreachable!(),
    };
    let starts = hosvd_init(&g).unwrap();
    let out = hopm(&g, &starts, &cfg).unwrap();
    println!(
        "nonsymmetric 5x5x5: hopm |mu| = {:.4} after {} sweeps",
        out.value.abs(),
        out.iterations
    );
    for (j, v) in out.points.iter().enumerate() {
        let coords: Vec<String> = v.iter().map(|x| format!("{x:.4}")).collect();
        println!("  u^{} = ({})", j + 1, coords.join(", "));
    }
}
