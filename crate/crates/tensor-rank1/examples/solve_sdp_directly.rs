//! Using the embedded interior-point solver on a hand-built semidefinite
//! program: `max <C, X> s.t. trace X = 1, X ⪰ 0`, whose optimum is the top
//! eigenvalue of `C`.
//!
//! Run with: `cargo run --example solve_sdp_directly`

use tensor_rank1::linalg::sym_eigenvalues;
use tensor_rank1::sdp::{solve, SolveOptions, SparseSym, StdSdp};

fn main() {
    let n = 5;
    // A fixed symmetric objective.
    let mut entries = Vec::new();
    let mut c = tensor_rank1::linalg::Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = ((i * 3 + j * 7) as f64 * 0.37).sin();
            c[(i, j)] = v;
            c[(j, i)] = v;
            entries.push((i, j, v));
        }
    }

    let sdp = StdSdp {
        n,
        c: SparseSym::new(entries),
        constraints: vec![(SparseSym::new((0..n).map(|i| (i, i, 1.0)).collect()), 1.0)],
    };
    let sol = solve(&sdp, &SolveOptions::default());

    let evals = sym_eigenvalues(&c).unwrap();
    println!(
        "status {:?} after {} iterations: primal {:.10}, dual {:.10}, gap {:.1e}",
        sol.status, sol.iterations, sol.p_obj, sol.d_obj, sol.gap
    );
    println!("top eigenvalue of C:             {:.10}", evals[n - 1]);
    assert!((sol.p_obj - evals[n - 1]).abs() < 1e-6);
}
