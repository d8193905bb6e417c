//! The built-in structured tensor families.
//!
//! Run with: `cargo run --example tensor_families`

use tensor_rank1::tensor::families::{self, FAMILY_NAMES};

fn main() {
    println!("{:<20} {:>12} {:>10}  kind", "family", "dims", "norm");
    for &name in FAMILY_NAMES {
        // Pick representative parameters for the free-size families.
        let (n, m) = match name {
            "sin-sym" => (Some(6), Some(3)),
            "tan-nonsym" => (Some(5), Some(3)),
            "gaussian-random" => (Some(4), Some(3)),
            "motzkin-6" | "biquadratic-3x3x9" => (None, None),
            _ => (Some(5), None),
        };
        let t = families::generate(name, n, m, 42).unwrap();
        let dims: Vec<String> = t.dims().iter().map(|d| d.to_string()).collect();
        println!(
            "{name:<20} {:>12} {:>10.4}  {}",
            dims.join("x"),
            t.norm(),
            if t.is_symmetric_kind() {
                "symmetric"
            } else {
                "general"
            }
        );
    }
}
