//! The text tensor format and machine-readable reports.
//!
//! Run with: `cargo run --example tensor_files_and_reports`

use tensor_rank1::io::{parse_tensor, report_from_json, report_to_json, write_tensor};
use tensor_rank1::pipeline::{approx_auto, ApproxConfig};

fn main() {
    // Header: `tensor <m> <n1> ... <nm> <symmetric|general>`, one entry per
    // line with 1-based indices, `#` comments, missing entries zero.
    let text = "\
# cubic tensor over R^3
tensor 3 3 3 3 symmetric
1 1 1  0.0517
1 1 2  0.3579
1 1 3  0.5298
1 2 2  0.7544
1 2 3  0.2156
1 3 3  0.3612
2 2 2  0.3943
2 2 3  0.0146
2 3 3  0.6718
3 3 3  0.9723
";
    let tensor = parse_tensor(text).unwrap();
    println!("parsed tensor with norm {:.4}", tensor.norm());

    // Writing and reparsing is lossless.
    let roundtrip = parse_tensor(&write_tensor(&tensor)).unwrap();
    assert_eq!(tensor, roundtrip);

    // Reports serialize to JSON with full precision and read back exactly.
    let mut report = approx_auto(&tensor, &ApproxConfig::default()).unwrap();
    report.solver.seconds = 0.0;
    let json = report_to_json(&report);
    println!("{json}");
    let back = report_from_json(&json).unwrap();
    assert_eq!(report, back);
}
