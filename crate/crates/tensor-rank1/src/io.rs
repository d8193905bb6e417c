//! Text tensor files and machine-readable reports.
//!
//! Tensor format (`.tns`): a header line
//! `tensor <m> <n1> ... <nm> <symmetric|general>` followed by one entry per
//! line, `i1 ... im value`, 1-based indices, `#` starting a comment.
//! Symmetric files require equal dimensions and sorted indices; duplicate
//! indices are rejected; unspecified entries are zero.

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::pipeline::Rank1Report;
use crate::tensor::{next_index, GenTensor, SymTensor, Tensor};

/// Parses tensor text. Errors carry the offending 1-based line number.
pub fn parse_tensor(text: &str) -> Result<Tensor> {
    let mut lines = text.lines().enumerate();

    // Header: first non-empty, non-comment line.
    let (header_no, header) = loop {
        match lines.next() {
            Some((i, raw)) => {
                let s = strip_comment(raw).trim().to_string();
                if !s.is_empty() {
                    break (i + 1, s);
                }
            }
            None => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "missing header line".to_string(),
                })
            }
        }
    };

    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 4 || toks[0] != "tensor" {
        return Err(Error::Parse {
            line: header_no,
            msg: "header must be `tensor <m> <n1> ... <nm> <symmetric|general>`".to_string(),
        });
    }
    let m: usize = toks[1].parse().map_err(|_| Error::Parse {
        line: header_no,
        msg: format!("bad order `{}`", toks[1]),
    })?;
    if m == 0 {
        return Err(Error::Parse {
            line: header_no,
            msg: "order must be positive".to_string(),
        });
    }
    if toks.len() != m + 3 {
        return Err(Error::Parse {
            line: header_no,
            msg: format!(
                "expected {} dimensions and a kind, got {} tokens",
                m,
                toks.len() - 2
            ),
        });
    }
    let mut dims = Vec::with_capacity(m);
    for t in &toks[2..2 + m] {
        let d: usize = t.parse().map_err(|_| Error::Parse {
            line: header_no,
            msg: format!("bad dimension `{t}`"),
        })?;
        if d == 0 {
            return Err(Error::Parse {
                line: header_no,
                msg: "dimensions must be positive".to_string(),
            });
        }
        dims.push(d);
    }
    let symmetric = match toks[m + 2] {
        "symmetric" => true,
        "general" => false,
        other => {
            return Err(Error::Parse {
                line: header_no,
                msg: format!("kind must be `symmetric` or `general`, got `{other}`"),
            })
        }
    };
    if symmetric && dims.iter().any(|&d| d != dims[0]) {
        return Err(Error::Parse {
            line: header_no,
            msg: "symmetric tensors need equal dimensions".to_string(),
        });
    }

    let mut sym = if symmetric {
        Some(SymTensor::new(dims[0], m))
    } else {
        None
    };
    let mut gen = if symmetric {
        None
    } else {
        Some(GenTensor::zeros(&dims))
    };
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();

    for (i, raw) in lines {
        let line_no = i + 1;
        let s = strip_comment(raw);
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() != m + 1 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected {} indices and a value", m),
            });
        }
        let mut idx = Vec::with_capacity(m);
        for (k, t) in toks[..m].iter().enumerate() {
            let one_based: usize = t.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad index `{t}`"),
            })?;
            if one_based == 0 || one_based > dims[k] {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!(
                        "index {} out of range 1..={} in position {}",
                        one_based,
                        dims[k],
                        k + 1
                    ),
                });
            }
            idx.push(one_based - 1);
        }
        let value: f64 = toks[m].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("bad value `{}`", toks[m]),
        })?;

        if symmetric && idx.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parse {
                line: line_no,
                msg: "symmetric entries must use sorted indices".to_string(),
            });
        }
        if !seen.insert(idx.clone()) {
            return Err(Error::Parse {
                line: line_no,
                msg: "duplicate index".to_string(),
            });
        }
        if let Some(t) = sym.as_mut() {
            t.set(&idx, value).map_err(|e| Error::Parse {
                line: line_no,
                msg: e.to_string(),
            })?;
        } else if let Some(t) = gen.as_mut() {
            t.set(&idx, value).map_err(|e| Error::Parse {
                line: line_no,
                msg: e.to_string(),
            })?;
        }
    }

    Ok(match (sym, gen) {
        (Some(t), _) => Tensor::Sym(t),
        (_, Some(t)) => Tensor::Gen(t),
        _ => unreachable!(),
    })
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

/// Serializes a tensor in the text format; nonzero entries only, full
/// float precision (round-trips exactly).
pub fn write_tensor(t: &Tensor) -> String {
    let mut out = String::new();
    match t {
        Tensor::Sym(s) => {
            out.push_str(&format!(
                "tensor {} {} symmetric\n",
                s.order(),
                vec![s.dim().to_string(); s.order()].join(" ")
            ));
            for (idx, v) in s.orbits() {
                if v != 0.0 {
                    let ix: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
                    out.push_str(&format!("{} {}\n", ix.join(" "), v));
                }
            }
        }
        Tensor::Gen(g) => {
            let dims: Vec<String> = g.dims().iter().map(|d| d.to_string()).collect();
            out.push_str(&format!(
                "tensor {} {} general\n",
                g.order(),
                dims.join(" ")
            ));
            let mut idx = vec![0usize; g.order()];
            loop {
                let v = g.get(&idx);
                if v != 0.0 {
                    let ix: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
                    out.push_str(&format!("{} {}\n", ix.join(" "), v));
                }
                if !next_index(&mut idx, g.dims()) {
                    break;
                }
            }
        }
    }
    out
}

pub fn read_tensor_file(path: &Path) -> Result<Tensor> {
    let text = std::fs::read_to_string(path)?;
    parse_tensor(&text)
}

pub fn write_tensor_file(path: &Path, t: &Tensor) -> Result<()> {
    std::fs::write(path, write_tensor(t))?;
    Ok(())
}

/// JSON encoding of a report (full precision, stable key order).
pub fn report_to_json(report: &Rank1Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn report_from_json(text: &str) -> Result<Rank1Report> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })
}

/// Four-decimal text rendering in the style of the worked examples.
pub fn report_to_text(report: &Rank1Report) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    if report.factors.is_empty() {
        writeln!(out, "best rank-1 approximation: zero tensor").unwrap();
        writeln!(out, "lambda      = {:.4}", report.lambda).unwrap();
    } else {
        writeln!(out, "lambda      = {:.4}", report.lambda).unwrap();
        for (j, f) in report.factors.iter().enumerate() {
            let coords: Vec<String> = f.iter().map(|v| format!("{v:.4}")).collect();
            writeln!(out, "u^{}         = ({})", j + 1, coords.join(", ")).unwrap();
        }
    }
    writeln!(out, "residual    = {:.4}", report.residual).unwrap();
    match report.ubd {
        Some(u) => writeln!(out, "upper bound = {u:.4}").unwrap(),
        None => writeln!(out, "upper bound = n/a (refinement only)").unwrap(),
    }
    match report.aprxerr {
        Some(e) => writeln!(out, "aprxerr     = {e:.1e}").unwrap(),
        None => writeln!(out, "aprxerr     = n/a").unwrap(),
    }
    writeln!(out, "rho         = {:.4}", report.rho).unwrap();
    writeln!(
        out,
        "certified   = {} (pencil rank {})",
        report.certified, report.pencil_rank
    )
    .unwrap();
    let method = match report.method {
        crate::pipeline::Method::SdpRefine => "sdp+refine",
        crate::pipeline::Method::Shopm => "shopm",
        crate::pipeline::Method::Hopm => "hopm",
    };
    writeln!(out, "method      = {method}").unwrap();
    writeln!(
        out,
        "solver      = {} iterations, gap {:.1e}, {:.3} s",
        report.solver.iterations, report.solver.gap, report.solver.seconds
    )
    .unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{Method, SolverStats};

    #[test]
    fn parses_symmetric_example() {
        let text = "\
# cubic tensor over R^2
tensor 3 2 2 2 symmetric
1 1 1 1.5578
1 1 2 -2.4443
1 2 2 -1.0982
2 2 2 1.1226
";
        let t = parse_tensor(text).unwrap();
        assert!((t.norm() - 5.0228).abs() < 1e-3);
        match t {
            Tensor::Sym(s) => {
                assert_eq!(s.order(), 3);
                assert_eq!(s.dim(), 2);
                assert_eq!(s.get(&[0, 0, 1]), -2.4443);
            }
            _ => panic!("expected symmetric"),
        }
    }

    #[test]
    fn empty_entry_list_is_zero_tensor() {
        let t = parse_tensor("tensor 2 3 3 symmetric\n").unwrap();
        assert_eq!(t.norm(), 0.0);
    }

    #[test]
    fn parses_dense_general() {
        let mut text = String::from("tensor 3 2 2 2 general\n");
        for i in 1..=2 {
            for j in 1..=2 {
                for k in 1..=2 {
                    text.push_str(&format!("{i} {j} {k} {}\n", (i * 4 + j * 2 + k) as f64));
                }
            }
        }
        let t = parse_tensor(&text).unwrap();
        match t {
            Tensor::Gen(g) => {
                assert_eq!(g.dims(), &[2, 2, 2]);
                assert_eq!(g.get(&[0, 0, 0]), 7.0);
                assert_eq!(g.get(&[1, 1, 1]), 14.0);
            }
            _ => panic!("expected general"),
        }
    }

    #[test]
    fn rejects_malformed_inputs() {
        // Bad header.
        let e = parse_tensor("matrix 2 2 2 symmetric\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        // Unsorted symmetric index.
        let e = parse_tensor("tensor 2 2 2 symmetric\n2 1 5.0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        // Out-of-range index.
        let e = parse_tensor("tensor 2 2 2 general\n3 1 5.0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        // Duplicate index.
        let e = parse_tensor("tensor 2 2 2 general\n1 1 5.0\n1 1 6.0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        // Unequal symmetric dims.
        let e = parse_tensor("tensor 2 2 3 symmetric\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        // Bad value.
        let e = parse_tensor("tensor 1 2 general\n1 abc\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn tensor_roundtrip_is_exact() {
        let mut s = SymTensor::new(3, 3);
        s.set(&[0, 1, 2], 0.123_456_789_012_345_68).unwrap();
        s.set(&[0, 0, 0], -7.25e-13).unwrap();
        let t = Tensor::Sym(s);
        let text = write_tensor(&t);
        let back = parse_tensor(&text).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn report_json_roundtrip() {
        let rep = Rank1Report {
            lambda: 0.8730,
            factors: vec![vec![-0.3921, 0.7249, 0.5664]; 3],
            residual: 0.4498,
            ubd: Some(0.8730),
            aprxerr: Some(1.2e-7),
            rho: 0.8890,
            certified: true,
            pencil_rank: 1,
            method: Method::SdpRefine,
            solver: SolverStats {
                iterations: 13,
                gap: 4.2e-10,
                seconds: 0.0,
            },
        };
        let json = report_to_json(&rep);
        assert!(json.contains("\"certified\": true"));
        assert!(json.contains("\"method\": \"sdp+refine\""));
        let back = report_from_json(&json).unwrap();
        assert_eq!(rep, back);
    }

    #[test]
    fn zero_report_omits_factors() {
        let rep = Rank1Report {
            lambda: 0.0,
            factors: vec![],
            residual: 0.0,
            ubd: Some(0.0),
            aprxerr: Some(0.0),
            rho: 0.0,
            certified: true,
            pencil_rank: 0,
            method: Method::SdpRefine,
            solver: SolverStats {
                iterations: 0,
                gap: 0.0,
                seconds: 0.0,
            },
        };
        let json = report_to_json(&rep);
        assert!(!json.contains("factors"));
        let back = report_from_json(&json).unwrap();
        assert!(back.factors.is_empty());
    }

    #[test]
    fn text_report_uses_four_decimals() {
        let rep = Rank1Report {
            lambda: 3.115512345,
            factors: vec![vec![0.92641, -0.37639]; 3],
            residual: 3.93991,
            ubd: Some(3.11552),
            aprxerr: Some(7.3e-9),
            rho: 0.62031,
            certified: true,
            pencil_rank: 1,
            method: Method::SdpRefine,
            solver: SolverStats {
                iterations: 11,
                gap: 1e-9,
                seconds: 0.21,
            },
        };
        let text = report_to_text(&rep);
        assert!(text.contains("lambda      = 3.1155"));
        assert!(text.contains("(0.9264, -0.3764)"));
        assert!(text.contains("rho         = 0.6203"));
    }
}
