//! Standard-form semidefinite programming: conversion of moment relaxations
//! to `max ⟨C,X⟩ s.t. ⟨A_i,X⟩ = b_i, X ⪰ 0`, an embedded primal-dual
//! interior-point solver, certified bounds, and an SDPA-sparse debug dump.

mod solver;

pub use solver::{solve, SdpSolution, SdpStatus, SolveOptions};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::moment::{MomentSdp, SdpKind};

/// Sparse symmetric matrix stored as upper-triangle entries `(p, q, v)`,
/// `p <= q`, where `v` is the full entry value (mirrored below the
/// diagonal).
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSym {
    pub entries: Vec<(usize, usize, f64)>,
}

impl SparseSym {
    pub fn new(mut entries: Vec<(usize, usize, f64)>) -> Self {
        for e in &mut entries {
            if e.0 > e.1 {
                std::mem::swap(&mut e.0, &mut e.1);
            }
        }
        SparseSym { entries }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// `⟨A, X⟩` for symmetric dense `X`.
    pub fn inner(&self, x: &Mat) -> f64 {
        let mut s = 0.0;
        for &(p, q, v) in &self.entries {
            s += if p == q {
                v * x[(p, p)]
            } else {
                2.0 * v * x[(p, q)]
            };
        }
        s
    }

    /// `out += scale * A` on both triangles.
    pub fn add_scaled_to(&self, out: &mut Mat, scale: f64) {
        for &(p, q, v) in &self.entries {
            out[(p, q)] += scale * v;
            if p != q {
                out[(q, p)] += scale * v;
            }
        }
    }

    pub fn to_dense(&self, n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        self.add_scaled_to(&mut m, 1.0);
        m
    }

    pub fn frob_norm(&self) -> f64 {
        let mut s = 0.0;
        for &(p, q, v) in &self.entries {
            s += if p == q { v * v } else { 2.0 * v * v };
        }
        s.sqrt()
    }

    /// `⟨A, B⟩` for two sparse symmetric matrices.
    pub fn inner_sparse(&self, other: &SparseSym) -> f64 {
        // Iterate the smaller, look up in the larger.
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let map: std::collections::HashMap<(usize, usize), f64> =
            large.entries.iter().map(|&(p, q, v)| ((p, q), v)).collect();
        let mut s = 0.0;
        for &(p, q, v) in &small.entries {
            if let Some(&w) = map.get(&(p, q)) {
                s += if p == q { v * w } else { 2.0 * v * w };
            }
        }
        s
    }
}

/// A semidefinite program in primal standard form
/// `max ⟨C,X⟩ s.t. ⟨A_i,X⟩ = b_i (i = 1..M), X ⪰ 0`.
#[derive(Debug, Clone)]
pub struct StdSdp {
    pub n: usize,
    pub c: SparseSym,
    pub constraints: Vec<(SparseSym, f64)>,
}

impl StdSdp {
    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }
}

/// Converts a moment relaxation to standard form.
///
/// The matrix variable is the pencil itself. Positions carrying the same
/// relaxation variable are chained to the group's first position by
/// equality constraints; the normalization functional becomes one equality
/// with value 1; the objective vector is spread evenly over each group's
/// positions so `⟨C, X⟩` equals the variable-form objective on feasible `X`.
/// Min-sense relaxations negate the objective, keeping the standard form a
/// maximization.
pub fn to_std(p: &MomentSdp) -> StdSdp {
    let n = p.pencil_size;
    let mut constraints: Vec<(SparseSym, f64)> = Vec::new();

    for group in &p.groups {
        let (p0, q0) = group[0];
        for &(pk, qk) in &group[1..] {
            // X_{p0,q0} = X_{pk,qk}: written against the full entries, an
            // off-diagonal position contributes twice, so weight by the
            // reciprocal of its multiplicity to equate raw entries.
            let w0 = if p0 == q0 { 1.0 } else { 0.5 };
            let wk = if pk == qk { 1.0 } else { 0.5 };
            constraints.push((SparseSym::new(vec![(p0, q0, w0), (pk, qk, -wk)]), 0.0));
        }
    }

    let spread = |coeffs: &[f64]| -> SparseSym {
        let mut entries = Vec::new();
        for (v, group) in p.groups.iter().enumerate() {
            let cv = coeffs[v];
            if cv == 0.0 {
                continue;
            }
            let full: f64 = group
                .iter()
                .map(|&(a, b)| if a == b { 1.0 } else { 2.0 })
                .sum();
            let val = cv / full;
            for &(a, b) in group {
                entries.push((a, b, val));
            }
        }
        SparseSym::new(entries)
    };

    constraints.push((spread(&p.normalization), 1.0));

    let mut c = spread(&p.objective);
    if p.kind == SdpKind::SymMin {
        for e in &mut c.entries {
            e.2 = -e.2;
        }
    }

    StdSdp { n, c, constraints }
}

/// Recovers the relaxation's variable vector from a solved pencil by
/// averaging the positions that carry each variable.
pub fn back_map(p: &MomentSdp, x: &Mat) -> Vec<f64> {
    p.groups
        .iter()
        .map(|group| {
            let mut sum = 0.0;
            let mut count = 0.0;
            for &(a, b) in group {
                if a == b {
                    sum += x[(a, a)];
                    count += 1.0;
                } else {
                    sum += 2.0 * x[(a, b)];
                    count += 2.0;
                }
            }
            sum / count
        })
        .collect()
}

/// Turns an optimal relaxation value into the valid upper bound on the
/// original problem:
/// `|f_max^sdp|` / `|f_min^sdp|` for the even symmetric relaxations,
/// `c(d) · f̃_max^sdp` for the odd lift, `sqrt(F_max^sdp)` for the
/// nonsymmetric squared form.
pub fn certify_bounds(sol: &SdpSolution, p: &MomentSdp) -> Result<f64> {
    if sol.status != SdpStatus::Optimal {
        return Err(Error::NotOptimal(format!(
            "cannot certify a bound from status {:?}",
            sol.status
        )));
    }
    let value = p.relaxation_value(sol.p_obj);
    Ok(match p.kind {
        SdpKind::SymMax | SdpKind::SymMin => value.abs(),
        SdpKind::OddLifted => p.odd_scale.expect("odd kind carries its scale") * value.max(0.0),
        SdpKind::Nonsym => value.max(0.0).sqrt(),
    })
}

/// Writes the program in SDPA sparse format (`.dat-s`):
/// `tr(F_i X) = b_i` constraints with objective matrix `F_0 = C`.
pub fn write_sdpa_sparse(sdp: &StdSdp) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let m = sdp.constraints.len();
    writeln!(out, "* standard-form SDP dump (one PSD block)").unwrap();
    writeln!(out, "{m} = mDIM").unwrap();
    writeln!(out, "1 = nBLOCK").unwrap();
    writeln!(out, "{} = bLOCKsTRUCT", sdp.n).unwrap();
    let bline: Vec<String> = sdp
        .constraints
        .iter()
        .map(|(_, b)| format!("{b:.17e}"))
        .collect();
    writeln!(out, "{}", bline.join(" ")).unwrap();
    let mut emit = |mat_no: usize, a: &SparseSym| {
        for &(p, q, v) in &a.entries {
            if v != 0.0 {
                writeln!(out, "{mat_no} 1 {} {} {v:.17e}", p + 1, q + 1).unwrap();
            }
        }
    };
    emit(0, &sdp.c);
    for (i, (a, _)) in sdp.constraints.iter().enumerate() {
        emit(i + 1, a);
    }
    out
}
