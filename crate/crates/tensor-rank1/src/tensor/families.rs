//! Structured tensor generators used in the numerical experiments, plus a
//! seeded Gaussian family.
//!
//! All formulas are written with 1-based indices `i_j` as usual in the
//! literature; storage is 0-based.

use super::{next_index, next_sorted_index, GenTensor, SymTensor, Tensor};
use crate::error::{Error, Result};
use crate::linalg::{sym_eigen, Mat};
use crate::rng::Rng;

/// Names of all built-in families, in the order they are documented.
pub const FAMILY_NAMES: &[&str] = &[
    "alt-reciprocal-3",
    "arctan-4",
    "log-alt-5",
    "motzkin-6",
    "sin-sym",
    "cos-nonsym-3",
    "arcsin-4",
    "exp-alt-5",
    "tan-nonsym",
    "biquadratic-3x3x9",
    "gaussian-random",
];

/// Builds the named tensor family.
///
/// `n` and `m` are required where the family leaves them free and must agree
/// with the family's fixed values otherwise. `seed` only matters for
/// `gaussian-random`.
pub fn generate(family: &str, n: Option<usize>, m: Option<usize>, seed: u64) -> Result<Tensor> {
    match family {
        "alt-reciprocal-3" => {
            let n = require_n(family, n)?;
            check_m(family, m, 3)?;
            Ok(Tensor::Sym(sym_from_fn(n, 3, |idx| {
                idx.iter().map(|&i| alt_recip(i + 1)).sum()
            })))
        }
        "arctan-4" => {
            let n = require_n(family, n)?;
            check_m(family, m, 4)?;
            Ok(Tensor::Sym(sym_from_fn(n, 4, |idx| {
                idx.iter()
                    .map(|&i| (sign(i + 1) * (i + 1) as f64 / n as f64).atan())
                    .sum()
            })))
        }
        "log-alt-5" => {
            let n = require_n(family, n)?;
            check_m(family, m, 5)?;
            Ok(Tensor::Sym(sym_from_fn(n, 5, |idx| {
                idx.iter()
                    .map(|&i| sign(i + 1) * ((i + 1) as f64).ln())
                    .sum()
            })))
        }
        "motzkin-6" => {
            check_n(family, n, 3)?;
            check_m(family, m, 6)?;
            Ok(Tensor::Sym(motzkin()))
        }
        "sin-sym" => {
            let n = require_n(family, n)?;
            let m = m.ok_or_else(|| missing(family, "m"))?;
            Ok(Tensor::Sym(sym_from_fn(n, m, |idx| {
                (idx.iter().map(|&i| i + 1).sum::<usize>() as f64).sin()
            })))
        }
        "cos-nonsym-3" => {
            let n = require_n(family, n)?;
            check_m(family, m, 3)?;
            Ok(Tensor::Gen(GenTensor::from_fn(&[n, n, n], |idx| {
                ((idx[0] + 1) as f64 + 2.0 * (idx[1] + 1) as f64 + 3.0 * (idx[2] + 1) as f64).cos()
            })))
        }
        "arcsin-4" => {
            let n = require_n(family, n)?;
            check_m(family, m, 4)?;
            Ok(Tensor::Gen(GenTensor::from_fn(&[n, n, n, n], |idx| {
                // Entry is zero unless i_j >= j for every mode (1-based).
                for (j, &i) in idx.iter().enumerate() {
                    if i + 1 < j + 1 {
                        return 0.0;
                    }
                }
                idx.iter()
                    .enumerate()
                    .map(|(j, &i)| (sign(i + 1) * (j + 1) as f64 / (i + 1) as f64).asin())
                    .sum()
            })))
        }
        "exp-alt-5" => {
            let n = require_n(family, n)?;
            check_m(family, m, 5)?;
            Ok(Tensor::Gen(GenTensor::from_fn(&[n; 5], |idx| {
                idx.iter()
                    .enumerate()
                    .map(|(j, &i)| {
                        let sgn = if j % 2 == 0 { 1.0 } else { -1.0 };
                        sgn * (j + 1) as f64 * (-((i + 1) as f64)).exp()
                    })
                    .sum()
            })))
        }
        "tan-nonsym" => {
            let n = require_n(family, n)?;
            let m = m.ok_or_else(|| missing(family, "m"))?;
            Ok(Tensor::Gen(GenTensor::from_fn(&vec![n; m], |idx| {
                idx.iter()
                    .enumerate()
                    .map(|(j, &i)| {
                        let sgn = if j % 2 == 0 { 1.0 } else { -1.0 };
                        sgn * (i + 1) as f64 / (j + 1) as f64
                    })
                    .sum::<f64>()
                    .tan()
            })))
        }
        "biquadratic-3x3x9" => {
            if let Some(n) = n {
                if n != 3 {
                    return Err(Error::FamilySize {
                        family: family.to_string(),
                        reason: format!("dimensions are fixed at 3x3x9, got n={n}"),
                    });
                }
            }
            check_m(family, m, 3)?;
            Ok(Tensor::Gen(biquadratic()))
        }
        "gaussian-random" => {
            let n = require_n(family, n)?;
            let m = m.ok_or_else(|| missing(family, "m"))?;
            Ok(Tensor::Sym(gaussian_sym(n, m, seed)))
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

fn sign(i: usize) -> f64 {
    if i.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn alt_recip(i: usize) -> f64 {
    sign(i) / i as f64
}

fn missing(family: &str, what: &str) -> Error {
    Error::FamilySize {
        family: family.to_string(),
        reason: format!("parameter {what} is required"),
    }
}

fn require_n(family: &str, n: Option<usize>) -> Result<usize> {
    n.ok_or_else(|| missing(family, "n"))
}

fn check_m(family: &str, m: Option<usize>, fixed: usize) -> Result<()> {
    if let Some(m) = m {
        if m != fixed {
            return Err(Error::FamilySize {
                family: family.to_string(),
                reason: format!("order is fixed at {fixed}, got m={m}"),
            });
        }
    }
    Ok(())
}

fn check_n(family: &str, n: Option<usize>, fixed: usize) -> Result<()> {
    if let Some(n) = n {
        if n != fixed {
            return Err(Error::FamilySize {
                family: family.to_string(),
                reason: format!("dimension is fixed at {fixed}, got n={n}"),
            });
        }
    }
    Ok(())
}

/// Fills a symmetric tensor by evaluating `f` on every sorted multi-index.
fn sym_from_fn(n: usize, m: usize, mut f: impl FnMut(&[usize]) -> f64) -> SymTensor {
    let mut t = SymTensor::new(n, m);
    let mut idx = vec![0usize; m];
    loop {
        t.set(&idx, f(&idx)).unwrap();
        if !next_sorted_index(&mut idx, n) {
            break;
        }
    }
    t
}

/// Symmetric tensor with one standard normal draw per orbit.
pub fn gaussian_sym(n: usize, m: usize, seed: u64) -> SymTensor {
    let mut rng = Rng::new(seed);
    sym_from_fn(n, m, |_| rng_normal(&mut rng))
}

/// Dense tensor with one standard normal draw per entry.
pub fn gaussian_gen(dims: &[usize], seed: u64) -> GenTensor {
    let mut rng = Rng::new(seed);
    let mut t = GenTensor::zeros(dims);
    let mut idx = vec![0usize; dims.len()];
    loop {
        let v = rng_normal(&mut rng);
        t.set(&idx, v).unwrap();
        if !next_index(&mut idx, dims) {
            break;
        }
    }
    t
}

fn rng_normal(rng: &mut Rng) -> f64 {
    rng.normal()
}

/// The order-6 tensor over R^3 whose form is `2 ||x||^6 - M(x)` with `M`
/// the Motzkin polynomial.
fn motzkin() -> SymTensor {
    let mut t = SymTensor::new(3, 6);
    let entries: [(&[usize; 6], f64); 10] = [
        (&[0, 0, 0, 0, 0, 0], 2.0),
        (&[0, 0, 0, 0, 1, 1], 1.0 / 3.0),
        (&[0, 0, 0, 0, 2, 2], 2.0 / 5.0),
        (&[0, 0, 1, 1, 1, 1], 1.0 / 3.0),
        (&[0, 0, 1, 1, 2, 2], 1.0 / 6.0),
        (&[0, 0, 2, 2, 2, 2], 2.0 / 5.0),
        (&[1, 1, 1, 1, 1, 1], 2.0),
        (&[1, 1, 1, 1, 2, 2], 2.0 / 5.0),
        (&[1, 1, 2, 2, 2, 2], 2.0 / 5.0),
        (&[2, 2, 2, 2, 2, 2], 1.0),
    ];
    for (idx, v) in entries {
        t.set(idx, v).unwrap();
    }
    t
}

/// The 9x9 coupling matrix behind the 3x3x9 biquadratic example.
pub fn biquadratic_b_matrix() -> Mat {
    let h = -0.5;
    let rows: [[f64; 9]; 9] = [
        [1.0, 0.0, 0.0, 0.0, h, 0.0, 0.0, 0.0, h],
        [0.0, 2.0, 0.0, h, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, h, 0.0, 0.0],
        [0.0, h, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [h, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, h],
        [0.0, 0.0, 0.0, 0.0, 0.0, 2.0, 0.0, h, 0.0],
        [0.0, 0.0, h, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, h, 0.0, 0.0, 0.0],
        [h, 0.0, 0.0, 0.0, h, 0.0, 0.0, 0.0, 1.0],
    ];
    let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
    Mat::from_rows(&refs)
}

/// A 3x3x9 tensor whose squared-slice form is
/// `(x ⊗ y)ᵀ (3 I_9 - B) (x ⊗ y)`.
///
/// Built from an eigendecomposition of `3I - B`; any eigenbasis gives the
/// same squared form, which is the quantity the pipeline consumes.
fn biquadratic() -> GenTensor {
    let b = biquadratic_b_matrix();
    let mut a = Mat::identity(9);
    a.scale(3.0);
    for i in 0..9 {
        for j in 0..9 {
            a[(i, j)] -= b[(i, j)];
        }
    }
    let (vals, vecs) = sym_eigen(&a).expect("9x9 eigendecomposition");
    let mut t = GenTensor::zeros(&[3, 3, 9]);
    for k in 0..9 {
        let lam = vals[k].max(0.0).sqrt();
        for i in 0..3 {
            for j in 0..3 {
                t.set(&[i, j, k], lam * vecs[(3 * i + j, k)]).unwrap();
            }
        }
    }
    t
}
