//! Best rank-1 approximations of real tensors through semidefinite (moment)
//! relaxations.
//!
//! A symmetric tensor's best rank-1 approximation reduces to maximizing
//! `|f(x)|` over the unit sphere, where `f` is the induced homogeneous form;
//! a nonsymmetric tensor's reduces to maximizing the multilinear form over a
//! product of spheres. This crate builds the corresponding moment
//! relaxations (even orders directly, odd orders through a one-variable
//! lift, nonsymmetric tensors through the squared last-mode-slice form),
//! solves them with an embedded primal-dual interior-point method, extracts
//! candidate maximizers from the solved pencils, certifies global optimality
//! through the pencil's numeric rank, and polishes with projected-gradient
//! ascent. Higher-order power methods (SHOPM/HOPM) with truncated-HOSVD
//! starts are included as baselines.
//!
//! Entry points:
//! - [`pipeline::approx_auto`] for one tensor in, one [`pipeline::Rank1Report`] out;
//! - [`pipeline::compare_methods`] for the relaxation-vs-power-method protocol;
//! - [`tensor::families::generate`] for the structured test tensors;
//! - [`io`] for the `.tns` text format and report serialization.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod error;
pub mod extract;
pub mod io;
pub mod linalg;
pub mod moment;
pub mod pipeline;
pub mod refine;
pub mod rng;
pub mod sdp;
pub mod tensor;

pub use error::{Error, Result};
pub use pipeline::{approx_auto, approx_nonsym, approx_sym_even, approx_sym_odd, compare_methods};
pub use pipeline::{ApproxConfig, Method, Rank1Report, SolverStats};
pub use tensor::{GenTensor, Rank1Tensor, SymTensor, Tensor};
