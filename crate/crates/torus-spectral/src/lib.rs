//! Exact Fourier-side calculus for linear differential operators with
//! trigonometric-polynomial coefficients on the 2-torus.
//!
//! Everything is computed over the Gaussian rationals: coefficients of formal
//! trigonometric series are exact, operator application is exact, and the
//! certification routines (integer zero detection, irreducibility, real-root
//! isolation) never round. Floating point appears only in explicitly labeled
//! heuristic fits and diagnostic reports.
//!
//! The main entry points:
//!
//! - [`series::TrigSeries`]: sparse formal series `sum u_k e^{i k.x}` over
//!   `Z^2` with a tracked completeness region,
//! - [`operator::TorusOperator`]: operators `sum T_a(x) D^a` in both the
//!   coefficient form and the frequency form `sum e^{i n.x} P_n(D)`,
//! - [`mizohata`]: the periodic Mizohata equation `(d/dx1 + i sin x1 d/dx2) u = f`,
//!   solved coefficientwise by an exact three-term recurrence, plus trace
//!   reconstruction for the homogeneous and general problems,
//! - [`hypo`]: certified hypoellipticity decisions for homogeneous constant
//!   coefficient symbols via rational-root and irreducibility analysis, and
//!   empirical lower-bound exponents from exact dyadic shell scans,
//! - [`sections`]: the distributive lattice of growth envelopes (polynomial,
//!   exponential, and factorial scales) with exact pointwise evaluation.
//!
//! Each capability has a runnable demo under `examples/`:
//!
//! ```text
//! cargo run --example solve_mizohata
//! cargo run --example reconstruct_traces
//! cargo run --example operator_apply
//! cargo run --example hypoellipticity_table
//! cargo run --example pell_shell_scan
//! cargo run --example growth_classification
//! cargo run --example section_lattice
//! ```
//!
//! The same operations are exposed by the `torus-spectral` binary; see the
//! [`cli`] module and `docs/formats.md` for file formats.

pub mod cli;
pub mod error;
pub mod format;
pub mod growth;
pub mod hypo;
pub mod lattice;
pub mod linalg;
pub mod mizohata;
pub mod numeric;
pub mod operator;
pub mod rational;
pub mod sections;
pub mod series;
pub mod symbol;

pub use error::Error;
pub use lattice::{Domain, LatticeBox, LatticeIndex};
pub use rational::GaussianRational;
pub use series::TrigSeries;
