//! Numerical laboratory for the Sherrington-Kirkpatrick spin glass.
//!
//! The crate is organized around the pipeline that turns a disorder sample
//! into a slow-mixing certificate:
//!
//! * [`disorder`] — coupling matrices `G`, their symmetrizations
//!   `A = (G + Gᵀ)/√N`, operator norms, and a binary on-disk format.
//! * [`model`] — the energy kernel `H(σ) = ⟨σ, Aσ⟩/2`, local fields, O(1)
//!   flip deltas with O(N) cache maintenance, and exact partition functions
//!   for small `N`.
//! * [`gapped`] — local-maximum search and `(γ, δ)`-gapped state
//!   verification.
//! * [`dynamics`] — single-site heat-bath Glauber chains and escape times
//!   from Hamming balls.
//! * [`spectral`] — exact transition matrices for small `N`, spectral gaps,
//!   mixing curves, conductance, and Cheeger checks.
//! * [`bounds`] — restricted operator norms, sphere energy gaps, and Gibbs
//!   bottleneck ratios, chained into a slow-mixing certificate.
//! * [`harness`] — declarative experiment configs, reproducible runs, and
//!   CSV/JSON/SVG reports.
//! * [`oracle`] — deliberately naive reference implementations used by the
//!   test suites; they share no code with the production modules.

pub mod bounds;
pub mod disorder;
pub mod dynamics;
pub mod error;
pub mod gapped;
pub mod harness;
pub mod model;
pub mod oracle;
pub mod seeds;
pub mod spectral;

pub use error::{Error, Result};

/// Version stamp recorded in run manifests; bump when output schemas change.
pub const ARTIFACT_VERSION: &str = "skglass/1";
