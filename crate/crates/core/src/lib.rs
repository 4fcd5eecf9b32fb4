//! Exact computations on the small Ree groups ²G₂(q), q = 3^(2n+1).
//!
//! The crate realizes ²G₂(q) inside SL₇(q) through explicit root-element
//! matrices, evaluates the closed-form counts of elements of each order,
//! builds prime graphs from spectra, and provides a brute-force census of
//! small matrix groups to check all of it against.
//!
//! Modules, bottom up:
//!
//! * [`gf`]: GF(p^k) arithmetic and the characteristic-3 twist `θ`.
//! * [`numbers`]: big-integer number theory and subgroup order tables.
//! * [`chevalley`]: G₂ roots, 7×7 root elements, the `σ` twist on words.
//! * [`ree`]: the generators α, β, γ, τ and the Sylow 3-subgroup calculus.
//! * [`nse`]: spectrum, element-order counts and divisibility checks.
//! * [`prime_graph`]: prime graphs and their components.
//! * [`census`]: closure and order census of explicit matrix groups.
//! * [`verify`]: the invariant battery run by `ree-kit verify`.

pub mod census;
pub mod chevalley;
mod error;
pub mod exec;
pub mod gf;
pub mod nse;
pub mod numbers;
pub mod prime_graph;
pub mod ree;
pub mod verify;

use std::collections::BTreeMap;

use num_bigint::BigUint;

pub use error::{Error, Result};
pub use exec::Execution;

/// Element order -> number of elements of that order.
pub type Histogram = BTreeMap<BigUint, BigUint>;
