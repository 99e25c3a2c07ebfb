//! Semi-classical eigenvalue bounds for `H = -ω Δ + V(r)` with the Hellmann
//! potential `V(r) = -A/r + B e^(-Cr)/r`, and a Numerov radial eigensolver
//! to check them.
//!
//! * [`model`]: the potential, its transformation relative to `-1/r`, the
//!   scale reduction and the Coulomb sandwich.
//! * [`envelope`]: the bound `min_r { ω (n+ℓ)²/r² + V(r) }` and its tangent
//!   construction. Lower bounds for `B > 0`, upper bounds for `B < 0`.
//! * [`oracle`]: the independent eigensolver.
//! * [`curves`]: `B` sweeps and the parametric coupling curve `{v, E(v)}`.
//! * [`output`]: CSV/JSON emitters used by the `hellmann` binary.

pub mod cli;
pub mod curves;
pub mod envelope;
pub mod error;
pub mod minimize;
pub mod model;
pub mod oracle;
pub mod output;
pub mod par;

pub use envelope::{envelope_energy, BoundResult};
pub use error::{Error, Result};
pub use model::{BoundDirection, Convexity, HellmannParams, QuantumNumbers};
pub use oracle::{solve, solve_eigenvalue, verify_bound, EigenSolution, RadialGrid};
pub use par::Execution;
