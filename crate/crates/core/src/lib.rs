//! Equilibrium and Gibbs quantities for the Ising model (and general
//! nearest-neighbor interactions) on free-group Cayley trees, together with a
//! permutation-model simulator that checks them on finite random graphs.
//!
//! * [`ising`]: the Markov-chain family `μ_t`, energy, f-invariant, pressures.
//! * [`bp`]: fixed points of the tree recursion and the two thresholds.
//! * [`nn_markov`]: q-state completely homogeneous chains and a generic BP solver.
//! * [`thresholds`]: inequalities comparing the free-boundary state with `δ_+`.
//! * [`sofic`]: random homomorphisms `F_r → Sym(n)`, exact enumeration,
//!   annealed counts, Glauber dynamics.

pub mod bp;
pub mod error;
pub mod ising;
pub mod nn_markov;
pub mod numeric;
pub mod sofic;
pub mod thresholds;

pub use error::{Error, Result};
pub use ising::{build_mu_t, IsingChain, IsingParams, PressureReport};

/// Library version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
