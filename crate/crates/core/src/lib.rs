//! Optimal identification of an unknown bipartite pure state with one of two
//! Haar-random reference states, by global and by LOCC measurements.
//!
//! - [`tensor`]: dense complex matrices, Kronecker products, permutation
//!   operators, partial traces, the Hermitian eigensolver and Haar sampling.
//! - [`sectors`]: symmetric / antisymmetric / mixed projectors on the triple space.
//! - [`global`]: the `Δ` operator, optimal global POVM and closed-form optimum.
//! - [`locc`]: the separable POVM assembled from Alice- and Bob-local projectors.
//! - [`protocol`]: Monte Carlo simulation of both measurement schemes.
//! - [`cli`]: the `locc-ident` command-line harness.

pub mod cli;
pub mod error;
pub mod global;
pub mod locc;
pub mod protocol;
pub mod sectors;
pub mod tensor;

pub use error::{Error, Result};
pub use global::{optimal_global_povm, p_max_closed_form, GlobalSolution, PovmPair, PriorPair};
pub use locc::{build_e1_locc, LocalFamily, LoccPovm, Party};
pub use protocol::{monte_carlo, Mode, RunSummary};
pub use sectors::SymmetrySectors;
pub use tensor::{ComplexMatrix, HilbertLayout, PureState};
