//! Dense complex linear algebra on small tensor-product spaces.

mod eig;
mod haar;
mod layout;
mod matrix;
mod ops;

pub use eig::{
    hermitian_eig, projector_onto_eigenspace, projector_where, SignSelector, SpectralDecomposition,
};
pub use haar::{haar_random_state, PureState};
pub use layout::HilbertLayout;
pub use matrix::{ComplexMatrix, C64};
pub use ops::{
    factor_permutation_indices, kron, partial_trace, permutation_operator, permutation_parity, permute_basis,
};

/// Tolerance used when checking Hermiticity before diagonalization.
pub const HERMITIAN_TOL: f64 = 1e-10;
