//! Certification of genuine tripartite entanglement in spin-1/2 systems.
//!
//! The crate provides four layers:
//!
//! - [`qubit`]: Pauli and permutation operators, the R-basis spanning the
//!   SU(2)-invariant operator space of three qubits, partial traces, and
//!   seeded samplers for product and biseparable states.
//! - [`geometry`]: invariant coordinates r_k = tr(rho R_k), the twirling
//!   projection, the separable/biseparable membership inequalities, and the
//!   tangent-plane witness family with its minimization. A negative witness
//!   minimum certifies genuine tripartite entanglement of arbitrary
//!   three-qubit states, invariant or not.
//! - [`measures`]: Wootters concurrence (general two-qubit algorithm and the
//!   closed form for the symmetric Dicke multiplet) plus Dicke-state
//!   constructors used as oracles.
//! - [`xxz`]: the open-chain XXZ Hamiltonian restricted to a fixed
//!   magnetization sector, ground states via dense diagonalization or
//!   restarted Lanczos with full reorthogonalization, and reduced density
//!   matrices of arbitrary site subsets.
//!
//! All operators and states are immutable after construction and every
//! operation is a pure function, so everything is safe to call from multiple
//! threads. XXZ ground states of the real Hamiltonian are stored real;
//! density matrices are nevertheless kept complex throughout, since the
//! witness machinery applies to arbitrary three-qubit states.

pub mod error;
pub mod geometry;
pub mod linalg;
pub mod measures;
pub mod qubit;
pub mod xxz;

pub use error::{Error, Result};
pub use geometry::{
    classify_coords, coords_of, invariant_matrix, is_biseparable_lobe, is_separable_invariant,
    twirl, witness_matrix, witness_minimize, witness_minimize_coords, witness_value,
    witness_value_from_coords, ClassLabel, Classification, InvariantCoords, Lobe, Orientation,
    WitnessSpec, DETECTION_THRESHOLD,
};
pub use linalg::{DenseOperator, StateVector};
pub use measures::{
    dicke_concurrence, dicke_pair_rdm, dicke_state, wootters_concurrence, DickeSpec,
};
pub use qubit::{
    build_r_basis, partial_trace, r_basis, reduce_pure_state, sample_biseparable,
    sample_density_matrix, sample_haar_state, sample_haar_su2, sample_product_state, swap_operator,
    Bipartition, DensityMatrix, RBasis,
};
pub use xxz::{
    apply_hamiltonian, build_basis, dense_hamiltonian, ground_state, ground_state_with,
    reduced_density, SectorBasis, SectorState, SolveDiagnostics, SolveOptions, XxzParams,
};
