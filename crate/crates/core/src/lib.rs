//! Gaussian continuous-variable quantum states: symplectic algebra, state
//! constructors, Gaussian operations and measurements, phase-space functions
//! and Rényi-2 correlation measures.
//!
//! Conventions: interleaved phase-space ordering `(q1, p1, ..., qN, pN)`,
//! `ħ = 1`, and covariance matrices in the doubled convention where the vacuum
//! has `σ = I`. Mode indices are zero-based. Entropies are in nats.

pub mod checks;
pub mod error;
pub mod linalg;
pub mod symplectic;

pub use error::{Error, Result};
pub use symplectic::{
    change_basis, euler_decompose, is_symplectic, omega, symplectic_form,
    symplectic_from_hamiltonian, symplectic_rank, symplectic_spectrum, williamson, Basis,
    EulerFactors, QuadraticHamiltonian, SymplecticForm, SymplecticMatrix, SymplecticSpectrum,
};
pub mod ops;
pub mod state;

pub use ops::{
    apply, apply_gate, condition, displace, embed, gate_hamiltonian, gate_matrix, seed, GateKind,
    GateSpec, MeasurementSeed, Quadrature, SeedKind,
};
pub use state::{
    coherent, local_reduction, random_state, random_state_with, squeezed, symplectic_invariants,
    thermal, three_mode_pure, two_mode_squeezed, two_mode_standard_form, vacuum, GaussianState,
    PurityClass, SymplecticInvariants, ThreeModeStandardForm, TwoModeStandardForm,
};
pub mod io;
pub mod measures;
pub mod phase_space;

pub use measures::{
    check_monogamy, check_strong_subadditivity, classical_correlations_j2, discord_d2,
    entanglement_e2_pure, entanglement_e2_two_mode, epr_parameter, is_separable,
    mutual_information_renyi2, renyi2_entropy, renyi_entropy, residual_tripartite_e2,
    squeezing_db, squeezing_from_db, three_mode_reduced_e2, von_neumann_entropy, Bipartition,
    Branch, Direction, MeasureResult, Optimizer,
};
pub use phase_space::{
    characteristic, marginal, quadrature_checks, wigner, wigner_grid, Grid2D, QuadratureReport,
    WignerGrid,
};
pub use io::{CircuitDocument, CircuitStep, MeasureReport, StateDocument};
