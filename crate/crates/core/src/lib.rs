//! Deformed and inverse-deformed coherent states on a truncated Fock
//! space.
//!
//! The crate constructs the coherent-state families attached to deformed
//! ladder operators a f(n̂) and to their operator inverses, together with
//! the dual families generated by the conjugate displacement operators,
//! and evaluates their nonclassicality diagnostics:
//!
//! - [`fock`]: truncated Fock vectors, one-off-diagonal shift operators,
//!   inner products, commutators and oscillator spectra;
//! - [`nonlinearity`]: the deformation-function registry, log-domain
//!   factorial products and convergence-radius probing;
//! - [`states`]: constructors for every state family, with domain checks,
//!   divergence detection and eigenvalue residuals;
//! - [`observables`]: photon distribution, Mandel Q and quadrature
//!   variances (vacuum variance 1/2);
//! - [`identity`]: resolution-of-identity moment targets and quadrature
//!   verification of candidate weight functions;
//! - [`verify`]: named invariant suites reused by the CLI.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything here can be evaluated concurrently across
//! parameter grids without synchronization.

pub mod error;
pub mod fock;
pub mod identity;
pub mod nonlinearity;
pub mod observables;
pub mod quad;
pub mod special;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{
    apply, commutator_on_number_state, hamiltonian_operator, hamiltonian_spectrum, inner,
    FockVector, HamiltonianKind, Shift, ShiftOperator,
};
pub use nonlinearity::{
    radius_of_convergence, ConvergenceReport, NonlinearityFunction, RadiusMode, Verdict,
};
pub use observables::{mandel_q, photon_distribution, report, ObservableReport};
pub use states::{
    dual_inverse_bosonic, dual_inverse_state, eigen_residual, gp_su11, inverse_bosonic_eigenstate,
    inverse_operator_on_cs, inverse_state, nlcs, photon_added, photon_subtracted, standard_cs,
    su11_inverse, BuiltState, InverseOnCs, StateFamily, StateKind, Trunc,
};
