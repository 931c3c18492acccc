//! Bound states of the radial Schrodinger equation with explicit control of
//! the origin boundary condition u(0) = 0.
//!
//! Reducing the three-dimensional problem through R(r) = u(r)/r is only
//! equivalent to the full equation when u vanishes at the origin; otherwise
//! the Laplacian leaves behind a distributional term proportional to
//! u(0)·δ(r). This crate makes that condition an explicit, switchable rule
//! and provides the tooling to see what changes when it is dropped:
//!
//! - [`origin`] classifies the indicial behavior at r = 0 and builds series
//!   starts for either the strict rule ([`BoundaryMode::U0Strict`]) or a
//!   square-integrability-only rule ([`BoundaryMode::L2Only`]) that admits a
//!   subdominant branch;
//! - [`integrator`] propagates the radial equation with a fourth-order
//!   three-term recurrence on uniform or logarithmic meshes;
//! - [`eigensolver`] brackets states by node count and converges eigenvalues
//!   by matching outward and inward sweeps;
//! - [`delta`] measures the leftover boundary term of a solution in weak
//!   form, the quantitative version of "solves the full equation";
//! - [`oracle`] cross-checks spectra through an independent
//!   finite-difference + matrix-inertia route sharing no solver code;
//! - [`potentials`] and [`grid`] supply the model space: closed-form and
//!   tabulated potentials on uniform or log meshes.
//!
//! With the relaxed rule, attractive-looking "anomalous" bound states appear
//! for potentials that have none under the strict rule; the defect check
//! flags every such state as carrying a nonzero boundary term.

pub mod delta;
pub mod eigensolver;
pub mod error;
pub mod grid;
pub mod integrator;
pub mod oracle;
pub mod origin;
pub mod par;
pub mod potentials;
pub mod quad;

pub use delta::{Compatibility, DeltaResidualReport, TrialFunction};
pub use eigensolver::EigenvalueResult;
pub use error::{Result, SolverError};
pub use grid::{GridScheme, RadialGrid};
pub use integrator::{RadialProblem, RadialSolution};
pub use origin::{BoundaryMode, Channel, Classification, IndicialReport};
pub use potentials::{OriginCoefficients, PotentialSpec, TailKind};
