//! banachlab: a numerical laboratory for the geometry of finite-dimensional
//! Banach spaces.
//!
//! The crate computes, with certified-or-honestly-heuristic interval bounds:
//!
//! - operator norms and numerical radii `v(T)` over concrete norm families
//!   (`l_p`, polyhedral, weighted Euclidean), real or complex;
//! - the numerical index `n(X) = inf { v(T) : |T| = 1 }` by min-max search
//!   over operator space, with a certified upper bound and a witness;
//! - the gap opening `Q(Y, Z)` between subspace unit spheres and upper bounds
//!   for the operator opening `r(Y, Z)` from explicit invertible candidates;
//! - state-pair correction: from a near-state pair with small defect to an
//!   exact state pair within the classical `eps`-distance promise;
//! - convergence experiments tracking how the numerical index moves under
//!   shrinking subspace perturbations, against computable sandwich envelopes.
//!
//! Start with the runnable examples (`cargo run --example space_tour`) or the
//! `banachlab` binary (`banachlab verify-all --seed 7`).

pub mod bpb;
pub mod cert;
pub mod cli;
pub mod error;
pub mod index;
pub mod io;
pub mod lab;
pub mod operator;
pub mod space;
pub mod subspace;
pub mod verify;

mod lp;
mod optimize;
mod polytope;
mod rng;

pub use bpb::{bpb_correct, bpb_correct_with, defect, BpbOptions, BpbResult, SearchStatus};
pub use cert::{BoundMethod, BoundsCertificate, Interval, SearchBudget, Tolerances, Witness};
pub use error::{Error, Result};
pub use index::{
    index_ratio, index_witness_check, numerical_index, numerical_index_with_starts, IndexEstimate,
};
pub use lab::{
    condition_bound_check, conjugation_transport_check, radius_sequence_limit_check,
    run_convergence_experiment, sandwich_bounds, sequence_ultralimit, ConditionReport,
    EpsilonEta, ExperimentReport, ExperimentStep, FamilyKind, PerturbationFamily,
    SequenceLimitReport, SequenceLimitRow, TransportReport,
};
pub use operator::{
    conjugate_operator, matrix_operator_norm, numerical_radius, numerical_range_samples,
    operator_norm, radius_dense_oracle, radius_dense_oracle_batch, radius_lipschitz_check,
    OperatorRep, RadiusLipschitzReport,
};
pub use space::{
    cvec, pairing, rmat, rvec, Matrix, NormKind, NormedSpace, NormingFace, ScalarField, StatePair,
    Vector, DEFAULT_FACE_CAP,
};
pub use subspace::{
    basis_exchange_candidate, dist_to_sphere, gap_opening, operator_opening,
    operator_opening_upper, perturb_subspace, rotation_candidate, Domain, InvertibleMap,
    OpeningBound, Subspace, SubspaceDomain, VertexPairs, MEMBERSHIP_TOL,
};
