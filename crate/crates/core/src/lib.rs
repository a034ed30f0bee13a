//! Exact-arithmetic toolkit for tridiagonal systems of q-Serre type.
//!
//! Everything here is computed over the rationals with arbitrary precision:
//! no floating point, no tolerances. The crate provides
//!
//! - [`Rational`], [`QContext`], [`Polynomial`]: the exact scalar substrate,
//!   q-integers and q-factorials;
//! - [`Matrix`] and [`Subspace`]: dense exact linear algebra with a canonical
//!   subspace calculus (sum, intersection, invariance, generated algebras);
//! - [`ParallelSystem`] and its verification machinery: primitive idempotents,
//!   band and irreducibility axioms, split sequences and trace identities;
//! - split decompositions and the ladder-map cross-check of the split sequence;
//! - the t-linear perturbation engine built on the K map, with per-lemma
//!   structural reports;
//! - the Drinfel'd polynomial and the scan that compares its prediction with
//!   a brute-force irreducibility check, for every rational t you ask about.

pub mod algebra;
pub mod drinfeld;
pub mod error;
pub mod io;
pub mod matrix;
pub mod perturb;
pub mod poly;
pub mod scalar;
pub mod seeds;
pub mod split;
pub mod subspace;
pub mod system;

pub use algebra::{generated_algebra_dim, invariant_subspace_witness};
pub use drinfeld::{check_ccond_identity, drinfeld_poly, DrinfeldPolynomial};
pub use error::{Error, Result};
pub use io::{ParameterArrayFile, ScanRow, SystemFile};
pub use matrix::{mat_poly_eval, Matrix};
pub use perturb::{
    k_map, perturb, scan, theorem_verdict, verify_k_relations, PerturbationLemmaReport,
    PerturbedSystem, TheoremVerdict,
};
pub use poly::Polynomial;
pub use scalar::{QContext, Rational};
pub use seeds::{build_seed, seed_parameter_array, SEED_NAMES};
pub use split::{ladder_eigenvalue, split_decomposition, verify_ladder_inclusions, verify_split};
pub use subspace::{maps_into, Subspace};
pub use system::{
    check_polysum, eta_tau_polys, find_isomorphism, from_parameter_array_thin,
    geometric_eigenvalues, is_qserre_spectrum, primitive_idempotents, qserre_residuals,
    trace_identities, tridiagonal_relation_residuals, AxiomReport, EtaTau, FailingAxiom,
    ParameterArray, ParallelSystem, TraceIdentityReport,
};
