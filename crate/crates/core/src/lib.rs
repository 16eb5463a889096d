//! Exact invariants of orientable Seifert fibered spaces and Sol torus
//! bundles, and finite censuses of the geometric manifolds that a closed
//! 3-manifold with given invariant budgets could map onto with degree one.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`); nothing in an
//! invariant computation goes through floating point.
//!
//! * [`seifert`] normalizes Seifert data and evaluates e, χ, SV, torsion.
//! * [`homology`] is the independent Smith-normal-form oracle.
//! * [`torus_bundle`] handles Anosov monodromies and SL(2,Z) conjugacy.
//! * [`domination`] applies the degree-one obstructions and enumerates censuses.
//! * [`json`] holds the wire formats shared with the command-line tool.

pub mod domination;
mod error;
pub mod homology;
pub mod json;
pub mod seifert;
pub mod torus_bundle;

pub use domination::{
    check_necessary_conditions, enumerate_all, enumerate_case_a, enumerate_case_b,
    enumerate_case_c, CaseTag, Census, CensusRecord, CheckOutcome, DominationBudget, SearchCutoffs,
    Target, Verdict,
};
pub use error::{Error, Result};
pub use homology::{H1Summary, IntegerMatrix};
pub use seifert::{
    enumerate_flat_bases, FlatBase, GeometryClass, HorizontalSurfaceData, InvariantSummary,
    SeifertData, SeifertDataRaw,
};
pub use torus_bundle::{AnosovMatrix, Mat2, ReductionCertificate};
