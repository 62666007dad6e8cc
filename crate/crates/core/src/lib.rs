//! Exact computations for pencils of quadrics with finite group actions.
//!
//! Scalars live in cyclotomic fields and are exact throughout. The modules are
//! layered: [`exactmath`] and [`linalg`] carry the arithmetic, [`groupaction`]
//! handles finite matrix groups, [`pencil`], [`curvetorsion`] and [`delpezzo`]
//! hold the geometry, and [`report`] chains them into a linearizability verdict.

pub mod curvetorsion;
pub mod delpezzo;
pub mod error;
pub mod exactmath;
pub mod groupaction;
pub mod linalg;
pub mod pencil;
pub mod perm;
pub mod report;

pub use error::{Error, Result};
pub use exactmath::{BinaryForm, CycNum, IntMatrix, ProjPoint, Rational};
pub use linalg::{Mat, Quadric, Subspace};
pub use perm::Permutation;
pub use report::{emit, parse_job, run_report, Format, JobSpec, Status, Verdict};
