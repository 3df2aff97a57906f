//! Surface-kernel map computations for finite group actions on surfaces.
//!
//! Given a finite group `G`, an orbifold signature `(g0; m1, ..., mr)`, and a
//! surface-kernel map `phi` (encoded as a generating vector of images in `G`),
//! this crate computes:
//!
//! * a minimal Schreier transversal for the kernel subgroup,
//! * the Reidemeister–Schreier presentation of the kernel surface group and
//!   its Tietze simplification down to `2g` generators and a single relation,
//! * the induced action of `G` on the kernel's first homology as integer
//!   matrices,
//! * adapted-homology-basis classification and block-structure checks,
//! * equivalence moves on generating vectors (the classical automorphism
//!   moves on hyperbolic handle generators and elliptic tails) with orbit
//!   enumeration.
//!
//! The crate works entirely with exact integer arithmetic; everything is
//! deterministic, so repeated runs produce identical output.

pub mod group;
pub mod homology;
pub mod kernel;
pub mod moves;
pub mod schreier;
pub mod word;

pub use group::{Elem, FiniteGroup, GroupError};
pub use homology::{
    AdaptedCase, AdaptedReport, HomologyAction, HomologyError, IntMatrix,
};
pub use kernel::{
    kernel_genus, EvalError, GeneratingVector, GenusError, ValidateError, ValidationReport,
};
pub use moves::{HarveyOp, MoveError, OpResult, OrbitResult};
pub use schreier::{
    KernelGen, KernelPresentation, KernelWord, Relation, RelationSource, SchreierError,
    SchreierTransversal, TransversalError,
};
pub use word::{GenSymbol, OrbifoldSignature, SignatureError, Substitution, Word, WordError};
