//! Collapsibility of finite simplicial complexes.
//!
//! Faces and complexes live in [`complex`], collapse certificates and the
//! deciders in [`collapse`], discrete Morse matchings in [`morse`], integer
//! homology in [`homology`]. The gadget library and the 3-SAT reduction are in
//! [`gadgets`] and [`reduction`]; [`format`] holds the text formats.

pub mod cnf;
pub mod collapse;
pub mod complex;
pub mod error;
pub mod format;
pub mod gadgets;
pub mod grid;
pub mod homology;
pub mod morse;
pub mod reduction;
pub mod search;
pub mod standard;
mod state;

pub use collapse::{CollapseCertificate, CollapseStep, ConstraintComplex, DecisionOutcome};
pub use complex::{Face, LabeledComplex, SimplicialComplex, VertexId};
pub use error::Error;
pub use homology::{HomologyProfile, SmithForm};

/// Exact integer used by default for Smith normal forms.
pub type ExactInt = num_bigint::BigInt;
/// Smith form over arbitrary-precision integers.
pub type BigSmithForm = SmithForm<ExactInt>;
/// Smith form over machine integers; fine for small matrices, may overflow.
pub type SmithForm64 = SmithForm<i64>;

pub type Result<T, E = Error> = std::result::Result<T, E>;
