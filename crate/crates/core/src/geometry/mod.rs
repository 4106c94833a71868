//! Exact polyhedral computations: facet enumeration, verification of
//! H-representations and LP-based membership with certificates.

pub mod dd;
pub mod inequality;
pub mod linalg;

pub use dd::{
    facet_enumeration, facet_enumeration_01, facet_enumeration_with, DdOptions, DdStats,
    HRepresentation, InsertionOrder, DEFAULT_RAY_CAP,
};
pub use inequality::{canonicalize, parse_inequalities, write_inequalities, Inequality, InequalityFile};
pub mod lp;
pub mod membership;
pub mod verify;

pub use membership::{membership, MembershipCertificate};
pub use verify::{verify_h_representation, Failure, VerifyReport};
