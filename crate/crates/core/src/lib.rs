//! Exact machinery for linear systems of plane cubic curves over finite
//! fields.
//!
//! The crate classifies ternary cubic forms over F_q by whether they stay
//! irreducible over the algebraic closure, scans 3-dimensional linear
//! systems for members that do not, and builds two kinds of verified
//! witnesses: systems whose unique geometrically reducible member is a
//! triple of conjugate lines, and systems with no such member at all.
//!
//! Module tour:
//!
//! * [`gf`] — finite-field contexts, the F_q ⊂ F_{q²}, F_{q³} ⊂ F_{q⁶}
//!   tower, Frobenius, subfield membership, normal elements.
//! * [`linalg`] — exact dense linear algebra over a field context.
//! * [`forms`] — linear/conic/cubic forms, points, products, coordinate
//!   substitution, restriction to lines, the text and positional codecs.
//! * [`classify`] — the verdict for a single cubic and the constructive
//!   census of geometrically reducible cubics.
//! * [`linsys`] — linear systems of cubics, member enumeration, the
//!   per-line kernel scan, and systems through a point orbit.
//! * [`construct`] — the two witness constructions and the exhaustive
//!   monomial-family check.
//! * [`search`] — seeded random search, the bundled witness table, base
//!   extension checks, census counts.
//! * [`report`] — JSON/CSV/text renderings of every outcome type.

pub mod classify;
pub mod construct;
pub mod error;
pub mod forms;
pub mod gf;
pub mod linalg;
pub mod linsys;
pub mod report;
mod rng;
pub mod search;

pub use error::{Error, Result};
