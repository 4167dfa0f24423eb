//! Exact computation of logarithmic derivation modules of central line
//! arrangements in the projective plane.

pub mod arrangement;
pub mod corpus;
pub mod coverage;
pub mod criteria;
pub mod derivation;
pub mod error;
pub mod exactalg;
pub mod multiarr;

pub use arrangement::{Arrangement, FlatPoint, LinearForm3, ProjPoint};
pub use error::{Error, Result};
pub use exactalg::{HomPoly, Rational};
