//! flatblock: exact geodesics, finite blocking and illumination on translation
//! surfaces presented as glued convex polygons over Q(sqrt(d)).

pub mod error;
pub mod exactnum;
pub(crate) mod lattice;
pub mod surface;
pub mod tracer;
pub mod holonomy;
pub mod autos;
pub mod blocking;

pub use error::{Error, Result};
