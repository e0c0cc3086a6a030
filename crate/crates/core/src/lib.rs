//! Spiked Wishart β-ensembles.
//!
//! Three exact samplers (bidiagonal chi model, secular-equation rank-one
//! update, random bidiagonal pencil), the contour-integral eigenvalue
//! density, Painlevé II / Lax-pair edge laws, Airy-kernel soft-edge
//! densities and a Kolmogorov-Smirnov harness that checks them against
//! each other.

pub mod analytic;
pub mod error;
pub mod harness;
pub mod interp;
pub mod io;
pub mod linalg;
pub mod painleve;
pub mod quad;
pub mod sampling;
pub mod softedge;

pub use error::{Error, Result};
