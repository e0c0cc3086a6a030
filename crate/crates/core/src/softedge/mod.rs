//! Airy functions, the Airy kernel and soft-edge one-point densities.

pub mod airy;
pub mod kernel;

pub use airy::{ai, airy, airy_tail, AiryEval};
pub use kernel::{
    airy_kernel, airy_kernel_diagonal, density_blind, density_species_y, goe_soft_density, BlindDensity,
    BlindTruncation,
};
