//! Exact densities: the contour-integral spiked eigenvalue density, the
//! one-spike hypergeometric function, interlaced joint/conditional densities
//! and the hard-edge gap probability.

pub mod contour;
pub mod densities;

pub use contour::{
    density_line_integral, hyp1f1_residue_beta2, hyp1f1_spiked, ln_hyp1f1_spiked, ln_prefactor, ln_spiked_pdf,
    spiked_pdf, ContourEstimate, ContourQuadrature,
};
pub use densities::{
    da_conditional_pdf, hard_edge_gap, joint_pdf, ln_da_conditional_pdf, ln_joint_pdf, write_density_grid,
};
