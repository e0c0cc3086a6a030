//! Statistical verification: Kolmogorov-Smirnov tests, histogram checks,
//! reproducible parallel draws and the named verification suites.

pub mod draw;
pub mod histogram;
pub mod ks;
pub mod report;
pub mod suites;

pub use draw::{draw_samples, draw_spectra, par_draw, sample_spectrum, Variants};
pub use histogram::{histogram_vs_density, BinCheck};
pub use ks::{kolmogorov_q, ks_one_sample, ks_two_sample, KsResult};
pub use report::{CheckKind, Comparison, SampleDump, SuiteOutcome, SuiteReport};
pub use suites::SuiteName;
