use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Spectrum;
use crate::sampling::pencil::{sample_pencil_with, PencilSpikeScaling};
use crate::sampling::rng::{derive_seed, stream_rng, StreamRng};
use crate::sampling::secular::{sample_secular_pair_with, UpdateOptions, ZeroWeightScale};
use crate::sampling::{
    bidiagonal::sample_bidiagonal_spectrum, multispike::sample_multi_spike, Construction, SampleMeta, SpikeConfig,
    SpectrumSample,
};

/// `n` independent draws, draw `i` from stream `i` of the seed derived for
/// `tag`. The result is independent of the thread count.
pub fn par_draw<T, F>(seed: u64, tag: &str, n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut StreamRng) -> Result<T> + Sync,
{
    let s = derive_seed(seed, tag);
    (0..n).into_par_iter().map(|i| f(&mut stream_rng(s, i as u64))).collect()
}

/// Alternative constants kept for falsification runs.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Variants {
    pub zero_scale: ZeroWeightScale,
    pub pencil_scaling: PencilSpikeScaling,
}

/// One spectrum from a Wishart-type construction.
pub fn sample_spectrum<R: Rng + ?Sized>(
    construction: Construction,
    cfg: &SpikeConfig,
    variants: Variants,
    rng: &mut R,
) -> Result<Spectrum> {
    match construction {
        Construction::Bidiagonal => sample_bidiagonal_spectrum(cfg, rng),
        Construction::Secular => {
            let opts = UpdateOptions { zero_scale: variants.zero_scale, top_roots: None };
            Ok(sample_secular_pair_with(cfg, &opts, rng)?.0.lambda)
        }
        Construction::Pencil => Ok(sample_pencil_with(cfg, variants.pencil_scaling, rng)?.eigenvalues()?.0),
        Construction::Multispike => sample_multi_spike(cfg, rng),
        other => Err(Error::input(format!("{} does not produce a Wishart spectrum", other.tag()))),
    }
}

fn tagged(construction: Construction) -> impl Fn(Error) -> Error {
    move |e| Error::Sampler { construction: construction.tag(), source: Box::new(e) }
}

pub fn draw_spectra(
    construction: Construction,
    cfg: &SpikeConfig,
    variants: Variants,
    n: usize,
    seed: u64,
) -> Result<Vec<Spectrum>> {
    par_draw(seed, construction.tag(), n, |rng| sample_spectrum(construction, cfg, variants, rng))
        .map_err(tagged(construction))
}

/// As [`draw_spectra`] with provenance attached.
pub fn draw_samples(
    construction: Construction,
    cfg: &SpikeConfig,
    variants: Variants,
    n: usize,
    seed: u64,
) -> Result<Vec<SpectrumSample>> {
    draw_spectra(construction, cfg, variants, n, seed)?
        .into_iter()
        .enumerate()
        .map(|(i, values)| SpectrumSample::new(values, SampleMeta { seed, index: i as u64, construction }))
        .collect::<Result<_>>()
        .map_err(tagged(construction))
}
