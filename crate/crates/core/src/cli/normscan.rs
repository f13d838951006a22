//! Monte Carlo scan of `|xy| / (|x| |y|)` for random Gaussian elements.
//!
//! Sample `k` draws from ChaCha20 seeded with `seed_from_u64(seed)` on
//! stream `k`, so each sample is reproducible on its own and results do not
//! depend on thread scheduling. Normal deviates come from the Box-Muller
//! transform applied to consecutive pairs of uniform draws.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Context, FloatElement};
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::twists::{TwistKind, TwistTable};

pub const RNG_ALGORITHM: &str =
    "chacha20 (rand_chacha 0.3 ChaCha20Rng::seed_from_u64(seed), stream = sample index); normals: Box-Muller";

/// Largest XOR exponent accepted by the scan.
pub const MAX_SCAN_EXPONENT: u32 = 13;

#[derive(Debug, Clone, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormScanReport {
    pub twist: TwistKind,
    pub group: GroupSpec,
    pub samples: u64,
    pub seed: u64,
    pub rng: &'static str,
    pub max_ratio: f64,
    pub min_ratio: f64,
    pub mean_ratio: f64,
    pub histogram: Histogram,
    pub wedderburn_bound: f64,
}

impl NormScanReport {
    pub fn within_wedderburn(&self) -> bool {
        self.max_ratio <= self.wedderburn_bound + 1e-9
    }
}

/// Fills `out` with standard normal deviates.
pub fn box_muller<R: Rng>(rng: &mut R, out: &mut [f64]) {
    for chunk in out.chunks_mut(2) {
        // 1 - U lies in (0, 1], keeping ln finite
        let u1: f64 = 1.0 - rng.gen::<f64>();
        let u2: f64 = rng.gen::<f64>();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        chunk[0] = radius * angle.cos();
        if chunk.len() > 1 {
            chunk[1] = radius * angle.sin();
        }
    }
}

pub fn sample_ratio(ctx: &Arc<Context>, seed: u64, index: u64) -> Result<f64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let n = ctx.order();
    let mut buf = vec![0.0; 2 * n];
    box_muller(&mut rng, &mut buf);
    let y = FloatElement::new(ctx, buf.split_off(n))?;
    let x = FloatElement::new(ctx, buf)?;
    let xy = x.multiply(&y)?;
    Ok(xy.norm() / (x.norm() * y.norm()))
}

pub fn norm_scan(
    kind: TwistKind,
    exponent: u32,
    samples: u64,
    seed: u64,
    bins: usize,
) -> Result<NormScanReport> {
    if exponent > MAX_SCAN_EXPONENT {
        return Err(Error::GroupTooLarge {
            order: 1usize << exponent.min(63),
            limit: 1 << MAX_SCAN_EXPONENT,
        });
    }
    let ctx = Context::new(TwistTable::named(kind, GroupSpec::xor(exponent)?)?);
    let ratios = (0..samples)
        .into_par_iter()
        .map(|k| sample_ratio(&ctx, seed, k))
        .collect::<Result<Vec<f64>>>()?;

    let bound = (ctx.order() as f64).sqrt();
    let bins = bins.max(1);
    let width = bound / bins as f64;
    let mut counts = vec![0u64; bins];
    for &r in &ratios {
        let b = ((r / width) as usize).min(bins - 1);
        counts[b] += 1;
    }
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let mean_ratio = if ratios.is_empty() {
        0.0
    } else {
        ratios.iter().sum::<f64>() / ratios.len() as f64
    };
    Ok(NormScanReport {
        twist: kind,
        group: ctx.group(),
        samples,
        seed,
        rng: RNG_ALGORITHM,
        max_ratio,
        min_ratio: if ratios.is_empty() { 0.0 } else { min_ratio },
        mean_ratio,
        histogram: Histogram {
            lo: 0.0,
            hi: bound,
            counts,
        },
        wedderburn_bound: bound,
    })
}
