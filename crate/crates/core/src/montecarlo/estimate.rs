//! Ratio estimators `Σa / Σb` with delta-method standard errors, computed in
//! fixed blocks so the result does not depend on the number of threads.

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::rng::Philox;
use super::samplers::{ObjectiveSampler, Outcome};

/// Samples per block. Blocks are summed independently and merged in order.
pub const BLOCK: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
    /// Draws that were not rejected.
    pub accepted: u64,
}

#[derive(Clone, Copy, Debug)]
struct Sums {
    n: u64,
    a: f64,
    b: f64,
    aa: f64,
    ab: f64,
    bb: f64,
    a_eq_b: bool,
    a_zero: bool,
}

impl Sums {
    fn new() -> Self {
        Sums {
            n: 0,
            a: 0.0,
            b: 0.0,
            aa: 0.0,
            ab: 0.0,
            bb: 0.0,
            a_eq_b: true,
            a_zero: true,
        }
    }

    fn push(&mut self, a: f64, b: f64) {
        self.n += 1;
        self.a += a;
        self.b += b;
        self.aa += a * a;
        self.ab += a * b;
        self.bb += b * b;
        self.a_eq_b &= a == b;
        self.a_zero &= a == 0.0;
    }

    fn merge(mut self, o: &Sums) -> Sums {
        self.n += o.n;
        self.a += o.a;
        self.b += o.b;
        self.aa += o.aa;
        self.ab += o.ab;
        self.bb += o.bb;
        self.a_eq_b &= o.a_eq_b;
        self.a_zero &= o.a_zero;
        self
    }
}

/// Draws `n_samples` outcomes, sample `i` from stream `i` of `seed`, and
/// estimates `Σa / Σb` where `term` maps each outcome to `(a, b)` or rejects
/// it with `None`. `streams` is the number of worker threads (0 = all cores).
pub fn estimate_ratio<S, F>(
    sampler: &S,
    n_samples: u64,
    seed: u64,
    streams: usize,
    term: F,
) -> Result<Estimate>
where
    S: ObjectiveSampler,
    F: Fn(&S::Outcome) -> Option<(f64, f64)> + Sync,
{
    if n_samples == 0 {
        return Err(Error::InvalidParams("need at least one sample".into()));
    }
    let blocks = n_samples.div_ceil(BLOCK);
    let run_block = |blk: u64| {
        let mut s = Sums::new();
        for i in blk * BLOCK..((blk + 1) * BLOCK).min(n_samples) {
            let mut rng = Philox::new(seed, i);
            if let Some((a, b)) = term(&sampler.sample(&mut rng)) {
                s.push(a, b);
            }
        }
        s
    };
    let partial: Vec<Sums> = if streams == 1 {
        (0..blocks).map(run_block).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(streams)
            .build()
            .map_err(|e| Error::InvalidParams(e.to_string()))?;
        pool.install(|| (0..blocks).into_par_iter().map(run_block).collect())
    };
    let s = partial.iter().fold(Sums::new(), |acc, p| acc.merge(p));

    if s.n == 0 {
        return Err(Error::AllRejected);
    }
    if s.b == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    let value = s.a / s.b;
    let std_error = if s.a_eq_b || s.a_zero {
        0.0
    } else if s.n < 2 {
        f64::INFINITY
    } else {
        let n = s.n as f64;
        let mean_b = s.b / n;
        let resid = s.aa - 2.0 * value * s.ab + value * value * s.bb;
        (resid.max(0.0) / ((n - 1.0) * n * mean_b * mean_b)).sqrt()
    };
    Ok(Estimate {
        value,
        std_error,
        n_samples,
        seed,
        accepted: s.n,
    })
}

/// `P_E(F)` as `Σ 1_F X / Σ X`, or `P_E(F | Z_S = y)` as `Σ 1_F L_y / Σ L_y`.
pub fn estimate_thirder<S, F>(
    sampler: &S,
    event: F,
    colour: Option<u32>,
    n_samples: u64,
    seed: u64,
    streams: usize,
) -> Result<Estimate>
where
    S: ObjectiveSampler,
    F: Fn(&S::Outcome) -> bool + Sync,
{
    estimate_ratio(sampler, n_samples, seed, streams, |o| {
        let w = match colour {
            Some(y) => o.colour_count(y),
            None => o.occupancy(),
        } as f64;
        Some((if event(o) { w } else { 0.0 }, w))
    })
}

/// `P_L(F)` as the frequency of `F` among draws with `X ≥ 1`, or
/// `P_L(F | Z_S = y)` as `Σ 1_F L_y/X / Σ L_y/X` over those draws.
pub fn estimate_halfer<S, F>(
    sampler: &S,
    event: F,
    colour: Option<u32>,
    n_samples: u64,
    seed: u64,
    streams: usize,
) -> Result<Estimate>
where
    S: ObjectiveSampler,
    F: Fn(&S::Outcome) -> bool + Sync,
{
    estimate_ratio(sampler, n_samples, seed, streams, |o| {
        let x = o.occupancy();
        if x == 0 {
            return None;
        }
        let w = match colour {
            Some(y) => o.colour_count(y) as f64 / x as f64,
            None => 1.0,
        };
        Some((if event(o) { w } else { 0.0 }, w))
    })
}

/// `P_L(Z_S = y) = 𝔼(L_y / X | X ≥ 1)`.
pub fn estimate_halfer_colour_mass<S: ObjectiveSampler>(
    sampler: &S,
    colour: u32,
    n_samples: u64,
    seed: u64,
    streams: usize,
) -> Result<Estimate> {
    estimate_ratio(sampler, n_samples, seed, streams, |o| {
        let x = o.occupancy();
        (x > 0).then(|| (o.colour_count(colour) as f64 / x as f64, 1.0))
    })
}
