//! Seeded Monte Carlo estimates of Thirder and Halfer probabilities.
//!
//! Sample `i` of a run with seed `s` is drawn from its own counter-based
//! stream `(s, i)`, and partial sums are merged in block order, so a result
//! is identical for every thread count.

pub mod estimate;
pub mod rng;
pub mod samplers;

pub use estimate::{
    estimate_halfer, estimate_halfer_colour_mass, estimate_ratio, estimate_thirder, Estimate,
};
pub use rng::Philox;
pub use samplers::{
    AtomSampler, CosmoSampler, HartleSrednickiSampler, ObjectiveSampler, Outcome, TwoZoneSampler,
};

#[cfg(test)]
mod tests;
