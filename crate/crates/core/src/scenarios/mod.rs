//! Built-in models and random model generators.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::expr::Resolver;
use crate::extended::{Event, ExtendedSpace};
use crate::space::ObjectiveSpace;

mod classic;
pub mod corpus;
mod cosmo;
mod hartle_srednicki;
mod life;
mod sequential;
mod two_zone;

pub use classic::{four_beauties, presumptuous_philosopher, sleeping_beauty};
pub use cosmo::{cosmo_constant, CosmoParams};
pub use hartle_srednicki::hartle_srednicki;
pub use life::{life_laws, probability_of_life, LifeLaws};
pub use sequential::{sequential, stop_law};
pub use two_zone::two_zone;

/// Exact constructors refuse to enumerate more objective atoms than this.
pub const ATOM_BUDGET: u128 = 1 << 20;

/// A model together with its named events.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub ext: ExtendedSpace,
    /// Event name to defining expression.
    pub events: BTreeMap<String, String>,
    pub default_event: Option<String>,
}

impl Scenario {
    pub fn new(name: impl Into<String>, space: ObjectiveSpace) -> Self {
        Scenario {
            name: name.into(),
            ext: ExtendedSpace::new(space),
            events: BTreeMap::new(),
            default_event: None,
        }
    }

    pub fn with_event(mut self, name: impl Into<String>, expr: impl Into<String>) -> Self {
        self.events.insert(name.into(), expr.into());
        self
    }

    pub fn with_default_event(mut self, name: impl Into<String>) -> Self {
        self.default_event = Some(name.into());
        self
    }

    pub fn space(&self) -> &ObjectiveSpace {
        self.ext.base()
    }

    /// Evaluates an event expression over this model's names.
    pub fn event(&self, expr: &str) -> Result<Event> {
        Resolver {
            ext: &self.ext,
            names: &self.events,
        }
        .resolve(expr)
    }
}

pub(crate) fn check_budget(atoms: u128) -> Result<()> {
    if atoms > ATOM_BUDGET {
        return Err(Error::SizeCap {
            atoms,
            cap: ATOM_BUDGET,
        });
    }
    Ok(())
}

pub(crate) fn numbered(range: impl Iterator<Item = i64>) -> Vec<String> {
    range.map(|i| i.to_string()).collect()
}

pub(crate) fn bit_string(mask: u64, len: usize) -> String {
    (0..len)
        .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
