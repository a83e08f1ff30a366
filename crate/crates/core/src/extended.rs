//! The extended space `Ω = Ω_O × (K ∪ {∂})`, its events, and measures on it.

use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};
use crate::space::{Atom, ObjectiveSpace};

/// A location of the anthropic observer: a cell, or `∂` when nobody exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Location {
    Cell(usize),
    Boundary,
}

/// `Ω_O × Ω_A`. Extended atom `(ω, loc)` has index `ω * (M + 1) + loc`,
/// with `loc = M` standing for `∂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedSpace {
    base: Arc<ObjectiveSpace>,
}

impl ExtendedSpace {
    pub fn new(base: ObjectiveSpace) -> Self {
        ExtendedSpace {
            base: Arc::new(base),
        }
    }

    pub fn base(&self) -> &ObjectiveSpace {
        &self.base
    }

    pub fn n_objective(&self) -> usize {
        self.base.atoms().len()
    }

    pub fn n_locations(&self) -> usize {
        self.base.n_cells() + 1
    }

    pub fn n_atoms(&self) -> usize {
        self.n_objective() * self.n_locations()
    }

    pub fn index(&self, omega: usize, loc: Location) -> usize {
        omega * self.n_locations() + self.loc_index(loc)
    }

    pub fn loc_index(&self, loc: Location) -> usize {
        match loc {
            Location::Cell(x) => x,
            Location::Boundary => self.base.n_cells(),
        }
    }

    pub fn split(&self, index: usize) -> (usize, Location) {
        let l = self.n_locations();
        let loc = index % l;
        let loc = if loc == l - 1 {
            Location::Boundary
        } else {
            Location::Cell(loc)
        };
        (index / l, loc)
    }

    pub fn location_name(&self, loc: Location) -> &str {
        match loc {
            Location::Cell(x) => &self.base.cells()[x],
            Location::Boundary => "∂",
        }
    }

    /// Human-readable name of an extended atom, `label@location`.
    pub fn atom_name(&self, index: usize) -> String {
        let (omega, loc) = self.split(index);
        format!(
            "{}@{}",
            self.base.atoms()[omega].label,
            self.location_name(loc)
        )
    }

    pub fn event_where(&self, pred: impl Fn(&Atom, Location) -> bool) -> Event {
        let mut e = Event::empty(self.n_atoms(), self.n_locations());
        for (omega, atom) in self.base.atoms().iter().enumerate() {
            for li in 0..self.n_locations() {
                let idx = omega * self.n_locations() + li;
                if pred(atom, self.split(idx).1) {
                    e.set(idx);
                }
            }
        }
        e.refresh();
        e
    }

    /// `F × Ω_A` for the objective atoms selected by `pred`.
    pub fn objective_event(&self, pred: impl Fn(&Atom) -> bool) -> Event {
        self.event_where(|a, _| pred(a))
    }

    pub fn atom_event(&self, omega: usize) -> Event {
        let label = &self.base.atoms()[omega].label;
        self.objective_event(|a| &a.label == label)
    }

    pub fn location_event(&self, loc: Location) -> Event {
        self.event_where(|_, l| l == loc)
    }

    /// `{S ∈ 𝒳}`.
    pub fn observer_exists_event(&self) -> Event {
        self.event_where(|a, l| matches!(l, Location::Cell(x) if a.occupied.contains(x)))
    }

    pub fn full(&self) -> Event {
        self.event_where(|_, _| true)
    }

    pub fn empty(&self) -> Event {
        Event::empty(self.n_atoms(), self.n_locations())
    }

    /// Objective atoms contained in an objective event.
    pub fn objective_atoms(&self, e: &Event) -> Result<Vec<usize>> {
        if !e.is_objective() {
            return Err(Error::NotObjective);
        }
        Ok((0..self.n_objective())
            .filter(|&w| e.contains(w * self.n_locations()))
            .collect())
    }

    /// The objective extension `ℙ`, defined on objective events only.
    pub fn objective_probability(&self, e: &Event) -> Result<Rational> {
        let atoms = self.base.atoms();
        Ok(self
            .objective_atoms(e)?
            .into_iter()
            .map(|w| &atoms[w].weight)
            .sum())
    }

    pub fn objective_conditional(&self, f: &Event, g: &Event) -> Result<Rational> {
        let pg = self.objective_probability(g)?;
        if pg.is_zero() {
            return Err(Error::ConditionOnNull);
        }
        Ok(self.objective_probability(&f.and(g))? / pg)
    }

    pub fn check_event(&self, e: &Event) -> Result<()> {
        if e.len != self.n_atoms() || e.locations != self.n_locations() as u32 {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }
}

/// A set of extended atoms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Event {
    bits: Vec<u64>,
    len: usize,
    locations: u32,
    objective: bool,
}

impl Event {
    fn empty(len: usize, locations: usize) -> Self {
        Event {
            bits: vec![0; len.div_ceil(64)],
            len,
            locations: locations as u32,
            objective: true,
        }
    }

    fn set(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.contains(i))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// True when membership is constant in the location coordinate.
    pub fn is_objective(&self) -> bool {
        self.objective
    }

    fn refresh(&mut self) {
        let l = self.locations as usize;
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        self.objective = (0..self.len / l).all(|w| {
            let first = self.contains(w * l);
            (1..l).all(|k| self.contains(w * l + k) == first)
        });
    }

    fn zip(&self, other: &Event, f: impl Fn(u64, u64) -> u64) -> Event {
        assert_eq!(self.len, other.len, "events over different spaces");
        let mut e = Event {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            len: self.len,
            locations: self.locations,
            objective: true,
        };
        e.refresh();
        e
    }

    pub fn and(&self, other: &Event) -> Event {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Event) -> Event {
        self.zip(other, |a, b| a | b)
    }

    pub fn minus(&self, other: &Event) -> Event {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Event {
        let mut e = Event {
            bits: self.bits.iter().map(|w| !w).collect(),
            len: self.len,
            locations: self.locations,
            objective: true,
        };
        e.refresh();
        e
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Event")
            .field("atoms", &self.iter().collect::<Vec<_>>())
            .field("objective", &self.objective)
            .finish()
    }
}

/// An exact probability on the extended space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    weights: Vec<Rational>,
    locations: usize,
    non_unique: bool,
}

impl Measure {
    /// Checks nonnegativity and exact normalisation.
    pub fn new(ext: &ExtendedSpace, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != ext.n_atoms() {
            return Err(Error::SpaceMismatch);
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::InvalidParams(format!(
                "negative weight on {}",
                ext.atom_name(i)
            )));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidParams(format!(
                "measure weights sum to {}",
                fmt_rational(&total)
            )));
        }
        Ok(Measure {
            weights,
            locations: ext.n_locations(),
            non_unique: false,
        })
    }

    pub(crate) fn flagged_non_unique(mut self, flag: bool) -> Self {
        self.non_unique = flag;
        self
    }

    /// Set when the measure was built by formula on a model whose occupancy
    /// graph is disconnected, where {PN, PI, PEI} has other solutions too.
    pub fn non_unique(&self) -> bool {
        self.non_unique
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> &Rational {
        &self.weights[index]
    }

    /// # Panics
    /// If the event belongs to a space of a different size.
    pub fn probability(&self, e: &Event) -> Rational {
        assert_eq!(e.len, self.weights.len(), "event and measure spaces differ");
        e.iter().map(|i| &self.weights[i]).sum()
    }

    pub fn conditional(&self, f: &Event, g: &Event) -> Result<Rational> {
        let pg = self.probability(g);
        if pg.is_zero() {
            return Err(Error::ConditionOnNull);
        }
        Ok(self.probability(&f.and(g)) / pg)
    }

    /// `m({ω} × Ω_A)`.
    pub fn objective_mass(&self, omega: usize) -> Rational {
        let l = self.locations;
        self.weights[omega * l..(omega + 1) * l].iter().sum()
    }

    /// `s_x = m(S = x)` for every location index (last is `∂`).
    pub fn location_marginal(&self) -> Vec<Rational> {
        let l = self.locations;
        let mut s = vec![Rational::zero(); l];
        for (i, w) in self.weights.iter().enumerate() {
            s[i % l] += w;
        }
        s
    }
}
