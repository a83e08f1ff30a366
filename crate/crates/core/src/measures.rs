//! The Thirder measure `P_E`, the Halfer measure `P_L`, and restricted variants.

use num::Zero;

use crate::cellset::CellSet;
use crate::error::{Error, Result};
use crate::extended::{ExtendedSpace, Location, Measure};
use crate::rational::{int, Rational};
use crate::space::{Atom, ObjectiveSpace};

/// `P_E((ω, x)) = λ ℙ_O(ω) 1{x ∈ 𝒳(ω)}`, `λ = 1/𝔼X`, and zero on `∂`.
///
/// On a disconnected occupancy graph the result is flagged
/// [`Measure::non_unique`].
pub fn build_thirder(ext: &ExtendedSpace) -> Result<Measure> {
    let occupied: Vec<CellSet> = ext
        .base()
        .atoms()
        .iter()
        .map(|a| a.occupied.clone())
        .collect();
    let m = size_biased(ext, &occupied)?;
    Ok(m.flagged_non_unique(!ext.base().occupancy_graph().connected))
}

/// `P_L((ω, x)) = ℙ_O(ω) / (|𝒳(ω)| ℙ(𝒳 ≠ ∅))` for `x ∈ 𝒳(ω)`, else zero.
pub fn build_halfer(ext: &ExtendedSpace) -> Result<Measure> {
    let occupied: Vec<CellSet> = ext
        .base()
        .atoms()
        .iter()
        .map(|a| a.occupied.clone())
        .collect();
    uniform_within(ext, &occupied)
}

/// `ℙ(· | 𝒳 ≠ ∅)` as a space of its own.
pub fn build_tilde_objective(space: &ObjectiveSpace) -> Result<ObjectiveSpace> {
    let p = space.prob_nonempty();
    let atoms: Vec<Atom> = space
        .atoms()
        .iter()
        .filter(|a| !a.occupied.is_empty())
        .map(|a| {
            let mut a = a.clone();
            a.weight = &a.weight / &p;
            a
        })
        .collect();
    ObjectiveSpace::with_sequential(
        space.cells().to_vec(),
        space.colours().to_vec(),
        atoms,
        space.sequential().cloned(),
    )
}

/// `P'_E((ω, x)) = λ' ℙ_O(ω) 1{x ∈ 𝒳'(ω)}` with `λ' = 1/𝔼|𝒳'|`.
pub fn build_restricted_thirder(ext: &ExtendedSpace, sub: &[CellSet]) -> Result<Measure> {
    check_subset(ext, sub)?;
    size_biased(ext, sub)
}

/// The Halfer construction applied to the sub-model `𝒳'`.
pub fn build_restricted_halfer(ext: &ExtendedSpace, sub: &[CellSet]) -> Result<Measure> {
    check_subset(ext, sub)?;
    uniform_within(ext, sub)
}

fn check_subset(ext: &ExtendedSpace, sub: &[CellSet]) -> Result<()> {
    if sub.len() != ext.n_objective() {
        return Err(Error::SpaceMismatch);
    }
    for (a, s) in ext.base().atoms().iter().zip(sub) {
        if !s.is_subset(&a.occupied) {
            return Err(Error::SubsetViolation {
                atom: a.label.clone(),
            });
        }
    }
    Ok(())
}

fn size_biased(ext: &ExtendedSpace, occupied: &[CellSet]) -> Result<Measure> {
    let atoms = ext.base().atoms();
    let mean: Rational = atoms
        .iter()
        .zip(occupied)
        .map(|(a, s)| &a.weight * int(s.len() as i64))
        .sum();
    if mean.is_zero() {
        return Err(Error::NoObservers);
    }
    let lambda = mean.recip();
    let mut w = vec![Rational::zero(); ext.n_atoms()];
    for (omega, (a, s)) in atoms.iter().zip(occupied).enumerate() {
        let mass = &lambda * &a.weight;
        for x in s.iter() {
            w[ext.index(omega, Location::Cell(x))] = mass.clone();
        }
    }
    Measure::new(ext, w)
}

fn uniform_within(ext: &ExtendedSpace, occupied: &[CellSet]) -> Result<Measure> {
    let atoms = ext.base().atoms();
    let p: Rational = atoms
        .iter()
        .zip(occupied)
        .filter(|(_, s)| !s.is_empty())
        .map(|(a, _)| &a.weight)
        .sum();
    if p.is_zero() {
        return Err(Error::NoObservers);
    }
    let mut w = vec![Rational::zero(); ext.n_atoms()];
    for (omega, (a, s)) in atoms.iter().zip(occupied).enumerate() {
        if s.is_empty() {
            continue;
        }
        let mass = &a.weight / (&p * int(s.len() as i64));
        for x in s.iter() {
            w[ext.index(omega, Location::Cell(x))] = mass.clone();
        }
    }
    Measure::new(ext, w)
}

/// Which canonical measure a restriction check runs against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureKind {
    Thirder,
    Halfer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub kind: MeasureKind,
    pub holds: bool,
    /// `P(S ∈ 𝒳')` under the full-model measure.
    pub mass_on_sub: Rational,
    /// `𝔼X' / 𝔼X`; for the Thirder measure this must equal `mass_on_sub`.
    pub mean_ratio: Rational,
    /// First extended atom where `P(· | S ∈ 𝒳') ≠ P'(·)`: name, lhs, rhs.
    pub counterexample: Option<(String, Rational, Rational)>,
}

/// Checks `P(G | S ∈ 𝒳') = P'(G)` on every extended atom (hence every event),
/// where `P'` is the same construction applied to the sub-model `𝒳'`.
pub fn verify_restriction(
    ext: &ExtendedSpace,
    sub: &[CellSet],
    kind: MeasureKind,
) -> Result<RestrictionReport> {
    let (full, restricted) = match kind {
        MeasureKind::Thirder => (build_thirder(ext)?, build_restricted_thirder(ext, sub)?),
        MeasureKind::Halfer => (build_halfer(ext)?, build_restricted_halfer(ext, sub)?),
    };
    let in_sub = ext.event_where(|a, l| {
        let omega = ext.base().atom_index(&a.label).expect("atom of this space");
        matches!(l, Location::Cell(x) if sub[omega].contains(x))
    });
    let mass_on_sub = full.probability(&in_sub);
    let atoms = ext.base().atoms();
    let mean = ext.base().mean_occupancy();
    let mean_sub: Rational = atoms
        .iter()
        .zip(sub)
        .map(|(a, s)| &a.weight * int(s.len() as i64))
        .sum();
    let mean_ratio = mean_sub / mean;
    if mass_on_sub.is_zero() {
        return Err(Error::ConditionOnNull);
    }
    let mut counterexample = None;
    for i in 0..ext.n_atoms() {
        let lhs = if in_sub.contains(i) {
            full.weight(i) / &mass_on_sub
        } else {
            Rational::zero()
        };
        let rhs = restricted.weight(i);
        if &lhs != rhs {
            counterexample = Some((ext.atom_name(i), lhs, rhs.clone()));
            break;
        }
    }
    Ok(RestrictionReport {
        kind,
        holds: counterexample.is_none(),
        mass_on_sub,
        mean_ratio,
        counterexample,
    })
}
