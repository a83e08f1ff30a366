use num::{One, Zero};

use crate::cellset::CellSet;
use crate::error::{Error, Result};
use crate::rational::{pow, ratio, Rational};
use crate::space::{Atom, ObjectiveSpace};

use super::{bit_string, check_budget, Scenario};

/// Cells `-M..-1` (zone 0, colour `0`) and `1..M` (zone 1, colour `1`). Zone 0
/// sites host observers with probability `p0`; zone 1 sites with `p1` if
/// `W = 0` and `p2` if `W = 1`, where `W` is a fair coin.
///
/// Atom labels are `W<w>:<zone 0 bits><zone 1 bits>`; events `W0`, `W1`.
pub fn two_zone(m: usize, p0: &Rational, p1: &Rational, p2: &Rational) -> Result<Scenario> {
    if m < 1 {
        return Err(Error::InvalidParams("need M >= 1".into()));
    }
    for p in [p0, p1, p2] {
        if !(p > &Rational::zero() && p < &Rational::one()) {
            return Err(Error::InvalidParams("need 0 < p_i < 1".into()));
        }
    }
    if m > 30 {
        return Err(Error::SizeCap {
            atoms: u128::MAX,
            cap: super::ATOM_BUDGET,
        });
    }
    check_budget(2 * (1u128 << (2 * m)))?;

    let zone_weights = |p: &Rational| -> Vec<Rational> {
        let q = Rational::one() - p;
        (0..=m).map(|k| pow(p, k) * pow(&q, m - k)).collect()
    };
    let w0 = zone_weights(p0);
    let mut cells: Vec<String> = (1..=m).rev().map(|i| format!("-{i}")).collect();
    cells.extend((1..=m).map(|i| i.to_string()));
    let colours: Vec<u32> = (0..2 * m).map(|i| u32::from(i >= m)).collect();

    let mut atoms = Vec::with_capacity(2 << (2 * m));
    for (w, p) in [(0, p1), (1, p2)] {
        let w1 = zone_weights(p);
        for low in 0u64..(1 << m) {
            for high in 0u64..(1 << m) {
                let weight =
                    ratio(1, 2) * &w0[low.count_ones() as usize] * &w1[high.count_ones() as usize];
                atoms.push(
                    Atom::new(
                        format!("W{w}:{}{}", bit_string(low, m), bit_string(high, m)),
                        weight,
                        CellSet::from_mask(2 * m, low | high << m),
                    )
                    .with_colours(colours.clone()),
                );
            }
        }
    }
    let space = ObjectiveSpace::new(cells, vec!["0".into(), "1".into()], atoms)?;
    Ok(Scenario::new("two-zone", space)
        .with_event("W0", "atom=W0:*")
        .with_event("W1", "atom=W1:*")
        .with_default_event("W0"))
}
