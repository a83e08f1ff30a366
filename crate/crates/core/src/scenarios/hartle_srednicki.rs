use num::{One, Zero};

use crate::cellset::CellSet;
use crate::error::{Error, Result};
use crate::rational::{pow, ratio, Rational};
use crate::space::{Atom, ObjectiveSpace};

use super::{binomial, bit_string, check_budget, numbered, Scenario};

const RED: u32 = 0;
const BLUE: u32 = 1;

/// `N` cycles under one of two hypotheses, each with probability 1/2: `AR`
/// (every cycle red) or `SR` (exactly `M` red cycles, every arrangement
/// equally likely). Each cycle independently contains observers with
/// probability `p`.
///
/// Atom labels are `<hypothesis>:<colours>:<occupancy bits>`, e.g. `SR:RBB:101`.
pub fn hartle_srednicki(n: usize, m: usize, p: &Rational) -> Result<Scenario> {
    if m < 1 || m + 1 > n {
        return Err(Error::InvalidParams(format!(
            "need 1 <= M <= N - 1, got N = {n}, M = {m}"
        )));
    }
    if !(p > &Rational::zero() && p < &Rational::one()) {
        return Err(Error::InvalidParams("need 0 < p < 1".into()));
    }
    if n > 40 {
        return Err(Error::SizeCap {
            atoms: u128::MAX,
            cap: super::ATOM_BUDGET,
        });
    }
    let arrangements = binomial(n as u64, m as u64);
    check_budget((1u128 << n) * (1 + arrangements))?;

    let q = Rational::one() - p;
    let occupancy_weight: Vec<Rational> = (0..=n).map(|k| pow(p, k) * pow(&q, n - k)).collect();
    let half = ratio(1, 2);
    let sr_share = &half / Rational::from_integer((arrangements as i64).into());

    let mut colourings = vec![(String::from("AR"), vec![RED; n], half)];
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize == m {
            let colours: Vec<u32> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { RED } else { BLUE })
                .collect();
            colourings.push(("SR".into(), colours, sr_share.clone()));
        }
    }

    let mut atoms = Vec::with_capacity(colourings.len() << n);
    for (hyp, colours, share) in &colourings {
        let pattern: String = colours
            .iter()
            .map(|&c| if c == RED { 'R' } else { 'B' })
            .collect();
        for occ in 0u64..(1 << n) {
            let w = share * &occupancy_weight[occ.count_ones() as usize];
            atoms.push(
                Atom::new(
                    format!("{hyp}:{pattern}:{}", bit_string(occ, n)),
                    w,
                    CellSet::from_mask(n, occ),
                )
                .with_colours(colours.clone()),
            );
        }
    }
    let space = ObjectiveSpace::new(numbered(1..=n as i64), vec!["R".into(), "B".into()], atoms)?;
    Ok(Scenario::new("hartle-srednicki", space)
        .with_event("SR", "atom=SR:*")
        .with_event("AR", "atom=AR:*")
        .with_default_event("SR"))
}
