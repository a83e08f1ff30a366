use num::{One, Zero};

use crate::cellset::CellSet;
use crate::error::{Error, Result};
use crate::measures::{build_halfer, build_thirder};
use crate::rational::{pow, Rational};
use crate::space::{Atom, ObjectiveSpace};

use super::{bit_string, check_budget, numbered, Scenario};

/// `M` sites; `V` takes value `v_i` with probability `w_i`; given `V`, each
/// site independently hosts life with probability `V`.
///
/// Atom labels are `V<i>:<bits>`; events `V<i>` select `V = v_i`.
pub fn probability_of_life(m: usize, support: &[(Rational, Rational)]) -> Result<Scenario> {
    if m < 1 {
        return Err(Error::InvalidParams("need M >= 1".into()));
    }
    if support.is_empty() {
        return Err(Error::InvalidParams(
            "the law of V needs at least one point".into(),
        ));
    }
    let mut total = Rational::zero();
    for (v, w) in support {
        if !(v > &Rational::zero() && v < &Rational::one()) {
            return Err(Error::InvalidParams(
                "support points must lie in (0, 1)".into(),
            ));
        }
        if w <= &Rational::zero() {
            return Err(Error::InvalidParams(
                "support weights must be positive".into(),
            ));
        }
        total += w;
    }
    if !total.is_one() {
        return Err(Error::InvalidParams("support weights must sum to 1".into()));
    }
    if m > 60 {
        return Err(Error::SizeCap {
            atoms: u128::MAX,
            cap: super::ATOM_BUDGET,
        });
    }
    check_budget(support.len() as u128 * (1u128 << m))?;

    let mut atoms = Vec::new();
    for (i, (v, w)) in support.iter().enumerate() {
        let q = Rational::one() - v;
        let by_count: Vec<Rational> = (0..=m).map(|k| w * pow(v, k) * pow(&q, m - k)).collect();
        for occ in 0u64..(1 << m) {
            atoms.push(Atom::new(
                format!("V{i}:{}", bit_string(occ, m)),
                by_count[occ.count_ones() as usize].clone(),
                CellSet::from_mask(m, occ),
            ));
        }
    }
    let space = ObjectiveSpace::new(numbered(1..=m as i64), vec!["-".into()], atoms)?;
    let mut sc = Scenario::new("life", space).with_default_event("V0");
    for i in 0..support.len() {
        sc = sc.with_event(format!("V{i}"), format!("atom=V{i}:*"));
    }
    Ok(sc)
}

/// The law of `V` seen by different observers, indexed like the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LifeLaws {
    /// An external observer with no observation.
    pub prior: Vec<Rational>,
    /// An external observer who saw life at site 1.
    pub external: Vec<Rational>,
    pub thirder: Vec<Rational>,
    pub halfer: Vec<Rational>,
}

pub fn life_laws(sc: &Scenario, support_len: usize) -> Result<LifeLaws> {
    let pe = build_thirder(&sc.ext)?;
    let pl = build_halfer(&sc.ext)?;
    let first = sc.event(&format!("occ={}", sc.space().cells()[0]))?;
    let mut laws = LifeLaws {
        prior: Vec::new(),
        external: Vec::new(),
        thirder: Vec::new(),
        halfer: Vec::new(),
    };
    for i in 0..support_len {
        let v = sc.event(&format!("V{i}"))?;
        laws.prior.push(sc.ext.objective_probability(&v)?);
        laws.external
            .push(sc.ext.objective_conditional(&v, &first)?);
        laws.thirder.push(pe.probability(&v));
        laws.halfer.push(pl.probability(&v));
    }
    Ok(laws)
}
