use num::{One, Signed, Zero};

use crate::cellset::CellSet;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::space::{Atom, ObjectiveSpace, SeqTag, SequentialInfo};

use super::{bit_string, check_budget, numbered, Scenario};

/// Days `1..M` and independent `V_n ~ Ber(h_n)`, `n = 0..M`, with `h_M = 1`,
/// plus `U` uniform on `u_levels` values. Observers wake on days `1..X` where
/// `X = min{n : V_n = 1}`.
///
/// Every value of `(V_0, .., V_M, U)` is a separate atom, so the objective
/// field is generated by those variables. Atom labels are `<V bits>:<U>`.
pub fn sequential(hazards: &[Rational], u_levels: u32) -> Result<Scenario> {
    if hazards.len() < 2 {
        return Err(Error::InvalidParams(
            "need hazards h_0..h_M with M >= 1".into(),
        ));
    }
    if hazards
        .iter()
        .any(|h| h.is_negative() || h > &Rational::one())
    {
        return Err(Error::InvalidParams("hazards must lie in [0, 1]".into()));
    }
    if !hazards.last().is_some_and(|h| h.is_one()) {
        return Err(Error::InvalidParams("the final hazard must be 1".into()));
    }
    if u_levels == 0 {
        return Err(Error::InvalidParams("u_levels must be at least 1".into()));
    }
    let m = hazards.len() - 1;
    if m > 40 {
        return Err(Error::SizeCap {
            atoms: u128::MAX,
            cap: super::ATOM_BUDGET,
        });
    }
    check_budget((1u128 << (m + 1)) * u128::from(u_levels))?;

    let u_share = Rational::one() / int(i64::from(u_levels));
    let mut atoms = Vec::new();
    for mask in 0u64..(1 << (m + 1)) {
        let v: Vec<bool> = (0..=m).map(|n| mask >> n & 1 == 1).collect();
        let weight: Rational = hazards
            .iter()
            .zip(&v)
            .map(|(h, &b)| if b { h.clone() } else { Rational::one() - h })
            .product();
        if weight.is_zero() {
            continue;
        }
        let x = v.iter().position(|&b| b).expect("h_M = 1 forces a stop");
        for u in 0..u_levels {
            atoms.push(
                Atom::new(
                    format!("{}:{u}", bit_string(mask, m + 1)),
                    &weight * &u_share,
                    CellSet::from_indices(m, 0..x),
                )
                .with_seq(SeqTag { v: v.clone(), u }),
            );
        }
    }
    let info = SequentialInfo {
        hazards: hazards.to_vec(),
        u_levels,
    };
    let space = ObjectiveSpace::with_sequential(
        numbered(1..=m as i64),
        vec!["-".into()],
        atoms,
        Some(info),
    )
    .map_err(|e| match e {
        Error::InvalidSpace(msg) => Error::InvalidParams(msg),
        other => other,
    })?;
    Ok(Scenario::new("sequential", space))
}

/// `q_n = ℙ(X = n) = h_n ∏_{k<n} (1 - h_k)`.
pub fn stop_law(hazards: &[Rational]) -> Vec<Rational> {
    let mut survive = Rational::one();
    hazards
        .iter()
        .map(|h| {
            let q = &survive * h;
            survive *= Rational::one() - h;
            q
        })
        .collect()
}
