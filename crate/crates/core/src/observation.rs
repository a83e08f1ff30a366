//! Observers who see a colour `Z_S` at their own cell.
//!
//! `L_y(ω)` counts occupied cells of colour `y`. The observation `{Z_S = y}`
//! is the event `H_y`, which is not objective; the objective event
//! `G_y = {L_y ≥ 1}` contains it and is offered only as a comparator.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::extended::{Event, ExtendedSpace, Location};
use crate::rational::{int, pow, Rational};
use crate::space::Atom;

fn colour(ext: &ExtendedSpace, y: &str) -> Result<u32> {
    ext.base()
        .colour_index(y)
        .ok_or_else(|| Error::UnknownColour(y.to_string()))
}

fn objective_atoms(ext: &ExtendedSpace, f: &Event) -> Result<Vec<bool>> {
    let atoms = ext.objective_atoms(f)?;
    let mut inside = vec![false; ext.n_objective()];
    for o in atoms {
        inside[o] = true;
    }
    Ok(inside)
}

/// `(G_y, H_y)`.
pub fn colour_events(ext: &ExtendedSpace, y: &str) -> Result<(Event, Event)> {
    let c = colour(ext, y)?;
    let g = ext.objective_event(|a| a.colour_count(c) > 0);
    let h = ext.event_where(
        |a, loc| matches!(loc, Location::Cell(x) if a.occupied.contains(x) && a.colours[x] == c),
    );
    Ok((g, h))
}

/// Sums `ℙ(ω) g(ω)` over atoms in `f`, and over all atoms.
fn weighted(
    ext: &ExtendedSpace,
    f: &Event,
    g: impl Fn(&Atom) -> Rational,
) -> Result<(Rational, Rational)> {
    let inside = objective_atoms(ext, f)?;
    let mut num = Rational::zero();
    let mut den = Rational::zero();
    for (o, a) in ext.base().atoms().iter().enumerate() {
        let v = &a.weight * g(a);
        if inside[o] {
            num += &v;
        }
        den += v;
    }
    Ok((num, den))
}

/// `P_E(F | Z_S = y) = 𝔼(1_F L_y) / 𝔼(L_y)`.
pub fn thirder_given_colour(ext: &ExtendedSpace, f: &Event, y: &str) -> Result<Rational> {
    let c = colour(ext, y)?;
    let (num, den) = weighted(ext, f, |a| int(a.colour_count(c) as i64))?;
    if den.is_zero() {
        return Err(Error::ColourNeverObserved(y.to_string()));
    }
    Ok(num / den)
}

/// `P_L(F | Z_S = y) = 𝔼(1_F L_y / X | X ≥ 1) / 𝔼(L_y / X | X ≥ 1)`.
pub fn halfer_given_colour(ext: &ExtendedSpace, f: &Event, y: &str) -> Result<Rational> {
    let c = colour(ext, y)?;
    let (num, den) = weighted(ext, f, |a| match a.occupancy() {
        0 => Rational::zero(),
        x => int(a.colour_count(c) as i64) / int(x as i64),
    })?;
    if den.is_zero() {
        return Err(Error::ColourNeverObserved(y.to_string()));
    }
    Ok(num / den)
}

/// `ℙ(F | G_y)`: conditioning on "someone sees `y`" in place of "I see `y`".
/// It agrees with [`thirder_given_colour`] when the colouring is injective
/// and in general does not.
pub fn improper_conditioning(ext: &ExtendedSpace, f: &Event, y: &str) -> Result<Rational> {
    let c = colour(ext, y)?;
    let (num, den) = weighted(ext, f, |a| {
        if a.colour_count(c) > 0 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })?;
    if den.is_zero() {
        return Err(Error::ColourNeverObserved(y.to_string()));
    }
    Ok(num / den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Injectivity {
    /// `ℙ(L_y ≤ 1) = 1`, per colour in declaration order.
    pub per_colour: Vec<(String, bool)>,
    pub overall: bool,
}

pub fn is_injective(ext: &ExtendedSpace) -> Injectivity {
    let base = ext.base();
    let per_colour: Vec<(String, bool)> = base
        .colours()
        .iter()
        .enumerate()
        .map(|(c, name)| {
            let ok = base.atoms().iter().all(|a| a.colour_count(c as u32) <= 1);
            (name.clone(), ok)
        })
        .collect();
    let overall = per_colour.iter().all(|(_, ok)| *ok);
    Injectivity {
        per_colour,
        overall,
    }
}

/// `f(p, n) = 1 - (1 - p)^n`, the chance that at least one of `n` cycles is
/// occupied.
pub fn at_least_one(p: &Rational, n: usize) -> Rational {
    Rational::one() - pow(&(Rational::one() - p), n)
}

/// The flawed Bayes combination `f(p, M) / (f(p, M) + f(p, N))` for the two
/// equally likely colour hypotheses. The published form repeats `f(p, N)` in
/// the denominator, which cannot be intended: with `M = N` it would not give
/// 1/2. This is the Bayes answer built from `ℙ(G_R | T)` and equals
/// [`improper_conditioning`] of `SR` on red; it is not a credence of the
/// observer.
pub fn flawed_bayes(p: &Rational, m: usize, n: usize) -> Rational {
    let fm = at_least_one(p, m);
    &fm / (&fm + at_least_one(p, n))
}

/// `(Σ_y ℙ(G_y | T), ℙ(∪_y G_y | T))`. If `G_y` could stand for "I see `y`"
/// the first would be at most the second; it exceeds 1 whenever the
/// `G_y` overlap enough.
pub fn colour_event_overlap(ext: &ExtendedSpace, t: &Event) -> Result<(Rational, Rational)> {
    let pt = ext.objective_probability(t)?;
    if pt.is_zero() {
        return Err(Error::ConditionOnNull);
    }
    let mut sum = Rational::zero();
    let mut union = ext.empty();
    for y in ext.base().colours() {
        let (g, _) = colour_events(ext, y)?;
        sum += ext.objective_probability(&g.and(t))?;
        union = union.or(&g);
    }
    let union_p = ext.objective_probability(&union.and(t))?;
    Ok((sum / &pt, union_p / pt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{build_halfer, build_thirder};
    use crate::rational::ratio;
    use crate::scenarios::{hartle_srednicki, sleeping_beauty};

    #[test]
    fn hartle_srednicki_colour_posteriors() {
        let hs = hartle_srednicki(3, 1, &ratio(1, 3)).unwrap();
        let sr = hs.event("SR").unwrap();
        assert_eq!(
            thirder_given_colour(&hs.ext, &sr, "R").unwrap(),
            ratio(1, 4)
        );
        assert_eq!(halfer_given_colour(&hs.ext, &sr, "R").unwrap(), ratio(1, 4));

        let (g, h) = colour_events(&hs.ext, "R").unwrap();
        assert!(h.is_subset(&g) && h != g);
        assert!(g.is_objective() && !h.is_objective());
        let pe = build_thirder(&hs.ext).unwrap();
        let pl = build_halfer(&hs.ext).unwrap();
        assert_eq!(pe.conditional(&sr, &h).unwrap(), ratio(1, 4));
        assert_eq!(pl.conditional(&sr, &h).unwrap(), ratio(1, 4));
    }

    #[test]
    fn improper_conditioning_reproduces_the_flawed_formula() {
        let p = ratio(1, 2);
        let hs = hartle_srednicki(4, 1, &p).unwrap();
        let sr = hs.event("SR").unwrap();
        let (g, _) = colour_events(&hs.ext, "R").unwrap();
        assert_eq!(
            hs.ext.objective_conditional(&g, &sr).unwrap(),
            at_least_one(&p, 1)
        );
        let ar = hs.event("AR").unwrap();
        assert_eq!(
            hs.ext.objective_conditional(&g, &ar).unwrap(),
            at_least_one(&p, 4)
        );
        assert_eq!(
            improper_conditioning(&hs.ext, &sr, "R").unwrap(),
            flawed_bayes(&p, 1, 4)
        );
    }

    #[test]
    fn overlap_exceeds_one() {
        let hs = hartle_srednicki(4, 2, &ratio(1, 2)).unwrap();
        let sr = hs.event("SR").unwrap();
        let (sum, union) = colour_event_overlap(&hs.ext, &sr).unwrap();
        assert_eq!(sum, ratio(3, 2));
        assert_eq!(union, ratio(15, 16));
    }

    #[test]
    fn injectivity() {
        let sb = sleeping_beauty();
        assert!(!is_injective(&sb.ext).overall);
        let hs = hartle_srednicki(2, 1, &ratio(1, 2)).unwrap();
        let inj = is_injective(&hs.ext);
        assert_eq!(
            inj.per_colour,
            vec![("R".into(), false), ("B".into(), true)]
        );
    }

    #[test]
    fn errors() {
        let sb = sleeping_beauty();
        let heads = sb.event("Heads").unwrap();
        assert_eq!(
            thirder_given_colour(&sb.ext, &heads, "R"),
            Err(Error::UnknownColour("R".into()))
        );
        let mon = sb.event("Mon").unwrap();
        assert_eq!(
            thirder_given_colour(&sb.ext, &mon, "-"),
            Err(Error::NotObjective)
        );
        let hs = hartle_srednicki(2, 1, &ratio(1, 2)).unwrap();
        let blue_never = hs.event("AR").unwrap();
        assert_eq!(
            colour_event_overlap(&hs.ext, &blue_never.and(&hs.event("SR").unwrap())),
            Err(Error::ConditionOnNull)
        );
    }

    #[test]
    fn full_space_has_probability_one() {
        let hs = hartle_srednicki(3, 2, &ratio(3, 4)).unwrap();
        let all = hs.ext.full();
        for y in ["R", "B"] {
            assert_eq!(thirder_given_colour(&hs.ext, &all, y).unwrap(), ratio(1, 1));
            assert_eq!(halfer_given_colour(&hs.ext, &all, y).unwrap(), ratio(1, 1));
        }
    }
}
