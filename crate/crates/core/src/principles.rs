//! Exact checks of the principles a measure on the extended space may satisfy.
//!
//! Statements about arbitrary objective events are checked on objective
//! atoms only: both sides are additive in the event, so agreement on atoms
//! gives agreement everywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::extended::{ExtendedSpace, Location, Measure};
use crate::feasibility::{compile, solve, solve_polytope, Solution};
use crate::measures::build_thirder;
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Principle {
    /// Null objective events get no mass and the observer exists.
    PN,
    /// Given `𝒳 = B`, the location is uniform on `B`.
    PI,
    /// `PI` conditional on every objective event as well.
    PIst,
    /// Given `S = x`, objective events have law `ℙ(· | x ∈ 𝒳)`.
    PEI,
    /// Objective events have law `ℙ(· | 𝒳 ≠ ∅)`.
    PP,
    /// Given `S = n`, events of the future randomisations keep their law.
    PNFI,
}

impl Principle {
    pub const ALL: [Principle; 6] = [
        Principle::PN,
        Principle::PI,
        Principle::PIst,
        Principle::PEI,
        Principle::PP,
        Principle::PNFI,
    ];
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Principle::PN => "PN",
            Principle::PI => "PI",
            Principle::PIst => "PIst",
            Principle::PEI => "PEI",
            Principle::PP => "PP",
            Principle::PNFI => "PNFI",
        };
        f.write_str(s)
    }
}

impl FromStr for Principle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Principle::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown principle `{s}`")))
    }
}

/// A failed instance: the measure gives `lhs` where the principle asks `rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub witness: String,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipleReport {
    pub principle: Principle,
    pub holds: bool,
    pub violations: Vec<Violation>,
    /// Violations found beyond the cap.
    pub omitted: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { cap: 32 }
    }
}

struct Collector {
    principle: Principle,
    cap: usize,
    violations: Vec<Violation>,
    omitted: usize,
}

impl Collector {
    fn new(principle: Principle, opts: &CheckOptions) -> Self {
        Collector {
            principle,
            cap: opts.cap.max(1),
            violations: Vec::new(),
            omitted: 0,
        }
    }

    fn expect(&mut self, witness: impl FnOnce() -> String, lhs: Rational, rhs: Rational) {
        if lhs == rhs {
            return;
        }
        if self.violations.len() < self.cap {
            self.violations.push(Violation {
                witness: witness(),
                lhs,
                rhs,
            });
        } else {
            self.omitted += 1;
        }
    }

    fn finish(self) -> PrincipleReport {
        PrincipleReport {
            principle: self.principle,
            holds: self.violations.is_empty(),
            violations: self.violations,
            omitted: self.omitted,
        }
    }
}

pub fn check(
    ext: &ExtendedSpace,
    m: &Measure,
    p: Principle,
    opts: &CheckOptions,
) -> Result<PrincipleReport> {
    Ok(match p {
        Principle::PN => check_pn(ext, m, opts),
        Principle::PI => check_pi(ext, m, opts),
        Principle::PIst => check_pist(ext, m, opts),
        Principle::PEI => check_pei(ext, m, opts),
        Principle::PP => check_pp(ext, m, opts),
        Principle::PNFI => check_pnfi(ext, m, opts)?,
    })
}

fn cell(ext: &ExtendedSpace, x: usize) -> &str {
    &ext.base().cells()[x]
}

fn location_mass(ext: &ExtendedSpace, m: &Measure, x: usize) -> Rational {
    (0..ext.n_objective())
        .map(|o| m.weight(ext.index(o, Location::Cell(x))))
        .sum()
}

/// No mass outside `{S ∈ 𝒳}`, boundary included, and none on null atoms.
pub fn check_pn(ext: &ExtendedSpace, m: &Measure, opts: &CheckOptions) -> PrincipleReport {
    let mut c = Collector::new(Principle::PN, opts);
    for (omega, a) in ext.base().atoms().iter().enumerate() {
        for l in 0..ext.n_locations() {
            let loc = ext.split(l).1;
            let idx = ext.index(omega, loc);
            let allowed =
                !a.weight.is_zero() && matches!(loc, Location::Cell(x) if a.occupied.contains(x));
            if !allowed {
                c.expect(
                    || format!("{} outside S ∈ X", ext.atom_name(idx)),
                    m.weight(idx).clone(),
                    Rational::zero(),
                );
            }
        }
    }
    c.finish()
}

/// `m(S = x | 𝒳 = B) = 1_B(x)/|B|` whenever `m(𝒳 = B) > 0`.
pub fn check_pi(ext: &ExtendedSpace, m: &Measure, opts: &CheckOptions) -> PrincipleReport {
    let mut c = Collector::new(Principle::PI, opts);
    let mut groups: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (omega, a) in ext.base().atoms().iter().enumerate() {
        if !a.occupied.is_empty() {
            groups.entry(a.occupied.clone()).or_default().push(omega);
        }
    }
    for (set, members) in groups {
        let total: Rational = members.iter().map(|&o| m.objective_mass(o)).sum();
        if total.is_zero() {
            continue;
        }
        let names: Vec<&str> = set.iter().map(|x| cell(ext, x)).collect();
        for x in 0..ext.base().n_cells() {
            let at_x: Rational = members
                .iter()
                .map(|&o| m.weight(ext.index(o, Location::Cell(x))))
                .sum();
            let want = if set.contains(x) {
                Rational::one() / int(set.len() as i64)
            } else {
                Rational::zero()
            };
            c.expect(
                || format!("S={} | X={{{}}}", cell(ext, x), names.join(",")),
                at_x / &total,
                want,
            );
        }
    }
    c.finish()
}

/// `m(S = x | ω) = 1/|𝒳(ω)|` for `x ∈ 𝒳(ω)` whenever `m(ω) > 0`.
pub fn check_pist(ext: &ExtendedSpace, m: &Measure, opts: &CheckOptions) -> PrincipleReport {
    let mut c = Collector::new(Principle::PIst, opts);
    for (omega, a) in ext.base().atoms().iter().enumerate() {
        let total = m.objective_mass(omega);
        if total.is_zero() || a.occupied.is_empty() {
            continue;
        }
        let want = Rational::one() / int(a.occupancy() as i64);
        for x in a.occupied.iter() {
            c.expect(
                || format!("S={} | {}", cell(ext, x), a.label),
                m.weight(ext.index(omega, Location::Cell(x))) / &total,
                want.clone(),
            );
        }
    }
    c.finish()
}

/// `m(ω | S = x) = ℙ(ω | x ∈ 𝒳)` whenever `m(S = x) > 0`. Mass on a cell that
/// is never occupied is reported as a violation.
pub fn check_pei(ext: &ExtendedSpace, m: &Measure, opts: &CheckOptions) -> PrincipleReport {
    let mut c = Collector::new(Principle::PEI, opts);
    let base = ext.base();
    for x in 0..base.n_cells() {
        let at_x = location_mass(ext, m, x);
        if at_x.is_zero() {
            continue;
        }
        let q = base.prob_where(|a| a.occupied.contains(x));
        if q.is_zero() {
            c.expect(
                || format!("S={} is never occupied", cell(ext, x)),
                at_x,
                Rational::zero(),
            );
            continue;
        }
        for (omega, a) in base.atoms().iter().enumerate() {
            let want = if a.occupied.contains(x) {
                &a.weight / &q
            } else {
                Rational::zero()
            };
            c.expect(
                || format!("{} | S={}", a.label, cell(ext, x)),
                m.weight(ext.index(omega, Location::Cell(x))) / &at_x,
                want,
            );
        }
    }
    c.finish()
}

/// `m(ω) = ℙ(ω | 𝒳 ≠ ∅)`.
pub fn check_pp(ext: &ExtendedSpace, m: &Measure, opts: &CheckOptions) -> PrincipleReport {
    let mut c = Collector::new(Principle::PP, opts);
    let nonempty = ext.base().prob_nonempty();
    for (omega, a) in ext.base().atoms().iter().enumerate() {
        let want = if a.occupied.is_empty() {
            Rational::zero()
        } else {
            &a.weight / &nonempty
        };
        c.expect(|| a.label.clone(), m.objective_mass(omega), want);
    }
    c.finish()
}

/// `m(G | S = n) = ℙ(G)` for atoms `G` of `σ(V_n, .., V_M, U)` whenever
/// `m(S = n) > 0`.
pub fn check_pnfi(
    ext: &ExtendedSpace,
    m: &Measure,
    opts: &CheckOptions,
) -> Result<PrincipleReport> {
    let base = ext.base();
    if base.sequential().is_none() {
        return Err(Error::PnfiWithoutSequentialStructure);
    }
    let mut c = Collector::new(Principle::PNFI, opts);
    for x in 0..base.n_cells() {
        let at_x = location_mass(ext, m, x);
        if at_x.is_zero() {
            continue;
        }
        let day = x + 1;
        let mut groups: BTreeMap<(Vec<bool>, u32), (Rational, Rational)> = BTreeMap::new();
        for (omega, a) in base.atoms().iter().enumerate() {
            let tag = a.seq.as_ref().expect("validated sequential space");
            let e = groups
                .entry((tag.v[day..].to_vec(), tag.u))
                .or_insert_with(|| (Rational::zero(), Rational::zero()));
            e.0 += &a.weight;
            e.1 += m.weight(ext.index(omega, Location::Cell(x)));
        }
        for ((future, u), (pg, mg)) in groups {
            let bits: String = future.iter().map(|&b| if b { '1' } else { '0' }).collect();
            c.expect(
                || format!("V{day}..={bits},U={u} | S={}", cell(ext, x)),
                mg / &at_x,
                pg,
            );
        }
    }
    Ok(c.finish())
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniquenessReport {
    /// Dimension of the `{PN, PI, PEI}` solution set.
    pub dimension: usize,
    pub equals_thirder: bool,
}

/// On a connected occupancy graph, `{PN, PI, PEI}` has exactly one solution
/// and it is the Thirder measure.
pub fn check_uniqueness(ext: &ExtendedSpace) -> Result<UniquenessReport> {
    let cs = compile(ext, &[Principle::PN, Principle::PI, Principle::PEI])?;
    let thirder = build_thirder(ext)?;
    let solution = solve(&cs);
    let dimension = solution
        .dimension()
        .expect("the Thirder measure is always a solution");
    if !ext.base().occupancy_graph().connected {
        return Err(Error::GraphDisconnected { dimension });
    }
    let equals_thirder =
        matches!(&solution, Solution::Unique(m) if m.weights() == thirder.weights());
    Ok(UniquenessReport {
        dimension,
        equals_thirder,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourPrinciplesReport {
    /// `{PN, PI, PEI, PP}` has a solution.
    pub feasible: bool,
    /// The common size of every nonempty `𝒳`, if there is one.
    pub deterministic_k: Option<usize>,
    pub connected: bool,
    /// Whether the solver agrees with the closed-form test. Without
    /// connectivity only "deterministic implies feasible" is required.
    pub consistent: bool,
}

pub fn check_four_principles(ext: &ExtendedSpace) -> Result<FourPrinciplesReport> {
    let cs = compile(
        ext,
        &[Principle::PN, Principle::PI, Principle::PEI, Principle::PP],
    )?;
    let feasible = solve(&cs).is_feasible();
    let sizes: std::collections::BTreeSet<usize> = ext
        .base()
        .atoms()
        .iter()
        .map(|a| a.occupancy())
        .filter(|&k| k > 0)
        .collect();
    let deterministic_k = if sizes.len() == 1 {
        sizes.first().copied()
    } else {
        None
    };
    let connected = ext.base().occupancy_graph().connected;
    let consistent = if connected {
        feasible == deterministic_k.is_some()
    } else {
        deterministic_k.is_none() || feasible
    };
    Ok(FourPrinciplesReport {
        feasible,
        deterministic_k,
        connected,
        consistent,
    })
}

/// Whether `{PN, PEI}` and `{PN, PNFI}` have the same solution set.
pub fn pei_pnfi_agree(ext: &ExtendedSpace) -> Result<bool> {
    let pei = solve_polytope(&compile(ext, &[Principle::PN, Principle::PEI])?);
    let pnfi = solve_polytope(&compile(ext, &[Principle::PN, Principle::PNFI])?);
    Ok(pei.same_as(&pnfi))
}

#[cfg(test)]
mod tests;
