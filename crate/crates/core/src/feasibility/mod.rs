//! Measures satisfying a chosen set of principles, as an exact polytope.
//!
//! Each principle is compiled into affine equalities in the extended atom
//! weights `w_{ω,loc}`. Conditional statements `m(A | C) = r` are multiplied
//! out to `m(A ∩ C) = r·m(C)`, which says nothing when `m(C) = 0`, exactly
//! where the principle itself says nothing. Together with `w ≥ 0` and
//! `Σ w = 1` the system describes the solution set without approximation.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::extended::{ExtendedSpace, Location, Measure};
use crate::principles::Principle;
use crate::rational::{int, Rational};

pub mod linalg;
pub mod simplex;

use linalg::{Row, Rref};
use simplex::{lp_max, Lp};

/// One affine equality and the statement it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub row: Row,
    pub origin: String,
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    ext: ExtendedSpace,
    principles: Vec<Principle>,
    constraints: Vec<Constraint>,
}

impl ConstraintSystem {
    pub fn ext(&self) -> &ExtendedSpace {
        &self.ext
    }

    pub fn principles(&self) -> &[Principle] {
        &self.principles
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn n_vars(&self) -> usize {
        self.ext.n_atoms()
    }

    /// Whether `weights` is nonnegative and meets every equality.
    pub fn satisfied_by(&self, weights: &[Rational]) -> bool {
        weights.len() == self.n_vars()
            && weights.iter().all(|w| !w.is_negative())
            && self
                .constraints
                .iter()
                .all(|c| c.row.dot(weights) == c.row.rhs)
    }
}

/// Builds the equality system for `principles` plus normalisation.
pub fn compile(ext: &ExtendedSpace, principles: &[Principle]) -> Result<ConstraintSystem> {
    let mut principles = principles.to_vec();
    principles.sort();
    principles.dedup();
    let mut b = Builder {
        ext,
        out: Vec::new(),
    };
    let all: Vec<(usize, Rational)> = (0..ext.n_atoms()).map(|i| (i, int(1))).collect();
    b.push(all, int(1), "normalisation".into());
    for p in &principles {
        match p {
            Principle::PN => b.pn(),
            Principle::PI => b.pi(),
            Principle::PIst => b.pist(),
            Principle::PEI => b.pei()?,
            Principle::PP => b.pp(),
            Principle::PNFI => b.pnfi()?,
        }
    }
    Ok(ConstraintSystem {
        ext: ext.clone(),
        principles,
        constraints: b.out,
    })
}

struct Builder<'a> {
    ext: &'a ExtendedSpace,
    out: Vec<Constraint>,
}

impl Builder<'_> {
    fn push(&mut self, coeffs: Vec<(usize, Rational)>, rhs: Rational, origin: String) {
        self.out.push(Constraint {
            row: Row::new(coeffs, rhs),
            origin,
        });
    }

    fn cell(&self, x: usize) -> &str {
        &self.ext.base().cells()[x]
    }

    fn label(&self, omega: usize) -> &str {
        &self.ext.base().atoms()[omega].label
    }

    /// Every weight on atom `ω`, with coefficient `c`.
    fn atom_terms(&self, omega: usize, c: &Rational) -> Vec<(usize, Rational)> {
        (0..self.ext.n_locations())
            .map(|l| (omega * self.ext.n_locations() + l, c.clone()))
            .collect()
    }

    // w_{ω,loc} = 0 whenever loc ∉ 𝒳(ω), ∂ included.
    fn pn(&mut self) {
        let ext = self.ext;
        for (omega, a) in ext.base().atoms().iter().enumerate() {
            for l in 0..ext.n_locations() {
                let inside = matches!(ext.split(l).1, Location::Cell(x) if a.occupied.contains(x));
                if !inside {
                    let idx = ext.index(omega, ext.split(l).1);
                    self.push(
                        vec![(idx, int(1))],
                        int(0),
                        format!("PN {}", ext.atom_name(idx)),
                    );
                }
            }
        }
    }

    // |B| m(S=x, 𝒳=B) = 1_B(x) m(𝒳=B), for each nonempty B and x ∈ K.
    fn pi(&mut self) {
        let ext = self.ext;
        let mut groups: BTreeMap<_, Vec<usize>> = BTreeMap::new();
        for (omega, a) in ext.base().atoms().iter().enumerate() {
            if !a.occupied.is_empty() {
                groups.entry(a.occupied.clone()).or_default().push(omega);
            }
        }
        for (set, members) in groups {
            let size = int(set.len() as i64);
            for x in 0..ext.base().n_cells() {
                let mut coeffs = Vec::new();
                for &omega in &members {
                    coeffs.push((ext.index(omega, Location::Cell(x)), size.clone()));
                    if set.contains(x) {
                        coeffs.extend(self.atom_terms(omega, &int(-1)));
                    }
                }
                let names: Vec<&str> = set.iter().map(|c| self.cell(c)).collect();
                let origin = format!("PI S={} | X={{{}}}", self.cell(x), names.join(","));
                self.push(coeffs, int(0), origin);
            }
        }
    }

    // |B| w_{ω,x} = m(ω) for each atom with B = 𝒳(ω) nonempty and x ∈ B.
    fn pist(&mut self) {
        let ext = self.ext;
        for (omega, a) in ext.base().atoms().iter().enumerate() {
            let size = int(a.occupancy() as i64);
            for x in a.occupied.iter() {
                let mut coeffs = self.atom_terms(omega, &int(-1));
                coeffs.push((ext.index(omega, Location::Cell(x)), size.clone()));
                let origin = format!("PIst S={} | {}", self.cell(x), self.label(omega));
                self.push(coeffs, int(0), origin);
            }
        }
    }

    // Q_x w_{ω,x} = ℙ(ω) 1{x ∈ 𝒳(ω)} m(S=x); m(S=x) = 0 when Q_x = 0.
    fn pei(&mut self) -> Result<()> {
        let ext = self.ext;
        let stats = ext.base().occupancy_stats()?;
        let n = ext.n_objective();
        for x in 0..ext.base().n_cells() {
            let q = &stats.big_q[x];
            let column: Vec<usize> = (0..n).map(|o| ext.index(o, Location::Cell(x))).collect();
            if q.is_zero() {
                let coeffs = column.iter().map(|&i| (i, int(1))).collect();
                self.push(
                    coeffs,
                    int(0),
                    format!("PEI S={} unreachable", self.cell(x)),
                );
                continue;
            }
            for (omega, a) in ext.base().atoms().iter().enumerate() {
                let p = if a.occupied.contains(x) {
                    a.weight.clone()
                } else {
                    Rational::zero()
                };
                let mut coeffs: Vec<(usize, Rational)> = column.iter().map(|&i| (i, -&p)).collect();
                coeffs.push((column[omega], q.clone()));
                let origin = format!("PEI {} | S={}", self.label(omega), self.cell(x));
                self.push(coeffs, int(0), origin);
            }
        }
        Ok(())
    }

    // m(ω) = ℙ(ω | 𝒳 ≠ ∅).
    fn pp(&mut self) {
        let ext = self.ext;
        let nonempty = ext.base().prob_nonempty();
        for (omega, a) in ext.base().atoms().iter().enumerate() {
            let target = if a.occupied.is_empty() {
                Rational::zero()
            } else {
                &a.weight / &nonempty
            };
            let origin = format!("PP {}", self.label(omega));
            self.push(self.atom_terms(omega, &int(1)), target, origin);
        }
    }

    // m(G ∩ {S=n}) = ℙ(G) m(S=n) for G an atom of σ(V_n, .., V_M, U).
    fn pnfi(&mut self) -> Result<()> {
        let ext = self.ext;
        let base = ext.base();
        if base.sequential().is_none() {
            return Err(Error::PnfiWithoutSequentialStructure);
        }
        for x in 0..base.n_cells() {
            let day = x + 1;
            let mut groups: BTreeMap<(Vec<bool>, u32), (Rational, Vec<usize>)> = BTreeMap::new();
            for (omega, a) in base.atoms().iter().enumerate() {
                let tag = a.seq.as_ref().expect("validated sequential space");
                let entry = groups
                    .entry((tag.v[day..].to_vec(), tag.u))
                    .or_insert_with(|| (Rational::zero(), Vec::new()));
                entry.0 += &a.weight;
                entry.1.push(omega);
            }
            let column: Vec<usize> = (0..ext.n_objective())
                .map(|o| ext.index(o, Location::Cell(x)))
                .collect();
            for ((future, u), (pg, members)) in groups {
                let mut coeffs: Vec<(usize, Rational)> =
                    column.iter().map(|&i| (i, -&pg)).collect();
                coeffs.extend(members.iter().map(|&o| (column[o], int(1))));
                let bits: String = future.iter().map(|&b| if b { '1' } else { '0' }).collect();
                let origin = format!("PNFI V{day}..={bits},U={u} | S={}", self.cell(x));
                self.push(coeffs, int(0), origin);
            }
        }
        Ok(())
    }
}

/// Classification of the solution set.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Infeasible,
    Unique(Measure),
    /// A polytope of positive dimension; `witness` lies in its relative
    /// interior and `basis` spans the directions of its affine hull.
    Affine {
        dimension: usize,
        witness: Measure,
        basis: Vec<Vec<Rational>>,
    },
}

impl Solution {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, Solution::Infeasible)
    }

    pub fn dimension(&self) -> Option<usize> {
        match self {
            Solution::Infeasible => None,
            Solution::Unique(_) => Some(0),
            Solution::Affine { dimension, .. } => Some(*dimension),
        }
    }
}

/// The solution set of a system, kept with its affine hull for comparisons.
#[derive(Clone, Debug)]
pub struct Polytope {
    ext: ExtendedSpace,
    inner: Option<Hull>,
}

#[derive(Clone, Debug)]
struct Hull {
    equations: Rref,
    witness: Vec<Rational>,
    basis: Vec<Vec<Rational>>,
}

impl Polytope {
    pub fn is_empty(&self) -> bool {
        self.inner.is_none()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.inner.as_ref().map(|h| h.basis.len())
    }

    pub fn solution(&self) -> Solution {
        let Some(h) = &self.inner else {
            return Solution::Infeasible;
        };
        let witness =
            Measure::new(&self.ext, h.witness.clone()).expect("witness lies in the simplex");
        if h.basis.is_empty() {
            Solution::Unique(witness)
        } else {
            Solution::Affine {
                dimension: h.basis.len(),
                witness,
                basis: h.basis.clone(),
            }
        }
    }

    /// Whether `other ⊆ self`. A polytope inside the nonnegative orthant is
    /// its affine hull intersected with the orthant, so comparing hulls
    /// suffices.
    pub fn contains(&self, other: &Polytope) -> bool {
        match (&self.inner, &other.inner) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => {
                a.equations.satisfied_by(&b.witness)
                    && b.basis.iter().all(|v| a.equations.annihilates(v))
            }
        }
    }

    pub fn same_as(&self, other: &Polytope) -> bool {
        self.contains(other) && other.contains(self)
    }
}

pub fn solve(cs: &ConstraintSystem) -> Solution {
    solve_polytope(cs).solution()
}

pub fn solve_polytope(cs: &ConstraintSystem) -> Polytope {
    Polytope {
        ext: cs.ext.clone(),
        inner: hull(cs),
    }
}

fn hull(cs: &ConstraintSystem) -> Option<Hull> {
    let n = cs.n_vars();
    let rows: Vec<&Row> = cs.constraints.iter().map(|c| &c.row).collect();
    let fixed = presolve(n, &rows)?;

    let mut eqs = Rref::new(n);
    for (j, _) in fixed.iter().enumerate().filter(|(_, &f)| f) {
        eqs.add(Row::new(vec![(j, int(1))], int(0))).ok()?;
    }
    for r in &rows {
        eqs.add((*r).clone()).ok()?;
    }

    let free = eqs.free_vars();
    let mut column = vec![usize::MAX; n];
    for (c, &f) in free.iter().enumerate() {
        column[f] = c;
    }
    let expand = |y: &[Rational]| {
        let mut full = vec![Rational::zero(); n];
        for (c, &f) in free.iter().enumerate() {
            full[f] = y[c].clone();
        }
        eqs.complete(&full)
    };

    // x_p = rhs - Σ a_f y_f ≥ 0, deduplicated up to positive scaling.
    let mut ineqs: BTreeMap<Vec<(usize, Rational)>, Rational> = BTreeMap::new();
    for (p, row) in eqs.pivot_rows() {
        let coeffs: Vec<(usize, Rational)> = row
            .coeffs
            .iter()
            .filter(|(j, _)| *j != p)
            .map(|(j, c)| (column[*j], c.clone()))
            .collect();
        let Some((_, lead)) = coeffs.first() else {
            if row.rhs.is_negative() {
                return None;
            }
            continue;
        };
        let scale = lead.abs();
        let key: Vec<(usize, Rational)> = coeffs.iter().map(|(j, c)| (*j, c / &scale)).collect();
        let rhs = &row.rhs / &scale;
        ineqs
            .entry(key)
            .and_modify(|h| {
                if rhs < *h {
                    *h = rhs.clone();
                }
            })
            .or_insert(rhs);
    }
    let d = free.len();
    let g: Vec<Vec<Rational>> = ineqs
        .keys()
        .map(|k| {
            let mut dense = vec![Rational::zero(); d];
            for (j, c) in k {
                dense[*j] = c.clone();
            }
            dense
        })
        .collect();
    let h: Vec<Rational> = ineqs.values().cloned().collect();

    // Repeatedly maximise the sum of the weights not yet seen positive; the
    // ones that stay at zero vanish on the whole polytope.
    let mut undecided: Vec<bool> = fixed.iter().map(|f| !f).collect();
    let mut points: Vec<Vec<Rational>> = Vec::new();
    loop {
        let mut c = vec![Rational::zero(); d];
        for j in (0..n).filter(|&j| undecided[j]) {
            if column[j] != usize::MAX {
                c[column[j]] += Rational::one();
            }
        }
        for (p, row) in eqs.pivot_rows() {
            if undecided[p] {
                for (j, a) in &row.coeffs {
                    if *j != p {
                        c[column[*j]] -= a;
                    }
                }
            }
        }
        let x = match lp_max(&g, &h, &c) {
            Lp::Optimal(y) => expand(&y),
            Lp::Infeasible => return None,
            Lp::Unbounded => unreachable!("weights are bounded by normalisation"),
        };
        let mut progressed = false;
        for j in 0..n {
            if undecided[j] && x[j].is_positive() {
                undecided[j] = false;
                progressed = true;
            }
        }
        points.push(x);
        if !progressed || !undecided.iter().any(|&u| u) {
            break;
        }
    }

    let mut equations = eqs.clone();
    for j in (0..n).filter(|&j| undecided[j]) {
        equations
            .add(Row::new(vec![(j, int(1))], int(0)))
            .expect("every solution vanishes here");
    }
    let count = int(points.len() as i64);
    let witness: Vec<Rational> = (0..n)
        .map(|j| points.iter().map(|x| &x[j]).sum::<Rational>() / &count)
        .collect();
    let basis = equations.nullspace();
    Some(Hull {
        equations,
        witness,
        basis,
    })
}

/// Variables forced to zero by rows whose live coefficients share one sign
/// and whose right side is zero. `None` when such a row cannot be met.
fn presolve(n: usize, rows: &[&Row]) -> Option<Vec<bool>> {
    let mut fixed = vec![false; n];
    loop {
        let mut changed = false;
        for r in rows {
            let live: Vec<&(usize, Rational)> =
                r.coeffs.iter().filter(|(j, _)| !fixed[*j]).collect();
            if live.is_empty() {
                if !r.rhs.is_zero() {
                    return None;
                }
                continue;
            }
            let positive = live.iter().all(|(_, c)| c.is_positive());
            let negative = live.iter().all(|(_, c)| c.is_negative());
            if !(positive || negative) {
                continue;
            }
            if r.rhs.is_zero() {
                for (j, _) in live {
                    fixed[*j] = true;
                }
                changed = true;
            } else if (positive && r.rhs.is_negative()) || (negative && r.rhs.is_positive()) {
                return None;
            }
        }
        if !changed {
            return Some(fixed);
        }
    }
}

#[cfg(test)]
mod tests;
