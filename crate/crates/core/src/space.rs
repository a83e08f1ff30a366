//! Finite objective spaces and their occupancy structure.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num::{One, Signed, Zero};

use crate::cellset::CellSet;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, Rational};

/// Values of the sequential randomisations `(V_0, .., V_M)` and `U` on one atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeqTag {
    pub v: Vec<bool>,
    pub u: u32,
}

/// One outcome of the objective experiment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub label: String,
    pub weight: Rational,
    /// The occupied cells `𝒳(ω)`.
    pub occupied: CellSet,
    /// Colour index per cell, defined on every cell.
    pub colours: Vec<u32>,
    pub seq: Option<SeqTag>,
}

impl Atom {
    /// An atom whose cells all carry colour 0.
    pub fn new(label: impl Into<String>, weight: Rational, occupied: CellSet) -> Self {
        let n = occupied.universe();
        Atom {
            label: label.into(),
            weight,
            occupied,
            colours: vec![0; n],
            seq: None,
        }
    }

    pub fn with_colours(mut self, colours: Vec<u32>) -> Self {
        self.colours = colours;
        self
    }

    pub fn with_seq(mut self, tag: SeqTag) -> Self {
        self.seq = Some(tag);
        self
    }

    pub fn occupancy(&self) -> usize {
        self.occupied.len()
    }

    /// Number of occupied cells showing `colour`.
    pub fn colour_count(&self, colour: u32) -> usize {
        self.occupied
            .iter()
            .filter(|&x| self.colours[x] == colour)
            .count()
    }
}

/// Parameters of a sequential model: stop hazards `h_0..h_M` and the number of
/// equally likely levels of the auxiliary variable `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentialInfo {
    pub hazards: Vec<Rational>,
    pub u_levels: u32,
}

/// The objective probability space: weighted atoms carrying the occupied set
/// and the cell colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectiveSpace {
    cells: Vec<String>,
    colours: Vec<String>,
    atoms: Vec<Atom>,
    sequential: Option<SequentialInfo>,
}

impl ObjectiveSpace {
    /// Validates and builds a space. Atoms of weight zero are dropped.
    pub fn new(cells: Vec<String>, colours: Vec<String>, atoms: Vec<Atom>) -> Result<Self> {
        Self::with_sequential(cells, colours, atoms, None)
    }

    pub fn with_sequential(
        cells: Vec<String>,
        colours: Vec<String>,
        atoms: Vec<Atom>,
        sequential: Option<SequentialInfo>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidSpace(msg));
        if cells.is_empty() {
            return invalid("the cell set K must be nonempty".into());
        }
        if colours.is_empty() {
            return invalid("the colour alphabet must be nonempty".into());
        }
        if let Some(dup) = first_duplicate(&cells) {
            return invalid(format!("duplicate cell label `{dup}`"));
        }
        if let Some(dup) = first_duplicate(&colours) {
            return invalid(format!("duplicate colour `{dup}`"));
        }
        let labels: Vec<String> = atoms.iter().map(|a| a.label.clone()).collect();
        if let Some(dup) = first_duplicate(&labels) {
            return invalid(format!("duplicate atom label `{dup}`"));
        }
        let m = cells.len();
        let mut total = Rational::zero();
        for a in &atoms {
            if a.weight.is_negative() {
                return invalid(format!("atom `{}` has negative weight", a.label));
            }
            if a.occupied.universe() != m || a.colours.len() != m {
                return invalid(format!("atom `{}` does not cover all {m} cells", a.label));
            }
            if let Some(&c) = a.colours.iter().find(|&&c| c as usize >= colours.len()) {
                return invalid(format!("atom `{}` uses undeclared colour {c}", a.label));
            }
            total += &a.weight;
        }
        if !total.is_one() {
            return invalid(format!("weights sum to {}, not 1", fmt_rational(&total)));
        }
        let atoms: Vec<Atom> = atoms.into_iter().filter(|a| !a.weight.is_zero()).collect();
        if atoms.iter().all(|a| a.occupied.is_empty()) {
            return invalid("P(X = ∅) must be < 1".into());
        }
        if let Some(info) = &sequential {
            check_sequential(m, &atoms, info)?;
        }
        Ok(ObjectiveSpace {
            cells,
            colours,
            atoms,
            sequential,
        })
    }

    pub fn cells(&self) -> &[String] {
        &self.cells
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn colours(&self) -> &[String] {
        &self.colours
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn sequential(&self) -> Option<&SequentialInfo> {
        self.sequential.as_ref()
    }

    pub fn cell_index(&self, label: &str) -> Option<usize> {
        self.cells.iter().position(|c| c == label)
    }

    pub fn colour_index(&self, label: &str) -> Option<u32> {
        self.colours
            .iter()
            .position(|c| c == label)
            .map(|i| i as u32)
    }

    pub fn atom_index(&self, label: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a.label == label)
    }

    /// `ℙ` of the set of atoms selected by `pred`.
    pub fn prob_where(&self, pred: impl Fn(&Atom) -> bool) -> Rational {
        self.atoms
            .iter()
            .filter(|a| pred(a))
            .map(|a| &a.weight)
            .sum()
    }

    /// `𝔼(f)` for an atom-level function `f`.
    pub fn expect(&self, f: impl Fn(&Atom) -> Rational) -> Rational {
        self.atoms.iter().map(|a| &a.weight * f(a)).sum()
    }

    pub fn prob_nonempty(&self) -> Rational {
        self.prob_where(|a| !a.occupied.is_empty())
    }

    pub fn mean_occupancy(&self) -> Rational {
        self.expect(|a| int(a.occupancy() as i64))
    }

    /// Law of `X = |𝒳|`, on the values with positive probability.
    pub fn occupancy_law(&self) -> BTreeMap<usize, Rational> {
        let mut law = BTreeMap::new();
        for a in &self.atoms {
            *law.entry(a.occupancy()).or_insert_with(Rational::zero) += &a.weight;
        }
        law
    }

    pub fn occupancy_stats(&self) -> Result<OccupancyStats> {
        let mut q: BTreeMap<CellSet, Rational> = BTreeMap::new();
        let mut big_q = vec![Rational::zero(); self.n_cells()];
        for a in &self.atoms {
            *q.entry(a.occupied.clone()).or_insert_with(Rational::zero) += &a.weight;
            for x in a.occupied.iter() {
                big_q[x] += &a.weight;
            }
        }
        let mean_x: Rational = big_q.iter().sum();
        if mean_x.is_zero() {
            return Err(Error::NoObservers);
        }
        let lambda = mean_x.recip();
        Ok(OccupancyStats {
            q,
            big_q,
            mean_x,
            lambda,
        })
    }

    pub fn occupancy_graph(&self) -> OccupancyGraph {
        let mut edges = BTreeSet::new();
        for a in &self.atoms {
            let occ: Vec<usize> = a.occupied.iter().collect();
            for (i, &x) in occ.iter().enumerate() {
                for &y in &occ[i + 1..] {
                    edges.insert((x, y));
                }
            }
        }
        OccupancyGraph::new(self.n_cells(), edges)
    }

    /// `𝒳 ∩ cells` for every atom, as used for restricted measures.
    pub fn restrict_to(&self, cells: &CellSet) -> Vec<CellSet> {
        self.atoms
            .iter()
            .map(|a| a.occupied.intersection(cells))
            .collect()
    }
}

fn first_duplicate(items: &[String]) -> Option<&str> {
    let mut seen = HashSet::new();
    items
        .iter()
        .find(|s| !seen.insert(s.as_str()))
        .map(String::as_str)
}

fn check_sequential(m: usize, atoms: &[Atom], info: &SequentialInfo) -> Result<()> {
    let invalid = |msg: String| Err(Error::InvalidSpace(msg));
    if info.hazards.len() != m + 1 {
        return invalid(format!(
            "a sequential model over {m} cells needs {} hazards",
            m + 1
        ));
    }
    if info.u_levels == 0 {
        return invalid("u_levels must be at least 1".into());
    }
    for a in atoms {
        let Some(tag) = &a.seq else {
            return invalid(format!("atom `{}` lacks sequential values", a.label));
        };
        if tag.v.len() != m + 1 || tag.u >= info.u_levels {
            return invalid(format!(
                "atom `{}` has malformed sequential values",
                a.label
            ));
        }
        let Some(x) = tag.v.iter().position(|&b| b) else {
            return invalid(format!("atom `{}` never stops", a.label));
        };
        if a.occupied != CellSet::from_indices(m, 0..x) {
            return invalid(format!("atom `{}` is not occupied on days 1..X", a.label));
        }
    }
    Ok(())
}

/// `q_B = ℙ(𝒳 = B)`, `Q_x = ℙ(x ∈ 𝒳)`, `𝔼X` and `λ = 1/𝔼X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccupancyStats {
    /// Only sets with `q_B > 0` are present.
    pub q: BTreeMap<CellSet, Rational>,
    pub big_q: Vec<Rational>,
    pub mean_x: Rational,
    pub lambda: Rational,
}

/// Vertices are cells; `{x, y}` is an edge when `ℙ({x, y} ⊆ 𝒳) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccupancyGraph {
    pub n_vertices: usize,
    pub edges: BTreeSet<(usize, usize)>,
    pub connected: bool,
}

impl OccupancyGraph {
    fn new(n_vertices: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut g = OccupancyGraph {
            n_vertices,
            edges,
            connected: false,
        };
        g.connected = g.components().len() <= 1;
        g
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.edges.contains(&(x.min(y), x.max(y)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n_vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(x, y) in &self.edges {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n_vertices {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    fn sb() -> ObjectiveSpace {
        ObjectiveSpace::new(
            labels(2),
            vec!["-".into()],
            vec![
                Atom::new("H", ratio(1, 2), CellSet::from_indices(2, [0])),
                Atom::new("T", ratio(1, 2), CellSet::from_indices(2, [0, 1])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn sleeping_beauty_occupancy_stats() {
        let stats = sb().occupancy_stats().unwrap();
        assert_eq!(stats.q[&CellSet::from_indices(2, [0])], ratio(1, 2));
        assert_eq!(stats.q[&CellSet::from_indices(2, [0, 1])], ratio(1, 2));
        assert_eq!(stats.big_q, vec![ratio(1, 1), ratio(1, 2)]);
        assert_eq!(stats.mean_x, ratio(3, 2));
        assert_eq!(stats.lambda, ratio(2, 3));
    }

    #[test]
    fn deterministic_full_occupancy_stats() {
        let s = ObjectiveSpace::new(
            labels(4),
            vec!["-".into()],
            vec![Atom::new("w", ratio(1, 1), CellSet::full(4))],
        )
        .unwrap();
        let stats = s.occupancy_stats().unwrap();
        assert_eq!(stats.q.len(), 1);
        assert!(stats.big_q.iter().all(|q| q.is_one()));
        assert_eq!(stats.lambda, ratio(1, 4));
    }

    #[test]
    fn graph_of_sleeping_beauty_is_connected() {
        let g = sb().occupancy_graph();
        assert!(g.has_edge(0, 1));
        assert!(g.connected);
    }

    #[test]
    fn singleton_occupancy_graph_has_no_edges() {
        let atoms = (0..3)
            .map(|i| Atom::new(format!("a{i}"), ratio(1, 3), CellSet::from_indices(3, [i])))
            .collect();
        let g = ObjectiveSpace::new(labels(3), vec!["-".into()], atoms)
            .unwrap()
            .occupancy_graph();
        assert!(g.edges.is_empty());
        assert!(!g.connected);
        assert_eq!(g.components().len(), 3);
    }

    #[test]
    fn zero_weight_atoms_are_pruned() {
        let s = ObjectiveSpace::new(
            labels(1),
            vec!["-".into()],
            vec![
                Atom::new("a", ratio(1, 1), CellSet::full(1)),
                Atom::new("b", ratio(0, 1), CellSet::empty(1)),
            ],
        )
        .unwrap();
        assert_eq!(s.atoms().len(), 1);
    }

    #[test]
    fn invalid_spaces_are_rejected() {
        let one = || vec!["-".to_string()];
        // weights do not sum to one
        assert!(ObjectiveSpace::new(
            labels(1),
            one(),
            vec![Atom::new("a", ratio(1, 2), CellSet::full(1))]
        )
        .is_err());
        // nobody ever exists
        assert!(ObjectiveSpace::new(
            labels(1),
            one(),
            vec![Atom::new("a", ratio(1, 1), CellSet::empty(1))]
        )
        .is_err());
        // negative weight
        assert!(ObjectiveSpace::new(
            labels(1),
            one(),
            vec![
                Atom::new("a", ratio(3, 2), CellSet::full(1)),
                Atom::new("b", ratio(-1, 2), CellSet::full(1)),
            ]
        )
        .is_err());
        // colour outside the alphabet
        assert!(ObjectiveSpace::new(
            labels(1),
            one(),
            vec![Atom::new("a", ratio(1, 1), CellSet::full(1)).with_colours(vec![3])]
        )
        .is_err());
    }
}
