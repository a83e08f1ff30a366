//! Seeded random small models for cross-checking the exact engine.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::cellset::CellSet;
use crate::rational::{int, ratio, Rational};
use crate::space::{Atom, ObjectiveSpace};

use super::{numbered, sequential, Scenario};

#[derive(Clone, Copy, Debug)]
pub struct CorpusOptions {
    pub max_cells: usize,
    pub max_atoms: usize,
    pub require_connected: bool,
    /// Give every nonempty `𝒳(ω)` the same size.
    pub deterministic_size: bool,
    /// Colour each cell by its own label.
    pub injective: bool,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            max_cells: 4,
            max_atoms: 6,
            require_connected: false,
            deterministic_size: false,
            injective: false,
        }
    }
}

/// Draws one model; `None` if the draw is rejected by the options.
fn draw(rng: &mut StdRng, opts: &CorpusOptions, name: String) -> Option<Scenario> {
    let m = rng.random_range(1..=opts.max_cells);
    let n = rng.random_range(1..=opts.max_atoms);
    let k = rng.random_range(1..=m);
    let raw: Vec<i64> = (0..n).map(|_| rng.random_range(1..=6)).collect();
    let total: i64 = raw.iter().sum();

    let mut atoms = Vec::with_capacity(n);
    for (i, &r) in raw.iter().enumerate() {
        let occupied = if rng.random_bool(0.15) {
            CellSet::empty(m)
        } else if opts.deterministic_size {
            random_subset_of_size(rng, m, k)
        } else {
            let mask = rng.random_range(1..(1u64 << m));
            CellSet::from_mask(m, mask)
        };
        let colours: Vec<u32> = if opts.injective {
            (0..m as u32).collect()
        } else {
            (0..m).map(|_| rng.random_range(0..2)).collect()
        };
        atoms.push(Atom::new(format!("w{i}"), ratio(r, total), occupied).with_colours(colours));
    }
    let colours = if opts.injective {
        numbered(1..=m as i64)
    } else {
        vec!["a".into(), "b".into()]
    };
    let space = ObjectiveSpace::new(numbered(1..=m as i64), colours, atoms).ok()?;
    if opts.require_connected && !space.occupancy_graph().connected {
        return None;
    }
    Some(Scenario::new(name, space))
}

fn random_subset_of_size(rng: &mut StdRng, m: usize, k: usize) -> CellSet {
    let mut cells: Vec<usize> = (0..m).collect();
    for i in 0..k {
        let j = rng.random_range(i..m);
        cells.swap(i, j);
    }
    CellSet::from_indices(m, cells[..k].iter().copied())
}

/// `count` models drawn from a generator seeded with `seed`.
pub fn corpus(seed: u64, count: usize, opts: &CorpusOptions) -> Vec<Scenario> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Some(sc) = draw(&mut rng, opts, format!("corpus-{seed}-{}", out.len())) {
            out.push(sc);
        }
    }
    out
}

/// A random `𝒳' ⊆ 𝒳` per atom, keeping `ℙ(𝒳' ≠ ∅) > 0`.
pub fn random_restriction(space: &ObjectiveSpace, seed: u64) -> Vec<CellSet> {
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let sub: Vec<CellSet> = space
            .atoms()
            .iter()
            .map(|a| {
                let mut s = a.occupied.clone();
                for x in a.occupied.iter() {
                    if rng.random_bool(0.4) {
                        s.remove(x);
                    }
                }
                s
            })
            .collect();
        if sub.iter().any(|s| !s.is_empty()) {
            return sub;
        }
    }
}

/// Random hazards `h_0..h_M` with `M` in `1..=max_m`, drawn from small
/// fractions including 0 and 1, and a `U` with up to `max_u` levels.
pub fn random_sequential(seed: u64, max_m: usize, max_u: u32) -> Scenario {
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let m = rng.random_range(1..=max_m);
        let mut hazards: Vec<Rational> = (0..m)
            .map(|_| {
                let d = rng.random_range(1..=4);
                ratio(rng.random_range(0..=d), d)
            })
            .collect();
        hazards.push(int(1));
        let u = rng.random_range(1..=max_u);
        if let Ok(sc) = sequential(&hazards, u) {
            return sc;
        }
    }
}
