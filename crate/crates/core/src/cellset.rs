//! Bit sets over the cell universe K.

use std::fmt;

use smallvec::SmallVec;

/// A subset of the cell universe `{0, .., universe-1}`.
///
/// Bits beyond `universe` are never set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSet {
    universe: u32,
    words: SmallVec<[u64; 1]>,
}

impl CellSet {
    pub fn empty(universe: usize) -> Self {
        let n_words = universe.div_ceil(64).max(1);
        CellSet {
            universe: universe as u32,
            words: SmallVec::from_elem(0, n_words),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low `universe` bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        Self::from_indices(
            universe,
            (0..universe.min(64)).filter(|i| mask >> i & 1 == 1),
        )
    }

    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    /// # Panics
    /// If `cell` is outside the universe.
    pub fn insert(&mut self, cell: usize) {
        assert!(
            cell < self.universe(),
            "cell {cell} outside universe of size {}",
            self.universe
        );
        self.words[cell / 64] |= 1 << (cell % 64);
    }

    pub fn remove(&mut self, cell: usize) {
        if cell < self.universe() {
            self.words[cell / 64] &= !(1 << (cell % 64));
        }
    }

    pub fn contains(&self, cell: usize) -> bool {
        cell < self.universe() && self.words[cell / 64] >> (cell % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &CellSet) -> CellSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        self.zip_with(other, |a, b| a | b)
    }

    fn zip_with(&self, other: &CellSet, f: impl Fn(u64, u64) -> u64) -> CellSet {
        debug_assert_eq!(self.universe, other.universe);
        CellSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_set_is_representable() {
        let s = CellSet::empty(3);
        assert!(s.is_empty());
        assert_eq!(s.len(), 0);
        assert_eq!(s.iter().count(), 0);
    }

    #[test]
    fn large_universes_span_words() {
        let s = CellSet::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert!(s.contains(129) && !s.contains(128));
    }

    #[test]
    #[should_panic]
    fn insert_outside_universe_panics() {
        CellSet::empty(2).insert(2);
    }

    proptest! {
        #[test]
        fn subset_and_set_algebra_agree(a in 0u64..256, b in 0u64..256) {
            let sa = CellSet::from_mask(8, a);
            let sb = CellSet::from_mask(8, b);
            prop_assert_eq!(sa.intersection(&sb), CellSet::from_mask(8, a & b));
            prop_assert_eq!(sa.union(&sb), CellSet::from_mask(8, a | b));
            prop_assert_eq!(sa.is_subset(&sb), a & !b == 0);
            prop_assert_eq!(sa.len(), a.count_ones() as usize);
        }
    }
}
