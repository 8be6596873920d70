//! Dense bitset subsets of `[0, q^d)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PointId;

/// A subset `E` of `F_q^d`, one bit per canonical point index.
///
/// The cardinality is cached and kept equal to the popcount of `words`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointSet {
    universe: usize,
    words: Vec<u64>,
    size: usize,
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            words: vec![0; universe.div_ceil(64)],
            size: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut words = vec![u64::MAX; universe.div_ceil(64)];
        if !universe.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (universe % 64)) - 1;
            }
        }
        Self {
            universe,
            words,
            size: universe,
        }
    }

    pub fn from_ids<I: IntoIterator<Item = PointId>>(universe: usize, ids: I) -> Result<Self> {
        let mut set = Self::empty(universe);
        for id in ids {
            if id.index() >= universe {
                return Err(Error::IndexOutOfRange {
                    index: id.index(),
                    len: universe,
                });
            }
            set.insert(id);
        }
        Ok(set)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn contains(&self, id: PointId) -> bool {
        let i = id.index();
        i < self.universe && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns `true` if the point was newly added.
    pub fn insert(&mut self, id: PointId) -> bool {
        let i = id.index();
        assert!(i < self.universe, "index {i} outside universe");
        let mask = 1u64 << (i % 64);
        let word = &mut self.words[i / 64];
        if *word & mask == 0 {
            *word |= mask;
            self.size += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, id: PointId) -> bool {
        let i = id.index();
        if i >= self.universe {
            return false;
        }
        let mask = 1u64 << (i % 64);
        let word = &mut self.words[i / 64];
        if *word & mask != 0 {
            *word &= !mask;
            self.size -= 1;
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<PointId> {
        self.iter().collect()
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        self.recount();
    }

    pub fn union_with(&mut self, other: &PointSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.recount();
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_len(&self, other: &PointSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn first(&self) -> Option<PointId> {
        self.iter().next()
    }

    fn zip_with(&self, other: &PointSet, f: impl Fn(u64, u64) -> u64) -> PointSet {
        debug_assert_eq!(self.universe, other.universe);
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        let size = words.iter().map(|w| w.count_ones() as usize).sum();
        PointSet {
            universe: self.universe,
            words,
            size,
        }
    }

    fn recount(&mut self) {
        self.size = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = PointId;

    fn next(&mut self) -> Option<PointId> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(PointId::from(self.word_idx * 64 + bit));
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = PointId;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
