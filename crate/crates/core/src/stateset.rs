//! Fixed-capacity bit sets of state indices.

use std::fmt;

/// Index of a state in its automaton.
pub type StateId = usize;

/// A set of states backed by a bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    bits: Vec<u64>,
    capacity: usize,
}

impl StateSet {
    pub fn empty(capacity: usize) -> Self {
        StateSet {
            bits: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for q in 0..capacity {
            s.insert(q);
        }
        s
    }

    pub fn singleton(capacity: usize, q: StateId) -> Self {
        let mut s = Self::empty(capacity);
        s.insert(q);
        s
    }

    pub fn from_iter_with(capacity: usize, states: impl IntoIterator<Item = StateId>) -> Self {
        let mut s = Self::empty(capacity);
        for q in states {
            s.insert(q);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, q: StateId) -> bool {
        debug_assert!(q < self.capacity);
        let (w, b) = (q / 64, q % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, q: StateId) -> bool {
        q < self.capacity && self.bits[q / 64] & (1 << (q % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    /// Size of the intersection, saturating at `cap`.
    pub fn intersection_len_upto(&self, other: &StateSet, cap: usize) -> usize {
        let mut n = 0;
        for (a, b) in self.bits.iter().zip(&other.bits) {
            n += (a & b).count_ones() as usize;
            if n >= cap {
                return cap;
            }
        }
        n
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        StateSet {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect(),
            capacity: self.capacity,
        }
    }

    pub fn first(&self) -> Option<StateId> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
