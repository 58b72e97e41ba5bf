//! Fixed-width bitset over vertex indices `0..n`.

use std::fmt;

/// Set of vertices, stored as 64-bit words. Word 0 holds vertices 0..64.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    nbits: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(nbits: usize) -> usize {
    nbits.div_ceil(64)
}

impl VertexSet {
    pub fn new(nbits: usize) -> Self {
        VertexSet {
            nbits,
            words: vec![0; word_count(nbits)],
        }
    }

    pub fn full(nbits: usize) -> Self {
        let mut s = Self::new(nbits);
        for w in 0..s.words.len() {
            s.words[w] = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(nbits: usize, it: I) -> Self {
        let mut s = Self::new(nbits);
        for v in it {
            s.insert(v);
        }
        s
    }

    /// Mask off bits at or beyond `nbits`.
    fn trim(&mut self) {
        let r = self.nbits % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn capacity(&self) -> usize {
        self.nbits
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.nbits);
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.nbits);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < self.nbits);
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Lowest vertex in the set, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.subtract(other);
        s
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &VertexSet) -> bool {
        self.intersection_len(other) == 0
    }

    /// Compare as binary numbers (bit v has place value 2^v). Used as the
    /// deterministic tie-break among equal-size sets.
    pub fn value_cmp(&self, other: &VertexSet) -> std::cmp::Ordering {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }

    /// Remove every vertex with index <= v.
    pub fn remove_through(&mut self, v: usize) {
        let w = v / 64;
        for i in 0..self.words.len().min(w) {
            self.words[i] = 0;
        }
        if w < self.words.len() {
            let r = v % 64;
            let keep = if r == 63 { 0 } else { !0u64 << (r + 1) };
            self.words[w] &= keep;
        }
    }

    /// Low 64 bits; valid as a full encoding only when `nbits <= 64`.
    pub fn low_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn from_mask(nbits: usize, mask: u64) -> Self {
        debug_assert!(nbits <= 64);
        let mut s = Self::new(nbits);
        if !s.words.is_empty() {
            s.words[0] = mask;
        }
        s.trim();
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
