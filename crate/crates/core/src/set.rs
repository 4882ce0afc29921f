//! Fixed-width bitsets over a ground set of at most 64 elements.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest ground set the bitset representation supports.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `{0, .., n-1}` stored as a 64-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Set(u64);

impl Set {
    pub const EMPTY: Set = Set(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        Set(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The full set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n >= 64 {
            Set(u64::MAX)
        } else {
            Set((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_ELEMENTS);
        Set(1u64 << v)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        elements.into_iter().fold(Set::EMPTY, |s, v| s.with(v))
    }

    /// Like [`Set::from_elements`] but rejects elements `>= n`.
    pub fn try_from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        let mut s = Set::EMPTY;
        for v in elements {
            if v >= n {
                return Err(Error::invalid(alloc::format!(
                    "element {v} outside ground set of size {n}"
                )));
            }
            s.insert(v);
        }
        Ok(s)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_ELEMENTS && self.0 & (1u64 << v) != 0
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    #[must_use]
    pub fn with(self, v: usize) -> Self {
        Set(self.0 | (1u64 << v))
    }

    #[inline]
    #[must_use]
    pub fn without(self, v: usize) -> Self {
        Set(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn union(self, other: Set) -> Self {
        Set(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Set) -> Self {
        Set(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Set) -> Self {
        Set(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        Set::full(n).difference(self)
    }

    #[inline]
    pub fn is_subset(self, other: Set) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: Set) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Elements in ascending order.
    pub fn iter(self) -> SetIter {
        SetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, starting from the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Every subset of `{0, .., n-1}` in increasing mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Set> {
        debug_assert!(n < 64);
        (0u64..(1u64 << n)).map(Set)
    }
}

impl fmt::Debug for Set {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Set {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for Set {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Set::from_elements(iter)
    }
}

impl IntoIterator for Set {
    type Item = usize;
    type IntoIter = SetIter;
    fn into_iter(self) -> SetIter {
        self.iter()
    }
}

pub struct SetIter(u64);

impl Iterator for SetIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SetIter {}

/// Submask enumeration, `0` first and `mask` last.
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Set;

    fn next(&mut self) -> Option<Set> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(Set(cur))
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Set {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Set {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        let elements: Vec<usize> = Vec::deserialize(deserializer)?;
        if let Some(&bad) = elements.iter().find(|&&v| v >= MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(alloc::format!(
                "element {bad} exceeds the {MAX_ELEMENTS}-element bitset"
            )));
        }
        Ok(Set::from_elements(elements))
    }
}

/// The finite ground set `V = {0, .., n-1}`, optionally labelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ground set must have at least one element"));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::capacity("ground set size", MAX_ELEMENTS, n));
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut g = GroundSet::new(labels.len())?;
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("ground set labels must be unique"));
        }
        g.labels = Some(labels);
        Ok(g)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn full(&self) -> Set {
        Set::full(self.n)
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(v)).map(String::as_str)
    }
}
