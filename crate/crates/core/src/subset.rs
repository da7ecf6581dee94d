//! Bitmask subsets of a small ground set.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ground set supported by tabulated functions (2^20 values).
pub const MAX_GROUND: usize = 20;

/// A ground set `{0, .., n-1}` with `1 <= n <= 20`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::InvalidGroundSet(n));
        }
        Ok(GroundSet { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of subsets, `2^n`.
    pub fn subset_count(&self) -> usize {
        1 << self.n
    }

    pub fn full(&self) -> Subset {
        Subset((1u32 << self.n) - 1)
    }

    pub fn complement(&self, s: Subset) -> Subset {
        Subset(self.full().0 & !s.0)
    }

    /// All subsets in increasing mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..(1u32 << self.n)).map(Subset)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn check_element(&self, j: usize) -> Result<()> {
        if j >= self.n {
            return Err(Error::ElementOutOfRange {
                element: j,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.0 & !self.full().0 == 0
    }

    /// Fails with [`Error::GroundSetTooLarge`] when `n > limit`.
    pub fn require_at_most(&self, limit: usize) -> Result<()> {
        if self.n > limit {
            return Err(Error::GroundSetTooLarge { n: self.n, limit });
        }
        Ok(())
    }
}

/// A subset encoded as a bitmask: bit `i` set iff element `i` is a member.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        Subset(elements.into_iter().fold(0, |m, j| m | (1 << j)))
    }

    pub fn singleton(j: usize) -> Self {
        Subset(1 << j)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, j: usize) -> bool {
        self.0 >> j & 1 == 1
    }

    #[inline]
    pub fn with(self, j: usize) -> Self {
        Subset(self.0 | 1 << j)
    }

    #[inline]
    pub fn without(self, j: usize) -> Self {
        Subset(self.0 & !(1 << j))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// Every submask of `self`, starting from `self` and descending to the
    /// empty set (standard `(s - 1) & mask` descent).
    pub fn submasks(self) -> Submasks {
        Submasks {
            mask: self.0,
            next: Some(self.0),
        }
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, j) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_elements(iter)
    }
}

// Subsets cross the wire as ascending element lists.
impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = elements.iter().find(|&&j| j >= MAX_GROUND) {
            return Err(serde::de::Error::custom(format!(
                "element {bad} exceeds the ground set limit"
            )));
        }
        Ok(Subset::from_elements(elements))
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let j = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(j)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}

pub struct Submasks {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = Subset;

    #[inline]
    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.mask)
        };
        Some(Subset(cur))
    }
}
