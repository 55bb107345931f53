//! Blocks of `Z_v` and their difference multisets.
//!
//! A block is a `k`-subset of the cyclic group `Z_v`, stored with its
//! elements reduced mod `v` and sorted ascending. The difference multiset
//! `ΔB = {x − y (mod v) : x, y ∈ B, x ≠ y}` contains `k(k−1)` ordered
//! differences and is the basic object everything else in this crate counts.

use std::fmt;

use crate::error::BlockError;

/// An element of `Z_v`.
pub type Residue = u64;

/// Orders beyond this make the dense per-residue counting tables (and any
/// developed design) unreasonably large; reject them at the boundary instead
/// of letting a hostile document allocate gigabytes.
pub const MAX_ORDER: u64 = 10_000_000;

/// A `k`-subset of `Z_v`, reduced mod `v` and sorted ascending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    elements: Vec<Residue>,
}

impl Block {
    /// Builds a block from raw residues: reduces mod `v`, sorts, and rejects
    /// duplicates (two inputs congruent mod `v` collapse to one residue).
    pub fn new(elements: impl IntoIterator<Item = u64>, v: u64) -> Result<Self, BlockError> {
        if v == 0 {
            return Err(BlockError::ZeroOrder);
        }
        if v > MAX_ORDER {
            return Err(BlockError::OrderTooLarge { v, max: MAX_ORDER });
        }
        let mut elements: Vec<Residue> = elements.into_iter().map(|e| e % v).collect();
        if elements.len() < 2 {
            return Err(BlockError::TooSmall { len: elements.len() });
        }
        elements.sort_unstable();
        for pair in elements.windows(2) {
            if pair[0] == pair[1] {
                return Err(BlockError::DuplicateElement { element: pair[0] });
            }
        }
        Ok(Block { elements })
    }

    /// Block size `k`.
    pub fn k(&self) -> usize {
        self.elements.len()
    }

    /// Elements in ascending order.
    pub fn elements(&self) -> &[Residue] {
        &self.elements
    }

    /// The multiset of all `k(k−1)` ordered differences `x − y (mod v)`.
    ///
    /// The result is closed under `d ↦ v − d` since differences come in
    /// `±` pairs. Repeats are returned as-is; it is the caller's job to
    /// decide whether a repeated difference is an error.
    pub fn delta(&self, v: u64) -> Vec<Residue> {
        let mut diffs = Vec::with_capacity(self.elements.len() * (self.elements.len() - 1));
        for (i, &x) in self.elements.iter().enumerate() {
            for &y in &self.elements[i + 1..] {
                // y > x, so y − x is a plain subtraction and x − y wraps.
                diffs.push(y - x);
                diffs.push(v - (y - x));
            }
        }
        diffs
    }

    /// Translate every element by `offset` mod `v`.
    pub fn translate(&self, offset: u64, v: u64) -> Block {
        let mut elements: Vec<Residue> =
            self.elements.iter().map(|&e| (e + offset) % v).collect();
        elements.sort_unstable();
        Block { elements }
    }

    /// Translate so the smallest element becomes 0 (for comparing blocks as
    /// orbit representatives; construction keeps elements as given).
    pub fn normalize(&self, v: u64) -> Block {
        match self.elements.first() {
            Some(&min) => self.translate(v - min, v),
            None => self.clone(),
        }
    }

    /// The mirror image `{−x : x ∈ B}`, which covers the same `±` difference
    /// classes as `self`.
    pub fn reflect(&self, v: u64) -> Block {
        let mut elements: Vec<Residue> =
            self.elements.iter().map(|&e| (v - e) % v).collect();
        elements.sort_unstable();
        Block { elements }
    }

    /// True when every element lies in `[0, v)`.
    pub fn fits(&self, v: u64) -> bool {
        self.elements.iter().all(|&e| e < v)
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}
