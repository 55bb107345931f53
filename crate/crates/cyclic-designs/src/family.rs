//! Difference families over `Z_v` and their verification.
//!
//! A family of `k`-subsets is a *cyclic difference packing* (CDP) when the
//! multiset union of all block differences hits every nonzero residue at
//! most once. The residues not hit form the *leave* (which always contains
//! 0). Two refinements matter here:
//!
//! * a `(v,k,1)` difference family (CDF) has leave exactly `{0}`;
//! * a `(v,k,k,1)` quotient difference family has leave equal to the order-`k`
//!   subgroup `{0, v/k, …, (k−1)v/k}` of `Z_v` (requires `k | v`).
//!
//! Verification counts every difference with a dense per-residue table and
//! reports a concrete witness on failure instead of a bare "invalid".

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::block::{Block, Residue, MAX_ORDER};
use crate::error::FamilyError;

/// The three kinds of family this crate distinguishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Packing: no difference repeats, arbitrary leave.
    Cdp,
    /// `(v,k,1)`-CDF: leave `{0}`.
    Cdf,
    /// `(v,k,k,1)`-CDF: leave is the order-`k` subgroup.
    QuotientCdf,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Cdp => "cdp",
            FamilyKind::Cdf => "cdf",
            FamilyKind::QuotientCdf => "quotient-cdf",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Group order, block size and declared kind of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignParams {
    pub v: u64,
    pub k: usize,
    pub kind: FamilyKind,
}

impl DesignParams {
    /// Checks the arithmetic admissibility of `(v, k, kind)`:
    /// a CDF needs `k(k−1) | v−1` (integral block count) and a quotient CDF
    /// needs `k | v` and `k(k−1) | v−k`. Packings are unconstrained.
    pub fn new(v: u64, k: usize, kind: FamilyKind) -> Result<Self, FamilyError> {
        if k < 2 {
            return Err(FamilyError::BadK { k });
        }
        if v == 0 || v > MAX_ORDER {
            return Err(FamilyError::Inadmissible {
                v,
                k,
                kind: kind.name(),
                reason: format!("order must lie in [1, {MAX_ORDER}]"),
            });
        }
        let kk = (k * (k - 1)) as u64;
        match kind {
            FamilyKind::Cdp => {}
            FamilyKind::Cdf => {
                if (v - 1) % kk != 0 {
                    return Err(FamilyError::Inadmissible {
                        v,
                        k,
                        kind: kind.name(),
                        reason: format!("v − 1 must be divisible by k(k−1) = {kk}"),
                    });
                }
            }
            FamilyKind::QuotientCdf => {
                if v % k as u64 != 0 {
                    return Err(FamilyError::Inadmissible {
                        v,
                        k,
                        kind: kind.name(),
                        reason: format!("k = {k} must divide v"),
                    });
                }
                if (v - k as u64) % kk != 0 {
                    return Err(FamilyError::Inadmissible {
                        v,
                        k,
                        kind: kind.name(),
                        reason: format!("v − k must be divisible by k(k−1) = {kk}"),
                    });
                }
            }
        }
        Ok(DesignParams { v, k, kind })
    }

    /// Number of base blocks a family of this kind must contain
    /// (`None` for packings, which have no fixed count).
    pub fn expected_blocks(&self) -> Option<u64> {
        let kk = (self.k * (self.k - 1)) as u64;
        match self.kind {
            FamilyKind::Cdp => None,
            FamilyKind::Cdf => Some((self.v - 1) / kk),
            FamilyKind::QuotientCdf => Some((self.v - self.k as u64) / kk),
        }
    }

    /// The leave a valid family of this kind must have (`None` for packings).
    pub fn expected_leave(&self) -> Option<BTreeSet<Residue>> {
        match self.kind {
            FamilyKind::Cdp => None,
            FamilyKind::Cdf => Some([0].into_iter().collect()),
            FamilyKind::QuotientCdf => {
                let step = self.v / self.k as u64;
                Some((0..self.k as u64).map(|j| j * step).collect())
            }
        }
    }
}

/// Per-residue multiplicity of the difference multiset `Δℱ`.
///
/// `counts[0]` is unused (0 is never a difference of distinct residues) and
/// residue 0 is always reported as uncovered, so the leave contains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageMap {
    counts: Vec<u32>,
}

impl CoverageMap {
    fn new(v: u64) -> Self {
        CoverageMap {
            counts: vec![0; v as usize],
        }
    }

    pub fn v(&self) -> u64 {
        self.counts.len() as u64
    }

    /// Multiplicity of the residue `d` in `Δℱ`.
    pub fn count(&self, d: Residue) -> u32 {
        self.counts[d as usize]
    }

    /// Residues with multiplicity 0, including 0 itself.
    pub fn leave(&self) -> BTreeSet<Residue> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(d, _)| d as Residue)
            .collect()
    }

    /// Smallest residue hit more than once, if any.
    pub fn first_collision(&self) -> Option<Residue> {
        self.counts
            .iter()
            .position(|&c| c >= 2)
            .map(|d| d as Residue)
    }

    /// Total multiplicity over all nonzero residues; equals
    /// `k(k−1) · |blocks|` for any family of `k`-blocks.
    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

/// Why a family failed verification, with a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invalidity {
    /// Block count does not match the declared kind.
    BlockCount { expected: u64, actual: u64 },
    /// Some difference is hit at least twice; `difference` is the smallest.
    RepeatedDifference { difference: Residue },
    /// The leave is not the one the declared kind requires; the witnesses
    /// are the symmetric difference (residues missing from / extra in the
    /// actual leave).
    WrongLeave {
        missing: Vec<Residue>,
        extra: Vec<Residue>,
    },
}

impl fmt::Display for Invalidity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invalidity::BlockCount { expected, actual } => {
                write!(f, "wrong block count: expected {expected}, got {actual}")
            }
            Invalidity::RepeatedDifference { difference } => {
                write!(f, "difference {difference} is covered more than once")
            }
            Invalidity::WrongLeave { missing, extra } => {
                write!(
                    f,
                    "leave mismatch: missing {missing:?} from the leave, extra {extra:?} in it"
                )
            }
        }
    }
}

/// Outcome of `verify_family`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Invalidity),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// A family of base blocks over `Z_v` with a declared kind.
///
/// Blocks are kept in construction order (section order of the source that
/// produced them) so output is reproducible; equality of the mathematical
/// object is equality of the block *sets*, see [`DifferenceFamily::same_blocks`].
#[derive(Debug, Clone)]
pub struct DifferenceFamily {
    params: DesignParams,
    blocks: Vec<Block>,
    leave: OnceLock<BTreeSet<Residue>>,
}

impl DifferenceFamily {
    /// Assembles a family after structural validation (every block fits `v`
    /// and has the declared size). Whether the differences actually work out
    /// is a question for [`DifferenceFamily::verify`], not construction.
    pub fn new(params: DesignParams, blocks: Vec<Block>) -> Result<Self, FamilyError> {
        for b in &blocks {
            if b.k() != params.k {
                return Err(FamilyError::MixedBlockSize {
                    expected: params.k,
                    got: b.k(),
                });
            }
            debug_assert!(b.fits(params.v));
        }
        Ok(DifferenceFamily {
            params,
            blocks,
            leave: OnceLock::new(),
        })
    }

    pub fn params(&self) -> DesignParams {
        self.params
    }

    pub fn v(&self) -> u64 {
        self.params.v
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn kind(&self) -> FamilyKind {
        self.params.kind
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Per-residue multiplicities of `Δℱ`. Repeats are counted, not
    /// rejected; this is the raw data every verdict is derived from.
    pub fn coverage(&self) -> CoverageMap {
        let v = self.params.v;
        let mut map = CoverageMap::new(v);
        for block in &self.blocks {
            for d in block.delta(v) {
                let c = &mut map.counts[d as usize];
                *c = c.saturating_add(1);
            }
        }
        map
    }

    /// The difference leave `Z_v ∖ Δℱ` (computed once, then cached).
    pub fn leave(&self) -> &BTreeSet<Residue> {
        self.leave.get_or_init(|| self.coverage().leave())
    }

    /// Checks the family against its declared kind.
    ///
    /// The checks run in a fixed order so witnesses are deterministic:
    /// block count first, then repeated differences (smallest witness),
    /// then the leave.
    pub fn verify(&self) -> Verdict {
        if let Some(expected) = self.params.expected_blocks() {
            let actual = self.blocks.len() as u64;
            if actual != expected {
                return Verdict::Invalid(Invalidity::BlockCount { expected, actual });
            }
        }
        let coverage = self.coverage();
        if let Some(difference) = coverage.first_collision() {
            return Verdict::Invalid(Invalidity::RepeatedDifference { difference });
        }
        if let Some(expected_leave) = self.params.expected_leave() {
            let leave = coverage.leave();
            if leave != expected_leave {
                let missing: Vec<Residue> =
                    expected_leave.difference(&leave).copied().collect();
                let extra: Vec<Residue> = leave.difference(&expected_leave).copied().collect();
                return Verdict::Invalid(Invalidity::WrongLeave { missing, extra });
            }
        }
        Verdict::Valid
    }

    /// True when both families have the same parameters and the same block
    /// set, regardless of block order.
    pub fn same_blocks(&self, other: &DifferenceFamily) -> bool {
        if self.params != other.params || self.blocks.len() != other.blocks.len() {
            return false;
        }
        let mut a = self.blocks.clone();
        let mut b = other.blocks.clone();
        a.sort();
        b.sort();
        a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(v: u64, kind: FamilyKind, blocks: &[&[u64]]) -> DifferenceFamily {
        let params = DesignParams::new(v, 4, kind).unwrap();
        let blocks = blocks
            .iter()
            .map(|b| Block::new(b.iter().copied(), v).unwrap())
            .collect();
        DifferenceFamily::new(params, blocks).unwrap()
    }

    #[test]
    fn perfect_family_coverage() {
        let f = family(13, FamilyKind::Cdf, &[&[0, 1, 3, 9]]);
        let cov = f.coverage();
        assert!((1..13).all(|d| cov.count(d) == 1));
        assert_eq!(f.leave().iter().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(f.verify(), Verdict::Valid);
    }

    #[test]
    fn empty_family_covers_nothing() {
        let params = DesignParams::new(13, 4, FamilyKind::Cdp).unwrap();
        let f = DifferenceFamily::new(params, vec![]).unwrap();
        let cov = f.coverage();
        assert_eq!(cov.total(), 0);
        assert_eq!(f.leave().len(), 13); // all of Z_13
        assert_eq!(f.verify(), Verdict::Valid);
    }

    #[test]
    fn trivial_group_accepts_the_empty_cdf() {
        let params = DesignParams::new(1, 4, FamilyKind::Cdf).unwrap();
        let f = DifferenceFamily::new(params, vec![]).unwrap();
        assert_eq!(f.verify(), Verdict::Valid);
    }

    #[test]
    fn three_block_packing_over_73() {
        // The three blocks of the 72t+1 packing at t = 1, entered by hand.
        // Exactly 36 residues are covered once and the leave is
        // {0} ∪ ±{7,8,12,15,19,27} ∪ ±{10,11,13,16,21,22,25,28,31,32,33,36}.
        let f = family(
            73,
            FamilyKind::Cdp,
            &[&[0, 23, 6, 9], &[0, 35, 5, 1], &[0, 49, 20, 2]],
        );
        let cov = f.coverage();
        assert_eq!(cov.total(), 36);
        assert!((1..73).all(|d| cov.count(d) <= 1));

        let mut expected: BTreeSet<u64> = [0u64].into_iter().collect();
        for h in [7u64, 8, 12, 15, 19, 27, 10, 11, 13, 16, 21, 22, 25, 28, 31, 32, 33, 36] {
            expected.insert(h);
            expected.insert(73 - h);
        }
        assert_eq!(f.leave(), &expected);
        assert_eq!(f.verify(), Verdict::Valid);
    }

    #[test]
    fn collision_witness_is_smallest() {
        let f = family(13, FamilyKind::Cdf, &[&[0, 1, 2, 4]]);
        // Difference 1 arises from both (1,0) and (2,1).
        assert_eq!(
            f.verify(),
            Verdict::Invalid(Invalidity::RepeatedDifference { difference: 1 })
        );
    }

    #[test]
    fn block_count_is_checked_before_differences() {
        let f = family(25, FamilyKind::Cdf, &[&[0, 1, 3, 9]]);
        assert_eq!(
            f.verify(),
            Verdict::Invalid(Invalidity::BlockCount {
                expected: 2,
                actual: 1
            })
        );
    }

    #[test]
    fn wrong_leave_reports_symmetric_difference() {
        // One block over Z_16 declared as a quotient CDF must leave exactly
        // {0,4,8,12}. {0,1,3,7} is collision-free but leaves {0,5,8,11}.
        let f = family(16, FamilyKind::QuotientCdf, &[&[0, 1, 3, 7]]);
        assert_eq!(
            f.verify(),
            Verdict::Invalid(Invalidity::WrongLeave {
                missing: vec![4, 12],
                extra: vec![5, 11],
            })
        );
    }

    #[test]
    fn admissibility_rules() {
        assert!(DesignParams::new(13, 4, FamilyKind::Cdf).is_ok());
        assert!(DesignParams::new(14, 4, FamilyKind::Cdf).is_err());
        assert!(DesignParams::new(40, 4, FamilyKind::QuotientCdf).is_ok());
        assert!(DesignParams::new(41, 4, FamilyKind::QuotientCdf).is_err());
        // 18 ≡ 2 (mod 4): k does not divide v.
        assert!(DesignParams::new(18, 4, FamilyKind::QuotientCdf).is_err());
        assert!(DesignParams::new(0, 4, FamilyKind::Cdp).is_err());
        assert!(DesignParams::new(10, 1, FamilyKind::Cdp).is_err());
    }

    #[test]
    fn quotient_leave_shape() {
        let p = DesignParams::new(220, 4, FamilyKind::QuotientCdf).unwrap();
        let leave: Vec<u64> = p.expected_leave().unwrap().into_iter().collect();
        assert_eq!(leave, vec![0, 55, 110, 165]);
        assert_eq!(p.expected_blocks(), Some(18));
    }
}
