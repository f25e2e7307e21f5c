//! The subset lattice: machine-word subsets of `[n]`, canonically ordered
//! set families, convex hulls, and exact maximal-chain counting.
//!
//! Positions are 1-based outside (`{1, …, n}`) and bit `i−1` inside. The
//! canonical order on subsets is by size, then colexicographically; since
//! the colex order of equal-sized sets coincides with the numeric order of
//! their bit patterns, canonical comparison is just `(popcount, bits)`.

use num::bigint::BigUint;
use num::rational::BigRational;
use num::{BigInt, One, Zero};
use thiserror::Error;

/// Ground sets larger than this do not fit the `u64` bit representation
/// (one bit is kept in reserve so sizes and masks never overflow).
pub const MAX_GROUND: u32 = 62;

/// Chain counting materializes one table entry per subset; `2^24` entries
/// of `u128` (256 MiB) is the accepted ceiling.
pub const MAX_CHAIN_GROUND: u32 = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("ground set size {0} exceeds cap {MAX_GROUND}")]
    GroundTooLarge(u32),
    #[error("position {0} outside ground set of size {1}")]
    PositionOutOfRange(u32, u32),
    #[error("subsets live in different ground sets ({0} vs {1})")]
    GroundMismatch(u32, u32),
    #[error("operation undefined for an empty family")]
    EmptyFamily,
    #[error("chain counting supports n ≤ {MAX_CHAIN_GROUND}, got {0}")]
    ChainGroundTooLarge(u32),
}

/// The ground set `[n] = {1, …, n}`, `0 ≤ n ≤ 62`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet(u32);

impl GroundSet {
    pub fn new(n: u32) -> Result<Self, LatticeError> {
        if n > MAX_GROUND {
            return Err(LatticeError::GroundTooLarge(n));
        }
        Ok(GroundSet(n))
    }

    pub fn n(self) -> u32 {
        self.0
    }

    /// Bit mask with all `n` positions set.
    pub fn full_mask(self) -> u64 {
        (1u64 << self.0) - 1
    }

    /// All `2^n` subsets in canonical order (size, then colex). Lazy: safe to
    /// call for any ground set, caller decides how far to iterate.
    pub fn subsets(self) -> CanonicalSubsets {
        CanonicalSubsets::new(self)
    }
}

/// A subset of a ground set, stored as a bit pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    ground: GroundSet,
    bits: u64,
}

// Subsets order by ground set, then canonically (size, then colex), so that
// sorted containers and derived family orders follow the canonical order.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ground, self.canonical_key()).cmp(&(other.ground, other.canonical_key()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Subset {
    pub fn empty(ground: GroundSet) -> Self {
        Subset { ground, bits: 0 }
    }

    pub fn full(ground: GroundSet) -> Self {
        Subset {
            ground,
            bits: ground.full_mask(),
        }
    }

    /// From 1-based positions; rejects positions outside the ground set.
    pub fn from_indices(ground: GroundSet, indices: &[u32]) -> Result<Self, LatticeError> {
        let mut bits = 0u64;
        for &i in indices {
            if i == 0 || i > ground.n() {
                return Err(LatticeError::PositionOutOfRange(i, ground.n()));
            }
            bits |= 1u64 << (i - 1);
        }
        Ok(Subset { ground, bits })
    }

    /// From a raw bit pattern; bits beyond the ground set must be clear.
    pub fn from_bits(ground: GroundSet, bits: u64) -> Result<Self, LatticeError> {
        if bits & !ground.full_mask() != 0 {
            return Err(LatticeError::PositionOutOfRange(
                bits.ilog2() + 1,
                ground.n(),
            ));
        }
        Ok(Subset { ground, bits })
    }

    pub fn ground(self) -> GroundSet {
        self.ground
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    /// Sorted 1-based member positions — the external representation.
    pub fn indices(self) -> Vec<u32> {
        (1..=self.ground.n()).filter(|&i| self.contains(i)).collect()
    }

    pub fn size(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn contains(self, index: u32) -> bool {
        index >= 1 && index <= self.ground.n() && self.bits >> (index - 1) & 1 == 1
    }

    /// Canonical sort key: size first, then colex (= numeric bit value).
    pub fn canonical_key(self) -> (u32, u64) {
        (self.size(), self.bits)
    }

    /// Inclusion test; both subsets must share the ground set, which holds
    /// for everything produced inside one family or embedding.
    pub fn is_subset_of(self, other: Subset) -> bool {
        debug_assert_eq!(self.ground, other.ground);
        self.bits & !other.bits == 0
    }

    /// `self ⊆ other` or `other ⊆ self` (equality counts as comparable);
    /// errors when the two subsets live in different ground sets.
    pub fn comparable_with(self, other: Subset) -> Result<bool, LatticeError> {
        if self.ground != other.ground {
            return Err(LatticeError::GroundMismatch(
                self.ground.n(),
                other.ground.n(),
            ));
        }
        Ok(self.is_subset_of(other) || other.is_subset_of(self))
    }

    pub fn union(self, other: Subset) -> Subset {
        debug_assert_eq!(self.ground, other.ground);
        Subset {
            ground: self.ground,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(self, other: Subset) -> Subset {
        debug_assert_eq!(self.ground, other.ground);
        Subset {
            ground: self.ground,
            bits: self.bits & other.bits,
        }
    }

    pub fn complement(self) -> Subset {
        Subset {
            ground: self.ground,
            bits: !self.bits & self.ground.full_mask(),
        }
    }
}

/// Lazy stream of all subsets of a ground set in canonical order: sizes
/// ascending, same-size sets in colex (= ascending bit value, via Gosper's
/// hack).
#[derive(Debug, Clone)]
pub struct CanonicalSubsets {
    ground: GroundSet,
    size: u32,
    next_bits: u64,
    done: bool,
}

impl CanonicalSubsets {
    fn new(ground: GroundSet) -> Self {
        CanonicalSubsets {
            ground,
            size: 0,
            next_bits: 0,
            done: false,
        }
    }
}

impl Iterator for CanonicalSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let out = Subset {
            ground: self.ground,
            bits: self.next_bits,
        };
        let n = self.ground.n();
        // Advance within the current size (Gosper), else start the next size.
        let v = self.next_bits;
        let advanced = if v == 0 {
            None
        } else {
            let low = v & v.wrapping_neg();
            let ripple = v + low;
            let next = ripple | (((v ^ ripple) / low) >> 2);
            (next <= self.ground.full_mask()).then_some(next)
        };
        match advanced {
            Some(next) => self.next_bits = next,
            None => {
                if self.size >= n {
                    self.done = true;
                } else {
                    self.size += 1;
                    self.next_bits = (1u64 << self.size) - 1;
                }
            }
        }
        Some(out)
    }
}

/// All bit patterns of `width` bits with exactly `size` ones, ascending
/// numerically (colex order on index sets). The constructions use this to
/// range over fixed-size choices within a span of positions.
pub(crate) fn fixed_popcount_bits(width: u32, size: u32) -> FixedPopcountBits {
    debug_assert!(width <= MAX_GROUND);
    FixedPopcountBits {
        limit: (1u64 << width) - 1,
        next: (size <= width).then(|| (1u64 << size) - 1),
    }
}

#[derive(Debug, Clone)]
pub(crate) struct FixedPopcountBits {
    limit: u64,
    next: Option<u64>,
}

impl Iterator for FixedPopcountBits {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let v = self.next?;
        self.next = if v == 0 {
            None
        } else {
            let low = v & v.wrapping_neg();
            let ripple = v + low;
            let next = ripple | (((v ^ ripple) / low) >> 2);
            (next <= self.limit).then_some(next)
        };
        Some(v)
    }
}

/// An ordered family of distinct subsets of one ground set.
///
/// The member list is always in canonical order (size, then colex) with
/// duplicates removed, so two families with the same member set compare
/// equal and serialize identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<Subset>,
}

impl SetFamily {
    /// Canonicalizes: sorts by (size, colex) and drops duplicates. Errors if
    /// a member lives in a different ground set.
    pub fn new(ground: GroundSet, members: Vec<Subset>) -> Result<Self, LatticeError> {
        for m in &members {
            if m.ground() != ground {
                return Err(LatticeError::GroundMismatch(m.ground().n(), ground.n()));
            }
        }
        let mut members = members;
        members.sort_by_key(|s| s.canonical_key());
        members.dedup();
        Ok(SetFamily { ground, members })
    }

    pub fn empty(ground: GroundSet) -> Self {
        SetFamily {
            ground,
            members: Vec::new(),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members
            .binary_search_by_key(&s.canonical_key(), |m| m.canonical_key())
            .is_ok()
    }

    /// The convex hull: every set squeezed between two members,
    /// `{b : a ⊆ b ⊆ c for some members a, c}`. Members themselves are
    /// always included. Errors on the empty family.
    ///
    /// Work is proportional to the intervals generated (`2^{|c∖a|}` per
    /// nested member pair), not to `2^n`.
    pub fn convex_hull(&self) -> Result<SetFamily, LatticeError> {
        if self.is_empty() {
            return Err(LatticeError::EmptyFamily);
        }
        let mut out: std::collections::BTreeSet<u64> = std::collections::BTreeSet::new();
        for a in &self.members {
            for c in &self.members {
                if a.is_subset_of(*c) {
                    // Every b with a ⊆ b ⊆ c: a's bits plus any subset of c∖a.
                    let free = c.bits() & !a.bits();
                    let mut sub = 0u64;
                    loop {
                        out.insert(a.bits() | sub);
                        if sub == free {
                            break;
                        }
                        sub = (sub.wrapping_sub(free)) & free;
                    }
                }
            }
        }
        let members = out
            .into_iter()
            .map(|bits| Subset {
                ground: self.ground,
                bits,
            })
            .collect();
        SetFamily::new(self.ground, members)
    }

    /// True when no set of `self` is contained in (or equal to) a set of
    /// `other`, nor vice versa. Errors on mismatched ground sets.
    pub fn incomparable_with(&self, other: &SetFamily) -> Result<bool, LatticeError> {
        if self.ground != other.ground {
            return Err(LatticeError::GroundMismatch(
                self.ground.n(),
                other.ground.n(),
            ));
        }
        for a in &self.members {
            for b in &other.members {
                if a.is_subset_of(*b) || b.is_subset_of(*a) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Number of maximal chains `∅ = C_0 ⊂ C_1 ⊂ … ⊂ C_n = [n]` containing at
/// least one member of `fam`. The empty family meets no chains.
///
/// Dynamic program over the subset lattice: `ways(S)` counts orderings of
/// `S` whose prefixes all avoid the family; the answer is
/// `n! − ways([n])`. Capped at `n ≤ 24` (table size, and `24! < 2^128`).
pub fn count_chains_meeting(fam: &SetFamily) -> Result<BigUint, LatticeError> {
    let n = fam.ground().n();
    if n > MAX_CHAIN_GROUND {
        return Err(LatticeError::ChainGroundTooLarge(n));
    }
    let full = fam.ground().full_mask();
    let mut ways = vec![0u128; 1usize << n];
    let blocked = |bits: u64| -> bool {
        fam.contains(Subset {
            ground: fam.ground(),
            bits,
        })
    };
    ways[0] = if blocked(0) { 0 } else { 1 };
    for s in 1..=full {
        if blocked(s) {
            continue; // chains may not pass through a family member
        }
        let mut total = 0u128;
        let mut rest = s;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            total += ways[(s & !low) as usize];
            rest &= rest - 1;
        }
        ways[s as usize] = total;
    }
    let avoiding = ways[full as usize];
    Ok(factorial(n as u64) - BigUint::from(avoiding))
}

/// Lower bound on [`count_chains_meeting`] for *any* family of `t` distinct
/// subsets of `[n]`: `(t − t(t−1)/n) · ⌊n/2⌋! · ⌈n/2⌉!` as an exact
/// rational. Not positive for `t ≥ n + 1`; callers must check the sign
/// before dividing by it.
pub fn chains_meeting_lower_bound(t: u64, n: u64) -> BigRational {
    assert!(n >= 1, "ground set must be nonempty");
    let t = BigRational::from(BigInt::from(t));
    let n_rat = BigRational::from(BigInt::from(n));
    let factor = &t - &t * (&t - BigRational::one()) / n_rat;
    let halves = factorial(n / 2) * factorial(n - n / 2);
    factor * BigRational::from(BigInt::from(halves))
}

pub fn factorial(n: u64) -> BigUint {
    let mut out = BigUint::one();
    for i in 2..=n {
        out *= BigUint::from(i);
    }
    out
}

/// Binomial coefficient by the multiplicative formula; `0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut out = BigUint::one();
    for i in 0..k {
        out = out * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    out
}
