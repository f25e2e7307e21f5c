//! Explicit families of pairwise-incomparable copies.
//!
//! The central construction packs copies of a poset `P` into the subset
//! lattice of `[N]`, `N = k·m`, by splitting the ground set into `k` blocks
//! of width `m`. A base embedding of minimal hull size `t` lives in one
//! *pivot* block; every other block carries a constant set. With block sets
//! encoded by the hull-interval labeling, each copy gets a length-`k` code
//! whose first coordinate inside the hull interval marks the pivot (and
//! equals the interval's left end `p`), so codes decode uniquely and, taken
//! in lexicographic order, no later copy has an image set below an earlier
//! copy's image set. Appending middle-sized tail sets over the unused
//! positions then turns that one-sided order into full pairwise
//! incomparability — the layered family.
//!
//! Alongside it: the family of shifted saturated chains (`path_family`), its
//! generalization to posets that embed into the lattice of their own height
//! (`thin_family`), and the stacked three-set families conjectured optimal
//! for the fork poset (`v_family`).

use std::sync::Arc;

use num::{BigRational, BigUint, One, Zero};
use thiserror::Error;

use crate::embedding::{
    height_embedding, min_hull_from, Embedding, EmbeddingError, EmbeddingKind,
};
use crate::labeling::{hull_interval_labeling, LabelingError, LatticeLabeling};
use crate::lattice::{binomial, fixed_popcount_bits, GroundSet, LatticeError, Subset, MAX_GROUND};
use crate::poset::{Poset, PosetError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("ε must lie strictly between 0 and 1, got {0}")]
    EpsilonOutOfRange(BigRational),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("block layout needs ground size {required}, above the cap {MAX_GROUND}")]
    BlocksTooWide { required: u64 },
    #[error("construction would emit {total} copies, above the cap {cap}")]
    TooManyCopies { total: BigUint, cap: usize },
    #[error("n = {n} cannot host the layered family; smallest feasible n is {minimal}")]
    InfeasibleN { n: u32, minimal: BigUint },
    #[error("poset admits no {0:?} embedding into the lattice of its own height")]
    NotHeightEmbeddable(EmbeddingKind),
    #[error("ambient n = {n} is below the copies' height {height}")]
    AmbientBelowHeight { height: u32, n: u32 },
    #[error("the stacked three-set family needs n ≥ 2, got {0}")]
    VFamilyTooSmall(u32),
    #[error("family mixes {0}")]
    MixedFamily(&'static str),
}

/// A list of copies of one poset in one ambient, carried with the data
/// needed to re-verify it. Builders in this module guarantee pairwise
/// incomparable images; [`crate::oracle::verify_packing`] re-checks.
#[derive(Debug, Clone)]
pub struct PackingFamily {
    ground: GroundSet,
    poset: Arc<Poset>,
    kind: EmbeddingKind,
    copies: Vec<Embedding>,
}

impl PackingFamily {
    /// Wraps copies after checking they share the ground set, poset, and
    /// kind. Incomparability is *not* checked here — it is the property
    /// under study, verified by the oracle module.
    pub fn new(
        ground: GroundSet,
        poset: Arc<Poset>,
        kind: EmbeddingKind,
        copies: Vec<Embedding>,
    ) -> Result<Self, ConstructionError> {
        for c in &copies {
            if c.ground() != ground {
                return Err(ConstructionError::MixedFamily("ground sets"));
            }
            if c.poset().as_ref() != poset.as_ref() {
                return Err(ConstructionError::MixedFamily("posets"));
            }
            if c.kind() != kind {
                return Err(ConstructionError::MixedFamily("embedding kinds"));
            }
        }
        Ok(PackingFamily {
            ground,
            poset,
            kind,
            copies,
        })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn copies(&self) -> &[Embedding] {
        &self.copies
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }
}

/// Everything about an ordered copy system except the copies themselves:
/// the base embedding and its labeling, the block layout, and the exact
/// copy count. Copies stream from [`Self::stream`] in code order.
#[derive(Debug, Clone)]
pub struct OrderedCopyPlan {
    base: Embedding,
    labeling: LatticeLabeling,
    kind: EmbeddingKind,
    hull_size: u64,
    block_width: u32,
    block_count: u32,
    ground: GroundSet,
    eps_prime: BigRational,
    total: BigUint,
}

impl OrderedCopyPlan {
    /// The minimum-hull witness the blocks replicate.
    pub fn base(&self) -> &Embedding {
        &self.base
    }

    pub fn labeling(&self) -> &LatticeLabeling {
        &self.labeling
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    /// Hull size `t` of the base embedding.
    pub fn hull_size(&self) -> u64 {
        self.hull_size
    }

    /// Block width `m` (the base embedding's ambient).
    pub fn block_width(&self) -> u32 {
        self.block_width
    }

    /// Number of blocks `k`.
    pub fn block_count(&self) -> u32 {
        self.block_count
    }

    /// The combined ground set of `k·m` positions.
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn eps_prime(&self) -> &BigRational {
        &self.eps_prime
    }

    /// Hull label interval `(p, p + t − 1)` of the base labeling.
    pub fn interval(&self) -> (u32, u32) {
        self.labeling.interval()
    }

    /// Exact number of copies the plan describes.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Copies in strictly increasing code order, built lazily.
    pub fn stream(&self) -> CopyStream<'_> {
        CopyStream {
            plan: self,
            digits: Vec::new(),
            cursors: Vec::new(),
            pivots: vec![None],
            primed: false,
            done: false,
        }
    }
}

/// One copy of an ordered system: its code, the pivot block index (0-based,
/// the first coordinate whose label falls in the hull interval), and the
/// embedding itself.
#[derive(Debug, Clone)]
pub struct OrderedCopy {
    pub code: Vec<u32>,
    pub pivot: usize,
    pub embedding: Embedding,
}

/// Lazy generator behind [`OrderedCopyPlan::stream`].
pub struct CopyStream<'a> {
    plan: &'a OrderedCopyPlan,
    digits: Vec<u32>,
    // cursors[d] = next digit value to try at depth d.
    cursors: Vec<u32>,
    // pivots[d] = pivot among digits[..d]; len = digits.len() + 1.
    pivots: Vec<Option<usize>>,
    primed: bool,
    done: bool,
}

impl CopyStream<'_> {
    /// Smallest allowed digit ≥ `from` at a coordinate: free once the pivot
    /// is placed; otherwise outside the interval or exactly `p` — and on the
    /// last coordinate of a pivotless prefix, only `p` itself.
    fn next_allowed(&self, mut from: u32, pivot_placed: bool, is_last: bool) -> Option<u32> {
        let (p, q) = self.plan.labeling.interval();
        let top = 1u32 << self.plan.block_width;
        if pivot_placed {
            return (from <= top).then_some(from);
        }
        if is_last {
            return (from <= p).then_some(p);
        }
        if from > p && from <= q {
            from = q + 1; // skip the interval body; only p enters it
        }
        (from <= top).then_some(from)
    }

    fn push_digit(&mut self, digit: u32) {
        let d = self.digits.len();
        let (p, q) = self.plan.labeling.interval();
        let pivot = self.pivots[d].or((p <= digit && digit <= q).then_some(d));
        self.digits.push(digit);
        self.cursors.push(digit + 1);
        self.pivots.push(pivot);
    }

    /// Extends the current prefix with minimal digits down to full depth.
    /// Every prefix completes: a pivotless last coordinate still admits `p`.
    fn descend(&mut self) {
        let k = self.plan.block_count as usize;
        while self.digits.len() < k {
            let d = self.digits.len();
            let digit = self
                .next_allowed(1, self.pivots[d].is_some(), d + 1 == k)
                .expect("every prefix extends to a full code");
            self.push_digit(digit);
        }
    }

    fn emit(&self) -> OrderedCopy {
        let plan = self.plan;
        let m = plan.block_width;
        let pivot = self.pivots[self.digits.len()].expect("full codes have a pivot");
        let mut fixed = 0u64;
        for (r, &digit) in self.digits.iter().enumerate() {
            if r != pivot {
                let block = plan
                    .labeling
                    .subset_with_rank(digit)
                    .expect("digits are valid labels");
                fixed |= block.bits() << (r as u32 * m);
            }
        }
        let assignment: Vec<Subset> = plan
            .base
            .assignment()
            .iter()
            .map(|w| {
                Subset::from_bits(plan.ground, (w.bits() << (pivot as u32 * m)) | fixed)
                    .expect("blocks stay inside the combined ground")
            })
            .collect();
        let embedding = Embedding::new_unchecked(
            Arc::clone(plan.base.poset()),
            plan.ground,
            assignment,
            plan.kind,
        );
        debug_assert!(Embedding::is_valid(
            plan.base.poset(),
            embedding.assignment(),
            plan.kind
        ));
        OrderedCopy {
            code: self.digits.clone(),
            pivot,
            embedding,
        }
    }
}

impl Iterator for CopyStream<'_> {
    type Item = OrderedCopy;

    fn next(&mut self) -> Option<OrderedCopy> {
        if self.done {
            return None;
        }
        let k = self.plan.block_count as usize;
        if !self.primed {
            self.primed = true;
            self.descend();
            return Some(self.emit());
        }
        // Odometer step: advance the deepest coordinate that still has a
        // larger allowed digit, then refill minimally.
        while self.digits.pop().is_some() {
            let d = self.digits.len();
            let cursor = self.cursors.pop().expect("cursor stack parallels digits");
            self.pivots.pop();
            if let Some(digit) = self.next_allowed(cursor, self.pivots[d].is_some(), d + 1 == k) {
                self.push_digit(digit);
                self.descend();
                return Some(self.emit());
            }
        }
        self.done = true;
        None
    }
}

/// An ordered copy system with its copies materialized in code order.
#[derive(Debug, Clone)]
pub struct OrderedCopySystem {
    plan: OrderedCopyPlan,
    copies: Vec<OrderedCopy>,
}

impl OrderedCopySystem {
    pub fn plan(&self) -> &OrderedCopyPlan {
        &self.plan
    }

    pub fn copies(&self) -> &[OrderedCopy] {
        &self.copies
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    /// First violation of the one-sided order law, if any: indices `(i, j)`,
    /// `i < j`, such that some image set of copy `j` is contained in an
    /// image set of copy `i`. `None` means the law holds for every pair.
    pub fn order_property_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.copies.len() {
            for j in (i + 1)..self.copies.len() {
                let earlier = self.copies[i].embedding.assignment();
                let later = self.copies[j].embedding.assignment();
                for &b in later {
                    for &a in earlier {
                        if b.is_subset_of(a) {
                            return Some((i, j));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Computes the block layout for packing copies of `poset` to within a
/// `1 − ε′` fraction of the ambient: a minimum-hull base embedding on
/// `B_m` (searching `m ≥ 1`; zero-width blocks cannot carry codes), the
/// smallest block count `k ≥ 1` with `(1 − t/2^m)^k ≤ ε′`, and the exact
/// copy count `Σ_{i=1..k} (2^m − t)^{i−1} (2^m)^{k−i}`.
pub fn plan_ordered_copies(
    poset: &Poset,
    kind: EmbeddingKind,
    eps_prime: &BigRational,
    m_max: u32,
) -> Result<OrderedCopyPlan, ConstructionError> {
    check_unit_interval(eps_prime)?;
    let found = min_hull_from(poset, kind, poset.height().max(1) as u32, m_max)?;
    let base = found.witness;
    let labeling = hull_interval_labeling(&base)?;
    let t = found.value;
    let m = found.ambient_m;
    let block_total = 1u64 << m;
    debug_assert!(t <= block_total);

    let ratio = BigRational::new((block_total - t).into(), block_total.into());
    let mut k: u32 = 1;
    let mut power = ratio.clone();
    while power > *eps_prime {
        k += 1;
        if u64::from(k) * u64::from(m) > u64::from(MAX_GROUND) {
            return Err(ConstructionError::BlocksTooWide {
                required: u64::from(k) * u64::from(m),
            });
        }
        power *= &ratio;
    }

    let ground = GroundSet::new(k * m)?;
    let outside = BigUint::from(block_total - t);
    let full = BigUint::from(block_total);
    let mut total = BigUint::zero();
    for i in 1..=k {
        total += outside.pow(i - 1) * full.pow(k - i);
    }

    Ok(OrderedCopyPlan {
        base,
        labeling,
        kind,
        hull_size: t,
        block_width: m,
        block_count: k,
        ground,
        eps_prime: eps_prime.clone(),
        total,
    })
}

/// [`plan_ordered_copies`] plus materialization of every copy, capped.
pub fn build_ordered_copies(
    poset: &Poset,
    kind: EmbeddingKind,
    eps_prime: &BigRational,
    m_max: u32,
    max_copies: usize,
) -> Result<OrderedCopySystem, ConstructionError> {
    let plan = plan_ordered_copies(poset, kind, eps_prime, m_max)?;
    if *plan.total() > BigUint::from(max_copies) {
        return Err(ConstructionError::TooManyCopies {
            total: plan.total().clone(),
            cap: max_copies,
        });
    }
    let copies: Vec<OrderedCopy> = plan.stream().collect();
    assert_eq!(
        BigUint::from(copies.len()),
        *plan.total(),
        "stream count must match the closed-form copy count"
    );
    Ok(OrderedCopySystem { plan, copies })
}

/// The layered incomparable family and the numbers that justify it.
#[derive(Debug, Clone)]
pub struct LayeredFamily {
    pub system: OrderedCopySystem,
    pub family: PackingFamily,
    /// Ambient ground size.
    pub n: u32,
    /// Width `n − N` of the tail positions that carry the layer sets.
    pub tail_width: u32,
    /// Middle layer index `D = ⌊(n − N)/2⌋` of the tail.
    pub middle: u32,
    pub eps: BigRational,
    /// Sizes of the layers `|T| = D − i` for `i = 1..K`.
    pub layer_sizes: Vec<BigUint>,
    pub size: BigUint,
    /// `(1 − ε)/t · C(n, ⌊n/2⌋)` — the density the construction aims for.
    pub target: BigRational,
    /// Whether `size ≥ target`. The guarantee is asymptotic in `n`; small
    /// ambients can fall short, so the flag is reported, not assumed.
    pub meets_target: bool,
}

/// Builds the layered family: an ordered copy system on the first `N`
/// positions at accuracy `ε′ = ε/2`, one copy per tail set `T` over the
/// remaining `n − N` positions with `D − K ≤ |T| ≤ D − 1`, each copy being
/// `f_{D−|T|}` (the ordered copy indexed by its distance below the middle)
/// unioned with `T`.
///
/// Incomparability: equal-size tails are incomparable among themselves, and
/// across layers a bigger tail pairs with an *earlier* ordered copy, so an
/// inclusion would need a later copy's image under an earlier copy's image —
/// exactly what the code order rules out.
pub fn build_incomparable_family(
    poset: &Poset,
    kind: EmbeddingKind,
    n: u32,
    eps: &BigRational,
    m_max: u32,
    max_copies: usize,
) -> Result<LayeredFamily, ConstructionError> {
    check_unit_interval(eps)?;
    let ground = GroundSet::new(n)?;
    let eps_prime = eps / BigRational::from_integer(2.into());
    let plan = plan_ordered_copies(poset, kind, &eps_prime, m_max)?;
    let block_ground = plan.ground().n();

    let minimal = BigUint::from(block_ground) + BigUint::from(2u32) * plan.total();
    let infeasible = ConstructionError::InfeasibleN { n, minimal };
    if n < block_ground {
        return Err(infeasible);
    }
    let tail_width = n - block_ground;
    let middle = tail_width / 2;
    if BigUint::from(middle) < *plan.total() {
        return Err(infeasible);
    }
    // K ≤ D ≤ 31 from here on.
    let copy_count = u32::try_from(plan.total().clone()).expect("K ≤ D ≤ 31");

    let layer_sizes: Vec<BigUint> = (1..=copy_count)
        .map(|i| binomial(u64::from(tail_width), u64::from(middle - i)))
        .collect();
    let size: BigUint = layer_sizes.iter().sum();
    if size > BigUint::from(max_copies) {
        return Err(ConstructionError::TooManyCopies {
            total: size,
            cap: max_copies,
        });
    }

    let system = OrderedCopySystem {
        copies: plan.stream().collect(),
        plan,
    };
    let poset_arc = Arc::clone(system.plan.base.poset());
    let mut copies = Vec::new();
    // Tails in canonical order: size ascending, colex within a size. The
    // copy index i = D − |T| then runs from K down to 1.
    for tail_size in (middle - copy_count)..middle {
        let source = &system.copies[(middle - tail_size) as usize - 1].embedding;
        for tail_bits in fixed_popcount_bits(tail_width, tail_size) {
            let shifted = tail_bits << block_ground;
            let assignment: Vec<Subset> = source
                .assignment()
                .iter()
                .map(|s| Subset::from_bits(ground, s.bits() | shifted).unwrap())
                .collect();
            copies.push(Embedding::new_unchecked(
                Arc::clone(&poset_arc),
                ground,
                assignment,
                kind,
            ));
        }
    }
    let family = PackingFamily::new(ground, poset_arc, kind, copies)?;
    assert_eq!(BigUint::from(family.len()), size);

    let target = (BigRational::one() - eps)
        * BigRational::new(
            num::BigInt::from(binomial(u64::from(n), u64::from(n / 2))),
            num::BigInt::from(system.plan.hull_size),
        );
    let meets_target = BigRational::from_integer(num::BigInt::from(size.clone())) >= target;
    Ok(LayeredFamily {
        system,
        n,
        tail_width,
        middle,
        eps: eps.clone(),
        layer_sizes,
        size,
        target,
        meets_target,
        family,
    })
}

/// Saturated-chain copies shifted by middle-sized sets: for every
/// `G ⊆ {h+1..n}` of size `⌊(n−h)/2⌋`, the chain
/// `G ⊂ {1}∪G ⊂ … ⊂ {1..h}∪G`. Distinct equal-size shifts make the copies
/// pairwise incomparable; there are `C(n−h, ⌊(n−h)/2⌋)` of them.
pub fn path_family(h: u32, n: u32, max_copies: usize) -> Result<PackingFamily, ConstructionError> {
    let ground = GroundSet::new(n)?;
    if n < h {
        return Err(ConstructionError::AmbientBelowHeight { height: h, n });
    }
    let chain = Arc::new(Poset::chain(h as usize + 1)?);
    let width = n - h;
    let pick = width / 2;
    cap_copies(binomial(u64::from(width), u64::from(pick)), max_copies)?;
    let mut copies = Vec::new();
    for g_bits in fixed_popcount_bits(width, pick) {
        let shifted = g_bits << h;
        let assignment: Vec<Subset> = (0..=h)
            .map(|j| Subset::from_bits(ground, shifted | ((1u64 << j) - 1)).unwrap())
            .collect();
        copies.push(Embedding::new_unchecked(
            Arc::clone(&chain),
            ground,
            assignment,
            EmbeddingKind::Induced,
        ));
    }
    PackingFamily::new(ground, chain, EmbeddingKind::Induced, copies)
}

/// [`path_family`] with the chain replaced by any poset that embeds into the
/// lattice of its own height `h`: the witness embedding is planted inside
/// the interval `[G, {1..h} ∪ G]` of every shifted chain. Requires a weak
/// witness for `kind = Weak` and an induced one for `kind = Induced`.
pub fn thin_family(
    poset: &Poset,
    kind: EmbeddingKind,
    n: u32,
    max_copies: usize,
) -> Result<PackingFamily, ConstructionError> {
    let ground = GroundSet::new(n)?;
    let h = poset.height() as u32;
    if n < h {
        return Err(ConstructionError::AmbientBelowHeight { height: h, n });
    }
    let witness =
        height_embedding(poset, kind).ok_or(ConstructionError::NotHeightEmbeddable(kind))?;
    let width = n - h;
    let pick = width / 2;
    cap_copies(binomial(u64::from(width), u64::from(pick)), max_copies)?;
    let poset_arc = Arc::clone(witness.poset());
    let mut copies = Vec::new();
    for g_bits in fixed_popcount_bits(width, pick) {
        let shifted = g_bits << h;
        let assignment: Vec<Subset> = witness
            .assignment()
            .iter()
            .map(|w| Subset::from_bits(ground, shifted | w.bits()).unwrap())
            .collect();
        copies.push(Embedding::new_unchecked(
            Arc::clone(&poset_arc),
            ground,
            assignment,
            kind,
        ));
    }
    PackingFamily::new(ground, poset_arc, kind, copies)
}

/// The stacked three-set families for the up-fork on two prongs. For each
/// stack index `i = 1..⌊(n+2)/4⌋` and each `F ⊆ [n−2i]` of size
/// `⌈n/2⌉ − 2i + 1`, the copy maps the fork's bottom to
/// `F ∪ {n−2i+3, …, n}` and the prongs to that set plus `{n−2i+1}` and
/// `{n−2i+2}` respectively. The total count is the conjectured maximum
/// [`v_conjecture_sum`].
pub fn v_family(n: u32, max_copies: usize) -> Result<PackingFamily, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::VFamilyTooSmall(n));
    }
    let ground = GroundSet::new(n)?;
    cap_copies(v_conjecture_sum(n), max_copies)?;
    let fork = Arc::new(Poset::v());
    let mut copies = Vec::new();
    for i in 1..=(n + 2) / 4 {
        let tail_len = 2 * i - 2;
        let tail = ((1u64 << tail_len) - 1) << (n - tail_len);
        let low_prong = 1u64 << (n - 2 * i);
        let high_prong = 1u64 << (n - 2 * i + 1);
        let f_size = n.div_ceil(2) + 1 - 2 * i;
        for f_bits in fixed_popcount_bits(n - 2 * i, f_size) {
            let bottom = f_bits | tail;
            let assignment = vec![
                Subset::from_bits(ground, bottom).unwrap(),
                Subset::from_bits(ground, bottom | low_prong).unwrap(),
                Subset::from_bits(ground, bottom | high_prong).unwrap(),
            ];
            copies.push(Embedding::new_unchecked(
                Arc::clone(&fork),
                ground,
                assignment,
                EmbeddingKind::Induced,
            ));
        }
    }
    PackingFamily::new(ground, fork, EmbeddingKind::Induced, copies)
}

/// `Σ_{i=1..⌊(n+2)/4⌋} C(n−2i, ⌈n/2⌉−2i+1)` — the conjectured maximum
/// number of pairwise-incomparable fork copies in the lattice of `[n]`,
/// and by construction the exact size of [`v_family`].
pub fn v_conjecture_sum(n: u32) -> BigUint {
    (1..=(n + 2) / 4)
        .map(|i| {
            binomial(
                u64::from(n - 2 * i),
                u64::from(n.div_ceil(2) + 1 - 2 * i),
            )
        })
        .sum()
}

fn check_unit_interval(eps: &BigRational) -> Result<(), ConstructionError> {
    if *eps <= BigRational::zero() || *eps >= BigRational::one() {
        return Err(ConstructionError::EpsilonOutOfRange(eps.clone()));
    }
    Ok(())
}

fn cap_copies(total: BigUint, cap: usize) -> Result<(), ConstructionError> {
    if total > BigUint::from(cap) {
        return Err(ConstructionError::TooManyCopies { total, cap });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn bits_of(e: &Embedding) -> Vec<u64> {
        e.assignment().iter().map(|s| s.bits()).collect()
    }

    /// Closed form `(2^N − (2^m − t)^k) / t` for the copy count.
    fn closed_form_total(plan: &OrderedCopyPlan) -> BigUint {
        let full = BigUint::from(1u64 << plan.block_width());
        let outside = BigUint::from((1u64 << plan.block_width()) - plan.hull_size());
        let k = plan.block_count();
        (full.pow(k) - outside.pow(k)) / BigUint::from(plan.hull_size())
    }

    #[test]
    fn one_element_system_small_eps() {
        let sys = build_ordered_copies(
            &Poset::singleton(),
            EmbeddingKind::Weak,
            &ratio(1, 4),
            2,
            100,
        )
        .unwrap();
        let plan = sys.plan();
        assert_eq!(
            (plan.block_width(), plan.hull_size(), plan.block_count()),
            (1, 1, 2)
        );
        assert_eq!(plan.ground().n(), 2);
        assert_eq!(*plan.total(), BigUint::from(3u32));
        assert_eq!(closed_form_total(plan), BigUint::from(3u32));
        assert_eq!(plan.interval(), (1, 1));
        let codes: Vec<&[u32]> = sys.copies().iter().map(|c| c.code.as_slice()).collect();
        assert_eq!(codes, vec![&[1, 1][..], &[1, 2], &[2, 1]]);
        assert_eq!(
            sys.copies().iter().map(|c| c.pivot).collect::<Vec<_>>(),
            vec![0, 0, 1]
        );
        let images: Vec<Vec<u64>> = sys.copies().iter().map(|c| bits_of(&c.embedding)).collect();
        assert_eq!(images, vec![vec![0b00], vec![0b10], vec![0b01]]);
        assert_eq!(sys.order_property_violation(), None);
    }

    #[test]
    fn one_element_system_large_eps_needs_one_block() {
        let sys = build_ordered_copies(
            &Poset::singleton(),
            EmbeddingKind::Weak,
            &ratio(1, 2),
            2,
            100,
        )
        .unwrap();
        assert_eq!(sys.plan().block_count(), 1);
        assert_eq!(*sys.plan().total(), BigUint::from(1u32));
    }

    #[test]
    fn two_chain_and_fork_systems() {
        for (poset, kind, m, t) in [
            (Poset::chain(2).unwrap(), EmbeddingKind::Weak, 1, 2),
            (Poset::v(), EmbeddingKind::Weak, 2, 3),
            (Poset::v(), EmbeddingKind::Induced, 2, 3),
        ] {
            for eps_prime in [ratio(1, 4), ratio(1, 2)] {
                let sys =
                    build_ordered_copies(&poset, kind, &eps_prime, 2 * poset.size() as u32, 100)
                        .unwrap();
                let plan = sys.plan();
                assert_eq!((plan.block_width(), plan.hull_size()), (m, t));
                assert_eq!(plan.block_count(), 1, "one block reaches {eps_prime}");
                assert_eq!(*plan.total(), BigUint::from(1u32));
                assert_eq!(closed_form_total(plan), *plan.total());
                assert_eq!(sys.order_property_violation(), None);
                // The single copy is the base embedding itself.
                assert_eq!(bits_of(&sys.copies()[0].embedding), bits_of(plan.base()));
            }
        }
    }

    #[test]
    fn copy_counts_meet_the_density_bound() {
        // K ≥ 2^N (1 − ε′) / t, exactly, for each constructed system.
        for (poset, kind) in [
            (Poset::singleton(), EmbeddingKind::Weak),
            (Poset::chain(2).unwrap(), EmbeddingKind::Weak),
            (Poset::v(), EmbeddingKind::Induced),
        ] {
            for eps_prime in [ratio(1, 4), ratio(1, 2), ratio(9, 10)] {
                let plan =
                    plan_ordered_copies(&poset, kind, &eps_prime, 2 * poset.size() as u32).unwrap();
                let lhs = BigRational::from_integer(BigInt::from(plan.total().clone()));
                let bound = BigRational::new(
                    BigInt::from(1u8) << plan.ground().n(),
                    BigInt::from(plan.hull_size()),
                ) * (BigRational::one() - &eps_prime);
                assert!(lhs >= bound, "{poset:?} {eps_prime}: {lhs} < {bound}");
            }
        }
    }

    #[test]
    fn stream_is_lazy_and_lex_ordered() {
        // A tighter ε′ forces k = 4 blocks for the single element: K = 15.
        let plan = plan_ordered_copies(
            &Poset::singleton(),
            EmbeddingKind::Weak,
            &ratio(1, 16),
            2,
        )
        .unwrap();
        assert_eq!((plan.block_count(), plan.ground().n()), (4, 4));
        assert_eq!(*plan.total(), BigUint::from(15u32));
        let codes: Vec<Vec<u32>> = plan.stream().map(|c| c.code).collect();
        assert_eq!(codes.len(), 15);
        assert!(codes.windows(2).all(|w| w[0] < w[1]), "codes in lex order");
        // Prefix take works without materializing the rest.
        assert_eq!(plan.stream().take(3).count(), 3);
        // Decodability: the first in-interval coordinate is the pivot and
        // carries the label p.
        let (p, q) = plan.interval();
        for copy in plan.stream() {
            let first_in = copy
                .code
                .iter()
                .position(|&d| p <= d && d <= q)
                .expect("every code has an in-interval coordinate");
            assert_eq!(first_in, copy.pivot);
            assert_eq!(copy.code[copy.pivot], p);
        }
    }

    #[test]
    fn epsilon_validation_and_caps() {
        let single = Poset::singleton();
        for bad in [ratio(0, 1), ratio(1, 1), ratio(3, 2), ratio(-1, 4)] {
            assert!(matches!(
                plan_ordered_copies(&single, EmbeddingKind::Weak, &bad, 2),
                Err(ConstructionError::EpsilonOutOfRange(_))
            ));
        }
        assert!(matches!(
            build_ordered_copies(&single, EmbeddingKind::Weak, &ratio(1, 16), 2, 10),
            Err(ConstructionError::TooManyCopies { cap: 10, .. })
        ));
        // ε′ so small that k·m would overflow the ground cap.
        assert!(matches!(
            plan_ordered_copies(&single, EmbeddingKind::Weak, &ratio(1, i64::MAX), 2),
            Err(ConstructionError::BlocksTooWide { .. })
        ));
    }

    #[test]
    fn layered_family_two_chain() {
        let fam = build_incomparable_family(
            &Poset::chain(2).unwrap(),
            EmbeddingKind::Weak,
            14,
            &ratio(1, 2),
            4,
            5000,
        )
        .unwrap();
        assert_eq!(fam.system.plan().ground().n(), 1);
        assert_eq!(fam.system.len(), 1);
        assert_eq!((fam.tail_width, fam.middle), (13, 6));
        assert_eq!(fam.size, BigUint::from(1287u32)); // C(13,5)
        assert_eq!(fam.layer_sizes, vec![BigUint::from(1287u32)]);
        assert_eq!(fam.family.len(), 1287);
        assert!(fam.meets_target, "1287 ≥ (1/2)·C(14,7)/2 = 858");
        // Full pairwise incomparability of the images.
        let images: Vec<crate::lattice::SetFamily> =
            fam.family.copies().iter().map(|c| c.image()).collect();
        for i in 0..images.len() {
            for j in (i + 1)..images.len() {
                assert!(images[i].incomparable_with(&images[j]).unwrap());
            }
        }
    }

    #[test]
    fn layered_family_fork_smallest_ambient() {
        let fam = build_incomparable_family(
            &Poset::v(),
            EmbeddingKind::Induced,
            4,
            &ratio(1, 2),
            6,
            100,
        )
        .unwrap();
        assert_eq!(fam.size, BigUint::one());
        assert_eq!(fam.family.len(), 1);
        assert!(fam.meets_target, "1 ≥ (1/2)·C(4,2)/3 = 1");
        assert_eq!(bits_of(&fam.family.copies()[0]), vec![0b00, 0b01, 0b10]);

        // One step below the smallest feasible ambient.
        match build_incomparable_family(
            &Poset::v(),
            EmbeddingKind::Induced,
            3,
            &ratio(1, 2),
            6,
            100,
        ) {
            Err(ConstructionError::InfeasibleN { n: 3, minimal }) => {
                assert_eq!(minimal, BigUint::from(4u32))
            }
            other => panic!("expected infeasible ambient, got {other:?}"),
        }
    }

    #[test]
    fn layered_family_multiple_layers() {
        // Single element, ε = 1/2 → ε′ = 1/4 → k = 2, N = 2, K = 3: three
        // layers below the middle of the 8 tail positions.
        let fam = build_incomparable_family(
            &Poset::singleton(),
            EmbeddingKind::Weak,
            10,
            &ratio(1, 2),
            2,
            1000,
        )
        .unwrap();
        assert_eq!(fam.system.len(), 3);
        assert_eq!((fam.tail_width, fam.middle), (8, 4));
        // Layers i = 1,2,3: C(8,3), C(8,2), C(8,1).
        assert_eq!(
            fam.layer_sizes,
            vec![56u32.into(), 28u32.into(), 8u32.into()]
        );
        assert_eq!(fam.size, BigUint::from(92u32));
        assert_eq!(fam.family.len(), 92);
        let images: Vec<crate::lattice::SetFamily> =
            fam.family.copies().iter().map(|c| c.image()).collect();
        for i in 0..images.len() {
            for j in (i + 1)..images.len() {
                assert!(
                    images[i].incomparable_with(&images[j]).unwrap(),
                    "copies {i} and {j} comparable"
                );
            }
        }
    }

    #[test]
    fn path_families_match_known_shapes() {
        // h = 1, n = 3: two 2-chains.
        let fam = path_family(1, 3, 100).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(bits_of(&fam.copies()[0]), vec![0b010, 0b011]);
        assert_eq!(bits_of(&fam.copies()[1]), vec![0b100, 0b101]);

        // h = 0, n = 4: the middle layer, six singleton images.
        let fam = path_family(0, 4, 100).unwrap();
        assert_eq!(fam.len(), 6);
        assert!(fam
            .copies()
            .iter()
            .all(|c| c.assignment()[0].size() == 2));

        // h = 2, n = 4: two 3-chains.
        assert_eq!(path_family(2, 4, 100).unwrap().len(), 2);

        // Range and cap errors.
        assert!(matches!(
            path_family(5, 4, 100),
            Err(ConstructionError::AmbientBelowHeight { height: 5, n: 4 })
        ));
        assert!(matches!(
            path_family(0, 20, 100),
            Err(ConstructionError::TooManyCopies { .. })
        ));
    }

    #[test]
    fn thin_families() {
        // Diamond is its own height-2 lattice: two induced copies in B₄.
        let fam = thin_family(&Poset::diamond(), EmbeddingKind::Induced, 4, 100).unwrap();
        assert_eq!(fam.len(), 2);
        for c in fam.copies() {
            assert!(Embedding::is_valid(
                c.poset(),
                c.assignment(),
                EmbeddingKind::Induced
            ));
        }
        let a = fam.copies()[0].image();
        let b = fam.copies()[1].image();
        assert!(a.incomparable_with(&b).unwrap());

        // Three-chain in B₅: C(3,1) = 3 copies.
        assert_eq!(
            thin_family(&Poset::chain(3).unwrap(), EmbeddingKind::Weak, 5, 100)
                .unwrap()
                .len(),
            3
        );

        // The fork does not fit the lattice of its height.
        assert_eq!(
            thin_family(&Poset::v(), EmbeddingKind::Weak, 4, 100).unwrap_err(),
            ConstructionError::NotHeightEmbeddable(EmbeddingKind::Weak)
        );
    }

    #[test]
    fn fork_families_and_conjecture_sum() {
        let fam = v_family(2, 100).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(bits_of(&fam.copies()[0]), vec![0b00, 0b01, 0b10]);

        for (n, want) in [(2u32, 1u32), (3, 1), (4, 2), (5, 3), (6, 7)] {
            assert_eq!(v_conjecture_sum(n), BigUint::from(want), "n = {n}");
            let fam = v_family(n, 1000).unwrap();
            assert_eq!(fam.len() as u32, want, "n = {n}");
            for c in fam.copies() {
                assert!(Embedding::is_valid(
                    c.poset(),
                    c.assignment(),
                    EmbeddingKind::Induced
                ));
            }
            let images: Vec<crate::lattice::SetFamily> =
                fam.copies().iter().map(|c| c.image()).collect();
            for i in 0..images.len() {
                for j in (i + 1)..images.len() {
                    assert!(
                        images[i].incomparable_with(&images[j]).unwrap(),
                        "n = {n}: copies {i}, {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn determinism() {
        let build = || {
            build_ordered_copies(&Poset::singleton(), EmbeddingKind::Weak, &ratio(1, 16), 2, 100)
                .unwrap()
                .copies()
                .iter()
                .map(|c| (c.code.clone(), bits_of(&c.embedding)))
                .collect::<Vec<_>>()
        };
        assert_eq!(build(), build());
        let layered = || {
            build_incomparable_family(
                &Poset::singleton(),
                EmbeddingKind::Weak,
                10,
                &ratio(1, 2),
                2,
                1000,
            )
            .unwrap()
            .family
            .copies()
            .iter()
            .map(bits_of)
            .collect::<Vec<_>>()
        };
        assert_eq!(layered(), layered());
    }
}
