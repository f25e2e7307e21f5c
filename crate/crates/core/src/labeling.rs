//! Linear-extension labelings of a subset lattice in which the convex hull
//! of a fixed embedding's image gets a contiguous run of labels.
//!
//! Subsets of `[m]` receive labels `1..2^m` so that proper inclusion always
//! means a smaller label, and the hull of the generating embedding occupies
//! exactly the interval `[p, p + |hull| − 1]`. Block constructions restrict
//! non-pivot blocks by "label outside the interval"; together with the
//! linear-extension property that is what makes block codes decodable and
//! orders copies so that no later image sits below an earlier one.

use thiserror::Error;

use crate::embedding::Embedding;
use crate::lattice::{GroundSet, Subset};

/// Largest ambient size for which the full `2^m` label table is built.
pub const MAX_LABELING_GROUND: u32 = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelingError {
    #[error("labeling builds a 2^m table; m = {0} exceeds cap {MAX_LABELING_GROUND}")]
    GroundTooLarge(u32),
}

/// A bijection `B_m → {1, …, 2^m}` that is a linear extension of inclusion,
/// with the generating embedding's hull labeled by one contiguous interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeLabeling {
    ground: GroundSet,
    rank_of_bits: Vec<u32>,
    bits_of_rank: Vec<u64>,
    interval: (u32, u32),
}

impl LatticeLabeling {
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn m(&self) -> u32 {
        self.ground.n()
    }

    /// Label of a subset, in `1..=2^m`.
    pub fn rank(&self, s: Subset) -> u32 {
        debug_assert_eq!(s.ground(), self.ground);
        self.rank_of_bits[s.bits() as usize]
    }

    /// The subset carrying a given label.
    pub fn subset_with_rank(&self, rank: u32) -> Option<Subset> {
        let bits = *self.bits_of_rank.get(rank.checked_sub(1)? as usize)?;
        Some(Subset::from_bits(self.ground, bits).expect("table holds valid bits"))
    }

    /// The hull's label range `(p, p + |hull| − 1)`, inclusive on both ends.
    pub fn interval(&self) -> (u32, u32) {
        self.interval
    }

    pub fn interval_contains(&self, rank: u32) -> bool {
        self.interval.0 <= rank && rank <= self.interval.1
    }

    /// Is the subset's label inside the hull interval (⇔ the subset lies in
    /// the hull)?
    pub fn in_interval(&self, s: Subset) -> bool {
        self.interval_contains(self.rank(s))
    }
}

/// Builds the labeling for one embedding: sets strictly below an image set
/// (and containing none) come first, then the hull, then everything else;
/// within each part labels follow the canonical subset order.
///
/// Proper inclusion can never cross the part boundaries backwards — a set
/// below an image set cannot contain a hull member, and a hull member's
/// proper subsets are below an image set — so the result is a linear
/// extension, and the hull's labels are exactly `[p, p + |hull| − 1]`.
pub fn hull_interval_labeling(f: &Embedding) -> Result<LatticeLabeling, LabelingError> {
    let ground = f.ground();
    let m = ground.n();
    if m > MAX_LABELING_GROUND {
        return Err(LabelingError::GroundTooLarge(m));
    }
    let hull = f.hull();
    let images = f.assignment();

    let mut below_only: Vec<u64> = Vec::new();
    let mut hull_part: Vec<u64> = Vec::new();
    let mut rest: Vec<u64> = Vec::new();
    for s in ground.subsets() {
        if hull.contains(s) {
            hull_part.push(s.bits());
        } else if images.iter().any(|&img| s.is_subset_of(img)) {
            // Not in the hull, so no image set sits inside s; "below some
            // image set" alone settles membership in the first part.
            below_only.push(s.bits());
        } else {
            rest.push(s.bits());
        }
    }

    let p = below_only.len() as u32 + 1;
    let q = below_only.len() as u32 + hull_part.len() as u32;
    let mut bits_of_rank = below_only;
    bits_of_rank.extend(hull_part);
    bits_of_rank.extend(rest);
    let mut rank_of_bits = vec![0u32; 1 << m];
    for (i, &bits) in bits_of_rank.iter().enumerate() {
        rank_of_bits[bits as usize] = i as u32 + 1;
    }
    Ok(LatticeLabeling {
        ground,
        rank_of_bits,
        bits_of_rank,
        interval: (p, q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{enumerate_embeddings, Embedding, EmbeddingKind};
    use crate::poset::{ForkDirection, Poset};
    use std::sync::Arc;

    fn singleton_at(m: u32, bits: u64) -> Embedding {
        let g = GroundSet::new(m).unwrap();
        Embedding::new(
            Arc::new(Poset::singleton()),
            g,
            vec![Subset::from_bits(g, bits).unwrap()],
            EmbeddingKind::Weak,
        )
        .unwrap()
    }

    #[test]
    fn smallest_ambients() {
        // m = 0: the lattice is {∅}.
        let l = hull_interval_labeling(&singleton_at(0, 0)).unwrap();
        assert_eq!(l.rank(Subset::empty(l.ground())), 1);
        assert_eq!(l.interval(), (1, 1));

        // m = 1, image {{1}}: ∅ sits below the image, {1} is the hull.
        let l = hull_interval_labeling(&singleton_at(1, 1)).unwrap();
        let g = l.ground();
        assert_eq!(l.rank(Subset::empty(g)), 1);
        assert_eq!(l.rank(Subset::full(g)), 2);
        assert_eq!(l.interval(), (2, 2));
        assert!(!l.in_interval(Subset::empty(g)));
    }

    #[test]
    fn v_copy_in_b2() {
        // Image {∅, {1}, {2}} is its own hull; only {1,2} falls outside.
        let g = GroundSet::new(2).unwrap();
        let f = Embedding::new(
            Arc::new(Poset::v()),
            g,
            vec![
                Subset::empty(g),
                Subset::from_indices(g, &[1]).unwrap(),
                Subset::from_indices(g, &[2]).unwrap(),
            ],
            EmbeddingKind::Induced,
        )
        .unwrap();
        let l = hull_interval_labeling(&f).unwrap();
        assert_eq!(l.interval(), (1, 3));
        assert_eq!(l.rank(Subset::empty(g)), 1);
        assert_eq!(l.rank(Subset::from_indices(g, &[1]).unwrap()), 2);
        assert_eq!(l.rank(Subset::from_indices(g, &[2]).unwrap()), 3);
        assert_eq!(l.rank(Subset::full(g)), 4);
        assert_eq!(l.subset_with_rank(4), Some(Subset::full(g)));
        assert_eq!(l.subset_with_rank(0), None);
        assert_eq!(l.subset_with_rank(5), None);
    }

    /// Bijectivity, the linear-extension law, interval exactness, and the
    /// part predicates, each evaluated directly against the image — the
    /// checks are independent of `convex_hull` and of the classification
    /// order used in production.
    fn assert_labeling_laws(f: &Embedding) {
        let l = hull_interval_labeling(f).unwrap();
        let g = f.ground();
        let total = 1u64 << g.n();
        let (p, q) = l.interval();

        let mut seen = vec![false; total as usize];
        for s in g.subsets() {
            let r = l.rank(s);
            assert!(1 <= r && r as u64 <= total, "rank out of range");
            assert!(!seen[(r - 1) as usize], "rank {r} repeated");
            seen[(r - 1) as usize] = true;
            assert_eq!(l.subset_with_rank(r), Some(s), "inverse mismatch");
        }

        for a in g.subsets() {
            for b in g.subsets() {
                if a != b && a.is_subset_of(b) {
                    assert!(l.rank(a) < l.rank(b), "not a linear extension");
                }
            }
        }

        let images = f.assignment();
        for s in g.subsets() {
            let weakly_below = images.iter().any(|&i| s.is_subset_of(i));
            let above_some = images.iter().any(|&i| i.is_subset_of(s));
            let r = l.rank(s);
            // The three parts in predicate form: hull = below and above some
            // image, low = below only, high = below nothing.
            assert_eq!(p <= r && r <= q, weakly_below && above_some, "hull at {s:?}");
            assert_eq!(r < p, weakly_below && !above_some, "low part at {s:?}");
            assert_eq!(r > q, !weakly_below, "high part at {s:?}");
        }
    }

    #[test]
    fn laws_hold_across_posets_and_ambients() {
        let posets = [
            Poset::singleton(),
            Poset::chain(2).unwrap(),
            Poset::chain(3).unwrap(),
            Poset::v(),
            Poset::fork(2, ForkDirection::Down).unwrap(),
            Poset::diamond(),
        ];
        for poset in &posets {
            for m in 0..=3 {
                for kind in [EmbeddingKind::Weak, EmbeddingKind::Induced] {
                    for f in enumerate_embeddings(poset, m, kind).unwrap().take(200) {
                        assert_labeling_laws(&f);
                    }
                }
            }
        }
    }

    #[test]
    fn full_lattice_hull_leaves_no_outside() {
        // A two-chain at ∅ ⊂ [2] hulls all of B₂: interval is everything.
        let g = GroundSet::new(2).unwrap();
        let f = Embedding::new(
            Arc::new(Poset::chain(2).unwrap()),
            g,
            vec![Subset::empty(g), Subset::full(g)],
            EmbeddingKind::Induced,
        )
        .unwrap();
        assert_eq!(hull_interval_labeling(&f).unwrap().interval(), (1, 4));
    }

    #[test]
    fn cap_enforced() {
        let f = singleton_at(MAX_LABELING_GROUND + 1, 0);
        assert_eq!(
            hull_interval_labeling(&f).unwrap_err(),
            LabelingError::GroundTooLarge(MAX_LABELING_GROUND + 1)
        );
    }
}
