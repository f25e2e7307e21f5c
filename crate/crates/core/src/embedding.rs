//! Embeddings of a poset into the subset lattice, their enumeration, and the
//! minimum-hull search.
//!
//! A *weak* embedding maps distinct elements to distinct subsets with
//! `x < y ⇒ f(x) ⊂ f(y)`. An *induced* embedding additionally reflects the
//! order: `f(x) ⊂ f(y) ⇒ x < y`, so unrelated elements map to incomparable
//! sets. The *hull value* of an embedding is the size of the convex hull of
//! its image; minimized over all embeddings into all ambients `m ≤ m_max` it
//! yields the packing constant `t(P)` — the asymptotic price, in middle-layer
//! proportion, of one copy of `P`.

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{GroundSet, LatticeError, SetFamily, Subset};
use crate::poset::Poset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("assignment has {got} images for a poset of {want} elements")]
    WrongArity { got: usize, want: usize },
    #[error("assignment is not a valid {0:?} embedding")]
    Invalid(EmbeddingKind),
    #[error(
        "no {kind:?} embedding of the poset into ambients up to m_max={m_max} \
         (any poset embeds once m_max reaches its element count)"
    )]
    NoEmbedding { kind: EmbeddingKind, m_max: u32 },
}

/// Which embedding contract applies: order-preserving only, or
/// order-preserving and order-reflecting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EmbeddingKind {
    Weak,
    Induced,
}

/// A validated embedding: one subset per poset element, indexed like the
/// poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    poset: Arc<Poset>,
    ground: GroundSet,
    assignment: Vec<Subset>,
    kind: EmbeddingKind,
}

impl Embedding {
    /// Validates and wraps an assignment. The assignment must list one image
    /// per poset element, all in `ground`.
    pub fn new(
        poset: Arc<Poset>,
        ground: GroundSet,
        assignment: Vec<Subset>,
        kind: EmbeddingKind,
    ) -> Result<Self, EmbeddingError> {
        if assignment.len() != poset.size() {
            return Err(EmbeddingError::WrongArity {
                got: assignment.len(),
                want: poset.size(),
            });
        }
        for s in &assignment {
            if s.ground() != ground {
                return Err(LatticeError::GroundMismatch(s.ground().n(), ground.n()).into());
            }
        }
        if !Self::is_valid(&poset, &assignment, kind) {
            return Err(EmbeddingError::Invalid(kind));
        }
        Ok(Embedding {
            poset,
            ground,
            assignment,
            kind,
        })
    }

    /// Wraps an assignment without checking the embedding conditions. For
    /// deserialized candidate families whose validity is the *question*
    /// (see [`crate::oracle::verify_packing`]); arity and ground membership
    /// are still enforced by construction of the `Subset`s.
    pub fn new_unchecked(
        poset: Arc<Poset>,
        ground: GroundSet,
        assignment: Vec<Subset>,
        kind: EmbeddingKind,
    ) -> Self {
        Embedding {
            poset,
            ground,
            assignment,
            kind,
        }
    }

    /// The embedding conditions alone (injectivity, order preservation, and
    /// for induced embeddings order reflection), without wrapping.
    pub fn is_valid(poset: &Poset, assignment: &[Subset], kind: EmbeddingKind) -> bool {
        if assignment.len() != poset.size() {
            return false;
        }
        for x in 0..poset.size() {
            for y in 0..poset.size() {
                if x == y {
                    continue;
                }
                let (fx, fy) = (assignment[x], assignment[y]);
                if poset.less(x, y) {
                    if !(fx.is_subset_of(fy) && fx != fy) {
                        return false;
                    }
                } else if fx == fy {
                    return false; // injectivity
                } else if kind == EmbeddingKind::Induced
                    && !poset.less(y, x)
                    && fx.is_subset_of(fy)
                {
                    return false; // reflection: unrelated elements stay incomparable
                }
            }
        }
        true
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn assignment(&self) -> &[Subset] {
        &self.assignment
    }

    pub fn image_of(&self, element: usize) -> Subset {
        self.assignment[element]
    }

    /// The image as a set family (distinct by injectivity).
    pub fn image(&self) -> SetFamily {
        SetFamily::new(self.ground, self.assignment.clone())
            .expect("images share the embedding's ground set")
    }

    /// Convex hull of the image; never empty since posets are nonempty.
    pub fn hull(&self) -> SetFamily {
        self.image()
            .convex_hull()
            .expect("image of a nonempty poset is nonempty")
    }

    /// Hull size as a plain count.
    pub fn hull_value(&self) -> u64 {
        self.hull().len() as u64
    }
}

/// All `kind`-embeddings of `poset` into the subset lattice of `[n]`, as a
/// lazy deterministic stream.
///
/// Elements are assigned in the poset's fixed linear extension; candidate
/// images are tried in canonical subset order. The stream therefore yields
/// embeddings in a repeatable order and can be truncated with `take` for a
/// limit. Memory is O(depth); time is the price of exhaustive search.
pub fn enumerate_embeddings(
    poset: &Poset,
    n: u32,
    kind: EmbeddingKind,
) -> Result<EmbeddingEnumerator, LatticeError> {
    let ground = GroundSet::new(n)?;
    Ok(EmbeddingEnumerator::new(Arc::new(poset.clone()), ground, kind))
}

/// Iterator behind [`enumerate_embeddings`].
pub struct EmbeddingEnumerator {
    poset: Arc<Poset>,
    ground: GroundSet,
    kind: EmbeddingKind,
    order: Vec<usize>,
    // One candidate stream per depth; chosen[d] is the image of order[d].
    stack: Vec<crate::lattice::CanonicalSubsets>,
    chosen: Vec<Subset>,
    started: bool,
    done: bool,
}

impl EmbeddingEnumerator {
    fn new(poset: Arc<Poset>, ground: GroundSet, kind: EmbeddingKind) -> Self {
        let order = poset.linear_extension();
        EmbeddingEnumerator {
            poset,
            ground,
            kind,
            order,
            stack: Vec::new(),
            chosen: Vec::new(),
            started: false,
            done: false,
        }
    }

    /// Does the candidate at depth `d` fit all earlier choices?
    ///
    /// Earlier elements are never strictly above later ones in a linear
    /// extension, so only `earlier < current` and unrelated pairs occur.
    fn fits(&self, d: usize, candidate: Subset) -> bool {
        let cur = self.order[d];
        for (e, &img) in self.chosen[..d].iter().enumerate() {
            let earlier = self.order[e];
            if self.poset.less(earlier, cur) {
                if !(img.is_subset_of(candidate) && img != candidate) {
                    return false;
                }
            } else if img == candidate
                || (self.kind == EmbeddingKind::Induced
                    && (img.is_subset_of(candidate) || candidate.is_subset_of(img)))
            {
                return false;
            }
        }
        true
    }
}

impl Iterator for EmbeddingEnumerator {
    type Item = Embedding;

    fn next(&mut self) -> Option<Embedding> {
        if self.done {
            return None;
        }
        let depth_total = self.order.len();
        if !self.started {
            self.started = true;
            self.stack.push(self.ground.subsets());
        } else {
            // Resume by advancing the deepest stream (we return only full
            // assignments, so the stack is full when re-entered).
            self.chosen.truncate(depth_total - 1);
        }
        loop {
            let d = self.stack.len() - 1;
            let candidate = loop {
                match self.stack.last_mut().unwrap().next() {
                    Some(c) if self.fits(d, c) => break Some(c),
                    Some(_) => continue,
                    None => break None,
                }
            };
            match candidate {
                Some(c) => {
                    self.chosen.push(c);
                    if self.chosen.len() == depth_total {
                        let mut assignment = vec![Subset::empty(self.ground); depth_total];
                        for (depth, &img) in self.chosen.iter().enumerate() {
                            assignment[self.order[depth]] = img;
                        }
                        return Some(Embedding {
                            poset: Arc::clone(&self.poset),
                            ground: self.ground,
                            assignment,
                            kind: self.kind,
                        });
                    }
                    self.stack.push(self.ground.subsets());
                }
                None => {
                    self.stack.pop();
                    if self.stack.is_empty() {
                        self.done = true;
                        return None;
                    }
                    self.chosen.pop();
                }
            }
        }
    }
}

/// Outcome of the minimum-hull search: the smallest hull value over all
/// embeddings into ambients `m = height(P), …, m_max`, with a witness.
///
/// The value is a certificate only up to the searched ceiling — a larger
/// ambient can in principle do better, so `searched_m_max` is part of the
/// result and reported alongside the value.
#[derive(Debug, Clone)]
pub struct MinHullResult {
    pub value: u64,
    pub witness: Embedding,
    pub ambient_m: u32,
    pub searched_m_max: u32,
}

/// Minimum hull value of a `kind`-embedding of `poset` over all ambients up
/// to `m_max`, with the first witness attaining it.
///
/// Search order: ambients ascending, then first-element images restricted to
/// the prefix sets `∅, {1}, {1,2}, …` (every hull value is invariant under
/// relabeling positions, so some optimum survives this symmetry breaking),
/// then remaining elements in linear-extension order over canonical
/// candidates. Partial assignments whose image hull already reaches the best
/// known value are cut; a hull can only grow as images are added.
///
/// Weak embeddings exist whenever `m_max ≥ |P|` (map each element to its
/// strict down-set's index set — that embedding is even induced), so an
/// error here means the ceiling was too small, not that `t(P)` is undefined.
pub fn min_hull(
    poset: &Poset,
    kind: EmbeddingKind,
    m_max: u32,
) -> Result<MinHullResult, EmbeddingError> {
    min_hull_from(poset, kind, poset.height() as u32, m_max)
}

/// [`min_hull`] with an explicit lower end for the ambient range; block
/// constructions need `m ≥ 1` even for the one-element poset.
pub(crate) fn min_hull_from(
    poset: &Poset,
    kind: EmbeddingKind,
    m_min: u32,
    m_max: u32,
) -> Result<MinHullResult, EmbeddingError> {
    let arc = Arc::new(poset.clone());
    let mut best: Option<MinHullResult> = None;
    let floor = poset.size() as u64; // hull contains the image
    for m in m_min..=m_max {
        let ground = match GroundSet::new(m) {
            Ok(g) => g,
            Err(_) => break,
        };
        let best_value = best.as_ref().map(|b| b.value);
        if let Some(found) = search_ambient(&arc, ground, kind, best_value) {
            best = Some(MinHullResult {
                searched_m_max: m_max,
                ..found
            });
            if best.as_ref().unwrap().value == floor {
                break; // nothing can beat |P|
            }
        }
    }
    best.ok_or(EmbeddingError::NoEmbedding { kind, m_max })
}

/// Best embedding in one ambient, strictly better than `beat` if given.
fn search_ambient(
    poset: &Arc<Poset>,
    ground: GroundSet,
    kind: EmbeddingKind,
    beat: Option<u64>,
) -> Option<MinHullResult> {
    let order = poset.linear_extension();
    let floor = poset.size() as u64;
    let mut best: Option<MinHullResult> = None;
    let record = |best: &mut Option<MinHullResult>, chosen: &[Subset], hull: u64| {
        let mut assignment = vec![Subset::empty(ground); order.len()];
        for (depth, &img) in chosen.iter().enumerate() {
            assignment[order[depth]] = img;
        }
        *best = Some(MinHullResult {
            value: hull,
            witness: Embedding {
                poset: Arc::clone(poset),
                ground,
                assignment,
                kind,
            },
            ambient_m: ground.n(),
            searched_m_max: ground.n(),
        });
    };
    let bound = |best: &Option<MinHullResult>| -> Option<u64> {
        match (beat, best.as_ref().map(|b| b.value)) {
            (a, None) => a,
            (None, b) => b,
            (Some(a), Some(b)) => Some(a.min(b)),
        }
    };
    // First-element symmetry breaking: any relabeling of positions preserves
    // hull values, so the first image may be fixed to a prefix set per size.
    'sizes: for first_size in 0..=ground.n() {
        let first = Subset::from_bits(ground, (1u64 << first_size) - 1).unwrap();
        let mut chosen: Vec<Subset> = vec![first];
        if order.len() == 1 {
            let hull = partial_hull_size(ground, &[], first);
            if bound(&best).is_none_or(|b| hull < b) {
                record(&mut best, &chosen, hull);
            }
        } else {
            // Depth-first over the remaining elements; streams[i] generates
            // candidates for the element at extension depth i + 1.
            let mut streams: Vec<crate::lattice::CanonicalSubsets> = vec![ground.subsets()];
            while let Some(stream) = streams.last_mut() {
                let mut advanced = None;
                for c in stream.by_ref() {
                    if !fits_partial(poset, &order, &chosen, c, kind) {
                        continue;
                    }
                    // Hull cut: the hull of a partial image never shrinks.
                    let hull = partial_hull_size(ground, &chosen, c);
                    if bound(&best).is_some_and(|b| hull >= b) {
                        continue;
                    }
                    advanced = Some((c, hull));
                    break;
                }
                match advanced {
                    Some((c, hull)) => {
                        chosen.push(c);
                        if chosen.len() == order.len() {
                            record(&mut best, &chosen, hull);
                            chosen.pop();
                            if hull == floor {
                                break 'sizes; // hull ⊇ image: nothing beats |P|
                            }
                        } else {
                            streams.push(ground.subsets());
                        }
                    }
                    None => {
                        streams.pop();
                        if chosen.len() > 1 {
                            chosen.pop();
                        } else {
                            break; // back at the pinned first element
                        }
                    }
                }
            }
        }
        if best.as_ref().is_some_and(|b| b.value == floor) {
            break;
        }
    }
    best
}

fn fits_partial(
    poset: &Poset,
    order: &[usize],
    chosen: &[Subset],
    candidate: Subset,
    kind: EmbeddingKind,
) -> bool {
    let cur = order[chosen.len()];
    for (e, &img) in chosen.iter().enumerate() {
        let earlier = order[e];
        if poset.less(earlier, cur) {
            if !(img.is_subset_of(candidate) && img != candidate) {
                return false;
            }
        } else if img == candidate
            || (kind == EmbeddingKind::Induced
                && (img.is_subset_of(candidate) || candidate.is_subset_of(img)))
        {
            return false;
        }
    }
    true
}

/// Hull size of `chosen + candidate` — recomputed from scratch; partial
/// images are tiny (≤ 16 sets) and hulls are cut early.
fn partial_hull_size(ground: GroundSet, chosen: &[Subset], candidate: Subset) -> u64 {
    let mut members: Vec<Subset> = chosen.to_vec();
    members.push(candidate);
    SetFamily::new(ground, members)
        .and_then(|f| f.convex_hull())
        .map(|h| h.len() as u64)
        .expect("partial image is a nonempty family")
}

/// First embedding of `poset` into the lattice of its own height, in
/// enumeration order, if one exists. The witness behind [`is_thin`] and
/// [`is_slim`], and the seed for packing copies of height-tight posets.
pub fn height_embedding(poset: &Poset, kind: EmbeddingKind) -> Option<Embedding> {
    let h = poset.height() as u32;
    enumerate_embeddings(poset, h, kind).ok()?.next()
}

/// Does `poset` embed weakly into the lattice of its own height?
pub fn is_thin(poset: &Poset) -> bool {
    height_embedding(poset, EmbeddingKind::Weak).is_some()
}

/// Does `poset` embed as an induced copy into the lattice of its own height?
/// Implies [`is_thin`].
pub fn is_slim(poset: &Poset) -> bool {
    height_embedding(poset, EmbeddingKind::Induced).is_some()
}
