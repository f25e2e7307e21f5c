//! Ground truth at small scale.
//!
//! Everything here is exact and exhaustive: the maximum number of
//! pairwise-incomparable copies of a poset in a small subset lattice (by
//! branch and bound over the conflict graph of distinct copy images), the
//! chain-counting upper bound on that number, a sharper variant that scans
//! every convex family of a tiny lattice, packing verification, and the
//! Bollobás set-pair inequality. Budgets are explicit; exceeding one is an
//! error carrying the bounds found so far, never a silent wrong answer.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, BigUint, One, ToPrimitive, Zero};
use thiserror::Error;

use crate::construction::PackingFamily;
use crate::embedding::{
    enumerate_embeddings, min_hull, Embedding, EmbeddingError, EmbeddingKind,
};
use crate::lattice::{
    chains_meeting_lower_bound, factorial, GroundSet, LatticeError, SetFamily, Subset,
};
use crate::poset::Poset;

/// Largest ambient the sharp convex-family scan will attempt: the scan is
/// exponential in `2^n`.
pub const MAX_SHARP_GROUND: u32 = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error(
        "exact search capped at n ≤ {max_ground}, |P| ≤ {max_poset}; \
         got n = {n}, |P| = {poset_size} (≈ {estimate} embeddings)"
    )]
    ScaleExceeded {
        n: u32,
        poset_size: usize,
        max_ground: u32,
        max_poset: usize,
        estimate: BigUint,
    },
    #[error("distinct copy images exceed the cap {cap} (at least {seen} found)")]
    TooManyImages { seen: usize, cap: usize },
    #[error("search exceeded {max_nodes} nodes; bounds so far: {lower} ≤ M ≤ {upper}")]
    NodeBudgetExceeded {
        max_nodes: u64,
        lower: usize,
        upper: u64,
    },
    #[error("convex-family scan restricted to 1 ≤ n ≤ {MAX_SHARP_GROUND}, got {0}")]
    SharpGroundOutOfRange(u32),
    #[error("set-pair extraction needs a poset with unique minimum and maximum elements")]
    NoExtremeElements,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// Resource limits for the exact search.
#[derive(Debug, Clone)]
pub struct OracleBudget {
    /// Largest ambient ground size.
    pub max_ground: u32,
    /// Largest poset size.
    pub max_poset: usize,
    /// Cap on distinct copy images (conflict-graph vertices).
    pub max_images: usize,
    /// Cap on search-tree nodes across all solver phases.
    pub max_nodes: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_ground: 6,
            max_poset: 5,
            max_images: 5_000,
            max_nodes: 2_000_000,
        }
    }
}

/// All distinct images of valid embeddings, in canonical order. Two
/// embeddings that differ only by a poset automorphism share an image and
/// are counted once.
pub fn enumerate_copy_images(
    poset: &Poset,
    n: u32,
    kind: EmbeddingKind,
    budget: &OracleBudget,
) -> Result<Vec<SetFamily>, OracleError> {
    Ok(ConflictGraph::build(poset, n, kind, budget)?.into_images())
}

/// Distinct copy images with pairwise comparability adjacency. An
/// incomparable family of copies is exactly an independent set here; one
/// representative embedding per image is retained (the first in enumeration
/// order) so independent sets can be rebuilt into families.
#[derive(Debug, Clone)]
pub struct ConflictGraph {
    ground: GroundSet,
    nodes: Vec<SetFamily>,
    reps: Vec<Embedding>,
    adjacency: Vec<bool>,
    degrees: Vec<u32>,
}

impl ConflictGraph {
    pub fn build(
        poset: &Poset,
        n: u32,
        kind: EmbeddingKind,
        budget: &OracleBudget,
    ) -> Result<Self, OracleError> {
        if n > budget.max_ground || poset.size() > budget.max_poset {
            let mut estimate = BigUint::one();
            for i in 0..poset.size() as u64 {
                let slots = (BigUint::one() << n) - BigUint::from(i);
                estimate *= slots;
            }
            return Err(OracleError::ScaleExceeded {
                n,
                poset_size: poset.size(),
                max_ground: budget.max_ground,
                max_poset: budget.max_poset,
                estimate,
            });
        }
        let ground = GroundSet::new(n)?;
        let mut by_image: BTreeMap<SetFamily, Embedding> = BTreeMap::new();
        for emb in enumerate_embeddings(poset, n, kind)? {
            by_image.entry(emb.image()).or_insert(emb);
            if by_image.len() > budget.max_images {
                return Err(OracleError::TooManyImages {
                    seen: by_image.len(),
                    cap: budget.max_images,
                });
            }
        }
        let (nodes, reps): (Vec<SetFamily>, Vec<Embedding>) = by_image.into_iter().unzip();
        let k = nodes.len();
        let mut adjacency = vec![false; k * k];
        let mut degrees = vec![0u32; k];
        for i in 0..k {
            for j in (i + 1)..k {
                if !nodes[i].incomparable_with(&nodes[j])? {
                    adjacency[i * k + j] = true;
                    adjacency[j * k + i] = true;
                    degrees[i] += 1;
                    degrees[j] += 1;
                }
            }
        }
        Ok(ConflictGraph {
            ground,
            nodes,
            reps,
            adjacency,
            degrees,
        })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn images(&self) -> &[SetFamily] {
        &self.nodes
    }

    pub fn representative(&self, node: usize) -> &Embedding {
        &self.reps[node]
    }

    /// Whether the two images cannot coexist in an incomparable family.
    pub fn conflicting(&self, i: u32, j: u32) -> bool {
        self.adjacency[i as usize * self.nodes.len() + j as usize]
    }

    pub fn degree(&self, i: u32) -> u32 {
        self.degrees[i as usize]
    }

    fn into_images(self) -> Vec<SetFamily> {
        self.nodes
    }
}

/// Result of [`max_incomparable_packing`].
#[derive(Debug, Clone)]
pub struct ExactPacking {
    /// The exact maximum number of pairwise-incomparable copies.
    pub m: usize,
    /// The lexicographically least maximum packing, as one embedding per
    /// chosen image (its first-found representative).
    pub witness: PackingFamily,
    /// Number of distinct copy images considered.
    pub image_count: usize,
    /// Minimal hull size among copies in this ambient, when any copy exists.
    pub min_hull_value: Option<u64>,
    /// The chain-counting upper bound used as a global prune, when finite.
    pub upper_bound: Option<BigUint>,
    /// Search-tree nodes expended across all phases.
    pub nodes_explored: u64,
}

/// Exact maximum independent set in the conflict graph: branch and bound
/// with a greedy seed, a first-fit clique-cover bound per node, and the
/// chain-counting bound as a global optimality cut. A second phase rebuilds
/// the lexicographically least maximum packing.
pub fn max_incomparable_packing(
    poset: &Poset,
    n: u32,
    kind: EmbeddingKind,
    budget: &OracleBudget,
) -> Result<ExactPacking, OracleError> {
    let graph = ConflictGraph::build(poset, n, kind, budget)?;
    let ground = graph.ground();
    if graph.node_count() == 0 {
        let witness = PackingFamily::new(ground, poset.clone().into(), kind, Vec::new())
            .expect("empty family is coherent");
        return Ok(ExactPacking {
            m: 0,
            witness,
            image_count: 0,
            min_hull_value: None,
            upper_bound: None,
            nodes_explored: 0,
        });
    }

    // Hull sizes of copies in B_n are at least the minimum hull over
    // embeddings into B_n, and incomparable copies have chain-disjoint
    // hulls, so ⌊n!/bound(t,n)⌋ caps the packing size.
    let t = min_hull(poset, kind, n)?.value;
    let upper = match upper_bound_estimate(t, n) {
        ChainBoundEstimate::Bound(b) => Some(b),
        ChainBoundEstimate::Vacuous => None,
    };
    let global_cut = upper.as_ref().and_then(|b| b.to_usize());

    let mut solver = MisSolver {
        graph: &graph,
        max_nodes: budget.max_nodes,
        nodes: 0,
        best: Vec::new(),
        global_cut,
        done: false,
    };
    solver.run()?;
    let m = solver.best.len();
    let witness_nodes = solver.lex_least(m)?;
    let nodes_explored = solver.nodes;

    let copies: Vec<Embedding> = witness_nodes
        .iter()
        .map(|&v| graph.representative(v as usize).clone())
        .collect();
    let poset_arc = copies
        .first()
        .map(|c| c.poset().clone())
        .expect("m ≥ 1 when images exist");
    let witness = PackingFamily::new(ground, poset_arc, kind, copies)
        .expect("witness copies share ground, poset, and kind");
    Ok(ExactPacking {
        m,
        witness,
        image_count: graph.node_count(),
        min_hull_value: Some(t),
        upper_bound: upper,
        nodes_explored,
    })
}

struct MisSolver<'g> {
    graph: &'g ConflictGraph,
    max_nodes: u64,
    nodes: u64,
    best: Vec<u32>,
    global_cut: Option<usize>,
    done: bool,
}

impl MisSolver<'_> {
    fn run(&mut self) -> Result<(), OracleError> {
        let k = self.graph.node_count() as u32;
        // Greedy seed: sweep vertices by ascending conflict degree.
        let mut order: Vec<u32> = (0..k).collect();
        order.sort_by_key(|&v| (self.graph.degree(v), v));
        let mut seed: Vec<u32> = Vec::new();
        for v in order {
            if seed.iter().all(|&u| !self.graph.conflicting(u, v)) {
                seed.push(v);
            }
        }
        seed.sort_unstable();
        self.best = seed;
        if self.cut_reached() {
            return Ok(());
        }
        let all: Vec<u32> = (0..k).collect();
        let mut chosen = Vec::new();
        self.solve(&all, &mut chosen)
    }

    fn cut_reached(&mut self) -> bool {
        if self.global_cut.is_some_and(|c| self.best.len() >= c) {
            self.done = true;
        }
        self.done
    }

    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            let trivial = self.graph.node_count() as u64;
            let upper = self
                .global_cut
                .map_or(trivial, |c| trivial.min(c as u64));
            return Err(OracleError::NodeBudgetExceeded {
                max_nodes: self.max_nodes,
                lower: self.best.len(),
                upper,
            });
        }
        Ok(())
    }

    /// First-fit clique cover of the candidate set; the number of cliques
    /// bounds any independent set inside it.
    fn clique_cover_bound(&self, cands: &[u32]) -> usize {
        let mut cliques: Vec<Vec<u32>> = Vec::new();
        'next: for &v in cands {
            for clique in &mut cliques {
                if clique.iter().all(|&u| self.graph.conflicting(u, v)) {
                    clique.push(v);
                    continue 'next;
                }
            }
            cliques.push(vec![v]);
        }
        cliques.len()
    }

    fn solve(&mut self, cands: &[u32], chosen: &mut Vec<u32>) -> Result<(), OracleError> {
        self.tick()?;
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
            self.best.sort_unstable();
        }
        if self.cut_reached() || cands.is_empty() {
            return Ok(());
        }
        if chosen.len() + self.clique_cover_bound(cands) <= self.best.len() {
            return Ok(());
        }
        // Branch on the busiest candidate; ties break to the smallest index.
        let &v = cands
            .iter()
            .max_by_key(|&&u| (self.graph.degree(u), std::cmp::Reverse(u)))
            .expect("candidates nonempty");
        let without_neighbourhood: Vec<u32> = cands
            .iter()
            .copied()
            .filter(|&u| u != v && !self.graph.conflicting(v, u))
            .collect();
        chosen.push(v);
        self.solve(&without_neighbourhood, chosen)?;
        chosen.pop();
        if self.done {
            return Ok(());
        }
        let without_v: Vec<u32> = cands.iter().copied().filter(|&u| u != v).collect();
        self.solve(&without_v, chosen)
    }

    /// The lexicographically least maximum independent set, as ascending
    /// vertex indices: grow greedily, keeping only continuations that still
    /// complete to the target size.
    fn lex_least(&mut self, target: usize) -> Result<Vec<u32>, OracleError> {
        let mut chosen: Vec<u32> = Vec::new();
        let mut cands: Vec<u32> = (0..self.graph.node_count() as u32).collect();
        while chosen.len() < target {
            let mut advanced = false;
            for pos in 0..cands.len() {
                let v = cands[pos];
                let rest: Vec<u32> = cands[pos + 1..]
                    .iter()
                    .copied()
                    .filter(|&u| !self.graph.conflicting(v, u))
                    .collect();
                if self.exists_independent(&rest, target - chosen.len() - 1)? {
                    chosen.push(v);
                    cands = rest;
                    advanced = true;
                    break;
                }
            }
            assert!(advanced, "a maximum independent set exists");
        }
        Ok(chosen)
    }

    fn exists_independent(&mut self, cands: &[u32], need: usize) -> Result<bool, OracleError> {
        if need == 0 {
            return Ok(true);
        }
        self.tick()?;
        if cands.len() < need || self.clique_cover_bound(cands) < need {
            return Ok(false);
        }
        let v = cands[0];
        let with_v: Vec<u32> = cands[1..]
            .iter()
            .copied()
            .filter(|&u| !self.graph.conflicting(v, u))
            .collect();
        if self.exists_independent(&with_v, need - 1)? {
            return Ok(true);
        }
        self.exists_independent(&cands[1..], need)
    }
}

/// `⌊n! / bound⌋` where `bound` is the guaranteed minimum number of maximal
/// chains meeting any `t`-subset family of the lattice of `[n]`, or
/// [`ChainBoundEstimate::Vacuous`] when that minimum is not positive
/// (`t ≥ n + 1`, `t = 0`, or `n = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainBoundEstimate {
    Bound(BigUint),
    Vacuous,
}

impl ChainBoundEstimate {
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            ChainBoundEstimate::Bound(b) => Some(b),
            ChainBoundEstimate::Vacuous => None,
        }
    }
}

pub fn upper_bound_estimate(t: u64, n: u32) -> ChainBoundEstimate {
    if n == 0 {
        return ChainBoundEstimate::Vacuous;
    }
    let per_hull = chains_meeting_lower_bound(t, u64::from(n));
    if per_hull <= BigRational::zero() {
        return ChainBoundEstimate::Vacuous;
    }
    let total = BigRational::from_integer(BigInt::from(factorial(u64::from(n))));
    let quotient = (total / per_hull).floor();
    ChainBoundEstimate::Bound(
        quotient
            .to_integer()
            .to_biguint()
            .expect("quotient of positive quantities"),
    )
}

/// Sharp analogue of [`upper_bound_estimate`]: the true minimum of
/// [`count_chains_meeting`] over every convex family with at least `t`
/// members, found by scanning all families of the (tiny) lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpChainBound {
    pub t: u64,
    pub n: u32,
    /// Minimum chains met by a qualifying convex family; `None` when no
    /// family has `t` members (`t > 2^n`) or the empty family qualifies
    /// (`t = 0`), both of which bound nothing.
    pub min_chains: Option<BigUint>,
    /// A first qualifying family attaining the minimum, in bitmask scan
    /// order.
    pub witness: Option<SetFamily>,
    /// `⌊n!/min_chains⌋`.
    pub bound: Option<BigUint>,
}

pub fn sharp_chain_bound(t: u64, n: u32) -> Result<SharpChainBound, OracleError> {
    if n == 0 || n > MAX_SHARP_GROUND {
        return Err(OracleError::SharpGroundOutOfRange(n));
    }
    let vacuous = SharpChainBound {
        t,
        n,
        min_chains: None,
        witness: None,
        bound: None,
    };
    let subsets = 1u32 << n; // lattice size, ≤ 16
    if t == 0 || t > u64::from(subsets) {
        return Ok(vacuous);
    }

    // Betweenness tables over subset indices: down[k] marks i ⊆ k,
    // up[k] marks i ⊇ k.
    let mut down = vec![0u32; subsets as usize];
    let mut up = vec![0u32; subsets as usize];
    for k in 0..subsets {
        for i in 0..subsets {
            if i & k == i {
                down[k as usize] |= 1 << i;
            }
            if i & k == k {
                up[k as usize] |= 1 << i;
            }
        }
    }
    let convex = |mask: u32| -> bool {
        (0..subsets).all(|k| {
            mask >> k & 1 == 1 || mask & down[k as usize] == 0 || mask & up[k as usize] == 0
        })
    };
    let total_chains = factorial(u64::from(n))
        .to_u64()
        .expect("n ≤ 4 so n! ≤ 24");
    let chains_meeting = |mask: u32| -> u64 {
        let full = subsets - 1;
        let mut ways = vec![0u64; subsets as usize];
        ways[0] = u64::from(mask & 1 == 0);
        for s in 1..=full {
            if mask >> s & 1 == 1 {
                continue;
            }
            let mut acc = 0;
            let mut rest = s;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                acc += ways[(s & !low) as usize];
                rest &= rest - 1;
            }
            ways[s as usize] = acc;
        }
        total_chains - ways[full as usize]
    };

    let mut best: Option<(u64, u32)> = None;
    for mask in 1u32..(1u64 << subsets) as u32 {
        if u64::from(mask.count_ones()) < t || !convex(mask) {
            continue;
        }
        let c = chains_meeting(mask);
        if best.is_none_or(|(b, _)| c < b) {
            best = Some((c, mask));
        }
    }
    let Some((min_chains, mask)) = best else {
        return Ok(vacuous);
    };
    let ground = GroundSet::new(n)?;
    let members: Vec<Subset> = (0..subsets)
        .filter(|&s| mask >> s & 1 == 1)
        .map(|s| Subset::from_bits(ground, u64::from(s)).expect("s < 2^n"))
        .collect();
    Ok(SharpChainBound {
        t,
        n,
        min_chains: Some(BigUint::from(min_chains)),
        witness: Some(SetFamily::new(ground, members)?),
        bound: Some(factorial(u64::from(n)) / BigUint::from(min_chains)),
    })
}

/// Everything [`verify_packing`] finds. `pass` holds exactly when every
/// copy is a valid embedding and no image or hull pair is comparable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub copy_count: usize,
    pub invalid_copies: Vec<usize>,
    /// Pairs `(i, j)`, `i < j`, whose images contain comparable sets.
    pub image_failures: Vec<(usize, usize)>,
    /// Pairs whose convex hulls contain comparable sets.
    pub hull_failures: Vec<(usize, usize)>,
    pub pairs_checked: u64,
    /// Individual subset comparability tests performed.
    pub set_comparisons: u64,
    pub pass: bool,
}

/// Full quadratic re-verification of a family: per-copy embedding validity,
/// pairwise image incomparability, and pairwise hull incomparability (the
/// stronger property the chain-counting argument rests on).
pub fn verify_packing(fam: &PackingFamily) -> VerificationReport {
    let copies = fam.copies();
    let invalid_copies: Vec<usize> = copies
        .iter()
        .enumerate()
        .filter(|(_, c)| !Embedding::is_valid(c.poset(), c.assignment(), c.kind()))
        .map(|(i, _)| i)
        .collect();
    let images: Vec<SetFamily> = copies.iter().map(Embedding::image).collect();
    let hulls: Vec<SetFamily> = copies.iter().map(Embedding::hull).collect();

    let mut comparisons = 0u64;
    let mut pairs_checked = 0u64;
    let mut image_failures = Vec::new();
    let mut hull_failures = Vec::new();
    let mut comparable = |a: &SetFamily, b: &SetFamily| -> bool {
        for &x in a.members() {
            for &y in b.members() {
                comparisons += 1;
                if x.comparable_with(y).expect("family shares one ground") {
                    return true;
                }
            }
        }
        false
    };
    for i in 0..copies.len() {
        for j in (i + 1)..copies.len() {
            pairs_checked += 1;
            if comparable(&images[i], &images[j]) {
                image_failures.push((i, j));
            }
            if comparable(&hulls[i], &hulls[j]) {
                hull_failures.push((i, j));
            }
        }
    }
    let pass = invalid_copies.is_empty() && image_failures.is_empty() && hull_failures.is_empty();
    VerificationReport {
        copy_count: copies.len(),
        invalid_copies,
        image_failures,
        hull_failures,
        pairs_checked,
        set_comparisons: comparisons,
        pass,
    }
}

/// Pairs `(A_i, B_i)` for the Bollobás inequality. The constructor checks
/// only ground-set coherence; the defining intersection properties are
/// checked — not assumed — by [`bollobas_check`].
#[derive(Debug, Clone)]
pub struct SetPairSystem {
    ground: GroundSet,
    pairs: Vec<(Subset, Subset)>,
}

impl SetPairSystem {
    pub fn new(ground: GroundSet, pairs: Vec<(Subset, Subset)>) -> Result<Self, OracleError> {
        for (a, b) in &pairs {
            for s in [a, b] {
                if s.ground() != ground {
                    return Err(LatticeError::GroundMismatch(s.ground().n(), ground.n()).into());
                }
            }
        }
        Ok(SetPairSystem { ground, pairs })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn pairs(&self) -> &[(Subset, Subset)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// The set pairs the chain-family argument feeds to the inequality: each
/// copy contributes (image of the poset's minimum, complement of the image
/// of its maximum). Requires a poset with unique extremes.
pub fn chain_set_pairs(fam: &PackingFamily) -> Result<SetPairSystem, OracleError> {
    let p = fam.poset();
    let k = p.size();
    let minimum = (0..k)
        .find(|&x| (0..k).all(|y| y == x || p.less(x, y)))
        .ok_or(OracleError::NoExtremeElements)?;
    let maximum = (0..k)
        .find(|&x| (0..k).all(|y| y == x || p.less(y, x)))
        .ok_or(OracleError::NoExtremeElements)?;
    let pairs = fam
        .copies()
        .iter()
        .map(|c| (c.image_of(minimum), c.image_of(maximum).complement()))
        .collect();
    SetPairSystem::new(fam.ground(), pairs)
}

/// Outcome of [`bollobas_check`]. When an invariant fails, the offending
/// index (or ordered pair) is reported and the verdict is skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BollobasReport {
    /// First `i` with `A_i ∩ B_i ≠ ∅`.
    pub disjoint_violation: Option<usize>,
    /// First `(i, j)`, `i ≠ j`, with `A_i ∩ B_j = ∅`.
    pub cross_violation: Option<(usize, usize)>,
    /// `Σ 1/C(|A_i|+|B_i|, |A_i|)`, exact.
    pub sum: Option<BigRational>,
    /// Whether the sum is ≤ 1.
    pub holds: Option<bool>,
}

/// Verifies the set-pair invariants, then evaluates the inequality
/// `Σ 1/C(|A_i|+|B_i|, |A_i|) ≤ 1` in exact rational arithmetic.
pub fn bollobas_check(system: &SetPairSystem) -> BollobasReport {
    let mut report = BollobasReport {
        disjoint_violation: None,
        cross_violation: None,
        sum: None,
        holds: None,
    };
    let pairs = system.pairs();
    for (i, (a, b)) in pairs.iter().enumerate() {
        if a.intersection(*b).size() != 0 {
            report.disjoint_violation = Some(i);
            return report;
        }
    }
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            if i != j && pairs[i].0.intersection(pairs[j].1).size() == 0 {
                report.cross_violation = Some((i, j));
                return report;
            }
        }
    }
    let mut sum = BigRational::zero();
    for (a, b) in pairs {
        let denom = crate::lattice::binomial(u64::from(a.size() + b.size()), u64::from(a.size()));
        sum += BigRational::new(BigInt::one(), BigInt::from(denom));
    }
    report.holds = Some(sum <= BigRational::one());
    report.sum = Some(sum);
    report
}
