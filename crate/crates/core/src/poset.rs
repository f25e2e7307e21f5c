//! Finite posets given by an explicit strict-order matrix.
//!
//! Posets are built from cover relations on named elements; the constructor
//! computes the transitive closure and rejects cycles. Sizes are capped at
//! [`MAX_POSET_SIZE`] — everything downstream (embedding search, copy
//! enumeration) is exponential in the poset size, so large posets are a
//! mistake, not a use case.

use std::fmt;

use thiserror::Error;

/// Hard cap on the number of poset elements.
pub const MAX_POSET_SIZE: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("poset must have at least one element")]
    Empty,
    #[error("poset has {size} elements, cap is {MAX_POSET_SIZE}")]
    TooLarge { size: usize },
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("cover relation mentions unknown element {0:?}")]
    UnknownLabel(String),
    #[error("cover relation {0:?} -> {0:?} relates an element to itself")]
    SelfCover(String),
    #[error("cover relations contain a cycle: {}", cycle.join(" -> "))]
    Cycle { cycle: Vec<String> },
}

/// Orientation of a fork poset: one center element and `k` elements all
/// above it (`Up`) or all below it (`Down`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForkDirection {
    Up,
    Down,
}

/// A finite poset with labeled elements and a precomputed strict order.
///
/// `less(x, y)` answers `x < y` in O(1) from an n×n matrix. Elements are
/// addressed by index `0..size()`; labels are only for input and display.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    // Row-major: below[x * n + y] == true iff element x is strictly below y.
    below: Vec<bool>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rel = Vec::new();
        for x in 0..self.size() {
            for y in 0..self.size() {
                if self.less(x, y) {
                    rel.push(format!("{}<{}", self.labels[x], self.labels[y]));
                }
            }
        }
        write!(f, "Poset[{}; {}]", self.labels.join(","), rel.join(" "))
    }
}

impl Poset {
    /// Builds a poset from element labels and cover relations `(lower, upper)`.
    ///
    /// The strict order is the transitive closure of the covers. Any relation
    /// set is accepted as "covers" — redundant pairs are harmless. Rejects
    /// duplicate or unknown labels, empty element lists, oversized posets,
    /// and cyclic relations (the error carries one offending cycle).
    pub fn from_cover_relations<S, T>(labels: &[S], covers: &[(T, T)]) -> Result<Self, PosetError>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let n = labels.len();
        if n == 0 {
            return Err(PosetError::Empty);
        }
        if n > MAX_POSET_SIZE {
            return Err(PosetError::TooLarge { size: n });
        }
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let index = |name: &str| -> Result<usize, PosetError> {
            labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| PosetError::UnknownLabel(name.to_owned()))
        };

        let mut below = vec![false; n * n];
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let (x, y) = (index(a.as_ref())?, index(b.as_ref())?);
            if x == y {
                return Err(PosetError::SelfCover(a.as_ref().to_owned()));
            }
            edges.push((x, y));
            below[x * n + y] = true;
        }

        // Warshall closure; a cycle shows up as x < x afterwards.
        for k in 0..n {
            for x in 0..n {
                if below[x * n + k] {
                    for y in 0..n {
                        if below[k * n + y] {
                            below[x * n + y] = true;
                        }
                    }
                }
            }
        }
        for x in 0..n {
            if below[x * n + x] {
                return Err(PosetError::Cycle {
                    cycle: find_cycle(n, &edges, x, &labels),
                });
            }
        }

        Ok(Poset { labels, below })
    }

    /// The one-element poset.
    pub fn singleton() -> Self {
        Poset {
            labels: vec!["a".to_owned()],
            below: vec![false],
        }
    }

    /// Total order on `len ≥ 1` elements `x1 < x2 < … `.
    pub fn chain(len: usize) -> Result<Self, PosetError> {
        if len == 0 {
            return Err(PosetError::Empty);
        }
        if len > MAX_POSET_SIZE {
            return Err(PosetError::TooLarge { size: len });
        }
        let labels: Vec<String> = (1..=len).map(|i| format!("x{i}")).collect();
        let mut below = vec![false; len * len];
        for x in 0..len {
            for y in x + 1..len {
                below[x * len + y] = true;
            }
        }
        Ok(Poset { labels, below })
    }

    /// Fork with `k ≥ 0` prongs: center `a`, prongs labeled `b`, `c`, … all
    /// strictly above (`Up`) or strictly below (`Down`) the center and
    /// mutually unrelated. `fork(0, _)` is the singleton; `fork(2, Up)` is
    /// the V poset.
    pub fn fork(k: usize, dir: ForkDirection) -> Result<Self, PosetError> {
        let n = k + 1;
        if n > MAX_POSET_SIZE {
            return Err(PosetError::TooLarge { size: n });
        }
        let labels: Vec<String> = (0..n)
            .map(|i| char::from(b'a' + i as u8).to_string())
            .collect();
        let mut below = vec![false; n * n];
        for prong in 1..n {
            match dir {
                ForkDirection::Up => below[prong] = true, // a < prong (row 0)
                ForkDirection::Down => below[prong * n] = true, // prong < a
            }
        }
        Ok(Poset { labels, below })
    }

    /// The V poset: `a < b`, `a < c`, with `b`, `c` unrelated.
    pub fn v() -> Self {
        Self::fork(2, ForkDirection::Up).expect("3 ≤ cap")
    }

    /// Four elements `a < b < c`, `a < d < c`, with `b`, `d` unrelated.
    pub fn diamond() -> Self {
        Self::from_cover_relations(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("a", "d"), ("d", "c")],
        )
        .expect("acyclic by construction")
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Strict order: `x < y`.
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.below[x * self.size() + y]
    }

    /// `x < y`, `x = y`, or `x > y`.
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        x == y || self.less(x, y) || self.less(y, x)
    }

    /// Length of a longest chain, counted in steps: a single element has
    /// height 0, a total order on `m` elements has height `m − 1`.
    pub fn height(&self) -> usize {
        let ext = self.linear_extension();
        let mut depth = vec![0usize; self.size()];
        let mut best = 0;
        for &y in &ext {
            for x in 0..self.size() {
                if self.less(x, y) {
                    depth[y] = depth[y].max(depth[x] + 1);
                }
            }
            best = best.max(depth[y]);
        }
        best
    }

    /// Deterministic linear extension: repeatedly take the smallest-index
    /// element all of whose strict predecessors were already output.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.size();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&y| !placed[y] && (0..n).all(|x| !self.less(x, y) || placed[x]))
                .expect("acyclic poset always has a minimal element");
            placed[next] = true;
            out.push(next);
        }
        out
    }

    /// The order-dual: same labels, all relations reversed.
    pub fn transpose(&self) -> Self {
        let n = self.size();
        let mut below = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                below[y * n + x] = self.below[x * n + y];
            }
        }
        Poset {
            labels: self.labels.clone(),
            below,
        }
    }
}

/// Finds some cycle through vertex `start` in the cover digraph.
fn find_cycle(n: usize, edges: &[(usize, usize)], start: usize, labels: &[String]) -> Vec<String> {
    // DFS from start until we return to it; path reconstruction via parents.
    let mut adj = vec![Vec::new(); n];
    for &(x, y) in edges {
        adj[x].push(y);
    }
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![start];
    let mut seen = vec![false; n];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if w == start {
                // Closed walk start → … → v → start, read off the parents.
                let mut rev = Vec::new();
                let mut cur = v;
                while cur != start {
                    rev.push(cur);
                    cur = parent[cur];
                }
                let mut path = vec![start];
                path.extend(rev.into_iter().rev());
                path.push(start);
                return path.iter().map(|&i| labels[i].clone()).collect();
            }
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    vec![labels[start].clone()]
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Strict order must be irreflexive, antisymmetric and transitive.
    fn assert_strict_order(p: &Poset) {
        let n = p.size();
        for x in 0..n {
            assert!(!p.less(x, x), "irreflexive at {x}");
            for y in 0..n {
                if p.less(x, y) {
                    assert!(!p.less(y, x), "antisymmetry at ({x},{y})");
                }
                for z in 0..n {
                    if p.less(x, y) && p.less(y, z) {
                        assert!(p.less(x, z), "transitivity at ({x},{y},{z})");
                    }
                }
            }
        }
    }

    #[test]
    fn diamond_closure_and_height() {
        let d = Poset::diamond();
        assert_strict_order(&d);
        let (a, b, c, dd) = (0, 1, 2, 3);
        assert!(d.less(a, c), "closure must add a < c");
        assert!(d.less(a, b) && d.less(b, c) && d.less(a, dd) && d.less(dd, c));
        assert!(!d.comparable(b, dd));
        assert_eq!(d.height(), 2);
    }

    #[test]
    fn chain_heights() {
        for m in 1..=10 {
            let c = Poset::chain(m).unwrap();
            assert_strict_order(&c);
            assert_eq!(c.height(), m - 1);
            assert_eq!(c.linear_extension(), (0..m).collect::<Vec<_>>());
        }
        assert_eq!(Poset::chain(0), Err(PosetError::Empty));
        assert!(matches!(
            Poset::chain(17),
            Err(PosetError::TooLarge { size: 17 })
        ));
    }

    #[test]
    fn fork_up_is_v_and_down_is_dual() {
        let v = Poset::v();
        assert_strict_order(&v);
        assert_eq!(v.labels(), &["a", "b", "c"]);
        assert!(v.less(0, 1) && v.less(0, 2) && !v.comparable(1, 2));
        assert_eq!(v.height(), 1);

        let lambda = Poset::fork(2, ForkDirection::Down).unwrap();
        assert_strict_order(&lambda);
        assert_eq!(lambda, v.transpose());
        assert!(lambda.less(1, 0) && lambda.less(2, 0));

        let single = Poset::fork(0, ForkDirection::Up).unwrap();
        assert_eq!(single.size(), 1);
        assert_eq!(single, Poset::singleton());
        assert_eq!(single.height(), 0);
    }

    #[test]
    fn cycle_rejected_with_witness() {
        let err = Poset::from_cover_relations(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c"), ("c", "a")],
        )
        .unwrap_err();
        match err {
            PosetError::Cycle { cycle } => {
                // A closed walk: first equals last, length ≥ 2 edges.
                assert_eq!(cycle.first(), cycle.last());
                assert!(cycle.len() >= 3, "cycle {cycle:?}");
            }
            other => panic!("expected cycle error, got {other:?}"),
        }
    }

    #[test]
    fn bad_inputs_rejected() {
        assert_eq!(
            Poset::from_cover_relations(&["a", "a"], &[] as &[(&str, &str)]),
            Err(PosetError::DuplicateLabel("a".into()))
        );
        assert_eq!(
            Poset::from_cover_relations(&["a"], &[("a", "z")]),
            Err(PosetError::UnknownLabel("z".into()))
        );
        assert_eq!(
            Poset::from_cover_relations(&["a"], &[("a", "a")]),
            Err(PosetError::SelfCover("a".into()))
        );
        let labels: Vec<String> = (0..17).map(|i| format!("e{i}")).collect();
        assert!(matches!(
            Poset::from_cover_relations(&labels, &[] as &[(&str, &str)]),
            Err(PosetError::TooLarge { size: 17 })
        ));
    }

    #[test]
    fn linear_extension_respects_order() {
        for p in [Poset::v(), Poset::diamond(), Poset::chain(5).unwrap()] {
            let ext = p.linear_extension();
            let pos: Vec<usize> = {
                let mut pos = vec![0; p.size()];
                for (i, &e) in ext.iter().enumerate() {
                    pos[e] = i;
                }
                pos
            };
            for x in 0..p.size() {
                for y in 0..p.size() {
                    if p.less(x, y) {
                        assert!(pos[x] < pos[y]);
                    }
                }
            }
        }
    }

    #[test]
    fn redundant_covers_are_harmless() {
        // Covers already containing the closure edge.
        let p = Poset::from_cover_relations(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c"), ("a", "c")],
        )
        .unwrap();
        assert_eq!(p, Poset::chain(3).unwrap().relabeled_like(&p));
    }

    impl Poset {
        /// Test helper: same structure with labels replaced by `other`'s.
        fn relabeled_like(&self, other: &Poset) -> Poset {
            Poset {
                labels: other.labels.clone(),
                below: self.below.clone(),
            }
        }
    }
}
