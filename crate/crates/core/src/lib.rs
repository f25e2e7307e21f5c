//! Incomparable copies of a finite poset inside the subset lattice.
//!
//! The subset lattice of `[n] = {1, …, n}` is the power set ordered by
//! inclusion. A *copy* of a poset `P` is an embedding `f` mapping elements to
//! subsets so that `x < y` in `P` forces `f(x) ⊂ f(y)` (a *weak* copy), or so
//! that additionally `f(x) ⊂ f(y)` forces `x < y` (an *induced* copy). Two
//! copies are *incomparable* when no set of one contains a set of the other.
//!
//! This crate provides the pieces needed to study how many pairwise
//! incomparable copies fit into the lattice:
//!
//! * [`poset`] — small explicit posets (≤ 16 elements) with named builders
//!   for chains, up/down forks and the diamond;
//! * [`lattice`] — machine-word subsets, canonically ordered set families,
//!   convex hulls, and exact maximal-chain counting;
//! * [`embedding`] — embedding enumeration and the minimum-hull search that
//!   certifies the packing constant `t(P)`;
//! * [`labeling`] — the hull-interval labeling of a lattice that places the
//!   convex hull of an embedding on a contiguous interval of labels;
//! * [`construction`] — explicit packings: block-coded ordered copy systems,
//!   the layered family built from them, and the path / thin-poset / V-poset
//!   families;
//! * [`oracle`] — exact maximum-packing search by branch and bound over a
//!   conflict graph, chain-count upper bounds, packing verification, and a
//!   Bollobás set-pair checker;
//! * [`io`] — serde document types for posets and packing families.
//!
//! Everything is deterministic: enumeration orders are fixed (subsets by size
//! then colexicographically, poset elements by a fixed linear extension), so
//! equal inputs give identical outputs, including search witnesses.

pub mod construction;
pub mod embedding;
pub mod io;
pub mod labeling;
pub mod lattice;
pub mod oracle;
pub mod poset;

pub use construction::PackingFamily;
pub use embedding::{Embedding, EmbeddingKind, MinHullResult};
pub use lattice::{GroundSet, SetFamily, Subset};
pub use poset::Poset;
