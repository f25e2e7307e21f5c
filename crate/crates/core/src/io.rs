//! Serializable document forms of posets and packing families.
//!
//! Documents are plain data with stable field layouts: subsets appear as
//! sorted 1-based position lists, copies as label → positions maps in label
//! order. Loading a family is deliberately lenient about mathematical
//! validity — only structure (labels, ranges, ground sizes) is enforced, so
//! a bad family can be loaded and then *reported* bad by verification
//! instead of being unreadable.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construction::{ConstructionError, PackingFamily};
use crate::embedding::{Embedding, EmbeddingKind};
use crate::lattice::{GroundSet, LatticeError, Subset};
use crate::poset::{Poset, PosetError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("copy {copy} is missing element {label:?}")]
    MissingElement { copy: usize, label: String },
    #[error("copy {copy} names unknown element {label:?}")]
    UnknownElement { copy: usize, label: String },
    #[error("unknown embedding kind {0:?}, expected \"weak\" or \"induced\"")]
    BadKind(String),
}

pub fn kind_name(kind: EmbeddingKind) -> &'static str {
    match kind {
        EmbeddingKind::Weak => "weak",
        EmbeddingKind::Induced => "induced",
    }
}

pub fn parse_kind(name: &str) -> Result<EmbeddingKind, IoError> {
    match name {
        "weak" => Ok(EmbeddingKind::Weak),
        "induced" => Ok(EmbeddingKind::Induced),
        other => Err(IoError::BadKind(other.to_owned())),
    }
}

/// A poset as element labels plus cover relations `(lower, upper)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl PosetDoc {
    /// Extracts the cover relations (strict relations with nothing strictly
    /// between) in element order.
    pub fn from_poset(poset: &Poset) -> Self {
        let k = poset.size();
        let mut covers = Vec::new();
        for x in 0..k {
            for y in 0..k {
                if poset.less(x, y)
                    && !(0..k).any(|z| poset.less(x, z) && poset.less(z, y))
                {
                    covers.push((poset.label(x).to_owned(), poset.label(y).to_owned()));
                }
            }
        }
        PosetDoc {
            elements: poset.labels().to_vec(),
            covers,
        }
    }

    pub fn to_poset(&self) -> Result<Poset, PosetError> {
        Poset::from_cover_relations(&self.elements, &self.covers)
    }
}

/// A packing family as a document: ambient size, embedding kind, the poset,
/// and one label → sorted-positions map per copy, in construction order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub n: u32,
    pub kind: String,
    pub poset: PosetDoc,
    pub copies: Vec<BTreeMap<String, Vec<u32>>>,
}

impl FamilyDoc {
    pub fn from_family(fam: &PackingFamily) -> Self {
        let poset = fam.poset();
        let copies = fam
            .copies()
            .iter()
            .map(|c| {
                (0..poset.size())
                    .map(|x| (poset.label(x).to_owned(), c.assignment()[x].indices()))
                    .collect()
            })
            .collect();
        FamilyDoc {
            n: fam.ground().n(),
            kind: kind_name(fam.kind()).to_owned(),
            poset: PosetDoc::from_poset(poset),
            copies,
        }
    }

    pub fn to_family(&self) -> Result<PackingFamily, IoError> {
        let poset = Arc::new(self.poset.to_poset()?);
        let kind = parse_kind(&self.kind)?;
        let ground = GroundSet::new(self.n)?;
        let mut copies = Vec::with_capacity(self.copies.len());
        for (ci, map) in self.copies.iter().enumerate() {
            if let Some(unknown) = map.keys().find(|l| poset.index_of(l).is_none()) {
                return Err(IoError::UnknownElement {
                    copy: ci,
                    label: unknown.clone(),
                });
            }
            let mut assignment = Vec::with_capacity(poset.size());
            for x in 0..poset.size() {
                let label = poset.label(x);
                let indices = map.get(label).ok_or_else(|| IoError::MissingElement {
                    copy: ci,
                    label: label.to_owned(),
                })?;
                assignment.push(Subset::from_indices(ground, indices)?);
            }
            copies.push(Embedding::new_unchecked(
                Arc::clone(&poset),
                ground,
                assignment,
                kind,
            ));
        }
        Ok(PackingFamily::new(ground, poset, kind, copies)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::path_family;
    use crate::oracle::verify_packing;

    #[test]
    fn poset_round_trip() {
        for poset in [
            Poset::singleton(),
            Poset::chain(4).unwrap(),
            Poset::v(),
            Poset::diamond(),
        ] {
            let doc = PosetDoc::from_poset(&poset);
            assert_eq!(doc.to_poset().unwrap(), poset);
        }
        let diamond = PosetDoc::from_poset(&Poset::diamond());
        // Transitive relations are dropped from the cover list.
        assert_eq!(
            diamond.covers,
            [("a", "b"), ("a", "d"), ("b", "c"), ("d", "c")]
                .map(|(x, y)| (x.to_owned(), y.to_owned()))
        );
    }

    #[test]
    fn family_round_trip_preserves_bits_and_report() {
        let fam = path_family(1, 4, 100).unwrap();
        let doc = FamilyDoc::from_family(&fam);
        let back = doc.to_family().unwrap();
        assert_eq!(back.len(), fam.len());
        for (a, b) in fam.copies().iter().zip(back.copies()) {
            assert_eq!(
                a.assignment().iter().map(|s| s.bits()).collect::<Vec<_>>(),
                b.assignment().iter().map(|s| s.bits()).collect::<Vec<_>>()
            );
        }
        assert_eq!(verify_packing(&fam), verify_packing(&back));
        // And the document itself survives its own round trip.
        assert_eq!(FamilyDoc::from_family(&back), doc);
    }

    #[test]
    fn lenient_load_then_honest_verification() {
        // An invalid copy (not a chain) loads fine and fails verification.
        let mut doc = FamilyDoc::from_family(&path_family(1, 3, 100).unwrap());
        doc.copies[0].insert("x2".to_owned(), vec![3]); // was {2,3} ⊇ {2}; now incomparable
        let fam = doc.to_family().unwrap();
        let report = verify_packing(&fam);
        assert_eq!(report.invalid_copies, vec![0]);
        assert!(!report.pass);
    }

    #[test]
    fn structural_errors() {
        let good = FamilyDoc::from_family(&path_family(1, 3, 100).unwrap());

        let mut missing = good.clone();
        missing.copies[1].remove("x1");
        assert!(matches!(
            missing.to_family(),
            Err(IoError::MissingElement { copy: 1, .. })
        ));

        let mut unknown = good.clone();
        unknown.copies[0].insert("zz".to_owned(), vec![1]);
        assert!(matches!(
            unknown.to_family(),
            Err(IoError::UnknownElement { copy: 0, .. })
        ));

        let mut bad_kind = good.clone();
        bad_kind.kind = "strict".to_owned();
        assert!(matches!(bad_kind.to_family(), Err(IoError::BadKind(_))));

        let mut bad_index = good;
        bad_index.copies[0].insert("x1".to_owned(), vec![9]);
        assert!(matches!(
            bad_index.to_family(),
            Err(IoError::Lattice(LatticeError::PositionOutOfRange(9, 3)))
        ));
    }
}
