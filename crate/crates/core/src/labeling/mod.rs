//! Edge labelings of the partition lattice and of the vector partition
//! poset.
//!
//! Covers of the vector partition poset are labeled by integer triples
//! `(k, i, j)` compared lexicographically:
//!
//! * bottom below the `m`-th atom (lexicographic atom order): `(n-1, s+m, 0)`;
//! * a merge that changes the atom word: the first position `(k, i)`, scanned
//!   with `k` major and `i` minor, where the lower and upper atom words
//!   differ, with `j` the upper word's entry there;
//! * a merge of blocks `I`, `J` that keeps the atom word: `(n, max(I ∪ J), 0)`.

mod el;
mod structure;

pub use el::{
    chain_audit, chain_label, is_increasing, is_weakly_decreasing, lex_shelling_order, verify_el,
    ChainAuditRow, Diagnosis, ElCounterexample, ElReport, ShellingOrder,
};
pub use structure::{check_label_structure, StructureReport, StructureViolation};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poset::PosetError;
use crate::vecpart::{
    atom_lex_rank, atom_word, AtomWord, PartitionLattice, SetPartition, VecPartError,
    VectorPartition, VectorPoset,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("{0} is not covered by {1}")]
    NotACover(String, String),
    #[error("atom words are equal")]
    EqualWords,
    #[error("atom words have different shapes")]
    DimensionMismatch,
    #[error("chain is not saturated at position {0}")]
    NotSaturated(usize),
    #[error(transparent)]
    VecPart(#[from] VecPartError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub type Result<T> = std::result::Result<T, LabelError>;

/// A cover label `(k, i, j)`, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabel {
    pub k: usize,
    pub i: BigUint,
    pub j: usize,
}

impl EdgeLabel {
    pub fn new(k: usize, i: impl Into<BigUint>, j: usize) -> Self {
        Self { k, i: i.into(), j }
    }

    /// `i` as a machine integer; only bottom labels can exceed this.
    pub fn index(&self) -> Option<usize> {
        usize::try_from(&self.i).ok()
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.i, self.j)
    }
}

/// Serialized as `[k, i, j]`; `i` becomes a string if it does not fit in a
/// `u64`.
impl Serialize for EdgeLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(3)?;
        t.serialize_element(&self.k)?;
        match u64::try_from(&self.i) {
            Ok(v) => t.serialize_element(&v)?,
            Err(_) => t.serialize_element(&self.i.to_string())?,
        }
        t.serialize_element(&self.j)?;
        t.end()
    }
}

/// Deliberate corruptions of the labeling used to check that the verifiers
/// notice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sabotage {
    /// Exchange the labels of the bottom covers of the first two atoms.
    SwapBottomLabels,
    /// Use `min(I ∪ J)` instead of `max(I ∪ J)` on atom-preserving merges.
    CaseTwoMin,
    /// Drop the `j` component of atom-changing labels, so that labels
    /// sharing `(k, i)` compare equal.
    DropTieBreak,
}

impl Sabotage {
    pub const ALL: [Sabotage; 3] = [
        Sabotage::SwapBottomLabels,
        Sabotage::CaseTwoMin,
        Sabotage::DropTieBreak,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Sabotage::SwapBottomLabels => "swap-bottom-labels",
            Sabotage::CaseTwoMin => "case-two-min",
            Sabotage::DropTieBreak => "drop-tie-break",
        }
    }
}

impl FromStr for Sabotage {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Sabotage::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown sabotage `{s}`"))
    }
}

impl fmt::Display for Sabotage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Label of the partition-lattice cover `x ⋖ y`: the largest element of
/// the merged block.
pub fn chi_partition_edge(x: &SetPartition, y: &SetPartition) -> Result<usize> {
    let not_cover = || LabelError::NotACover(x.to_string(), y.to_string());
    if x.blocks().len() != y.blocks().len() + 1 || x.n() != y.n() || !x.refines(y) {
        return Err(not_cover());
    }
    let merged: Vec<_> = x
        .blocks()
        .iter()
        .filter(|b| !y.blocks().contains(b))
        .collect();
    match merged.as_slice() {
        [a, b] => Ok(a.union(**b).max().expect("blocks are nonempty")),
        _ => Err(not_cover()),
    }
}

/// Labels for every cover of the partition lattice, by cover id.
pub fn chi_labels(lattice: &PartitionLattice) -> Vec<usize> {
    lattice
        .poset()
        .covers()
        .iter()
        .map(|&(a, b)| {
            chi_partition_edge(lattice.partition(a), lattice.partition(b))
                .expect("lattice covers are merges")
        })
        .collect()
}

/// First position, scanning `k` major and `i` minor, where `lower` and
/// `upper` differ; returns `(k, i, upper's entry)`.
pub fn first_difference(lower: &AtomWord, upper: &AtomWord) -> Result<EdgeLabel> {
    if lower.n() != upper.n() || lower.s() != upper.s() {
        return Err(LabelError::DimensionMismatch);
    }
    for k in 1..=lower.n() {
        for i in 1..=lower.s() {
            if lower.get(k, i) != upper.get(k, i) {
                return Ok(EdgeLabel::new(k, i, upper.get(k, i)));
            }
        }
    }
    Err(LabelError::EqualWords)
}

/// Label of the cover `x ⋖ y`.
pub fn lambda_edge(x: &VectorPartition, y: &VectorPartition) -> Result<EdgeLabel> {
    lambda_edge_with(x, y, None)
}

fn lambda_edge_with(
    x: &VectorPartition,
    y: &VectorPartition,
    sabotage: Option<Sabotage>,
) -> Result<EdgeLabel> {
    if !x.is_cover(y)? {
        return Err(LabelError::NotACover(x.to_string(), y.to_string()));
    }
    let (n, s) = (x.n(), x.s());
    let upper = atom_word(y)?;
    if x.is_bottom() {
        let m = atom_lex_rank(&upper);
        return Ok(EdgeLabel::new(n - 1, BigUint::from(s) + m, 0));
    }
    let lower = atom_word(x)?;
    if lower != upper {
        let mut label = first_difference(&lower, &upper)?;
        if sabotage == Some(Sabotage::DropTieBreak) {
            label.j = 0;
        }
        return Ok(label);
    }
    let (a, b) = x
        .merged_blocks(y)
        .expect("a cover above a non-bottom element is a merge");
    let merged = x.blocks()[a].union(x.blocks()[b]);
    let value = if sabotage == Some(Sabotage::CaseTwoMin) {
        merged.min()
    } else {
        merged.max()
    };
    Ok(EdgeLabel::new(n, value.expect("nonempty"), 0))
}

/// Labels for every cover of the poset, by cover id, optionally corrupted.
pub fn lambda_labels(vp: &VectorPoset, sabotage: Option<Sabotage>) -> Result<Vec<EdgeLabel>> {
    let p = vp.poset();
    let mut labels = p
        .covers()
        .iter()
        .map(|&(a, b)| lambda_edge_with(vp.element(a), vp.element(b), sabotage))
        .collect::<Result<Vec<_>>>()?;
    if sabotage == Some(Sabotage::SwapBottomLabels) {
        // Bottom covers in id order go to atoms in canonical order, which is
        // the lexicographic order of atom words.
        let ups = p.upper_covers(p.bottom());
        if ups.len() >= 2 {
            labels.swap(ups[0].1, ups[1].1);
        }
    }
    Ok(labels)
}
