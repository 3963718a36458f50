//! Vector partitions of `[n]` with `s` labelings and the poset they form.
//!
//! An element is a set partition `P` of `[n]` together with `s` labelings;
//! labeling `i` assigns to each block a label set of the same size, and the
//! label sets of one labeling again partition `[n]`. One element lies below
//! another when every block of the upper one is a union of lower blocks and
//! each of its labels is the union of the corresponding lower labels. A
//! formal bottom element is added below everything.
//!
//! Canonical form lists blocks by their minimum element and keeps the
//! labels aligned with the blocks. The text form is
//! `{1,4,6}{2,3}{5}|{2,3,5}{4,6}{1}` (blocks, then one `|`-separated
//! segment per labeling), and the bottom element is written `BOTTOM`.

mod atom;
mod enumerate;
mod intset;

pub use atom::{atom_lex_rank, atom_word, AtomWord};
pub use enumerate::{
    build_partition_lattice, build_pi, count_elements, enumerate_elements, label_assignments,
    set_partitions, PartitionLattice, VectorPoset,
};
pub use intset::{IntSet, MAX_ELEMENT};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VecPartError {
    #[error("invalid dimensions n={n}, s={s} (need 1 <= n <= 64, s >= 1)")]
    InvalidDimensions { n: usize, s: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error(
        "label {labeling} of block {block} has size {label_size}, block has size {block_size}"
    )]
    SizeMismatch {
        block: usize,
        labeling: usize,
        block_size: usize,
        label_size: usize,
    },
    #[error("dimension mismatch: ({0}, {1}) vs ({2}, {3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("the bottom element has no atom")]
    BottomHasNoAtom,
    #[error("malformed atom word: {0}")]
    MalformedWord(String),
    #[error("cannot parse vector partition: {0}")]
    Parse(String),
    #[error("{what} limit exceeded: need {required}, budget is {limit}")]
    ResourceLimit {
        what: &'static str,
        limit: u64,
        required: BigUint,
    },
}

pub type Result<T> = std::result::Result<T, VecPartError>;

fn check_dims(n: usize, s: usize) -> Result<()> {
    if n == 0 || n > MAX_ELEMENT || s == 0 {
        return Err(VecPartError::InvalidDimensions { n, s });
    }
    Ok(())
}

/// A set partition of `[n]` with blocks ordered by minimum element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<IntSet>,
}

impl SetPartition {
    /// Sorts blocks by minimum and checks that they partition `[n]`.
    pub fn new(n: usize, mut blocks: Vec<IntSet>) -> Result<Self> {
        check_partition(n, &blocks, "blocks")?;
        blocks.sort_by_key(|&b| IntSet::min(b));
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[IntSet] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    /// `x <= y` in the partition lattice: every block of `self` lies in a
    /// block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        self.blocks
            .iter()
            .all(|b| other.blocks.iter().any(|c| b.is_subset(*c)))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

fn check_partition(n: usize, sets: &[IntSet], what: &str) -> Result<()> {
    let mut seen = IntSet::EMPTY;
    for set in sets {
        if set.is_empty() {
            return Err(VecPartError::InvalidPartition(format!("{what}: empty set")));
        }
        if !set.is_disjoint(seen) {
            return Err(VecPartError::InvalidPartition(format!(
                "{what}: {set} overlaps an earlier set"
            )));
        }
        seen = seen.union(*set);
    }
    if seen != IntSet::full(n) {
        return Err(VecPartError::InvalidPartition(format!(
            "{what}: union is {seen}, expected [{n}]"
        )));
    }
    Ok(())
}

/// An element of the vector partition poset, or its formal bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorPartition {
    n: usize,
    s: usize,
    blocks: Vec<IntSet>,
    /// `labels[i][b]` is the label of block `b` in labeling `i`.
    labels: Vec<Vec<IntSet>>,
    bottom: bool,
}

/// Uncanonicalized element data, also the JSON element format
/// `{ "n": 3, "s": 1, "blocks": [[1,2],[3]], "labels": [[[1,3],[2]]] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawVectorPartition {
    pub n: usize,
    pub s: usize,
    pub blocks: Vec<Vec<usize>>,
    pub labels: Vec<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub bottom: bool,
}

impl VectorPartition {
    pub fn bottom(n: usize, s: usize) -> Result<Self> {
        check_dims(n, s)?;
        Ok(Self {
            n,
            s,
            blocks: Vec::new(),
            labels: vec![Vec::new(); s],
            bottom: true,
        })
    }

    /// `([n], ..., [n])`.
    pub fn top(n: usize, s: usize) -> Result<Self> {
        check_dims(n, s)?;
        let full = IntSet::full(n);
        Ok(Self {
            n,
            s,
            blocks: vec![full],
            labels: vec![vec![full]; s],
            bottom: false,
        })
    }

    /// Validates and puts into canonical form. `labels[i][b]` labels
    /// `blocks[b]`; the blocks may come in any order.
    pub fn new(n: usize, blocks: Vec<IntSet>, labels: Vec<Vec<IntSet>>) -> Result<Self> {
        let s = labels.len();
        check_dims(n, s)?;
        check_partition(n, &blocks, "blocks")?;
        for (i, lab) in labels.iter().enumerate() {
            if lab.len() != blocks.len() {
                return Err(VecPartError::InvalidPartition(format!(
                    "labeling {} has {} labels for {} blocks",
                    i + 1,
                    lab.len(),
                    blocks.len()
                )));
            }
            check_partition(n, lab, &format!("labeling {}", i + 1))?;
            for (b, (block, label)) in blocks.iter().zip(lab).enumerate() {
                if block.len() != label.len() {
                    return Err(VecPartError::SizeMismatch {
                        block: b,
                        labeling: i + 1,
                        block_size: block.len(),
                        label_size: label.len(),
                    });
                }
            }
        }
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        order.sort_by_key(|&b| blocks[b].min());
        Ok(Self {
            n,
            s,
            blocks: order.iter().map(|&b| blocks[b]).collect(),
            labels: labels
                .iter()
                .map(|lab| order.iter().map(|&b| lab[b]).collect())
                .collect(),
            bottom: false,
        })
    }

    /// Canonicalizes raw element data.
    pub fn canonicalize(raw: &RawVectorPartition) -> Result<Self> {
        if raw.bottom {
            return Self::bottom(raw.n, raw.s);
        }
        if raw.labels.len() != raw.s {
            return Err(VecPartError::InvalidPartition(format!(
                "expected {} labelings, got {}",
                raw.s,
                raw.labels.len()
            )));
        }
        check_dims(raw.n, raw.s)?;
        let to_set = |v: &Vec<usize>| {
            let set = IntSet::try_from_iter(v.iter().copied()).filter(|s| s.len() == v.len());
            set.ok_or_else(|| {
                VecPartError::InvalidPartition(format!(
                    "{v:?} is not a set of elements of [{}]",
                    raw.n
                ))
            })
        };
        let blocks = raw.blocks.iter().map(to_set).collect::<Result<Vec<_>>>()?;
        let labels = raw
            .labels
            .iter()
            .map(|lab| lab.iter().map(to_set).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.n, blocks, labels)
    }

    pub fn to_raw(&self) -> RawVectorPartition {
        let to_vec = |s: &IntSet| s.iter().collect::<Vec<_>>();
        RawVectorPartition {
            n: self.n,
            s: self.s,
            blocks: self.blocks.iter().map(to_vec).collect(),
            labels: self
                .labels
                .iter()
                .map(|lab| lab.iter().map(to_vec).collect())
                .collect(),
            bottom: self.bottom,
        }
    }

    /// Parses the canonical text form. `BOTTOM` needs `dims = Some((n, s))`;
    /// for other inputs `dims`, when given, must agree with the text.
    pub fn parse(text: &str, dims: Option<(usize, usize)>) -> Result<Self> {
        let text = text.trim();
        if text == "BOTTOM" {
            let (n, s) =
                dims.ok_or_else(|| VecPartError::Parse("BOTTOM needs explicit n and s".into()))?;
            return Self::bottom(n, s);
        }
        let segments: Vec<Vec<IntSet>> =
            text.split('|').map(parse_segment).collect::<Result<_>>()?;
        let (blocks, labels) = segments.split_first().expect("split yields one segment");
        let n = blocks.iter().map(|b| b.len()).sum();
        let v = Self::new(n, blocks.clone(), labels.to_vec())?;
        if let Some((dn, ds)) = dims {
            if (dn, ds) != (v.n, v.s) {
                return Err(VecPartError::DimensionMismatch(dn, ds, v.n, v.s));
            }
        }
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn is_bottom(&self) -> bool {
        self.bottom
    }

    pub fn is_atom(&self) -> bool {
        !self.bottom && self.blocks.len() == self.n
    }

    pub fn is_top(&self) -> bool {
        !self.bottom && self.blocks.len() == 1
    }

    pub fn blocks(&self) -> &[IntSet] {
        &self.blocks
    }

    /// Labels of labeling `i` (0-based), aligned with [`Self::blocks`].
    pub fn labels(&self, i: usize) -> &[IntSet] {
        &self.labels[i]
    }

    /// Length of a maximal chain from the bottom to this element.
    pub fn rank(&self) -> usize {
        if self.bottom {
            0
        } else {
            self.n - self.blocks.len() + 1
        }
    }

    /// The underlying set partition (labels dropped).
    pub fn partition(&self) -> Option<SetPartition> {
        (!self.bottom).then(|| SetPartition {
            blocks: self.blocks.clone(),
        })
    }

    /// Index of the block containing `v`.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(v))
    }

    /// Merges blocks `a` and `b` together with their labels.
    pub fn merge(&self, a: usize, b: usize) -> Self {
        assert!(!self.bottom && a != b && a < self.blocks.len() && b < self.blocks.len());
        let (a, b) = (a.min(b), a.max(b));
        let mut blocks = self.blocks.clone();
        blocks[a] = blocks[a].union(blocks[b]);
        blocks.remove(b);
        let labels = self
            .labels
            .iter()
            .map(|lab| {
                let mut lab = lab.clone();
                lab[a] = lab[a].union(lab[b]);
                lab.remove(b);
                lab
            })
            .collect();
        // a < b and blocks are sorted by minimum, so the order is still canonical.
        Self {
            n: self.n,
            s: self.s,
            blocks,
            labels,
            bottom: false,
        }
    }

    fn same_dims(&self, other: &Self) -> Result<()> {
        if (self.n, self.s) != (other.n, other.s) {
            return Err(VecPartError::DimensionMismatch(
                self.n, self.s, other.n, other.s,
            ));
        }
        Ok(())
    }

    /// Order relation: the bottom is below everything; otherwise every
    /// block of `other` is a union of blocks of `self`, with labels merging
    /// the same way in every labeling.
    pub fn is_leq(&self, other: &Self) -> Result<bool> {
        self.same_dims(other)?;
        if self.bottom {
            return Ok(true);
        }
        if other.bottom {
            return Ok(false);
        }
        for (b, block) in self.blocks.iter().enumerate() {
            let Some(c) = other.blocks.iter().position(|big| block.is_subset(*big)) else {
                return Ok(false);
            };
            for i in 0..self.s {
                if !self.labels[i][b].is_subset(other.labels[i][c]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Cover relation: bottom below an atom, or exactly two blocks merged.
    pub fn is_cover(&self, other: &Self) -> Result<bool> {
        self.same_dims(other)?;
        if self.bottom {
            return Ok(other.is_atom());
        }
        Ok(!other.bottom && other.blocks.len() + 1 == self.blocks.len() && self.is_leq(other)?)
    }

    /// Indices in `self` of the two blocks merged to obtain `upper`.
    pub fn merged_blocks(&self, upper: &Self) -> Option<(usize, usize)> {
        if self.bottom || upper.bottom || upper.blocks.len() + 1 != self.blocks.len() {
            return None;
        }
        let changed: Vec<usize> = (0..self.blocks.len())
            .filter(|&b| !upper.blocks.contains(&self.blocks[b]))
            .collect();
        match changed.as_slice() {
            &[a, b] => Some((a, b)),
            _ => None,
        }
    }
}

fn parse_segment(seg: &str) -> Result<Vec<IntSet>> {
    let mut sets = Vec::new();
    let mut rest = seg.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('{') else {
            return Err(VecPartError::Parse(format!("expected '{{' in `{seg}`")));
        };
        let close = body
            .find('}')
            .ok_or_else(|| VecPartError::Parse(format!("unclosed '{{' in `{seg}`")))?;
        let items: Vec<usize> = body[..close]
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| VecPartError::Parse(format!("bad integer `{t}`")))
            })
            .collect::<Result<_>>()?;
        let set = IntSet::try_from_iter(items.iter().copied())
            .filter(|s| s.len() == items.len())
            .ok_or_else(|| VecPartError::Parse(format!("bad set {{{}}}", &body[..close])))?;
        sets.push(set);
        rest = body[close + 1..].trim_start();
    }
    Ok(sets)
}

impl fmt::Display for VectorPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bottom {
            return write!(f, "BOTTOM");
        }
        for b in &self.blocks {
            write!(f, "{b}")?;
        }
        for lab in &self.labels {
            write!(f, "|")?;
            for l in lab {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

impl Ord for VectorPartition {
    /// Bottom first, then by rank, then blocks and labels lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.s)
            .cmp(&(other.n, other.s))
            .then_with(|| other.bottom.cmp(&self.bottom))
            .then_with(|| self.rank().cmp(&other.rank()))
            .then_with(|| self.blocks.cmp(&other.blocks))
            .then_with(|| self.labels.cmp(&other.labels))
    }
}

impl PartialOrd for VectorPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
