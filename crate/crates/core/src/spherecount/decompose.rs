use std::fmt;

use num_traits::ToPrimitive;

use super::{validate_decreasing_chain, Result, SphereError};
use crate::vecpart::{IntSet, VectorPartition};

/// A decreasing maximal chain `C` of the `(n, s)` poset cut at its coatom
/// `C_{n-1} = (I1 I2, ...)` with `1 ∈ I1`, `|I1| = alpha`.
///
/// `left` and `right` are decreasing maximal chains of the `(alpha, s)` and
/// `(n - alpha, s)` posets obtained by restricting `C` to the blocks inside
/// `I1` (resp. `I2`) and relabeling order-preservingly, both the elements
/// and each labeling's labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    pub s: usize,
    pub alpha: usize,
    pub left_block: IntSet,
    /// Label of `I1` in each labeling; the label of `I2` is the complement.
    pub left_labels: Vec<IntSet>,
    /// Index `i` of the top cover label `(1, i, 1)`.
    pub top_index: usize,
    pub left: Vec<VectorPartition>,
    pub right: Vec<VectorPartition>,
}

impl Decomposition {
    pub fn right_block(&self) -> IntSet {
        IntSet::full(self.n).difference(self.left_block)
    }

    pub fn right_labels(&self) -> Vec<IntSet> {
        let full = IntSet::full(self.n);
        self.left_labels
            .iter()
            .map(|&l| full.difference(l))
            .collect()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &[VectorPartition]| {
            c.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" < ")
        };
        writeln!(
            f,
            "alpha = {}, I1 = {}, i = {}",
            self.alpha, self.left_block, self.top_index
        )?;
        let labels: Vec<String> = self.left_labels.iter().map(|l| l.to_string()).collect();
        writeln!(f, "I1 labels = {}", labels.join(" | "))?;
        writeln!(f, "left: {}", show(&self.left))?;
        write!(f, "right: {}", show(&self.right))
    }
}

/// Restriction of `x` to the blocks inside `part`, renumbered.
fn restrict(x: &VectorPartition, part: IntSet, label_parts: &[IntSet]) -> Result<VectorPartition> {
    let s = x.s();
    let mut blocks = Vec::new();
    let mut labels = vec![Vec::new(); s];
    let renumber = |set: IntSet, within: IntSet| -> IntSet {
        set.iter()
            .map(|e| within.position(e).expect("subset") + 1)
            .collect()
    };
    for (b, &block) in x.blocks().iter().enumerate() {
        if block.is_disjoint(part) {
            continue;
        }
        if !block.is_subset(part) {
            return Err(SphereError::IncompatibleData(format!(
                "{block} straddles {part}"
            )));
        }
        blocks.push(renumber(block, part));
        for h in 0..s {
            let label = x.labels(h)[b];
            if !label.is_subset(label_parts[h]) {
                return Err(SphereError::IncompatibleData(format!(
                    "label {label} is not inside {}",
                    label_parts[h]
                )));
            }
            labels[h].push(renumber(label, label_parts[h]));
        }
    }
    Ok(VectorPartition::new(part.len(), blocks, labels)?)
}

/// Inverse of [`restrict`]: blocks and labels of a small element placed on
/// `part`.
fn embed(
    x: &VectorPartition,
    part: IntSet,
    label_parts: &[IntSet],
    blocks: &mut Vec<IntSet>,
    labels: &mut [Vec<IntSet>],
) {
    let place = |set: IntSet, within: IntSet| -> IntSet {
        set.iter()
            .map(|e| within.nth(e - 1).expect("in range"))
            .collect()
    };
    for (b, &block) in x.blocks().iter().enumerate() {
        blocks.push(place(block, part));
        for (h, lab) in labels.iter_mut().enumerate() {
            lab.push(place(x.labels(h)[b], label_parts[h]));
        }
    }
}

pub fn decompose_chain(chain: &[VectorPartition]) -> Result<Decomposition> {
    let labels = validate_decreasing_chain(chain)?;
    let top = chain.last().expect("validated");
    let (n, s) = (top.n(), top.s());
    if n < 2 {
        return Err(SphereError::TooSmall(n));
    }
    let coatom = &chain[n - 1];
    let (left_block, right_block) = (coatom.blocks()[0], coatom.blocks()[1]);
    let left_labels: Vec<IntSet> = (0..s).map(|h| coatom.labels(h)[0]).collect();
    let right_labels: Vec<IntSet> = (0..s).map(|h| coatom.labels(h)[1]).collect();
    let top_index = labels[n - 1]
        .i
        .to_usize()
        .ok_or_else(|| SphereError::IncompatibleData("top index out of range".into()))?;
    let side = |part: IntSet, label_parts: &[IntSet]| -> Result<Vec<VectorPartition>> {
        let mut out = vec![VectorPartition::bottom(part.len(), s)?];
        for x in &chain[1..n] {
            let r = restrict(x, part, label_parts)?;
            if out.last() != Some(&r) {
                out.push(r);
            }
        }
        Ok(out)
    };
    Ok(Decomposition {
        n,
        s,
        alpha: left_block.len(),
        left_block,
        left_labels: left_labels.clone(),
        top_index,
        left: side(left_block, &left_labels)?,
        right: side(right_block, &right_labels)?,
    })
}

/// Rebuilds the chain by interleaving the two sides: going down from the
/// coatom, the side owning the leftmost non-singleton block takes the next
/// step.
pub fn recompose(d: &Decomposition) -> Result<Vec<VectorPartition>> {
    let bad = |msg: String| Err(SphereError::IncompatibleData(msg));
    let (n, s) = (d.n, d.s);
    if n < 2 {
        return Err(SphereError::TooSmall(n));
    }
    if n > crate::vecpart::MAX_ELEMENT {
        return bad(format!("n = {n} is too large"));
    }
    let full = IntSet::full(n);
    if !d.left_block.contains(1) || !d.left_block.is_subset(full) || d.left_block == full {
        return bad(format!(
            "I1 = {} must contain 1 and be a proper subset",
            d.left_block
        ));
    }
    if d.alpha != d.left_block.len() || d.left_labels.len() != s {
        return bad("alpha or labeling count disagrees with I1".into());
    }
    if d.left_labels
        .iter()
        .any(|l| l.len() != d.alpha || !l.is_subset(full))
    {
        return bad("every I1 label must be a subset of [n] of size alpha".into());
    }
    let expected_index = match d.left_labels.iter().position(|l| !l.contains(1)) {
        Some(h) => h + 1,
        None => return bad("no labeling moves 1 to the right side".into()),
    };
    if d.top_index != expected_index {
        return bad(format!(
            "top index {} but the labels give {expected_index}",
            d.top_index
        ));
    }
    let left_labels = validate_decreasing_chain(&d.left)?;
    validate_decreasing_chain(&d.right)?;
    let (right_n, left_top) = (
        d.right.last().map(|t| t.n()),
        d.left.last().expect("validated"),
    );
    if left_top.n() != d.alpha || right_n != Some(n - d.alpha) || left_top.s() != s {
        return bad("side chains have the wrong dimensions".into());
    }
    if d.alpha >= 2 {
        let index = left_labels[d.alpha - 1].i.to_usize().unwrap_or(0);
        if index < d.top_index {
            return bad(format!("left top index {index} is below {}", d.top_index));
        }
    }

    let right_block = d.right_block();
    let right_label_parts = d.right_labels();
    let combine = |l: &VectorPartition, r: &VectorPartition| -> Result<VectorPartition> {
        let mut blocks = Vec::new();
        let mut labels = vec![Vec::new(); s];
        embed(l, d.left_block, &d.left_labels, &mut blocks, &mut labels);
        embed(r, right_block, &right_label_parts, &mut blocks, &mut labels);
        Ok(VectorPartition::new(n, blocks, labels)?)
    };
    let (mut lpos, mut rpos) = (d.alpha, n - d.alpha);
    let mut down = vec![VectorPartition::top(n, s)?];
    loop {
        let cur = combine(&d.left[lpos], &d.right[rpos])?;
        let next = cur.blocks().iter().find(|b| b.len() > 1).copied();
        down.push(cur);
        match next {
            None => break,
            Some(b) if b.is_subset(d.left_block) => lpos -= 1,
            Some(_) => rpos -= 1,
        }
    }
    down.push(VectorPartition::bottom(n, s)?);
    down.reverse();
    let labels = validate_decreasing_chain(&down)
        .map_err(|e| SphereError::IncompatibleData(format!("interleaved chain: {e}")))?;
    debug_assert_eq!(labels[n - 1].i.to_usize(), Some(d.top_index));
    Ok(down)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spherecount::decreasing_chains_top_down;

    fn vp(text: &str) -> VectorPartition {
        VectorPartition::parse(text, None).unwrap()
    }

    fn chain(texts: &[&str]) -> Vec<VectorPartition> {
        let n = vp(texts[texts.len() - 1]).n();
        let s = vp(texts[texts.len() - 1]).s();
        let mut c = vec![VectorPartition::bottom(n, s).unwrap()];
        c.extend(texts.iter().map(|t| vp(t)));
        c
    }

    #[test]
    fn worked_decomposition() {
        let c = chain(&[
            "{1}{2}{3}{4}{5}|{2}{4}{1}{3}{5}|{4}{1}{2}{5}{3}",
            "{1}{2}{3}{4,5}|{2}{4}{1}{3,5}|{4}{1}{2}{3,5}",
            "{1}{2,3}{4,5}|{2}{1,4}{3,5}|{4}{1,2}{3,5}",
            "{1,4,5}{2,3}|{2,3,5}{1,4}|{3,4,5}{1,2}",
            "{1,2,3,4,5}|{1,2,3,4,5}|{1,2,3,4,5}",
        ]);
        let d = decompose_chain(&c).unwrap();
        assert_eq!(d.alpha, 3);
        assert_eq!(d.left_block, IntSet::from_iter([1, 4, 5]));
        assert_eq!(d.top_index, 1);
        assert_eq!(
            d.left,
            chain(&[
                "{1}{2}{3}|{1}{2}{3}|{2}{3}{1}",
                "{1}{2,3}|{1}{2,3}|{2}{1,3}",
                "{1,2,3}|{1,2,3}|{1,2,3}",
            ])
        );
        assert_eq!(
            d.right,
            chain(&["{1}{2}|{2}{1}|{1}{2}", "{1,2}|{1,2}|{1,2}"])
        );
        assert_eq!(recompose(&d).unwrap(), c);
    }

    #[test]
    fn round_trip_on_all_small_chains() {
        for (n, s) in [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2)] {
            for c in decreasing_chains_top_down(n, s, 10_000).unwrap() {
                let d = decompose_chain(&c).unwrap();
                assert_eq!(recompose(&d).unwrap(), c);
            }
        }
    }

    #[test]
    fn incompatible_data_is_rejected() {
        let chains = decreasing_chains_top_down(3, 2, 1000).unwrap();
        let d = decompose_chain(&chains[0]).unwrap();
        let mut wrong_index = d.clone();
        wrong_index.top_index = if d.top_index == 1 { 2 } else { 1 };
        assert!(matches!(
            recompose(&wrong_index),
            Err(SphereError::IncompatibleData(_))
        ));
        let mut no_move = d.clone();
        no_move.left_labels = vec![d.left_block; 2];
        assert!(recompose(&no_move).is_err());
        assert!(decompose_chain(&chains[0][1..]).is_err());
    }
}
