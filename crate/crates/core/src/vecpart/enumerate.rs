//! Full enumeration of the vector partition poset and of the partition
//! lattice.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;

use super::{check_dims, IntSet, Result, SetPartition, VecPartError, VectorPartition};
use crate::poset::Poset;

/// All set partitions of `[n]`, generated from restricted growth strings in
/// lexicographic order. Blocks come out ordered by minimum.
pub fn set_partitions(n: usize) -> Vec<Vec<IntSet>> {
    fn grow(n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<IntSet>>) {
        if rgs.len() == n {
            let mut blocks = vec![IntSet::EMPTY; max + 1];
            for (pos, &b) in rgs.iter().enumerate() {
                blocks[b] = blocks[b].union(IntSet::singleton(pos + 1));
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max + 1 {
            rgs.push(b);
            grow(n, rgs, max.max(b), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut rgs = vec![0];
    grow(n, &mut rgs, 0, &mut out);
    out
}

/// Every way to give blocks of the given sizes disjoint label sets of the
/// same sizes covering `[n]`, in lexicographic order.
pub fn label_assignments(n: usize, sizes: &[usize]) -> Vec<Vec<IntSet>> {
    fn assign(rest: IntSet, sizes: &[usize], cur: &mut Vec<IntSet>, out: &mut Vec<Vec<IntSet>>) {
        let Some((&size, tail)) = sizes.split_first() else {
            if rest.is_empty() {
                out.push(cur.clone());
            }
            return;
        };
        for pick in rest.iter().combinations(size) {
            let label: IntSet = pick.into_iter().collect();
            cur.push(label);
            assign(rest.difference(label), tail, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    assign(IntSet::full(n), sizes, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Number of elements of the poset, bottom included, computed without
/// listing them.
pub fn count_elements(n: usize, s: usize) -> Result<BigUint> {
    check_dims(n, s)?;
    let nf = factorial(n);
    let mut total = BigUint::one();
    for blocks in set_partitions(n) {
        let denom: BigUint = blocks.iter().map(|b| factorial(b.len())).product();
        total += (&nf / denom).pow(s as u32);
    }
    Ok(total)
}

/// Every element, bottom first, in the canonical [`VectorPartition`] order.
/// Fails before enumerating when the element count exceeds `max_elements`.
pub fn enumerate_elements(n: usize, s: usize, max_elements: u64) -> Result<Vec<VectorPartition>> {
    let required = count_elements(n, s)?;
    if required > BigUint::from(max_elements) {
        return Err(VecPartError::ResourceLimit {
            what: "element",
            limit: max_elements,
            required,
        });
    }
    let mut out = vec![VectorPartition::bottom(n, s)?];
    for blocks in set_partitions(n) {
        let sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        let choices = label_assignments(n, &sizes);
        for labels in (0..s).map(|_| choices.iter()).multi_cartesian_product() {
            out.push(VectorPartition {
                n,
                s,
                blocks: blocks.clone(),
                labels: labels.into_iter().cloned().collect(),
                bottom: false,
            });
        }
    }
    out.sort();
    Ok(out)
}

/// The vector partition poset with its elements.
#[derive(Debug, Clone)]
pub struct VectorPoset {
    n: usize,
    s: usize,
    elements: Vec<VectorPartition>,
    index: HashMap<VectorPartition, usize>,
    poset: Poset,
}

impl VectorPoset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn elements(&self) -> &[VectorPartition] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &VectorPartition {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &VectorPartition) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Indices of the atoms, in canonical order.
    pub fn atoms(&self) -> Vec<usize> {
        self.poset
            .upper_covers(self.poset.bottom())
            .iter()
            .map(|&(a, _)| a)
            .collect()
    }
}

/// Builds and validates the poset for `(n, s)`. Covers are the bottom
/// below each atom and every merge of two blocks.
pub fn build_pi(n: usize, s: usize, max_elements: u64) -> Result<VectorPoset> {
    let elements = enumerate_elements(n, s, max_elements)?;
    let index: HashMap<VectorPartition, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let mut covers = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        if x.is_bottom() {
            covers.extend(
                elements
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.is_atom())
                    .map(|(a, _)| (i, a)),
            );
            continue;
        }
        for (a, b) in (0..x.blocks.len()).tuple_combinations() {
            covers.push((i, index[&x.merge(a, b)]));
        }
    }
    let keys = elements.iter().map(|v| v.to_string()).collect();
    let poset = Poset::new(keys, &covers).map_err(|e| {
        VecPartError::InvalidPartition(format!("constructed poset failed validation: {e}"))
    })?;
    Ok(VectorPoset {
        n,
        s,
        elements,
        index,
        poset,
    })
}

/// The lattice of set partitions of `[n]`.
#[derive(Debug, Clone)]
pub struct PartitionLattice {
    partitions: Vec<SetPartition>,
    index: HashMap<SetPartition, usize>,
    poset: Poset,
}

impl PartitionLattice {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn partitions(&self) -> &[SetPartition] {
        &self.partitions
    }

    pub fn partition(&self, i: usize) -> &SetPartition {
        &self.partitions[i]
    }

    pub fn index_of(&self, p: &SetPartition) -> Option<usize> {
        self.index.get(p).copied()
    }
}

pub fn build_partition_lattice(n: usize) -> Result<PartitionLattice> {
    check_dims(n, 1)?;
    let mut partitions: Vec<SetPartition> = set_partitions(n)
        .into_iter()
        .map(|blocks| SetPartition { blocks })
        .collect();
    partitions.sort_by(|a, b| {
        b.blocks
            .len()
            .cmp(&a.blocks.len())
            .then_with(|| a.blocks.cmp(&b.blocks))
    });
    let index: HashMap<SetPartition, usize> = partitions
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut covers = Vec::new();
    for (i, p) in partitions.iter().enumerate() {
        for (a, b) in (0..p.blocks.len()).tuple_combinations() {
            let mut blocks = p.blocks.clone();
            blocks[a] = blocks[a].union(blocks[b]);
            blocks.remove(b);
            covers.push((i, index[&SetPartition { blocks }]));
        }
    }
    let keys = partitions.iter().map(|p| p.to_string()).collect();
    let poset = Poset::new(keys, &covers).map_err(|e| {
        VecPartError::InvalidPartition(format!("constructed lattice failed validation: {e}"))
    })?;
    Ok(PartitionLattice {
        partitions,
        index,
        poset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vecpart::atom_word;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=6).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn label_assignment_counts_are_multinomials() {
        assert_eq!(label_assignments(3, &[2, 1]).len(), 3);
        assert_eq!(label_assignments(4, &[2, 1, 1]).len(), 12);
        assert_eq!(label_assignments(4, &[1, 1, 1, 1]).len(), 24);
        assert_eq!(label_assignments(4, &[4]).len(), 1);
    }

    #[test]
    fn small_element_counts() {
        let e = enumerate_elements(3, 1, 1000).unwrap();
        assert_eq!(e.len(), 17);
        let ranks = e.iter().map(|v| v.rank()).counts();
        assert_eq!(ranks[&0], 1);
        assert_eq!(ranks[&1], 6);
        assert_eq!(ranks[&2], 9);
        assert_eq!(ranks[&3], 1);
        assert_eq!(enumerate_elements(2, 2, 1000).unwrap().len(), 6);
        let one = enumerate_elements(1, 4, 1000).unwrap();
        assert_eq!(one.len(), 2);
        assert!(one[0].is_bottom() && one[1].is_top());
        assert_eq!(count_elements(3, 2).unwrap(), BigUint::from(65u32));
    }

    #[test]
    fn element_budget_is_checked_first() {
        let err = enumerate_elements(9, 3, 1_000_000).unwrap_err();
        assert!(matches!(
            err,
            VecPartError::ResourceLimit {
                what: "element",
                ..
            }
        ));
        assert!(enumerate_elements(3, 1, 16).is_err());
        assert!(enumerate_elements(3, 1, 17).is_ok());
    }

    #[test]
    fn built_poset_shapes() {
        let p = build_pi(3, 1, 1000).unwrap();
        assert_eq!(p.poset().len(), 17);
        assert_eq!(p.poset().height(), 3);
        assert_eq!(p.atoms().len(), 6);

        let p = build_pi(2, 1, 1000).unwrap();
        assert_eq!(p.poset().len(), 4);
        let atoms: Vec<String> = p
            .atoms()
            .iter()
            .map(|&a| atom_word(p.element(a)).unwrap().to_string())
            .collect();
        assert_eq!(atoms, vec!["12", "21"]);

        let p = build_pi(1, 2, 1000).unwrap();
        assert_eq!(p.poset().len(), 2);
        assert_eq!(p.poset().height(), 1);
    }

    #[test]
    fn atom_counts_are_factorial_powers() {
        for (n, s) in [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (4, 2)] {
            let p = build_pi(n, s, 1_000_000).unwrap();
            assert_eq!(
                BigUint::from(p.atoms().len()),
                factorial(n).pow(s as u32),
                "({n},{s})"
            );
            assert_eq!(
                BigUint::from(p.poset().len()),
                count_elements(n, s).unwrap()
            );
        }
    }

    #[test]
    fn covers_agree_with_the_element_predicate() {
        let p = build_pi(3, 2, 10_000).unwrap();
        let e = p.elements();
        for (i, x) in e.iter().enumerate() {
            for (j, y) in e.iter().enumerate() {
                assert_eq!(x.is_cover(y).unwrap(), p.poset().is_cover(i, j), "{x} {y}");
            }
        }
    }

    #[test]
    fn partition_lattice() {
        let l = build_partition_lattice(4).unwrap();
        assert_eq!(l.poset().len(), 15);
        assert_eq!(l.poset().height(), 3);
        assert_eq!(l.partition(l.poset().bottom()).blocks().len(), 4);
    }
}
