use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{recursion_b_total, Result, SphereError};
use crate::labeling::{is_weakly_decreasing, lambda_edge, lambda_labels, EdgeLabel, LabelError};
use crate::vecpart::{build_pi, IntSet, VectorPartition, VectorPoset};
use crate::Budget;

/// Checks that `chain` runs from the bottom to the top of one vector
/// partition poset through covers with weakly decreasing labels, and returns
/// the labels from the bottom up.
pub fn validate_decreasing_chain(chain: &[VectorPartition]) -> Result<Vec<EdgeLabel>> {
    let (first, last) = match (chain.first(), chain.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(SphereError::NotMaximal("empty chain".into())),
    };
    if !first.is_bottom() || !last.is_top() {
        return Err(SphereError::NotMaximal(format!(
            "chain runs from {first} to {last}"
        )));
    }
    let (n, s) = (last.n(), last.s());
    if chain.len() != n + 1 {
        return Err(SphereError::NotMaximal(format!(
            "{} elements, expected {}",
            chain.len(),
            n + 1
        )));
    }
    let mut labels = Vec::with_capacity(n);
    for w in chain.windows(2) {
        if (w[1].n(), w[1].s()) != (n, s) {
            return Err(SphereError::NotMaximal(format!(
                "{} has other dimensions",
                w[1]
            )));
        }
        match lambda_edge(&w[0], &w[1]) {
            Ok(l) => labels.push(l),
            Err(LabelError::NotACover(a, b)) => {
                return Err(SphereError::NotMaximal(format!(
                    "{a} is not covered by {b}"
                )))
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(pos) = labels.windows(2).position(|w| w[0] < w[1]) {
        return Err(SphereError::NotDecreasing(pos + 1));
    }
    Ok(labels)
}

/// Decreasing maximal chains found by labeling the whole poset and testing
/// every maximal chain. Chains are listed bottom first, sorted.
pub fn decreasing_chains_by_filter(
    vp: &VectorPoset,
    max_chains: u64,
) -> Result<Vec<Vec<VectorPartition>>> {
    let p = vp.poset();
    let labels = lambda_labels(vp, None)?;
    let chains = p.maximal_chains_within(p.bottom(), p.top(), max_chains)?;
    let mut out: Vec<Vec<VectorPartition>> = chains
        .into_iter()
        .filter(|c| {
            let word: Vec<&EdgeLabel> = c
                .windows(2)
                .map(|w| &labels[p.cover_id(w[0], w[1]).expect("saturated")])
                .collect();
            is_weakly_decreasing(&word)
        })
        .map(|c| c.into_iter().map(|v| vp.element(v).clone()).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// Decreasing maximal chains generated from the top down without building
/// the poset. Each step splits the leftmost non-singleton block `I`, with
/// `k = min I`, into `I_a ∋ k` and `I_b`, splitting every label of `I` to
/// match. The split must move `min L^h` to the `I_b` side for some `h`;
/// the first such `h` is the index of the cover, and consecutive splits at
/// the same `k` must have weakly increasing index going down.
pub fn decreasing_chains_top_down(
    n: usize,
    s: usize,
    max_chains: u64,
) -> Result<Vec<Vec<VectorPartition>>> {
    let top = VectorPartition::top(n, s)?;
    let bottom = VectorPartition::bottom(n, s)?;
    let expected = recursion_b_total(n, s);
    if expected > BigUint::from(max_chains) {
        return Err(SphereError::ResourceLimit {
            what: "decreasing chain",
            limit: max_chains,
            required: expected,
        });
    }
    let mut gen = TopDown {
        bottom,
        limit: max_chains,
        out: Vec::new(),
    };
    gen.descend(&mut vec![top], None)?;
    let mut out = gen.out;
    out.sort();
    Ok(out)
}

struct TopDown {
    bottom: VectorPartition,
    limit: u64,
    out: Vec<Vec<VectorPartition>>,
}

impl TopDown {
    fn descend(
        &mut self,
        path: &mut Vec<VectorPartition>,
        prev: Option<(usize, usize)>,
    ) -> Result<()> {
        let cur = path.last().expect("path starts at the top").clone();
        let (n, s) = (cur.n(), cur.s());
        let Some(b) = cur.blocks().iter().position(|blk| blk.len() > 1) else {
            if self.out.len() as u64 >= self.limit {
                return Err(SphereError::ResourceLimit {
                    what: "decreasing chain",
                    limit: self.limit,
                    required: BigUint::from(self.limit) + 1u32,
                });
            }
            let mut chain = path.clone();
            chain.push(self.bottom.clone());
            chain.reverse();
            self.out.push(chain);
            return Ok(());
        };
        let block = cur.blocks()[b];
        let k = block.min().expect("nonempty block");
        let rest: Vec<usize> = block.difference(IntSet::singleton(k)).iter().collect();
        let old_labels: Vec<IntSet> = (0..s).map(|h| cur.labels(h)[b]).collect();
        for extra in rest.iter().copied().powerset() {
            if extra.len() == rest.len() {
                continue;
            }
            let left: IntSet = extra.iter().copied().chain([k]).collect();
            let right = block.difference(left);
            let choices = old_labels
                .iter()
                .map(|l| {
                    l.iter()
                        .combinations(left.len())
                        .map(IntSet::from_iter)
                        .collect::<Vec<_>>()
                })
                .multi_cartesian_product();
            for choice in choices {
                let moved = (0..s)
                    .find(|&h| !choice[h].contains(old_labels[h].min().expect("nonempty label")));
                let Some(index) = moved.map(|h| h + 1) else {
                    continue;
                };
                if matches!(prev, Some((pk, pi)) if pk == k && index < pi) {
                    continue;
                }
                let mut blocks = cur.blocks().to_vec();
                blocks[b] = left;
                blocks.push(right);
                let labels = (0..s)
                    .map(|h| {
                        let mut lab = cur.labels(h).to_vec();
                        lab[b] = choice[h];
                        lab.push(old_labels[h].difference(choice[h]));
                        lab
                    })
                    .collect();
                path.push(VectorPartition::new(n, blocks, labels)?);
                self.descend(path, Some((k, index)))?;
                path.pop();
            }
        }
        Ok(())
    }
}

/// Runs both enumerations and fails with [`SphereError::Mismatch`] unless
/// they produce the same chains.
pub fn enumerate_decreasing_chains(
    n: usize,
    s: usize,
    budget: Budget,
) -> Result<Vec<Vec<VectorPartition>>> {
    let vp = build_pi(n, s, budget.max_elements)?;
    let filtered = decreasing_chains_by_filter(&vp, budget.max_chains)?;
    let generated = decreasing_chains_top_down(n, s, budget.max_chains)?;
    if filtered != generated {
        return Err(SphereError::Mismatch(format!(
            "filtering found {} decreasing chains, top-down generation found {}",
            filtered.len(),
            generated.len()
        )));
    }
    Ok(filtered)
}

/// Class sizes of decreasing chains by the index `i` of the top cover's
/// label; entry `i - 1` counts index `i`.
pub fn classify_by_top_index(chains: &[Vec<VectorPartition>], s: usize) -> Result<Vec<usize>> {
    let mut counts = vec![0usize; s];
    for chain in chains {
        let n = chain.last().map_or(0, |t| t.n());
        if n < 2 {
            return Err(SphereError::TooSmall(n));
        }
        let label = lambda_edge(&chain[chain.len() - 2], &chain[chain.len() - 1])?;
        let i = label.i.to_usize().filter(|&i| (1..=s).contains(&i)).ok_or(
            SphereError::InvalidIndex {
                i: label.i.to_usize().unwrap_or(usize::MAX),
                s,
            },
        )?;
        counts[i - 1] += 1;
    }
    Ok(counts)
}
