//! Bounded graded posets given by their cover relation.
//!
//! A [`Poset`] is validated on construction: the cover graph must be acyclic,
//! have a unique minimum and maximum, and every cover must raise the rank by
//! exactly one. Element indices are stable and every enumeration returns
//! results in a canonical order (by index, then lexicographically), so two
//! runs over the same input produce identical output.

mod complex;
mod io;

pub use complex::{ComplexError, ShellingReport, SimplicialComplex};
pub use io::{LabeledCover, PosetJson};

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element key `{0}`")]
    DuplicateKey(String),
    #[error("cover ({0}, {1}) references an element outside the poset")]
    BadIndex(usize, usize),
    #[error("cover relation contains a cycle")]
    CycleDetected,
    #[error("poset is not bounded: {0}")]
    NotBounded(String),
    #[error("cover ({lower}, {upper}) skips a rank ({lower_rank} -> {upper_rank})")]
    NotGraded {
        lower: usize,
        upper: usize,
        lower_rank: usize,
        upper_rank: usize,
    },
    #[error("elements {0} and {1} are not comparable (need x <= y)")]
    NotComparable(usize, usize),
    #[error("proper part is empty (poset height {0} < 2)")]
    EmptyProperPart(usize),
    #[error("{what} limit exceeded: need {required}, budget is {limit}")]
    ResourceLimit {
        what: &'static str,
        limit: u64,
        required: BigUint,
    },
    #[error("expected {expected} labels, one per cover, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("invalid poset json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, PosetError>;

/// Immutable bounded graded poset.
#[derive(Debug, Clone)]
pub struct Poset {
    keys: Vec<String>,
    key_index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    cover_index: HashMap<(usize, usize), usize>,
    // (neighbour, cover id), sorted by neighbour index
    up: Vec<Vec<(usize, usize)>>,
    down: Vec<Vec<(usize, usize)>>,
    rank: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Poset {
    /// Validates the cover relation and computes ranks by longest path from
    /// the minimum. Duplicate cover pairs are collapsed.
    pub fn new(keys: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let len = keys.len();
        let mut key_index = HashMap::with_capacity(len);
        for (i, k) in keys.iter().enumerate() {
            if key_index.insert(k.clone(), i).is_some() {
                return Err(PosetError::DuplicateKey(k.clone()));
            }
        }
        if len == 0 {
            return Err(PosetError::NotBounded("no elements".into()));
        }

        let mut covers: Vec<(usize, usize)> = covers.to_vec();
        for &(a, b) in &covers {
            if a >= len || b >= len {
                return Err(PosetError::BadIndex(a, b));
            }
            if a == b {
                return Err(PosetError::CycleDetected);
            }
        }
        covers.sort_unstable();
        covers.dedup();

        let mut up = vec![Vec::new(); len];
        let mut down = vec![Vec::new(); len];
        let mut cover_index = HashMap::with_capacity(covers.len());
        for (id, &(a, b)) in covers.iter().enumerate() {
            up[a].push((b, id));
            down[b].push((a, id));
            cover_index.insert((a, b), id);
        }
        for list in down.iter_mut() {
            list.sort_unstable();
        }

        let minima: Vec<usize> = (0..len).filter(|&v| down[v].is_empty()).collect();
        let maxima: Vec<usize> = (0..len).filter(|&v| up[v].is_empty()).collect();

        // Kahn's algorithm; longest-path ranks fall out of the same pass.
        let mut indegree: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut rank = vec![0usize; len];
        let mut queue: VecDeque<usize> = minima.iter().copied().collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &(w, _) in &up[v] {
                rank[w] = rank[w].max(rank[v] + 1);
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if seen != len {
            return Err(PosetError::CycleDetected);
        }
        if minima.len() != 1 {
            return Err(PosetError::NotBounded(format!(
                "{} minimal elements",
                minima.len()
            )));
        }
        if maxima.len() != 1 {
            return Err(PosetError::NotBounded(format!(
                "{} maximal elements",
                maxima.len()
            )));
        }
        for &(a, b) in &covers {
            if rank[b] != rank[a] + 1 {
                return Err(PosetError::NotGraded {
                    lower: a,
                    upper: b,
                    lower_rank: rank[a],
                    upper_rank: rank[b],
                });
            }
        }

        Ok(Self {
            keys,
            key_index,
            covers,
            cover_index,
            up,
            down,
            rank,
            bottom: minima[0],
            top: maxima[0],
        })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, x: usize) -> &str {
        &self.keys[x]
    }

    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.key_index.get(key).copied()
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Length of every maximal chain.
    pub fn height(&self) -> usize {
        self.rank[self.top]
    }

    /// Cover pairs sorted by `(lower, upper)`; a cover's position is its id.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_id(&self, lower: usize, upper: usize) -> Option<usize> {
        self.cover_index.get(&(lower, upper)).copied()
    }

    pub fn is_cover(&self, lower: usize, upper: usize) -> bool {
        self.cover_index.contains_key(&(lower, upper))
    }

    /// Elements covering `x` with the cover id, ascending by element index.
    pub fn upper_covers(&self, x: usize) -> &[(usize, usize)] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[(usize, usize)] {
        &self.down[x]
    }

    pub fn up_set(&self, x: usize) -> FixedBitSet {
        self.closure(x, &self.up, usize::MAX)
    }

    pub fn down_set(&self, y: usize) -> FixedBitSet {
        self.closure(y, &self.down, usize::MAX)
    }

    fn closure(&self, start: usize, adj: &[Vec<(usize, usize)>], rank_cap: usize) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.len());
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if self.rank[w] <= rank_cap && !seen.put(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        if x == y {
            return true;
        }
        if self.rank[x] >= self.rank[y] {
            return false;
        }
        self.closure(x, &self.up, self.rank[y]).contains(y)
    }

    /// Elements of `[x, y]` ordered by rank, then index.
    pub fn interval(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        if !self.leq(x, y) {
            return Err(PosetError::NotComparable(x, y));
        }
        let mut members = self.closure(x, &self.up, self.rank[y]);
        members.intersect_with(&self.down_set(y));
        let mut out: Vec<usize> = members.ones().collect();
        out.sort_by_key(|&v| (self.rank[v], v));
        Ok(out)
    }

    /// Number of maximal chains of `[x, y]`, without enumerating them.
    pub fn count_maximal_chains(&self, x: usize, y: usize) -> Result<BigUint> {
        let elems = self.interval(x, y)?;
        let mut count: HashMap<usize, BigUint> = HashMap::with_capacity(elems.len());
        count.insert(x, BigUint::one());
        for &z in elems.iter().skip(1) {
            let mut total = BigUint::zero();
            for (c, _) in &self.down[z] {
                if let Some(v) = count.get(c) {
                    total += v;
                }
            }
            count.insert(z, total);
        }
        Ok(count.remove(&y).unwrap_or_default())
    }

    /// Every saturated chain from `x` to `y`, in lexicographic order of
    /// element indices.
    pub fn maximal_chains(&self, x: usize, y: usize) -> Result<Vec<Vec<usize>>> {
        if !self.leq(x, y) {
            return Err(PosetError::NotComparable(x, y));
        }
        let below_y = self.down_set(y);
        let mut out = Vec::new();
        let mut path = vec![x];
        self.chains_dfs(&below_y, y, &mut path, &mut out);
        Ok(out)
    }

    /// Same as [`Poset::maximal_chains`] but refuses to enumerate more than
    /// `max_chains` chains.
    pub fn maximal_chains_within(
        &self,
        x: usize,
        y: usize,
        max_chains: u64,
    ) -> Result<Vec<Vec<usize>>> {
        let required = self.count_maximal_chains(x, y)?;
        if required > BigUint::from(max_chains) {
            return Err(PosetError::ResourceLimit {
                what: "chain",
                limit: max_chains,
                required,
            });
        }
        self.maximal_chains(x, y)
    }

    fn chains_dfs(
        &self,
        below_y: &FixedBitSet,
        y: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let cur = *path.last().expect("path is never empty");
        if cur == y {
            out.push(path.clone());
            return;
        }
        for &(w, _) in &self.up[cur] {
            if below_y.contains(w) {
                path.push(w);
                self.chains_dfs(below_y, y, path, out);
                path.pop();
            }
        }
    }

    /// `mu(x, z)` for every `z` in `[x, y]`, keyed by element index.
    pub fn mobius_row(&self, x: usize, y: usize) -> Result<Vec<(usize, BigInt)>> {
        let elems = self.interval(x, y)?;
        let local: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut downs: Vec<FixedBitSet> = Vec::with_capacity(elems.len());
        let mut mu: Vec<BigInt> = Vec::with_capacity(elems.len());
        for (li, &z) in elems.iter().enumerate() {
            let mut down = FixedBitSet::with_capacity(elems.len());
            down.insert(li);
            for (c, _) in &self.down[z] {
                if let Some(&lc) = local.get(c) {
                    down.union_with(&downs[lc]);
                }
            }
            let value = if li == 0 {
                BigInt::one()
            } else {
                let mut sum = BigInt::zero();
                for w in down.ones().filter(|&w| w != li) {
                    sum += &mu[w];
                }
                -sum
            };
            downs.push(down);
            mu.push(value);
        }
        Ok(elems.into_iter().zip(mu).collect())
    }

    /// Möbius function by the defining recursion
    /// `mu(x,x) = 1`, `mu(x,y) = -sum_{x <= z < y} mu(x,z)`.
    pub fn mobius(&self, x: usize, y: usize) -> Result<BigInt> {
        let row = self.mobius_row(x, y)?;
        Ok(row
            .into_iter()
            .find(|(z, _)| *z == y)
            .map(|(_, v)| v)
            .expect("y is in its own interval"))
    }

    /// Order complex of the proper part: facets are the maximal chains of
    /// the bounded poset with the bottom and top removed.
    pub fn order_complex(&self) -> Result<SimplicialComplex> {
        if self.height() < 2 {
            return Err(PosetError::EmptyProperPart(self.height()));
        }
        let facets = self
            .maximal_chains(self.bottom, self.top)?
            .into_iter()
            .map(|c| c[1..c.len() - 1].to_vec())
            .collect();
        Ok(SimplicialComplex::from_facets(facets)
            .expect("maximal chains of a graded poset form a facet list"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn diamond() -> Poset {
        Poset::new(
            keys(&["0", "a", "b", "1"]),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn two_element_chain() {
        let p = Poset::new(keys(&["0", "1"]), &[(0, 1)]).unwrap();
        assert_eq!((p.rank(0), p.rank(1)), (0, 1));
        assert_eq!(p.height(), 1);
        assert!(matches!(
            p.order_complex(),
            Err(PosetError::EmptyProperPart(1))
        ));
    }

    #[test]
    fn diamond_ranks_and_chains() {
        let p = diamond();
        assert_eq!(
            (0..4).map(|v| p.rank(v)).collect::<Vec<_>>(),
            vec![0, 1, 1, 2]
        );
        assert_eq!(
            p.maximal_chains(0, 3).unwrap(),
            vec![vec![0, 1, 3], vec![0, 2, 3]]
        );
        assert_eq!(p.maximal_chains(2, 2).unwrap(), vec![vec![2]]);
        assert_eq!(p.mobius(0, 3).unwrap(), BigInt::from(1));
        assert_eq!(p.mobius(1, 1).unwrap(), BigInt::from(1));
        let c = p.order_complex().unwrap();
        assert_eq!(c.facets(), &[vec![1], vec![2]]);
    }

    #[test]
    fn rejects_shortcut_cover() {
        let err = Poset::new(keys(&["0", "a", "1"]), &[(0, 1), (1, 2), (0, 2)]).unwrap_err();
        assert!(matches!(
            err,
            PosetError::NotGraded {
                lower: 0,
                upper: 2,
                ..
            }
        ));
    }

    #[test]
    fn rejects_cycles_and_unbounded() {
        let err = Poset::new(keys(&["a", "b", "c"]), &[(0, 1), (1, 2), (2, 1)]).unwrap_err();
        assert_eq!(err, PosetError::CycleDetected);
        let err = Poset::new(keys(&["a", "b", "c"]), &[(0, 2), (1, 2)]).unwrap_err();
        assert!(matches!(err, PosetError::NotBounded(_)));
        let err = Poset::new(keys(&["a", "a"]), &[(0, 1)]).unwrap_err();
        assert!(matches!(err, PosetError::DuplicateKey(_)));
        let err = Poset::new(keys(&["a", "b"]), &[(0, 5)]).unwrap_err();
        assert_eq!(err, PosetError::BadIndex(0, 5));
    }

    #[test]
    fn incomparable_pairs_are_errors() {
        let p = diamond();
        assert_eq!(
            p.maximal_chains(1, 2).unwrap_err(),
            PosetError::NotComparable(1, 2)
        );
        assert_eq!(p.mobius(3, 0).unwrap_err(), PosetError::NotComparable(3, 0));
    }

    #[test]
    fn chain_budget() {
        let p = diamond();
        assert_eq!(p.count_maximal_chains(0, 3).unwrap(), BigUint::from(2u32));
        assert!(p.maximal_chains_within(0, 3, 2).is_ok());
        assert!(matches!(
            p.maximal_chains_within(0, 3, 1),
            Err(PosetError::ResourceLimit { .. })
        ));
    }
}
