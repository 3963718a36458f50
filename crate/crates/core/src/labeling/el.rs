use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{LabelError, Result};
use crate::poset::{Poset, PosetError, SimplicialComplex};

/// Labels of the consecutive covers of a saturated chain.
pub fn chain_label<L: Clone>(p: &Poset, labels: &[L], chain: &[usize]) -> Result<Vec<L>> {
    check_label_count(p, labels.len())?;
    chain
        .windows(2)
        .enumerate()
        .map(|(pos, w)| {
            p.cover_id(w[0], w[1])
                .map(|id| labels[id].clone())
                .ok_or(LabelError::NotSaturated(pos))
        })
        .collect()
}

pub fn is_increasing<L: Ord>(word: &[L]) -> bool {
    word.windows(2).all(|w| w[0] < w[1])
}

pub fn is_weakly_decreasing<L: Ord>(word: &[L]) -> bool {
    word.windows(2).all(|w| w[0] >= w[1])
}

fn check_label_count(p: &Poset, got: usize) -> std::result::Result<(), PosetError> {
    if got != p.covers().len() {
        return Err(PosetError::LabelCount {
            expected: p.covers().len(),
            got,
        });
    }
    Ok(())
}

/// Replaces labels by their position in the sorted list of distinct labels.
fn intern<L: Ord>(labels: &[L]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut ranks = vec![0u32; labels.len()];
    let mut next = 0u32;
    for (pos, &id) in order.iter().enumerate() {
        if pos > 0 && labels[order[pos - 1]] != labels[id] {
            next += 1;
        }
        ranks[id] = next;
    }
    ranks
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "count")]
pub enum Diagnosis {
    NoIncreasingChain,
    MultipleIncreasingChains(usize),
    IncreasingNotLexFirst,
}

impl fmt::Display for Diagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnosis::NoIncreasingChain => write!(f, "no increasing maximal chain"),
            Diagnosis::MultipleIncreasingChains(c) => write!(f, "{c} increasing maximal chains"),
            Diagnosis::IncreasingNotLexFirst => {
                write!(f, "increasing chain does not strictly precede all others")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElCounterexample {
    pub lower: usize,
    pub upper: usize,
    pub diagnosis: Diagnosis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElReport {
    pub ok: bool,
    pub intervals_checked: usize,
    /// Failure with the least `(lower, upper)` pair.
    pub counterexample: Option<ElCounterexample>,
}

#[derive(Default)]
struct IntervalStats {
    increasing: usize,
    increasing_word: Option<Vec<u32>>,
    least_word: Option<Vec<u32>>,
}

/// Checks every interval `[x, y]` with `x < y`: exactly one maximal chain
/// has a strictly increasing label word, and that word is strictly
/// lexicographically smaller than the word of every other maximal chain.
pub fn verify_el<L: Ord + Sync>(p: &Poset, labels: &[L]) -> Result<ElReport> {
    check_label_count(p, labels.len())?;
    let ranks = intern(labels);
    let per_lower: Vec<(usize, Option<(usize, Diagnosis)>)> = (0..p.len())
        .into_par_iter()
        .map(|x| check_from(p, &ranks, x))
        .collect();
    let intervals_checked = per_lower.iter().map(|(c, _)| c).sum();
    let counterexample = per_lower
        .into_iter()
        .enumerate()
        .find_map(|(x, (_, fail))| {
            fail.map(|(y, diagnosis)| ElCounterexample {
                lower: x,
                upper: y,
                diagnosis,
            })
        });
    Ok(ElReport {
        ok: counterexample.is_none(),
        intervals_checked,
        counterexample,
    })
}

fn check_from(p: &Poset, ranks: &[u32], x: usize) -> (usize, Option<(usize, Diagnosis)>) {
    fn walk(
        p: &Poset,
        ranks: &[u32],
        at: usize,
        word: &mut Vec<u32>,
        increasing: bool,
        stats: &mut HashMap<usize, IntervalStats>,
    ) {
        for &(next, id) in p.upper_covers(at) {
            let r = ranks[id];
            let inc = increasing && word.last().is_none_or(|&last| last < r);
            word.push(r);
            let st = stats.entry(next).or_default();
            if inc {
                st.increasing += 1;
                st.increasing_word = Some(word.clone());
            }
            if st
                .least_word
                .as_ref()
                .is_none_or(|w| word.as_slice() < w.as_slice())
            {
                st.least_word = Some(word.clone());
            }
            walk(p, ranks, next, word, inc, stats);
            word.pop();
        }
    }

    let mut stats = HashMap::new();
    walk(p, ranks, x, &mut Vec::new(), true, &mut stats);
    let checked = stats.len();
    let mut uppers: Vec<usize> = stats.keys().copied().collect();
    uppers.sort_unstable();
    for y in uppers {
        let st = &stats[&y];
        let diagnosis = match st.increasing {
            0 => Some(Diagnosis::NoIncreasingChain),
            1 if st.increasing_word == st.least_word => None,
            1 => Some(Diagnosis::IncreasingNotLexFirst),
            c => Some(Diagnosis::MultipleIncreasingChains(c)),
        };
        if let Some(d) = diagnosis {
            return (checked, Some((y, d)));
        }
    }
    (checked, None)
}

/// Maximal chains ordered lexicographically by label word, ties broken by
/// the chains' element indices.
#[derive(Debug, Clone)]
pub struct ShellingOrder {
    /// Full chains from bottom to top.
    pub chains: Vec<Vec<usize>>,
    /// The same chains with bottom and top removed.
    pub facets: Vec<Vec<usize>>,
}

impl ShellingOrder {
    /// Order complex of the proper part with facets in shelling order.
    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.facets.clone())
            .expect("maximal chains of a graded poset form a facet list")
    }
}

pub fn lex_shelling_order<L: Ord>(p: &Poset, labels: &[L]) -> Result<ShellingOrder> {
    check_label_count(p, labels.len())?;
    let ranks = intern(labels);
    let mut keyed: Vec<(Vec<u32>, Vec<usize>)> = p
        .maximal_chains(p.bottom(), p.top())?
        .into_iter()
        .map(|c| {
            let word = c
                .windows(2)
                .map(|w| ranks[p.cover_id(w[0], w[1]).expect("saturated")])
                .collect();
            (word, c)
        })
        .collect();
    keyed.sort();
    let chains: Vec<Vec<usize>> = keyed.into_iter().map(|(_, c)| c).collect();
    let facets = chains.iter().map(|c| c[1..c.len() - 1].to_vec()).collect();
    Ok(ShellingOrder { chains, facets })
}

/// One row of the chain audit export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainAuditRow {
    pub chain: String,
    pub labels: String,
    pub increasing: bool,
    pub decreasing: bool,
}

/// Every maximal chain with its label word, in canonical chain order.
pub fn chain_audit<L: Ord + Clone + fmt::Display>(
    p: &Poset,
    labels: &[L],
    max_chains: u64,
) -> Result<Vec<ChainAuditRow>> {
    check_label_count(p, labels.len())?;
    p.maximal_chains_within(p.bottom(), p.top(), max_chains)?
        .into_iter()
        .map(|c| {
            let word = chain_label(p, labels, &c)?;
            Ok(ChainAuditRow {
                chain: c.iter().map(|&v| p.key(v)).collect::<Vec<_>>().join(" < "),
                labels: word.iter().map(|l| l.to_string()).collect(),
                increasing: is_increasing(&word),
                decreasing: is_weakly_decreasing(&word),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{chi_labels, lambda_labels, EdgeLabel, Sabotage};
    use crate::vecpart::{build_partition_lattice, build_pi};

    #[test]
    fn word_predicates() {
        let one = EdgeLabel::new(1, 1u32, 1);
        assert!(!is_increasing(&[one.clone(), one.clone()]));
        assert!(is_weakly_decreasing(&[one.clone(), one.clone()]));
        let empty: [EdgeLabel; 0] = [];
        assert!(is_increasing(&empty) && is_weakly_decreasing(&empty));
        assert!(is_increasing(&[1, 2, 5]));
        assert!(!is_weakly_decreasing(&[1, 2]));
    }

    #[test]
    fn intern_preserves_order_and_ties() {
        assert_eq!(intern(&[5, 1, 5, 3]), vec![2, 0, 2, 1]);
    }

    #[test]
    fn chi_is_el_on_small_partition_lattices() {
        for n in 1..=4 {
            let l = build_partition_lattice(n).unwrap();
            let report = verify_el(l.poset(), &chi_labels(&l)).unwrap();
            assert!(report.ok, "n = {n}: {report:?}");
        }
    }

    #[test]
    fn lambda_is_el_on_small_cases() {
        for (n, s) in [(1, 1), (2, 1), (3, 1), (2, 2), (1, 3)] {
            let p = build_pi(n, s, 10_000).unwrap();
            let report = verify_el(p.poset(), &lambda_labels(&p, None).unwrap()).unwrap();
            assert!(report.ok, "({n},{s}): {report:?}");
        }
    }

    #[test]
    fn constant_labeling_fails_at_least_interval() {
        let l = build_partition_lattice(3).unwrap();
        let labels = vec![0u8; l.poset().covers().len()];
        let report = verify_el(l.poset(), &labels).unwrap();
        assert!(!report.ok);
        let ce = report.counterexample.unwrap();
        assert_eq!(ce.lower, 0);
        assert_eq!(ce.diagnosis, Diagnosis::NoIncreasingChain);
    }

    #[test]
    fn chain_label_needs_saturated_chain() {
        let p = build_pi(3, 1, 1000).unwrap();
        let labels = lambda_labels(&p, None).unwrap();
        let top = p.poset().top();
        let err = chain_label(p.poset(), &labels, &[0, 1, top]).unwrap_err();
        assert_eq!(err, LabelError::NotSaturated(1));
        let word = chain_label(p.poset(), &labels, &[0, 1]).unwrap();
        assert_eq!(word.len(), 1);
    }

    #[test]
    fn shelling_of_two_atoms() {
        let p = build_pi(2, 1, 1000).unwrap();
        let order = lex_shelling_order(p.poset(), &lambda_labels(&p, None).unwrap()).unwrap();
        assert_eq!(order.facets.len(), 2);
        assert_eq!(order.facets[0], vec![p.atoms()[0]]);
        let r = order.complex().verify_shelling(&[0, 1]).unwrap();
        assert!(r.valid);
        assert_eq!(r.homology_facets.len(), 1);
    }

    #[test]
    fn sabotage_detected_on_small_poset() {
        let p = build_pi(3, 1, 1000).unwrap();
        for s in Sabotage::ALL {
            let labels = lambda_labels(&p, Some(s)).unwrap();
            assert!(!verify_el(p.poset(), &labels).unwrap().ok, "{s}");
        }
    }

    #[test]
    fn audit_rows() {
        let p = build_pi(3, 1, 1000).unwrap();
        let labels = lambda_labels(&p, None).unwrap();
        let rows = chain_audit(p.poset(), &labels, 100).unwrap();
        assert_eq!(rows.len(), 18);
        assert_eq!(rows.iter().filter(|r| r.increasing).count(), 1);
        assert_eq!(rows.iter().filter(|r| r.decreasing).count(), 4);
        assert!(chain_audit(p.poset(), &labels, 10).is_err());
    }
}
