//! Structural properties of the triple labeling, checked exhaustively:
//!
//! 1. `x <= y` (x not bottom) implies `A(y) <=lex A(x)`.
//! 2. A chain from the bottom containing an atom-changing cover is never
//!    increasing.
//! 3. An atom-changing cover labeled `(k, i, j)` has `A(x)[k,i] > A(y)[k,i] = j`.
//! 4. Such a cover merges the block containing `k` with the block whose
//!    `i`-th label contains `j`.
//! 5. In an interval `[x, y]` with `A(x) != A(y)`, the first difference
//!    `(k, i, j)` labels exactly one cover of every maximal chain and is a
//!    lower bound for every label in the interval.

use serde::Serialize;

use super::{first_difference, is_increasing, EdgeLabel, LabelError, Result};
use crate::vecpart::{atom_word, AtomWord, VectorPoset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureViolation {
    pub condition: u8,
    pub lower: usize,
    pub upper: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct StructureReport {
    /// Number of instances checked for each condition.
    pub checks: [usize; 5],
    pub violations: Vec<StructureViolation>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, condition: u8, lower: usize, upper: usize, detail: String) {
        self.violations.push(StructureViolation {
            condition,
            lower,
            upper,
            detail,
        });
    }
}

pub fn check_label_structure(vp: &VectorPoset, labels: &[EdgeLabel]) -> Result<StructureReport> {
    let p = vp.poset();
    if labels.len() != p.covers().len() {
        return Err(LabelError::Poset(crate::poset::PosetError::LabelCount {
            expected: p.covers().len(),
            got: labels.len(),
        }));
    }
    let bottom = p.bottom();
    let atoms: Vec<Option<AtomWord>> = vp.elements().iter().map(|v| atom_word(v).ok()).collect();
    let atom = |v: usize| atoms[v].as_ref().expect("non-bottom element");
    let mut report = StructureReport::default();

    // (1) and (5) range over comparable pairs.
    for x in (0..p.len()).filter(|&x| x != bottom) {
        for y in p.up_set(x).ones() {
            report.checks[0] += 1;
            if atom(y) > atom(x) {
                report.fail(1, x, y, format!("A(y) = {} > A(x) = {}", atom(y), atom(x)));
            }
            if atom(x) != atom(y) {
                report.checks[4] += 1;
                check_interval(vp, labels, x, y, &mut report)?;
            }
        }
    }

    // (2): walk every chain up from the bottom.
    fn walk(
        vp: &VectorPoset,
        labels: &[EdgeLabel],
        atoms: &[Option<AtomWord>],
        chain: &mut Vec<usize>,
        changed: bool,
        report: &mut StructureReport,
    ) {
        let p = vp.poset();
        let at = *chain.last().expect("nonempty");
        for &(next, _) in p.upper_covers(at) {
            let lower_atom = atoms[at].as_ref();
            let changes = changed || lower_atom.is_some_and(|a| Some(a) != atoms[next].as_ref());
            chain.push(next);
            if changes {
                report.checks[1] += 1;
                let word: Vec<&EdgeLabel> = chain
                    .windows(2)
                    .map(|w| &labels[p.cover_id(w[0], w[1]).expect("saturated")])
                    .collect();
                if is_increasing(&word) {
                    report.fail(2, chain[0], next, format!("increasing chain {chain:?}"));
                }
            }
            walk(vp, labels, atoms, chain, changes, report);
            chain.pop();
        }
    }
    walk(vp, labels, &atoms, &mut vec![bottom], false, &mut report);

    // (3) and (4) per atom-changing cover.
    for (id, &(x, y)) in p.covers().iter().enumerate() {
        if x == bottom || atom(x) == atom(y) {
            continue;
        }
        report.checks[2] += 1;
        report.checks[3] += 1;
        let EdgeLabel { k, ref i, j } = labels[id];
        let i = usize::try_from(i).unwrap_or(usize::MAX);
        if i == 0 || i > vp.s() || k == 0 || k > vp.n() {
            report.fail(3, x, y, format!("label {} out of range", labels[id]));
            continue;
        }
        let (before, after) = (atom(x).get(k, i), atom(y).get(k, i));
        if !(before > after && after == j) {
            report.fail(3, x, y, format!("w = {before}, w' = {after}, j = {j}"));
        }
        let lower = vp.element(x);
        let with_k = lower.block_of(k);
        let with_j = lower.labels(i - 1).iter().position(|l| l.contains(j));
        match (with_k, with_j) {
            (Some(a), Some(b)) if a != b && &lower.merge(a, b) == vp.element(y) => {}
            _ => report.fail(
                4,
                x,
                y,
                format!("cover is not the merge for {}", labels[id]),
            ),
        }
    }
    Ok(report)
}

fn check_interval(
    vp: &VectorPoset,
    labels: &[EdgeLabel],
    x: usize,
    y: usize,
    report: &mut StructureReport,
) -> Result<()> {
    let p = vp.poset();
    let first = first_difference(&atom_word(vp.element(x))?, &atom_word(vp.element(y))?)?;
    let members = p.interval(x, y)?;
    for &z in &members {
        for &(w, id) in p.upper_covers(z) {
            if members
                .binary_search_by_key(&(p.rank(w), w), |&m| (p.rank(m), m))
                .is_ok()
                && labels[id] < first
            {
                report.fail(5, x, y, format!("cover label {} below {first}", labels[id]));
            }
        }
    }
    for chain in p.maximal_chains(x, y)? {
        let hits = chain
            .windows(2)
            .filter(|w| labels[p.cover_id(w[0], w[1]).expect("saturated")] == first)
            .count();
        if hits != 1 {
            report.fail(
                5,
                x,
                y,
                format!("{hits} covers labeled {first} on {chain:?}"),
            );
        }
    }
    Ok(())
}
