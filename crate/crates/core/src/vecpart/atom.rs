//! Atom words and their position in the lexicographic order of atoms.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::{Result, VecPartError, VectorPartition};

/// An atom written as `s` concatenated permutations of `[n]`: entry
/// `(i - 1) * n + k` is the single label of `{k}` in labeling `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomWord {
    n: usize,
    word: Vec<usize>,
}

impl AtomWord {
    /// Checks that every length-`n` block of `word` is a permutation.
    pub fn new(n: usize, word: Vec<usize>) -> Result<Self> {
        if n == 0 || word.is_empty() || !word.len().is_multiple_of(n) {
            return Err(VecPartError::MalformedWord(format!(
                "length {} is not a positive multiple of n = {n}",
                word.len()
            )));
        }
        for (i, perm) in word.chunks(n).enumerate() {
            let mut seen = vec![false; n + 1];
            for &v in perm {
                if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                    return Err(VecPartError::MalformedWord(format!(
                        "block {} ({perm:?}) is not a permutation of [{n}]",
                        i + 1
                    )));
                }
            }
        }
        Ok(Self { n, word })
    }

    pub fn from_permutations(perms: &[&[usize]]) -> Result<Self> {
        let n = perms.first().map_or(0, |p| p.len());
        Self::new(n, perms.concat())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.word.len() / self.n
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.word
    }

    /// Labeling `i` (1-based) as a permutation.
    pub fn permutation(&self, i: usize) -> &[usize] {
        &self.word[(i - 1) * self.n..i * self.n]
    }

    /// Entry for element `k` in labeling `i`, both 1-based.
    pub fn get(&self, k: usize, i: usize) -> usize {
        self.word[(i - 1) * self.n + k - 1]
    }

    /// The atom itself as a vector partition.
    pub fn to_vector_partition(&self) -> VectorPartition {
        let blocks = (1..=self.n).map(super::IntSet::singleton).collect();
        let labels = (1..=self.s())
            .map(|i| {
                self.permutation(i)
                    .iter()
                    .map(|&v| super::IntSet::singleton(v))
                    .collect()
            })
            .collect();
        VectorPartition::new(self.n, blocks, labels).expect("atom words are valid atoms")
    }
}

impl fmt::Display for AtomWord {
    /// `21534867` for one labeling, `(24135)(41253)` for several; entries
    /// are comma separated once `n >= 10`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.s();
        let sep = if self.n >= 10 { "," } else { "" };
        for i in 1..=s {
            let body = self
                .permutation(i)
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(sep);
            if s == 1 {
                write!(f, "{body}")?;
            } else {
                write!(f, "({body})")?;
            }
        }
        Ok(())
    }
}

/// The lexicographically least atom below `x`: inside each block, the
/// `a`-th smallest element receives the `a`-th smallest element of its
/// label.
pub fn atom_word(x: &VectorPartition) -> Result<AtomWord> {
    if x.is_bottom() {
        return Err(VecPartError::BottomHasNoAtom);
    }
    let n = x.n();
    let mut word = vec![0; n * x.s()];
    for i in 0..x.s() {
        for (block, label) in x.blocks().iter().zip(x.labels(i)) {
            for (k, j) in block.iter().zip(label.iter()) {
                word[i * n + k - 1] = j;
            }
        }
    }
    Ok(AtomWord { n, word })
}

/// 1-based position of `a` among all `(n!)^s` atom words in lexicographic
/// order. Each permutation is ranked in the factorial number system and the
/// ranks are combined as digits in base `n!`.
pub fn atom_lex_rank(a: &AtomWord) -> BigUint {
    let n = a.n;
    let base: BigUint = (1..=n).map(BigUint::from).product();
    let mut rank = BigUint::default();
    for i in 1..=a.s() {
        rank = rank * &base + permutation_rank(a.permutation(i));
    }
    rank + BigUint::one()
}

/// 0-based lexicographic rank of a permutation of `[n]`.
fn permutation_rank(perm: &[usize]) -> BigUint {
    let n = perm.len();
    let mut used = vec![false; n + 1];
    let mut rank = BigUint::default();
    for (pos, &v) in perm.iter().enumerate() {
        let smaller = (1..v).filter(|&u| !used[u]).count();
        used[v] = true;
        // Horner form of sum smaller_pos * (n - 1 - pos)!
        rank = rank * BigUint::from(n - pos) + BigUint::from(smaller);
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn vp(text: &str) -> VectorPartition {
        VectorPartition::parse(text, None).unwrap()
    }

    #[test]
    fn atom_of_an_eight_element_partition() {
        let x = vp("{1,4,8}{2,3,7}{5,6}|{2,3,7}{1,5,6}{4,8}");
        assert_eq!(atom_word(&x).unwrap().to_string(), "21534867");
    }

    #[test]
    fn atom_of_chain_element_with_two_labelings() {
        let c2 = vp("{1}{2}{3}{4,5}|{2}{4}{1}{3,5}|{4}{1}{2}{3,5}");
        assert_eq!(atom_word(&c2).unwrap().to_string(), "(24135)(41235)");
        let top = VectorPartition::top(5, 2).unwrap();
        assert_eq!(atom_word(&top).unwrap().to_string(), "(12345)(12345)");
        let bottom = VectorPartition::bottom(5, 2).unwrap();
        assert_eq!(
            atom_word(&bottom).unwrap_err(),
            VecPartError::BottomHasNoAtom
        );
    }

    #[test]
    fn lex_ranks_of_known_words() {
        let id = AtomWord::new(4, vec![1, 2, 3, 4, 1, 2, 3, 4]).unwrap();
        assert_eq!(atom_lex_rank(&id), BigUint::from(1u32));
        let w = AtomWord::new(5, vec![5, 4, 1, 3, 2]).unwrap();
        assert_eq!(atom_lex_rank(&w), BigUint::from(116u32));
        let w = AtomWord::from_permutations(&[&[2, 4, 1, 3, 5], &[4, 1, 2, 5, 3]]).unwrap();
        assert_eq!(atom_lex_rank(&w), BigUint::from(4394u32));
    }

    #[test]
    fn rank_is_position_in_sorted_list() {
        // Brute-force oracle: list every word, sort, compare positions.
        for (n, s) in [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (4, 1)] {
            let perms: Vec<Vec<usize>> = (1..=n).permutations(n).collect();
            let mut words: Vec<Vec<usize>> = (0..s)
                .map(|_| perms.clone())
                .multi_cartesian_product()
                .map(|ps| ps.concat())
                .collect();
            words.sort();
            for (pos, w) in words.into_iter().enumerate() {
                let a = AtomWord::new(n, w).unwrap();
                assert_eq!(atom_lex_rank(&a), BigUint::from(pos + 1), "{a}");
            }
        }
    }

    #[test]
    fn malformed_words() {
        assert!(AtomWord::new(3, vec![1, 2, 2]).is_err());
        assert!(AtomWord::new(3, vec![1, 2]).is_err());
        assert!(AtomWord::new(2, vec![1, 3]).is_err());
        assert!(AtomWord::new(0, vec![]).is_err());
    }

    #[test]
    fn big_words_do_not_overflow() {
        let w = AtomWord::new(30, (1..=30).rev().collect()).unwrap();
        let fact: BigUint = (1..=30u32).map(BigUint::from).product();
        assert_eq!(atom_lex_rank(&w), fact);
        assert_eq!(w.to_string().split(',').count(), 30);
    }
}
