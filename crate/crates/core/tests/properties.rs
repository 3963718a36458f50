use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use partition_shelling::spherecount::{recursion_b_total, CountTable};
use partition_shelling::vecpart::{
    atom_lex_rank, atom_word, build_pi, AtomWord, RawVectorPartition,
};
use partition_shelling::{IntSet, VectorPartition};
use proptest::prelude::*;

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn bell(m: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 1..m {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            next.push(next.last().unwrap() + v);
        }
        row = next;
    }
    *row.last().unwrap()
}

const SMALL: [(usize, usize); 5] = [(2, 1), (3, 1), (2, 2), (4, 1), (3, 2)];

#[test]
fn maximal_chain_count_formula() {
    for (n, s) in SMALL {
        let p = build_pi(n, s, 10_000).unwrap();
        let count = p
            .poset()
            .count_maximal_chains(p.poset().bottom(), p.poset().top())
            .unwrap();
        let expected = (factorial(n).pow(s as u32) * factorial(n) * factorial(n - 1)) >> (n - 1);
        assert_eq!(count, expected, "({n},{s})");
    }
}

#[test]
fn mobius_sums_vanish_on_every_interval() {
    let p = build_pi(3, 2, 10_000).unwrap();
    let poset = p.poset();
    for x in 0..poset.len() {
        for y in poset.up_set(x).ones().filter(|&y| y != x) {
            let row = poset.mobius_row(x, y).unwrap();
            let sum: BigInt = row.iter().map(|(_, m)| m).sum();
            assert_eq!(sum, BigInt::from(0), "[{x}, {y}]");
        }
    }
}

#[test]
fn upper_intervals_are_partition_lattices() {
    for (n, s) in [(3, 1), (4, 1), (3, 2)] {
        let p = build_pi(n, s, 10_000).unwrap();
        let poset = p.poset();
        for x in (0..poset.len()).filter(|&x| x != poset.bottom()) {
            let m = p.element(x).blocks().len();
            let size = poset.interval(x, poset.top()).unwrap().len();
            assert_eq!(size, bell(m));
            let mu = poset.mobius(x, poset.top()).unwrap();
            let sign = if m % 2 == 1 { 1 } else { -1 };
            assert_eq!(
                mu,
                BigInt::from(factorial(m - 1)) * sign,
                "({n},{s}) x = {}",
                p.element(x)
            );
        }
    }
}

#[test]
fn hall_and_euler_poincare() {
    for (n, s) in SMALL {
        let p = build_pi(n, s, 10_000).unwrap();
        let poset = p.poset();
        let complex = poset.order_complex().unwrap();
        let chi = complex.reduced_euler_characteristic();
        let alternating: i64 = complex
            .reduced_betti_numbers()
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum();
        assert_eq!(chi, alternating, "({n},{s})");
        assert_eq!(
            poset.mobius(poset.bottom(), poset.top()).unwrap(),
            BigInt::from(chi)
        );
    }
}

#[test]
fn atom_word_is_least_atom_below() {
    for (n, s) in SMALL {
        let p = build_pi(n, s, 10_000).unwrap();
        let poset = p.poset();
        for x in (0..poset.len()).filter(|&x| x != poset.bottom()) {
            let least = poset
                .down_set(x)
                .ones()
                .filter(|&a| p.element(a).is_atom())
                .map(|a| atom_word(p.element(a)).unwrap())
                .min()
                .unwrap();
            assert_eq!(atom_word(p.element(x)).unwrap(), least);
        }
    }
}

#[test]
fn single_labeling_counts_match_trees_far_out() {
    let mut t = CountTable::new();
    for n in 1..=40 {
        assert_eq!(t.total(n, 1), t.nonambiguous(n - 1));
    }
    assert_eq!(recursion_b_total(6, 1), BigUint::from(9460u32));
}

fn element() -> impl Strategy<Value = VectorPartition> {
    (1usize..=7, 1usize..=3).prop_flat_map(|(n, s)| {
        let perm: Vec<usize> = (1..=n).collect();
        (
            Just(n),
            prop::collection::vec(0..n, n),
            prop::collection::vec(Just(perm).prop_shuffle(), s),
        )
            .prop_map(|(n, assignment, perms)| {
                let groups = (1..=n).into_group_map_by(|&e| assignment[e - 1]);
                let blocks: Vec<IntSet> = groups
                    .into_iter()
                    .sorted()
                    .map(|(_, members)| members.into_iter().collect())
                    .collect();
                let labels = perms
                    .iter()
                    .map(|perm| {
                        let mut at = 0;
                        blocks
                            .iter()
                            .map(|b| {
                                let label: IntSet =
                                    perm[at..at + b.len()].iter().copied().collect();
                                at += b.len();
                                label
                            })
                            .collect()
                    })
                    .collect();
                VectorPartition::new(n, blocks, labels).unwrap()
            })
    })
}

fn atom_words(max_n: usize) -> impl Strategy<Value = (AtomWord, AtomWord)> {
    (1usize..=max_n, 1usize..=3).prop_flat_map(|(n, s)| {
        let perm: Vec<usize> = (1..=n).collect();
        let word = prop::collection::vec(Just(perm).prop_shuffle(), s)
            .prop_map(move |ps| AtomWord::new(n, ps.concat()).unwrap());
        (word.clone(), word)
    })
}

proptest! {
    #[test]
    fn text_and_json_round_trip(x in element()) {
        let text = x.to_string();
        prop_assert_eq!(&VectorPartition::parse(&text, None).unwrap(), &x);
        let json = serde_json::to_string(&x.to_raw()).unwrap();
        let raw: RawVectorPartition = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&VectorPartition::canonicalize(&raw).unwrap(), &x);
    }

    #[test]
    fn atom_word_lies_below(x in element()) {
        let a = atom_word(&x).unwrap().to_vector_partition();
        prop_assert!(a.is_atom());
        prop_assert!(a.is_leq(&x).unwrap());
        prop_assert!(VectorPartition::bottom(x.n(), x.s()).unwrap().is_leq(&x).unwrap());
    }

    #[test]
    fn merges_are_covers(x in element(), a in 0usize..7, b in 0usize..7) {
        let m = x.blocks().len();
        prop_assume!(m >= 2);
        let (a, b) = (a % m, b % m);
        prop_assume!(a != b);
        let y = x.merge(a, b);
        prop_assert!(x.is_cover(&y).unwrap());
        prop_assert!(!y.is_leq(&x).unwrap());
        prop_assert_eq!(y.rank(), x.rank() + 1);
    }

    #[test]
    fn atom_rank_is_monotone((u, v) in atom_words(12)) {
        let (ru, rv) = (atom_lex_rank(&u), atom_lex_rank(&v));
        prop_assert_eq!(u.cmp(&v), ru.cmp(&rv));
        prop_assert!(ru >= BigUint::from(1u32));
        prop_assert!(ru <= factorial(u.n()).pow(u.s() as u32));
    }
}
