//! Finite simplicial complexes given by facets, with reduced homology over
//! the two-element field and a shelling-order checker.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("facet {0} is contained in facet {1}")]
    NestedFacets(usize, usize),
    #[error("facet order is not a permutation of 0..{0}")]
    InvalidOrder(usize),
}

/// A simplicial complex stored by its facets. Every complex contains the
/// empty face; a complex with no facets is `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<Vec<usize>>,
    vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShellingReport {
    pub valid: bool,
    /// Position in the order (0-based) of the first facet that breaks the
    /// shelling condition.
    pub failing_index: Option<usize>,
    /// Positions (0-based) of facets whose whole boundary lies in the union
    /// of earlier facets.
    pub homology_facets: Vec<usize>,
}

impl SimplicialComplex {
    /// Builds a complex from a facet list, keeping the given order. Vertex
    /// lists are sorted; repeated facets are rejected as nested.
    pub fn from_facets(facets: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        let mut by_vertex: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, f) in facets.iter().enumerate() {
            for &v in f {
                by_vertex.entry(v).or_default().push(i);
            }
        }
        for (i, f) in facets.iter().enumerate() {
            let candidates: Vec<usize> = match f.first() {
                Some(v) => by_vertex[v].clone(),
                None => (0..facets.len()).collect(),
            };
            for j in candidates {
                if j != i && is_subset(f, &facets[j]) {
                    return Err(ComplexError::NestedFacets(i, j));
                }
            }
        }
        let vertices = facets.iter().flatten().copied().sorted().dedup().collect();
        Ok(Self { facets, vertices })
    }

    pub fn empty() -> Self {
        Self {
            facets: Vec::new(),
            vertices: Vec::new(),
        }
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Dimension of the largest facet; `-1` for `{∅}`.
    pub fn dimension(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().map(Vec::len).all_equal()
    }

    /// All nonempty faces grouped by dimension, each group sorted.
    pub fn faces_by_dimension(&self) -> Vec<Vec<Vec<usize>>> {
        let top = self.dimension();
        if top < 0 {
            return Vec::new();
        }
        let mut sets: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); top as usize + 1];
        for f in &self.facets {
            for size in 1..=f.len() {
                for face in f.iter().copied().combinations(size) {
                    sets[size - 1].insert(face);
                }
            }
        }
        sets.into_iter()
            .map(|s| s.into_iter().sorted().collect())
            .collect()
    }

    /// `f_0, f_1, ...` face counts.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dimension().iter().map(Vec::len).collect()
    }

    /// `sum_d (-1)^d f_d - 1`, so the complex `{∅}` has value `-1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum::<i64>()
            - 1
    }

    /// Reduced Betti numbers over GF(2) for dimensions `-1..=dim`; entry `k`
    /// holds dimension `k - 1`.
    pub fn reduced_betti_numbers(&self) -> Vec<usize> {
        let faces = self.faces_by_dimension();
        // Chain group sizes including C_{-1} spanned by the empty face.
        let mut sizes = vec![1usize];
        sizes.extend(faces.iter().map(Vec::len));
        // ranks[k] = rank of the boundary C_{k-1} -> C_{k-2}; ranks[0] = 0.
        let mut ranks = vec![0usize; sizes.len() + 1];
        if !faces.is_empty() {
            ranks[1] = 1;
        }
        for d in 1..faces.len() {
            let index: HashMap<&[usize], usize> = faces[d - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect();
            let columns: Vec<Vec<usize>> = faces[d]
                .iter()
                .map(|face| {
                    let mut col: Vec<usize> = (0..face.len())
                        .map(|skip| {
                            let sub: Vec<usize> = face
                                .iter()
                                .enumerate()
                                .filter(|&(i, _)| i != skip)
                                .map(|(_, &v)| v)
                                .collect();
                            index[sub.as_slice()]
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            ranks[d + 1] = gf2_rank(columns);
        }
        (0..sizes.len())
            .map(|k| sizes[k] - ranks[k] - ranks[k + 1])
            .collect()
    }

    /// Reduced Betti number in dimension `d` (`d >= -1`).
    pub fn betti(&self, d: isize) -> usize {
        if d < -1 {
            return 0;
        }
        self.reduced_betti_numbers()
            .get((d + 1) as usize)
            .copied()
            .unwrap_or(0)
    }

    /// Checks that `order` is a shelling: each facet after the first meets
    /// the earlier ones in a pure subcomplex of codimension one in that
    /// facet. A 0-dimensional facet meets earlier facets in `{∅}`, which is
    /// accepted.
    pub fn verify_shelling(&self, order: &[usize]) -> Result<ShellingReport, ComplexError> {
        let count = self.facets.len();
        if order.len() != count || order.iter().copied().sorted().ne(0..count) {
            return Err(ComplexError::InvalidOrder(count));
        }
        // Earliest position at which each codimension-one face appears.
        let mut first_seen: HashMap<Vec<usize>, usize> = HashMap::new();
        for (pos, &fi) in order.iter().enumerate() {
            for ridge in ridges(&self.facets[fi]) {
                first_seen.entry(ridge).or_insert(pos);
            }
        }
        let mut by_vertex: HashMap<usize, Vec<usize>> = HashMap::new();

        let mut report = ShellingReport {
            valid: true,
            failing_index: None,
            homology_facets: Vec::new(),
        };
        for (pos, &fi) in order.iter().enumerate() {
            let facet = &self.facets[fi];
            // Vertices whose removal leaves a face of an earlier facet.
            let attached: Vec<usize> = facet
                .iter()
                .copied()
                .filter(|&v| {
                    let ridge: Vec<usize> = facet.iter().copied().filter(|&w| w != v).collect();
                    first_seen[&ridge] < pos
                })
                .collect();

            if pos > 0 {
                let mut ok = !attached.is_empty();
                if ok {
                    let earlier: HashSet<usize> = facet
                        .iter()
                        .flat_map(|v| by_vertex.get(v).into_iter().flatten().copied())
                        .collect();
                    ok = earlier.into_iter().all(|p| {
                        let other = &self.facets[order[p]];
                        attached.iter().any(|v| other.binary_search(v).is_err())
                    });
                }
                if !ok && report.valid {
                    report.valid = false;
                    report.failing_index = Some(pos);
                }
                if attached.len() == facet.len() {
                    report.homology_facets.push(pos);
                }
            }
            for &v in facet {
                by_vertex.entry(v).or_default().push(pos);
            }
        }
        Ok(report)
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn ridges(facet: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..facet.len()).map(move |skip| {
        facet
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// Rank over GF(2) of a matrix given by sorted sparse columns.
fn gf2_rank(columns: Vec<Vec<usize>>) -> usize {
    let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut rank = 0;
    for mut col in columns {
        while let Some(&low) = col.last() {
            match pivots.get(&low) {
                Some(other) => col = symmetric_difference(&col, other),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            pivots.insert(low, col);
            rank += 1;
        }
    }
    rank
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
