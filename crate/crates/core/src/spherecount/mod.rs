//! Counting the spheres: decreasing maximal chains, the recursion over the
//! index of the top cover, and the complete non-ambiguous tree numbers.
//!
//! For `n >= 2` the decreasing maximal chains split by the `i` component of
//! the label on their top cover, and the class sizes satisfy
//!
//! ```text
//! B(n,s,i) = sum_{a=1}^{n-1} sum_{i' >= i} B(a,s,i') B(n-a,s)
//!            * C(n-1,a-1)^i * C(n-1,a) * C(n,a)^(s-i)
//! ```
//!
//! with `B(1,s) = 1` and, for `a = 1`, the inner sum replaced by the single
//! term `B(1,s)`. The total is `B(n,s) = sum_i B(n,s,i)`.

mod certificate;
mod chains;
mod decompose;

pub use certificate::{certificate, Certificate, CountMethod};
pub use chains::{
    classify_by_top_index, decreasing_chains_by_filter, decreasing_chains_top_down,
    enumerate_decreasing_chains, validate_decreasing_chain,
};
pub use decompose::{decompose_chain, recompose, Decomposition};

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::labeling::LabelError;
use crate::poset::PosetError;
use crate::vecpart::VecPartError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SphereError {
    #[error("index i = {i} outside 1..={s}")]
    InvalidIndex { i: usize, s: usize },
    #[error("needs n >= 2, got n = {0}")]
    TooSmall(usize),
    #[error("not a maximal chain: {0}")]
    NotMaximal(String),
    #[error("chain is not decreasing at cover {0}")]
    NotDecreasing(usize),
    #[error("incompatible decomposition data: {0}")]
    IncompatibleData(String),
    #[error("enumerations disagree: {0}")]
    Mismatch(String),
    #[error("{what} limit exceeded: need {required}, budget is {limit}")]
    ResourceLimit {
        what: &'static str,
        limit: u64,
        required: BigUint,
    },
    #[error(transparent)]
    VecPart(#[from] VecPartError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

impl SphereError {
    /// True for budget failures from any layer.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            SphereError::ResourceLimit { .. }
                | SphereError::VecPart(VecPartError::ResourceLimit { .. })
                | SphereError::Poset(PosetError::ResourceLimit { .. })
                | SphereError::Label(LabelError::Poset(PosetError::ResourceLimit { .. }))
        )
    }
}

pub type Result<T> = std::result::Result<T, SphereError>;

fn choose(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    binomial(BigUint::from(n), BigUint::from(k))
}

/// Memoized exact values of the recursion and of the non-ambiguous tree
/// numbers.
#[derive(Debug, Clone, Default)]
pub struct CountTable {
    by_index: HashMap<(usize, usize, usize), BigUint>,
    totals: HashMap<(usize, usize), BigUint>,
    nonambiguous: Vec<BigUint>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of decreasing maximal chains of the `(n, s)` poset whose top
    /// cover has index `i`. The classes only exist for `n >= 2`; at `n = 1`
    /// the sum is empty and the value is 0.
    pub fn by_index(&mut self, n: usize, s: usize, i: usize) -> Result<BigUint> {
        if i == 0 || i > s {
            return Err(SphereError::InvalidIndex { i, s });
        }
        if let Some(v) = self.by_index.get(&(n, s, i)) {
            return Ok(v.clone());
        }
        let mut sum = BigUint::zero();
        for alpha in 1..n {
            let left = if alpha == 1 {
                BigUint::one()
            } else {
                let mut acc = BigUint::zero();
                for ip in i..=s {
                    acc += self.by_index(alpha, s, ip)?;
                }
                acc
            };
            let right = self.total(n - alpha, s);
            let weight = choose(n - 1, alpha - 1).pow(i as u32)
                * choose(n - 1, alpha)
                * choose(n, alpha).pow((s - i) as u32);
            sum += left * right * weight;
        }
        self.by_index.insert((n, s, i), sum.clone());
        Ok(sum)
    }

    /// Total number of decreasing maximal chains, i.e. the number of
    /// `(n-2)`-spheres.
    pub fn total(&mut self, n: usize, s: usize) -> BigUint {
        if n <= 1 {
            return BigUint::one();
        }
        if let Some(v) = self.totals.get(&(n, s)) {
            return v.clone();
        }
        let mut sum = BigUint::zero();
        for i in 1..=s {
            sum += self.by_index(n, s, i).expect("index in range");
        }
        self.totals.insert((n, s), sum.clone());
        sum
    }

    /// `b_m` from `b_0 = 1`, `b_{m+1} = sum_{i+j=m} C(m+1,i) C(m+1,j) b_i b_j`.
    pub fn nonambiguous(&mut self, m: usize) -> BigUint {
        if self.nonambiguous.is_empty() {
            self.nonambiguous.push(BigUint::one());
        }
        while self.nonambiguous.len() <= m {
            let next = self.nonambiguous.len();
            let b = &self.nonambiguous;
            let value = (0..next)
                .map(|i| choose(next, i) * choose(next, next - 1 - i) * &b[i] * &b[next - 1 - i])
                .sum();
            self.nonambiguous.push(value);
        }
        self.nonambiguous[m].clone()
    }
}

pub fn recursion_b(n: usize, s: usize, i: usize) -> Result<BigUint> {
    CountTable::new().by_index(n, s, i)
}

pub fn recursion_b_total(n: usize, s: usize) -> BigUint {
    CountTable::new().total(n, s)
}

pub fn nonambiguous_b(m: usize) -> BigUint {
    CountTable::new().nonambiguous(m)
}
