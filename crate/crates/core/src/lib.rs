//! Vector partition posets, their EL-labeling and the spheres of the order
//! complex.
//!
//! * [`poset`]: bounded graded posets, maximal chains, Möbius function,
//!   order complexes, GF(2) homology and shelling verification.
//! * [`vecpart`]: vector partitions of `[n]` with `s` labelings, the poset
//!   they form, atom words and atom ranks.
//! * [`labeling`]: the partition-lattice labeling `max(B1 ∪ B2)`, the
//!   triple-valued labeling of the vector partition poset, EL verification
//!   and the lexicographic shelling order.
//! * [`spherecount`]: decreasing maximal chains, the counting recursion and
//!   the left/right decomposition of decreasing chains.

pub mod labeling;
pub mod poset;
pub mod spherecount;
pub mod vecpart;

pub use labeling::{EdgeLabel, ElReport, Sabotage};
pub use poset::{Poset, PosetError, ShellingReport, SimplicialComplex};
pub use spherecount::{CountTable, Decomposition, SphereError};
pub use vecpart::{AtomWord, IntSet, SetPartition, VecPartError, VectorPartition, VectorPoset};

/// Resource limits for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_elements: u64,
    pub max_chains: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_elements: 1_000_000,
            max_chains: 10_000_000,
        }
    }
}
