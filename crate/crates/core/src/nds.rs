//! Non-dominated sorting.

use alloc::vec::Vec;

use crate::genotype::FitnessVector;
use crate::omm::strictly_dominates;

/// Layers `F^1, F^2, …` of a pool, as indices into it. Each layer is sorted
/// ascending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrontPartition {
    fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    pub fn fronts(&self) -> &[Vec<usize>] {
        &self.fronts
    }

    pub fn len(&self) -> usize {
        self.fronts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fronts.is_empty()
    }

    pub fn first(&self) -> &[usize] {
        self.fronts.first().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Members of fronts `0..critical`, the part that survives intact.
    pub fn prefix(&self, critical: usize) -> Vec<usize> {
        self.fronts[..critical].iter().flatten().copied().collect()
    }

    /// Rank (0-based front index) of every pool member.
    pub fn ranks(&self, pool_len: usize) -> Vec<usize> {
        let mut ranks = alloc::vec![usize::MAX; pool_len];
        for (r, front) in self.fronts.iter().enumerate() {
            for &i in front {
                ranks[i] = r;
            }
        }
        ranks
    }
}

/// Fast non-dominated sort: domination counts plus dominated lists.
/// Identical vectors do not dominate each other and share a layer.
pub fn non_dominated_sort<T: AsRef<FitnessVector>>(pool: &[T]) -> FrontPartition {
    assert!(!pool.is_empty(), "cannot sort an empty pool");
    let len = pool.len();
    let mut dominated_by_count = alloc::vec![0usize; len];
    let mut dominates_list: Vec<Vec<usize>> = alloc::vec![Vec::new(); len];
    for i in 0..len {
        for j in i + 1..len {
            let (a, b) = (pool[i].as_ref(), pool[j].as_ref());
            if strictly_dominates(a, b) {
                dominates_list[i].push(j);
                dominated_by_count[j] += 1;
            } else if strictly_dominates(b, a) {
                dominates_list[j].push(i);
                dominated_by_count[i] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..len).filter(|&i| dominated_by_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominates_list[i] {
                dominated_by_count[j] -= 1;
                if dominated_by_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(core::mem::replace(&mut current, next));
    }
    FrontPartition { fronts }
}

/// The 0-based index `i*` of the first front whose cumulative size reaches
/// `mu`. Panics if the whole pool is smaller than `mu`.
pub fn critical_front_index(partition: &FrontPartition, mu: usize) -> usize {
    let mut total = 0;
    for (i, front) in partition.fronts.iter().enumerate() {
        total += front.len();
        if total >= mu {
            return i;
        }
    }
    panic!("pool of {total} members cannot fill a population of {mu}");
}
