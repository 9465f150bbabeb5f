//! NSGA-II survival with the classical crowding distance.

use alloc::vec::Vec;

use crate::genotype::FitnessVector;
use crate::nds::{critical_front_index, non_dominated_sort, FrontPartition};
use crate::population::Population;
use crate::RunRng;

/// Crowding distance of every member of one front.
///
/// Per objective the front is ordered by (value, whole vector, position);
/// the first and last member get `∞` and every interior member adds the
/// gap between its neighbours divided by the objective's range. Objectives
/// with zero range add nothing to interior members. When several identical
/// vectors share the top end, their run is reversed so that the boundary is
/// always the earliest of them, at both ends and in every objective.
pub fn crowding_distance<T: AsRef<FitnessVector>>(front: &[T]) -> Vec<f64> {
    assert!(!front.is_empty(), "crowding distance of an empty front");
    let len = front.len();
    let m = front[0].as_ref().len();
    let mut distance = alloc::vec![0.0f64; len];
    if len <= 2 {
        distance.iter_mut().for_each(|d| *d = f64::INFINITY);
        return distance;
    }
    let mut order: Vec<usize> = (0..len).collect();
    for j in 0..m {
        let value = |i: usize| front[i].as_ref()[j];
        order.sort_by(|&a, &b| {
            value(a)
                .cmp(&value(b))
                .then_with(|| front[a].as_ref().cmp(front[b].as_ref()))
                .then(a.cmp(&b))
        });
        let top = front[order[len - 1]].as_ref();
        let run = order
            .iter()
            .rev()
            .take_while(|&&i| front[i].as_ref() == top)
            .count();
        order[len - run..].reverse();

        let (lo, hi) = (value(order[0]), value(order[len - 1]));
        distance[order[0]] = f64::INFINITY;
        distance[order[len - 1]] = f64::INFINITY;
        if hi == lo {
            continue;
        }
        let range = f64::from(hi - lo);
        for k in 1..len - 1 {
            let gap = f64::from(value(order[k + 1]) - value(order[k - 1]));
            distance[order[k]] += gap / range;
        }
    }
    distance
}

pub(crate) fn select_survivors(
    pool: &Population,
    mu: usize,
    rng: &mut RunRng,
) -> (Vec<usize>, FrontPartition) {
    assert!(
        pool.len() >= mu && mu > 0,
        "pool of {} cannot fill {mu}",
        pool.len()
    );
    let partition = non_dominated_sort(pool.members());
    let critical = critical_front_index(&partition, mu);
    let mut survivors = partition.prefix(critical);
    let slots = mu - survivors.len();
    let front = &partition.fronts()[critical];
    if slots == front.len() {
        survivors.extend_from_slice(front);
        return (survivors, partition);
    }

    let members: Vec<&FitnessVector> = front.iter().map(|&i| pool[i].fitness()).collect();
    let crowding = crowding_distance(&members);
    let mut order: Vec<usize> = (0..front.len()).collect();
    // random order among equal crowding distances
    rng.shuffle(&mut order);
    order.sort_by(|&a, &b| crowding[b].total_cmp(&crowding[a]));
    survivors.extend(order[..slots].iter().map(|&pos| front[pos]));
    (survivors, partition)
}

/// Lower fronts whole, then the critical front by descending crowding
/// distance.
pub fn nsga2_survival(pool: &Population, mu: usize, rng: &mut RunRng) -> Population {
    let (survivors, _) = select_survivors(pool, mu, rng);
    pool.select(survivors)
}
