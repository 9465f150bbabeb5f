//! NSGA-III survival selection.
//!
//! One call of [`nsga3_survival`] performs, on the merged pool `R_t`:
//!
//! 1. non-dominated sorting and the split into the surviving prefix `Y_t`
//!    and the critical front `F^{i*}`;
//! 2. normalization `f^n_j = (f_j - y^min_j) / (y^nad_j - y^min_j)` with the
//!    ideal point taken over every search point seen so far and the nadir
//!    floored at `eps_nad`;
//! 3. association of each member of `Y_t ∪ F^{i*}` with the reference point
//!    whose ray through the origin is closest (perpendicular distance);
//! 4. niching: repeatedly serve the active reference point with the fewest
//!    selected associates, taking its unselected critical-front member
//!    nearest to the reference point itself.
//!
//! All ties are broken uniformly at random.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::genotype::FitnessVector;
use crate::nds::{critical_front_index, non_dominated_sort, FrontPartition};
use crate::population::Population;
use crate::{Error, Result, RunRng};

/// Largest reference point set the crate will build.
pub const MAX_REFERENCE_POINTS: u128 = 10_000_000;

/// The simplex lattice `{(a_1/p, …, a_m/p) : a_i ≥ 0, Σ a_i = p}` in
/// lexicographic order of `(a_1, …, a_m)`.
///
/// Points are stored as their integer numerators `a_i`; the common
/// denominator is [`resolution`](Self::resolution).
#[derive(Clone, PartialEq, Debug)]
pub struct ReferencePointSet {
    m: usize,
    p: u32,
    numerators: Vec<u32>,
    directions: Vec<f64>,
    norms_sq: Vec<f64>,
}

impl ReferencePointSet {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn resolution(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.norms_sq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms_sq.is_empty()
    }

    /// Integer numerators `(a_1, …, a_m)` of point `i`.
    pub fn numerators(&self, i: usize) -> &[u32] {
        &self.numerators[i * self.m..(i + 1) * self.m]
    }

    /// Point `i` as reals on the unit simplex.
    pub fn coordinates(&self, i: usize) -> Vec<f64> {
        let p = f64::from(self.p);
        self.numerators(i)
            .iter()
            .map(|&a| f64::from(a) / p)
            .collect()
    }

    /// Position of the point with the given numerators.
    pub fn position(&self, numerators: &[u32]) -> Option<usize> {
        (0..self.len()).find(|&i| self.numerators(i) == numerators)
    }

    fn direction(&self, i: usize) -> &[f64] {
        &self.directions[i * self.m..(i + 1) * self.m]
    }

    /// Squared distance from `fn_` to the ray through point `i`.
    fn perpendicular_sq(&self, fn_: &[f64], i: usize) -> f64 {
        cross_norm_sq(fn_, self.direction(i)) / self.norms_sq[i]
    }

    /// Squared Euclidean distance from `fn_` to point `i` itself.
    fn point_distance_sq(&self, fn_: &[f64], i: usize) -> f64 {
        let p = f64::from(self.p);
        fn_.iter()
            .zip(self.numerators(i))
            .map(|(&f, &a)| {
                let d = f - f64::from(a) / p;
                d * d
            })
            .sum()
    }

    /// The smallest `p` with `p ≥ 2 m^{3/2} f_max`.
    pub fn default_resolution(m: usize, f_max: usize) -> u32 {
        libm::ceil(2.0 * libm::pow(m as f64, 1.5) * f_max as f64) as u32
    }
}

/// `Σ_{i<j} (u_i v_j - u_j v_i)^2 = |u|^2 |v|^2 - (u·v)^2`, computed without
/// cancellation.
fn cross_norm_sq(u: &[f64], v: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let c = u[i] * v[j] - u[j] * v[i];
            acc += c * c;
        }
    }
    acc
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Builds all `C(p + m - 1, m - 1)` lattice points.
pub fn generate_reference_points(m: usize, p: u32) -> Result<ReferencePointSet> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::ObjectiveCount(m));
    }
    if p == 0 {
        return Err(Error::ZeroResolution);
    }
    let size = binomial(u128::from(p) + m as u128 - 1, m as u128 - 1).unwrap_or(u128::MAX);
    if size > MAX_REFERENCE_POINTS {
        return Err(Error::TooLarge {
            what: "reference point set",
            size,
            limit: MAX_REFERENCE_POINTS,
        });
    }

    let mut numerators = Vec::with_capacity(size as usize * m);
    let mut current = alloc::vec![0u32; m];
    fill_compositions(&mut current, 0, p, &mut numerators);

    let directions: Vec<f64> = numerators.iter().map(|&a| f64::from(a)).collect();
    let norms_sq = directions
        .chunks(m)
        .map(|d| d.iter().map(|x| x * x).sum())
        .collect();
    Ok(ReferencePointSet {
        m,
        p,
        numerators,
        directions,
        norms_sq,
    })
}

fn fill_compositions(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<u32>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.extend_from_slice(current);
        return;
    }
    for a in 0..=remaining {
        current[pos] = a;
        fill_compositions(current, pos + 1, remaining - a, out);
    }
}

/// Distance from `fn_` to the line through the origin along `direction`.
pub fn perpendicular_distance(fn_: &[f64], direction: &[f64]) -> f64 {
    assert_eq!(fn_.len(), direction.len(), "dimension mismatch");
    let norm_sq: f64 = direction.iter().map(|x| x * x).sum();
    assert!(norm_sq > 0.0, "reference direction must be non-zero");
    libm::sqrt(cross_norm_sq(fn_, direction) / norm_sq)
}

/// Ideal and nadir bookkeeping for normalization.
///
/// `y_min` and `y_max` accumulate over every fitness vector ever passed to
/// [`update`](Self::update). The nadir is recomputed per generation as the
/// componentwise maximum over the first front, floored at `eps_nad`. The
/// floor takes precedence over `y_nad ≤ y_max`.
#[derive(Clone, PartialEq, Debug)]
pub struct NormalizationState {
    eps_nad: f64,
    y_min: Vec<u32>,
    y_max: Vec<u32>,
    y_nad: Vec<f64>,
    seen: bool,
    observed: Option<(f64, f64)>,
}

impl NormalizationState {
    pub fn new(m: usize, eps_nad: f64) -> Result<Self> {
        if !(eps_nad.is_finite() && eps_nad > 0.0) {
            return Err(Error::NadirThreshold(eps_nad));
        }
        Ok(Self {
            eps_nad,
            y_min: alloc::vec![u32::MAX; m],
            y_max: alloc::vec![0; m],
            y_nad: alloc::vec![eps_nad; m],
            seen: false,
            observed: None,
        })
    }

    /// A state that has already seen `y_min` and `y_max`.
    pub fn with_extremes(y_min: &[u32], y_max: &[u32], eps_nad: f64) -> Result<Self> {
        assert_eq!(y_min.len(), y_max.len(), "dimension mismatch");
        let mut state = Self::new(y_min.len(), eps_nad)?;
        state.y_min.copy_from_slice(y_min);
        state.y_max.copy_from_slice(y_max);
        state.seen = true;
        Ok(state)
    }

    pub fn eps_nad(&self) -> f64 {
        self.eps_nad
    }

    pub fn ideal(&self) -> &[u32] {
        &self.y_min
    }

    pub fn maxima(&self) -> &[u32] {
        &self.y_max
    }

    pub fn nadir(&self) -> &[f64] {
        &self.y_nad
    }

    /// Smallest and largest normalized component produced so far.
    pub fn observed_range(&self) -> Option<(f64, f64)> {
        self.observed
    }

    pub fn update<'a>(&mut self, fitness: impl IntoIterator<Item = &'a FitnessVector>) {
        for f in fitness {
            for (j, &v) in f.values().iter().enumerate() {
                self.y_min[j] = self.y_min[j].min(v);
                self.y_max[j] = self.y_max[j].max(v);
            }
            self.seen = true;
        }
    }

    pub fn set_nadir<'a>(&mut self, first_front: impl IntoIterator<Item = &'a FitnessVector>) {
        self.y_nad.iter_mut().for_each(|y| *y = self.eps_nad);
        for f in first_front {
            for (y, &v) in self.y_nad.iter_mut().zip(f.values()) {
                *y = y.max(f64::from(v));
            }
        }
    }

    /// Normalizes one vector. Denominators below 1 are raised to 1.
    pub fn normalize(&self, f: &FitnessVector) -> Vec<f64> {
        assert!(self.seen, "normalization before any update");
        f.values()
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                let low = f64::from(self.y_min[j]);
                let denom = (self.y_nad[j] - low).max(1.0);
                (f64::from(v) - low) / denom
            })
            .collect()
    }

    fn record(&mut self, values: &[f64]) {
        for &v in values {
            self.observed = Some(match self.observed {
                None => (v, v),
                Some((lo, hi)) => (lo.min(v), hi.max(v)),
            });
        }
    }
}

/// Folds the pool into the ideal/maximum history, recomputes the nadir from
/// `first_front` (indices into `pool`) and normalizes every pool member.
pub fn update_and_normalize<T: AsRef<FitnessVector>>(
    state: &mut NormalizationState,
    pool: &[T],
    first_front: &[usize],
) -> Vec<Vec<f64>> {
    state.update(pool.iter().map(AsRef::as_ref));
    state.set_nadir(first_front.iter().map(|&i| pool[i].as_ref()));
    let normalized: Vec<Vec<f64>> = pool.iter().map(|f| state.normalize(f.as_ref())).collect();
    for v in &normalized {
        state.record(v);
    }
    normalized
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Association {
    /// Index into the reference point set.
    pub point: usize,
    /// Perpendicular distance to the point's ray.
    pub distance: f64,
}

/// Associates each normalized vector with a reference point minimizing the
/// perpendicular distance. Exactly equal squared distances are ties. A tie is
/// broken uniformly at random once per distinct vector, on its first
/// occurrence, so identical vectors always share a reference point.
pub fn associate<V: AsRef<[f64]>>(
    normalized: &[V],
    rps: &ReferencePointSet,
    rng: &mut RunRng,
) -> Vec<Association> {
    let mut cache: BTreeMap<Vec<u64>, Association> = BTreeMap::new();
    normalized
        .iter()
        .map(|fn_| {
            let fn_ = fn_.as_ref();
            assert_eq!(fn_.len(), rps.m(), "dimension mismatch");
            let key: Vec<u64> = fn_.iter().map(|x| x.to_bits()).collect();
            *cache.entry(key).or_insert_with(|| {
                let mut best = f64::INFINITY;
                let mut ties = Vec::new();
                for i in 0..rps.len() {
                    let d = rps.perpendicular_sq(fn_, i);
                    if d < best {
                        best = d;
                        ties.clear();
                        ties.push(i);
                    } else if d == best {
                        ties.push(i);
                    }
                }
                Association {
                    point: rng.pick(&ties),
                    distance: libm::sqrt(best),
                }
            })
        })
        .collect()
}

/// A critical-front member as seen by the niching loop.
#[derive(Clone, Copy, Debug)]
pub struct NicheMember<'a> {
    /// Associated reference point.
    pub point: usize,
    pub normalized: &'a [f64],
}

/// The niching loop. `prefix_points` are the associated reference points of
/// the members of `Y_t`. Returns positions in `front` of the chosen
/// members, in selection order, so that `|Y_t| + result.len() == mu`.
///
/// Reference points without any candidate in `front` are never served, so
/// they are left out of the active set from the start; serving one would
/// only remove it again.
pub fn niching_select(
    front: &[NicheMember<'_>],
    prefix_points: &[usize],
    mu: usize,
    rps: &ReferencePointSet,
    rng: &mut RunRng,
) -> Vec<usize> {
    assert!(
        prefix_points.len() < mu,
        "the surviving prefix already fills the population"
    );
    let slots = mu - prefix_points.len();
    assert!(
        slots <= front.len(),
        "critical front cannot fill the population"
    );
    if slots == front.len() {
        return (0..front.len()).collect();
    }

    let mut rho: BTreeMap<usize, usize> = BTreeMap::new();
    for &r in prefix_points {
        *rho.entry(r).or_insert(0) += 1;
    }
    let mut niches: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (pos, member) in front.iter().enumerate() {
        niches.entry(member.point).or_default().push(pos);
    }
    let mut active: Vec<usize> = niches.keys().copied().collect();
    let mut selected = Vec::with_capacity(slots);
    let mut ties = Vec::new();

    loop {
        let count = |r: &usize| rho.get(r).copied().unwrap_or(0);
        let least = active
            .iter()
            .map(count)
            .min()
            .expect("active reference points exhausted");
        ties.clear();
        ties.extend((0..active.len()).filter(|&k| count(&active[k]) == least));
        let k = rng.pick(&ties);
        let r = active[k];

        let members = niches.get_mut(&r).expect("active point without niche");
        let mut best = f64::INFINITY;
        let mut nearest = Vec::new();
        for (slot, &pos) in members.iter().enumerate() {
            let d = rps.point_distance_sq(front[pos].normalized, r);
            if d < best {
                best = d;
                nearest.clear();
                nearest.push(slot);
            } else if d == best {
                nearest.push(slot);
            }
        }
        let slot = rng.pick(&nearest);
        selected.push(members.remove(slot));
        *rho.entry(r).or_insert(0) += 1;
        if selected.len() == slots {
            return selected;
        }
        if members.is_empty() {
            active.remove(k);
        }
    }
}

/// Survivor indices and the partition they were chosen from.
pub(crate) fn select_survivors(
    pool: &Population,
    mu: usize,
    rps: &ReferencePointSet,
    state: &mut NormalizationState,
    rng: &mut RunRng,
) -> (Vec<usize>, FrontPartition) {
    assert!(
        pool.len() >= mu && mu > 0,
        "pool of {} cannot fill {mu}",
        pool.len()
    );
    let members = pool.members();
    let partition = non_dominated_sort(members);
    let critical = critical_front_index(&partition, mu);
    let prefix = partition.prefix(critical);
    let front = &partition.fronts()[critical];

    let normalized = update_and_normalize(state, members, partition.first());

    let mut survivors = prefix.clone();
    if prefix.len() + front.len() == mu {
        survivors.extend_from_slice(front);
        return (survivors, partition);
    }

    let considered: Vec<&[f64]> = prefix
        .iter()
        .chain(front.iter())
        .map(|&i| normalized[i].as_slice())
        .collect();
    let associations = associate(&considered, rps, rng);
    let (prefix_assoc, front_assoc) = associations.split_at(prefix.len());
    let prefix_points: Vec<usize> = prefix_assoc.iter().map(|a| a.point).collect();
    let niche_members: Vec<NicheMember<'_>> = front
        .iter()
        .zip(front_assoc)
        .map(|(&i, a)| NicheMember {
            point: a.point,
            normalized: &normalized[i],
        })
        .collect();

    let chosen = niching_select(&niche_members, &prefix_points, mu, rps, rng);
    survivors.extend(chosen.into_iter().map(|pos| front[pos]));
    (survivors, partition)
}

/// Chooses the next population of size `mu` from the merged pool `R_t`:
/// the lower fronts whole, then the critical front by niching.
pub fn nsga3_survival(
    pool: &Population,
    mu: usize,
    rps: &ReferencePointSet,
    state: &mut NormalizationState,
    rng: &mut RunRng,
) -> Population {
    let (survivors, _) = select_survivors(pool, mu, rps, state, rng);
    pool.select(survivors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genotype::Genotype;
    use crate::population::Individual;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn lattice_examples() {
        let rps = generate_reference_points(2, 4).unwrap();
        assert_eq!(rps.len(), 5);
        let coords: Vec<Vec<f64>> = (0..5).map(|i| rps.coordinates(i)).collect();
        assert_eq!(
            coords,
            vec![
                vec![0.0, 1.0],
                vec![0.25, 0.75],
                vec![0.5, 0.5],
                vec![0.75, 0.25],
                vec![1.0, 0.0]
            ]
        );
        assert_eq!(generate_reference_points(4, 4).unwrap().len(), 35);
        let tiny = generate_reference_points(2, 1).unwrap();
        assert_eq!(
            (tiny.numerators(0), tiny.numerators(1)),
            (&[0, 1][..], &[1, 0][..])
        );
    }

    #[test]
    fn lattice_errors() {
        assert_eq!(
            generate_reference_points(3, 4),
            Err(Error::ObjectiveCount(3))
        );
        assert_eq!(generate_reference_points(2, 0), Err(Error::ZeroResolution));
        assert!(matches!(
            generate_reference_points(10, 1000),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn lattice_is_complete_and_ordered() {
        for (m, p) in [(2, 7), (4, 5), (6, 3)] {
            let rps = generate_reference_points(m, p).unwrap();
            // stars and bars
            assert_eq!(
                rps.len() as u128,
                binomial(u128::from(p) + m as u128 - 1, m as u128 - 1).unwrap()
            );
            for i in 0..rps.len() {
                assert_eq!(rps.numerators(i).iter().sum::<u32>(), p);
                if i > 0 {
                    assert!(rps.numerators(i - 1) < rps.numerators(i));
                }
            }
        }
    }

    #[test]
    fn default_resolution_values() {
        // ⌈4√2 · 32⌉ = ⌈181.02⌉
        assert_eq!(ReferencePointSet::default_resolution(2, 32), 182);
        assert_eq!(ReferencePointSet::default_resolution(4, 4), 64);
    }

    #[test]
    fn normalization_examples() {
        let mut state = NormalizationState::with_extremes(&[0, 0], &[4, 4], 4.0).unwrap();
        state.set_nadir([&FitnessVector::from([4, 4])]);
        let got = state.normalize(&FitnessVector::from([2, 2]));
        assert!(close(got[0], 0.5) && close(got[1], 0.5));

        let mut state = NormalizationState::with_extremes(&[1, 0], &[4, 4], 4.0).unwrap();
        state.set_nadir([&FitnessVector::from([3, 1])]);
        assert_eq!(state.nadir(), &[4.0, 4.0]);
        let got = state.normalize(&FitnessVector::from([3, 1]));
        assert!(close(got[0], 2.0 / 3.0) && close(got[1], 0.25));
    }

    #[test]
    fn normalization_with_full_nadir_floor_stays_in_unit_range() {
        let n = 12u32;
        let pool: Vec<FitnessVector> = (0..=n).map(|a| FitnessVector::from([a, n - a])).collect();
        let mut state = NormalizationState::new(2, f64::from(n)).unwrap();
        let all: Vec<usize> = (0..pool.len()).collect();
        for v in update_and_normalize(&mut state, &pool, &all) {
            assert!(v.iter().all(|&x| (0.0..=1.0).contains(&x)));
        }
        assert_eq!(state.observed_range(), Some((0.0, 1.0)));
    }

    #[test]
    fn normalization_floors_tiny_denominators() {
        let mut state = NormalizationState::with_extremes(&[3, 3], &[3, 3], 0.5).unwrap();
        state.set_nadir([&FitnessVector::from([3, 3])]);
        assert_eq!(
            state.normalize(&FitnessVector::from([3, 3])),
            vec![0.0, 0.0]
        );
        assert!(NormalizationState::new(2, 0.0).is_err());
    }

    #[test]
    fn history_is_cumulative() {
        let mut state = NormalizationState::new(2, 4.0).unwrap();
        state.update([&FitnessVector::from([2, 2])]);
        state.update([&FitnessVector::from([3, 1])]);
        assert_eq!(state.ideal(), &[2, 1]);
        assert_eq!(state.maxima(), &[3, 2]);
    }

    #[test]
    fn perpendicular_distance_examples() {
        assert!(close(perpendicular_distance(&[0.5, 0.5], &[1.0, 0.0]), 0.5));
        assert!(close(
            perpendicular_distance(&[0.6, 0.4], &[0.5, 0.5]),
            0.02f64.sqrt()
        ));
        assert_eq!(perpendicular_distance(&[0.25, 0.75], &[1.0, 3.0]), 0.0);
    }

    #[test]
    fn associate_examples() {
        let rps = generate_reference_points(2, 4).unwrap();
        let mut rng = RunRng::from_seed(1);
        let got = associate(&[[1.0, 0.0], [0.5, 0.5]], &rps, &mut rng);
        assert_eq!(rps.numerators(got[0].point), &[4, 0]);
        assert_eq!(got[0].distance, 0.0);
        assert_eq!(rps.numerators(got[1].point), &[2, 2]);
        assert_eq!(got[1].distance, 0.0);
    }

    #[test]
    fn associate_matches_linear_scan() {
        let rps = generate_reference_points(2, 9).unwrap();
        let mut rng = RunRng::from_seed(2);
        let mut checked = 0;
        for _ in 0..10_000 {
            let fn_ = [
                rng.index(1 << 20) as f64 / (1 << 20) as f64,
                rng.index(1 << 20) as f64 / (1 << 20) as f64,
            ];
            let dists: Vec<f64> = (0..rps.len())
                .map(|i| perpendicular_distance(&fn_, &rps.coordinates(i)))
                .collect();
            let mut order: Vec<usize> = (0..rps.len()).collect();
            order.sort_by(|&a, &b| dists[a].total_cmp(&dists[b]));
            if (dists[order[1]] - dists[order[0]]).abs() < 1e-9 {
                continue;
            }
            let got = associate(&[fn_], &rps, &mut rng);
            assert_eq!(got[0].point, order[0]);
            checked += 1;
        }
        assert!(checked > 9_000);
    }

    #[test]
    fn dyadic_lattice_points_sit_on_their_own_ray() {
        for (m, p) in [(2, 64), (4, 8)] {
            let rps = generate_reference_points(m, p).unwrap();
            let mut rng = RunRng::from_seed(1);
            let coords: Vec<Vec<f64>> = (0..rps.len()).map(|i| rps.coordinates(i)).collect();
            for (i, a) in associate(&coords, &rps, &mut rng).iter().enumerate() {
                assert_eq!(a.distance, 0.0);
                assert_eq!(rps.perpendicular_sq(&coords[i], i), 0.0);
            }
        }
    }

    #[test]
    fn identical_vectors_share_a_tied_point() {
        // (1/3, 1/3) lies exactly between 45/91 and 46/91
        let rps = generate_reference_points(2, 91).unwrap();
        let third = [1.0 / 3.0, 1.0 / 3.0];
        let mut seen = alloc::collections::BTreeSet::new();
        for seed in 0..64 {
            let got = associate(&[third; 6], &rps, &mut RunRng::from_seed(seed));
            assert!(got.iter().all(|a| a.point == got[0].point));
            seen.insert(rps.numerators(got[0].point)[0]);
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![45, 46]);
    }

    fn hand_instance() -> (ReferencePointSet, Vec<[f64; 2]>) {
        let rps = generate_reference_points(2, 4).unwrap();
        // A, B, C, D, E
        let fns = vec![[1.0, 0.0], [0.75, 0.25], [0.5, 0.5], [0.0, 1.0], [0.5, 0.5]];
        (rps, fns)
    }

    #[test]
    fn niching_serves_every_niche_before_a_second_pick() {
        let (rps, fns) = hand_instance();
        let (mut c_count, mut e_count) = (0, 0);
        for seed in 0..200 {
            let mut rng = RunRng::from_seed(seed);
            let assoc = associate(&fns, &rps, &mut rng);
            let members: Vec<NicheMember<'_>> = fns
                .iter()
                .zip(&assoc)
                .map(|(f, a)| NicheMember {
                    point: a.point,
                    normalized: f,
                })
                .collect();
            let mut got = niching_select(&members, &[], 4, &rps, &mut rng);
            got.sort_unstable();
            assert!(got == [0, 1, 2, 3] || got == [0, 1, 3, 4], "{got:?}");
            if got.contains(&2) {
                c_count += 1;
            } else {
                e_count += 1;
            }
        }
        assert!(c_count > 0 && e_count > 0);
    }

    #[test]
    fn niching_forced_cases() {
        let (rps, fns) = hand_instance();
        let members: Vec<NicheMember<'_>> = fns
            .iter()
            .enumerate()
            .map(|(i, f)| NicheMember {
                point: i.min(4),
                normalized: f,
            })
            .collect();
        let mut rng = RunRng::from_seed(0);
        assert_eq!(
            niching_select(&members, &[0, 1], 7, &rps, &mut rng),
            vec![0, 1, 2, 3, 4]
        );
        assert_eq!(
            niching_select(&members[..1], &[3, 3], 3, &rps, &mut rng),
            vec![0]
        );
    }

    #[test]
    fn niching_respects_prefix_counts() {
        let (rps, fns) = hand_instance();
        let assoc = [4, 3, 2, 0, 2];
        let members: Vec<NicheMember<'_>> = fns
            .iter()
            .zip(assoc)
            .map(|(f, point)| NicheMember {
                point,
                normalized: f,
            })
            .collect();
        // the prefix already occupies niches 4, 3 and 0; niche 2 is served first
        let mut rng = RunRng::from_seed(3);
        let got = niching_select(&members, &[4, 3, 0], 4, &rps, &mut rng);
        assert_eq!(got.len(), 1);
        assert!(got[0] == 2 || got[0] == 4);
    }

    #[test]
    fn survival_of_duplicates() {
        let problem = crate::OmmProblem::new(6, 2).unwrap();
        let pool: Population = (0..8)
            .map(|_| problem.individual(Genotype::parse("110100").unwrap()))
            .collect();
        let rps =
            generate_reference_points(2, ReferencePointSet::default_resolution(2, 6)).unwrap();
        let mut state = NormalizationState::new(2, 6.0).unwrap();
        let next = nsga3_survival(&pool, 4, &rps, &mut state, &mut RunRng::from_seed(1));
        assert_eq!(next.len(), 4);
        assert!(next.iter().all(|x| x == &pool[0]));
    }

    #[test]
    fn survival_keeps_lower_fronts() {
        let ind = |v: [u32; 2]| Individual::new(Genotype::zeros(0), FitnessVector::from(v));
        let pool: Population = [[4, 4], [3, 3], [2, 2], [1, 1], [0, 3], [3, 0]]
            .into_iter()
            .map(ind)
            .collect();
        let rps = generate_reference_points(2, 23).unwrap();
        let mut state = NormalizationState::new(2, 4.0).unwrap();
        let next = nsga3_survival(&pool, 3, &rps, &mut state, &mut RunRng::from_seed(1));
        let got: Vec<_> = next.fitness().cloned().collect();
        assert_eq!(got[0], FitnessVector::from([4, 4]));
        assert_eq!(got[1], FitnessVector::from([3, 3]));
        assert_eq!(next.len(), 3);
    }
}
