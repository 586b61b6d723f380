//! Outcomes of `u`-parking functions: the lucky-set characterization,
//! parking completions with `k` lucky cars, the single-gap families
//! `c_1`, `c_2`, `c_3`, and outcomes by lucky spot.
//!
//! A vacant (`X`) spot never takes part in a descent here; only adjacent
//! available spots are compared.

use num_traits::{One, Zero};

use crate::combinatorics::{
    eulerian, factorial, iter_bounded_tuples, iter_ordered_set_partitions, multinomial,
    Composition,
};
use crate::classical::count_outcomes_fixed_i;
use crate::count::Count;
use crate::error::{Error, Result};
use crate::parking::{CapacityProfile, LuckySet, VectorOutcome};

/// Unavailable spots `s_1 < ... < s_m` on a street of `n + m` unit spots
/// holding `n` cars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForbiddenSpotSet {
    cars: usize,
    spots: Vec<usize>,
}

impl ForbiddenSpotSet {
    pub fn new(cars: usize, spots: Vec<usize>) -> Result<Self> {
        if spots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidForbiddenSpots("spots must be strictly increasing".into()));
        }
        let len = cars + spots.len();
        if spots.first() == Some(&0) || spots.last().is_some_and(|&s| s > len) {
            return Err(Error::InvalidForbiddenSpots(format!("spots must lie in 1..={len}")));
        }
        Ok(Self { cars, spots })
    }

    pub fn cars(&self) -> usize {
        self.cars
    }

    pub fn spots(&self) -> &[usize] {
        &self.spots
    }

    pub fn street_len(&self) -> usize {
        self.cars + self.spots.len()
    }

    /// The available spots, as a capacity vector with distinct entries.
    pub fn capacity(&self) -> CapacityProfile {
        let u = (1..=self.street_len()).filter(|s| self.spots.binary_search(s).is_err()).collect();
        CapacityProfile::new(u).expect("available spots are increasing")
    }

    /// Lengths of the runs of available spots: `δ_1 = s_1 - 1`,
    /// `δ_j = s_j - s_{j-1} - 1`, `δ_{m+1} = n + m - s_m`.
    pub fn runs(&self) -> Composition {
        let mut prev = 0;
        let mut parts: Vec<usize> = self
            .spots
            .iter()
            .map(|&s| std::mem::replace(&mut prev, s))
            .zip(&self.spots)
            .map(|(p, &s)| s - p - 1)
            .collect();
        parts.push(self.street_len() - prev);
        Composition::new(parts)
    }
}

/// Spots occupied by at least one lucky car; a subset of the entries of `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LuckySpotSet(Vec<usize>);

impl LuckySpotSet {
    pub fn new(u: &CapacityProfile, spots: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut spots: Vec<usize> = spots.into_iter().collect();
        spots.sort_unstable();
        spots.dedup();
        if let Some(&bad) = spots.iter().find(|&&s| u.multiplicity(s) == 0) {
            return Err(Error::InvalidLuckySpot(bad));
        }
        Ok(Self(spots))
    }

    pub fn contains(&self, spot: usize) -> bool {
        self.0.binary_search(&spot).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Whether `outcome` arises from a `u`-parking function whose lucky set is
/// exactly `lucky`:
/// 1. an available first spot holds only lucky cars, and
/// 2. a car smaller than some car in the available spot to its left is lucky.
pub fn is_valid_u_outcome(u: &CapacityProfile, outcome: &VectorOutcome, lucky: &LuckySet) -> bool {
    let blocks = outcome.blocks();
    if blocks.len() != u.max_spot() || !lucky.within(u.len()) {
        return false;
    }
    if let Some(Some(first)) = blocks.first() {
        if !first.iter().all(|&c| lucky.contains(c)) {
            return false;
        }
    }
    blocks.windows(2).all(|w| match (&w[0], &w[1]) {
        (Some(left), Some(right)) => {
            let left_max = left.iter().copied().max().unwrap_or(0);
            right.iter().all(|&c| c > left_max || lucky.contains(c))
        }
        _ => true,
    })
}

/// Every outcome of `u` as an ordered set partition with `X` at spots of
/// capacity zero, in generator order.
pub fn iter_u_outcomes(u: &CapacityProfile) -> impl Iterator<Item = VectorOutcome> + '_ {
    let spots = u.distinct_spots();
    let sizes: Vec<usize> = spots.iter().map(|&s| u.multiplicity(s)).collect();
    iter_ordered_set_partitions(u.len(), &sizes)
        .expect("multiplicities sum to n")
        .map(move |osp| {
            let mut blocks = vec![None; u.max_spot()];
            for (&spot, block) in spots.iter().zip(osp.into_blocks()) {
                blocks[spot - 1] = Some(block);
            }
            VectorOutcome::from_blocks_unchecked(blocks)
        })
}

/// `O_u(I)`: every capacity-respecting arrangement is realized when all cars
/// are lucky, so generating and filtering by [`is_valid_u_outcome`] is
/// complete.
pub fn iter_valid_u_outcomes<'a>(
    u: &'a CapacityProfile,
    lucky: &'a LuckySet,
) -> impl Iterator<Item = VectorOutcome> + 'a {
    iter_u_outcomes(u).filter(move |b| is_valid_u_outcome(u, b, lucky))
}

/// Distinct outcomes with `k` lucky cars for the parking completion of
/// `forbidden`:
/// `C(n; δ) Σ_{i_1+...+i_{m+1} <= max(k-δ_1, k-1)} Π_j ⟨δ_j, i_j⟩`.
pub fn count_outcomes_completion_k_lucky(forbidden: &ForbiddenSpotSet, k: usize) -> Count {
    let n = forbidden.cars();
    if k > n {
        return Count::zero();
    }
    let delta = forbidden.runs();
    let d = delta.parts();
    let bound = (k as i64 - d[0] as i64).max(k as i64 - 1);
    if bound < 0 {
        return Count::zero();
    }
    let sum: Count = iter_bounded_tuples(d.len(), bound as usize)
        .map(|descents| {
            d.iter().zip(&descents).map(|(&len, &i)| eulerian(len, i)).product::<Count>()
        })
        .sum();
    multinomial(n, &delta).expect("runs sum to n") * sum
}

/// `I_{(j_1,...,j_l)}`: drop the removed cars and shift every remaining car
/// down by the number of removed cars at or below it.
pub fn reduce_index_set(lucky: &LuckySet, removed: &[usize]) -> LuckySet {
    let mut removed = removed.to_vec();
    removed.sort_unstable();
    let reduced = lucky
        .iter()
        .filter(|c| removed.binary_search(c).is_err())
        .map(|c| c - removed.partition_point(|&r| r <= c));
    LuckySet::new(reduced).expect("shifted cars stay positive")
}

/// Outcomes for `u = (2, 3, ..., n+1)` with lucky set `I`:
/// `k! Π_{j ∈ [n] \ I} (|I ∩ [j]| + 1)`.
pub fn c1(n: usize, lucky: &LuckySet) -> Count {
    if !lucky.within(n) {
        return Count::zero();
    }
    let product: Count = (1..=n)
        .filter(|&j| !lucky.contains(j))
        .map(|j| Count::from(lucky.count_up_to(j) + 1))
        .product();
    factorial(lucky.len()) * product
}

/// Outcomes for `u = (1, 3, 4, ..., n+1)`: whichever lucky car takes spot 1,
/// the rest is a `c_1` street.
pub fn c2(n: usize, lucky: &LuckySet) -> Count {
    if !lucky.within(n) {
        return Count::zero();
    }
    if n == 0 {
        return Count::one();
    }
    lucky.iter().map(|first| c1(n - 1, &reduce_index_set(lucky, &[first]))).sum()
}

/// Outcomes for `u = (1, 2, 4, ..., n+1)`. Spot 2 holds either a lucky car
/// (leaving a `c_2` street) or an unlucky car `s` arriving after the lucky
/// car `i_j` in spot 1 (leaving a `c_1` street).
///
/// With `n = 1` the gap lies past the street, which is then classical.
pub fn c3(n: usize, lucky: &LuckySet) -> Count {
    if !lucky.within(n) {
        return Count::zero();
    }
    match n {
        0 => return Count::one(),
        1 => return count_outcomes_fixed_i(1, lucky),
        _ => {}
    }
    let mut total = Count::zero();
    for first in lucky.iter() {
        total += c2(n - 1, &reduce_index_set(lucky, &[first]));
        for second in (first + 1..=n).filter(|&s| !lucky.contains(s)) {
            total += c1(n - 2, &reduce_index_set(lucky, &[first, second]));
        }
    }
    total
}

/// Bars: before the first entry, after the last copy of each `i` with
/// `i + 1` absent, and before the first copy of each lucky spot `l > 1`.
/// The parts are the gaps between consecutive bars.
pub fn associated_composition(u: &CapacityProfile, lucky_spots: &LuckySpotSet) -> Composition {
    let entries = u.u();
    let mut bars = vec![0];
    for (pos, &value) in entries.iter().enumerate() {
        let last_copy = entries.get(pos + 1) != Some(&value);
        if last_copy && u.multiplicity(value + 1) == 0 {
            bars.push(pos + 1);
        }
        let first_copy = pos == 0 || entries[pos - 1] != value;
        if first_copy && value > 1 && lucky_spots.contains(value) {
            bars.push(pos);
        }
    }
    bars.sort_unstable();
    Composition::new(bars.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Outcomes whose lucky spots are exactly `L`: `C(n; δ_{u,L})`.
///
/// Spot 1, when available, always holds a lucky car, so an `L` omitting it
/// has no outcomes.
pub fn count_outcomes_lucky_spots(u: &CapacityProfile, lucky_spots: &LuckySpotSet) -> Count {
    if u.multiplicity(1) > 0 && !lucky_spots.contains(1) {
        return Count::zero();
    }
    multinomial(u.len(), &associated_composition(u, lucky_spots)).expect("bars partition u")
}

/// Cars in street order with `X`s dropped, each spot ascending.
pub fn underlying_permutation(outcome: &VectorOutcome) -> Vec<usize> {
    outcome.blocks().iter().flatten().flatten().copied().collect()
}
