//! Counting `u`-parking functions by exact lucky set and by number of lucky
//! cars.
//!
//! Here a vacant spot compares *smaller* than every car: a car may have
//! preferred a vacant spot to its left and driven past it.

use num_traits::{One, Zero};

use crate::combinatorics::{binomial, iter_ordered_set_partitions, iter_weak_compositions};
use crate::count::{pow, Count};
use crate::error::{Error, Result};
use crate::parking::{CapacityProfile, LuckySet, VectorOutcome};
use crate::vector::{iter_u_outcomes, iter_valid_u_outcomes};

/// An outcome with its vacant spots dropped: block `B_j` sits at spot
/// value `u_j`, the `j`-th distinct entry of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReindexedOutcome {
    blocks: Vec<Vec<usize>>,
    spot_values: Vec<usize>,
}

impl ReindexedOutcome {
    pub fn new(u: &CapacityProfile, outcome: &VectorOutcome) -> Result<Self> {
        if outcome.len() != u.max_spot() {
            return Err(Error::InvalidOutcome(format!(
                "outcome has {} spots, u has {}",
                outcome.len(),
                u.max_spot()
            )));
        }
        let mut blocks = Vec::new();
        let mut spot_values = Vec::new();
        for (i, block) in outcome.blocks().iter().enumerate() {
            match block {
                Some(b) if b.len() == u.multiplicity(i + 1) => {
                    blocks.push(b.clone());
                    spot_values.push(i + 1);
                }
                None if u.multiplicity(i + 1) == 0 => {}
                _ => {
                    return Err(Error::InvalidOutcome(format!("spot {} does not match u", i + 1)))
                }
            }
        }
        Ok(Self { blocks, spot_values })
    }

    fn from_parts(blocks: Vec<Vec<usize>>, spot_values: Vec<usize>) -> Self {
        Self { blocks, spot_values }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn spot_values(&self) -> &[usize] {
        &self.spot_values
    }

    /// Number of available spots `r`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// `max(B_t ∪ ... ∪ B_{j-1})` for `t = 1..j` (1-based), with `0` for
    /// the empty union at `t = j`.
    fn suffix_maxima(&self, j: usize) -> Vec<usize> {
        let mut maxima = vec![0; j + 1];
        for t in (1..j).rev() {
            let block_max = self.blocks[t - 1].iter().copied().max().unwrap_or(0);
            maxima[t] = maxima[t + 1].max(block_max);
        }
        maxima
    }
}

/// `ℓ_{j,t}` for `1 <= j <= r`, `0 <= t <= j`: unlucky cars of `B_j`
/// larger than every car in `B_t, ..., B_{j-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentLoad {
    /// `rows[j - 1][t]`.
    rows: Vec<Vec<usize>>,
}

impl DescentLoad {
    /// `ℓ_{j,t}` with 1-based `j`.
    pub fn get(&self, j: usize, t: usize) -> usize {
        self.rows[j - 1][t]
    }

    pub fn row(&self, j: usize) -> &[usize] {
        &self.rows[j - 1]
    }
}

/// Computes `ℓ_{j,t}` given each block's lucky cars `L_j ⊆ B_j`.
pub fn descent_load(outcome: &ReindexedOutcome, lucky: &[Vec<usize>]) -> Result<DescentLoad> {
    if lucky.len() != outcome.len() {
        return Err(Error::InvalidLuckySet(format!(
            "{} lucky subsets for {} blocks",
            lucky.len(),
            outcome.len()
        )));
    }
    let rows = (1..=outcome.len())
        .map(|j| {
            let block = &outcome.blocks[j - 1];
            if let Some(&stray) = lucky[j - 1].iter().find(|c| !block.contains(c)) {
                return Err(Error::InvalidLuckySet(format!("car {stray} is not in block {j}")));
            }
            let unlucky: Vec<usize> =
                block.iter().copied().filter(|c| !lucky[j - 1].contains(c)).collect();
            Ok(load_row(outcome, j, &unlucky))
        })
        .collect::<Result<_>>()?;
    Ok(DescentLoad { rows })
}

fn load_row(outcome: &ReindexedOutcome, j: usize, unlucky: &[usize]) -> Vec<usize> {
    let maxima = outcome.suffix_maxima(j);
    let mut row = vec![0; j + 1];
    for t in 1..j {
        row[t] = unlucky.iter().filter(|&&b| b > maxima[t]).count();
    }
    row[j] = unlucky.len();
    row
}

/// `Π_{t=1}^{j} (u_j - u_{t-1} - 1)^{ℓ_{j,t} - ℓ_{j,t-1}}` with `u_0 = 0`.
fn block_weight(outcome: &ReindexedOutcome, j: usize, row: &[usize]) -> Count {
    let u = &outcome.spot_values;
    (1..=j)
        .map(|t| {
            let prev = if t == 1 { 0 } else { u[t - 2] };
            pow(u[j - 1] - prev - 1, row[t] - row[t - 1])
        })
        .product()
}

/// Contiguous spots immediately left of car `b`'s spot that are vacant or
/// hold only cars smaller than `b`.
pub fn s_b(outcome: &VectorOutcome, b: usize) -> Result<usize> {
    let spot = outcome.spot_of(b).ok_or(Error::CarNotInOutcome(b))?;
    let blocks = outcome.blocks();
    Ok((1..spot)
        .rev()
        .take_while(|&s| match &blocks[s - 1] {
            None => true,
            Some(block) => block.iter().all(|&c| c < b),
        })
        .count())
}

/// Preferences car `b` could have had: `1` if it is lucky, else `s_B(b)`.
pub fn pref_count(outcome: &VectorOutcome, lucky: &LuckySet, b: usize) -> Result<usize> {
    let s = s_b(outcome, b)?;
    Ok(if lucky.contains(b) { 1 } else { s })
}

/// `Π_{b ∉ I} s_B(b)`: the `u`-parking functions with outcome `B` and lucky
/// set `I`, assuming `B ∈ O_u(I)`.
pub fn count_upfs_with_outcome(outcome: &VectorOutcome, lucky: &LuckySet) -> Count {
    (1..=outcome.n_cars())
        .filter(|&b| !lucky.contains(b))
        .map(|b| Count::from(s_b(outcome, b).expect("car is parked")))
        .product()
}

/// `|LPF_u(I)| = Σ_{B ∈ O_u(I)} Π_{b ∉ I} s_B(b)`.
pub fn count_upfs_fixed_i(u: &CapacityProfile, lucky: &LuckySet) -> Count {
    if !lucky.within(u.len()) {
        return Count::zero();
    }
    iter_valid_u_outcomes(u, lucky).map(|b| count_upfs_with_outcome(&b, lucky)).sum()
}

/// `u`-parking functions with exactly `k` lucky cars:
/// `Σ_κ Σ_B C(m_1, k_1) (u_1 - 1)^{m_1 - k_1} S(B; κ)`.
///
/// `S(B; κ)` is a product over blocks `j >= 2` of sums over `L_j`, since
/// `ℓ_{j,t}` depends only on `B` and `L_j`; each block's sums are tabulated
/// once per `B` for every `k_j`.
pub fn count_upfs_k_lucky(u: &CapacityProfile, k: usize) -> Count {
    let n = u.len();
    if k > n {
        return Count::zero();
    }
    if n == 0 {
        return Count::one();
    }
    let spot_values = u.distinct_spots();
    let sizes: Vec<usize> = spot_values.iter().map(|&s| u.multiplicity(s)).collect();
    let compositions: Vec<Vec<usize>> =
        iter_weak_compositions(k, &sizes).map(|c| c.parts().to_vec()).collect();
    if compositions.is_empty() {
        return Count::zero();
    }
    let first = &sizes[0];
    let head: Vec<Count> = (0..=*first)
        .map(|k1| binomial(*first, k1) * pow(spot_values[0] - 1, first - k1))
        .collect();

    let mut total = Count::zero();
    for osp in iter_ordered_set_partitions(n, &sizes).expect("sizes sum to n") {
        let outcome = ReindexedOutcome::from_parts(osp.into_blocks(), spot_values.clone());
        let tables: Vec<Vec<Count>> =
            (2..=outcome.len()).map(|j| block_table(&outcome, j)).collect();
        for kappa in &compositions {
            let mut term = head[kappa[0]].clone();
            for (table, &kj) in tables.iter().zip(&kappa[1..]) {
                if term.is_zero() {
                    break;
                }
                term *= &table[kj];
            }
            total += term;
        }
    }
    total
}

/// `table[k_j] = Σ_{L_j ⊆ B_j, |L_j| = k_j} Π_t (u_j - u_{t-1} - 1)^{ℓ_{j,t} - ℓ_{j,t-1}}`.
fn block_table(outcome: &ReindexedOutcome, j: usize) -> Vec<Count> {
    let block = &outcome.blocks[j - 1];
    let mut table = vec![Count::zero(); block.len() + 1];
    for mask in 0u64..(1 << block.len()) {
        let unlucky: Vec<usize> = block
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) == 0)
            .map(|(_, &c)| c)
            .collect();
        let row = load_row(outcome, j, &unlucky);
        table[mask.count_ones() as usize] += block_weight(outcome, j, &row);
    }
    table
}

/// `u = (i, ..., i, j)` with `n - 1` copies of `i`:
/// `C(n-1, k)(i-1)^{n-1-k}((n-1)(j-i-1) + (j-1)) + n C(n-1, k-1)(i-1)^{n-k}`.
pub fn count_upfs_const_then_jump(n: usize, i: usize, j: usize, k: usize) -> Result<Count> {
    if n == 0 || i == 0 || i >= j {
        return Err(Error::InvalidCapacity(format!("need n >= 1 and 1 <= i < j, got n={n} i={i} j={j}")));
    }
    let mut total = Count::zero();
    if k < n {
        total += binomial(n - 1, k)
            * pow(i - 1, n - 1 - k)
            * Count::from((n - 1) * (j - i - 1) + (j - 1));
    }
    if (1..=n).contains(&k) {
        total += Count::from(n) * binomial(n - 1, k - 1) * pow(i - 1, n - k);
    }
    Ok(total)
}

/// The capacity vector `(i, ..., i, j)` of length `n`.
pub fn const_then_jump_profile(n: usize, i: usize, j: usize) -> Result<CapacityProfile> {
    if n == 0 || i >= j {
        return Err(Error::InvalidCapacity(format!("need n >= 1 and i < j, got n={n} i={i} j={j}")));
    }
    let mut u = vec![i; n - 1];
    u.push(j);
    CapacityProfile::new(u)
}

/// `Σ_{|I| = k} |LPF_u(I)|`; a slower route to [`count_upfs_k_lucky`].
pub fn count_upfs_k_lucky_by_lucky_sets(u: &CapacityProfile, k: usize) -> Count {
    let n = u.len();
    if k > n {
        return Count::zero();
    }
    (0u64..(1 << n))
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| count_upfs_fixed_i(u, &LuckySet::from_mask(n, mask)))
        .sum()
}

/// Total `u`-parking functions via the outcome sum over all lucky sets.
pub fn count_upfs_total(u: &CapacityProfile) -> Count {
    iter_u_outcomes(u)
        .map(|b| {
            (0u64..(1 << u.len()))
                .map(|mask| LuckySet::from_mask(u.len(), mask))
                .filter(|lucky| crate::vector::is_valid_u_outcome(u, &b, lucky))
                .map(|lucky| count_upfs_with_outcome(&b, &lucky))
                .sum::<Count>()
        })
        .sum()
}
