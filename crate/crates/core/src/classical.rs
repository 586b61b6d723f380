//! Outcomes of classical and `(m, n)` parking functions with a fixed lucky
//! set or a fixed number of lucky cars.
//!
//! A vacant spot compares greater than every car here, and every outcome is
//! read with a vacant spot prepended at position 0.

use num_traits::Zero;

use crate::combinatorics::{binomial, eulerian, factorial, rising_ratio};
use crate::count::{pow, Count};
use crate::error::Result;
use crate::oracle::{self, OracleConfig};
use crate::parking::{ClassicalOutcome, LuckySet};

/// Whether the permutation `perm` is the outcome of some parking function
/// with lucky set exactly `lucky`. Outcomes with vacant spots are rejected.
pub fn is_valid_outcome(perm: &ClassicalOutcome, lucky: &LuckySet) -> bool {
    let Some(p) = perm.as_permutation() else { return false };
    if p.is_empty() || !lucky.within(p.len()) {
        return false;
    }
    if !lucky.contains(p[0]) {
        return false;
    }
    p.windows(2).all(|w| {
        let ascent_ok = !(lucky.contains(w[0]) && !lucky.contains(w[1])) || w[0] < w[1];
        let descent_ok = w[0] < w[1] || lucky.contains(w[1]);
        ascent_ok && descent_ok
    })
}

/// Whether `outcome` (with vacant spots) is realized by an `(m, n)` parking
/// function with lucky set exactly `lucky`.
pub fn is_valid_outcome_mn(outcome: &ClassicalOutcome, lucky: &LuckySet) -> bool {
    let m = outcome.n_cars();
    if !lucky.within(m) {
        return false;
    }
    let padded: Vec<Option<usize>> =
        std::iter::once(None).chain(outcome.slots().iter().copied()).collect();
    padded.windows(2).all(|w| match (w[0], w[1]) {
        // a car right after a vacant spot found that spot empty
        (None, Some(car)) => lucky.contains(car),
        (Some(prev), Some(car)) => {
            let ascent_ok = !(lucky.contains(prev) && !lucky.contains(car)) || prev < car;
            let descent_ok = prev < car || lucky.contains(car);
            ascent_ok && descent_ok
        }
        _ => true,
    })
}

/// `Π_{j ∈ [m] \ I} |I ∩ [j]|`.
fn placement_product(m: usize, lucky: &LuckySet) -> Count {
    (1..=m)
        .filter(|&j| !lucky.contains(j))
        .map(|j| Count::from(lucky.count_up_to(j)))
        .product()
}

/// `|O_n(I)| = k! Π_{j ∈ [n] \ I} |I ∩ [j]|`; zero unless `1 ∈ I ⊆ [n]`.
pub fn count_outcomes_fixed_i(n: usize, lucky: &LuckySet) -> Count {
    if !lucky.contains(1) || !lucky.within(n) {
        return Count::zero();
    }
    factorial(lucky.len()) * placement_product(n, lucky)
}

/// The same count written as `1^{c_2-c_1} 2^{c_3-c_2} ... k^{n-c_k+1}` for
/// `I = {c_1 = 1 < c_2 < ... < c_k}`.
pub fn count_outcomes_fixed_i_power_form(n: usize, lucky: &LuckySet) -> Count {
    if !lucky.contains(1) || !lucky.within(n) {
        return Count::zero();
    }
    let c = lucky.as_slice();
    let k = c.len();
    let gaps: Count = (1..k).map(|l| pow(l, c[l] - c[l - 1])).product();
    gaps * pow(k, n + 1 - c[k - 1])
}

/// `k! k^{n-k}`: outcomes when the lucky set is `{1, ..., k}`.
pub fn count_outcomes_first_k(n: usize, k: usize) -> Count {
    if k > n {
        return Count::zero();
    }
    factorial(k) * pow(k, n - k)
}

/// `|O_{m,n}(I)| = (k+n-m)!/(n-m)! Π_{j ∈ [m] \ I} |I ∩ [j]|`.
pub fn count_outcomes_mn_fixed_i(m: usize, n: usize, lucky: &LuckySet) -> Count {
    if m > n || !lucky.within(m) {
        return Count::zero();
    }
    let k = lucky.len();
    rising_ratio(k + n - m, n - m) * placement_product(m, lucky)
}

/// Which inner binomial the `(m, n)` k-lucky double sum uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MnBinomial {
    /// `C(m-j-1, d)`, the default form.
    Stated,
    /// `C(m-j, d)`, an alternative kept for comparison against the oracle.
    Derived,
}

/// Distinct outcomes of `(m, n)` parking functions with exactly `k` lucky
/// cars:
/// `Σ_{j<k} [Σ_{d<k-j} C(m-j-1, d) C(n-m+j+1, j+1+d)] ⟨m, j⟩`.
pub fn count_outcomes_mn_k_lucky(m: usize, n: usize, k: usize) -> Count {
    count_outcomes_mn_k_lucky_with(m, n, k, MnBinomial::Stated)
}

pub fn count_outcomes_mn_k_lucky_with(m: usize, n: usize, k: usize, variant: MnBinomial) -> Count {
    if m > n || k == 0 || k > m {
        return Count::zero();
    }
    let mut total = Count::zero();
    for j in 0..k {
        let top = match variant {
            MnBinomial::Stated => m - j - 1,
            MnBinomial::Derived => m - j,
        };
        let inner: Count = (0..k - j)
            .map(|d| binomial(top, d) * binomial(n - m + j + 1, j + 1 + d))
            .sum();
        if !inner.is_zero() {
            total += inner * eulerian(m, j);
        }
    }
    total
}

/// Checks with the brute-force oracle that the outcome sets with exactly `k`
/// lucky cars grow with `k`.
pub fn outcomes_nested_check(m: usize, n: usize, config: &OracleConfig) -> Result<bool> {
    let census = oracle::census_mn(m, n, config)?;
    let empty = Default::default();
    let layer = |k: usize| census.by_k.get(&k).map_or(&empty, |t| &t.outcomes);
    Ok((1..m).all(|k| layer(k).is_subset(layer(k + 1))))
}
