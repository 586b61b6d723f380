//! Exact combinatorial primitives and the lazy generators the census
//! formulas sum over.

use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::count::Count;
use crate::error::{Error, Result};

/// A weak composition: nonnegative parts in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl From<Vec<usize>> for Composition {
    fn from(parts: Vec<usize>) -> Self {
        Self::new(parts)
    }
}

/// Disjoint sorted blocks whose union is `[n]`, in order. Blocks may be
/// empty when the requested size is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSetPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<usize>> {
        self.blocks
    }
}

pub fn factorial(n: usize) -> Count {
    (2..=n).fold(Count::one(), |acc, i| acc * i)
}

/// `a! / b!` for `a >= b`; zero when `a < b`.
pub fn rising_ratio(a: usize, b: usize) -> Count {
    if a < b {
        return Count::zero();
    }
    (b + 1..=a).fold(Count::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Count {
    if k > n {
        return Count::zero();
    }
    let k = k.min(n - k);
    // Each prefix product is itself a binomial coefficient, so the division
    // is exact.
    (0..k).fold(Count::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `n! / (δ_1! ... δ_k!)`.
pub fn multinomial(n: usize, parts: &Composition) -> Result<Count> {
    let sum = parts.total();
    if sum != n {
        return Err(Error::SumMismatch { sum, expected: n });
    }
    let mut remaining = n;
    let mut acc = Count::one();
    for &p in parts.parts() {
        acc *= binomial(remaining, p);
        remaining -= p;
    }
    Ok(acc)
}

fn eulerian_table() -> &'static RwLock<Vec<Vec<Count>>> {
    static TABLE: OnceLock<RwLock<Vec<Vec<Count>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![vec![Count::one()]]))
}

/// Eulerian number `⟨n, k⟩`: permutations of `[n]` with exactly `k`
/// descents. `⟨0, 0⟩ = 1` and `⟨n, k⟩ = 0` for `k >= max(n, 1)`.
///
/// Rows are memoized process-wide and grown on demand.
pub fn eulerian(n: usize, k: usize) -> Count {
    if k >= n.max(1) {
        return Count::zero();
    }
    {
        let table = eulerian_table().read().expect("eulerian table poisoned");
        if let Some(row) = table.get(n) {
            return row[k].clone();
        }
    }
    let mut table = eulerian_table().write().expect("eulerian table poisoned");
    while table.len() <= n {
        let m = table.len();
        let prev = &table[m - 1];
        // ⟨m, j⟩ = (j + 1)⟨m-1, j⟩ + (m - j)⟨m-1, j-1⟩
        let row: Vec<Count> = (0..m)
            .map(|j| {
                let stay = prev.get(j).map_or_else(Count::zero, |a| a * (j + 1));
                let grow = if j == 0 || m == 1 {
                    Count::zero()
                } else {
                    prev.get(j - 1).map_or_else(Count::zero, |a| a * (m - j))
                };
                stay + grow
            })
            .collect();
        table.push(row);
    }
    table[n][k].clone()
}

/// `Σ_{j < k} ⟨n, j⟩`: permutations of `[n]` with at most `k - 1` descents.
pub fn eulerian_partial_sum(n: usize, k: usize) -> Count {
    (0..k).map(|j| eulerian(n, j)).sum()
}

/// Every ordered set partition of `[n]` whose `i`-th block has `sizes[i]`
/// elements, in lexicographic order of the car-to-block assignment word.
pub fn iter_ordered_set_partitions(
    n: usize,
    sizes: &[usize],
) -> Result<OrderedSetPartitions> {
    let sum: usize = sizes.iter().sum();
    if sum != n {
        return Err(Error::SumMismatch { sum, expected: n });
    }
    let word = sizes
        .iter()
        .enumerate()
        .flat_map(|(block, &size)| std::iter::repeat_n(block, size))
        .collect();
    Ok(OrderedSetPartitions { word: Some(word), blocks: sizes.len() })
}

/// Iterator returned by [`iter_ordered_set_partitions`].
#[derive(Clone, Debug)]
pub struct OrderedSetPartitions {
    /// `word[c]` is the block of car `c + 1`; `None` once exhausted.
    word: Option<Vec<usize>>,
    blocks: usize,
}

impl OrderedSetPartitions {
    fn advance(word: &mut [usize]) -> bool {
        // Next multiset permutation in lexicographic order.
        let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) else {
            return false;
        };
        let pivot = i - 1;
        let j = (i..word.len()).rev().find(|&j| word[j] > word[pivot]).expect("ascent exists");
        word.swap(pivot, j);
        word[i..].reverse();
        true
    }
}

impl Iterator for OrderedSetPartitions {
    type Item = OrderedSetPartition;

    fn next(&mut self) -> Option<OrderedSetPartition> {
        let word = self.word.as_mut()?;
        let mut blocks = vec![Vec::new(); self.blocks];
        for (car, &block) in word.iter().enumerate() {
            blocks[block].push(car + 1);
        }
        if !Self::advance(word) {
            self.word = None;
        }
        Some(OrderedSetPartition { blocks })
    }
}

/// Odometer over tuples with per-coordinate caps, first coordinate fastest,
/// keeping those whose sum lies in `lo..=hi`.
#[derive(Clone, Debug)]
struct CappedTuples {
    caps: Vec<usize>,
    lo: usize,
    hi: usize,
    current: Option<Vec<usize>>,
    sum: usize,
}

impl CappedTuples {
    fn new(caps: Vec<usize>, lo: usize, hi: usize) -> Self {
        let len = caps.len();
        Self { caps, lo, hi, current: Some(vec![0; len]), sum: 0 }
    }

    fn step(&mut self) {
        let Some(cur) = self.current.as_mut() else { return };
        for (c, &cap) in cur.iter_mut().zip(&self.caps) {
            if *c < cap && self.sum < self.hi {
                *c += 1;
                self.sum += 1;
                return;
            }
            self.sum -= *c;
            *c = 0;
        }
        self.current = None;
    }
}

impl Iterator for CappedTuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        loop {
            let cur = self.current.clone()?;
            let sum = self.sum;
            self.step();
            if (self.lo..=self.hi).contains(&sum) {
                return Some(cur);
            }
        }
    }
}

/// All nonnegative tuples of length `len` with sum at most `bound_total`.
pub fn iter_bounded_tuples(len: usize, bound_total: usize) -> impl Iterator<Item = Vec<usize>> {
    CappedTuples::new(vec![bound_total; len], 0, bound_total)
}

/// Weak compositions of `k` into `caps.len()` parts with part `i <= caps[i]`.
pub fn iter_weak_compositions(k: usize, caps: &[usize]) -> impl Iterator<Item = Composition> {
    CappedTuples::new(caps.to_vec(), k, k).map(Composition::new)
}
