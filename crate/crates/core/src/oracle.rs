//! Exhaustive enumeration of preference space.
//!
//! Each census runs every preference vector through the parking simulator.
//! The space is split by the first car's preference; the pieces run on a
//! worker pool and are merged in ascending order, so results do not depend
//! on the number of workers.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parking::{
    classical_result, vector_result, CapacityProfile, ClassicalOutcome, LuckySet, Street,
    VectorOutcome,
};
use crate::vector::ForbiddenSpotSet;

/// Largest preference space enumerated unless configured otherwise.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum number of preference vectors to enumerate.
    pub cap: u64,
    /// Worker threads; `None` uses the pool default.
    pub workers: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP, workers: None }
    }
}

impl OracleConfig {
    pub fn with_workers(self, workers: usize) -> Self {
        Self { workers: Some(workers), ..self }
    }

    pub fn with_cap(self, cap: u64) -> Self {
        Self { cap, ..self }
    }

    /// Fails with [`Error::CapExceeded`] when `alphabet^len` exceeds the cap.
    pub fn check(&self, alphabet: usize, len: usize) -> Result<u128> {
        let space = u32::try_from(len)
            .ok()
            .and_then(|len| (alphabet as u128).checked_pow(len))
            .unwrap_or(u128::MAX);
        if space > self.cap as u128 {
            return Err(Error::CapExceeded { space, cap: self.cap });
        }
        Ok(space)
    }
}

/// Parking functions and distinct outcomes sharing a lucky set (or a
/// number of lucky cars).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "O: Serialize", deserialize = "O: Deserialize<'de> + Ord"))]
pub struct Tally<O> {
    pub functions: u64,
    pub outcomes: BTreeSet<O>,
}

impl<O: Ord> Default for Tally<O> {
    fn default() -> Self {
        Self { functions: 0, outcomes: BTreeSet::new() }
    }
}

impl<O: Ord> Tally<O> {
    fn absorb(&mut self, other: Tally<O>) {
        self.functions += other.functions;
        self.outcomes.extend(other.outcomes);
    }
}

/// Ground-truth census of a family of parking functions.
///
/// Serializes to canonical JSON with keys `total`, `by_lucky_set` (keyed by
/// the lucky set rendered as a JSON array, e.g. `"[1,3]"`) and `by_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    into = "CensusRepr<O>",
    try_from = "CensusRepr<O>",
    bound(serialize = "O: Serialize + Ord + Clone", deserialize = "O: Deserialize<'de> + Ord")
)]
pub struct Census<O: Ord> {
    pub total: u64,
    pub by_lucky_set: BTreeMap<LuckySet, Tally<O>>,
    pub by_k: BTreeMap<usize, Tally<O>>,
}

impl<O: Ord> Default for Census<O> {
    fn default() -> Self {
        Self { total: 0, by_lucky_set: BTreeMap::new(), by_k: BTreeMap::new() }
    }
}

impl<O: Ord + Clone> Census<O> {
    fn record(&mut self, lucky: LuckySet, outcome: O) {
        self.total += 1;
        let k = self.by_k.entry(lucky.len()).or_default();
        k.functions += 1;
        k.outcomes.insert(outcome.clone());
        let set = self.by_lucky_set.entry(lucky).or_default();
        set.functions += 1;
        set.outcomes.insert(outcome);
    }

    fn absorb(&mut self, other: Census<O>) {
        self.total += other.total;
        for (lucky, tally) in other.by_lucky_set {
            self.by_lucky_set.entry(lucky).or_default().absorb(tally);
        }
        for (k, tally) in other.by_k {
            self.by_k.entry(k).or_default().absorb(tally);
        }
    }

    /// Functions with lucky set exactly `lucky`.
    pub fn functions_with(&self, lucky: &LuckySet) -> u64 {
        self.by_lucky_set.get(lucky).map_or(0, |t| t.functions)
    }

    /// Distinct outcomes with lucky set exactly `lucky`.
    pub fn outcomes_with(&self, lucky: &LuckySet) -> usize {
        self.by_lucky_set.get(lucky).map_or(0, |t| t.outcomes.len())
    }

    /// Functions with exactly `k` lucky cars.
    pub fn functions_with_k(&self, k: usize) -> u64 {
        self.by_k.get(&k).map_or(0, |t| t.functions)
    }

    /// Distinct outcomes with exactly `k` lucky cars.
    pub fn outcomes_with_k(&self, k: usize) -> usize {
        self.by_k.get(&k).map_or(0, |t| t.outcomes.len())
    }
}

impl<O: Ord + Serialize + Clone> Census<O> {
    /// Compact canonical JSON: map keys sorted, outcomes in sorted order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("census serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "O: Serialize", deserialize = "O: Deserialize<'de> + Ord"))]
struct CensusRepr<O> {
    total: u64,
    by_lucky_set: BTreeMap<String, Tally<O>>,
    by_k: BTreeMap<usize, Tally<O>>,
}

impl<O: Ord> From<Census<O>> for CensusRepr<O> {
    fn from(c: Census<O>) -> Self {
        let by_lucky_set = c
            .by_lucky_set
            .into_iter()
            .map(|(lucky, tally)| (lucky_key(&lucky), tally))
            .collect();
        Self { total: c.total, by_lucky_set, by_k: c.by_k }
    }
}

impl<O: Ord> TryFrom<CensusRepr<O>> for Census<O> {
    type Error = String;

    fn try_from(repr: CensusRepr<O>) -> std::result::Result<Self, String> {
        let by_lucky_set = repr
            .by_lucky_set
            .into_iter()
            .map(|(key, tally)| {
                let cars: Vec<usize> =
                    serde_json::from_str(&key).map_err(|e| format!("lucky set key {key:?}: {e}"))?;
                let lucky = LuckySet::new(cars.iter().copied()).map_err(|e| e.to_string())?;
                if lucky.as_slice() != cars {
                    return Err(format!("lucky set key {key:?} is not strictly ascending"));
                }
                Ok((lucky, tally))
            })
            .collect::<std::result::Result<_, String>>()?;
        Ok(Self { total: repr.total, by_lucky_set, by_k: repr.by_k })
    }
}

/// `"[1,3]"`: the map key under which a lucky set is serialized.
pub fn lucky_key(lucky: &LuckySet) -> String {
    serde_json::to_string(lucky.as_slice()).expect("integers serialize")
}

/// Visits every vector in `[alphabet]^len`, split by first coordinate across
/// the worker pool. `visit` sees each vector with a per-piece accumulator;
/// the pieces are merged in ascending order of the first coordinate.
fn sweep<A, I, V, M>(
    config: &OracleConfig,
    alphabet: usize,
    len: usize,
    init: I,
    visit: V,
    merge: M,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[usize]) + Sync,
    M: Fn(&mut A, A),
{
    config.check(alphabet, len)?;
    if len == 0 {
        let mut acc = init();
        visit(&mut acc, &[]);
        return Ok(acc);
    }
    let piece = |first: usize| {
        let mut acc = init();
        let mut prefs = vec![1; len];
        prefs[0] = first;
        loop {
            visit(&mut acc, &prefs);
            // odometer over coordinates 1..len, last coordinate fastest
            let Some(i) = (1..len).rev().find(|&i| prefs[i] < alphabet) else { break };
            prefs[i] += 1;
            prefs[i + 1..].iter_mut().for_each(|p| *p = 1);
        }
        acc
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::WorkerPool(e.to_string()))?;
    let pieces: Vec<A> = pool.install(|| (1..=alphabet).into_par_iter().map(piece).collect());
    let mut pieces = pieces.into_iter();
    let mut total = pieces.next().unwrap_or_else(&init);
    for next in pieces {
        merge(&mut total, next);
    }
    Ok(total)
}

struct Scratch<A> {
    street: Street,
    spot_of: Vec<usize>,
    acc: A,
}

fn sweep_street<A, I, V, M>(
    config: &OracleConfig,
    capacity: &[usize],
    alphabet: usize,
    len: usize,
    init: I,
    on_park: V,
    merge: M,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[usize], &[usize]) + Sync,
    M: Fn(&mut A, A),
{
    let scratch = sweep(
        config,
        alphabet,
        len,
        || Scratch { street: Street::new(capacity), spot_of: Vec::with_capacity(len), acc: init() },
        |s: &mut Scratch<A>, prefs: &[usize]| {
            if s.street.park(prefs, &mut s.spot_of).is_ok() {
                on_park(&mut s.acc, prefs, &s.spot_of);
            }
        },
        |a: &mut Scratch<A>, b: Scratch<A>| merge(&mut a.acc, b.acc),
    )?;
    Ok(scratch.acc)
}

fn unit_capacity(n_spots: usize) -> Vec<usize> {
    let mut capacity = vec![1; n_spots + 1];
    capacity[0] = 0;
    capacity
}

/// Census of classical parking functions of length `n` over `[n]^n`.
pub fn census_classical(n: usize, config: &OracleConfig) -> Result<Census<ClassicalOutcome>> {
    census_mn(n, n, config)
}

/// Census of `m` cars on `n` unit spots over `[n]^m`; vacant spots are `X`.
pub fn census_mn(m: usize, n: usize, config: &OracleConfig) -> Result<Census<ClassicalOutcome>> {
    sweep_street(
        config,
        &unit_capacity(n),
        n,
        m,
        Census::default,
        |census, prefs, spot_of| {
            let (outcome, lucky) = classical_result(prefs, spot_of, n);
            census.record(lucky, outcome);
        },
        Census::absorb,
    )
}

/// Census of `u`-parking functions over `[M]^n`, `M = max(u)`.
pub fn census_vector(u: &CapacityProfile, config: &OracleConfig) -> Result<Census<VectorOutcome>> {
    sweep_street(
        config,
        u.multiplicities(),
        u.max_spot(),
        u.len(),
        Census::default,
        |census, prefs, spot_of| {
            let (outcome, lucky) = vector_result(u, prefs, spot_of);
            census.record(lucky, outcome);
        },
        Census::absorb,
    )
}

/// Census of the parking completion with the given unavailable spots.
pub fn census_completion(
    forbidden: &ForbiddenSpotSet,
    config: &OracleConfig,
) -> Result<Census<VectorOutcome>> {
    census_vector(&forbidden.capacity(), config)
}

/// Coefficients of `Σ_α q^{lucky(α)}` over parking functions of length `n`.
pub fn lucky_polynomial(n: usize, config: &OracleConfig) -> Result<Vec<u64>> {
    let census = census_classical(n, config)?;
    Ok((0..=n).map(|k| census.functions_with_k(k)).collect())
}

/// Distinct outcomes of `u`-parking functions keyed by their exact set of
/// lucky spots (spots where at least one lucky car parked).
pub fn census_lucky_spots(
    u: &CapacityProfile,
    config: &OracleConfig,
) -> Result<BTreeMap<Vec<usize>, BTreeSet<VectorOutcome>>> {
    sweep_street(
        config,
        u.multiplicities(),
        u.max_spot(),
        u.len(),
        BTreeMap::new,
        |map: &mut BTreeMap<Vec<usize>, BTreeSet<VectorOutcome>>, prefs, spot_of| {
            let spots: BTreeSet<usize> =
                prefs.iter().zip(spot_of).filter(|(p, s)| p == s).map(|(p, _)| *p).collect();
            let (outcome, _) = vector_result(u, prefs, spot_of);
            map.entry(spots.into_iter().collect()).or_default().insert(outcome);
        },
        |a, b| {
            for (spots, outcomes) in b {
                a.entry(spots).or_default().extend(outcomes);
            }
        },
    )
}
