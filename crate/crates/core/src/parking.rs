//! The parking processes themselves.
//!
//! Spots and cars are 1-indexed. A street is a list of spot capacities; the
//! classical and `(m, n)` processes use capacity one everywhere, the vector
//! process uses the multiplicities of `u`. Every simulation goes through the
//! same [`Street`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Preferred spots of the cars, in queue order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreferenceVector(Vec<usize>);

impl PreferenceVector {
    pub fn new(prefs: Vec<usize>) -> Result<Self> {
        if prefs.is_empty() || prefs.contains(&0) {
            return Err(Error::InvalidPreferences);
        }
        Ok(Self(prefs))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<usize>> for PreferenceVector {
    type Error = Error;

    fn try_from(prefs: Vec<usize>) -> Result<Self> {
        Self::new(prefs)
    }
}

/// A weakly increasing capacity vector `u` together with its spot
/// multiplicities: spot `i` holds as many cars as `i` occurs in `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CapacityProfile {
    u: Vec<usize>,
    /// `mult[i]` for `i` in `1..=M`; index 0 is unused.
    mult: Vec<usize>,
}

impl CapacityProfile {
    pub fn new(u: Vec<usize>) -> Result<Self> {
        if u.contains(&0) {
            return Err(Error::InvalidCapacity("entries must be >= 1".into()));
        }
        if u.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidCapacity("entries must be weakly increasing".into()));
        }
        let max = u.last().copied().unwrap_or(0);
        let mut mult = vec![0; max + 1];
        for &spot in &u {
            mult[spot] += 1;
        }
        Ok(Self { u, mult })
    }

    /// `u = (1, 2, ..., n)`: the classical street.
    pub fn classical(n: usize) -> Self {
        Self::new((1..=n).collect()).expect("identity vector is valid")
    }

    /// `u_i = a + b(i - 1)`.
    pub fn arithmetic(a: usize, b: usize, n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| a + b * i).collect())
    }

    /// The first `n` positive integers other than `skipped`, i.e. a street
    /// of singletons whose only unavailable spot is `skipped` (when it lies
    /// within the street).
    pub fn skipping_spot(skipped: usize, n: usize) -> Self {
        Self::new((1..).filter(|&s| s != skipped).take(n).collect())
            .expect("increasing vector is valid")
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    /// Number of cars `n`.
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    /// `M = max(u)`, the street length.
    pub fn max_spot(&self) -> usize {
        self.mult.len() - 1
    }

    /// `m_i(u)`; zero outside `1..=M`.
    pub fn multiplicity(&self, spot: usize) -> usize {
        if spot == 0 {
            0
        } else {
            self.mult.get(spot).copied().unwrap_or(0)
        }
    }

    /// Capacities indexed by spot (index 0 unused).
    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    /// Distinct entries of `u`, ascending.
    pub fn distinct_spots(&self) -> Vec<usize> {
        (1..=self.max_spot()).filter(|&s| self.mult[s] > 0).collect()
    }

    /// Sorted-rearrangement test `a_(i) <= u_i`.
    pub fn accepts_sorted(&self, prefs: &[usize]) -> bool {
        if prefs.len() != self.u.len() || prefs.contains(&0) {
            return false;
        }
        let mut sorted = prefs.to_vec();
        sorted.sort_unstable();
        sorted.iter().zip(&self.u).all(|(a, u)| a <= u)
    }
}

impl fmt::Display for CapacityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.u, ",")
    }
}

/// A sorted set of car indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LuckySet(Vec<usize>);

impl LuckySet {
    pub fn new(cars: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut cars: Vec<usize> = cars.into_iter().collect();
        if cars.contains(&0) {
            return Err(Error::InvalidLuckySet("car indices start at 1".into()));
        }
        cars.sort_unstable();
        cars.dedup();
        Ok(Self(cars))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `{1, ..., k}`.
    pub fn prefix(k: usize) -> Self {
        Self((1..=k).collect())
    }

    /// Subset of `[n]` encoded by the low `n` bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self((1..=n).filter(|&c| mask >> (c - 1) & 1 == 1).collect())
    }

    pub fn contains(&self, car: usize) -> bool {
        self.0.binary_search(&car).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// True when every element lies in `[n]`.
    pub fn within(&self, n: usize) -> bool {
        self.0.last().is_none_or(|&max| max <= n)
    }

    /// `|I ∩ [j]|`.
    pub fn count_up_to(&self, j: usize) -> usize {
        self.0.partition_point(|&c| c <= j)
    }
}

impl fmt::Display for LuckySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0, ",")
    }
}

/// Which car occupies each spot of a street with capacity one per spot;
/// `None` is a vacant spot (rendered `X`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassicalOutcome {
    slots: Vec<Option<usize>>,
}

impl ClassicalOutcome {
    /// Validates that the cars present are exactly `1..=m` for some `m`.
    pub fn new(slots: Vec<Option<usize>>) -> Result<Self> {
        let m = slots.iter().flatten().count();
        let mut seen = vec![false; m + 1];
        for &car in slots.iter().flatten() {
            if car == 0 || car > m || std::mem::replace(&mut seen[car], true) {
                return Err(Error::InvalidOutcome(format!(
                    "cars must be exactly 1..={m}, each once"
                )));
            }
        }
        Ok(Self { slots })
    }

    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        Self::new(perm.iter().map(|&c| Some(c)).collect())
    }

    pub fn slots(&self) -> &[Option<usize>] {
        &self.slots
    }

    pub fn n_spots(&self) -> usize {
        self.slots.len()
    }

    pub fn n_cars(&self) -> usize {
        self.slots.iter().flatten().count()
    }

    /// The permutation when no spot is vacant.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        self.slots.iter().copied().collect()
    }
}

impl fmt::Display for ClassicalOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n_cars() < 10 { "" } else { " " };
        for (i, slot) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            match slot {
                Some(car) => write!(f, "{car}")?,
                None => f.write_str("X")?,
            }
        }
        Ok(())
    }
}

impl Serialize for ClassicalOutcome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks: Vec<Option<[usize; 1]>> = self.slots.iter().map(|c| c.map(|c| [c])).collect();
        blocks.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClassicalOutcome {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks: Vec<Option<[usize; 1]>> = Deserialize::deserialize(d)?;
        Self::new(blocks.into_iter().map(|b| b.map(|[c]| c)).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// Blocks `B_1 ... B_M` of a vector parking outcome: block `i` lists the
/// cars parked in spot `i` in increasing order, or is `None` (`X`) when the
/// spot has capacity zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VectorOutcome {
    blocks: Vec<Option<Vec<usize>>>,
}

impl VectorOutcome {
    /// Checks the block shape against `u` and that the blocks partition `[n]`.
    pub fn new(u: &CapacityProfile, blocks: Vec<Option<Vec<usize>>>) -> Result<Self> {
        if blocks.len() != u.max_spot() {
            return Err(Error::InvalidOutcome(format!(
                "expected {} blocks, found {}",
                u.max_spot(),
                blocks.len()
            )));
        }
        let n = u.len();
        let mut seen = vec![false; n + 1];
        for (i, block) in blocks.iter().enumerate() {
            let cap = u.multiplicity(i + 1);
            match block {
                None if cap == 0 => {}
                None => {
                    return Err(Error::InvalidOutcome(format!("spot {} is available", i + 1)))
                }
                Some(_) if cap == 0 => {
                    return Err(Error::InvalidOutcome(format!("spot {} is unavailable", i + 1)))
                }
                Some(cars) => {
                    if cars.len() != cap || cars.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(Error::InvalidOutcome(format!(
                            "spot {} must hold {cap} cars in increasing order",
                            i + 1
                        )));
                    }
                    for &car in cars {
                        if car == 0 || car > n || std::mem::replace(&mut seen[car], true) {
                            return Err(Error::InvalidOutcome(format!("bad car {car}")));
                        }
                    }
                }
            }
        }
        Ok(Self { blocks })
    }

    /// Builds an outcome from the spot each car parked in.
    pub(crate) fn from_spots(u: &CapacityProfile, spot_of: &[usize]) -> Self {
        let mut blocks: Vec<Option<Vec<usize>>> = (1..=u.max_spot())
            .map(|s| (u.multiplicity(s) > 0).then(Vec::new))
            .collect();
        for (car, &spot) in spot_of.iter().enumerate() {
            blocks[spot - 1]
                .as_mut()
                .expect("cars only park in available spots")
                .push(car + 1);
        }
        Self { blocks }
    }

    pub(crate) fn from_blocks_unchecked(blocks: Vec<Option<Vec<usize>>>) -> Self {
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Option<Vec<usize>>] {
        &self.blocks
    }

    /// Number of spots `M`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn n_cars(&self) -> usize {
        self.blocks.iter().flatten().map(Vec::len).sum()
    }

    /// Spot (1-indexed) holding `car`.
    pub fn spot_of(&self, car: usize) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.as_ref().is_some_and(|cars| cars.contains(&car)))
            .map(|i| i + 1)
    }
}

impl fmt::Display for VectorOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match block {
                None => f.write_str("X")?,
                Some(cars) => {
                    f.write_str("{")?;
                    write_joined(f, cars, ",")?;
                    f.write_str("}")?;
                }
            }
        }
        Ok(())
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, items: &[usize], sep: &str) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// A one-way street with per-spot capacities and a next-open-spot pointer
/// forest, so each car finds its spot in amortized near-constant time.
#[derive(Clone, Debug)]
pub(crate) struct Street {
    capacity: Vec<usize>,
    used: Vec<usize>,
    /// `next[s]` points at a spot `>= s` that may still be open; `len + 1`
    /// means off the end of the street.
    next: Vec<usize>,
}

impl Street {
    /// `capacity[s]` for `s` in `1..=len`; index 0 is ignored.
    pub(crate) fn new(capacity: &[usize]) -> Self {
        let len = capacity.len().saturating_sub(1);
        let mut street = Self {
            capacity: capacity.to_vec(),
            used: vec![0; len + 2],
            next: vec![0; len + 2],
        };
        street.capacity.resize(len + 2, 0);
        street.capacity[0] = 0;
        street.reset();
        street
    }

    pub(crate) fn with_unit_spots(n_spots: usize) -> Self {
        let mut capacity = vec![1; n_spots + 1];
        capacity[0] = 0;
        Self::new(&capacity)
    }

    fn len(&self) -> usize {
        self.next.len() - 2
    }

    pub(crate) fn reset(&mut self) {
        self.used.iter_mut().for_each(|u| *u = 0);
        for (s, next) in self.next.iter_mut().enumerate() {
            *next = s;
        }
    }

    fn open_spot_from(&mut self, spot: usize) -> usize {
        let mut root = spot;
        while self.next[root] != root {
            root = self.next[root];
        }
        let mut cur = spot;
        while self.next[cur] != root {
            cur = std::mem::replace(&mut self.next[cur], root);
        }
        root
    }

    /// Parks every car, writing its spot into `spot_of`. On failure returns
    /// the 1-indexed car that could not park.
    pub(crate) fn park(&mut self, prefs: &[usize], spot_of: &mut Vec<usize>) -> Result<(), usize> {
        self.reset();
        spot_of.clear();
        let end = self.len() + 1;
        // Spots with zero capacity are never open.
        for s in 1..end {
            if self.capacity[s] == 0 {
                self.next[s] = s + 1;
            }
        }
        for (i, &pref) in prefs.iter().enumerate() {
            if pref == 0 || pref >= end {
                return Err(i + 1);
            }
            let spot = self.open_spot_from(pref);
            if spot >= end {
                return Err(i + 1);
            }
            self.used[spot] += 1;
            if self.used[spot] == self.capacity[spot] {
                self.next[spot] = spot + 1;
            }
            spot_of.push(spot);
        }
        Ok(())
    }
}

fn lucky_from_spots(prefs: &[usize], spot_of: &[usize]) -> LuckySet {
    LuckySet(
        prefs
            .iter()
            .zip(spot_of)
            .enumerate()
            .filter(|(_, (p, s))| p == s)
            .map(|(i, _)| i + 1)
            .collect(),
    )
}

/// Runs the capacity-one process of `prefs.len()` cars on `n_spots` spots.
/// Returns `None` if some car drives off the end.
pub fn park_classical(
    prefs: &PreferenceVector,
    n_spots: usize,
) -> Option<(ClassicalOutcome, LuckySet)> {
    let mut street = Street::with_unit_spots(n_spots);
    let mut spot_of = Vec::with_capacity(prefs.len());
    street.park(prefs.as_slice(), &mut spot_of).ok()?;
    Some(classical_result(prefs.as_slice(), &spot_of, n_spots))
}

pub(crate) fn classical_result(
    prefs: &[usize],
    spot_of: &[usize],
    n_spots: usize,
) -> (ClassicalOutcome, LuckySet) {
    let mut slots = vec![None; n_spots];
    for (car, &spot) in spot_of.iter().enumerate() {
        slots[spot - 1] = Some(car + 1);
    }
    (ClassicalOutcome { slots }, lucky_from_spots(prefs, spot_of))
}

pub fn is_parking_function(prefs: &PreferenceVector, n_spots: usize) -> bool {
    park_classical(prefs, n_spots).is_some()
}

/// Runs the vector process for `u`. Returns `None` when some car fails to
/// park or when the lengths of `prefs` and `u` differ.
pub fn park_vector(
    u: &CapacityProfile,
    prefs: &PreferenceVector,
) -> Option<(VectorOutcome, LuckySet)> {
    if prefs.len() != u.len() {
        return None;
    }
    let mut street = Street::new(u.multiplicities());
    let mut spot_of = Vec::with_capacity(prefs.len());
    street.park(prefs.as_slice(), &mut spot_of).ok()?;
    Some(vector_result(u, prefs.as_slice(), &spot_of))
}

pub(crate) fn vector_result(
    u: &CapacityProfile,
    prefs: &[usize],
    spot_of: &[usize],
) -> (VectorOutcome, LuckySet) {
    (VectorOutcome::from_spots(u, spot_of), lucky_from_spots(prefs, spot_of))
}

/// The first car (1-indexed) that fails to park under `u`, if any.
pub fn first_failing_car(u: &CapacityProfile, prefs: &PreferenceVector) -> Option<usize> {
    let mut street = Street::new(u.multiplicities());
    let mut spot_of = Vec::new();
    street.park(prefs.as_slice(), &mut spot_of).err()
}

/// Sorted characterization: `a_(i) <= u_i` for all `i`.
pub fn is_u_parking_function(u: &CapacityProfile, prefs: &PreferenceVector) -> bool {
    u.accepts_sorted(prefs.as_slice())
}

fn run_vector(u: &CapacityProfile, prefs: &PreferenceVector) -> Result<(VectorOutcome, LuckySet)> {
    if prefs.len() != u.len() {
        return Err(Error::LengthMismatch { prefs: prefs.len(), cars: u.len() });
    }
    park_vector(u, prefs).ok_or_else(|| Error::NotParkingFunction {
        car: first_failing_car(u, prefs).unwrap_or(prefs.len()),
    })
}

pub fn outcome_of(u: &CapacityProfile, prefs: &PreferenceVector) -> Result<VectorOutcome> {
    run_vector(u, prefs).map(|(outcome, _)| outcome)
}

pub fn lucky_set_of(u: &CapacityProfile, prefs: &PreferenceVector) -> Result<LuckySet> {
    run_vector(u, prefs).map(|(_, lucky)| lucky)
}
