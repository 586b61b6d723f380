//! The counting formulas exposed on the command line, their inputs, and
//! the oracle census field each one is checked against.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

use lucky_core::oracle::{self, Census};
use lucky_core::upf::const_then_jump_profile;
use lucky_core::vector::LuckySpotSet;
use lucky_core::{
    classical, upf, vector, CapacityProfile, ClassicalOutcome, Count, ForbiddenSpotSet, LuckySet,
    OracleConfig, VectorOutcome,
};

use crate::args::join;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Formula {
    #[value(name = "outcomes-fixed-I")]
    OutcomesFixedI,
    #[value(name = "outcomes-mn-fixed-I")]
    OutcomesMnFixedI,
    #[value(name = "outcomes-mn-k")]
    OutcomesMnK,
    #[value(name = "outcomes-completion-k")]
    OutcomesCompletionK,
    #[value(name = "c1")]
    C1,
    #[value(name = "c2")]
    C2,
    #[value(name = "c3")]
    C3,
    #[value(name = "outcomes-lucky-spots")]
    OutcomesLuckySpots,
    #[value(name = "upf-fixed-I")]
    UpfFixedI,
    #[value(name = "upf-k")]
    UpfK,
    #[value(name = "upf-const-jump")]
    UpfConstJump,
}

/// One input of a formula; also a table column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    N,
    M,
    K,
    I,
    J,
    LuckySet,
    LuckySpots,
    Forbidden,
    U,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::N => "n",
            Param::M => "m",
            Param::K => "k",
            Param::I => "i",
            Param::J => "j",
            Param::LuckySet => "I",
            Param::LuckySpots => "L",
            Param::Forbidden => "s",
            Param::U => "u",
        }
    }
}

impl Formula {
    pub fn name(self) -> &'static str {
        match self {
            Formula::OutcomesFixedI => "outcomes-fixed-I",
            Formula::OutcomesMnFixedI => "outcomes-mn-fixed-I",
            Formula::OutcomesMnK => "outcomes-mn-k",
            Formula::OutcomesCompletionK => "outcomes-completion-k",
            Formula::C1 => "c1",
            Formula::C2 => "c2",
            Formula::C3 => "c3",
            Formula::OutcomesLuckySpots => "outcomes-lucky-spots",
            Formula::UpfFixedI => "upf-fixed-I",
            Formula::UpfK => "upf-k",
            Formula::UpfConstJump => "upf-const-jump",
        }
    }

    /// Inputs in column order.
    pub fn params(self) -> &'static [Param] {
        use Param::*;
        match self {
            Formula::OutcomesFixedI | Formula::C1 | Formula::C2 | Formula::C3 => &[N, LuckySet],
            Formula::OutcomesMnFixedI => &[M, N, LuckySet],
            Formula::OutcomesMnK => &[M, N, K],
            Formula::OutcomesCompletionK => &[N, Forbidden, K],
            Formula::OutcomesLuckySpots => &[U, LuckySpots],
            Formula::UpfFixedI => &[U, LuckySet],
            Formula::UpfK => &[U, K],
            Formula::UpfConstJump => &[N, I, J, K],
        }
    }

    /// The unavailable spot defining a single-gap family.
    fn gap(self) -> Option<usize> {
        match self {
            Formula::C1 => Some(1),
            Formula::C2 => Some(2),
            Formula::C3 => Some(3),
            _ => None,
        }
    }
}

/// A fully specified formula input.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub lucky: Option<Vec<usize>>,
    pub spots: Option<Vec<usize>>,
    pub forbidden: Option<Vec<usize>>,
    pub u: Option<Vec<usize>>,
}

impl Params {
    fn present(&self, p: Param) -> bool {
        match p {
            Param::N => self.n.is_some(),
            Param::M => self.m.is_some(),
            Param::K => self.k.is_some(),
            Param::I => self.i.is_some(),
            Param::J => self.j.is_some(),
            Param::LuckySet => self.lucky.is_some(),
            Param::LuckySpots => self.spots.is_some(),
            Param::Forbidden => self.forbidden.is_some(),
            Param::U => self.u.is_some(),
        }
    }

    /// Requires exactly the inputs of `formula`.
    pub fn check(&self, formula: Formula) -> Result<()> {
        use Param::*;
        let needed = formula.params();
        let missing: Vec<String> =
            needed.iter().filter(|p| !self.present(**p)).map(|p| format!("--{}", p.name())).collect();
        if !missing.is_empty() {
            bail!("{} requires {}", formula.name(), missing.join(", "));
        }
        let extra: Vec<String> = [N, M, K, I, J, LuckySet, LuckySpots, Forbidden, U]
            .into_iter()
            .filter(|p| self.present(*p) && !needed.contains(p))
            .map(|p| format!("--{}", p.name()))
            .collect();
        if !extra.is_empty() {
            bail!("{} does not take {}", formula.name(), extra.join(", "));
        }
        Ok(())
    }

    pub fn render(&self, p: Param) -> String {
        let scalar = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
        let list = |v: &Option<Vec<usize>>| v.as_deref().map(join).unwrap_or_default();
        match p {
            Param::N => scalar(self.n),
            Param::M => scalar(self.m),
            Param::K => scalar(self.k),
            Param::I => scalar(self.i),
            Param::J => scalar(self.j),
            Param::LuckySet => list(&self.lucky),
            Param::LuckySpots => list(&self.spots),
            Param::Forbidden => list(&self.forbidden),
            Param::U => list(&self.u),
        }
    }

    /// `n=5 I=1,4`.
    pub fn describe(&self, formula: Formula) -> String {
        formula
            .params()
            .iter()
            .map(|&p| format!("{}={}", p.name(), self.render(p)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The inputs as a JSON object, sets as arrays.
    pub fn to_json(&self, formula: Formula) -> Value {
        let mut map = Map::new();
        for &p in formula.params() {
            let value = match p {
                Param::N => json!(self.n),
                Param::M => json!(self.m),
                Param::K => json!(self.k),
                Param::I => json!(self.i),
                Param::J => json!(self.j),
                Param::LuckySet => json!(self.lucky),
                Param::LuckySpots => json!(self.spots),
                Param::Forbidden => json!(self.forbidden),
                Param::U => json!(self.u),
            };
            map.insert(p.name().to_owned(), value);
        }
        Value::Object(map)
    }

    fn get(v: Option<usize>, p: Param) -> Result<usize> {
        v.with_context(|| format!("missing --{}", p.name()))
    }

    fn n(&self) -> Result<usize> {
        Self::get(self.n, Param::N)
    }

    fn m(&self) -> Result<usize> {
        Self::get(self.m, Param::M)
    }

    fn k(&self) -> Result<usize> {
        Self::get(self.k, Param::K)
    }

    fn lucky_set(&self) -> Result<LuckySet> {
        let cars = self.lucky.as_ref().context("missing --I")?;
        Ok(LuckySet::new(cars.iter().copied())?)
    }

    fn capacity(&self) -> Result<CapacityProfile> {
        Ok(CapacityProfile::new(self.u.clone().context("missing --u")?)?)
    }

    fn forbidden_set(&self) -> Result<ForbiddenSpotSet> {
        Ok(ForbiddenSpotSet::new(self.n()?, self.forbidden.clone().context("missing --s")?)?)
    }

    fn const_jump(&self) -> Result<(usize, usize, usize)> {
        Ok((self.n()?, Self::get(self.i, Param::I)?, Self::get(self.j, Param::J)?))
    }

    /// `n`, `m` or `|u|`: the largest meaningful lucky count.
    pub fn cars(&self, formula: Formula) -> Result<usize> {
        match formula {
            Formula::OutcomesMnK | Formula::OutcomesMnFixedI => self.m(),
            Formula::OutcomesLuckySpots | Formula::UpfFixedI | Formula::UpfK => {
                Ok(self.u.as_ref().context("missing --u")?.len())
            }
            _ => self.n(),
        }
    }
}

/// Evaluates the closed form.
pub fn evaluate(formula: Formula, p: &Params) -> Result<Count> {
    Ok(match formula {
        Formula::OutcomesFixedI => classical::count_outcomes_fixed_i(p.n()?, &p.lucky_set()?),
        Formula::OutcomesMnFixedI => {
            let (m, n) = (p.m()?, p.n()?);
            if m > n {
                bail!("need m <= n, got m={m} n={n}");
            }
            classical::count_outcomes_mn_fixed_i(m, n, &p.lucky_set()?)
        }
        Formula::OutcomesMnK => {
            let (m, n) = (p.m()?, p.n()?);
            if m > n {
                bail!("need m <= n, got m={m} n={n}");
            }
            classical::count_outcomes_mn_k_lucky(m, n, p.k()?)
        }
        Formula::OutcomesCompletionK => {
            vector::count_outcomes_completion_k_lucky(&p.forbidden_set()?, p.k()?)
        }
        Formula::C1 => vector::c1(p.n()?, &p.lucky_set()?),
        Formula::C2 => vector::c2(p.n()?, &p.lucky_set()?),
        Formula::C3 => vector::c3(p.n()?, &p.lucky_set()?),
        Formula::OutcomesLuckySpots => {
            let u = p.capacity()?;
            let spots = LuckySpotSet::new(&u, p.spots.clone().context("missing --L")?)?;
            vector::count_outcomes_lucky_spots(&u, &spots)
        }
        Formula::UpfFixedI => upf::count_upfs_fixed_i(&p.capacity()?, &p.lucky_set()?),
        Formula::UpfK => upf::count_upfs_k_lucky(&p.capacity()?, p.k()?),
        Formula::UpfConstJump => {
            let (n, i, j) = p.const_jump()?;
            upf::count_upfs_const_then_jump(n, i, j, p.k()?)?
        }
    })
}

/// The `(m, n)` variant of the k-lucky count whose inner binomial is
/// `C(m-j, d)`; reported alongside the main formula by `verify`.
pub fn mn_derived_variant(p: &Params) -> Result<Count> {
    Ok(classical::count_outcomes_mn_k_lucky_with(
        p.m()?,
        p.n()?,
        p.k()?,
        classical::MnBinomial::Derived,
    ))
}

/// Which exhaustive census answers a formula.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum CensusKey {
    Mn(usize, usize),
    Vector(Vec<usize>),
    Spots(Vec<usize>),
}

impl CensusKey {
    fn for_params(formula: Formula, p: &Params) -> Result<Self> {
        Ok(match formula {
            Formula::OutcomesFixedI => CensusKey::Mn(p.n()?, p.n()?),
            Formula::OutcomesMnFixedI | Formula::OutcomesMnK => CensusKey::Mn(p.m()?, p.n()?),
            Formula::OutcomesCompletionK => {
                CensusKey::Vector(p.forbidden_set()?.capacity().u().to_vec())
            }
            Formula::C1 | Formula::C2 | Formula::C3 => {
                let gap = formula.gap().expect("single-gap family");
                CensusKey::Vector(CapacityProfile::skipping_spot(gap, p.n()?).u().to_vec())
            }
            Formula::OutcomesLuckySpots => CensusKey::Spots(p.capacity()?.u().to_vec()),
            Formula::UpfFixedI | Formula::UpfK => CensusKey::Vector(p.capacity()?.u().to_vec()),
            Formula::UpfConstJump => {
                let (n, i, j) = p.const_jump()?;
                CensusKey::Vector(const_then_jump_profile(n, i, j)?.u().to_vec())
            }
        })
    }

    /// `(alphabet, length)` of the preference space.
    fn space(&self) -> (usize, usize) {
        match self {
            CensusKey::Mn(m, n) => (*n, *m),
            CensusKey::Vector(u) | CensusKey::Spots(u) => {
                (u.last().copied().unwrap_or(0), u.len())
            }
        }
    }
}

/// Runs and memoizes oracle censuses.
pub struct Oracle {
    config: OracleConfig,
    mn: BTreeMap<(usize, usize), Census<ClassicalOutcome>>,
    vector: BTreeMap<Vec<usize>, Census<VectorOutcome>>,
    spots: BTreeMap<Vec<usize>, BTreeMap<Vec<usize>, BTreeSet<VectorOutcome>>>,
}

impl Oracle {
    pub fn new(config: OracleConfig) -> Self {
        Self { config, mn: BTreeMap::new(), vector: BTreeMap::new(), spots: BTreeMap::new() }
    }

    /// Fails if the census behind `formula` at `p` would exceed the cap.
    pub fn check_cap(&self, formula: Formula, p: &Params) -> Result<()> {
        let (alphabet, len) = CensusKey::for_params(formula, p)?.space();
        self.config.check(alphabet, len)?;
        Ok(())
    }

    pub fn value(&mut self, formula: Formula, p: &Params) -> Result<Count> {
        let key = CensusKey::for_params(formula, p)?;
        let config = self.config;
        let count = match key {
            CensusKey::Mn(m, n) => {
                if m > n {
                    bail!("need m <= n, got m={m} n={n}");
                }
                if let Entry::Vacant(slot) = self.mn.entry((m, n)) {
                    slot.insert(oracle::census_mn(m, n, &config)?);
                }
                let census = &self.mn[&(m, n)];
                match formula {
                    Formula::OutcomesMnK => census.outcomes_with_k(p.k()?) as u64,
                    _ => census.outcomes_with(&p.lucky_set()?) as u64,
                }
            }
            CensusKey::Vector(u) => {
                if !self.vector.contains_key(&u) {
                    let profile = CapacityProfile::new(u.clone())?;
                    self.vector.insert(u.clone(), oracle::census_vector(&profile, &config)?);
                }
                let census = &self.vector[&u];
                match formula {
                    Formula::OutcomesCompletionK => census.outcomes_with_k(p.k()?) as u64,
                    Formula::C1 | Formula::C2 | Formula::C3 => {
                        census.outcomes_with(&p.lucky_set()?) as u64
                    }
                    Formula::UpfFixedI => census.functions_with(&p.lucky_set()?),
                    _ => census.functions_with_k(p.k()?),
                }
            }
            CensusKey::Spots(u) => {
                if !self.spots.contains_key(&u) {
                    let profile = CapacityProfile::new(u.clone())?;
                    self.spots.insert(u.clone(), oracle::census_lucky_spots(&profile, &config)?);
                }
                let census = &self.spots[&u];
                let spots = p.spots.as_ref().context("missing --L")?;
                census.get(spots).map_or(0, BTreeSet::len) as u64
            }
        };
        Ok(Count::from(count))
    }
}
