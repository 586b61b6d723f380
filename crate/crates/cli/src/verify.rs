//! `verify`: formula against oracle over a grid of instances.

use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::Args;

use lucky_core::{CapacityProfile, LuckySet, OracleConfig};

use crate::args::{parse_set, parse_vec, SetArg, VecArg};
use crate::formula::{self, Formula, Oracle, Param, Params};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    formula: Formula,
    /// Fix n (spots, or cars for single-gap and completion families).
    #[arg(long)]
    n: Option<usize>,
    /// Fix the number of cars of an (m, n) street.
    #[arg(long)]
    m: Option<usize>,
    /// Fix the capacity vector.
    #[arg(long, value_parser = parse_vec)]
    u: Option<VecArg>,
    /// Fix the unavailable spots of a parking completion.
    #[arg(long, value_parser = parse_set)]
    s: Option<SetArg>,
    /// Fix the repeated entry of u = (i, ..., i, j).
    #[arg(long)]
    i: Option<usize>,
    /// Fix the last entry of u = (i, ..., i, j).
    #[arg(long)]
    j: Option<usize>,
    /// Largest n (or number of cars) swept when n is not fixed.
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    /// Largest spot value in swept capacity vectors.
    #[arg(long, default_value_t = 5)]
    spot_max: usize,
    /// Most unavailable spots in swept parking completions.
    #[arg(long, default_value_t = 3)]
    forbidden_max: usize,
    /// Print only failures and the summary.
    #[arg(long)]
    quiet: bool,
}

impl VerifyArgs {
    fn reject_unused(&self) -> Result<()> {
        let used = self.formula.params();
        let given = [
            (Param::N, self.n.is_some()),
            (Param::M, self.m.is_some()),
            (Param::U, self.u.is_some()),
            (Param::Forbidden, self.s.is_some()),
            (Param::I, self.i.is_some()),
            (Param::J, self.j.is_some()),
        ];
        for (param, present) in given {
            if present && !used.contains(&param) {
                bail!("verify {} does not take --{}", self.formula.name(), param.name());
            }
        }
        Ok(())
    }

    fn ns(&self) -> Vec<usize> {
        self.n.map_or_else(|| (1..=self.n_max).collect(), |n| vec![n])
    }

    fn capacities(&self) -> Vec<Vec<usize>> {
        if let Some(u) = &self.u {
            return vec![u.0.clone()];
        }
        let mut out = Vec::new();
        for n in 1..=self.n_max {
            weakly_increasing(&mut Vec::new(), n, self.spot_max, &mut out);
        }
        out
    }

    fn mn_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for n in self.n.map_or_else(|| (1..=self.n_max).collect(), |n| vec![n]) {
            for m in self.m.map_or_else(|| (1..=n).collect(), |m| vec![m]) {
                pairs.push((m, n));
            }
        }
        pairs
    }
}

fn weakly_increasing(prefix: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for v in prefix.last().copied().unwrap_or(1)..=max {
        prefix.push(v);
        weakly_increasing(prefix, n, max, out);
        prefix.pop();
    }
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1 << n)).map(move |mask| LuckySet::from_mask(n, mask).as_slice().to_vec())
}

fn subsets_of(items: &[usize]) -> Vec<Vec<usize>> {
    (0u64..(1 << items.len()))
        .map(|mask| {
            items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect()
        })
        .collect()
}

/// Every instance the arguments select, in a fixed order.
fn instances(args: &VerifyArgs) -> Result<Vec<Params>> {
    let mut out = Vec::new();
    match args.formula {
        Formula::OutcomesFixedI | Formula::C1 | Formula::C2 | Formula::C3 => {
            for n in args.ns() {
                for lucky in subsets(n) {
                    out.push(Params { n: Some(n), lucky: Some(lucky), ..Params::default() });
                }
            }
        }
        Formula::OutcomesMnFixedI => {
            for (m, n) in args.mn_pairs() {
                for lucky in subsets(m) {
                    out.push(Params { m: Some(m), n: Some(n), lucky: Some(lucky), ..Params::default() });
                }
            }
        }
        Formula::OutcomesMnK => {
            for (m, n) in args.mn_pairs() {
                for k in 0..=m {
                    out.push(Params { m: Some(m), n: Some(n), k: Some(k), ..Params::default() });
                }
            }
        }
        Formula::OutcomesCompletionK => {
            for n in args.ns() {
                let spot_sets = match &args.s {
                    Some(s) => vec![s.0.clone()],
                    None => (0..=args.forbidden_max)
                        .flat_map(|t| subsets(n + t).filter(move |s| s.len() == t))
                        .collect(),
                };
                for s in spot_sets {
                    for k in 0..=n {
                        out.push(Params {
                            n: Some(n),
                            forbidden: Some(s.clone()),
                            k: Some(k),
                            ..Params::default()
                        });
                    }
                }
            }
        }
        Formula::OutcomesLuckySpots => {
            for u in args.capacities() {
                let spots = CapacityProfile::new(u.clone())?.distinct_spots();
                for l in subsets_of(&spots) {
                    out.push(Params { u: Some(u.clone()), spots: Some(l), ..Params::default() });
                }
            }
        }
        Formula::UpfFixedI => {
            for u in args.capacities() {
                for lucky in subsets(u.len()) {
                    out.push(Params { u: Some(u.clone()), lucky: Some(lucky), ..Params::default() });
                }
            }
        }
        Formula::UpfK => {
            for u in args.capacities() {
                for k in 0..=u.len() {
                    out.push(Params { u: Some(u.clone()), k: Some(k), ..Params::default() });
                }
            }
        }
        Formula::UpfConstJump => {
            let is = args.i.map_or_else(|| (1..=3).collect(), |i| vec![i]);
            for n in args.ns() {
                for &i in &is {
                    let js = args.j.map_or_else(|| (i + 1..=i + 3).collect(), |j| vec![j]);
                    for j in js {
                        if j <= i {
                            bail!("upf-const-jump needs i < j, got i={i} j={j}");
                        }
                        for k in 0..=n {
                            out.push(Params {
                                n: Some(n),
                                i: Some(i),
                                j: Some(j),
                                k: Some(k),
                                ..Params::default()
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn run(args: VerifyArgs, config: OracleConfig) -> Result<ExitCode> {
    args.reject_unused()?;
    let formula = args.formula;
    let grid = instances(&args)?;
    let mut oracle = Oracle::new(config);
    for p in &grid {
        oracle.check_cap(formula, p)?;
    }
    let (mut passed, mut failed) = (0usize, 0usize);
    let mut variant_matches = 0usize;
    for p in &grid {
        let value = formula::evaluate(formula, p)?;
        let truth = oracle.value(formula, p)?;
        let label = format!("{} {}", formula.name(), p.describe(formula));
        let mut note = String::new();
        if formula == Formula::OutcomesMnK {
            let derived = formula::mn_derived_variant(p)?;
            if derived == truth {
                variant_matches += 1;
            } else {
                note = format!(" [C(m-j,d) variant gives {derived}]");
            }
        }
        if value == truth {
            passed += 1;
            if !args.quiet {
                println!("PASS {label}: {value}{note}");
            }
        } else {
            failed += 1;
            println!("FAIL {label}: formula {value}, oracle {truth}{note}");
        }
    }
    if formula == Formula::OutcomesMnK && !grid.is_empty() {
        println!(
            "binomial C(m-j-1,d): {passed}/{total} match; C(m-j,d): {variant_matches}/{total} match",
            total = grid.len()
        );
    }
    println!("{}: {} instances, {passed} passed, {failed} failed", formula.name(), grid.len());
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
