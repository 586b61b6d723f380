//! `table`: a formula swept over ranges of its inputs, as CSV or JSON.

use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use lucky_core::OracleConfig;

use crate::args::{
    parse_k_range, parse_range, parse_set, parse_vec, KRange, RangeArg, SetArg, VecArg,
};
use crate::formula::{self, Formula, Oracle, Param, Params};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    formula: Formula,
    /// Range of n, e.g. 1..6.
    #[arg(long, value_parser = parse_range)]
    n: Option<RangeArg>,
    #[arg(long, value_parser = parse_range)]
    m: Option<RangeArg>,
    /// Range of k, or `all` for 0..=cars.
    #[arg(long, value_parser = parse_k_range)]
    k: Option<KRange>,
    #[arg(long, value_parser = parse_range)]
    i: Option<RangeArg>,
    #[arg(long, value_parser = parse_range)]
    j: Option<RangeArg>,
    /// A fixed lucky set.
    #[arg(long = "I", value_parser = parse_set, conflicts_with = "prefix")]
    lucky: Option<SetArg>,
    /// Lucky sets {1, ..., k} for k in this range (rows with k above the
    /// number of cars are skipped).
    #[arg(long = "I-prefix-k", id = "prefix", value_parser = parse_range)]
    prefix: Option<RangeArg>,
    #[arg(long = "L", value_parser = parse_set)]
    spots: Option<SetArg>,
    #[arg(long = "s", value_parser = parse_set)]
    forbidden: Option<SetArg>,
    #[arg(long, value_parser = parse_vec)]
    u: Option<VecArg>,
    /// Add oracle value and match columns.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t)]
    format: TableFormat,
}

/// Header plus rows of rendered cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TableArgs {
    fn given(&self, p: Param) -> bool {
        match p {
            Param::N => self.n.is_some(),
            Param::M => self.m.is_some(),
            Param::K => self.k.is_some(),
            Param::I => self.i.is_some(),
            Param::J => self.j.is_some(),
            Param::LuckySet => self.lucky.is_some() || self.prefix.is_some(),
            Param::LuckySpots => self.spots.is_some(),
            Param::Forbidden => self.forbidden.is_some(),
            Param::U => self.u.is_some(),
        }
    }

    fn validate(&self) -> Result<()> {
        use Param::*;
        let needed = self.formula.params();
        for p in [N, M, K, I, J, LuckySet, LuckySpots, Forbidden, U] {
            let flag = if p == LuckySet { "I or --I-prefix-k".to_string() } else { p.name().to_string() };
            match (needed.contains(&p), self.given(p)) {
                (true, false) => bail!("table {} requires --{flag}", self.formula.name()),
                (false, true) => bail!("table {} does not take --{flag}", self.formula.name()),
                _ => {}
            }
        }
        Ok(())
    }

    /// Rows in nested order of the formula's inputs, first input outermost.
    fn rows(&self) -> Result<Vec<Params>> {
        let mut rows = vec![Params::default()];
        for &p in self.formula.params() {
            let mut next = Vec::new();
            for row in rows {
                let cars = || row.cars(self.formula);
                let mut push = |f: &dyn Fn(&mut Params)| {
                    let mut r = row.clone();
                    f(&mut r);
                    next.push(r);
                };
                match p {
                    Param::N => self.n.unwrap().iter().for_each(|v| push(&|r| r.n = Some(v))),
                    Param::M => self.m.unwrap().iter().for_each(|v| push(&|r| r.m = Some(v))),
                    Param::I => self.i.unwrap().iter().for_each(|v| push(&|r| r.i = Some(v))),
                    Param::J => self.j.unwrap().iter().for_each(|v| push(&|r| r.j = Some(v))),
                    Param::K => {
                        let ks = match self.k.unwrap() {
                            KRange::All => RangeArg { lo: 0, hi: cars()? },
                            KRange::Range(r) => r,
                        };
                        ks.iter().for_each(|v| push(&|r| r.k = Some(v)));
                    }
                    Param::LuckySet => match (&self.lucky, self.prefix) {
                        (Some(set), _) => push(&|r| r.lucky = Some(set.0.clone())),
                        (None, Some(range)) => {
                            let cars = cars()?;
                            range
                                .iter()
                                .filter(|&k| k <= cars)
                                .for_each(|k| push(&|r| r.lucky = Some((1..=k).collect())));
                        }
                        (None, None) => unreachable!("validated"),
                    },
                    Param::LuckySpots => {
                        let spots = self.spots.clone().unwrap().0;
                        push(&|r| r.spots = Some(spots.clone()));
                    }
                    Param::Forbidden => {
                        let s = self.forbidden.clone().unwrap().0;
                        push(&|r| r.forbidden = Some(s.clone()));
                    }
                    Param::U => {
                        let u = self.u.clone().unwrap().0;
                        push(&|r| r.u = Some(u.clone()));
                    }
                }
            }
            rows = next;
        }
        Ok(rows)
    }
}

pub fn build(args: &TableArgs, config: OracleConfig) -> Result<Table> {
    args.validate()?;
    let formula = args.formula;
    let mut columns: Vec<String> = formula.params().iter().map(|p| p.name().to_owned()).collect();
    columns.push("value".into());
    if args.oracle {
        columns.extend(["oracle".into(), "match".into()]);
    }
    // Rows outside a formula's domain (m > n, j <= i, spots off the street)
    // are left out of the sweep.
    let evaluated: Vec<(Params, _)> = args
        .rows()?
        .into_iter()
        .filter_map(|p| formula::evaluate(formula, &p).ok().map(|v| (p, v)))
        .collect();
    let mut oracle = Oracle::new(config);
    if args.oracle {
        for (p, _) in &evaluated {
            oracle.check_cap(formula, p)?;
        }
    }
    let mut rows = Vec::with_capacity(evaluated.len());
    for (p, value) in evaluated {
        let mut row: Vec<String> = formula.params().iter().map(|&q| p.render(q)).collect();
        row.push(value.to_string());
        if args.oracle {
            let truth = oracle.value(formula, &p)?;
            row.push(truth.to_string());
            row.push((truth == value).to_string());
        }
        rows.push(row);
    }
    Ok(Table { columns, rows })
}

pub fn run(args: TableArgs, config: OracleConfig) -> Result<ExitCode> {
    let table = build(&args, config)?;
    let stdout = std::io::stdout();
    match args.format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(stdout.lock());
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
        TableFormat::Json => {
            let mut out = stdout.lock();
            serde_json::to_writer(&mut out, &table)?;
            writeln!(out)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
