//! Command-line value syntax: comma-separated sets and vectors, inclusive
//! ranges `a..b`, and `all`.

/// A set of positive integers written strictly ascending, e.g. `1,4`.
/// The empty string is the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetArg(pub Vec<usize>);

/// A weakly increasing vector of positive integers, e.g. `1,1,3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecArg(pub Vec<usize>);

/// Preferences in arrival order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefsArg(pub Vec<usize>);

/// An inclusive range `a..b` (empty when `b < a`) or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RangeArg {
    pub lo: usize,
    pub hi: usize,
}

/// A range of lucky counts, or `all` for every feasible count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KRange {
    All,
    Range(RangeArg),
}

fn parse_list(text: &str) -> Result<Vec<usize>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            let item = item.trim();
            match item.parse::<usize>() {
                Ok(0) => Err(format!("entries must be positive, found {item:?}")),
                Ok(v) => Ok(v),
                Err(_) => Err(format!("not a positive integer: {item:?}")),
            }
        })
        .collect()
}

pub fn parse_set(text: &str) -> Result<SetArg, String> {
    let items = parse_list(text)?;
    if let Some(w) = items.windows(2).find(|w| w[0] >= w[1]) {
        return Err(format!("set must be strictly ascending, found {} then {}", w[0], w[1]));
    }
    Ok(SetArg(items))
}

pub fn parse_vec(text: &str) -> Result<VecArg, String> {
    let items = parse_list(text)?;
    if items.is_empty() {
        return Err("vector must be nonempty".into());
    }
    if let Some(w) = items.windows(2).find(|w| w[0] > w[1]) {
        return Err(format!("vector must be weakly increasing, found {} then {}", w[0], w[1]));
    }
    Ok(VecArg(items))
}

/// Preferences: any order, entries positive.
pub fn parse_prefs(text: &str) -> Result<PrefsArg, String> {
    let items = parse_list(text)?;
    if items.is_empty() {
        return Err("preference list must be nonempty".into());
    }
    Ok(PrefsArg(items))
}

pub fn parse_range(text: &str) -> Result<RangeArg, String> {
    let number = |s: &str| {
        s.trim().parse::<usize>().map_err(|_| format!("not a nonnegative integer: {s:?}"))
    };
    match text.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok(RangeArg { lo: number(lo)?, hi: number(hi)? })
        }
        None => {
            let v = number(text)?;
            Ok(RangeArg { lo: v, hi: v })
        }
    }
}

pub fn parse_k_range(text: &str) -> Result<KRange, String> {
    if text.trim() == "all" {
        Ok(KRange::All)
    } else {
        parse_range(text).map(KRange::Range)
    }
}

impl RangeArg {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

/// `1,4`; the empty set renders as the empty string.
pub fn join(items: &[usize]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
