//! End-to-end acceptance criteria: every closed form against the
//! exhaustive oracle over small parameter grids. Prints one PASS/FAIL line
//! per criterion and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use lucky_core::classical::{
    count_outcomes_fixed_i, count_outcomes_mn_fixed_i, count_outcomes_mn_k_lucky_with,
    MnBinomial,
};
use lucky_core::combinatorics::{eulerian_partial_sum, factorial};
use lucky_core::count::pow;
use lucky_core::oracle::{self, census_lucky_spots};
use lucky_core::parking::park_vector;
use lucky_core::upf::{
    const_then_jump_profile, count_upfs_const_then_jump, count_upfs_fixed_i, count_upfs_k_lucky,
    count_upfs_with_outcome,
};
use lucky_core::vector::{
    associated_composition, c1, c2, c3, count_outcomes_completion_k_lucky,
    count_outcomes_lucky_spots, iter_valid_u_outcomes, ForbiddenSpotSet, LuckySpotSet,
};
use lucky_core::{CapacityProfile, Count, LuckySet, OracleConfig, PreferenceVector, VectorOutcome};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfg() -> OracleConfig {
    OracleConfig::default()
}

fn all_subsets(n: usize) -> impl Iterator<Item = LuckySet> {
    (0u64..(1 << n)).map(move |mask| LuckySet::from_mask(n, mask))
}

/// Every weakly increasing `u` of length `n` with entries in `1..=max`.
fn capacity_vectors(n: usize, max: usize) -> Vec<CapacityProfile> {
    fn extend(prefix: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<CapacityProfile>) {
        if prefix.len() == n {
            out.push(CapacityProfile::new(prefix.clone()).unwrap());
            return;
        }
        let lo = prefix.last().copied().unwrap_or(1);
        for v in lo..=max {
            prefix.push(v);
            extend(prefix, n, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n, max, &mut out);
    out
}

fn grid(n_max: usize, m_max: usize) -> Vec<CapacityProfile> {
    (1..=n_max).flat_map(|n| capacity_vectors(n, m_max)).collect()
}

fn classical_totals() -> Check {
    for n in 1..=6 {
        let total = oracle::census_classical(n, &cfg()).map_err(|e| e.to_string())?.total;
        let expected = (n as u64 + 1).pow(n as u32 - 1);
        ensure(total == expected, || format!("n={n}: oracle {total}, expected {expected}"))?;
    }
    Ok("n = 1..6".into())
}

/// Coefficients of `q Π_{i=1}^{n-1} (i + (n-i+1) q)`.
fn lucky_product(n: usize) -> Vec<u64> {
    let mut poly = vec![0, 1];
    for i in 1..n {
        let (a, b) = (i as u64, (n - i + 1) as u64);
        let mut next = vec![0; poly.len() + 1];
        for (d, &c) in poly.iter().enumerate() {
            next[d] += a * c;
            next[d + 1] += b * c;
        }
        poly = next;
    }
    poly
}

fn lucky_polynomial_product() -> Check {
    for n in 1..=6 {
        let brute = oracle::lucky_polynomial(n, &cfg()).map_err(|e| e.to_string())?;
        let closed = lucky_product(n);
        ensure(brute == closed, || format!("n={n}: oracle {brute:?}, expansion {closed:?}"))?;
    }
    Ok("n = 1..6".into())
}

fn fixed_lucky_set_outcomes() -> Check {
    let n5 = |v: &[usize]| count_outcomes_fixed_i(5, &LuckySet::new(v.iter().copied()).unwrap());
    ensure(n5(&[1, 4]) == Count::from(4u8), || "n=5 I={1,4} is not 4".into())?;
    ensure(n5(&[1, 2, 3]) == Count::from(54u8), || "n=5 I={1,2,3} is not 54".into())?;
    let mut checked = 0;
    for n in 1..=6 {
        let census = oracle::census_classical(n, &cfg()).map_err(|e| e.to_string())?;
        for lucky in all_subsets(n) {
            let formula = count_outcomes_fixed_i(n, &lucky);
            let brute = Count::from(census.outcomes_with(&lucky));
            ensure(formula == brute, || format!("n={n} I={{{lucky}}}: formula {formula}, oracle {brute}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} lucky sets, n = 1..6"))
}

fn mn_outcomes() -> Check {
    let mut stated_ok = true;
    let mut derived_ok = true;
    let mut first_derived_miss = None;
    for m in 1..=4 {
        for n in m..=6 {
            let census = oracle::census_mn(m, n, &cfg()).map_err(|e| e.to_string())?;
            for lucky in all_subsets(m) {
                let formula = count_outcomes_mn_fixed_i(m, n, &lucky);
                let brute = Count::from(census.outcomes_with(&lucky));
                ensure(formula == brute, || {
                    format!("m={m} n={n} I={{{lucky}}}: formula {formula}, oracle {brute}")
                })?;
            }
            for k in 0..=m {
                let brute = Count::from(census.outcomes_with_k(k));
                stated_ok &= count_outcomes_mn_k_lucky_with(m, n, k, MnBinomial::Stated) == brute;
                let derived = count_outcomes_mn_k_lucky_with(m, n, k, MnBinomial::Derived);
                if derived != brute {
                    derived_ok = false;
                    first_derived_miss.get_or_insert(format!("m={m} n={n} k={k}: {derived} vs {brute}"));
                }
            }
        }
    }
    for n in 1..=8 {
        for k in 1..=n {
            let formula = count_outcomes_mn_k_lucky_with(n, n, k, MnBinomial::Stated);
            let eulerian = eulerian_partial_sum(n, k);
            ensure(formula == eulerian, || format!("m=n={n} k={k}: {formula} vs Σ⟨n,j⟩ = {eulerian}"))?;
        }
    }
    let verdict = match (stated_ok, derived_ok) {
        (true, true) => "both binomial variants C(m-j-1,d) and C(m-j,d) match".to_string(),
        (true, false) => format!(
            "C(m-j-1,d) matches the oracle; C(m-j,d) does not (first miss {})",
            first_derived_miss.unwrap_or_default()
        ),
        (false, true) => "only C(m-j,d) matches the oracle".to_string(),
        (false, false) => "neither binomial variant matches the oracle".to_string(),
    };
    ensure(stated_ok, || verdict.clone())?;
    Ok(verdict)
}

fn completions() -> Check {
    let mut checked = 0;
    for n in 1..=5 {
        for m in 0..=3 {
            let len = n + m;
            if len > 8 {
                continue;
            }
            for mask in 0u64..(1 << len) {
                if mask.count_ones() as usize != m {
                    continue;
                }
                let spots = LuckySet::from_mask(len, mask).as_slice().to_vec();
                let forbidden = ForbiddenSpotSet::new(n, spots).map_err(|e| e.to_string())?;
                let census = oracle::census_completion(&forbidden, &cfg()).map_err(|e| e.to_string())?;
                for k in 0..=n {
                    let formula = count_outcomes_completion_k_lucky(&forbidden, k);
                    let brute = Count::from(census.outcomes_with_k(k));
                    ensure(formula == brute, || {
                        format!("n={n} s={:?} k={k}: formula {formula}, oracle {brute}", forbidden.spots())
                    })?;
                    checked += 1;
                }
            }
        }
    }
    let special = ForbiddenSpotSet::new(3, vec![1, 3, 5]).unwrap();
    ensure(special.runs().parts() == [0, 1, 1, 1], || "δ for s=(1,3,5) is not (0,1,1,1)".into())?;
    ensure((0..=3).all(|k| count_outcomes_completion_k_lucky(&special, k) == Count::from(6u8)), || {
        "δ=(0,1,1,1) does not give 6 for every k".into()
    })?;
    Ok(format!("{checked} (s, k) instances"))
}

fn single_gap_families() -> Check {
    type Family = fn(usize, &LuckySet) -> Count;
    let families: [(&str, usize, Family); 3] = [("c1", 1, c1), ("c2", 2, c2), ("c3", 3, c3)];
    for (name, gap, f) in families {
        for n in 1..=5 {
            let u = CapacityProfile::skipping_spot(gap, n);
            let census = oracle::census_vector(&u, &cfg()).map_err(|e| e.to_string())?;
            for lucky in all_subsets(n) {
                let formula = f(n, &lucky);
                let brute = Count::from(census.outcomes_with(&lucky));
                ensure(formula == brute, || {
                    format!("{name} n={n} I={{{lucky}}}: formula {formula}, oracle {brute}")
                })?;
            }
        }
    }
    for n in 1..=20 {
        for k in 0..=n {
            let closed = factorial(k) * pow(k + 1, n - k);
            ensure(c1(n, &LuckySet::prefix(k)) == closed, || format!("c1 closed form n={n} k={k}"))?;
        }
    }
    Ok("n = 1..5 against the oracle; k!(k+1)^(n-k) for n <= 20".into())
}

fn lucky_spots() -> Check {
    let u = CapacityProfile::new(vec![1, 1, 2, 4, 4, 5]).unwrap();
    for (spots, parts) in [([1, 5], [3, 2, 1]), ([1, 4], [3, 0, 3])] {
        let l = LuckySpotSet::new(&u, spots).unwrap();
        let got = associated_composition(&u, &l);
        ensure(got.parts() == parts, || format!("δ for L={spots:?} is {:?}", got.parts()))?;
    }
    let twelve = [(vec![1, 2, 4, 5], vec![1, 5]), (vec![2, 2, 3, 5], vec![3, 5])];
    for (u, spots) in twelve {
        let u = CapacityProfile::new(u).unwrap();
        let l = LuckySpotSet::new(&u, spots.clone()).unwrap();
        let got = count_outcomes_lucky_spots(&u, &l);
        ensure(got == Count::from(12u8), || format!("u={u} L={spots:?}: {got}, expected 12"))?;
    }
    let mut checked = 0;
    for u in grid(5, 6) {
        let census = census_lucky_spots(&u, &cfg()).map_err(|e| e.to_string())?;
        let spots = u.distinct_spots();
        for mask in 0u64..(1 << spots.len()) {
            let chosen: Vec<usize> =
                spots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
            let l = LuckySpotSet::new(&u, chosen.clone()).unwrap();
            let formula = count_outcomes_lucky_spots(&u, &l);
            let brute = Count::from(census.get(&chosen).map_or(0, BTreeSet::len));
            ensure(formula == brute, || format!("u={u} L={chosen:?}: formula {formula}, oracle {brute}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (u, L) pairs, n <= 5, M <= 6"))
}

fn upf_fixed_lucky_set() -> Check {
    // The outcome {2,3} X {1,4,5} with I = {2,3,4} comes from exactly two
    // preference vectors.
    let u = CapacityProfile::new(vec![1, 1, 3, 3, 3]).unwrap();
    let target = VectorOutcome::new(&u, vec![Some(vec![2, 3]), None, Some(vec![1, 4, 5])]).unwrap();
    let lucky = LuckySet::new([2, 3, 4]).unwrap();
    let mut found = Vec::new();
    for code in 0..3usize.pow(5) {
        let prefs: Vec<usize> = (0..5).map(|i| code / 3usize.pow(4 - i as u32) % 3 + 1).collect();
        let pv = PreferenceVector::new(prefs.clone()).unwrap();
        if park_vector(&u, &pv) == Some((target.clone(), lucky.clone())) {
            found.push(prefs);
        }
    }
    ensure(found == [vec![2, 1, 1, 3, 1], vec![2, 1, 1, 3, 2]], || format!("preimages {found:?}"))?;
    ensure(count_upfs_with_outcome(&target, &lucky) == Count::from(2u8), || {
        "outcome contribution is not 2".into()
    })?;

    let mut checked = 0;
    for u in grid(5, 5) {
        let census = oracle::census_vector(&u, &cfg()).map_err(|e| e.to_string())?;
        for lucky in all_subsets(u.len()) {
            let formula = count_upfs_fixed_i(&u, &lucky);
            let brute = Count::from(census.functions_with(&lucky));
            ensure(formula == brute, || format!("u={u} I={{{lucky}}}: formula {formula}, oracle {brute}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (u, I) pairs, n <= 5, M <= 5"))
}

fn upf_k_lucky() -> Check {
    let mut checked = 0;
    for u in grid(5, 5) {
        let census = oracle::census_vector(&u, &cfg()).map_err(|e| e.to_string())?;
        let n = u.len();
        for k in 0..=n {
            let formula = count_upfs_k_lucky(&u, k);
            let by_sets: Count = all_subsets(n)
                .filter(|l| l.len() == k)
                .map(|l| count_upfs_fixed_i(&u, &l))
                .sum();
            let brute = Count::from(census.functions_with_k(k));
            ensure(formula == brute && by_sets == brute, || {
                format!("u={u} k={k}: formula {formula}, Σ fixed-I {by_sets}, oracle {brute}")
            })?;
            checked += 1;
        }
    }
    for i in 1..=3 {
        for j in i + 1..=i + 3 {
            for n in 1..=5 {
                let u = const_then_jump_profile(n, i, j).map_err(|e| e.to_string())?;
                let census = oracle::census_vector(&u, &cfg()).map_err(|e| e.to_string())?;
                for k in 0..=n {
                    let closed = count_upfs_const_then_jump(n, i, j, k).map_err(|e| e.to_string())?;
                    let formula = count_upfs_k_lucky(&u, k);
                    let brute = Count::from(census.functions_with_k(k));
                    ensure(closed == formula && closed == brute, || {
                        format!("u={u} k={k}: closed {closed}, sum {formula}, oracle {brute}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    let u = CapacityProfile::new(vec![1, 1, 3]).unwrap();
    let pair = (count_upfs_k_lucky(&u, 2), count_upfs_k_lucky(&u, 3));
    ensure(pair == (Count::from(4u8), Count::from(3u8)), || format!("u=(1,1,3): {pair:?}"))?;
    Ok(format!("{checked} (u, k) instances"))
}

fn arithmetic_totals() -> Check {
    for a in 1..=3usize {
        for b in 1..=3usize {
            for n in 1..=5usize {
                let u = CapacityProfile::arithmetic(a, b, n).map_err(|e| e.to_string())?;
                let total = oracle::census_vector(&u, &cfg()).map_err(|e| e.to_string())?.total;
                let expected = (a * (a + b * n).pow(n as u32 - 1)) as u64;
                ensure(total == expected, || format!("a={a} b={b} n={n}: oracle {total}, expected {expected}"))?;
            }
        }
    }
    Ok("a, b in {1,2,3}, n = 1..5".into())
}

fn characterization() -> Check {
    let mut checked = 0;
    for u in grid(5, 5) {
        let census = oracle::census_vector(&u, &cfg()).map_err(|e| e.to_string())?;
        for lucky in all_subsets(u.len()) {
            let accepted: BTreeSet<VectorOutcome> = iter_valid_u_outcomes(&u, &lucky).collect();
            let realized = census.by_lucky_set.get(&lucky).map(|t| &t.outcomes);
            let empty = BTreeSet::new();
            let realized = realized.unwrap_or(&empty);
            if &accepted != realized {
                let extra = accepted.difference(realized).next().map(ToString::to_string);
                let missing = realized.difference(&accepted).next().map(ToString::to_string);
                return Err(format!("u={u} I={{{lucky}}}: accepted-only {extra:?}, realized-only {missing:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (u, I) pairs, both inclusions"))
}

fn determinism() -> Check {
    let one = cfg().with_workers(1);
    let eight = cfg().with_workers(8);
    let run = |c: &OracleConfig| -> Result<Vec<String>, String> {
        let e = |e: lucky_core::Error| e.to_string();
        Ok(vec![
            oracle::census_classical(6, c).map_err(e)?.to_json(),
            oracle::census_mn(4, 6, c).map_err(e)?.to_json(),
            oracle::census_vector(&CapacityProfile::new(vec![1, 1, 3, 3, 3]).unwrap(), c).map_err(e)?.to_json(),
            oracle::census_vector(&CapacityProfile::arithmetic(2, 2, 4).unwrap(), c).map_err(e)?.to_json(),
        ])
    };
    let a = run(&one)?;
    let b = run(&eight)?;
    let bytes: usize = a.iter().map(String::len).sum();
    ensure(a == b, || "serialized censuses differ between 1 and 8 workers".into())?;
    ensure(!a.iter().any(|s| s.is_empty()), || "empty serialization".into())?;
    Ok(format!("4 censuses, {bytes} bytes identical"))
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("classical totals (n+1)^(n-1)", classical_totals),
        ("lucky-car polynomial product form", lucky_polynomial_product),
        ("fixed-I outcome counts", fixed_lucky_set_outcomes),
        ("(m,n) fixed-I and k-lucky outcome counts", mn_outcomes),
        ("parking completions with k lucky cars", completions),
        ("c1/c2/c3 single-gap families", single_gap_families),
        ("lucky-spot multinomial", lucky_spots),
        ("u-PF fixed-I counts", upf_fixed_lucky_set),
        ("u-PF k-lucky counts and (i,...,i,j) closed form", upf_k_lucky),
        ("arithmetic u totals a(a+bn)^(n-1)", arithmetic_totals),
        ("outcome characterization completeness", characterization),
        ("determinism across worker counts", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
