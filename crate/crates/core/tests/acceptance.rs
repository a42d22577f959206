//! Acceptance suite. Prints one `[PASS]` / `[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use sensilab_core::constructions::{chaf, maf, tradeoff_sweep};
use sensilab_core::measures::{
    degree, s, s0, s1, spectral::dense_norm, spectral_sensitivity, two_layer_star_edges,
    two_layer_star_lambda, LocalGraph, SpectralOptions,
};
use sensilab_core::verify::{
    all_passed, verify_desensitization, verify_lemma_chain_random, verify_maf_proposition,
    verify_simon, verify_subgraph_lemma, verify_theorem1, verify_tradeoff, ClaimResult,
};
use sensilab_core::{BooleanFunction, CertificateCollection, SpectralMethod};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn failed(claims: &[ClaimResult]) -> Vec<String> {
    claims
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: predicted {} computed {}", c.id, c.predicted, c.computed))
        .collect()
}

fn claims_ok(claims: &[ClaimResult]) -> Result<(), String> {
    if all_passed(claims) {
        Ok(())
    } else {
        Err(failed(claims).join("; "))
    }
}

fn value(claims: &[ClaimResult], id: &str) -> f64 {
    claims
        .iter()
        .find(|c| c.id == id)
        .and_then(ClaimResult::computed_f64)
        .unwrap_or(f64::NAN)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn opts() -> SpectralOptions {
    SpectralOptions::default()
}

fn theorem1_r2() -> Check {
    let claims = verify_theorem1(2, 1e-9, &opts()).map_err(|e| e.to_string())?;
    claims_ok(&claims)?;
    ensure(value(&claims, "haf.arity") == 5.0, "arity is not 5")?;
    let lambda = value(&claims, "haf.lambda");
    ensure((lambda - 2.0).abs() <= 1e-9, format!("lambda {lambda}"))?;
    Ok(format!("s0=1 s1=4 n=5 lambda={lambda:.12}"))
}

fn theorem1_r3() -> Check {
    let claims = verify_theorem1(3, 1e-6, &opts()).map_err(|e| e.to_string())?;
    claims_ok(&claims)?;
    Ok(format!(
        "s0={} s1={} lambda={:.9}",
        value(&claims, "haf.s0"),
        value(&claims, "haf.s1"),
        value(&claims, "haf.lambda")
    ))
}

fn simon() -> Check {
    let mut mins = Vec::new();
    for n in 2..=4 {
        let out = verify_simon(n).map_err(|e| e.to_string())?;
        claims_ok(&out.claims)?;
        ensure(out.violations == 0, format!("n={n}: {} violations", out.violations))?;
        ensure(out.tables == 1 << (1 << n), "not exhaustive")?;
        mins.push(format!("n{n} min {}", out.min_sum));
        if n == 2 {
            ensure(out.min_sum == 3, format!("n=2 minimum {}", out.min_sum))?;
            let and2 = BooleanFunction::and(2).unwrap().materialize().unwrap();
            ensure(s0(&and2).value + s1(&and2).value == 3, "AND2 does not attain 3")?;
        }
    }
    Ok(mins.join(", "))
}

fn subgraph() -> Check {
    let mut checked = 0;
    for n in 1..=3 {
        let out = verify_subgraph_lemma(n, 0, 0x5EED).map_err(|e| e.to_string())?;
        claims_ok(&out.claims)?;
        ensure(out.checked == (1 << (1 << n)) - 1, "not exhaustive")?;
        checked += out.checked;
    }
    for n in 4..=8 {
        let out = verify_subgraph_lemma(n, 100_000, 0x5EED).map_err(|e| e.to_string())?;
        claims_ok(&out.claims)?;
        checked += out.checked;
    }
    Ok(format!("{checked} vertex sets, no violations"))
}

fn tradeoff_2_2() -> Check {
    let claims = verify_tradeoff(&[2], &[2], 1e-6, &opts()).map_err(|e| e.to_string())?;
    claims_ok(&claims)?;
    ensure(value(&claims, "tradeoff.arity") == 13.0, "arity")?;
    ensure(value(&claims, "tradeoff.s0") == 4.0 && value(&claims, "tradeoff.s1") == 4.0, "s0/s1")?;
    let lambda = value(&claims, "tradeoff.lambda");
    ensure((lambda - 7f64.sqrt()).abs() <= 1e-6, format!("lambda {lambda}"))?;
    let census = claims
        .iter()
        .find(|c| c.id == "tradeoff.census.other")
        .and_then(|c| c.note.clone())
        .unwrap_or_default();
    ensure(census.contains("two-layer(4,4)"), format!("no (4,4) two-layer star: {census}"))?;
    Ok(format!("lambda={lambda:.9}; {census}"))
}

fn chaf_2_2() -> Check {
    let t = chaf(&[2, 2]).unwrap().materialize().unwrap();
    ensure(t.len() == 1 << 10, "arity")?;
    let lambda = spectral_sensitivity(&t, SpectralMethod::Dense, &opts())
        .map_err(|e| e.to_string())?
        .value;
    ensure(s0(&t).value == 1 && s1(&t).value == 7, "s0/s1")?;
    ensure((lambda - 7f64.sqrt()).abs() <= 1e-6, format!("lambda {lambda}"))?;
    Ok(format!("s0=1 s1=7 lambda={lambda:.9}"))
}

fn desens_or2() -> Check {
    let or2 = BooleanFunction::or(2).unwrap();
    let set = CertificateCollection::new(true, vec!["1*".parse().unwrap(), "01".parse().unwrap()], true);
    let claims = verify_desensitization(&or2, &set, 1e-6, &opts()).map_err(|e| e.to_string())?;
    claims_ok(&claims)?;
    ensure(value(&claims, "desens.s1") == 6.0, "s1")?;
    ensure(value(&claims, "desens.s1_3uc1") == 6.0, "3 UC1")?;
    Ok(format!("s0=1 s1=6 lambda={:.9}", value(&claims, "desens.lambda")))
}

fn lemma_chain() -> Check {
    let arities: Vec<usize> = (4..=10).collect();
    let claims = verify_lemma_chain_random(&arities, 1000, 0x5EED, 1e-6, &opts()).map_err(|e| e.to_string())?;
    claims_ok(&claims)?;
    let minima: Vec<String> = arities
        .iter()
        .map(|n| format!("{}", value(&claims, &format!("degree_min.n{n}"))))
        .collect();
    Ok(format!("7000 functions, no violations; empirical min degree {}", minima.join("/")))
}

fn maf_props() -> Check {
    for k in 2..=4 {
        let claims = verify_maf_proposition(k, 1e-6, &opts()).map_err(|e| e.to_string())?;
        claims_ok(&claims)?;
        let d = degree(&maf(k).unwrap().materialize().unwrap()).unwrap();
        ensure(d >= k, format!("deg(maf{k}) = {d}"))?;
    }
    let sm = s(&maf(4).unwrap().materialize().unwrap()).value;
    ensure(sm == 3, format!("s(maf4) = {sm}"))?;
    Ok("deg(maf_k) >= k for k = 2..4, s(maf4) = 3".into())
}

fn two_layer() -> Check {
    let mut worst: f64 = 0.0;
    for a in 1..=8 {
        for b in 1..=8 {
            let (v, edges) = two_layer_star_edges(a, b);
            let dense = dense_norm(&LocalGraph::from_edges(v, &edges));
            let closed = two_layer_star_lambda(a as u64, b as u64).map_err(|e| e.to_string())?;
            worst = worst.max((dense - closed).abs());
        }
    }
    ensure(worst <= 1e-9, format!("max deviation {worst:e}"))?;
    Ok(format!("64 pairs, max deviation {worst:.1e}"))
}

fn sweep() -> Check {
    let rows = tradeoff_sweep(0, 1, 1, 1, 2).map_err(|e| e.to_string())?;
    ensure(rows.len() == 2, "row count")?;
    for r in &rows {
        ensure(r.prediction.c_hat() == 0.5, format!("g={} c_hat {}", r.g, r.prediction.c_hat()))?;
    }
    ensure(rows[0].outer == [2] && rows[1].outer == [3], "rows")?;
    Ok("c_hat = 0.5 at g = 0, 1".into())
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1 haf r=2", Duration::from_secs(1), theorem1_r2),
        ("2 haf r=3", Duration::from_secs(600), theorem1_r3),
        ("3 sum bound n=2..4", Duration::from_secs(60), simon),
        ("4 subgraph lemma", Duration::MAX, subgraph),
        ("5 tradeoff (2):(2)", Duration::from_secs(120), tradeoff_2_2),
        ("6 chaf(2,2)", Duration::MAX, chaf_2_2),
        ("7 desensitized OR2", Duration::MAX, desens_or2),
        ("8 lemma chain", Duration::MAX, lemma_chain),
        ("9 maf", Duration::MAX, maf_props),
        ("10 two-layer star", Duration::MAX, two_layer),
        ("sweep c_hat", Duration::MAX, sweep),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    for (name, limit, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > limit {
            outcome = Err(format!("took {elapsed:?}, limit {limit:?}"));
        }
        match outcome {
            Ok(msg) => println!("[PASS] {name} ({:.2}s): {msg}", elapsed.as_secs_f64()),
            Err(msg) => {
                failures += 1;
                println!("[FAIL] {name} ({:.2}s): {msg}", elapsed.as_secs_f64());
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
