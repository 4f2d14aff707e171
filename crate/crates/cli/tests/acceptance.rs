//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;
use zeckwin::fibonacci::fib_u64;
use zeckwin::multiplier::StreamOutcome;
use zeckwin::orbit::period_holds;
use zeckwin::word::zeck_encode_u64;
use zeckwin::{
    avoids, c_of_q, exponent_set, fib, locality_probe, mul_oracle, stream_multiply,
    theta_synthesize, window_sequence, zeck_decode, ForbiddenFamily, MultiplierSpec, OrbitConfig,
};
use zeckwin_cli::{run, EXIT_MISMATCH};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn codec_round_trip() -> Check {
    let started = Instant::now();
    for n in 1..=1_000_000u64 {
        let w = zeck_encode_u64(n).map_err(|e| e.to_string())?;
        ensure(zeck_decode(&w) == BigUint::from(n), || {
            format!("decode(encode({n})) != {n}")
        })?;
        let lsd = w.lsd();
        ensure(lsd.windows(2).all(|p| p != [1, 1]), || {
            format!("Z({n}) contains 11")
        })?;
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("10^6 round trips in {} ms", elapsed.as_millis()))
}

fn uniqueness() -> Check {
    let fibs: Vec<u64> = (2..=16).map(|i| fib_u64(i).unwrap()).collect();
    let mut counts = vec![0u32; 1001];
    let mut masks = vec![0u32; 1001];
    for mask in 0u32..1 << fibs.len() {
        if mask & (mask >> 1) != 0 {
            continue;
        }
        let sum: u64 = (0..fibs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| fibs[i])
            .sum();
        if (1..=1000).contains(&sum) {
            counts[sum as usize] += 1;
            masks[sum as usize] = mask;
        }
    }
    for n in 1..=1000u64 {
        ensure(counts[n as usize] == 1, || {
            format!("{n} has {} representations", counts[n as usize])
        })?;
        let greedy = zeck_encode_u64(n).unwrap();
        let mask = greedy
            .lsd()
            .iter()
            .enumerate()
            .fold(0u32, |m, (i, &d)| m | (u32::from(d) << i));
        ensure(mask == masks[n as usize], || {
            format!("greedy differs from the subset for {n}")
        })?;
    }
    Ok("N <= 1000 each have exactly one non-adjacent subset, equal to greedy".into())
}

fn length_bound() -> Check {
    let lens: Vec<usize> = std::iter::once(0)
        .chain((1..=100_000u64).map(|n| zeck_encode_u64(n).unwrap().len()))
        .collect();
    let mut checked = 0u64;
    for q in 2..=50u64 {
        let c = c_of_q(q).map_err(|e| e.to_string())?;
        for n in 1..=100_000u64 {
            let prod = zeck_encode_u64(n * q).unwrap().len();
            let base = lens[n as usize];
            ensure(prod >= base && prod - base <= c, || {
                format!("q={q} N={n}: |Z(qN)|={prod}, |Z(N)|={base}, C={c}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (q, N) pairs within [0, C(q)]"))
}

fn fibonacci_identity() -> Check {
    for k in 0..=40 {
        for c in 1..=20 {
            ensure(
                fib(k + c) == fib(c) * fib(k + 1) + fib(c - 1) * fib(k),
                || format!("k={k} C={c}"),
            )?;
        }
    }
    Ok("F_{k+C} = F_C F_{k+1} + F_{C-1} F_k for k <= 40, C <= 20".into())
}

fn verify_report() -> Result<Value, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["zeckwin", "verify-paper", "example-3"], &mut out, &mut err);
    ensure(code == EXIT_MISMATCH, || {
        format!("verify-paper exit code {code}, expected {EXIT_MISMATCH}")
    })?;
    serde_json::from_slice(&out).map_err(|e| e.to_string())
}

fn claim<'a>(report: &'a Value, id: &str) -> Result<&'a Value, String> {
    report["paper_claims"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["id"] == id))
        .ok_or_else(|| format!("claim {id} missing"))
}

fn table_regression() -> Check {
    let report = verify_report()?;
    for (n, w, member) in [
        (0, "1####", "yes"),
        (1, "01###", "yes"),
        (2, "101##", "no"),
        (3, "00001", "yes"),
        (5, "00101", "no"),
    ] {
        let c = claim(&report, &format!("table-window-{n}"))?;
        ensure(c["observed"] == w && c["verdict"] == "match", || {
            format!("row {n}: {c}")
        })?;
        let m = claim(&report, &format!("table-member-{n}"))?;
        ensure(m["observed"] == member && m["verdict"] == "match", || {
            format!("row {n}: {m}")
        })?;
    }
    let row4 = claim(&report, "table-window-4")?;
    ensure(
        row4["expected"] == "10100" && row4["observed"] == "00100" && row4["verdict"] == "mismatch",
        || format!("row 4 not flagged: {row4}"),
    )?;
    Ok("rows 0-3, 5 reproduced; row 4 flagged (published 10100, computed 00100)".into())
}

fn exponent_set_diff() -> Check {
    let report = verify_report()?;
    for (n, expected) in [(0, "in"), (1, "in"), (2, "out"), (3, "in")] {
        let c = claim(&report, &format!("membership-{n}"))?;
        ensure(c["observed"] == expected && c["verdict"] == "match", || {
            format!("n={n}: {c}")
        })?;
    }
    let diffs: Vec<&Value> = report["paper_claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| {
            c["id"]
                .as_str()
                .is_some_and(|id| id.starts_with("set-element-"))
        })
        .collect();
    ensure(!diffs.is_empty(), || "no per-element diff emitted".into())?;
    let differing = diffs.iter().filter(|c| c["verdict"] == "mismatch").count();
    let full = claim(&report, "set-up-to-200")?;
    Ok(format!(
        "memberships 0-3 match; per-element diff over [0, 200]: {differing} of {} differ; full-set verdict: {}",
        diffs.len(),
        full["verdict"].as_str().unwrap_or("?")
    ))
}

fn locality_falsifier() -> Check {
    let theta = theta_synthesize(2, 1, 10).map_err(|e| e.to_string())?;
    let conflicts = theta.conflicts();
    ensure(!conflicts.is_empty(), || "no conflict witnesses".into())?;
    ensure(
        conflicts.iter().any(|c| {
            c.n1 == 2 && c.n2 == 5 && c.out1.to_string() == "1" && c.out2.to_string() == "0"
        }),
        || format!("witness (2, 5) missing: {conflicts:?}"),
    )?;
    let probe = locality_probe(2, 1, 10, 0).map_err(|e| e.to_string())?;
    ensure(probe.is_none(), || {
        format!("locality_probe returned {probe:?}")
    })?;
    Ok(format!(
        "{} witnesses incl. (2, 5) \"1\" vs \"0\"; probe with d_max = 0 is NotFound",
        conflicts.len()
    ))
}

fn random_word(rng: &mut StdRng, alphabet: &[char], max_len: usize) -> String {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| alphabet[rng.random_range(0..alphabet.len())])
        .collect()
}

fn random_family(rng: &mut StdRng) -> (ForbiddenFamily, Vec<String>) {
    let count = rng.random_range(1..=4);
    let patterns: Vec<String> = (0..count)
        .map(|_| {
            let len = rng.random_range(1..=5);
            (0..len)
                .map(|_| if rng.random_bool(0.5) { '1' } else { '0' })
                .collect()
        })
        .collect();
    (ForbiddenFamily::new(&patterns).unwrap(), patterns)
}

fn naive_avoids(v: &str, patterns: &[String]) -> bool {
    v.split('#')
        .all(|seg| patterns.iter().all(|p| !seg.contains(p.as_str())))
}

fn dfa_equivalence() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for i in 0..10_000 {
        let v = random_word(&mut rng, &['0', '1', '#'], 64);
        let (family, patterns) = random_family(&mut rng);
        let got = avoids(&v, &family).map_err(|e| e.to_string())?;
        ensure(got == naive_avoids(&v, &patterns), || {
            format!("case {i}: {v:?} vs {patterns:?}")
        })?;
    }
    for i in 0..1_000 {
        let a = random_word(&mut rng, &['0', '1'], 32);
        let b = random_word(&mut rng, &['0', '1'], 32);
        let (family, _) = random_family(&mut rng);
        let joined = avoids(&format!("{a}#{b}"), &family).unwrap();
        let split = avoids(&a, &family).unwrap() && avoids(&b, &family).unwrap();
        ensure(joined == split, || format!("reset case {i}: {a:?} # {b:?}"))?;
    }
    Ok("10^4 random cases agree with substring search; 10^3 reset pairs hold".into())
}

fn stream_soundness() -> Check {
    let mut summary = Vec::new();
    for q in [2u64, 3, 5] {
        let spec = MultiplierSpec::new(q).map_err(|e| e.to_string())?;
        let mut products = 0u32;
        for n in 1..=100_000u64 {
            let big = BigUint::from(n);
            match stream_multiply(&big, &spec).map_err(|e| e.to_string())? {
                StreamOutcome::Product(w) => {
                    let oracle = mul_oracle(&big, q).unwrap();
                    ensure(w == oracle, || {
                        format!("q={q} N={n}: stream {w}, oracle {oracle}")
                    })?;
                    products += 1;
                }
                StreamOutcome::Failed(_) => {}
            }
        }
        summary.push(format!(
            "q={q}: {products} exact, {} failures",
            100_000 - products
        ));
    }
    Ok(format!("zero wrong answers ({})", summary.join("; ")))
}

fn period_stability() -> Check {
    let cfg = OrbitConfig::new(1u32, 2, 5, "101".parse().unwrap()).with_n_max(1000);
    let summary = exponent_set(&cfg).map_err(|e| e.to_string())?;
    let long = window_sequence(&cfg.clone().with_n_max(2001)).map_err(|e| e.to_string())?;
    let state = match (summary.candidate, summary.downgraded) {
        (Some(p), None) => {
            ensure(period_holds(&long, p), || {
                format!("{p:?} reported but fails at 2H")
            })?;
            format!("(n0={}, p={}) re-confirmed at 2H", p.preperiod, p.period)
        }
        (None, Some(p)) => {
            ensure(!period_holds(&long, p), || {
                format!("{p:?} downgraded but holds at 2H")
            })?;
            format!("(n0={}, p={}) downgraded at 2H", p.preperiod, p.period)
        }
        (None, None) => "no candidate at H = 10^3".to_string(),
        (Some(_), Some(_)) => return Err("both reported and downgraded".into()),
    };
    let report = verify_report()?;
    let published = claim(&report, "period-oracle")?;
    ensure(published["verdict"].is_string(), || {
        "period claim has no verdict".into()
    })?;
    Ok(format!(
        "{state}; published (29, 4): {} (observed {})",
        published["verdict"].as_str().unwrap(),
        published["observed"]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("codec correctness", codec_round_trip),
        ("uniqueness oracle", uniqueness),
        ("length bound", length_bound),
        ("Fibonacci identity", fibonacci_identity),
        ("table regression", table_regression),
        ("exponent-set diff", exponent_set_diff),
        ("locality falsifier", locality_falsifier),
        ("avoidance DFA equivalence", dfa_equivalence),
        ("streaming multiplier soundness", stream_soundness),
        ("period-candidate stability", period_stability),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
