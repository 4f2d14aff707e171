//! Recomputation of the worked example: u = 1, q = 2, M = 5, F = {11, 101}.

use std::collections::BTreeSet;
use std::path::Path;

use num_bigint::BigUint;
use serde_json::json;
use zeckwin::{
    build_avoidance_dfa, exponent_set, theta_orbit, zeck_encode, OrbitConfig, Period, Verdict,
};

use crate::report::{Claim, Report};
use crate::{load_theta, CliResult};

const Q: u64 = 2;
const M: usize = 5;
const FAMILY: &str = "11,101";
const SET_LIMIT: u64 = 200;

/// Published encodings of small powers of two.
const ENCODINGS: [(u64, &str); 4] = [(1, "1"), (2, "10"), (4, "101"), (8, "10000")];

/// Published table rows `(n, w_n, member)`.
const TABLE: [(usize, &str, bool); 11] = [
    (0, "1####", true),
    (1, "01###", true),
    (2, "101##", false),
    (3, "00001", true),
    (4, "10100", true),
    (5, "00101", false),
    (28, "01010", true),
    (29, "10101", false),
    (30, "01011", false),
    (31, "10110", false),
    (32, "01101", false),
];

/// Memberships stated in the narrative for `n = 0..=3`.
const NARRATIVE: [(u64, bool); 4] = [(0, true), (1, true), (2, false), (3, true)];

const PUBLISHED_SET: [u64; 8] = [0, 1, 3, 4, 6, 8, 10, 28];
const PUBLISHED_PERIOD: Period = Period {
    preperiod: 29,
    period: 4,
};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn in_out(b: bool) -> &'static str {
    if b {
        "in"
    } else {
        "out"
    }
}

fn period_text(p: Period) -> String {
    format!("n0={} p={}", p.preperiod, p.period)
}

fn set_text(set: &[u64]) -> String {
    let items: Vec<String> = set.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(","))
}

/// Builds the claim report. `n_max` is the period-search horizon (re-checked
/// at twice the horizon); `n_cap` sizes the window map for the theta route.
pub(crate) fn example_three(n_max: u64, n_cap: u64, cache_dir: Option<&Path>) -> CliResult<Report> {
    let family = FAMILY.parse()?;
    let cfg = OrbitConfig::new(1u32, Q, M, family).with_n_max(n_max.max(SET_LIMIT));
    let dfa = build_avoidance_dfa(&cfg.family);
    let mut claims = Vec::new();

    for (n, published) in ENCODINGS {
        let observed = zeck_encode(&BigUint::from(n))?.to_string();
        claims.push(Claim::new(format!("encoding-{n}"), published, observed));
    }

    let windows = zeckwin::window_sequence(&cfg.clone().with_n_max(SET_LIMIT))?;
    for (n, w, member) in TABLE {
        claims.push(Claim::new(
            format!("table-window-{n}"),
            w,
            windows[n].to_string(),
        ));
        claims.push(Claim::new(
            format!("table-member-{n}"),
            yes_no(member),
            yes_no(dfa.accepts_window(&windows[n])),
        ));
    }
    for (n, member) in NARRATIVE {
        claims.push(Claim::new(
            format!("membership-{n}"),
            in_out(member),
            in_out(dfa.accepts_window(&windows[n as usize])),
        ));
    }

    let observed_set: Vec<u64> = (0..=SET_LIMIT)
        .filter(|&n| dfa.accepts_window(&windows[n as usize]))
        .collect();
    let published: BTreeSet<u64> = PUBLISHED_SET.into_iter().collect();
    let observed: BTreeSet<u64> = observed_set.iter().copied().collect();
    for n in published.union(&observed) {
        claims.push(Claim::new(
            format!("set-element-{n}"),
            in_out(published.contains(n)),
            in_out(observed.contains(n)),
        ));
    }
    claims.push(Claim::new(
        "set-up-to-200",
        set_text(&PUBLISHED_SET),
        set_text(&observed_set),
    ));

    let oracle = exponent_set(&cfg.clone().with_n_max(n_max))?;
    let oracle_period = match (oracle.candidate, oracle.downgraded) {
        (Some(p), _) => period_text(p),
        (None, Some(p)) => format!("downgraded {}", period_text(p)),
        (None, None) => "none".to_string(),
    };
    claims.push(Claim::new(
        "period-oracle",
        period_text(PUBLISHED_PERIOD),
        oracle_period,
    ));

    let theta = load_theta(Q, M, n_cap, cache_dir)?;
    let (theta_period, theta_verdict, theta_detail) = match theta_orbit(&cfg, &theta) {
        Ok(summary) => {
            let p = summary.candidate.expect("theta mode yields a period");
            (
                period_text(p),
                summary.finiteness_verdict,
                json!(summary.to_json()),
            )
        }
        Err(zeckwin::Error::ThetaConflicted { count }) => (
            format!("window map conflicted ({count} witnesses)"),
            Verdict::Undetermined,
            json!({ "conflicts": theta.conflicts() }),
        ),
        Err(zeckwin::Error::ThetaIncomplete { step, window }) => (
            format!("window map undefined at step {step} ({window})"),
            Verdict::Undetermined,
            json!({ "step": step, "window": window }),
        ),
        Err(e) => return Err(e.into()),
    };
    claims.push(Claim::new(
        "period-theta",
        period_text(PUBLISHED_PERIOD),
        theta_period,
    ));
    claims.push(Claim::new(
        "finiteness",
        Verdict::Finite.to_string(),
        theta_verdict.to_string(),
    ));

    let table: Vec<_> = windows
        .iter()
        .enumerate()
        .map(|(n, w)| json!({ "n": n, "w_n": w.to_string(), "member": yes_no(dfa.accepts_window(w)) }))
        .collect();
    let mut report = Report::new(
        "verify-paper",
        json!({
            "example": "example-3",
            "u": 1,
            "q": Q,
            "M": M,
            "family": FAMILY,
            "n_max": n_max,
            "n_cap": n_cap,
        }),
        json!({
            "windows": table,
            "exponent_set_up_to_200": observed_set,
            "oracle": oracle.to_json(),
            "theta": theta_detail,
        }),
    );
    report.paper_claims = claims;
    Ok(report)
}
