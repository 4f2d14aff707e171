//! Window sequences `w_n = pref_M(Z~(u q^n))`, the exponent sets
//! `{n : w_n avoids F}`, and their preperiod/period structure.
//!
//! Two modes are offered. Oracle mode computes every `u q^n` exactly and can
//! only ever propose a period that holds up to a finite horizon. Theta mode
//! iterates a synthesized window map until the first repeated window; it is
//! exact with respect to that map, but the map must be conflict-free and
//! defined along the whole orbit.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::digits::{rewrite_budget, rewrite_to_canonical, GeneralDigitString};
use crate::error::{domain, Error, Result};
use crate::multiplier::{check_q, ThetaMap};
use crate::pattern::{build_avoidance_dfa, ForbiddenFamily};
use crate::window::Window;
use crate::word::zeck_encode;

pub const DEFAULT_N_MAX: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitConfig {
    pub u: BigUint,
    pub q: u64,
    pub window_len: usize,
    pub family: ForbiddenFamily,
    pub n_max: u64,
    /// Allows `M < L` for exploratory runs.
    pub override_ml_check: bool,
}

impl OrbitConfig {
    pub fn new(u: impl Into<BigUint>, q: u64, window_len: usize, family: ForbiddenFamily) -> Self {
        Self {
            u: u.into(),
            q,
            window_len,
            family,
            n_max: DEFAULT_N_MAX,
            override_ml_check: false,
        }
    }

    pub fn with_n_max(mut self, n_max: u64) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn allow_short_window(mut self) -> Self {
        self.override_ml_check = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.u.is_zero() {
            return Err(domain("u must be >= 1"));
        }
        check_q(self.q)?;
        if self.window_len == 0 {
            return Err(domain("window length M must be >= 1"));
        }
        if self.window_len < self.family.max_len() && !self.override_ml_check {
            return Err(domain(format!(
                "window length M={} is shorter than the longest pattern L={}; \
                 pass the override to allow it",
                self.window_len,
                self.family.max_len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitMode {
    Oracle,
    Theta,
}

impl fmt::Display for OrbitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitMode::Oracle => "oracle",
            OrbitMode::Theta => "theta",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Finite,
    Infinite,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Finite => "finite",
            Verdict::Infinite => "infinite",
            Verdict::Undetermined => "undetermined",
        })
    }
}

/// `w_{n+p} = w_n` for all `n >= preperiod`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Period {
    pub preperiod: usize,
    pub period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    pub u: BigUint,
    pub q: u64,
    pub window_len: usize,
    pub family: ForbiddenFamily,
    pub n_max: u64,
    pub mode: OrbitMode,
    /// Members of the exponent set with `n <= n_max`, ascending.
    pub exponent_set: Vec<u64>,
    pub candidate: Option<Period>,
    /// A candidate seen at horizon `H` that failed at `2H`.
    pub downgraded: Option<Period>,
    /// Last index `n` whose window was computed and checked.
    pub verified_horizon: u64,
    pub finiteness_verdict: Verdict,
}

impl OrbitSummary {
    pub fn to_json(&self) -> serde_json::Value {
        let u = match self.u.to_u64() {
            Some(small) => serde_json::Value::from(small),
            None => serde_json::Value::from(self.u.to_string()),
        };
        serde_json::json!({
            "u": u,
            "q": self.q,
            "M": self.window_len,
            "family": self.family.to_string(),
            "n_max": self.n_max,
            "mode": self.mode,
            "exponent_set": self.exponent_set,
            "n0": self.candidate.map(|c| c.preperiod),
            "p": self.candidate.map(|c| c.period),
            "downgraded": self.downgraded,
            "verified_horizon": self.verified_horizon,
            "finiteness_verdict": self.finiteness_verdict,
        })
    }
}

/// Windows of `u, uq, uq^2, ...`, kept exact by renormalizing `q * Z(x_n)`
/// with the local rewriting rules at each step.
#[derive(Debug, Clone)]
pub struct ProgressionWindows {
    digits: Vec<u64>,
    q: u64,
    window_len: usize,
}

impl ProgressionWindows {
    pub fn new(u: &BigUint, q: u64, window_len: usize) -> Result<Self> {
        check_q(q)?;
        if window_len == 0 {
            return Err(domain("window length M must be >= 1"));
        }
        let start = zeck_encode(u)?;
        Ok(Self {
            digits: start.lsd().iter().map(|&d| u64::from(d)).collect(),
            q,
            window_len,
        })
    }

    /// Current term `x_n` as Zeckendorf digits, LSD-first.
    pub fn current_digits(&self) -> impl Iterator<Item = u8> + '_ {
        self.digits.iter().map(|&d| d as u8)
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut() {
            *d *= self.q;
        }
        let budget = rewrite_budget(self.digits.len());
        if !rewrite_to_canonical(&mut self.digits, budget) {
            let value = GeneralDigitString::new(std::mem::take(&mut self.digits)).value();
            let word = zeck_encode(&value).expect("q * x_n >= 1");
            self.digits = word.lsd().iter().map(|&d| u64::from(d)).collect();
        }
    }
}

impl Iterator for ProgressionWindows {
    type Item = Window;

    fn next(&mut self) -> Option<Window> {
        let bits: Vec<u8> = self
            .digits
            .iter()
            .take(self.window_len)
            .map(|&d| d as u8)
            .collect();
        let window = Window::from_lsd_digits(&bits, self.window_len);
        self.advance();
        Some(window)
    }
}

/// `w_0, ..., w_{n_max}`.
pub fn window_sequence(cfg: &OrbitConfig) -> Result<Vec<Window>> {
    cfg.validate()?;
    let count = usize::try_from(cfg.n_max)
        .ok()
        .and_then(|n| n.checked_add(1))
        .ok_or_else(|| domain("n_max too large"))?;
    Ok(ProgressionWindows::new(&cfg.u, cfg.q, cfg.window_len)?
        .take(count)
        .collect())
}

/// Smallest `(n0, p)`, ordered by `n0` then `p`, with `w_{n+p} = w_n` for
/// every `n0 <= n < len - p` and at least two full periods after `n0`.
pub fn candidate_period<T: Eq>(seq: &[T]) -> Option<Period> {
    let len = seq.len();
    let mut best: Option<Period> = None;
    for p in 1..=len / 2 {
        // Earliest n0 from which the shift-by-p relation holds to the end.
        let mut n0 = len - p;
        while n0 > 0 && seq[n0 - 1] == seq[n0 - 1 + p] {
            n0 -= 1;
        }
        if len - n0 < 2 * p {
            continue;
        }
        let found = Period {
            preperiod: n0,
            period: p,
        };
        if best.is_none_or(|b| (found.preperiod, found.period) < (b.preperiod, b.period)) {
            best = Some(found);
        }
    }
    best
}

/// Whether `period` holds on all of `seq`.
pub fn period_holds<T: Eq>(seq: &[T], period: Period) -> bool {
    (period.preperiod..seq.len().saturating_sub(period.period))
        .all(|n| seq[n] == seq[n + period.period])
}

/// Oracle-mode summary over `n <= n_max`. A candidate period found on the
/// first `H = n_max + 1` windows is re-checked on `2H` windows and dropped
/// to [`OrbitSummary::downgraded`] if it fails there.
pub fn exponent_set(cfg: &OrbitConfig) -> Result<OrbitSummary> {
    cfg.validate()?;
    let horizon = usize::try_from(cfg.n_max)
        .ok()
        .and_then(|n| n.checked_add(1))
        .ok_or_else(|| domain("n_max too large"))?;
    let windows: Vec<Window> = ProgressionWindows::new(&cfg.u, cfg.q, cfg.window_len)?
        .take(2 * horizon)
        .collect();
    let dfa = build_avoidance_dfa(&cfg.family);
    let members = windows[..horizon]
        .iter()
        .enumerate()
        .filter(|(_, w)| dfa.accepts_window(w))
        .map(|(n, _)| n as u64)
        .collect();

    let (candidate, downgraded) = match candidate_period(&windows[..horizon]) {
        Some(c) if period_holds(&windows, c) => (Some(c), None),
        Some(c) => (None, Some(c)),
        None => (None, None),
    };
    Ok(OrbitSummary {
        u: cfg.u.clone(),
        q: cfg.q,
        window_len: cfg.window_len,
        family: cfg.family.clone(),
        n_max: cfg.n_max,
        mode: OrbitMode::Oracle,
        exponent_set: members,
        candidate,
        downgraded,
        verified_horizon: (2 * horizon - 1) as u64,
        finiteness_verdict: Verdict::Undetermined,
    })
}

/// Orbit of a deterministic map on a finite set, cut at the first repeat:
/// `states[preperiod + period]` would equal `states[preperiod]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrbit<T> {
    pub states: Vec<T>,
    pub preperiod: usize,
    pub period: usize,
}

impl<T> FiniteOrbit<T> {
    pub fn state_at(&self, n: u64) -> &T {
        let n = usize::try_from(n).unwrap_or(usize::MAX);
        if n < self.states.len() {
            &self.states[n]
        } else {
            &self.states[self.preperiod + (n - self.preperiod) % self.period]
        }
    }

    pub fn cycle(&self) -> &[T] {
        &self.states[self.preperiod..]
    }

    /// Finite iff no cycle state is accepted.
    pub fn verdict(&self, accept: impl Fn(&T) -> bool) -> Verdict {
        if self.cycle().iter().any(accept) {
            Verdict::Infinite
        } else {
            Verdict::Finite
        }
    }

    /// Accepted indices `n <= n_max`, extending periodically.
    pub fn accepted_indices(&self, n_max: u64, accept: impl Fn(&T) -> bool) -> Vec<u64> {
        let flags: Vec<bool> = self.states.iter().map(&accept).collect();
        (0..=n_max)
            .filter(|&n| {
                let n = usize::try_from(n).unwrap_or(usize::MAX);
                if n < flags.len() {
                    flags[n]
                } else {
                    flags[self.preperiod + (n - self.preperiod) % self.period]
                }
            })
            .collect()
    }
}

/// Iterates `step` from `start`, recording states until one repeats.
pub fn detect_cycle<T, E>(
    start: T,
    mut step: impl FnMut(usize, &T) -> std::result::Result<T, E>,
) -> std::result::Result<FiniteOrbit<T>, E>
where
    T: Ord + Clone,
{
    let mut index: BTreeMap<T, usize> = BTreeMap::new();
    let mut states = Vec::new();
    let mut current = start;
    loop {
        if let Some(&first) = index.get(&current) {
            let period = states.len() - first;
            return Ok(FiniteOrbit {
                states,
                preperiod: first,
                period,
            });
        }
        index.insert(current.clone(), states.len());
        let next = step(states.len(), &current)?;
        states.push(current);
        current = next;
    }
}

/// Orbit of `pref_M(Z~(u))` under a conflict-free window map.
pub fn theta_orbit_trace(cfg: &OrbitConfig, theta: &ThetaMap) -> Result<FiniteOrbit<Window>> {
    cfg.validate()?;
    if theta.q() != cfg.q || theta.window_len() != cfg.window_len {
        return Err(domain(format!(
            "window map is for (q={}, M={}), orbit needs (q={}, M={})",
            theta.q(),
            theta.window_len(),
            cfg.q,
            cfg.window_len
        )));
    }
    let conflicts = theta.conflicts();
    if !conflicts.is_empty() {
        return Err(Error::ThetaConflicted {
            count: conflicts.len(),
        });
    }
    let start = crate::window::lsd_prefix(&cfg.u, cfg.window_len)?;
    detect_cycle(start, |n, w| {
        theta.get(w).cloned().ok_or_else(|| Error::ThetaIncomplete {
            step: n as u64,
            window: w.to_string(),
        })
    })
}

/// Theta-mode summary: exact `(n0, p)` and a finiteness verdict, relative
/// to the given map.
pub fn theta_orbit(cfg: &OrbitConfig, theta: &ThetaMap) -> Result<OrbitSummary> {
    let orbit = theta_orbit_trace(cfg, theta)?;
    let dfa = build_avoidance_dfa(&cfg.family);
    let accept = |w: &Window| dfa.accepts_window(w);
    Ok(OrbitSummary {
        u: cfg.u.clone(),
        q: cfg.q,
        window_len: cfg.window_len,
        family: cfg.family.clone(),
        n_max: cfg.n_max,
        mode: OrbitMode::Theta,
        exponent_set: orbit.accepted_indices(cfg.n_max, accept),
        candidate: Some(Period {
            preperiod: orbit.preperiod,
            period: orbit.period,
        }),
        downgraded: None,
        verified_horizon: orbit.states.len() as u64,
        finiteness_verdict: orbit.verdict(accept),
    })
}
