//! Empirical window-update map: which output window `pref_M(Z~(qN))` follows
//! each input window `pref_M(Z~(N))` over a scanned range of `N`.
//!
//! Observations keep, for every (input, output) pair, the smallest `N` that
//! produced it. Merging takes minima, so merge is associative and
//! commutative and the result does not depend on how a scan was split.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, format, Result};
use crate::multiplier::check_q;
use crate::window::{reachable_window_count, Window};
use crate::word::{zeck_encode, zeck_encode_u64};

/// Two samples whose input windows agree while their output windows differ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConflictWitness {
    pub input: Window,
    pub n1: u64,
    pub n2: u64,
    pub out1: Window,
    pub out2: Window,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    /// Distinct input windows observed.
    pub seen: u128,
    /// Windows of this length produced by some `N >= 1`.
    pub reachable: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaMap {
    q: u64,
    window_len: usize,
    sample_range: Option<(u64, u64)>,
    observations: BTreeMap<Window, BTreeMap<Window, u64>>,
}

impl ThetaMap {
    pub fn empty(q: u64, window_len: usize) -> Result<Self> {
        check_q(q)?;
        if window_len == 0 {
            return Err(domain("window length M must be >= 1"));
        }
        Ok(Self {
            q,
            window_len,
            sample_range: None,
            observations: BTreeMap::new(),
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn window_len(&self) -> usize {
        self.window_len
    }

    /// Smallest and largest sampled `N`.
    pub fn sample_range(&self) -> Option<(u64, u64)> {
        self.sample_range
    }

    pub fn n_cap(&self) -> u64 {
        self.sample_range.map_or(0, |(_, hi)| hi)
    }

    /// Adds one observation `input -> output` made at `n`.
    pub fn record(&mut self, n: u64, input: Window, output: Window) {
        let outputs = self.observations.entry(input).or_default();
        outputs
            .entry(output)
            .and_modify(|first| *first = (*first).min(n))
            .or_insert(n);
        self.sample_range = Some(match self.sample_range {
            Some((lo, hi)) => (lo.min(n), hi.max(n)),
            None => (n, n),
        });
    }

    /// Samples `N = n` through the exact oracle.
    pub fn observe(&mut self, n: u64) -> Result<()> {
        let (input, output) = window_pair(n, self.q, self.window_len)?;
        self.record(n, input, output);
        Ok(())
    }

    pub fn merge(mut self, other: ThetaMap) -> Result<ThetaMap> {
        if self.q != other.q || self.window_len != other.window_len {
            return Err(domain(format!(
                "cannot merge window maps for (q={}, M={}) and (q={}, M={})",
                self.q, self.window_len, other.q, other.window_len
            )));
        }
        for (input, outputs) in other.observations {
            let mine = self.observations.entry(input).or_default();
            for (output, n) in outputs {
                mine.entry(output)
                    .and_modify(|first| *first = (*first).min(n))
                    .or_insert(n);
            }
        }
        self.sample_range = match (self.sample_range, other.sample_range) {
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
            (x, None) | (None, x) => x,
        };
        Ok(self)
    }

    /// The output window first observed (smallest `N`) for `input`.
    pub fn get(&self, input: &Window) -> Option<&Window> {
        self.observations
            .get(input)
            .and_then(|outputs| outputs.iter().min_by_key(|(_, &n)| n).map(|(w, _)| w))
    }

    /// One entry per observed input window, using [`ThetaMap::get`].
    pub fn entries(&self) -> BTreeMap<&Window, &Window> {
        self.observations
            .keys()
            .filter_map(|input| self.get(input).map(|output| (input, output)))
            .collect()
    }

    /// Every observed `(input, output)` pair, conflicting ones included.
    pub fn all_transitions(&self) -> Vec<(&Window, &Window)> {
        self.observations
            .iter()
            .flat_map(|(input, outs)| outs.keys().map(move |output| (input, output)))
            .collect()
    }

    /// Smallest `N` observed per input window.
    pub fn first_seen(&self) -> BTreeMap<&Window, u64> {
        self.observations
            .iter()
            .filter_map(|(input, outputs)| outputs.values().min().map(|&n| (input, n)))
            .collect()
    }

    /// For each input window with several outputs: the earliest sample
    /// paired with the earliest sample of every other output.
    pub fn conflicts(&self) -> Vec<ConflictWitness> {
        let mut witnesses = Vec::new();
        for (input, outputs) in &self.observations {
            if outputs.len() < 2 {
                continue;
            }
            let (out1, n1) = outputs
                .iter()
                .min_by_key(|(_, &n)| n)
                .expect("non-empty outputs");
            let mut others: Vec<_> = outputs.iter().filter(|(w, _)| *w != out1).collect();
            others.sort_by_key(|(_, &n)| n);
            for (out2, &n2) in others {
                witnesses.push(ConflictWitness {
                    input: input.clone(),
                    n1: *n1,
                    n2,
                    out1: out1.clone(),
                    out2: out2.clone(),
                });
            }
        }
        witnesses
    }

    pub fn is_consistent(&self) -> bool {
        self.observations.values().all(|outputs| outputs.len() == 1)
    }

    pub fn coverage(&self) -> Coverage {
        Coverage {
            seen: self.observations.len() as u128,
            reachable: reachable_window_count(self.window_len),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = ThetaJson {
            q: self.q,
            window_len: self.window_len,
            n_cap: self.n_cap(),
            entries: self
                .entries()
                .into_iter()
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            conflicts: self.conflicts(),
            first_seen: self
                .first_seen()
                .into_iter()
                .map(|(k, n)| (k.clone(), n))
                .collect(),
            coverage: Some(self.coverage()),
            sample_start: self.sample_range.map(|(lo, _)| lo),
        };
        serde_json::to_value(doc).expect("window maps serialize")
    }

    /// Rebuilds a map from [`ThetaMap::to_json`] output.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: ThetaJson = serde_json::from_value(value.clone())
            .map_err(|e| format(format!("invalid window map JSON: {e}")))?;
        let mut map = ThetaMap::empty(doc.q, doc.window_len)?;
        for (input, output) in doc.entries {
            if input.len() != doc.window_len || output.len() != doc.window_len {
                return Err(format("window length does not match M"));
            }
            let n =
                doc.first_seen.get(&input).copied().ok_or_else(|| {
                    format(format!("window map JSON lacks first_seen for {input}"))
                })?;
            map.record(n, input, output);
        }
        for witness in doc.conflicts {
            map.record(witness.n1, witness.input.clone(), witness.out1);
            map.record(witness.n2, witness.input, witness.out2);
        }
        if doc.n_cap > 0 {
            let lo = doc.sample_start.unwrap_or(1);
            map.sample_range = Some((lo, doc.n_cap));
        }
        Ok(map)
    }
}

#[derive(Serialize, Deserialize)]
struct ThetaJson {
    q: u64,
    #[serde(rename = "M")]
    window_len: usize,
    entries: BTreeMap<Window, Window>,
    conflicts: Vec<ConflictWitness>,
    n_cap: u64,
    #[serde(default)]
    first_seen: BTreeMap<Window, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coverage: Option<Coverage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sample_start: Option<u64>,
}

fn window_pair(n: u64, q: u64, m: usize) -> Result<(Window, Window)> {
    let input = zeck_encode_u64(n)?;
    let output = match n.checked_mul(q) {
        Some(product) => zeck_encode_u64(product)?,
        None => zeck_encode(&(BigUint::from(n) * q))?,
    };
    Ok((
        Window::from_lsd_digits(input.lsd(), m),
        Window::from_lsd_digits(output.lsd(), m),
    ))
}

const CHUNK: u64 = 4096;

/// Scans `N = 1..=n_cap` in parallel chunks and merges the partial maps.
pub fn theta_synthesize(q: u64, m: usize, n_cap: u64) -> Result<ThetaMap> {
    let empty = ThetaMap::empty(q, m)?;
    if n_cap == 0 {
        return Err(domain("n_cap must be >= 1"));
    }
    let chunks = n_cap.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut part = ThetaMap::empty(q, m)?;
            let lo = chunk * CHUNK + 1;
            let hi = (lo + CHUNK - 1).min(n_cap);
            for n in lo..=hi {
                part.observe(n)?;
            }
            Ok(part)
        })
        .try_reduce(|| empty.clone(), ThetaMap::merge)
}

/// Map built from an arbitrary set of samples.
pub fn theta_from_samples(
    q: u64,
    m: usize,
    samples: impl IntoIterator<Item = u64>,
) -> Result<ThetaMap> {
    let mut map = ThetaMap::empty(q, m)?;
    for n in samples {
        map.observe(n)?;
    }
    Ok(map)
}

/// Least `D <= d_max` such that, over `N <= n_cap`, the width-`(M + D)`
/// input window determines the width-`M` output window. `None` if no such
/// `D` exists up to `d_max`.
pub fn locality_probe(q: u64, m: usize, n_cap: u64, d_max: usize) -> Result<Option<usize>> {
    check_q(q)?;
    if m == 0 {
        return Err(domain("window length M must be >= 1"));
    }
    if n_cap == 0 {
        return Err(domain("n_cap must be >= 1"));
    }
    let samples: Vec<(Vec<u8>, Window)> = (1..=n_cap)
        .into_par_iter()
        .map(|n| {
            let input = zeck_encode_u64(n)?;
            let (_, output) = window_pair(n, q, m)?;
            Ok((input.lsd().to_vec(), output))
        })
        .collect::<Result<_>>()?;
    for d in 0..=d_max {
        let mut seen: HashMap<Window, &Window> = HashMap::with_capacity(samples.len());
        let functional = samples.iter().all(|(digits, output)| {
            let key = Window::from_lsd_digits(digits, m + d);
            *seen.entry(key).or_insert(output) == output
        });
        if functional {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
