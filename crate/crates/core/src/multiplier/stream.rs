//! A bounded-carry machine that multiplies by `q` while reading the padded
//! stream `rev(Z(N)) #^ω` least significant digit first.
//!
//! At output position `i` the machine holds a pending carry
//! `a * F_i + b * F_{i+1}` and a lookahead buffer of the next `delay_cap`
//! input symbols. The output digit is read off a local evaluation of the
//! pending carry plus `q` times the lookahead, rebased at a fixed Fibonacci
//! index. Choosing digit `o` leaves `A = a + q*eps_i - o` copies of `F_i`,
//! and `A F_i + b F_{i+1} = (b - A) F_{i+1} + A F_{i+2}` gives the next
//! carry. So emitted value plus pending carry always equals `q` times the
//! input read so far.
//!
//! A run that drains its carry with a canonical output therefore emits
//! exactly `Z(qN)`, by uniqueness of Zeckendorf expansions. All other runs
//! stop with a [`StreamFailure`]; the machine never returns a wrong word.
//! Failures are common: carries in this system also flow towards less
//! significant positions, which no bounded lookahead can absorb in general.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::fibonacci::c_of_q;
use crate::multiplier::check_q;
use crate::word::{zeck_encode, ZeckWord};

/// Parameters of the streaming multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplierSpec {
    q: u64,
    c_bound: usize,
    carry_bound: u64,
    delay_cap: usize,
}

impl MultiplierSpec {
    /// Defaults: carry bound `q + C(q)`, lookahead `C(q) + 2`.
    pub fn new(q: u64) -> Result<Self> {
        check_q(q)?;
        let c_bound = c_of_q(q)?;
        Ok(Self {
            q,
            c_bound,
            carry_bound: q.saturating_add(c_bound as u64),
            delay_cap: c_bound + 2,
        })
    }

    /// Overrides the carry bound. Bounds below `q` make every run fail.
    pub fn with_carry_bound(mut self, carry_bound: u64) -> Self {
        self.carry_bound = carry_bound;
        self
    }

    pub fn with_delay_cap(mut self, delay_cap: usize) -> Result<Self> {
        if delay_cap == 0 {
            return Err(domain("delay cap must be >= 1"));
        }
        self.delay_cap = delay_cap;
        Ok(self)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `C(q)`.
    pub fn c_bound(&self) -> usize {
        self.c_bound
    }

    pub fn carry_bound(&self) -> u64 {
        self.carry_bound
    }

    pub fn delay_cap(&self) -> usize {
        self.delay_cap
    }
}

/// Snapshot of the machine, reported with failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamState {
    /// `(a, b)` with pending value `a * F_i + b * F_{i+1}`.
    pub pending: (i128, i128),
    /// Current output position, 0 for the coefficient of `F_2`.
    pub position: usize,
    /// Symbols read but not yet emitted.
    pub emitted_delay: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamFailureKind {
    /// `|a|` or `|b|` left the configured carry bound.
    CarryBound,
    /// The local evaluation went negative: earlier digits were too large.
    NegativePending,
    /// The local evaluation needs digits below the current position, which
    /// have already been emitted.
    DownwardCarry,
    /// Output would contain two adjacent 1 digits.
    AdjacentOnes,
    /// The carry had not drained after `|Z(N)| + C(q)` output positions.
    DelayBound,
    /// Local arithmetic does not fit in 128 bits.
    Overflow,
}

impl fmt::Display for StreamFailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            StreamFailureKind::CarryBound => "carry bound exceeded",
            StreamFailureKind::NegativePending => "negative pending value",
            StreamFailureKind::DownwardCarry => "carry into already emitted positions",
            StreamFailureKind::AdjacentOnes => "non-canonical output (adjacent 1s)",
            StreamFailureKind::DelayBound => "emission delay bound exceeded",
            StreamFailureKind::Overflow => "local arithmetic overflow",
        };
        f.write_str(text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamFailure {
    pub kind: StreamFailureKind,
    pub position: usize,
    pub state: StreamState,
}

impl fmt::Display for StreamFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "stream failure at position {}: {} (pending a={}, b={})",
            self.position, self.kind, self.state.pending.0, self.state.pending.1
        )
    }
}

impl std::error::Error for StreamFailure {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamOutcome {
    Product(ZeckWord),
    Failed(StreamFailure),
}

impl StreamOutcome {
    pub fn product(&self) -> Option<&ZeckWord> {
        match self {
            StreamOutcome::Product(word) => Some(word),
            StreamOutcome::Failed(_) => None,
        }
    }
}

/// Runs the streaming multiplier on `N`.
pub fn stream_multiply(n: &BigUint, spec: &MultiplierSpec) -> Result<StreamOutcome> {
    if n.is_zero() {
        return Err(domain("multiplicand must be >= 1"));
    }
    let input = zeck_encode(n)?;
    Ok(run(input.lsd(), spec))
}

fn run(input: &[u8], spec: &MultiplierSpec) -> StreamOutcome {
    let delay = spec.delay_cap;
    let base = delay + 2;
    let q = i128::from(spec.q);
    let bound = i128::from(spec.carry_bound);
    let Some(fibs) = fib_table_i128(base + delay + 1) else {
        return StreamOutcome::Failed(StreamFailure {
            kind: StreamFailureKind::Overflow,
            position: 0,
            state: StreamState {
                pending: (0, 0),
                position: 0,
                emitted_delay: 0,
            },
        });
    };
    let symbol = |i: usize| i128::from(input.get(i).copied().unwrap_or(0));
    let max_len = input.len() + spec.c_bound;

    let (mut a, mut b) = (0i128, 0i128);
    let mut out: Vec<u8> = Vec::with_capacity(max_len);
    let mut pos = 0usize;
    loop {
        if pos >= input.len() && a == 0 && b == 0 {
            break;
        }
        let fail = |kind, a, b| {
            StreamOutcome::Failed(StreamFailure {
                kind,
                position: pos,
                state: StreamState {
                    pending: (a, b),
                    position: pos,
                    emitted_delay: delay,
                },
            })
        };
        if pos >= max_len {
            return fail(StreamFailureKind::DelayBound, a, b);
        }

        // Below the base the true indices are used; above it the local
        // value is evaluated at the fixed base.
        let r = (pos + 2).min(base);
        let local = (|| {
            let mut acc = a
                .checked_mul(fibs[r])?
                .checked_add(b.checked_mul(fibs[r + 1])?)?;
            for k in 0..delay {
                acc = acc.checked_add(q.checked_mul(symbol(pos + k))?.checked_mul(fibs[r + k])?)?;
            }
            Some(acc)
        })();
        let Some(local) = local else {
            return fail(StreamFailureKind::Overflow, a, b);
        };
        if local < 0 {
            return fail(StreamFailureKind::NegativePending, a, b);
        }
        let digits = lsd_digits_u128(local as u128);
        if digits.iter().take(r - 2).any(|&d| d == 1) {
            return fail(StreamFailureKind::DownwardCarry, a, b);
        }
        let o = digits.get(r - 2).copied().unwrap_or(0);

        let Some(leftover) = q
            .checked_mul(symbol(pos))
            .and_then(|v| v.checked_add(a))
            .map(|v| v - i128::from(o))
        else {
            return fail(StreamFailureKind::Overflow, a, b);
        };
        let Some(next_a) = b.checked_sub(leftover) else {
            return fail(StreamFailureKind::Overflow, a, b);
        };
        a = next_a;
        b = leftover;
        if pos + 3 < base {
            (a, b) = rebalance(a, b, fibs[pos + 3], fibs[pos + 4]);
        }
        if a.abs() > bound || b.abs() > bound {
            return fail(StreamFailureKind::CarryBound, a, b);
        }
        out.push(o);
        pos += 1;
    }

    while out.last() == Some(&0) {
        out.pop();
    }
    match ZeckWord::from_lsd_digits(out) {
        Ok(word) => StreamOutcome::Product(word),
        Err(_) => StreamOutcome::Failed(StreamFailure {
            kind: StreamFailureKind::AdjacentOnes,
            position: pos,
            state: StreamState {
                pending: (a, b),
                position: pos,
                emitted_delay: 0,
            },
        }),
    }
}

/// Among the pairs `(a + t g, b - t f)`, all with value `a f + b g`, the one
/// with the smallest largest coefficient (ties: smallest sum, then `t = 0`,
/// then smallest `t`).
fn rebalance(a: i128, b: i128, f: i128, g: i128) -> (i128, i128) {
    let centre = (-a).div_euclid(g);
    (centre - 3..=centre + 3)
        .map(|t| (t, a + t * g, b - t * f))
        .min_by_key(|&(t, x, y)| (x.abs().max(y.abs()), x.abs() + y.abs(), t != 0, t))
        .map(|(_, x, y)| (x, y))
        .unwrap_or((a, b))
}

fn fib_table_i128(max_index: usize) -> Option<Vec<i128>> {
    let mut fibs = vec![0i128, 1];
    while fibs.len() <= max_index {
        let len = fibs.len();
        fibs.push(fibs[len - 1].checked_add(fibs[len - 2])?);
    }
    Some(fibs)
}

/// Greedy Zeckendorf digits of `v`, LSD-first from `F_2`; empty for 0.
fn lsd_digits_u128(v: u128) -> Vec<u8> {
    if v == 0 {
        return Vec::new();
    }
    let mut fibs: Vec<u128> = vec![0, 1];
    loop {
        let len = fibs.len();
        if fibs[len - 1] > v {
            break;
        }
        match fibs[len - 1].checked_add(fibs[len - 2]) {
            Some(next) => fibs.push(next),
            None => break,
        }
    }
    let mut k = fibs.len() - 1;
    while fibs[k] > v {
        k -= 1;
    }
    let mut rest = v;
    let mut digits = vec![0u8; k - 1];
    for i in (2..=k).rev() {
        if rest >= fibs[i] {
            rest -= fibs[i];
            digits[i - 2] = 1;
        }
    }
    digits
}
