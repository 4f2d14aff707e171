//! Zeckendorf (Fibonacci) numeration arithmetic and the window dynamics of
//! geometric progressions `u * q^n`.
//!
//! Every positive integer has a unique expansion as a sum of non-adjacent
//! Fibonacci numbers `F_i`, `i >= 2`. This crate works with those expansions
//! in least-significant-digit-first order, padded on the right with a neutral
//! symbol `#`, and studies how the length-`M` prefix of that stream (the
//! *window*) evolves along `u, uq, uq^2, ...`.
//!
//! The main pieces:
//!
//! - [`word`], [`window`], [`digits`], [`fibonacci`]: exact encoding,
//!   decoding, window extraction and normalization of unnormalized digit
//!   strings.
//! - [`pattern`]: a factor-avoidance automaton for a finite family of binary
//!   patterns, where `#` breaks occurrences.
//! - [`multiplier`]: multiplication by `q` (exact oracle and a bounded-carry
//!   streaming machine) and empirical synthesis of the window-update map,
//!   including conflict witnesses that show when no such map exists.
//! - [`orbit`]: window sequences, exponent sets and preperiod/period
//!   detection, both from exact arithmetic and by iterating a synthesized
//!   window map.
//! - [`dot`]: Graphviz exports of automata, window maps and orbits.

pub mod digits;
pub mod dot;
mod error;
pub mod fibonacci;
pub mod multiplier;
pub mod orbit;
pub mod pattern;
pub mod window;
pub mod word;

pub use digits::{normalize, GeneralDigitString};
pub use error::{Error, Result};
pub use fibonacci::{c_of_q, fib};
pub use multiplier::{
    locality_probe, mul_oracle, stream_multiply, theta_synthesize, ConflictWitness, MultiplierSpec,
    StreamFailure, StreamFailureKind, StreamState, ThetaMap,
};
pub use orbit::{
    candidate_period, exponent_set, theta_orbit, window_sequence, OrbitConfig, OrbitMode,
    OrbitSummary, Period, Verdict,
};
pub use pattern::{avoids, build_avoidance_dfa, AvoidanceDfa, ForbiddenFamily};
pub use window::{lsd_prefix, Symbol, Window};
pub use word::{zeck_decode, zeck_encode, ZeckWord};

/// Arbitrary-precision non-negative integer.
pub type Natural = num_bigint::BigUint;
