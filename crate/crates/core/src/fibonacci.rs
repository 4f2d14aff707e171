//! Fibonacci numbers with `F_0 = 0`, `F_1 = 1`, `F_{n+2} = F_{n+1} + F_n`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

/// Largest index whose Fibonacci number fits in a `u64`.
pub const MAX_U64_INDEX: usize = 93;

const fn build_table() -> [u64; MAX_U64_INDEX + 1] {
    let mut table = [0u64; MAX_U64_INDEX + 1];
    table[1] = 1;
    let mut i = 2;
    while i <= MAX_U64_INDEX {
        table[i] = table[i - 1] + table[i - 2];
        i += 1;
    }
    table
}

pub(crate) static FIB_U64: [u64; MAX_U64_INDEX + 1] = build_table();

/// `F_i` as an exact big integer.
pub fn fib(i: usize) -> BigUint {
    if i <= MAX_U64_INDEX {
        return BigUint::from(FIB_U64[i]);
    }
    let mut a = BigUint::from(FIB_U64[MAX_U64_INDEX - 1]);
    let mut b = BigUint::from(FIB_U64[MAX_U64_INDEX]);
    for _ in MAX_U64_INDEX..i {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    b
}

/// `F_i` if it fits in a `u64`.
pub fn fib_u64(i: usize) -> Option<u64> {
    FIB_U64.get(i).copied()
}

/// `F_0, F_1, ..., F_{k+1}` where `F_{k+1}` is the first Fibonacci number
/// strictly greater than `n`.
pub(crate) fn table_beyond(n: &BigUint) -> Vec<BigUint> {
    let mut table = vec![BigUint::zero(), BigUint::one()];
    while table.last().is_some_and(|last| last <= n) {
        let len = table.len();
        let next = &table[len - 1] + &table[len - 2];
        table.push(next);
    }
    table
}

/// Smallest `c >= 1` with `F_c >= q`; bounds how many digits multiplication
/// by `q` can add to a Zeckendorf word.
pub fn c_of_q(q: u64) -> Result<usize> {
    if q < 2 {
        return Err(domain(format!("multiplier q must be >= 2, got {q}")));
    }
    // F_94 exceeds u64::MAX, so anything past F_93 needs c = 94.
    Ok((1..=MAX_U64_INDEX)
        .find(|&c| FIB_U64[c] >= q)
        .unwrap_or(MAX_U64_INDEX + 1))
}
