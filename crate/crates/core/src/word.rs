//! Canonical Zeckendorf words.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, format, Error, Result};
use crate::fibonacci::{self, FIB_U64, MAX_U64_INDEX};

/// The Zeckendorf expansion `Z(N)` of some `N >= 1`.
///
/// Digits are stored least significant first: `lsd()[0]` is the coefficient
/// of `F_2`. The text form ([`fmt::Display`], [`FromStr`]) is MSD-first.
/// A word is never empty, its most significant digit is 1 and it has no two
/// adjacent 1 digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeckWord {
    lsd: Vec<u8>,
}

impl ZeckWord {
    /// Builds a word from LSD-first digits, checking the canonical form.
    pub fn from_lsd_digits(digits: Vec<u8>) -> Result<Self> {
        check_digits(digits.iter().rev().copied())?;
        Ok(Self { lsd: digits })
    }

    /// Builds a word from MSD-first digits, checking the canonical form.
    pub fn from_msd_digits(digits: &[u8]) -> Result<Self> {
        check_digits(digits.iter().copied())?;
        Ok(Self {
            lsd: digits.iter().rev().copied().collect(),
        })
    }

    /// Digits with the coefficient of `F_2` first.
    pub fn lsd(&self) -> &[u8] {
        &self.lsd
    }

    /// Digits with the leading 1 first.
    pub fn msd(&self) -> impl Iterator<Item = u8> + '_ {
        self.lsd.iter().rev().copied()
    }

    /// Number of digits, `|Z(N)|`.
    pub fn len(&self) -> usize {
        self.lsd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lsd.is_empty()
    }

    /// Index `k` of the leading Fibonacci number, so that `F_k <= N < F_{k+1}`.
    pub fn leading_index(&self) -> usize {
        self.lsd.len() + 1
    }

    pub fn value(&self) -> BigUint {
        zeck_decode(self)
    }

    pub(crate) fn from_lsd_unchecked(lsd: Vec<u8>) -> Self {
        debug_assert!(check_digits(lsd.iter().rev().copied()).is_ok());
        Self { lsd }
    }
}

fn check_digits(msd_first: impl Iterator<Item = u8>) -> Result<()> {
    let mut prev = None;
    for (i, d) in msd_first.enumerate() {
        match (i, d, prev) {
            (_, d, _) if d > 1 => return Err(format(format!("digit {d} is not binary"))),
            (0, 0, _) => return Err(format("leading zero in Zeckendorf word")),
            (_, 1, Some(1)) => return Err(format("adjacent 1 digits in Zeckendorf word")),
            _ => {}
        }
        prev = Some(d);
    }
    if prev.is_none() {
        return Err(format("empty Zeckendorf word"));
    }
    Ok(())
}

impl fmt::Display for ZeckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.msd() {
            f.write_str(if d == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for ZeckWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(format(format!(
                    "illegal character {other:?} in Zeckendorf word"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_msd_digits(&digits)
    }
}

/// Greedy Zeckendorf expansion of `n`.
pub fn zeck_encode(n: &BigUint) -> Result<ZeckWord> {
    if let Some(small) = n.to_u64() {
        return zeck_encode_u64(small);
    }
    let table = fibonacci::table_beyond(n);
    // table[k] <= n < table[k + 1]
    let k = table.len() - 2;
    let mut rest = n.clone();
    let mut lsd = vec![0u8; k - 1];
    for i in (2..=k).rev() {
        if rest >= table[i] {
            rest -= &table[i];
            lsd[i - 2] = 1;
        }
    }
    debug_assert!(rest.is_zero());
    Ok(ZeckWord::from_lsd_unchecked(lsd))
}

/// [`zeck_encode`] for machine integers.
pub fn zeck_encode_u64(n: u64) -> Result<ZeckWord> {
    if n == 0 {
        return Err(domain("Zeckendorf expansion is defined for N >= 1"));
    }
    let k = (2..=MAX_U64_INDEX)
        .rev()
        .find(|&i| FIB_U64[i] <= n)
        .expect("F_2 = 1 <= n");
    let mut rest = n;
    let mut lsd = vec![0u8; k - 1];
    for i in (2..=k).rev() {
        if rest >= FIB_U64[i] {
            rest -= FIB_U64[i];
            lsd[i - 2] = 1;
        }
    }
    Ok(ZeckWord::from_lsd_unchecked(lsd))
}

/// `N = sum of eps_i * F_i` for the word's digits.
pub fn zeck_decode(w: &ZeckWord) -> BigUint {
    // sum < F_{len+2}, which fits while len + 2 <= 93
    if w.len() < 90 {
        let mut sum = 0u64;
        for (i, &d) in w.lsd.iter().enumerate() {
            if d == 1 {
                sum += FIB_U64[i + 2];
            }
        }
        return BigUint::from(sum);
    }
    let mut a = BigUint::from(1u32); // F_2
    let mut b = BigUint::from(2u32); // F_3
    let mut sum = BigUint::zero();
    for &d in &w.lsd {
        if d == 1 {
            sum += &a;
        }
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    sum
}
