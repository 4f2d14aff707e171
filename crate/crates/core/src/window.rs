//! Fixed-length windows over `{0, 1, #}` taken from the padded LSD-first
//! digit stream `rev(Z(N)) #^ω`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, format, Error, Result};
use crate::word::{zeck_encode, zeck_encode_u64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
    /// Neutral padding past the most significant digit.
    Pad,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Pad => '#',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            '0' => Ok(Symbol::Zero),
            '1' => Ok(Symbol::One),
            '#' => Ok(Symbol::Pad),
            other => Err(format(format!(
                "illegal symbol {other:?}; expected 0, 1 or #"
            ))),
        }
    }

    pub(crate) fn from_digit(d: u8) -> Self {
        if d == 0 {
            Symbol::Zero
        } else {
            Symbol::One
        }
    }

    /// Position in the alphabet order `0, 1, #`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::One, Symbol::Pad];
}

/// A word over `{0, 1, #}`, LSD-first. Index 0 holds the coefficient of `F_2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    symbols: Vec<Symbol>,
}

impl Window {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(domain("window length must be >= 1"));
        }
        Ok(Self { symbols })
    }

    /// Length-`m` prefix of `digits #^ω`, with `digits` LSD-first.
    pub fn from_lsd_digits(digits: &[u8], m: usize) -> Self {
        let symbols = (0..m)
            .map(|i| {
                digits
                    .get(i)
                    .map_or(Symbol::Pad, |&d| Symbol::from_digit(d))
            })
            .collect();
        Self { symbols }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// True when the window looks like `b_1 ... b_a #^(M - a)` with binary
    /// `b_i`, i.e. padding only as a suffix block.
    pub fn has_padded_shape(&self) -> bool {
        let binary = self
            .symbols
            .iter()
            .take_while(|&&s| s != Symbol::Pad)
            .count();
        self.symbols[binary..].iter().all(|&s| s == Symbol::Pad)
    }

    /// Windows that [`lsd_prefix`] can produce for some `N >= 1`: a full
    /// binary window with no `11`, or a genuine digit block ending in the
    /// leading 1 followed by padding.
    pub fn is_reachable(&self) -> bool {
        if !self.has_padded_shape() {
            return false;
        }
        let binary: Vec<Symbol> = self
            .symbols
            .iter()
            .copied()
            .take_while(|&s| s != Symbol::Pad)
            .collect();
        if binary.is_empty() {
            return false;
        }
        let no_eleven = binary
            .windows(2)
            .all(|pair| pair != [Symbol::One, Symbol::One]);
        no_eleven && (binary.len() == self.len() || binary.last() == Some(&Symbol::One))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: String = self.symbols.iter().map(|s| s.as_char()).collect();
        f.write_str(&text)
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .trim()
            .chars()
            .map(Symbol::from_char)
            .collect::<Result<Vec<_>>>()?;
        Window::new(symbols)
    }
}

impl Serialize for Window {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Window {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// `pref_M(rev(Z(N)) #^ω)`.
pub fn lsd_prefix(n: &BigUint, m: usize) -> Result<Window> {
    if m == 0 {
        return Err(domain("window length M must be >= 1"));
    }
    let word = zeck_encode(n)?;
    Ok(Window::from_lsd_digits(word.lsd(), m))
}

/// [`lsd_prefix`] for machine integers.
pub fn lsd_prefix_u64(n: u64, m: usize) -> Result<Window> {
    if m == 0 {
        return Err(domain("window length M must be >= 1"));
    }
    let word = zeck_encode_u64(n)?;
    Ok(Window::from_lsd_digits(word.lsd(), m))
}

/// Number of windows of length `m` that [`Window::is_reachable`] accepts:
/// `(F_1 + ... + F_{m-1}) + F_{m+2} = F_{m+1} - 1 + F_{m+2}`.
pub fn reachable_window_count(m: usize) -> u128 {
    let mut fibs: Vec<u128> = vec![0, 1];
    while fibs.len() < m + 3 {
        let len = fibs.len();
        fibs.push(fibs[len - 1].saturating_add(fibs[len - 2]));
    }
    (fibs[m + 1] - 1).saturating_add(fibs[m + 2])
}
