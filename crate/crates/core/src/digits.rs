//! Unnormalized Fibonacci-positional digit strings and their normalization
//! to canonical Zeckendorf form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{format, Error, Result};
use crate::word::{zeck_encode, ZeckWord};

/// Digits `d_0, d_1, ...` (LSD-first) with value `sum d_i * F_{i+2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GeneralDigitString {
    digits: Vec<u64>,
}

impl GeneralDigitString {
    pub fn new(digits: Vec<u64>) -> Self {
        Self { digits }
    }

    /// The digit string `q * w`, digit by digit.
    pub fn scaled(word: &ZeckWord, q: u64) -> Self {
        Self {
            digits: word.lsd().iter().map(|&d| u64::from(d) * q).collect(),
        }
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn max_digit(&self) -> u64 {
        self.digits.iter().copied().max().unwrap_or(0)
    }

    pub fn value(&self) -> BigUint {
        let mut a = BigUint::from(1u32); // F_2
        let mut b = BigUint::from(2u32); // F_3
        let mut sum = BigUint::zero();
        for &d in &self.digits {
            if d != 0 {
                sum += &a * d;
            }
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
        sum
    }
}

impl fmt::Display for GeneralDigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for GeneralDigitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        let digits = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|e| format(format!("bad digit {part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { digits })
    }
}

/// Canonical Zeckendorf word of equal value.
///
/// Runs the local rewriting rules and falls back to exact value computation
/// if the rewriting budget is exhausted.
pub fn normalize(s: &GeneralDigitString) -> Result<ZeckWord> {
    match normalize_by_rewriting(s) {
        Some(word) => Ok(word),
        None => normalize_by_value(s),
    }
}

/// Computes the exact value, then encodes it greedily.
pub fn normalize_by_value(s: &GeneralDigitString) -> Result<ZeckWord> {
    zeck_encode(&s.value())
}

/// Rewriting-only normalization. `None` if the value is zero, a digit would
/// overflow, or the step budget runs out.
pub fn normalize_by_rewriting(s: &GeneralDigitString) -> Option<ZeckWord> {
    let mut digits = s.digits.clone();
    let budget = rewrite_budget(digits.len());
    if !rewrite_to_canonical(&mut digits, budget) {
        return None;
    }
    let lsd: Vec<u8> = digits.iter().map(|&d| d as u8).collect();
    if lsd.is_empty() {
        return None;
    }
    Some(ZeckWord::from_lsd_unchecked(lsd))
}

pub(crate) fn rewrite_budget(len: usize) -> usize {
    let len = len.saturating_add(8);
    len.saturating_mul(len).saturating_mul(32)
}

/// Rewrites `digits` in place until every digit is 0/1 with no two adjacent
/// 1s, then drops high zeros. Rules, with `j` the LSD-first position of
/// `F_{j+2}`:
///
/// - `F_{j+2} + F_{j+3} = F_{j+4}` (the `011 -> 100` carry),
/// - `2 F_2 = F_3`, `2 F_3 = F_4 + F_2`, `2 F_i = F_{i+1} + F_{i-2}`.
///
/// Both apply in bulk (`t` copies at once). Returns false if `budget` rule
/// applications were not enough or a digit overflowed; the digits still
/// carry the original value in that case.
pub(crate) fn rewrite_to_canonical(digits: &mut Vec<u64>, budget: usize) -> bool {
    let mut pending: Vec<usize> = (0..digits.len()).rev().collect();
    let mut queued = vec![true; digits.len()];
    let mut steps = 0usize;

    loop {
        while let Some(j) = pending.pop() {
            queued[j] = false;
            let touched = match apply_rule(digits, j) {
                Some(Some(touched)) => touched,
                Some(None) => continue,
                None => return false,
            };
            steps += 1;
            if steps > budget {
                return false;
            }
            if queued.len() < digits.len() {
                queued.resize(digits.len(), false);
            }
            for &(pos, count) in touched.iter() {
                if count == 0 {
                    continue;
                }
                for p in [Some(pos), pos.checked_sub(1)].into_iter().flatten() {
                    if !queued[p] {
                        queued[p] = true;
                        pending.push(p);
                    }
                }
            }
        }
        // Fixpoint check; the worklist normally leaves nothing here.
        let stale: Vec<usize> = (0..digits.len())
            .filter(|&j| digits[j] > 1 || (digits[j] == 1 && digits.get(j + 1).copied() == Some(1)))
            .collect();
        if stale.is_empty() {
            break;
        }
        for j in stale {
            queued[j] = true;
            pending.push(j);
        }
    }
    while digits.last() == Some(&0) {
        digits.pop();
    }
    true
}

type Touched = [(usize, u64); 3];

/// Applies one (bulk) rule at `j`. `Some(None)`: nothing to do; `None`:
/// overflow, with `digits` left untouched.
fn apply_rule(digits: &mut Vec<u64>, j: usize) -> Option<Option<Touched>> {
    let here = digits[j];
    let next = digits.get(j + 1).copied().unwrap_or(0);
    if here >= 1 && next >= 1 {
        let t = here.min(next);
        ensure_len(digits, j + 3);
        let carried = digits[j + 2].checked_add(t)?;
        digits[j] -= t;
        digits[j + 1] -= t;
        digits[j + 2] = carried;
        return Some(Some([(j, t), (j + 1, t), (j + 2, t)]));
    }
    if here >= 2 {
        let t = here / 2;
        ensure_len(digits, j + 2);
        let low = match j {
            0 => None,
            1 => Some(0),
            _ => Some(j - 2),
        };
        let up = digits[j + 1].checked_add(t)?;
        let down = match low {
            Some(l) => Some(digits[l].checked_add(t)?),
            None => None,
        };
        digits[j] -= 2 * t;
        digits[j + 1] = up;
        if let (Some(l), Some(v)) = (low, down) {
            digits[l] = v;
        }
        let low_touch = low.map_or((j, 0), |l| (l, t));
        return Some(Some([(j, t), (j + 1, t), low_touch]));
    }
    Some(None)
}

fn ensure_len(digits: &mut Vec<u64>, len: usize) {
    if digits.len() < len {
        digits.resize(len, 0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(digits: &[u64]) -> String {
        normalize(&GeneralDigitString::new(digits.to_vec()))
            .unwrap()
            .to_string()
    }

    #[test]
    fn single_carry() {
        assert_eq!(norm(&[0, 1, 1]), "1000");
    }

    #[test]
    fn doubled_unit() {
        assert_eq!(norm(&[2]), "10");
    }

    #[test]
    fn run_of_ones() {
        // 1 + 2 + 3 + 5 = 11 = 8 + 3
        assert_eq!(norm(&[1, 1, 1, 1]), "10100");
    }

    #[test]
    fn low_position_splits() {
        // 2 * F_3 = 4 = F_4 + F_2
        assert_eq!(norm(&[0, 2]), "101");
        // 2 * F_4 = 6 = F_5 + F_2
        assert_eq!(norm(&[0, 0, 2]), "1001");
        // large digits
        assert_eq!(
            norm(&[1_000_000]),
            zeck_encode(&BigUint::from(1_000_000u32))
                .unwrap()
                .to_string()
        );
    }

    #[test]
    fn zero_value_is_a_domain_error() {
        let zero = GeneralDigitString::new(vec![0, 0, 0]);
        assert!(normalize_by_rewriting(&zero).is_none());
        assert!(matches!(normalize(&zero), Err(Error::Domain(_))));
        assert!(matches!(
            normalize(&GeneralDigitString::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn text_form() {
        let s: GeneralDigitString = "0,1,1".parse().unwrap();
        assert_eq!(s.digits(), &[0, 1, 1]);
        assert_eq!(s.to_string(), "0,1,1");
        assert_eq!(s.value(), BigUint::from(5u32));
        assert!("0,x".parse::<GeneralDigitString>().is_err());
    }

    #[test]
    fn overflow_falls_back_to_value_path() {
        let s = GeneralDigitString::new(vec![u64::MAX, u64::MAX, u64::MAX]);
        assert!(normalize_by_rewriting(&s).is_none());
        let word = normalize(&s).unwrap();
        assert_eq!(word.value(), s.value());
    }

    #[test]
    fn doubling_zeckendorf_words() {
        for n in 1..3000u64 {
            let word = crate::word::zeck_encode_u64(n).unwrap();
            for q in [2u64, 3, 7] {
                let s = GeneralDigitString::scaled(&word, q);
                let expected = crate::word::zeck_encode_u64(n * q).unwrap();
                assert_eq!(normalize_by_rewriting(&s), Some(expected), "n={n} q={q}");
            }
        }
    }
}
