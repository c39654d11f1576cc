//! Periodic continued-fraction words.
//!
//! A `PeriodicWord` is a finite sequence of positive integers `(a_1, ..., a_n)`
//! read as the purely periodic expansion `x = [a_1, ..., a_n repeating]`.
//! Words are compared and deduplicated as necklaces: the canonical form of a
//! word is the lexicographically least rotation of its primitive root.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Parity of the minimal period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::Parse {
                line: 0,
                message: format!("bad parity token `{other}`"),
            }),
        }
    }
}

/// A nonempty sequence of positive integers, one period of a periodic
/// continued fraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicWord(Vec<u64>);

impl PeriodicWord {
    pub fn new(digits: Vec<u64>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&d) = digits.iter().find(|&&d| d == 0) {
            return Err(Error::BadDigit(d));
        }
        Ok(PeriodicWord(digits))
    }

    pub fn digits(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        false // invariant: nonempty
    }

    pub fn digit_sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Smallest `p` dividing `len` such that the word is the `len/p`-fold
    /// repetition of its first `p` digits, together with the multiplicity.
    pub fn primitive_root(&self) -> (PeriodicWord, usize) {
        let n = self.len();
        for p in 1..=n {
            if n % p != 0 {
                continue;
            }
            if self.0.iter().enumerate().all(|(i, &d)| d == self.0[i % p]) {
                return (PeriodicWord(self.0[..p].to_vec()), n / p);
            }
        }
        unreachable!("p = n always satisfies the periodicity check")
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_root().1 == 1
    }

    /// Cyclic rotation by `k` places: `(a_{k+1}, ..., a_n, a_1, ..., a_k)`.
    pub fn rotate(&self, k: usize) -> PeriodicWord {
        let n = self.len();
        let k = k % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        PeriodicWord(v)
    }

    pub fn reversed(&self) -> PeriodicWord {
        let mut v = self.0.clone();
        v.reverse();
        PeriodicWord(v)
    }

    /// Word repeated `m` times.
    pub fn repeat(&self, m: usize) -> PeriodicWord {
        assert!(m >= 1);
        let mut v = Vec::with_capacity(self.len() * m);
        for _ in 0..m {
            v.extend_from_slice(&self.0);
        }
        PeriodicWord(v)
    }

    /// Minimal even expansion: the word itself when the primitive root has
    /// even length, the doubled root otherwise.
    pub fn minimal_even_expansion(&self) -> PeriodicWord {
        let (root, _) = self.primitive_root();
        if root.len() % 2 == 0 {
            root
        } else {
            root.repeat(2)
        }
    }

    pub fn parity(&self) -> Parity {
        if self.primitive_root().0.len() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Lexicographically least rotation of the primitive root. Idempotent.
    pub fn canonical(&self) -> PeriodicWord {
        let (root, _) = self.primitive_root();
        let n = root.len();
        let mut best = 0usize;
        for cand in 1..n {
            for j in 0..n {
                let a = root.0[(cand + j) % n];
                let b = root.0[(best + j) % n];
                if a < b {
                    best = cand;
                    break;
                }
                if a > b {
                    break;
                }
            }
        }
        root.rotate(best)
    }

    /// True when the word is primitive and already the least rotation, i.e.
    /// every nontrivial rotation is strictly larger.
    pub fn is_canonical_primitive(&self) -> bool {
        let n = self.len();
        'outer: for k in 1..n {
            for j in 0..n {
                let a = self.0[(k + j) % n];
                let b = self.0[j];
                if a > b {
                    continue 'outer;
                }
                if a < b {
                    return false; // smaller rotation exists
                }
            }
            return false; // rotation equal to the word: not primitive
        }
        true
    }

    /// Alternating sum `-a_1 + a_2 - ... + a_{2n}` of the minimal even
    /// expansion; zero for odd primitive words. Requires primitive input.
    pub fn alt_sum(&self) -> Result<i64> {
        if !self.is_primitive() {
            return Err(Error::NotPrimitive(self.to_string()));
        }
        if self.len() % 2 == 1 {
            return Ok(0);
        }
        let mut s: i64 = 0;
        for (j, &a) in self.0.iter().enumerate() {
            let a = a as i64;
            if j % 2 == 0 {
                s -= a;
            } else {
                s += a;
            }
        }
        Ok(s)
    }
}

impl fmt::Display for PeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for PeriodicWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .split(',')
            .map(|t| {
                t.trim().parse::<u64>().map_err(|e| Error::Parse {
                    line: 0,
                    message: format!("bad digit `{t}`: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PeriodicWord::new(digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(digits: &[u64]) -> PeriodicWord {
        PeriodicWord::new(digits.to_vec()).unwrap()
    }

    #[test]
    fn rejects_empty_and_zero() {
        assert!(matches!(PeriodicWord::new(vec![]), Err(Error::EmptyWord)));
        assert!(matches!(
            PeriodicWord::new(vec![1, 0, 2]),
            Err(Error::BadDigit(0))
        ));
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(w(&[1, 2, 1, 2]).primitive_root(), (w(&[1, 2]), 2));
        assert_eq!(w(&[1]).primitive_root(), (w(&[1]), 1));
        assert_eq!(w(&[2, 1, 2, 1, 2, 1]).primitive_root(), (w(&[2, 1]), 3));
        assert_eq!(w(&[1, 2, 3]).primitive_root(), (w(&[1, 2, 3]), 1));
    }

    #[test]
    fn canonical_is_least_rotation_and_idempotent() {
        assert_eq!(w(&[2, 1]).canonical(), w(&[1, 2]));
        assert_eq!(w(&[3, 1, 2]).canonical(), w(&[1, 2, 3]));
        assert_eq!(w(&[1, 2, 1, 2]).canonical(), w(&[1, 2]));
        let c = w(&[5, 4, 5, 1, 2]).canonical();
        assert_eq!(c, c.canonical());
        assert_eq!(c, w(&[1, 2, 5, 4, 5]));
    }

    #[test]
    fn canonical_primitive_check() {
        assert!(w(&[1, 2]).is_canonical_primitive());
        assert!(!w(&[2, 1]).is_canonical_primitive());
        assert!(!w(&[1, 2, 1, 2]).is_canonical_primitive());
        assert!(w(&[1]).is_canonical_primitive());
        assert!(w(&[1, 1, 2]).is_canonical_primitive());
    }

    #[test]
    fn alt_sum_examples() {
        assert_eq!(w(&[1, 2]).alt_sum().unwrap(), 1);
        assert_eq!(w(&[1]).alt_sum().unwrap(), 0);
        assert_eq!(w(&[3, 1, 2, 2]).alt_sum().unwrap(), -2);
        assert!(w(&[1, 2, 1, 2]).alt_sum().is_err());
    }

    #[test]
    fn alt_negates_under_rotation_and_reversal() {
        let word = w(&[3, 1, 2, 2]);
        let alt = word.alt_sum().unwrap();
        assert_eq!(word.rotate(1).alt_sum().unwrap(), -alt);
        assert_eq!(word.rotate(2).alt_sum().unwrap(), alt);
        assert_eq!(word.reversed().alt_sum().unwrap(), -alt);
    }

    #[test]
    fn minimal_even_expansion_doubles_odd() {
        assert_eq!(w(&[1]).minimal_even_expansion(), w(&[1, 1]));
        assert_eq!(w(&[1, 2]).minimal_even_expansion(), w(&[1, 2]));
        assert_eq!(w(&[1, 2, 3]).minimal_even_expansion(), w(&[1, 2, 3, 1, 2, 3]));
    }

    #[test]
    fn display_roundtrip() {
        let word = w(&[3, 1, 2]);
        assert_eq!(word.to_string(), "3,1,2");
        assert_eq!("3,1,2".parse::<PeriodicWord>().unwrap(), word);
    }
}
