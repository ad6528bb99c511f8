//! Unbounded integer helpers and Hirzebruch-Jung continued fractions.
//!
//! A string `[b_1, ..., b_r]` with every `b_i >= 2` stands for the negative
//! continued fraction `b_1 - 1/(b_2 - 1/(... - 1/b_r))`. The empty string is
//! reserved for a smooth point and never evaluates to a fraction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn gcd(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    Ok(a.gcd(b))
}

/// Inverse of `a` modulo `n`, returned in `[1, n - 1]` (or `0` when `n = 1`).
pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Result<BigInt> {
    let not_invertible = || Error::NotInvertible {
        a: a.clone(),
        n: n.clone(),
    };
    if !n.is_positive() {
        return Err(not_invertible());
    }
    let ext = a.mod_floor(n).extended_gcd(n);
    if !ext.gcd.is_one() {
        return Err(not_invertible());
    }
    Ok(ext.x.mod_floor(n))
}

/// A reduced positive fraction `num/den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction {
    num: BigInt,
    den: BigInt,
}

impl Fraction {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if !num.is_positive() || !den.is_positive() {
            return Err(Error::BadFraction { n: num, a: den });
        }
        let g = num.gcd(&den);
        Ok(Fraction {
            num: num / &g,
            den: den / &g,
        })
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.num, self.den)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Checks `0 < a < n` and `gcd(a, n) = 1`.
pub fn check_singularity_fraction(n: &BigInt, a: &BigInt) -> Result<()> {
    if a.is_positive() && a < n && a.gcd(n).is_one() {
        Ok(())
    } else {
        Err(Error::BadFraction {
            n: n.clone(),
            a: a.clone(),
        })
    }
}

/// A Hirzebruch-Jung string.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HjString(Vec<BigInt>);

impl HjString {
    pub fn new(entries: Vec<BigInt>) -> Self {
        HjString(entries)
    }

    pub fn from_u64s(entries: &[u64]) -> Self {
        HjString(entries.iter().map(|&b| BigInt::from(b)).collect())
    }

    pub fn empty() -> Self {
        HjString(Vec::new())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        HjString(self.0.iter().rev().cloned().collect())
    }

    /// True when every entry is at least 2 (the resolution-chain condition).
    pub fn is_resolution_string(&self) -> bool {
        let two = BigInt::from(2);
        self.0.iter().all(|b| *b >= two)
    }

    /// Self-intersections `-b_i` of the resolution chain.
    pub fn self_intersections(&self) -> Vec<BigInt> {
        self.0.iter().map(|b| -b).collect()
    }
}

impl fmt::Display for HjString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]")
    }
}

impl std::str::FromStr for HjString {
    type Err = Error;

    /// Accepts `[3,2,2,3]`, `3,2,2,3` or `3 2 2 3`; `[]` is the empty string.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let entries = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad string entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HjString(entries))
    }
}

/// Expands `n/a` as a Hirzebruch-Jung continued fraction.
pub fn hj_expand(n: &BigInt, a: &BigInt) -> Result<HjString> {
    check_singularity_fraction(n, a)?;
    let mut entries = Vec::new();
    let (mut p, mut q) = (n.clone(), a.clone());
    while !q.is_zero() {
        let b = p.div_ceil(&q);
        let r = &b * &q - &p;
        entries.push(b);
        p = q;
        q = r;
    }
    Ok(HjString(entries))
}

/// [`hj_expand`], or `None` once the string would exceed `max_len` entries.
///
/// Strings can be as long as `n - 1` (for `n/(n-1)`), so callers facing
/// unbounded input should use this.
pub fn hj_expand_bounded(n: &BigInt, a: &BigInt, max_len: usize) -> Result<Option<HjString>> {
    check_singularity_fraction(n, a)?;
    let mut entries = Vec::new();
    let (mut p, mut q) = (n.clone(), a.clone());
    while !q.is_zero() {
        if entries.len() == max_len {
            return Ok(None);
        }
        let b = p.div_ceil(&q);
        let r = &b * &q - &p;
        entries.push(b);
        p = q;
        q = r;
    }
    Ok(Some(HjString(entries)))
}

/// Evaluates a nonempty string with entries `>= 2` to the fraction `n/a`.
pub fn hj_evaluate(s: &HjString) -> Result<Fraction> {
    if s.is_empty() {
        return Err(Error::BadString("the empty string is the smooth case".into()));
    }
    if !s.is_resolution_string() {
        return Err(Error::BadString(format!("{s} has an entry below 2")));
    }
    let (num, den) = evaluate_unchecked(s.entries());
    // Consecutive convergents are coprime, so this is already reduced.
    Ok(Fraction { num, den })
}

/// Right-to-left evaluation; returns `(numerator, denominator)` without checks.
pub(crate) fn evaluate_unchecked(entries: &[BigInt]) -> (BigInt, BigInt) {
    let mut num = BigInt::one();
    let mut den = BigInt::zero();
    for b in entries.iter().rev() {
        let next = b * &num - &den;
        den = std::mem::replace(&mut num, next);
    }
    (num, den)
}

pub fn conjugate_fraction(n: &BigInt, a: &BigInt) -> Result<Fraction> {
    check_singularity_fraction(n, a)?;
    Ok(Fraction {
        num: n.clone(),
        den: n - a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn frac(n: i64, a: i64) -> Fraction {
        Fraction::new(b(n), b(a)).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&b(12), &b(8)).unwrap(), b(4));
        assert_eq!(gcd(&b(7), &b(1)).unwrap(), b(1));
        assert_eq!(gcd(&b(0), &b(5)).unwrap(), b(5));
        assert_eq!(gcd(&b(0), &b(0)), Err(Error::GcdOfZeros));
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(&b(2), &b(9)).unwrap(), b(5));
        assert_eq!(mod_inverse(&b(1), &b(17)).unwrap(), b(1));
        assert_eq!(mod_inverse(&b(3), &b(4)).unwrap(), b(3));
        assert!(mod_inverse(&b(6), &b(9)).is_err());
    }

    #[test]
    fn mod_inverse_matches_scan() {
        for n in 2..60i64 {
            for a in 1..n {
                let scan = (1..n).find(|x| (a * x) % n == 1);
                match scan {
                    Some(x) => assert_eq!(mod_inverse(&b(a), &b(n)).unwrap(), b(x)),
                    None => assert!(mod_inverse(&b(a), &b(n)).is_err()),
                }
            }
        }
    }

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(&b(4), &b(1)).unwrap(), HjString::from_u64s(&[4]));
        assert_eq!(hj_expand(&b(9), &b(2)).unwrap(), HjString::from_u64s(&[5, 2]));
        assert_eq!(
            hj_expand(&b(7), &b(5)).unwrap(),
            HjString::from_u64s(&[2, 2, 3])
        );
        assert!(hj_expand(&b(6), &b(2)).is_err());
        assert!(hj_expand(&b(6), &b(6)).is_err());
        assert!(hj_expand(&b(6), &b(0)).is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(hj_evaluate(&HjString::from_u64s(&[4])).unwrap(), frac(4, 1));
        assert_eq!(hj_evaluate(&HjString::from_u64s(&[5, 2])).unwrap(), frac(9, 2));
        // 3 - 1/(2 - 1/(2 - 1/3)) = 3 - 1/(2 - 3/5) = 3 - 5/7 = 16/7
        assert_eq!(
            hj_evaluate(&HjString::from_u64s(&[3, 2, 2, 3])).unwrap(),
            frac(16, 7)
        );
        assert!(hj_evaluate(&HjString::empty()).is_err());
        assert!(hj_evaluate(&HjString::from_u64s(&[3, 1])).is_err());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate_fraction(&b(2), &b(1)).unwrap(), frac(2, 1));
        assert_eq!(conjugate_fraction(&b(4), &b(1)).unwrap(), frac(4, 3));
        assert_eq!(conjugate_fraction(&b(9), &b(2)).unwrap(), frac(9, 7));
    }

    #[test]
    fn parse_and_display() {
        let s: HjString = "[3,2, 2,3]".parse().unwrap();
        assert_eq!(s, HjString::from_u64s(&[3, 2, 2, 3]));
        assert_eq!(s.to_string(), "[3,2,2,3]");
        assert_eq!("[]".parse::<HjString>().unwrap(), HjString::empty());
        assert!("[3,x]".parse::<HjString>().is_err());
    }

    #[test]
    fn conjugate_construction_step() {
        // [b_1 + 1, ...] and [2, c_1, ...] stay conjugate.
        for n in 2..=200i64 {
            for a in 1..n {
                if num_integer::gcd(a, n) != 1 {
                    continue;
                }
                let left = hj_expand(&b(n), &b(a)).unwrap();
                let right = hj_expand(&b(n), &b(n - a)).unwrap();
                let mut l2 = left.clone().into_entries();
                l2[0] += 1;
                let mut r2 = vec![b(2)];
                r2.extend(right.into_entries());
                let fl = hj_evaluate(&HjString::new(l2)).unwrap();
                let fr = hj_evaluate(&HjString::new(r2)).unwrap();
                assert_eq!(fl.num(), fr.num());
                assert_eq!(fl.den() + fr.den(), fl.num().clone());
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
            (2i64..100_000)
                .prop_flat_map(|n| (Just(n), 1..n))
                .prop_filter("coprime", |(n, a)| num_integer::gcd(*n, *a) == 1)
        }

        proptest! {
            #[test]
            fn expand_then_evaluate((n, a) in coprime_pair()) {
                let s = hj_expand(&b(n), &b(a)).unwrap();
                prop_assert!(s.is_resolution_string());
                prop_assert_eq!(hj_evaluate(&s).unwrap(), frac(n, a));
            }

            #[test]
            fn conjugation_is_involution((n, a) in coprime_pair()) {
                let c = conjugate_fraction(&b(n), &b(a)).unwrap();
                let back = conjugate_fraction(c.num(), c.den()).unwrap();
                prop_assert_eq!(back, frac(n, a));
            }

            #[test]
            fn reversal_is_inverse((n, a) in coprime_pair()) {
                let s = hj_expand(&b(n), &b(a)).unwrap();
                let inv = mod_inverse(&b(a), &b(n)).unwrap();
                prop_assert_eq!(s.reversed(), hj_expand(&b(n), &inv).unwrap());
            }
        }
    }

    #[test]
    fn bounded_expansion() {
        let n = BigInt::from(10);
        assert_eq!(hj_expand_bounded(&n, &BigInt::from(9), 9).unwrap(), Some(hj_expand(&n, &BigInt::from(9)).unwrap()));
        assert_eq!(hj_expand_bounded(&n, &BigInt::from(9), 8).unwrap(), None);
        assert!(hj_expand_bounded(&n, &BigInt::from(5), 3).is_err());
    }
}
