//! The four Markov-type equations `alpha a^2 + beta b^2 + gamma c^2 = lambda abc`
//! and their mutation trees.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// An ordered triple of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple(pub [BigInt; 3]);

impl Triple {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Triple([a.into(), b.into(), c.into()])
    }

    pub fn entries(&self) -> &[BigInt; 3] {
        &self.0
    }

    pub fn max_entry(&self) -> &BigInt {
        self.0.iter().max().expect("three entries")
    }

    pub fn sum(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }

    /// Entries in ascending order, for symmetry-reduced reports.
    pub fn sorted(&self) -> Triple {
        let mut v = self.0.clone();
        v.sort();
        Triple(v)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for Triple {
    type Err = Error;

    /// Parses `a,b,c`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected three comma-separated values, got {s:?}")));
        };
        let parse = |t: &str| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad triple entry {t:?}")))
        };
        let t = Triple([parse(a)?, parse(b)?, parse(c)?]);
        if !t.is_positive() {
            return Err(Error::Parse(format!("triple entries must be positive, got {t}")));
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovEquation {
    pub family: u8,
    pub coeffs: [BigInt; 3],
    pub lambda: BigInt,
    pub minimal_solutions: Vec<Triple>,
}

impl MarkovEquation {
    /// Equations (1)-(4): `a^2+b^2+c^2=3abc`, `a^2+b^2+2c^2=4abc`,
    /// `a^2+2b^2+3c^2=6abc`, `a^2+b^2+5c^2=5abc`.
    pub fn family(id: u8) -> Result<Self> {
        let (coeffs, lambda, minimal) = match id {
            1 => ([1, 1, 1], 3, vec![Triple::new(1, 1, 1)]),
            2 => ([1, 1, 2], 4, vec![Triple::new(1, 1, 1)]),
            3 => ([1, 2, 3], 6, vec![Triple::new(1, 1, 1)]),
            4 => (
                [1, 1, 5],
                5,
                vec![Triple::new(1, 2, 1), Triple::new(2, 1, 1)],
            ),
            _ => return Err(Error::UnknownFamily(id.to_string())),
        };
        Ok(MarkovEquation {
            family: id,
            coeffs: coeffs.map(BigInt::from),
            lambda: BigInt::from(lambda),
            minimal_solutions: minimal,
        })
    }

    pub fn all() -> Vec<MarkovEquation> {
        (1..=4)
            .map(|id| Self::family(id).expect("known family"))
            .collect()
    }

    /// `alpha a^2 + beta b^2 + gamma c^2 - lambda abc`.
    pub fn residual(&self, t: &Triple) -> BigInt {
        let [a, b, c] = t.entries();
        let lhs: BigInt = self
            .coeffs
            .iter()
            .zip(t.entries())
            .map(|(k, x)| k * x * x)
            .sum();
        lhs - &self.lambda * a * b * c
    }

    pub fn is_solution(&self, t: &Triple) -> bool {
        t.is_positive() && self.residual(t).is_zero()
    }

    /// Replaces the entry at `pos` by the other root of the quadratic in it.
    pub fn mutate(&self, t: &Triple, pos: usize) -> Result<Triple> {
        let others: BigInt = (0..3).filter(|&i| i != pos).map(|i| &t.0[i]).product();
        let factor = &self.lambda / &self.coeffs[pos];
        debug_assert!((&factor * &self.coeffs[pos]) == self.lambda);
        let mut out = t.clone();
        out.0[pos] = factor * others - &t.0[pos];
        if !out.0[pos].is_positive() {
            return Err(Error::NonPositiveMutation);
        }
        Ok(out)
    }

    pub fn is_minimal(&self, t: &Triple) -> bool {
        self.minimal_solutions.contains(t)
    }

    /// A mutation that strictly lowers `a + b + c`, choosing the largest drop.
    pub fn descent_step(&self, t: &Triple) -> Option<(usize, Triple)> {
        let sum = t.sum();
        (0..3)
            .filter_map(|pos| self.mutate(t, pos).ok().map(|m| (pos, m)))
            .filter(|(_, m)| m.sum() < sum)
            .min_by(|(_, x), (_, y)| x.sum().cmp(&y.sum()))
    }

    /// Iterates [`descent_step`](Self::descent_step); the last element has no
    /// further descent.
    pub fn descent_path(&self, t: &Triple) -> Vec<Triple> {
        let mut path = vec![t.clone()];
        while let Some((_, next)) = self.descent_step(path.last().expect("nonempty")) {
            path.push(next);
        }
        path
    }

    /// Every solution with all entries at most `bound`, by breadth-first
    /// mutation from the minimal solutions.
    pub fn enumerate(&self, bound: &BigInt) -> BTreeSet<Triple> {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<Triple> = self
            .minimal_solutions
            .iter()
            .filter(|t| t.max_entry() <= bound)
            .cloned()
            .collect();
        while let Some(t) = queue.pop_front() {
            if !seen.insert(t.clone()) {
                continue;
            }
            for pos in 0..3 {
                if let Ok(m) = self.mutate(&t, pos) {
                    if m.max_entry() <= bound && !seen.contains(&m) {
                        queue.push_back(m);
                    }
                }
            }
        }
        seen
    }
}

impl fmt::Display for MarkovEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |k: &BigInt, v: &str| {
            if k == &BigInt::from(1) {
                format!("{v}^2")
            } else {
                format!("{k}{v}^2")
            }
        };
        write!(
            f,
            "{}+{}+{}={}abc",
            term(&self.coeffs[0], "a"),
            term(&self.coeffs[1], "b"),
            term(&self.coeffs[2], "c"),
            self.lambda
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(id: u8) -> MarkovEquation {
        MarkovEquation::family(id).unwrap()
    }

    #[test]
    fn solutions() {
        assert!(eq(1).is_solution(&Triple::new(1, 1, 1)));
        assert!(eq(2).is_solution(&Triple::new(1, 1, 1)));
        assert!(eq(3).is_solution(&Triple::new(1, 1, 1)));
        assert!(eq(4).is_solution(&Triple::new(1, 2, 1)));
        assert!(!eq(1).is_solution(&Triple::new(1, 1, 3)));
        assert_eq!(eq(1).residual(&Triple::new(1, 1, 3)), BigInt::from(2));
        assert!(MarkovEquation::family(5).is_err());
    }

    #[test]
    fn coefficients_divide_lambda() {
        for e in MarkovEquation::all() {
            for k in &e.coeffs {
                assert!((&e.lambda % k).is_zero());
            }
        }
    }

    #[test]
    fn mutation_examples() {
        assert_eq!(
            eq(1).mutate(&Triple::new(1, 1, 1), 2).unwrap(),
            Triple::new(1, 1, 2)
        );
        assert_eq!(
            eq(1).mutate(&Triple::new(1, 2, 5), 0).unwrap(),
            Triple::new(29, 2, 5)
        );
        assert_eq!(
            eq(3).mutate(&Triple::new(1, 1, 1), 1).unwrap(),
            Triple::new(1, 2, 1)
        );
        assert_eq!(
            eq(1).mutate(&Triple::new(1, 1, 5), 2),
            Err(Error::NonPositiveMutation)
        );
    }

    #[test]
    fn enumerate_examples() {
        let small = eq(1).enumerate(&BigInt::from(2));
        let expected: BTreeSet<Triple> = [(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1)]
            .into_iter()
            .map(|(a, b, c)| Triple::new(a, b, c))
            .collect();
        assert_eq!(small, expected);

        let five = eq(1).enumerate(&BigInt::from(5));
        assert!(five.contains(&Triple::new(1, 2, 5)));
        assert!(five.iter().all(|t| eq(1).is_solution(t)));

        let four = eq(4).enumerate(&BigInt::from(2));
        assert!(four.contains(&Triple::new(1, 2, 1)));
        assert!(four.contains(&Triple::new(2, 1, 1)));
    }

    #[test]
    fn enumerate_matches_brute_force() {
        for e in MarkovEquation::all() {
            let bound = 300i64;
            let k: Vec<i64> = e.coeffs.iter().map(|x| i64::try_from(x).unwrap()).collect();
            let lambda = i64::try_from(&e.lambda).unwrap();
            let mut brute = BTreeSet::new();
            for a in 1..=bound {
                for b in 1..=bound {
                    for c in 1..=bound {
                        if k[0] * a * a + k[1] * b * b + k[2] * c * c == lambda * a * b * c {
                            brute.insert(Triple::new(a, b, c));
                        }
                    }
                }
            }
            assert_eq!(e.enumerate(&BigInt::from(bound)), brute, "family {}", e.family);
        }
    }

    #[test]
    fn descent_examples() {
        assert_eq!(
            eq(1).descent_step(&Triple::new(1, 1, 2)),
            Some((2, Triple::new(1, 1, 1)))
        );
        assert_eq!(eq(1).descent_step(&Triple::new(1, 1, 1)), None);
        assert_eq!(
            eq(1).descent_step(&Triple::new(2, 5, 29)),
            Some((2, Triple::new(2, 5, 1)))
        );
        assert_eq!(eq(4).descent_step(&Triple::new(2, 1, 1)), None);
    }

    #[test]
    fn permutation_symmetry() {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let bound = BigInt::from(10_000);
        for e in MarkovEquation::all() {
            let sols = e.enumerate(&bound);
            for p in perms {
                let preserved = sols.iter().all(|t| {
                    let q = Triple(p.map(|i| t.0[i].clone()));
                    e.is_solution(&q)
                });
                let expected = match e.family {
                    1 => true,
                    2 | 4 => p == [0, 1, 2] || p == [1, 0, 2],
                    _ => p == [0, 1, 2],
                };
                assert_eq!(preserved, expected, "family {} perm {p:?}", e.family);
            }
        }
    }

    #[test]
    fn parse_triple() {
        assert_eq!("1,2,5".parse::<Triple>().unwrap(), Triple::new(1, 2, 5));
        assert_eq!("(1, 2, 5)".parse::<Triple>().unwrap(), Triple::new(1, 2, 5));
        assert!("1,2".parse::<Triple>().is_err());
        assert!("1,0,2".parse::<Triple>().is_err());
        assert_eq!(eq(3).to_string(), "a^2+2b^2+3c^2=6abc");
    }
}
