//! Exhaustive sweeps over the string-level and arithmetic lemmas.
//!
//! Each sweep returns a [`Sweep`] with the number of cases examined and the
//! first few counterexamples.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactmath::{hj_evaluate, hj_expand, mod_inverse, HjString};
use crate::markov::MarkovEquation;
use crate::singularities::{
    boundary_pullback_selfint, classify, discrepancies, generate_t_strings,
    in_open_unit_interval_below_zero, is_all_twos, lemma_t1_check, lemma_t2_check, SingClass,
};

const MAX_REPORTED: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub name: &'static str,
    pub checked: u64,
    pub failures: Vec<String>,
}

impl Sweep {
    fn new(name: &'static str) -> Self {
        Sweep {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_REPORTED {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `T_d`-strings of length at most `max_len` for every `d`, keyed by string.
fn generated_t_strings(max_len: usize) -> HashMap<Vec<u64>, u64> {
    let mut out = HashMap::new();
    for d in 1..=max_len {
        for s in generate_t_strings(d, max_len) {
            let key: Vec<u64> = s.entries().iter().map(|b| b.to_u64().expect("small")).collect();
            out.insert(key, d as u64);
        }
    }
    out
}

type Convergents = ((i64, i64), (i64, i64));

const START: Convergents = ((0, 1), (-1, 0));

/// Appends `b`: `p_k = b p_{k-1} - p_{k-2}` and likewise for `q`, so that the
/// string so far evaluates to `p_k / q_k`.
fn push_entry((p, q): Convergents, b: i64) -> Convergents {
    ((p.1, b * p.1 - p.0), (q.1, b * q.1 - q.0))
}

/// Compares the arithmetic recognizer with the generated `T`-strings on every
/// string of length at most `max_len` with entries in `2..=max_entry`.
pub fn t_string_oracle(max_len: usize, max_entry: u64) -> Sweep {
    let mut sweep = Sweep::new("t-string oracle");
    let generated = generated_t_strings(max_len);
    let expected = generated
        .keys()
        .filter(|k| k.iter().all(|&b| b <= max_entry))
        .count() as u64;

    struct Walk<'a> {
        generated: &'a HashMap<Vec<u64>, u64>,
        max_len: usize,
        max_entry: u64,
        prefix: Vec<u64>,
        recognized: u64,
    }
    fn go(w: &mut Walk, sweep: &mut Sweep, c: Convergents) {
        for b in 2..=w.max_entry {
            let next = push_entry(c, b as i64);
            let (np, nq) = next;
            w.prefix.push(b);
            let class = classify(&BigInt::from(np.1), &BigInt::from(nq.1));
            let arithmetic = match class {
                Ok(SingClass::Tclass { d, .. }) => d.to_u64(),
                _ => None,
            };
            if arithmetic.is_some() {
                w.recognized += 1;
            }
            let generative = w.generated.get(&w.prefix).copied();
            let prefix = &w.prefix;
            sweep.record(arithmetic == generative, || {
                format!("{prefix:?}: arithmetic {arithmetic:?}, generative {generative:?}")
            });
            if w.prefix.len() < w.max_len {
                go(w, sweep, next);
            }
            w.prefix.pop();
        }
    }

    let mut walk = Walk {
        generated: &generated,
        max_len,
        max_entry,
        prefix: Vec::new(),
        recognized: 0,
    };
    if max_len > 0 {
        go(&mut walk, &mut sweep, START);
    }
    let recognized = walk.recognized;
    sweep.record(recognized == expected, || {
        format!("{recognized} strings recognized, {expected} generated")
    });
    sweep
}

/// `F^2 = -1` for every `T`-string of length at most `max_len`.
pub fn f_squared(max_len: usize) -> Sweep {
    let mut sweep = Sweep::new("boundary pullback");
    let minus_one = -num_rational::BigRational::one();
    for d in 1..=max_len {
        for s in generate_t_strings(d, max_len) {
            let f2 = boundary_pullback_selfint(&s);
            sweep.record(f2.as_ref() == Ok(&minus_one), || format!("{s}: F^2 = {f2:?}"));
        }
    }
    sweep
}

/// Discrepancies lie in `(-1, 0)` on `T`-strings and vanish on `[2, ..., 2]`.
pub fn discrepancy_bounds(max_len: usize) -> Sweep {
    let mut sweep = Sweep::new("discrepancies");
    for d in 1..=max_len {
        for s in generate_t_strings(d, max_len) {
            let ok = discrepancies(&s)
                .map(|a| a.iter().all(in_open_unit_interval_below_zero))
                .unwrap_or(false);
            sweep.record(ok, || format!("{s}: discrepancy outside (-1, 0)"));
        }
    }
    for len in 1..=max_len {
        let s = HjString::from_u64s(&vec![2; len]);
        debug_assert!(is_all_twos(&s));
        let ok = discrepancies(&s)
            .map(|a| a.iter().all(Zero::is_zero))
            .unwrap_or(false);
        sweep.record(ok, || format!("{s}: nonzero discrepancy"));
    }
    sweep
}

/// Both string lemmas on every conjugate pair `n/a`, `n/(n - a)` with
/// `n <= max_n`, for `t <= max_t` and extra entries `2..=max_extra`.
pub fn lemma_t(max_n: u64, max_t: u64, max_extra: u64) -> Sweep {
    let mut sweep = Sweep::new("lemma T");
    for n in 2..=max_n {
        for a in 1..n {
            if n.gcd(&a) != 1 {
                continue;
            }
            let left = hj_expand(&BigInt::from(n), &BigInt::from(a)).expect("coprime");
            let right = hj_expand(&BigInt::from(n), &BigInt::from(n - a)).expect("coprime");
            for t in 0..=max_t {
                let ok = lemma_t1_check(&left, &right, t).unwrap_or(false);
                sweep.record(ok, || format!("first form fails for {left}, {right}, t = {t}"));
                for extra in 2..=max_extra {
                    let ok = lemma_t2_check(&left, &right, t, extra).unwrap_or(false);
                    sweep.record(ok, || {
                        format!("second form fails for {left}, {right}, t = {t}, b = {extra}")
                    });
                }
            }
        }
    }
    sweep
}

/// `hj_evaluate(hj_expand(n, a)) = n/a`, and reversal inverts `a` mod `n`,
/// for all coprime `0 < a < n <= max_n`.
pub fn round_trips(max_n: u64) -> Sweep {
    let mut sweep = Sweep::new("round trips");
    for n in 2..=max_n {
        let nb = BigInt::from(n);
        for a in 1..n {
            if n.gcd(&a) != 1 {
                continue;
            }
            let ab = BigInt::from(a);
            let s = hj_expand(&nb, &ab).expect("coprime");
            let back = hj_evaluate(&s).expect("resolution string");
            sweep.record(back.num() == &nb && back.den() == &ab, || {
                format!("{n}/{a} -> {s} -> {back}")
            });
            let rev = hj_evaluate(&s.reversed()).expect("resolution string");
            let inv = mod_inverse(&ab, &nb).expect("coprime");
            sweep.record(rev.num() == &nb && rev.den() == &inv, || {
                format!("{s} reversed gives {rev}, expected {n}/{inv}")
            });
        }
    }
    sweep
}

/// Mutation is an involution preserving solutions, and descent reaches a
/// minimal solution, on every solution with entries at most `bound`.
pub fn markov_dynamics(bound: &BigInt) -> Sweep {
    let mut sweep = Sweep::new("markov dynamics");
    for eq in MarkovEquation::all() {
        for t in eq.enumerate(bound) {
            for pos in 0..3 {
                match eq.mutate(&t, pos) {
                    Ok(m) => {
                        sweep.record(eq.is_solution(&m), || format!("{t} -> {m} is not a solution"));
                        let back = eq.mutate(&m, pos);
                        sweep.record(back.as_ref() == Ok(&t), || {
                            format!("mutating {t} twice at {pos} gives {back:?}")
                        });
                    }
                    Err(_) => sweep.record(false, || format!("{t} mutates to a non-positive entry")),
                }
            }
            let path = eq.descent_path(&t);
            let end = path.last().expect("nonempty");
            sweep.record(eq.is_minimal(end), || {
                format!("descent from {t} stops at {end} in family {}", eq.family)
            });
        }
    }
    sweep
}

/// The sweeps behind `verify lemmas`, at the given sizes.
pub fn all_sweeps(max_len: usize, max_entry: u64, max_n: u64) -> Vec<Sweep> {
    vec![
        t_string_oracle(max_len, max_entry),
        f_squared(max_len),
        discrepancy_bounds(max_len),
        lemma_t(60, 4, 5),
        round_trips(max_n),
        markov_dynamics(&BigInt::from(1_000_000)),
    ]
}
