//! Cyclic quotient singularities, T-strings and the string-level lemmas about
//! their minimal resolutions.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    check_singularity_fraction, conjugate_fraction, hj_evaluate, hj_expand, mod_inverse, HjString,
};
use crate::linalg::solve_rational;

/// The singularity `1/n(1,a)`, stored with `a = min(a, a^-1 mod n)`.
///
/// The smooth point is `n = 1, a = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotSing {
    n: BigInt,
    a: BigInt,
}

impl QuotSing {
    pub fn new(n: BigInt, a: BigInt) -> Result<Self> {
        if n.is_one() {
            return Ok(Self::smooth());
        }
        if n < BigInt::one() {
            return Err(Error::BadFraction { n, a });
        }
        let a = a.mod_floor(&n);
        check_singularity_fraction(&n, &a)?;
        let inv = mod_inverse(&a, &n)?;
        let a = a.min(inv);
        Ok(QuotSing { n, a })
    }

    pub fn smooth() -> Self {
        QuotSing {
            n: BigInt::one(),
            a: BigInt::zero(),
        }
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    /// The canonical representative `a`.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn is_smooth(&self) -> bool {
        self.n.is_one()
    }

    /// Resolution string; empty for a smooth point.
    pub fn hj_string(&self) -> HjString {
        if self.is_smooth() {
            HjString::empty()
        } else {
            hj_expand(&self.n, &self.a).expect("canonical pair is a valid fraction")
        }
    }

    pub fn classify(&self) -> SingClass {
        classify(&self.n, &self.a).expect("canonical pair is valid")
    }
}

impl fmt::Display for QuotSing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_smooth() {
            f.write_str("smooth")
        } else {
            write!(f, "1/{}(1,{})", self.n, self.a)
        }
    }
}

/// Classification of a surface quotient singularity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingClass {
    Smooth,
    DuValA(BigInt),
    DuValD(BigInt),
    DuValE(u8),
    /// `1/(d n^2)(1, d n a - 1)` with `n >= 2` and `gcd(a, n) = 1`.
    Tclass {
        d: BigInt,
        n: BigInt,
        a: BigInt,
    },
    /// A cyclic quotient singularity without a Q-Gorenstein smoothing.
    OtherCyclic(QuotSing),
}

impl SingClass {
    pub fn tclass(d: i64, n: i64, a: i64) -> Self {
        SingClass::Tclass {
            d: d.into(),
            n: n.into(),
            a: a.into(),
        }
    }

    pub fn a(r: i64) -> Self {
        SingClass::DuValA(r.into())
    }

    pub fn is_smooth(&self) -> bool {
        matches!(self, SingClass::Smooth)
    }

    pub fn is_du_val(&self) -> bool {
        matches!(
            self,
            SingClass::DuValA(_) | SingClass::DuValD(_) | SingClass::DuValE(_)
        )
    }

    /// The cyclic quotient `1/n(1,a)` this class denotes, when it is cyclic.
    pub fn quot_sing(&self) -> Option<QuotSing> {
        match self {
            SingClass::Smooth => Some(QuotSing::smooth()),
            SingClass::DuValA(r) => {
                let n = r + 1;
                let a = r.clone();
                QuotSing::new(n, a).ok()
            }
            SingClass::Tclass { d, n, a } => {
                let order = d * n * n;
                let weight = d * n * a - 1;
                QuotSing::new(order, weight).ok()
            }
            SingClass::OtherCyclic(q) => Some(q.clone()),
            SingClass::DuValD(_) | SingClass::DuValE(_) => None,
        }
    }
}

impl fmt::Display for SingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingClass::Smooth => f.write_str("smooth"),
            SingClass::DuValA(r) => write!(f, "A_{r}"),
            SingClass::DuValD(r) => write!(f, "D_{r}"),
            SingClass::DuValE(r) => write!(f, "E_{r}"),
            SingClass::Tclass { .. } => {
                let q = self.quot_sing().expect("T-class is cyclic");
                write!(f, "{q}")
            }
            SingClass::OtherCyclic(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for SingClass {
    type Err = Error;

    /// Parses `smooth`, `A_3`, `D_5`, `E_8` or a cyclic quotient `1/n(1,a)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad singularity {s:?}"));
        if s.eq_ignore_ascii_case("smooth") {
            return Ok(SingClass::Smooth);
        }
        if let Some(rest) = s.strip_prefix("1/") {
            let (n, tail) = rest.split_once('(').ok_or_else(bad)?;
            let (one, a) = tail
                .strip_suffix(')')
                .and_then(|t| t.split_once(','))
                .ok_or_else(bad)?;
            if one.trim() != "1" {
                return Err(bad());
            }
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            return classify(&n, &a);
        }
        let (kind, r) = s.split_once('_').ok_or_else(bad)?;
        let r: BigInt = r.parse().map_err(|_| bad())?;
        match kind {
            "A" if r >= BigInt::one() => Ok(SingClass::DuValA(r)),
            "D" if r >= BigInt::from(4) => Ok(SingClass::DuValD(r)),
            "E" => match r.to_u8() {
                Some(k @ 6..=8) => Ok(SingClass::DuValE(k)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

/// Classifies `1/n(1,a)` as smooth, Du Val, of class T, or neither.
pub fn classify(n: &BigInt, a: &BigInt) -> Result<SingClass> {
    if n.is_one() {
        return Ok(SingClass::Smooth);
    }
    if let (Some(n), Some(a)) = (n.to_i64(), a.to_i64()) {
        if let Some(c) = classify_small(n, a) {
            return Ok(c);
        }
    }
    classify_big(n, a)
}

fn classify_big(n: &BigInt, a: &BigInt) -> Result<SingClass> {
    let q = QuotSing::new(n.clone(), a.clone())?;
    let n = q.n();
    if *q.a() == n - 1 {
        return Ok(SingClass::DuValA(n - 1));
    }
    let inverse = mod_inverse(q.a(), n)?;
    for r in [q.a(), &inverse] {
        if let Some((d, n0, a0)) = t_normal_form(n, r) {
            return Ok(SingClass::Tclass { d, n: n0, a: a0 });
        }
    }
    Ok(SingClass::OtherCyclic(q))
}

/// Writes `1/n(1,r)` as `1/(d n0^2)(1, d n0 a0 - 1)` with `n0 >= 2` if possible.
///
/// In T-form `gcd(n, r + 1) = d n0 gcd(n0, a0) = d n0`, so the candidate is
/// read off from one gcd.
fn t_normal_form(n: &BigInt, r: &BigInt) -> Option<(BigInt, BigInt, BigInt)> {
    let k = n.gcd(&(r + 1));
    let (n0, rem) = n.div_rem(&k);
    if !rem.is_zero() || n0 < BigInt::from(2) {
        return None;
    }
    let (d, rem) = k.div_rem(&n0);
    if !rem.is_zero() || d.is_zero() {
        return None;
    }
    let a0: BigInt = (r + 1) / &k;
    a0.gcd(&n0).is_one().then_some((d, n0, a0))
}

/// [`classify_big`] in machine integers; `None` on invalid input, which the
/// caller re-raises through the exact path.
fn classify_small(n: i64, a: i64) -> Option<SingClass> {
    if n < 2 {
        return None;
    }
    let a = a.rem_euclid(n);
    let ext = a.extended_gcd(&n);
    if ext.gcd != 1 {
        return None;
    }
    let inverse = ext.x.rem_euclid(n);
    let (canon, other) = (a.min(inverse), a.max(inverse));
    if canon == n - 1 {
        return Some(SingClass::DuValA(BigInt::from(n - 1)));
    }
    for r in [canon, other] {
        let k = n.gcd(&(r + 1));
        let n0 = n / k;
        if n % k != 0 || n0 < 2 || k % n0 != 0 {
            continue;
        }
        let a0 = (r + 1) / k;
        if a0.gcd(&n0) == 1 {
            return Some(SingClass::Tclass {
                d: BigInt::from(k / n0),
                n: BigInt::from(n0),
                a: BigInt::from(a0),
            });
        }
    }
    Some(SingClass::OtherCyclic(QuotSing {
        n: BigInt::from(n),
        a: BigInt::from(canon),
    }))
}

pub fn milnor_number(c: &SingClass) -> Result<BigInt> {
    match c {
        SingClass::Smooth => Ok(BigInt::zero()),
        SingClass::DuValA(r) | SingClass::DuValD(r) => Ok(r.clone()),
        SingClass::DuValE(r) => Ok(BigInt::from(*r)),
        SingClass::Tclass { d, .. } => Ok(d - 1),
        SingClass::OtherCyclic(q) => Err(Error::NoSmoothing {
            n: q.n().clone(),
            a: q.a().clone(),
        }),
    }
}

pub fn d_value(c: &SingClass) -> Result<BigInt> {
    Ok(milnor_number(c)? + 1)
}

/// The seed `T_d`-string: `[4]` for `d = 1`, `[3, 2, ..., 2, 3]` otherwise.
pub fn t_seed(d: usize) -> HjString {
    match d {
        0 => HjString::empty(),
        1 => HjString::from_u64s(&[4]),
        _ => {
            let mut v = vec![3u64];
            v.extend(std::iter::repeat_n(2, d - 2));
            v.push(3);
            HjString::from_u64s(&v)
        }
    }
}

/// The two growth steps `[b_1 + 1, ..., b_r, 2]` and `[2, b_1, ..., b_r + 1]`.
pub fn t_steps(s: &HjString) -> [HjString; 2] {
    let e = s.entries();
    let mut left = e.to_vec();
    left[0] += 1;
    left.push(BigInt::from(2));
    let mut right = vec![BigInt::from(2)];
    right.extend_from_slice(e);
    *right.last_mut().expect("nonempty") += 1;
    [HjString::new(left), HjString::new(right)]
}

/// All `T_d`-strings of length at most `max_len`.
pub fn generate_t_strings(d: usize, max_len: usize) -> BTreeSet<HjString> {
    let mut out = BTreeSet::new();
    let seed = t_seed(d);
    if d == 0 || seed.len() > max_len {
        return out;
    }
    let mut queue = VecDeque::from([seed]);
    while let Some(s) = queue.pop_front() {
        if s.len() > max_len || !out.insert(s.clone()) {
            continue;
        }
        if s.len() < max_len {
            queue.extend(t_steps(&s));
        }
    }
    out
}

/// `Some(d)` when `s` resolves a `T_d`-singularity with `n >= 2`.
pub fn is_t_string(s: &HjString) -> Option<BigInt> {
    let f = hj_evaluate(s).ok()?;
    match classify(f.num(), f.den()).ok()? {
        SingClass::Tclass { d, .. } => Some(d),
        _ => None,
    }
}

pub fn conjugate_string(s: &HjString) -> Result<HjString> {
    let f = hj_evaluate(s)?;
    let c = conjugate_fraction(f.num(), f.den())?;
    hj_expand(c.num(), c.den())
}

/// True when the two nonempty strings expand a pair `n/a`, `n/(n - a)`.
pub fn are_conjugate(left: &HjString, right: &HjString) -> bool {
    match (hj_evaluate(left), hj_evaluate(right)) {
        (Ok(l), Ok(r)) => l.num() == r.num() && l.den() + r.den() == *l.num(),
        _ => false,
    }
}

/// `[a_r, ..., a_1, t + 2, b_1, ..., b_s]` for `left = [a_1, ..., a_r]` and
/// `right = [b_1, ..., b_s]` conjugate.
pub fn s_string(left: &HjString, right: &HjString, t: u64) -> Result<HjString> {
    if !are_conjugate(left, right) {
        return Err(Error::NotConjugate {
            left: left.to_string(),
            right: right.to_string(),
        });
    }
    let mut v: Vec<BigInt> = left.entries().iter().rev().cloned().collect();
    v.push(BigInt::from(t) + 2);
    v.extend_from_slice(right.entries());
    Ok(HjString::new(v))
}

/// The conjugate of an S_t-string is a `T_{t+1}`-string.
pub fn lemma_t1_check(left: &HjString, right: &HjString, t: u64) -> Result<bool> {
    let s = s_string(left, right, t)?;
    let c = conjugate_string(&s)?;
    Ok(is_t_string(&c) == Some(BigInt::from(t) + 1))
}

/// With `[d_1, ..., d_u]` the conjugate of the S_t-string extended by
/// `b_extra`, the string `[d_1, ..., d_u, b_extra]` is a `T_{t+1}`-string.
///
/// The conjugate is read from the end opposite `b_extra`: for an extension
/// `[e, b]` the conjugate chain ends in the `b - 2` twos, which must sit at the
/// front for `b` to be appended.
pub fn lemma_t2_check(left: &HjString, right: &HjString, t: u64, b_extra: u64) -> Result<bool> {
    if b_extra < 2 {
        return Err(Error::BadString(format!("extra entry {b_extra} is below 2")));
    }
    let mut extended = s_string(left, right, t)?.into_entries();
    extended.push(BigInt::from(b_extra));
    let mut d = conjugate_string(&HjString::new(extended))?
        .reversed()
        .into_entries();
    d.push(BigInt::from(b_extra));
    Ok(is_t_string(&HjString::new(d)) == Some(BigInt::from(t) + 1))
}

/// The exceptional chain of a minimal resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainData {
    pub string: HjString,
    pub selfints: Vec<BigInt>,
}

impl ChainData {
    pub fn new(string: HjString) -> Result<Self> {
        if string.is_empty() || !string.is_resolution_string() {
            return Err(Error::BadString(format!("{string} is not a resolution chain")));
        }
        let selfints = string.self_intersections();
        Ok(ChainData { string, selfints })
    }

    /// Intersection matrix `E_i . E_j`.
    pub fn intersection_matrix(&self) -> Vec<Vec<BigRational>> {
        let r = self.selfints.len();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if i == j {
                            BigRational::from_integer(self.selfints[i].clone())
                        } else if i.abs_diff(j) == 1 {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn quadratic_form(&self, x: &[BigRational]) -> BigRational {
        let m = self.intersection_matrix();
        m.iter()
            .zip(x)
            .map(|(row, xi)| {
                row.iter()
                    .zip(x)
                    .map(|(mij, xj)| mij * xj)
                    .sum::<BigRational>()
                    * xi
            })
            .sum()
    }
}

/// Discrepancies `a_i` in `K = pi^* K + sum a_i E_i` along the chain.
pub fn discrepancies(s: &HjString) -> Result<Vec<BigRational>> {
    let chain = ChainData::new(s.clone())?;
    let rhs: Vec<BigRational> = s
        .entries()
        .iter()
        .map(|b| BigRational::from_integer(b - 2))
        .collect();
    solve_rational(&chain.intersection_matrix(), &rhs)
        .ok_or_else(|| Error::BadString(format!("{s} has a singular intersection matrix")))
}

/// `F^2` where `pi^* D = D' + F` for the toric boundary `D = (uv = 0)`.
pub fn boundary_pullback_selfint(s: &HjString) -> Result<BigRational> {
    if is_t_string(s).is_none() {
        return Err(Error::NotTString(s.to_string()));
    }
    let chain = ChainData::new(s.clone())?;
    let r = s.len();
    let mut rhs = vec![BigRational::zero(); r];
    rhs[0] -= BigRational::one();
    rhs[r - 1] -= BigRational::one();
    let f = solve_rational(&chain.intersection_matrix(), &rhs)
        .ok_or_else(|| Error::BadString(format!("{s} has a singular intersection matrix")))?;
    Ok(chain.quadratic_form(&f))
}

fn partitions(d: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

fn a_type(e: u64) -> SingClass {
    if e == 1 {
        SingClass::Smooth
    } else {
        SingClass::DuValA(BigInt::from(e - 1))
    }
}

/// Possible singularity multisets of a fibre of a Q-Gorenstein deformation
/// of `1/(d n^2)(1, d n a - 1)`. Each multiset is sorted and keeps the smooth
/// (`A_0`) entries.
pub fn t_fibre_partitions(d: u64, n: &BigInt, a: &BigInt) -> Result<BTreeSet<Vec<SingClass>>> {
    if *n < BigInt::from(2) || !a.gcd(n).is_one() || d == 0 {
        return Err(Error::BadFraction {
            n: n.clone(),
            a: a.clone(),
        });
    }
    let mut out = BTreeSet::new();
    for parts in partitions(d) {
        let mut all_a: Vec<SingClass> = parts.iter().map(|&e| a_type(e)).collect();
        all_a.sort();
        out.insert(all_a);
        let distinct: BTreeSet<u64> = parts.iter().copied().collect();
        for &e1 in &distinct {
            let idx = parts.iter().position(|&e| e == e1).expect("present");
            let order = BigInt::from(e1) * n * n;
            let weight = BigInt::from(e1) * n * a - 1;
            let mut fibre = vec![classify(&order, &weight)?];
            fibre.extend(
                parts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != idx)
                    .map(|(_, &e)| a_type(e)),
            );
            fibre.sort();
            out.insert(fibre);
        }
    }
    Ok(out)
}

/// The fibres of [`t_fibre_partitions`] that keep the Milnor number, i.e. the
/// deformations preserving the Euler number: the point itself or `A_{d-1}`.
pub fn t_fibre_rho_preserving(d: u64, n: &BigInt, a: &BigInt) -> Result<BTreeSet<Vec<SingClass>>> {
    let target = BigInt::from(d) - 1;
    Ok(t_fibre_partitions(d, n, a)?
        .into_iter()
        .filter(|fibre| {
            fibre
                .iter()
                .map(|c| milnor_number(c).unwrap_or_else(|_| BigInt::from(-1)))
                .sum::<BigInt>()
                == target
        })
        .collect())
}

/// Sum of entries of a `T_d`-string of length `r`: `3r + 2 - d`, i.e. the
/// self-intersections of the chain add up to `d - 3r - 2`.
pub fn t_string_entry_sum(d: &BigInt, len: usize) -> BigInt {
    BigInt::from(3 * len + 2) - d
}

pub(crate) fn is_all_twos(s: &HjString) -> bool {
    let two = BigInt::from(2);
    s.entries().iter().all(|b| *b == two)
}

pub(crate) fn in_open_unit_interval_below_zero(x: &BigRational) -> bool {
    x.is_negative() && *x > -BigRational::one()
}
