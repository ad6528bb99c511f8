//! Classification data for toric del Pezzo surfaces of Picard rank one with
//! T-singularities, and verifiers that rebuild every table entry from the
//! Markov-type equations.
//!
//! The tables live in `data/tables.toml`, embedded at compile time. A table
//! file has three arrays:
//!
//! * `family`: `id`, either `equation` and `weights` (a base family, with
//!   `w_i = weights[i] * t_i^2`) or `base` and `quotient = { e, m }`, plus the
//!   expected `k2` and `d`.
//! * `an_row`: `label`, `x`, `y_family`, `y_triple`, `y`, `d`.
//! * `sporadic`: `label`, `index`, `singularities`, `surfaces` (a count or
//!   `"A1-family"`).
//!
//! Singularity lists use the [`SingClass`] text form, with `k*` prefixes for
//! repeated entries.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exactmath::HjString;
use crate::linalg::smith_normal_form;
use crate::markov::{MarkovEquation, Triple};
use crate::singularities::{
    are_conjugate, d_value, milnor_number, t_fibre_rho_preserving, QuotSing, SingClass,
};
use crate::toric::{
    k_squared_from_weights, quotient_fan, surface_report, wps_fan, Fan2, QuotientData,
    SurfaceReport,
};

pub const EMBEDDED_TABLES: &str = include_str!("../data/tables.toml");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTables {
    schema_version: u32,
    family: Vec<RawFamily>,
    an_row: Vec<RawAnRow>,
    sporadic: Vec<RawSporadic>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    id: String,
    equation: Option<u8>,
    weights: Option<[i64; 3]>,
    base: Option<String>,
    quotient: Option<RawQuotient>,
    k2: i64,
    d: [i64; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuotient {
    e: i64,
    m: [i64; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAnRow {
    label: String,
    x: Vec<String>,
    y_family: String,
    y_triple: [i64; 3],
    y: Vec<String>,
    d: [i64; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSporadic {
    label: String,
    index: u8,
    singularities: Vec<String>,
    surfaces: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRecord {
    pub id: String,
    pub base_equation: u8,
    /// `w_i = weight_map[i] * t_i^2`.
    pub weight_map: [BigInt; 3],
    pub quotient: Option<QuotientData>,
    pub expected_k2: BigInt,
    /// Sorted.
    pub expected_d: [BigInt; 3],
}

impl FamilyRecord {
    pub fn equation(&self) -> MarkovEquation {
        MarkovEquation::family(self.base_equation).expect("validated on load")
    }

    pub fn e(&self) -> BigInt {
        self.quotient.as_ref().map_or_else(BigInt::one, |q| q.e.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnRow {
    pub label: String,
    /// Sorted, singular points only.
    pub x_sings: Vec<SingClass>,
    pub y_family: String,
    pub y_triple: Triple,
    pub y_sings: Vec<SingClass>,
    /// Sorted.
    pub d_column: [BigInt; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceCount {
    Isolated(u32),
    AffineLineFamily,
}

impl fmt::Display for SurfaceCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceCount::Isolated(k) => write!(f, "{k}"),
            SurfaceCount::AffineLineFamily => f.write_str("A1-family"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SporadicEntry {
    pub label: String,
    pub index: u8,
    pub singularities: Vec<SingClass>,
    pub surfaces: SurfaceCount,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableData {
    pub schema_version: u32,
    pub families: Vec<FamilyRecord>,
    pub an_rows: Vec<AnRow>,
    pub sporadic: Vec<SporadicEntry>,
}

/// Parses `A_1`, `2*A_1` or `1/4(1,1)` into one or more classes, dropping
/// smooth points.
fn parse_sing_list(items: &[String]) -> Result<Vec<SingClass>> {
    let mut out = Vec::new();
    for item in items {
        let (count, body) = match item.split_once('*') {
            Some((k, body)) => {
                let k: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::Data(format!("bad multiplicity in {item:?}")))?;
                (k, body)
            }
            None => (1, item.as_str()),
        };
        let class: SingClass = body
            .parse()
            .map_err(|e| Error::Data(format!("{item:?}: {e}")))?;
        if !class.is_smooth() {
            out.extend(std::iter::repeat_n(class, count));
        }
    }
    out.sort();
    Ok(out)
}

fn sorted3(v: [i64; 3]) -> [BigInt; 3] {
    let mut v = v;
    v.sort();
    v.map(BigInt::from)
}

fn positive_triple(v: [i64; 3], what: &str) -> Result<Triple> {
    if v.iter().any(|&x| x < 1) {
        return Err(Error::Data(format!("{what}: entries must be positive")));
    }
    Ok(Triple::new(v[0], v[1], v[2]))
}

impl TableData {
    pub fn embedded() -> Self {
        Self::from_toml_str(EMBEDDED_TABLES).expect("embedded tables are valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawTables = toml::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        if raw.schema_version != 1 {
            return Err(Error::Data(format!(
                "unsupported schema version {}",
                raw.schema_version
            )));
        }

        let mut base: BTreeMap<String, (u8, [i64; 3])> = BTreeMap::new();
        for f in &raw.family {
            if let (Some(eq), Some(w)) = (f.equation, f.weights) {
                MarkovEquation::family(eq)?;
                base.insert(f.id.clone(), (eq, w));
            }
        }

        let mut families = Vec::new();
        for f in raw.family {
            let (equation, weights, quotient) = match (f.equation, f.weights, &f.base, f.quotient) {
                (Some(eq), Some(w), None, None) => (eq, w, None),
                (None, None, Some(b), Some(q)) => {
                    let &(eq, w) = base
                        .get(b)
                        .ok_or_else(|| Error::Data(format!("family {}: unknown base {b}", f.id)))?;
                    if q.e < 2 {
                        return Err(Error::Data(format!("family {}: e must be at least 2", f.id)));
                    }
                    let quotient = QuotientData {
                        e: BigInt::from(q.e),
                        m: q.m.map(BigInt::from),
                    };
                    (eq, w, Some(quotient))
                }
                _ => {
                    return Err(Error::Data(format!(
                        "family {}: give either equation and weights or base and quotient",
                        f.id
                    )))
                }
            };
            if weights.iter().any(|&w| w < 1) {
                return Err(Error::Data(format!("family {}: weights must be positive", f.id)));
            }
            families.push(FamilyRecord {
                id: f.id,
                base_equation: equation,
                weight_map: weights.map(BigInt::from),
                quotient,
                expected_k2: BigInt::from(f.k2),
                expected_d: sorted3(f.d),
            });
        }

        let an_rows = raw
            .an_row
            .into_iter()
            .map(|r| {
                Ok(AnRow {
                    x_sings: parse_sing_list(&r.x)?,
                    y_triple: positive_triple(r.y_triple, &r.label)?,
                    y_sings: parse_sing_list(&r.y)?,
                    d_column: sorted3(r.d),
                    y_family: r.y_family,
                    label: r.label,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let sporadic = raw
            .sporadic
            .into_iter()
            .map(|s| {
                let surfaces = match s.surfaces.as_str() {
                    "A1-family" => SurfaceCount::AffineLineFamily,
                    k => SurfaceCount::Isolated(k.parse().map_err(|_| {
                        Error::Data(format!("{}: bad surface count {k:?}", s.label))
                    })?),
                };
                if !(1..=2).contains(&s.index) {
                    return Err(Error::Data(format!("{}: index must be 1 or 2", s.label)));
                }
                Ok(SporadicEntry {
                    singularities: parse_sing_list(&s.singularities)?,
                    label: s.label,
                    index: s.index,
                    surfaces,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(TableData {
            schema_version: raw.schema_version,
            families,
            an_rows,
            sporadic,
        })
    }

    pub fn family(&self, id: &str) -> Result<&FamilyRecord> {
        self.families
            .iter()
            .find(|f| f.id == id)
            .ok_or_else(|| Error::UnknownFamily(id.to_string()))
    }
}

/// Unordered triples `d_0 <= d_1 <= d_2` with `sum <= 11` and
/// `(12 - sum) d_0 d_1 d_2` a perfect square, each paired with
/// `K^2 = 12 - sum`.
pub fn enumerate_d_triples() -> Vec<([u64; 3], u64)> {
    let mut out = Vec::new();
    for d0 in 1..=11u64 {
        for d1 in d0..=11 {
            for d2 in d1..=11 {
                let sum = d0 + d1 + d2;
                if sum > 11 {
                    continue;
                }
                let k2 = 12 - sum;
                let p = k2 * d0 * d1 * d2;
                let r = p.sqrt();
                if r * r == p {
                    out.push(([d0, d1, d2], k2));
                }
            }
        }
    }
    out
}

/// The weights of the base weighted projective plane for solution `t`.
pub fn family_weights(rec: &FamilyRecord, t: &Triple) -> Result<[BigInt; 3]> {
    let eq = rec.equation();
    if !eq.is_solution(t) {
        return Err(Error::NotASolution {
            equation: eq.to_string(),
            triple: t.to_string(),
            residual: eq.residual(t),
        });
    }
    Ok(std::array::from_fn(|i| &rec.weight_map[i] * &t.0[i] * &t.0[i]))
}

pub fn build_family_fan(rec: &FamilyRecord, t: &Triple) -> Result<Fan2> {
    let [w0, w1, w2] = family_weights(rec, t)?;
    let base = wps_fan(&w0, &w1, &w2)?;
    match &rec.quotient {
        Some(q) => quotient_fan(&base, &q.e, &q.m),
        None => Ok(base),
    }
}

pub fn build_family_surface(rec: &FamilyRecord, t: &Triple) -> Result<SurfaceReport> {
    surface_report(&build_family_fan(rec, t)?)
}

/// The local group at the fixed point `X_i = 1` of `P(w) / mu_e`, computed
/// from characters rather than from the fan.
///
/// With `N = e w_i` the group inside `(Z/N)^2` is generated by
/// `e (w_j, w_k)` and `(m_j w_i - m_i w_j, m_k w_i - m_i w_k)`. It is cyclic
/// and free of reflections exactly when both coordinate projections are
/// injective, and then equals `1/M(1, a)`.
pub fn local_group(w: &[BigInt; 3], e: &BigInt, m: &[BigInt; 3], i: usize) -> Result<QuotSing> {
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let big_n = e * &w[i];
    let g1 = [e * &w[j], e * &w[k]];
    let g2 = [
        &m[j] * &w[i] - &m[i] * &w[j],
        &m[k] * &w[i] - &m[i] * &w[k],
    ];
    let bad = || Error::BadAction(format!("non-cyclic or reflection group at vertex {i}"));

    let smith = smith_normal_form(&vec![vec![g1[0].clone(), g2[0].clone(), big_n.clone()]]);
    let g = smith.diagonal()[0].clone();
    if g.is_zero() {
        return Err(bad());
    }
    // Column 0 of `u V` reaches the image generator g; columns 1 and 2 span the kernel.
    let unit = &smith.u[0][0];
    let second = |col: usize| {
        (unit * (&smith.v[0][col] * &g1[1] + &smith.v[1][col] * &g2[1])).mod_floor(&big_n)
    };
    if !(second(1).is_zero() && second(2).is_zero()) {
        return Err(bad());
    }
    let q = second(0);
    if !q.is_multiple_of(&g) {
        return Err(bad());
    }
    let order = &big_n / &g;
    if order.is_one() {
        return Ok(QuotSing::smooth());
    }
    QuotSing::new(order.clone(), (q / &g).mod_floor(&order)).map_err(|_| bad())
}

/// Per-vertex singularities of the family surface, from the group action
/// alone.
pub fn predicted_singularities(rec: &FamilyRecord, t: &Triple) -> Result<[SingClass; 3]> {
    let w = family_weights(rec, t)?;
    let (e, m) = match &rec.quotient {
        Some(q) => (q.e.clone(), q.m.clone()),
        None => (BigInt::one(), std::array::from_fn(|_| BigInt::zero())),
    };
    let mut out: [SingClass; 3] = std::array::from_fn(|_| SingClass::Smooth);
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = local_group(&w, &e, &m, i)?.classify();
    }
    Ok(out)
}

/// `(d, n)` with `d n^2` the order of the point.
fn d_and_n(c: &SingClass) -> Option<(BigInt, BigInt)> {
    match c {
        SingClass::Smooth => Some((BigInt::one(), BigInt::one())),
        SingClass::DuValA(r) => Some((r + 1, BigInt::one())),
        SingClass::Tclass { d, n, .. } => Some((d.clone(), n.clone())),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricCheck {
    pub family: String,
    pub triple: Triple,
    /// Sorted singular points, empty when the build failed.
    pub singularities: Vec<SingClass>,
    pub k_squared: Option<BigRational>,
    pub failures: Vec<String>,
}

impl ToricCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every check on one family surface.
pub fn check_family_surface(rec: &FamilyRecord, t: &Triple) -> ToricCheck {
    let mut check = ToricCheck {
        family: rec.id.clone(),
        triple: t.clone(),
        singularities: Vec::new(),
        k_squared: None,
        failures: Vec::new(),
    };
    let fail = |c: &mut ToricCheck, msg: String| c.failures.push(msg);

    let weights = match family_weights(rec, t) {
        Ok(w) => w,
        Err(err) => {
            fail(&mut check, err.to_string());
            return check;
        }
    };
    let built = build_family_fan(rec, t).and_then(|fan| Ok((surface_report(&fan)?, fan)));
    let (report, fan) = match built {
        Ok(r) => r,
        Err(err) => {
            fail(&mut check, format!("build: {err}"));
            return check;
        }
    };
    check.singularities = report.singular_points();
    check.k_squared = Some(report.k_squared.clone());

    if !report.valid {
        fail(&mut check, "a fixed point is not a T-singularity".into());
        return check;
    }
    match report.sorted_d_values() {
        Some(d) if d.as_slice() == rec.expected_d.as_slice() => {}
        d => fail(&mut check, format!("d values {d:?} differ from the table")),
    }
    let k2 = BigRational::from_integer(rec.expected_k2.clone());
    if report.k_squared != k2 {
        fail(&mut check, format!("K^2 = {} differs from the table", report.k_squared));
    }
    if let Some(p) = fan.provenance() {
        if k_squared_from_weights(p) != report.k_squared {
            fail(&mut check, "fan K^2 differs from the weight formula".into());
        }
    }
    if !report.noether_ok {
        fail(&mut check, "Noether formula fails".into());
    }

    let dn: Vec<(BigInt, BigInt)> = report.singularities.iter().filter_map(d_and_n).collect();
    let e = rec.e();
    let orders: Vec<BigInt> = dn.iter().map(|(d, n)| d * n * n).collect();
    for (i, o) in orders.iter().enumerate() {
        if *o != &e * &weights[i] {
            fail(&mut check, format!("vertex {i}: d n^2 = {o} but e w = {}", &e * &weights[i]));
        }
    }
    let g = orders[0].gcd(&orders[1]).gcd(&orders[2]);
    if g != e {
        fail(&mut check, format!("gcd of d n^2 is {g}, expected {e}"));
    }

    if report.k_squared.is_integer() {
        let k2 = report.k_squared.to_integer();
        let prod = dn.iter().fold(k2, |acc, (d, _)| acc * d);
        let lambda = if prod.is_negative() { None } else { Some(prod.sqrt()) };
        match lambda {
            Some(l) if &l * &l == prod => {
                let lhs: BigInt = orders.iter().sum();
                let rhs = dn.iter().fold(l, |acc, (_, n)| acc * n);
                if lhs != rhs {
                    fail(&mut check, format!("Markov identity: {lhs} != {rhs}"));
                }
            }
            _ => fail(&mut check, "K^2 d0 d1 d2 is not a perfect square".into()),
        }
    } else {
        fail(&mut check, "K^2 is not an integer".into());
    }

    if rec.quotient.is_none() {
        let pairwise = (0..3).all(|i| weights[i].gcd(&weights[(i + 1) % 3]).is_one());
        if !pairwise {
            fail(&mut check, "weights are not pairwise coprime".into());
        }
    }

    match predicted_singularities(rec, t) {
        Ok(p) if p == report.singularities => {}
        Ok(p) => fail(&mut check, format!("action predicts {p:?}")),
        Err(err) => fail(&mut check, format!("action: {err}")),
    }
    check
}

/// Checks every family on every solution with entries at most `bound`.
/// Results are ordered by table position, then triple.
pub fn verify_theorem_toric(data: &TableData, bound: &BigInt) -> Vec<ToricCheck> {
    let jobs: Vec<(usize, Triple)> = data
        .families
        .iter()
        .enumerate()
        .flat_map(|(idx, rec)| {
            rec.equation()
                .enumerate(bound)
                .into_iter()
                .map(move |t| (idx, t))
        })
        .collect();
    let mut out: Vec<(usize, ToricCheck)> = jobs
        .into_par_iter()
        .map(|(idx, t)| (idx, check_family_surface(&data.families[idx], &t)))
        .collect();
    out.sort_by(|(a, x), (b, y)| a.cmp(b).then_with(|| x.triple.cmp(&y.triple)));
    out.into_iter().map(|(_, c)| c).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnCheck {
    pub label: String,
    pub failures: Vec<String>,
}

impl AnCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Fibres of the Euler-number-preserving deformations of one point, without
/// smooth entries.
fn deformation_options(c: &SingClass) -> Result<Vec<Vec<SingClass>>> {
    match c {
        SingClass::Tclass { d, n, a } => {
            let d = d.to_u64().ok_or_else(|| Error::Data(format!("{c}: d too large")))?;
            Ok(t_fibre_rho_preserving(d, n, a)?
                .into_iter()
                .map(|f| f.into_iter().filter(|s| !s.is_smooth()).collect())
                .collect())
        }
        other => Ok(vec![vec![other.clone()]]),
    }
}

/// True when some choice of one fibre per point of `y` yields `x`.
pub fn reachable(y: &[SingClass], x: &[SingClass]) -> Result<bool> {
    let options = y.iter().map(deformation_options).collect::<Result<Vec<_>>>()?;
    let mut target = x.to_vec();
    target.sort();
    let mut choice = vec![0usize; options.len()];
    loop {
        let mut fibre: Vec<SingClass> = choice
            .iter()
            .zip(&options)
            .flat_map(|(&c, opts)| opts[c].iter().cloned())
            .collect();
        fibre.sort();
        if fibre == target {
            return Ok(true);
        }
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(false);
            }
            choice[pos] += 1;
            if choice[pos] < options[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn padded_d_values(sings: &[SingClass]) -> Result<Vec<BigInt>> {
    let mut d = sings.iter().map(d_value).collect::<Result<Vec<_>>>()?;
    while d.len() < 3 {
        d.push(BigInt::one());
    }
    d.sort();
    Ok(d)
}

fn milnor_sum(sings: &[SingClass]) -> Result<BigInt> {
    sings.iter().map(milnor_number).sum()
}

pub fn check_an_row(data: &TableData, row: &AnRow) -> AnCheck {
    let mut failures = Vec::new();
    let run = |failures: &mut Vec<String>| -> Result<()> {
        let rec = data.family(&row.y_family)?;
        let report = build_family_surface(rec, &row.y_triple)?;
        let y_built = report.singular_points();
        if y_built != row.y_sings {
            failures.push(format!("Y has {} not {}", join(&y_built), join(&row.y_sings)));
        }
        if !reachable(&row.y_sings, &row.x_sings)? {
            failures.push("X is not a deformation of Y".into());
        }
        match report.sorted_d_values() {
            Some(d) if d.as_slice() == row.d_column.as_slice() => {}
            _ => failures.push("d column differs from Y".into()),
        }
        if padded_d_values(&row.x_sings)?.as_slice() != row.d_column.as_slice() {
            failures.push("d column differs from X".into());
        }
        if milnor_sum(&row.x_sings)? != milnor_sum(&row.y_sings)? {
            failures.push("Milnor sums differ".into());
        }
        let d_sum: BigInt = row.d_column.iter().sum();
        if BigRational::from_integer(BigInt::from(12) - d_sum) != report.k_squared {
            failures.push("d column does not sum to 12 - K^2".into());
        }
        Ok(())
    };
    if let Err(err) = run(&mut failures) {
        failures.push(err.to_string());
    }
    AnCheck {
        label: row.label.clone(),
        failures,
    }
}

pub fn verify_an_table(data: &TableData) -> Vec<AnCheck> {
    data.an_rows.iter().map(|r| check_an_row(data, r)).collect()
}

pub fn join(sings: &[SingClass]) -> String {
    if sings.is_empty() {
        return "none".into();
    }
    sings
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SporadicCheck {
    pub label: String,
    pub k_squared: BigInt,
    pub surfaces: SurfaceCount,
    pub failures: Vec<String>,
}

impl SporadicCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SporadicReport {
    pub entries: Vec<SporadicCheck>,
    pub isolated_surfaces: u32,
    pub families: u32,
}

impl SporadicReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(SporadicCheck::passed)
            && self.isolated_surfaces == 20
            && self.families == 1
    }
}

pub fn sporadic_catalog(data: &TableData) -> SporadicReport {
    let quarter = SingClass::tclass(1, 2, 1);
    let mut entries = Vec::new();
    let (mut isolated, mut families) = (0, 0);
    for s in &data.sporadic {
        let mut failures = Vec::new();
        let mu = milnor_sum(&s.singularities).unwrap_or_else(|err| {
            failures.push(err.to_string());
            BigInt::zero()
        });
        let k2 = BigInt::from(9) - mu;
        if k2 < BigInt::one() {
            failures.push(format!("K^2 = {k2} < 1"));
        }
        let non_du_val: Vec<&SingClass> =
            s.singularities.iter().filter(|c| !c.is_du_val()).collect();
        let expected: Vec<&SingClass> = match s.index {
            2 => vec![&quarter],
            _ => vec![],
        };
        if non_du_val != expected {
            failures.push(format!("index {} does not match the singularities", s.index));
        }
        match s.surfaces {
            SurfaceCount::Isolated(k) => isolated += k,
            SurfaceCount::AffineLineFamily => families += 1,
        }
        entries.push(SporadicCheck {
            label: s.label.clone(),
            k_squared: k2,
            surfaces: s.surfaces,
            failures,
        });
    }
    SporadicReport {
        entries,
        isolated_surfaces: isolated,
        families,
    }
}

/// A candidate dual graph of a degenerate fibre, self-intersections negated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FibreGraph {
    Chain(Vec<BigInt>),
    /// A curve of self-intersection `-centre` meeting the first curves of
    /// `left` and `right` and a (-1)-curve, which is followed by `tail`. The
    /// strings are read away from the centre.
    Branched {
        left: HjString,
        centre: BigInt,
        right: HjString,
        tail: Vec<BigInt>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FibreType {
    O,
    I,
    II,
}

impl fmt::Display for FibreType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FibreType::O => "O",
            FibreType::I => "I",
            FibreType::II => "II",
        })
    }
}

/// The form of a degenerate fibre, or `None` if the graph has none of the
/// three forms.
pub fn validate_fibre(g: &FibreGraph) -> Result<Option<FibreType>> {
    let one = BigInt::one();
    let two = BigInt::from(2);
    match g {
        FibreGraph::Chain(c) => {
            if c.is_empty() || c.iter().any(|b| *b < one) {
                return Err(Error::MalformedFibre(format!("chain {c:?}")));
            }
            let ones: Vec<usize> = (0..c.len()).filter(|&i| c[i] == one).collect();
            match ones.as_slice() {
                [0, last] if *last == c.len() - 1 => {
                    Ok(c[1..*last].iter().all(|b| *b == two).then_some(FibreType::O))
                }
                &[p] => {
                    let left = HjString::new(c[..p].iter().rev().cloned().collect());
                    let right = HjString::new(c[p + 1..].to_vec());
                    let ok = !left.is_empty() && !right.is_empty() && are_conjugate(&left, &right);
                    Ok(ok.then_some(FibreType::I))
                }
                _ => Ok(None),
            }
        }
        FibreGraph::Branched {
            left,
            centre,
            right,
            tail,
        } => {
            let all = left.entries().iter().chain(right.entries()).chain(tail);
            if left.is_empty() || right.is_empty() || *centre < one || all.clone().any(|b| *b < one) {
                return Err(Error::MalformedFibre(format!(
                    "branches {left} and {right} at centre {centre}"
                )));
            }
            let ok = are_conjugate(left, right)
                && tail.iter().all(|b| *b == two)
                && *centre == BigInt::from(tail.len()) + 2;
            Ok(ok.then_some(FibreType::II))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn data() -> TableData {
        TableData::embedded()
    }

    fn sings(list: &[&str]) -> Vec<SingClass> {
        let owned: Vec<String> = list.iter().map(|s| s.to_string()).collect();
        parse_sing_list(&owned).unwrap()
    }

    #[test]
    fn embedded_tables_load() {
        let d = data();
        assert_eq!(d.families.len(), 14);
        assert_eq!(d.an_rows.len(), 28);
        assert_eq!(d.sporadic.len(), 18);
        for f in &d.families {
            let sum: BigInt = f.expected_d.iter().sum();
            assert_eq!(f.expected_k2, b(12) - sum, "family {}", f.id);
            let base = ["1", "2", "3", "4"].contains(&f.id.as_str());
            assert_eq!(f.quotient.is_none(), base, "family {}", f.id);
        }
    }

    #[test]
    fn malformed_tables_rejected() {
        assert!(TableData::from_toml_str("schema_version = 2\nfamily = []\nan_row = []\nsporadic = []").is_err());
        let bad_base = r#"
            schema_version = 1
            an_row = []
            sporadic = []
            [[family]]
            id = "5"
            base = "9"
            quotient = { e = 2, m = [0, 1, -1] }
            k2 = 4
            d = [2, 2, 4]
        "#;
        assert!(matches!(TableData::from_toml_str(bad_base), Err(Error::Data(_))));
    }

    #[test]
    fn d_triples() {
        let t = enumerate_d_triples();
        assert_eq!(t.len(), 14);
        assert!(t.contains(&([1, 1, 1], 9)));
        assert!(t.contains(&([1, 2, 3], 6)));
        assert!(t.contains(&([2, 3, 6], 1)));
        assert!(t.iter().all(|&(_, k2)| k2 != 7));
        let mut from_table: Vec<[u64; 3]> = data()
            .families
            .iter()
            .map(|f| f.expected_d.clone().map(|x| x.to_u64().unwrap()))
            .collect();
        from_table.sort();
        let mut enumerated: Vec<[u64; 3]> = t.iter().map(|(d, _)| *d).collect();
        enumerated.sort();
        assert_eq!(enumerated, from_table);
    }

    #[test]
    fn family_surfaces() {
        let d = data();
        let p2 = build_family_surface(d.family("1").unwrap(), &Triple::new(1, 1, 1)).unwrap();
        assert!(p2.singular_points().is_empty());
        assert_eq!(p2.k_squared, BigRational::from_integer(b(9)));

        let s = build_family_surface(d.family("8.4").unwrap(), &Triple::new(1, 2, 1)).unwrap();
        assert_eq!(s.singular_points(), sings(&["1/25(1,9)", "1/20(1,9)", "A_4"]));
        assert_eq!(s.k_squared, BigRational::from_integer(b(1)));

        let s = build_family_surface(d.family("2").unwrap(), &Triple::new(1, 1, 1)).unwrap();
        assert_eq!(s.singular_points(), vec![SingClass::a(1)]);
        assert_eq!(s.k_squared, BigRational::from_integer(b(8)));

        let err = build_family_surface(d.family("1").unwrap(), &Triple::new(1, 1, 3)).unwrap_err();
        assert!(matches!(err, Error::NotASolution { ref residual, .. } if *residual == b(2)));
    }

    #[test]
    fn predictions() {
        let d = data();
        let mut p = predicted_singularities(d.family("1").unwrap(), &Triple::new(1, 1, 2))
            .unwrap()
            .to_vec();
        p.sort();
        assert_eq!(p, vec![SingClass::Smooth, SingClass::Smooth, SingClass::tclass(1, 2, 1)]);

        let mut p = predicted_singularities(d.family("5").unwrap(), &Triple::new(1, 1, 1))
            .unwrap()
            .to_vec();
        p.sort();
        assert_eq!(p, vec![SingClass::a(1), SingClass::a(1), SingClass::a(3)]);

        let p = predicted_singularities(d.family("1").unwrap(), &Triple::new(1, 2, 5)).unwrap();
        let ns: Vec<BigInt> = p.iter().filter_map(|c| d_and_n(c).map(|x| x.1)).collect();
        assert_eq!(ns, vec![b(1), b(2), b(5)]);
        assert!(p.iter().all(|c| d_value(c).unwrap() == b(1)));
    }

    #[test]
    fn local_group_handles_shared_factors() {
        // P(1,4,5) / mu_5: the order-5 vertex has gcd(e, w) = 5.
        let w = [b(1), b(4), b(5)];
        let m = [b(0), b(1), b(-1)];
        let at = |i| local_group(&w, &b(5), &m, i).unwrap().classify();
        assert_eq!(at(0), SingClass::a(4));
        assert_eq!(at(1), SingClass::tclass(5, 2, 1));
        assert_eq!(at(2), SingClass::tclass(1, 5, 2));
        // A reflection: mu_2 acting on one coordinate only.
        assert!(local_group(&[b(1), b(1), b(1)], &b(2), &[b(0), b(1), b(0)], 0).is_err());
    }

    #[test]
    fn toric_sweep_small() {
        let d = data();
        let one = verify_theorem_toric(&d, &b(1));
        // Families 4 and 8.4 have no solution with all entries 1.
        assert_eq!(one.len(), 12);
        assert!(one.iter().all(ToricCheck::passed), "{one:?}");

        let checks = verify_theorem_toric(&d, &b(30));
        for c in &checks {
            assert!(c.passed(), "{} {}: {:?}", c.family, c.triple, c.failures);
        }
        let fam1: Vec<Triple> = checks
            .iter()
            .filter(|c| c.family == "1")
            .map(|c| c.triple.sorted())
            .collect();
        for t in [(1, 1, 1), (1, 1, 2), (1, 2, 5), (2, 5, 29)] {
            assert!(fam1.contains(&Triple::new(t.0, t.1, t.2)));
        }
    }

    #[test]
    fn an_table() {
        let d = data();
        for c in verify_an_table(&d) {
            assert!(c.passed(), "row {}: {:?}", c.label, c.failures);
        }
    }

    #[test]
    fn an_table_detects_errors() {
        let mut d = data();
        let row = d.an_rows.iter_mut().find(|r| r.label == "10e").unwrap();
        row.x_sings = sings(&["A_3", "A_4"]);
        let c = check_an_row(&d, d.an_rows.iter().find(|r| r.label == "10e").unwrap());
        assert!(!c.passed());
    }

    #[test]
    fn reachability() {
        let y = sings(&["1/25(1,9)", "1/20(1,9)", "A_4"]);
        assert!(reachable(&y, &sings(&["A_4", "A_4"])).unwrap());
        assert!(reachable(&y, &y).unwrap());
        assert!(!reachable(&y, &sings(&["A_4"])).unwrap());
        let y = sings(&["2*1/4(1,1)", "A_7"]);
        assert!(reachable(&y, &sings(&["A_7"])).unwrap());
    }

    #[test]
    fn sporadic() {
        let r = sporadic_catalog(&data());
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.entries.len(), 18);
        let get = |l: &str| r.entries.iter().find(|e| e.label == l).unwrap();
        assert_eq!(get("E_8").k_squared, b(1));
        assert_eq!(get("E_8").surfaces, SurfaceCount::Isolated(2));
        assert_eq!(get("2D_4").surfaces, SurfaceCount::AffineLineFamily);
        assert_eq!(get("1/4(1,1)D_8").k_squared, b(1));
        assert_eq!(get("D_5").k_squared, b(4));
    }

    fn chain(v: &[i64]) -> FibreGraph {
        FibreGraph::Chain(v.iter().map(|&x| b(x)).collect())
    }

    #[test]
    fn fibre_examples() {
        assert_eq!(validate_fibre(&chain(&[2, 1, 2])).unwrap(), Some(FibreType::I));
        assert_eq!(validate_fibre(&chain(&[1, 2, 2, 1])).unwrap(), Some(FibreType::O));
        assert_eq!(validate_fibre(&chain(&[1, 1])).unwrap(), Some(FibreType::O));
        assert_eq!(validate_fibre(&chain(&[3, 1, 2])).unwrap(), None);
        assert_eq!(validate_fibre(&chain(&[2, 3, 1, 2, 3])).unwrap(), Some(FibreType::I));
        assert_eq!(validate_fibre(&chain(&[1])).unwrap(), None);
        assert_eq!(validate_fibre(&chain(&[1, 2])).unwrap(), None);
        assert!(validate_fibre(&chain(&[])).is_err());
        assert!(validate_fibre(&chain(&[2, 0, 2])).is_err());

        let tree = |l: &[u64], c: i64, r: &[u64], t: &[i64]| FibreGraph::Branched {
            left: HjString::from_u64s(l),
            centre: b(c),
            right: HjString::from_u64s(r),
            tail: t.iter().map(|&x| b(x)).collect(),
        };
        assert_eq!(validate_fibre(&tree(&[2], 3, &[2], &[2])).unwrap(), Some(FibreType::II));
        assert_eq!(validate_fibre(&tree(&[3, 2], 2, &[2, 3], &[])).unwrap(), Some(FibreType::II));
        assert_eq!(validate_fibre(&tree(&[2], 4, &[2], &[2])).unwrap(), None);
        assert_eq!(validate_fibre(&tree(&[3], 2, &[2], &[])).unwrap(), None);
        assert!(validate_fibre(&tree(&[], 2, &[2], &[])).is_err());
    }
}
