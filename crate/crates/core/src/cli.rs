//! Batch command line: queries, enumeration and table verification.
//!
//! ```text
//! tsing [--json] [--data PATH] hj <n> <a>
//! tsing [--json] [--data PATH] markov <family> [--bound N]
//! tsing [--json] [--data PATH] surface <family-id> <a,b,c>
//! tsing [--json] [--data PATH] verify <scope> [--bound N]
//! ```
//!
//! Every command produces a [`Report`]. Text output prints one line per
//! record; `--json` prints one JSON object per line: a `report` header, the
//! records, then a `summary`. All integers are written as decimal strings.
//! `--data` replaces the embedded tables with a file in the format described
//! in [`crate::classification`].
//!
//! Exit codes: 0 pass, 1 a check failed, 2 bad usage or input.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::classification::{
    enumerate_d_triples, join, sporadic_catalog, verify_an_table, verify_theorem_toric,
    FamilyRecord, TableData,
};
use crate::error::{Error, Result};
use crate::exactmath::{conjugate_fraction, hj_expand_bounded, mod_inverse};
use crate::lemmas::all_sweeps;
use crate::markov::{MarkovEquation, Triple};
use crate::singularities::{classify, d_value, milnor_number};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        })
    }
}

/// One row of output: a kind, an optional verdict and ordered fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub passed: Option<bool>,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record {
            kind: kind.into(),
            passed: None,
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn verdict(mut self, passed: bool) -> Self {
        self.passed = Some(passed);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("type", "record")?;
        map.serialize_entry("kind", &self.kind)?;
        if let Some(p) = self.passed {
            map.serialize_entry("passed", &p)?;
        }
        for (k, v) in &self.fields {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.passed {
            Some(true) => write!(f, "[pass] ")?,
            Some(false) => write!(f, "[FAIL] ")?,
            None => {}
        }
        write!(f, "{}", self.kind)?;
        for (i, (k, v)) in self.fields.iter().enumerate() {
            let sep = if i == 0 { ": " } else { ", " };
            write!(f, "{sep}{k} = {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub records: Vec<Record>,
}

impl Report {
    fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            records: Vec::new(),
        }
    }

    fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn checked(&self) -> usize {
        self.records.iter().filter(|r| r.passed.is_some()).count()
    }

    pub fn failed(&self) -> usize {
        self.records.iter().filter(|r| r.passed == Some(false)).count()
    }

    pub fn status(&self) -> Status {
        match (self.checked(), self.failed()) {
            (0, _) => Status::Info,
            (_, 0) => Status::Pass,
            _ => Status::Fail,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Fail => 1,
            _ => 0,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        let (checked, failed) = (self.checked(), self.failed());
        if checked > 0 {
            out.push_str(&format!(
                "{}: {}/{} passed\n",
                self.status(),
                checked - failed,
                checked
            ));
        }
        out
    }

    pub fn render_json(&self) -> String {
        let header = serde_json::json!({
            "type": "report",
            "schema_version": SCHEMA_VERSION.to_string(),
            "command": self.command,
            "status": self.status(),
        });
        let summary = serde_json::json!({
            "type": "summary",
            "records": self.records.len().to_string(),
            "checked": self.checked().to_string(),
            "failed": self.failed().to_string(),
            "status": self.status(),
        });
        let mut lines = vec![header.to_string()];
        lines.extend(
            self.records
                .iter()
                .map(|r| serde_json::to_string(r).expect("string fields")),
        );
        lines.push(summary.to_string());
        lines.join("\n") + "\n"
    }
}

/// Longest string `hj` prints in full.
pub const MAX_SHOWN_LEN: usize = 10_000;

fn shown_string(n: &BigInt, a: &BigInt) -> Result<String> {
    Ok(match hj_expand_bounded(n, a, MAX_SHOWN_LEN)? {
        Some(s) => s.to_string(),
        None => format!("(more than {MAX_SHOWN_LEN} entries)"),
    })
}

pub fn cmd_hj(n: &BigInt, a: &BigInt) -> Result<Report> {
    let conj = conjugate_fraction(n, a)?;
    let dual = mod_inverse(a, n)?;
    let string = shown_string(n, a)?;
    let conj_string = shown_string(conj.num(), conj.den())?;
    let dual_string = shown_string(n, &dual)?;
    let class = classify(n, a)?;
    let (mu, d) = match (milnor_number(&class), d_value(&class)) {
        (Ok(mu), Ok(d)) => (mu.to_string(), d.to_string()),
        _ => ("none".to_string(), "none".to_string()),
    };
    let mut report = Report::new(format!("hj {n} {a}"));
    report.push(
        Record::new("hj")
            .field("n", n)
            .field("a", a)
            .field("string", &string)
            .field("conjugate", format!("{conj} {conj_string}"))
            .field("dual", format!("{n}/{dual} {dual_string}"))
            .field("class", &class)
            .field("type", class_kind(&class))
            .field("milnor", mu)
            .field("d", d),
    );
    Ok(report)
}

fn class_kind(c: &crate::singularities::SingClass) -> String {
    use crate::singularities::SingClass::*;
    match c {
        Smooth => "smooth".into(),
        DuValA(_) | DuValD(_) | DuValE(_) => "du Val".into(),
        Tclass { d, n, a } => format!("T(d={d}, n={n}, a={a})"),
        OtherCyclic(_) => "not T".into(),
    }
}

pub fn cmd_markov(family: u8, bound: &BigInt) -> Result<Report> {
    if !bound.is_positive() {
        return Err(Error::Parse("bound must be at least 1".into()));
    }
    let eq = MarkovEquation::family(family)?;
    let mut sols: Vec<Triple> = eq.enumerate(bound).into_iter().collect();
    sols.sort_by(|x, y| x.max_entry().cmp(y.max_entry()).then_with(|| x.cmp(y)));
    let mut report = Report::new(format!("markov {family} --bound {bound}"));
    for t in sols {
        report.push(
            Record::new("solution")
                .field("equation", &eq)
                .field("triple", &t)
                .field("minimal", eq.is_minimal(&t)),
        );
    }
    Ok(report)
}

pub fn cmd_surface(data: &TableData, family: &str, t: &Triple) -> Result<Report> {
    let rec = data.family(family)?;
    let fan = crate::classification::build_family_fan(rec, t)?;
    let s = crate::toric::surface_report(&fan)?;
    let mut report = Report::new(format!("surface {family} {}", t.entries().clone().map(|x| x.to_string()).join(",")));
    for i in 0..3 {
        let d = s.d_values[i]
            .as_ref()
            .map_or_else(|| "none".to_string(), ToString::to_string);
        report.push(
            Record::new("point")
                .field("vertex", i)
                .field("cone", &s.quot_sings[i])
                .field("class", &s.singularities[i])
                .field("d", d),
        );
    }
    let d: Vec<String> = s.d_values.iter().map(|x| x.as_ref().map_or("none".into(), ToString::to_string)).collect();
    report.push(
        Record::new("surface")
            .field("family", &rec.id)
            .field("triple", t)
            .field("rays", &fan)
            .field("singularities", join(&s.singular_points()))
            .field("d", d.join(","))
            .field("k2", &s.k_squared)
            .field("noether", s.noether_ok)
            .verdict(s.valid && s.noether_ok),
    );
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    DTriples,
    Toric,
    AnTable,
    Sporadic,
    Lemmas,
    All,
}

fn verify_d_triples(data: &TableData, report: &mut Report) {
    let table: Vec<(Vec<BigInt>, BigInt)> = data
        .families
        .iter()
        .map(|f| (f.expected_d.to_vec(), f.expected_k2.clone()))
        .collect();
    let found = enumerate_d_triples();
    for (d, k2) in &found {
        let key = (d.map(BigInt::from).to_vec(), BigInt::from(*k2));
        let sum: u64 = d.iter().sum();
        let ok = table.contains(&key) && *k2 == 12 - sum && *k2 != 7;
        report.push(
            Record::new("d-triple")
                .field("d", format!("{},{},{}", d[0], d[1], d[2]))
                .field("k2", k2)
                .verdict(ok),
        );
    }
    let mut enumerated: Vec<Vec<BigInt>> =
        found.iter().map(|(d, _)| d.map(BigInt::from).to_vec()).collect();
    let mut tabled: Vec<Vec<BigInt>> = table.into_iter().map(|(d, _)| d).collect();
    enumerated.sort();
    tabled.sort();
    report.push(
        Record::new("d-triple-set")
            .field("enumerated", found.len())
            .field("tabled", tabled.len())
            .verdict(enumerated == tabled),
    );
}

fn family_label(rec: &FamilyRecord) -> String {
    match &rec.quotient {
        Some(q) => format!(
            "{} (equation {}, e = {}, m = ({},{},{}))",
            rec.id, rec.base_equation, q.e, q.m[0], q.m[1], q.m[2]
        ),
        None => format!("{} (equation {})", rec.id, rec.base_equation),
    }
}

fn verify_toric(data: &TableData, bound: &BigInt, report: &mut Report) {
    for c in verify_theorem_toric(data, bound) {
        let mut r = Record::new("toric")
            .field("family", &c.family)
            .field("triple", &c.triple)
            .field("singularities", join(&c.singularities));
        if let Some(k2) = &c.k_squared {
            r = r.field("k2", k2);
        }
        if !c.passed() {
            r = r.field("failures", c.failures.join("; "));
        }
        report.push(r.verdict(c.passed()));
    }
    for rec in &data.families {
        report.push(Record::new("family").field("id", family_label(rec)));
    }
}

fn verify_an(data: &TableData, report: &mut Report) {
    for (row, check) in data.an_rows.iter().zip(verify_an_table(data)) {
        let mut r = Record::new("an-row")
            .field("row", &row.label)
            .field("x", join(&row.x_sings))
            .field("y", format!("{} {}", row.y_family, row.y_triple))
            .field("y_sings", join(&row.y_sings));
        if !check.passed() {
            r = r.field("failures", check.failures.join("; "));
        }
        report.push(r.verdict(check.passed()));
    }
}

fn verify_sporadic(data: &TableData, report: &mut Report) {
    let cat = sporadic_catalog(data);
    for e in &cat.entries {
        let mut r = Record::new("sporadic")
            .field("label", &e.label)
            .field("k2", &e.k_squared)
            .field("surfaces", e.surfaces);
        if !e.passed() {
            r = r.field("failures", e.failures.join("; "));
        }
        report.push(r.verdict(e.passed()));
    }
    report.push(
        Record::new("sporadic-count")
            .field("isolated", cat.isolated_surfaces)
            .field("families", cat.families)
            .verdict(cat.isolated_surfaces == 20 && cat.families == 1),
    );
}

fn verify_lemmas(report: &mut Report) {
    for s in all_sweeps(7, 10, 500) {
        let mut r = Record::new("lemma").field("sweep", s.name).field("cases", s.checked);
        if !s.passed() {
            r = r.field("failures", s.failures.join("; "));
        }
        report.push(r.verdict(s.passed()));
    }
}

pub fn cmd_verify(data: &TableData, scope: Scope, bound: &BigInt) -> Result<Report> {
    if !bound.is_positive() {
        return Err(Error::Parse("bound must be at least 1".into()));
    }
    let name = scope
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let mut report = Report::new(format!("verify {name} --bound {bound}"));
    let all = scope == Scope::All;
    if all || scope == Scope::DTriples {
        verify_d_triples(data, &mut report);
    }
    if all || scope == Scope::Toric {
        verify_toric(data, bound, &mut report);
    }
    if all || scope == Scope::AnTable {
        verify_an(data, &mut report);
    }
    if all || scope == Scope::Sporadic {
        verify_sporadic(data, &mut report);
    }
    if all || scope == Scope::Lemmas {
        verify_lemmas(&mut report);
    }
    Ok(report)
}

#[derive(Parser, Debug)]
#[command(name = "tsing", version, about = "T-singularities, Markov-type trees and toric del Pezzo surfaces")]
struct Cli {
    /// Line-delimited JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Table data file replacing the embedded tables.
    #[arg(long, global = true, value_name = "PATH")]
    data: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Continued fraction and classification of 1/n(1,a).
    Hj { n: BigInt, a: BigInt },
    /// Solutions of a Markov-type equation.
    Markov {
        family: u8,
        #[arg(long, default_value = "100")]
        bound: BigInt,
    },
    /// The toric surface of a family at a solution.
    Surface { family: String, triple: Triple },
    /// Re-check the classification tables and lemmas.
    Verify {
        #[arg(value_enum)]
        scope: Scope,
        #[arg(long, default_value = "100")]
        bound: BigInt,
    },
}

fn execute(cli: &Cli) -> Result<Report> {
    let data = || match &cli.data {
        Some(path) => TableData::load(path),
        None => Ok(TableData::embedded()),
    };
    match &cli.command {
        Command::Hj { n, a } => cmd_hj(n, a),
        Command::Markov { family, bound } => cmd_markov(*family, bound),
        Command::Surface { family, triple } => cmd_surface(&data()?, family, triple),
        Command::Verify { scope, bound } => cmd_verify(&data()?, *scope, bound),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = if cli.json { report.render_json() } else { report.render_text() };
            let _ = out.write_all(text.as_bytes());
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn statuses() {
        let mut r = Report::new("x");
        assert_eq!(r.status(), Status::Info);
        r.push(Record::new("a").verdict(true));
        assert_eq!(r.status(), Status::Pass);
        r.push(Record::new("b").verdict(false));
        assert_eq!(r.status(), Status::Fail);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn hj_records() {
        let r = cmd_hj(&b(4), &b(1)).unwrap();
        assert_eq!(r.records[0].get("string"), Some("[4]"));
        assert_eq!(r.records[0].get("class"), Some("1/4(1,1)"));
        assert_eq!(r.records[0].get("milnor"), Some("0"));
        let r = cmd_hj(&b(2), &b(1)).unwrap();
        assert_eq!(r.records[0].get("class"), Some("A_1"));
        assert!(cmd_hj(&b(4), &b(2)).is_err());
    }
}
