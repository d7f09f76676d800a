//! Immersion and nonimmersion tables for `CP^n`.
//!
//! Immersion codimensions `d` are data: they come from topological
//! constructions and are encoded row by row with their citation keys.
//! Nonimmersion codimensions `e` are recomputed from the two arithmetic
//! criteria: the Schwartz / Stong / Mahowald bound `2 alpha(n) - eps(n)` and
//! the Sigrist–Suter condition, which when it fails rules out `2 alpha(n)`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conditions::{sigrist_suter, ConditionError};
use crate::dyadic::alpha;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("invalid range: need 2 <= from <= to, got [{from}, {to}]")]
    InvalidRange { from: u64, to: u64 },
    #[error("invalid congruence filter: modulus must be positive")]
    InvalidModulus,
    #[error("table encoding matches n = {n} with {count} rows")]
    TableInconsistency { n: u64, count: usize },
    #[error(transparent)]
    Condition(#[from] ConditionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Congruence conditions on `n`, as printed in the table rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Any,
    /// `n ≡ residue (mod modulus)`
    Mod(u64, u64),
    NotMod(u64, u64),
    AllOf(&'static [Predicate]),
    AnyOf(&'static [Predicate]),
}

impl Predicate {
    pub fn eval(&self, n: u64) -> bool {
        match *self {
            Predicate::Any => true,
            Predicate::Mod(r, m) => n % m == r,
            Predicate::NotMod(r, m) => n % m != r,
            Predicate::AllOf(ps) => ps.iter().all(|p| p.eval(n)),
            Predicate::AnyOf(ps) => ps.iter().any(|p| p.eval(n)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaClass {
    Exactly(u32),
    /// The `alpha(n) > 8` rows.
    Above(u32),
}

impl AlphaClass {
    pub fn contains(&self, a: u32) -> bool {
        match *self {
            AlphaClass::Exactly(x) => a == x,
            AlphaClass::Above(x) => a > x,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub alpha: AlphaClass,
    pub parity: Parity,
    pub predicate: Predicate,
    /// The condition column as printed, empty when the row has none.
    pub label: &'static str,
    pub d: u32,
    pub d_source: &'static str,
    /// Printed nonimmersion codimension, absent for the `alpha > 8` rows.
    pub e: Option<u32>,
    pub e_source: Option<&'static str>,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    alpha: u32,
    parity: Parity,
    predicate: Predicate,
    label: &'static str,
    d: u32,
    d_source: &'static str,
    e: u32,
    e_source: Option<&'static str>,
) -> TableRow {
    TableRow {
        alpha: AlphaClass::Exactly(alpha),
        parity,
        predicate,
        label,
        d,
        d_source,
        e: Some(e),
        e_source,
    }
}

use Parity::{Even, Odd};
use Predicate::{AllOf, Any, AnyOf, Mod, NotMod};

const SCHWS: Option<&str> = Some("SchwS");
const SIGS: Option<&str> = Some("SigS");

/// Table for even `n`. It has no reference columns; immersions are due to
/// Davis–Mahowald except the `alpha(n) = 3` family.
pub static EVEN_TABLE: [TableRow; 10] = [
    row(2, Even, Any, "", 2, "DM", 3, None),
    row(3, Even, Any, "", 4, "thm2", 5, None),
    row(4, Even, NotMod(10, 16), "n ≢ 10 (16)", 7, "DM", 8, None),
    row(4, Even, Mod(10, 16), "n ≡ 10 (16)", 7, "DM", 9, None),
    row(5, Even, Any, "", 9, "DM", 10, None),
    row(6, Even, Any, "", 10, "DM", 11, None),
    row(7, Even, Any, "", 11, "DM", 13, None),
    row(
        8,
        Even,
        AllOf(&[NotMod(22, 32), NotMod(132, 256)]),
        "n ≢ 22 (32) and ≢ 132 (256)",
        14,
        "DM",
        16,
        None,
    ),
    row(
        8,
        Even,
        AnyOf(&[Mod(22, 32), Mod(132, 256)]),
        "n ≡ 22 (32) or ≡ 132 (256)",
        14,
        "DM",
        17,
        None,
    ),
    TableRow {
        alpha: AlphaClass::Above(8),
        parity: Even,
        predicate: Any,
        label: "",
        d: 14,
        d_source: "DM",
        e: None,
        e_source: None,
    },
];

pub static ODD_TABLE: [TableRow; 19] = [
    row(2, Odd, Any, "", 3, "James", 4, SIGS),
    row(3, Odd, Mod(1, 4), "n ≡ 1 (4)", 5, "Ran", 6, SIGS),
    row(3, Odd, Mod(3, 4), "n ≡ 3 (4)", 6, "Steer", 7, SCHWS),
    row(4, Odd, NotMod(7, 8), "n ≢ 7 (8)", 7, "DM", 8, SIGS),
    row(4, Odd, Mod(7, 8), "n ≡ 7 (8)", 8, "Crabb", 9, SCHWS),
    row(5, Odd, Mod(1, 4), "n ≡ 1 (4)", 9, "DM", 11, SCHWS),
    row(5, Odd, Mod(3, 8), "n ≡ 3 (8)", 9, "DM", 10, SIGS),
    row(5, Odd, Mod(7, 8), "n ≡ 7 (8)", 10, "Crabb", 11, SCHWS),
    row(6, Odd, Mod(1, 4), "n ≡ 1 (4)", 11, "DM", 12, SIGS),
    row(6, Odd, Mod(3, 16), "n ≡ 3 (16)", 11, "DM", 12, SIGS),
    row(6, Odd, Mod(11, 16), "n ≡ 11 (16)", 12, "Crabb", 13, SCHWS),
    row(6, Odd, Mod(7, 8), "n ≡ 7 (8)", 12, "Crabb", 13, SCHWS),
    row(7, Odd, Mod(1, 4), "n ≡ 1 (4)", 13, "DM", 14, SIGS),
    row(7, Odd, Mod(3, 64), "n ≡ 3 (64)", 13, "DM", 14, SIGS),
    row(
        7,
        Odd,
        AllOf(&[Mod(3, 8), NotMod(3, 64)]),
        "n ≡ 3 (8), ≢ 3 (64)",
        14,
        "mainthm",
        15,
        SCHWS,
    ),
    row(7, Odd, Mod(7, 8), "n ≡ 7 (8)", 14, "Crabb", 15, SCHWS),
    row(
        8,
        Odd,
        AllOf(&[NotMod(15, 16), NotMod(37, 64)]),
        "n ≢ 15 (16) and ≢ 37 (64)",
        15,
        "DM",
        16,
        SIGS,
    ),
    row(
        8,
        Odd,
        AnyOf(&[Mod(15, 16), Mod(37, 64)]),
        "n ≡ 15 (16) or ≡ 37 (64)",
        15,
        "DM",
        17,
        SCHWS,
    ),
    TableRow {
        alpha: AlphaClass::Above(8),
        parity: Odd,
        predicate: Any,
        label: "",
        d: 15,
        d_source: "DM",
        e: None,
        e_source: None,
    },
];

const DISPUTED_NOTE: &str = "claimed d=10 (Crabb) rests on an invalid argument; gap stands";

/// `n = 2k + 1` with `k` even and `alpha(k) = 4`, i.e. `n ≡ 1 (4)` with
/// `alpha(n) = 5`. Crabb's claimed immersion with `d = 10` here is unproven.
pub fn in_disputed_class(n: u64) -> bool {
    n % 4 == 1 && alpha(n) == 5
}

fn table(parity: Parity) -> &'static [TableRow] {
    match parity {
        Even => &EVEN_TABLE,
        Odd => &ODD_TABLE,
    }
}

/// Rows of the table for `n`'s parity whose alpha class and predicate match.
pub fn matching_rows(n: u64) -> Vec<&'static TableRow> {
    let a = alpha(n);
    table(Parity::of(n))
        .iter()
        .filter(|r| r.alpha.contains(a) && r.predicate.eval(n))
        .collect()
}

/// The unique table row for `n`, or `None` when `n <= 1` or `alpha(n) <= 1`.
pub fn table_row(n: u64) -> Result<Option<&'static TableRow>, AtlasError> {
    if n <= 1 || alpha(n) <= 1 {
        return Ok(None);
    }
    match matching_rows(n).as_slice() {
        [row] => Ok(Some(row)),
        rows => Err(AtlasError::TableInconsistency { n, count: rows.len() }),
    }
}

/// Immersion codimension `d` (immersion in `R^(4n-d)`) and its source.
pub fn immersion_d(n: u64) -> Result<Option<(u32, &'static str)>, AtlasError> {
    Ok(table_row(n)?.map(|r| (r.d, r.d_source)))
}

/// `eps(n)` in the nonimmersion bound `R^(4n - 2 alpha(n) + eps)`.
pub fn epsilon_ss(n: u64) -> i32 {
    let a = alpha(n);
    match (n.is_multiple_of(2), a % 4) {
        (true, 1) => 0,
        (true, 2) | (true, 3) => 1,
        _ => -1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// `2 alpha(n) - eps(n)`
    SchwS,
    /// `2 alpha(n)` when the Sigrist–Suter condition fails
    SigS,
}

impl Theorem {
    pub fn key(self) -> &'static str {
        match self {
            Theorem::SchwS => "SchwS",
            Theorem::SigS => "SigS",
        }
    }
}

/// Best nonimmersion: `CP^n` does not immerse in `R^(4n - e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nonimmersion {
    pub e: u32,
    /// Theorems attaining `e`.
    pub winners: Vec<Theorem>,
    pub schws_e: u32,
    /// `Some(2 alpha)` when the Sigrist–Suter condition fails.
    pub sigs_e: Option<u32>,
}

impl Nonimmersion {
    pub fn trace(&self) -> String {
        let keys: Vec<&str> = self.winners.iter().map(|t| t.key()).collect();
        let sigs = match self.sigs_e {
            Some(v) => format!("condition fails, 2a={v}"),
            None => "condition holds".to_string(),
        };
        format!("{}: 2a-eps={}; {}", keys.join("+"), self.schws_e, sigs)
    }
}

/// Smallest nonimmersion codimension available from the two criteria.
pub fn nonimmersion_e(n: u64) -> Result<Nonimmersion, AtlasError> {
    let report = sigrist_suter(n)?;
    let two_alpha = 2 * report.alpha_n;
    let schws_e = (two_alpha as i32 - epsilon_ss(n)) as u32;
    let sigs_e = (!report.holds).then_some(two_alpha);
    let e = sigs_e.map_or(schws_e, |s| s.min(schws_e));
    let mut winners = Vec::new();
    if schws_e == e {
        winners.push(Theorem::SchwS);
    }
    if sigs_e == Some(e) {
        winners.push(Theorem::SigS);
    }
    Ok(Nonimmersion {
        e,
        winners,
        schws_e,
        sigs_e,
    })
}

/// One line of the atlas; field order is the JSON field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersionRecord {
    pub n: u64,
    pub alpha: u32,
    pub parity: Parity,
    pub d: Option<u32>,
    pub d_source: Option<String>,
    pub e: Option<u32>,
    pub e_trace: Option<String>,
    pub gap: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AtlasOptions {
    /// Compute `e` for `alpha(n) > 8` too, where the tables leave it blank.
    pub derive_e_above_8: bool,
}

pub fn immersion_record(n: u64, opts: AtlasOptions) -> Result<ImmersionRecord, AtlasError> {
    let a = alpha(n);
    let row = table_row(n)?;
    let derive_e = row.is_some_and(|r| r.e.is_some() || opts.derive_e_above_8);
    let nonimm = if derive_e { Some(nonimmersion_e(n)?) } else { None };
    let d = row.map(|r| r.d);
    let e = nonimm.as_ref().map(|x| x.e);
    let gap = matches!((d, e), (Some(d), Some(e)) if e >= d + 2);
    let note = in_disputed_class(n).then(|| DISPUTED_NOTE.to_string());
    Ok(ImmersionRecord {
        n,
        alpha: a,
        parity: Parity::of(n),
        d,
        d_source: row.map(|r| r.d_source.to_string()),
        e,
        e_trace: nonimm.map(|x| x.trace()),
        gap,
        note,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AtlasFilter {
    pub alpha: Option<u32>,
    pub parity: Option<Parity>,
    /// `n ≡ residue (mod modulus)`
    pub congruence: Option<(u64, u64)>,
}

impl AtlasFilter {
    pub fn accepts(&self, n: u64) -> bool {
        self.alpha.is_none_or(|a| alpha(n) == a)
            && self.parity.is_none_or(|p| Parity::of(n) == p)
            && self.congruence.is_none_or(|(r, m)| n % m == r % m)
    }
}

/// Records for every `n` in `[from, to]` passing the filter, sorted by `n`.
pub fn atlas_records(
    from: u64,
    to: u64,
    filter: &AtlasFilter,
    opts: AtlasOptions,
) -> Result<Vec<ImmersionRecord>, AtlasError> {
    if from < 2 || from > to {
        return Err(AtlasError::InvalidRange { from, to });
    }
    if matches!(filter.congruence, Some((_, 0))) {
        return Err(AtlasError::InvalidModulus);
    }
    (from..=to)
        .into_par_iter()
        .filter(|&n| filter.accepts(n))
        .map(|n| immersion_record(n, opts))
        .collect()
}

pub fn render_json(records: &[ImmersionRecord]) -> String {
    let mut out = serde_json::to_string_pretty(records).expect("records serialize");
    out.push('\n');
    out
}

fn row_position(n: u64) -> (usize, &'static str) {
    match table_row(n) {
        Ok(Some(row)) => {
            let idx = table(row.parity)
                .iter()
                .position(|r| std::ptr::eq(r, row))
                .unwrap_or(usize::MAX);
            (idx, row.label)
        }
        _ => (usize::MAX, "not covered"),
    }
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, ToString::to_string)
}

/// Two tables (even, odd), rows grouped by alpha and then by table row.
pub fn render_markdown(records: &[ImmersionRecord]) -> String {
    let mut out = String::new();
    for (parity, title) in [(Even, "Immersions and nonimmersions, n even"), (Odd, "Immersions and nonimmersions, n odd")] {
        let mut rows: Vec<(u32, usize, &'static str, &ImmersionRecord)> = records
            .iter()
            .filter(|r| r.parity == parity)
            .map(|r| {
                let (idx, label) = row_position(r.n);
                (r.alpha, idx, label, r)
            })
            .collect();
        if rows.is_empty() {
            continue;
        }
        rows.sort_by_key(|&(a, idx, _, r)| (a, idx, r.n));
        let _ = writeln!(out, "## {title}\n");
        out.push_str("| α(n) | condition | n | d | d ref | e | e ref | gap | note |\n");
        out.push_str("|---:|:---|---:|---:|:---|---:|:---|:---:|:---|\n");
        for (a, _, label, r) in rows {
            let e_ref = r
                .e_trace
                .as_deref()
                .map(|t| t.split(':').next().unwrap_or(t).to_string());
            let _ = writeln!(
                out,
                "| {a} | {label} | {} | {} | {} | {} | {} | {} | {} |",
                r.n,
                cell(&r.d),
                cell(&r.d_source),
                cell(&r.e),
                cell(&e_ref),
                if r.gap { "yes" } else { "" },
                cell(&r.note),
            );
        }
        out.push('\n');
    }
    out
}
