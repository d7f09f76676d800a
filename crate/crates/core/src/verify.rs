//! Exhaustive batch checks over ranges of `n`, `m`, `p` and `K`.
//!
//! Each suite evaluates a family of independent checks in parallel and
//! reports how many passed, plus the first counterexample in range order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::atlas::{matching_rows, nonimmersion_e, table_row};
use crate::conditions::{
    case_pattern, crabb_cp_system, crabb_hp_system, lemma_closed_form, lemma_direct,
    sigrist_suter, valuation_vector,
};
use crate::congruence::{Conflict, SolveResult};
use crate::dyadic::{alpha, nu_binomial, nu_int, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Closed form vs. direct condition on `v(m)`, `m` in `1..=bound`.
    Lemma,
    /// Case patterns for `v(m)`, `m` in `1..=bound`, plus the doubling identity.
    Patterns,
    /// Both Crabb systems for `p`, `K` in `1..=bound`.
    Crabb,
    /// Table rows, `e` column and `d`-row consistency for `n` in `4..=bound`.
    Tables,
    /// Binomial valuation formulas for `p`, `l` in `1..=bound`.
    Binomials,
    /// Sigrist–Suter at `alpha(n) = 8` against its congruence form, `n <= bound`.
    Reduction,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "lemma" => Suite::Lemma,
            "patterns" => Suite::Patterns,
            "crabb" => Suite::Crabb,
            "tables" => Suite::Tables,
            "binomials" => Suite::Binomials,
            "reduction" => Suite::Reduction,
            other => return Err(format!("unknown suite `{other}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub checked: usize,
    pub passed: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.passed == self.checked
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}/{}", self.passed, self.checked)?;
        if let Some(msg) = &self.first_failure {
            write!(f, "\nfirst counterexample: {msg}")?;
        }
        Ok(())
    }
}

type Check = Result<(), String>;

fn collect(results: Vec<Check>) -> SuiteReport {
    let checked = results.len();
    let first_failure = results.iter().find_map(|r| r.clone().err());
    let passed = results.iter().filter(|r| r.is_ok()).count();
    SuiteReport {
        checked,
        passed,
        first_failure,
    }
}

pub fn run(suite: Suite, bound: u64) -> SuiteReport {
    match suite {
        Suite::Lemma => lemma(bound),
        Suite::Patterns => patterns(bound),
        Suite::Crabb => crabb(bound),
        Suite::Tables => tables(bound),
        Suite::Binomials => binomials(bound),
        Suite::Reduction => reduction(bound),
    }
}

pub fn lemma(bound: u64) -> SuiteReport {
    collect(
        (1..=bound)
            .into_par_iter()
            .map(|m| {
                let direct = lemma_direct(&valuation_vector(m).map_err(|e| e.to_string())?);
                let closed = lemma_closed_form(m);
                if direct == closed {
                    Ok(())
                } else {
                    Err(format!("m={m}: direct condition {direct}, closed form {closed}"))
                }
            })
            .collect(),
    )
}

/// Pattern conformance for every `m` with an applicable case.
pub fn pattern_conformance(bound: u64) -> SuiteReport {
    collect(
        (1..=bound)
            .into_par_iter()
            .filter_map(|m| {
                let pattern = case_pattern(m).ok()??;
                let v = valuation_vector(m).ok()?;
                let bad = pattern.mismatches(&v);
                Some(if bad.is_empty() {
                    Ok(())
                } else {
                    let vals: Vec<String> = v.iter().map(ToString::to_string).collect();
                    Err(format!("m={m}: v=({}) vs {pattern}; entries {bad:?}", vals.join(", ")))
                })
            })
            .collect(),
    )
}

/// `v_i(2^(e+1)) = 1 + v_i(2^e)` for `e` in `3..=12` and `i` in `1..=8`.
/// `c_0 = 1` for every power, so `v_0` is constant and excluded.
pub fn doubling_identity() -> SuiteReport {
    collect(
        (3u32..=12)
            .into_par_iter()
            .map(|e| {
                let lo = valuation_vector(1 << e).map_err(|x| x.to_string())?;
                let hi = valuation_vector(1 << (e + 1)).map_err(|x| x.to_string())?;
                match (1..lo.len()).find(|&i| hi[i] != lo[i].shift(1)) {
                    None => Ok(()),
                    Some(i) => Err(format!("e={e}, i={i}: {} vs 1 + {}", hi[i], lo[i])),
                }
            })
            .collect(),
    )
}

fn merge(a: SuiteReport, b: SuiteReport) -> SuiteReport {
    SuiteReport {
        checked: a.checked + b.checked,
        passed: a.passed + b.passed,
        first_failure: a.first_failure.or(b.first_failure),
    }
}

pub fn patterns(bound: u64) -> SuiteReport {
    merge(pattern_conformance(bound), doubling_identity())
}

pub fn crabb_cp_law(bound: u64) -> SuiteReport {
    collect(
        (1..=bound)
            .into_par_iter()
            .map(|p| {
                let solvable = crabb_cp_system(p).map_err(|e| e.to_string())?.result.is_solvable();
                if solvable == (p % 8 != 0) {
                    Ok(())
                } else {
                    Err(format!("p={p}: solvable={solvable}"))
                }
            })
            .collect(),
    )
}

pub fn crabb_hp_law(bound: u64) -> SuiteReport {
    collect(
        (1..=bound)
            .into_par_iter()
            .map(|k| {
                let sys = crabb_hp_system(k).map_err(|e| e.to_string())?;
                match sys.result {
                    SolveResult::Unsolvable(Conflict::Pair(1, 2)) => Ok(()),
                    other => Err(format!("K={k}: {other}")),
                }
            })
            .collect(),
    )
}

pub fn crabb(bound: u64) -> SuiteReport {
    merge(crabb_cp_law(bound), crabb_hp_law(bound))
}

/// `e` column and row partition for `n` in `4..=bound`, `2 <= alpha(n) <= 8`.
pub fn table_e_column(bound: u64) -> SuiteReport {
    collect(
        (4..=bound)
            .into_par_iter()
            .filter(|&n| (2..=8).contains(&alpha(n)))
            .map(|n| {
                let rows = matching_rows(n);
                if rows.len() != 1 {
                    return Err(format!("n={n}: matches {} rows", rows.len()));
                }
                let printed = rows[0].e;
                let computed = nonimmersion_e(n).map_err(|e| e.to_string())?;
                if printed != Some(computed.e) {
                    return Err(format!("n={n}: table e={printed:?}, computed {}", computed.trace()));
                }
                if let Some(src) = rows[0].e_source {
                    if !computed.winners.iter().any(|t| t.key() == src) {
                        return Err(format!("n={n}: table credits {src}, computed {}", computed.trace()));
                    }
                }
                if rows[0].d >= computed.e {
                    return Err(format!("n={n}: d={} not below e={}", rows[0].d, computed.e));
                }
                Ok(())
            })
            .collect(),
    )
}

/// Rows claiming an immersion in `R^(4n - 2 alpha(n))` need the
/// Sigrist–Suter condition to hold.
pub fn immersion_consistency(bound: u64) -> SuiteReport {
    collect(
        (2..=bound)
            .into_par_iter()
            .filter_map(|n| {
                let row = table_row(n).ok()??;
                (row.d == 2 * alpha(n)).then_some(n)
            })
            .map(|n| match sigrist_suter(n) {
                Ok(r) if r.holds => Ok(()),
                Ok(_) => Err(format!("n={n}: row claims d=2alpha but the condition fails")),
                Err(e) => Err(format!("n={n}: {e}")),
            })
            .collect(),
    )
}

pub fn tables(bound: u64) -> SuiteReport {
    merge(table_e_column(bound), immersion_consistency(bound))
}

/// `nu C(-(4p+2), 4p+eps)` for `eps = -2, -1, 0, 1`.
pub fn expected_cp_binomials(p: u64) -> [Valuation; 4] {
    let a = i64::from(alpha(p));
    let v = nu_int(p as i64).finite().expect("p > 0");
    [a - 1, 2 + a + v, a, a + 1].map(Valuation::Finite)
}

pub fn binomials(bound: u64) -> SuiteReport {
    let cp = (1..=bound).into_par_iter().map(|p| {
        let top = -(4 * p as i64 + 2);
        let expected = expected_cp_binomials(p);
        for (eps, want) in (-2i64..=1).zip(expected) {
            let got = nu_binomial(top, 4 * p as i64 + eps).map_err(|e| e.to_string())?;
            if got != want {
                return Err(format!("p={p}, eps={eps}: got {got}, want {want}"));
            }
        }
        Ok(())
    });
    let even = (1..=bound).into_par_iter().filter(|&l| alpha(l) == 3).map(|l| {
        let top = -(2 * l as i64 + 1);
        for (eps, want) in [(0i64, 3i64), (1, 2), (2, 2)] {
            let got = nu_binomial(top, 2 * l as i64 - eps).map_err(|e| e.to_string())?;
            if got != Valuation::Finite(want) {
                return Err(format!("l={l}, eps={eps}: got {got}, want {want}"));
            }
        }
        Ok(())
    });
    merge(collect(cp.collect()), collect(even.collect()))
}

/// Congruence form of the `alpha(n) = 8` Sigrist–Suter condition.
pub fn alpha8_congruence_form(n: u64) -> bool {
    if n.is_multiple_of(2) {
        n % 32 == 22 || n % 256 == 132
    } else {
        n % 16 == 15 || n % 64 == 37
    }
}

pub fn reduction(bound: u64) -> SuiteReport {
    collect(
        (1..=bound)
            .into_par_iter()
            .filter(|&n| alpha(n) == 8)
            .map(|n| {
                let holds = sigrist_suter(n).map_err(|e| e.to_string())?.holds;
                let m = 2 * n + 1 - 8;
                let closed = lemma_closed_form(m);
                let congruence = alpha8_congruence_form(n);
                if holds == closed && holds == congruence {
                    Ok(())
                } else {
                    Err(format!(
                        "n={n}: condition {holds}, closed form at m={m} {closed}, congruence form {congruence}"
                    ))
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds_pass() {
        for suite in [
            Suite::Lemma,
            Suite::Patterns,
            Suite::Crabb,
            Suite::Tables,
            Suite::Binomials,
            Suite::Reduction,
        ] {
            let report = run(suite, 600);
            assert!(report.ok(), "{suite:?}: {report}");
            assert!(report.checked > 0);
        }
    }

    #[test]
    fn report_format() {
        let r = SuiteReport {
            checked: 3,
            passed: 2,
            first_failure: Some("m=5".into()),
        };
        assert_eq!(r.to_string(), "FAIL 2/3\nfirst counterexample: m=5");
        assert_eq!(lemma(16).to_string(), "PASS 16/16");
    }

    #[test]
    fn cp_binomials_at_31() {
        assert_eq!(
            expected_cp_binomials(31),
            [4, 7, 5, 6].map(Valuation::Finite)
        );
    }

    #[test]
    fn parse_suite() {
        assert_eq!("lemma".parse::<Suite>(), Ok(Suite::Lemma));
        assert!("nope".parse::<Suite>().is_err());
    }
}
