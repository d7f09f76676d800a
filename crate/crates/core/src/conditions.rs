//! Necessary conditions for immersions of `CP^n`, evaluated exactly.
//!
//! * the Sigrist–Suter valuation condition on `(log(1+t)/t)^(2n+1-alpha(n))`;
//! * the valuation vector `v(m)` of `(log(1+t)/t)^m` through `t^8`, its closed
//!   form criterion and its case patterns by residue class of `m`;
//! * Crabb's KO-theoretic congruence systems on powers of `lambda(T)`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::congruence::{solve_system, CongruenceConstraint, SolveResult};
use crate::dyadic::{alpha, nu_int, nu_rational, nu_trunc, Rational, TruncatedValuation, Valuation};
use crate::series::{lambda_series, log_over_t_series};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("the Sigrist-Suter condition needs alpha(n) >= 2, but alpha({n}) = {alpha}")]
    AlphaTooSmall { n: u64, alpha: u32 },
    #[error("{name} must be positive")]
    NotPositive { name: &'static str },
}

/// Number of coefficients in a valuation vector (indices 0..=8).
pub const VECTOR_LEN: usize = 9;

pub type ValuationVector = [Valuation; VECTOR_LEN];

/// `nu(c_{top-1}) = nu(c_top) < nu(c_i)` for all `i < top - 1`.
pub fn tail_minimum_condition(valuations: &[Valuation], top: usize) -> bool {
    assert!(top >= 1 && top < valuations.len());
    let pivot = valuations[top - 1];
    pivot == valuations[top] && valuations[..top - 1].iter().all(|&v| pivot < v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigristSuterReport {
    pub n: u64,
    pub alpha_n: u32,
    /// Exponent `2n + 1 - alpha(n)`.
    pub m: u64,
    /// `nu(c_i)` for `i = 0..=alpha(n)`.
    pub valuations: Vec<Valuation>,
    pub holds: bool,
}

impl fmt::Display for SigristSuterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "alpha(n) = {}", self.alpha_n)?;
        writeln!(f, "m = 2n+1-alpha(n) = {}", self.m)?;
        let vals: Vec<String> = self.valuations.iter().map(Valuation::to_string).collect();
        writeln!(f, "nu(c_0..c_{}) = ({})", self.alpha_n, vals.join(", "))?;
        write!(f, "condition {}", if self.holds { "holds" } else { "fails" })
    }
}

/// Evaluate the Sigrist–Suter condition for `CP^n`.
///
/// The series is expanded to order exactly `alpha(n)`.
pub fn sigrist_suter(n: u64) -> Result<SigristSuterReport, ConditionError> {
    let alpha_n = alpha(n);
    if alpha_n < 2 {
        return Err(ConditionError::AlphaTooSmall { n, alpha: alpha_n });
    }
    let m = 2 * n + 1 - u64::from(alpha_n);
    let top = alpha_n as usize;
    let series = log_over_t_series(top).pow_trunc(m);
    let valuations: Vec<Valuation> = series.coeffs().iter().map(nu_rational).collect();
    let holds = tail_minimum_condition(&valuations, top);
    Ok(SigristSuterReport {
        n,
        alpha_n,
        m,
        valuations,
        holds,
    })
}

/// `(nu(c_{m,0}), ..., nu(c_{m,8}))` for `(log(1+t)/t)^m`.
pub fn valuation_vector(m: u64) -> Result<ValuationVector, ConditionError> {
    if m == 0 {
        return Err(ConditionError::NotPositive { name: "m" });
    }
    let series = log_over_t_series(VECTOR_LEN - 1).pow_trunc(m);
    let mut out = [Valuation::Infinity; VECTOR_LEN];
    for (slot, c) in out.iter_mut().zip(series.coeffs()) {
        *slot = nu_rational(c);
    }
    Ok(out)
}

/// The direct condition `nu(c_{m,7}) = nu(c_{m,8}) < nu(c_{m,i})` for `i < 7`.
pub fn lemma_direct(vector: &ValuationVector) -> bool {
    tail_minimum_condition(vector, 8)
}

/// `nu(m-7) = 4 or nu(m-5) = 5 or nu(m-3) = 6 or nu(m-1) = 8`.
pub fn lemma_closed_form(m: u64) -> bool {
    let m = m as i64;
    [(7, 4), (5, 5), (3, 6), (1, 8)]
        .iter()
        .any(|&(shift, v)| nu_int(m - shift) == Valuation::Finite(v))
}

/// One entry of a case pattern before the parameter `k` is known.
#[derive(Debug, Clone, Copy)]
enum Template {
    Is(i64),
    AtLeast(i64),
    /// `base + nu(k, bound)`
    PlusTruncNu(i64, i64),
}

use Template::{AtLeast as Ge, Is, PlusTruncNu as Nu};

/// Odd residue classes `m ≡ residue (mod modulus)` and their patterns, with
/// `k = (m - residue) / modulus`.
const ODD_CASES: [(u8, u64, u64, [Template; VECTOR_LEN]); 8] = [
    (2, 7, 8, [Is(0), Is(-1), Is(-2), Is(-3), Is(-4), Is(-5), Is(-6), Is(-7), Nu(-8, 2)]),
    (3, 5, 8, [Is(0), Is(-1), Is(-1), Ge(-1), Is(-4), Is(-5), Ge(-4), Is(-6), Nu(-8, 3)]),
    (4, 3, 32, [Is(0), Is(-1), Is(-2), Is(-3), Ge(-1), Is(-4), Is(-4), Is(-5), Nu(-6, 2)]),
    (5, 19, 32, [Is(0), Is(-1), Is(-2), Is(-3), Is(-2), Is(-4), Ge(-3), Ge(-4), Is(-7)]),
    (6, 11, 16, [Is(0), Is(-1), Is(-2), Is(-3), Is(-3), Ge(-3), Is(-5), Is(-6), Is(-8)]),
    (7, 9, 16, [Is(0), Is(-1), Ge(-1), Is(-2), Is(-3), Is(-4), Is(-4), Ge(-3), Is(-8)]),
    (8, 17, 32, [Is(0), Is(-1), Is(0), Is(-2), Is(-2), Is(-3), Is(-3), Ge(-2), Is(-7)]),
    // printed as "nu(4, k)"; read with the argument order of the other items
    (9, 1, 32, [Is(0), Is(-1), Is(0), Is(-2), Ge(-1), Ge(-2), Ge(-2), Is(-3), Nu(-6, 4)]),
];

/// Parameters that select and instantiate a case pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternCase {
    /// `m = 2^e (2a + 1)` with `e >= 3`.
    PowerOfTwo { e: u32, a: u64 },
    /// `m = residue + modulus * k` for an odd residue class.
    Odd { residue: u64, modulus: u64, k: u64 },
}

/// An instantiated case pattern for `v(m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationPattern {
    /// Item number 1..=9 in the list of cases.
    pub item: u8,
    pub case: PatternCase,
    pub entries: [TruncatedValuation; VECTOR_LEN],
}

impl ValuationPattern {
    pub fn matches(&self, vector: &ValuationVector) -> bool {
        self.mismatches(vector).is_empty()
    }

    /// Indices where the concrete vector violates the pattern.
    pub fn mismatches(&self, vector: &ValuationVector) -> Vec<usize> {
        self.entries
            .iter()
            .zip(vector)
            .enumerate()
            .filter(|(_, (p, v))| !p.matches(**v))
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Display for ValuationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        match self.case {
            PatternCase::PowerOfTwo { e, a } => write!(f, "item (1), e={e}, a={a}: ")?,
            PatternCase::Odd { residue, modulus, k } => {
                write!(f, "item ({}), m = {residue} + {modulus}k, k={k}: ", self.item)?
            }
        }
        write!(f, "({})", entries.join(", "))
    }
}

/// The case pattern that applies to `m`, or `None` when `nu(m)` is 1 or 2
/// (no case is listed for those classes).
pub fn case_pattern(m: u64) -> Result<Option<ValuationPattern>, ConditionError> {
    if m == 0 {
        return Err(ConditionError::NotPositive { name: "m" });
    }
    let e = m.trailing_zeros();
    if e >= 3 {
        let a = (m >> e) / 2;
        let e = i64::from(e);
        let entries = [0, e - 1, e - 3, e - 3, e - 6, e - 5, e - 7, e - 7, e - 11]
            .map(TruncatedValuation::Exact);
        return Ok(Some(ValuationPattern {
            item: 1,
            case: PatternCase::PowerOfTwo { e: e as u32, a },
            entries,
        }));
    }
    if e > 0 {
        return Ok(None);
    }
    let (item, residue, modulus, templates) = ODD_CASES
        .iter()
        .find(|(_, residue, modulus, _)| m % modulus == *residue)
        .expect("odd residue classes cover every odd m");
    let k = (m - residue) / modulus;
    let entries = templates.map(|t| match t {
        Is(v) => TruncatedValuation::Exact(v),
        Ge(v) => TruncatedValuation::AtLeast(v),
        Nu(base, bound) => nu_trunc(k, bound).offset(base),
    });
    Ok(Some(ValuationPattern {
        item: *item,
        case: PatternCase::Odd {
            residue: *residue,
            modulus: *modulus,
            k,
        },
        entries,
    }))
}

/// A congruence system in the unknown `e` together with its verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrabbSystem {
    pub constraints: Vec<CongruenceConstraint>,
    pub result: SolveResult,
}

impl fmt::Display for CrabbSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.constraints.iter().enumerate() {
            writeln!(f, "[{i}] {c}")?;
        }
        write!(f, "{}", self.result)
    }
}

fn build_system(power: u64, targets: &[i64], exponents: &[u32]) -> CrabbSystem {
    let lambda_power = lambda_series(targets.len() - 1).pow_trunc(power);
    let constraints: Vec<CongruenceConstraint> = lambda_power
        .coeffs()
        .iter()
        .zip(targets.iter().zip(exponents))
        .map(|(a, (&b, &k))| CongruenceConstraint::new(a.clone(), b, k))
        .collect();
    let result = solve_system(&constraints);
    CrabbSystem { constraints, result }
}

/// Conditions on `lambda^(8p)` through `T^3`:
/// `e (lambda^8p)_i ≡ (0, 0, 0, 64)_i (mod 2^(1, 3, 5, 7)_i)`.
pub fn crabb_cp_system(p: u64) -> Result<CrabbSystem, ConditionError> {
    if p == 0 {
        return Err(ConditionError::NotPositive { name: "p" });
    }
    Ok(build_system(8 * p, &[0, 0, 0, 64], &[1, 3, 5, 7]))
}

/// Conditions on `lambda^(4K-1)` through `T^2`:
/// `e (lambda^(4K-1))_i ≡ (0, 8, 16)_i (mod 2^(1, 4, 5)_i)`.
pub fn crabb_hp_system(k: u64) -> Result<CrabbSystem, ConditionError> {
    if k == 0 {
        return Err(ConditionError::NotPositive { name: "K" });
    }
    Ok(build_system(4 * k - 1, &[0, 8, 16], &[1, 4, 5]))
}

/// `(u_1, u_2, u_3)` with `lambda^(8p) = 1 + 8p u_1 T + 4p u_2 T^2 + 8p u_3 T^3`.
pub fn lambda_power_units(p: u64) -> Result<[Rational; 3], ConditionError> {
    if p == 0 {
        return Err(ConditionError::NotPositive { name: "p" });
    }
    let s = lambda_series(3).pow_trunc(8 * p);
    let c = s.coeffs();
    let scale = |f: u64| Rational::from_integer(BigInt::from(f * p));
    Ok([&c[1] / scale(8), &c[2] / scale(4), &c[3] / scale(8)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::Conflict;
    use crate::series::TruncatedSeries;

    fn fin(v: &[i64]) -> Vec<Valuation> {
        v.iter().map(|&x| Valuation::Finite(x)).collect()
    }

    /// Valuation vectors for m = 1..=count by repeated multiplication,
    /// independent of binary exponentiation.
    fn incremental_vectors(count: u64) -> Vec<ValuationVector> {
        let base = log_over_t_series(8);
        let mut acc = TruncatedSeries::one(8);
        (1..=count)
            .map(|_| {
                acc = acc.mul_trunc(&base).unwrap();
                let mut out = [Valuation::Infinity; VECTOR_LEN];
                for (slot, c) in out.iter_mut().zip(acc.coeffs()) {
                    *slot = nu_rational(c);
                }
                out
            })
            .collect()
    }

    #[test]
    fn valuation_vector_examples() {
        assert_eq!(valuation_vector(1).unwrap().to_vec(), fin(&[0, -1, 0, -2, 0, -1, 0, -3, 0]));
        assert_eq!(valuation_vector(7).unwrap()[..8].to_vec(), fin(&[0, -1, -2, -3, -4, -5, -6, -7]));
        assert_eq!(valuation_vector(8).unwrap().to_vec(), fin(&[0, 2, 0, 0, -3, -2, -4, -4, -8]));
        assert!(valuation_vector(0).is_err());
    }

    #[test]
    fn valuation_vector_matches_incremental_products() {
        for (i, v) in incremental_vectors(300).iter().enumerate() {
            assert_eq!(&valuation_vector(i as u64 + 1).unwrap(), v, "m={}", i + 1);
        }
    }

    #[test]
    fn closed_form_examples() {
        assert!(lemma_closed_form(503));
        assert!(!lemma_closed_form(1));
        assert!(lemma_closed_form(23));
        assert!(lemma_closed_form(257));
    }

    #[test]
    fn lemma_agrees_on_small_m() {
        for (i, v) in incremental_vectors(1024).iter().enumerate() {
            let m = i as u64 + 1;
            assert_eq!(lemma_direct(v), lemma_closed_form(m), "m={m}");
        }
    }

    #[test]
    fn case_pattern_examples() {
        let p7 = case_pattern(7).unwrap().unwrap();
        assert_eq!(p7.item, 2);
        assert_eq!(p7.case, PatternCase::Odd { residue: 7, modulus: 8, k: 0 });
        assert_eq!(p7.entries[8], TruncatedValuation::AtLeast(-6));
        assert!(p7.matches(&valuation_vector(7).unwrap()));

        let p16 = case_pattern(16).unwrap().unwrap();
        assert_eq!(p16.item, 1);
        assert_eq!(p16.case, PatternCase::PowerOfTwo { e: 4, a: 0 });

        assert_eq!(case_pattern(6).unwrap(), None);
        assert_eq!(case_pattern(12).unwrap(), None);
        assert!(case_pattern(0).is_err());

        let p1 = case_pattern(1).unwrap().unwrap();
        assert_eq!(p1.item, 9);
        assert_eq!(p1.entries[8], TruncatedValuation::AtLeast(-2));
        let p33 = case_pattern(33).unwrap().unwrap();
        assert_eq!(p33.entries[8], TruncatedValuation::Exact(-6));
    }

    #[test]
    fn every_odd_m_has_one_case() {
        for m in (1..2048u64).step_by(2) {
            let hits = ODD_CASES.iter().filter(|(_, r, q, _)| m % q == *r).count();
            assert_eq!(hits, 1, "m={m}");
        }
    }

    #[test]
    fn sigrist_suter_examples() {
        let r = sigrist_suter(255).unwrap();
        assert_eq!((r.alpha_n, r.m), (8, 503));
        assert!(r.holds);
        assert!(!sigrist_suter(510).unwrap().holds);
        assert!(sigrist_suter(7).unwrap().holds);
        assert_eq!(
            sigrist_suter(8),
            Err(ConditionError::AlphaTooSmall { n: 8, alpha: 1 })
        );
    }

    #[test]
    fn crabb_cp_examples() {
        assert!(crabb_cp_system(31).unwrap().result.is_solvable());
        assert!(!crabb_cp_system(40).unwrap().result.is_solvable());
        let sys = crabb_cp_system(2).unwrap();
        assert_eq!(sys.constraints.len(), 4);
        match &sys.result {
            SolveResult::Solvable(class) => {
                let e = &class.residue;
                assert!(sys.constraints.iter().all(|c| c.is_satisfied_by(e)));
                // e p ≡ 8 (mod 16) with p = 2
                assert_eq!((e * 2u32) % 16u32, BigInt::from(8));
            }
            other => panic!("expected solvable, got {other:?}"),
        }
    }

    #[test]
    fn crabb_hp_examples() {
        for k in [1, 4, 100] {
            assert!(!crabb_hp_system(k).unwrap().result.is_solvable(), "K={k}");
        }
        assert_eq!(
            crabb_hp_system(4).unwrap().result,
            SolveResult::Unsolvable(Conflict::Pair(1, 2))
        );
        assert!(crabb_hp_system(0).is_err());
    }

    #[test]
    fn units_are_odd_for_small_p() {
        for p in 1..=64 {
            for u in lambda_power_units(p).unwrap() {
                assert_eq!(nu_rational(&u), Valuation::Finite(0), "p={p}");
            }
        }
    }
}
