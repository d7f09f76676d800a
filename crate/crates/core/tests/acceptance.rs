//! Acceptance criteria, each at full scale and zero tolerance (all values are
//! exact). Every test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test --test acceptance -- --nocapture --test-threads=1` to see them.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use immersion_core::conditions::{crabb_cp_system, crabb_hp_system, lambda_power_units};
use immersion_core::congruence::{solve_system, Conflict, CongruenceConstraint, SolveResult};
use immersion_core::dyadic::{nu_rational, Rational, Valuation};
use immersion_core::series::{lambda_series, TruncatedSeries};
use immersion_core::verify::{self, SuiteReport};

fn report(id: u32, title: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("[{verdict}] AC-{id:02} {title}: {detail}");
    assert!(ok, "AC-{id:02} {title}: {detail}");
}

fn report_suite(id: u32, title: &str, r: &SuiteReport) {
    report(id, title, r.ok(), &r.to_string().replace('\n', "; "));
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn exact(coeffs: &[(i64, i64)]) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
}

#[test]
fn ac01_lambda_golden_values() {
    let lambda = lambda_series(3);
    let want = exact(&[(1, 1), (-1, 3), (8, 45), (-4, 35)]);
    let want8 = exact(&[(1, 1), (-8, 3), (68, 15), (-1192, 189)]);
    let got8 = lambda.pow_trunc(8);
    report(
        1,
        "lambda and lambda^8 mod T^4",
        lambda == want && got8 == want8,
        &format!("lambda = [{lambda}], lambda^8 = [{got8}]"),
    );
}

#[test]
fn ac02_odd_fraction_structure() {
    let bad: Vec<u64> = (1..=512u64)
        .filter(|&p| {
            let units = lambda_power_units(p).unwrap();
            units.iter().any(|u| nu_rational(u) != Valuation::Finite(0))
        })
        .collect();
    report(
        2,
        "u_1, u_2, u_3 odd for p in 1..=512",
        bad.is_empty(),
        &format!("{} failures, first {:?}", bad.len(), bad.first()),
    );
}

#[test]
fn ac03_crabb_cp_law() {
    let bad: Vec<u64> = (1..=1024u64)
        .filter(|&p| crabb_cp_system(p).unwrap().result.is_solvable() != (p % 8 != 0))
        .collect();
    report(
        3,
        "CP system solvable iff p ≢ 0 (8), p in 1..=1024",
        bad.is_empty(),
        &format!("{} mismatches, first {:?}", bad.len(), bad.first()),
    );
}

#[test]
fn ac04_crabb_hp_law() {
    let bad: Vec<u64> = (1..=1024u64)
        .filter(|&k| crabb_hp_system(k).unwrap().result.is_solvable())
        .collect();
    let k4 = crabb_hp_system(4).unwrap();
    // constraint 1 is mod 2^4 = 16, constraint 2 is mod 2^5 = 32
    let pair_ok = k4.result == SolveResult::Unsolvable(Conflict::Pair(1, 2))
        && k4.constraints[1].modulus_exponent == 4
        && k4.constraints[2].modulus_exponent == 5;
    report(
        4,
        "HP system unsolvable for K in 1..=1024, K=4 names mod-16/mod-32 pair",
        bad.is_empty() && pair_ok,
        &format!("{} solvable, K=4 verdict: {}", bad.len(), k4.result),
    );
}

#[test]
fn ac05_lemma_equivalence() {
    report_suite(5, "closed form vs direct condition, m in 1..=8192", &verify::lemma(8192));
}

#[test]
fn ac06_pattern_conformance() {
    let conformance = verify::pattern_conformance(8192);
    let doubling = verify::doubling_identity();
    report_suite(6, "case patterns, m in 1..=8192", &conformance);
    report_suite(6, "doubling identity, e in 3..=12", &doubling);
}

#[test]
fn ac07_alpha8_reduction() {
    report_suite(7, "alpha(n)=8 congruence form, n <= 2^16", &verify::reduction(1 << 16));
}

#[test]
fn ac08_table_reproduction() {
    report_suite(8, "e column and row partition, n in [4, 2^14]", &verify::table_e_column(1 << 14));
}

#[test]
fn ac09_necessary_condition_consistency() {
    let r = verify::immersion_consistency(1 << 14);
    report(
        9,
        "rows with d = 2 alpha(n) satisfy the Sigrist-Suter condition, n <= 2^14",
        r.ok() && r.checked > 0,
        &r.to_string().replace('\n', "; "),
    );
}

#[test]
fn ac10_binomial_formulas() {
    report_suite(10, "binomial valuation formulas, p and l <= 4096", &verify::binomials(4096));
}

/// `nu(e a - b) >= k` with exact rationals, written out independently of the
/// library's own check.
fn brute_satisfies(e: i64, a: &Rational, b: i64, k: u32) -> bool {
    let diff = a * rat(e, 1) - rat(b, 1);
    if diff == rat(0, 1) {
        return true;
    }
    let (mut num, mut den) = (diff.numer().clone(), diff.denom().clone());
    let two = BigInt::from(2);
    let mut v: i64 = 0;
    while &num % &two == BigInt::from(0) {
        num /= &two;
        v += 1;
    }
    while &den % &two == BigInt::from(0) {
        den /= &two;
        v -= 1;
    }
    v >= i64::from(k)
}

#[test]
fn ac11_solver_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2adc);
    let mut mismatches = Vec::new();
    let odd_dens = [1i64, 3, 5, 7, 9, 15, 45, 189];
    for trial in 0..10_000 {
        let len = rng.gen_range(0..=5);
        let raw: Vec<(Rational, i64, u32)> = (0..len)
            .map(|_| {
                let num = rng.gen_range(-128i64..=128);
                let den = odd_dens[rng.gen_range(0..odd_dens.len())];
                (rat(num, den), rng.gen_range(-256i64..=256), rng.gen_range(1u32..=8))
            })
            .collect();
        let constraints: Vec<CongruenceConstraint> = raw
            .iter()
            .map(|(a, b, k)| CongruenceConstraint::new(a.clone(), *b, *k))
            .collect();
        let solutions: Vec<i64> = (0..256)
            .filter(|&e| raw.iter().all(|(a, b, k)| brute_satisfies(e, a, *b, *k)))
            .collect();
        let agrees = match solve_system(&constraints) {
            SolveResult::Solvable(class) => {
                let predicted: Vec<i64> = (0..256).filter(|&e| class.contains(&BigInt::from(e))).collect();
                predicted == solutions
            }
            SolveResult::Unsolvable(_) => solutions.is_empty(),
        };
        if !agrees {
            mismatches.push(trial);
        }
    }
    report(
        11,
        "solver vs exhaustive search on 10000 random systems",
        mismatches.is_empty(),
        &format!("{} mismatches, first trial {:?}", mismatches.len(), mismatches.first()),
    );
}
