//! Solvability of `e * a_i ≡ b_i (mod 2^k_i)` over one integer unknown `e`.
//!
//! Coefficients are rationals and the congruences are read 2-adically:
//! `e * a ≡ b (mod 2^k)` means `nu(e * a - b) >= k`. Every constraint reduces
//! to "always", "never", or a single residue class modulo a power of 2, and
//! classes modulo powers of 2 are nested, so a system is consistent exactly
//! when its classes agree pairwise.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::dyadic::{nu_bigint, nu_rational, Rational, Valuation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceConstraint {
    pub coefficient: Rational,
    pub target: BigInt,
    /// The `k` in `mod 2^k`; at least 1.
    pub modulus_exponent: u32,
}

impl CongruenceConstraint {
    pub fn new(coefficient: Rational, target: impl Into<BigInt>, modulus_exponent: u32) -> Self {
        assert!(modulus_exponent >= 1, "modulus exponent must be at least 1");
        CongruenceConstraint {
            coefficient,
            target: target.into(),
            modulus_exponent,
        }
    }

    /// Direct check `nu(e * a - b) >= k` with exact rationals.
    pub fn is_satisfied_by(&self, e: &BigInt) -> bool {
        let diff = Rational::from_integer(e.clone()) * &self.coefficient
            - Rational::from_integer(self.target.clone());
        nu_rational(&diff) >= Valuation::Finite(i64::from(self.modulus_exponent))
    }
}

impl fmt::Display for CongruenceConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "e*({}) ≡ {} (mod 2^{})",
            self.coefficient, self.target, self.modulus_exponent
        )
    }
}

/// `e ≡ residue (mod 2^exponent)`, with `0 <= residue < 2^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClass {
    pub residue: BigInt,
    pub exponent: u32,
}

impl ResidueClass {
    pub fn new(residue: BigInt, exponent: u32) -> Self {
        let residue = residue.mod_floor(&pow2(exponent));
        ResidueClass { residue, exponent }
    }

    /// All integers.
    pub fn everything() -> Self {
        ResidueClass {
            residue: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn contains(&self, e: &BigInt) -> bool {
        (e - &self.residue).mod_floor(&pow2(self.exponent)).is_zero()
    }

    /// Two classes intersect iff they agree modulo the smaller modulus.
    pub fn compatible_with(&self, other: &ResidueClass) -> bool {
        let m = pow2(self.exponent.min(other.exponent));
        (&self.residue - &other.residue).mod_floor(&m).is_zero()
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e ≡ {} (mod {})", self.residue, pow2(self.exponent))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduced {
    /// Holds for every integer `e`.
    Always,
    /// Holds for no integer `e`.
    Never,
    Class(ResidueClass),
}

/// Which constraints witness an unsolvable system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conflict {
    Single(usize),
    Pair(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    /// The integer solutions are exactly this class.
    Solvable(ResidueClass),
    Unsolvable(Conflict),
}

impl SolveResult {
    pub fn is_solvable(&self) -> bool {
        matches!(self, SolveResult::Solvable(_))
    }
}

impl fmt::Display for SolveResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveResult::Solvable(class) => write!(f, "Solvable: {class}"),
            SolveResult::Unsolvable(Conflict::Single(i)) => {
                write!(f, "Unsolvable: constraint {i} cannot hold for any integer e")
            }
            SolveResult::Unsolvable(Conflict::Pair(i, j)) => {
                write!(f, "Unsolvable: constraints {i} and {j} force incompatible residue classes")
            }
        }
    }
}

fn pow2(exponent: u32) -> BigInt {
    BigInt::one() << exponent as usize
}

/// Inverse of an odd integer modulo `2^exponent`.
fn inverse_odd(u: &BigInt, exponent: u32) -> BigInt {
    let m = pow2(exponent);
    let u = u.mod_floor(&m);
    // Newton iteration x <- x (2 - u x); x = u is correct modulo 8.
    let mut x = u.clone();
    let mut correct_bits = 3;
    while correct_bits < exponent {
        x = (&x * (BigInt::from(2) - &u * &x)).mod_floor(&m);
        correct_bits *= 2;
    }
    x.mod_floor(&m)
}

/// Reduce one constraint to its solution set.
///
/// With `s = nu(a)`: if `s >= k` (including `a = 0`) the left side vanishes
/// modulo `2^k` and only `nu(b) >= k` matters. Otherwise `nu(b) >= s` is
/// needed and the constraint is `e ≡ (b / 2^s) * u^-1 (mod 2^(k - s))` with
/// `u = a / 2^s` a 2-adic unit.
pub fn reduce_constraint(c: &CongruenceConstraint) -> Reduced {
    let k = i64::from(c.modulus_exponent);
    let s = match nu_rational(&c.coefficient) {
        Valuation::Finite(s) if s < k => s,
        _ => {
            return if nu_bigint(&c.target) >= Valuation::Finite(k) {
                Reduced::Always
            } else {
                Reduced::Never
            };
        }
    };
    if nu_bigint(&c.target) < Valuation::Finite(s) {
        return Reduced::Never;
    }
    let exponent = (k - s) as u32;
    let shifted_target = if s >= 0 {
        &c.target >> s as usize
    } else {
        &c.target << (-s) as usize
    };
    // odd parts of the coefficient's numerator and denominator
    let numer = c.coefficient.numer() >> nu_bigint(c.coefficient.numer()).finite().unwrap() as usize;
    let denom = c.coefficient.denom() >> nu_bigint(c.coefficient.denom()).finite().unwrap() as usize;
    let unit_inverse = denom * inverse_odd(&numer, exponent);
    Reduced::Class(ResidueClass::new(shifted_target * unit_inverse, exponent))
}

/// Intersect the solution sets of all constraints.
///
/// The conflict reported is the first one met scanning constraints in input
/// order: a constraint that can never hold, or the earliest earlier
/// constraint whose class disagrees with it.
pub fn solve_system(constraints: &[CongruenceConstraint]) -> SolveResult {
    let reduced: Vec<Reduced> = constraints.iter().map(reduce_constraint).collect();
    let mut best = ResidueClass::everything();
    for (i, r) in reduced.iter().enumerate() {
        let class = match r {
            Reduced::Always => continue,
            Reduced::Never => return SolveResult::Unsolvable(Conflict::Single(i)),
            Reduced::Class(class) => class,
        };
        for (j, earlier) in reduced[..i].iter().enumerate() {
            if let Reduced::Class(prev) = earlier {
                if !prev.compatible_with(class) {
                    return SolveResult::Unsolvable(Conflict::Pair(j, i));
                }
            }
        }
        if class.exponent > best.exponent {
            best = class.clone();
        }
    }
    SolveResult::Solvable(best)
}
