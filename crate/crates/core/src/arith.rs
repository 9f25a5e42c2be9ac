//! Small exact-arithmetic helpers shared by the counting and witness code.

use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;

/// Working integer type. Wide enough for `k^(s+g-1) * t_l` at desk scale;
/// growth points use checked arithmetic and report [`Error::Overflow`].
pub type Int = i128;

/// Exact rational with `Int` numerator and denominator, always reduced.
pub type Rational = Ratio<Int>;

pub fn checked_pow(base: Int, exp: u32) -> Result<Int> {
    base.checked_pow(exp).ok_or(Error::Overflow("power"))
}

pub fn checked_mul(a: Int, b: Int, what: &'static str) -> Result<Int> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

/// `k^e` for a possibly negative exponent, as an exact rational.
pub fn rational_pow(k: Int, e: i64) -> Result<Rational> {
    let mag = u32::try_from(e.unsigned_abs()).map_err(|_| Error::Overflow("power"))?;
    let p = checked_pow(k, mag)?;
    Ok(if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(1, p)
    })
}

pub fn floor(x: &Rational) -> Int {
    x.numer().div_euclid(*x.denom())
}

pub fn ceil(x: &Rational) -> Int {
    -(-x.numer()).div_euclid(*x.denom())
}

/// Number of integers `x` in `[lo, hi]` with `x ≡ residue (mod modulus)`.
pub fn progression_count(lo: Int, hi: Int, residue: Int, modulus: Int) -> Int {
    debug_assert!(modulus > 0);
    if lo > hi {
        return 0;
    }
    (hi - residue).div_euclid(modulus) - (lo - 1 - residue).div_euclid(modulus)
}

/// Solution set of `coef * x ≡ target (mod modulus)` as `(residue, step)`,
/// or `None` when there is no solution. `modulus` must be positive.
pub fn solve_linear_congruence(coef: Int, target: Int, modulus: Int) -> Option<(Int, Int)> {
    let g = coef.gcd(&modulus);
    if target.mod_floor(&g) != 0 {
        return None;
    }
    let step = modulus / g;
    if step == 1 {
        return Some((0, 1));
    }
    let c = (coef / g).mod_floor(&step);
    let t = (target / g).mod_floor(&step);
    let inv = Int::extended_gcd(&c, &step).x.mod_floor(&step);
    Some(((inv * t).mod_floor(&step), step))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_ceil_on_negatives() {
        let x = Rational::new(-7, 2);
        assert_eq!(floor(&x), -4);
        assert_eq!(ceil(&x), -3);
        assert_eq!(floor(&Rational::from_integer(5)), 5);
        assert_eq!(ceil(&Rational::from_integer(5)), 5);
    }

    #[test]
    fn progression_count_matches_scan() {
        for modulus in 1..6 {
            for residue in 0..modulus {
                for lo in -7..7 {
                    for hi in -7..9 {
                        let brute = (lo..=hi).filter(|x| (x - residue) % modulus == 0).count();
                        assert_eq!(progression_count(lo, hi, residue, modulus), brute as Int);
                    }
                }
            }
        }
    }

    #[test]
    fn congruence_solutions() {
        for modulus in 1..12i128 {
            for coef in 1..15 {
                for target in -5..20 {
                    let brute: Vec<Int> = (0..modulus)
                        .filter(|x| (coef * x - target).rem_euclid(modulus) == 0)
                        .collect();
                    match solve_linear_congruence(coef, target, modulus) {
                        None => assert!(brute.is_empty()),
                        Some((res, step)) => {
                            let expect: Vec<Int> =
                                (0..modulus).filter(|x| (x - res) % step == 0).collect();
                            assert_eq!(brute, expect, "{coef} x = {target} mod {modulus}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn negative_powers() {
        assert_eq!(rational_pow(2, -3).unwrap(), Rational::new(1, 8));
        assert_eq!(rational_pow(3, 2).unwrap(), Rational::from_integer(9));
        assert!(rational_pow(10, 60).is_err());
    }
}
