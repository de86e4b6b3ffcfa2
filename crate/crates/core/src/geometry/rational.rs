//! Rational helpers and exact decimal rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Exact arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Number of decimal digits used in reports unless configured otherwise.
pub const DEFAULT_DIGITS: usize = 40;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `10^-exponent` as an exact rational.
pub fn pow10_inv(exponent: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u32).pow(exponent))
}

pub fn pow10(exponent: usize) -> BigInt {
    num_traits::pow(BigInt::from(10u32), exponent)
}

/// Largest integer `<= q`.
pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Smallest integer `>= q`.
pub fn ceil(q: &Rational) -> BigInt {
    -(-q.numer()).div_floor(q.denom())
}

/// Integer square root of the floor of a nonnegative rational, i.e.
/// `floor(sqrt(q))`.
pub fn floor_sqrt(q: &Rational) -> BigInt {
    debug_assert!(!q.is_negative());
    floor(q).sqrt()
}

/// Exact square root when `q` is the square of a rational.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Rounds `scaled` (already multiplied by `10^digits`) to an integer, half to
/// even, given its floor and how the fractional part compares with 1/2.
pub(crate) fn round_half_even(floor: BigInt, frac_vs_half: Ordering) -> BigInt {
    match frac_vs_half {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

/// Formats `units / 10^digits` as a fixed-point decimal string.
pub fn format_scaled(units: &BigInt, digits: usize) -> String {
    let negative = units.is_negative();
    let mut body = units.abs().to_string();
    if digits > 0 {
        if body.len() <= digits {
            body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
        }
        body.insert(body.len() - digits, '.');
    }
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Decimal rendering of a rational with `digits` fractional digits, rounded
/// half to even.
pub fn to_decimal(q: &Rational, digits: usize) -> String {
    let scaled = q * Rational::from_integer(pow10(digits));
    let fl = floor(&scaled);
    let frac = &scaled - Rational::from_integer(fl.clone());
    let units = round_half_even(fl, frac.cmp(&rat(1, 2)));
    format_scaled(&units, digits)
}

/// Decimal rendering of `sqrt(q)` for a nonnegative rational `q`, rounded
/// half to even.
pub fn sqrt_to_decimal(q: &Rational, digits: usize) -> String {
    let scale = Rational::from_integer(pow10(2 * digits));
    let scaled = q * scale;
    let fl = floor_sqrt(&scaled);
    // compare sqrt(scaled) with fl + 1/2 by squaring
    let half = Rational::from_integer(fl.clone()) + rat(1, 2);
    let units = round_half_even(fl, scaled.cmp(&(&half * &half)));
    format_scaled(&units, digits)
}

/// Lower and upper rational bounds on `sqrt(q)` whose gap is `10^-digits`.
pub fn sqrt_bounds(q: &Rational, digits: usize) -> (Rational, Rational) {
    let scale = pow10(digits);
    let scaled = q * Rational::from_integer(&scale * &scale);
    let fl = floor_sqrt(&scaled);
    let lo = Rational::new(fl.clone(), scale.clone());
    let hi = if Rational::from_integer(&fl * &fl) == scaled {
        lo.clone()
    } else {
        Rational::new(fl + 1, scale)
    };
    (lo, hi)
}

pub fn is_zero(q: &Rational) -> bool {
    q.is_zero()
}
