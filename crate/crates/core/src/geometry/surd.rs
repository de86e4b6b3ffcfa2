//! Exact quadratic irrationals `a + b·√d` with rational `a`, `b`, `d`.
//!
//! Hausdorff critical points can sit where two distance parabolas cross, and
//! those parameters are roots of rational quadratics. Values at such points
//! live in `Q(√d)`. Comparisons between different fields are decided exactly
//! by sign analysis, so no floating point enters any decision.

use super::rational::{self, exact_sqrt, floor, floor_sqrt, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `rational + coeff * sqrt(radicand)`.
///
/// Canonical form: either `coeff == 0 && radicand == 0` (a plain rational), or
/// `coeff != 0` and `radicand` is a positive rational that is not a square.
#[derive(Clone, Debug)]
pub struct Surd {
    rational: Rational,
    coeff: Rational,
    radicand: Rational,
}

fn sign_of(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `a + b·√d`, `d >= 0`.
fn sign_rat_root(a: &Rational, b: &Rational, d: &Rational) -> i8 {
    let sa = sign_of(a);
    let sb = if d.is_zero() { 0 } else { sign_of(b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(b * b * d)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// Sign of `x·√d1 + y·√d2`.
fn sign_two_roots(x: &Rational, d1: &Rational, y: &Rational, d2: &Rational) -> i8 {
    let sx = if d1.is_zero() { 0 } else { sign_of(x) };
    let sy = if d2.is_zero() { 0 } else { sign_of(y) };
    if sx == 0 {
        return sy;
    }
    if sy == 0 || sx == sy {
        return sx;
    }
    match (x * x * d1).cmp(&(y * y * d2)) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => 0,
    }
}

impl Surd {
    pub fn from_rational(q: Rational) -> Self {
        Surd {
            rational: q,
            coeff: Rational::zero(),
            radicand: Rational::zero(),
        }
    }

    /// Builds `a + b·√d`, folding square radicands into the rational part.
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if b.is_zero() || d.is_zero() {
            return Surd::from_rational(a);
        }
        if let Some(root) = exact_sqrt(&d) {
            return Surd::from_rational(a + b * root);
        }
        Surd {
            rational: a,
            coeff: b,
            radicand: d,
        }
    }

    /// Same-field constructor: `d` is already known to be zero or a non-square.
    fn in_field(a: Rational, b: Rational, d: Rational) -> Self {
        if b.is_zero() || d.is_zero() {
            return Surd::from_rational(a);
        }
        Surd {
            rational: a,
            coeff: b,
            radicand: d,
        }
    }

    pub fn zero() -> Self {
        Surd::from_rational(Rational::zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeff.is_zero() {
            Some(&self.rational)
        } else {
            None
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    fn field_with<'a>(&'a self, other: &'a Surd) -> &'a Rational {
        if self.radicand.is_zero() {
            &other.radicand
        } else {
            assert!(
                other.radicand.is_zero() || other.radicand == self.radicand,
                "arithmetic across distinct quadratic fields"
            );
            &self.radicand
        }
    }

    pub fn add(&self, other: &Surd) -> Surd {
        let d = self.field_with(other).clone();
        Surd::in_field(&self.rational + &other.rational, &self.coeff + &other.coeff, d)
    }

    pub fn sub(&self, other: &Surd) -> Surd {
        let d = self.field_with(other).clone();
        Surd::in_field(&self.rational - &other.rational, &self.coeff - &other.coeff, d)
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        let d = self.field_with(other).clone();
        let a = &self.rational * &other.rational + &self.coeff * &other.coeff * &d;
        let b = &self.rational * &other.coeff + &self.coeff * &other.rational;
        Surd::in_field(a, b, d)
    }

    pub fn scale(&self, k: &Rational) -> Surd {
        Surd::in_field(&self.rational * k, &self.coeff * k, self.radicand.clone())
    }

    pub fn add_rational(&self, k: &Rational) -> Surd {
        Surd::in_field(&self.rational + k, self.coeff.clone(), self.radicand.clone())
    }

    pub fn signum(&self) -> i8 {
        sign_rat_root(&self.rational, &self.coeff, &self.radicand)
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        sign_rat_root(&(&self.rational - q), &self.coeff, &self.radicand).cmp(&0)
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        let Some(q) = self.as_rational() else {
            let magnitude = floor_sqrt(&(&self.coeff * &self.coeff * &self.radicand));
            let base = floor(&self.rational);
            let mut k = if self.coeff.is_positive() {
                base + magnitude
            } else {
                base - magnitude - 1
            };
            while self.cmp_rational(&Rational::from_integer(&k + 1)) != Ordering::Less {
                k += 1;
            }
            while self.cmp_rational(&Rational::from_integer(k.clone())) == Ordering::Less {
                k -= 1;
            }
            return k;
        };
        floor(q)
    }

    /// Decimal rendering with `digits` fractional digits, rounded half to even.
    pub fn to_decimal(&self, digits: usize) -> String {
        if let Some(q) = self.as_rational() {
            return rational::to_decimal(q, digits);
        }
        let scaled = self.scale(&Rational::from_integer(rational::pow10(digits)));
        let fl = scaled.floor();
        let half = Rational::from_integer(fl.clone()) + rational::rat(1, 2);
        let units = rational::round_half_even(fl, scaled.cmp_rational(&half));
        rational::format_scaled(&units, digits)
    }

    /// Decimal rendering of the square root of a nonnegative value.
    pub fn sqrt_to_decimal(&self, digits: usize) -> String {
        debug_assert!(!self.is_negative());
        if let Some(q) = self.as_rational() {
            return rational::sqrt_to_decimal(q, digits);
        }
        let scale = Rational::from_integer(rational::pow10(2 * digits));
        let scaled = self.scale(&scale);
        let fl = scaled.floor().sqrt();
        let half = Rational::from_integer(fl.clone()) + rational::rat(1, 2);
        let units = rational::round_half_even(fl, scaled.cmp_rational(&(&half * &half)));
        rational::format_scaled(&units, digits)
    }

    /// Rational bounds `lo <= sqrt(self) <= hi` with `hi - lo <= 10^-digits`.
    pub fn sqrt_bounds(&self, digits: usize) -> (Rational, Rational) {
        if let Some(q) = self.as_rational() {
            return rational::sqrt_bounds(q, digits);
        }
        let scale = rational::pow10(digits);
        let scaled = self.scale(&Rational::from_integer(&scale * &scale));
        let fl = scaled.floor().sqrt();
        let lo = Rational::new(fl.clone(), scale.clone());
        let hi = Rational::new(fl + BigInt::one(), scale);
        (lo, hi)
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = &self.rational - &other.rational;
        let same_field = self.radicand.is_zero()
            || other.radicand.is_zero()
            || self.radicand == other.radicand;
        let s = if same_field {
            let d = if self.radicand.is_zero() {
                &other.radicand
            } else {
                &self.radicand
            };
            sign_rat_root(&a, &(&self.coeff - &other.coeff), d)
        } else {
            let x = &self.coeff;
            let y = -&other.coeff;
            let (d1, d2) = (&self.radicand, &other.radicand);
            let sv = sign_two_roots(x, d1, &y, d2);
            let sa = sign_of(&a);
            if sa == 0 {
                sv
            } else if sv == 0 || sv == sa {
                sa
            } else {
                // opposite signs: compare a^2 with (x√d1 + y√d2)^2
                let r = &a * &a - x * x * d1 - &y * &y * d2;
                let t = sign_rat_root(&r, &(x * &y * rational::int(-2)), &(d1 * d2));
                match t.cmp(&0) {
                    Ordering::Greater => sa,
                    Ordering::Less => sv,
                    Ordering::Equal => 0,
                }
            }
        };
        s.cmp(&0)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Surd {}

impl From<Rational> for Surd {
    fn from(q: Rational) -> Self {
        Surd::from_rational(q)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            write!(f, "{}", self.rational)
        } else if self.rational.is_zero() {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rational, self.coeff, self.radicand)
        }
    }
}

/// Real roots of `a·u² + b·u + c = 0` (not all coefficients zero).
pub fn quadratic_roots(a: &Rational, b: &Rational, c: &Rational) -> Vec<Surd> {
    if a.is_zero() {
        if b.is_zero() {
            return Vec::new();
        }
        return vec![Surd::from_rational(-c / b)];
    }
    let disc = b * b - rational::int(4) * a * c;
    if disc.is_negative() {
        return Vec::new();
    }
    let two_a = a * rational::int(2);
    let base = -b / &two_a;
    if disc.is_zero() {
        return vec![Surd::from_rational(base)];
    }
    let k = Rational::one() / &two_a;
    vec![
        Surd::new(base.clone(), -k.clone(), disc.clone()),
        Surd::new(base, k, disc),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::{int, rat};

    fn approx(s: &Surd) -> f64 {
        s.to_decimal(15).parse().unwrap()
    }

    #[test]
    fn square_radicand_folds() {
        let s = Surd::new(int(1), int(2), rat(9, 4));
        assert_eq!(s.as_rational(), Some(&int(4)));
    }

    #[test]
    fn cross_field_ordering_matches_floats() {
        // sqrt(2) + sqrt(3) vs sqrt(10)
        let a = Surd::new(int(0), int(1), int(2)).add_rational(&int(0));
        let b = Surd::new(int(0), int(1), int(10));
        assert!(a < b);
        let c = Surd::new(rat(3, 2), int(1), int(3));
        let d = Surd::new(int(2), int(1), int(2));
        assert_eq!(
            c.cmp(&d),
            approx(&c).partial_cmp(&approx(&d)).unwrap(),
            "{c} vs {d}"
        );
        let e = Surd::new(int(5), int(-2), int(6));
        assert!((approx(&e) - (5.0 - 2.0 * 6f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn floor_of_irrational() {
        assert_eq!(Surd::new(int(0), int(1), int(2)).floor(), BigInt::from(1));
        assert_eq!(Surd::new(int(0), int(-1), int(2)).floor(), BigInt::from(-2));
        assert_eq!(Surd::new(rat(1, 2), int(3), int(5)).floor(), BigInt::from(7));
    }

    #[test]
    fn quadratic_roots_cover_cases() {
        // u^2 + 6u + 3 = 0 -> -3 ± sqrt(6)
        let r = quadratic_roots(&int(1), &int(6), &int(3));
        assert_eq!(r.len(), 2);
        assert!((approx(&r[1]) - (-3.0 + 6f64.sqrt())).abs() < 1e-12);
        assert_eq!(quadratic_roots(&int(0), &int(2), &int(-1)), vec![Surd::from(rat(1, 2))]);
        assert!(quadratic_roots(&int(1), &int(0), &int(1)).is_empty());
        assert_eq!(quadratic_roots(&int(1), &int(-2), &int(1)).len(), 1);
    }

    #[test]
    fn sqrt_decimal_of_surd() {
        // sqrt(3 + sqrt(2)) ≈ 2.101003...
        let s = Surd::new(int(3), int(1), int(2));
        let expect = (3.0 + 2f64.sqrt()).sqrt();
        let got: f64 = s.sqrt_to_decimal(12).parse().unwrap();
        assert!((got - expect).abs() < 1e-11);
        let (lo, hi) = s.sqrt_bounds(10);
        assert!(Surd::from(&lo * &lo) <= s && s <= Surd::from(&hi * &hi));
    }
}
