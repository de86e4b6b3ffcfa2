//! Piecewise-linear paths on `[0,1]` and the uniform (sup) metric between them.

use super::primitives::Point2;
use super::rational::Rational;
use super::surd::Surd;
use super::GeometryError;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A path `[0,1] -> R²` given by breakpoints `(t, point)` and linear
/// interpolation in between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLPath {
    breakpoints: Vec<(Rational, Point2)>,
}

impl PLPath {
    pub fn new(breakpoints: Vec<(Rational, Point2)>) -> Result<Self, GeometryError> {
        if breakpoints.len() < 2 {
            return Err(GeometryError::InvalidPath("fewer than two breakpoints".into()));
        }
        if !breakpoints[0].0.is_zero() {
            return Err(GeometryError::InvalidPath("first parameter is not 0".into()));
        }
        if !breakpoints[breakpoints.len() - 1].0.is_one() {
            return Err(GeometryError::InvalidPath("last parameter is not 1".into()));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(GeometryError::InvalidPath(format!(
                "parameters not strictly increasing at t = {}",
                w[1].0
            )));
        }
        Ok(PLPath { breakpoints })
    }

    pub fn breakpoints(&self) -> &[(Rational, Point2)] {
        &self.breakpoints
    }

    pub fn times(&self) -> impl Iterator<Item = &Rational> {
        self.breakpoints.iter().map(|(t, _)| t)
    }

    pub fn points(&self) -> impl Iterator<Item = &Point2> {
        self.breakpoints.iter().map(|(_, p)| p)
    }

    pub fn start(&self) -> &Point2 {
        &self.breakpoints[0].1
    }

    pub fn end(&self) -> &Point2 {
        &self.breakpoints[self.breakpoints.len() - 1].1
    }

    pub fn eval(&self, t: &Rational) -> Result<Point2, GeometryError> {
        if t.is_negative() || t > &Rational::one() {
            return Err(GeometryError::ParameterOutOfRange(t.clone()));
        }
        // index of the first breakpoint with time >= t
        let idx = self.breakpoints.partition_point(|(s, _)| s < t);
        let (t1, p1) = &self.breakpoints[idx];
        if t1 == t {
            return Ok(p1.clone());
        }
        let (t0, p0) = &self.breakpoints[idx - 1];
        Ok(p0.lerp(p1, &((t - t0) / (t1 - t0))))
    }

    /// `t ↦ self(1 - t)`.
    pub fn reversed(&self) -> PLPath {
        let one = Rational::one();
        let breakpoints = self
            .breakpoints
            .iter()
            .rev()
            .map(|(t, p)| (&one - t, p.clone()))
            .collect();
        PLPath { breakpoints }
    }

    /// Half-speed concatenation; requires `self.end() == other.start()`.
    pub fn concat(&self, other: &PLPath) -> Result<PLPath, GeometryError> {
        if self.end() != other.start() {
            return Err(GeometryError::InvalidPath("concatenated paths do not meet".into()));
        }
        let half = Rational::new(1.into(), 2.into());
        let mut breakpoints: Vec<_> = self
            .breakpoints
            .iter()
            .map(|(t, p)| (t * &half, p.clone()))
            .collect();
        breakpoints.extend(
            other.breakpoints[1..]
                .iter()
                .map(|(t, p)| (&half + t * &half, p.clone())),
        );
        Ok(PLPath { breakpoints })
    }

    /// The path `s ↦ self(phi(s))` for a nondecreasing PL map `phi` of `[0,1]`
    /// onto itself, given by its breakpoints `(s, phi(s))`. Flat pieces of
    /// `phi` produce pauses.
    pub fn reparametrize(&self, phi: &[(Rational, Rational)]) -> Result<PLPath, GeometryError> {
        let phi_path = PLPath::new(
            phi.iter()
                .map(|(s, t)| (s.clone(), Point2::new(t.clone(), Rational::zero())))
                .collect(),
        )?;
        let (first, last) = (&phi[0].1, &phi[phi.len() - 1].1);
        if !first.is_zero() || !last.is_one() || phi.windows(2).any(|w| w[0].1 > w[1].1) {
            return Err(GeometryError::InvalidPath(
                "reparametrization must be nondecreasing from 0 onto 1".into(),
            ));
        }
        let mut params: Vec<Rational> = phi.iter().map(|(s, _)| s.clone()).collect();
        for w in phi.windows(2) {
            let ((s0, t0), (s1, t1)) = (&w[0], &w[1]);
            if t0 == t1 {
                continue;
            }
            for (t, _) in &self.breakpoints {
                if t0 < t && t < t1 {
                    params.push(s0 + (t - t0) * (s1 - s0) / (t1 - t0));
                }
            }
        }
        params.sort();
        params.dedup();
        let breakpoints = params
            .into_iter()
            .map(|s| {
                let t = phi_path.eval(&s)?.x;
                Ok((s, self.eval(&t)?))
            })
            .collect::<Result<Vec<_>, GeometryError>>()?;
        PLPath::new(breakpoints)
    }
}

impl fmt::Display for PLPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (t, p)) in self.breakpoints.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {}, {})", t, p.x, p.y)?;
        }
        write!(f, "]")
    }
}

/// An exact squared distance, with decimal renderings of the distance itself.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SqDistance(Surd);

impl SqDistance {
    pub fn new(value: Surd) -> Self {
        debug_assert!(!value.is_negative());
        SqDistance(value)
    }

    pub fn from_rational(q: Rational) -> Self {
        SqDistance::new(Surd::from_rational(q))
    }

    pub fn squared(&self) -> &Surd {
        &self.0
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.0.as_rational()
    }

    pub fn is_zero(&self) -> bool {
        self.0.signum() == 0
    }

    /// Compares the (unsquared) distance with a nonnegative rational bound.
    pub fn cmp_distance(&self, bound: &Rational) -> std::cmp::Ordering {
        self.0.cmp_rational(&(bound * bound))
    }

    pub fn distance_decimal(&self, digits: usize) -> String {
        self.0.sqrt_to_decimal(digits)
    }

    pub fn squared_decimal(&self, digits: usize) -> String {
        self.0.to_decimal(digits)
    }

    /// Rational bounds on the distance with gap at most `10^-digits`.
    pub fn distance_bounds(&self, digits: usize) -> (Rational, Rational) {
        self.0.sqrt_bounds(digits)
    }
}

impl fmt::Display for SqDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Exact `sup_t |f(t) - g(t)|`, returned squared.
///
/// On every interval of the common refinement both paths are affine in `t`,
/// so `|f - g|` is convex there and the maximum sits at a refined breakpoint.
pub fn sup_distance(f: &PLPath, g: &PLPath) -> SqDistance {
    let mut params: Vec<&Rational> = f.times().chain(g.times()).collect();
    params.sort();
    params.dedup();
    let best = params
        .into_iter()
        .map(|t| {
            let a = f.eval(t).expect("refined parameter in range");
            let b = g.eval(t).expect("refined parameter in range");
            a.dist_sq(&b)
        })
        .max()
        .expect("at least two parameters");
    SqDistance::from_rational(best)
}
