//! Exact Hausdorff distance between finite unions of segments.
//!
//! For a source segment `x(u) = a + u·(b - a)`, the squared distance to each
//! target feature is a quadratic in `u`: to a target vertex everywhere, to a
//! target's supporting line where the foot of the perpendicular lands inside
//! it. The distance to one target segment is convex in `u`; between
//! consecutive critical parameters (crossovers between features of distinct
//! targets, and foot boundaries) the nearest target is fixed, so the envelope
//! is convex there too, so the maximum of the lower envelope is attained at a critical
//! parameter. Crossovers are roots of rational quadratics and are handled
//! exactly as [`Surd`] values.

use super::path::SqDistance;
use super::primitives::{Point2, Segment};
use super::rational::Rational;
use super::surd::{quadratic_roots, Surd};
use super::GeometryError;
use num_traits::{One, Zero};

/// `a·u² + b·u + c`.
#[derive(Clone, Debug, PartialEq)]
struct Quadratic {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl Quadratic {
    fn eval(&self, u: &Surd) -> Surd {
        let u2 = u.mul(u);
        u2.scale(&self.a).add(&u.scale(&self.b)).add_rational(&self.c)
    }

    fn minus(&self, other: &Quadratic) -> Quadratic {
        Quadratic {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            c: &self.c - &other.c,
        }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }
}

/// Squared distance from `x(u)` to a fixed vertex.
fn vertex_quadratic(source: &Segment, vertex: &Point2) -> Quadratic {
    let d = source.direction();
    let w = source.a().sub(vertex);
    Quadratic {
        a: d.norm_sq(),
        b: w.dot(&d) * Rational::from_integer(2.into()),
        c: w.norm_sq(),
    }
}

/// Squared distance from `x(u)` to the supporting line of `target`.
fn line_quadratic(source: &Segment, target: &Segment) -> Quadratic {
    let v = target.direction();
    let len = v.norm_sq();
    let alpha = v.cross(&source.a().sub(target.a()));
    let beta = v.cross(&source.direction());
    Quadratic {
        a: &beta * &beta / &len,
        b: &alpha * &beta * Rational::from_integer(2.into()) / &len,
        c: &alpha * &alpha / &len,
    }
}

struct TargetFeatures {
    line: Quadratic,
    start: Quadratic,
    end: Quadratic,
    /// `foot(u) = foot_offset + u·foot_slope` is the target-segment parameter
    /// of the perpendicular foot from `x(u)`.
    foot_offset: Rational,
    foot_slope: Rational,
}

impl TargetFeatures {
    fn new(source: &Segment, target: &Segment) -> Self {
        let v = target.direction();
        let len = v.norm_sq();
        TargetFeatures {
            line: line_quadratic(source, target),
            start: vertex_quadratic(source, target.a()),
            end: vertex_quadratic(source, target.b()),
            foot_offset: v.dot(&source.a().sub(target.a())) / &len,
            foot_slope: v.dot(&source.direction()) / len,
        }
    }

    fn distance_sq_at(&self, u: &Surd) -> Surd {
        let foot = u.scale(&self.foot_slope).add_rational(&self.foot_offset);
        if foot.signum() >= 0 && foot.cmp_rational(&Rational::one()).is_le() {
            self.line.eval(u)
        } else {
            let s = self.start.eval(u);
            let e = self.end.eval(u);
            if s <= e {
                s
            } else {
                e
            }
        }
    }
}

fn in_unit_interval(u: &Surd) -> bool {
    u.signum() >= 0 && u.cmp_rational(&Rational::one()).is_le()
}

/// Directed squared distance `max_{x in source} min_{y in targets} |x - y|²`.
pub fn directed_distance_sq(source: &Segment, targets: &[Segment]) -> Surd {
    let features: Vec<TargetFeatures> =
        targets.iter().map(|t| TargetFeatures::new(source, t)).collect();

    let mut candidates = vec![Surd::zero(), Surd::from_rational(Rational::one())];
    for f in &features {
        if !f.foot_slope.is_zero() {
            for boundary in [Rational::zero(), Rational::one()] {
                candidates.push(Surd::from_rational((boundary - &f.foot_offset) / &f.foot_slope));
            }
        }
    }
    // The true distance to a single target segment is convex in u, so only
    // crossovers between features of different targets can be local maxima.
    for (i, fi) in features.iter().enumerate() {
        for fj in &features[i + 1..] {
            for qi in [&fi.line, &fi.start, &fi.end] {
                for qj in [&fj.line, &fj.start, &fj.end] {
                    let diff = qi.minus(qj);
                    if diff.is_zero() {
                        continue;
                    }
                    candidates.extend(quadratic_roots(&diff.a, &diff.b, &diff.c));
                }
            }
        }
    }
    candidates.retain(in_unit_interval);
    candidates.sort();
    candidates.dedup();

    candidates
        .iter()
        .map(|u| {
            features
                .iter()
                .map(|f| f.distance_sq_at(u))
                .min()
                .expect("nonempty target set")
        })
        .max()
        .expect("endpoints are always candidates")
}

/// Exact squared Hausdorff distance between two nonempty unions of segments.
pub fn hausdorff_distance_sq(a: &[Segment], b: &[Segment]) -> Result<SqDistance, GeometryError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeometryError::EmptySet);
    }
    let forward = a.iter().map(|s| directed_distance_sq(s, b));
    let backward = b.iter().map(|s| directed_distance_sq(s, a));
    let worst = forward.chain(backward).max().expect("nonempty");
    Ok(SqDistance::new(worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::{int, rat};

    fn seg(a: (Rational, Rational), b: (Rational, Rational)) -> Segment {
        Segment::new(Point2::new(a.0, a.1), Point2::new(b.0, b.1)).unwrap()
    }

    fn alpha() -> Segment {
        seg((int(0), int(0)), (int(0), int(1)))
    }

    #[test]
    fn identical_sets() {
        let d = hausdorff_distance_sq(&[alpha()], &[alpha()]).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn parallel_unit_offset() {
        let a = seg((int(0), int(0)), (int(1), int(0)));
        let b = seg((int(0), int(1)), (int(1), int(1)));
        let d = hausdorff_distance_sq(&[a], &[b]).unwrap();
        assert_eq!(d.as_rational(), Some(&int(1)));
    }

    #[test]
    fn decomposition_does_not_matter() {
        let halves = [
            seg((int(0), int(0)), (int(0), rat(1, 3))),
            seg((int(0), rat(1, 3)), (int(0), int(1))),
        ];
        assert!(hausdorff_distance_sq(&halves, &[alpha()]).unwrap().is_zero());
        assert!(hausdorff_distance_sq(&[alpha()], &halves).unwrap().is_zero());
    }

    #[test]
    fn empty_input_rejected() {
        assert!(hausdorff_distance_sq(&[], &[alpha()]).is_err());
    }

    #[test]
    fn irrational_crossover_is_exact() {
        // Source y = 1, x in [-1, 0]; targets: the diagonal y = x and a stub
        // hanging below (-1, 0). The envelope peaks where (x-1)²/2 equals
        // (x+1)² + 1, i.e. x = -3 + sqrt(6), with value 11 - 4·sqrt(6).
        let source = seg((int(-1), int(1)), (int(0), int(1)));
        let diag = seg((int(-3), int(-3)), (int(3), int(3)));
        let stub = seg((int(-1), int(0)), (int(-1), int(-2)));
        let d = directed_distance_sq(&source, &[diag, stub]);
        assert_eq!(d, Surd::new(int(11), int(-4), int(6)));
    }
}
