use super::rational::Rational;
use super::GeometryError;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn origin() -> Self {
        Point2::new(Rational::zero(), Rational::zero())
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn sub(&self, other: &Point2) -> Point2 {
        Point2::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, other: &Point2) -> Point2 {
        Point2::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn scale(&self, k: &Rational) -> Point2 {
        Point2::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, other: &Point2) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn cross(&self, other: &Point2) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn dist_sq(&self, other: &Point2) -> Rational {
        self.sub(other).norm_sq()
    }

    /// `(1 - t)·self + t·other`.
    pub fn lerp(&self, other: &Point2, t: &Rational) -> Point2 {
        self.add(&other.sub(self).scale(t))
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Orientation of the triple: `Greater` for counterclockwise.
pub fn orient(a: &Point2, b: &Point2, c: &Point2) -> Ordering {
    // unnormalized fractions with positive denominators; no gcd
    let diff = |p: &Rational, q: &Rational| {
        (p.numer() * q.denom() - q.numer() * p.denom(), p.denom() * q.denom())
    };
    let (ux, uxd) = diff(&b.x, &a.x);
    let (uy, uyd) = diff(&b.y, &a.y);
    let (vx, vxd) = diff(&c.x, &a.x);
    let (vy, vyd) = diff(&c.y, &a.y);
    let lhs = ux * &vy * (&uyd * &vxd);
    let rhs = uy * &vx * (uxd * vyd);
    lhs.cmp(&rhs)
}

/// A closed, non-degenerate line segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    a: Point2,
    b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Result<Self, GeometryError> {
        if a == b {
            return Err(GeometryError::DegenerateSegment(a));
        }
        Ok(Segment { a, b })
    }

    pub fn a(&self) -> &Point2 {
        &self.a
    }

    pub fn b(&self) -> &Point2 {
        &self.b
    }

    pub fn direction(&self) -> Point2 {
        self.b.sub(&self.a)
    }

    pub fn length_sq(&self) -> Rational {
        self.direction().norm_sq()
    }

    pub fn reversed(&self) -> Segment {
        Segment {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// Exact point-on-closed-segment test.
    pub fn contains(&self, q: &Point2) -> bool {
        self.within_box(q) && orient(&self.a, &self.b, q) == Ordering::Equal
    }

    fn within_box(&self, q: &Point2) -> bool {
        let (lx, hx) = min_max(&self.a.x, &self.b.x);
        let (ly, hy) = min_max(&self.a.y, &self.b.y);
        lx <= &q.x && &q.x <= hx && ly <= &q.y && &q.y <= hy
    }

    /// Parameter `t` with `a + t·(b - a) = q`, for `q` on the supporting line.
    pub fn fraction_of(&self, q: &Point2) -> Rational {
        let d = self.direction();
        d.dot(&q.sub(&self.a)) / d.norm_sq()
    }

    pub fn point_at(&self, t: &Rational) -> Point2 {
        self.a.lerp(&self.b, t)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

fn min_max<'a>(u: &'a Rational, v: &'a Rational) -> (&'a Rational, &'a Rational) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Exact squared distance from `q` to the closed segment.
pub fn point_segment_distance_sq(q: &Point2, s: &Segment) -> Rational {
    let t = s.fraction_of(q);
    let t = if t.is_negative() {
        Rational::zero()
    } else if t > Rational::one() {
        Rational::one()
    } else {
        t
    };
    q.dist_sq(&s.point_at(&t))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    Point(Point2),
    /// Collinear overlap; endpoints are in lexicographic order.
    Segment(Point2, Point2),
}

impl Intersection {
    pub fn is_empty(&self) -> bool {
        matches!(self, Intersection::Empty)
    }
}

pub fn segments_intersect(s1: &Segment, s2: &Segment) -> Intersection {
    let d1 = orient(&s1.a, &s1.b, &s2.a);
    let d2 = orient(&s1.a, &s1.b, &s2.b);
    if d1 == Ordering::Equal && d2 == Ordering::Equal {
        return collinear_overlap(s1, s2);
    }
    let d3 = orient(&s2.a, &s2.b, &s1.a);
    let d4 = orient(&s2.a, &s2.b, &s1.b);
    let straddles = |p: Ordering, q: Ordering| p == Ordering::Equal || q == Ordering::Equal || p != q;
    if !(straddles(d1, d2) && straddles(d3, d4)) {
        return Intersection::Empty;
    }
    let v1 = s1.direction();
    let v2 = s2.direction();
    let denom = v1.cross(&v2);
    debug_assert!(!denom.is_zero());
    let t = s2.a.sub(&s1.a).cross(&v2) / denom;
    Intersection::Point(s1.point_at(&t))
}

fn collinear_overlap(s1: &Segment, s2: &Segment) -> Intersection {
    let t3 = s1.fraction_of(&s2.a);
    let t4 = s1.fraction_of(&s2.b);
    let (lo2, hi2) = min_max(&t3, &t4);
    let zero = Rational::zero();
    let one = Rational::one();
    let lo = if lo2 > &zero { lo2.clone() } else { zero };
    let hi = if hi2 < &one { hi2.clone() } else { one };
    match lo.cmp(&hi) {
        Ordering::Greater => Intersection::Empty,
        Ordering::Equal => Intersection::Point(s1.point_at(&lo)),
        Ordering::Less => {
            let p = s1.point_at(&lo);
            let q = s1.point_at(&hi);
            if p <= q {
                Intersection::Segment(p, q)
            } else {
                Intersection::Segment(q, p)
            }
        }
    }
}
