//! The bouquet `X` of triangles `C_n` (n >= 2) joined at `p = (0,0)`, and its
//! closure `Y = X ∪ α` with `α = [(0,0),(0,1)]`.
//!
//! `C_n` is the boundary of the triangle with vertices `p`,
//! `B_n = (1/n, 1)` and `D_n = B_n + w_n·(n, -1)`, oriented
//! `p -> B_n -> D_n -> p`. Circles are built on demand and cached per handle.

use crate::geometry::rational::{self, ceil, pow10_inv, Rational};
use crate::geometry::{hausdorff_distance_sq, segments_intersect, Intersection, Point2, Segment, SqDistance};
use crate::report::{ProbeReport, Witness};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use thiserror::Error;

/// Largest circle index the toolkit will materialize.
pub const MAX_CIRCLE_INDEX: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("circle index must be >= 2, got {0}")]
    IndexTooSmall(u32),
    #[error("circle index {0} exceeds the supported maximum {MAX_CIRCLE_INDEX}")]
    IndexTooLarge(u64),
    #[error("width profile {profile} places C{index} outside its wedge")]
    WedgeViolation { profile: String, index: u32 },
    #[error("C{n} and C{m} meet away from p under width profile {profile}")]
    Overlap { n: u32, m: u32, profile: String },
    #[error("point {0} is the base point")]
    BasePoint(Point2),
    #[error("point {point} is not in {space}")]
    NotInSpace { point: Point2, space: String },
    #[error("{0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    BouquetX,
    CompactY,
}

impl SpaceKind {
    pub fn symbol(self) -> &'static str {
        match self {
            SpaceKind::BouquetX => "X",
            SpaceKind::CompactY => "Y",
        }
    }
}

/// The width `w_n` of the n-th triangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WidthProfile {
    /// `w_n = 10^(-10n)`.
    Pow10,
    /// `w_n = 10^(-k·n)`; a milder profile for tests.
    Decimal(u32),
    /// Constant width; only useful as a negative control.
    Constant(Rational),
}

impl WidthProfile {
    pub fn width(&self, n: u32) -> Rational {
        match self {
            WidthProfile::Pow10 => pow10_inv(10 * n),
            WidthProfile::Decimal(k) => pow10_inv(k * n),
            WidthProfile::Constant(w) => w.clone(),
        }
    }
}

impl fmt::Display for WidthProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WidthProfile::Pow10 => write!(f, "pow10"),
            WidthProfile::Decimal(k) => write!(f, "decimal({k})"),
            WidthProfile::Constant(w) => write!(f, "const({w})"),
        }
    }
}

impl FromStr for WidthProfile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "pow10" || s == "default" {
            return Ok(WidthProfile::Pow10);
        }
        let inner = |prefix: &str| s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));
        if let Some(k) = inner("decimal(") {
            let k: u32 = k.trim().parse().map_err(|_| format!("bad decimal profile `{s}`"))?;
            if k == 0 {
                return Err("decimal profile needs k >= 1".into());
            }
            return Ok(WidthProfile::Decimal(k));
        }
        if let Some(w) = inner("const(") {
            let w: Rational = w.trim().parse().map_err(|_| format!("bad constant width `{s}`"))?;
            if !w.is_positive() {
                return Err("width must be positive".into());
            }
            return Ok(WidthProfile::Constant(w));
        }
        Err(format!("unknown width profile `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Edge {
    /// `p -> B_n`
    Rise,
    /// `B_n -> D_n`
    Cap,
    /// `D_n -> p`
    Fall,
}

impl Edge {
    pub const ALL: [Edge; 3] = [Edge::Rise, Edge::Cap, Edge::Fall];

    pub fn index(self) -> usize {
        match self {
            Edge::Rise => 0,
            Edge::Cap => 1,
            Edge::Fall => 2,
        }
    }

    pub fn touches_base(self) -> bool {
        self != Edge::Cap
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Edge::Rise => "p->B",
            Edge::Cap => "B->D",
            Edge::Fall => "D->p",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circle {
    index: u32,
    width: Rational,
    vertices: [Point2; 3],
    edges: [Segment; 3],
    edge_lengths_sq: [Rational; 3],
}

impl Circle {
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn width(&self) -> &Rational {
        &self.width
    }

    pub fn base(&self) -> &Point2 {
        &self.vertices[0]
    }

    /// `B_n = (1/n, 1)`.
    pub fn apex(&self) -> &Point2 {
        &self.vertices[1]
    }

    /// `D_n = B_n + w_n·(n, -1)`.
    pub fn corner(&self) -> &Point2 {
        &self.vertices[2]
    }

    pub fn vertices(&self) -> &[Point2; 3] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Segment; 3] {
        &self.edges
    }

    pub fn edge(&self, e: Edge) -> &Segment {
        &self.edges[e.index()]
    }

    pub fn edge_lengths_sq(&self) -> &[Rational; 3] {
        &self.edge_lengths_sq
    }

    pub fn edges_containing(&self, q: &Point2) -> Vec<Edge> {
        Edge::ALL.into_iter().filter(|&e| self.edge(e).contains(q)).collect()
    }

    pub fn contains(&self, q: &Point2) -> bool {
        Edge::ALL.iter().any(|&e| self.edge(e).contains(q))
    }

    /// An edge containing both points, preferring the earliest in orientation
    /// order.
    pub fn common_edge(&self, a: &Point2, b: &Point2) -> Option<Edge> {
        Edge::ALL
            .into_iter()
            .find(|&e| self.edge(e).contains(a) && self.edge(e).contains(b))
    }

    /// Position of `q` along edge `e`, in `[0,1]`.
    pub fn edge_fraction(&self, e: Edge, q: &Point2) -> Rational {
        self.edge(e).fraction_of(q)
    }

    /// The wedge at `p` spanned by `C_n` lies strictly between the rays through
    /// `B_{n}` and `B_{n-1}`: `D_n.x · (n - 1) < D_n.y`.
    fn wedge_separated(&self) -> bool {
        let c = self.corner();
        c.y.is_positive() && &c.x * rational::int(i64::from(self.index) - 1) < c.y
    }
}

/// Builds `C_n` exactly.
pub fn build_circle(n: u32, profile: &WidthProfile) -> Result<Circle, SpaceError> {
    if n < 2 {
        return Err(SpaceError::IndexTooSmall(n));
    }
    if n > MAX_CIRCLE_INDEX {
        return Err(SpaceError::IndexTooLarge(n.into()));
    }
    let w = profile.width(n);
    let p = Point2::origin();
    let apex = Point2::new(rational::rat(1, n.into()), Rational::one());
    let corner = Point2::new(&apex.x + &w * rational::int(n.into()), &apex.y - &w);
    let edge = |a: &Point2, b: &Point2| Segment::new(a.clone(), b.clone()).expect("distinct vertices");
    let edges = [edge(&p, &apex), edge(&apex, &corner), edge(&corner, &p)];
    let edge_lengths_sq = [edges[0].length_sq(), edges[1].length_sq(), edges[2].length_sq()];
    Ok(Circle {
        index: n,
        width: w,
        vertices: [p, apex, corner],
        edges,
        edge_lengths_sq,
    })
}

pub fn alpha_segment() -> Segment {
    Segment::new(Point2::origin(), Point2::new(Rational::zero(), Rational::one())).expect("alpha")
}

/// Pairs of edges of two circles that meet somewhere other than `p`.
fn contacts_away_from_base(a: &Circle, b: &Circle) -> Vec<(Edge, Edge, Intersection)> {
    let mut bad = Vec::new();
    for ea in Edge::ALL {
        for eb in Edge::ALL {
            let hit = segments_intersect(a.edge(ea), b.edge(eb));
            let at_base = matches!(&hit, Intersection::Point(q) if q.is_origin());
            if !hit.is_empty() && !at_base {
                bad.push((ea, eb, hit));
            }
        }
    }
    bad
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentId {
    Circle(u32),
    Alpha,
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentId::Circle(n) => write!(f, "C{n}"),
            ComponentId::Alpha => write!(f, "alpha"),
        }
    }
}

/// Where a point sits in a space.
#[derive(Debug, Clone, PartialEq)]
pub enum Location {
    Base,
    Alpha,
    Circle(Arc<Circle>),
    Outside,
}

impl Location {
    pub fn component(&self) -> Option<ComponentId> {
        match self {
            Location::Alpha => Some(ComponentId::Alpha),
            Location::Circle(c) => Some(ComponentId::Circle(c.index())),
            Location::Base | Location::Outside => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Outside,
    AtBase,
    OnAlpha,
    OnCircle { index: u32, edge: Edge },
}

type CircleCache = Arc<Mutex<BTreeMap<u32, Arc<Circle>>>>;

/// A handle on `X` or `Y` with a given width profile.
///
/// Clones share the circle cache; `with_kind` gives the companion space over
/// the same circles.
#[derive(Clone)]
pub struct SpaceHandle {
    kind: SpaceKind,
    profile: WidthProfile,
    cache: CircleCache,
}

impl fmt::Debug for SpaceHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpaceHandle({self})")
    }
}

impl fmt::Display for SpaceHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} width={}", self.kind.symbol(), self.profile)
    }
}

impl PartialEq for SpaceHandle {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.profile == other.profile
    }
}

impl SpaceHandle {
    pub fn new(kind: SpaceKind, profile: WidthProfile) -> Self {
        SpaceHandle {
            kind,
            profile,
            cache: Arc::default(),
        }
    }

    pub fn bouquet(profile: WidthProfile) -> Self {
        SpaceHandle::new(SpaceKind::BouquetX, profile)
    }

    pub fn compact(profile: WidthProfile) -> Self {
        SpaceHandle::new(SpaceKind::CompactY, profile)
    }

    pub fn with_kind(&self, kind: SpaceKind) -> Self {
        SpaceHandle {
            kind,
            profile: self.profile.clone(),
            cache: Arc::clone(&self.cache),
        }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn profile(&self) -> &WidthProfile {
        &self.profile
    }

    pub fn has_alpha(&self) -> bool {
        self.kind == SpaceKind::CompactY
    }

    /// Materializes `C_n`, checking it against every circle built so far.
    pub fn circle(&self, n: u32) -> Result<Arc<Circle>, SpaceError> {
        let mut cache = self.cache.lock().expect("circle cache poisoned");
        if let Some(c) = cache.get(&n) {
            return Ok(Arc::clone(c));
        }
        let circle = build_circle(n, &self.profile)?;
        if !circle.wedge_separated() {
            return Err(SpaceError::WedgeViolation {
                profile: self.profile.to_string(),
                index: n,
            });
        }
        for (&m, other) in cache.iter() {
            if !contacts_away_from_base(&circle, other).is_empty() {
                return Err(SpaceError::Overlap {
                    n: m.min(n),
                    m: m.max(n),
                    profile: self.profile.to_string(),
                });
            }
        }
        let circle = Arc::new(circle);
        cache.insert(n, Arc::clone(&circle));
        Ok(circle)
    }

    pub fn circles(&self, up_to: u32) -> Result<Vec<Arc<Circle>>, SpaceError> {
        (2..=up_to).map(|n| self.circle(n)).collect()
    }

    pub fn materialized(&self) -> Vec<u32> {
        self.cache.lock().expect("circle cache poisoned").keys().copied().collect()
    }

    /// Exact location of `q`. Relies on wedge separation: a point of `C_n`
    /// other than `p` has `y/x` in `(n - 1, n]`, so only `n = ceil(y/x)` needs
    /// checking.
    pub fn locate(&self, q: &Point2) -> Result<Location, SpaceError> {
        if q.is_origin() {
            return Ok(Location::Base);
        }
        if q.x.is_zero() {
            let on_alpha = self.has_alpha() && q.y.is_positive() && q.y <= Rational::one();
            return Ok(if on_alpha { Location::Alpha } else { Location::Outside });
        }
        if !q.x.is_positive() || !q.y.is_positive() || q.y > Rational::one() {
            return Ok(Location::Outside);
        }
        let n = ceil(&(&q.y / &q.x));
        let n = match n.to_u64() {
            Some(n) if n < 2 => return Ok(Location::Outside),
            Some(n) if n <= u64::from(MAX_CIRCLE_INDEX) => n as u32,
            _ => return Err(SpaceError::IndexTooLarge(n.to_u64().unwrap_or(u64::MAX))),
        };
        let circle = self.circle(n)?;
        Ok(if circle.contains(q) {
            Location::Circle(circle)
        } else {
            Location::Outside
        })
    }

    /// Classification of `q` against `α` and `C_2..C_max_index` by direct
    /// scan.
    pub fn membership(&self, q: &Point2, max_index: u32) -> Result<Membership, SpaceError> {
        if q.is_origin() {
            return Ok(Membership::AtBase);
        }
        if self.has_alpha() && alpha_segment().contains(q) {
            return Ok(Membership::OnAlpha);
        }
        for n in 2..=max_index {
            let c = self.circle(n)?;
            if let Some(&edge) = c.edges_containing(q).first() {
                return Ok(Membership::OnCircle { index: n, edge });
            }
        }
        Ok(Membership::Outside)
    }

    /// The component of `space ∖ {p}` containing `q`.
    pub fn component_of(&self, q: &Point2) -> Result<ComponentId, SpaceError> {
        match self.locate(q)? {
            Location::Base => Err(SpaceError::BasePoint(q.clone())),
            Location::Outside => Err(SpaceError::NotInSpace {
                point: q.clone(),
                space: self.to_string(),
            }),
            loc => Ok(loc.component().expect("located off the base point")),
        }
    }
}

/// Checks `C_n ∩ C_m = {p}` for all `2 <= n < m <= up_to` with exact
/// segment intersection. Circles are built directly from the profile, so a
/// bad profile shows up as report content rather than an error.
pub fn verify_disjointness(space: &SpaceHandle, up_to: u32) -> Result<ProbeReport, SpaceError> {
    if up_to < 3 {
        return Err(SpaceError::Precondition(format!("disjointness needs up_to >= 3, got {up_to}")));
    }
    let circles = (2..=up_to)
        .map(|n| build_circle(n, space.profile()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = ProbeReport::new(
        "disjointness",
        format!("C_n ∩ C_m = {{p}} for all 2 <= n < m <= {up_to}"),
    );
    report
        .param("space", space)
        .param("profile", space.profile())
        .param("up_to", up_to);
    let mut pairs = 0usize;
    let mut clean = 0usize;
    for (i, a) in circles.iter().enumerate() {
        for b in &circles[i + 1..] {
            pairs += 1;
            let bad = contacts_away_from_base(a, b);
            if bad.is_empty() {
                clean += 1;
                continue;
            }
            let mut w = Witness::new(format!("C{} vs C{}", a.index(), b.index()));
            for (ea, eb, hit) in bad {
                let desc = match hit {
                    Intersection::Point(q) => format!("point {q}"),
                    Intersection::Segment(s, t) => format!("overlap {s}..{t}"),
                    Intersection::Empty => unreachable!(),
                };
                w = w.with(&format!("C{}:{ea} x C{}:{eb}", a.index(), b.index()), desc);
            }
            report.counter(w);
        }
    }
    if space.has_alpha() {
        let alpha = alpha_segment();
        for c in &circles {
            for e in Edge::ALL {
                let hit = segments_intersect(&alpha, c.edge(e));
                let at_base = matches!(&hit, Intersection::Point(q) if q.is_origin());
                if !hit.is_empty() && !at_base {
                    report.counter(Witness::new(format!("alpha vs C{}:{e}", c.index())).with("contact", format!("{hit:?}")));
                }
            }
        }
        report.note(format!("alpha meets C2..C{up_to} only at p"));
    }
    report.witness(
        Witness::new("pairwise summary")
            .with("pairs checked", pairs.to_string())
            .with("pairs meeting only at p", clean.to_string()),
    );
    Ok(report)
}

/// Exact `d_H(C_n, α)` for `n = 2..=up_to`, checked for strict decrease and
/// the bound `d_H(C_n, α) <= 2/n`.
pub fn hausdorff_convergence(space: &SpaceHandle, up_to: u32) -> Result<ProbeReport, SpaceError> {
    if space.kind() != SpaceKind::CompactY {
        return Err(SpaceError::Precondition("Hausdorff convergence needs the space Y".into()));
    }
    if up_to < 2 {
        return Err(SpaceError::Precondition("up_to must be >= 2".into()));
    }
    let alpha = [alpha_segment()];
    let mut report = ProbeReport::new(
        "hausdorff_convergence",
        format!("d_H(C_n, alpha) strictly decreasing and <= 2/n for n = 2..{up_to}"),
    );
    report
        .param("space", space)
        .param("profile", space.profile())
        .param("up_to", up_to);
    let epsilon = rational::rat(1, 10);
    let mut previous: Option<SqDistance> = None;
    for n in 2..=up_to {
        let circle = space.circle(n)?;
        let d = hausdorff_distance_sq(circle.edges(), &alpha).expect("nonempty");
        let bound = rational::rat(2, n.into());
        let row = Witness::new(format!("n = {n}")).with("d_H", d.clone());
        if d.cmp_distance(&bound).is_gt() {
            report.counter(row.clone().with("violation", format!("exceeds 2/{n}")));
        }
        if let Some(prev) = &previous {
            if &d >= prev {
                report.counter(row.clone().with("violation", "not below the previous row"));
            }
        }
        if n >= 20 && d.cmp_distance(&epsilon).is_ge() {
            report.counter(row.clone().with("violation", "not below epsilon = 1/10"));
        }
        report.witness(row);
        previous = Some(d);
    }
    if up_to >= 20 {
        report.note("limit check: every row with n >= 20 lies below epsilon = 1/10");
    }
    Ok(report)
}
