//! Based PL loops in `X` or `Y`.
//!
//! A loop is a [`PLPath`] from `p` to `p` whose every linear piece lies in a
//! single edge of the space. Since `p` is an endpoint of every edge through
//! it, the loop can only visit `p` at breakpoints, which makes the excursion
//! decomposition a split of the breakpoint list.

use crate::geometry::rational::{self, Rational};
use crate::geometry::{GeometryError, PLPath, Point2};
use crate::spaces::{Circle, ComponentId, Location, SpaceError, SpaceHandle, SpaceKind};
use crate::words::Word;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("loop is not based at p: path({t}) = {point}")]
    NotBased { t: Rational, point: Point2 },
    #[error("breakpoint at t = {t}, {point}, lies outside {space}")]
    PointOutside { t: Rational, point: Point2, space: String },
    #[error("piece on [{t_start}, {t_end}] from {from} to {to} is not contained in a single edge")]
    PieceOffComplex {
        t_start: Rational,
        t_end: Rational,
        from: Point2,
        to: Point2,
    },
    #[error("breakpoint at t = {t}, {point}: {reason}")]
    Unsupported { t: Rational, point: Point2, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("invalid loop: {0}")]
    Invalid(#[from] Violation),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("loops live in different spaces: {0} and {1}")]
    MixedSpaces(String, String),
    #[error("expected a loop in {expected}, got one in {found}")]
    WrongSpace { expected: String, found: String },
    #[error("winding degree is undefined for an excursion into alpha")]
    AlphaExcursion,
}

/// A validated based loop.
#[derive(Clone, Debug)]
pub struct Loop {
    path: PLPath,
    space: SpaceHandle,
    sites: Vec<Location>,
}

impl PartialEq for Loop {
    fn eq(&self, other: &Self) -> bool {
        self.path == other.path && self.space == other.space
    }
}

impl fmt::Display for Loop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "loop in {}: {}", self.space, self.path)
    }
}

fn locate_breakpoints(path: &PLPath, space: &SpaceHandle) -> Result<Vec<Location>, Violation> {
    path.breakpoints()
        .iter()
        .map(|(t, q)| match space.locate(q) {
            Ok(Location::Outside) => Err(Violation::PointOutside {
                t: t.clone(),
                point: q.clone(),
                space: space.to_string(),
            }),
            Ok(loc) => Ok(loc),
            Err(e) => Err(Violation::Unsupported {
                t: t.clone(),
                point: q.clone(),
                reason: e.to_string(),
            }),
        })
        .collect()
}

fn piece_in_one_edge(a: &Point2, la: &Location, b: &Point2, lb: &Location) -> bool {
    match (la, lb) {
        (Location::Base, Location::Base) => true,
        (Location::Alpha, Location::Alpha) | (Location::Base, Location::Alpha) | (Location::Alpha, Location::Base) => true,
        (Location::Base, Location::Circle(c)) | (Location::Circle(c), Location::Base) => c.common_edge(a, b).is_some(),
        (Location::Circle(c1), Location::Circle(c2)) => c1.index() == c2.index() && c1.common_edge(a, b).is_some(),
        _ => false,
    }
}

fn check(path: &PLPath, space: &SpaceHandle) -> Result<Vec<Location>, Violation> {
    for (t, q) in [&path.breakpoints()[0], path.breakpoints().last().expect("nonempty")] {
        if !q.is_origin() {
            return Err(Violation::NotBased {
                t: t.clone(),
                point: q.clone(),
            });
        }
    }
    let sites = locate_breakpoints(path, space)?;
    let bps = path.breakpoints();
    for i in 0..bps.len() - 1 {
        let ((t0, a), (t1, b)) = (&bps[i], &bps[i + 1]);
        if !piece_in_one_edge(a, &sites[i], b, &sites[i + 1]) {
            return Err(Violation::PieceOffComplex {
                t_start: t0.clone(),
                t_end: t1.clone(),
                from: a.clone(),
                to: b.clone(),
            });
        }
    }
    Ok(sites)
}

/// Checks the basepoint condition and that each linear piece lies inside a
/// single edge of `space`; reports the first violation.
pub fn validate(path: &PLPath, space: &SpaceHandle) -> Result<(), Violation> {
    check(path, space).map(|_| ())
}

impl Loop {
    pub fn new(path: PLPath, space: &SpaceHandle) -> Result<Self, LoopError> {
        let sites = check(&path, space)?;
        Ok(Loop {
            path,
            space: space.clone(),
            sites,
        })
    }

    /// Builds a loop from `(t, x, y)` triples.
    pub fn from_points(space: &SpaceHandle, points: Vec<(Rational, Rational, Rational)>) -> Result<Self, LoopError> {
        let path = PLPath::new(points.into_iter().map(|(t, x, y)| (t, Point2::new(x, y))).collect())?;
        Loop::new(path, space)
    }

    pub fn path(&self) -> &PLPath {
        &self.path
    }

    pub fn space(&self) -> &SpaceHandle {
        &self.space
    }

    pub fn validate(&self) -> Result<(), Violation> {
        validate(&self.path, &self.space)
    }

    pub fn is_constant(&self) -> bool {
        self.path.points().all(Point2::is_origin)
    }

    /// The same parametrized loop viewed in another space over the same
    /// circles; from `X` into `Y` this is the inclusion `j`.
    pub fn include(&self, target: &SpaceHandle) -> Result<Loop, LoopError> {
        if target.profile() != self.space.profile() {
            return Err(LoopError::MixedSpaces(self.space.to_string(), target.to_string()));
        }
        Loop::new(self.path.clone(), target)
    }

    /// Precomposition with a nondecreasing PL map of `[0,1]` onto itself.
    pub fn reparametrize(&self, phi: &[(Rational, Rational)]) -> Result<Loop, LoopError> {
        Loop::new(self.path.reparametrize(phi)?, &self.space)
    }

    /// Indices of circles whose apex `B_n` is a breakpoint. A piece inside an
    /// edge can only reach a vertex at one of its own endpoints, so these are
    /// exactly the apexes on the image.
    pub fn apexes_touched(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .path
            .points()
            .zip(&self.sites)
            .filter_map(|(q, site)| match site {
                Location::Circle(c) if q == c.apex() => Some(c.index()),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Largest circle index the loop meets away from `p`.
    pub fn max_circle_index(&self) -> Option<u32> {
        self.sites
            .iter()
            .filter_map(|s| match s {
                Location::Circle(c) => Some(c.index()),
                _ => None,
            })
            .max()
    }

    /// Maximal stretches away from `p`, in parameter order.
    pub fn decompose(&self) -> Vec<Excursion> {
        let bps = self.path.breakpoints();
        let at_base: Vec<usize> = bps
            .iter()
            .enumerate()
            .filter(|(_, (_, q))| q.is_origin())
            .map(|(i, _)| i)
            .collect();
        let mut out = Vec::new();
        for w in at_base.windows(2) {
            let (i, j) = (w[0], w[1]);
            if j == i + 1 {
                continue;
            }
            let (t_start, t_end) = (bps[i].0.clone(), bps[j].0.clone());
            let span = &t_end - &t_start;
            let subpath = PLPath::new(
                bps[i..=j]
                    .iter()
                    .map(|(t, q)| ((t - &t_start) / &span, q.clone()))
                    .collect(),
            )
            .expect("rescaled breakpoints stay ordered");
            let (component, circle) = match &self.sites[i + 1] {
                Location::Alpha => (ComponentId::Alpha, None),
                Location::Circle(c) => (ComponentId::Circle(c.index()), Some(Arc::clone(c))),
                other => unreachable!("interior of an excursion at {other:?}"),
            };
            out.push(Excursion {
                t_start,
                t_end,
                component,
                subpath,
                circle,
            });
        }
        out
    }
}

/// A maximal sub-path away from `p`. `subpath` is rescaled to `[0,1]`; the
/// original parameter window is `[t_start, t_end]`.
#[derive(Clone, Debug)]
pub struct Excursion {
    pub t_start: Rational,
    pub t_end: Rational,
    pub component: ComponentId,
    pub subpath: PLPath,
    circle: Option<Arc<Circle>>,
}

impl Excursion {
    pub fn circle(&self) -> Option<&Arc<Circle>> {
        self.circle.as_ref()
    }

    pub fn reversed(&self) -> Excursion {
        let one = Rational::one();
        Excursion {
            t_start: &one - &self.t_end,
            t_end: &one - &self.t_start,
            component: self.component,
            subpath: self.subpath.reversed(),
            circle: self.circle.clone(),
        }
    }

    /// Whether the excursion reaches the apex `B_n` of its circle.
    pub fn touches_apex(&self) -> bool {
        match &self.circle {
            Some(c) => self.subpath.points().any(|q| q == c.apex()),
            None => false,
        }
    }
}

/// Signed number of full traversals of `C_n`.
///
/// Each point of `C_n` has a lift coordinate `edge + fraction along edge` in
/// `[0,3)`, increasing along `p -> B_n -> D_n -> p`. Every piece stays in one
/// edge, so the lift changes by the difference of fractions on that edge; the
/// total is a multiple of 3.
pub fn winding_degree(exc: &Excursion) -> Result<i64, LoopError> {
    let circle = exc.circle.as_ref().ok_or(LoopError::AlphaExcursion)?;
    let points: Vec<&Point2> = exc.subpath.points().collect();
    let mut total = Rational::zero();
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a == b {
            continue;
        }
        let edge = circle.common_edge(a, b).expect("validated piece lies in one edge");
        total += circle.edge_fraction(edge, b) - circle.edge_fraction(edge, a);
    }
    let turns = total / rational::int(3);
    assert!(turns.is_integer(), "excursion does not close up");
    Ok(turns.to_integer().to_i64().expect("degree fits in i64"))
}

fn require_kind(space: &SpaceHandle, kind: SpaceKind) -> Result<(), LoopError> {
    if space.kind() != kind {
        return Err(LoopError::WrongSpace {
            expected: kind.symbol().to_string(),
            found: space.to_string(),
        });
    }
    Ok(())
}

/// Breakpoints of one signed traversal of `circle` during `[t0, t1]`,
/// endpoints included. The apex is reached at mid-window and the corner
/// `w_n/2` of the window later (earlier when inverted), so the descent
/// along `D_n -> p` keeps pace with a straight descent along `α`.
fn traversal(circle: &Circle, t0: &Rational, t1: &Rational, inverse: bool) -> Vec<(Rational, Point2)> {
    let h = t1 - t0;
    let half = rational::rat(1, 2);
    let apex_t = t0 + &h * &half;
    let offset = &h * circle.width() * &half;
    let p = Point2::origin();
    if inverse {
        vec![
            (t0.clone(), p.clone()),
            (&apex_t - &offset, circle.corner().clone()),
            (apex_t, circle.apex().clone()),
            (t1.clone(), p),
        ]
    } else {
        vec![
            (t0.clone(), p.clone()),
            (apex_t.clone(), circle.apex().clone()),
            (apex_t + offset, circle.corner().clone()),
            (t1.clone(), p),
        ]
    }
}

pub fn constant_loop(space: &SpaceHandle) -> Loop {
    let p = Point2::origin();
    Loop::new(
        PLPath::new(vec![(Rational::zero(), p.clone()), (Rational::one(), p)]).expect("two breakpoints"),
        space,
    )
    .expect("constant loop is valid")
}

/// `f`: up `α` to `(0,1)` at `t = 1/2` and straight back down.
pub fn standard_f(space: &SpaceHandle) -> Result<Loop, LoopError> {
    require_kind(space, SpaceKind::CompactY)?;
    let path = PLPath::new(vec![
        (Rational::zero(), Point2::origin()),
        (rational::rat(1, 2), Point2::new(Rational::zero(), Rational::one())),
        (Rational::one(), Point2::origin()),
    ])?;
    Loop::new(path, space)
}

/// `f_n`: once around `C_n` positively, shadowing `f` in time.
pub fn standard_fn(space: &SpaceHandle, n: u32) -> Result<Loop, LoopError> {
    let circle = space.circle(n)?;
    let path = PLPath::new(traversal(&circle, &Rational::zero(), &Rational::one(), false))?;
    Loop::new(path, space)
}

/// A loop whose excursions spell `w`, one signed traversal per letter in
/// equal time slots.
pub fn realize_word(word: &Word, space: &SpaceHandle) -> Result<Loop, LoopError> {
    let letters: Vec<_> = word.letters().collect();
    if letters.is_empty() {
        return Ok(constant_loop(space));
    }
    let count = rational::int(letters.len() as i64);
    let mut breakpoints: Vec<(Rational, Point2)> = Vec::new();
    for (k, letter) in letters.iter().enumerate() {
        let circle = space.circle(letter.index)?;
        let t0 = rational::int(k as i64) / &count;
        let t1 = rational::int(k as i64 + 1) / &count;
        let mut slot = traversal(&circle, &t0, &t1, letter.inverse);
        if k > 0 {
            slot.remove(0);
        }
        breakpoints.extend(slot);
    }
    Loop::new(PLPath::new(breakpoints)?, space)
}

/// Half-speed concatenation: `a` on `[0,1/2]`, `b` on `[1/2,1]`.
pub fn concatenate(a: &Loop, b: &Loop) -> Result<Loop, LoopError> {
    if a.space != b.space {
        return Err(LoopError::MixedSpaces(a.space.to_string(), b.space.to_string()));
    }
    Loop::new(a.path.concat(&b.path)?, &a.space)
}

/// `t ↦ a(1 - t)`.
pub fn reverse(a: &Loop) -> Loop {
    let mut sites = a.sites.clone();
    sites.reverse();
    Loop {
        path: a.path.reversed(),
        space: a.space.clone(),
        sites,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::{int, rat};
    use crate::spaces::{Edge, WidthProfile};

    fn y() -> SpaceHandle {
        SpaceHandle::compact(WidthProfile::Pow10)
    }

    fn degrees(l: &Loop) -> Vec<(ComponentId, Option<i64>)> {
        l.decompose()
            .iter()
            .map(|e| (e.component, winding_degree(e).ok()))
            .collect()
    }

    #[test]
    fn standard_loops_validate() {
        let y = y();
        let f = standard_f(&y).unwrap();
        assert!(f.validate().is_ok());
        assert_eq!(
            f.path().breakpoints(),
            &[
                (int(0), Point2::origin()),
                (rat(1, 2), Point2::new(int(0), int(1))),
                (int(1), Point2::origin())
            ]
        );
        for n in 2..=6 {
            assert!(standard_fn(&y, n).unwrap().validate().is_ok());
        }
        assert!(standard_fn(&y, 1).is_err());
        let x = y.with_kind(SpaceKind::BouquetX);
        assert!(matches!(standard_f(&x), Err(LoopError::WrongSpace { .. })));
    }

    #[test]
    fn validation_failures() {
        let y = y();
        let off = Loop::from_points(
            &y,
            vec![(int(0), int(0), int(0)), (rat(1, 2), int(1), int(1)), (int(1), int(0), int(0))],
        );
        assert!(matches!(off, Err(LoopError::Invalid(Violation::PointOutside { .. }))));
        // chord from alpha to C2 at height 1/2
        let chord = Loop::from_points(
            &y,
            vec![
                (int(0), int(0), int(0)),
                (rat(1, 4), int(0), rat(1, 2)),
                (rat(1, 2), rat(1, 4), rat(1, 2)),
                (int(1), int(0), int(0)),
            ],
        );
        assert!(matches!(chord, Err(LoopError::Invalid(Violation::PieceOffComplex { .. }))));
        let unbased = Loop::from_points(&y, vec![(int(0), int(0), rat(1, 2)), (int(1), int(0), int(0))]);
        assert!(matches!(unbased, Err(LoopError::Invalid(Violation::NotBased { .. }))));
        // alpha is not part of X
        let x = y.with_kind(SpaceKind::BouquetX);
        let f_in_x = Loop::from_points(
            &x,
            vec![(int(0), int(0), int(0)), (rat(1, 2), int(0), int(1)), (int(1), int(0), int(0))],
        );
        assert!(f_in_x.is_err());
    }

    #[test]
    fn shortcut_across_a_triangle_is_rejected() {
        // p -> B_2 -> p straight is fine, p -> D_2 via the B_2 edge is not
        let y = SpaceHandle::compact(WidthProfile::Decimal(1));
        let c = y.circle(2).unwrap();
        let fine = PLPath::new(vec![
            (int(0), Point2::origin()),
            (rat(1, 2), c.corner().clone()),
            (rat(3, 4), c.apex().clone()),
            (rat(7, 8), c.edge(Edge::Rise).point_at(&rat(1, 2))),
            (int(1), Point2::origin()),
        ])
        .unwrap();
        assert!(validate(&fine, &y).is_ok());
        let skip = PLPath::new(vec![
            (int(0), Point2::origin()),
            (rat(1, 2), c.edge(Edge::Rise).point_at(&rat(1, 2))),
            (rat(3, 4), c.corner().clone()),
            (int(1), Point2::origin()),
        ])
        .unwrap();
        assert!(matches!(validate(&skip, &y), Err(Violation::PieceOffComplex { .. })));
    }

    #[test]
    fn decomposition_examples() {
        let y = y();
        assert!(constant_loop(&y).decompose().is_empty());
        let f = standard_f(&y).unwrap();
        assert_eq!(degrees(&f), vec![(ComponentId::Alpha, None)]);
        let f2 = standard_fn(&y, 2).unwrap();
        let f3 = standard_fn(&y, 3).unwrap();
        let both = concatenate(&f2, &f3).unwrap();
        assert_eq!(
            degrees(&both),
            vec![(ComponentId::Circle(2), Some(1)), (ComponentId::Circle(3), Some(1))]
        );
        let cf = concatenate(&constant_loop(&y), &f).unwrap();
        assert_eq!(degrees(&cf), degrees(&f));
    }

    #[test]
    fn degree_examples() {
        let y = y();
        let f5 = standard_fn(&y, 5).unwrap();
        let exc = &f5.decompose()[0];
        assert_eq!(winding_degree(exc).unwrap(), 1);
        assert_eq!(winding_degree(&exc.reversed()).unwrap(), -1);
        assert_eq!(winding_degree(&reverse(&f5).decompose()[0]).unwrap(), -1);
        // there and back along p -> B_n
        let c = y.circle(4).unwrap();
        let back = Loop::new(
            PLPath::new(vec![
                (int(0), Point2::origin()),
                (rat(1, 2), c.apex().clone()),
                (int(1), Point2::origin()),
            ])
            .unwrap(),
            &y,
        )
        .unwrap();
        assert_eq!(winding_degree(&back.decompose()[0]).unwrap(), 0);
        let f = standard_f(&y).unwrap();
        assert_eq!(winding_degree(&f.decompose()[0]), Err(LoopError::AlphaExcursion));
    }

    #[test]
    fn backtracking_excursion_counts_net_turns() {
        // twice around, back one edge, forward again, then once more
        let y = SpaceHandle::compact(WidthProfile::Decimal(1));
        let c = y.circle(3).unwrap();
        let (p, b, d) = (Point2::origin(), c.apex().clone(), c.corner().clone());
        let mid_cap = c.edge(Edge::Cap).point_at(&rat(1, 3));
        let seq = [&b, &d, &p, &b, &mid_cap, &b, &d, &p, &b, &d, &p];
        let n = seq.len() as i64;
        let mut bps = vec![(int(0), p.clone())];
        for (k, q) in seq.iter().enumerate() {
            bps.push((rat(k as i64 + 1, n), (*q).clone()));
        }
        let l = Loop::new(PLPath::new(bps).unwrap(), &y).unwrap();
        let ds: Vec<i64> = l.decompose().iter().map(|e| winding_degree(e).unwrap()).collect();
        assert_eq!(ds, vec![1, 1, 1]);
    }

    #[test]
    fn realize_word_examples() {
        let y = y();
        assert!(realize_word(&Word::identity(), &y).unwrap().is_constant());
        let g2 = realize_word(&"g2".parse().unwrap(), &y).unwrap();
        assert_eq!(degrees(&g2), vec![(ComponentId::Circle(2), Some(1))]);
        let w = realize_word(&"g2 g3^-1 g2".parse().unwrap(), &y).unwrap();
        assert_eq!(
            degrees(&w),
            vec![
                (ComponentId::Circle(2), Some(1)),
                (ComponentId::Circle(3), Some(-1)),
                (ComponentId::Circle(2), Some(1))
            ]
        );
    }

    #[test]
    fn mixed_spaces_rejected() {
        let y = y();
        let other = SpaceHandle::compact(WidthProfile::Decimal(2));
        let a = standard_fn(&y, 2).unwrap();
        let b = standard_fn(&other, 2).unwrap();
        assert!(matches!(concatenate(&a, &b), Err(LoopError::MixedSpaces(..))));
    }

    #[test]
    fn inclusion_keeps_the_path() {
        let x = SpaceHandle::bouquet(WidthProfile::Pow10);
        let y = x.with_kind(SpaceKind::CompactY);
        let l = standard_fn(&x, 3).unwrap();
        let j = l.include(&y).unwrap();
        assert_eq!(j.path(), l.path());
        assert_eq!(j.space().kind(), SpaceKind::CompactY);
    }

    #[test]
    fn apexes() {
        let y = y();
        let l = concatenate(&standard_fn(&y, 5).unwrap(), &standard_f(&y).unwrap()).unwrap();
        assert_eq!(l.apexes_touched(), vec![5]);
        assert_eq!(l.max_circle_index(), Some(5));
    }
}
