//! Homotopy classes of based loops in `X` and `Y`, the collapse of a loop in
//! `Y` onto `X`, and the topological probes.
//!
//! Classes are reduced words in the free group on `g2, g3, ...`: in `X` an
//! excursion into `C_n` of degree `d` contributes `g_n^d`; in `Y` a loop is
//! first collapsed into `X`.

mod perturb;
mod probes;

pub use probes::{
    ball_check, probe_discreteness_x, probe_nondiscreteness_y, probe_slsc_y, probe_slsc_y_on, stability_radius,
};

use crate::geometry::{PLPath, Point2, Rational};
use crate::loops::{winding_degree, Loop, LoopError};
use crate::spaces::{ComponentId, SpaceKind};
use crate::words::{Word, WordError};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Pi1Error {
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("{operation} needs a loop in {expected}, got one in {found}")]
    WrongSpace {
        operation: &'static str,
        expected: &'static str,
        found: String,
    },
    #[error("{0}")]
    Precondition(String),
    #[error("magnitude {magnitude} is not below the stability radius (squared radius {radius_sq})")]
    MagnitudeTooLarge { magnitude: Rational, radius_sq: Rational },
}

impl From<crate::spaces::SpaceError> for Pi1Error {
    fn from(e: crate::spaces::SpaceError) -> Self {
        Pi1Error::Loop(LoopError::Space(e))
    }
}

impl From<crate::geometry::GeometryError> for Pi1Error {
    fn from(e: crate::geometry::GeometryError) -> Self {
        Pi1Error::Loop(LoopError::Geometry(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomotopyClass {
    pub word: Word,
    pub space_kind: SpaceKind,
}

impl fmt::Display for HomotopyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in pi1({},p)", self.word, self.space_kind.symbol())
    }
}

fn require(l: &Loop, kind: SpaceKind, operation: &'static str) -> Result<(), Pi1Error> {
    if l.space().kind() != kind {
        return Err(Pi1Error::WrongSpace {
            operation,
            expected: kind.symbol(),
            found: l.space().to_string(),
        });
    }
    Ok(())
}

pub fn classify_x(l: &Loop) -> Result<HomotopyClass, Pi1Error> {
    require(l, SpaceKind::BouquetX, "classify_X")?;
    let mut raw = Vec::new();
    for exc in l.decompose() {
        match exc.component {
            ComponentId::Circle(n) => raw.push((n, winding_degree(&exc)?)),
            ComponentId::Alpha => unreachable!("alpha excursion in X"),
        }
    }
    Ok(HomotopyClass {
        word: Word::from_syllables(raw)?,
        space_kind: SpaceKind::BouquetX,
    })
}

/// Smallest `N >= 2` such that for `n >= N` the loop misses `B_n` and every
/// excursion into `C_n` has degree 0.
pub fn choose_n(l: &Loop) -> u32 {
    let mut n = 2;
    for exc in l.decompose() {
        if let ComponentId::Circle(k) = exc.component {
            let essential = exc.touches_apex() || winding_degree(&exc).expect("circle excursion") != 0;
            if essential {
                n = n.max(k + 1);
            }
        }
    }
    n
}

/// Why an excursion could be replaced by a constant stretch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CollapseStep {
    /// `α` is an arc ending at `p`; it contracts onto `p`.
    AlphaContraction { t_start: Rational, t_end: Rational },
    /// The excursion stays in `C_n ∖ {B_n}`, an arc through `p`.
    ArcContraction { index: u32, t_start: Rational, t_end: Rational },
}

impl fmt::Display for CollapseStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollapseStep::AlphaContraction { t_start, t_end } => {
                write!(f, "[{t_start}, {t_end}] alpha contracted to p")
            }
            CollapseStep::ArcContraction { index, t_start, t_end } => {
                write!(f, "[{t_start}, {t_end}] arc of C{index} missing B{index} contracted to p")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Collapse {
    pub n: u32,
    pub result: Loop,
    pub steps: Vec<CollapseStep>,
}

/// The end map of the deformation onto `X`, with one certificate step per
/// removed excursion.
pub fn collapse_with_certificate(l: &Loop) -> Result<Collapse, Pi1Error> {
    require(l, SpaceKind::CompactY, "collapse_to_X")?;
    let n = choose_n(l);
    let mut drop: Vec<(Rational, Rational)> = Vec::new();
    let mut steps = Vec::new();
    for exc in l.decompose() {
        let step = match exc.component {
            ComponentId::Alpha => CollapseStep::AlphaContraction {
                t_start: exc.t_start.clone(),
                t_end: exc.t_end.clone(),
            },
            ComponentId::Circle(k) if k >= n => CollapseStep::ArcContraction {
                index: k,
                t_start: exc.t_start.clone(),
                t_end: exc.t_end.clone(),
            },
            ComponentId::Circle(_) => continue,
        };
        drop.push((exc.t_start.clone(), exc.t_end.clone()));
        steps.push(step);
    }
    let inside = |t: &Rational| drop.iter().any(|(a, b)| a < t && t < b);
    let breakpoints: Vec<(Rational, Point2)> = l
        .path()
        .breakpoints()
        .iter()
        .filter(|(t, _)| !inside(t))
        .cloned()
        .collect();
    let x = l.space().with_kind(SpaceKind::BouquetX);
    let result = Loop::new(PLPath::new(breakpoints)?, &x)?;
    Ok(Collapse { n, result, steps })
}

pub fn collapse_to_x(l: &Loop) -> Result<Loop, Pi1Error> {
    collapse_with_certificate(l).map(|c| c.result)
}

pub fn classify_y(l: &Loop) -> Result<HomotopyClass, Pi1Error> {
    let word = classify_x(&collapse_to_x(l)?)?.word;
    Ok(HomotopyClass {
        word,
        space_kind: SpaceKind::CompactY,
    })
}

/// Classifies in whichever space the loop lives in.
pub fn classify(l: &Loop) -> Result<HomotopyClass, Pi1Error> {
    match l.space().kind() {
        SpaceKind::BouquetX => classify_x(l),
        SpaceKind::CompactY => classify_y(l),
    }
}

/// `j_*`: the inclusion acts as the identity on words.
pub fn induced_map(c: &HomotopyClass) -> Result<HomotopyClass, Pi1Error> {
    if c.space_kind != SpaceKind::BouquetX {
        return Err(Pi1Error::Precondition("induced_map expects a class in pi1(X,p)".into()));
    }
    Ok(HomotopyClass {
        word: c.word.clone(),
        space_kind: SpaceKind::CompactY,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::{int, rat};
    use crate::loops::{concatenate, constant_loop, realize_word, reverse, standard_f, standard_fn};
    use crate::spaces::{SpaceHandle, WidthProfile};
    use proptest::prelude::*;

    fn y() -> SpaceHandle {
        SpaceHandle::compact(WidthProfile::Pow10)
    }

    fn x() -> SpaceHandle {
        SpaceHandle::bouquet(WidthProfile::Pow10)
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn classify_x_examples() {
        assert!(classify_x(&constant_loop(&x())).unwrap().word.is_identity());
        assert_eq!(classify_x(&standard_fn(&x(), 7).unwrap()).unwrap().word, w("g7"));
        let l = realize_word(&w("g2 g3^-1"), &x()).unwrap();
        assert_eq!(classify_x(&l).unwrap().word, w("g2 g3^-1"));
        assert!(matches!(classify_x(&standard_f(&y()).unwrap()), Err(Pi1Error::WrongSpace { .. })));
    }

    #[test]
    fn choose_n_examples() {
        let y = y();
        let f = standard_f(&y).unwrap();
        assert_eq!(choose_n(&f), 2);
        assert_eq!(choose_n(&standard_fn(&y, 5).unwrap()), 6);
        let f2f = concatenate(&standard_fn(&y, 2).unwrap(), &f).unwrap();
        assert_eq!(choose_n(&f2f), 3);
        assert_eq!(choose_n(&constant_loop(&y)), 2);
    }

    #[test]
    fn collapse_examples() {
        let y = y();
        let f = standard_f(&y).unwrap();
        let c = collapse_with_certificate(&f).unwrap();
        assert!(c.result.is_constant());
        assert_eq!(c.result.space().kind(), SpaceKind::BouquetX);
        assert_eq!(
            c.steps,
            vec![CollapseStep::AlphaContraction {
                t_start: int(0),
                t_end: int(1)
            }]
        );
        let f2 = standard_fn(&y, 2).unwrap();
        assert_eq!(collapse_to_x(&f2).unwrap().path(), f2.path());
        let ff2 = concatenate(&f, &f2).unwrap();
        assert_eq!(classify_x(&collapse_to_x(&ff2).unwrap()).unwrap().word, w("g2"));
    }

    #[test]
    fn far_arc_is_contracted() {
        // C2 once, then up C9's rising edge halfway and back
        let y = y();
        let c9 = y.circle(9).unwrap();
        let half = c9.edge(crate::spaces::Edge::Rise).point_at(&rat(1, 2));
        let f2 = standard_fn(&y, 2).unwrap();
        let mut bps: Vec<(Rational, Point2)> = f2
            .path()
            .breakpoints()
            .iter()
            .map(|(t, q)| (t / int(2), q.clone()))
            .collect();
        bps.push((rat(3, 4), half));
        bps.push((int(1), Point2::origin()));
        let l = Loop::new(PLPath::new(bps).unwrap(), &y).unwrap();
        let c = collapse_with_certificate(&l).unwrap();
        assert_eq!(c.n, 3);
        assert_eq!(
            c.steps,
            vec![CollapseStep::ArcContraction {
                index: 9,
                t_start: rat(1, 2),
                t_end: int(1)
            }]
        );
        assert_eq!(classify_y(&l).unwrap().word, w("g2"));
    }

    #[test]
    fn classify_y_examples() {
        let y = y();
        assert!(classify_y(&standard_f(&y).unwrap()).unwrap().word.is_identity());
        for n in 2..=10 {
            assert_eq!(classify_y(&standard_fn(&y, n).unwrap()).unwrap().word, Word::generator(n).unwrap());
        }
        // up alpha, back, then twice around C3
        let f3 = standard_fn(&y, 3).unwrap();
        let l = concatenate(&standard_f(&y).unwrap(), &concatenate(&f3, &f3).unwrap()).unwrap();
        let class = classify_y(&l).unwrap();
        assert_eq!(class.word, w("g3^2"));
        assert_eq!(class.space_kind, SpaceKind::CompactY);
    }

    #[test]
    fn induced_map_retags() {
        let c = HomotopyClass {
            word: w("g2 g3^-1"),
            space_kind: SpaceKind::BouquetX,
        };
        let j = induced_map(&c).unwrap();
        assert_eq!(j.word, c.word);
        assert_eq!(j.space_kind, SpaceKind::CompactY);
        assert!(induced_map(&j).is_err());
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        proptest::collection::vec((2u32..=9, prop_oneof![Just(1i64), Just(-1i64)]), 0..=10)
            .prop_map(|raw| Word::from_syllables(raw).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn realize_then_classify_roundtrip(word in word_strategy()) {
            let x = SpaceHandle::bouquet(WidthProfile::Decimal(2));
            let l = realize_word(&word, &x).unwrap();
            prop_assert_eq!(classify_x(&l).unwrap().word, word.clone());
            let j = l.include(&x.with_kind(SpaceKind::CompactY)).unwrap();
            prop_assert_eq!(classify_y(&j).unwrap(), induced_map(&classify_x(&l).unwrap()).unwrap());
        }

        #[test]
        fn classification_is_a_homomorphism(a in word_strategy(), b in word_strategy(), in_y in any::<bool>()) {
            let mut space = SpaceHandle::bouquet(WidthProfile::Decimal(2));
            if in_y {
                space = space.with_kind(SpaceKind::CompactY);
            }
            let la = realize_word(&a, &space).unwrap();
            let lb = realize_word(&b, &space).unwrap();
            let ab = concatenate(&la, &lb).unwrap();
            prop_assert_eq!(classify(&ab).unwrap().word, a.multiply(&b));
            prop_assert_eq!(classify(&reverse(&la)).unwrap().word, a.invert());
        }

        #[test]
        fn classification_ignores_reparametrization(word in word_strategy(), knots in proptest::collection::vec((1i64..64, 0i64..=64), 1..5)) {
            let y = SpaceHandle::compact(WidthProfile::Decimal(2));
            let l = concatenate(&standard_f(&y).unwrap(), &realize_word(&word, &y).unwrap()).unwrap();
            let mut s: Vec<i64> = knots.iter().map(|k| k.0).collect();
            let mut t: Vec<i64> = knots.iter().map(|k| k.1).collect();
            s.sort_unstable();
            s.dedup();
            t.truncate(s.len());
            t.sort_unstable();
            let mut phi = vec![(int(0), int(0))];
            phi.extend(s.iter().zip(&t).map(|(&si, &ti)| (rat(si, 64), rat(ti, 64))));
            phi.push((int(1), int(1)));
            let r = l.reparametrize(&phi).unwrap();
            prop_assert_eq!(classify_y(&r).unwrap().word, word.clone());
            let lx = realize_word(&word, &y.with_kind(SpaceKind::BouquetX)).unwrap();
            prop_assert_eq!(classify_x(&lx.reparametrize(&phi).unwrap()).unwrap().word, word);
        }

        #[test]
        fn collapse_ignores_alpha_and_far_arcs(word in word_strategy(), decorate in proptest::collection::vec(0u8..3, 0..4)) {
            let y = SpaceHandle::compact(WidthProfile::Decimal(2));
            let base = realize_word(&word, &y).unwrap();
            let mut l = base.clone();
            for (i, d) in decorate.iter().enumerate() {
                let extra = match d {
                    0 => standard_f(&y).unwrap(),
                    1 => far_spur(&y, choose_n(&base) + 1 + i as u32),
                    _ => constant_loop(&y),
                };
                l = if i % 2 == 0 { concatenate(&extra, &l).unwrap() } else { concatenate(&l, &extra).unwrap() };
            }
            let collapsed = collapse_to_x(&l).unwrap();
            prop_assert!(collapsed.validate().is_ok());
            prop_assert_eq!(collapsed.space().kind(), SpaceKind::BouquetX);
            prop_assert_eq!(classify_x(&collapsed).unwrap().word, word);
        }
    }

    /// Up the falling edge of `C_n` a quarter of the way and back.
    fn far_spur(y: &SpaceHandle, n: u32) -> Loop {
        let c = y.circle(n).unwrap();
        let q = c.edge(crate::spaces::Edge::Fall).point_at(&rat(3, 4));
        Loop::new(
            PLPath::new(vec![(int(0), Point2::origin()), (rat(1, 2), q), (int(1), Point2::origin())]).unwrap(),
            y,
        )
        .unwrap()
    }
}
