//! Small random deformations of a loop that stay inside the 1-complex.
//!
//! Each operation works on the breakpoint list and keeps every new breakpoint
//! on an edge already carrying the affected piece, so the result validates
//! by construction. `amplitude` bounds how far anything moves.

use crate::geometry::rational::{int, rat};
use crate::geometry::{PLPath, Rational, Segment};
use crate::loops::Loop;
use crate::spaces::{alpha_segment, Edge, Location, SpaceHandle};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Op {
    Jitter,
    Spur,
    Backtrack,
    Slide,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Jitter => "jitter",
            Op::Spur => "spur",
            Op::Backtrack => "backtrack",
            Op::Slide => "slide",
        })
    }
}

const OPS: [Op; 4] = [Op::Jitter, Op::Spur, Op::Backtrack, Op::Slide];

/// A rational in `(0, 1]` with denominator 1024.
fn unit(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(1..=1024), 1024)
}

/// A rational in `[-1, 1]` with denominator 512.
fn signed_unit(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-512..=512), 512)
}

fn clamp01(q: Rational) -> Rational {
    q.max(Rational::zero()).min(Rational::one())
}

pub(crate) struct Sampler<'a> {
    pub space: &'a SpaceHandle,
    /// Spurs may enter circles `2..=max_spur_circle`.
    pub max_spur_circle: u32,
}

impl Sampler<'_> {
    pub fn ops(&self, rng: &mut ChaCha8Rng) -> Vec<Op> {
        let count = rng.random_range(1..=3);
        (0..count).map(|_| OPS[rng.random_range(0..OPS.len())]).collect()
    }

    pub fn apply(&self, l: &Loop, ops: &[Op], amplitude: &Rational, rng: &mut ChaCha8Rng) -> Result<Loop, String> {
        let mut path = l.path().clone();
        for op in ops {
            path = match op {
                Op::Jitter => jitter(&path, amplitude, rng)?,
                Op::Spur => self.spur(&path, amplitude, rng)?,
                Op::Backtrack => backtrack(&path, amplitude, rng)?,
                Op::Slide => self.slide(&path, amplitude, rng)?,
            };
        }
        Loop::new(path, self.space).map_err(|e| e.to_string())
    }

    /// Pause at a visit to `p`, then go out a short way along an edge
    /// incident to `p` and come back during the pause.
    fn spur(&self, path: &PLPath, amplitude: &Rational, rng: &mut ChaCha8Rng) -> Result<PLPath, String> {
        let visits: Vec<&Rational> = path
            .breakpoints()
            .iter()
            .filter(|(_, q)| q.is_origin())
            .map(|(t, _)| t)
            .collect();
        let t = visits[rng.random_range(0..visits.len())].clone();
        let one = Rational::one();
        let room = if t.is_zero() || t == one {
            rat(1, 2)
        } else {
            (&t).min(&(&one - &t)).clone() / int(2)
        };
        let tau = room.min(amplitude.clone());
        let half = &tau / int(2);
        let mut phi = vec![(Rational::zero(), Rational::zero())];
        if &t - &tau > Rational::zero() {
            phi.push((&t - &tau, &t - &tau));
        }
        let lo = clamp01(&t - &half);
        let hi = clamp01(&t + &half);
        phi.push((lo.clone(), t.clone()));
        phi.push((hi.clone(), t.clone()));
        if &t + &tau < one {
            phi.push((&t + &tau, &t + &tau));
        }
        phi.push((one.clone(), one));
        phi.dedup_by(|a, b| a.0 == b.0);
        let paused = path.reparametrize(&phi).map_err(|e| e.to_string())?;

        let index = rng.random_range(2..=self.max_spur_circle);
        let circle = self.space.circle(index).map_err(|e| e.to_string())?;
        let u = amplitude * unit(rng);
        let tip = if rng.random_bool(0.5) {
            circle.edge(Edge::Rise).point_at(&u)
        } else {
            circle.edge(Edge::Fall).point_at(&(Rational::one() - &u))
        };
        let mid = (&lo + &hi) / int(2);
        let mut bps = paused.breakpoints().to_vec();
        let at = bps.iter().position(|(s, _)| *s > mid).expect("pause ends before 1");
        bps.insert(at, (mid, tip));
        PLPath::new(bps).map_err(|e| e.to_string())
    }

    /// Move an interior breakpoint that is not a vertex along its edge.
    fn slide(&self, path: &PLPath, amplitude: &Rational, rng: &mut ChaCha8Rng) -> Result<PLPath, String> {
        let bps = path.breakpoints();
        let mut movable: Vec<(usize, Segment)> = Vec::new();
        for (i, (_, q)) in bps.iter().enumerate() {
            match self.space.locate(q).map_err(|e| e.to_string())? {
                Location::Circle(c) if !c.vertices().contains(q) => {
                    movable.push((i, c.edge(c.edges_containing(q)[0]).clone()))
                }
                Location::Alpha if q.y < Rational::one() => movable.push((i, alpha_segment())),
                _ => {}
            }
        }
        if movable.is_empty() {
            return Ok(path.clone());
        }
        let (i, seg) = &movable[rng.random_range(0..movable.len())];
        let f = seg.fraction_of(&bps[*i].1) + amplitude * signed_unit(rng);
        if f <= Rational::zero() || f >= Rational::one() {
            return Ok(path.clone());
        }
        let mut out = bps.to_vec();
        out[*i].1 = seg.point_at(&f);
        PLPath::new(out).map_err(|e| e.to_string())
    }
}

/// Precompose with a random nondecreasing PL map within `amplitude` of the
/// identity.
fn jitter(path: &PLPath, amplitude: &Rational, rng: &mut ChaCha8Rng) -> Result<PLPath, String> {
    let k = rng.random_range(1..=3);
    let mut s: Vec<Rational> = (0..k).map(|_| rat(rng.random_range(1..1024), 1024)).collect();
    s.sort();
    s.dedup();
    let mut v: Vec<Rational> = s.iter().map(|si| clamp01(si + amplitude * signed_unit(rng))).collect();
    v.sort();
    let mut phi = vec![(Rational::zero(), Rational::zero())];
    phi.extend(s.into_iter().zip(v));
    phi.push((Rational::one(), Rational::one()));
    path.reparametrize(&phi).map_err(|e| e.to_string())
}

/// Inside one piece `A -> B`, run past a point, step back a little, then
/// carry on to `B`.
fn backtrack(path: &PLPath, amplitude: &Rational, rng: &mut ChaCha8Rng) -> Result<PLPath, String> {
    let bps = path.breakpoints();
    let pieces: Vec<usize> = (0..bps.len() - 1).filter(|&i| bps[i].1 != bps[i + 1].1).collect();
    if pieces.is_empty() {
        return Ok(path.clone());
    }
    let i = pieces[rng.random_range(0..pieces.len())];
    let ((ta, a), (tb, b)) = (&bps[i], &bps[i + 1]);
    let span = tb - ta;
    let u1 = rat(rng.random_range(256..768), 1024);
    let u2 = clamp01(&u1 - amplitude * unit(rng));
    let d = (amplitude * unit(rng)).min((Rational::one() - &u1) / int(2));
    let mut out = bps[..=i].to_vec();
    out.push((ta + &span * &u1, a.lerp(b, &u1)));
    out.push((ta + &span * (&u1 + &d), a.lerp(b, &u2)));
    out.extend_from_slice(&bps[i + 1..]);
    PLPath::new(out).map_err(|e| e.to_string())
}
