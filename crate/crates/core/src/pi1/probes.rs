use super::perturb::Sampler;
use super::{classify_x, classify_y, Pi1Error};
use crate::geometry::rational::{int, rat};
use crate::geometry::{point_segment_distance_sq, segments_intersect, PLPath, Point2, Rational, Segment, SqDistance};
use crate::geometry::sup_distance;
use crate::loops::{constant_loop, standard_f, standard_fn, Loop};
use crate::report::{ProbeReport, Witness};
use crate::spaces::{alpha_segment, Edge, SpaceHandle, SpaceKind};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Number of times a perturbation amplitude is halved before giving up on a
/// trial.
const MAX_HALVINGS: u32 = 40;

/// Sup distances between `f_n` and `f` for `n = 2..=n_max`, with the words
/// on both sides. Passes when the distances strictly decrease, the last one is
/// below `epsilon` and every `f_n` is essential while `f` is not.
pub fn probe_nondiscreteness_y(space: &SpaceHandle, n_max: u32, epsilon: &Rational) -> Result<ProbeReport, Pi1Error> {
    if n_max < 2 {
        return Err(Pi1Error::Precondition(format!("n_max must be >= 2, got {n_max}")));
    }
    if !epsilon.is_positive() {
        return Err(Pi1Error::Precondition(format!("epsilon must be positive, got {epsilon}")));
    }
    let f = standard_f(space)?;
    let f_word = classify_y(&f)?.word;
    let mut report = ProbeReport::new(
        "nondiscreteness_Y",
        "the path component of the constant loop is not open: loops f_n in distinct classes converge uniformly to the null-homotopic f",
    );
    report
        .param("space", space)
        .param("n_max", n_max)
        .param("epsilon", epsilon);
    report.witness(Witness::new("f: up and down alpha").with("word", f_word.to_string()));
    if !f_word.is_identity() {
        report.counter(Witness::new("f is not null-homotopic").with("word", f_word.to_string()));
    }
    let mut previous: Option<SqDistance> = None;
    let mut last = None;
    for n in 2..=n_max {
        let fn_loop = standard_fn(space, n)?;
        let word = classify_y(&fn_loop)?.word;
        let d = sup_distance(fn_loop.path(), f.path());
        report.witness(
            Witness::new(format!("f_{n} vs f"))
                .with("word", word.to_string())
                .with("sup distance", d.clone()),
        );
        if word.is_identity() {
            report.counter(Witness::new(format!("f_{n} classified as identity")));
        }
        if let Some(prev) = &previous {
            if d >= *prev {
                report.counter(
                    Witness::new(format!("distance does not decrease at n = {n}"))
                        .with("previous", prev.clone())
                        .with("current", d.clone()),
                );
            }
        }
        previous = Some(d.clone());
        last = Some(d);
    }
    let last = last.expect("n_max >= 2");
    if last.cmp_distance(epsilon) != std::cmp::Ordering::Less {
        report.counter(
            Witness::new(format!("distance at n = {n_max} is not below epsilon"))
                .with("distance", last)
                .with("epsilon", epsilon.clone()),
        );
    } else {
        report.note(format!(
            "every ball of radius {epsilon} about f meets a loop outside the class of f"
        ));
    }
    Ok(report)
}

/// The part of `s` with `y >= 1/2`, if any.
fn clip_upper(s: &Segment) -> Option<Segment> {
    let half = rat(1, 2);
    let (a, b) = (s.a(), s.b());
    match (a.y >= half, b.y >= half) {
        (true, true) => Some(s.clone()),
        (false, false) => None,
        (a_up, _) => {
            let u = (&half - &a.y) / (&b.y - &a.y);
            let cut = a.lerp(b, &u);
            let kept = if a_up { Segment::new(a.clone(), cut) } else { Segment::new(cut, b.clone()) };
            kept.ok()
        }
    }
}

fn segment_distance_sq(s: &Segment, t: &Segment) -> Rational {
    if !segments_intersect(s, t).is_empty() {
        return Rational::zero();
    }
    [
        point_segment_distance_sq(s.a(), t),
        point_segment_distance_sq(s.b(), t),
        point_segment_distance_sq(t.a(), s),
        point_segment_distance_sq(t.b(), s),
    ]
    .into_iter()
    .min()
    .expect("four candidates")
}

/// Squared stability radius for loops reaching circles up to `n`:
/// `ρ = (1/8)·min(1/n², c)` where `c` is the least distance between edges of
/// distinct circles among `C_2..C_{n+1}` above height 1/2.
pub fn stability_radius(space: &SpaceHandle, n: u32) -> Result<SqDistance, Pi1Error> {
    let n = n.max(2);
    let clipped: Vec<Vec<Segment>> = (2..=n + 1)
        .map(|k| {
            let c = space.circle(k)?;
            Ok(Edge::ALL.iter().filter_map(|&e| clip_upper(c.edge(e))).collect())
        })
        .collect::<Result<_, Pi1Error>>()?;
    let nn = int(i64::from(n));
    let mut best = Rational::one() / (&nn * &nn * &nn * &nn);
    for i in 0..clipped.len() {
        for j in i + 1..clipped.len() {
            for s in &clipped[i] {
                for t in &clipped[j] {
                    best = best.min(segment_distance_sq(s, t));
                }
            }
        }
    }
    Ok(SqDistance::from_rational(best / int(64)))
}

/// Random small perturbations of a loop in `X` keep its word.
pub fn probe_discreteness_x(l: &Loop, trials: u32, magnitude: &Rational, seed: u64) -> Result<ProbeReport, Pi1Error> {
    if l.space().kind() != SpaceKind::BouquetX {
        return Err(Pi1Error::WrongSpace {
            operation: "probe_discreteness_X",
            expected: "X",
            found: l.space().to_string(),
        });
    }
    if !magnitude.is_positive() {
        return Err(Pi1Error::Precondition(format!("magnitude must be positive, got {magnitude}")));
    }
    let n = l.max_circle_index().unwrap_or(2);
    let rho = stability_radius(l.space(), n)?;
    let rho_sq = rho.as_rational().expect("rational radius").clone();
    if magnitude * magnitude >= rho_sq {
        return Err(Pi1Error::MagnitudeTooLarge {
            magnitude: magnitude.clone(),
            radius_sq: rho_sq,
        });
    }
    let word = classify_x(l)?.word;
    let mut report = ProbeReport::new(
        "discreteness_X",
        "loops within the stability radius of the given loop lie in its class",
    );
    report
        .param("space", l.space())
        .param("loop", l.path())
        .param("trials", trials)
        .param("magnitude", magnitude)
        .param("seed", seed);
    report.witness(
        Witness::new("base loop")
            .with("word", word.to_string())
            .with("largest circle N", n.to_string())
            .with("stability radius", rho),
    );
    let sampler = Sampler {
        space: l.space(),
        max_spur_circle: n + 3,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unchanged = 0u32;
    for trial in 1..=trials {
        let ops = sampler.ops(&mut rng);
        let names = ops.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("+");
        let mut amplitude = magnitude / int(2);
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            match sampler.apply(l, &ops, &amplitude, &mut rng) {
                Ok(candidate) => {
                    let d = sup_distance(l.path(), candidate.path());
                    if d.cmp_distance(magnitude) == std::cmp::Ordering::Less {
                        accepted = Some((candidate, d));
                        break;
                    }
                }
                Err(e) => {
                    report.counter(Witness::new(format!("trial {trial}: perturbation left the space")).with("error", e));
                    break;
                }
            }
            amplitude /= int(2);
        }
        let Some((candidate, d)) = accepted else {
            unchanged += 1;
            continue;
        };
        let got = classify_x(&candidate)?.word;
        let row = Witness::new(format!("trial {trial}: {names}"))
            .with("sup distance", d)
            .with("word", got.to_string());
        if got == word {
            report.witness(row);
        } else {
            report.counter(row.with("expected", word.to_string()));
        }
    }
    if unchanged > 0 {
        report.note(format!("{unchanged} trials found no perturbation below the magnitude and were skipped"));
    }
    Ok(report)
}

/// The first breakpoint outside the closed ball of `radius` about `p`.
/// Balls are convex, so checking breakpoints suffices.
pub fn ball_check(l: &Loop, radius: &Rational) -> Option<(Rational, Point2)> {
    let r2 = radius * radius;
    l.path()
        .breakpoints()
        .iter()
        .find(|(_, q)| q.norm_sq() > r2)
        .cloned()
}

/// Loops inside the ball of `radius` about `p` are null-homotopic in `Y`.
pub fn probe_slsc_y(space: &SpaceHandle, radius: &Rational, samples: u32, seed: u64) -> Result<ProbeReport, Pi1Error> {
    check_radius(space, radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut loops = vec![constant_loop(space)];
    for _ in 1..samples {
        loops.push(small_loop(space, radius, &mut rng)?);
    }
    loops.truncate(samples as usize);
    let mut report = probe_slsc_y_on(space, radius, &loops)?;
    report.param("seed", seed);
    Ok(report)
}

fn check_radius(space: &SpaceHandle, radius: &Rational) -> Result<(), Pi1Error> {
    if space.kind() != SpaceKind::CompactY {
        return Err(Pi1Error::Precondition(format!("probe_slsc_Y needs Y, got {space}")));
    }
    if !radius.is_positive() || *radius >= rat(1, 2) {
        return Err(Pi1Error::Precondition(format!("radius must lie in (0, 1/2), got {radius}")));
    }
    Ok(())
}

/// Runs the ball check and classification on the given loops.
pub fn probe_slsc_y_on(space: &SpaceHandle, radius: &Rational, loops: &[Loop]) -> Result<ProbeReport, Pi1Error> {
    check_radius(space, radius)?;
    let mut report = ProbeReport::new(
        "slsc_Y",
        "every loop in a small ball about p is null-homotopic in Y",
    );
    report
        .param("space", space)
        .param("radius", radius)
        .param("samples", loops.len());
    for (i, l) in loops.iter().enumerate() {
        let label = format!("sample {i}: {} breakpoints", l.path().breakpoints().len());
        if let Some((t, q)) = ball_check(l, radius) {
            report.counter(
                Witness::new(format!("{label}, outside the ball, not classified"))
                    .with("t", t)
                    .with("point", q.to_string()),
            );
            continue;
        }
        let word = classify_y(l)?.word;
        let row = Witness::new(label).with("word", word.to_string());
        if word.is_identity() {
            report.witness(row);
        } else {
            report.counter(row);
        }
    }
    report.note("every C_n reaches height 1, so no loop in the ball completes a circuit");
    report.note("together with nondiscreteness_Y: Y is semilocally simply connected at p while pi1(Y,p) is not discrete");
    Ok(report)
}

/// A few excursions from `p`, each wiggling along one edge incident to `p`
/// (or along `α`) without leaving distance `radius/2` of `p` in fraction.
fn small_loop(space: &SpaceHandle, radius: &Rational, rng: &mut ChaCha8Rng) -> Result<Loop, Pi1Error> {
    let kappa = radius / int(2);
    let mut points = vec![Point2::origin()];
    for _ in 0..rng.random_range(1..=4) {
        let pick = rng.random_range(0..=22u32);
        let seg: Segment = if pick < 2 {
            alpha_segment()
        } else {
            let c = space.circle(2 + pick / 2)?;
            if pick % 2 == 0 {
                c.edge(Edge::Rise).clone()
            } else {
                c.edge(Edge::Fall).reversed()
            }
        };
        for _ in 0..rng.random_range(1..=3) {
            let u = &kappa * rat(rng.random_range(1..=1024), 1024);
            points.push(seg.point_at(&u));
        }
        points.push(Point2::origin());
    }
    let count = int(points.len() as i64 - 1);
    let bps: Vec<(Rational, Point2)> = points
        .into_iter()
        .enumerate()
        .map(|(k, q)| (int(k as i64) / &count, q))
        .collect();
    Ok(Loop::new(PLPath::new(bps)?, space)?)
}
