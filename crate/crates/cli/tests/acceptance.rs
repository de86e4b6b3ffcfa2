//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.
//!
//! All checks are exact. The only tolerances are the runtime limits below,
//! measured on whatever profile the suite is built with.

use pi1lab::demo::{discreteness_corpus, isomorphism_evidence, random_word};
use pi1lab_core::geometry::rational::{int, pow10_inv, rat, Rational};
use pi1lab_core::geometry::{hausdorff_distance_sq, Point2, SqDistance};
use pi1lab_core::loops::{concatenate, realize_word, reverse, standard_f, standard_fn};
use pi1lab_core::pi1::{
    classify, classify_x, classify_y, collapse_to_x, probe_discreteness_x, probe_nondiscreteness_y, probe_slsc_y,
};
use pi1lab_core::report::Value;
use pi1lab_core::spaces::{alpha_segment, build_circle, verify_disjointness, SpaceHandle, SpaceKind, WidthProfile};
use pi1lab_core::words::{Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;
use std::time::{Duration, Instant};

const LIMIT_CONSTRUCTION: Duration = Duration::from_secs(10);
const LIMIT_HAUSDORFF: Duration = Duration::from_secs(30);
const LIMIT_CLASSIFICATION: Duration = Duration::from_secs(30);
const LIMIT_ISOMORPHISM: Duration = Duration::from_secs(60);
const LIMIT_NONDISCRETE: Duration = Duration::from_secs(60);
const LIMIT_DISCRETE: Duration = Duration::from_secs(60);
const LIMIT_SLSC: Duration = Duration::from_secs(60);
/// Criterion 8 has no stated limit; two full demo runs.
const LIMIT_DETERMINISM: Duration = Duration::from_secs(300);

const SEED: u64 = 7;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pow10_x() -> SpaceHandle {
    SpaceHandle::bouquet(WidthProfile::Pow10)
}

fn construction() -> Check {
    for n in 2..=20u32 {
        let c = build_circle(n, &WidthProfile::Pow10).map_err(|e| e.to_string())?;
        let w = pow10_inv(10 * n);
        let apex = Point2::new(rat(1, n.into()), int(1));
        let corner = Point2::new(rat(1, n.into()) + &w * int(n.into()), int(1) - &w);
        ensure(c.base().is_origin() && c.apex() == &apex && c.corner() == &corner, || {
            format!("C{n} vertices differ from (0,0), (1/n,1), B_n + w_n(n,-1)")
        })?;
    }
    let r = verify_disjointness(&pow10_x(), 20).map_err(|e| e.to_string())?;
    let pairs = r
        .witnesses
        .iter()
        .flat_map(|w| &w.fields)
        .find(|(k, _)| k == "pairs checked")
        .map(|(_, v)| v.clone());
    ensure(pairs == Some(Value::Text("171".into())), || format!("pairs checked = {pairs:?}"))?;
    ensure(r.passed(), || "disjointness verdict FAIL".into())?;
    Ok("vertices exact for n = 2..20; 171/171 pairs meet only at p".into())
}

fn hausdorff() -> Check {
    let y = pow10_x().with_kind(SpaceKind::CompactY);
    let alpha = [alpha_segment()];
    let mut prev: Option<SqDistance> = None;
    for n in 2..=20u32 {
        let c = y.circle(n).map_err(|e| e.to_string())?;
        let d = hausdorff_distance_sq(c.edges(), &alpha).map_err(|e| e.to_string())?;
        let nq = int(n.into());
        let expected = (Rational::from_integer(1.into()) / &nq + &nq * pow10_inv(10 * n)).pow(2);
        ensure(d.as_rational() == Some(&expected), || format!("n = {n}: d_H^2 = {}", d.squared()))?;
        ensure(d.cmp_distance(&rat(2, n.into())).is_le(), || format!("n = {n}: exceeds 2/n"))?;
        if let Some(p) = &prev {
            ensure(d < *p, || format!("n = {n}: not strictly decreasing"))?;
        }
        prev = Some(d);
    }
    Ok("d_H(C_n, alpha)^2 = (1/n + n w_n)^2 exactly, strictly decreasing, <= (2/n)^2 for n = 2..20".into())
}

/// Independent reduction oracle: delete adjacent inverse pairs until none remain.
fn fixpoint_scan(raw: &[Letter]) -> Vec<Letter> {
    let mut letters = raw.to_vec();
    while let Some(i) = letters
        .windows(2)
        .position(|w| w[0].index == w[1].index && w[0].inverse != w[1].inverse)
    {
        letters.drain(i..i + 2);
    }
    letters
}

fn raw_letters(rng: &mut ChaCha8Rng) -> Vec<Letter> {
    let len = rng.random_range(0..=10);
    (0..len)
        .map(|_| Letter::new(rng.random_range(2..=9), rng.random_bool(0.5)))
        .collect()
}

fn classification() -> Check {
    let x = pow10_x();
    let y = x.with_kind(SpaceKind::CompactY);
    for n in 2..=10 {
        let got = classify_x(&standard_fn(&x, n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(got.word == Word::generator(n).unwrap(), || format!("classify_X(f_{n}) = {}", got.word))?;
    }
    let f = classify_y(&standard_f(&y).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(f.word.is_identity(), || format!("classify_Y(f) = {}", f.word))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for trial in 0..500 {
        let space = if trial % 2 == 0 { &x } else { &y };
        let (ra, rb) = (raw_letters(&mut rng), raw_letters(&mut rng));
        let oracle = |raw: &[Letter]| fixpoint_scan(raw);
        let a = pi1lab_core::words::reduce(&ra).unwrap();
        let b = pi1lab_core::words::reduce(&rb).unwrap();
        let (la, lb) = (
            realize_word(&a, space).map_err(|e| e.to_string())?,
            realize_word(&b, space).map_err(|e| e.to_string())?,
        );
        let ca = classify(&la).map_err(|e| e.to_string())?.word;
        ensure(ca.letters().collect::<Vec<_>>() == oracle(&ra), || format!("round-trip failed for {a}"))?;
        let ab = concatenate(&la, &lb).map_err(|e| e.to_string())?;
        let joined: Vec<Letter> = ra.iter().chain(&rb).copied().collect();
        let cab = classify(&ab).map_err(|e| e.to_string())?.word;
        ensure(cab.letters().collect::<Vec<_>>() == oracle(&joined), || {
            format!("homomorphism failed for {a} * {b}")
        })?;
        let inv = classify(&reverse(&la)).map_err(|e| e.to_string())?.word;
        ensure(inv == a.invert(), || format!("reverse failed for {a}"))?;
    }
    Ok("f_n -> g_n for n = 2..10, f -> 1; 500 homomorphism/round-trip trials agree with the oracle".into())
}

fn isomorphism() -> Check {
    let x = pow10_x();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let words: Vec<Word> = (0..100).map(|_| random_word(&mut rng, 10)).collect();
    let r = isomorphism_evidence(&x, &words).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.witnesses.len() == 100, || {
        format!("{} counter-witnesses", r.counter_witnesses.len())
    })?;
    // one decorated collapse checked directly
    let y = x.with_kind(SpaceKind::CompactY);
    let f = standard_f(&y).map_err(|e| e.to_string())?;
    let w = &words[0];
    let l = concatenate(&f, &realize_word(w, &x).and_then(|l| l.include(&y)).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let c = collapse_to_x(&l).map_err(|e| e.to_string())?;
    ensure(c.space().kind() == SpaceKind::BouquetX && c.validate().is_ok(), || "collapse left X".into())?;
    Ok("100 words: classify_Y(j(w)) = w and alpha-decorated collapses keep w".into())
}

fn nondiscreteness() -> Check {
    let y = pow10_x().with_kind(SpaceKind::CompactY);
    let r = probe_nondiscreteness_y(&y, 32, &rat(1, 10)).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.render(12))?;
    ensure(r.witnesses.len() == 32, || format!("{} rows", r.witnesses.len()))?;
    let mut prev: Option<&SqDistance> = None;
    for w in &r.witnesses[1..] {
        let d = w.fields.iter().find_map(|(k, v)| match v {
            Value::Distance(d) if k == "sup distance" => Some(d),
            _ => None,
        });
        let d = d.ok_or("missing distance")?;
        let word = w.fields.iter().find(|(k, _)| k == "word").map(|(_, v)| v.clone());
        ensure(word != Some(Value::Text("1".into())), || format!("{}: identity word", w.label))?;
        if let Some(p) = prev {
            ensure(d < p, || format!("{}: not decreasing", w.label))?;
        }
        prev = Some(d);
    }
    Ok("n = 2..32: sup distances strictly decrease below 1/10, words g_n, word(f) = 1".into())
}

fn discreteness() -> Check {
    for (name, l) in discreteness_corpus(&pow10_x()).map_err(|e| e.to_string())? {
        let r = probe_discreteness_x(&l, 100, &rat(1, 1000), SEED).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.witnesses.len() == 101, || format!("{name}: {}", r.render(12)))?;
    }
    Ok("5 loops x 100 seeded perturbations at magnitude 1/1000: words invariant".into())
}

fn slsc() -> Check {
    let y = pow10_x().with_kind(SpaceKind::CompactY);
    let r = probe_slsc_y(&y, &rat(1, 4), 50, SEED).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.witnesses.len() == 50, || r.render(12))?;
    let nd = probe_nondiscreteness_y(&y, 32, &rat(1, 10)).map_err(|e| e.to_string())?;
    ensure(nd.passed(), || "nondiscreteness failed".into())?;
    Ok("50 loops in the 1/4-ball are trivial while pi1(Y,p) is not discrete: SLSC without discreteness".into())
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_pi1lab");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for i in 0..2 {
        let svg = dir.path().join(format!("run{i}.svg"));
        let out = Command::new(bin)
            .args(["demo", "whitehead", "--seed", "7", "--svg"])
            .arg(&svg)
            .env_remove("PI1LAB_DIGITS")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || format!("exit status {:?}", out.status.code()))?;
        outputs.push((out.stdout, std::fs::read(&svg).map_err(|e| e.to_string())?));
    }
    ensure(outputs[0].0 == outputs[1].0, || "reports differ".into())?;
    ensure(outputs[0].1 == outputs[1].1, || "SVGs differ".into())?;
    let summary = String::from_utf8_lossy(&outputs[0].0);
    ensure(summary.trim_end().ends_with("verdict: PASS"), || "summary not PASS".into())?;
    Ok(format!(
        "two runs: {} report bytes and {} SVG bytes, identical",
        outputs[0].0.len(),
        outputs[0].1.len()
    ))
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Check); 8] = [
        (1, "construction fidelity", LIMIT_CONSTRUCTION, construction),
        (2, "Hausdorff convergence", LIMIT_HAUSDORFF, hausdorff),
        (3, "classification", LIMIT_CLASSIFICATION, classification),
        (4, "isomorphism evidence", LIMIT_ISOMORPHISM, isomorphism),
        (5, "non-discreteness of pi1(Y)", LIMIT_NONDISCRETE, nondiscreteness),
        (6, "discreteness evidence for pi1(X)", LIMIT_DISCRETE, discreteness),
        (7, "SLSC yet non-discrete", LIMIT_SLSC, slsc),
        (8, "determinism", LIMIT_DETERMINISM, determinism),
    ];
    let mut failures = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (verdict, detail) = match result {
            Ok(_) if elapsed > limit => ("FAIL", format!("over the {}s limit", limit.as_secs())),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {id} [{name}]: {verdict} ({:.1}s, limit {}s) {detail}",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
