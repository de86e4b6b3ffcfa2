//! `demo whitehead`: the full pipeline on the `pow10` width profile, ending in
//! a summary report.

use crate::svg::{self, Scene};
use pi1lab_core::geometry::rational::rat;
use pi1lab_core::loops::{concatenate, constant_loop, realize_word, standard_f, standard_fn, Loop};
use pi1lab_core::pi1::{
    classify_x, classify_y, collapse_to_x, probe_discreteness_x, probe_nondiscreteness_y, probe_slsc_y, Pi1Error,
};
use pi1lab_core::report::{ProbeReport, Witness};
use pi1lab_core::spaces::{hausdorff_convergence, verify_disjointness, SpaceHandle, SpaceKind, WidthProfile};
use pi1lab_core::words::{Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DISJOINT_UP_TO: u32 = 20;
pub const ISO_WORDS: usize = 100;
pub const DISCRETE_TRIALS: u32 = 100;
pub const SLSC_SAMPLES: u32 = 50;

pub struct DemoOutput {
    pub report: String,
    pub svg: String,
    pub passed: bool,
}

/// A reduced word from at most `max_len` random letters over `g2..g9`.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter::new(rng.random_range(2..=9), rng.random_bool(0.5)))
        .collect();
    pi1lab_core::words::reduce(&letters).expect("indices >= 2")
}

/// `classify_Y(j(realize_word(w))) = w`, and collapsing `f·j(...)·f` lands in
/// `X` with the same word.
pub fn isomorphism_evidence(x: &SpaceHandle, words: &[Word]) -> Result<ProbeReport, Pi1Error> {
    let y = x.with_kind(SpaceKind::CompactY);
    let f = standard_f(&y)?;
    let mut report = ProbeReport::new(
        "isomorphism_evidence",
        "j_* is the identity on reduced words and collapse onto X preserves them",
    );
    report.param("space", x).param("words", words.len());
    for w in words {
        let lx = realize_word(w, x)?;
        let jl = lx.include(&y)?;
        let in_y = classify_y(&jl)?.word;
        let decorated = concatenate(&concatenate(&f, &jl)?, &f)?;
        let collapsed = collapse_to_x(&decorated)?;
        let after = classify_x(&collapsed)?.word;
        let row = Witness::new(format!("w = {w}"))
            .with("classify_Y(j(w))", in_y.to_string())
            .with("collapse(f.j(w).f)", after.to_string());
        if in_y == *w && after == *w && collapsed.space().kind() == SpaceKind::BouquetX {
            report.witness(row);
        } else {
            report.counter(row);
        }
    }
    report.note("distinct reduced words are distinct normal forms, so the map on words is injective");
    Ok(report)
}

pub fn discreteness_corpus(x: &SpaceHandle) -> Result<Vec<(String, Loop)>, Pi1Error> {
    let word = |s: &str| s.parse::<Word>().expect("literal");
    Ok(vec![
        ("constant".into(), constant_loop(x)),
        ("f_2".into(), standard_fn(x, 2)?),
        ("f_3".into(), standard_fn(x, 3)?),
        ("g2 g3".into(), realize_word(&word("g2 g3"), x)?),
        ("g2^2 g5^-1".into(), realize_word(&word("g2^2 g5^-1"), x)?),
    ])
}

pub fn whitehead(nmax: u32, seed: u64, digits: usize) -> Result<DemoOutput, Pi1Error> {
    let x = SpaceHandle::bouquet(WidthProfile::Pow10);
    let y = x.with_kind(SpaceKind::CompactY);
    let mut reports: Vec<(String, ProbeReport)> = Vec::new();

    reports.push(("construction".into(), verify_disjointness(&y, DISJOINT_UP_TO)?));
    reports.push(("Hausdorff convergence".into(), hausdorff_convergence(&y, DISJOINT_UP_TO)?));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<Word> = (0..ISO_WORDS).map(|_| random_word(&mut rng, 10)).collect();
    reports.push(("isomorphism".into(), isomorphism_evidence(&x, &words)?));

    let nondiscrete = probe_nondiscreteness_y(&y, nmax, &rat(1, 10))?;
    reports.push(("pi1(Y,p) not discrete".into(), nondiscrete));

    for (name, l) in discreteness_corpus(&x)? {
        let r = probe_discreteness_x(&l, DISCRETE_TRIALS, &rat(1, 1000), seed)?;
        reports.push((format!("pi1(X,p) discrete near {name}"), r));
    }
    reports.push((
        "Y semilocally simply connected at p".into(),
        probe_slsc_y(&y, &rat(1, 4), SLSC_SAMPLES, seed)?,
    ));

    let mut summary = ProbeReport::new(
        "whitehead_summary",
        "pi1(X,p) and pi1(Y,p) are isomorphic groups, but pi1(X,p) is discrete and pi1(Y,p) is not, \
         so the topological fundamental groups are not homeomorphic",
    );
    summary.param("nmax", nmax).param("seed", seed);
    for (label, r) in &reports {
        let w = Witness::new(label.clone())
            .with("probe", r.probe.clone())
            .with("verdict", r.verdict().as_str());
        if r.passed() {
            summary.witness(w);
        } else {
            summary.counter(w);
        }
    }
    summary.note("Y is semilocally simply connected at p, yet pi1(Y,p) is not discrete");

    let mut text = format!("# demo whitehead nmax={nmax} seed={seed}\n\n");
    for (_, r) in &reports {
        text.push_str(&r.render(digits));
        text.push('\n');
    }
    text.push_str(&summary.render(digits));

    let scene = Scene {
        spaces: vec![(y.clone(), 8)],
        loops: vec![standard_f(&y)?, standard_fn(&y, 2)?, standard_fn(&y, 3)?],
    };
    let svg = svg::render(&scene)?;
    Ok(DemoOutput {
        report: text,
        svg,
        passed: summary.passed(),
    })
}
