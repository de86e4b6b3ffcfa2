//! Executes parsed scripts.

use crate::demo;
use crate::dsl::{LoopExpr, Probe, Script, Statement};
use crate::svg::{self, Scene};
use pi1lab_core::geometry::rational::rat;
use pi1lab_core::geometry::sup_distance;
use pi1lab_core::loops::{concatenate, realize_word, reverse, standard_f, standard_fn, winding_degree, Loop};
use pi1lab_core::pi1::{
    classify, collapse_with_certificate, choose_n, probe_discreteness_x, probe_nondiscreteness_y, probe_slsc_y,
};
use pi1lab_core::report::ProbeReport;
use pi1lab_core::spaces::{hausdorff_convergence, verify_disjointness, SpaceHandle, SpaceKind, WidthProfile};
use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::PathBuf;
use thiserror::Error;

pub const DEFAULT_NMAX: u32 = 32;
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct RunError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub digits: usize,
    /// Skip probes and demos; only bind names and render.
    pub render_only: bool,
    /// Relative render paths are resolved against this directory.
    pub base_dir: PathBuf,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            digits: pi1lab_core::geometry::rational::DEFAULT_DIGITS,
            render_only: false,
            base_dir: PathBuf::new(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Output {
    pub text: String,
    pub files: Vec<(PathBuf, String)>,
    /// Some probe reported FAIL.
    pub failed: bool,
}

/// The space standalone loop literals live in.
pub fn default_space() -> SpaceHandle {
    SpaceHandle::compact(WidthProfile::Pow10)
}

/// Evaluates a loop expression without names in `space`.
pub fn eval_standalone(expr: &LoopExpr, space: &SpaceHandle) -> Result<Loop, String> {
    eval(expr, space, &BTreeMap::new())
}

fn eval(expr: &LoopExpr, space: &SpaceHandle, loops: &BTreeMap<String, Loop>) -> Result<Loop, String> {
    let s = |e: &dyn std::fmt::Display| e.to_string();
    match expr {
        LoopExpr::AlphaUpDown => standard_f(space).map_err(|e| s(&e)),
        LoopExpr::Once(n) => standard_fn(space, *n).map_err(|e| s(&e)),
        LoopExpr::Inv(n) => standard_fn(space, *n).map(|l| reverse(&l)).map_err(|e| s(&e)),
        LoopExpr::Concat(items) => {
            let mut acc = eval(&items[0], space, loops)?;
            for item in &items[1..] {
                acc = concatenate(&acc, &eval(item, space, loops)?).map_err(|e| s(&e))?;
            }
            Ok(acc)
        }
        LoopExpr::Reverse(e) => eval(e, space, loops).map(|l| reverse(&l)),
        LoopExpr::Word(w) => realize_word(w, space).map_err(|e| s(&e)),
        LoopExpr::Points(pts) => Loop::from_points(space, pts.clone()).map_err(|e| s(&e)),
        LoopExpr::Name(n) => {
            let l = loops.get(n).ok_or_else(|| format!("unbound loop `{n}`"))?;
            if l.space() != space {
                return Err(format!("loop `{n}` lives in {}, the active space is {space}", l.space()));
            }
            Ok(l.clone())
        }
    }
}

struct State {
    spaces: BTreeMap<String, (SpaceHandle, u32)>,
    loops: BTreeMap<String, Loop>,
    active: Option<(SpaceHandle, u32)>,
    out: Output,
}

impl State {
    fn active(&self) -> Result<&(SpaceHandle, u32), String> {
        self.active.as_ref().ok_or_else(|| "no active space".to_string())
    }

    fn loop_named(&self, name: &str) -> Result<&Loop, String> {
        self.loops.get(name).ok_or_else(|| format!("unbound loop `{name}`"))
    }

    fn emit_report(&mut self, report: &ProbeReport, digits: usize) {
        self.out.failed |= !report.passed();
        self.out.text.push_str(&report.render(digits));
        self.out.text.push('\n');
    }

    fn emit(&mut self, block: String) {
        self.out.text.push_str(&block);
        self.out.text.push('\n');
    }
}

pub fn run(script: &Script, opts: &Options) -> Result<Output, RunError> {
    let mut st = State {
        spaces: BTreeMap::new(),
        loops: BTreeMap::new(),
        active: None,
        out: Output::default(),
    };
    for (stmt, &line) in script.statements.iter().zip(&script.lines) {
        step(&mut st, stmt, opts).map_err(|message| RunError { line, message })?;
    }
    Ok(st.out)
}

fn step(st: &mut State, stmt: &Statement, opts: &Options) -> Result<(), String> {
    let digits = opts.digits;
    match stmt {
        Statement::Space {
            name,
            kind,
            hint,
            width,
        } => {
            let handle = SpaceHandle::new(*kind, width.clone());
            st.spaces.insert(name.clone(), (handle.clone(), *hint));
            st.active = Some((handle, *hint));
        }
        Statement::Loop { name, expr } => {
            let space = st.active()?.0.clone();
            let l = eval(expr, &space, &st.loops)?;
            st.loops.insert(name.clone(), l);
        }
        Statement::Render { names, path } => {
            let mut scene = Scene::default();
            for n in names {
                if let Some(l) = st.loops.get(n) {
                    scene.loops.push(l.clone());
                } else if let Some(s) = st.spaces.get(n) {
                    scene.spaces.push(s.clone());
                } else {
                    return Err(format!("unbound name `{n}`"));
                }
            }
            let svg = svg::render(&scene).map_err(|e| e.to_string())?;
            let target = opts.base_dir.join(path);
            st.emit(format!("rendered {} object(s) -> {path}\n", names.len()));
            st.out.files.push((target, svg));
        }
        Statement::Probe(_) | Statement::Demo { .. } if opts.render_only => {}
        Statement::Probe(p) => probe(st, p, digits)?,
        Statement::Demo { nmax, seed } => {
            let d = demo::whitehead(nmax.unwrap_or(DEFAULT_NMAX), seed.unwrap_or(DEFAULT_SEED), digits)
                .map_err(|e| e.to_string())?;
            st.out.failed |= !d.passed;
            st.emit(d.report);
        }
    }
    Ok(())
}

fn probe(st: &mut State, p: &Probe, digits: usize) -> Result<(), String> {
    let (space, hint) = st.active()?.clone();
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match p {
        Probe::Classify(n) => {
            let l = st.loop_named(n)?;
            let class = classify(l).map_err(|e| err(&e))?;
            st.emit(format!("== classify {n}\nspace: {}\nword: {}\n", l.space(), class.word));
        }
        Probe::Dist(a, b) => {
            let (la, lb) = (st.loop_named(a)?, st.loop_named(b)?);
            let d = sup_distance(la.path(), lb.path());
            st.emit(format!(
                "== dist {a} {b}\nsup distance squared: {}\nsup distance: ~{}\n",
                d.squared(),
                d.distance_decimal(digits)
            ));
        }
        Probe::Decompose(n) => {
            let l = st.loop_named(n)?;
            let mut block = format!("== decompose {n}\n");
            let excursions = l.decompose();
            if excursions.is_empty() {
                block.push_str("constant at p\n");
            }
            for e in excursions {
                let degree = match winding_degree(&e) {
                    Ok(d) => format!("degree {d}"),
                    Err(_) => "contractible arc".into(),
                };
                writeln!(block, "excursion [{}, {}] in {}: {degree}", e.t_start, e.t_end, e.component).unwrap();
            }
            st.emit(block);
        }
        Probe::ChooseN(n) => {
            let l = st.loop_named(n)?;
            need_y(l.space(), "choose_n")?;
            st.emit(format!("== choose_n {n}\nN: {}\n", choose_n(l)));
        }
        Probe::Collapse(n) => {
            let l = st.loop_named(n)?;
            let c = collapse_with_certificate(l).map_err(|e| err(&e))?;
            let class = classify(&c.result).map_err(|e| err(&e))?;
            let mut block = format!("== collapse {n}\nN: {}\n", c.n);
            for s in &c.steps {
                writeln!(block, "step: {s}").unwrap();
            }
            writeln!(block, "collapsed: {}", c.result.path()).unwrap();
            writeln!(block, "word: {}", class.word).unwrap();
            st.emit(block);
        }
        Probe::Disjointness { upto } => {
            let r = verify_disjointness(&space, upto.unwrap_or(hint + 1)).map_err(|e| err(&e))?;
            st.emit_report(&r, digits);
        }
        Probe::Hausdorff { upto } => {
            let r = hausdorff_convergence(&space, upto.unwrap_or(hint + 1)).map_err(|e| err(&e))?;
            st.emit_report(&r, digits);
        }
        Probe::Nondiscreteness { nmax, eps } => {
            need_y(&space, "nondiscreteness")?;
            let eps = eps.clone().unwrap_or_else(|| rat(1, 10));
            let r = probe_nondiscreteness_y(&space, nmax.unwrap_or(DEFAULT_NMAX), &eps).map_err(|e| err(&e))?;
            st.emit_report(&r, digits);
        }
        Probe::Discreteness {
            name,
            trials,
            magnitude,
            seed,
        } => {
            let l = st.loop_named(name)?.clone();
            let magnitude = magnitude.clone().unwrap_or_else(|| rat(1, 1000));
            let r = probe_discreteness_x(&l, trials.unwrap_or(100), &magnitude, seed.unwrap_or(DEFAULT_SEED))
                .map_err(|e| err(&e))?;
            st.emit_report(&r, digits);
        }
        Probe::Slsc { radius, samples, seed } => {
            let radius = radius.clone().unwrap_or_else(|| rat(1, 4));
            let r = probe_slsc_y(&space, &radius, samples.unwrap_or(50), seed.unwrap_or(DEFAULT_SEED))
                .map_err(|e| err(&e))?;
            st.emit_report(&r, digits);
        }
    }
    Ok(())
}

fn need_y(space: &SpaceHandle, what: &str) -> Result<(), String> {
    if space.kind() != SpaceKind::CompactY {
        return Err(format!("{what} needs a loop or space in Y, got {space}"));
    }
    Ok(())
}
