//! The script language.
//!
//! One statement per line; `#` starts a comment.
//!
//! ```text
//! space Y8 = Y(8) width=pow10
//! loop f = alpha.updown
//! loop w = concat(C(3).once, reverse(word g2 g5^-2))
//! probe classify w
//! render Y8 f w -> out/scene.svg
//! ```
//!
//! Rationals are written `num/den`; decimal literals are rejected.

use pi1lab_core::geometry::rational::Rational;
use pi1lab_core::spaces::{SpaceKind, WidthProfile};
use pi1lab_core::words::{Word, FIRST_GENERATOR};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoopExpr {
    AlphaUpDown,
    Once(u32),
    Inv(u32),
    Concat(Vec<LoopExpr>),
    Reverse(Box<LoopExpr>),
    Word(Word),
    Points(Vec<(Rational, Rational, Rational)>),
    Name(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Probe {
    Classify(String),
    Dist(String, String),
    Decompose(String),
    ChooseN(String),
    Collapse(String),
    Disjointness {
        upto: Option<u32>,
    },
    Hausdorff {
        upto: Option<u32>,
    },
    Nondiscreteness {
        nmax: Option<u32>,
        eps: Option<Rational>,
    },
    Discreteness {
        name: String,
        trials: Option<u32>,
        magnitude: Option<Rational>,
        seed: Option<u64>,
    },
    Slsc {
        radius: Option<Rational>,
        samples: Option<u32>,
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    /// `hint` is the number of circles `C_2..C_{hint+1}` used by default.
    Space {
        name: String,
        kind: SpaceKind,
        hint: u32,
        width: WidthProfile,
    },
    Loop {
        name: String,
        expr: LoopExpr,
    },
    Probe(Probe),
    Render {
        names: Vec<String>,
        path: String,
    },
    Demo {
        nmax: Option<u32>,
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone)]
pub struct Script {
    pub statements: Vec<Statement>,
    /// Source line of each statement.
    pub lines: Vec<usize>,
}

impl PartialEq for Script {
    fn eq(&self, other: &Self) -> bool {
        self.statements == other.statements
    }
}

impl Script {
    pub fn new(statements: Vec<Statement>) -> Self {
        let lines = (1..=statements.len()).collect();
        Script { statements, lines }
    }
}

// ---------------------------------------------------------------- printing

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

impl fmt::Display for LoopExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopExpr::AlphaUpDown => write!(f, "alpha.updown"),
            LoopExpr::Once(n) => write!(f, "C({n}).once"),
            LoopExpr::Inv(n) => write!(f, "C({n}).inv"),
            LoopExpr::Concat(items) => {
                write!(f, "concat(")?;
                write_list(f, items)?;
                write!(f, ")")
            }
            LoopExpr::Reverse(e) => write!(f, "reverse({e})"),
            LoopExpr::Word(w) => write!(f, "word {w}"),
            LoopExpr::Points(pts) => {
                write!(f, "points [")?;
                let shown: Vec<String> = pts.iter().map(|(t, x, y)| format!("({t}, {x}, {y})")).collect();
                write_list(f, &shown)?;
                write!(f, "]")
            }
            LoopExpr::Name(n) => write!(f, "{n}"),
        }
    }
}

struct Opt<'a, T>(&'a str, &'a Option<T>);

impl<T: fmt::Display> fmt::Display for Opt<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.1 {
            Some(v) => write!(f, " {}={v}", self.0),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probe::Classify(n) => write!(f, "probe classify {n}"),
            Probe::Dist(a, b) => write!(f, "probe dist {a} {b}"),
            Probe::Decompose(n) => write!(f, "probe decompose {n}"),
            Probe::ChooseN(n) => write!(f, "probe choose_n {n}"),
            Probe::Collapse(n) => write!(f, "probe collapse {n}"),
            Probe::Disjointness { upto } => write!(f, "probe disjointness{}", Opt("upto", upto)),
            Probe::Hausdorff { upto } => write!(f, "probe hausdorff{}", Opt("upto", upto)),
            Probe::Nondiscreteness { nmax, eps } => {
                write!(f, "probe nondiscreteness{}{}", Opt("nmax", nmax), Opt("eps", eps))
            }
            Probe::Discreteness {
                name,
                trials,
                magnitude,
                seed,
            } => write!(
                f,
                "probe discreteness {name}{}{}{}",
                Opt("trials", trials),
                Opt("magnitude", magnitude),
                Opt("seed", seed)
            ),
            Probe::Slsc { radius, samples, seed } => write!(
                f,
                "probe slsc{}{}{}",
                Opt("radius", radius),
                Opt("samples", samples),
                Opt("seed", seed)
            ),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Space {
                name,
                kind,
                hint,
                width,
            } => write!(f, "space {name} = {}({hint}) width={width}", kind.symbol()),
            Statement::Loop { name, expr } => write!(f, "loop {name} = {expr}"),
            Statement::Probe(p) => write!(f, "{p}"),
            Statement::Render { names, path } => {
                write!(f, "render")?;
                for n in names {
                    write!(f, " {n}")?;
                }
                write!(f, " -> {path}")
            }
            Statement::Demo { nmax, seed } => write!(f, "demo whitehead{}{}", Opt("nmax", nmax), Opt("seed", seed)),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- lexing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Eq,
    Caret,
    Minus,
    Arrow,
    /// Everything after `->`, trimmed.
    Rest(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Num(s) => write!(f, "`{s}`"),
            Tok::Rest(s) => write!(f, "`{s}`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Arrow => write!(f, "`->`"),
        }
    }
}

fn lex_line(text: &str, line: usize) -> Result<Vec<(Tok, usize)>, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |col: usize, message: String| Diagnostic { line, col, message };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                return Err(err(col, "decimal literals are not accepted; write rationals as num/den".into()));
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), col));
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Arrow, col));
            let rest: String = chars[i + 2..].iter().collect::<String>().trim().to_string();
            if !rest.is_empty() {
                out.push((Tok::Rest(rest), i + 3));
            }
            break;
        }
        let tok = match c {
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '=' => Tok::Eq,
            '^' => Tok::Caret,
            '-' => Tok::Minus,
            other => return Err(err(col, format!("unexpected character `{other}`"))),
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

// ---------------------------------------------------------------- parsing

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Binding {
    Space,
    Loop,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    names: &'a BTreeMap<String, Binding>,
}

const KEYWORDS: [&str; 11] = [
    "space", "loop", "probe", "render", "demo", "alpha", "C", "concat", "reverse", "word", "points",
];

impl Parser<'_> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, Diagnostic> {
        Err(self.diag(self.col(), message))
    }

    fn diag(&self, col: usize, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            line: self.line,
            col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            Some(t) => format!("found {t}"),
            None => "found end of line".into(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<(), Diagnostic> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected {want}, {}", self.describe_next()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, Diagnostic> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail(format!("expected {what}, {}", self.describe_next())),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), Diagnostic> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("expected `{kw}`, {}", self.describe_next())),
        }
    }

    fn new_name(&mut self) -> Result<String, Diagnostic> {
        let col = self.col();
        let name = self.ident("a name")?;
        if KEYWORDS.contains(&name.as_str()) {
            return Err(self.diag(col, format!("`{name}` is reserved")));
        }
        Ok(name)
    }

    fn bound(&mut self, want: Option<Binding>) -> Result<String, Diagnostic> {
        let col = self.col();
        let name = self.ident("a name")?;
        match (self.names.get(&name), want) {
            (None, _) => Err(self.diag(col, format!("unbound name `{name}`"))),
            (Some(b), Some(w)) if *b != w => {
                let what = if w == Binding::Loop { "a loop" } else { "a space" };
                Err(self.diag(col, format!("`{name}` is not {what}")))
            }
            _ => Ok(name),
        }
    }

    fn end(&self) -> Result<(), Diagnostic> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.fail(format!("unexpected {t} after statement")),
        }
    }

    fn uint(&mut self) -> Result<BigInt, Diagnostic> {
        match self.peek() {
            Some(Tok::Num(s)) => {
                let v = s.parse().expect("digits");
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail(format!("expected a number, {}", self.describe_next())),
        }
    }

    fn small<T: TryFrom<BigInt>>(&mut self) -> Result<T, Diagnostic> {
        let col = self.col();
        let v = self.uint()?;
        T::try_from(v).map_err(|_| self.diag(col, "number out of range"))
    }

    fn circle_index(&mut self) -> Result<u32, Diagnostic> {
        let col = self.col();
        let n: u32 = self.small()?;
        if n < FIRST_GENERATOR {
            return Err(self.diag(col, "circle index must be ≥ 2"));
        }
        Ok(n)
    }

    fn rational(&mut self) -> Result<Rational, Diagnostic> {
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let num = self.uint()?;
        let den = if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let col = self.col();
            let d = self.uint()?;
            if d == BigInt::from(0) {
                return Err(self.diag(col, "zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        let q = Rational::new(num, den);
        Ok(if negative { -q } else { q })
    }

    fn loop_expr(&mut self) -> Result<LoopExpr, Diagnostic> {
        let head = self.ident("a loop expression")?;
        match head.as_str() {
            "alpha" => {
                self.expect(Tok::Dot)?;
                self.keyword("updown")?;
                Ok(LoopExpr::AlphaUpDown)
            }
            "C" => {
                self.expect(Tok::LParen)?;
                let n = self.circle_index()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Dot)?;
                let tcol = self.col();
                match self.ident("`once` or `inv`")?.as_str() {
                    "once" => Ok(LoopExpr::Once(n)),
                    "inv" => Ok(LoopExpr::Inv(n)),
                    other => Err(self.diag(tcol, format!("expected `once` or `inv`, found `{other}`"))),
                }
            }
            "concat" => {
                self.expect(Tok::LParen)?;
                let mut items = vec![self.loop_expr()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    items.push(self.loop_expr()?);
                }
                self.expect(Tok::RParen)?;
                Ok(LoopExpr::Concat(items))
            }
            "reverse" => {
                self.expect(Tok::LParen)?;
                let e = self.loop_expr()?;
                self.expect(Tok::RParen)?;
                Ok(LoopExpr::Reverse(Box::new(e)))
            }
            "word" => self.word().map(LoopExpr::Word),
            "points" => self.points().map(LoopExpr::Points),
            _ => {
                self.pos -= 1;
                self.bound(Some(Binding::Loop)).map(LoopExpr::Name)
            }
        }
    }

    fn word(&mut self) -> Result<Word, Diagnostic> {
        let mut raw = Vec::new();
        let mut seen = false;
        loop {
            let col = self.col();
            match self.peek() {
                Some(Tok::Num(s)) if s == "1" => {
                    self.pos += 1;
                    seen = true;
                }
                Some(Tok::Ident(s)) if s.len() > 1 && s.starts_with('g') && s[1..].bytes().all(|b| b.is_ascii_digit()) => {
                    let index: u32 = s[1..].parse().map_err(|_| self.diag(col, "generator index out of range"))?;
                    if index < FIRST_GENERATOR {
                        return Err(self.diag(col, "circle index must be ≥ 2"));
                    }
                    self.pos += 1;
                    let mut exponent: i64 = 1;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        let negative = self.peek() == Some(&Tok::Minus);
                        if negative {
                            self.pos += 1;
                        }
                        let e: i64 = self.small()?;
                        exponent = if negative { -e } else { e };
                    }
                    raw.push((index, exponent));
                    seen = true;
                }
                _ => break,
            }
        }
        if !seen {
            return self.fail(format!("expected letters like `g2 g3^-1`, {}", self.describe_next()));
        }
        Word::from_syllables(raw).map_err(|e| self.diag(self.col(), e.to_string()))
    }

    fn points(&mut self) -> Result<Vec<(Rational, Rational, Rational)>, Diagnostic> {
        self.expect(Tok::LBracket)?;
        let mut pts = Vec::new();
        loop {
            self.expect(Tok::LParen)?;
            let t = self.rational()?;
            self.expect(Tok::Comma)?;
            let x = self.rational()?;
            self.expect(Tok::Comma)?;
            let y = self.rational()?;
            self.expect(Tok::RParen)?;
            pts.push((t, x, y));
            if self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                continue;
            }
            break;
        }
        self.expect(Tok::RBracket)?;
        Ok(pts)
    }

    /// `key=value` options; `f` parses the value for a known key.
    fn options(&mut self, keys: &[&str], mut f: impl FnMut(&mut Self, &str) -> Result<(), Diagnostic>) -> Result<(), Diagnostic> {
        let mut seen: Vec<String> = Vec::new();
        while self.peek().is_some() {
            let col = self.col();
            let key = self.ident("an option")?;
            if !keys.contains(&key.as_str()) {
                return Err(self.diag(col, format!("unknown option `{key}`; expected one of {}", keys.join(", "))));
            }
            if seen.contains(&key) {
                return Err(self.diag(col, format!("option `{key}` given twice")));
            }
            self.expect(Tok::Eq)?;
            f(self, &key)?;
            seen.push(key);
        }
        Ok(())
    }

    fn probe(&mut self) -> Result<Probe, Diagnostic> {
        let col = self.col();
        let kind = self.ident("a probe kind")?;
        let loop_name = |p: &mut Self| p.bound(Some(Binding::Loop));
        let probe = match kind.as_str() {
            "classify" => Probe::Classify(loop_name(self)?),
            "dist" => Probe::Dist(loop_name(self)?, loop_name(self)?),
            "decompose" => Probe::Decompose(loop_name(self)?),
            "choose_n" => Probe::ChooseN(loop_name(self)?),
            "collapse" => Probe::Collapse(loop_name(self)?),
            "disjointness" | "hausdorff" => {
                let mut upto = None;
                self.options(&["upto"], |p, _| {
                    upto = Some(p.small()?);
                    Ok(())
                })?;
                if kind == "disjointness" {
                    Probe::Disjointness { upto }
                } else {
                    Probe::Hausdorff { upto }
                }
            }
            "nondiscreteness" => {
                let (mut nmax, mut eps) = (None, None);
                self.options(&["nmax", "eps"], |p, k| {
                    match k {
                        "nmax" => nmax = Some(p.small()?),
                        _ => eps = Some(p.rational()?),
                    }
                    Ok(())
                })?;
                Probe::Nondiscreteness { nmax, eps }
            }
            "discreteness" => {
                let name = loop_name(self)?;
                let (mut trials, mut magnitude, mut seed) = (None, None, None);
                self.options(&["trials", "magnitude", "seed"], |p, k| {
                    match k {
                        "trials" => trials = Some(p.small()?),
                        "magnitude" => magnitude = Some(p.rational()?),
                        _ => seed = Some(p.small()?),
                    }
                    Ok(())
                })?;
                Probe::Discreteness {
                    name,
                    trials,
                    magnitude,
                    seed,
                }
            }
            "slsc" => {
                let (mut radius, mut samples, mut seed) = (None, None, None);
                self.options(&["radius", "samples", "seed"], |p, k| {
                    match k {
                        "radius" => radius = Some(p.rational()?),
                        "samples" => samples = Some(p.small()?),
                        _ => seed = Some(p.small()?),
                    }
                    Ok(())
                })?;
                Probe::Slsc { radius, samples, seed }
            }
            other => {
                return Err(self.diag(
                    col,
                    format!(
                        "unknown probe `{other}`; expected classify, dist, decompose, choose_n, collapse, \
                         disjointness, hausdorff, nondiscreteness, discreteness or slsc"
                    ),
                ))
            }
        };
        Ok(probe)
    }

    fn width(&mut self) -> Result<WidthProfile, Diagnostic> {
        let col = self.col();
        match self.ident("a width profile")?.as_str() {
            "pow10" | "default" => Ok(WidthProfile::Pow10),
            "decimal" => {
                self.expect(Tok::LParen)?;
                let kcol = self.col();
                let k: u32 = self.small()?;
                if k == 0 {
                    return Err(self.diag(kcol, "decimal profile needs k ≥ 1"));
                }
                self.expect(Tok::RParen)?;
                Ok(WidthProfile::Decimal(k))
            }
            "const" => {
                self.expect(Tok::LParen)?;
                let wcol = self.col();
                let w = self.rational()?;
                if w <= Rational::from_integer(0.into()) {
                    return Err(self.diag(wcol, "width must be positive"));
                }
                self.expect(Tok::RParen)?;
                Ok(WidthProfile::Constant(w))
            }
            other => Err(self.diag(
                col,
                format!("unknown width profile `{other}`; expected pow10, default, decimal(k) or const(r)"),
            )),
        }
    }

    fn statement(&mut self, has_space: bool) -> Result<(Statement, Option<(String, Binding)>), Diagnostic> {
        let col = self.col();
        let head = self.ident("a statement")?;
        let result = match head.as_str() {
            "space" => {
                let name = self.new_name()?;
                self.expect(Tok::Eq)?;
                let kcol = self.col();
                let kind = match self.ident("`X` or `Y`")?.as_str() {
                    "X" => SpaceKind::BouquetX,
                    "Y" => SpaceKind::CompactY,
                    other => return Err(self.diag(kcol, format!("expected `X` or `Y`, found `{other}`"))),
                };
                self.expect(Tok::LParen)?;
                let hcol = self.col();
                let hint: u32 = self.small()?;
                if hint == 0 {
                    return Err(self.diag(hcol, "a space needs at least one circle"));
                }
                self.expect(Tok::RParen)?;
                let mut width = WidthProfile::Pow10;
                if self.peek().is_some() {
                    self.keyword("width")?;
                    self.expect(Tok::Eq)?;
                    width = self.width()?;
                }
                let binding = Some((name.clone(), Binding::Space));
                (
                    Statement::Space {
                        name,
                        kind,
                        hint,
                        width,
                    },
                    binding,
                )
            }
            "loop" => {
                if !has_space {
                    return Err(self.diag(col, "no active space; declare one with `space` first"));
                }
                let name = self.new_name()?;
                self.expect(Tok::Eq)?;
                let expr = self.loop_expr()?;
                let binding = Some((name.clone(), Binding::Loop));
                (Statement::Loop { name, expr }, binding)
            }
            "probe" => {
                if !has_space {
                    return Err(self.diag(col, "no active space; declare one with `space` first"));
                }
                (Statement::Probe(self.probe()?), None)
            }
            "render" => {
                let mut names = Vec::new();
                while let Some(Tok::Ident(_)) = self.peek() {
                    names.push(self.bound(None)?);
                }
                self.expect(Tok::Arrow)?;
                let path = match self.next() {
                    Some(Tok::Rest(p)) => p,
                    _ => return self.fail("expected an output path after `->`"),
                };
                (Statement::Render { names, path }, None)
            }
            "demo" => {
                self.keyword("whitehead")?;
                let (mut nmax, mut seed) = (None, None);
                self.options(&["nmax", "seed"], |p, k| {
                    match k {
                        "nmax" => nmax = Some(p.small()?),
                        _ => seed = Some(p.small()?),
                    }
                    Ok(())
                })?;
                (Statement::Demo { nmax, seed }, None)
            }
            other => {
                return Err(self.diag(
                    col,
                    format!("unknown statement `{other}`; expected space, loop, probe, render or demo"),
                ))
            }
        };
        self.end()?;
        Ok(result)
    }
}

pub fn parse(text: &str) -> Result<Script, Diagnostic> {
    let mut names = BTreeMap::new();
    let mut has_space = false;
    let mut statements = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = lex_line(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = Parser {
            toks,
            pos: 0,
            line,
            end_col: raw.trim_end().chars().count() + 1,
            names: &names,
        };
        let (stmt, binding) = p.statement(has_space)?;
        if let Some((name, b)) = binding {
            has_space |= b == Binding::Space;
            names.insert(name, b);
        }
        statements.push(stmt);
        lines.push(line);
    }
    Ok(Script { statements, lines })
}

/// Parses a standalone loop expression; names are not available.
pub fn parse_loop_expr(text: &str) -> Result<LoopExpr, Diagnostic> {
    let names = BTreeMap::new();
    let toks = lex_line(text, 1)?;
    let mut p = Parser {
        toks,
        pos: 0,
        line: 1,
        end_col: text.trim_end().chars().count() + 1,
        names: &names,
    };
    let e = p.loop_expr()?;
    p.end()?;
    Ok(e)
}
