//! Problem files: variable names, named monomial ideals and a target, which
//! is either a module expression or a raw truncated series.
//!
//! ```text
//! # R ⊕ (x, y)
//! vars = x y
//! m = ideal(x, y)
//! M = R (+) m
//! ```
//!
//! Statements end at a newline or `;`. A raw target replaces `M` by
//! `g = 1 1` and `series = 1 + 2*x + 2*y + 2*x*y`.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use hdepth::{
    determine_bound, series_of, ExponentVector, ModuleExpr, MonomialIdeal, Summand, TruncatedSeries, MAX_EXPONENT,
    MAX_VARIABLES,
};

use crate::ParseError;

const KEYWORDS: &[&str] = &["vars", "g", "series", "M", "R", "ideal", "quot", "shift"];
const MAX_REPEAT: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Module(ModuleExpr),
    Raw(TruncatedSeries),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub variables: Vec<String>,
    pub bindings: Vec<(String, MonomialIdeal)>,
    pub target: Target,
}

impl ProblemFile {
    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    /// The truncated series of the target; modules are truncated at
    /// [`determine_bound`].
    pub fn series(&self) -> hdepth::Result<TruncatedSeries> {
        match &self.target {
            Target::Module(m) => series_of(m, &determine_bound(m)),
            Target::Raw(p) => Ok(p.clone()),
        }
    }
}

/// Writes `X^a` as `x^2*y`, or `1` for the zero exponent.
pub fn format_monomial(vars: &[String], a: &ExponentVector) -> String {
    let factors: Vec<String> = a
        .coords()
        .iter()
        .zip(vars)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

fn format_ideal(vars: &[String], i: &MonomialIdeal) -> String {
    if i.is_zero() {
        return "0".into();
    }
    let gens: Vec<String> = i.generators().iter().map(|g| format_monomial(vars, g)).collect();
    format!("ideal({})", gens.join(", "))
}

fn format_summand(vars: &[String], s: &Summand) -> String {
    let inner = match s {
        Summand::Free { .. } => "R".to_string(),
        Summand::Quotient {
            numerator, denominator, ..
        } => format!("quot({}, {})", format_ideal(vars, numerator), format_ideal(vars, denominator)),
    };
    let shift = s.shift();
    if shift.coords().iter().all(|&c| c == 0) {
        inner
    } else {
        let c: Vec<String> = shift.coords().iter().map(u32::to_string).collect();
        format!("shift({inner}; {})", c.join(" "))
    }
}

/// Writes a series as `1 + 2*x + x*y`, or `0`.
pub fn format_series(vars: &[String], p: &TruncatedSeries) -> String {
    let terms: Vec<String> = p
        .iter()
        .map(|(a, c)| {
            let mono = format_monomial(vars, a);
            match (c, mono.as_str()) {
                (1, _) => mono,
                (_, "1") => c.to_string(),
                _ => format!("{c}*{mono}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars = {}", self.variables.join(" "))?;
        for (name, ideal) in &self.bindings {
            writeln!(f, "{name} = {}", format_ideal(&self.variables, ideal))?;
        }
        match &self.target {
            Target::Module(m) => {
                let terms: Vec<String> = m.terms().iter().map(|s| format_summand(&self.variables, s)).collect();
                // The zero module has no summands; `0` is accepted as a term.
                let body = if terms.is_empty() { "0".into() } else { terms.join(" (+) ") };
                writeln!(f, "M = {body}")
            }
            Target::Raw(p) => {
                let g: Vec<String> = p.bound().coords().iter().map(u32::to_string).collect();
                writeln!(f, "g = {}", g.join(" "))?;
                writeln!(f, "series = {}", format_series(&self.variables, p))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Eq,
    LParen,
    RParen,
    Comma,
    Semi,
    Plus,
    Star,
    Caret,
    Minus,
    DirectSum,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::DirectSum => f.write_str("`(+)`"),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    for (l, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let pos = Pos {
                line: l + 1,
                column: i + 1,
            };
            let c = chars[i];
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
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits
                    .parse()
                    .map_err(|_| pos.error(format!("integer {digits} is too large")))?;
                out.push((Tok::Int(n), pos));
                continue;
            }
            if chars[i..].starts_with(&['(', '+', ')']) {
                out.push((Tok::DirectSum, pos));
                i += 3;
                continue;
            }
            let tok = match c {
                '=' => Tok::Eq,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '+' => Tok::Plus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '-' => Tok::Minus,
                _ => return Err(pos.error(format!("unexpected character {c:?}"))),
            };
            out.push((tok, pos));
            i += 1;
        }
        out.push((
            Tok::Newline,
            Pos {
                line: l + 1,
                column: chars.len() + 1,
            },
        ));
    }
    let end = out.last().map_or(Pos { line: 1, column: 1 }, |(_, p)| *p);
    out.push((Tok::Eof, end));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    vars: Option<Vec<String>>,
    var_index: HashMap<String, usize>,
    bindings: Vec<(String, MonomialIdeal)>,
    binding_index: HashMap<String, usize>,
    module: Option<(ModuleExpr, Pos)>,
    bound: Option<(Vec<u32>, Pos)>,
    series: Option<(Vec<SeriesTerm>, Pos)>,
}

type SeriesTerm = (ExponentVector, u64, Pos);

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, ParseError> {
        let (tok, pos) = self.bump();
        if tok == want {
            Ok(pos)
        } else {
            Err(pos.error(format!("expected {want}, found {tok}")))
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == want {
            self.bump();
            true
        } else {
            false
        }
    }

    fn int(&mut self, what: &str) -> Result<(u64, Pos), ParseError> {
        match self.bump() {
            (Tok::Int(n), p) => Ok((n, p)),
            (Tok::Minus, p) => Err(p.error(format!("negative {what}"))),
            (t, p) => Err(p.error(format!("expected {what}, found {t}"))),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let (n, p) = self.int("exponent")?;
        u32::try_from(n)
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| p.error(format!("exponent {n} exceeds {MAX_EXPONENT}")))
    }

    fn dim(&self, pos: Pos) -> Result<usize, ParseError> {
        self.vars
            .as_ref()
            .map(Vec::len)
            .ok_or_else(|| pos.error("`vars = ...` must come first"))
    }

    fn at_statement_end(&self) -> bool {
        matches!(self.peek(), Tok::Newline | Tok::Semi | Tok::Eof)
    }

    fn parse(mut self) -> Result<ProblemFile, ParseError> {
        loop {
            match self.peek() {
                Tok::Eof => break,
                Tok::Newline | Tok::Semi => {
                    self.bump();
                }
                _ => {
                    self.statement()?;
                    if !self.at_statement_end() {
                        let (t, p) = self.bump();
                        return Err(p.error(format!("expected end of statement, found {t}")));
                    }
                }
            }
        }
        self.finish()
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        let (tok, pos) = self.bump();
        let Tok::Ident(name) = tok else {
            return Err(pos.error(format!("expected a binding name, found {tok}")));
        };
        self.expect(Tok::Eq)?;
        match name.as_str() {
            "vars" => self.vars_statement(pos),
            "g" => {
                let n = self.dim(pos)?;
                if self.bound.is_some() {
                    return Err(pos.error("`g` is defined twice"));
                }
                let mut g = Vec::new();
                while !self.at_statement_end() {
                    g.push(self.exponent()?);
                }
                if g.len() != n {
                    return Err(pos.error(format!("`g` needs {n} entries, found {}", g.len())));
                }
                self.bound = Some((g, pos));
                Ok(())
            }
            "series" => {
                self.dim(pos)?;
                if self.series.is_some() {
                    return Err(pos.error("`series` is defined twice"));
                }
                let terms = self.series_expr()?;
                self.series = Some((terms, pos));
                Ok(())
            }
            "M" => {
                let n = self.dim(pos)?;
                if self.module.is_some() {
                    return Err(pos.error("`M` is defined twice"));
                }
                let mut m = ModuleExpr::new(n);
                loop {
                    for s in self.module_term()? {
                        m.push(s).map_err(|e| pos.error(e.to_string()))?;
                    }
                    if !self.eat(&Tok::DirectSum) {
                        break;
                    }
                }
                self.module = Some((m, pos));
                Ok(())
            }
            _ if KEYWORDS.contains(&name.as_str()) => Err(pos.error(format!("`{name}` cannot be bound"))),
            _ => {
                self.dim(pos)?;
                if self.binding_index.contains_key(&name) {
                    return Err(pos.error(format!("`{name}` is defined twice")));
                }
                let ideal = self.ideal_literal()?;
                self.binding_index.insert(name.clone(), self.bindings.len());
                self.bindings.push((name, ideal));
                Ok(())
            }
        }
    }

    fn vars_statement(&mut self, pos: Pos) -> Result<(), ParseError> {
        if self.vars.is_some() {
            return Err(pos.error("`vars` is defined twice"));
        }
        let mut names = Vec::new();
        while !self.at_statement_end() {
            match self.bump() {
                (Tok::Ident(v), p) => {
                    if KEYWORDS.contains(&v.as_str()) {
                        return Err(p.error(format!("`{v}` cannot be a variable name")));
                    }
                    if self.var_index.insert(v.clone(), names.len()).is_some() {
                        return Err(p.error(format!("variable `{v}` is declared twice")));
                    }
                    names.push(v);
                }
                (t, p) => return Err(p.error(format!("expected a variable name, found {t}"))),
            }
        }
        if names.is_empty() {
            return Err(pos.error("`vars` needs at least one variable"));
        }
        if names.len() > MAX_VARIABLES {
            return Err(pos.error(format!("at most {MAX_VARIABLES} variables are supported")));
        }
        self.vars = Some(names);
        Ok(())
    }

    /// `x^2*y`, `1`, or a product of such factors.
    fn monomial(&mut self) -> Result<ExponentVector, ParseError> {
        let start = self.pos();
        let n = self.dim(start)?;
        let mut exps = vec![0u32; n];
        loop {
            match self.bump() {
                (Tok::Int(1), _) => {}
                (Tok::Ident(v), p) => {
                    let Some(&j) = self.var_index.get(&v) else {
                        return Err(p.error(format!("undeclared variable `{v}`")));
                    };
                    let e = if self.eat(&Tok::Caret) {
                        if self.peek() == &Tok::Minus {
                            return Err(self.pos().error("negative exponent"));
                        }
                        self.exponent()?
                    } else {
                        1
                    };
                    exps[j] = exps[j]
                        .checked_add(e)
                        .filter(|&x| x <= MAX_EXPONENT)
                        .ok_or_else(|| p.error(format!("exponent of `{v}` exceeds {MAX_EXPONENT}")))?;
                }
                (t, p) => return Err(p.error(format!("expected a monomial, found {t}"))),
            }
            if !self.eat(&Tok::Star) {
                break;
            }
        }
        ExponentVector::new(exps).map_err(|e| start.error(e.to_string()))
    }

    fn series_expr(&mut self) -> Result<Vec<(ExponentVector, u64, Pos)>, ParseError> {
        let n = self.dim(self.pos())?;
        let mut terms = Vec::new();
        loop {
            let pos = self.pos();
            let term = match self.peek().clone() {
                Tok::Minus => return Err(pos.error("negative coefficient")),
                Tok::Int(c) => {
                    self.bump();
                    if self.eat(&Tok::Star) {
                        (self.monomial()?, c)
                    } else {
                        (ExponentVector::zero(n), c)
                    }
                }
                _ => (self.monomial()?, 1),
            };
            terms.push((term.0, term.1, pos));
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                }
                Tok::Minus => return Err(self.pos().error("negative coefficient")),
                _ => break,
            }
        }
        Ok(terms)
    }

    /// `ideal(m, ...)` or `0`.
    fn ideal_literal(&mut self) -> Result<MonomialIdeal, ParseError> {
        let pos = self.pos();
        let n = self.dim(pos)?;
        match self.bump() {
            (Tok::Int(0), _) => Ok(MonomialIdeal::zero(n)),
            (Tok::Ident(k), _) if k == "ideal" => {
                self.expect(Tok::LParen)?;
                let mut gens = vec![self.monomial()?];
                while self.eat(&Tok::Comma) {
                    gens.push(self.monomial()?);
                }
                self.expect(Tok::RParen)?;
                MonomialIdeal::new(n, gens).map_err(|e| pos.error(e.to_string()))
            }
            (t, p) => Err(p.error(format!("expected `ideal(...)` or `0`, found {t}"))),
        }
    }

    /// An ideal literal, a bound name, `R` for the unit ideal.
    fn ideal_ref(&mut self) -> Result<MonomialIdeal, ParseError> {
        let pos = self.pos();
        let n = self.dim(pos)?;
        match self.peek().clone() {
            Tok::Ident(k) if k == "R" => {
                self.bump();
                Ok(MonomialIdeal::unit(n))
            }
            Tok::Ident(k) if k != "ideal" => {
                self.bump();
                self.lookup(&k, pos)
            }
            _ => self.ideal_literal(),
        }
    }

    fn lookup(&self, name: &str, pos: Pos) -> Result<MonomialIdeal, ParseError> {
        self.binding_index
            .get(name)
            .map(|&i| self.bindings[i].1.clone())
            .ok_or_else(|| pos.error(format!("`{name}` is not defined")))
    }

    fn module_term(&mut self) -> Result<Vec<Summand>, ParseError> {
        let pos = self.pos();
        let n = self.dim(pos)?;
        let zero = ExponentVector::zero(n);
        let quotient = |numerator, denominator| Summand::Quotient {
            numerator,
            denominator,
            shift: zero.clone(),
        };
        let base: Vec<Summand> = match self.peek().clone() {
            Tok::Int(0) => {
                self.bump();
                Vec::new()
            }
            Tok::Ident(k) if k == "R" => {
                self.bump();
                vec![Summand::Free { shift: zero.clone() }]
            }
            Tok::Ident(k) if k == "ideal" => {
                let i = self.ideal_literal()?;
                vec![quotient(i, MonomialIdeal::zero(n))]
            }
            Tok::Ident(k) if k == "quot" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let i = self.ideal_ref()?;
                self.expect(Tok::Comma)?;
                let jpos = self.pos();
                let j = self.ideal_ref()?;
                self.expect(Tok::RParen)?;
                if !i.contains_ideal(&j) {
                    return Err(jpos.error("the denominator is not contained in the numerator"));
                }
                vec![quotient(i, j)]
            }
            Tok::Ident(k) if k == "shift" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let inner = self.module_term()?;
                self.expect(Tok::Semi)?;
                let spos = self.pos();
                let mut c = Vec::new();
                while self.peek() != &Tok::RParen {
                    if self.peek() == &Tok::Minus {
                        return Err(self.pos().error("negative exponent"));
                    }
                    c.push(self.exponent()?);
                }
                self.expect(Tok::RParen)?;
                if c.len() != n {
                    return Err(spos.error(format!("a shift needs {n} entries, found {}", c.len())));
                }
                inner
                    .into_iter()
                    .map(|s| shift_summand(s, &c).map_err(|e| spos.error(e.to_string())))
                    .collect::<Result<_, _>>()?
            }
            Tok::Ident(k) => {
                self.bump();
                let i = self.lookup(&k, pos)?;
                vec![quotient(i, MonomialIdeal::zero(n))]
            }
            t => return Err(pos.error(format!("expected a module term, found {t}"))),
        };
        if self.eat(&Tok::Caret) {
            let (k, p) = self.int("repetition count")?;
            if k == 0 || k > MAX_REPEAT {
                return Err(p.error(format!("repetition count must be between 1 and {MAX_REPEAT}")));
            }
            let once = base.clone();
            let mut out = base;
            for _ in 1..k {
                out.extend(once.iter().cloned());
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn finish(self) -> Result<ProblemFile, ParseError> {
        let eof = self.pos();
        let variables = self.vars.ok_or_else(|| eof.error("missing `vars = ...`"))?;
        let target = match (self.module, self.bound, self.series) {
            (Some((m, _)), None, None) => Target::Module(m),
            (None, Some((g, gpos)), Some((terms, _))) => {
                let g = ExponentVector::new(g).map_err(|e| gpos.error(e.to_string()))?;
                for (a, _, p) in &terms {
                    if !a.is_below(&g) {
                        return Err(p.error(format!("monomial {a} is not below g = {g}")));
                    }
                }
                let series = TruncatedSeries::from_terms(g, terms.into_iter().map(|(a, c, _)| (a, c)))
                    .map_err(|e| gpos.error(e.to_string()))?;
                Target::Raw(series)
            }
            (None, None, Some((_, p))) => return Err(p.error("a raw series needs `g = ...`")),
            (None, Some((_, p)), None) => return Err(p.error("`g` given without `series = ...`")),
            (Some(_), _, Some((_, p))) | (Some(_), Some((_, p)), None) => {
                return Err(p.error("give either `M = ...` or a raw series, not both"))
            }
            (None, None, None) => return Err(eof.error("missing target: expected `M = ...` or `series = ...`")),
        };
        Ok(ProblemFile {
            variables,
            bindings: self.bindings,
            target,
        })
    }
}

fn shift_summand(s: Summand, c: &[u32]) -> hdepth::Result<Summand> {
    let add = |v: &ExponentVector| ExponentVector::new(v.coords().iter().zip(c).map(|(a, b)| a + b).collect());
    Ok(match s {
        Summand::Free { shift } => Summand::Free { shift: add(&shift)? },
        Summand::Quotient {
            numerator,
            denominator,
            shift,
        } => Summand::Quotient {
            numerator,
            denominator,
            shift: add(&shift)?,
        },
    })
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let toks = lex(text)?;
    Parser {
        toks,
        at: 0,
        vars: None,
        var_index: HashMap::new(),
        bindings: Vec::new(),
        binding_index: HashMap::new(),
        module: None,
        bound: None,
        series: None,
    }
    .parse()
}

/// Renders a problem so that [`parse_problem`] reads it back unchanged.
pub fn print_problem(p: &ProblemFile) -> String {
    let mut s = String::new();
    write!(s, "{p}").expect("writing to a string");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(c: &[u32]) -> ExponentVector {
        ExponentVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn module_on_one_line() {
        let p = parse_problem("vars = x y ; M = R (+) ideal(x, y)").unwrap();
        let want = ModuleExpr::free(2, 1)
            .direct_sum(ModuleExpr::ideal(MonomialIdeal::maximal(2)))
            .unwrap();
        assert_eq!(p.target, Target::Module(want));
        assert_eq!(p.variables, ["x", "y"]);
    }

    #[test]
    fn raw_series() {
        let p = parse_problem("vars = x ; g = 0 ; series = 1").unwrap();
        let Target::Raw(s) = &p.target else { panic!() };
        assert_eq!(s.total_mass(), 1);
        assert_eq!(s.bound(), &ev(&[0]));

        let p = parse_problem("vars = x y\ng = 1 1\nseries = 1 + 2*x + 2*y + 2*x*y\n").unwrap();
        let Target::Raw(s) = &p.target else { panic!() };
        assert_eq!(s.coeff(&ev(&[1, 1])), 2);
        assert_eq!(s.total_mass(), 7);
        assert_eq!(print_problem(&p), "vars = x y\ng = 1 1\nseries = 1 + 2*y + 2*x + 2*x*y\n");
    }

    #[test]
    fn bindings_repetition_and_shift() {
        let text = "# comment\nvars = a b c\nm = ideal(a, b, c)   # trailing\nJ = ideal(a^2*b)\nM = R^2 (+) m (+) shift(quot(m, J); 0 1 0)\n";
        let p = parse_problem(text).unwrap();
        let Target::Module(m) = &p.target else { panic!() };
        assert_eq!(m.terms().len(), 4);
        assert_eq!(m.terms()[3].shift(), &ev(&[0, 1, 0]));
        assert_eq!(p.bindings.len(), 2);
        assert_eq!(parse_problem(&print_problem(&p)).unwrap(), p);
    }

    #[test]
    fn errors_carry_positions() {
        let cases: &[(&str, usize, usize, &str)] = &[
            ("vars = x y\nM = ideal(x, z)", 2, 14, "undeclared variable `z`"),
            ("vars = x\nM = ideal(x^-1)", 2, 13, "negative exponent"),
            ("vars = x y\nM = quot(ideal(x), ideal(y))", 2, 20, "not contained"),
            ("vars = x\ng = 1\nseries = 1 - x", 3, 12, "negative coefficient"),
            ("vars = x\ng = 1\nseries = x^2", 3, 10, "not below"),
            ("M = R", 1, 1, "must come first"),
            ("vars = x x", 1, 10, "declared twice"),
            ("vars = x\nM = R !", 2, 7, "unexpected character"),
            ("vars = x\nI = ideal(x)\nI = 0\nM = I", 3, 1, "defined twice"),
            ("vars = x\nM = J", 2, 5, "not defined"),
            ("vars = x y\nM = shift(R; 1)", 2, 14, "needs 2 entries"),
            ("vars = x\nseries = 1", 2, 1, "needs `g"),
            ("vars = x", 1, 9, "missing target"),
            ("vars = x\nM = R\ng = 0\nseries = 1", 4, 1, "not both"),
            ("vars = x\nM = R^0", 2, 7, "repetition count"),
        ];
        for &(text, line, column, msg) in cases {
            let e = parse_problem(text).unwrap_err();
            assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}");
            assert!(e.message.contains(msg), "{text:?}: {e}");
        }
    }

    #[test]
    fn zero_module_round_trips() {
        let p = parse_problem("vars = x y\nM = 0").unwrap();
        assert_eq!(p.target, Target::Module(ModuleExpr::new(2)));
        assert_eq!(parse_problem(&print_problem(&p)).unwrap(), p);
    }
}
