//! Line-oriented text format for problems, substitutions and nominal problems,
//! plus the printers that produce it.
//!
//! ```text
//! # comment
//! X : comb - {a0} + {b1}
//! f([a0] X, [a0] a0) ?= f([b0] a1, [b0] b0)
//! (a0 a1)*X <| comb
//! X := [a0]a0
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::atoms::{Atom, AtomSet, Half, HalfSet, Permutation, Vector};
use crate::lambda::LTerm;
use crate::nominal::{FreshnessContext, NAtom, NGoal, NPerm, NProblem, NTerm};
use crate::subst::Substitution;
use crate::support::Inclusion;
use crate::term::{Equality, Term, Unknown};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Atom(Atom),
    Upper(String),
    Lower(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Star,
    Colon,
    Assign,
    QEq,
    Incl,
    Hash,
    Plus,
    Minus,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Atom(a) => write!(f, "atom {a}"),
            Tok::Upper(s) => write!(f, "unknown {s}"),
            Tok::Lower(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrack => f.write_str("`[`"),
            Tok::RBrack => f.write_str("`]`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Assign => f.write_str("`:=`"),
            Tok::QEq => f.write_str("`?=`"),
            Tok::Incl => f.write_str("`<|`"),
            Tok::Hash => f.write_str("`#`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
        }
    }
}

fn atom_literal(s: &str) -> Option<Atom> {
    let half = match s.as_bytes().first()? {
        b'a' => Half::Lt,
        b'b' => Half::Gt,
        _ => return None,
    };
    let digits = &s[1..];
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    let index = digits.parse().ok()?;
    Some(match half {
        Half::Lt => Atom::lt(index),
        Half::Gt => Atom::gt(index),
    })
}

fn lex(line_no: usize, text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let err = |col: usize, msg: String| ParseError { line: line_no, col, msg };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let tok = match two.as_str() {
            ":=" => Some(Tok::Assign),
            "?=" => Some(Tok::QEq),
            "<|" => Some(Tok::Incl),
            _ => None,
        };
        if let Some(t) = tok {
            out.push((col, t));
            i += 2;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            '*' => Some(Tok::Star),
            ':' => Some(Tok::Colon),
            '#' => Some(Tok::Hash),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(t) = single {
            out.push((col, t));
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            if c.is_ascii_uppercase() {
                // `.k` suffixes on unknown names
                while i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let word: String = chars[start..i].iter().collect();
            let tok = if c.is_ascii_uppercase() {
                Tok::Upper(word)
            } else if let Some(a) = atom_literal(&word) {
                Tok::Atom(a)
            } else {
                Tok::Lower(word)
            };
            out.push((col, tok));
            continue;
        }
        return Err(err(col, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

struct Cursor<'a> {
    line: usize,
    toks: &'a [(usize, Tok)],
    pos: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, toks: &'a [(usize, Tok)], text: &str) -> Self {
        Cursor { line, toks, pos: 0, end_col: text.chars().count() + 1 }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_col)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col(), msg: msg.into() }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {t}")),
            None => self.error(format!("expected {wanted}, found end of line")),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.peek().cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, wanted: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        match self.peek() {
            Some(Tok::Atom(a)) => {
                let a = *a;
                self.pos += 1;
                Ok(a)
            }
            _ => Err(self.unexpected("an atom")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of line")),
        }
    }

    fn at_swap(&self) -> bool {
        matches!(
            (self.peek(), self.peek_at(1), self.peek_at(2), self.peek_at(3)),
            (Some(Tok::LParen), Some(Tok::Atom(_)), Some(Tok::Atom(_)), Some(Tok::RParen))
        )
    }

    /// `(a b)(c d)…` read as the composite `(a b)∘(c d)∘…`.
    fn perm(&mut self) -> Result<Permutation, ParseError> {
        let mut swaps = Vec::new();
        while self.at_swap() {
            self.pos += 1;
            let a = self.atom()?;
            let b = self.atom()?;
            self.pos += 1;
            swaps.push((a, b));
        }
        Ok(Permutation::from_swaps(&swaps))
    }

    fn atom_list(&mut self) -> Result<Vec<Atom>, ParseError> {
        self.expect(&Tok::LBrace, "`{`")?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrace) {
            return Ok(out);
        }
        loop {
            out.push(self.atom()?);
            if self.eat(&Tok::RBrace) {
                return Ok(out);
            }
            self.expect(&Tok::Comma, "`,` or `}`")?;
        }
    }

    fn set(&mut self) -> Result<AtomSet, ParseError> {
        let base = match self.peek() {
            Some(Tok::Lower(w)) if w == "comb" => Some(AtomSet::comb()),
            Some(Tok::Lower(w)) if w == "gt" => Some(AtomSet::upper()),
            Some(Tok::Lower(w)) if w == "all" => Some(AtomSet::all()),
            Some(Tok::LBrace) => None,
            _ => return Err(self.unexpected("`comb`, `gt`, `all` or `{`")),
        };
        let mut s = match base {
            Some(s) => {
                self.pos += 1;
                s
            }
            None => AtomSet::from_atoms(self.atom_list()?),
        };
        loop {
            if self.eat(&Tok::Plus) {
                s = s.union(&AtomSet::from_atoms(self.atom_list()?));
            } else if self.eat(&Tok::Minus) {
                s = s.minus(&AtomSet::from_atoms(self.atom_list()?));
            } else {
                return Ok(s);
            }
        }
    }

    fn term<F>(&mut self, resolve: &F) -> Result<Term, ParseError>
    where
        F: Fn(&str) -> Option<Unknown>,
    {
        match self.peek().cloned() {
            Some(Tok::Atom(a)) => {
                self.pos += 1;
                Ok(Term::Atom(a))
            }
            Some(Tok::LBrack) => {
                self.pos += 1;
                let a = self.atom()?;
                self.expect(&Tok::RBrack, "`]`")?;
                Ok(Term::abs(a, self.term(resolve)?))
            }
            Some(Tok::LParen) if self.at_swap() => {
                let pi = self.perm()?;
                self.expect(&Tok::Star, "`*` after a permutation")?;
                let x = self.unknown(resolve)?;
                Ok(Term::susp(pi, &x))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term(resolve)?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::Lower(w)) if w == "id" && self.peek_at(1) == Some(&Tok::Star) => {
                self.pos += 2;
                let x = self.unknown(resolve)?;
                Ok(Term::var(&x))
            }
            Some(Tok::Lower(f)) => {
                if f == "id" {
                    return Err(self.error("`id` is reserved for the identity permutation"));
                }
                self.pos += 1;
                let mut args = Vec::new();
                if self.eat(&Tok::LParen) && !self.eat(&Tok::RParen) {
                    loop {
                        args.push(self.term(resolve)?);
                        if self.eat(&Tok::RParen) {
                            break;
                        }
                        self.expect(&Tok::Comma, "`,` or `)`")?;
                    }
                }
                Ok(Term::App(f, args))
            }
            Some(Tok::Upper(_)) => {
                let x = self.unknown(resolve)?;
                Ok(Term::var(&x))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn unknown<F>(&mut self, resolve: &F) -> Result<Unknown, ParseError>
    where
        F: Fn(&str) -> Option<Unknown>,
    {
        match self.peek().cloned() {
            Some(Tok::Upper(name)) => match resolve(&name) {
                Some(x) => {
                    self.pos += 1;
                    Ok(x)
                }
                None => Err(self.error(format!("undeclared unknown {name}"))),
            },
            _ => Err(self.unexpected("an unknown")),
        }
    }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(k, l)| (k + 1, l)).filter(|(_, l)| {
        let t = l.trim_start();
        !t.is_empty() && !t.starts_with('#')
    })
}

/// Everything a problem or substitution file can contain.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProblemFile {
    pub decls: BTreeMap<String, Unknown>,
    pub equalities: Vec<Equality>,
    pub inclusions: Vec<Inclusion>,
    pub bindings: Vec<(Unknown, Term)>,
}

impl ProblemFile {
    pub fn substitution(&self) -> Result<Substitution, crate::Error> {
        Substitution::from_bindings(self.bindings.iter().cloned())
    }
}

fn parse_decl(c: &mut Cursor<'_>, decls: &mut BTreeMap<String, Unknown>) -> Result<(), ParseError> {
    let name = match c.next() {
        Some(Tok::Upper(n)) => n,
        _ => unreachable!("caller checked"),
    };
    c.pos += 1;
    let col = c.col();
    let sort = c.set()?;
    c.finish()?;
    let x = Unknown::new(name.clone(), sort).map_err(|_| ParseError {
        line: c.line,
        col,
        msg: format!("the set declared for {name} is not a permission set"),
    })?;
    if let Some(old) = decls.get(&name) {
        if old.sort != x.sort {
            return Err(ParseError { line: c.line, col: 1, msg: format!("{name} declared twice") });
        }
    }
    decls.insert(name, x);
    Ok(())
}

/// Parses a problem file.  `inherited` supplies declarations made elsewhere,
/// e.g. in the problem a substitution file refers to.
pub fn parse_problem_with(text: &str, inherited: &BTreeMap<String, Unknown>) -> Result<ProblemFile, ParseError> {
    let mut out = ProblemFile { decls: inherited.clone(), ..Default::default() };
    let mut body = Vec::new();
    for (n, l) in lines(text) {
        let toks = lex(n, l)?;
        if l.trim() == "SUCCESS" {
            continue;
        }
        if matches!((toks.first(), toks.get(1)), (Some((_, Tok::Upper(_))), Some((_, Tok::Colon)))) {
            let mut c = Cursor::new(n, &toks, l);
            parse_decl(&mut c, &mut out.decls)?;
        } else {
            body.push((n, l, toks));
        }
    }
    let decls = out.decls.clone();
    let resolve = |name: &str| decls.get(name).cloned();
    for (n, l, toks) in &body {
        let mut c = Cursor::new(*n, toks, l);
        if matches!((c.peek(), c.peek_at(1)), (Some(Tok::Upper(_)), Some(Tok::Assign))) {
            let x = c.unknown(&resolve)?;
            c.pos += 1;
            let col = c.col();
            let t = c.term(&resolve)?;
            c.finish()?;
            if !t.fa().is_subset(&x.sort) {
                return Err(ParseError {
                    line: *n,
                    col,
                    msg: format!("binding for {} has free atoms outside its permission set", x.name),
                });
            }
            out.bindings.push((x, t));
            continue;
        }
        let lhs = c.term(&resolve)?;
        if c.eat(&Tok::QEq) {
            let rhs = c.term(&resolve)?;
            c.finish()?;
            out.equalities.push(Equality::new(lhs, rhs));
        } else if c.eat(&Tok::Incl) {
            let target = c.set()?;
            c.finish()?;
            out.inclusions.push(Inclusion::new(lhs, target));
        } else {
            return Err(c.unexpected("`?=` or `<|`"));
        }
    }
    Ok(out)
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    parse_problem_with(text, &BTreeMap::new())
}

fn single_line<T>(text: &str, f: impl FnOnce(&mut Cursor<'_>) -> Result<T, ParseError>) -> Result<T, ParseError> {
    let toks = lex(1, text)?;
    let mut c = Cursor::new(1, &toks, text);
    let v = f(&mut c)?;
    c.finish()?;
    Ok(v)
}

pub fn parse_term(text: &str, decls: &BTreeMap<String, Unknown>) -> Result<Term, ParseError> {
    single_line(text, |c| c.term(&|n: &str| decls.get(n).cloned()))
}

pub fn parse_set(text: &str) -> Result<AtomSet, ParseError> {
    single_line(text, |c| c.set())
}

pub fn parse_perm(text: &str) -> Result<Permutation, ParseError> {
    if text.trim() == "id" {
        return Ok(Permutation::id());
    }
    single_line(text, |c| c.perm())
}

/// Comma- or space-separated atoms, e.g. `a0,b1`.
pub fn parse_vector(text: &str) -> Result<Vector, ParseError> {
    let mut atoms = Vec::new();
    for (k, w) in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|w| !w.is_empty()).enumerate() {
        match atom_literal(w) {
            Some(a) => atoms.push(a),
            None => return Err(ParseError { line: 1, col: k + 1, msg: format!("`{w}` is not an atom") }),
        }
    }
    Vector::new(atoms).map_err(|_| ParseError { line: 1, col: 1, msg: "repeated atom".into() })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NominalFile {
    pub unknowns: BTreeSet<String>,
    pub delta: FreshnessContext,
    pub goals: NProblem,
}

fn to_nominal(t: &Term, line: usize) -> Result<NTerm, ParseError> {
    let lt = |a: Atom| match a.half {
        Half::Lt => Ok(NAtom(a.index)),
        Half::Gt => Err(ParseError { line, col: 1, msg: format!("nominal atoms are written aN, found {a}") }),
    };
    Ok(match t {
        Term::Atom(a) => NTerm::Atom(lt(*a)?),
        Term::App(f, args) => NTerm::App(f.clone(), args.iter().map(|u| to_nominal(u, line)).collect::<Result<_, _>>()?),
        Term::Abs(a, body) => NTerm::abs(lt(*a)?, to_nominal(body, line)?),
        Term::Susp(pi, x) => {
            let mut p = NPerm::id();
            for (a, b) in pi.to_swaps() {
                p = p.compose(&NPerm::swap(lt(a)?, lt(b)?));
            }
            NTerm::Susp(p, x.name.clone())
        }
    })
}

/// Nominal problems: bare `X` lines declare unknowns, `delta: a1 # X, …`
/// gives the freshness context, and goals are `a # t` or `t ?= s`.
pub fn parse_nominal(text: &str) -> Result<NominalFile, ParseError> {
    let mut out = NominalFile::default();
    let mut body = Vec::new();
    for (n, l) in lines(text) {
        let toks = lex(n, l)?;
        match toks.as_slice() {
            [(_, Tok::Upper(x))] => {
                out.unknowns.insert(x.clone());
            }
            _ => body.push((n, l, toks)),
        }
    }
    let known = out.unknowns.clone();
    let resolve = |name: &str| known.contains(name).then(|| Unknown { name: name.to_string(), sort: AtomSet::comb() });
    for (n, l, toks) in &body {
        let mut c = Cursor::new(*n, toks, l);
        if matches!((c.peek(), c.peek_at(1)), (Some(Tok::Lower(w)), Some(Tok::Colon)) if w == "delta") {
            c.pos += 2;
            if c.peek().is_none() {
                continue;
            }
            loop {
                let a = c.atom()?;
                c.expect(&Tok::Hash, "`#`")?;
                let x = c.unknown(&resolve)?;
                let NTerm::Atom(na) = to_nominal(&Term::Atom(a), *n)? else { unreachable!() };
                out.delta.insert((na, x.name));
                if c.peek().is_none() {
                    break;
                }
                c.expect(&Tok::Comma, "`,`")?;
            }
            continue;
        }
        if matches!((c.peek(), c.peek_at(1)), (Some(Tok::Atom(_)), Some(Tok::Hash))) {
            let a = c.atom()?;
            c.pos += 1;
            let t = c.term(&resolve)?;
            c.finish()?;
            let NTerm::Atom(na) = to_nominal(&Term::Atom(a), *n)? else { unreachable!() };
            out.goals.push(NGoal::Fresh(na, to_nominal(&t, *n)?));
            continue;
        }
        let lhs = c.term(&resolve)?;
        c.expect(&Tok::QEq, "`?=` or `#`")?;
        let rhs = c.term(&resolve)?;
        c.finish()?;
        out.goals.push(NGoal::Eq(to_nominal(&lhs, *n)?, to_nominal(&rhs, *n)?));
    }
    Ok(out)
}

fn write_atoms(f: &mut fmt::Formatter<'_>, atoms: &[Atom]) -> fmt::Result {
    f.write_str("{")?;
    for (k, a) in atoms.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str("}")
}

fn half_atoms(h: &HalfSet, mk: fn(u32) -> Atom) -> Vec<Atom> {
    h.finite.iter().map(|&i| mk(i)).collect()
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lt = half_atoms(&self.lt, Atom::lt);
        let gt = half_atoms(&self.gt, Atom::gt);
        let (base, minus, plus) = match (self.lt.cofinite, self.gt.cofinite) {
            (true, false) => ("comb", lt, gt),
            (false, true) => ("gt", gt, lt),
            (true, true) => ("all", [lt, gt].concat(), vec![]),
            (false, false) => return write_atoms(f, &[lt, gt].concat()),
        };
        f.write_str(base)?;
        if !minus.is_empty() {
            f.write_str(" - ")?;
            write_atoms(f, &minus)?;
        }
        if !plus.is_empty() {
            f.write_str(" + ")?;
            write_atoms(f, &plus)?;
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let swaps = self.to_swaps();
        if swaps.is_empty() {
            return f.write_str("id");
        }
        for (a, b) in swaps {
            write!(f, "({a} {b})")?;
        }
        Ok(())
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Atom(a) => write!(f, "{a}"),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (k, t) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            Term::Abs(a, body) => match **body {
                Term::Susp(..) => write!(f, "[{a}]({body})"),
                _ => write!(f, "[{a}]{body}"),
            },
            Term::Susp(pi, x) => write!(f, "{pi}*{x}"),
        }
    }
}

impl fmt::Display for Equality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ?= {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for Inclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <| {}", self.term, self.target)
    }
}

/// `X : S`
pub fn print_decl(x: &Unknown) -> String {
    format!("{} : {}", x.name, x.sort)
}

/// One `X := t` line per non-identity binding, sorted by name.
pub fn print_subst(theta: &Substitution) -> Vec<String> {
    let mut v: Vec<_> = theta.iter().collect();
    v.sort_by(|a, b| a.0.name.cmp(&b.0.name));
    v.into_iter().map(|(x, t)| format!("{x} := {t}")).collect()
}

/// `[X := t, Y := s]`
pub fn print_label(theta: &Substitution) -> String {
    format!("[{}]", print_subst(theta).join(", "))
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, a) in self.atoms().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

fn write_l_arg(f: &mut fmt::Formatter<'_>, t: &LTerm) -> fmt::Result {
    match t {
        LTerm::App(..) | LTerm::Lam(..) => write!(f, "({t})"),
        _ => write!(f, "{t}"),
    }
}

impl fmt::Display for LTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LTerm::Atom(a) => write!(f, "{a}"),
            LTerm::Unknown(x) => write!(f, "{}", x.name),
            LTerm::Former(g) => f.write_str(g),
            LTerm::Lam(a, body) => write!(f, "\\{a}. {body}"),
            LTerm::App(..) => {
                let (head, args) = self.spine();
                match head {
                    LTerm::Lam(..) => write!(f, "({head})")?,
                    _ => write!(f, "{head}")?,
                }
                for a in args {
                    f.write_str(" ")?;
                    write_l_arg(f, a)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for NAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

impl fmt::Display for NPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.interp())
    }
}

impl fmt::Display for NTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NTerm::Atom(a) => write!(f, "{a}"),
            NTerm::App(g, args) => {
                write!(f, "{g}(")?;
                for (k, t) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            NTerm::Abs(a, body) => match **body {
                NTerm::Susp(..) => write!(f, "[{a}]({body})"),
                _ => write!(f, "[{a}]{body}"),
            },
            NTerm::Susp(pi, x) => write!(f, "{pi}*{x}"),
        }
    }
}

impl fmt::Display for NGoal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NGoal::Fresh(a, t) => write!(f, "{a} # {t}"),
            NGoal::Eq(r, s) => write!(f, "{r} ?= {s}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32) -> Atom {
        Atom::lt(i)
    }
    fn b(i: u32) -> Atom {
        Atom::gt(i)
    }

    #[test]
    fn sets() {
        let s = parse_set("comb - {a0} + {b1}").unwrap();
        assert_eq!(s, AtomSet::comb().without(a(0)).with(b(1)));
        assert_eq!(s.to_string(), "comb - {a0} + {b1}");
        for text in ["comb", "gt - {b2} + {a1, a3}", "all - {a0, b0}", "{a0, b1}", "{}", "all"] {
            assert_eq!(parse_set(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn permutation_literal_composes_left_to_right() {
        let p = parse_perm("(a0 a1)(a1 b0)").unwrap();
        let want = Permutation::swap(a(0), a(1)).compose(&Permutation::swap(a(1), b(0)));
        assert_eq!(p, want);
        assert_eq!(parse_perm(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn example_file_shape() {
        let f = parse_problem("X : comb\nf([a0] X, [a0] a0) ?= f([b0] a1, [b0] b0)\n").unwrap();
        let x = &f.decls["X"];
        assert_eq!(f.equalities.len(), 1);
        let want = Term::app("f", vec![Term::abs(a(0), Term::var(x)), Term::abs(a(0), Term::Atom(a(0)))]);
        assert_eq!(f.equalities[0].lhs, want);
        assert_eq!(f.equalities[0].to_string(), "f([a0](id*X), [a0]a0) ?= f([b0]a1, [b0]b0)");
    }

    #[test]
    fn errors_carry_position() {
        let e = parse_problem("X : comb\nf(Y) ?= a0").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        let e = parse_problem("X : {a0}").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.msg.contains("permission set"));
        assert!(parse_problem("X : comb\nX ?= ").is_err());
    }

    #[test]
    fn suspension_under_swap_prefix() {
        let f = parse_problem("X : comb\n(a0 a1)(a1 b0)*X ?= [a0]((a0 a1)*X)").unwrap();
        let e = &f.equalities[0];
        assert_eq!(parse_problem(&format!("X : comb\n{e}")).unwrap().equalities[0], *e);
    }

    #[test]
    fn lambda_printing() {
        let x = Unknown::new("X", AtomSet::comb()).unwrap();
        let t = LTerm::lam(
            b(0),
            LTerm::apply_all(
                LTerm::Former("f".into()),
                [LTerm::app(LTerm::Unknown(x), LTerm::Atom(b(0))), LTerm::Atom(b(0))],
            ),
        );
        assert_eq!(t.to_string(), "\\b0. f (X b0) b0");
        let redex = LTerm::app(LTerm::lam(a(0), LTerm::Atom(a(0))), LTerm::Atom(a(1)));
        assert_eq!(redex.to_string(), "(\\a0. a0) a1");
    }

    #[test]
    fn nominal_file() {
        let f = parse_nominal("X\nY\ndelta: a1 # X\na0 # f(X)\n[a0](a1 a0)*Y ?= X\n").unwrap();
        assert_eq!(f.unknowns.len(), 2);
        assert!(f.delta.contains(&(NAtom(1), "X".to_string())));
        assert_eq!(f.goals.len(), 2);
        assert_eq!(f.goals[0].to_string(), "a0 # f(id*X)");
        assert!(parse_nominal("X\nb0 # X").is_err());
    }
}
