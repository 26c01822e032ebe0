//! Text syntax for terms.
//!
//! ```text
//! term := seq
//! seq  := sum { ";" sum }          left-assoc, diagrammatic: "f ; g" is g ∘ f
//! sum  := prod { "(+)" prod }
//! prod := atom { "(x)" atom }
//! atom := "id(" nat ")" | "swap(" nat "," nat ")" | "zeta" ["^" int] | "V"
//!       | "X" | "S" | "T" | "H" | "omega" | "ctrl(" term ")" | "cphase(" nat ")"
//!       | "dagger(" term ")" | "conj(" term ")" | "scale(" int "," term ")"
//!       | "(" term ")"
//! ```
//!
//! Derived gates and operators expand while parsing, at the session's `k`.
//! `#` starts a comment that runs to the end of the line.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::ring::Precision;
use crate::term::{term_conj, term_dagger, Gates, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Semi,
    Plus,
    Times,
    LParen,
    RParen,
    Comma,
    Caret,
    Int(i64),
    Ident(String),
    Eof,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Semi => "';'".into(),
        Tok::Plus => "'(+)'".into(),
        Tok::Times => "'(x)'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Caret => "'^'".into(),
        Tok::Int(v) => format!("integer {v}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, msg: String| Error::Parse { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => advance(1, &mut i, &mut col),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            ';' => {
                out.push(Spanned { tok: Tok::Semi, line: l0, col: c0 });
                advance(1, &mut i, &mut col);
            }
            ',' => {
                out.push(Spanned { tok: Tok::Comma, line: l0, col: c0 });
                advance(1, &mut i, &mut col);
            }
            '^' => {
                out.push(Spanned { tok: Tok::Caret, line: l0, col: c0 });
                advance(1, &mut i, &mut col);
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, line: l0, col: c0 });
                advance(1, &mut i, &mut col);
            }
            '(' => {
                let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
                let tok = match rest.as_str() {
                    "(+)" => Some(Tok::Plus),
                    "(x)" => Some(Tok::Times),
                    _ => None,
                };
                match tok {
                    Some(t) => {
                        out.push(Spanned { tok: t, line: l0, col: c0 });
                        advance(3, &mut i, &mut col);
                    }
                    None => {
                        out.push(Spanned { tok: Tok::LParen, line: l0, col: c0 });
                        advance(1, &mut i, &mut col);
                    }
                }
            }
            c if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) => {
                let start = i;
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[start..j].iter().collect();
                let v = text
                    .parse::<i64>()
                    .map_err(|_| err(l0, c0, format!("integer {text} is out of range")))?;
                out.push(Spanned { tok: Tok::Int(v), line: l0, col: c0 });
                advance(j - start, &mut i, &mut col);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let text: String = chars[start..j].iter().collect();
                out.push(Spanned { tok: Tok::Ident(text), line: l0, col: c0 });
                advance(j - start, &mut i, &mut col);
            }
            other => return Err(err(l0, c0, format!("unexpected character '{other}'"))),
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    gates: Gates,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, s: &Spanned, msg: impl Into<String>) -> Error {
        Error::Parse { line: s.line, col: s.col, msg: msg.into() }
    }

    fn expect(&mut self, want: Tok) -> Result<Spanned> {
        let s = self.next();
        if s.tok == want {
            Ok(s)
        } else {
            Err(self.error_at(&s, format!("expected {}, found {}", describe(&want), describe(&s.tok))))
        }
    }

    fn int(&mut self) -> Result<i64> {
        let s = self.next();
        match &s.tok {
            Tok::Int(v) => Ok(*v),
            other => Err(self.error_at(&s, format!("expected an integer, found {}", describe(other)))),
        }
    }

    fn nat(&mut self) -> Result<usize> {
        let s = self.peek().clone();
        let v = self.int()?;
        if v < 1 {
            return Err(self.error_at(&s, format!("expected a positive integer, found {v}")));
        }
        usize::try_from(v).map_err(|_| self.error_at(&s, "integer too large"))
    }

    fn seq(&mut self) -> Result<Term> {
        let mut t = self.sum()?;
        while self.peek().tok == Tok::Semi {
            self.next();
            let g = self.sum()?;
            t = Term::comp(g, t);
        }
        Ok(t)
    }

    fn sum(&mut self) -> Result<Term> {
        let mut t = self.prod()?;
        while self.peek().tok == Tok::Plus {
            self.next();
            t = Term::sum(t, self.prod()?);
        }
        Ok(t)
    }

    fn prod(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while self.peek().tok == Tok::Times {
            self.next();
            t = Term::kron(t, self.atom()?);
        }
        Ok(t)
    }

    fn wrap(&self, at: &Spanned, r: Result<Term>) -> Result<Term> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => self.error_at(at, other.to_string()),
        })
    }

    fn atom(&mut self) -> Result<Term> {
        let s = self.next();
        let name = match &s.tok {
            Tok::LParen => {
                let t = self.seq()?;
                self.expect(Tok::RParen)?;
                return Ok(t);
            }
            Tok::Ident(name) => name.clone(),
            other => return Err(self.error_at(&s, format!("expected a term, found {}", describe(other)))),
        };
        let k = self.gates.k();
        match name.as_str() {
            "V" => Ok(Term::V),
            "X" => Ok(self.gates.x()),
            "S" => Ok(self.gates.s()),
            "T" => Ok(self.gates.t()),
            "H" => self.wrap(&s, self.gates.h()),
            "omega" => self.wrap(&s, self.gates.omega()),
            "zeta" => {
                if self.peek().tok == Tok::Caret {
                    self.next();
                    Ok(Term::Zeta(self.int()?))
                } else {
                    Ok(Term::Zeta(1))
                }
            }
            "id" => {
                self.expect(Tok::LParen)?;
                let n = self.nat()?;
                self.expect(Tok::RParen)?;
                Ok(Term::Id(n))
            }
            "swap" => {
                self.expect(Tok::LParen)?;
                let m = self.nat()?;
                self.expect(Tok::Comma)?;
                let n = self.nat()?;
                self.expect(Tok::RParen)?;
                Ok(Term::SwapPlus(m, n))
            }
            "cphase" => {
                self.expect(Tok::LParen)?;
                let at = self.peek().clone();
                let d = self.nat()?;
                self.expect(Tok::RParen)?;
                let d = u32::try_from(d).map_err(|_| self.error_at(&at, "cphase index too large"))?;
                self.wrap(&s, self.gates.cphase(d))
            }
            "scale" => {
                self.expect(Tok::LParen)?;
                let j = self.int()?;
                self.expect(Tok::Comma)?;
                let t = self.seq()?;
                self.expect(Tok::RParen)?;
                Ok(Term::scale(j, t))
            }
            "ctrl" | "dagger" | "conj" => {
                self.expect(Tok::LParen)?;
                let t = self.seq()?;
                self.expect(Tok::RParen)?;
                let r = match name.as_str() {
                    "ctrl" => self.gates.ctrl(t),
                    "dagger" => term_dagger(&t, k),
                    _ => term_conj(&t, k),
                };
                self.wrap(&s, r)
            }
            other => Err(self.error_at(&s, format!("unknown name '{other}'"))),
        }
    }
}

/// Parses a term, expanding derived gates at precision `k`.
pub fn parse(src: &str, k: Precision) -> Result<Term> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, gates: Gates::new(k) };
    let t = p.seq()?;
    let end = p.peek().clone();
    if end.tok != Tok::Eof {
        return Err(p.error_at(&end, format!("unexpected {}", describe(&end.tok))));
    }
    Ok(t)
}

fn prec(t: &Term) -> u8 {
    match t {
        Term::Comp(..) => 0,
        Term::Sum(..) => 1,
        Term::Kron(..) => 2,
        _ => 3,
    }
}

fn write_at(out: &mut String, t: &Term, min: u8) {
    if prec(t) < min {
        out.push('(');
        write_term(out, t);
        out.push(')');
    } else {
        write_term(out, t);
    }
}

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Id(n) => {
            let _ = write!(out, "id({n})");
        }
        Term::SwapPlus(m, n) => {
            let _ = write!(out, "swap({m}, {n})");
        }
        Term::Zeta(1) => out.push_str("zeta"),
        Term::Zeta(j) => {
            let _ = write!(out, "zeta^{j}");
        }
        Term::V => out.push('V'),
        Term::Comp(g, f) => {
            write_at(out, f, 0);
            out.push_str(" ; ");
            write_at(out, g, 1);
        }
        Term::Sum(a, b) => {
            write_at(out, a, 1);
            out.push_str(" (+) ");
            write_at(out, b, 2);
        }
        Term::Kron(a, b) => {
            write_at(out, a, 2);
            out.push_str(" (x) ");
            write_at(out, b, 3);
        }
        Term::Scale(j, s) => {
            let _ = write!(out, "scale({j}, ");
            write_term(out, s);
            out.push(')');
        }
    }
}

/// Canonical text for a term; `parse(pretty(t))` gives back `t`.
pub fn pretty(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t);
    out
}
