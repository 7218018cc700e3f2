//! Text syntax for elements of K = F[pi, 1/pi] and its canonical rendering.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' '-'? integer)?
//! atom   := integer | VAR | 'pi' | 'g' | '(' expr ')'
//! ```
//!
//! VAR is the residue variable (default `y`), `g` the chosen generator of
//! GF(q). Division and negative powers are only defined for units of
//! F[pi, 1/pi], i.e. nonzero monomials c pi^k.

use crate::differentials::{DiffFormF, DiffFormK, GradedForm, Variant};
use crate::error::{Error, Result};
use crate::field::{LaurentElem, LaurentRing, ResidueElem, ResidueField};
use crate::ring::Ring;
use crate::witt::WittVec;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let value = src[start..i].parse::<u64>().map_err(|_| Error::Parse {
                position: start,
                expected: "an integer that fits in 64 bits".into(),
            })?;
            out.push((start, Tok::Int(value)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                position: i,
                expected: "a number, a name, or one of + - * / ^ ( )".into(),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a LaurentRing,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse {
            position: self.offset(),
            expected: expected.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentElem> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = self.ring.add(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = self.ring.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentElem> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = self.ring.mul(&acc, &self.factor()?);
            } else if self.eat('/') {
                let d = self.factor()?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                acc = self.ring.mul(&acc, &self.ring.inv(&d)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentElem> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        match self.peek() {
            Some(Tok::Int(k)) => {
                let k = *k as i64;
                self.pos += 1;
                let e = if negative { -k } else { k };
                if e < 0 && base.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                self.ring.pow_signed(&base, e)
            }
            _ => self.error("an integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<LaurentElem> {
        let field = self.ring.residue();
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.error("an integer, a variable, pi, g or '('"),
        };
        match tok {
            Tok::Int(k) => {
                self.pos += 1;
                let c = (k % field.p()) as i64;
                Ok(self.ring.constant(field.from_int(c)))
            }
            Tok::Ident(name) => {
                if name == "pi" {
                    self.pos += 1;
                    return Ok(self.ring.pi_pow(1));
                }
                if name == "g" {
                    self.pos += 1;
                    return Ok(self.ring.constant(field.gf_generator()));
                }
                if let (Some(var), Some(y)) = (field.var_name(), field.var()) {
                    if name == var {
                        self.pos += 1;
                        return Ok(self.ring.constant(y));
                    }
                }
                self.error(&variable_list(field))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("')'");
                }
                Ok(inner)
            }
            Tok::Sym(_) => self.error(&format!("an integer, {}, or '('", variable_list(field))),
        }
    }
}

fn variable_list(field: &ResidueField) -> String {
    match field.var_name() {
        Some(v) => format!("one of {v}, pi, g"),
        None => "one of pi, g".into(),
    }
}

/// Parse an element of F[pi, 1/pi].
pub fn parse_element(src: &str, ring: &LaurentRing) -> Result<LaurentElem> {
    let toks = lex(src)?;
    let mut parser = Parser {
        ring,
        toks,
        pos: 0,
        end: src.len(),
    };
    let value = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.error("an operator or the end of input");
    }
    Ok(value)
}

/// Parse an element of F (no pi allowed).
pub fn parse_residue(src: &str, ring: &LaurentRing) -> Result<ResidueElem> {
    let x = parse_element(src, ring)?;
    match x.terms() {
        [] => Ok(ring.residue().zero()),
        [(0, c)] => Ok(c.clone()),
        _ => Err(Error::Parse {
            position: 0,
            expected: "an element of the residue field (no pi)".into(),
        }),
    }
}

pub fn parse_witt(srcs: &[String], ring: &LaurentRing) -> Result<WittVec<LaurentElem>> {
    if srcs.is_empty() {
        return Err(Error::Config(
            "a witt vector needs at least one component".into(),
        ));
    }
    let comps = srcs
        .iter()
        .map(|s| parse_element(s, ring))
        .collect::<Result<Vec<_>>>()?;
    Ok(WittVec::new(comps))
}

fn render_gf(field: &ResidueField, a: u32) -> String {
    let gf = field.gf();
    if let Some(c) = gf.as_prime_field(a) {
        return c.to_string();
    }
    let coeffs = gf.coefficients(a);
    let mut parts = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let s = match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "g".to_string(),
            (1, c) => format!("{c}*g"),
            (k, 1) => format!("g^{k}"),
            (k, c) => format!("{c}*g^{k}"),
        };
        parts.push(s);
    }
    parts.join("+")
}

fn render_poly(field: &ResidueField, a: &[u32]) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let var = field.var_name().unwrap_or("y");
    let mut parts = Vec::new();
    for (k, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let cs = render_gf(field, c);
        let pw = match k {
            0 => String::new(),
            1 => var.to_string(),
            k => format!("{var}^{k}"),
        };
        let s = if k == 0 {
            cs
        } else if cs == "1" {
            pw
        } else if cs.contains('+') {
            format!("({cs})*{pw}")
        } else {
            format!("{cs}*{pw}")
        };
        parts.push(s);
    }
    parts.join("+")
}

fn wrap_sum(s: String) -> String {
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

/// Canonical text of an element of F.
pub fn render_residue(field: &ResidueField, r: &ResidueElem) -> String {
    let num = render_poly(field, r.numerator());
    if r.denominator() == [1] {
        return num;
    }
    let den = render_poly(field, r.denominator());
    format!("{}/{}", wrap_sum(num), wrap_sum(den))
}

/// Canonical text of an element of F[pi, 1/pi]: terms by increasing exponent.
pub fn render_element(ring: &LaurentRing, x: &LaurentElem) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let field = ring.residue();
    let parts: Vec<String> = x
        .terms()
        .iter()
        .map(|(k, c)| {
            let cs = render_residue(field, c);
            let pw = match *k {
                1 => "pi".to_string(),
                k => format!("pi^{k}"),
            };
            if *k == 0 {
                cs
            } else if cs == "1" {
                pw
            } else if cs.contains('+') || cs.contains('/') {
                format!("({cs})*{pw}")
            } else {
                format!("{cs}*{pw}")
            }
        })
        .collect();
    parts.join(" + ")
}

pub fn render_witt(ring: &LaurentRing, x: &WittVec<LaurentElem>) -> Vec<String> {
    x.components()
        .iter()
        .map(|c| render_element(ring, c))
        .collect()
}

fn coefficient_times(cs: String, basis: &str) -> String {
    if cs == "1" {
        basis.to_string()
    } else if cs.contains('+') || cs.contains('/') || cs.contains(' ') {
        format!("({cs})*{basis}")
    } else {
        format!("{cs}*{basis}")
    }
}

pub fn render_form_f(field: &ResidueField, w: &DiffFormF) -> String {
    if w.is_zero() {
        return "0".into();
    }
    coefficient_times(render_residue(field, &w.f), "dy")
}

/// `f*dy + b*dlog(pi)` or `f*dy + a*dpi`, zero parts omitted.
pub fn render_form_k(ring: &LaurentRing, w: &DiffFormK) -> String {
    let second = match w.variant() {
        Variant::Log => "dlog(pi)",
        Variant::Plain => "dpi",
    };
    let mut parts = Vec::new();
    if !w.dy_coefficient().is_zero() {
        parts.push(coefficient_times(
            render_element(ring, w.dy_coefficient()),
            "dy",
        ));
    }
    if !w.second_coefficient().is_zero() {
        parts.push(coefficient_times(
            render_element(ring, w.second_coefficient()),
            second,
        ));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `(alpha*dy + beta*dlog(pi)) ⊗ pi^(-n)` or `(alpha*dy + beta*dpi) ⊗ pi^(-n-1)`.
pub fn render_graded(field: &ResidueField, g: &GradedForm) -> String {
    let second = match g.variant {
        Variant::Log => "dlog(pi)",
        Variant::Plain => "dpi",
    };
    let mut parts = Vec::new();
    if !g.alpha.is_zero() {
        parts.push(render_form_f(field, &g.alpha));
    }
    if !g.beta.is_zero() {
        parts.push(coefficient_times(render_residue(field, &g.beta), second));
    }
    let body = if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    };
    format!("({body}) ⊗ pi^({})", g.pi_exponent())
}
