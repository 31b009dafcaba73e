//! The line-oriented ring file format.
//!
//! ```text
//! # the cusp
//! base: Fp(5)
//! vars: x, y
//! rel: y^2 - x^3
//! ```
//!
//! `base:` is one of `Fp(p)`, `Fq(p,e)`, `Fq(p,e,minpoly)` or `Zp2(p)`. An
//! explicit minimal polynomial names the field generator by its variable;
//! otherwise the generator is written `a`.

use std::fmt;
use std::sync::Arc;

use fwdiff_core::fwcore::RingPresentation;
use fwdiff_core::modarith::{CoeffRing, FqField, Prime};
use fwdiff_core::mpoly::{Poly, PolyRing};

/// A syntax or validation error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> PResult<T> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

/// The `base:` line as written, kept for printing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseSpec {
    Fp(u64),
    Fq { p: u64, e: usize, minpoly: Option<String> },
    Zp2(u64),
}

impl fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSpec::Fp(p) => write!(f, "Fp({p})"),
            BaseSpec::Fq { p, e, minpoly: None } => write!(f, "Fq({p},{e})"),
            BaseSpec::Fq { p, e, minpoly: Some(m) } => write!(f, "Fq({p},{e},{m})"),
            BaseSpec::Zp2(p) => write!(f, "Zp2({p})"),
        }
    }
}

/// A parsed ring file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingFile {
    pub base: BaseSpec,
    pub presentation: RingPresentation,
}

impl RingFile {
    /// Canonical text: one `rel:` line per relation, polynomials in normal display form.
    pub fn print(&self) -> String {
        let a = &self.presentation;
        let mut out = format!("base: {}\nvars: {}\n", self.base, a.vars().join(", "));
        for f in a.relations() {
            out.push_str(&format!("rel: {}\n", a.format_poly(f)));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

/// Token with its 1-based column.
#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn tokenize(text: &str, line: usize, col0: usize) -> PResult<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Spanned {
                tok: Tok::Int(chars[start..i].iter().collect()),
                col,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else if "+-*^(),".contains(c) {
            out.push(Spanned { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return err(line, col, format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

/// Names an expression may refer to.
struct Scope<'a> {
    ring: &'a Arc<PolyRing>,
    vars: &'a [String],
    /// Field generator symbol and its packed value.
    generator: Option<(&'a str, u64)>,
}

struct ExprParser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_col: usize,
    scope: &'a Scope<'a>,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |s| s.col)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> PResult<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := unary ('*' unary)*
    fn term(&mut self) -> PResult<Poly> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> PResult<Poly> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    // power := atom ('^' INT)?
    fn power(&mut self) -> PResult<Poly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let e: u64 = s
                    .parse()
                    .ok()
                    .filter(|&e| e <= 1 << 16)
                    .ok_or_else(|| ParseError {
                        line: self.line,
                        column: col,
                        message: format!("exponent {s} is too large"),
                    })?;
                if self.peek() == Some(&Tok::Sym('^')) {
                    return err(self.line, self.col(), "chained exponents need parentheses");
                }
                Ok(base.pow(e))
            }
            _ => err(self.line, col, "expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> PResult<Poly> {
        let col = self.col();
        let ring = self.scope.ring;
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                Ok(Poly::constant(ring, reduce_literal(&s, ring.coeffs())))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.scope.vars.iter().position(|v| *v == name) {
                    return Ok(Poly::var(ring, i));
                }
                match self.scope.generator {
                    Some((sym, g)) if sym == name => Ok(Poly::constant(ring, g)),
                    _ => err(self.line, col, format!("unknown variable {name}")),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return err(self.line, self.col(), "expected ')'");
                }
                Ok(inner)
            }
            Some(Tok::Sym(c)) => err(self.line, col, format!("unexpected '{c}'")),
            None => err(self.line, col, "unexpected end of expression"),
        }
    }
}

/// Reads a decimal literal into the coefficient ring, reducing digit by digit.
fn reduce_literal(s: &str, c: &CoeffRing) -> u64 {
    let m = match c {
        CoeffRing::Zp2(p) => p.get() * p.get(),
        other => other.p(),
    } as u128;
    let v = s.bytes().fold(0u128, |acc, d| (acc * 10 + (d - b'0') as u128) % m);
    c.from_u128(v)
}

/// Parses a full polynomial expression; `col0` is the column of `text[0]`.
fn parse_expr(text: &str, line: usize, col0: usize, scope: &Scope) -> PResult<Poly> {
    let toks = tokenize(text, line, col0)?;
    let end_col = col0 + text.chars().count();
    if toks.is_empty() {
        return err(line, col0, "empty expression");
    }
    let mut p = ExprParser {
        toks,
        pos: 0,
        line,
        end_col,
        scope,
    };
    let f = p.expr()?;
    if p.pos < p.toks.len() {
        return err(line, p.col(), "expected an operator");
    }
    Ok(f)
}

fn generator(c: &CoeffRing) -> Option<(&str, u64)> {
    c.fq_field().map(|k| {
        let g = if k.degree() == 1 {
            // root of x + μ_0
            c.neg(k.minpoly()[0])
        } else {
            let mut v = vec![0; k.degree()];
            v[1] = 1;
            c.from_fp_coords(&v)
        };
        (k.symbol(), g)
    })
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `s` at top-level commas, returning each piece with its offset.
fn split_args(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn parse_int(s: &str, line: usize, col: usize, what: &str) -> PResult<u64> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    t.parse::<u64>()
        .or_else(|_| err(line, col + lead, format!("expected {what}, found '{t}'")))
}

fn parse_base(text: &str, line: usize, col0: usize) -> PResult<(BaseSpec, CoeffRing)> {
    let lead = text.len() - text.trim_start().len();
    let t = text.trim();
    let col = col0 + lead;
    let Some(open) = t.find('(') else {
        return err(line, col, format!("wrong base tag '{t}' (expected Fp(p), Fq(p,e[,minpoly]) or Zp2(p))"));
    };
    if !t.ends_with(')') {
        return err(line, col + t.chars().count(), "expected ')' after base arguments");
    }
    let tag = &t[..open];
    let inner = &t[open + 1..t.len() - 1];
    let icol = col + open + 1;
    let args = split_args(inner);
    let prime_at = |s: &str, c: usize| -> PResult<Prime> {
        let v = parse_int(s, line, c, "a prime")?;
        Prime::new(v).or_else(|e| err(line, c, e.to_string()))
    };
    match (tag, args.len()) {
        ("Fp", 1) => {
            let p = prime_at(args[0].1, icol)?;
            Ok((BaseSpec::Fp(p.get()), CoeffRing::Fp(p)))
        }
        ("Zp2", 1) => {
            let p = prime_at(args[0].1, icol)?;
            Ok((BaseSpec::Zp2(p.get()), CoeffRing::Zp2(p)))
        }
        ("Fq", 2) | ("Fq", 3) => {
            let p = prime_at(args[0].1, icol)?;
            let ecol = icol + args[1].0;
            let e = parse_int(args[1].1, line, ecol, "an extension degree")? as usize;
            if args.len() == 2 {
                let k = FqField::new(p, e).or_else(|x| err(line, ecol, x.to_string()))?;
                return Ok((BaseSpec::Fq { p: p.get(), e, minpoly: None }, CoeffRing::fq(k)));
            }
            let (off, mtext) = args[2];
            let mcol = icol + off;
            let toks = tokenize(mtext, line, mcol)?;
            let syms: Vec<String> = toks
                .iter()
                .filter_map(|s| match &s.tok {
                    Tok::Ident(n) => Some(n.clone()),
                    _ => None,
                })
                .collect();
            let sym = match syms.first() {
                Some(s) if syms.iter().all(|x| x == s) => s.clone(),
                Some(_) => return err(line, mcol, "minimal polynomial must use a single variable"),
                None => return err(line, mcol, "minimal polynomial must mention its variable"),
            };
            let fp = PolyRing::grevlex(CoeffRing::Fp(p), 1);
            let scope = Scope {
                ring: &fp,
                vars: std::slice::from_ref(&sym),
                generator: None,
            };
            let mu = parse_expr(mtext, line, mcol, &scope)?;
            let deg = mu.total_degree().unwrap_or(0) as usize;
            if deg != e {
                return err(line, mcol, format!("minimal polynomial has degree {deg}, expected {e}"));
            }
            let mut dense = vec![0u64; e + 1];
            for t in mu.terms() {
                dense[t.mono.0[0] as usize] = t.coeff;
            }
            let k = FqField::with_minpoly(p, &dense)
                .or_else(|x| err(line, mcol, x.to_string()))?
                .with_symbol(&sym);
            let shown = mu.display(std::slice::from_ref(&sym));
            Ok((
                BaseSpec::Fq {
                    p: p.get(),
                    e,
                    minpoly: Some(shown),
                },
                CoeffRing::fq(k),
            ))
        }
        ("Fp" | "Zp2" | "Fq", n) => err(line, icol, format!("wrong number of arguments ({n}) for {tag}")),
        _ => err(line, col, format!("wrong base tag '{tag}' (expected Fp, Fq or Zp2)")),
    }
}

/// Parses a ring file.
pub fn parse_ring(text: &str) -> PResult<RingFile> {
    let mut base: Option<(BaseSpec, CoeffRing)> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut rels: Vec<(usize, usize, String)> = Vec::new();
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let body = content.trim_start();
        let Some(colon) = body.find(':') else {
            return err(line, lead + 1, "expected 'base:', 'vars:' or 'rel:'");
        };
        let key = body[..colon].trim_end();
        let rest = &body[colon + 1..];
        let rest_col = lead + colon + 2;
        match key {
            "base" => {
                if base.is_some() {
                    return err(line, lead + 1, "duplicate base line");
                }
                base = Some(parse_base(rest, line, rest_col)?);
            }
            "vars" => {
                let Some((_, coeffs)) = &base else {
                    return err(line, lead + 1, "vars line before base line");
                };
                if vars.is_some() {
                    return err(line, lead + 1, "duplicate vars line");
                }
                let mut names: Vec<String> = Vec::new();
                if !rest.trim().is_empty() {
                    for (off, piece) in split_args(rest) {
                        let name = piece.trim();
                        let col = rest_col + off + (piece.len() - piece.trim_start().len());
                        if !is_ident(name) {
                            return err(line, col, format!("invalid variable name '{name}'"));
                        }
                        if names.iter().any(|n| n == name) {
                            return err(line, col, format!("duplicate variable {name}"));
                        }
                        if generator(coeffs).is_some_and(|(s, _)| s == name) {
                            return err(line, col, format!("{name} names the field generator"));
                        }
                        if matches!(coeffs, CoeffRing::Zp2(_)) && name == "p" {
                            return err(line, col, "p is reserved for the prime in Zp2 mode");
                        }
                        names.push(name.to_string());
                    }
                }
                vars = Some(names);
            }
            "rel" => {
                if base.is_none() {
                    return err(line, lead + 1, "rel line before base line");
                }
                rels.push((line, rest_col, rest.to_string()));
            }
            other => return err(line, lead + 1, format!("unknown directive '{other}'")),
        }
    }
    let Some((spec, coeffs)) = base else {
        return err(last_line, 1, "missing base line");
    };
    let vars = vars.unwrap_or_default();
    let ring = PolyRing::grevlex(coeffs.clone(), vars.len());
    let scope = Scope {
        ring: &ring,
        vars: &vars,
        generator: generator(&coeffs),
    };
    let mut relations = Vec::with_capacity(rels.len());
    for (line, col, text) in &rels {
        relations.push(parse_expr(text, *line, *col, &scope)?);
    }
    let presentation = RingPresentation::from_ring(&ring, vars, relations)
        .map_err(|e| ParseError {
            line: 1,
            column: 1,
            message: e.to_string(),
        })?;
    Ok(RingFile {
        base: spec,
        presentation,
    })
}

/// Parses a polynomial in `ring`, reading `vars` and the generator of its field.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>, vars: &[String]) -> PResult<Poly> {
    let scope = Scope {
        ring,
        vars,
        generator: generator(ring.coeffs()),
    };
    parse_expr(text, 1, 1, &scope)
}

/// A point `c1,c2,…` with coordinates read in `field`.
pub fn parse_point(text: &str, field: &CoeffRing) -> PResult<Vec<u64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let ring = PolyRing::grevlex(field.clone(), 0);
    let mut out = Vec::new();
    for (off, piece) in split_args(text) {
        let scope = Scope {
            ring: &ring,
            vars: &[],
            generator: generator(field),
        };
        let v = parse_expr(piece, 1, off + 1, &scope)?;
        out.push(v.constant_coeff());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cusp() {
        let r = parse_ring("base: Fp(5)\nvars: x, y\nrel: y^2 - x^3").unwrap();
        assert_eq!(r.presentation.nvars(), 2);
        assert_eq!(r.print(), "base: Fp(5)\nvars: x, y\nrel: 4*x^3 + y^2\n");
    }

    #[test]
    fn empty_vars_gives_base_ring() {
        let r = parse_ring("base: Zp2(3)\nvars:\n").unwrap();
        assert_eq!(r.presentation.nvars(), 0);
        assert!(r.presentation.is_mixed());
    }

    #[test]
    fn unknown_variable_is_located() {
        let e = parse_ring("base: Fp(5)\nvars: x, y\nrel: y^2 - z").unwrap_err();
        assert_eq!((e.line, e.column), (3, 12));
        assert_eq!(e.message, "unknown variable z");
    }

    #[test]
    fn precedence() {
        let r = parse_ring("base: Fp(7)\nvars: x\nrel: -x^2 + 2*-x*3").unwrap();
        // -(x^2) + 2 * (-x) * 3 = 6 x^2 + x
        assert_eq!(r.print().lines().last().unwrap(), "rel: 6*x^2 + x");
    }

    #[test]
    fn literals_reduce() {
        let r = parse_ring("base: Zp2(3)\nvars: x\nrel: 100000000000000000000000000000001*x").unwrap();
        // 10^32 + 1 ≡ 1 + 1 mod 9
        assert_eq!(r.print().lines().last().unwrap(), "rel: 2*x");
    }

    #[test]
    fn fq_symbols() {
        let r = parse_ring("base: Fq(5,2,b^2 - 2)\nvars: x\nrel: x^2 - b").unwrap();
        assert_eq!(r.base.to_string(), "Fq(5,2,b^2 + 3)");
        let again = parse_ring(&r.print()).unwrap();
        assert_eq!(again, r);
        let d = parse_ring("base: Fq(3,2)\nvars: x\nrel: a*x + 1").unwrap();
        assert_eq!(parse_ring(&d.print()).unwrap(), d);
        assert!(parse_ring("base: Fq(5,2,b^2 - 1)\nvars: x").is_err());
    }

    #[test]
    fn bad_inputs_carry_positions() {
        for (text, line, col) in [
            ("base: Fx(5)", 1, 7),
            ("base: Fp(6)", 1, 10),
            ("base: Fp(5)\nvars: x\nrel: x +", 3, 9),
            ("base: Fp(5)\nvars: x\nrel: 2x", 3, 7),
            ("base: Fp(5)\nvars: x, x", 2, 10),
            ("vars: x", 1, 1),
            ("base: Fp(5)\nwhat: x", 2, 1),
            ("", 1, 1),
            ("base: Fp(5)\nvars: x\nrel: (x + 1", 3, 12),
            ("base: Fp(5)\nvars: x\nrel: x ^ y", 3, 10),
        ] {
            let e = parse_ring(text).unwrap_err();
            assert_eq!((e.line, e.column), (line, col), "{text:?}: {e}");
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let r = parse_ring("# header\n\nbase: Fp(2) # two\nvars: x # one var\nrel: x^2 # dual numbers\n").unwrap();
        assert_eq!(r.presentation.relations().len(), 1);
    }

    #[test]
    fn points() {
        let f25 = CoeffRing::fq(FqField::new(Prime::new(5).unwrap(), 2).unwrap());
        let c = parse_point("a + 1, 3, -1", &f25).unwrap();
        assert_eq!(c[1], 3);
        assert_eq!(c[2], 4);
        assert_eq!(c[0], parse_point("1 + a", &f25).unwrap()[0]);
        assert_ne!(c[0], 1);
    }
}
