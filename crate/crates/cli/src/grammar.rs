//! Text grammar for maps and coefficients.
//!
//! ```text
//! map     := '(' expr ',' expr ')'
//! expr    := term (('+' | '-') term)*
//! term    := signed factor (('*' | '/') factor)*
//! factor  := base ('^' nat)?
//! base    := '(' expr ')' | 'X' | 'Y' | integer | generator
//! ```
//!
//! Division is only allowed by coefficients (no `X`, `Y` in the divisor), so
//! fraction-field coefficients print and parse as `num/den`. `#` starts a
//! comment; several maps may follow each other, optionally separated by `;`.

use std::fmt;

use num_bigint::BigInt;
use planetame::{BiPoly, Domain, Field, PolyMap, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    fn at(pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }

    /// The message with a caret under the offending column.
    pub fn annotate(&self, src: &str) -> String {
        let start = src[..self.pos.min(src.len())]
            .rfind('\n')
            .map_or(0, |i| i + 1);
        let end = src[start..].find('\n').map_or(src.len(), |i| start + i);
        let line = src[..start].matches('\n').count() + 1;
        let col = src[start..self.pos.min(src.len())].chars().count() + 1;
        format!(
            "line {line}, column {col}: {}\n  {}\n  {}^",
            self.msg,
            &src[start..end],
            " ".repeat(col - 1)
        )
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == '#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let s = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Int(src[s..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((s, Tok::Ident(src[s..i].to_string())));
        } else if "()+-*/^,;".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().expect("in bounds");
            return Err(ParseError::at(i, format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Expr {
    Int(BigInt),
    Gen(String, usize),
    X,
    Y,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32, usize),
}

impl Expr {
    fn has_variables(&self) -> bool {
        match self {
            Expr::X | Expr::Y => true,
            Expr::Int(_) | Expr::Gen(..) => false,
            Expr::Neg(a) | Expr::Pow(a, ..) => a.has_variables(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.has_variables() || b.has_variables()
            }
        }
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    i: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(Tok::Int(n)) => format!("'{n}'"),
            Some(Tok::Ident(s)) => format!("'{s}'"),
            Some(Tok::Sym(c)) => format!("'{c}'"),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::at(
                self.pos(),
                format!("expected '{c}', found {}", self.describe_next()),
            ))
        }
    }

    fn map(&mut self) -> Result<(Expr, Expr), ParseError> {
        self.expect('(')?;
        let f1 = self.expr()?;
        self.expect(',')?;
        let f2 = self.expr()?;
        self.expect(')')?;
        Ok((f1, f2))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let mut acc = self.factor()?;
        if neg {
            acc = Expr::Neg(Box::new(acc));
        }
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.pos();
                self.i += 1;
                let d = self.factor()?;
                if d.has_variables() {
                    return Err(ParseError::at(
                        at,
                        "only division by coefficients is allowed, not by X or Y",
                    ));
                }
                acc = Expr::Div(Box::new(acc), Box::new(d), at);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Sym('^')) {
            let at = self.pos();
            self.i += 1;
            match self.peek() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .ok()
                        .filter(|e| *e <= 10_000)
                        .ok_or_else(|| ParseError::at(self.pos(), "exponent too large"))?;
                    self.i += 1;
                    return Ok(Expr::Pow(Box::new(base), e, at));
                }
                _ => {
                    return Err(ParseError::at(
                        self.pos(),
                        format!(
                            "expected a natural number exponent, found {}",
                            self.describe_next()
                        ),
                    ))
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.i += 1;
                Ok(match s.as_str() {
                    "X" => Expr::X,
                    "Y" => Expr::Y,
                    _ => Expr::Gen(s, pos),
                })
            }
            _ => Err(ParseError::at(
                pos,
                format!("expected a term, found {}", self.describe_next()),
            )),
        }
    }
}

fn parse_maps_raw(src: &str) -> Result<Vec<(usize, Expr, Expr)>, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks: &toks,
        i: 0,
        end: src.len(),
    };
    let mut maps = Vec::new();
    while p.peek().is_some() {
        let at = p.pos();
        let (f1, f2) = p.map()?;
        maps.push((at, f1, f2));
        while p.eat(';') {}
    }
    if maps.is_empty() {
        return Err(ParseError::at(
            src.len(),
            "expected a map '(F1, F2)', found end of input",
        ));
    }
    Ok(maps)
}

type KPoly<D> = BiPoly<<<D as Domain>::Frac as Ring>::Elem>;

fn eval<D: Domain>(dom: &D, e: &Expr) -> Result<KPoly<D>, ParseError> {
    let k = dom.fraction_field();
    Ok(match e {
        Expr::Int(n) => BiPoly::constant(&k, k.from_bigint(n)),
        Expr::X => BiPoly::x(&k),
        Expr::Y => BiPoly::y(&k),
        Expr::Gen(name, pos) => {
            let g = dom.fraction_generator(name).ok_or_else(|| {
                let names = dom.generator_names();
                let known = if names.is_empty() {
                    "this ring has no named generators".to_string()
                } else {
                    format!("generators of this ring: {}", names.join(", "))
                };
                ParseError::at(*pos, format!("unknown generator '{name}' ({known})"))
            })?;
            BiPoly::constant(&k, g)
        }
        Expr::Neg(a) => eval(dom, a)?.neg(&k),
        Expr::Add(a, b) => eval(dom, a)?.add(&k, &eval(dom, b)?),
        Expr::Sub(a, b) => eval(dom, a)?.sub(&k, &eval(dom, b)?),
        Expr::Mul(a, b) => eval(dom, a)?.mul(&k, &eval(dom, b)?),
        Expr::Pow(a, n, _) => eval(dom, a)?.pow(&k, *n),
        Expr::Div(a, b, pos) => {
            let d = eval(dom, b)?.coeff(&k, 0, 0);
            let inv = k
                .inv(&d)
                .ok_or_else(|| ParseError::at(*pos, "division by zero"))?;
            eval(dom, a)?.scale(&k, &inv)
        }
    })
}

/// First generator occurrence raised to less than the smallest power the
/// ring admits.
fn low_power<D: Domain>(dom: &D, e: &Expr, exp: u32) -> Option<(usize, String)> {
    match e {
        Expr::Gen(name, pos) => (exp < dom.generator_min_power(name)).then(|| (*pos, name.clone())),
        Expr::Pow(a, n, _) => low_power(dom, a, exp * n),
        Expr::Int(_) | Expr::X | Expr::Y => None,
        Expr::Neg(a) => low_power(dom, a, exp),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            low_power(dom, a, exp).or_else(|| low_power(dom, b, exp))
        }
    }
}

fn pull_back<D: Domain>(
    dom: &D,
    p: &KPoly<D>,
    e: &Expr,
    at: usize,
) -> Result<BiPoly<D::Elem>, ParseError> {
    if let Some(q) = p.try_map_coeffs(dom, |c| dom.pull_back(c)) {
        return Ok(q);
    }
    let k = dom.fraction_field();
    let ring = dom.descriptor().kind;
    if let Some((pos, name)) = low_power(dom, e, 1) {
        let m = dom.generator_min_power(&name);
        return Err(ParseError::at(
            pos,
            format!("{name} is not in {ring}: only {name}^{m} and higher powers (or products of them) are allowed"),
        ));
    }
    let bad = p
        .terms()
        .find(|(_, c)| dom.pull_back(c).is_none())
        .map(|(_, c)| k.render(c))
        .unwrap_or_default();
    Err(ParseError::at(
        at,
        format!("coefficient {bad} is not in {ring}"),
    ))
}

/// Every map in `src`, with coefficients in `dom`.
pub fn parse_maps<D: Domain>(dom: &D, src: &str) -> Result<Vec<PolyMap<D::Elem>>, ParseError> {
    parse_maps_raw(src)?
        .into_iter()
        .map(|(at, e1, e2)| {
            let f1 = pull_back(dom, &eval(dom, &e1)?, &e1, at)?;
            let f2 = pull_back(dom, &eval(dom, &e2)?, &e2, at)?;
            Ok(PolyMap::new(f1, f2))
        })
        .collect()
}

/// Exactly one map.
pub fn parse_map<D: Domain>(dom: &D, src: &str) -> Result<PolyMap<D::Elem>, ParseError> {
    let mut maps = parse_maps(dom, src)?;
    if maps.len() != 1 {
        return Err(ParseError::at(
            0,
            format!("expected one map, found {}", maps.len()),
        ));
    }
    Ok(maps.remove(0))
}

/// A coefficient (no `X`, `Y`).
pub fn parse_coeff<D: Domain>(dom: &D, src: &str) -> Result<D::Elem, ParseError> {
    let list = parse_coeff_list(dom, src)?;
    match <[_; 1]>::try_from(list) {
        Ok([c]) => Ok(c),
        Err(_) => Err(ParseError::at(0, "expected a single coefficient")),
    }
}

/// Comma-separated coefficients.
pub fn parse_coeff_list<D: Domain>(dom: &D, src: &str) -> Result<Vec<D::Elem>, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks: &toks,
        i: 0,
        end: src.len(),
    };
    let mut out = Vec::new();
    loop {
        let at = p.pos();
        let e = p.expr()?;
        if e.has_variables() {
            return Err(ParseError::at(
                at,
                "expected a coefficient, found an expression in X, Y",
            ));
        }
        out.push(pull_back(dom, &eval(dom, &e)?, &e, at)?.coeff(dom, 0, 0));
        if !p.eat(',') {
            break;
        }
    }
    if p.peek().is_some() {
        return Err(ParseError::at(
            p.pos(),
            format!("unexpected {}", p.describe_next()),
        ));
    }
    Ok(out)
}
