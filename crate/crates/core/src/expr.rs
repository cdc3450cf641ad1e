//! Text syntax for forms.
//!
//! ```text
//! form    := [+|-] term ((+|-) term)*
//! term    := power (('*' | '/\') power | '/' divisor)*
//! power   := primary ('^' nat)?
//! primary := rational-int | var | 's' | 'd' var | 'ds' | '(' form ')'
//! divisor := nat | 's' ('^' nat)?
//! ```
//!
//! `*` and `/\` both denote the wedge product (which is multiplication on
//! 0-forms). Variables are `x1, x2, ...`, with `x, y, z, w` as aliases when
//! there are at most four coordinates. `s` is the sum of the coordinates
//! and `ds` its differential; neither exists on the simplex `T`.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::{DiffForm, IndexSet, TForm};
use crate::ratpoly::{variable_name, write_term_magnitude, Polynomial, Rational, SLocalPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Wedge,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'/' if bytes.get(i + 1) == Some(&b'\\') => {
                i += 1;
                Tok::Wedge
            }
            b'/' => Tok::Slash,
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Tok::Int(text[start..=i].parse().expect("digits"))
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_alphanumeric() {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(Error::Parse {
                    position: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    nvars: usize,
    /// `s`, `ds` and division by `s` are available.
    orthant: bool,
}

fn parse_err<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        position,
        message: message.into(),
    })
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn variable(&self, name: &str) -> Option<usize> {
        const ALIASES: [&str; 4] = ["x", "y", "z", "w"];
        if self.nvars <= ALIASES.len() {
            if let Some(i) = ALIASES[..self.nvars].iter().position(|a| *a == name) {
                return Some(i);
            }
        }
        let digits = name.strip_prefix('x')?;
        if digits.starts_with('0') {
            return None;
        }
        let i: usize = digits.parse().ok()?;
        (1..=self.nvars).contains(&i).then(|| i - 1)
    }

    fn scalar(&self, p: Polynomial) -> DiffForm {
        DiffForm::scalar(p)
    }

    fn nat(&mut self) -> Result<u32> {
        match self.bump() {
            (_, Tok::Int(v)) => u32::try_from(v.clone()).or_else(|_| parse_err(self.offset(), "exponent too large")),
            (at, _) => parse_err(at, "expected a natural number"),
        }
    }

    fn form(&mut self) -> Result<DiffForm> {
        let mut negate = false;
        match self.peek() {
            Tok::Plus => {
                self.bump();
            }
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            let at = self.offset();
            let minus = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            self.bump();
            let t = self.term()?;
            let t = if minus { -t } else { t };
            acc = match acc.checked_add(&t) {
                Ok(v) => v,
                Err(_) => {
                    return parse_err(
                        at,
                        format!("cannot add a {}-form to a {}-form", t.degree(), acc.degree()),
                    )
                }
            };
        }
    }

    fn term(&mut self) -> Result<DiffForm> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Star | Tok::Wedge => {
                    self.bump();
                    let rhs = self.power()?;
                    acc = acc.wedge(&rhs);
                }
                Tok::Slash => {
                    self.bump();
                    acc = self.divide(acc)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn divide(&mut self, acc: DiffForm) -> Result<DiffForm> {
        let (at, tok) = self.bump();
        match tok {
            Tok::Int(v) => {
                if v.is_zero() {
                    return parse_err(at, "division by zero");
                }
                Ok(acc.scale(&Rational::new(BigInt::one(), v)))
            }
            Tok::Ident(name) if name == "s" => {
                if !self.orthant {
                    return parse_err(at, "`s` is not available on the simplex");
                }
                let e = if *self.peek() == Tok::Caret {
                    self.bump();
                    self.nat()?
                } else {
                    1
                };
                Ok(acc.div_s_pow(e))
            }
            _ => parse_err(at, "can only divide by a positive integer or a power of s"),
        }
    }

    fn power(&mut self) -> Result<DiffForm> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = self.nat()?;
        let mut out = self.scalar(Polynomial::one(self.nvars));
        for _ in 0..e {
            out = out.wedge(&base);
        }
        Ok(out)
    }

    fn primary(&mut self) -> Result<DiffForm> {
        let (at, tok) = self.bump();
        match tok {
            Tok::Int(v) => Ok(self.scalar(Polynomial::constant(self.nvars, Rational::from_integer(v)))),
            Tok::LParen => {
                let inner = self.form()?;
                match self.bump() {
                    (_, Tok::RParen) => Ok(inner),
                    (p, _) => parse_err(p, "expected `)`"),
                }
            }
            Tok::Ident(name) => self.identifier(at, &name),
            Tok::End => parse_err(at, "unexpected end of input"),
            other => parse_err(at, format!("unexpected token {}", describe(&other))),
        }
    }

    fn identifier(&mut self, at: usize, name: &str) -> Result<DiffForm> {
        if name == "s" || name == "ds" {
            if !self.orthant {
                return Err(Error::UnknownVariable {
                    name: name.to_string(),
                    position: at,
                });
            }
            return Ok(if name == "s" {
                self.scalar(Polynomial::s(self.nvars))
            } else {
                (0..self.nvars).fold(DiffForm::zero(self.nvars, 1), |acc, i| &acc + &DiffForm::dx(self.nvars, i))
            });
        }
        if let Some(i) = self.variable(name) {
            return Ok(self.scalar(Polynomial::var(self.nvars, i)));
        }
        if let Some(i) = name.strip_prefix('d').and_then(|v| self.variable(v)) {
            return Ok(DiffForm::dx(self.nvars, i));
        }
        Err(Error::UnknownVariable {
            name: name.to_string(),
            position: at,
        })
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(v) => format!("`{v}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Wedge => "`/\\`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn parse_with(text: &str, nvars: usize, orthant: bool) -> Result<DiffForm> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        nvars,
        orthant,
    };
    let out = p.form()?;
    match p.peek() {
        Tok::End => Ok(out),
        other => parse_err(p.offset(), format!("unexpected token {}", describe(other))),
    }
}

/// Parses a form on the orthant of `T^n`, i.e. in `n + 1` coordinates.
pub fn parse_form(text: &str, n: usize) -> Result<DiffForm> {
    parse_with(text, n + 1, true)
}

/// Parses a polynomial form on `T^n` in the coordinates `x_1, .., x_n`.
pub fn parse_tform(text: &str, n: usize) -> Result<TForm> {
    let f = parse_with(text, n, false)?;
    Ok(TForm::from_terms(
        n,
        f.degree(),
        f.terms().map(|(i, c)| (*i, c.numerator().clone())),
    ))
}

fn covector_name(nvars: usize, i: usize, ds_index: Option<usize>) -> String {
    if ds_index == Some(i) {
        "ds".to_string()
    } else {
        format!("d{}", variable_name(nvars, i))
    }
}

fn basis_name(nvars: usize, index: IndexSet, ds_index: Option<usize>) -> String {
    index
        .iter()
        .map(|i| covector_name(nvars, i, ds_index))
        .collect::<Vec<_>>()
        .join("/\\")
}

struct Magnitude<'a>(&'a Polynomial);

impl fmt::Display for Magnitude<'_> {
    /// A single-term polynomial without its sign.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, c) = self.0.terms().next().expect("nonzero");
        write_term_magnitude(f, m, c)
    }
}

fn s_suffix(power: u32) -> String {
    match power {
        0 => String::new(),
        1 => "/s".to_string(),
        m => format!("/s^{m}"),
    }
}

/// Writes `±coefficient` (sign separately) as a factor in front of a
/// covector. Returns `(negative, text)`; `text` is empty for a unit
/// coefficient.
fn coefficient_factor(c: &SLocalPoly) -> (bool, String) {
    let num = c.numerator();
    let suffix = s_suffix(c.s_power());
    if num.num_terms() == 1 {
        let (m, coeff) = num.terms().next().unwrap();
        let negative = coeff.is_negative();
        if m.is_constant() && coeff.abs().is_one() && suffix.is_empty() {
            return (negative, String::new());
        }
        let body = format!("{}", Magnitude(num));
        return if suffix.is_empty() {
            (negative, body)
        } else {
            (negative, format!("({body}{suffix})"))
        };
    }
    if suffix.is_empty() {
        (false, format!("({num})"))
    } else {
        (false, format!("(({num}){suffix})"))
    }
}

fn scalar_text(c: &SLocalPoly) -> String {
    let num = c.numerator();
    if c.s_power() == 0 {
        return num.to_string();
    }
    let suffix = s_suffix(c.s_power());
    if num.num_terms() == 1 {
        let (_, coeff) = num.terms().next().unwrap();
        let sign = if coeff.is_negative() { "-" } else { "" };
        format!("{sign}{}{suffix}", Magnitude(num))
    } else {
        format!("({num}){suffix}")
    }
}

fn write_terms<'a>(
    out: &mut String,
    nvars: usize,
    ds_index: Option<usize>,
    terms: impl Iterator<Item = (IndexSet, &'a SLocalPoly)>,
) {
    for (k, (index, c)) in terms.enumerate() {
        let (negative, factor) = coefficient_factor(c);
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !factor.is_empty() {
            out.push_str(&factor);
            out.push('*');
        }
        out.push_str(&basis_name(nvars, index, ds_index));
    }
}

/// The same form written in the frame `dx_1, .., dx_n, ds`, with `ds`
/// taking the slot of `dx_{n+1}`.
fn ds_frame(alpha: &DiffForm) -> DiffForm {
    let nvars = alpha.nvars();
    let last = nvars - 1;
    let mut out = DiffForm::zero(nvars, alpha.degree());
    for (index, c) in alpha.terms() {
        if !index.contains(last) {
            out = &out + &DiffForm::term(*index, c.clone());
            continue;
        }
        // dx_I = dx_{I'} ∧ (ds - Σ_{j<last} dx_j)
        let rest = index.remove(last);
        out = &out + &DiffForm::term(*index, c.clone());
        for j in 0..last {
            if let Some(sign) = rest.wedge_sign(IndexSet::singleton(j)) {
                let v = if sign < 0 { c.clone() } else { -c };
                out = &out + &DiffForm::term(rest.insert(j), v);
            }
        }
    }
    out
}

/// Human-readable form. Picks whichever of the frames `(dx_1, .., dx_{n+1})`
/// and `(dx_1, .., dx_n, ds)` needs fewer terms; ties go to the first.
pub fn format_form(alpha: &DiffForm) -> String {
    if alpha.is_zero() {
        return "0".to_string();
    }
    if alpha.degree() == 0 {
        return scalar_text(&alpha.coeff(IndexSet::empty()));
    }
    let nvars = alpha.nvars();
    let alt = ds_frame(alpha);
    let mut out = String::new();
    if alt.num_terms() < alpha.num_terms() {
        write_terms(&mut out, nvars, Some(nvars - 1), alt.terms().map(|(i, c)| (*i, c)));
    } else {
        write_terms(&mut out, nvars, None, alpha.terms().map(|(i, c)| (*i, c)));
    }
    out
}

/// Human-readable form on `T`.
pub fn format_tform(a: &TForm) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let coeffs: Vec<(IndexSet, SLocalPoly)> = a.terms().map(|(i, p)| (*i, SLocalPoly::from(p.clone()))).collect();
    if a.degree() == 0 {
        return scalar_text(&coeffs[0].1);
    }
    let mut out = String::new();
    write_terms(&mut out, a.n(), None, coeffs.iter().map(|(i, c)| (*i, c)));
    out
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_form(self))
    }
}

impl fmt::Display for TForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tform(self))
    }
}

/// Renders a rational row-major matrix as CSV.
pub fn matrix_csv(m: &crate::linalg::Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}
