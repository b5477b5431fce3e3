//! Text and document formats.
//!
//! Three textual formats round-trip through this module: series record
//! sets, envelope terms, and polynomial term lists; operators travel as
//! a structured document with the alpha form as ground truth. Exact
//! rationals are always written as integer pairs `num/den`, never as
//! decimals; the decimal renderer exists only for plot-ready CSV.
//! Serialization is canonical: parse-then-serialize is a projection,
//! and serializing twice is byte-identical.

use crate::error::{Error, Result};
use crate::lattice::{Domain, LatticeBox};
use crate::operator::TorusOperator;
use crate::rational::GaussianRational;
use crate::sections::{AtomEnvelope, EnvelopeExpr};
use crate::series::TrigSeries;
use crate::symbol::{MultiIndex, SymbolPolynomial};
use num::{BigInt, BigRational, Signed, Zero};
use serde_json::{json, Value};
use std::fmt::Write as _;

/// Canonical rational rendering: reduced, positive denominator, always
/// an integer pair.
pub fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accept `num/den` or a bare integer.
pub fn parse_rational(tok: &str) -> Option<BigRational> {
    if let Some((n, d)) = tok.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        tok.parse::<BigInt>().ok().map(BigRational::from_integer)
    }
}

/// Render an exact rational as a decimal string with `digits`
/// fractional digits, rounding half away from zero.
pub fn rational_decimal(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r * BigRational::from_integer(scale.clone())).round().to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let abs = scaled.abs();
    let int_part = &abs / &scale;
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = &abs % &scale;
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac.to_string(),
        width = digits as usize
    )
}

fn parse_err(line: usize, col: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse {
        line,
        msg: format!("column {col}: {msg}"),
    }
}

/// Whitespace-separated tokens of one line with 1-based start columns.
fn tokens_with_cols(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Serialize a series as the text record set: a `box` header followed
/// by one `k1 k2 re im` line per stored coefficient in lattice order.
pub fn serialize_series(u: &TrigSeries) -> String {
    let mut out = String::new();
    match u.domain() {
        Domain::Entire => out.push_str("box entire\n"),
        Domain::Empty => out.push_str("box empty\n"),
        Domain::Window(b) => {
            let _ = writeln!(out, "box {} {} {} {}", b.n1_min, b.n1_max, b.n2_min, b.n2_max);
        }
    }
    for (k, v) in u.iter() {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            k.0,
            k.1,
            rational_str(&v.re),
            rational_str(&v.im)
        );
    }
    out
}

/// Parse the series text format. Blank lines and `#` comments are
/// skipped; the first record must be the `box` header.
pub fn parse_series(text: &str) -> Result<TrigSeries> {
    let mut domain: Option<Domain> = None;
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let toks = tokens_with_cols(line);
        if domain.is_none() {
            let (c0, t0) = toks[0];
            if t0 != "box" {
                return Err(parse_err(lineno, c0, "expected 'box' header"));
            }
            domain = Some(parse_box_header(lineno, &toks)?);
            continue;
        }
        if toks.len() != 4 {
            return Err(parse_err(
                lineno,
                toks.last().map_or(1, |(c, _)| *c),
                format!("expected 4 fields 'k1 k2 re im', found {}", toks.len()),
            ));
        }
        let idx = |j: usize| -> Result<i64> {
            let (c, t) = toks[j];
            t.parse()
                .map_err(|_| parse_err(lineno, c, format!("invalid integer '{t}'")))
        };
        let rat = |j: usize| -> Result<BigRational> {
            let (c, t) = toks[j];
            parse_rational(t)
                .ok_or_else(|| parse_err(lineno, c, format!("invalid rational '{t}'")))
        };
        let k = (idx(0)?, idx(1)?);
        if !domain.as_ref().is_some_and(|d| d.contains(k)) {
            return Err(parse_err(
                lineno,
                toks[0].0,
                format!("index ({}, {}) lies outside the declared box", k.0, k.1),
            ));
        }
        terms.push((k, GaussianRational::new(rat(2)?, rat(3)?)));
    }
    match domain {
        None => Err(parse_err(1, 1, "missing 'box' header")),
        Some(Domain::Entire) => Ok(TrigSeries::polynomial(terms)),
        Some(Domain::Empty) => Ok(TrigSeries::empty()),
        Some(Domain::Window(b)) => TrigSeries::truncation(terms, b),
    }
}

fn parse_box_header(lineno: usize, toks: &[(usize, &str)]) -> Result<Domain> {
    match toks {
        [_, (_, "entire")] => Ok(Domain::Entire),
        [_, (_, "empty")] => Ok(Domain::Empty),
        [_, a, b, c, d] => {
            let bound = |(col, t): (usize, &str)| -> Result<i64> {
                t.parse()
                    .map_err(|_| parse_err(lineno, col, format!("invalid box bound '{t}'")))
            };
            let bx = LatticeBox::new(bound(*a)?, bound(*b)?, bound(*c)?, bound(*d)?)
                .map_err(|e| parse_err(lineno, toks[1].0, e))?;
            Ok(Domain::Window(bx))
        }
        _ => Err(parse_err(
            lineno,
            toks[0].0,
            "box header needs 'entire', 'empty', or four bounds",
        )),
    }
}

/// The structured-object view of a series, mirroring the text fields.
pub fn series_to_json(u: &TrigSeries) -> Value {
    let boxv = match u.domain() {
        Domain::Entire => json!("entire"),
        Domain::Empty => json!("empty"),
        Domain::Window(b) => json!([b.n1_min, b.n1_max, b.n2_min, b.n2_max]),
    };
    let terms: Vec<Value> = u
        .iter()
        .map(|(k, v)| json!([k.0, k.1, rational_str(&v.re), rational_str(&v.im)]))
        .collect();
    json!({ "box": boxv, "terms": terms })
}

fn doc_err(msg: impl std::fmt::Display) -> Error {
    Error::Document(msg.to_string())
}

pub fn series_from_json(v: &Value) -> Result<TrigSeries> {
    let obj = v.as_object().ok_or_else(|| doc_err("series must be an object"))?;
    let boxv = obj.get("box").ok_or_else(|| doc_err("series lacks 'box'"))?;
    let domain = match boxv {
        Value::String(s) if s == "entire" => Domain::Entire,
        Value::String(s) if s == "empty" => Domain::Empty,
        Value::Array(a) if a.len() == 4 => {
            let b: Vec<i64> = a
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| doc_err("box bounds must be integers")))
                .collect::<Result<_>>()?;
            Domain::Window(LatticeBox::new(b[0], b[1], b[2], b[3]).map_err(doc_err)?)
        }
        _ => return Err(doc_err("'box' must be 'entire', 'empty', or four integers")),
    };
    let terms = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| doc_err("series lacks a 'terms' array"))?;
    let mut parsed = Vec::new();
    for t in terms {
        let row = t.as_array().filter(|r| r.len() == 4).ok_or_else(|| {
            doc_err("each term must be a 4-element array [k1, k2, re, im]")
        })?;
        let k = (
            row[0].as_i64().ok_or_else(|| doc_err("k1 must be an integer"))?,
            row[1].as_i64().ok_or_else(|| doc_err("k2 must be an integer"))?,
        );
        if !domain.contains(k) {
            return Err(doc_err(format!(
                "index ({}, {}) lies outside the declared box",
                k.0, k.1
            )));
        }
        let rat = |x: &Value| -> Result<BigRational> {
            x.as_str()
                .and_then(parse_rational)
                .ok_or_else(|| doc_err(format!("invalid rational {x}")))
        };
        parsed.push((k, GaussianRational::new(rat(&row[2])?, rat(&row[3])?)));
    }
    match domain {
        Domain::Entire => Ok(TrigSeries::polynomial(parsed)),
        Domain::Empty => Ok(TrigSeries::empty()),
        Domain::Window(b) => TrigSeries::truncation(parsed, b),
    }
}

/// Operator document: the alpha form is the serialized ground truth;
/// the frequency form is derived on parse, never read from the file.
pub fn serialize_operator(l: &TorusOperator) -> String {
    let terms: Vec<Value> = l
        .alpha_form()
        .iter()
        .map(|(alpha, coeff)| {
            json!({ "alpha": [alpha.a1, alpha.a2], "coeff": series_to_json(coeff) })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&json!({ "alpha_form": terms }))
        .expect("value is finite");
    s.push('\n');
    s
}

pub fn parse_operator(text: &str) -> Result<TorusOperator> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
        parse_err(e.line(), e.column(), msg)
    })?;
    operator_from_json(&v)
}

pub fn operator_from_json(v: &Value) -> Result<TorusOperator> {
    let terms = v
        .get("alpha_form")
        .and_then(Value::as_array)
        .ok_or_else(|| doc_err("operator lacks an 'alpha_form' array"))?;
    let mut parsed = Vec::new();
    for t in terms {
        let alpha = t
            .get("alpha")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 2)
            .ok_or_else(|| doc_err("each term needs 'alpha': [a1, a2]"))?;
        let ord = |x: &Value| -> Result<u32> {
            x.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| doc_err("derivative orders must be small non-negative integers"))
        };
        let coeff = t
            .get("coeff")
            .ok_or_else(|| doc_err("each term needs a 'coeff' series"))?;
        parsed.push((
            MultiIndex::new(ord(&alpha[0])?, ord(&alpha[1])?),
            series_from_json(coeff)?,
        ));
    }
    TorusOperator::from_alpha_form(parsed)
}

/// Envelope terms: `atom(a, b1, b2, c1, c2)` leaves under nested
/// `max(...)` / `min(...)` prefix nodes.
pub fn serialize_envelope(e: &EnvelopeExpr) -> String {
    let mut out = String::new();
    write_envelope(e, &mut out);
    out
}

fn write_envelope(e: &EnvelopeExpr, out: &mut String) {
    match e {
        EnvelopeExpr::Atom(a) => {
            let _ = write!(
                out,
                "atom({}, {}, {}, {}, {})",
                rational_str(&a.a),
                rational_str(&a.b1),
                rational_str(&a.b2),
                rational_str(&a.c1),
                rational_str(&a.c2)
            );
        }
        EnvelopeExpr::Max(children) | EnvelopeExpr::Min(children) => {
            out.push_str(if matches!(e, EnvelopeExpr::Max(_)) { "max(" } else { "min(" });
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_envelope(c, out);
            }
            out.push(')');
        }
    }
}

struct Cursor<'a> {
    rest: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            rest: s.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl std::fmt::Display) -> Error {
        parse_err(self.line, self.col, msg)
    }

    fn peek(&mut self) -> Option<char> {
        self.rest.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.rest.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected '{want}', found '{c}'"))),
            None => Err(self.err(format!("expected '{want}', found end of input"))),
        }
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while self.peek().is_some_and(|c| c.is_ascii_lowercase()) {
            s.push(self.bump().unwrap());
        }
        s
    }

    fn rational(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let mut s = String::new();
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_digit() || c == '-' || c == '+' || c == '/')
        {
            s.push(self.bump().unwrap());
        }
        if s.is_empty() {
            return Err(self.err("expected a rational number"));
        }
        parse_rational(&s).ok_or_else(|| self.err(format!("invalid rational '{s}'")))
    }
}

pub fn parse_envelope(text: &str) -> Result<EnvelopeExpr> {
    let mut cur = Cursor::new(text);
    let e = parse_envelope_expr(&mut cur)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.err("trailing input after envelope term"));
    }
    Ok(e)
}

fn parse_envelope_expr(cur: &mut Cursor) -> Result<EnvelopeExpr> {
    cur.skip_ws();
    let head = cur.ident();
    match head.as_str() {
        "atom" => {
            cur.expect('(')?;
            let a = cur.rational()?;
            cur.expect(',')?;
            let b1 = cur.rational()?;
            cur.expect(',')?;
            let b2 = cur.rational()?;
            cur.expect(',')?;
            let c1 = cur.rational()?;
            cur.expect(',')?;
            let c2 = cur.rational()?;
            cur.expect(')')?;
            Ok(EnvelopeExpr::Atom(AtomEnvelope::new(a, b1, b2, c1, c2)))
        }
        "max" | "min" => {
            cur.expect('(')?;
            let mut children = vec![parse_envelope_expr(cur)?];
            loop {
                cur.skip_ws();
                match cur.peek() {
                    Some(',') => {
                        cur.bump();
                        children.push(parse_envelope_expr(cur)?);
                    }
                    Some(')') => {
                        cur.bump();
                        break;
                    }
                    Some(c) => return Err(cur.err(format!("expected ',' or ')', found '{c}'"))),
                    None => return Err(cur.err("unclosed argument list")),
                }
            }
            Ok(if head == "max" {
                EnvelopeExpr::max_of(children)
            } else {
                EnvelopeExpr::min_of(children)
            })
        }
        "" => Err(cur.err("expected 'atom', 'max', or 'min'")),
        other => Err(cur.err(format!("unknown envelope head '{other}'"))),
    }
}

/// Polynomial term list `c a1 a2, c a1 a2, ...` with rational
/// coefficients and non-negative integer exponents.
pub fn parse_poly(text: &str) -> Result<SymbolPolynomial> {
    let mut terms = Vec::new();
    let mut col = 1usize;
    for seg in text.split(',') {
        let toks = tokens_with_cols(seg);
        let seg_col = |tok_col: usize| col + tok_col - 1;
        if toks.len() != 3 {
            return Err(parse_err(
                1,
                seg_col(toks.first().map_or(1, |(c, _)| *c)),
                format!("expected 'c a1 a2', found {} fields", toks.len()),
            ));
        }
        let c = parse_rational(toks[0].1).ok_or_else(|| {
            parse_err(1, seg_col(toks[0].0), format!("invalid rational '{}'", toks[0].1))
        })?;
        let exp = |j: usize| -> Result<u32> {
            toks[j].1.parse().map_err(|_| {
                parse_err(
                    1,
                    seg_col(toks[j].0),
                    format!("invalid exponent '{}'", toks[j].1),
                )
            })
        };
        terms.push(((exp(1)?, exp(2)?), GaussianRational::real(c)));
        col += seg.chars().count() + 1;
    }
    Ok(SymbolPolynomial::from_terms(terms))
}

/// Canonical term-list rendering; refuses non-real coefficients, which
/// the term-list grammar cannot express.
pub fn serialize_poly(p: &SymbolPolynomial) -> Result<String> {
    let mut parts = Vec::new();
    for (&(a1, a2), c) in p.iter() {
        if !c.im.is_zero() {
            return Err(Error::Contract(format!(
                "term x1^{a1} x2^{a2} has a non-real coefficient; the term-list format is real-only"
            )));
        }
        parts.push(format!("{} {} {}", rational_str(&c.re), a1, a2));
    }
    Ok(parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn series_text_round_trips_canonically() {
        let b = LatticeBox::new(-2, 2, -1, 1).unwrap();
        let u = TrigSeries::truncation(
            [
                ((1, 0), GaussianRational::new(rat(1, 2), rat(-3, 4))),
                ((-2, 1), GaussianRational::i()),
            ],
            b,
        )
        .unwrap();
        let s = serialize_series(&u);
        assert_eq!(
            s,
            "box -2 2 -1 1\n-2 1 0/1 1/1\n1 0 1/2 -3/4\n"
        );
        let parsed = parse_series(&s).unwrap();
        assert_eq!(parsed, u);
        assert_eq!(serialize_series(&parsed), s);
    }

    #[test]
    fn parse_canonicalizes_unreduced_input() {
        let text = "box entire\n1 0 3/-6 0\n1 0 0/1 2/4\n0 0 0 0\n";
        let u = parse_series(text).unwrap();
        assert_eq!(
            serialize_series(&u),
            "box entire\n1 0 -1/2 1/2\n"
        );
    }

    #[test]
    fn empty_and_entire_headers_round_trip() {
        for text in ["box entire\n", "box empty\n"] {
            let u = parse_series(text).unwrap();
            assert_eq!(serialize_series(&u), text);
        }
    }

    #[test]
    fn series_errors_name_line_and_column() {
        let err = parse_series("box -2 2 -1 1\n0 0 oops 0/1\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("column 5"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_series("box -1 1 -1 1\n5 0 1/1 0/1\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("outside"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn operator_document_round_trips() {
        let l = TorusOperator::mizohata();
        let s = serialize_operator(&l);
        let back = parse_operator(&s).unwrap();
        assert_eq!(back.freq_form(), l.freq_form());
        assert_eq!(serialize_operator(&back), s);
    }

    #[test]
    fn operator_parse_reports_json_position() {
        let err = parse_operator("{\n  \"alpha_form\": [oops]\n}").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn envelope_terms_round_trip_and_canonicalize() {
        let text = "max(atom(1, 0, 0, 0, 0), min(atom(2, 0, 0, 0, 0), atom(0, 1/2, 0, 0, 0)))";
        let e = parse_envelope(text).unwrap();
        let s = serialize_envelope(&e);
        assert_eq!(
            s,
            "max(atom(1/1, 0/1, 0/1, 0/1, 0/1), \
             min(atom(2/1, 0/1, 0/1, 0/1, 0/1), atom(0/1, 1/2, 0/1, 0/1, 0/1)))"
        );
        assert_eq!(serialize_envelope(&parse_envelope(&s).unwrap()), s);
        // singleton nodes collapse to their child
        let e = parse_envelope("max(atom(3, 0, 0, 0, 0))").unwrap();
        assert_eq!(serialize_envelope(&e), "atom(3/1, 0/1, 0/1, 0/1, 0/1)");
    }

    #[test]
    fn envelope_errors_carry_position() {
        let err = parse_envelope("max(atom(1, 0, 0, 0, 0);").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 1);
                assert!(msg.contains("column 24"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_envelope("sup(atom(1, 0, 0, 0, 0))").is_err());
        assert!(parse_envelope("atom(1, 0, 0, 0, 0) junk").is_err());
    }

    #[test]
    fn poly_term_list_parses_and_serializes() {
        let p = parse_poly("1 2 0, -2 0 2").unwrap();
        let v = p.eval((3, 2));
        assert_eq!(v, GaussianRational::one());
        assert_eq!(serialize_poly(&p).unwrap(), "-2/1 0 2, 1/1 2 0");
        let err = parse_poly("1 2 0, x 0 2").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 1);
                assert!(msg.contains("column 8"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn decimal_rendering_rounds_half_away() {
        assert_eq!(rational_decimal(&rat(1, 3), 6), "0.333333");
        assert_eq!(rational_decimal(&rat(-5, 4), 2), "-1.25");
        assert_eq!(rational_decimal(&rat(999, 1000), 2), "1.00");
        assert_eq!(rational_decimal(&rat(1, 200), 2), "0.01");
        assert_eq!(rational_decimal(&rat(7, 1), 0), "7");
    }
}
