//! Series text format:
//!
//! ```text
//! #prime 32749
//! #var x
//! #offset 0/1
//! #len 3
//! 1
//! 4
//! 36
//! ```
//!
//! `#field rational` replaces `#prime` for exact series; `#ram r` appears
//! only when the ramification index is not 1.

use super::{parse_exponent, Exponent, TruncatedSeries, Var};
use crate::error::{Error, Result};
use crate::field::{PrimeModulus, Rationals, ScalarField};
use crate::textio::{check_field, numbered_lines, parse_elem, FieldSpec};
use std::fmt::Write;

pub fn write_series<F: ScalarField>(s: &TruncatedSeries<F>) -> String {
    let f = s.field();
    let mut out = String::new();
    let tag = f.field_tag();
    match tag.strip_prefix("prime ") {
        Some(p) => writeln!(out, "#prime {p}").unwrap(),
        None => writeln!(out, "#field {tag}").unwrap(),
    }
    writeln!(out, "#var {}", s.var().name()).unwrap();
    writeln!(out, "#offset {}/{}", s.offset().numer(), s.offset().denom()).unwrap();
    if s.ramification() != 1 {
        writeln!(out, "#ram {}", s.ramification()).unwrap();
    }
    writeln!(out, "#len {}", s.len()).unwrap();
    for c in s.coeffs() {
        out.push_str(&f.fmt_elem(c));
        out.push('\n');
    }
    out
}

struct Header {
    field: FieldSpec,
    field_line: usize,
    var: Var,
    offset: Exponent,
    ram: i64,
    len: usize,
}

fn parse_header(text: &str) -> Result<(Header, Vec<(usize, &str)>)> {
    let mut field = None;
    let mut var = Var::X;
    let mut offset = Exponent::from_integer(0);
    let mut ram = 1;
    let mut len = None;
    let mut body = vec![];
    for (n, line) in numbered_lines(text) {
        let Some(rest) = line.strip_prefix('#') else {
            body.push((n, line));
            continue;
        };
        let (key, val) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        let val = val.trim();
        match key {
            "prime" => field = Some((FieldSpec::parse(&format!("prime {val}"), n)?, n)),
            "field" => field = Some((FieldSpec::parse(val, n)?, n)),
            "var" => var = Var::parse(val).ok_or_else(|| Error::parse(n, format!("unknown variable '{val}'")))?,
            "offset" => offset = parse_exponent(val).ok_or_else(|| Error::parse(n, format!("bad offset '{val}'")))?,
            "ram" => ram = val.parse().map_err(|_| Error::parse(n, format!("bad ramification '{val}'")))?,
            "len" => len = Some(val.parse().map_err(|_| Error::parse(n, format!("bad length '{val}'")))?),
            _ => return Err(Error::parse(n, format!("unknown header '#{key}'"))),
        }
    }
    let (field, field_line) = field.ok_or_else(|| Error::parse(1, "missing #prime or #field"))?;
    let len = len.ok_or_else(|| Error::parse(1, "missing #len"))?;
    Ok((Header { field, field_line, var, offset, ram, len }, body))
}

fn parse_body<F: ScalarField>(f: &F, h: &Header, body: &[(usize, &str)]) -> Result<TruncatedSeries<F>> {
    let coeffs = body.iter().map(|&(n, t)| parse_elem(f, t, n)).collect::<Result<Vec<_>>>()?;
    if coeffs.len() != h.len {
        let line = body.last().map_or(1, |b| b.0);
        return Err(Error::parse(line, format!("#len says {} but {} coefficients given", h.len, coeffs.len())));
    }
    TruncatedSeries::with_ramification(f.clone(), h.var, h.offset, h.ram, coeffs)
        .map_err(|e| Error::parse(1, e.to_string()))
}

pub fn parse_series<F: ScalarField>(text: &str, f: &F) -> Result<TruncatedSeries<F>> {
    let (h, body) = parse_header(text)?;
    check_field(f, h.field, h.field_line)?;
    parse_body(f, &h, &body)
}

/// A series file over whichever field its header names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySeries {
    Prime(TruncatedSeries<PrimeModulus>),
    Rational(TruncatedSeries<Rationals>),
}

impl AnySeries {
    pub fn parse(text: &str) -> Result<Self> {
        let (h, body) = parse_header(text)?;
        Ok(match h.field {
            FieldSpec::Prime(p) => AnySeries::Prime(parse_body(&PrimeModulus::new(p)?, &h, &body)?),
            FieldSpec::Rational => AnySeries::Rational(parse_body(&Rationals, &h, &body)?),
        })
    }

    pub fn write(&self) -> String {
        match self {
            AnySeries::Prime(s) => write_series(s),
            AnySeries::Rational(s) => write_series(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, Field};

    #[test]
    fn round_trip() {
        let f = PrimeModulus::new(32749).unwrap();
        let s = TruncatedSeries::from_i64s(f, &[1, 4, -36]);
        let text = write_series(&s);
        assert_eq!(text, "#prime 32749\n#var x\n#offset 0/1\n#len 3\n1\n4\n32713\n");
        assert_eq!(parse_series(&text, &f).unwrap(), s);
        let q = Rationals;
        let r = TruncatedSeries::with_ramification(q, Var::W, Exponent::new(-7, 4), 2, vec![ratio(1, 3), q.zero()])
            .unwrap();
        let text = write_series(&r);
        assert_eq!(text, "#field rational\n#var w\n#offset -7/4\n#ram 2\n#len 2\n1/3\n0\n");
        assert_eq!(AnySeries::parse(&text).unwrap(), AnySeries::Rational(r));
    }

    #[test]
    fn errors() {
        let bad = "#prime 32749\n#len 2\n1\n";
        assert!(matches!(AnySeries::parse(bad), Err(Error::Parse { line: 3, .. })));
        let bad = "#prime 32749\n#len 2\n1\nfoo\n";
        assert_eq!(AnySeries::parse(bad).unwrap_err(), Error::parse(4, "bad coefficient 'foo'"));
        assert!(matches!(AnySeries::parse("#prime 32748\n#len 1\n1\n"), Err(Error::Parse { line: 1, .. })));
    }
}
