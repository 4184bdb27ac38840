//! Operator text format:
//!
//! ```text
//! #basis theta
//! #order 2
//! #field prime 32749
//! coeff 0: 5
//! coeff 1: 0 32746
//! coeff 2: 1
//! ```

use super::{Basis, DiffOp};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeModulus, Rationals, ScalarField};
use crate::poly::DensePoly;
use crate::textio::{check_field, numbered_lines, parse_elem, FieldSpec};
use std::fmt::Write;

pub fn write_operator<F: ScalarField>(l: &DiffOp<F>) -> String {
    let f = l.field();
    let mut s = String::new();
    writeln!(s, "#basis {}", l.basis().tag()).unwrap();
    writeln!(s, "#order {}", l.order()).unwrap();
    writeln!(s, "#field {}", f.field_tag()).unwrap();
    for k in 0..=l.order() {
        let c = l.coeff(k);
        write!(s, "coeff {k}:").unwrap();
        if c.is_zero() {
            s.push_str(" 0");
        }
        for a in c.coeffs() {
            write!(s, " {}", f.fmt_elem(a)).unwrap();
        }
        s.push('\n');
    }
    s
}

struct Header {
    basis: Basis,
    order: usize,
    field: FieldSpec,
    field_line: usize,
}

fn parse_header(text: &str) -> Result<(Header, Vec<(usize, &str)>)> {
    let mut basis = None;
    let mut order = None;
    let mut field = None;
    let mut body = vec![];
    for (n, line) in numbered_lines(text) {
        if let Some(rest) = line.strip_prefix('#') {
            let (key, val) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let val = val.trim();
            match key {
                "basis" => {
                    basis = Some(match val {
                        "Dx" => Basis::Dx,
                        "theta" => Basis::Theta,
                        _ => return Err(Error::parse(n, format!("unknown basis '{val}'"))),
                    })
                }
                "order" => {
                    order = Some(val.parse().map_err(|_| Error::parse(n, format!("bad order '{val}'")))?)
                }
                "field" => field = Some((FieldSpec::parse(val, n)?, n)),
                _ => return Err(Error::parse(n, format!("unknown header '#{key}'"))),
            }
        } else {
            body.push((n, line));
        }
    }
    let basis = basis.ok_or_else(|| Error::parse(1, "missing #basis"))?;
    let order = order.ok_or_else(|| Error::parse(1, "missing #order"))?;
    let (field, field_line) = field.ok_or_else(|| Error::parse(1, "missing #field"))?;
    Ok((Header { basis, order, field, field_line }, body))
}

fn parse_body<F: ScalarField>(f: &F, h: &Header, body: &[(usize, &str)]) -> Result<DiffOp<F>> {
    let mut coeffs: Vec<Option<DensePoly<F>>> = vec![None; h.order + 1];
    for &(n, line) in body {
        let rest = line
            .strip_prefix("coeff")
            .ok_or_else(|| Error::parse(n, "expected 'coeff <k>: ...'"))?;
        let (k, cs) = rest.split_once(':').ok_or_else(|| Error::parse(n, "missing ':'"))?;
        let k: usize = k.trim().parse().map_err(|_| Error::parse(n, format!("bad index '{}'", k.trim())))?;
        if k > h.order {
            return Err(Error::parse(n, format!("index {k} exceeds order {}", h.order)));
        }
        if coeffs[k].is_some() {
            return Err(Error::parse(n, format!("coefficient {k} given twice")));
        }
        let v = cs.split_whitespace().map(|t| parse_elem(f, t, n)).collect::<Result<Vec<_>>>()?;
        if v.is_empty() {
            return Err(Error::parse(n, "empty coefficient list"));
        }
        coeffs[k] = Some(DensePoly::new(f.clone(), v));
    }
    let last = body.last().map_or(1, |b| b.0);
    let coeffs = coeffs
        .into_iter()
        .enumerate()
        .map(|(k, c)| c.ok_or_else(|| Error::parse(last, format!("coefficient {k} missing"))))
        .collect::<Result<Vec<_>>>()?;
    if h.order > 0 && coeffs[h.order].is_zero() {
        return Err(Error::parse(last, "leading coefficient is zero"));
    }
    Ok(DiffOp::new(f.clone(), h.basis, coeffs))
}

/// Parse an operator over a known field; the `#field` header must match.
pub fn parse_operator<F: ScalarField>(text: &str, f: &F) -> Result<DiffOp<F>> {
    let (h, body) = parse_header(text)?;
    check_field(f, h.field, h.field_line)?;
    parse_body(f, &h, &body)
}

/// An operator file over whichever field its header names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyOperator {
    Prime(DiffOp<PrimeModulus>),
    Rational(DiffOp<Rationals>),
}

impl AnyOperator {
    pub fn parse(text: &str) -> Result<Self> {
        let (h, body) = parse_header(text)?;
        Ok(match h.field {
            FieldSpec::Prime(p) => AnyOperator::Prime(parse_body(&PrimeModulus::new(p)?, &h, &body)?),
            FieldSpec::Rational => AnyOperator::Rational(parse_body(&Rationals, &h, &body)?),
        })
    }

    pub fn write(&self) -> String {
        match self {
            AnyOperator::Prime(l) => write_operator(l),
            AnyOperator::Rational(l) => write_operator(l),
        }
    }

    /// Image modulo p (rational operators are reduced; prime operators must
    /// already live mod p).
    pub fn reduce(&self, p: &PrimeModulus) -> Result<DiffOp<PrimeModulus>> {
        match self {
            AnyOperator::Prime(l) if l.field() == p => Ok(l.clone()),
            AnyOperator::Prime(l) => Err(Error::DomainMismatch(format!(
                "operator is mod {}, requested mod {}",
                l.field().p(),
                p.p()
            ))),
            AnyOperator::Rational(l) => l.try_map(p, |a| p.from_ratio(a)),
        }
    }
}
