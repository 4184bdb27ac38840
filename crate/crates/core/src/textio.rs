//! Shared pieces of the line-oriented file formats.

use crate::error::{Error, Result};
use crate::field::{PrimeModulus, ScalarField};

/// Coefficient field named in a `#field` or `#prime` header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FieldSpec {
    pub fn parse(s: &str, line: usize) -> Result<Self> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        match toks.as_slice() {
            ["rational"] => Ok(FieldSpec::Rational),
            ["prime", p] => {
                let p: u64 = p.parse().map_err(|_| Error::parse(line, format!("bad prime '{p}'")))?;
                PrimeModulus::new(p).map_err(|e| Error::parse(line, e.to_string()))?;
                Ok(FieldSpec::Prime(p))
            }
            _ => Err(Error::parse(line, format!("unknown field '{s}'"))),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            FieldSpec::Prime(p) => format!("prime {p}"),
            FieldSpec::Rational => "rational".into(),
        }
    }
}

/// Non-empty lines with their 1-based line numbers.
pub(crate) fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

pub(crate) fn parse_elem<F: ScalarField>(f: &F, tok: &str, line: usize) -> Result<F::Elem> {
    f.parse_elem(tok).ok_or_else(|| Error::parse(line, format!("bad coefficient '{tok}'")))
}

pub(crate) fn check_field<F: ScalarField>(f: &F, spec: FieldSpec, line: usize) -> Result<()> {
    if f.field_tag() != spec.tag() {
        return Err(Error::parse(
            line,
            format!("file is over {}, expected {}", spec.tag(), f.field_tag()),
        ));
    }
    Ok(())
}
