//! Truncated Puiseux series x^ρ·Σ c_n x^(n/r) + O(x^(ρ + len/r)).

mod io;

pub use io::{parse_series, write_series, AnySeries};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::op::DiffOp;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

pub type Exponent = Ratio<i64>;

/// Allowed exponent denominators and ramification indices.
pub const RAMIFICATIONS: [i64; 4] = [1, 2, 4, 8];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    W,
}

impl Var {
    pub fn name(&self) -> &'static str {
        match self {
            Var::X => "x",
            Var::W => "w",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "x" => Some(Var::X),
            "w" => Some(Var::W),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<F: Field> {
    field: F,
    var: Var,
    offset: Exponent,
    ram: i64,
    coeffs: Vec<F::Elem>,
}

fn check_den(e: &Exponent) -> Result<()> {
    if RAMIFICATIONS.contains(e.denom()) {
        Ok(())
    } else {
        Err(Error::Alignment(format!("exponent {e} has denominator outside {{1,2,4,8}}")))
    }
}

impl<F: Field> TruncatedSeries<F> {
    /// Series x^offset·Σ coeffs[n] x^n; its length is `coeffs.len()`.
    pub fn new(field: F, offset: Exponent, coeffs: Vec<F::Elem>) -> Result<Self> {
        Self::with_ramification(field, Var::X, offset, 1, coeffs)
    }

    pub fn with_ramification(
        field: F,
        var: Var,
        offset: Exponent,
        ram: i64,
        coeffs: Vec<F::Elem>,
    ) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if !RAMIFICATIONS.contains(&ram) {
            return Err(Error::Alignment(format!("ramification {ram} not in {{1,2,4,8}}")));
        }
        check_den(&offset)?;
        Ok(TruncatedSeries { field, var, offset, ram, coeffs })
    }

    /// Power series (offset 0) from small integers.
    pub fn from_i64s(field: F, cs: &[i64]) -> Self {
        let coeffs = cs.iter().map(|&c| field.from_i64(c)).collect();
        Self::new(field, Exponent::zero(), coeffs).unwrap()
    }

    /// The zero series known through `len` terms.
    pub fn zero(field: F, offset: Exponent, len: usize) -> Result<Self> {
        let z = vec![field.zero(); len];
        Self::new(field, offset, z)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn offset(&self) -> Exponent {
        self.offset
    }

    pub fn ramification(&self) -> i64 {
        self.ram
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> F::Elem {
        self.coeffs.get(n).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Number of known coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// Exponent of coefficient n.
    pub fn exponent(&self, n: usize) -> Exponent {
        self.offset + Exponent::new(n as i64, self.ram)
    }

    /// First exponent that is not known.
    pub fn precision(&self) -> Exponent {
        self.exponent(self.coeffs.len())
    }

    /// Strip leading zero coefficients into the offset. The zero series is
    /// returned unchanged.
    pub fn normalized(&self) -> Self {
        let Some(k) = self.coeffs.iter().position(|c| !self.field.is_zero(c)) else {
            return self.clone();
        };
        let mut out = self.clone();
        if k > 0 {
            out.offset = self.exponent(k);
            out.coeffs.drain(..k);
        }
        out
    }

    /// Keep the first n coefficients.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::TruncationUnderflow { need: n as i64, have: self.len() as i64 });
        }
        let mut out = self.clone();
        out.coeffs.truncate(n);
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = self.clone();
        out.coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        out
    }

    /// Field element for an exponent.
    pub fn exponent_elem(&self, e: Exponent) -> Result<F::Elem> {
        self.field.from_small_ratio(*e.numer(), *e.denom())
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(Error::DomainMismatch(format!(
                "{} vs {}",
                self.field.describe(),
                o.field.describe()
            )));
        }
        if self.var != o.var {
            return Err(Error::Alignment("series in different variables".into()));
        }
        if self.ram != o.ram {
            return Err(Error::Alignment("different ramification".into()));
        }
        let d = (self.offset - o.offset) * self.ram;
        if !d.is_integer() {
            return Err(Error::Alignment(format!(
                "offsets {} and {} differ by a non-integral step",
                self.offset, o.offset
            )));
        }
        Ok(())
    }

    /// Truncated product.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let n = self.len().min(o.len());
        let f = &self.field;
        let mut out = vec![f.zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::with_ramification(f.clone(), self.var, self.offset + o.offset, self.ram, out)
    }
}

/// Weights of a linear combination of series.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearCombination {
    pub weights: Vec<BigRational>,
}

impl LinearCombination {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if weights.iter().all(|w| w.is_zero()) {
            return Err(Error::invalid("linear combination needs a nonzero weight"));
        }
        Ok(LinearCombination { weights })
    }

    pub fn from_ratios(ws: &[(i64, i64)]) -> Result<Self> {
        Self::new(ws.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
    }
}

/// Σ w_i·s_i, aligned on the smallest offset and truncated at the lowest
/// precision among the operands.
pub fn combine<F: Field>(
    operands: &[&TruncatedSeries<F>],
    weights: &LinearCombination,
) -> Result<TruncatedSeries<F>> {
    if operands.len() != weights.weights.len() {
        return Err(Error::invalid(format!(
            "{} operands but {} weights",
            operands.len(),
            weights.weights.len()
        )));
    }
    let first = *operands.first().ok_or(Error::EmptyInput)?;
    for s in &operands[1..] {
        first.compatible(s)?;
    }
    let f = first.field().clone();
    let ram = first.ram;
    let base = operands.iter().map(|s| s.offset).min().unwrap();
    let end = operands.iter().map(|s| s.precision()).min().unwrap();
    let n = ((end - base) * ram).to_integer();
    if n <= 0 {
        return Err(Error::Alignment("operands have no common known range".into()));
    }
    let mut out = vec![f.zero(); n as usize];
    for (s, w) in operands.iter().zip(&weights.weights) {
        let wf = f.from_ratio(w)?;
        let shift = ((s.offset - base) * ram).to_integer() as usize;
        for (i, c) in s.coeffs.iter().enumerate() {
            if shift + i >= out.len() {
                break;
            }
            out[shift + i] = f.add(&out[shift + i], &f.mul(&wf, c));
        }
    }
    TruncatedSeries::with_ramification(f, first.var, base, ram, out)
}

/// m-th power by repeated squaring of truncated products.
pub fn series_power<F: Field>(s: &TruncatedSeries<F>, m: u32) -> Result<TruncatedSeries<F>> {
    if m == 0 {
        return Err(Error::invalid("series_power needs m >= 1"));
    }
    let mut acc: Option<TruncatedSeries<F>> = None;
    let mut base = s.clone();
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.mul(&base)?,
            });
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base)?;
        }
    }
    Ok(acc.unwrap())
}

/// Series in w with vanishing odd coefficients, rewritten in x = w².
pub fn compress_even<F: Field>(s: &TruncatedSeries<F>) -> Result<TruncatedSeries<F>> {
    if s.ram != 1 {
        return Err(Error::Unsupported("compress_even of a ramified series".into()));
    }
    let f = s.field();
    if let Some(i) = s.coeffs.iter().skip(1).step_by(2).position(|c| !f.is_zero(c)) {
        return Err(Error::ParityViolation(2 * i + 1));
    }
    let n = (s.len() / 2).max(1);
    let coeffs = s.coeffs.iter().step_by(2).take(n).cloned().collect();
    let offset = s.offset / 2;
    check_den(&offset)?;
    TruncatedSeries::with_ramification(f.clone(), Var::X, offset, 1, coeffs)
}

/// Inverse of `compress_even`: zeros at odd positions, variable w.
pub fn expand_even<F: Field>(s: &TruncatedSeries<F>) -> Result<TruncatedSeries<F>> {
    if s.ram != 1 {
        return Err(Error::Unsupported("expand_even of a ramified series".into()));
    }
    let f = s.field();
    let mut coeffs = Vec::with_capacity(2 * s.len());
    for c in &s.coeffs {
        coeffs.push(c.clone());
        coeffs.push(f.zero());
    }
    TruncatedSeries::with_ramification(f.clone(), Var::W, s.offset * 2, 1, coeffs)
}

/// Apply L to s. The result is exact in the coefficient field and normalised
/// (leading zeros moved into the offset).
pub fn apply_operator<F: Field>(l: &DiffOp<F>, s: &TruncatedSeries<F>) -> Result<TruncatedSeries<F>> {
    if l.field() != s.field() {
        return Err(Error::DomainMismatch("operator and series over different fields".into()));
    }
    let f = s.field().clone();
    if l.is_zero() {
        return TruncatedSeries::with_ramification(f.clone(), s.var, s.offset, s.ram, vec![f.zero(); s.len()]);
    }
    let order = l.to_dx().order();
    if s.len() <= order {
        return Err(Error::TruncationUnderflow { need: order as i64 + 1, have: s.len() as i64 });
    }
    let (t, m) = l.to_theta();
    let vmin = t.coeffs().iter().filter_map(|c| c.valuation()).min().unwrap_or(0);
    let ram = s.ram as usize;
    let n = s.len();
    // θ^j acting on x^e multiplies by e^j
    let powers: Vec<Vec<F::Elem>> = (0..n)
        .map(|k| {
            let e = s.exponent_elem(s.exponent(k))?;
            let mut v = vec![f.one()];
            for j in 1..t.coeffs().len() {
                v.push(f.mul(&v[j - 1], &e));
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let mut out = vec![f.zero(); n];
    for (j, a) in t.coeffs().iter().enumerate() {
        for (i, ai) in a.coeffs().iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            let sh = (i - vmin) * ram;
            for k in 0..n.saturating_sub(sh) {
                let c = &s.coeffs[k];
                if f.is_zero(c) {
                    continue;
                }
                let term = f.mul(ai, &f.mul(&powers[k][j], c));
                out[k + sh] = f.add(&out[k + sh], &term);
            }
        }
    }
    let offset = s.offset + Exponent::from_integer(vmin as i64 - m as i64);
    Ok(TruncatedSeries::with_ramification(f, s.var, offset, s.ram, out)?.normalized())
}

/// Indicial data of L at 0: the θ-form split as Σ_i x^(v+i)·P_i(θ).
pub(crate) fn theta_slices<F: Field>(l: &DiffOp<F>) -> Vec<Vec<F::Elem>> {
    let (t, _) = l.to_theta();
    let f = l.field();
    let v = t.coeffs().iter().filter_map(|c| c.valuation()).min().unwrap_or(0);
    let top = t.coeffs().iter().map(|c| c.deg()).max().unwrap_or(-1);
    if top < 0 {
        return vec![];
    }
    (v..=top as usize)
        .map(|i| t.coeffs().iter().map(|a| if i < a.coeffs().len() { a.coeff(i) } else { f.zero() }).collect())
        .collect()
}

pub(crate) fn eval_slice<F: Field>(f: &F, p: &[F::Elem], s: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in p.iter().rev() {
        acc = f.add(&f.mul(&acc, s), c);
    }
    acc
}

/// Largest integer shift k for which a collision P_0(ρ+k) ≡ 0 mod p is read
/// as a genuine second exponent rather than a characteristic-p accident.
pub const DEGENERATE_SHIFT_BOUND: usize = 512;

/// Series solution x^ρ(lead + c_1 x + ...) of L with n terms.
pub fn series_from_operator<F: Field>(
    l: &DiffOp<F>,
    rho: Exponent,
    n: usize,
    lead: &F::Elem,
) -> Result<TruncatedSeries<F>> {
    if l.is_zero() {
        return Err(Error::invalid("zero operator"));
    }
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    check_den(&rho)?;
    let f = l.field().clone();
    let slices = theta_slices(l);
    let p0 = &slices[0];
    let r = f.from_small_ratio(*rho.numer(), *rho.denom())?;
    if !f.is_zero(&eval_slice(&f, p0, &r)) {
        return Err(Error::NotAnExponent(rho.to_string()));
    }
    let mut c = vec![lead.clone()];
    for k in 1..n {
        let rk = f.add(&r, &f.from_i64(k as i64));
        let d = eval_slice(&f, p0, &rk);
        if f.is_zero(&d) {
            let other = (rho + Exponent::from_integer(k as i64)).to_string();
            if f.characteristic() == 0 || k <= DEGENERATE_SHIFT_BOUND {
                return Err(Error::DegenerateExponent { rho: rho.to_string(), other });
            }
            return Err(Error::BadPrime {
                p: f.characteristic(),
                reason: format!("indicial polynomial vanishes at {other} modulo p"),
            });
        }
        let mut acc = f.zero();
        for i in 1..slices.len().min(k + 1) {
            if f.is_zero(&c[k - i]) {
                continue;
            }
            let e = f.add(&r, &f.from_i64((k - i) as i64));
            acc = f.add(&acc, &f.mul(&eval_slice(&f, &slices[i], &e), &c[k - i]));
        }
        c.push(f.neg(&f.div(&acc, &d).unwrap()));
    }
    TruncatedSeries::new(f, rho, c)
}

/// ₂F₁(a, b; c; scale·x) with n terms.
pub fn hypergeometric_series<F: Field>(
    field: &F,
    a: Exponent,
    b: Exponent,
    c: Exponent,
    scale: i64,
    n: usize,
) -> Result<TruncatedSeries<F>> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if c.is_integer() && !c.is_positive() {
        return Err(Error::invalid("c is a nonpositive integer"));
    }
    let el = |e: Exponent| field.from_small_ratio(*e.numer(), *e.denom());
    let (fa, fb, fc) = (el(a)?, el(b)?, el(c)?);
    let fs = field.from_i64(scale);
    let mut out = vec![field.one()];
    for k in 0..n - 1 {
        let kk = field.from_i64(k as i64);
        let num = field.mul(&field.mul(&field.add(&fa, &kk), &field.add(&fb, &kk)), &fs);
        let den = field.mul(&field.add(&fc, &kk), &field.from_i64(k as i64 + 1));
        let Some(q) = field.div(&num, &den) else {
            return Err(Error::BadPrime {
                p: field.characteristic(),
                reason: format!("term ratio denominator vanishes at step {k}"),
            });
        };
        let next = field.mul(&out[k], &q);
        out.push(next);
    }
    TruncatedSeries::new(field.clone(), Exponent::zero(), out)
}

/// K(16x) = ₂F₁(1/2, 1/2; 1; 16x).
pub fn k_series<F: Field>(field: &F, n: usize) -> Result<TruncatedSeries<F>> {
    hypergeometric_series(field, Exponent::new(1, 2), Exponent::new(1, 2), Exponent::one(), 16, n)
}

/// E(16x) = ₂F₁(1/2, -1/2; 1; 16x).
pub fn e_series<F: Field>(field: &F, n: usize) -> Result<TruncatedSeries<F>> {
    hypergeometric_series(field, Exponent::new(1, 2), Exponent::new(-1, 2), Exponent::one(), 16, n)
}

/// Parse `a/b` or `a` as an exponent.
pub fn parse_exponent(s: &str) -> Option<Exponent> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().ok()?;
        let b: i64 = b.trim().parse().ok()?;
        if b == 0 {
            return None;
        }
        Some(Exponent::new(a, b))
    } else {
        Some(Exponent::from_integer(s.parse().ok()?))
    }
}
