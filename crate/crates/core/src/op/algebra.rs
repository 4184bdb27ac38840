//! Operator algebra over the rational function field F(x): Leibniz
//! products, right Euclidean division, gcrd and lclm.

use super::{Basis, DiffOp};
use crate::error::{Error, Result};
use crate::field::{Field, RatFunc, RationalFunctions};
use crate::linalg::nullspace;
use crate::poly::DensePoly;

/// Σ coeffs[k]·D_x^k with rational function coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct RatOp<F: Field> {
    k: RationalFunctions<F>,
    coeffs: Vec<RatFunc<F>>,
}

impl<F: Field> RatOp<F> {
    pub fn new(k: RationalFunctions<F>, mut coeffs: Vec<RatFunc<F>>) -> Self {
        while coeffs.last().map_or(false, |c| k.is_zero(c)) {
            coeffs.pop();
        }
        RatOp { k, coeffs }
    }

    pub fn from_diffop(l: &DiffOp<F>) -> Self {
        let k = RationalFunctions::new(l.field().clone());
        let d = l.to_dx();
        let coeffs = d.coeffs().iter().map(|c| RatFunc::from_poly(c.clone())).collect();
        Self::new(k, coeffs)
    }

    /// D_x + r with r = num/den.
    pub fn first_order(num: DensePoly<F>, den: DensePoly<F>) -> Result<Self> {
        let k = RationalFunctions::new(num.field().clone());
        let r = RatFunc::new(num, den)?;
        Ok(Self::new(k.clone(), vec![r, k.one()]))
    }

    pub fn ring(&self) -> &RationalFunctions<F> {
        &self.k
    }

    pub fn coeffs(&self) -> &[RatFunc<F>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn coeff(&self, i: usize) -> RatFunc<F> {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.k.zero())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.k.inv(self.coeffs.last().unwrap()).unwrap();
        self.scale(&li)
    }

    pub fn scale(&self, c: &RatFunc<F>) -> Self {
        Self::new(self.k.clone(), self.coeffs.iter().map(|a| self.k.mul(a, c)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.k.clone(), (0..n).map(|i| self.k.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.k.clone(), (0..n).map(|i| self.k.sub(&self.coeff(i), &o.coeff(i))).collect())
    }

    /// D·self.
    pub fn derive_left(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let k = &self.k;
        let mut v = vec![k.zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i] = k.add(&v[i], &c.derivative());
            v[i + 1] = k.add(&v[i + 1], c);
        }
        Self::new(k.clone(), v)
    }

    /// D^s·self.
    pub fn derive_left_n(&self, s: usize) -> Self {
        let mut out = self.clone();
        for _ in 0..s {
            out = out.derive_left();
        }
        out
    }

    /// self·o by the Leibniz rule.
    pub fn mul(&self, o: &Self) -> Self {
        let mut acc = Self::new(self.k.clone(), vec![]);
        let mut dpow = o.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                dpow = dpow.derive_left();
            }
            if !self.k.is_zero(a) {
                acc = acc.add(&dpow.scale(a));
            }
        }
        acc
    }

    /// (q, r) with self = q·b + r and order(r) < order(b).
    pub fn right_divrem(&self, b: &Self) -> Result<(Self, Self)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = &self.k;
        let rb = b.order();
        let lb_inv = k.inv(b.coeffs.last().unwrap()).unwrap();
        let mut r = self.clone();
        let mut q = vec![k.zero(); self.coeffs.len().saturating_sub(rb).max(1)];
        while !r.is_zero() && r.order() >= rb {
            let s = r.order() - rb;
            let shifted = b.derive_left_n(s);
            let c = k.mul(r.coeffs.last().unwrap(), &lb_inv);
            q[s] = k.add(&q[s], &c);
            r = r.sub(&shifted.scale(&c));
        }
        Ok((Self::new(k.clone(), q), r))
    }

    /// Clear denominators; the result is a polynomial operator in the D_x
    /// basis with the polynomial content removed.
    pub fn to_diffop(&self) -> DiffOp<F> {
        let f = self.k.base().clone();
        if self.is_zero() {
            return DiffOp::zero(f, Basis::Dx);
        }
        let mut l = DensePoly::one(f.clone());
        for c in &self.coeffs {
            if !c.den.is_constant() {
                let g = l.gcd(&c.den).unwrap();
                l = (&l * &c.den).div_exact(&g).unwrap();
            }
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| &c.num * &l.div_exact(&c.den).unwrap())
            .collect();
        DiffOp::new(f, Basis::Dx, coeffs).remove_content()
    }
}

/// Leibniz product A·B of polynomial operators, in the basis of A.
pub fn op_multiply<F: Field>(a: &DiffOp<F>, b: &DiffOp<F>) -> Result<DiffOp<F>> {
    if a.field() != b.field() {
        return Err(Error::DomainMismatch("operators over different fields".into()));
    }
    let (da, db) = (a.to_dx(), b.to_dx());
    let f = a.field().clone();
    let mut acc = DiffOp::zero(f.clone(), Basis::Dx);
    let mut dpow = db.clone();
    for (i, c) in da.coeffs().iter().enumerate() {
        if i > 0 {
            dpow = derive_left_poly(&dpow);
        }
        if !c.is_zero() {
            acc = acc.add(&dpow.mul_poly_left(c))?;
        }
    }
    Ok(match a.basis() {
        Basis::Dx => acc,
        Basis::Theta => acc.to_theta().0,
    })
}

fn derive_left_poly<F: Field>(l: &DiffOp<F>) -> DiffOp<F> {
    let f = l.field().clone();
    let mut v = vec![DensePoly::zero(f.clone()); l.coeffs().len() + 1];
    for (i, c) in l.coeffs().iter().enumerate() {
        v[i] = &v[i] + &c.derivative();
        v[i + 1] = &v[i + 1] + c;
    }
    DiffOp::new(f, Basis::Dx, v)
}

/// Right division A = Q·B + R over F(x).
pub fn right_divide<F: Field>(a: &DiffOp<F>, b: &DiffOp<F>) -> Result<(RatOp<F>, RatOp<F>)> {
    if a.field() != b.field() {
        return Err(Error::DomainMismatch("operators over different fields".into()));
    }
    RatOp::from_diffop(a).right_divrem(&RatOp::from_diffop(b))
}

/// Greatest common right divisor, monic.
pub fn gcrd<F: Field>(a: &RatOp<F>, b: &RatOp<F>) -> Result<RatOp<F>> {
    let (mut x, mut y) = (a.clone(), b.clone());
    if x.order() < y.order() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let (_, r) = x.right_divrem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// Remainders of D^k on right division by a monic operator, k = 0..=n.
fn power_remainders<F: Field>(a: &RatOp<F>, n: usize) -> Vec<Vec<RatFunc<F>>> {
    let k = a.ring().clone();
    let ra = a.order();
    let am = a.monic();
    let mut out = vec![];
    let mut cur = RatOp::new(k.clone(), vec![k.one()]);
    for _ in 0..=n {
        if cur.order() == ra && !cur.is_zero() {
            let c = cur.coeffs.last().unwrap().clone();
            cur = cur.sub(&am.scale(&c));
        }
        out.push((0..ra).map(|i| cur.coeff(i)).collect());
        cur = cur.derive_left();
    }
    out
}

/// Least common left multiple, monic.
pub fn lclm<F: Field>(a: &RatOp<F>, b: &RatOp<F>) -> Result<RatOp<F>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::invalid("lclm of the zero operator"));
    }
    if a.order() == 0 {
        return Ok(b.monic());
    }
    if b.order() == 0 {
        return Ok(a.monic());
    }
    let k = a.ring().clone();
    let top = a.order() + b.order();
    let ra = power_remainders(a, top);
    let rb = power_remainders(b, top);
    let lo = a.order().max(b.order());
    for n in lo..=top {
        // columns k = 0..=n, rows = remainder components
        let nrows = a.order() + b.order();
        let rows: Vec<Vec<RatFunc<F>>> = (0..nrows)
            .map(|i| {
                (0..=n)
                    .map(|j| if i < a.order() { ra[j][i].clone() } else { rb[j][i - a.order()].clone() })
                    .collect()
            })
            .collect();
        let ns = nullspace(&k, &rows)?;
        if let Some(v) = ns.into_iter().next() {
            return Ok(RatOp::new(k, v).monic());
        }
    }
    Err(Error::invalid("lclm search exceeded order bound"))
}

pub fn lclm_all<F: Field>(ops: &[RatOp<F>]) -> Result<RatOp<F>> {
    let (first, rest) = ops.split_first().ok_or(Error::EmptyInput)?;
    let mut acc = first.monic();
    for o in rest {
        acc = lclm(&acc, o)?;
    }
    Ok(acc)
}
