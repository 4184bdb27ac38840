//! Dense univariate polynomials over any [`Field`].

use crate::error::{Error, Result};
use crate::field::Field;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq)]
pub struct DensePoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> DensePoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        DensePoly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        DensePoly { field, coeffs: vec![] }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        DensePoly { field, coeffs: vec![one] }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial c·x^k.
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut v = vec![field.zero(); k];
        v.push(c);
        Self::new(field, v)
    }

    pub fn x(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1)
    }

    pub fn from_i64s(field: F, cs: &[i64]) -> Self {
        let v = cs.iter().map(|&c| field.from_i64(c)).collect();
        Self::new(field, v)
    }

    /// Product of (x - r) over the given roots.
    pub fn from_roots(field: F, roots: &[F::Elem]) -> Self {
        let mut p = Self::one(field.clone());
        for r in roots {
            let lin = Self::new(field.clone(), vec![field.neg(r), field.one()]);
            p = &p * &lin;
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn lead(&self) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DomainMismatch(format!(
                "{} vs {}",
                self.field.describe(),
                other.field.describe()
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        DensePoly { field: self.field.clone(), coeffs: v }
    }

    /// Divide by x^k, dropping lower terms.
    pub fn unshift(&self, k: usize) -> Self {
        let v = self.coeffs.iter().skip(k).cloned().collect();
        Self::new(self.field.clone(), v)
    }

    /// Keep terms of degree < n.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.field.clone(), self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.field.inv(&self.lead()).expect("nonzero leading coefficient");
        self.scale(&li)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Self::new(f.clone(), v)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// p(x + a).
    pub fn taylor_shift(&self, a: &F::Elem) -> Self {
        let f = &self.field;
        let mut c = self.coeffs.clone();
        let n = c.len();
        // repeated synthetic division
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = f.mul(&c[j + 1], a);
                c[j] = f.add(&c[j], &t);
            }
        }
        Self::new(f.clone(), c)
    }

    /// Reverse the coefficient list relative to degree `n`: x^n p(1/x).
    pub fn reverse(&self, n: usize) -> Self {
        let mut v = vec![self.field.zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            assert!(i <= n, "reverse degree too small");
            v[n - i] = c.clone();
        }
        Self::new(self.field.clone(), v)
    }

    /// p(c·x).
    pub fn scale_var(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let mut pw = f.one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(f.mul(a, &pw));
            pw = f.mul(&pw, c);
        }
        Self::new(f.clone(), v)
    }

    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        self.same_field(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let li = f.inv(&b.lead()).ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + db], &li);
            if !f.is_zero(&c) {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    let t = f.mul(&c, bj);
                    r[i + j] = f.sub(&r[i + j], &t);
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        Ok((Self::new(f.clone(), q), Self::new(f.clone(), r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divrem(b)?.1)
    }

    /// Exact quotient; fails if the remainder is nonzero.
    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(Error::invalid("polynomial division is not exact"));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.divrem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd.
    pub fn gcd(&self, b: &Self) -> Result<Self> {
        self.same_field(b)?;
        if let Some(g) = self.field.poly_gcd(&self.coeffs, &b.coeffs) {
            return Ok(Self::new(self.field.clone(), g));
        }
        let mut a = self.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns (g, s, t) with s·a + t·b = g, g monic.
    pub fn xgcd(&self, b: &Self) -> Result<(Self, Self, Self)> {
        self.same_field(b)?;
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(f.clone()), Self::zero(f.clone()));
        let (mut t0, mut t1) = (Self::zero(f.clone()), Self::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let li = f.inv(&r0.lead()).unwrap();
        Ok((r0.scale(&li), s0.scale(&li), t0.scale(&li)))
    }

    /// Coefficient-wise image in another field.
    pub fn map<G: Field>(&self, g: &G, m: impl Fn(&F::Elem) -> G::Elem) -> DensePoly<G> {
        DensePoly::new(g.clone(), self.coeffs.iter().map(m).collect())
    }

    pub fn try_map<G: Field>(
        &self,
        g: &G,
        m: impl Fn(&F::Elem) -> Result<G::Elem>,
    ) -> Result<DensePoly<G>> {
        Ok(DensePoly::new(g.clone(), self.coeffs.iter().map(m).collect::<Result<_>>()?))
    }

    /// Largest k such that (x - a)^k divides self (self nonzero).
    pub fn root_multiplicity(&self, a: &F::Elem) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        self.taylor_shift(a).valuation().unwrap_or(0)
    }
}

impl<F: Field> fmt::Debug for DensePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<F: Field> fmt::Display for DensePoly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let cs = f.fmt_elem(c);
            match i {
                0 => write!(out, "{cs}")?,
                1 => write!(out, "({cs})*x")?,
                _ => write!(out, "({cs})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a, F: Field> Add for &'a DensePoly<F> {
    type Output = DensePoly<F>;
    fn add(self, b: &'a DensePoly<F>) -> DensePoly<F> {
        debug_assert!(self.field == b.field);
        let f = &self.field;
        let n = self.coeffs.len().max(b.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => f.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        DensePoly::new(f.clone(), v)
    }
}

impl<'a, F: Field> Sub for &'a DensePoly<F> {
    type Output = DensePoly<F>;
    fn sub(self, b: &'a DensePoly<F>) -> DensePoly<F> {
        debug_assert!(self.field == b.field);
        let f = &self.field;
        let n = self.coeffs.len().max(b.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => f.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => f.neg(y),
                (None, None) => unreachable!(),
            })
            .collect();
        DensePoly::new(f.clone(), v)
    }
}

impl<'a, F: Field> Mul for &'a DensePoly<F> {
    type Output = DensePoly<F>;
    fn mul(self, b: &'a DensePoly<F>) -> DensePoly<F> {
        debug_assert!(self.field == b.field);
        let f = &self.field;
        if self.is_zero() || b.is_zero() {
            return DensePoly::zero(f.clone());
        }
        let mut v = vec![f.zero(); self.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = f.mul(x, y);
                v[i + j] = f.add(&v[i + j], &t);
            }
        }
        DensePoly::new(f.clone(), v)
    }
}

impl<'a, F: Field> Neg for &'a DensePoly<F> {
    type Output = DensePoly<F>;
    fn neg(self) -> DensePoly<F> {
        let f = &self.field;
        DensePoly::new(f.clone(), self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for DensePoly<F> {
            type Output = DensePoly<F>;
            fn $m(self, b: DensePoly<F>) -> DensePoly<F> {
                (&self).$m(&b)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Monic gcd of two polynomials over the same field.
pub fn poly_gcd<F: Field>(a: &DensePoly<F>, b: &DensePoly<F>) -> Result<DensePoly<F>> {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeModulus, Rationals};

    fn pz(cs: &[i64]) -> DensePoly<Rationals> {
        DensePoly::from_i64s(Rationals, cs)
    }

    #[test]
    fn gcd_shared_linear_factor() {
        let g = pz(&[-1, 0, 1]).gcd(&pz(&[-1, 1])).unwrap();
        assert_eq!(g, pz(&[-1, 1]));
        assert_eq!(pz(&[0, 1]).gcd(&pz(&[1])).unwrap(), pz(&[1]));
    }

    #[test]
    fn gcd_of_singular_factors() {
        let a = pz(&[1, -16]);
        let b = pz(&[1, -4]);
        let g = (&a * &a).gcd(&(&a * &b)).unwrap();
        // oracle: (1-16x) divides both exactly, and the cofactors are coprime
        let (q1, r1) = (&a * &a).divrem(&g).unwrap();
        let (q2, r2) = (&a * &b).divrem(&g).unwrap();
        assert!(r1.is_zero() && r2.is_zero());
        assert_eq!(q1.gcd(&q2).unwrap().degree(), Some(0));
        assert_eq!(g, a.monic());
    }

    #[test]
    fn gcd_with_large_coefficients_matches_euclid() {
        // common factor with rational roots and a large irreducible quartic
        let common = &pz(&[1, -16]) * &pz(&[-8, 252, -1678, 3607, 4352]);
        let a = &(&common * &pz(&[123456789, 0, 987654321])) * &pz(&[3, 1]).pow(3);
        let b = &(&common * &common) * &pz(&[-5, 0, 0, 7]);
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, common.monic());
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.rem(&y).unwrap();
            x = y;
            y = r;
        }
        assert_eq!(g, x.monic());
    }

    #[test]
    fn gcd_domain_mismatch() {
        let f1 = PrimeModulus::new(7).unwrap();
        let f2 = PrimeModulus::new(11).unwrap();
        let a = DensePoly::from_i64s(f1, &[1, 1]);
        let b = DensePoly::from_i64s(f2, &[1, 1]);
        assert!(matches!(a.gcd(&b), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = pz(&[3, -2, 0, 5, 1]);
        let a = Rationals.from_i64(-3);
        let s = p.taylor_shift(&a);
        for t in -4..5 {
            let tv = Rationals.from_i64(t);
            assert_eq!(s.eval(&tv), p.eval(&(&tv + &a)));
        }
    }

    #[test]
    fn xgcd_bezout() {
        let f = PrimeModulus::new(32749).unwrap();
        let a = DensePoly::from_i64s(f, &[5, 0, 3, 1, 7]);
        let b = DensePoly::from_i64s(f, &[1, 2, 9]);
        let (g, s, t) = a.xgcd(&b).unwrap();
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
