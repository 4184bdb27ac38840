use super::{Field, PrimeModulus};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::sync::Arc;

/// F_p[a]/(m) for a monic irreducible m. Elements are coefficient vectors of
/// length deg(m), lowest degree first. Used for local analysis at the roots
/// of an irreducible factor of a leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionField {
    base: PrimeModulus,
    modulus: Arc<Vec<u64>>,
}

impl ExtensionField {
    /// `modulus` lists the coefficients of m, lowest first; it is made monic.
    /// Irreducibility is the caller's responsibility.
    pub fn new(base: PrimeModulus, modulus: &[u64]) -> Result<Self> {
        let mut m: Vec<u64> = modulus.to_vec();
        while m.last() == Some(&0) {
            m.pop();
        }
        if m.len() < 2 {
            return Err(Error::invalid("extension modulus must have degree at least 1"));
        }
        let li = base.invm(*m.last().unwrap()).unwrap();
        for c in m.iter_mut() {
            *c = base.mulm(*c, li);
        }
        Ok(ExtensionField { base, modulus: Arc::new(m) })
    }

    pub fn base(&self) -> PrimeModulus {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The class of the indeterminate, a root of the modulus.
    pub fn generator(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        if self.degree() == 1 {
            v[0] = self.base.neg(&self.modulus[0]);
        } else {
            v[1] = 1;
        }
        v
    }

    pub fn embed(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = c;
        v
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let k = self.degree();
        let b = &self.base;
        for i in (k..v.len()).rev() {
            let c = v[i];
            if c != 0 {
                for j in 0..k {
                    let t = b.mulm(c, self.modulus[j]);
                    v[i - k + j] = b.subm(v[i - k + j], t);
                }
            }
        }
        v.truncate(k);
        v.resize(k, 0);
        v
    }
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_divrem(b: &PrimeModulus, a: &[u64], d: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    if r.len() <= dd {
        return (vec![], trim(r));
    }
    let li = b.invm(d[dd]).unwrap();
    let mut q = vec![0; r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = b.mulm(r[i + dd], li);
        if c != 0 {
            for j in 0..=dd {
                r[i + j] = b.subm(r[i + j], b.mulm(c, d[j]));
            }
        }
        q[i] = c;
    }
    r.truncate(dd);
    (trim(q), trim(r))
}

fn poly_mul(b: &PrimeModulus, x: &[u64], y: &[u64]) -> Vec<u64> {
    if x.is_empty() || y.is_empty() {
        return vec![];
    }
    let mut v = vec![0; x.len() + y.len() - 1];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &c) in y.iter().enumerate() {
            v[i + j] = b.addm(v[i + j], b.mulm(a, c));
        }
    }
    v
}

fn poly_sub(b: &PrimeModulus, x: &[u64], y: &[u64]) -> Vec<u64> {
    let n = x.len().max(y.len());
    let v = (0..n)
        .map(|i| b.subm(*x.get(i).unwrap_or(&0), *y.get(i).unwrap_or(&0)))
        .collect();
    trim(v)
}

impl Field for ExtensionField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn from_i64(&self, v: i64) -> Vec<u64> {
        self.embed(self.base.reduce_i64(v))
    }
    fn from_bigint(&self, v: &BigInt) -> Vec<u64> {
        self.embed(self.base.from_bigint(v))
    }
    fn from_ratio(&self, r: &BigRational) -> Result<Vec<u64>> {
        Ok(self.embed(self.base.from_ratio(r)?))
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.addm(*x, *y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.subm(*x, *y)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.reduce(poly_mul(&self.base, a, b))
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        let b = &self.base;
        let mut r0 = self.modulus.to_vec();
        let mut r1 = trim(a.clone());
        if r1.is_empty() {
            return None;
        }
        let mut t0: Vec<u64> = vec![];
        let mut t1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(b, &r0, &r1);
            let t = poly_sub(b, &t0, &poly_mul(b, &q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.len() != 1 {
            // modulus was reducible and a shares a factor with it
            return None;
        }
        let li = b.invm(r0[0]).unwrap();
        let mut v: Vec<u64> = t0.iter().map(|c| b.mulm(*c, li)).collect();
        v.resize(self.degree(), 0);
        Some(self.reduce(v))
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|c| *c == 0)
    }
    fn characteristic(&self) -> u64 {
        self.base.p()
    }
    fn describe(&self) -> String {
        format!("GF({})[a]/({:?})", self.base.p(), self.modulus)
    }
    fn fmt_elem(&self, a: &Vec<u64>) -> String {
        format!("{:?}", a)
    }
}
