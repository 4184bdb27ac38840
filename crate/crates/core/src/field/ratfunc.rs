use super::Field;
use crate::error::{Error, Result};
use crate::poly::DensePoly;
use num_bigint::BigInt;
use num_rational::BigRational;

/// A reduced fraction num/den with monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F: Field> {
    pub num: DensePoly<F>,
    pub den: DensePoly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: DensePoly<F>, den: DensePoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: DensePoly<F>, den: DensePoly<F>) -> Self {
        let f = num.field().clone();
        if num.is_zero() {
            return RatFunc { num, den: DensePoly::one(f) };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den).expect("same field");
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        let li = f.inv(&den.lead()).unwrap();
        RatFunc { num: num.scale(&li), den: den.scale(&li) }
    }

    pub fn from_poly(p: DensePoly<F>) -> Self {
        let f = p.field().clone();
        RatFunc { num: p, den: DensePoly::one(f) }
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }

    pub fn derivative(&self) -> Self {
        // (n'd - nd')/d^2
        let a = &self.num.derivative() * &self.den;
        let b = &self.num * &self.den.derivative();
        Self::reduced(&a - &b, &self.den * &self.den)
    }
}

/// The rational function field F(x).
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunctions<F: Field> {
    base: F,
}

impl<F: Field> RationalFunctions<F> {
    pub fn new(base: F) -> Self {
        RationalFunctions { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn from_poly(&self, p: DensePoly<F>) -> RatFunc<F> {
        RatFunc::from_poly(p)
    }
}

impl<F: Field> Field for RationalFunctions<F> {
    type Elem = RatFunc<F>;

    fn zero(&self) -> RatFunc<F> {
        RatFunc::from_poly(DensePoly::zero(self.base.clone()))
    }
    fn one(&self) -> RatFunc<F> {
        RatFunc::from_poly(DensePoly::one(self.base.clone()))
    }
    fn from_i64(&self, v: i64) -> RatFunc<F> {
        RatFunc::from_poly(DensePoly::constant(self.base.clone(), self.base.from_i64(v)))
    }
    fn from_bigint(&self, v: &BigInt) -> RatFunc<F> {
        RatFunc::from_poly(DensePoly::constant(self.base.clone(), self.base.from_bigint(v)))
    }
    fn from_ratio(&self, r: &BigRational) -> Result<RatFunc<F>> {
        Ok(RatFunc::from_poly(DensePoly::constant(self.base.clone(), self.base.from_ratio(r)?)))
    }
    fn add(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        if a.den == b.den {
            return RatFunc::reduced(&a.num + &b.num, a.den.clone());
        }
        RatFunc::reduced(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
    }
    fn sub(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        if a.den == b.den {
            return RatFunc::reduced(&a.num - &b.num, a.den.clone());
        }
        RatFunc::reduced(&(&a.num * &b.den) - &(&b.num * &a.den), &a.den * &b.den)
    }
    fn mul(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        RatFunc::reduced(&a.num * &b.num, &a.den * &b.den)
    }
    fn neg(&self, a: &RatFunc<F>) -> RatFunc<F> {
        RatFunc { num: -&a.num, den: a.den.clone() }
    }
    fn inv(&self, a: &RatFunc<F>) -> Option<RatFunc<F>> {
        if a.num.is_zero() {
            None
        } else {
            Some(RatFunc::reduced(a.den.clone(), a.num.clone()))
        }
    }
    fn is_zero(&self, a: &RatFunc<F>) -> bool {
        a.num.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn describe(&self) -> String {
        format!("{}(x)", self.base.describe())
    }
    fn fmt_elem(&self, a: &RatFunc<F>) -> String {
        if a.is_poly() {
            format!("{}", a.num)
        } else {
            format!("({})/({})", a.num, a.den)
        }
    }
}
