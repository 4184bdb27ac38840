//! Coefficient fields.
//!
//! A field is a small context value (`PrimeModulus`, `Rationals`, ...) that
//! knows how to do arithmetic on its element type. Polynomials, series and
//! operators carry their field so they can do arithmetic without extra
//! arguments.

mod ext;
mod prime;
mod rational;
mod ratfunc;

pub use ext::ExtensionField;
pub use prime::{is_prime_u64, primes_below, FieldElement, PrimeModulus, SMALL_PRIMES};
pub use rational::{ratio, Rationals};
pub use ratfunc::{RatFunc, RationalFunctions};

use crate::error::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt::Debug;

pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// Fails with `BadPrime` when the denominator vanishes in the field.
    fn from_ratio(&self, r: &BigRational) -> Result<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn describe(&self) -> String;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn from_small_ratio(&self, num: i64, den: i64) -> Result<Self::Elem> {
        self.from_ratio(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn from_u64(&self, v: u64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }

    /// Monic gcd of two coefficient lists by a method specific to the field,
    /// or None to fall back to the Euclidean algorithm.
    fn poly_gcd(&self, _a: &[Self::Elem], _b: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// Fields whose elements have a one-token text form (used by the file formats).
pub trait ScalarField: Field {
    fn parse_elem(&self, s: &str) -> Option<Self::Elem>;
    /// `prime <p>` or `rational`.
    fn field_tag(&self) -> String;
    /// Exact value of an element as a rational when the field is Q, or its
    /// symmetric integer representative for a prime field.
    fn lift(&self, a: &Self::Elem) -> BigRational;
}
