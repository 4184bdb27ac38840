use super::{Field, ScalarField};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The nine largest primes below 2^15.
pub const SMALL_PRIMES: [u64; 9] = [32749, 32719, 32717, 32713, 32707, 32693, 32687, 32653, 32647];

const MAX_BITS: u32 = 62;

/// A word-size odd prime. Arithmetic uses a single 64-bit multiply when the
/// prime is below 2^32 and a 128-bit product otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: u64,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 {
            return Err(Error::BadPrime { p, reason: "modulus must be an odd prime".into() });
        }
        if p >> MAX_BITS != 0 {
            return Err(Error::BadPrime { p, reason: format!("modulus exceeds {MAX_BITS} bits") });
        }
        if !is_prime_u64(p) {
            return Err(Error::BadPrime { p, reason: "not prime".into() });
        }
        Ok(PrimeModulus { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn mulm(&self, a: u64, b: u64) -> u64 {
        if self.p < (1 << 32) {
            (a * b) % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    #[inline]
    pub fn addm(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn subm(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn invm(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i128) as u64)
    }

    pub fn powm(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulm(acc, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn elem(&self, v: i64) -> FieldElement {
        FieldElement { residue: self.reduce_i64(v), modulus: *self }
    }

    /// Symmetric representative in (-p/2, p/2].
    pub fn symmetric(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl fmt::Debug for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl Field for PrimeModulus {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().unwrap()
    }
    fn from_ratio(&self, r: &BigRational) -> Result<u64> {
        let d = self.from_bigint(r.denom());
        let di = self.invm(d).ok_or_else(|| Error::BadPrime {
            p: self.p,
            reason: format!("divides the denominator {}", r.denom()),
        })?;
        Ok(self.mulm(self.from_bigint(r.numer()), di))
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.addm(*a, *b)
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.subm(*a, *b)
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulm(*a, *b)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        self.invm(*a)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn describe(&self) -> String {
        format!("GF({})", self.p)
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn pow(&self, a: &u64, e: u64) -> u64 {
        self.powm(*a, e)
    }
}

impl ScalarField for PrimeModulus {
    fn parse_elem(&self, s: &str) -> Option<u64> {
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            return self.from_ratio(&BigRational::new(n, d)).ok();
        }
        let v: BigInt = s.trim().parse().ok()?;
        Some(self.from_bigint(&v))
    }
    fn field_tag(&self) -> String {
        format!("prime {}", self.p)
    }
    fn lift(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(self.symmetric(*a)))
    }
}

/// A residue bundled with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub residue: u64,
    pub modulus: PrimeModulus,
}

impl FieldElement {
    pub fn new(residue: i64, modulus: PrimeModulus) -> Self {
        modulus.elem(residue)
    }

    pub fn inv(&self) -> Option<Self> {
        self.modulus.invm(self.residue).map(|r| FieldElement { residue: r, modulus: self.modulus })
    }

    pub fn pow(&self, e: u64) -> Self {
        FieldElement { residue: self.modulus.powm(self.residue, e), modulus: self.modulus }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus.p)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.check(&o);
        FieldElement { residue: self.modulus.addm(self.residue, o.residue), modulus: self.modulus }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.check(&o);
        FieldElement { residue: self.modulus.subm(self.residue, o.residue), modulus: self.modulus }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        FieldElement { residue: self.modulus.mulm(self.residue, o.residue), modulus: self.modulus }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement { residue: self.modulus.neg(&self.residue), modulus: self.modulus }
    }
}

fn mr_witness(n: u64, a: u64) -> bool {
    // true if a proves n composite
    let m = PrimeModulus { p: n };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mut x = m.powm(a % n, d);
    if x == 1 || x == n - 1 {
        return false;
    }
    for _ in 1..s {
        x = m.mulm(x, x);
        if x == n - 1 {
            return false;
        }
    }
    true
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    ![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].iter().any(|&a| mr_witness(n, a))
}

/// The `count` largest primes strictly below `bound`, in decreasing order.
pub fn primes_below(bound: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = bound.saturating_sub(1);
    while out.len() < count && n > 2 {
        if is_prime_u64(n) {
            out.push(n);
        }
        n -= 1;
    }
    out
}
