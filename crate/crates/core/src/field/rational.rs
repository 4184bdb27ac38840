use super::{primes_below, Field, PrimeModulus, ScalarField};
use crate::crt::{crt_pairs, rational_reconstruct, Bounds};
use crate::error::Result;
use crate::poly::DensePoly;
use std::sync::OnceLock;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The field Q, backed by `BigRational`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_ratio(&self, r: &BigRational) -> Result<BigRational> {
        Ok(r.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn describe(&self) -> String {
        "Q".into()
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn poly_gcd(&self, a: &[BigRational], b: &[BigRational]) -> Option<Vec<BigRational>> {
        modular_gcd(a, b)
    }
}

fn gcd_primes() -> &'static [PrimeModulus] {
    static P: OnceLock<Vec<PrimeModulus>> = OnceLock::new();
    P.get_or_init(|| primes_below(1 << 61, 96).into_iter().map(|p| PrimeModulus::new(p).unwrap()).collect())
}

/// Monic gcd over Q from gcds modulo 61-bit primes, lifted by CRT and
/// rational reconstruction and checked by exact division. Primes where the
/// gcd has too large a degree are skipped.
fn modular_gcd(a: &[BigRational], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let pa = DensePoly::new(Rationals, a.to_vec());
    let pb = DensePoly::new(Rationals, b.to_vec());
    if pa.is_zero() || pb.is_zero() {
        return None;
    }
    if pa.deg() == 0 || pb.deg() == 0 {
        return Some(vec![BigRational::one()]);
    }
    let mut best = usize::MAX;
    let mut acc: Vec<(BigInt, BigInt)> = vec![];
    for p in gcd_primes() {
        let (Ok(ra), Ok(rb)) = (pa.try_map(p, |c| p.from_ratio(c)), pb.try_map(p, |c| p.from_ratio(c))) else {
            continue;
        };
        if ra.deg() != pa.deg() || rb.deg() != pb.deg() {
            continue;
        }
        let g = ra.gcd(&rb).ok()?;
        let d = g.deg() as usize;
        if d == 0 {
            return Some(vec![BigRational::one()]);
        }
        if d > best {
            continue;
        }
        let pm = BigInt::from(p.p());
        if d < best {
            best = d;
            acc = g.coeffs().iter().map(|c| (BigInt::from(*c), pm.clone())).collect();
        } else {
            for (i, c) in g.coeffs().iter().enumerate() {
                let (v, m) = &acc[i];
                acc[i] = crt_pairs(&[(v.clone(), m.clone()), (BigInt::from(*c), pm.clone())]).ok()?;
            }
        }
        let m = &acc[0].1;
        let bounds = Bounds::symmetric(m);
        let cand: Option<Vec<BigRational>> = acc.iter().map(|(v, m)| rational_reconstruct(v, m, &bounds).ok()).collect();
        if let Some(cs) = cand {
            let g = DensePoly::new(Rationals, cs);
            if pa.rem(&g).ok()?.is_zero() && pb.rem(&g).ok()?.is_zero() {
                return Some(g.into_coeffs());
            }
        }
    }
    None
}

impl ScalarField for Rationals {
    fn parse_elem(&self, s: &str) -> Option<BigRational> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        } else {
            Some(BigRational::from_integer(s.parse().ok()?))
        }
    }
    fn field_tag(&self) -> String {
        "rational".into()
    }
    fn lift(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
