//! Chinese remaindering and rational reconstruction.

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A value known modulo several distinct primes.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueSystem {
    residues: Vec<(u64, PrimeModulus)>,
}

impl ResidueSystem {
    pub fn new(residues: Vec<(u64, PrimeModulus)>) -> Result<Self> {
        if residues.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, (r, m)) in residues.iter().enumerate() {
            if *r >= m.p() {
                return Err(Error::invalid(format!("residue {r} not reduced modulo {}", m.p())));
            }
            if residues[..i].iter().any(|(_, m2)| m2 == m) {
                return Err(Error::NonCoprimeModuli(m.p().to_string(), m.p().to_string()));
            }
        }
        Ok(ResidueSystem { residues })
    }

    pub fn residues(&self) -> &[(u64, PrimeModulus)] {
        &self.residues
    }

    pub fn modulus_product(&self) -> BigInt {
        self.residues.iter().fold(BigInt::one(), |acc, (_, m)| acc * m.p())
    }
}

/// Combine (value, modulus) pairs with arbitrary positive moduli.
/// Returns the representative in [0, M) and M.
pub fn crt_pairs(pairs: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let Some((first, rest)) = pairs.split_first() else {
        return Err(Error::EmptyInput);
    };
    let mut m = first.1.clone();
    let mut x = first.0.mod_floor(&m);
    for (a, n) in rest {
        // Garner step: x + m·t ≡ a (mod n)
        let g = m.extended_gcd(n);
        if !g.gcd.is_one() {
            return Err(Error::NonCoprimeModuli(m.to_string(), n.to_string()));
        }
        let minv = g.x.mod_floor(n);
        let t = ((a - &x) * minv).mod_floor(n);
        x += &m * t;
        m *= n;
    }
    Ok((x, m))
}

/// CRT over a residue system: the unique value in [0, M) and M.
pub fn crt_combine(rs: &ResidueSystem) -> Result<(BigInt, BigInt)> {
    let pairs: Vec<_> = rs
        .residues
        .iter()
        .map(|(r, m)| (BigInt::from(*r), BigInt::from(m.p())))
        .collect();
    crt_pairs(&pairs)
}

/// Numerator and denominator bounds for reconstruction.
#[derive(Clone, Debug, PartialEq)]
pub struct Bounds {
    pub num: BigInt,
    pub den: BigInt,
}

impl Bounds {
    /// N = D = floor(sqrt((M-1)/2)).
    pub fn symmetric(m: &BigInt) -> Self {
        let b = ((m - 1u32) / 2u32).sqrt();
        Bounds { num: b.clone(), den: b }
    }

    /// Denominator 1, numerator up to (M-1)/2.
    pub fn integer(m: &BigInt) -> Self {
        Bounds { num: (m - 1u32) / 2u32, den: BigInt::one() }
    }

    /// Denominator up to `den`, numerator as large as the bound condition allows.
    pub fn with_den(m: &BigInt, den: &BigInt) -> Self {
        let num = (m - 1u32) / (BigInt::from(2u32) * den);
        Bounds { num, den: den.clone() }
    }

    pub fn admissible(&self, m: &BigInt) -> bool {
        BigInt::from(2u32) * &self.num * &self.den < *m
    }
}

/// Find n/d with |n| <= N, 0 < d <= D, n ≡ d·value (mod M).
pub fn rational_reconstruct(value: &BigInt, m: &BigInt, bounds: &Bounds) -> Result<BigRational> {
    if !bounds.admissible(m) {
        return Err(Error::invalid("bounds violate 2·N·D < M"));
    }
    let v = value.mod_floor(m);
    if v.is_zero() {
        return Ok(BigRational::zero());
    }
    // half-extended Euclid on (M, v), tracking only the cofactor of v
    let (mut r0, mut r1) = (m.clone(), v);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bounds.num {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &q * &t1;
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    let d = t1.abs();
    if d.is_zero() || d > bounds.den {
        return Err(Error::ReconstructionFailure(format!(
            "no fraction within bounds (|n| <= {}, d <= {}) for {} mod {}",
            bounds.num, bounds.den, value, m
        )));
    }
    let n = if t1.is_negative() { -r1 } else { r1 };
    if !n.gcd(&d).is_one() {
        return Err(Error::ReconstructionFailure(format!("candidate {n}/{d} is not reduced")));
    }
    Ok(BigRational::new(n, d))
}

/// Reconstruct with the default symmetric bounds.
pub fn reconstruct_default(value: &BigInt, m: &BigInt) -> Result<BigRational> {
    rational_reconstruct(value, m, &Bounds::symmetric(m))
}

/// Image of a rational modulo m, or None if the denominator is not invertible.
pub fn reduce_rational(r: &BigRational, m: &BigInt) -> Option<BigInt> {
    let g = r.denom().extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some((r.numer() * g.x).mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn crt_small_exhaustive_oracle() {
        let m7 = PrimeModulus::new(7).unwrap();
        let m11 = PrimeModulus::new(11).unwrap();
        let rs = ResidueSystem::new(vec![(5, m7), (3, m11)]).unwrap();
        let (x, m) = crt_combine(&rs).unwrap();
        let oracle = (0..77).find(|v| v % 7 == 5 && v % 11 == 3).unwrap();
        assert_eq!((x, m), (bi(oracle), bi(77)));
        assert_eq!(oracle, 47);
        let rs = ResidueSystem::new(vec![(0, m7), (0, m11)]).unwrap();
        assert_eq!(crt_combine(&rs).unwrap(), (bi(0), bi(77)));
    }

    #[test]
    fn crt_single_and_non_coprime() {
        let p = PrimeModulus::new(32749).unwrap();
        let rs = ResidueSystem::new(vec![(1, p)]).unwrap();
        assert_eq!(crt_combine(&rs).unwrap(), (bi(1), bi(32749)));
        assert!(ResidueSystem::new(vec![(1, p), (2, p)]).is_err());
        assert!(matches!(
            crt_pairs(&[(bi(1), bi(6)), (bi(1), bi(4))]),
            Err(Error::NonCoprimeModuli(_, _))
        ));
    }

    #[test]
    fn reconstruct_one_third() {
        let p = bi(32749);
        // 3·21833 = 2·32749 + 1
        assert_eq!(bi(3) * 21833 - bi(2) * 32749, bi(1));
        let r = reconstruct_default(&bi(21833), &p).unwrap();
        assert_eq!(r, BigRational::new(bi(1), bi(3)));
        assert_eq!(reconstruct_default(&bi(0), &p).unwrap(), BigRational::zero());
        assert_eq!(reconstruct_default(&bi(32748), &p).unwrap(), BigRational::from_integer(bi(-1)));
    }

    #[test]
    fn reconstruct_failure_and_integer_mode() {
        let p = bi(32749);
        // 1/3 has no representation with denominator 1 and small numerator
        let r = rational_reconstruct(&bi(21833), &p, &Bounds::integer(&p)).unwrap();
        assert_eq!(r, BigRational::from_integer(bi(21833 - 32749)));
        let tight = Bounds { num: bi(10), den: bi(2) };
        assert!(matches!(
            rational_reconstruct(&bi(21833), &p, &tight),
            Err(Error::ReconstructionFailure(_))
        ));
    }
}
