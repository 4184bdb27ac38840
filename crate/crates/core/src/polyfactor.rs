//! Factorisation of univariate polynomials over prime fields: squarefree
//! decomposition, distinct-degree and equal-degree splitting.

use crate::field::{Field, PrimeModulus};
use crate::poly::DensePoly;
use num_bigint::BigUint;

type P = DensePoly<PrimeModulus>;

fn mulmod(a: &P, b: &P, m: &P) -> P {
    (a * b).rem(m).unwrap()
}

fn powmod(base: &P, e: &BigUint, m: &P) -> P {
    let f = *base.field();
    let mut acc = P::one(f).rem(m).unwrap();
    let b = base.rem(m).unwrap();
    for i in (0..e.bits()).rev() {
        acc = mulmod(&acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(&acc, &b, m);
        }
    }
    acc
}

/// p-th root of a polynomial whose derivative vanishes (all exponents
/// divisible by p). Over F_p the coefficient map is the identity.
fn pth_root(a: &P) -> P {
    let f = *a.field();
    let p = f.p() as usize;
    let v = a.coeffs().iter().step_by(p).cloned().collect();
    P::new(f, v)
}

/// Squarefree decomposition: list of (monic squarefree factor, multiplicity),
/// factors pairwise coprime. Constant input gives an empty list.
pub fn squarefree_decomposition(a: &P) -> Vec<(P, usize)> {
    let mut out = vec![];
    if a.deg() <= 0 {
        return out;
    }
    sqf_rec(&a.monic(), 1, &mut out);
    out.sort_by(|x, y| x.1.cmp(&y.1).then(x.0.deg().cmp(&y.0.deg())));
    out
}

fn sqf_rec(a: &P, mult: usize, out: &mut Vec<(P, usize)>) {
    let p = a.field().p() as usize;
    let da = a.derivative();
    if da.is_zero() {
        if a.deg() > 0 {
            sqf_rec(&pth_root(a), mult * p, out);
        }
        return;
    }
    // Yun's algorithm, with the leftover p-th power handled recursively
    let mut c = a.gcd(&da).unwrap();
    let mut w = a.div_exact(&c).unwrap();
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c).unwrap();
        let z = w.div_exact(&y).unwrap();
        if z.deg() > 0 {
            out.push((z.monic(), i * mult));
        }
        w = y;
        c = c.div_exact(&w).unwrap();
        i += 1;
    }
    if c.deg() > 0 {
        sqf_rec(&pth_root(&c), mult * p, out);
    }
}

/// Distinct-degree factorisation of a monic squarefree polynomial:
/// (product of all irreducible factors of degree d, d).
pub fn distinct_degree(a: &P) -> Vec<(P, usize)> {
    let f = *a.field();
    let pbig = BigUint::from(f.p());
    let mut out = vec![];
    let mut rest = a.monic();
    let x = P::x(f);
    let mut h = x.rem(&rest).unwrap();
    let mut d = 0;
    while rest.deg() >= 2 * (d as i64 + 1) {
        d += 1;
        h = powmod(&h, &pbig, &rest);
        let g = rest.gcd(&(&h - &x)).unwrap();
        if g.deg() > 0 {
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg() as usize;
        out.push((rest, d));
    }
    out
}

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

/// Split a monic squarefree product of irreducibles of degree d. Splitting
/// polynomials come from a fixed-seed generator, so output is reproducible.
pub fn equal_degree(a: &P, d: usize) -> Vec<P> {
    let f = *a.field();
    let n = a.deg() as usize;
    if n == d {
        return vec![a.monic()];
    }
    let e = (BigUint::from(f.p()).pow(d as u32) - 1u32) / 2u32;
    let mut rng = SplitMix(0x5eed ^ (n as u64) << 8 ^ d as u64);
    let mut attempt = 0u64;
    loop {
        // the first attempts use x + c, later ones dense random polynomials
        let u = if attempt < 8 {
            P::new(f, vec![f.from_u64(attempt), 1])
        } else {
            let len = (2 * d).min(n);
            P::new(f, (0..len).map(|_| rng.next() % f.p()).collect())
        };
        attempt += 1;
        if u.deg() <= 0 {
            continue;
        }
        let t = powmod(&u, &e, a);
        let g = a.gcd(&(&t - &P::one(f))).unwrap();
        if g.deg() > 0 && g.deg() < a.deg() {
            let h = a.div_exact(&g).unwrap();
            let mut out = equal_degree(&g, d);
            out.extend(equal_degree(&h.monic(), d));
            return out;
        }
    }
}

/// Complete factorisation into monic irreducibles with multiplicities,
/// sorted by degree, then coefficients.
pub fn factor(a: &P) -> Vec<(P, usize)> {
    let mut out = vec![];
    for (s, m) in squarefree_decomposition(a) {
        for (g, d) in distinct_degree(&s) {
            for h in equal_degree(&g, d) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|x, y| x.0.deg().cmp(&y.0.deg()).then_with(|| x.0.coeffs().cmp(y.0.coeffs())));
    out
}

/// Roots in F_p with multiplicities, ascending.
pub fn roots(a: &P) -> Vec<(u64, usize)> {
    let f = *a.field();
    let mut out: Vec<(u64, usize)> = factor(a)
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, m)| (f.neg(&g.coeff(0)), m))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeModulus {
        PrimeModulus::new(32749).unwrap()
    }

    fn expand(fs: &[(P, usize)]) -> P {
        let mut acc = P::one(fp());
        for (g, m) in fs {
            acc = &acc * &g.pow(*m as u32);
        }
        acc
    }

    #[test]
    fn factor_reassembles() {
        let f = fp();
        let a = P::from_i64s(f, &[1, -16]);
        let b = P::from_i64s(f, &[1, 0, 1, 3]);
        let c = P::from_i64s(f, &[-8, 252, -1678, 3607, 4352]);
        let prod = &(&a.pow(3) * &b) * &c.pow(2);
        let fs = factor(&prod);
        assert_eq!(expand(&fs), prod.monic());
        for (g, _) in &fs {
            // every factor is irreducible: its own ddf reports a single degree
            let dd = distinct_degree(g);
            assert_eq!(dd.len(), 1);
            assert_eq!(dd[0].1 as i64, g.deg());
        }
    }

    #[test]
    fn roots_of_known_product() {
        let f = fp();
        let p = P::from_roots(f, &[3, 3, 7, 100]);
        assert_eq!(roots(&p), vec![(3, 2), (7, 1), (100, 1)]);
    }

    #[test]
    fn small_prime_pth_powers() {
        let f = PrimeModulus::new(3).unwrap();
        // (x+1)^3 (x^2+1)^6 over F_3
        let a = P::new(f, vec![1, 1]);
        let b = P::new(f, vec![1, 0, 1]);
        let prod = &a.pow(3) * &b.pow(6);
        let fs = squarefree_decomposition(&prod);
        let mut acc = P::one(f);
        for (g, m) in &fs {
            acc = &acc * &g.pow(*m as u32);
        }
        assert_eq!(acc, prod.monic());
        assert_eq!(factor(&prod).len(), 2);
    }
}
