//! Exact operators from the χ̃ factorisation study, over Q, in D_x form.

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::op::{lclm, Basis, DiffOp, RatOp};
use crate::poly::DensePoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::str::FromStr;

type P = DensePoly<Rationals>;

pub const NAMES: &[&str] = &["LE", "LK", "L2", "L3", "Lt3", "L11", "L12", "L13", "L4_4", "Lt5", "L4"];

fn p(cs: &[i64]) -> P {
    P::from_i64s(Rationals, cs)
}

fn op(cs: Vec<P>) -> DiffOp<Rationals> {
    DiffOp::new(Rationals, Basis::Dx, cs)
}

fn mul(ps: &[&P]) -> P {
    ps.iter().fold(P::one(Rationals), |acc, q| &acc * q)
}

fn konst(c: i64) -> P {
    p(&[c])
}

/// x(1-16x)D² + (1-16x)D + 4, annihilating E = ₂F₁(1/2,-1/2;1;16x).
pub fn l_e() -> DiffOp<Rationals> {
    DiffOp::from_i64s(Rationals, Basis::Dx, &[&[4], &[1, -16], &[0, 1, -16]])
}

/// x(1-16x)D² + (1-32x)D - 4, annihilating K = ₂F₁(1/2,1/2;1;16x).
pub fn l_k() -> DiffOp<Rationals> {
    DiffOp::from_i64s(Rationals, Basis::Dx, &[&[-4], &[1, -32], &[0, 1, -16]])
}

pub fn l2() -> DiffOp<Rationals> {
    DiffOp::from_i64s(Rationals, Basis::Dx, &[&[4], &[-2, -16], &[0, 1, -16]])
}

pub fn l3() -> DiffOp<Rationals> {
    let x = p(&[0, 1]);
    let a = p(&[1, -16]);
    let p3 = mul(&[&x, &x, &a, &a, &p(&[-81, 1986, -17056, 34304, 8192])]);
    let p2 = mul(&[&konst(2), &x, &x, &a, &p(&[2247, -46496, 357888, -565248, -65536])]);
    let p1 = mul(&[&konst(6), &p(&[27, -942, 11152, -101632, 372736, -65536])]);
    let p0 = mul(&[&konst(12), &p(&[9, -308, -6208, -101376, -49152])]);
    op(vec![p0, p1, p2, p3])
}

/// Apparent polynomial of L̃3.
pub fn q3() -> P {
    p(&[-8, 252, -1678, 3607, 4352])
}

pub fn l3_tilde() -> DiffOp<Rationals> {
    let x = p(&[0, 1]);
    let a = p(&[1, -16]);
    let b = p(&[1, -4]);
    let c3 = mul(&[&x, &x, &b, &a, &a, &a, &q3()]);
    let c2 = mul(&[&konst(2), &x, &a, &a, &p(&[-12, 1172, -30499, 252146, -872579, 770128, 1183744])]);
    let c1 = mul(&[&konst(4), &a, &p(&[6, 185, -28373, 689440, -5128290, 16119599, -13139200, -17825792])]);
    let c0 = mul(&[&konst(4), &p(&[-294, 9469, 84480, -4652220, 33948640, -97687536, 74981376, 89128960])]);
    op(vec![c0, c1, c2, c3])
}

fn first_order(num: P, den: P) -> RatOp<Rationals> {
    RatOp::first_order(num, den).unwrap()
}

pub fn l11() -> RatOp<Rationals> {
    first_order(p(&[0, 0, 768]), mul(&[&p(&[1, -16]), &p(&[1, -24, 96])]))
}

pub fn l12() -> RatOp<Rationals> {
    first_order(p(&[1, 0, 384, 2048]), mul(&[&p(&[0, 2]), &p(&[1, -16]), &p(&[1, -48, 128])]))
}

pub fn l13() -> RatOp<Rationals> {
    let p1 = mul(&[&p(&[0, 1]), &p(&[1, -16]), &p(&[1, -4]), &p(&[7, 80]), &p(&[-7, 96, -1152, 10240])]);
    let p0 = p(&[-49, 2149, -24800, 254592, 481280, -36536320, 65536000]);
    first_order(mul(&[&konst(2), &p0]), p1)
}

fn dx_rat() -> RatOp<Rationals> {
    RatOp::from_diffop(&DiffOp::derivation_power(Rationals, Basis::Dx, 1))
}

/// L13 · (L12 ⊕ L11 ⊕ D_x), the direct sum taken monic.
pub fn l4_4() -> DiffOp<Rationals> {
    let sum = lclm(&lclm(&l12(), &l11()).unwrap(), &dx_rat()).unwrap();
    l13().mul(&sum).to_diffop()
}

/// (D_x - 1/x) ⊕ L4⁽⁴⁾.
pub fn l5_tilde() -> DiffOp<Rationals> {
    let dm = first_order(p(&[-1]), p(&[0, 1]));
    lclm(&dm, &RatOp::from_diffop(&l4_4())).unwrap().to_diffop()
}

const L4_DATA: &str = include_str!("../data/l4_polys.txt");

/// The polynomials P_j of L4, P_0 already multiplied by 16.
pub fn l4_polynomials() -> Result<Vec<P>> {
    let mut out = vec![P::zero(Rationals); 5];
    let lines: Vec<&str> = L4_DATA.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).collect();
    for pair in lines.chunks(2) {
        let head: Vec<&str> = pair[0].split_whitespace().collect();
        let j: usize = head[0][1..].parse().map_err(|_| Error::invalid("bad L4 data header"))?;
        let scale: i64 = head[2].parse().map_err(|_| Error::invalid("bad L4 data header"))?;
        let cs = pair[1]
            .split_whitespace()
            .map(|t| BigInt::from_str(t).map(|v| BigRational::from_integer(v * scale)))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::invalid("bad L4 data"))?;
        out[j] = P::new(Rationals, cs);
    }
    Ok(out)
}

pub fn l4() -> DiffOp<Rationals> {
    let ps = l4_polynomials().expect("embedded L4 data");
    let x = p(&[0, 1]);
    let a = p(&[1, -16]);
    let q = q3();
    let c4 = mul(&[&x.pow(3), &a.pow(4), &p(&[1, -4]), &p(&[1, -8]), &q.pow(4), &ps[4]]);
    let c3 = mul(&[&x.pow(2), &a.pow(3), &q.pow(3), &ps[3]]);
    let c2 = mul(&[&x, &a.pow(2), &q.pow(2), &ps[2]]);
    let c1 = mul(&[&a, &q, &ps[1]]);
    op(vec![ps[0].clone(), c1, c2, c3, c4])
}

/// Operator by catalog name.
pub fn by_name(name: &str) -> Option<DiffOp<Rationals>> {
    Some(match name {
        "LE" => l_e(),
        "LK" => l_k(),
        "L2" => l2(),
        "L3" => l3(),
        "Lt3" => l3_tilde(),
        "L11" => l11().to_diffop(),
        "L12" => l12().to_diffop(),
        "L13" => l13().to_diffop(),
        "L4_4" => l4_4(),
        "Lt5" => l5_tilde(),
        "L4" => l4(),
        _ => return None,
    })
}
