use super::{DiffOp, RatOp};
use crate::error::{Error, Result};
use crate::field::{Field, RatFunc};
use crate::linalg::nullspace;
use std::collections::HashMap;

fn compositions(m: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 1 {
        return vec![vec![m]];
    }
    let mut out = vec![];
    for first in (0..=m).rev() {
        for mut rest in compositions(m - first, r - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Minimal operator annihilating every m-fold product of solutions of L.
///
/// Works with monomials y^e = Π y_i^{e_i} in y_i = D^i y (i < r) of total
/// degree m, differentiates y_0^m repeatedly, reduces D^r y through L, and
/// stops at the first F(x)-linear dependency.
pub fn symmetric_power<F: Field>(l: &DiffOp<F>, m: usize) -> Result<DiffOp<F>> {
    if m == 0 {
        return Err(Error::invalid("symmetric power needs m >= 1"));
    }
    let lr = RatOp::from_diffop(l).monic();
    let r = lr.order();
    if r == 0 {
        return Err(Error::invalid("symmetric power of an order-0 operator"));
    }
    let k = lr.ring().clone();
    let monos = compositions(m, r);
    let index: HashMap<Vec<usize>, usize> =
        monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let dim = monos.len();
    // y_r = -Σ a_j y_j
    let tail: Vec<RatFunc<F>> = (0..r).map(|j| k.neg(&lr.coeffs()[j])).collect();

    let derive = |v: &Vec<RatFunc<F>>| -> Vec<RatFunc<F>> {
        let mut out = vec![k.zero(); dim];
        for (idx, c) in v.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            out[idx] = k.add(&out[idx], &c.derivative());
            let e = &monos[idx];
            for i in 0..r {
                if e[i] == 0 {
                    continue;
                }
                let w = k.mul(c, &k.from_i64(e[i] as i64));
                let mut e2 = e.clone();
                e2[i] -= 1;
                if i + 1 < r {
                    e2[i + 1] += 1;
                    let t = index[&e2];
                    out[t] = k.add(&out[t], &w);
                } else {
                    for (j, a) in tail.iter().enumerate() {
                        if k.is_zero(a) {
                            continue;
                        }
                        let mut e3 = e2.clone();
                        e3[j] += 1;
                        let t = index[&e3];
                        out[t] = k.add(&out[t], &k.mul(&w, a));
                    }
                }
            }
        }
        out
    };

    let mut start = vec![k.zero(); dim];
    start[index[&{
        let mut e = vec![0; r];
        e[0] = m;
        e
    }]] = k.one();
    let mut vecs = vec![start];
    loop {
        let n = vecs.len() - 1;
        if n >= 1 {
            let rows: Vec<Vec<RatFunc<F>>> =
                (0..dim).map(|i| vecs.iter().map(|v| v[i].clone()).collect()).collect();
            let ns = nullspace(&k, &rows)?;
            if let Some(c) = ns.into_iter().next() {
                return Ok(RatOp::new(k, c).monic().to_diffop());
            }
        }
        if n > dim {
            return Err(Error::invalid("no dependency found for symmetric power"));
        }
        let next = derive(vecs.last().unwrap());
        vecs.push(next);
    }
}
