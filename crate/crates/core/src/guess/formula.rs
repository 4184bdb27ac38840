//! The ODE formula and the optimal, minimal-degree and gain computations
//! derived from it.

use crate::error::{Error, Result};
use num_rational::Ratio;

/// N = d·Q + q·D − C.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OdeFormulaModel {
    pub d: i64,
    pub q: i64,
    pub c: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OptimalTriplet {
    pub q0: i64,
    pub d0: i64,
    pub f0: i64,
    /// (Q0+1)(D0+1) − f0
    pub n0: i64,
    /// The optimum sits on the scan boundary.
    pub boundary: bool,
}

impl OptimalTriplet {
    pub fn product(&self) -> i64 {
        (self.q0 + 1) * (self.d0 + 1)
    }
}

impl OdeFormulaModel {
    pub fn new(d: i64, q: i64, c: i64) -> Result<Self> {
        let m = OdeFormulaModel { d, q, c };
        if q < 1 || d < 0 {
            return Err(Error::ModelViolation(format!("d={d} q={q} outside d >= 0, q >= 1")));
        }
        if m.d_app() < 0 {
            return Err(Error::ModelViolation(format!("negative apparent degree {}", m.d_app())));
        }
        Ok(m)
    }

    /// Degree of the apparent polynomial: (d−1)(q−1) − C − 1.
    pub fn d_app(&self) -> i64 {
        (self.d - 1) * (self.q - 1) - self.c - 1
    }

    pub fn n(&self, order: i64, degree: i64) -> i64 {
        self.d * order + self.q * degree - self.c
    }

    /// D = d − 1 + (D_app + f)/(Q − q + 1) when integral.
    pub fn degree_for(&self, order: i64, f: i64) -> Option<i64> {
        let den = order - self.q + 1;
        if den <= 0 {
            return None;
        }
        let num = self.d_app() + f;
        (num % den == 0).then(|| self.d - 1 + num / den)
    }

    /// Smallest f ≥ 1 making the degree integral at this order.
    pub fn smallest_f(&self, order: i64) -> Option<i64> {
        let den = order - self.q + 1;
        if den <= 0 {
            return None;
        }
        let f = (den - self.d_app().rem_euclid(den)) % den;
        Some(if f == 0 { den } else { f })
    }
}

fn det3(m: [[i64; 3]; 3]) -> i128 {
    let m: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Fit (d, q, C) to samples (Q, D, N) exactly.
pub fn fit_formula(samples: &[(usize, usize, usize)]) -> Result<OdeFormulaModel> {
    let s: Vec<[i64; 3]> = samples.iter().map(|&(a, b, c)| [a as i64, b as i64, c as i64]).collect();
    // pick three affinely independent samples
    let mut pick = None;
    'outer: for i in 0..s.len() {
        for j in i + 1..s.len() {
            for k in j + 1..s.len() {
                let m = [[s[i][0], s[i][1], -1], [s[j][0], s[j][1], -1], [s[k][0], s[k][1], -1]];
                if det3(m) != 0 {
                    pick = Some((i, j, k, m));
                    break 'outer;
                }
            }
        }
    }
    let Some((i, j, k, m)) = pick else {
        return Err(Error::NeedMoreSamples(format!(
            "{} samples do not determine d, q and C",
            samples.len()
        )));
    };
    let rhs = [s[i][2], s[j][2], s[k][2]];
    let det = det3(m);
    let col = |c: usize| {
        let mut mm = m;
        for r in 0..3 {
            mm[r][c] = rhs[r];
        }
        Ratio::new(det3(mm), det)
    };
    let (d, q, c) = (col(0), col(1), col(2));
    if !(d.is_integer() && q.is_integer() && c.is_integer()) {
        return Err(Error::ModelViolation(format!("non-integral fit d={d} q={q} C={c}")));
    }
    let model = OdeFormulaModel { d: d.to_integer() as i64, q: q.to_integer() as i64, c: c.to_integer() as i64 };
    for &[a, b, n] in &s {
        if model.n(a, b) != n {
            return Err(Error::ModelViolation(format!(
                "sample (Q={a}, D={b}, N={n}) disagrees with {}Q + {}D - {}",
                model.d, model.q, model.c
            )));
        }
    }
    if model.q < 1 || model.d < 0 {
        return Err(Error::ModelViolation(format!("fit d={} q={} out of range", model.d, model.q)));
    }
    Ok(model)
}

/// Exhaustive integer scan over f in 1..=f_max and Q in q..=q_max.
/// Minimises N; ties go to the smaller degree, then the smaller f.
pub fn optimal_scan(m: &OdeFormulaModel, f_max: i64, q_max: i64) -> Result<OptimalTriplet> {
    let mut best: Option<OptimalTriplet> = None;
    for f in 1..=f_max {
        for qq in m.q..=q_max {
            let Some(dd) = m.degree_for(qq, f) else { continue };
            if dd < 1 {
                continue;
            }
            let n = (qq + 1) * (dd + 1) - f;
            let t = OptimalTriplet { q0: qq, d0: dd, f0: f, n0: n, boundary: false };
            let better = match &best {
                None => true,
                Some(b) => (n, dd, f) < (b.n0, b.d0, b.f0),
            };
            if better {
                best = Some(t);
            }
        }
    }
    let mut b = best.ok_or_else(|| Error::Integrality("no integral (Q, D, f) inside the scan bounds".into()))?;
    if b.q0 == q_max || b.f0 == f_max {
        log::warn!("optimum ({}, {}, {}) lies on the scan boundary", b.q0, b.d0, b.f0);
        b.boundary = true;
    }
    Ok(b)
}

/// Continuous optimum of N(Q) at fixed f: (Q0, D0, N0).
pub fn continuous_optimum(m: &OdeFormulaModel, f: i64) -> (f64, f64, f64) {
    let (d, q) = (m.d as f64, m.q as f64);
    let dapp = m.d_app() as f64;
    let r = ((dapp + f as f64) * q * d).sqrt();
    let q0 = if d == 0.0 { q - 1.0 } else { q - 1.0 + r / d };
    (q0, d - 1.0 + r / q, q * d + dapp + 2.0 * r)
}

/// N = (Q+1)(D+1) − f at order Q with f solutions; D must be integral.
pub fn terms_required(m: &OdeFormulaModel, order: i64, f: i64) -> Result<i64> {
    if order < m.q {
        return Err(Error::invalid(format!("order {order} below the minimal order {}", m.q)));
    }
    let dd = m.degree_for(order, f).ok_or_else(|| {
        Error::Integrality(format!(
            "(D_app + f)/(Q - q + 1) = {}/{} is not an integer",
            m.d_app() + f,
            order - m.q + 1
        ))
    })?;
    Ok((order + 1) * (dd + 1) - f)
}

/// Difference of (Q+1)(D+1) between orders q1 and q2, each taken with the
/// smallest admissible f.
pub fn gain(m: &OdeFormulaModel, q1: i64, q2: i64) -> Result<i64> {
    let prod = |qq: i64| -> Result<i64> {
        let f = m
            .smallest_f(qq)
            .ok_or_else(|| Error::invalid(format!("order {qq} below the minimal order {}", m.q)))?;
        Ok((qq + 1) * (m.degree_for(qq, f).unwrap() + 1))
    };
    Ok(prod(q1)? - prod(q2)?)
}

/// Order and term count of the minimal-degree ODE, D = d: Q = q + D_app + f − 1.
pub fn minimal_degree(m: &OdeFormulaModel, f: i64) -> Result<(i64, i64)> {
    let order = m.q + m.d_app() + f - 1;
    Ok((order, terms_required(m, order, f)?))
}

/// key=value report of the model and its optimum.
pub fn formula_report(m: &OdeFormulaModel, opt: Option<&OptimalTriplet>) -> String {
    let mut s = format!("d={}\nq={}\nC={}\nD_app={}\n", m.d, m.q, m.c, m.d_app());
    if let Some(o) = opt {
        s += &format!("Q0={}\nD0={}\nf0={}\nN0={}\n", o.q0, o.d0, o.f0, o.n0);
    }
    s
}
