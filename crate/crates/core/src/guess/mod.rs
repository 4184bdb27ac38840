//! Guessing linear ODEs from truncated series, and the ODE formula
//! N = d·Q + q·D − C with its optimisation.

mod formula;

pub use formula::{
    continuous_optimum, fit_formula, formula_report, gain, minimal_degree, optimal_scan, terms_required,
    OdeFormulaModel, OptimalTriplet,
};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{canonical_basis, Echelon};
use crate::op::{falling, gcrd, Basis, DiffOp, RatOp};
use crate::series::{apply_operator, TruncatedSeries};
use log::{debug, info};
use rayon::prelude::*;

pub const DEFAULT_GUARD: usize = 10;

#[derive(Clone, Debug)]
pub struct GuessProblem<'a, F: Field> {
    pub series: &'a TruncatedSeries<F>,
    pub order: usize,
    pub degree: usize,
    pub basis: Basis,
    pub guard: usize,
}

impl<'a, F: Field> GuessProblem<'a, F> {
    pub fn new(series: &'a TruncatedSeries<F>, order: usize, degree: usize) -> Self {
        GuessProblem { series, order, degree, basis: Basis::Theta, guard: DEFAULT_GUARD }
    }

    pub fn unknowns(&self) -> usize {
        (self.order + 1) * (self.degree + 1)
    }

    pub fn required_terms(&self) -> usize {
        self.unknowns() + self.guard
    }
}

#[derive(Clone, Debug)]
pub struct GuessResult<F: Field> {
    pub order: usize,
    pub degree: usize,
    /// Dimension of the verified solution space.
    pub f: usize,
    /// Basis of annihilators in the D_x basis.
    pub operators: Vec<DiffOp<F>>,
    /// (Q+1)(D+1) − f.
    pub n_used: usize,
    /// Index of the last series coefficient that changed the solution space, plus one.
    pub rows_to_settle: usize,
}

/// Matrix row for coefficient n of L(s), columns indexed by (j, i) -> j·(D+1) + i.
fn build_row<F: Field>(
    f: &F,
    p: &GuessProblem<F>,
    table: &[Vec<F::Elem>],
    n: usize,
) -> Vec<F::Elem> {
    let (qq, dd) = (p.order, p.degree);
    let s = p.series.coeffs();
    let mut row = vec![f.zero(); p.unknowns()];
    for i in 0..=dd {
        for j in 0..=qq {
            // θ basis: x^i θ^j s contributes (ρ+m)^j s_m at m = n - i.
            // D_x basis: x^i D^j s contributes falling(ρ+m, j) s_m at m = n - Q - i + j.
            let m = match p.basis {
                Basis::Theta => n as i64 - i as i64,
                Basis::Dx => n as i64 - qq as i64 - i as i64 + j as i64,
            };
            if m < 0 || m as usize >= s.len() {
                continue;
            }
            let m = m as usize;
            if f.is_zero(&s[m]) {
                continue;
            }
            row[j * (dd + 1) + i] = f.mul(&table[m][j], &s[m]);
        }
    }
    row
}

fn vec_to_op<F: Field>(f: &F, p: &GuessProblem<F>, v: &[F::Elem]) -> DiffOp<F> {
    let dd = p.degree + 1;
    let coeffs = (0..=p.order)
        .map(|j| crate::poly::DensePoly::new(f.clone(), v[j * dd..(j + 1) * dd].to_vec()))
        .collect();
    DiffOp::new(f.clone(), p.basis, coeffs).to_dx()
}

fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(f.zero(), |acc, (x, y)| {
        if f.is_zero(x) || f.is_zero(y) {
            acc
        } else {
            f.add(&acc, &f.mul(x, y))
        }
    })
}

/// Solve for all operators of order ≤ Q and degree ≤ D annihilating the
/// series through its whole length.
pub fn guess_ode<F: Field>(p: &GuessProblem<F>) -> Result<GuessResult<F>> {
    if p.order == 0 {
        return Err(Error::invalid("guessing needs order >= 1"));
    }
    let s = p.series;
    if s.ramification() != 1 {
        return Err(Error::Unsupported("guessing on a ramified series".into()));
    }
    let len = s.len();
    if len < p.required_terms() {
        return Err(Error::NeedMoreTerms { needed: p.required_terms() as u64, available: len as u64 });
    }
    let f = s.field().clone();
    let u = p.unknowns();
    // table[m][j] = (ρ+m)^j or falling(ρ+m, j)
    let table: Vec<Vec<F::Elem>> = (0..len)
        .into_par_iter()
        .map(|m| {
            let e = s.exponent_elem(s.exponent(m))?;
            Ok(match p.basis {
                Basis::Theta => {
                    let mut v = vec![f.one()];
                    for j in 1..=p.order {
                        v.push(f.mul(&v[j - 1], &e));
                    }
                    v
                }
                Basis::Dx => (0..=p.order).map(|j| falling(&f, &e, j)).collect(),
            })
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<F::Elem>> = (0..len).into_par_iter().map(|n| build_row(&f, p, &table, n)).collect();

    let mut ech = Echelon::new(f.clone(), u);
    let mut last_change = 0;
    let head = u.min(len);
    for (n, r) in rows[..head].iter().enumerate() {
        if ech.insert(r.clone()) {
            last_change = n + 1;
        }
        if ech.rank() == u {
            break;
        }
    }
    let mut basis = ech.nullspace();
    if !basis.is_empty() {
        for (n, r) in rows.iter().enumerate().skip(head) {
            if basis.iter().all(|v| f.is_zero(&dot(&f, r, v))) {
                continue;
            }
            ech.insert(r.clone());
            last_change = n + 1;
            basis = ech.nullspace();
            if basis.is_empty() {
                break;
            }
        }
    }
    let basis = canonical_basis(&f, &basis);
    let operators: Vec<DiffOp<F>> = basis.iter().map(|v| vec_to_op(&f, p, v)).collect();
    let fdim = operators.len();
    debug!("guess Q={} D={} len={} f={} settled at {}", p.order, p.degree, len, fdim, last_change);
    Ok(GuessResult {
        order: p.order,
        degree: p.degree,
        f: fdim,
        operators,
        n_used: u - fdim,
        rows_to_settle: last_change,
    })
}

/// Search limits for `minimal_operator`.
#[derive(Clone, Debug)]
pub struct MinimalStrategy {
    pub max_order: usize,
    pub guard: usize,
    pub basis: Basis,
}

impl Default for MinimalStrategy {
    fn default() -> Self {
        MinimalStrategy { max_order: 12, guard: DEFAULT_GUARD, basis: Basis::Theta }
    }
}

#[derive(Clone, Debug)]
pub struct MinimalResult<F: Field> {
    /// Minimal-order annihilator, monic-normalised D_x form.
    pub operator: DiffOp<F>,
    /// True when a guess at the final order produced the operator directly.
    pub confirmed: bool,
    /// Fitted ODE formula, when enough successful guesses were available.
    pub model: Option<OdeFormulaModel>,
    /// Successful guesses as (Q, D, N = (Q+1)(D+1) − f).
    pub samples: Vec<(usize, usize, usize)>,
}

fn max_degree(len: usize, order: usize, guard: usize) -> Option<usize> {
    let avail = len.checked_sub(guard)?;
    (avail / (order + 1)).checked_sub(1)
}

fn annihilates<F: Field>(l: &DiffOp<F>, s: &TruncatedSeries<F>) -> bool {
    apply_operator(l, s).map(|r| r.is_zero()).unwrap_or(false)
}

/// Reduce a set of annihilators to their gcrd, which still annihilates the
/// series and has order at most that of each input.
fn common_right_factor<F: Field>(ops: &[DiffOp<F>]) -> Result<DiffOp<F>> {
    let mut g = RatOp::from_diffop(&ops[0]);
    for o in &ops[1..] {
        if g.order() == 0 {
            break;
        }
        g = gcrd(&g, &RatOp::from_diffop(o))?;
    }
    Ok(g.to_diffop())
}

/// Find the minimal-order operator annihilating the series.
pub fn minimal_operator<F: Field>(s: &TruncatedSeries<F>, st: &MinimalStrategy) -> Result<MinimalResult<F>> {
    let len = s.len();
    if max_degree(len, 1, st.guard).is_none() {
        return Err(Error::NeedMoreTerms { needed: (2 + st.guard) as u64, available: len as u64 });
    }
    let mut first: Option<GuessResult<F>> = None;
    for q in 1..=st.max_order {
        let Some(d) = max_degree(len, q, st.guard) else { break };
        let mut pr = GuessProblem::new(s, q, d);
        pr.guard = st.guard;
        pr.basis = st.basis;
        let r = guess_ode(&pr)?;
        if r.f > 0 {
            first = Some(r);
            break;
        }
    }
    let Some(found) = first else {
        return Err(Error::NoOdeFound(format!(
            "orders 1..={} with the largest degree {} terms allow, guard {}",
            st.max_order, len, st.guard
        )));
    };
    let q1 = found.order;
    info!("first annihilator at Q={} D={} f={}", q1, found.degree, found.f);
    let mut samples = vec![(found.order, found.degree, found.n_used)];

    // smaller degrees at the same order, and one order up, feed the formula
    let mut lowest = found.clone();
    let mut d = found.degree;
    while d > 0 && samples.len() < 4 {
        d -= 1;
        let mut pr = GuessProblem::new(s, q1, d);
        pr.guard = st.guard;
        pr.basis = st.basis;
        let r = guess_ode(&pr)?;
        if r.f == 0 {
            break;
        }
        samples.push((q1, d, r.n_used));
        lowest = r;
    }
    if let Some(d2) = max_degree(len, q1 + 1, st.guard) {
        let mut pr = GuessProblem::new(s, q1 + 1, d2);
        pr.guard = st.guard;
        pr.basis = st.basis;
        if let Ok(r) = guess_ode(&pr) {
            if r.f > 0 {
                samples.push((q1 + 1, d2, r.n_used));
            }
        }
    }
    let model = fit_formula(&samples).ok();

    let cand = common_right_factor(&lowest.operators)?;
    let operator = if cand.order() > 0 && annihilates(&cand, s) { cand } else { lowest.operators[0].clone() };
    let confirmed = operator.order() == q1;
    if let Some(m) = &model {
        if m.q as usize != operator.order() {
            info!("formula predicts order {} but the operator found has order {}", m.q, operator.order());
        }
    }
    Ok(MinimalResult { operator: operator.monic_normalized(), confirmed, model, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use crate::series::{k_series, series_from_operator, Exponent};

    fn fp() -> PrimeModulus {
        PrimeModulus::new(32749).unwrap()
    }

    #[test]
    fn exponential_gives_d_minus_one() {
        let f = fp();
        let l = DiffOp::from_i64s(f, Basis::Dx, &[&[-1], &[1]]);
        let s = series_from_operator(&l, Exponent::from_integer(0), 20, &1).unwrap();
        // in the θ basis e^x needs θ - x, degree 1; in the D_x basis degree 0 suffices
        let mut p = GuessProblem::new(&s, 1, 0);
        p.basis = Basis::Dx;
        let r = guess_ode(&p).unwrap();
        assert_eq!(r.f, 1);
        assert_eq!(r.n_used, 1);
        assert_eq!(r.operators[0].monic_normalized(), l);
        let r = guess_ode(&GuessProblem::new(&s, 1, 1)).unwrap();
        assert_eq!(r.operators[0].monic_normalized(), l);
    }

    #[test]
    fn k_series_order_two_degree_one() {
        let f = fp();
        let k = k_series(&f, 40).unwrap();
        let r = guess_ode(&GuessProblem::new(&k, 2, 1)).unwrap();
        assert_eq!(r.f, 1);
        let lk = DiffOp::from_i64s(f, Basis::Dx, &[&[-4], &[1, -32], &[0, 1, -16]]);
        assert_eq!(r.operators[0].monic_normalized(), lk.monic_normalized());
        // every returned operator kills the whole series
        assert!(apply_operator(&r.operators[0], &k).unwrap().is_zero());
        let mut dx = GuessProblem::new(&k, 2, 2);
        dx.basis = Basis::Dx;
        let r = guess_ode(&dx).unwrap();
        assert_eq!(r.f, 1);
        assert_eq!(r.operators[0].monic_normalized(), lk.monic_normalized());
    }

    #[test]
    fn need_more_terms() {
        let f = fp();
        let k = k_series(&f, 12).unwrap();
        assert_eq!(
            guess_ode(&GuessProblem::new(&k, 2, 1)).unwrap_err(),
            Error::NeedMoreTerms { needed: 16, available: 12 }
        );
    }

    #[test]
    fn minimal_of_monomial() {
        let f = fp();
        let s = TruncatedSeries::new(f, Exponent::from_integer(2), {
            let mut v = vec![0; 30];
            v[0] = 1;
            v
        })
        .unwrap();
        let m = minimal_operator(&s, &MinimalStrategy::default()).unwrap();
        let theta_minus_two = DiffOp::from_i64s(f, Basis::Theta, &[&[-2], &[1]]);
        assert_eq!(m.operator, theta_minus_two.monic_normalized());
        assert!(m.confirmed);
    }

    #[test]
    fn minimal_of_k_and_formula() {
        let f = fp();
        let k = k_series(&f, 60).unwrap();
        let m = minimal_operator(&k, &MinimalStrategy::default()).unwrap();
        let lk = DiffOp::from_i64s(f, Basis::Dx, &[&[-4], &[1, -32], &[0, 1, -16]]);
        assert_eq!(m.operator, lk.monic_normalized());
        // K: singularities 1/16 only besides 0, order 2, no apparent ones
        let model = m.model.unwrap();
        assert_eq!((model.d, model.q), (1, 2));
        for &(q, d, n) in &m.samples {
            assert_eq!(n as i64, model.d * q as i64 + model.q * d as i64 - model.c);
        }
    }
}
