//! Local analysis: singular points, indicial polynomials and exponents,
//! formal solutions with logarithms, apparent singularities.

mod formal;

pub use formal::{
    apply_to_log_series, formal_solutions_at_zero, ClassSolutions, FormalSolutions, LogBlock, LogCheck,
    LogStructure, SolutionLogs,
};

use crate::crt::{rational_reconstruct, Bounds};
use crate::error::{Error, Result};
use crate::field::{primes_below, ExtensionField, Field, PrimeModulus, Rationals, ScalarField};
use crate::op::{invert_operator, translate_operator, DiffOp, OperatorNormalization};
use crate::poly::DensePoly;
use crate::polyfactor;
use crate::series::{theta_slices, Exponent, TruncatedSeries, RAMIFICATIONS};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use std::fmt;

/// Search range for lifting indicial roots to a/b.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftBounds {
    pub max_num: i64,
    pub dens: Vec<i64>,
}

impl Default for LiftBounds {
    fn default() -> Self {
        LiftBounds { max_num: 256, dens: RAMIFICATIONS.to_vec() }
    }
}

#[derive(Clone, PartialEq)]
pub enum Point<F: Field> {
    Finite(F::Elem),
    /// Roots of a squarefree polynomial without roots in the field.
    Algebraic(DensePoly<F>),
    Infinity,
}

impl<F: Field> fmt::Debug for Point<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(a) => write!(out, "Finite({a:?})"),
            Point::Algebraic(m) => write!(out, "Algebraic({m})"),
            Point::Infinity => write!(out, "Infinity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint<F: Field> {
    pub point: Point<F>,
    /// Multiplicity as a root of the leading coefficient (0 for infinity).
    pub multiplicity: usize,
    pub label: String,
}

/// Indicial exponents at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicialReport {
    pub point: String,
    pub indicial: String,
    /// Lifted exponents with multiplicities, ascending.
    pub exponents: Vec<(Exponent, usize)>,
    /// Factors of the indicial polynomial whose roots were not lifted.
    pub unlifted: Vec<String>,
}

impl IndicialReport {
    pub fn all_lifted(&self) -> bool {
        self.unlifted.is_empty()
    }

    /// Exponents with repetition, ascending.
    pub fn flat(&self) -> Vec<Exponent> {
        self.exponents.iter().flat_map(|(e, m)| std::iter::repeat(*e).take(*m)).collect()
    }

    /// `-2,0,2`, with `^m` for multiplicities above one.
    pub fn exponent_list(&self) -> String {
        let mut parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(e, m)| if *m > 1 { format!("{e}^{m}") } else { e.to_string() })
            .collect();
        parts.extend(self.unlifted.iter().map(|u| format!("?[{u}]")));
        parts.join(",")
    }
}

/// Result of the apparent-singularity test.
#[derive(Clone, Debug, PartialEq)]
pub struct ApparentCertificate {
    pub point: String,
    pub pass: bool,
    pub exponents: Vec<(Exponent, usize)>,
    pub checks: Vec<LogCheck>,
    pub reason: String,
}

/// Fields over which singular points can be enumerated and algebraic
/// points analysed.
pub trait LocalField: ScalarField + OperatorNormalization {
    /// Roots in the field with multiplicities, and the remaining squarefree
    /// factors with multiplicities.
    fn split_leading(&self, lc: &DensePoly<Self>) -> Result<(Vec<(Self::Elem, usize)>, Vec<(DensePoly<Self>, usize)>)>;

    fn point_label(&self, a: &Self::Elem) -> String;

    /// L translated to a root of m, over a finite extension.
    fn algebraic_local(l: &DiffOp<Self>, m: &DensePoly<Self>) -> Result<DiffOp<ExtensionField>>;
}

fn embed_operator(e: &ExtensionField, l: &DiffOp<PrimeModulus>) -> DiffOp<ExtensionField> {
    l.try_map(e, |c| Ok(e.embed(*c))).unwrap()
}

fn algebraic_over_prime(l: &DiffOp<PrimeModulus>, m: &DensePoly<PrimeModulus>) -> Result<DiffOp<ExtensionField>> {
    let f = *l.field();
    let factors = polyfactor::factor(m);
    let (g, _) = factors.first().ok_or_else(|| Error::invalid("constant minimal polynomial"))?;
    let e = ExtensionField::new(f, g.coeffs())?;
    let le = embed_operator(&e, l);
    Ok(translate_operator(&le, &e.generator()))
}

impl LocalField for PrimeModulus {
    fn split_leading(&self, lc: &DensePoly<Self>) -> Result<(Vec<(u64, usize)>, Vec<(DensePoly<Self>, usize)>)> {
        let mut roots = vec![];
        let mut rest = vec![];
        for (g, m) in polyfactor::factor(lc) {
            if g.deg() == 1 {
                roots.push((self.neg(&g.coeff(0)), m));
            } else {
                rest.push((g, m));
            }
        }
        Ok((roots, rest))
    }

    fn point_label(&self, a: &u64) -> String {
        let m = BigInt::from(self.p());
        match rational_reconstruct(&BigInt::from(*a), &m, &Bounds::symmetric(&m)) {
            Ok(r) => fmt_rational(&r),
            Err(_) => format!("{a} mod {}", self.p()),
        }
    }

    fn algebraic_local(l: &DiffOp<Self>, m: &DensePoly<Self>) -> Result<DiffOp<ExtensionField>> {
        algebraic_over_prime(l, m)
    }
}

/// Prime used to study rational operators at algebraic points and to find
/// rational roots.
pub fn auxiliary_prime() -> PrimeModulus {
    PrimeModulus::new(primes_below(1 << 61, 1)[0]).unwrap()
}

fn reduce_poly(p: &PrimeModulus, a: &DensePoly<Rationals>) -> Result<DensePoly<PrimeModulus>> {
    a.try_map(p, |c| p.from_ratio(c))
}

/// Squarefree decomposition in characteristic zero (Yun).
fn squarefree_char0(a: &DensePoly<Rationals>) -> Vec<(DensePoly<Rationals>, usize)> {
    let mut out = vec![];
    if a.deg() <= 0 {
        return out;
    }
    let da = a.derivative();
    let mut c = a.gcd(&da).unwrap();
    let mut w = a.div_exact(&c).unwrap();
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c).unwrap();
        let z = w.div_exact(&y).unwrap();
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        w = y;
        c = c.div_exact(&w).unwrap();
        i += 1;
    }
    out
}

impl LocalField for Rationals {
    fn split_leading(
        &self,
        lc: &DensePoly<Self>,
    ) -> Result<(Vec<(BigRational, usize)>, Vec<(DensePoly<Self>, usize)>)> {
        let p = auxiliary_prime();
        let m = BigInt::from(p.p());
        let mut roots = vec![];
        let mut rest = lc.monic();
        if let Ok(red) = reduce_poly(&p, lc) {
            for (r, _) in polyfactor::roots(&red) {
                let Ok(cand) = rational_reconstruct(&BigInt::from(r), &m, &Bounds::symmetric(&m)) else {
                    continue;
                };
                let mult = rest.root_multiplicity(&cand);
                if mult > 0 && mult != usize::MAX {
                    let lin = DensePoly::new(Rationals, vec![-cand.clone(), self.one()]);
                    for _ in 0..mult {
                        rest = rest.div_exact(&lin)?;
                    }
                    roots.push((cand, mult));
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok((roots, squarefree_char0(&rest)))
    }

    fn point_label(&self, a: &BigRational) -> String {
        fmt_rational(a)
    }

    /// The operator is reduced modulo a 61-bit prime and studied at a root of
    /// one irreducible factor of the minimal polynomial there. Exponents are
    /// rational and shared by conjugate roots.
    fn algebraic_local(l: &DiffOp<Self>, m: &DensePoly<Self>) -> Result<DiffOp<ExtensionField>> {
        let p = auxiliary_prime();
        let lp = l.try_map(&p, |c| p.from_ratio(c))?;
        let mp = reduce_poly(&p, m)?;
        if mp.deg() != m.deg() {
            return Err(Error::BadPrime { p: p.p(), reason: "minimal polynomial drops degree".into() });
        }
        algebraic_over_prime(&lp, &mp)
    }
}

pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Finite singular points (roots of the leading coefficient of the D_x
/// form) followed by infinity.
pub fn singular_points<F: LocalField>(l: &DiffOp<F>) -> Result<Vec<SingularPoint<F>>> {
    if l.is_zero() {
        return Err(Error::invalid("zero operator"));
    }
    let f = l.field();
    let lc = l.to_dx().remove_content().leading();
    let mut out = vec![];
    if lc.deg() > 0 {
        let (roots, rest) = f.split_leading(&lc)?;
        for (a, m) in roots {
            out.push(SingularPoint { label: f.point_label(&a), point: Point::Finite(a), multiplicity: m });
        }
        for (g, m) in rest {
            out.push(SingularPoint { label: format!("root of {g}"), point: Point::Algebraic(g), multiplicity: m });
        }
    }
    out.push(SingularPoint { point: Point::Infinity, multiplicity: 0, label: "inf".into() });
    Ok(out)
}

/// Point label as used in reports.
pub fn point_label<F: LocalField>(f: &F, p: &Point<F>) -> String {
    match p {
        Point::Finite(a) => f.point_label(a),
        Point::Algebraic(m) => format!("root of {m}"),
        Point::Infinity => "inf".into(),
    }
}

/// Indicial polynomial at x = 0 of an operator, in the variable ρ.
/// Fails when 0 is an irregular singular point.
pub fn indicial_at_zero<F: Field>(l: &DiffOp<F>) -> Result<DensePoly<F>> {
    let (t, _) = l.to_theta();
    let r = t.order();
    let vmin = t.coeffs().iter().filter_map(|c| c.valuation()).min().unwrap_or(0);
    if t.coeff(r).valuation() != Some(vmin) {
        return Err(Error::IrregularPoint("0 in local coordinates".into()));
    }
    let slices = theta_slices(l);
    Ok(DensePoly::new(l.field().clone(), slices[0].clone()))
}

/// Indicial polynomial at a rational point or at infinity.
pub fn indicial_polynomial<F: LocalField>(l: &DiffOp<F>, p: &Point<F>) -> Result<DensePoly<F>> {
    match p {
        Point::Finite(a) => indicial_at_zero(&translate_operator(l, a)),
        Point::Infinity => indicial_at_zero(&invert_operator(l)),
        Point::Algebraic(_) => Err(Error::Unsupported(
            "indicial polynomial at an algebraic point lives over an extension; use local_exponents".into(),
        )),
    }
}

/// Lift the roots of an indicial polynomial to a/b by testing candidates.
pub fn lift_exponents<F: Field>(
    p0: &DensePoly<F>,
    bounds: &LiftBounds,
) -> Result<(Vec<(Exponent, usize)>, DensePoly<F>)> {
    let f = p0.field().clone();
    let mut found: Vec<(Exponent, F::Elem)> = vec![];
    let mut rest = p0.clone();
    let mut out = vec![];
    for &b in &bounds.dens {
        for a in -bounds.max_num..=bounds.max_num {
            if a.gcd(&b) != 1 {
                continue;
            }
            let Ok(e) = f.from_small_ratio(a, b) else { continue };
            if !f.is_zero(&p0.eval(&e)) {
                continue;
            }
            let cand = Exponent::new(a, b);
            if let Some((other, _)) = found.iter().find(|(_, img)| *img == e) {
                return Err(Error::AmbiguousLift(format!("{cand} and {other} have the same image")));
            }
            let lin = DensePoly::new(f.clone(), vec![f.neg(&e), f.one()]);
            let mut mult = 0;
            while rest.deg() > 0 && f.is_zero(&rest.eval(&e)) {
                rest = rest.div_exact(&lin)?;
                mult += 1;
            }
            found.push((cand, e));
            out.push((cand, mult));
        }
    }
    out.sort();
    Ok((out, rest))
}

fn report_at_zero<G: Field>(t: &DiffOp<G>, label: String, bounds: &LiftBounds) -> Result<IndicialReport> {
    let p0 = indicial_at_zero(t)?;
    let (exponents, rest) = lift_exponents(&p0, bounds)?;
    let unlifted = if rest.deg() > 0 { vec![rest.to_string()] } else { vec![] };
    Ok(IndicialReport { point: label, indicial: p0.to_string(), exponents, unlifted })
}

fn logs_at_zero<G: Field>(t: &DiffOp<G>, rep: &IndicialReport, terms: usize) -> Result<(LogStructure, Vec<LogCheck>)> {
    if !rep.all_lifted() {
        return Err(Error::invalid(format!("unlifted exponents at {}: {}", rep.point, rep.unlifted.join(", "))));
    }
    let fs = formal_solutions_at_zero(t, &rep.exponents, terms)?;
    Ok((fs.log_structure(t.field()), fs.checks))
}

/// Exponents at any kind of point.
pub fn local_exponents<F: LocalField>(l: &DiffOp<F>, p: &Point<F>, bounds: &LiftBounds) -> Result<IndicialReport> {
    let label = point_label(l.field(), p);
    match p {
        Point::Finite(a) => report_at_zero(&translate_operator(l, a), label, bounds),
        Point::Infinity => report_at_zero(&invert_operator(l), label, bounds),
        Point::Algebraic(m) => report_at_zero(&F::algebraic_local(l, m)?, label, bounds),
    }
}

/// Exponents plus the log structure of the formal solutions (n terms per class).
pub fn formal_solutions<F: LocalField>(
    l: &DiffOp<F>,
    p: &Point<F>,
    terms: usize,
    bounds: &LiftBounds,
) -> Result<(IndicialReport, LogStructure, Vec<LogCheck>)> {
    let rep = local_exponents(l, p, bounds)?;
    let (ls, checks) = match p {
        Point::Finite(a) => logs_at_zero(&translate_operator(l, a), &rep, terms)?,
        Point::Infinity => logs_at_zero(&invert_operator(l), &rep, terms)?,
        Point::Algebraic(m) => logs_at_zero(&F::algebraic_local(l, m)?, &rep, terms)?,
    };
    Ok((rep, ls, checks))
}

/// A root of the leading coefficient is apparent when its exponents are
/// distinct nonnegative integers and no solution carries a logarithm.
pub fn apparent_check<F: LocalField>(l: &DiffOp<F>, p: &Point<F>, bounds: &LiftBounds) -> Result<ApparentCertificate> {
    let rep = local_exponents(l, p, bounds)?;
    let mut cert = ApparentCertificate {
        point: rep.point.clone(),
        pass: false,
        exponents: rep.exponents.clone(),
        checks: vec![],
        reason: String::new(),
    };
    if !rep.all_lifted() {
        cert.reason = format!("unlifted exponents {}", rep.unlifted.join(", "));
        return Ok(cert);
    }
    if let Some((e, m)) = rep.exponents.iter().find(|(e, m)| *m > 1 || !e.is_integer() || e.is_negative()) {
        cert.reason = format!("exponent {e} (multiplicity {m}) is not a simple nonnegative integer");
        return Ok(cert);
    }
    let top = rep.exponents.last().map_or(0, |e| e.0.to_integer()) as usize;
    let (_, ls, checks) = formal_solutions(l, p, top + 2, bounds)?;
    cert.checks = checks;
    if ls.max_log() > 0 || cert.checks.iter().any(|c| !c.vanishes) {
        cert.reason = format!("logarithmic solution, log power {}", ls.max_log());
        return Ok(cert);
    }
    cert.pass = true;
    cert.reason = "distinct nonnegative integer exponents, all log coefficients vanish".into();
    Ok(cert)
}

/// `point=<loc> exponents=<list> logs=<max power>`.
pub fn report_line(rep: &IndicialReport, logs: Option<&LogStructure>) -> String {
    let mut s = format!("point={} exponents={}", rep.point.replace(' ', ""), rep.exponent_list());
    if let Some(ls) = logs {
        s += &format!(" logs={}", ls.max_log());
    }
    s
}

/// Log-free formal solutions at x = 0, each normalised to leading coefficient 1.
pub fn log_free_solutions_at_zero<F: Field>(
    l: &DiffOp<F>,
    exponents: &[(Exponent, usize)],
    terms: usize,
) -> Result<Vec<TruncatedSeries<F>>> {
    let f = l.field();
    let fs = formal_solutions_at_zero(l, exponents, terms)?;
    let mut out = vec![];
    for (ci, cl) in fs.classes.iter().enumerate() {
        for c in 0..cl.params.len() {
            let y = fs.solution(ci, c);
            if y.iter().any(|yk| yk.iter().skip(1).any(|v| !f.is_zero(v))) {
                continue;
            }
            let coeffs: Vec<F::Elem> = y.iter().map(|yk| yk[0].clone()).collect();
            let s = TruncatedSeries::new(f.clone(), cl.base, coeffs)?.normalized();
            if !s.is_zero() {
                let li = f.inv(&s.coeff(0)).unwrap();
                out.push(s.scale(&li));
            }
        }
    }
    Ok(out)
}

/// Log-free solutions at x = 0 starting at a nonnegative integer exponent.
pub fn analytic_solutions<F: Field>(l: &DiffOp<F>, terms: usize, bounds: &LiftBounds) -> Result<Vec<TruncatedSeries<F>>> {
    let rep = report_at_zero(l, "0".into(), bounds)?;
    if !rep.all_lifted() {
        return Err(Error::invalid(format!("unlifted exponents at 0: {}", rep.unlifted.join(", "))));
    }
    let sols = log_free_solutions_at_zero(l, &rep.exponents, terms)?;
    Ok(sols.into_iter().filter(|s| s.offset().is_integer() && !s.offset().is_negative()).collect())
}

/// Basis of solutions at an ordinary point a, in t = x - a: the solution
/// with leading term t^j for j below the order.
pub fn ordinary_point_basis<F: Field>(l: &DiffOp<F>, a: &F::Elem, terms: usize) -> Result<Vec<TruncatedSeries<F>>> {
    let f = l.field();
    if f.is_zero(&l.to_dx().leading().eval(a)) {
        return Err(Error::invalid(format!("{} is a singular point", f.fmt_elem(a))));
    }
    let t = translate_operator(l, a);
    let exps: Vec<(Exponent, usize)> = (0..l.order() as i64).map(|j| (Exponent::from_integer(j), 1)).collect();
    let mut sols = log_free_solutions_at_zero(&t, &exps, terms)?;
    sols.sort_by_key(|s| s.offset());
    Ok(sols)
}

/// Σ_j (j+1)·y_j over an ordinary-point basis: a solution that lies in no
/// proper subspace spanned by basis elements.
pub fn generic_solution<F: Field>(l: &DiffOp<F>, a: &F::Elem, terms: usize) -> Result<TruncatedSeries<F>> {
    let f = l.field();
    let basis = ordinary_point_basis(l, a, terms)?;
    let zero = TruncatedSeries::zero(f.clone(), Exponent::from_integer(0), terms)?;
    let mut acc = zero.coeffs().to_vec();
    for (j, s) in basis.iter().enumerate() {
        let w = f.from_i64(j as i64 + 1);
        let start = s.offset().to_integer() as usize;
        for (k, c) in s.coeffs().iter().enumerate() {
            if start + k < terms {
                acc[start + k] = f.add(&acc[start + k], &f.mul(&w, c));
            }
        }
    }
    TruncatedSeries::new(f.clone(), Exponent::from_integer(0), acc)
}

/// First small positive integer that is an ordinary point of L.
pub fn ordinary_integer_point<F: Field>(l: &DiffOp<F>) -> Result<F::Elem> {
    let f = l.field();
    let lc = l.to_dx().leading();
    (1..64)
        .map(|a| f.from_i64(a))
        .find(|a| !f.is_zero(&lc.eval(a)))
        .ok_or_else(|| Error::invalid("no ordinary point among 1..64"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratio;
    use crate::op::Basis;

    fn fp() -> PrimeModulus {
        PrimeModulus::new(32749).unwrap()
    }

    fn ex(v: &[(i64, i64, usize)]) -> Vec<(Exponent, usize)> {
        v.iter().map(|&(a, b, m)| (Exponent::new(a, b), m)).collect()
    }

    #[test]
    fn singular_points_of_le() {
        let q = Rationals;
        let le = DiffOp::from_i64s(q, Basis::Dx, &[&[4], &[1, -16], &[0, 1, -16]]);
        let sp = singular_points(&le).unwrap();
        let labels: Vec<_> = sp.iter().map(|s| s.label.clone()).collect();
        assert_eq!(labels, vec!["0", "1/16", "inf"]);
        let c = DiffOp::from_i64s(q, Basis::Dx, &[&[1], &[2], &[3]]);
        assert_eq!(singular_points(&c).unwrap().len(), 1);
        // x(1 - 10x + 29x²) has no rational root besides 0
        let l = DiffOp::from_i64s(q, Basis::Dx, &[&[1], &[0, 1, -10, 29]]);
        let sp = singular_points(&l).unwrap();
        assert_eq!(sp.len(), 3);
        assert!(matches!(&sp[1].point, Point::Algebraic(m) if m.deg() == 2));
        // discriminant -16 is a square mod 32749, so the quadratic splits there
        let f = fp();
        let lp = DiffOp::from_i64s(f, Basis::Dx, &[&[1], &[0, 1, -10, 29]]);
        assert_eq!(singular_points(&lp).unwrap().len(), 4);
        // x·(x-a)^-1 exponent is algebraic
        let rep = local_exponents(&l, &sp[1].point, &LiftBounds::default()).unwrap();
        assert!(rep.exponents.is_empty() && rep.unlifted.len() == 1);
        // (q y')' = 0 has exponents 0, 0 at each root of q
        let lq = DiffOp::from_i64s(q, Basis::Dx, &[&[0], &[-10, 58], &[1, -10, 29]]);
        let sp = singular_points(&lq).unwrap();
        let (rep, ls, _) = formal_solutions(&lq, &sp[0].point, 4, &LiftBounds::default()).unwrap();
        assert_eq!(rep.exponents, ex(&[(0, 1, 2)]));
        assert_eq!(ls.max_log(), 1);
    }

    #[test]
    fn exponents_of_d2_and_l2() {
        let f = fp();
        let d2 = DiffOp::derivation_power(f, Basis::Dx, 2);
        let rep = local_exponents(&d2, &Point::Finite(0), &LiftBounds::default()).unwrap();
        assert_eq!(rep.exponents, ex(&[(0, 1, 1), (1, 1, 1)]));
        // L2 = x(1-16x)D² - 2(1+8x)D + 4
        let l2 = DiffOp::from_i64s(f, Basis::Dx, &[&[4], &[-2, -16], &[0, 1, -16]]);
        let rep = local_exponents(&l2, &Point::Finite(0), &LiftBounds::default()).unwrap();
        assert_eq!(rep.exponents, ex(&[(0, 1, 1), (3, 1, 1)]));
    }

    #[test]
    fn theta_squared_has_a_log() {
        let f = fp();
        let t2 = DiffOp::derivation_power(f, Basis::Theta, 2);
        let (rep, ls, _) = formal_solutions(&t2, &Point::Finite(0), 5, &LiftBounds::default()).unwrap();
        assert_eq!(rep.exponents, ex(&[(0, 1, 2)]));
        assert_eq!(ls.max_log(), 1);
        assert_eq!(report_line(&rep, Some(&ls)), "point=0 exponents=0^2 logs=1");
        let cert = apparent_check(&t2, &Point::Finite(0), &LiftBounds::default()).unwrap();
        assert!(!cert.pass);
        let d2 = DiffOp::derivation_power(f, Basis::Dx, 2);
        let (_, ls, _) = formal_solutions(&d2, &Point::Finite(0), 5, &LiftBounds::default()).unwrap();
        assert_eq!(ls.max_log(), 0);
        assert_eq!(ls.solution_count(), 2);
    }

    #[test]
    fn log_solutions_satisfy_the_operator() {
        // θ²(θ-2)(θ-1/2) - x(θ+1)^3... a Fuchsian operator with a resonant class
        let q = Rationals;
        let mut coeffs = vec![];
        // P_0(ρ) = ρ²(ρ-2)(2ρ-1), P_1(ρ) = (ρ+1)^4
        let p0 = DensePoly::from_i64s(q, &[0, 0, 1]) * DensePoly::from_i64s(q, &[-2, 1]);
        let p0 = p0 * DensePoly::from_i64s(q, &[-1, 2]);
        let p1 = DensePoly::from_i64s(q, &[1, 1]).pow(4);
        for j in 0..=4 {
            coeffs.push(DensePoly::new(q, vec![p0.coeff(j), p1.coeff(j)]));
        }
        let l = DiffOp::new(q, Basis::Theta, coeffs);
        let exps = ex(&[(0, 1, 2), (1, 2, 1), (2, 1, 1)]);
        let fs = formal_solutions_at_zero(&l, &exps, 12).unwrap();
        let ls = fs.log_structure(&q);
        assert_eq!(ls.solution_count(), 4);
        assert!(ls.max_log() >= 1);
        for (ci, cl) in fs.classes.iter().enumerate() {
            for c in 0..cl.params.len() {
                let y = fs.solution(ci, c);
                let (_, r) = apply_to_log_series(&l, cl.base, &y).unwrap();
                for row in r.iter().take(y.len()) {
                    assert!(row.iter().all(|v| q.is_zero(v)));
                }
            }
        }
    }

    #[test]
    fn infinity_and_translation() {
        let q = Rationals;
        let le = DiffOp::from_i64s(q, Basis::Dx, &[&[4], &[1, -16], &[0, 1, -16]]);
        let b = LiftBounds::default();
        // E(16x): exponents at 1/16 are 0 and 1; at infinity -1/2 twice... via θ
        let at16 = local_exponents(&le, &Point::Finite(ratio(1, 16)), &b).unwrap();
        assert_eq!(at16.flat().len(), 2);
        let inf = local_exponents(&le, &Point::Infinity, &b).unwrap();
        assert_eq!(inf.flat().len(), 2);
        // left multiplication by a polynomial does not move exponents
        let scaled = le.mul_poly_left(&DensePoly::from_i64s(q, &[3, 0, 5]));
        assert_eq!(local_exponents(&scaled, &Point::Finite(ratio(1, 16)), &b).unwrap().exponents, at16.exponents);
    }

    #[test]
    fn ordinary_basis_of_d2() {
        let f = fp();
        let d2 = DiffOp::derivation_power(f, Basis::Dx, 2);
        let b = ordinary_point_basis(&d2, &3, 6).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].coeffs()[..2], [1, 0]);
        assert_eq!(b[1].offset(), Exponent::from_integer(1));
        let g = generic_solution(&d2, &3, 6).unwrap();
        assert_eq!(g.coeffs(), &[1, 2, 0, 0, 0, 0]);
        let l2 = DiffOp::from_i64s(f, Basis::Dx, &[&[4], &[-2, -16], &[0, 1, -16]]);
        let an = analytic_solutions(&l2, 10, &LiftBounds::default()).unwrap();
        assert!(!an.is_empty());
        for s in &an {
            assert!(crate::series::apply_operator(&l2, s).unwrap().is_zero());
        }
    }
}
