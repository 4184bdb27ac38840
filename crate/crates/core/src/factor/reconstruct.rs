use crate::crt::{crt_pairs, rational_reconstruct, Bounds};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeModulus, Rationals, ScalarField};
use crate::linalg::canonical_basis;
use crate::local::{
    apparent_check, fmt_rational, indicial_polynomial, local_exponents, singular_points, ApparentCertificate,
    LiftBounds, Point,
};
use crate::op::{Basis, DiffOp};
use crate::poly::DensePoly;
use crate::polyfactor;
use crate::series::{parse_exponent, Exponent};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Images of one operator modulo several primes, each in monic-normalised
/// D_x form (leading coefficient of the leading polynomial equal to 1).
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorResidues {
    ops: Vec<DiffOp<PrimeModulus>>,
}

impl OperatorResidues {
    pub fn new(ops: Vec<DiffOp<PrimeModulus>>) -> Result<Self> {
        let ops: Vec<_> = ops.iter().map(|o| o.monic_normalized()).collect();
        let first = ops.first().ok_or(Error::EmptyInput)?;
        if first.is_zero() {
            return Err(Error::invalid("zero operator residue"));
        }
        let shape = |o: &DiffOp<PrimeModulus>| o.coeffs().iter().map(|c| c.deg()).collect::<Vec<_>>();
        let s0 = shape(first);
        for (i, o) in ops.iter().enumerate() {
            let p = o.field().p();
            if ops[..i].iter().any(|q| q.field().p() == p) {
                return Err(Error::NonCoprimeModuli(p.to_string(), p.to_string()));
            }
            if shape(o) != s0 {
                return Err(Error::BadPrime {
                    p,
                    reason: format!("coefficient degrees {:?} differ from {:?} modulo {}", shape(o), s0, first.field().p()),
                });
            }
        }
        Ok(OperatorResidues { ops })
    }

    /// Reduce an exact operator modulo each prime.
    pub fn from_operator(l: &DiffOp<Rationals>, primes: &[PrimeModulus]) -> Result<Self> {
        let lead = l.to_dx().leading();
        let mut ops = vec![];
        for p in primes {
            let r = l.to_dx().try_map(p, |c| p.from_ratio(c))?;
            if r.leading().deg() != lead.deg() {
                return Err(Error::BadPrime { p: p.p(), reason: "leading coefficient drops degree".into() });
            }
            ops.push(r);
        }
        Self::new(ops)
    }

    pub fn ops(&self) -> &[DiffOp<PrimeModulus>] {
        &self.ops
    }

    pub fn primes(&self) -> Vec<PrimeModulus> {
        self.ops.iter().map(|o| *o.field()).collect()
    }

    pub fn modulus(&self) -> BigInt {
        self.ops.iter().fold(BigInt::one(), |m, o| m * o.field().p())
    }

    fn order(&self) -> usize {
        self.ops[0].order()
    }

    /// Residues of coefficient x^j of D^k across primes.
    fn coefficient(&self, k: usize, j: usize) -> Vec<(BigInt, BigInt)> {
        self.ops.iter().map(|o| (BigInt::from(o.coeff(k).coeff(j)), BigInt::from(o.field().p()))).collect()
    }
}

/// Location of an exponent constraint.
#[derive(Clone, Debug, PartialEq)]
pub enum ConstraintPoint {
    Finite(BigRational),
    Infinity,
}

/// "ρ is a local exponent of the operator at this point".
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentConstraint {
    pub point: ConstraintPoint,
    pub exponent: Exponent,
}

impl ExponentConstraint {
    pub fn at(point: BigRational, exponent: Exponent) -> Self {
        ExponentConstraint { point: ConstraintPoint::Finite(point), exponent }
    }

    pub fn at_infinity(exponent: Exponent) -> Self {
        ExponentConstraint { point: ConstraintPoint::Infinity, exponent }
    }

    /// `<point>:<exponent>`, e.g. `1/16:-15/4` or `inf:5/2`.
    pub fn parse(s: &str) -> Option<Self> {
        let (pt, e) = s.split_once(':')?;
        let exponent = parse_exponent(e.trim())?;
        let pt = pt.trim();
        if pt == "inf" {
            return Some(Self::at_infinity(exponent));
        }
        let q = Rationals.parse_elem(pt)?;
        Some(Self::at(q, exponent))
    }
}

impl fmt::Display for ExponentConstraint {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.point {
            ConstraintPoint::Finite(a) => write!(out, "{}:{}", fmt_rational(a), self.exponent),
            ConstraintPoint::Infinity => write!(out, "inf:{}", self.exponent),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReconstructionReport {
    /// Primitive integer operator in D_x form.
    pub operator: DiffOp<Rationals>,
    /// Coefficients obtained from rational reconstruction.
    pub reconstructed: usize,
    /// Coefficients solved from the exponent constraints instead.
    pub fixed_by_constraints: usize,
    pub primes: Vec<u64>,
    /// Apparent-singularity certificates at irrational roots of the leading
    /// coefficient whose exponents are nonnegative integers.
    pub apparent: Vec<ApparentCertificate>,
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn falling_q(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| acc * (x - BigRational::from_integer(BigInt::from(i))))
}

fn ratio_of(e: Exponent) -> BigRational {
    BigRational::new(BigInt::from(*e.numer()), BigInt::from(*e.denom()))
}

/// Indicial functional: w[k][j] such that Σ w[k][j]·c_{k,j} is the
/// indicial polynomial at the constraint point evaluated at ρ, for
/// operators with the given valuations at the point and degrees.
fn indicial_functional(
    c: &ExponentConstraint,
    vals: &[Option<usize>],
    degs: &[Option<usize>],
    lens: &[usize],
) -> Vec<Vec<BigRational>> {
    let rho = ratio_of(c.exponent);
    let r = lens.len();
    let mut w: Vec<Vec<BigRational>> = lens.iter().map(|&n| vec![BigRational::zero(); n]).collect();
    match &c.point {
        ConstraintPoint::Finite(a) => {
            let v = (0..r).filter_map(|k| vals[k].map(|x| x as i64 - k as i64)).min().unwrap_or(0);
            for (k, wk) in w.iter_mut().enumerate() {
                let m = v + k as i64;
                if m < 0 {
                    continue;
                }
                let m = m as usize;
                let ff = falling_q(&rho, k);
                for (j, wkj) in wk.iter_mut().enumerate().skip(m) {
                    let apow = num_traits::pow::pow(a.clone(), j - m);
                    *wkj = BigRational::from_integer(binom(j, m)) * apow * &ff;
                }
            }
        }
        ConstraintPoint::Infinity => {
            let top = (0..r).filter_map(|k| degs[k].map(|d| d as i64 - k as i64)).max().unwrap_or(0);
            let s = -rho;
            for (k, wk) in w.iter_mut().enumerate() {
                let j = top + k as i64;
                if j >= 0 && (j as usize) < wk.len() {
                    wk[j as usize] = falling_q(&s, k);
                }
            }
        }
    }
    w
}

/// Linear parametrisation c_{k,j} = Σ_u T[k][j][u]·x_u + base[k][j] of the
/// coefficient vector by the unknowns x.
struct Parametrisation {
    t: Vec<Vec<Vec<(usize, BigRational)>>>,
    base: Vec<Vec<BigRational>>,
    unknowns: usize,
}

fn shortfall(k: usize, j: usize, m: &BigInt, bounds: &Bounds, nprimes: usize) -> Error {
    Error::ReconstructionFailure(format!(
        "coefficient x^{j} of D^{k}: no fraction with |num| <= {} and den <= {}; modulus product has {} bits from {} primes, more primes are needed",
        bounds.num,
        bounds.den,
        m.bits(),
        nprimes
    ))
}

/// Solve the unknowns: free ones by reconstruction of their residues, pivots
/// from the constraint system.
fn solve_unknowns(
    residues: &[Vec<(BigInt, BigInt)>],
    labels: &[(usize, usize)],
    bounds_of: &dyn Fn(&BigInt) -> Bounds,
    system: &[(usize, Vec<BigRational>, BigRational)],
    nprimes: usize,
) -> Result<(Vec<BigRational>, usize)> {
    let n = residues.len();
    let pivots: Vec<usize> = system.iter().map(|s| s.0).collect();
    let mut x = vec![BigRational::zero(); n];
    let mut count = 0;
    for u in 0..n {
        if pivots.contains(&u) {
            continue;
        }
        let (v, m) = crt_pairs(&residues[u])?;
        let b = bounds_of(&m);
        x[u] = rational_reconstruct(&v, &m, &b).map_err(|_| shortfall(labels[u].0, labels[u].1, &m, &b, nprimes))?;
        count += 1;
    }
    for (pc, row, cst) in system {
        let mut v = -cst.clone();
        for (j, a) in row.iter().enumerate() {
            if j != *pc && !a.is_zero() {
                v -= a * &x[j];
            }
        }
        x[*pc] = v;
    }
    Ok((x, count))
}

/// Coefficient-wise CRT and rational reconstruction of the monic operator.
/// Constraints first fix some coefficients through exact linear relations.
pub fn reconstruct_operator(res: &OperatorResidues, constraints: &[ExponentConstraint]) -> Result<ReconstructionReport> {
    let r = res.order();
    let op0 = &res.ops[0];
    let lens: Vec<usize> = (0..=r).map(|k| op0.coeff(k).coeffs().len()).collect();
    // unknowns: every coefficient except the leading 1
    let mut t = vec![];
    let mut base = vec![];
    let mut labels = vec![];
    let mut resid = vec![];
    for k in 0..=r {
        let mut tk = vec![];
        let mut bk = vec![];
        for j in 0..lens[k] {
            if k == r && j + 1 == lens[k] {
                tk.push(vec![]);
                bk.push(BigRational::one());
            } else {
                tk.push(vec![(labels.len(), BigRational::one())]);
                bk.push(BigRational::zero());
                labels.push((k, j));
                resid.push(res.coefficient(k, j));
            }
        }
        t.push(tk);
        base.push(bk);
    }
    let param = Parametrisation { t, base, unknowns: labels.len() };
    let (vals, degs) = shape_data(op0, constraints);
    let system = constraint_system(&param, constraints, &vals, &degs)?;
    let (x, count) = solve_unknowns(&resid, &labels, &Bounds::symmetric, &system, res.ops.len())?;
    let coeffs: Vec<DensePoly<Rationals>> = (0..=r)
        .map(|k| {
            let v = (0..lens[k])
                .map(|j| match param.t[k][j].first() {
                    Some((u, _)) => x[*u].clone(),
                    None => param.base[k][j].clone(),
                })
                .collect();
            DensePoly::new(Rationals, v)
        })
        .collect();
    let op = DiffOp::new(Rationals, Basis::Dx, coeffs).normalize();
    finish(op, res, constraints, count, system.len())
}

/// Valuations at each finite constraint point and degrees, per coefficient,
/// read from the first residue.
fn shape_data(op0: &DiffOp<PrimeModulus>, constraints: &[ExponentConstraint]) -> (Vec<Vec<Option<usize>>>, Vec<Option<usize>>) {
    let p = *op0.field();
    let degs: Vec<Option<usize>> = op0.coeffs().iter().map(|c| c.degree()).collect();
    let vals = constraints
        .iter()
        .map(|c| match &c.point {
            ConstraintPoint::Finite(a) => {
                let ap = p.from_ratio(a).unwrap_or(0);
                op0.coeffs()
                    .iter()
                    .map(|c| if c.is_zero() { None } else { Some(c.root_multiplicity(&ap)) })
                    .collect()
            }
            ConstraintPoint::Infinity => vec![None; op0.coeffs().len()],
        })
        .collect();
    (vals, degs)
}

/// Solve the constraints for some unknowns. Returns the reduced system as
/// rows (pivot, coefficients over all unknowns, constant) meaning
/// x_pivot = −constant − Σ_j coeff_j·x_j over the other unknowns.
fn constraint_system(
    param: &Parametrisation,
    constraints: &[ExponentConstraint],
    vals: &[Vec<Option<usize>>],
    degs: &[Option<usize>],
) -> Result<Vec<(usize, Vec<BigRational>, BigRational)>> {
    let lens: Vec<usize> = param.base.iter().map(|b| b.len()).collect();
    let n = param.unknowns;
    let mut rows = vec![];
    for (c, v) in constraints.iter().zip(vals) {
        let w = indicial_functional(c, v, degs, &lens);
        let mut row = vec![BigRational::zero(); n + 1];
        for k in 0..lens.len() {
            for j in 0..lens[k] {
                if w[k][j].is_zero() {
                    continue;
                }
                row[n] += &w[k][j] * &param.base[k][j];
                for (u, tv) in &param.t[k][j] {
                    row[*u] += &w[k][j] * tv;
                }
            }
        }
        if row.iter().any(|v| !v.is_zero()) {
            rows.push(row);
        }
    }
    let rr = canonical_basis(&Rationals, &rows);
    let mut out = vec![];
    for row in rr {
        let Some(pc) = row.iter().position(|v| !v.is_zero()) else { continue };
        if pc == n {
            return Err(Error::ReconstructionFailure(
                "exponent constraints are inconsistent with the operator shape".into(),
            ));
        }
        out.push((pc, row[..n].to_vec(), row[n].clone()));
    }
    Ok(out)
}

fn reduce_check(op: &DiffOp<Rationals>, res: &OperatorResidues) -> Result<()> {
    for (i, p) in res.primes().iter().enumerate() {
        let red = op.try_map(p, |c| p.from_ratio(c))?.monic_normalized();
        if red != res.ops[i] {
            return Err(Error::ReconstructionFailure(format!(
                "reconstructed operator does not reduce to the residue modulo {}",
                p.p()
            )));
        }
    }
    Ok(())
}

fn finish(
    op: DiffOp<Rationals>,
    res: &OperatorResidues,
    constraints: &[ExponentConstraint],
    reconstructed: usize,
    fixed: usize,
) -> Result<ReconstructionReport> {
    reduce_check(&op, res)?;
    for c in constraints {
        let point = match &c.point {
            ConstraintPoint::Finite(a) => Point::Finite(a.clone()),
            ConstraintPoint::Infinity => Point::Infinity,
        };
        let ip = indicial_polynomial(&op, &point)?;
        if !ip.eval(&ratio_of(c.exponent)).is_zero() {
            return Err(Error::ReconstructionFailure(format!("constraint {c} does not hold")));
        }
    }
    let apparent = apparent_certificates(&op)?;
    if let Some(bad) = apparent.iter().find(|a| !a.pass) {
        return Err(Error::ReconstructionFailure(format!(
            "apparent singularity check failed at {}: {}",
            bad.point, bad.reason
        )));
    }
    Ok(ReconstructionReport {
        operator: op,
        reconstructed,
        fixed_by_constraints: fixed,
        primes: res.primes().iter().map(|p| p.p()).collect(),
        apparent,
    })
}

/// apparent_check at every irrational root of the leading coefficient whose
/// local exponents are nonnegative integers.
pub fn apparent_certificates(op: &DiffOp<Rationals>) -> Result<Vec<ApparentCertificate>> {
    let bounds = LiftBounds::default();
    let mut out = vec![];
    for sp in singular_points(op)? {
        if !matches!(sp.point, Point::Algebraic(_)) {
            continue;
        }
        let rep = local_exponents(op, &sp.point, &bounds)?;
        if !rep.all_lifted() || rep.exponents.iter().any(|(e, _)| !e.is_integer() || e.is_negative()) {
            continue;
        }
        out.push(apparent_check(op, &sp.point, &bounds)?);
    }
    Ok(out)
}

/// Rational roots n/d of the leading coefficient, found modulo the first
/// prime and confirmed modulo all others, as factors n − d·x (or x).
fn linear_factors(res: &OperatorResidues) -> Vec<(BigRational, DensePoly<Rationals>)> {
    let p0 = res.ops[0].field();
    let m = BigInt::from(p0.p());
    let mut out = vec![];
    for (root, _) in polyfactor::roots(&res.ops[0].leading()) {
        let Ok(a) = rational_reconstruct(&BigInt::from(root), &m, &Bounds::symmetric(&m)) else { continue };
        let everywhere = res.ops.iter().all(|o| {
            let p = o.field();
            p.from_ratio(&a).map_or(false, |ap| p.is_zero(&o.leading().eval(&ap)))
        });
        if !everywhere {
            continue;
        }
        let lin = if a.is_zero() {
            DensePoly::new(Rationals, vec![BigRational::zero(), BigRational::one()])
        } else {
            let (n, d) = (a.numer().clone(), a.denom().clone());
            let s = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
            DensePoly::new(
                Rationals,
                vec![BigRational::from_integer(&s * n), BigRational::from_integer(-(&s * d))],
            )
        };
        out.push((a, lin));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

fn reduce_poly(p: &PrimeModulus, a: &DensePoly<Rationals>) -> DensePoly<PrimeModulus> {
    a.try_map(p, |c| p.from_ratio(c)).unwrap()
}

/// Reconstruction that exploits the singularity structure: rational roots of
/// the leading coefficient are divided out of every coefficient, the
/// remaining leading factor is reconstructed and made integral, and the
/// other cofactors are reconstructed as integers. This needs far fewer
/// primes than `reconstruct_operator` when the leading coefficient is large.
/// The integral leading coefficient is assumed primitive.
pub fn reconstruct_structured(
    res: &OperatorResidues,
    constraints: &[ExponentConstraint],
) -> Result<ReconstructionReport> {
    let r = res.order();
    let nprimes = res.ops.len();
    let primes = res.primes();
    let lins = linear_factors(res);
    // multiplicity of each linear factor in each coefficient, over all primes
    let mut lfac: Vec<DensePoly<Rationals>> = vec![];
    for k in 0..=r {
        let mut acc = DensePoly::one(Rationals);
        if res.ops[0].coeff(k).is_zero() {
            lfac.push(acc);
            continue;
        }
        for (a, lin) in &lins {
            let mult = res
                .ops
                .iter()
                .map(|o| o.coeff(k).root_multiplicity(&o.field().from_ratio(a).unwrap()))
                .min()
                .unwrap();
            acc = &acc * &lin.pow(mult as u32);
        }
        lfac.push(acc);
    }
    // cofactor residues
    let mut cof: Vec<Vec<DensePoly<PrimeModulus>>> = vec![];
    for (o, p) in res.ops.iter().zip(&primes) {
        let v = (0..=r)
            .map(|k| o.coeff(k).div_exact(&reduce_poly(p, &lfac[k])))
            .collect::<Result<Vec<_>>>()?;
        cof.push(v);
    }
    // leading cofactor: rational reconstruction, then primitive integral
    // made monic first, so that the lead of the linear part does not
    // inflate its denominators
    let lead_len = cof[0][r].coeffs().len();
    let lin_lead = lfac[r].lead();
    let mut lead = vec![];
    for j in 0..lead_len {
        let pairs: Vec<_> = cof
            .iter()
            .zip(&primes)
            .map(|(c, p)| {
                let v = p.mul(&c[r].coeff(j), &p.from_ratio(&lin_lead).unwrap());
                (BigInt::from(v), BigInt::from(p.p()))
            })
            .collect();
        let (v, m) = crt_pairs(&pairs)?;
        let b = Bounds::symmetric(&m);
        lead.push(rational_reconstruct(&v, &m, &b).map_err(|_| shortfall(r, j, &m, &b, nprimes))?);
    }
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for c in &lead {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    let mut scale = BigRational::new(den, num);
    if lead.last().unwrap().is_negative() {
        scale = -scale;
    }
    let lead_int = DensePoly::new(Rationals, lead.iter().map(|c| c * &scale).collect());
    let leading = &lfac[r] * &lead_int;
    let lambda = leading.lead();
    // remaining cofactors are integers after scaling by λ
    let mut t = vec![];
    let mut base = vec![];
    let mut labels = vec![];
    let mut resid = vec![];
    let mut cof_len = vec![];
    for k in 0..r {
        let n = cof.iter().map(|c| c[k].coeffs().len()).max().unwrap();
        cof_len.push(n);
        let lk = lfac[k].coeffs();
        let full = if n == 0 { 0 } else { n + lk.len() - 1 };
        let mut tk: Vec<Vec<(usize, BigRational)>> = vec![vec![]; full];
        let first = labels.len();
        for i in 0..n {
            labels.push((k, i));
            let pairs: Vec<_> = cof
                .iter()
                .zip(&primes)
                .map(|(c, p)| {
                    let l = p.from_ratio(&lambda).unwrap();
                    (BigInt::from(p.mul(&l, &c[k].coeff(i))), BigInt::from(p.p()))
                })
                .collect();
            resid.push(pairs);
            for (d, lc) in lk.iter().enumerate() {
                tk[i + d].push((first + i, lc.clone()));
            }
        }
        t.push(tk);
        base.push(vec![BigRational::zero(); full]);
    }
    let lc = leading.coeffs().to_vec();
    t.push(vec![vec![]; lc.len()]);
    base.push(lc);
    let param = Parametrisation { t, base, unknowns: labels.len() };
    let (vals, degs) = shape_data(&res.ops[0], constraints);
    let system = constraint_system(&param, constraints, &vals, &degs)?;
    let (x, count) = solve_unknowns(&resid, &labels, &Bounds::integer, &system, nprimes)?;
    let mut coeffs = vec![];
    for k in 0..r {
        let c = DensePoly::new(Rationals, x[labels.iter().position(|l| l.0 == k).unwrap_or(0)..][..cof_len[k]].to_vec());
        coeffs.push(&lfac[k] * &c);
    }
    coeffs.push(leading);
    let op = DiffOp::new(Rationals, Basis::Dx, coeffs);
    if op.coeffs().iter().flat_map(|c| c.coeffs()).any(|c| !c.is_integer()) {
        return Err(Error::ReconstructionFailure("constraint-solved coefficients are not integers".into()));
    }
    finish(op.normalize(), res, constraints, count + lead_len, system.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratio;

    fn primes(ps: &[u64]) -> Vec<PrimeModulus> {
        ps.iter().map(|&p| PrimeModulus::new(p).unwrap()).collect()
    }

    #[test]
    fn single_prime_theta_minus_two() {
        let l = DiffOp::from_i64s(Rationals, Basis::Theta, &[&[-2], &[1]]);
        let res = OperatorResidues::from_operator(&l, &primes(&[32749])).unwrap();
        let rep = reconstruct_operator(&res, &[]).unwrap();
        assert_eq!(rep.operator, l.normalize());
    }

    #[test]
    fn shape_mismatch_is_a_bad_prime() {
        let a = DiffOp::from_i64s(PrimeModulus::new(7).unwrap(), Basis::Dx, &[&[1, 1], &[1]]);
        let b = DiffOp::from_i64s(PrimeModulus::new(11).unwrap(), Basis::Dx, &[&[1], &[1]]);
        assert!(matches!(OperatorResidues::new(vec![a, b]), Err(Error::BadPrime { .. })));
    }

    #[test]
    fn too_few_primes_names_the_coefficient() {
        let l = DiffOp::from_i64s(Rationals, Basis::Dx, &[&[123456789, 1], &[7, 0, 3]]);
        let res = OperatorResidues::from_operator(&l, &primes(&[32749])).unwrap();
        let err = reconstruct_operator(&res, &[]).unwrap_err();
        assert!(matches!(&err, Error::ReconstructionFailure(m) if m.contains("D^0")), "{err}");
        let res = OperatorResidues::from_operator(&l, &primes(&[32749, 32719, 32717, 32713])).unwrap();
        assert_eq!(reconstruct_operator(&res, &[]).unwrap().operator, l.normalize());
    }

    #[test]
    fn constraints_fix_coefficients() {
        // x(1-16x)D² + (1-32x)D - 4 has exponents 0,0 at 0 and 1/2,1/2 at infinity
        let l = DiffOp::from_i64s(Rationals, Basis::Dx, &[&[-4], &[1, -32], &[0, 1, -16]]);
        let ps = primes(&[32749, 32719]);
        let res = OperatorResidues::from_operator(&l, &ps).unwrap();
        let cs = vec![
            ExponentConstraint::at(ratio(0, 1), Exponent::from_integer(0)),
            ExponentConstraint::at_infinity(Exponent::new(1, 2)),
        ];
        let rep = reconstruct_operator(&res, &cs).unwrap();
        assert_eq!(rep.operator, l.normalize());
        // ρ = 0 at x = 0 holds for every operator of this shape
        assert_eq!(rep.fixed_by_constraints, 1);
        let rep = reconstruct_structured(&res, &cs).unwrap();
        assert_eq!(rep.operator, l.normalize());
        let bad = vec![ExponentConstraint::at_infinity(Exponent::new(1, 4))];
        assert!(reconstruct_operator(&res, &bad).is_err());
        assert_eq!(ExponentConstraint::parse("1/16:-15/4").unwrap().to_string(), "1/16:-15/4");
        assert_eq!(ExponentConstraint::parse("inf:5/2").unwrap(), ExponentConstraint::at_infinity(Exponent::new(5, 2)));
    }
}
