//! Linear differential operators with polynomial coefficients.

mod algebra;
mod io;
mod sympow;
mod transform;

pub use algebra::{gcrd, lclm, lclm_all, op_multiply, right_divide, RatOp};
pub use io::{parse_operator, write_operator, AnyOperator};
pub use sympow::symmetric_power;
pub use transform::{invert_operator, translate_operator};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeModulus, Rationals};
use crate::poly::DensePoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Which derivation the coefficient list refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// d/dx
    Dx,
    /// x·d/dx
    Theta,
}

impl Basis {
    pub fn tag(&self) -> &'static str {
        match self {
            Basis::Dx => "Dx",
            Basis::Theta => "theta",
        }
    }
}

/// L = Σ_k coeffs[k](x)·∂^k with ∂ = D_x or θ, coefficients on the left.
#[derive(Clone, PartialEq)]
pub struct DiffOp<F: Field> {
    field: F,
    basis: Basis,
    coeffs: Vec<DensePoly<F>>,
}

impl<F: Field> DiffOp<F> {
    pub fn new(field: F, basis: Basis, mut coeffs: Vec<DensePoly<F>>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp { field, basis, coeffs }
    }

    pub fn zero(field: F, basis: Basis) -> Self {
        DiffOp { field, basis, coeffs: vec![] }
    }

    /// Build from integer coefficient lists, lowest degree first.
    pub fn from_i64s(field: F, basis: Basis, cs: &[&[i64]]) -> Self {
        let coeffs = cs.iter().map(|c| DensePoly::from_i64s(field.clone(), c)).collect();
        Self::new(field, basis, coeffs)
    }

    /// ∂^k.
    pub fn derivation_power(field: F, basis: Basis, k: usize) -> Self {
        let mut coeffs = vec![DensePoly::zero(field.clone()); k];
        coeffs.push(DensePoly::one(field.clone()));
        Self::new(field, basis, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[DensePoly<F>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> DensePoly<F> {
        self.coeffs.get(k).cloned().unwrap_or_else(|| DensePoly::zero(self.field.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order; the zero operator reports 0.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Maximal coefficient degree (0 for the zero operator).
    pub fn degree(&self) -> usize {
        self.coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    pub fn leading(&self) -> DensePoly<F> {
        self.coeffs.last().cloned().unwrap_or_else(|| DensePoly::zero(self.field.clone()))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(self.field.clone(), self.basis, self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_poly_left(&self, p: &DensePoly<F>) -> Self {
        Self::new(self.field.clone(), self.basis, self.coeffs.iter().map(|c| c * p).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Ok(Self::new(self.field.clone(), self.basis, v))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        Ok(Self::new(self.field.clone(), self.basis, v))
    }

    pub(crate) fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DomainMismatch(format!(
                "{} vs {}",
                self.field.describe(),
                other.field.describe()
            )));
        }
        if self.basis != other.basis {
            return Err(Error::DomainMismatch("operators in different bases".into()));
        }
        Ok(())
    }

    /// Same operator in the D_x basis (exact; θ^j = Σ S(j,i) x^i D^i).
    pub fn to_dx(&self) -> Self {
        if self.basis == Basis::Dx || self.is_zero() {
            return DiffOp { basis: Basis::Dx, ..self.clone() };
        }
        let f = &self.field;
        let r = self.order();
        let s2 = stirling2(f, r);
        let mut out = vec![DensePoly::zero(f.clone()); r + 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            for i in 0..=j {
                if f.is_zero(&s2[j][i]) {
                    continue;
                }
                let t = a.scale(&s2[j][i]).shift(i);
                out[i] = &out[i] + &t;
            }
        }
        Self::new(f.clone(), Basis::Dx, out)
    }

    /// θ-basis form of x^m·L with the least m >= 0 making all coefficients
    /// polynomial. Returns (operator, m).
    pub fn to_theta(&self) -> (Self, usize) {
        if self.basis == Basis::Theta || self.is_zero() {
            return (DiffOp { basis: Basis::Theta, ..self.clone() }, 0);
        }
        let f = &self.field;
        let r = self.order();
        let m = self
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(k, c)| c.valuation().map(|v| k as i64 - v as i64))
            .max()
            .unwrap_or(0)
            .max(0) as usize;
        let s1 = falling_coeffs(f, r);
        let mut out = vec![DensePoly::zero(f.clone()); r + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // c·x^(m-k)·falling_k(θ)
            let cx = if m >= k { c.shift(m - k) } else { c.unshift(k - m) };
            for j in 0..=k {
                if f.is_zero(&s1[k][j]) {
                    continue;
                }
                out[j] = &out[j] + &cx.scale(&s1[k][j]);
            }
        }
        (Self::new(f.clone(), Basis::Theta, out), m)
    }

    pub fn in_basis(&self, basis: Basis) -> Self {
        match basis {
            Basis::Dx => self.to_dx(),
            Basis::Theta => self.to_theta().0,
        }
    }

    /// Coefficient-wise image in another field.
    pub fn try_map<G: Field>(
        &self,
        g: &G,
        m: impl Fn(&F::Elem) -> Result<G::Elem>,
    ) -> Result<DiffOp<G>> {
        let coeffs = self.coeffs.iter().map(|c| c.try_map(g, &m)).collect::<Result<_>>()?;
        Ok(DiffOp::new(g.clone(), self.basis, coeffs))
    }

    /// Remove the polynomial content (monic gcd of all coefficients).
    pub fn remove_content(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.leading();
        for c in &self.coeffs {
            if g.is_constant() {
                break;
            }
            g = g.gcd(c).unwrap();
        }
        if g.is_constant() {
            return self.clone();
        }
        let v = self.coeffs.iter().map(|c| c.div_exact(&g).unwrap()).collect();
        Self::new(self.field.clone(), self.basis, v)
    }

    /// Dx form, polynomial content removed, leading coefficient of the
    /// leading polynomial equal to one.
    pub fn monic_normalized(&self) -> Self {
        let d = self.to_dx().remove_content();
        if d.is_zero() {
            return d;
        }
        let li = self.field.inv(&d.leading().lead()).unwrap();
        d.scale(&li)
    }

    pub fn evaluate_coeffs_at(&self, x: &F::Elem) -> Vec<F::Elem> {
        self.coeffs.iter().map(|c| c.eval(x)).collect()
    }
}

impl<F: OperatorNormalization> DiffOp<F> {
    /// Canonical form used for comparisons and output.
    pub fn normalize(&self) -> Self {
        F::normalize_operator(self)
    }

    pub fn same_up_to_normalization(&self, other: &Self) -> bool {
        self.normalize() == other.normalize()
    }
}

/// Field-specific operator normalisation.
pub trait OperatorNormalization: Field + Sized {
    fn normalize_operator(op: &DiffOp<Self>) -> DiffOp<Self>;
}

impl OperatorNormalization for PrimeModulus {
    fn normalize_operator(op: &DiffOp<Self>) -> DiffOp<Self> {
        op.monic_normalized()
    }
}

impl OperatorNormalization for Rationals {
    /// Primitive integer coefficients with positive leading coefficient.
    fn normalize_operator(op: &DiffOp<Self>) -> DiffOp<Self> {
        let d = op.to_dx();
        if d.is_zero() {
            return d;
        }
        let d = rational_remove_content(&d);
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in &d.coeffs {
            for a in c.coeffs() {
                den_lcm = den_lcm.lcm(a.denom());
                num_gcd = num_gcd.gcd(a.numer());
            }
        }
        let mut s = BigRational::new(den_lcm, num_gcd);
        if d.leading().lead().is_negative() {
            s = -s;
        }
        d.scale(&s)
    }
}

/// Polynomial content removal over Q, skipping the Euclidean gcd when the
/// gcd modulo a large prime is already trivial.
fn rational_remove_content(op: &DiffOp<Rationals>) -> DiffOp<Rationals> {
    let p = PrimeModulus::new(crate::field::primes_below(1 << 61, 1)[0]).unwrap();
    let reduced: Option<Vec<DensePoly<PrimeModulus>>> =
        op.coeffs.iter().map(|c| c.try_map(&p, |a| p.from_ratio(a)).ok()).collect();
    if let Some(red) = reduced {
        let lead_ok = red.last().map_or(false, |l| l.deg() == op.leading().deg());
        if lead_ok {
            let mut g = red.last().unwrap().clone();
            for c in &red {
                if g.is_constant() {
                    break;
                }
                g = g.gcd(c).unwrap();
            }
            if g.is_constant() {
                return op.clone();
            }
        }
    }
    op.remove_content()
}

impl<F: Field> fmt::Debug for DiffOp<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "DiffOp[{}](", self.basis.tag())?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(out, "; ")?;
            }
            write!(out, "{k}: {c}")?;
        }
        write!(out, ")")
    }
}

/// Coefficients of the falling factorial t(t-1)...(t-k+1) in t, for k <= r:
/// rows[k][j] = s(k, j) (signed Stirling numbers of the first kind).
pub fn falling_coeffs<F: Field>(f: &F, r: usize) -> Vec<Vec<F::Elem>> {
    let mut rows = vec![vec![f.one()]];
    for k in 1..=r {
        let prev = &rows[k - 1];
        let mut row = vec![f.zero(); k + 1];
        let km1 = f.from_i64(k as i64 - 1);
        for (j, c) in prev.iter().enumerate() {
            // multiply by (t - (k-1))
            row[j + 1] = f.add(&row[j + 1], c);
            row[j] = f.sub(&row[j], &f.mul(c, &km1));
        }
        rows.push(row);
    }
    rows
}

/// Stirling numbers of the second kind S(j, i) for j, i <= r.
pub fn stirling2<F: Field>(f: &F, r: usize) -> Vec<Vec<F::Elem>> {
    let mut s = vec![vec![f.zero(); r + 1]; r + 1];
    s[0][0] = f.one();
    for j in 1..=r {
        for i in 1..=j {
            let a = f.mul(&f.from_i64(i as i64), &s[j - 1][i]);
            s[j][i] = f.add(&a, &s[j - 1][i - 1]);
        }
    }
    s
}

/// Evaluate the falling factorial t(t-1)...(t-k+1) at t.
pub fn falling<F: Field>(f: &F, t: &F::Elem, k: usize) -> F::Elem {
    let mut acc = f.one();
    for i in 0..k {
        acc = f.mul(&acc, &f.sub(t, &f.from_i64(i as i64)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeModulus {
        PrimeModulus::new(32749).unwrap()
    }

    #[test]
    fn theta_dx_round_trip() {
        let f = fp();
        // θ^2 - 3xθ + 5 = x^2 D^2 + xD - 3x·xD + 5
        let t = DiffOp::from_i64s(f, Basis::Theta, &[&[5], &[0, -3], &[1]]);
        let d = t.to_dx();
        assert_eq!(d, DiffOp::from_i64s(f, Basis::Dx, &[&[5], &[0, 1, -3], &[0, 0, 1]]));
        let (back, m) = d.to_theta();
        assert_eq!(m, 0);
        assert_eq!(back, t);
    }

    #[test]
    fn dx_to_theta_multiplies_by_power_of_x() {
        let f = fp();
        // D^2 = x^-2 θ(θ-1)
        let d2 = DiffOp::derivation_power(f, Basis::Dx, 2);
        let (t, m) = d2.to_theta();
        assert_eq!(m, 2);
        assert_eq!(t, DiffOp::from_i64s(f, Basis::Theta, &[&[0], &[-1], &[1]]));
        assert_eq!(t.to_dx(), d2.mul_poly_left(&DensePoly::monomial(f, 1, 2)));
    }

    #[test]
    fn rational_normalization() {
        let q = Rationals;
        let op = DiffOp::from_i64s(q, Basis::Dx, &[&[-8, 8], &[0, -4]]);
        let n = op.normalize();
        // integer content 4, sign fixed by the leading polynomial
        assert_eq!(n, DiffOp::from_i64s(q, Basis::Dx, &[&[2, -2], &[0, 1]]));
        let with_content = op.mul_poly_left(&DensePoly::from_i64s(q, &[1, -16]));
        assert_eq!(with_content.normalize(), n);
    }
}
