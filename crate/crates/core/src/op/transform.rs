use super::{Basis, DiffOp};
use crate::field::Field;
use crate::poly::DensePoly;

/// The operator in t = x - a (coefficients shifted, D_t = D_x). Output is in
/// the D_x basis.
pub fn translate_operator<F: Field>(l: &DiffOp<F>, a: &F::Elem) -> DiffOp<F> {
    let d = l.to_dx();
    let coeffs = d.coeffs().iter().map(|c| c.taylor_shift(a)).collect();
    DiffOp::new(l.field().clone(), Basis::Dx, coeffs)
}

/// The operator in t = 1/x, in the θ basis (θ_x = -θ_t). The result is
/// t^M·L(1/t) with M the largest coefficient degree of the θ form of L.
pub fn invert_operator<F: Field>(l: &DiffOp<F>) -> DiffOp<F> {
    let f = l.field().clone();
    let (t, _) = l.to_theta();
    if t.is_zero() {
        return t;
    }
    let m = t.degree();
    let coeffs = t
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, a)| {
            if a.is_zero() {
                return DensePoly::zero(f.clone());
            }
            let r = a.reverse(m);
            if j % 2 == 1 {
                -&r
            } else {
                r
            }
        })
        .collect();
    DiffOp::new(f, Basis::Theta, coeffs)
}
