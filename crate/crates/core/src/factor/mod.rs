//! Factorisation by exponent probes, factorisation trees, K/E ansatz fits
//! and multi-prime reconstruction of operators.

mod ansatz;
mod reconstruct;
mod tree;

pub use ansatz::ansatz_fit;
pub use reconstruct::{
    reconstruct_operator, reconstruct_structured, ExponentConstraint, OperatorResidues, ReconstructionReport,
};
pub use tree::FactorNode;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::guess::{minimal_operator, MinimalStrategy, DEFAULT_GUARD};
use crate::local::Point;
use crate::op::{invert_operator, right_divide, translate_operator, Basis, DiffOp};
use crate::series::{series_from_operator, Exponent};
use log::info;

/// Outcome of one exponent probe.
#[derive(Clone, Debug, PartialEq)]
pub enum FactorOutcome<F: Field> {
    /// A proper right factor; it divides the input with zero remainder.
    RightFactor(DiffOp<F>),
    /// The probe series needs the whole operator.
    FullOperator(DiffOp<F>),
    /// The series budget was too small to decide.
    Inconclusive { needed: usize, available: usize },
}

fn to_local<F: Field>(l: &DiffOp<F>, point: &Point<F>) -> Result<DiffOp<F>> {
    match point {
        Point::Finite(a) => Ok(translate_operator(l, a)),
        Point::Infinity => Ok(invert_operator(l)),
        Point::Algebraic(_) => Err(Error::Unsupported("exponent probes at algebraic points".into())),
    }
}

fn from_local<F: Field>(r: &DiffOp<F>, point: &Point<F>) -> DiffOp<F> {
    match point {
        Point::Finite(a) => translate_operator(r, &r.field().neg(a)),
        _ => invert_operator(r),
    }
}

/// Terms that certainly suffice: the full operator in θ form with one
/// solution (f = 1), plus guard.
fn full_operator_terms<F: Field>(local: &DiffOp<F>) -> usize {
    let (t, _) = local.to_theta();
    (t.order() + 1) * (t.degree() + 1) + DEFAULT_GUARD
}

/// Build the series x^ρ(1 + ...) of L at `point` with `budget` terms, guess
/// its minimal annihilator and check that it right-divides L.
pub fn factor_by_exponent<F: Field>(
    l: &DiffOp<F>,
    point: &Point<F>,
    rho: Exponent,
    budget: usize,
) -> Result<FactorOutcome<F>> {
    let local = to_local(l, point)?;
    let f = l.field();
    let s = series_from_operator(&local, rho, budget, &f.one())?;
    let st = MinimalStrategy { max_order: l.order(), guard: DEFAULT_GUARD, basis: Basis::Theta };
    let inconclusive = || FactorOutcome::Inconclusive { needed: full_operator_terms(&local), available: budget };
    let found = match minimal_operator(&s, &st) {
        Ok(m) => m.operator,
        Err(Error::NoOdeFound(_)) | Err(Error::NeedMoreTerms { .. }) => return Ok(inconclusive()),
        Err(e) => return Err(e),
    };
    let (_, rem) = right_divide(&local, &found)?;
    if !rem.is_zero() {
        info!("probe {rho}: guessed order {} does not divide; budget too small", found.order());
        return Ok(inconclusive());
    }
    let back = from_local(&found, point).monic_normalized();
    if found.order() == l.order() {
        Ok(FactorOutcome::FullOperator(back))
    } else {
        Ok(FactorOutcome::RightFactor(back))
    }
}
