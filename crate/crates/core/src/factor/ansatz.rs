use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::solve;
use crate::poly::DensePoly;
use crate::series::{Exponent, TruncatedSeries};

fn power_products<F: Field>(k: &TruncatedSeries<F>, e: &TruncatedSeries<F>, m: usize) -> Result<Vec<TruncatedSeries<F>>> {
    let f = k.field();
    let one = TruncatedSeries::new(f.clone(), Exponent::from_integer(0), vec![f.one(); 1])?;
    let n = k.len().min(e.len());
    let pad = |s: &TruncatedSeries<F>| -> Result<TruncatedSeries<F>> {
        let mut c = s.coeffs().to_vec();
        c.resize(n, f.zero());
        TruncatedSeries::new(f.clone(), s.offset(), c)
    };
    let one = pad(&one)?;
    let mut kp = vec![one.clone()];
    let mut ep = vec![one];
    for _ in 0..m {
        kp.push(kp.last().unwrap().mul(k)?);
        ep.push(ep.last().unwrap().mul(e)?);
    }
    (0..=m).map(|i| kp[m - i].mul(&ep[i])).collect()
}

/// Polynomials P_i of degree at most `max_degree` with
/// target = x^prefactor · Σ_i P_i K^(m-i) E^i through the target's length.
/// Returns None when no such polynomials exist.
pub fn ansatz_fit<F: Field>(
    target: &TruncatedSeries<F>,
    k: &TruncatedSeries<F>,
    e: &TruncatedSeries<F>,
    m: usize,
    prefactor: Exponent,
    max_degree: usize,
) -> Result<Option<Vec<DensePoly<F>>>> {
    let f = target.field();
    if k.offset() != Exponent::from_integer(0) || e.offset() != Exponent::from_integer(0) {
        return Err(Error::Alignment("basis series must start at x^0".into()));
    }
    let shift = target.offset() - prefactor;
    if !shift.is_integer() || shift < Exponent::from_integer(0) {
        return Err(Error::Alignment(format!(
            "target starts at x^{}, not an integer step above x^{prefactor}",
            target.offset()
        )));
    }
    let shift = shift.to_integer() as usize;
    let prods = power_products(k, e, m)?;
    let rows_n = (shift + target.len()).min(prods[0].len());
    let cols = (m + 1) * (max_degree + 1);
    if rows_n < cols {
        return Err(Error::NeedMoreTerms { needed: cols as u64, available: rows_n as u64 });
    }
    let mut rows = Vec::with_capacity(rows_n);
    let mut rhs = Vec::with_capacity(rows_n);
    for n in 0..rows_n {
        let mut row = vec![f.zero(); cols];
        for (i, p) in prods.iter().enumerate() {
            for j in 0..=max_degree.min(n) {
                row[i * (max_degree + 1) + j] = p.coeff(n - j);
            }
        }
        rows.push(row);
        rhs.push(if n >= shift { target.coeff(n - shift) } else { f.zero() });
    }
    let Some((u, dim)) = solve(f, &rows, &rhs)? else { return Ok(None) };
    if dim > 0 {
        return Err(Error::NeedMoreTerms { needed: (rows_n + dim) as u64, available: rows_n as u64 });
    }
    Ok(Some(
        (0..=m)
            .map(|i| DensePoly::new(f.clone(), u[i * (max_degree + 1)..(i + 1) * (max_degree + 1)].to_vec()))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use crate::series::{e_series, k_series};

    #[test]
    fn e_squared_is_a_basis_element() {
        let f = PrimeModulus::new(32749).unwrap();
        let k = k_series(&f, 40).unwrap();
        let e = e_series(&f, 40).unwrap();
        let e2 = e.mul(&e).unwrap();
        let p = ansatz_fit(&e2, &k, &e, 2, Exponent::from_integer(0), 0).unwrap().unwrap();
        let c: Vec<u64> = p.iter().map(|q| q.coeff(0)).collect();
        assert_eq!(c, vec![0, 0, 1]);
        // x^-2·(1 - 16x)·K·E
        let ke = k.mul(&e).unwrap();
        let mut lv = vec![0i64; 40];
        lv[0] = 1;
        lv[1] = -16;
        let lin = TruncatedSeries::from_i64s(f, &lv);
        let t = ke.mul(&lin).unwrap();
        let t = TruncatedSeries::new(f, Exponent::from_integer(-2), t.coeffs().to_vec()).unwrap();
        let p = ansatz_fit(&t, &k, &e, 2, Exponent::from_integer(-2), 1).unwrap().unwrap();
        assert_eq!(p[1], DensePoly::from_i64s(f, &[1, -16]));
        assert!(p[0].is_zero() && p[2].is_zero());
        // 1 + x matches aK + bE through x^1 only
        let mut pv = vec![0i64; 20];
        pv[0] = 1;
        pv[1] = 1;
        let poly = TruncatedSeries::from_i64s(f, &pv);
        assert!(ansatz_fit(&poly, &k, &e, 1, Exponent::from_integer(0), 0).unwrap().is_none());
        assert!(matches!(
            ansatz_fit(&e2.truncate(3).unwrap(), &k, &e, 2, Exponent::from_integer(0), 1),
            Err(Error::NeedMoreTerms { .. })
        ));
    }
}
