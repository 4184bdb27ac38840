//! Formal solutions at a regular singular point, logarithms included.
//!
//! A solution is Σ_k Σ_j y[k][j]·x^(s+k)·ℓ_j with ℓ_j = ln(x)^j / j!. On the
//! ℓ-coefficient vector θ acts as (s+k)·I + N, where N moves the ℓ_j
//! coefficient to ℓ_(j-1).

use crate::error::{Error, Result};
use crate::field::Field;
use crate::op::DiffOp;
use crate::poly::DensePoly;
use crate::series::{theta_slices, Exponent};

/// Solutions sharing one exponent class modulo the integers.
#[derive(Clone, Debug)]
pub struct ClassSolutions<F: Field> {
    /// Lowest exponent of the class.
    pub base: Exponent,
    /// For each solution: its starting exponent and starting log level.
    pub params: Vec<(Exponent, usize)>,
    /// Length of the ℓ vectors.
    pub log_len: usize,
    /// y[k][j][c]: coefficient of x^(base+k)·ℓ_j in solution c.
    pub y: Vec<Vec<Vec<F::Elem>>>,
}

/// At a resonance: does the log coefficient forced on an earlier solution vanish?
#[derive(Clone, Debug, PartialEq)]
pub struct LogCheck {
    pub exponent: Exponent,
    pub solution: Exponent,
    pub vanishes: bool,
}

#[derive(Clone, Debug)]
pub struct FormalSolutions<F: Field> {
    pub classes: Vec<ClassSolutions<F>>,
    pub terms: usize,
    pub checks: Vec<LogCheck>,
}

/// Log data of one solution: highest log power and, per log power, the
/// first exponent where it occurs ("[x^p] ln(x)^j").
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionLogs {
    pub exponent: Exponent,
    pub level: usize,
    pub max_log: usize,
    pub starts: Vec<(usize, Exponent)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogBlock {
    pub base: Exponent,
    pub max_log: usize,
    pub solutions: Vec<SolutionLogs>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct LogStructure {
    pub blocks: Vec<LogBlock>,
}

impl LogStructure {
    pub fn max_log(&self) -> usize {
        self.blocks.iter().map(|b| b.max_log).max().unwrap_or(0)
    }

    pub fn solution_count(&self) -> usize {
        self.blocks.iter().map(|b| b.solutions.len()).sum()
    }
}

impl<F: Field> FormalSolutions<F> {
    pub fn log_structure(&self, f: &F) -> LogStructure {
        let blocks = self
            .classes
            .iter()
            .map(|cl| {
                let solutions: Vec<SolutionLogs> = cl
                    .params
                    .iter()
                    .enumerate()
                    .map(|(c, &(e, level))| {
                        let mut starts = vec![];
                        for j in 0..cl.log_len {
                            if let Some(k) = cl.y.iter().position(|yk| !f.is_zero(&yk[j][c])) {
                                starts.push((j, cl.base + Exponent::from_integer(k as i64)));
                            }
                        }
                        let max_log = starts.iter().map(|s| s.0).max().unwrap_or(0);
                        SolutionLogs { exponent: e, level, max_log, starts }
                    })
                    .collect();
                let max_log = solutions.iter().map(|s| s.max_log).max().unwrap_or(0);
                LogBlock { base: cl.base, max_log, solutions }
            })
            .collect();
        LogStructure { blocks }
    }

    /// Coefficients y[k][j] of solution `c` in class `class`.
    pub fn solution(&self, class: usize, c: usize) -> Vec<Vec<F::Elem>> {
        let cl = &self.classes[class];
        cl.y.iter().map(|yk| yk.iter().map(|row| row[c].clone()).collect()).collect()
    }
}

fn frac(e: &Exponent) -> Exponent {
    e - e.floor()
}

/// (Σ_m c_m N^m)·Y for Y of shape J × M.
fn apply_nilpotent<F: Field>(f: &F, c: &[F::Elem], y: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let jn = y.len();
    let mn = y.first().map_or(0, |r| r.len());
    let mut out = vec![vec![f.zero(); mn]; jn];
    for j in 0..jn {
        for (m, cm) in c.iter().enumerate() {
            if j + m >= jn {
                break;
            }
            if f.is_zero(cm) {
                continue;
            }
            for col in 0..mn {
                if !f.is_zero(&y[j + m][col]) {
                    out[j][col] = f.add(&out[j][col], &f.mul(cm, &y[j + m][col]));
                }
            }
        }
    }
    out
}

/// Solve (Σ_m u_m N^m)·Y = Z with u_0 invertible.
fn solve_nilpotent<F: Field>(f: &F, u: &[F::Elem], z: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let jn = z.len();
    let mn = z.first().map_or(0, |r| r.len());
    let u0i = f.inv(&u[0]).unwrap();
    let mut y = vec![vec![f.zero(); mn]; jn];
    for j in (0..jn).rev() {
        for col in 0..mn {
            let mut acc = z[j][col].clone();
            for m in 1..u.len() {
                if j + m >= jn {
                    break;
                }
                acc = f.sub(&acc, &f.mul(&u[m], &y[j + m][col]));
            }
            y[j][col] = f.mul(&acc, &u0i);
        }
    }
    y
}

/// All formal solutions of L at x = 0 through `terms` coefficients per
/// class. `exponents` are the lifted indicial roots with multiplicities and
/// must account for the full order of L.
pub fn formal_solutions_at_zero<F: Field>(
    l: &DiffOp<F>,
    exponents: &[(Exponent, usize)],
    terms: usize,
) -> Result<FormalSolutions<F>> {
    let f = l.field().clone();
    let slices = theta_slices(l);
    if slices.is_empty() {
        return Err(Error::invalid("zero operator"));
    }
    let polys: Vec<DensePoly<F>> = slices.iter().map(|s| DensePoly::new(f.clone(), s.clone())).collect();
    let total: usize = exponents.iter().map(|e| e.1).sum();
    if total != polys[0].deg().max(0) as usize {
        return Err(Error::invalid(format!(
            "exponents cover {total} of {} indicial roots",
            polys[0].deg()
        )));
    }
    let mut sorted: Vec<(Exponent, usize)> = exponents.to_vec();
    sorted.sort();
    let mut class_keys: Vec<Exponent> = vec![];
    for (e, _) in &sorted {
        if !class_keys.contains(&frac(e)) {
            class_keys.push(frac(e));
        }
    }
    let mut classes = vec![];
    let mut checks = vec![];
    for key in class_keys {
        let members: Vec<(Exponent, usize)> = sorted.iter().filter(|(e, _)| frac(e) == key).cloned().collect();
        let base = members[0].0;
        let jn: usize = members.iter().map(|m| m.1).sum();
        let mut params: Vec<(Exponent, usize)> = vec![];
        let mut y: Vec<Vec<Vec<F::Elem>>> = Vec::with_capacity(terms);
        let span = (members.last().unwrap().0 - base).to_integer() as usize;
        let n = terms.max(span + 1);
        for k in 0..n {
            let sigma = base + Exponent::from_integer(k as i64);
            let ncols = jn;
            // right-hand side −Σ_{i≥1} P_i(σ − i + N)·Y_(k−i)
            let mut rhs = vec![vec![f.zero(); ncols]; jn];
            for i in 1..polys.len().min(k + 1) {
                if polys[i].is_zero() {
                    continue;
                }
                let e = sigma - Exponent::from_integer(i as i64);
                let at = f.from_small_ratio(*e.numer(), *e.denom())?;
                let tc = polys[i].taylor_shift(&at);
                let t = apply_nilpotent(&f, tc.coeffs(), &y[k - i]);
                for j in 0..jn {
                    for c in 0..ncols {
                        rhs[j][c] = f.sub(&rhs[j][c], &t[j][c]);
                    }
                }
            }
            let s_el = f.from_small_ratio(*sigma.numer(), *sigma.denom())?;
            let a = polys[0].taylor_shift(&s_el);
            let mu = members.iter().find(|m| m.0 == sigma).map_or(0, |m| m.1);
            let lead_zero = (0..mu).all(|m| f.is_zero(&a.coeff(m)));
            if !lead_zero {
                return Err(Error::invalid(format!("{sigma} is listed with multiplicity {mu} but is not such a root")));
            }
            if mu == 0 {
                if f.is_zero(&a.coeff(0)) {
                    return Err(if f.characteristic() > 0 {
                        Error::BadPrime {
                            p: f.characteristic(),
                            reason: format!("indicial polynomial vanishes at {sigma} modulo p"),
                        }
                    } else {
                        Error::invalid(format!("indicial root {sigma} was not lifted"))
                    });
                }
                y.push(solve_nilpotent(&f, a.coeffs(), &rhs));
                continue;
            }
            // resonance: P_0(σ+N) = N^μ·U
            for (c, p) in params.iter().enumerate() {
                let vanishes = (0..jn).all(|j| f.is_zero(&rhs[j][c]));
                checks.push(LogCheck { exponent: sigma, solution: p.0, vanishes });
            }
            if (jn - mu..jn).any(|j| (0..ncols).any(|c| !f.is_zero(&rhs[j][c]))) {
                return Err(Error::invalid(format!("log vector overflow at {sigma}")));
            }
            let mut z = vec![vec![f.zero(); ncols]; jn];
            for j in mu..jn {
                z[j] = rhs[j - mu].clone();
            }
            let first_new = params.len();
            for lv in 0..mu {
                z[lv][first_new + lv] = f.one();
                params.push((sigma, lv));
            }
            let u: Vec<F::Elem> = a.coeffs().iter().skip(mu).cloned().collect();
            y.push(solve_nilpotent(&f, &u, &z));
        }
        classes.push(ClassSolutions { base, params, log_len: jn, y });
    }
    Ok(FormalSolutions { classes, terms, checks })
}

/// Apply L (any basis) to Σ_k Σ_j y[k][j] x^(base+k) ℓ_j. Returns the
/// residual as (lowest exponent, r[k][j]); entries with k below `y.len()`
/// are exact.
pub fn apply_to_log_series<F: Field>(
    l: &DiffOp<F>,
    base: Exponent,
    y: &[Vec<F::Elem>],
) -> Result<(Exponent, Vec<Vec<F::Elem>>)> {
    let f = l.field().clone();
    let d = l.to_dx();
    let r = d.order();
    let jn = y.first().map_or(0, |v| v.len());
    let n = y.len();
    // index shift: entry k of a working vector sits at exponent base + k − r
    let width = n + r + d.degree() + 1;
    let mut cur = vec![vec![f.zero(); jn]; width];
    for (k, v) in y.iter().enumerate() {
        cur[k + r] = v.clone();
    }
    let mut out = vec![vec![f.zero(); jn]; width];
    for (m, c) in d.coeffs().iter().enumerate() {
        if m > 0 {
            // D(x^e ℓ_j) = e x^(e−1) ℓ_j + x^(e−1) ℓ_(j−1)
            let mut next = vec![vec![f.zero(); jn]; width];
            for k in 1..width {
                let e = base + Exponent::from_integer(k as i64 - r as i64);
                let ee = f.from_small_ratio(*e.numer(), *e.denom())?;
                for j in 0..jn {
                    let v = &cur[k][j];
                    if f.is_zero(v) {
                        continue;
                    }
                    next[k - 1][j] = f.add(&next[k - 1][j], &f.mul(&ee, v));
                    if j > 0 {
                        next[k - 1][j - 1] = f.add(&next[k - 1][j - 1], v);
                    }
                }
            }
            cur = next;
        }
        for (i, ci) in c.coeffs().iter().enumerate() {
            if f.is_zero(ci) {
                continue;
            }
            for k in 0..width - i {
                for j in 0..jn {
                    if !f.is_zero(&cur[k][j]) {
                        out[k + i][j] = f.add(&out[k + i][j], &f.mul(ci, &cur[k][j]));
                    }
                }
            }
        }
    }
    Ok((base - Exponent::from_integer(r as i64), out))
}
