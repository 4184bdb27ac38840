//! One PASS/FAIL line per acceptance criterion, with the sub-checks that
//! feed it. Run with `cargo test --test acceptance -- --nocapture`.

use holo::catalog;
use holo::crt::{rational_reconstruct, reduce_rational, Bounds};
use holo::factor::{
    ansatz_fit, factor_by_exponent, reconstruct_operator, reconstruct_structured, ExponentConstraint, FactorOutcome,
    OperatorResidues,
};
use holo::field::{primes_below, ratio, Field, PrimeModulus, Rationals};
use holo::guess::{
    continuous_optimum, gain, minimal_degree, minimal_operator, optimal_scan, terms_required, MinimalStrategy,
    OdeFormulaModel,
};
use holo::local::{
    apparent_check, generic_solution, local_exponents, ordinary_integer_point, singular_points, LiftBounds, Point,
};
use holo::op::{
    op_multiply, parse_operator, right_divide, symmetric_power, translate_operator, write_operator, Basis, DiffOp,
};
use holo::poly::DensePoly;
use holo::series::{
    apply_operator, e_series, k_series, parse_series, series_from_operator, series_power, write_series, Exponent,
    TruncatedSeries,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

/// Sub-checks that fail against the published values, each explained in
/// the README.
const EXPECTED_FAILURES: &[&str] = &[
    "1.chi5_saving_22736",
    "2.table_PhiH3",
    "2.table_PhiH5",
    "6.sym5_LE_kills_K5",
    "6.ansatz_pure_K5",
    "6.sym2_LE_kills_every_quadratic_form",
];

struct Report {
    criterion: usize,
    subs: Vec<(String, bool)>,
    failures: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Report { criterion: 0, subs: vec![], failures: vec![] }
    }

    fn start(&mut self, c: usize) {
        self.criterion = c;
        self.subs.clear();
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl AsRef<str>) {
        let id = format!("{}.{}", self.criterion, name);
        println!("  {} {id}: {}", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
        if !ok {
            self.failures.push(id.clone());
        }
        self.subs.push((id, ok));
    }

    fn finish(&mut self, title: &str, t: Instant, budget: Duration) {
        let el = t.elapsed();
        self.check("time_budget", el < budget, format!("{el:.2?} against {budget:?}"));
        let bad = self.subs.iter().filter(|s| !s.1).count();
        let verdict = if bad == 0 { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {}: {title} ({} of {} sub-checks pass)", self.criterion, self.subs.len() - bad, self.subs.len());
    }
}

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

fn model(d: i64, q: i64, c: i64) -> OdeFormulaModel {
    OdeFormulaModel::new(d, q, c).unwrap()
}

fn fp(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn reduce(l: &DiffOp<Rationals>, p: &PrimeModulus) -> DiffOp<PrimeModulus> {
    l.try_map(p, |c| p.from_ratio(c)).unwrap()
}

fn ex(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d)
}

fn criterion_1(r: &mut Report) {
    r.start(1);
    let t = Instant::now();
    let chi5 = model(72, 33, 887);
    let chi6 = model(43, 52, 1121);
    let phi6 = model(39, 46, 861);
    for (name, m, want) in [("chi5", chi5, 1384), ("chi6", chi6, 1020), ("Phi6", phi6, 848)] {
        r.check(&format!("d_app_{name}"), m.d_app() == want, format!("D_app = {} (published {want})", m.d_app()));
    }
    let o = optimal_scan(&chi5, 50, 400).unwrap();
    r.check(
        "optimal_chi5",
        (o.q0, o.d0, o.f0, o.n0) == (56, 129, 8, 7402),
        format!("(Q0, D0, f0) = ({}, {}, {}), N0 = {}", o.q0, o.d0, o.f0, o.n0),
    );
    let o = optimal_scan(&chi6, 50, 400).unwrap();
    r.check(
        "optimal_chi6",
        (o.q0, o.d0, o.f0, o.n0) == (84, 73, 3, 6287),
        format!("(Q0, D0, f0) = ({}, {}, {}), N0 = {}", o.q0, o.d0, o.f0, o.n0),
    );
    let o = optimal_scan(&phi6, 50, 400).unwrap();
    r.check(
        "optimal_Phi6",
        (o.q0, o.d0, o.product()) == (79, 63, 5120),
        format!("(Q0, D0) = ({}, {}), (Q0+1)(D0+1) = {}, N = {}", o.q0, o.d0, o.product(), o.n0),
    );
    let (q0, d0, n0) = continuous_optimum(&chi5, 1);
    let s = format!("{q0:.2} {d0:.2} {n0:.2}");
    r.check("continuous_chi5", s == "57.20 125.97 7388.09", s);
    let g = gain(&phi6, 46, 47).unwrap();
    r.check("gain_Phi6_46_47", g == 19464, format!("{g}"));
    let g = gain(&phi6, 46, 48).unwrap();
    r.check("gain_Phi6_46_48", g == 25958, format!("{g}"));
    let g = gain(&chi5, 33, 34).unwrap();
    r.check("chi5_saving_22736", g == 22736, format!("closed form gives {g}, published value 22736"));
    let n = terms_required(&chi5, 33, 1).unwrap();
    r.check("chi5_minimal_order_terms", n == 49537, format!("{n}"));
    let (qq, n) = minimal_degree(&chi5, 1).unwrap();
    r.check("chi5_minimal_degree", (qq, n) == (1417, 103513), format!("order {qq}, {n} terms"));
    r.finish("ODE formula suite", t, Duration::from_secs(1));
}

fn criterion_2(r: &mut Report) {
    r.start(2);
    let t = Instant::now();
    let rows: &[(&str, i64, i64, i64, i64, i64, i64)] = &[
        ("chi1", 1, 1, -1, 1, 1, 4),
        ("chi2", 1, 2, -1, 2, 1, 6),
        ("chi3", 12, 7, 37, 11, 17, 216),
        ("chi4", 7, 10, 36, 15, 9, 160),
        ("chi5", 72, 33, 887, 56, 129, 7410),
        ("chi6", 43, 52, 1121, 84, 73, 6290),
        ("6chi3-chi1", 12, 6, 26, 10, 17, 198),
        ("6chi4-2chi2", 6, 8, 17, 13, 8, 126),
        ("6chi5-3chi3", 68, 30, 732, 52, 120, 6413),
        ("6chi6-4chi4", 40, 48, 945, 80, 66, 5427),
        ("PhiH3", 10, 5, 21, 8, 13, 126),
        ("PhiH4", 5, 6, 12, 9, 6, 70),
        ("PhiH5", 45, 17, 277, 28, 80, 2349),
        ("PhiH6", 26, 27, 342, 48, 39, 1960),
        ("PhiH7", 145, 49, 1943, 92, 257, 23994),
    ];
    for &(name, d, q, c, q0, d0, prod) in rows {
        let o = optimal_scan(&model(d, q, c), 50, 400).unwrap();
        r.check(
            &format!("table_{name}"),
            (o.q0, o.d0, o.product()) == (q0, d0, prod),
            format!("scan ({}, {}, {}) with f0 = {}, printed ({q0}, {d0}, {prod})", o.q0, o.d0, o.product(), o.f0),
        );
    }
    r.finish("published optimal ODE table", t, Duration::from_secs(1));
}

fn count_check(r: &mut Report, name: &str, samples: &[(usize, usize, usize)], m: &Option<OdeFormulaModel>, order: usize) {
    let ok = match m {
        Some(m) => m.q as usize == order && samples.iter().all(|&(q, d, n)| m.n(q as i64, d as i64) == n as i64),
        None => false,
    };
    r.check(&format!("solution_count_{name}"), ok, format!("samples {samples:?}, fitted {m:?}"));
}

/// Round trip through the analytic branches that a series can be generated
/// for, and through a solution at an ordinary point.
fn round_trip(r: &mut Report, name: &str, l: &DiffOp<Rationals>, reducible: bool) {
    let t = Instant::now();
    let p = fp(32749);
    let lp = reduce(l, &p);
    let want = lp.monic_normalized();
    let terms = 2 * (lp.order() + 1) * (lp.degree() + 5) + 40;
    let st = MinimalStrategy { max_order: lp.order() + 2, ..Default::default() };
    let exps = local_exponents(&lp, &Point::Finite(0), &LiftBounds::default()).unwrap().flat();
    let mut seen = BTreeSet::new();
    for e in exps {
        if !e.is_integer() || *e.numer() < 0 || !seen.insert(e) {
            continue;
        }
        let Ok(s) = series_from_operator(&lp, e, terms, &1) else {
            println!("    {name}: branch x^{e} shares its class with a larger exponent; not generated");
            continue;
        };
        let m = minimal_operator(&s, &st).unwrap();
        if reducible {
            let (_, rem) = right_divide(&lp, &m.operator).unwrap();
            r.check(
                &format!("{name}_branch_{e}_right_factor"),
                rem.is_zero() && m.operator.order() < lp.order(),
                format!("order {} right factor, remainder zero: {}", m.operator.order(), rem.is_zero()),
            );
        } else {
            r.check(&format!("{name}_branch_{e}"), m.operator == want, format!("{terms} terms, order {}", m.operator.order()));
            count_check(r, &format!("{name}_branch_{e}"), &m.samples, &m.model, lp.order());
        }
    }
    let a = ordinary_integer_point(&lp).unwrap();
    let s = generic_solution(&lp, &a, terms).unwrap();
    let m = minimal_operator(&s, &st).unwrap();
    let moved = translate_operator(&lp, &a).monic_normalized();
    r.check(&format!("{name}_ordinary_point"), m.operator == moved, format!("solution at x = {a}, order {}", m.operator.order()));
    count_check(r, &format!("{name}_ordinary_point"), &m.samples, &m.model, lp.order());
    println!("    {name}: {:.2?}", t.elapsed());
}

fn criterion_3(r: &mut Report) {
    r.start(3);
    let t = Instant::now();
    round_trip(r, "L2", &catalog::l2(), false);
    round_trip(r, "L3", &catalog::l3(), false);
    round_trip(r, "Lt3", &catalog::l3_tilde(), false);
    round_trip(r, "L4_4", &catalog::l4_4(), true);
    round_trip(r, "L4", &catalog::l4(), false);
    r.finish("round-trip guessing", t, Duration::from_secs(5 * 60));
}

fn lt3_constraints() -> Vec<ExponentConstraint> {
    ["0:-2", "0:0", "0:2", "inf:1", "inf:2", "inf:5/2", "1/16:-15/4", "1/16:-13/4", "1/16:-1", "1/4:0", "1/4:1", "1/4:7/2"]
        .iter()
        .map(|s| ExponentConstraint::parse(s).unwrap())
        .collect()
}

fn poly_has(p: &DensePoly<Rationals>, v: i64) -> bool {
    p.coeffs().iter().any(|c| *c == ratio(v, 1))
}

fn criterion_4(r: &mut Report) -> DiffOp<Rationals> {
    r.start(4);
    let t = Instant::now();
    let lt3 = catalog::l3_tilde();
    let mut guessed = vec![];
    for p in [32749, 32719] {
        let f = fp(p);
        let lp = reduce(&lt3, &f);
        let s = series_from_operator(&lp, ex(2, 1), 200, &1).unwrap();
        let m = minimal_operator(&s, &MinimalStrategy { max_order: 5, ..Default::default() }).unwrap();
        guessed.push(m.operator);
    }
    let res = OperatorResidues::new(guessed).unwrap();
    let plain = reconstruct_operator(&res, &[]);
    println!("    plain reconstruction from two primes: {}", plain.as_ref().map(|_| "ok".to_string()).unwrap_or_else(|e| e.to_string()));
    let rep = reconstruct_structured(&res, &lt3_constraints()).unwrap();
    let op = rep.operator.clone();
    r.check("Lt3_exact", op == lt3.normalize(), format!("{} from residues, {} from constraints", rep.reconstructed, rep.fixed_by_constraints));
    // cofactors of the printed factorised coefficients
    let x = DensePoly::from_i64s(Rationals, &[0, 1]);
    let a = DensePoly::from_i64s(Rationals, &[1, -16]);
    let four = DensePoly::from_i64s(Rationals, &[4]);
    let q1 = op.coeffs()[1].div_exact(&(&four * &a)).unwrap();
    let q0 = op.coeffs()[0].div_exact(&four).unwrap();
    let q2 = op.coeffs()[2].div_exact(&(&(&DensePoly::from_i64s(Rationals, &[2]) * &x) * &(&a * &a))).unwrap();
    r.check("Lt3_16119599", poly_has(&q1, 16119599), format!("{q1}"));
    r.check("Lt3_97687536", poly_has(&q0, -97687536), format!("{q0}"));
    let printed_q2 = DensePoly::from_i64s(Rationals, &[-12, 1172, -30499, 252146, -872579, 770128, 1183744]);
    r.check("Lt3_c2_cofactor", q2 == printed_q2, format!("{q2}"));
    // ratios read off in both primes
    let q3 = catalog::q3();
    let (a0, a1, a2, a3) = (q3.coeff(0), q3.coeff(1), q3.coeff(2), q3.coeff(3));
    let i = |v: i64| ratio(v, 1);
    r.check("ratio_a1", i(-2) * &a1 / &a0 == i(63), "-2 a1/a0 = 63");
    r.check("ratio_a2", i(4) * &a2 / &a0 == i(839), "4 a2/a0 = 839");
    r.check("ratio_a3", i(-8) * &a3 / &a0 == i(3607), "-8 a3/a0 = 3607");
    // a_k = Q3 coefficients over 4352, d0 = c0(0) / (2^14 · 4352) in the
    // scaling of the printed operator
    let scale = op.coeffs()[3].lead() / lt3.coeffs()[3].lead();
    let d0 = op.coeffs()[0].coeff(0) / &scale / i(71303168);
    let a0s = &a0 / i(4352);
    r.check("ratio_d0", i(1 << 14) * &d0 / &a0s == i(147), format!("2^14 d0/a0 = {}", i(1 << 14) * &d0 / &a0s));

    // L4 from twelve primes just below 2^62
    let l4 = catalog::l4();
    let primes: Vec<PrimeModulus> = primes_below(1 << 62, 12).into_iter().map(fp).collect();
    let res = OperatorResidues::from_operator(&l4, &primes).unwrap();
    match reconstruct_operator(&res, &[]) {
        Ok(rep) => {
            let op = rep.operator;
            r.check("L4_exact", op == l4.normalize(), format!("{} coefficients from {} primes", rep.reconstructed, primes.len()));
            let q = catalog::q3();
            let xx = DensePoly::from_i64s(Rationals, &[0, 1]);
            let lin = |c: &[i64]| DensePoly::from_i64s(Rationals, c);
            let strip = &(&(&xx.pow(3) * &lin(&[1, -16]).pow(4)) * &(&lin(&[1, -4]) * &lin(&[1, -8]))) * &q.pow(4);
            let p4 = op.coeffs()[4].div_exact(&strip).unwrap();
            r.check("P4_constant", p4.coeff(0) == ratio(28000, 1), format!("{}", p4.coeff(0)));
            let top: BigInt = "521686412421099571093753036800".parse().unwrap();
            r.check("P4_top", p4.lead() == BigRational::from_integer(top), format!("{}", p4.lead()));
            let p0 = op.coeffs()[0].clone();
            let top: BigInt = "28698609854675644415679733396189051258415886630912000".parse().unwrap();
            r.check("P0_top", p0.lead() / ratio(16, 1) == BigRational::from_integer(top), format!("{}", p0.lead() / ratio(16, 1)));
        }
        Err(e) => r.check("L4_exact", false, e.to_string()),
    }
    r.finish("multi-prime reconstruction", t, Duration::from_secs(5 * 60));
    op
}

fn criterion_5(r: &mut Report, lt3: &DiffOp<Rationals>) {
    r.start(5);
    let t = Instant::now();
    let b = LiftBounds::default();
    let q3 = catalog::q3().monic();
    let cases: Vec<(&str, Point<Rationals>, Vec<Exponent>)> = vec![
        ("0", Point::Finite(ratio(0, 1)), vec![ex(-2, 1), ex(0, 1), ex(2, 1)]),
        ("inf", Point::Infinity, vec![ex(1, 1), ex(2, 1), ex(5, 2)]),
        ("1/16", Point::Finite(ratio(1, 16)), vec![ex(-15, 4), ex(-13, 4), ex(-1, 1)]),
        ("1/4", Point::Finite(ratio(1, 4)), vec![ex(0, 1), ex(1, 1), ex(7, 2)]),
        ("Q3_roots", Point::Algebraic(q3.clone()), vec![ex(0, 1), ex(1, 1), ex(3, 1)]),
    ];
    for (name, p, want) in cases {
        let got = local_exponents(lt3, &p, &b).unwrap().flat();
        let shown: Vec<String> = got.iter().map(|e| e.to_string()).collect();
        r.check(&format!("exponents_{name}"), got == want, format!("{{{}}}", shown.join(", ")));
    }
    let labels: Vec<String> = singular_points(lt3).unwrap().into_iter().map(|s| s.label).collect();
    r.check("singular_points", labels.len() == 5, labels.join(", "));
    let cert = apparent_check(lt3, &Point::Algebraic(q3), &b).unwrap();
    r.check("apparent_Q3", cert.pass, cert.reason);
    // q0 + 1 in the leading coefficient only
    let mut cs = lt3.coeffs().to_vec();
    let old = catalog::q3();
    let bumped = &old + &DensePoly::from_i64s(Rationals, &[1]);
    cs[3] = cs[3].div_exact(&old).unwrap();
    cs[3] = &cs[3] * &bumped;
    let perturbed = DiffOp::new(Rationals, Basis::Dx, cs);
    let cert = apparent_check(&perturbed, &Point::Algebraic(bumped.monic()), &b).unwrap();
    r.check("apparent_fails_after_perturbation", !cert.pass, cert.reason);
    let s = series_from_operator(lt3, ex(2, 1), 5, &ratio(1, 1)).unwrap();
    let want: Vec<BigRational> = [1, 48, 1527, 40290, 952920].iter().map(|&v| ratio(v, 1)).collect();
    r.check("analytic_series_Q", s.coeffs() == &want[..], format!("x^2 times {:?}", s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()));
    for (p, w5, w6) in [(32749u64, 7541u64, 3199u64), (32719, 7571, 4069)] {
        let f = fp(p);
        let s = series_from_operator(&reduce(lt3, &f), ex(2, 1), 5, &1).unwrap();
        r.check(&format!("analytic_series_mod_{p}"), s.coeffs() == [1, 48, 1527, w5, w6], format!("{:?}", s.coeffs()));
    }
    r.finish("local analysis", t, Duration::from_secs(60));
}

fn criterion_6(r: &mut Report) {
    r.start(6);
    let t = Instant::now();
    let le = catalog::l_e();
    let sym5 = symmetric_power(&le, 5).unwrap();
    r.check("sym5_order", sym5.order() == 6, format!("order {}", sym5.order()));
    let labels: Vec<String> = singular_points(&sym5).unwrap().into_iter().map(|s| s.label).collect();
    let ok = labels.iter().all(|l| ["0", "1/16", "inf"].contains(&l.as_str()));
    r.check("sym5_singularities", ok, labels.join(", "));
    let p = fp(32749);
    let sym5p = symmetric_power(&reduce(&le, &p), 5).unwrap();
    r.check("sym5_mod_p_consistent", sym5p.monic_normalized() == reduce(&sym5, &p).monic_normalized(), "Sym^5 commutes with reduction");
    let n = 520;
    let k = k_series(&p, n).unwrap();
    let e = e_series(&p, n).unwrap();
    let kills = |l: &DiffOp<PrimeModulus>, s: &TruncatedSeries<PrimeModulus>| apply_operator(l, s).unwrap().is_zero();
    let k5 = series_power(&k, 5).unwrap();
    let e5 = series_power(&e, 5).unwrap();
    r.check("sym5_LE_kills_K5", kills(&sym5p, &k5), format!("{} valid terms", k5.len()));
    r.check("sym5_LE_kills_E5", kills(&sym5p, &e5), format!("{} valid terms", e5.len()));
    let sym5k = symmetric_power(&reduce(&catalog::l_k(), &p), 5).unwrap();
    r.check("sym5_LK_kills_K5", kills(&sym5k, &k5), format!("{} valid terms", k5.len()));
    let sol = series_from_operator(&sym5p, ex(0, 1), n, &1).unwrap();
    match ansatz_fit(&sol, &k, &e, 5, ex(0, 1), 0).unwrap() {
        Some(v) => {
            let coeffs: Vec<u64> = v.iter().map(|c| c.coeff(0)).collect();
            r.check("ansatz_pure_K5", coeffs == [1, 0, 0, 0, 0, 0], format!("coefficients of K^5..E^5: {coeffs:?}"));
            r.check("ansatz_pure_E5", coeffs == [0, 0, 0, 0, 0, 1], "the analytic solution is E^5");
        }
        None => r.check("ansatz_pure_K5", false, "no solution"),
    }
    let sym2 = symmetric_power(&reduce(&le, &p), 2).unwrap();
    let forms = [("K2", series_power(&k, 2).unwrap()), ("KE", k.mul(&e).unwrap()), ("E2", series_power(&e, 2).unwrap())];
    let mut all = true;
    for (name, s) in &forms {
        let ok = kills(&sym2, s);
        all &= ok;
        println!("    Sym^2(L_E) on {name}: {}", if ok { "zero" } else { "nonzero" });
    }
    r.check("sym2_LE_kills_every_quadratic_form", all, "K^2, KE, E^2");
    r.check("sym2_LE_kills_E2", kills(&sym2, &forms[2].1), "E^2");
    r.finish("symmetric powers and ansatz", t, Duration::from_secs(60));
}

/// Π(θ - e_i) + Σ_j x^j·R_j(θ) with random small R_j.
fn theta_op(p: &PrimeModulus, rng: &mut Rng, exps: &[Exponent], degree: usize) -> DiffOp<PrimeModulus> {
    let mut ind = DensePoly::one(*p);
    for e in exps {
        let c = p.neg(&p.from_small_ratio(*e.numer(), *e.denom()).unwrap());
        ind = &ind * &DensePoly::new(*p, vec![c, 1]);
    }
    let r = exps.len();
    let coeffs = (0..=r)
        .map(|k| {
            let mut c = vec![ind.coeff(k)];
            for _ in 0..degree {
                c.push(p.reduce_i64(rng.range(-9, 9)));
            }
            DensePoly::new(*p, c)
        })
        .collect();
    DiffOp::new(*p, Basis::Theta, coeffs)
}

fn criterion_7(r: &mut Report) {
    r.start(7);
    let t = Instant::now();
    let mut rng = Rng(20090);
    let primes = [fp(32749), fp(32719), fp(32717)];
    let mut ok = 0;
    let mut detail = vec![];
    for i in 0..20 {
        let p = primes[i % 3];
        let ra = rng.range(1, 2) as usize;
        let rb = rng.range(1, 2) as usize;
        let ea: Vec<Exponent> = (0..ra).map(|_| ex(rng.range(-3, 3), 1)).collect();
        let eb: Vec<Exponent> = [ex(1, 2), ex(1, 4)][..rb].to_vec();
        let da = rng.range(1, 3) as usize;
        let a = theta_op(&p, &mut rng, &ea, da);
        let db = rng.range(1, 3) as usize;
        let b = theta_op(&p, &mut rng, &eb, db);
        let ab = op_multiply(&a, &b).unwrap();
        match factor_by_exponent(&ab, &Point::Finite(0), ex(1, 2), 160) {
            Ok(FactorOutcome::RightFactor(f)) => {
                let (_, rem) = right_divide(&ab, &f).unwrap();
                let (_, rem_b) = right_divide(&b, &f).unwrap();
                if rem.is_zero() && rem_b.is_zero() {
                    ok += 1;
                }
                detail.push(format!("{}", f.order()));
            }
            Ok(FactorOutcome::FullOperator(_)) => detail.push("full".into()),
            Ok(FactorOutcome::Inconclusive { .. }) => detail.push("inconclusive".into()),
            Err(e) => detail.push(format!("error {e}")),
        }
    }
    r.check("random_products", ok == 20, format!("{ok} of 20 right factors divide A·B and B; orders {}", detail.join(" ")));

    let l44 = catalog::l4_4();
    let lt5 = catalog::l5_tilde();
    r.check("Lt5_order", lt5.order() == 5, format!("order {}", lt5.order()));
    let (_, rem) = right_divide(&lt5, &l44).unwrap();
    r.check("Lt5_right_divisible_by_L4_4", rem.is_zero(), "remainder zero");
    let n = 30;
    let mut sols: Vec<(String, TruncatedSeries<Rationals>)> = vec![];
    let mut xs = vec![ratio(0, 1); n];
    xs[1] = ratio(1, 1);
    sols.push(("x".into(), TruncatedSeries::new(Rationals, ex(0, 1), xs).unwrap()));
    let mut one = vec![ratio(0, 1); n];
    one[0] = ratio(1, 1);
    sols.push(("1".into(), TruncatedSeries::new(Rationals, ex(0, 1), one).unwrap()));
    sols.push(("L11".into(), series_from_operator(&catalog::l11().to_diffop(), ex(0, 1), n, &ratio(1, 1)).unwrap()));
    sols.push(("L12".into(), series_from_operator(&catalog::l12().to_diffop(), ex(-1, 2), n, &ratio(1, 1)).unwrap()));
    sols.push(("L4_4 at 3".into(), series_from_operator(&l44, ex(3, 1), n, &ratio(1, 1)).unwrap()));
    for (name, s) in &sols {
        let z = apply_operator(&lt5, s).unwrap();
        r.check(&format!("Lt5_kills_{}", name.replace(' ', "_")), z.is_zero(), format!("{} terms", s.len()));
    }
    let a = ordinary_integer_point(&l44).unwrap();
    let g = generic_solution(&l44, &a, n).unwrap();
    let z = apply_operator(&translate_operator(&lt5, &a), &g).unwrap();
    r.check("Lt5_kills_generic_L4_4_solution", z.is_zero(), format!("solution at x = {a}"));

    // P = A·B·C; apply C, then B, then A to a solution of P
    let p = fp(32749);
    let c = theta_op(&p, &mut rng, &[ex(1, 2)], 2);
    let b = theta_op(&p, &mut rng, &[ex(1, 3)], 2);
    let a = theta_op(&p, &mut rng, &[ex(1, 4)], 2);
    let prod = op_multiply(&op_multiply(&a, &b).unwrap(), &c).unwrap();
    let s = series_from_operator(&prod, ex(1, 4), 40, &1).unwrap();
    let s1 = apply_operator(&c, &s).unwrap();
    let s2 = apply_operator(&b, &s1).unwrap();
    let s3 = apply_operator(&a, &s2).unwrap();
    r.check(
        "sequential_application",
        s3.is_zero() && !s1.is_zero() && !s2.is_zero(),
        format!("C·y and B·C·y nonzero, A·B·C·y zero through {} terms", s3.len()),
    );
    r.finish("factorisation pipeline", t, Duration::from_secs(5 * 60));
}

fn criterion_8(r: &mut Report) {
    r.start(8);
    let t = Instant::now();
    let mut rng = Rng(32749);
    let ps = primes_below(1 << 61, 4);
    let mut bad = 0;
    for i in 0..10_000 {
        let m = BigInt::from(ps[i % 4]);
        let n = rng.range(-(1 << 29), 1 << 29);
        let d = rng.range(1, 1 << 29);
        let q = BigRational::new(n.into(), d.into());
        let v = reduce_rational(&q, &m).unwrap();
        if rational_reconstruct(&v, &m, &Bounds::symmetric(&m)).ok() != Some(q) {
            bad += 1;
        }
    }
    r.check("rational_reconstruction", bad == 0, format!("{} of 10000 round trips", 10_000 - bad));

    let f = fp(32749);
    let mut same = 0;
    for _ in 0..5 {
        let tail: Vec<i64> = (0..2).map(|_| rng.range(1, 20)).collect();
        let l = DiffOp::from_i64s(f, Basis::Theta, &[&[0, -tail[0], -tail[1]], &[0], &[1]]);
        let s = series_from_operator(&l, ex(0, 1), 60, &1).unwrap();
        let c = rng.range(2, 32748) as u64;
        let st = MinimalStrategy { max_order: 3, ..Default::default() };
        if minimal_operator(&s, &st).unwrap().operator == minimal_operator(&s.scale(&c), &st).unwrap().operator {
            same += 1;
        }
    }
    r.check("guess_scale_invariance", same == 5, format!("{same} of 5"));

    let mut inv = 0;
    for _ in 0..20 {
        let es = [ex(rng.range(-4, 4), 1), ex(rng.range(-7, 7), 2)];
        let q = Rationals;
        let mut ind = DensePoly::one(q);
        for e in &es {
            ind = &ind * &DensePoly::new(q, vec![-ratio(*e.numer(), *e.denom()), ratio(1, 1)]);
        }
        let l = DiffOp::new(q, Basis::Theta, (0..3).map(|k| DensePoly::new(q, vec![ind.coeff(k), ratio(rng.range(-5, 5), 1)])).collect());
        let b = LiftBounds::default();
        let base = local_exponents(&l, &Point::Finite(ratio(0, 1)), &b).unwrap().flat();
        let a = ratio(rng.range(-9, 9), rng.range(1, 4));
        let moved = local_exponents(&translate_operator(&l, &-a.clone()), &Point::Finite(a), &b).unwrap().flat();
        let scaled = l.mul_poly_left(&DensePoly::from_i64s(q, &[1, rng.range(-5, 5), 3]));
        let scaled = local_exponents(&scaled, &Point::Finite(ratio(0, 1)), &b).unwrap().flat();
        if base == moved && base == scaled {
            inv += 1;
        }
    }
    r.check("exponent_invariance", inv == 20, format!("{inv} of 20"));

    let mut rt = 0;
    for _ in 0..50 {
        let len = rng.range(1, 40) as usize;
        let s = TruncatedSeries::new(f, ex(rng.range(-5, 5), 2), (0..len).map(|_| rng.next() % 32749).collect()).unwrap();
        let text = write_series(&s);
        let op = catalog::by_name(["LE", "LK", "L2", "L3", "Lt3"][rng.range(0, 4) as usize]).unwrap();
        let otext = write_operator(&op);
        if write_series(&parse_series(&text, &f).unwrap()) == text
            && write_operator(&parse_operator(&otext, &Rationals).unwrap()) == otext
        {
            rt += 1;
        }
    }
    r.check("file_round_trips", rt == 50, format!("{rt} of 50 byte-identical"));
    r.finish("property suites", t, Duration::from_secs(120));
}

#[test]
fn acceptance() {
    let mut r = Report::new();
    criterion_1(&mut r);
    criterion_2(&mut r);
    criterion_3(&mut r);
    let lt3 = criterion_4(&mut r);
    criterion_5(&mut r, &lt3);
    criterion_6(&mut r);
    criterion_7(&mut r);
    criterion_8(&mut r);
    let got: BTreeSet<&str> = r.failures.iter().map(|s| s.as_str()).collect();
    let want: BTreeSet<&str> = EXPECTED_FAILURES.iter().copied().collect();
    println!("failing sub-checks: {got:?}");
    assert_eq!(got, want, "failures differ from the documented list");
}
