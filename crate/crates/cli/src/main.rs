use clap::{Parser, Subcommand};
use holo::catalog;
use holo::factor::{
    factor_by_exponent, reconstruct_operator, reconstruct_structured, ExponentConstraint, FactorOutcome,
    OperatorResidues,
};
use holo::field::{PrimeModulus, ScalarField};
use holo::guess::{
    fit_formula, formula_report, guess_ode, minimal_operator, optimal_scan, GuessProblem, MinimalStrategy,
    OdeFormulaModel, DEFAULT_GUARD,
};
use holo::local::{
    formal_solutions, generic_solution, local_exponents, report_line, singular_points, LiftBounds, LocalField, Point,
};
use holo::op::{symmetric_power, write_operator, AnyOperator, Basis, DiffOp};
use holo::series::{apply_operator, parse_exponent, series_from_operator, write_series, AnySeries, Exponent};
use holo::{Error, Result};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "holo", version, about = "Guess, analyse, factor and reconstruct linear ODEs")]
struct Cli {
    /// key=value file; command line pairs override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// directory for outputs (default $HOLO_OUT_DIR, else stdout)
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce an operator mod a prime, or generate a series solution of it
    Gen { args: Vec<String> },
    /// Guess an annihilating operator from a series file
    Guess { args: Vec<String> },
    /// Fit N = dQ + qD - C to (Q, D, N) samples
    Fit { args: Vec<String> },
    /// Optimal ODE for a formula d, q, C
    Optimal { args: Vec<String> },
    /// Local exponents at the singular points of an operator
    Exponents { args: Vec<String> },
    /// Right factor through the series of one exponent
    Factor { args: Vec<String> },
    /// Symmetric power of an operator
    Sympow { args: Vec<String> },
    /// Exact operator from operator files mod several primes
    Reconstruct { args: Vec<String> },
    /// Apply an operator to a series
    Apply { args: Vec<String> },
}

struct Config {
    kv: BTreeMap<String, String>,
    out_dir: Option<PathBuf>,
}

impl Config {
    fn load(file: Option<&PathBuf>, args: &[String], out_dir: Option<PathBuf>) -> Result<Self> {
        let mut kv = BTreeMap::new();
        if let Some(path) = file {
            let text = read(path.to_str().unwrap_or_default())?;
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| Error::parse(i + 1, "expected key=value"))?;
                kv.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        for a in args {
            let (k, v) = a.split_once('=').ok_or_else(|| Error::invalid(format!("argument {a:?} is not key=value")))?;
            kv.insert(k.to_string(), v.to_string());
        }
        let out_dir = out_dir
            .or_else(|| kv.get("out_dir").map(PathBuf::from))
            .or_else(|| std::env::var_os("HOLO_OUT_DIR").map(PathBuf::from));
        Ok(Config { kv, out_dir })
    }

    fn get(&self, k: &str) -> Option<&str> {
        self.kv.get(k).map(|s| s.as_str())
    }

    fn req(&self, k: &str) -> Result<&str> {
        self.get(k).ok_or_else(|| Error::invalid(format!("missing {k}=")))
    }

    fn num<T: std::str::FromStr>(&self, k: &str, default: Option<T>) -> Result<T> {
        match self.get(k) {
            Some(v) => v.parse().map_err(|_| Error::invalid(format!("{k}={v} is not a number"))),
            None => default.ok_or_else(|| Error::invalid(format!("missing {k}="))),
        }
    }

    fn exponent(&self, k: &str) -> Result<Exponent> {
        let v = self.req(k)?;
        parse_exponent(v).ok_or_else(|| Error::invalid(format!("{k}={v} is not a rational exponent")))
    }

    fn prime(&self) -> Result<Option<PrimeModulus>> {
        self.get("prime").map(|p| parse_prime(p)).transpose()
    }

    fn bounds(&self) -> Result<LiftBounds> {
        let mut b = LiftBounds::default();
        b.max_num = self.num("lift_max", Some(b.max_num))?;
        Ok(b)
    }

    /// Write to out=, to the output directory, or to stdout.
    fn emit(&self, default_name: &str, text: &str) -> Result<()> {
        let path = match (self.get("out"), &self.out_dir) {
            (Some(o), Some(d)) => Some(d.join(o)),
            (Some(o), None) => Some(PathBuf::from(o)),
            (None, Some(d)) => Some(d.join(default_name)),
            (None, None) => None,
        };
        match path {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir).map_err(|e| Error::invalid(format!("{}: {e}", dir.display())))?;
                }
                std::fs::write(&p, text).map_err(|e| Error::invalid(format!("{}: {e}", p.display())))?;
                log::info!("wrote {}", p.display());
            }
            None => print!("{text}"),
        }
        Ok(())
    }
}

fn parse_prime(s: &str) -> Result<PrimeModulus> {
    let p: u64 = s.parse().map_err(|_| Error::invalid(format!("prime={s} is not an integer")))?;
    PrimeModulus::new(p)
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("{path}: {e}")))
}

/// `catalog:NAME` or an operator file.
fn load_operator(src: &str) -> Result<AnyOperator> {
    if let Some(name) = src.strip_prefix("catalog:") {
        return catalog::by_name(name)
            .map(AnyOperator::Rational)
            .ok_or_else(|| Error::invalid(format!("unknown catalog operator {name}; known: {}", catalog::NAMES.join(" "))));
    }
    AnyOperator::parse(&read(src)?)
}

/// The operator named by op=, reduced when prime= is given.
fn operator_arg(cfg: &Config) -> Result<AnyOperator> {
    let op = load_operator(cfg.req("op")?)?;
    match cfg.prime()? {
        Some(p) => Ok(AnyOperator::Prime(op.reduce(&p)?)),
        None => Ok(op),
    }
}

fn series_arg(cfg: &Config, key: &str) -> Result<AnySeries> {
    AnySeries::parse(&read(cfg.req(key)?)?)
}

fn parse_point<F: ScalarField>(f: &F, s: &str) -> Result<Point<F>> {
    if s == "inf" || s == "infinity" {
        return Ok(Point::Infinity);
    }
    f.parse_elem(s).map(Point::Finite).ok_or_else(|| Error::invalid(format!("bad point {s}")))
}

fn basis_arg(cfg: &Config) -> Result<Basis> {
    match cfg.get("basis").unwrap_or("theta") {
        "theta" => Ok(Basis::Theta),
        "Dx" | "dx" => Ok(Basis::Dx),
        b => Err(Error::invalid(format!("basis={b} is neither theta nor Dx"))),
    }
}

fn cmd_gen(cfg: &Config) -> Result<()> {
    let op = operator_arg(cfg)?;
    if cfg.get("terms").is_none() {
        return cfg.emit("operator.txt", &op.write());
    }
    match op {
        AnyOperator::Prime(l) => gen_series(cfg, &l),
        AnyOperator::Rational(l) => gen_series(cfg, &l),
    }
}

fn gen_series<F: ScalarField>(cfg: &Config, l: &DiffOp<F>) -> Result<()> {
    let f = l.field();
    let terms: usize = cfg.num("terms", None)?;
    let s = match cfg.get("at") {
        Some(a) => {
            let a = f.parse_elem(a).ok_or_else(|| Error::invalid(format!("bad point {a}")))?;
            generic_solution(l, &a, terms)?
        }
        None => {
            let lead = match cfg.get("lead") {
                Some(v) => f.parse_elem(v).ok_or_else(|| Error::invalid(format!("bad lead {v}")))?,
                None => f.one(),
            };
            series_from_operator(l, cfg.exponent("rho")?, terms, &lead)?
        }
    };
    cfg.emit("series.txt", &write_series(&s))
}

fn cmd_guess(cfg: &Config) -> Result<()> {
    match series_arg(cfg, "series")? {
        AnySeries::Prime(s) => guess_series(cfg, &s),
        AnySeries::Rational(s) => guess_series(cfg, &s),
    }
}

fn guess_series<F: ScalarField>(cfg: &Config, s: &holo::series::TruncatedSeries<F>) -> Result<()> {
    let guard = cfg.num("guard", Some(DEFAULT_GUARD))?;
    let basis = basis_arg(cfg)?;
    if let (Some(_), Some(_)) = (cfg.get("order"), cfg.get("degree")) {
        let mut p = GuessProblem::new(s, cfg.num("order", None)?, cfg.num("degree", None)?);
        p.guard = guard;
        p.basis = basis;
        let r = guess_ode(&p)?;
        eprintln!("Q={} D={} f={} N={}", r.order, r.degree, r.f, r.n_used);
        let first = r.operators.first().ok_or_else(|| Error::NoOdeFound("empty solution space".into()))?;
        return cfg.emit("operator.txt", &write_operator(&first.monic_normalized()));
    }
    let st = MinimalStrategy { max_order: cfg.num("max_order", Some(12))?, guard, basis };
    let m = minimal_operator(s, &st)?;
    for (q, d, n) in &m.samples {
        eprintln!("sample Q={q} D={d} N={n}");
    }
    if let Some(model) = &m.model {
        eprintln!("formula d={} q={} C={}", model.d, model.q, model.c);
    }
    cfg.emit("operator.txt", &write_operator(&m.operator))
}

fn cmd_fit(cfg: &Config) -> Result<()> {
    let text = match (cfg.get("samples"), cfg.get("samples_file")) {
        (Some(s), _) => s.replace(';', "\n"),
        (None, Some(path)) => read(path)?,
        (None, None) => return Err(Error::invalid("missing samples= or samples_file=")),
    };
    let mut samples = vec![];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: Vec<usize> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::parse(i + 1, format!("bad number {t:?}"))))
            .collect::<Result<_>>()?;
        if v.len() != 3 {
            return Err(Error::parse(i + 1, "expected Q D N"));
        }
        samples.push((v[0], v[1], v[2]));
    }
    let m = fit_formula(&samples)?;
    cfg.emit("formula.txt", &formula_report(&m, None))
}

fn cmd_optimal(cfg: &Config) -> Result<()> {
    let m = OdeFormulaModel::new(cfg.num("d", None)?, cfg.num("q", None)?, cfg.num("C", None)?)?;
    let q_max = cfg.num("q_max", Some(4 * m.q.max(1) + 200))?;
    let o = optimal_scan(&m, cfg.num("f_max", Some(20))?, q_max)?;
    cfg.emit("optimal.txt", &format!("Q0={} D0={} f0={} N0={}\n", o.q0, o.d0, o.f0, o.n0))
}

fn cmd_exponents(cfg: &Config) -> Result<()> {
    match operator_arg(cfg)? {
        AnyOperator::Prime(l) => exponents_report(cfg, &l),
        AnyOperator::Rational(l) => exponents_report(cfg, &l),
    }
}

fn exponents_report<F: LocalField>(cfg: &Config, l: &DiffOp<F>) -> Result<()> {
    let bounds = cfg.bounds()?;
    let terms = cfg.num("terms", Some(20))?;
    let points: Vec<Point<F>> = match cfg.get("point") {
        Some(p) => vec![parse_point(l.field(), p)?],
        None => singular_points(l)?.into_iter().map(|s| s.point).collect(),
    };
    let mut out = String::new();
    for p in &points {
        let line = match p {
            Point::Algebraic(_) => report_line(&local_exponents(l, p, &bounds)?, None),
            _ => {
                let (rep, logs, _) = formal_solutions(l, p, terms, &bounds)?;
                report_line(&rep, Some(&logs))
            }
        };
        out += &line;
        out.push('\n');
    }
    cfg.emit("exponents.txt", &out)
}

fn cmd_factor(cfg: &Config) -> Result<()> {
    match operator_arg(cfg)? {
        AnyOperator::Prime(l) => factor_op(cfg, &l),
        AnyOperator::Rational(l) => factor_op(cfg, &l),
    }
}

fn factor_op<F: ScalarField>(cfg: &Config, l: &DiffOp<F>) -> Result<()> {
    let point = parse_point(l.field(), cfg.get("point").unwrap_or("0"))?;
    let budget = cfg.num("terms", Some(400))?;
    match factor_by_exponent(l, &point, cfg.exponent("rho")?, budget)? {
        FactorOutcome::RightFactor(r) => cfg.emit("factor.txt", &write_operator(&r)),
        FactorOutcome::FullOperator(r) => {
            eprintln!("the probe series needs the whole operator (order {})", r.order());
            cfg.emit("factor.txt", &write_operator(&r))
        }
        FactorOutcome::Inconclusive { needed, available } => {
            Err(Error::NeedMoreTerms { needed: needed as u64, available: available as u64 })
        }
    }
}

fn cmd_sympow(cfg: &Config) -> Result<()> {
    let m = cfg.num("m", None)?;
    let text = match operator_arg(cfg)? {
        AnyOperator::Prime(l) => write_operator(&symmetric_power(&l, m)?),
        AnyOperator::Rational(l) => write_operator(&symmetric_power(&l, m)?),
    };
    cfg.emit("sympow.txt", &text)
}

fn cmd_reconstruct(cfg: &Config) -> Result<()> {
    let mut ops = vec![];
    for path in cfg.req("inputs")?.split(',').filter(|s| !s.is_empty()) {
        match AnyOperator::parse(&read(path)?)? {
            AnyOperator::Prime(l) => ops.push(l),
            AnyOperator::Rational(_) => return Err(Error::invalid(format!("{path} is not an operator mod a prime"))),
        }
    }
    let constraints = cfg
        .get("constraints")
        .unwrap_or("")
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|c| ExponentConstraint::parse(c).ok_or_else(|| Error::invalid(format!("bad constraint {c}"))))
        .collect::<Result<Vec<_>>>()?;
    let res = OperatorResidues::new(ops)?;
    let rep = if cfg.get("structured") == Some("true") {
        reconstruct_structured(&res, &constraints)?
    } else {
        reconstruct_operator(&res, &constraints)?
    };
    eprintln!(
        "reconstructed={} fixed_by_constraints={} primes={}",
        rep.reconstructed,
        rep.fixed_by_constraints,
        rep.primes.len()
    );
    for c in &rep.apparent {
        eprintln!("apparent point={} pass={} ({})", c.point, c.pass, c.reason);
    }
    cfg.emit("operator.txt", &write_operator(&rep.operator))
}

fn cmd_apply(cfg: &Config) -> Result<()> {
    let op = load_operator(cfg.req("op")?)?;
    let text = match series_arg(cfg, "series")? {
        AnySeries::Prime(s) => write_series(&apply_operator(&op.reduce(s.field())?, &s)?),
        AnySeries::Rational(s) => match op {
            AnyOperator::Rational(l) => write_series(&apply_operator(&l, &s)?),
            AnyOperator::Prime(_) => return Err(Error::DomainMismatch("operator mod p, series over Q".into())),
        },
    };
    cfg.emit("applied.txt", &text)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NeedMoreTerms { .. } | Error::TruncationUnderflow { .. } => 2,
        Error::BadPrime { .. } | Error::NonCoprimeModuli(..) => 3,
        Error::ReconstructionFailure(_) => 4,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<()> {
    let (args, f): (&Vec<String>, fn(&Config) -> Result<()>) = match &cli.cmd {
        Cmd::Gen { args } => (args, cmd_gen),
        Cmd::Guess { args } => (args, cmd_guess),
        Cmd::Fit { args } => (args, cmd_fit),
        Cmd::Optimal { args } => (args, cmd_optimal),
        Cmd::Exponents { args } => (args, cmd_exponents),
        Cmd::Factor { args } => (args, cmd_factor),
        Cmd::Sympow { args } => (args, cmd_sympow),
        Cmd::Reconstruct { args } => (args, cmd_reconstruct),
        Cmd::Apply { args } => (args, cmd_apply),
    };
    let cfg = Config::load(cli.config.as_ref(), args, cli.out_dir.clone())?;
    f(&cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
