use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use normbase::counting::{
    equality_predicate, irr_count_trace, nonzero_trace_irr_count, normal_basis_count, v_count, PrimePower, SplitN,
};
use normbase::gf::{ExtSpec, Field, FieldSpec, DEFAULT_ELEMENT_BUDGET};
use normbase::oracle::{
    count_normal_elements, count_npolys_and_traces, counts_by_trace, find_witness, is_normal_gcd, is_normal_rank,
    n_polynomial_verdict, ConjugateMatrix, NPolyVerdict,
};
use normbase::polyring::{factor_xn_minus_1, poly_trace, DEFAULT_POLY_BUDGET, DEFAULT_SEED};
use normbase::sweep::{first_violation, prime_powers_up_to, run_verify, write_reports, Format, SweepConfig};
use normbase::text::{coeff_list, format_poly, parse_element, parse_poly};
use normbase::Error;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Normal elements, N-polynomials and trace-restricted irreducibles over finite fields.
///
/// Exit codes: 0 ok, 1 invariant or oracle violation, 2 usage error, 3 enumeration budget exceeded.
#[derive(Parser)]
#[command(name = "normbase", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the normal-element / nonzero-trace inequality over a (q, n) grid.
    Verify(VerifyArgs),
    /// Print one exact count.
    Count(CountArgs),
    /// Factor x^n - 1 grouped by cyclotomic blocks.
    FactorXn1(FactorArgs),
    /// Test one element for normality or one polynomial for the N-property.
    Test(TestArgs),
    /// Smallest irreducible with nonzero trace that is not an N-polynomial.
    Witness(WitnessArgs),
}

#[derive(Args)]
struct Budgets {
    /// Largest field size scanned element by element.
    #[arg(long, env = "NORMBASE_BUDGET", default_value_t = DEFAULT_ELEMENT_BUDGET)]
    budget: u64,
    /// Largest number of monic polynomials scanned.
    #[arg(long, default_value_t = DEFAULT_POLY_BUDGET)]
    poly_budget: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Field orders, comma separated; "p^k" or a prime-power integer.
    #[arg(long, value_delimiter = ',', value_parser = parse_q, required_unless_present = "q_max")]
    q: Vec<PrimePower>,
    /// Every prime power up to this bound.
    #[arg(long, conflicts_with = "q")]
    q_max: Option<u64>,
    /// Degrees: "a..b" (inclusive), a comma list, or a mix.
    #[arg(long, value_parser = parse_n_spec)]
    n: NSpec,
    /// Fill the oracle columns by exhaustive enumeration.
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    budgets: Budgets,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    /// Normal elements of F_{q^n} over F_q.
    V,
    /// Normal bases (N-polynomials of degree n).
    Nb,
    /// Monic irreducibles of degree n with trace t.
    IrrTrace,
    /// Monic irreducibles of degree n with nonzero trace.
    IrrTotal,
}

#[derive(Args)]
struct CountArgs {
    #[arg(value_enum)]
    kind: CountKind,
    #[arg(long)]
    n: u64,
    #[arg(long, value_parser = parse_q)]
    q: PrimePower,
    /// Trace value (canonical integer, nonzero) for irr-trace.
    #[arg(long, default_value_t = 1)]
    t: u64,
    /// Recompute by enumeration and fail on mismatch.
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    budgets: Budgets,
}

#[derive(Args)]
struct FactorArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, value_parser = parse_q)]
    q: PrimePower,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum TestKind {
    Normal,
    Npoly,
}

#[derive(Args)]
struct TestArgs {
    #[arg(value_enum)]
    kind: TestKind,
    #[arg(long, value_parser = parse_q)]
    q: PrimePower,
    /// Polynomial for npoly: coefficients, constant term first.
    #[arg(long)]
    poly: Option<String>,
    /// Element for normal: power-basis coordinates, constant term first.
    #[arg(long)]
    elem: Option<String>,
    /// Extension degree for normal; the defining polynomial is the
    /// lexicographically smallest monic irreducible unless --modulus is given.
    #[arg(long)]
    n: Option<usize>,
    /// Defining polynomial for normal (monic irreducible).
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, value_parser = parse_q)]
    q: PrimePower,
    #[command(flatten)]
    budgets: Budgets,
}

#[derive(Clone, Debug)]
struct NSpec(Vec<u64>);

fn parse_q(s: &str) -> Result<PrimePower, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_n_spec(s: &str) -> Result<NSpec, String> {
    let num = |t: &str| -> Result<u64, String> {
        let v: u64 = t.trim().parse().map_err(|_| format!("bad degree {t:?}"))?;
        if v == 0 {
            return Err("n must be >= 1".into());
        }
        Ok(v)
    };
    let mut out = Vec::new();
    for part in s.split(',') {
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if a > b {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    Ok(NSpec(out))
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Inconsistent(_) => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

fn violation(message: String) -> Failure {
    Failure { code: EXIT_VIOLATION, message }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Count(a) => cmd_count(a),
        Command::FactorXn1(a) => cmd_factor_xn1(a),
        Command::Test(a) => cmd_test(a),
        Command::Witness(a) => cmd_witness(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("normbase: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let qs = match a.q_max {
        Some(max) => prime_powers_up_to(max),
        None => a.q,
    };
    let config = SweepConfig {
        qs,
        ns: a.n.0,
        oracle: a.oracle,
        element_budget: a.budgets.budget,
        poly_budget: a.budgets.poly_budget,
        format: match a.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        seed: a.seed,
        workers: a.workers,
    };
    let reports = run_verify(&config)?;
    match &a.out {
        Some(path) => write_reports(&reports, config.format, BufWriter::new(File::create(path)?))?,
        None => write_reports(&reports, config.format, io::stdout().lock())?,
    }
    match first_violation(&reports) {
        Some(v) => Err(violation(v)),
        None => Ok(()),
    }
}

fn cmd_count(a: CountArgs) -> Outcome {
    let (n, q) = (a.n, a.q);
    let closed = match a.kind {
        CountKind::V => v_count(n, q)?,
        CountKind::Nb => normal_basis_count(n, q)?,
        CountKind::IrrTrace => irr_count_trace(n, q, a.t)?,
        CountKind::IrrTotal => nonzero_trace_irr_count(n, q)?,
    };
    println!("{closed}");
    if !a.oracle {
        return Ok(());
    }
    let k = FieldSpec::from_prime_power(q)?;
    let nu = n as usize;
    let oracle = match a.kind {
        CountKind::V => count_normal_elements(&ExtSpec::new(&k, nu)?, a.budgets.budget)?,
        CountKind::Nb => count_npolys_and_traces(nu, &k, a.budgets.poly_budget)?.npoly_count,
        CountKind::IrrTrace => BigUint::from(counts_by_trace(nu, &k, a.budgets.poly_budget)?[a.t as usize]),
        CountKind::IrrTotal => count_npolys_and_traces(nu, &k, a.budgets.poly_budget)?.nonzero_trace_count,
    };
    if oracle != closed {
        return Err(violation(format!("oracle count {oracle} differs from closed form {closed}")));
    }
    eprintln!("oracle: {oracle} (match)");
    Ok(())
}

fn cmd_factor_xn1(a: FactorArgs) -> Outcome {
    let k = FieldSpec::from_prime_power(a.q)?;
    let t = factor_xn_minus_1(a.n, &k, a.seed)?;
    let mut out = io::stdout().lock();
    let SplitN { n, p, m, e } = t.split;
    writeln!(out, "x^{n} - 1 over F_{}", a.q)?;
    if e > 0 {
        writeln!(
            out,
            "n = {m} * {p}^{e}: x^{n} - 1 = (x^{m} - 1)^{}; every factor below has multiplicity {}",
            t.multiplicity(),
            t.multiplicity()
        )?;
    }
    for b in &t.blocks {
        writeln!(out, "d={} tau={} phi/tau={}", b.d, b.tau, b.phi / b.tau)?;
        for f in &b.factors {
            writeln!(out, "  {}", format_poly(f))?;
        }
    }
    Ok(())
}

fn cmd_test(a: TestArgs) -> Outcome {
    let k = FieldSpec::from_prime_power(a.q)?;
    match a.kind {
        TestKind::Npoly => {
            let f = parse_poly(a.poly.as_deref().ok_or_else(|| usage("npoly needs --poly"))?, &k)?;
            let n = f.degree().unwrap_or(0);
            let line = match n_polynomial_verdict(&f, &k)? {
                NPolyVerdict::NPolynomial => {
                    format!("true: irreducible, trace {}, roots independent (rank {n})", poly_trace(&f, &k)?)
                }
                NPolyVerdict::Reducible => "false: reducible".to_string(),
                NPolyVerdict::ZeroTrace => format!("false: zero trace (coefficient of x^{} is 0)", n - 1),
                NPolyVerdict::RankDeficient { rank } => format!("false: rank deficit (conjugate rank {rank} < {n})"),
            };
            println!("{line}");
        }
        TestKind::Normal => {
            let ext = match (&a.modulus, a.n) {
                (Some(m), n) => {
                    let e = ExtSpec::with_modulus(&k, parse_poly(m, &k)?)?;
                    if n.is_some_and(|n| n != e.degree()) {
                        return Err(usage("--n disagrees with the modulus degree"));
                    }
                    e
                }
                (None, Some(n)) => ExtSpec::new(&k, n)?,
                (None, None) => return Err(usage("normal needs --n or --modulus")),
            };
            let elem = parse_element(a.elem.as_deref().ok_or_else(|| usage("normal needs --elem"))?, ext.degree(), &k)?;
            let n = ext.degree();
            let by_rank = is_normal_rank(&elem, &ext)?;
            let by_gcd = is_normal_gcd(&elem, &ext)?;
            if by_rank != by_gcd {
                return Err(violation(format!("rank test says {by_rank}, gcd test says {by_gcd}")));
            }
            let rank = ConjugateMatrix::of(&elem, &ext)?.rank(ext.base());
            let modulus = format_poly(ext.modulus());
            if by_rank {
                println!("true: conjugates independent (rank {n}) in F_{}[x]/({modulus})", a.q);
            } else if k.is_zero(&ext.field_trace(&elem)?) {
                println!("false: zero field trace (conjugate rank {rank} < {n}) in F_{}[x]/({modulus})", a.q);
            } else {
                println!("false: rank deficit (conjugate rank {rank} < {n}) in F_{}[x]/({modulus})", a.q);
            }
        }
    }
    Ok(())
}

fn cmd_witness(a: WitnessArgs) -> Outcome {
    let k = FieldSpec::from_prime_power(a.q)?;
    let predicate = equality_predicate(a.n, a.q);
    let witness = find_witness(a.n as usize, &k, a.budgets.poly_budget)?;
    match (witness, predicate) {
        (Some(w), false) => {
            let verdict = n_polynomial_verdict(&w, &k)?;
            println!("{} [{}]", format_poly(&w), coeff_list(&w));
            if let NPolyVerdict::RankDeficient { rank } = verdict {
                println!("nonzero trace, conjugate rank {rank} < {}", a.n);
            }
            Ok(())
        }
        (None, true) => {
            println!("none: {}", equality_reason(a.n, a.q));
            Ok(())
        }
        (Some(w), true) => Err(violation(format!("witness {} found although equality holds", format_poly(&w)))),
        (None, false) => Err(violation("no witness although the inequality is strict".into())),
    }
}

fn equality_reason(n: u64, q: PrimePower) -> String {
    if n == 1 {
        "n = 1, every nonzero element is normal".into()
    } else if SplitN::new(n, q.p).is_ok_and(|s| s.m == 1) {
        format!("n = {}^{} is a power of the characteristic", q.p, n.ilog(q.p))
    } else {
        format!("n = {n} is prime and {} is a primitive root mod {n}", q.q)
    }
}
