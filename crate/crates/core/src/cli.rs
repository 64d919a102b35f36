//! The `commuting-ops` command line: `construct`, `verify`, `curve`, `report`.
//!
//! Exit codes: 0 success, 1 mathematical failure, 2 usage or I/O error.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffring::{parse_rational, QuadField, Scalar};
use crate::error::Error;
use crate::families::{
    build_theorem2, build_theorem3, Construction, Theorem2Params, Theorem3Params,
};
use crate::io;
use crate::operator::DiffOperator;
use crate::spectral::{self, Reducibility};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "commuting-ops", version, about = "Commuting 2x2 matrix differential operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build L and M for one family instance.
    Construct(ConstructArgs),
    /// Check that two operator documents commute.
    Verify(VerifyArgs),
    /// Recover the spectral curve of a commuting pair.
    Curve(CurveArgs),
    /// Run a family on several random parameter draws.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Theorem2,
    Theorem3,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    alpha0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Overrides gamma; `a` or `a,b` for `a + b i`.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g2: Option<String>,
    #[arg(long)]
    trunc: Option<u32>,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    mu1: String,
    #[arg(long, allow_hyphen_values = true, default_value = "-1")]
    mu2: String,
    #[arg(long)]
    out_l: Option<PathBuf>,
    #[arg(long)]
    out_m: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    l: PathBuf,
    #[arg(long)]
    m: PathBuf,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long)]
    l: PathBuf,
    #[arg(long)]
    m: PathBuf,
    /// Bound on the z-degree; defaults to the order of M.
    #[arg(long)]
    degz: Option<u32>,
    #[arg(long)]
    check_reducible: bool,
    #[arg(long)]
    check_nonsingular: bool,
    /// Also write the curve document here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    first_seed: u64,
    #[arg(long)]
    trunc: Option<u32>,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(m: impl Display) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: m.to_string(),
        }
    }

    fn math(m: impl Display) -> Self {
        Failure {
            code: EXIT_MATH,
            message: m.to_string(),
        }
    }
}

/// Input errors map to 2, everything else to 1.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::VersionMismatch(_) | Error::InvalidRational(_) => {
                Failure::usage(e)
            }
            _ => Failure::math(e),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Construct(a) => cmd_construct(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Curve(a) => cmd_curve(&a, out),
        Command::Report(a) => cmd_report(&a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn scalar_flag(name: &str, v: &str) -> std::result::Result<Scalar, Failure> {
    parse_rational(v)
        .map(Scalar::rational)
        .map_err(|e| Failure::usage(format!("--{name}: {e}")))
}

fn required(name: &str, v: &Option<String>) -> std::result::Result<Scalar, Failure> {
    match v {
        Some(v) => scalar_flag(name, v),
        None => Err(Failure::usage(format!("--{name} is required for this family"))),
    }
}

fn gaussian_flag(v: &str) -> std::result::Result<Scalar, Failure> {
    let (a, b) = v.split_once(',').unwrap_or((v, "0"));
    let bad = |e: Error| Failure::usage(format!("--gamma: {e}"));
    let a = parse_rational(a.trim()).map_err(bad)?;
    let b = parse_rational(b.trim()).map_err(bad)?;
    Ok(QuadField::gaussian().element(a, b))
}

fn write_doc(path: &Path, text: &str) -> CmdResult {
    std::fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_operator(path: &Path) -> std::result::Result<(DiffOperator, Option<QuadField>), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    io::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn w(out: &mut dyn Write, line: impl Display) -> CmdResult {
    writeln!(out, "{line}").map_err(Failure::usage)
}

fn summarize(c: &Construction, out: &mut dyn Write) -> CmdResult {
    for (id, v) in &c.solution.assignment {
        w(out, format!("constant {id} = {v}"))?;
    }
    for id in &c.solution.free {
        w(out, format!("free {id} (set to 0)"))?;
    }
    w(out, format!("order(M) = {}", c.m.order().unwrap_or(0)))?;
    w(
        out,
        format!(
            "parity {} ({} steps)",
            if c.parity.holds() { "ok" } else { "VIOLATED" },
            c.parity.checked
        ),
    )?;
    match c.commutator.min_trunc() {
        None => w(out, "[L, M] = 0 exactly"),
        Some(t) => w(
            out,
            format!(
                "[L, M] = O(x^{t}): all coefficients vanish below x^{t}, {} orders past the pole x^{}",
                t - c.deepest_pole(),
                c.deepest_pole()
            ),
        ),
    }
}

fn cmd_construct(a: &ConstructArgs, out: &mut dyn Write) -> CmdResult {
    if a.n == 0 {
        return Err(Failure::usage("--n must be positive"));
    }
    let mu1 = scalar_flag("mu1", &a.mu1)?;
    let mu2 = scalar_flag("mu2", &a.mu2)?;
    let (construction, session) = match a.family {
        Family::Theorem2 => {
            let mut p = Theorem2Params::new(
                a.n,
                required("alpha0", &a.alpha0)?,
                required("alpha2", &a.alpha2)?,
                required("beta", &a.beta)?,
                mu1,
                mu2,
            );
            if let Some(g) = &a.gamma {
                p = p.with_gamma(gaussian_flag(g)?);
            }
            w(out, format!("family theorem2 n={} g={} gamma={}", a.n, p.genus(), p.gamma))?;
            (build_theorem2(&p)?, Some(QuadField::gaussian()))
        }
        Family::Theorem3 => {
            let trunc = a.trunc.unwrap_or_else(|| Theorem3Params::default_trunc(a.n));
            let p = Theorem3Params::new(a.n, required("g2", &a.g2)?, mu1, mu2, trunc)?;
            w(out, format!("family theorem3 n={} g={} alpha^2={} trunc={trunc}", a.n, p.genus(), &p.alpha * &p.alpha))?;
            let session = p.alpha.field().cloned();
            (build_theorem3(&p)?, session)
        }
    };
    summarize(&construction, out)?;
    if let Some(path) = &a.out_l {
        write_doc(path, &io::render(&construction.l.expand(), session.as_ref())?)?;
        w(out, format!("wrote L to {}", path.display()))?;
    }
    if let Some(path) = &a.out_m {
        write_doc(path, &io::render(&construction.m, session.as_ref())?)?;
        w(out, format!("wrote M to {}", path.display()))?;
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let (l, _) = read_operator(&a.l)?;
    let (m, _) = read_operator(&a.m)?;
    let c = l.op_commutator(&m).map_err(Failure::usage)?;
    match c.first_nonzero() {
        None => w(out, "COMMUTE"),
        Some(loc) => {
            w(out, format!("NONZERO {loc}"))?;
            Err(Failure::math(format!("[L, M] does not vanish: {loc}")))
        }
    }
}

fn cmd_curve(a: &CurveArgs, out: &mut dyn Write) -> CmdResult {
    let (l, session) = read_operator(&a.l)?;
    let (m, _) = read_operator(&a.m)?;
    let degz = a.degz.unwrap_or_else(|| m.order().unwrap_or(0));
    let curve = spectral::find_quadratic_relation(&l, &m, degz)?;
    w(out, format!("curve {curve} = 0"))?;
    if let Some(path) = &a.out {
        write_doc(path, &io::render_curve(&curve, session.as_ref())?)?;
    }
    let field = curve.field().or(session);
    let field_name = match &field {
        Some(f) => format!("Q(sqrt({}))", f.d()),
        None => "Q".to_string(),
    };
    if a.check_reducible {
        match spectral::reducibility_quadratic_over(&curve, field.as_ref()) {
            Some(Reducibility::Factors(f1, f2)) => w(out, format!("reducible ({f1})({f2})"))?,
            Some(Reducibility::IrreducibleOverField) => {
                w(out, format!("irreducible over {field_name}"))?
            }
            None => w(out, "reducibility: curve is not quadratic in w")?,
        }
    }
    if a.check_nonsingular {
        let p = curve.w_coeff(1);
        let q = curve.w_coeff(0);
        if curve.w_degree() == Some(2) {
            // (w + p/2)^2 = (p^2 - 4q)/4
            let f = &(&p * &p) - &q.scale(&Scalar::int(4));
            let verdict = if spectral::nonsingular_hyperelliptic(&f) {
                "nonsingular"
            } else {
                "singular"
            };
            w(out, format!("{verdict}: squarefree test on {f}"))?;
        } else {
            w(out, "nonsingularity: curve is not quadratic in w")?;
        }
    }
    Ok(())
}

fn draw(rng: &mut ChaCha8Rng) -> Scalar {
    let num: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Scalar::frac(num, rng.gen_range(1..=4))
}

fn report_line(family: Family, n: u32, trunc: Option<u32>, seed: u64) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mu1, mu2) = loop {
        let (x, y) = (draw(&mut rng), draw(&mut rng));
        if x != y {
            break (x, y);
        }
    };
    let (params, result) = match family {
        Family::Theorem2 => {
            let (a0, a2, b) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            let params = format!("alpha0={a0} alpha2={a2} beta={b} mu1={mu1} mu2={mu2}");
            (params, build_theorem2(&Theorem2Params::new(n, a0, a2, b, mu1, mu2)))
        }
        Family::Theorem3 => {
            let g2 = draw(&mut rng);
            let params = format!("g2={g2} mu1={mu1} mu2={mu2}");
            let t = trunc.unwrap_or_else(|| Theorem3Params::default_trunc(n));
            let r = Theorem3Params::new(n, g2, mu1, mu2, t).and_then(|p| build_theorem3(&p));
            (params, r)
        }
    };
    match result {
        Ok(c) => {
            let consts: Vec<String> = c
                .solution
                .assignment
                .iter()
                .map(|(id, v)| format!("{id}={v}"))
                .collect();
            let ok = c.parity.holds();
            (
                ok,
                format!(
                    "seed={seed} {params} order={} parity={} {} commutator=zero",
                    c.m.order().unwrap_or(0),
                    if ok { "ok" } else { "violated" },
                    consts.join(" ")
                ),
            )
        }
        Err(e) => (false, format!("seed={seed} {params} FAILED {e}")),
    }
}

fn cmd_report(a: &ReportArgs, out: &mut dyn Write) -> CmdResult {
    if a.n == 0 {
        return Err(Failure::usage("--n must be positive"));
    }
    let seeds: Vec<u64> = (a.first_seed..a.first_seed + a.seeds).collect();
    let lines: Vec<(bool, String)> = std::thread::scope(|s| {
        let handles: Vec<_> = seeds
            .iter()
            .map(|&seed| s.spawn(move || report_line(a.family, a.n, a.trunc, seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("report worker"))
            .collect()
    });
    w(out, "# commuting-ops report 1")?;
    w(out, format!("# family={:?} n={} seeds={}", a.family, a.n, a.seeds).to_lowercase())?;
    for (_, line) in &lines {
        w(out, line)?;
    }
    let failed = lines.iter().filter(|(ok, _)| !ok).count();
    w(out, format!("# {} passed, {failed} failed", lines.len() - failed))?;
    if failed > 0 {
        return Err(Failure::math(format!("{failed} of {} runs failed", lines.len())));
    }
    Ok(())
}
