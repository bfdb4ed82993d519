//! Command-line front end for `riordan-core`.
//!
//! [`run`] takes the argument vector and two sinks and returns the process
//! exit code, so the binary and the tests drive exactly the same code.

mod family;
pub mod selftest;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use riordan_core::compress::{build_compressed, compress_matrix_to, hat_spec, CompressedDouble};
use riordan_core::double::{build_dar, build_double, dar_seqchar_oracle, SeqCharBundle};
use riordan_core::eco::{generate_from_production, rule_levels, rule_production, unit_seed};
use riordan_core::rational::{format_rational, parse_rational};
use riordan_core::riordan::shift_violation;
use riordan_core::tp::{self, TpReport};
use riordan_core::{series_of, Error, Matrix, Rational, Series, SuccessionRule};

use family::{AnySpec, Family, SpecArgs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(Error),
    Verify(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Compute(_) => EXIT_COMPUTE,
            Failure::Verify(_) => EXIT_VERIFY,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Compute(e) => write!(f, "{e}"),
            Failure::Verify(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(m) => Failure::Verify(m),
            Error::Syntax { .. } | Error::Format(_) => Failure::Usage(e.to_string()),
            other => Failure::Compute(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

#[derive(Parser, Debug)]
#[command(
    name = "riordan",
    version,
    about = "Exact Riordan-type arrays, compression and total positivity"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone, Copy)]
struct Format {
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
    /// Comma-separated output (matrices only).
    #[arg(long, conflicts_with = "json")]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Expand an expression in t as a truncated power series.
    Expand {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        trunc: usize,
        #[arg(long)]
        json: bool,
    },
    /// Build the leading rows 0..=ROWS of an array.
    Build {
        family: Family,
        #[command(flatten)]
        spec: SpecArgs,
        /// Largest row index.
        #[arg(long)]
        rows: usize,
        /// Series working truncation (defaults to ROWS + 2).
        #[arg(long)]
        trunc: Option<usize>,
        #[command(flatten)]
        format: Format,
    },
    /// Product of two specs of one family; the second follows "--".
    Mul {
        family: Family,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 12)]
        trunc: usize,
        /// Also check the matrix product through this row index.
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(last = true, allow_hyphen_values = true)]
        other: Vec<String>,
    },
    /// Group inverse of a spec.
    Inverse {
        family: Family,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 12)]
        trunc: usize,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Sequence characterization (A, Z, ...) of a spec.
    Seqchar {
        family: Family,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 12)]
        trunc: usize,
        /// Also solve for the sequences from the built matrix and compare.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Production matrix, verified against the built array.
    Prodmat {
        family: Family,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        trunc: Option<usize>,
        /// Verify this production matrix (JSON) instead of the computed one.
        #[arg(long)]
        production: Option<PathBuf>,
        /// Row shift of the identity D P = shifted D (1 for Riordan, 2 for the double families).
        #[arg(long)]
        shift: Option<usize>,
        #[command(flatten)]
        format: Format,
    },
    /// Compress a double (almost-)Riordan array to rows 0..=ROWS.
    Compress {
        #[arg(long, group = "source")]
        from_dar: bool,
        #[arg(long, group = "source")]
        from_double: bool,
        /// Compress a matrix read from a JSON file.
        #[arg(long, group = "source")]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        trunc: Option<usize>,
        #[command(flatten)]
        format: Format,
    },
    /// Expand a succession rule.
    Eco {
        #[arg(long)]
        rule: PathBuf,
        #[arg(long)]
        levels: usize,
        /// Print the production matrix of the rule.
        #[arg(long)]
        production: bool,
        /// Generate this many rows from the production matrix.
        #[arg(long)]
        generate: Option<usize>,
        /// Size of the production matrix (defaults to LEVELS + 2, capped by the window).
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Total positivity checks and constructions.
    Tp {
        #[command(subcommand)]
        cmd: TpCmd,
    },
    /// Replay the reference examples and properties.
    Selftest {
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TpBuildKind {
    LinearB,
    TgAlpha,
}

#[derive(Args, Debug)]
struct CoreArgs {
    #[arg(long)]
    g: String,
    #[arg(long)]
    f1: String,
    #[arg(long)]
    f2: String,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    max_order: usize,
}

#[derive(Subcommand, Debug)]
enum TpCmd {
    /// Search a matrix (JSON file) for negative minors.
    Check {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        max_order: usize,
        /// Leading block size (defaults to the matrix size).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Test a sequence for the Pólya frequency property.
    Pf {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check a compressed double Riordan array and its factorization ladder.
    Ladder {
        #[command(flatten)]
        core: CoreArgs,
        #[arg(long)]
        json: bool,
    },
    /// Extend a TP compressed double Riordan array by a first column.
    Build {
        kind: TpBuildKind,
        #[command(flatten)]
        core: CoreArgs,
        #[arg(long)]
        b0: Option<String>,
        #[arg(long)]
        b1: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "riordan: {f}");
            f.exit_code()
        }
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        Cmd::Expand { expr, trunc, json } => {
            let s = series_of(&expr, trunc)?;
            if json {
                writeln!(out, "{}", to_json(&s))?;
            } else {
                writeln!(out, "{s}")?;
            }
            Ok(())
        }
        Cmd::Build {
            family,
            spec,
            rows,
            trunc,
            format,
        } => {
            let spec = AnySpec::from_args(family, &spec, trunc.unwrap_or(rows + 2))?;
            write_matrix(out, &spec.build(rows)?, format)
        }
        Cmd::Mul {
            family,
            spec,
            trunc,
            rows,
            json,
            other,
        } => {
            let a = AnySpec::from_args(family, &spec, trunc)?;
            let b = AnySpec::from_args(family, &SpecArgs::parse_group(&other)?, trunc)?;
            let ab = a.mul(&b)?;
            if let Some(n) = rows {
                let lhs = a.build(n)?.mul(&b.build(n)?)?;
                if lhs != ab.build(n)? {
                    return Err(Failure::Verify(
                        "the product of the matrices differs from the matrix of the product".into(),
                    ));
                }
            }
            write_spec(out, &ab, json)
        }
        Cmd::Inverse {
            family,
            spec,
            trunc,
            rows,
            json,
        } => {
            let a = AnySpec::from_args(family, &spec, trunc)?;
            let inv = a.inverse()?;
            if let Some(n) = rows {
                if a.build(n)?.mul(&inv.build(n)?)? != Matrix::identity(n + 1) {
                    return Err(Failure::Verify(
                        "the matrix times its inverse is not the identity".into(),
                    ));
                }
            }
            write_spec(out, &inv, json)
        }
        Cmd::Seqchar {
            family,
            spec,
            trunc,
            oracle,
            json,
        } => seqchar(out, family, &spec, trunc, oracle, json),
        Cmd::Prodmat {
            family,
            spec,
            rows,
            trunc,
            production,
            shift,
            format,
        } => {
            let spec = AnySpec::from_args(family, &spec, trunc.unwrap_or(rows + 4))?;
            let shift = shift.unwrap_or(spec.production_shift());
            let p = match &production {
                Some(path) => read_json::<Matrix>(path)?,
                None => spec.production(rows)?,
            };
            write_matrix(out, &p, format)?;
            let size = p.rows().min(rows + 1);
            let d = spec.build(size - 1)?;
            let p = p
                .block(size, size)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            match shift_violation(&d, &p, shift)? {
                None => Ok(()),
                Some((i, j)) => Err(Failure::Verify(format!(
                    "(D P)[{i}][{j}] = {} but D[{}][{j}] = {}",
                    format_rational(d.mul(&p)?.get(i, j)),
                    i + shift,
                    format_rational(d.get(i + shift, j))
                ))),
            }
        }
        Cmd::Compress {
            from_dar,
            from_double,
            matrix,
            spec,
            rows,
            trunc,
            format,
        } => compress(
            out,
            from_dar,
            from_double,
            matrix,
            &spec,
            rows,
            trunc,
            format,
        ),
        Cmd::Eco {
            rule,
            levels,
            production,
            generate,
            size,
            json,
        } => eco(out, &rule, levels, production, generate, size, json),
        Cmd::Tp { cmd } => tp_cmd(out, cmd),
        Cmd::Selftest { filter } => {
            let results = selftest::run(filter.as_deref());
            if results.is_empty() {
                return Err(Failure::Usage(format!(
                    "no check matches {:?}",
                    filter.unwrap_or_default()
                )));
            }
            write!(out, "{}", selftest::table(&results))?;
            match results.iter().filter(|r| !r.passed).count() {
                0 => Ok(()),
                n => Err(Failure::Verify(format!("{n} check(s) failed"))),
            }
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_matrix(out: &mut dyn Write, m: &Matrix, format: Format) -> Outcome {
    if format.json {
        writeln!(out, "{}", to_json(m))?;
    } else if format.csv {
        write!(out, "{}", m.to_csv())?;
    } else {
        write!(out, "{m}")?;
    }
    Ok(())
}

fn write_components(out: &mut dyn Write, parts: &[(&str, Series)], json: bool) -> Outcome {
    if json {
        let map: serde_json::Map<String, serde_json::Value> = parts
            .iter()
            .map(|(k, s)| {
                (
                    k.to_string(),
                    serde_json::to_value(s).expect("serializable"),
                )
            })
            .collect();
        writeln!(out, "{}", serde_json::Value::Object(map))?;
    } else {
        let width = parts.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, s) in parts {
            writeln!(out, "{k:>width$}: {s}")?;
        }
    }
    Ok(())
}

fn write_spec(out: &mut dyn Write, spec: &AnySpec, json: bool) -> Outcome {
    write_components(out, &spec.components(), json)
}

fn bundle_parts(b: &SeqCharBundle) -> Vec<(&'static str, Series)> {
    vec![
        ("A", b.a.clone()),
        ("Z1", b.z1.clone()),
        ("Z2", b.z2.clone()),
        ("W", b.w.clone()),
    ]
}

fn seqchar(
    out: &mut dyn Write,
    family: Family,
    args: &SpecArgs,
    trunc: usize,
    oracle: bool,
    json: bool,
) -> Outcome {
    let spec = AnySpec::from_args(family, args, trunc)?;
    let parts = spec.seqchar()?;
    write_components(out, &parts, json)?;
    if !oracle {
        return Ok(());
    }
    let dar = match &spec {
        AnySpec::Dar(d) => d.clone(),
        AnySpec::Compressed(c) => c.unhat()?,
        _ => {
            return Err(Failure::Usage(
                "--oracle needs the dar or compressed family".into(),
            ))
        }
    };
    let from_matrix = dar_seqchar_oracle(&build_dar(&dar, dar.trunc())?)?;
    if !json {
        writeln!(out, "oracle:")?;
    }
    let oracle_parts = bundle_parts(&from_matrix);
    write_components(out, &oracle_parts, json)?;
    let mut bad = Vec::new();
    for ((name, closed), (_, solved)) in parts.iter().zip(&oracle_parts) {
        let n = closed.trunc().min(solved.trunc());
        let first = (0..=n).find(|&k| closed.coeff(k) != solved.coeff(k));
        match first {
            Some(k) => bad.push(format!("{name} differs at degree {k}")),
            None if !json => writeln!(out, "{name}: agrees through degree {n}")?,
            None => {}
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(bad.join("; ")))
    }
}

#[allow(clippy::too_many_arguments)]
fn compress(
    out: &mut dyn Write,
    from_dar: bool,
    from_double: bool,
    matrix: Option<PathBuf>,
    args: &SpecArgs,
    rows: Option<usize>,
    trunc: Option<usize>,
    format: Format,
) -> Outcome {
    if let Some(path) = matrix {
        let m: Matrix = read_json(&path)?;
        let c = match rows {
            Some(n) => compress_matrix_to(&m, n)?,
            None => riordan_core::compress::compress_matrix(&m)?,
        };
        return write_matrix(out, &c, format);
    }
    let n =
        rows.ok_or_else(|| Failure::Usage("--rows is required unless --matrix is given".into()))?;
    let trunc = trunc.unwrap_or(2 * n + 2);
    if from_dar {
        let spec = match AnySpec::from_args(Family::Dar, args, trunc)? {
            AnySpec::Dar(d) => d,
            _ => unreachable!("family is dar"),
        };
        let c = compress_matrix_to(&build_dar(&spec, 2 * n)?, n)?;
        if c != build_compressed(&hat_spec(&spec)?, n)? {
            return Err(Failure::Verify(
                "compressing the matrix and compressing the spec disagree".into(),
            ));
        }
        write_matrix(out, &c, format)
    } else if from_double {
        let spec = match AnySpec::from_args(Family::Double, args, trunc)? {
            AnySpec::Double(d) => d,
            _ => unreachable!("family is double"),
        };
        let c = compress_matrix_to(&build_double(&spec, 2 * n)?, n)?;
        let core = CompressedDouble::new(spec.g.hat()?, spec.f1.hat()?, spec.f2.hat()?)?;
        if c != riordan_core::compress::build_compressed_double(&core, n)? {
            return Err(Failure::Verify(
                "compressing the matrix and compressing the spec disagree".into(),
            ));
        }
        write_matrix(out, &c, format)
    } else {
        Err(Failure::Usage(
            "give one of --from-dar, --from-double or --matrix".into(),
        ))
    }
}

fn eco(
    out: &mut dyn Write,
    path: &Path,
    levels: usize,
    production: bool,
    generate: Option<usize>,
    size: Option<usize>,
    json: bool,
) -> Outcome {
    let rule: SuccessionRule = read_json(path)?;
    let tree = rule_levels(&rule, levels)?;
    let counts: Vec<String> = tree.counts.iter().map(ToString::to_string).collect();
    let size = size.unwrap_or((levels + 2).min(rule.window));
    let p = rule_production(&rule, size)?;
    let generated = match generate {
        Some(rows) => Some(generate_from_production(
            &p,
            rows,
            &unit_seed(size, rule.axiom),
        )?),
        None => None,
    };
    if json {
        let mut obj = serde_json::json!({ "levels": counts });
        if production {
            obj["production"] = serde_json::to_value(&p).expect("serializable");
        }
        if let Some(g) = &generated {
            obj["generated"] = serde_json::to_value(g).expect("serializable");
        }
        writeln!(out, "{obj}")?;
    } else {
        writeln!(out, "levels: {}", counts.join(", "))?;
        if production {
            writeln!(out, "production:")?;
            write!(out, "{p}")?;
        }
        if let Some(g) = &generated {
            writeln!(out, "generated:")?;
            write!(out, "{g}")?;
        }
    }
    if let Some(g) = &generated {
        // Labels at or beyond the matrix size are dropped by the truncated
        // production matrix, so rows are compared only while every label
        // seen so far fits.
        let exact = tree
            .labels
            .iter()
            .take_while(|level| level.keys().all(|&l| l < size))
            .count()
            .min(g.rows());
        for i in 0..exact {
            let sum: Rational = g.row(i).iter().sum();
            if sum != Rational::from_integer(tree.counts[i].clone().into()) {
                return Err(Failure::Verify(format!(
                    "row {i} of the generated array sums to {} but level {i} has {} nodes",
                    format_rational(&sum),
                    tree.counts[i]
                )));
            }
        }
    }
    Ok(())
}

fn write_report(out: &mut dyn Write, r: &TpReport, json: bool) -> Outcome {
    if json {
        writeln!(out, "{}", to_json(r))?;
        return Ok(());
    }
    writeln!(
        out,
        "verdict: {} (leading {}x{} block, minors of order <= {})",
        r.verdict.as_str(),
        r.n,
        r.n,
        r.max_order
    )?;
    if let Some(w) = &r.witness {
        writeln!(
            out,
            "witness: rows {:?} cols {:?} det {}",
            w.rows,
            w.cols,
            format_rational(&w.det)
        )?;
    }
    Ok(())
}

fn core_of(c: &CoreArgs) -> std::result::Result<CompressedDouble, Failure> {
    Ok(CompressedDouble::from_exprs(&c.g, &c.f1, &c.f2, c.n + 2)?)
}

fn rational_arg(name: &str, v: &Option<String>) -> std::result::Result<Rational, Failure> {
    let text = v
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("--{name} is required")))?;
    Ok(parse_rational(text)?)
}

fn tp_cmd(out: &mut dyn Write, cmd: TpCmd) -> Outcome {
    match cmd {
        TpCmd::Check {
            matrix,
            max_order,
            n,
            json,
        } => {
            let m: Matrix = read_json(&matrix)?;
            let report = tp::is_tp(&m, n.unwrap_or(m.rows()), max_order);
            if let Some(w) = &report.witness {
                if !tp::recheck_witness(&m, w) {
                    return Err(Failure::Verify(
                        "cofactor expansion disagrees with the witness".into(),
                    ));
                }
            }
            write_report(out, &report, json)
        }
        TpCmd::Pf {
            seq,
            n,
            max_order,
            json,
        } => {
            let terms = seq
                .split(',')
                .map(|s| parse_rational(s.trim()))
                .collect::<riordan_core::Result<Vec<_>>>()?;
            if terms.len() < n {
                return Err(Failure::Usage(format!(
                    "--seq has {} terms but --n is {n}",
                    terms.len()
                )));
            }
            write_report(out, &tp::is_pf(&terms, n, max_order)?, json)
        }
        TpCmd::Ladder { core, json } => {
            let base = core_of(&core)?;
            let rep = tp::tp_check_thm61(&base, core.n, core.max_order)?;
            write_report(out, &rep.report, json)?;
            if !json {
                let l = rep.ladder;
                writeln!(
                    out,
                    "factorization: {}\nH1 recursion: {}\nH2 recursion: {}",
                    l.factorization, l.h1, l.h2
                )?;
            }
            if rep.ladder.holds() {
                Ok(())
            } else {
                Err(Failure::Verify(
                    "the factorization ladder does not hold".into(),
                ))
            }
        }
        TpCmd::Build {
            kind,
            core,
            b0,
            b1,
            alpha,
            json,
        } => {
            let base = core_of(&core)?;
            let built = match kind {
                TpBuildKind::LinearB => tp::tp_build_linear_b(
                    &rational_arg("b0", &b0)?,
                    &rational_arg("b1", &b1)?,
                    &base,
                    core.n,
                    core.max_order,
                )?,
                TpBuildKind::TgAlpha => tp::tp_build_tg_alpha(
                    &rational_arg("alpha", &alpha)?,
                    &base,
                    core.n,
                    core.max_order,
                )?,
            };
            if !json {
                writeln!(out, "b: {}", built.spec.b)?;
            }
            write_report(out, &built.report, json)?;
            if built.report.is_tp() {
                Ok(())
            } else {
                Err(Failure::Verify(
                    "the constructed array has a negative minor".into(),
                ))
            }
        }
    }
}
