//! Array families as selected on the command line.

use std::path::PathBuf;

use clap::{Args, Parser, ValueEnum};
use riordan_core::compress::{
    build_compressed, build_compressed_double, compressed_seqchar, hat_spec, CompressedDouble,
    CompressedSpec, CompressedSpecText,
};
use riordan_core::double::{
    build_dar, build_double, dar_inverse, dar_mul, dar_production, dar_seqchar, double_inverse,
    double_mul, double_seqchar, DarSpec, DarSpecText, DoubleSpec, SeqCharBundle,
};
use riordan_core::riordan::{
    almost_mul, build_almost, build_quasi, build_riordan, quasi_mul, riordan_inverse, riordan_mul,
    riordan_production, riordan_seqchar, AlmostSpec, QuasiSpec, RiordanSpec,
};
use riordan_core::{series_of, Matrix, Parity, Series};

use crate::Failure;

type Res<T> = std::result::Result<T, Failure>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Riordan,
    Quasi,
    Almost,
    Double,
    Dar,
    Compressed,
}

/// Generating-function flags shared by every family.
#[derive(Args, Debug, Clone, Default)]
pub struct SpecArgs {
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long)]
    pub f1: Option<String>,
    #[arg(long)]
    pub f2: Option<String>,
    /// First column of a double almost-Riordan or compressed array.
    #[arg(long)]
    pub b: Option<String>,
    /// First column of an almost-Riordan array.
    #[arg(long)]
    pub d: Option<String>,
    /// Read the spec from a JSON file (dar and compressed families).
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(name = "second spec", no_binary_name = true)]
struct Group {
    #[command(flatten)]
    spec: SpecArgs,
}

impl SpecArgs {
    /// Parses the flags that follow "--".
    pub fn parse_group(args: &[String]) -> Res<SpecArgs> {
        if args.is_empty() {
            return Err(Failure::Usage(
                "a second spec is required after \"--\"".into(),
            ));
        }
        Group::try_parse_from(args)
            .map(|g| g.spec)
            .map_err(|e| Failure::Usage(e.to_string()))
    }

    fn series(&self, name: &str, value: &Option<String>, trunc: usize) -> Res<Series> {
        let text = value
            .as_deref()
            .ok_or_else(|| Failure::Usage(format!("--{name} is required for this family")))?;
        Ok(series_of(text, trunc)?)
    }
}

#[derive(Clone, Debug)]
pub enum AnySpec {
    Riordan(RiordanSpec),
    Quasi(QuasiSpec),
    Almost(AlmostSpec),
    Double(DoubleSpec),
    Dar(DarSpec),
    Compressed(CompressedSpec),
    CompressedCore(CompressedDouble),
}

fn unsupported(what: &str, spec: &AnySpec) -> Failure {
    Failure::Usage(format!(
        "{what} is not available for the {} family",
        spec.name()
    ))
}

fn unhat_core(c: &CompressedDouble) -> Res<DoubleSpec> {
    Ok(DoubleSpec::new(
        c.g.unhat(Parity::Even)?,
        c.f1.unhat(Parity::Odd)?,
        c.f2.unhat(Parity::Odd)?,
    )?)
}

fn hat_core(d: &DoubleSpec) -> Res<CompressedDouble> {
    Ok(CompressedDouble::new(d.g.hat()?, d.f1.hat()?, d.f2.hat()?)?)
}

fn read_text<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Res<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

impl AnySpec {
    pub fn from_args(family: Family, a: &SpecArgs, trunc: usize) -> Res<AnySpec> {
        if let Some(path) = &a.spec {
            return match family {
                Family::Dar => Ok(AnySpec::Dar(
                    read_text::<DarSpecText>(path)?.to_spec(trunc)?,
                )),
                Family::Compressed => Ok(AnySpec::Compressed(
                    read_text::<CompressedSpecText>(path)?.to_spec(trunc)?,
                )),
                _ => Err(Failure::Usage(
                    "--spec files hold dar or compressed specs".into(),
                )),
            };
        }
        let s = |name: &str, v: &Option<String>| a.series(name, v, trunc);
        Ok(match family {
            Family::Riordan => AnySpec::Riordan(RiordanSpec::new(s("g", &a.g)?, s("f", &a.f)?)?),
            Family::Quasi => AnySpec::Quasi(QuasiSpec::new(s("g", &a.g)?, s("f", &a.f)?)?),
            Family::Almost => AnySpec::Almost(AlmostSpec::new(
                s("d", &a.d)?,
                s("g", &a.g)?,
                s("f", &a.f)?,
            )?),
            Family::Double => AnySpec::Double(DoubleSpec::new(
                s("g", &a.g)?,
                s("f1", &a.f1)?,
                s("f2", &a.f2)?,
            )?),
            Family::Dar => AnySpec::Dar(DarSpec::new(
                s("b", &a.b)?,
                s("g", &a.g)?,
                s("f1", &a.f1)?,
                s("f2", &a.f2)?,
            )?),
            Family::Compressed => {
                let core = CompressedDouble::new(s("g", &a.g)?, s("f1", &a.f1)?, s("f2", &a.f2)?)?;
                match &a.b {
                    Some(_) => AnySpec::Compressed(CompressedSpec::new(s("b", &a.b)?, core)?),
                    None => AnySpec::CompressedCore(core),
                }
            }
        })
    }

    fn name(&self) -> &'static str {
        match self {
            AnySpec::Riordan(_) => "riordan",
            AnySpec::Quasi(_) => "quasi",
            AnySpec::Almost(_) => "almost",
            AnySpec::Double(_) => "double",
            AnySpec::Dar(_) => "dar",
            AnySpec::Compressed(_) | AnySpec::CompressedCore(_) => "compressed",
        }
    }

    pub fn build(&self, n: usize) -> Res<Matrix> {
        Ok(match self {
            AnySpec::Riordan(s) => build_riordan(s, n)?,
            AnySpec::Quasi(s) => build_quasi(s, n)?,
            AnySpec::Almost(s) => build_almost(s, n)?,
            AnySpec::Double(s) => build_double(s, n)?,
            AnySpec::Dar(s) => build_dar(s, n)?,
            AnySpec::Compressed(s) => build_compressed(s, n)?,
            AnySpec::CompressedCore(s) => build_compressed_double(s, n)?,
        })
    }

    pub fn mul(&self, other: &AnySpec) -> Res<AnySpec> {
        Ok(match (self, other) {
            (AnySpec::Riordan(a), AnySpec::Riordan(b)) => AnySpec::Riordan(riordan_mul(a, b)?),
            (AnySpec::Quasi(a), AnySpec::Quasi(b)) => AnySpec::Quasi(quasi_mul(a, b)?),
            (AnySpec::Almost(a), AnySpec::Almost(b)) => AnySpec::Almost(almost_mul(a, b)?),
            (AnySpec::Double(a), AnySpec::Double(b)) => AnySpec::Double(double_mul(a, b)?),
            (AnySpec::Dar(a), AnySpec::Dar(b)) => AnySpec::Dar(dar_mul(a, b)?),
            (AnySpec::Compressed(a), AnySpec::Compressed(b)) => {
                AnySpec::Compressed(hat_spec(&dar_mul(&a.unhat()?, &b.unhat()?)?)?)
            }
            (AnySpec::CompressedCore(a), AnySpec::CompressedCore(b)) => {
                AnySpec::CompressedCore(hat_core(&double_mul(&unhat_core(a)?, &unhat_core(b)?)?)?)
            }
            _ => {
                return Err(Failure::Usage(
                    "both specs must belong to the same family".into(),
                ))
            }
        })
    }

    pub fn inverse(&self) -> Res<AnySpec> {
        Ok(match self {
            AnySpec::Riordan(a) => AnySpec::Riordan(riordan_inverse(a)?),
            AnySpec::Double(a) => AnySpec::Double(double_inverse(a)?),
            AnySpec::Dar(a) => AnySpec::Dar(dar_inverse(a)?),
            AnySpec::Compressed(a) => AnySpec::Compressed(hat_spec(&dar_inverse(&a.unhat()?)?)?),
            AnySpec::CompressedCore(a) => {
                AnySpec::CompressedCore(hat_core(&double_inverse(&unhat_core(a)?)?)?)
            }
            AnySpec::Quasi(_) | AnySpec::Almost(_) => return Err(unsupported("inverse", self)),
        })
    }

    /// Production matrix of size `n + 1`, already checked against the array.
    pub fn production(&self, n: usize) -> Res<Matrix> {
        match self {
            AnySpec::Riordan(s) => Ok(riordan_production(s, n)?),
            AnySpec::Dar(s) => Ok(dar_production(s, n)?),
            _ => Err(unsupported("a production matrix", self)),
        }
    }

    pub fn production_shift(&self) -> usize {
        match self {
            AnySpec::Riordan(_) | AnySpec::Quasi(_) | AnySpec::Almost(_) => 1,
            _ => 2,
        }
    }

    pub fn seqchar(&self) -> Res<Vec<(&'static str, Series)>> {
        let bundle = |b: SeqCharBundle| vec![("A", b.a), ("Z1", b.z1), ("Z2", b.z2), ("W", b.w)];
        Ok(match self {
            AnySpec::Riordan(s) => {
                let az = riordan_seqchar(s, s.g.coeff(0))?;
                vec![("A", az.a), ("Z", az.z)]
            }
            AnySpec::Double(s) => {
                let sc = double_seqchar(s)?;
                vec![("A1", sc.a1), ("A2", sc.a2), ("Z", sc.z)]
            }
            AnySpec::Dar(s) => bundle(dar_seqchar(s)?),
            AnySpec::Compressed(s) => bundle(compressed_seqchar(s)?),
            _ => return Err(unsupported("sequence characterization", self)),
        })
    }

    pub fn components(&self) -> Vec<(&'static str, Series)> {
        match self {
            AnySpec::Riordan(s) => vec![("g", s.g.clone()), ("f", s.f.clone())],
            AnySpec::Quasi(s) => vec![("g", s.g.clone()), ("f", s.f.clone())],
            AnySpec::Almost(s) => vec![("d", s.d.clone()), ("g", s.g.clone()), ("f", s.f.clone())],
            AnySpec::Double(s) => vec![
                ("g", s.g.clone()),
                ("f1", s.f1.clone()),
                ("f2", s.f2.clone()),
            ],
            AnySpec::Dar(s) => vec![
                ("b", s.b.clone()),
                ("g", s.g.clone()),
                ("f1", s.f1.clone()),
                ("f2", s.f2.clone()),
            ],
            AnySpec::Compressed(s) => vec![
                ("b", s.b.clone()),
                ("g", s.core.g.clone()),
                ("f1", s.core.f1.clone()),
                ("f2", s.core.f2.clone()),
            ],
            AnySpec::CompressedCore(s) => vec![
                ("g", s.g.clone()),
                ("f1", s.f1.clone()),
                ("f2", s.f2.clone()),
            ],
        }
    }
}
