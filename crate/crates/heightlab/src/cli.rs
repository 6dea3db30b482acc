//! Command line front end.
//!
//! Exit codes: 0 success, 1 domain error, 2 a FAIL verdict in `verify`,
//! 3 precision exhaustion, 64 usage error.

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::bounds::{reports_to_csv, verify_suite, Verdict};
use crate::families::{an_necessary_conditions, laguerre_norm, laguerre_poly};
use crate::heights::{
    height_additive, height_multiplicative, mahler_from_poly, CombinationMode,
};
use crate::perms::{generator_criterion, GroupTag};
use crate::poly::{ExponentVector, IntPoly};
use crate::roots::find_roots;
use crate::snfun::{asymptotic_ratio, c_n, s_n_bruteforce, s_n_closed_zy, s_n_closed_zz,
    CenteredVector};
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "heightlab",
    about = "Certified Mahler measures, Weil heights and the inequalities relating them",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct PolyArgs {
    /// Coefficients, constant term first, e.g. --coeffs -1,-1,1
    #[arg(long, value_name = "c0,c1,...", allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Named family, e.g. --poly laguerre:8
    #[arg(long, value_name = "family:N")]
    poly: Option<String>,
}

#[derive(Args)]
struct CommonArgs {
    /// Target precision in bits for certified radii
    #[arg(long, default_value_t = 256)]
    bits: usize,
    /// Tolerance on final certified error radii
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output format
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certified root isolation
    Roots {
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// log of the Mahler measure of the polynomial
    Mahler {
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Height of the multiplicative conjugate combination ∏ β_i^{a_i}
    HeightMult {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_name = "a1,a2,...", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "an", value_parser = ["an", "sn"])]
        group: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Height of the additive conjugate combination Σ a_i β_i
    HeightAdd {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_name = "a1,a2,...", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "an", value_parser = ["an", "sn"])]
        group: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The averaged pairing s_n: closed forms via --h/--k, exact vectors via --x/--y
    Sn {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Rational entries, e.g. --x 3/2,-3/4,-3/4
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, default_value = "an", value_parser = ["an", "sn"])]
        group: String,
    },
    /// The minimum c_n of s_n(z^(n,h), z^(n,k)) with its argmin
    Cn {
        #[arg(long)]
        n: usize,
    },
    /// Whether the exponent vector yields a generator (distinct-values criterion)
    CheckGenerator {
        #[arg(long, value_name = "a1,a2,...", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "an", value_parser = ["an", "sn"])]
        group: String,
    },
    /// The truncated-exponential family polynomial and its invariants
    Laguerre {
        #[arg(long)]
        n: usize,
    },
    /// Run every applicable inequality check and report verdicts
    Verify {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_name = "a1,a2,...", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "an", value_parser = ["an", "sn"])]
        group: String,
        #[arg(long, default_value = "additive", value_parser = ["multiplicative", "additive"])]
        mode: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn parse_poly(args: &PolyArgs) -> Result<IntPoly> {
    match (&args.coeffs, &args.poly) {
        (Some(c), None) => {
            let coeffs: Result<Vec<BigInt>> = c
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad coefficient: {t}")))
                })
                .collect();
            Ok(IntPoly::from_coeffs(coeffs?))
        }
        (None, Some(spec)) => {
            let (fam, n) = spec
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected family:N, got {spec}")))?;
            let n: usize = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad family size: {n}")))?;
            match fam {
                "laguerre" => laguerre_poly(n),
                other => Err(Error::Parse(format!("unknown family: {other}"))),
            }
        }
        _ => Err(Error::Parse(
            "exactly one of --coeffs and --poly is required".into(),
        )),
    }
}

fn parse_exponents(s: &str) -> Result<ExponentVector> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad exponent: {t}")))
        })
        .collect()
}

fn parse_rationals(s: &str) -> Result<Vec<BigRational>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigRational>()
                .map_err(|_| Error::Parse(format!("bad rational: {t}")))
        })
        .collect()
}

fn parse_group(s: &str) -> GroupTag {
    match s {
        "sn" => GroupTag::Symmetric,
        _ => GroupTag::Alternating,
    }
}

fn emit(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Roots { poly, common } => {
            let p = parse_poly(&poly)?;
            let cs = find_roots(&p, common.bits)?;
            emit(&cs.to_json());
        }
        Cmd::Mahler { poly, common } => {
            let p = parse_poly(&poly)?;
            let cs = find_roots(&p, common.bits)?;
            let v = crate::heights::with_tolerance(&cs, common.tol, |c| mahler_from_poly(&p, c))?;
            emit(&v.to_json());
        }
        Cmd::HeightMult {
            poly,
            a,
            group,
            common,
        } => {
            let p = parse_poly(&poly)?;
            let a = parse_exponents(&a)?;
            let g = parse_group(&group);
            let cs = find_roots(&p, common.bits)?;
            let v = crate::heights::with_tolerance(&cs, common.tol, |c| {
                height_multiplicative(c, &a, g)
            })?;
            emit(&v.to_json());
        }
        Cmd::HeightAdd {
            poly,
            a,
            group,
            common,
        } => {
            let p = parse_poly(&poly)?;
            let a = parse_exponents(&a)?;
            let g = parse_group(&group);
            let cs = find_roots(&p, common.bits)?;
            let v =
                crate::heights::with_tolerance(&cs, common.tol, |c| height_additive(c, &a, g))?;
            emit(&v.to_json());
        }
        Cmd::Sn {
            n,
            h,
            k,
            x,
            y,
            group,
        } => {
            let value = match (h, k, &x, &y) {
                (Some(h), Some(k), None, None) => {
                    let n = n.ok_or_else(|| Error::Parse("--n required with --h/--k".into()))?;
                    s_n_closed_zz(n, h, k)?
                }
                (Some(h), None, None, Some(y)) => {
                    let y = CenteredVector::new(parse_rationals(y)?)?;
                    s_n_closed_zy(y.n(), h, &y)?
                }
                (None, None, Some(x), Some(y)) => {
                    let x = CenteredVector::new(parse_rationals(x)?)?;
                    let y = CenteredVector::new(parse_rationals(y)?)?;
                    s_n_bruteforce(&x, &y, parse_group(&group))?
                }
                _ => {
                    return Err(Error::Parse(
                        "use --n/--h/--k, or --h/--y, or --x/--y".into(),
                    ))
                }
            };
            emit(&serde_json::json!({
                "s_n": value.to_string(),
            }));
        }
        Cmd::Cn { n } => {
            let (v, (h, k)) = c_n(n)?;
            let ratio = asymptotic_ratio(n, &v);
            emit(&serde_json::json!({
                "n": n,
                "c_n": v.to_string(),
                "ratio": ratio,
                "argmin": [h, k],
            }));
        }
        Cmd::CheckGenerator { a, group } => {
            let a = parse_exponents(&a)?;
            let gen = generator_criterion(&a, parse_group(&group))?;
            emit(&serde_json::json!({ "generator": gen }));
        }
        Cmd::Laguerre { n } => {
            let p = laguerre_poly(n)?;
            let ev = an_necessary_conditions(&p).ok();
            emit(&serde_json::json!({
                "n": n,
                "poly": p.to_json(),
                "norm": laguerre_norm(n)?.to_string(),
                "evidence": ev.map(|e| serde_json::to_value(&e).expect("serializable")),
            }));
        }
        Cmd::Verify {
            poly,
            a,
            group,
            mode,
            common,
        } => {
            let p = parse_poly(&poly)?;
            let a = parse_exponents(&a)?;
            let g = parse_group(&group);
            let mode = if mode == "multiplicative" {
                CombinationMode::Multiplicative
            } else {
                CombinationMode::Additive
            };
            let reports = verify_suite(&p, &a, g, mode, common.bits, common.tol)?;
            if common.format == "csv" {
                print!("{}", reports_to_csv(&reports));
            } else {
                emit(&serde_json::to_value(&reports).expect("serializable"));
            }
            if reports.iter().any(|r| r.verdict == Verdict::Fail) {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

/// Parses and runs; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    if let Ok(threads) = std::env::var("HEIGHTLAB_THREADS") {
        if let Ok(t) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build_global();
        }
    }
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 64;
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::PrecisionExhausted { .. } => 3,
                Error::Parse(_) => 64,
                Error::Domain(_) => 1,
            }
        }
    }
}
