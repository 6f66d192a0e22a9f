//! Command-line front end. Exit codes: 0 success, 1 a verification failed,
//! 2 bad usage or input.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arithfns::{sht, theta};
use crate::conjecture::{appendix_trace, verify_conjecture};
use crate::error::{Error, Result};
use crate::exactnum::{rf_eq, Fraction, RatFunc};
use crate::farey::{farey_buckets, farey_seq};
use crate::harness::batch::{run_batch, BatchConfig};
use crate::harness::report::{to_csv, to_json, ReportFormat};
use crate::repspec::{Index, RepSpec};
use crate::strata::{
    all_strata, classify_mmp, discrepancies, stratum_class, stratum_local_mst, stratum_type,
    StratumSpec,
};
use crate::stringy::{
    mst_alpha, mst_alpha_subsets_capped, mst_at_origin, mst_zp, stringy_euler, DEFAULT_SUBSET_CAP,
};

// Writes to stdout, ignoring a closed pipe (e.g. `stringy ... | head`).
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "stringy", version, about = "Stringy invariants of linear alpha_p- and Z/p-quotients")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// The prime p.
    #[arg(long)]
    p: i64,
    /// Block dimensions d_i in [0, p-1], comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "d_plus")]
    d: Option<Vec<i64>>,
    /// Block sizes d_i + 1 in [1, p], comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    d_plus: Option<Vec<i64>>,
}

impl SpecArgs {
    fn spec(&self) -> Result<RepSpec> {
        match (&self.d, &self.d_plus) {
            (Some(d), _) => RepSpec::new(self.p, d.clone()),
            (None, Some(dp)) => RepSpec::from_plus(self.p, dp),
            (None, None) => Err(Error::Parse("one of --d or --d-plus is required".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Alpha,
    Zp,
    Subsets,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportKind {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build both multisets and check that they are equal.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "text")]
        report: Format,
    },
    /// Print the stringy invariant as a rational function in L.
    Mst {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "alpha")]
        variant: Variant,
        /// Also print the stringy Euler number.
        #[arg(long)]
        euler: bool,
        /// Also print the invariant restricted to the origin.
        #[arg(long)]
        origin: bool,
    },
    /// Print the stringy Euler number.
    Euler {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Print the MMP class and the discrepancies of the exceptional divisor.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Describe strata: singularity type, class and local invariant.
    Strata {
        #[command(flatten)]
        spec: SpecArgs,
        /// Subset of I* as `lambda:i` pairs, e.g. "1:2,1:4". All strata when omitted.
        #[arg(long)]
        subset: Option<String>,
        /// Anchor `lambda:i`; defaults to the smallest element of the subset.
        #[arg(long)]
        anchor: Option<String>,
    },
    /// Print a Farey sequence, optionally bucketed for a prime.
    Farey {
        #[arg(long)]
        order: i64,
        #[arg(long)]
        buckets: Option<i64>,
    },
    /// Sweep primes and block vectors and report every check.
    Batch {
        #[arg(long, default_value_t = 31)]
        prime_max: i64,
        #[arg(long, default_value_t = 12)]
        dim_max: i64,
        /// Only single blocks 3 <= d+ <= p.
        #[arg(long)]
        indecomposable: bool,
        #[arg(long, default_value_t = 4)]
        workers: usize,
        #[arg(long, default_value_t = 12)]
        oracle_cap: usize,
        /// Report file; the format follows the extension unless --format is set.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<ReportKind>,
        /// Record per-row wall time (reports are then no longer reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Compare the closed form with the subset-sum expansion.
    Oracle {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: usize,
    },
    /// Evaluate theta(y).
    Theta {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        y: String,
    },
    /// Evaluate sht(j).
    Sht {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        j: i64,
    },
    /// Run every step of the equality proof on one instance.
    Trace {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

/// Parses `argv` (program name first) and runs the command.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.cmd) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    outln!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn parse_index(s: &str) -> Result<Index> {
    let (a, b) = s
        .trim()
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected lambda:i, got {s:?}")))?;
    let lam = a.trim().parse().map_err(|_| Error::Parse(format!("bad block index {a:?}")))?;
    let i = b.trim().parse().map_err(|_| Error::Parse(format!("bad position {b:?}")))?;
    Ok((lam, i))
}

fn stratum_json(s: &RepSpec, st: &StratumSpec) -> Result<serde_json::Value> {
    Ok(json!({
        "subset": st.subset(),
        "anchor": st.anchor(),
        "g": st.g(),
        "type": stratum_type(s, st)?,
        "class": stratum_class(s, st)?.to_string(),
        "local_mst": stratum_local_mst(s, st)?.to_string(),
    }))
}

/// `Ok(false)` means a check ran and failed.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Verify { spec, report } => {
            let r = verify_conjecture(&spec.spec()?)?;
            match report {
                Format::Json => outln!("{}", serde_json::to_string_pretty(&r)?),
                Format::Text => {
                    outln!("L = {}", r.lhs);
                    outln!("R = {}", r.rhs);
                    outln!("equal: {}", r.equal);
                    if !r.equal {
                        outln!("diff: {:?}", r.diff);
                    }
                }
            }
            Ok(r.equal)
        }
        Command::Mst { spec, variant, euler, origin } => {
            let s = spec.spec()?;
            let mut values: Vec<(&str, RatFunc)> = Vec::new();
            let cap = DEFAULT_SUBSET_CAP;
            match variant {
                Variant::Alpha => values.push(("alpha_closed", mst_alpha(&s)?)),
                Variant::Zp => values.push(("zp_closed", mst_zp(&s)?)),
                Variant::Subsets => values.push(("alpha_subsets", mst_alpha_subsets_capped(&s, cap)?)),
                Variant::All => {
                    values.push(("alpha_closed", mst_alpha(&s)?));
                    values.push(("alpha_subsets", mst_alpha_subsets_capped(&s, cap)?));
                    values.push(("zp_closed", mst_zp(&s)?));
                }
            }
            let agree = values.windows(2).all(|w| rf_eq(&w[0].1, &w[1].1));
            if values.len() == 1 && !euler && !origin {
                outln!("{}", values[0].1);
                return Ok(true);
            }
            let mut obj = serde_json::Map::new();
            for (name, v) in &values {
                obj.insert((*name).to_string(), json!(v.to_string()));
            }
            if origin {
                let at: serde_json::Map<_, _> = values
                    .iter()
                    .map(|(name, v)| ((*name).to_string(), json!(mst_at_origin(&s, v).to_string())))
                    .collect();
                obj.insert("origin".into(), serde_json::Value::Object(at));
            }
            if values.len() > 1 {
                obj.insert("agree".into(), json!(agree));
            }
            if euler {
                obj.insert("euler".into(), json!(stringy_euler(&s)?));
            }
            let v = serde_json::Value::Object(obj);
            print_json(&v)?;
            Ok(agree)
        }
        Command::Euler { spec } => {
            outln!("{}", stringy_euler(&spec.spec()?)?);
            Ok(true)
        }
        Command::Classify { spec } => {
            let s = spec.spec()?;
            let class = classify_mmp(&s);
            let disc = discrepancies(&s).ok();
            print_json(&json!({ "class": class, "D": s.bold_d(), "p": s.p(), "discrepancies": disc }))?;
            Ok(true)
        }
        Command::Strata { spec, subset, anchor } => {
            let s = spec.spec()?;
            let v = match subset {
                Some(text) => {
                    let sub: Vec<Index> =
                        text.split(',').map(parse_index).collect::<Result<_>>()?;
                    let st = match anchor {
                        Some(a) => StratumSpec::new(&s, sub, parse_index(&a)?)?,
                        None => StratumSpec::with_first_anchor(&s, sub)?,
                    };
                    stratum_json(&s, &st)?
                }
                None => {
                    let k = s.index_set().len();
                    if k > 12 {
                        return Err(Error::SubsetCapExceeded { size: k, cap: 12 });
                    }
                    let list: Vec<_> =
                        all_strata(&s).iter().map(|st| stratum_json(&s, st)).collect::<Result<_>>()?;
                    json!(list)
                }
            };
            print_json(&v)?;
            Ok(true)
        }
        Command::Farey { order, buckets } => {
            let f = farey_seq(order)?;
            let v = match buckets {
                None => serde_json::to_value(&f)?,
                Some(p) => {
                    if !crate::repspec::is_prime(p) {
                        return Err(Error::NotPrime(p));
                    }
                    if p <= order {
                        return Err(Error::PreconditionViolated(format!(
                            "bucketing needs p > order, got p = {p}, order = {order}"
                        )));
                    }
                    json!({ "order": order, "p": p, "buckets": farey_buckets(&f, p) })
                }
            };
            print_json(&v)?;
            Ok(true)
        }
        Command::Batch {
            prime_max,
            dim_max,
            indecomposable,
            workers,
            oracle_cap,
            out,
            format,
            timings,
        } => {
            let output = out.map(|path| {
                let fmt = match format {
                    Some(ReportKind::Json) => ReportFormat::Json,
                    Some(ReportKind::Csv) => ReportFormat::Csv,
                    None => ReportFormat::from_path(&path),
                };
                (path, fmt)
            });
            let to_stdout = output.is_none().then_some(format);
            let cfg = BatchConfig {
                prime_max,
                total_dim_max: dim_max,
                indecomposable_only: indecomposable,
                worker_count: workers,
                oracle_cap,
                timings,
                output,
            };
            let outcome = run_batch(&cfg)?;
            match to_stdout {
                Some(Some(ReportKind::Csv)) => out!("{}", to_csv(&outcome.rows)?),
                Some(Some(ReportKind::Json)) => out!("{}", to_json(&outcome)?),
                _ => {}
            }
            eprintln!(
                "{} rows, {} failures, {} oracle checks",
                outcome.summary.rows, outcome.summary.failures, outcome.summary.oracle_checked
            );
            for r in outcome.rows.iter().filter(|r| !r.ok()) {
                eprintln!("FAILED p={} d_plus={:?}: {:?}", r.p, r.d_plus, r.error);
            }
            Ok(outcome.summary.all_ok)
        }
        Command::Oracle { spec, cap } => {
            let s = spec.spec()?;
            let closed = mst_alpha(&s)?;
            let subsets = mst_alpha_subsets_capped(&s, cap)?;
            let eq = rf_eq(&closed, &subsets);
            print_json(&json!({
                "closed": closed.to_string(),
                "subsets": subsets.to_string(),
                "equal": eq,
            }))?;
            Ok(eq)
        }
        Command::Theta { spec, y } => {
            let y: Fraction = y.parse()?;
            outln!("{}", theta(&spec.spec()?, &y)?);
            Ok(true)
        }
        Command::Sht { spec, j } => {
            if j < 1 {
                return Err(Error::OutOfDomain(format!("j = {j}")));
            }
            outln!("{}", sht(&spec.spec()?, j));
            Ok(true)
        }
        Command::Trace { spec } => {
            let tr = appendix_trace(&spec.spec()?)?;
            outln!("{}", serde_json::to_string_pretty(&tr)?);
            Ok(tr.all_ok())
        }
    }
}
