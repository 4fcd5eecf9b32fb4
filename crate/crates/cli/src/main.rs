use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use ree_core::census::{
    census, companion_input, compare_type, ree_input, sl2_char2_input, unipotent_matrix_histogram,
    validate, GroupInput, TypeData,
};
use ree_core::chevalley::Matrix7;
use ree_core::nse::{self, nse_map, Family};
use ree_core::numbers::{group_order, order_table, ReeParams};
use ree_core::prime_graph::{isolation_check, ree_graph};
use ree_core::ree::{CensusMode, ReeContext};
use ree_core::verify::{battery, VerifyOptions, DEFAULT_SEED};
use ree_core::Execution;

/// Exact computations for the small Ree groups ²G₂(q), q = 3^(2n+1).
#[derive(Parser, Debug)]
#[command(name = "ree-kit", version)]
struct Cli {
    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct QArg {
    /// Field size, an odd power of 3.
    #[arg(long)]
    q: String,
    /// Accept q = 3, outside the range where the closed forms are theorems.
    #[arg(long)]
    allow_small: bool,
}

#[derive(Args, Debug, Clone, Copy)]
struct Format {
    #[arg(long, conflicts_with = "tsv")]
    json: bool,
    #[arg(long)]
    tsv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// |²G₂(q)|; with --table the subgroup order table.
    Order {
        #[command(flatten)]
        q: QArg,
        #[arg(long)]
        table: bool,
    },
    /// Number of elements of each order.
    Nse {
        #[command(flatten)]
        q: QArg,
        #[command(flatten)]
        format: Format,
        /// Label each order with its family A1..A8.
        #[arg(long)]
        families: bool,
        /// Print the set of distinct counts and the coincidences instead.
        #[arg(long)]
        set: bool,
    },
    /// Element orders.
    Spectrum {
        #[command(flatten)]
        q: QArg,
        #[arg(long)]
        json: bool,
    },
    /// Prime graph, components and order components.
    PrimeGraph {
        #[command(flatten)]
        q: QArg,
        /// Graphviz output instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// |G(n)| = #{x : x^n = 1}, and f(n) = #{x : n | o(x)}.
    OrderType {
        #[command(flatten)]
        q: QArg,
        #[arg(long)]
        n: String,
        /// Split f(n) over the families A1..A8.
        #[arg(long)]
        families: bool,
    },
    /// Run the invariant battery; exit 1 if any check fails.
    Verify {
        #[command(flatten)]
        q: QArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print a generator matrix, or the census input for all four.
    Generator {
        #[command(flatten)]
        q: QArg,
        #[arg(long, value_enum, default_value_t = GeneratorName::Alpha)]
        name: GeneratorName,
        /// Parameter t as base-3 digits, constant first, e.g. "0,1".
        #[arg(long, default_value = "1")]
        t: String,
        #[arg(long)]
        json: bool,
        /// Emit {field, generators} for α(1), β(1), γ(1), τ.
        #[arg(long)]
        group_input: bool,
    },
    /// Order histogram of the Sylow 3-subgroup.
    Unipotent {
        #[command(flatten)]
        q: QArg,
        #[arg(long, value_enum, default_value_t = UnipotentMode::ClosedForm)]
        mode: UnipotentMode,
    },
    /// Brute-force census of a matrix group.
    Census {
        /// Group input JSON: {"field": {...}, "generators": [...], "bound": n}.
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also run the divisibility checks; exit 1 on a violation.
        #[arg(long)]
        validate: bool,
    },
    /// Compare two census or nse JSON files for equal order and nse.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum GeneratorName {
    Alpha,
    Beta,
    Gamma,
    Tau,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum UnipotentMode {
    ClosedForm,
    Exhaustive,
    Matrix,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Preset {
    /// α(1), β(1), γ(1), τ over GF(3).
    Ree3,
    Sl2_8,
    /// Companion matrix of x³+2x+1 over GF(3).
    Cyclic26,
}

/// Bad arguments or input: exit status 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn params(q: &QArg) -> Result<ReeParams> {
    let value: BigUint =
        q.q.trim()
            .parse()
            .map_err(|_| usage("q must be an odd power of 3"))?;
    if value == BigUint::from(3u32) && !q.allow_small {
        return Err(usage(
            "q = 3 is outside the theorem range; pass --allow-small",
        ));
    }
    ReeParams::from_q(&value, q.allow_small).map_err(|_| usage("q must be an odd power of 3"))
}

fn parse_n(s: &str) -> Result<BigUint> {
    match s.trim().parse::<BigUint>() {
        Ok(n) if n > BigUint::ZERO => Ok(n),
        _ => Err(usage(format!("n must be a positive integer, got {s:?}"))),
    }
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

// stdout writes that propagate errors, so a closed pipe ends the run quietly
macro_rules! out {
    ($($t:tt)*) => { write!(std::io::stdout(), $($t)*)? };
}

macro_rules! outln {
    ($($t:tt)*) => { writeln!(std::io::stdout(), $($t)*)? };
}

fn print_json(v: &Value) -> Result<()> {
    outln!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("REE_KIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        usage(format!(
            "REE_KIT_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring the worker pool")?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn histogram_json<K: ToString, V: ToString>(h: impl IntoIterator<Item = (K, V)>) -> Value {
    let map: Map<String, Value> = h
        .into_iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
        .collect();
    Value::Object(map)
}

fn generator_matrix<'f>(ctx: &'f ReeContext, name: GeneratorName, t: &str) -> Result<Matrix7<'f>> {
    let digits: Vec<u64> = t
        .split(',')
        .map(|d| d.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| usage(format!("t must be comma-separated digits, got {t:?}")))?;
    let t = ctx
        .field()
        .element(&digits)
        .map_err(|e| usage(format!("bad t: {e}")))?;
    let word = match name {
        GeneratorName::Alpha => ctx.alpha(t),
        GeneratorName::Beta => ctx.beta(t),
        GeneratorName::Gamma => ctx.gamma(t),
        GeneratorName::Tau => ctx.tau(),
    };
    Ok(word.evaluate()?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Order { q, table } => {
            let p = params(&q)?;
            if table {
                print_json(&order_table(&p).to_json())?;
            } else {
                outln!("{}", group_order(&p));
            }
        }
        Command::Nse {
            q,
            format,
            families,
            set,
        } => {
            let m = nse_map(&params(&q)?)?;
            if set {
                let s = m.nse_set();
                let coincidences: Vec<Value> = s
                    .coincidences
                    .iter()
                    .map(|c| {
                        json!({
                            "count": c.count.to_string(),
                            "orders": c.orders.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                print_json(&json!({
                    "values": s.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "coincidences": coincidences,
                }))?;
            } else if format.tsv {
                out!("{}", m.to_tsv(families));
            } else if format.json {
                print_json(&m.to_json(families))?;
            } else {
                for (i, e) in &m.entries {
                    if families {
                        outln!("m_{i} = {}  [{}]", e.count, e.family);
                    } else {
                        outln!("m_{i} = {}", e.count);
                    }
                }
            }
        }
        Command::Spectrum { q, json } => {
            let s = nse::spectrum(&params(&q)?)?;
            let items: Vec<String> = s.iter().map(|i| i.to_string()).collect();
            if json {
                print_json(&json!(items))?;
            } else {
                outln!("{}", items.join(" "));
            }
        }
        Command::PrimeGraph { q, dot } => {
            let p = params(&q)?;
            let g = ree_graph(&p)?;
            if dot {
                out!("{}", g.to_dot());
            } else {
                let mut v = g.to_json()?;
                if p.n > 0 {
                    v["isolated"] = Value::Bool(isolation_check(&p)?);
                }
                print_json(&v)?;
            }
        }
        Command::OrderType { q, n, families } => {
            let m = nse_map(&params(&q)?)?;
            let n = parse_n(&n)?;
            let mut v = json!({
                "n": n.to_string(),
                "order_type": m.order_type(&n).to_string(),
                "f": m.f(&n).to_string(),
            });
            if families {
                let split: Map<String, Value> = m
                    .f_families(&n)
                    .into_iter()
                    .map(|(f, c): (Family, BigUint)| (f.to_string(), Value::String(c.to_string())))
                    .collect();
                v["f_families"] = Value::Object(split);
            }
            print_json(&v)?;
        }
        Command::Verify {
            q,
            seed,
            samples,
            json,
        } => {
            let report = battery(&params(&q)?, VerifyOptions { seed, samples })?;
            if json {
                let checks: Vec<Value> = report
                    .checks
                    .iter()
                    .map(|c| json!({"check": c.name, "passed": c.passed}))
                    .collect();
                print_json(&json!({"passed": report.all_passed(), "checks": checks}))?;
            } else {
                for c in &report.checks {
                    outln!("{}  {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
                }
                let bad = report.violations().len();
                outln!("{} checks, {bad} failed", report.checks.len());
            }
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Generator {
            q,
            name,
            t,
            json,
            group_input,
        } => {
            let ctx = ReeContext::from_params(&params(&q)?)?;
            if group_input {
                let input = ree_input(&ctx)?;
                outln!("{}", serde_json::to_string_pretty(&input.to_json())?);
            } else {
                let m = generator_matrix(&ctx, name, &t)?;
                if json {
                    outln!("{}", serde_json::to_string_pretty(&m.to_json())?);
                } else {
                    out!("{m}");
                }
            }
        }
        Command::Unipotent { q, mode } => {
            let ctx = ReeContext::from_params(&params(&q)?)?;
            let hist = match mode {
                UnipotentMode::ClosedForm => ctx.unipotent_census(CensusMode::ClosedForm)?,
                UnipotentMode::Exhaustive => ctx.unipotent_census(CensusMode::Exhaustive(exec))?,
                UnipotentMode::Matrix => unipotent_matrix_histogram(&ctx, exec)?,
            };
            print_json(&histogram_json(hist))?;
        }
        Command::Census {
            file,
            preset,
            out,
            validate: check,
        } => {
            let input = match (file, preset) {
                (Some(path), _) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                    GroupInput::parse(&text)
                        .map_err(|e| usage(format!("{}: {e}", path.display())))?
                }
                (None, Some(Preset::Ree3)) => ree_input(&ReeContext::new(0)?)?,
                (None, Some(Preset::Sl2_8)) => sl2_char2_input(3)?,
                (None, Some(Preset::Cyclic26)) => companion_input(3, &[1, 2, 0, 1])?,
                (None, None) => return Err(usage("census needs --file or --preset")),
            };
            let result = census(&input, exec)?;
            let text = serde_json::to_string_pretty(&result.to_json())?;
            match out {
                Some(path) => fs::write(&path, text + "\n")
                    .with_context(|| format!("writing {}", path.display()))?,
                None => outln!("{text}"),
            }
            if check {
                let report = validate(&result)?;
                for c in report.violations() {
                    eprintln!("violation: {}", c.name);
                }
                if !report.all_passed() {
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Compare { a, b } => {
            let load = |p: &PathBuf| -> Result<TypeData> {
                TypeData::from_json(&read_json(p)?)
                    .map_err(|e| usage(format!("{}: {e}", p.display())))
            };
            let verdict = compare_type(&load(&a)?, &load(&b)?)?;
            print_json(&verdict.to_json())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| run(cli));
    match outcome {
        Ok(code) => code,
        Err(e) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}
