mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hess_gkm::cohomology::{self, CohomologyPresentation, DEFAULT_LA_BUDGET};
use hess_gkm::combinatorics::{self, factorial, partitions_of};
use hess_gkm::rep::{self, ClassFunction, ModuleDecomposition};
use hess_gkm::{betti, gkm};
use hess_gkm::{Error, HessenbergFunction, Result};

const SCHEMA: &str = "hess-gkm/1";

/// Front-end result: math errors from the library, or I/O errors of our own.
type CliResult<T> = std::result::Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(
    name = "hess-gkm",
    version,
    about = "Invariants of Hessenberg varieties, computed on labeled permutation graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest n for which full S_n enumerations are attempted.
    #[arg(long, global = true, default_value_t = 8)]
    cap_n: usize,

    /// Matrix-entry ceiling for exact linear algebra; larger systems are skipped.
    #[arg(long, global = true, default_value_t = DEFAULT_LA_BUDGET)]
    la_budget: u128,

    /// Worker threads for the verify sweep (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write output to this path instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report: index sets, Poincaré polynomial, b2 by three routes.
    Analyze {
        /// Hessenberg function as comma-separated values, e.g. "3,3,4,5,5".
        h: String,
        /// Degrees d for which the report lists the sets Lambda_d.
        #[arg(long, value_delimiter = ',', default_values_t = vec![2, 3])]
        d: Vec<usize>,
    },
    /// Export the labeled graph on S_n.
    Graph {
        h: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Degree-2 presentation, module decomposition, and character cross-check.
    H2 { h: String },
    /// Degree-2d analogue for h with h(j) >= j+d below the band.
    H2d {
        h: String,
        #[arg(long)]
        d: u32,
    },
    /// Decompose the dot-action character in one degree, formula vs computed.
    Decompose {
        h: String,
        #[arg(long, default_value_t = 1)]
        d: u32,
    },
    /// Exhaustive formula-vs-oracle sweep over every h of size <= n.
    Verify {
        #[arg(long)]
        n: usize,
        /// Degrees for the higher-degree checks.
        #[arg(long, value_delimiter = ',', default_values_t = vec![2, 3])]
        d: Vec<u32>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Fails only if a global pool already exists, which is harmless here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult<ExitCode> {
    match &cli.command {
        Command::Analyze { h, d } => cmd_analyze(cli, h, d),
        Command::Graph { h, format } => cmd_graph(cli, h, *format),
        Command::H2 { h } => cmd_h2(cli, h),
        Command::H2d { h, d } => cmd_h2d(cli, h, *d),
        Command::Decompose { h, d } => cmd_decompose(cli, h, *d),
        Command::Verify { n, d } => cmd_verify(cli, *n, d),
    }
}

fn parse_h(text: &str, cap: usize) -> Result<HessenbergFunction> {
    let h: HessenbergFunction = text.parse()?;
    if h.n() > cap {
        return Err(Error::CapExceeded { n: h.n(), cap });
    }
    Ok(h)
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display()).into()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(cli: &Cli, report: &Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    emit(cli, &format!("{text}\n"))
}

fn exit_for(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Renders an exact integer as a JSON number, falling back to a decimal
/// string if it ever exceeds i64 range.
fn big_value<T: ToString>(c: &T) -> Value
where
    for<'a> i64: TryFrom<&'a T>,
{
    i64::try_from(c)
        .map(Value::from)
        .unwrap_or_else(|_| Value::String(c.to_string()))
}

/// `{"(8)": 3, "(7,1)": 2, ...}` with parts in descending order.
fn decomposition_json(dec: &ModuleDecomposition) -> Value {
    let mut map = Map::new();
    let entries: Vec<_> = dec.entries().collect();
    for (lambda, coeff) in entries.into_iter().rev() {
        map.insert(lambda.to_string(), big_value(coeff));
    }
    Value::Object(map)
}

/// Character values keyed by cycle type, in the same partition order.
fn character_json(chi: &ClassFunction) -> Value {
    let mut map = Map::new();
    for (mu, v) in partitions_of(chi.n()).iter().zip(chi.values()) {
        map.insert(mu.to_string(), big_value(v));
    }
    Value::Object(map)
}

fn realization_status(verified: Option<bool>) -> &'static str {
    match verified {
        Some(true) => "verified",
        Some(false) => "failed",
        None => "skipped-over-budget",
    }
}

fn presentation_json(pres: &CohomologyPresentation) -> Value {
    let relations: Vec<Value> = pres
        .relations
        .iter()
        .map(|row| Value::Array(row.iter().map(big_value).collect()))
        .collect();
    json!({
        "generators": serde_json::to_value(&pres.generators).expect("labels serialize"),
        "relations": relations,
        "flag_rank": pres.flag_rank,
        "rank": pres.rank,
        "realization": realization_status(pres.realization_verified),
    })
}

fn hypothesis_holds(h: &HessenbergFunction, d: usize) -> bool {
    (1..=h.n().saturating_sub(d)).all(|j| h.value(j) >= j + d)
}

/// Character-vs-formula cross-check, skipped cleanly when the linear algebra
/// is over budget. Returns the status string, the computed decomposition (if
/// any), and whether the check is in a non-failed state.
fn character_check(
    h: &HessenbergFunction,
    d: u32,
    formula: &ModuleDecomposition,
    budget: u128,
) -> Result<(Value, bool)> {
    match rep::dot_action_character(h, d, budget) {
        Ok(chi) => match rep::decompose(&chi) {
            Ok(dec) => {
                let matched = dec == *formula;
                let status = if matched { "passed" } else { "failed" };
                let report = json!({
                    "status": status,
                    "computed": decomposition_json(&dec),
                });
                Ok((report, matched))
            }
            Err(Error::NonIntegralSolution) => Ok((
                json!({
                    "status": "failed",
                    "reason": "character has non-integral multiplicities",
                }),
                false,
            )),
            Err(e) => Err(e),
        },
        Err(Error::BudgetExceeded { required, budget }) => Ok((
            json!({
                "status": "skipped-over-budget",
                "required_entries": required.to_string(),
                "budget": budget.to_string(),
            }),
            true,
        )),
        Err(e) => Err(e),
    }
}

fn cmd_analyze(cli: &Cli, h_text: &str, ds: &[usize]) -> CliResult<ExitCode> {
    let h = parse_h(h_text, cli.cap_n)?;
    let n = h.n();
    let connected = h.is_connected();

    let brute = betti::poincare_bruteforce_capped(&h, cli.cap_n)?;
    let inductive = betti::poincare_inductive(&h)?;
    let agree = brute == inductive;
    let mass_ok = brute.sum() == factorial(n);
    let palindromic = brute.is_palindromic();
    let components = betti::component_count_capped(&h, cli.cap_n)?;

    let mut ok =
        agree && mass_ok && (!connected || palindromic) && ((components == 1) == connected);

    let b2_section = if connected {
        let closed = betti::b2_closed_form(&h)?;
        let brute_b2 = brute.coefficient(1);
        let rank_route = match cohomology::h2_rank(&h, cli.la_budget) {
            Ok(r) => Some(r),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let routes_agree = closed == brute_b2 && rank_route.is_none_or(|r| r == closed);
        ok &= routes_agree;
        json!({
            "applicable": true,
            "closed_form": closed,
            "bruteforce": brute_b2,
            "rank_route": match rank_route {
                Some(r) => json!(r),
                None => json!("skipped-over-budget"),
            },
            "agree": routes_agree,
        })
    } else {
        json!({ "applicable": false, "reason": "disconnected" })
    };

    let mut lambda = Map::new();
    let mut seen = Vec::new();
    for &d in ds {
        if seen.contains(&d) {
            continue;
        }
        seen.push(d);
        lambda.insert(
            d.to_string(),
            json!({
                "inclusive": combinatorics::lambda_set(&h, d),
                "strict": combinatorics::lambda_set_strict(&h, d),
            }),
        );
    }

    let report = json!({
        "schema": SCHEMA,
        "command": "analyze",
        "valid": true,
        "n": n,
        "h": h.values(),
        "connected": connected,
        "components": components,
        "dimension": betti::dimension(&h),
        "bottom_set": combinatorics::bottom_set(&h),
        "l_set": combinatorics::l_set(&h),
        "lambda": lambda,
        "poincare": {
            "inductive": inductive.coefficients(),
            "bruteforce": brute.coefficients(),
            "agree": agree,
            "palindromic": palindromic,
            "mass": brute.sum(),
        },
        "b2": b2_section,
        "all_checks_passed": ok,
    });
    emit_report(cli, &report)?;
    Ok(exit_for(ok))
}

fn cmd_graph(cli: &Cli, h_text: &str, format: GraphFormat) -> CliResult<ExitCode> {
    let h = parse_h(h_text, cli.cap_n)?;
    let g = gkm::build_graph_capped(&h, cli.cap_n)?;
    let mut text = match format {
        GraphFormat::Dot => g.export_dot(),
        GraphFormat::Json => g.export_json(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    emit(cli, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_h2(cli: &Cli, h_text: &str) -> CliResult<ExitCode> {
    let h = parse_h(h_text, cli.cap_n)?;
    let pres = cohomology::h2_presentation(&h, cli.la_budget)?;
    let formula = rep::beta_formula(&h)?;
    let b2 = betti::b2_closed_form(&h)?;

    let rank_ok = pres.rank == b2;
    let dim_ok = formula.dimension() == b2.into();
    let realization_ok = pres.realization_verified != Some(false);
    let (char_report, char_ok) = character_check(&h, 1, &formula, cli.la_budget)?;
    let ok = rank_ok && dim_ok && realization_ok && char_ok;

    let report = json!({
        "schema": SCHEMA,
        "command": "h2",
        "n": h.n(),
        "h": h.values(),
        "presentation": presentation_json(&pres),
        "decomposition": {
            "formula": decomposition_json(&formula),
            "display": formula.to_string(),
            "dimension": big_value(&formula.dimension()),
        },
        "consistency": {
            "rank_equals_b2_closed_form": rank_ok,
            "decomposition_dimension_equals_b2": dim_ok,
        },
        "character_check": char_report,
        "all_checks_passed": ok,
    });
    emit_report(cli, &report)?;
    Ok(exit_for(ok))
}

fn cmd_h2d(cli: &Cli, h_text: &str, d: u32) -> CliResult<ExitCode> {
    let h = parse_h(h_text, cli.cap_n)?;
    let pres = cohomology::h2d_presentation(&h, d, cli.la_budget)?;
    let formula = rep::h2d_decomposition_formula(&h, d)?;
    let brute = betti::poincare_bruteforce_capped(&h, cli.cap_n)?;
    let brute_betti = brute.coefficient(d as usize);

    let rank_ok = pres.rank == brute_betti;
    let dim_ok = formula.dimension() == pres.rank.into();
    let realization_ok = pres.realization_verified != Some(false);
    let (char_report, char_ok) = character_check(&h, d, &formula, cli.la_budget)?;
    let ok = rank_ok && dim_ok && realization_ok && char_ok;

    let report = json!({
        "schema": SCHEMA,
        "command": "h2d",
        "n": h.n(),
        "h": h.values(),
        "d": d,
        "lambda_strict": combinatorics::lambda_set_strict(&h, d as usize),
        "presentation": presentation_json(&pres),
        "decomposition": {
            "formula": decomposition_json(&formula),
            "display": formula.to_string(),
            "dimension": big_value(&formula.dimension()),
        },
        "consistency": {
            "rank_equals_bruteforce_betti": rank_ok,
            "decomposition_dimension_equals_rank": dim_ok,
        },
        "character_check": char_report,
        "all_checks_passed": ok,
    });
    emit_report(cli, &report)?;
    Ok(exit_for(ok))
}

fn cmd_decompose(cli: &Cli, h_text: &str, d: u32) -> CliResult<ExitCode> {
    let h = parse_h(h_text, cli.cap_n)?;
    let n = h.n();

    let formula = if d == 1 {
        Some(rep::beta_formula(&h)?)
    } else if d >= 2 && (d as usize) < n && hypothesis_holds(&h, d as usize) {
        Some(rep::h2d_decomposition_formula(&h, d)?)
    } else {
        None
    };
    let formula_section = match &formula {
        Some(f) => json!({
            "decomposition": decomposition_json(f),
            "display": f.to_string(),
        }),
        None => Value::Null,
    };

    let (body, ok) = match rep::dot_action_character(&h, d, cli.la_budget) {
        Ok(chi) => match rep::decompose(&chi) {
            Ok(dec) => {
                let matched = formula.as_ref().map(|f| *f == dec);
                let status = match matched {
                    Some(true) => "passed",
                    Some(false) => "failed",
                    None => "computed",
                };
                (
                    json!({
                        "character": character_json(&chi),
                        "computed": decomposition_json(&dec),
                        "display": dec.to_string(),
                        "formula": formula_section,
                        "match": matched,
                        "status": status,
                    }),
                    matched != Some(false),
                )
            }
            Err(Error::NonIntegralSolution) => (
                json!({
                    "character": character_json(&chi),
                    "formula": formula_section,
                    "status": "failed",
                    "reason": "character has non-integral multiplicities",
                }),
                false,
            ),
            Err(e) => return Err(e.into()),
        },
        Err(Error::BudgetExceeded { required, budget }) => (
            json!({
                "formula": formula_section,
                "status": "skipped-over-budget",
                "required_entries": required.to_string(),
                "budget": budget.to_string(),
            }),
            true,
        ),
        Err(e) => return Err(e.into()),
    };

    let mut report = Map::new();
    report.insert("schema".into(), json!(SCHEMA));
    report.insert("command".into(), json!("decompose"));
    report.insert("n".into(), json!(n));
    report.insert("h".into(), json!(h.values()));
    report.insert("d".into(), json!(d));
    if let Value::Object(fields) = body {
        report.extend(fields);
    }
    emit_report(cli, &Value::Object(report))?;
    Ok(exit_for(ok))
}

fn cmd_verify(cli: &Cli, n: usize, ds: &[u32]) -> CliResult<ExitCode> {
    if n > cli.cap_n {
        return Err(Error::CapExceeded { n, cap: cli.cap_n }.into());
    }
    let mut degrees: Vec<u32> = ds.iter().copied().filter(|&d| d >= 2).collect();
    degrees.sort_unstable();
    degrees.dedup();

    let config = verify::SweepConfig {
        max_n: n,
        degrees,
        budget: cli.la_budget,
        cap: cli.cap_n,
    };
    let summary = verify::run_sweep(&config);
    emit_report(cli, &summary.report)?;
    Ok(exit_for(summary.failed == 0))
}
