//! `grident`: graded identities of matrix algebras and graded codimension
//! counts from the command line.
//!
//! Exit codes: 0 success (and mathematical verdict "true" where one
//! applies), 1 verdict "false", 2 usage or input error, 3 resource cap
//! exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grident_core::asym::ratio_report;
use grident_core::codim::{enumerate_counts, record_enumeration, CountTable};
use grident_core::graph::{equivalent, MonomialGraph};
use grident_core::identity::{
    elementary_monomial_identity, evaluate_symbolic, is_identity_classes, vanishes_on_matrix_units,
    verify_amitsur_levitsky, ElementaryGrading,
};
use grident_core::monomial::{GradedPolynomial, Monomial};
use grident_core::paths::{ipp_permutations, swan_check, SweepMode};
use grident_core::{Caps, Error, FiniteGroup, GroupElement};
use serde::Serialize;

mod output;
mod selfcheck;

use output::*;

#[derive(Parser)]
#[command(name = "grident", version, about, max_term_width = 100)]
struct Cli {
    /// Output format; `dot` only applies to `graph dot`.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Maximum assignment/word count for exhaustive sweeps.
    #[arg(long, global = true, env = "GRIDENT_ENUM_BUDGET")]
    enum_budget: Option<u128>,
    /// Maximum number of symbolic variables for the oracle.
    #[arg(long, global = true, env = "GRIDENT_ORACLE_VARS")]
    oracle_vars: Option<usize>,
    /// Maximum monomial degree for full path enumeration.
    #[arg(long, global = true, env = "GRIDENT_PATH_DEGREE")]
    path_degree: Option<usize>,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true, env = "GRIDENT_WORKERS")]
    workers: Option<usize>,
    /// Count-cache file, loaded before and saved after codimension work.
    #[arg(long, global = true, env = "GRIDENT_CACHE")]
    cache: Option<PathBuf>,
    /// Optional TOML config with the same keys as the flags above.
    #[arg(long, global = true, env = "GRIDENT_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect a group: order, element names, Cayley table.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Build or render the labeled digraph of a monomial.
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Are two monomials equivalent (same reordering class)?
    Equiv {
        #[arg(long)]
        group: String,
        #[arg(long)]
        m1: String,
        #[arg(long)]
        m2: String,
    },
    /// Census of the prefix-product-preserving permutations of a monomial.
    Ipp {
        #[arg(long)]
        group: String,
        #[arg(long)]
        monomial: String,
        /// Include the permutations themselves.
        #[arg(long)]
        list: bool,
    },
    /// Sweep weight words and check the even/odd permutation balance.
    Swan {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        /// Sample this many words instead of sweeping exhaustively.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit per-word rows (CSV format prints word,total,even,odd).
        #[arg(long)]
        rows: bool,
    },
    /// Decide whether a polynomial is a graded identity.
    Identity {
        #[command(subcommand)]
        cmd: IdentityCmd,
    },
    /// Check the standard polynomial of degree n across weight words.
    AlVerify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monomial identities of an elementary grading, with witness.
    ElemIdentity {
        #[arg(long)]
        group: String,
        /// Comma-separated distinct element names defining the grading.
        #[arg(long)]
        tuple: String,
        /// Comma-separated weight word.
        #[arg(long)]
        weights: String,
    },
    /// Exact graded codimension values.
    Codim(CodimArgs),
    /// Exact values against the asymptotic formula, in log space.
    Asym {
        #[arg(long)]
        k: usize,
        /// Comma-separated list of n values.
        #[arg(long)]
        n: String,
    },
    /// Run the built-in cross-method consistency bundle.
    Selfcheck,
}

#[derive(Subcommand)]
enum GroupCmd {
    Show {
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    Build {
        #[arg(long)]
        group: String,
        #[arg(long)]
        monomial: String,
    },
    Dot {
        #[arg(long)]
        group: String,
        #[arg(long)]
        monomial: String,
    },
}

#[derive(Args)]
struct CodimArgs {
    #[command(subcommand)]
    table: Option<CodimSub>,
    /// Group order (vertex count).
    #[arg(long)]
    k: Option<usize>,
    /// Degree (edge count).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = CodimMethod::Formula)]
    method: CodimMethod,
    /// Group used for vertex labels in `enum` mode; the value depends only
    /// on its order.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Subcommand)]
enum CodimSub {
    /// Tabulate c_k(n) for n = 0..=n-max.
    Table {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CodimMethod {
    Enum,
    Formula,
    Closed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecisionMethod {
    Classes,
    Oracle,
    Both,
}

#[derive(Subcommand)]
enum IdentityCmd {
    Check {
        #[arg(long)]
        group: String,
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value_t = DecisionMethod::Classes)]
        method: DecisionMethod,
    },
}

/// Resolved run configuration: defaults, then config file, then
/// environment (via clap's env support), then flags.
struct RunConfig {
    caps: Caps,
    format: Format,
    cache: Option<PathBuf>,
}

#[derive(serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    enum_budget: Option<u64>,
    oracle_vars: Option<usize>,
    path_degree: Option<usize>,
    workers: Option<usize>,
    format: Option<String>,
    cache: Option<PathBuf>,
}

fn resolve_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut caps = Caps::default();
    let mut format = Format::Json;
    let mut cache = None;
    let mut workers = None;
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)?;
        let file: FileConfig = toml::from_str(&text)?;
        caps.enum_budget = file.enum_budget.map(u128::from).unwrap_or(caps.enum_budget);
        caps.oracle_vars = file.oracle_vars.unwrap_or(caps.oracle_vars);
        caps.path_degree = file.path_degree.unwrap_or(caps.path_degree);
        workers = file.workers;
        cache = file.cache;
        if let Some(f) = file.format {
            format = match f.as_str() {
                "json" => Format::Json,
                "csv" => Format::Csv,
                "dot" => Format::Dot,
                "text" => Format::Text,
                other => anyhow::bail!("unknown format `{other}` in config"),
            };
        }
    }
    caps.enum_budget = cli.enum_budget.unwrap_or(caps.enum_budget);
    caps.oracle_vars = cli.oracle_vars.unwrap_or(caps.oracle_vars);
    caps.path_degree = cli.path_degree.unwrap_or(caps.path_degree);
    if caps.enum_budget == 0 || caps.oracle_vars == 0 || caps.path_degree == 0 {
        anyhow::bail!("caps must be positive");
    }
    if let Some(f) = cli.format {
        format = f;
    }
    if let Some(c) = &cli.cache {
        cache = Some(c.clone());
    }
    if let Some(w) = cli.workers.or(workers) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .ok();
    }
    Ok(RunConfig {
        caps,
        format,
        cache,
    })
}

fn parse_group(spec: &str) -> anyhow::Result<FiniteGroup> {
    Ok(FiniteGroup::from_spec(spec)?)
}

fn parse_elements(group: &FiniteGroup, list: &str) -> anyhow::Result<Vec<GroupElement>> {
    list.split(',')
        .map(|name| Ok(group.by_name(name.trim())?))
        .collect()
}

/// 0 = true verdict, 1 = false verdict.
fn verdict_code(v: bool) -> ExitCode {
    if v {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let capped = err.downcast_ref::<Error>().is_some_and(|e| {
                matches!(
                    e,
                    Error::BudgetExceeded { .. }
                        | Error::DegreeCap { .. }
                        | Error::OracleCap { .. }
                )
            });
            if capped {
                ExitCode::from(3)
            } else {
                if err
                    .downcast_ref::<Error>()
                    .is_some_and(|e| matches!(e, Error::Parse { .. }))
                {
                    eprintln!(
                        "grammar: Poly := [+|-] Term ((+|-) Term)*; Term := [INT[/INT] [*]] Factor+; Factor := x[INT,NAME]"
                    );
                }
                ExitCode::from(2)
            }
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    let cfg = resolve_config(cli)?;
    match &cli.cmd {
        Cmd::Group {
            cmd: GroupCmd::Show { group },
        } => {
            let g = parse_group(group)?;
            let view = GroupView::new(&g);
            match cfg.format {
                Format::Text => print!("{}", view.text()),
                _ => println!("{}", serde_json::to_string_pretty(&view)?),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Graph { cmd } => {
            let (group, monomial, want_dot) = match cmd {
                GraphCmd::Build { group, monomial } => (group, monomial, false),
                GraphCmd::Dot { group, monomial } => (group, monomial, true),
            };
            let g = parse_group(group)?;
            let m = Monomial::parse(monomial, &g)?;
            let graph = MonomialGraph::of_monomial(&m);
            if want_dot || cfg.format == Format::Dot {
                print!("{}", graph.to_dot());
            } else {
                emit(&cfg, &GraphView::new(&graph))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Equiv { group, m1, m2 } => {
            let g = parse_group(group)?;
            let a = Monomial::parse(m1, &g)?;
            let b = Monomial::parse(m2, &g)?;
            let eq = equivalent(&a, &b)?;
            emit(
                &cfg,
                &EquivView {
                    group: g.label().into(),
                    equivalent: eq,
                },
            )?;
            Ok(verdict_code(eq))
        }
        Cmd::Ipp {
            group,
            monomial,
            list,
        } => {
            let g = parse_group(group)?;
            let m = Monomial::parse(monomial, &g)?;
            let report = ipp_permutations(&m, &cfg.caps)?;
            emit(&cfg, &IppView::new(&report, *list))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Swan {
            group,
            n,
            samples,
            seed,
            rows,
        } => {
            let g = parse_group(group)?;
            let mode = match samples {
                Some(count) => SweepMode::Sample {
                    count: *count,
                    seed: *seed,
                },
                None => SweepMode::Exhaustive,
            };
            let report = swan_check(&g, *n, mode, *rows || cfg.format == Format::Csv, &cfg.caps)?;
            let ok = report.violations.is_empty();
            if cfg.format == Format::Csv {
                // summary on stderr keeps stdout machine-parseable
                eprint!("{}", SwanView::new(&g, &report).text());
                print_swan_csv(&g, &report)?;
            } else {
                emit(&cfg, &SwanView::new(&g, &report))?;
            }
            Ok(verdict_code(ok))
        }
        Cmd::Identity {
            cmd:
                IdentityCmd::Check {
                    group,
                    poly,
                    method,
                },
        } => {
            let g = parse_group(group)?;
            let f = GradedPolynomial::parse(poly, &g)?;
            let mut view = IdentityView::new(g.label(), poly);
            let verdict = match method {
                DecisionMethod::Classes => {
                    let report = is_identity_classes(&f);
                    view.fill_classes(&report);
                    report.is_identity
                }
                DecisionMethod::Oracle => {
                    let value = evaluate_symbolic(&f, &cfg.caps)?;
                    view.fill_oracle(&value);
                    value.is_zero()
                }
                DecisionMethod::Both => {
                    let report = is_identity_classes(&f);
                    view.fill_classes(&report);
                    let value = evaluate_symbolic(&f, &cfg.caps)?;
                    view.fill_oracle(&value);
                    anyhow::ensure!(
                        report.is_identity == value.is_zero(),
                        "decision methods disagree; this is a bug"
                    );
                    report.is_identity
                }
            };
            view.verdict = verdict;
            emit(&cfg, &view)?;
            Ok(verdict_code(verdict))
        }
        Cmd::AlVerify {
            group,
            n,
            samples,
            seed,
        } => {
            let g = parse_group(group)?;
            let mode = match samples {
                Some(count) => SweepMode::Sample {
                    count: *count,
                    seed: *seed,
                },
                None => SweepMode::Exhaustive,
            };
            let report = verify_amitsur_levitsky(&g, *n, mode, &cfg.caps)?;
            let ok = report.all_identities;
            emit(&cfg, &AlView::new(&report))?;
            Ok(verdict_code(ok))
        }
        Cmd::ElemIdentity {
            group,
            tuple,
            weights,
        } => {
            let g = parse_group(group)?;
            let tuple = parse_elements(&g, tuple)?;
            let word = parse_elements(&g, weights)?;
            let grading = ElementaryGrading::new(&g, tuple)?;
            let report = elementary_monomial_identity(&grading, &word)?;
            let units_agree = vanishes_on_matrix_units(&grading, &word, &cfg.caps)
                .map(|v| v == report.is_identity)
                .unwrap_or(false);
            let verdict = report.is_identity;
            emit(&cfg, &ElemView::new(&grading, &word, &report, units_agree))?;
            Ok(verdict_code(verdict))
        }
        Cmd::Codim(args) => run_codim(&cfg, args),
        Cmd::Asym { k, n } => {
            let ns: Result<Vec<usize>, _> = n.split(',').map(|t| t.trim().parse()).collect();
            let ns = ns.map_err(|_| anyhow::anyhow!("--n expects a comma-separated list"))?;
            let mut table = load_table(&cfg)?;
            let report = ratio_report(*k, &ns, &mut table)?;
            save_table(&cfg, &table)?;
            if cfg.format == Format::Csv {
                print_asym_csv(&report)?;
            } else {
                emit(&cfg, &AsymView::new(&report))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Selfcheck => selfcheck::run(&cfg.caps),
    }
}

fn load_table(cfg: &RunConfig) -> anyhow::Result<CountTable> {
    let mut table = CountTable::new();
    if let Some(path) = &cfg.cache {
        if path.exists() {
            table.load(path)?;
        }
    }
    Ok(table)
}

fn save_table(cfg: &RunConfig, table: &CountTable) -> anyhow::Result<()> {
    if let Some(path) = &cfg.cache {
        table.save(path)?;
    }
    Ok(())
}

fn run_codim(cfg: &RunConfig, args: &CodimArgs) -> anyhow::Result<ExitCode> {
    let mut table = load_table(cfg)?;
    if let Some(CodimSub::Table { k, n_max }) = &args.table {
        let rows: anyhow::Result<Vec<CodimRow>> = (0..=*n_max)
            .map(|n| {
                let value = table.m_formula(*k, n)?;
                Ok(CodimRow {
                    k: *k,
                    n,
                    value: value.to_string(),
                })
            })
            .collect();
        let rows = rows?;
        save_table(cfg, &table)?;
        if cfg.format == Format::Csv {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(["k", "n", "value"])?;
            for row in &rows {
                w.write_record([row.k.to_string(), row.n.to_string(), row.value.clone()])?;
            }
            w.flush()?;
        } else {
            emit(
                cfg,
                &CodimTableView {
                    k: *k,
                    values: rows,
                },
            )?;
        }
        return Ok(ExitCode::SUCCESS);
    }
    let (Some(k), Some(n)) = (args.k, args.n) else {
        anyhow::bail!("codim requires --k and --n (or the `table` subcommand)");
    };
    let (value, method) = match args.method {
        CodimMethod::Formula => (table.m_formula(k, n)?, "formula"),
        CodimMethod::Closed => {
            anyhow::ensure!(k == 2, "--method closed applies to k=2 only");
            (table.c2(n)?, "closed")
        }
        CodimMethod::Enum => {
            let group = match &args.group {
                Some(spec) => parse_group(spec)?,
                None => FiniteGroup::cyclic(k)?,
            };
            anyhow::ensure!(
                group.order() == k,
                "group order {} does not match --k {k}",
                group.order()
            );
            let counts = enumerate_counts(k, n, &cfg.caps)?;
            record_enumeration(&mut table, k, n, &counts)?;
            (counts.paths, "enum")
        }
    };
    save_table(cfg, &table)?;
    emit(
        cfg,
        &CodimView {
            k,
            n,
            method: method.into(),
            value: value.to_string(),
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

fn emit<T: Serialize + TextView>(cfg: &RunConfig, view: &T) -> anyhow::Result<()> {
    match cfg.format {
        Format::Text => print!("{}", view.text()),
        _ => println!("{}", serde_json::to_string_pretty(view)?),
    }
    Ok(())
}

fn print_swan_csv(
    group: &FiniteGroup,
    report: &grident_core::paths::SwanReport,
) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(std::io::stdout());
    w.write_record(["word", "total", "even", "odd"])?;
    if let Some(rows) = &report.rows {
        for row in rows {
            let word: Vec<&str> = row.word.iter().map(|&i| group.name(i)).collect();
            w.write_record([
                word.join(" "),
                row.total.to_string(),
                row.even.to_string(),
                row.odd.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn print_asym_csv(report: &grident_core::asym::AsymptoticReport) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(std::io::stdout());
    w.write_record(["k", "n", "exact", "ln_exact", "ln_asymptotic", "deviation"])?;
    for row in &report.rows {
        w.write_record([
            report.k.to_string(),
            row.n.to_string(),
            row.exact.to_string(),
            row.ln_exact.to_string(),
            row.ln_asymptotic.to_string(),
            row.deviation.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
