//! Command-line front end for the outerd engine.
//!
//! Every command parses a presentation (from a file or `--inline`),
//! realizes the group through the chosen backend, runs one piece of the
//! pipeline, and prints either a human-readable text report or a JSON
//! document (`--json`).  All output is deterministic: identical
//! invocations produce byte-identical stdout.
//!
//! Exit codes: `0` success, `1` usage or input error, `2` resource limit
//! (coset budget, solver cap), `3` the two computation routes disagree —
//! distinct so that pipelines can tell "raise a limit" from "the math
//! came out wrong".

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use outerd_core::complex::{build_component, ComponentComplex};
use outerd_core::derivations::derivation_dims;
use outerd_core::group::{ConjugacyClass, Element, FiniteGroupTable, GroupBackend};
use outerd_core::presentation::{ParseWarning, Presentation};
use outerd_core::verify::{outer_cocycles, verify_group, ComponentReport, VerificationReport};
use outerd_core::{Error, Rational};

#[derive(Parser)]
#[command(
    name = "outerd",
    version,
    about = "Outer derivations of group algebras: realize a finitely presented group, \
             build its per-class 2-complexes, and compare exact cohomology against a \
             brute-force derivation computation"
)]
struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized subroutines.  Reserved: every current command
    /// is fully deterministic, so the seed does not influence output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a presentation and echo its canonical form.
    Parse(InputArgs),
    /// Realize a finite group and report its order and conjugacy classes.
    Enumerate(RealizeArgs),
    /// Build the per-class 2-complexes and report their shapes.
    Complex(RealizeArgs),
    /// Compute per-class cohomology dimensions and outer cocycle vectors.
    Cohomology(RealizeArgs),
    /// Brute-force the derivation-algebra dimensions from the product rule.
    Oracle(RealizeArgs),
    /// Run both routes — cohomology and brute force — and compare them.
    Verify(RealizeArgs),
    /// Print one class component as a Graphviz digraph.
    ExportDot(ExportArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Presentation file, UTF-8 text like `< x, y | x^3, y^2, (x y)^2 >`.
    file: Option<PathBuf>,

    /// Inline presentation text instead of a file.
    #[arg(long, value_name = "TEXT")]
    inline: Option<String>,
}

#[derive(Args)]
struct RealizeArgs {
    #[command(flatten)]
    input: InputArgs,

    /// How to realize the presented group.
    #[arg(long, value_enum, default_value_t = BackendKind::Finite)]
    backend: BackendKind,

    /// Rank of the free-abelian realization; must equal the generator count.
    #[arg(long)]
    rank: Option<usize>,

    /// Class representatives for the free-abelian realization, as integer
    /// tuples: --classes "(0,0),(1,0)".
    #[arg(long, value_name = "TUPLES")]
    classes: Option<String>,

    /// Acknowledge that the presented group really is free-abelian of the
    /// given rank; the free-abelian realization trusts this instead of
    /// checking the relators.
    #[arg(long)]
    trust_abelian: bool,

    /// Most live cosets the enumeration may hold at once.
    #[arg(long, default_value_t = 10_000)]
    coset_budget: usize,

    /// Largest group order the brute-force derivation solver accepts.
    #[arg(long, default_value_t = outerd_core::derivations::DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    realize: RealizeArgs,

    /// Which class component to export, as an index into the canonical
    /// class order.
    #[arg(long, default_value_t = 0)]
    class_index: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendKind {
    /// Close the presentation into a finite multiplication table.
    Finite,
    /// Trust that the group is free-abelian and work in integer vectors.
    FreeAbelian,
}

/// A failure on its way to becoming an exit code.
enum Failure {
    Usage(String),
    Resource(String),
    Mismatch(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Resource(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Resource(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Failure {
        match &error {
            Error::Syntax { .. }
            | Error::DuplicateGenerator(_)
            | Error::UnknownGenerator(_)
            | Error::UnsupportedClass(_) => Failure::Usage(error.to_string()),
            Error::BudgetExceeded(_) => {
                Failure::Resource(format!("{error}; raise --coset-budget"))
            }
            Error::OrderTooLarge { .. } => {
                Failure::Resource(format!("{error}; raise --oracle-cap"))
            }
            Error::NotComposable | Error::WalkNotClosed | Error::ComplexMismatch(_) => {
                Failure::Mismatch(error.to_string())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let code = match error.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    // Every current command is deterministic; the seed is accepted for
    // interface stability but spends its life right here.
    let _ = cli.seed;
    match &cli.command {
        Command::Parse(input) => cmd_parse(input, cli.json),
        Command::Enumerate(args) => cmd_enumerate(args, cli.json),
        Command::Complex(args) => cmd_complex(args, cli.json),
        Command::Cohomology(args) => cmd_cohomology(args, cli.json),
        Command::Oracle(args) => cmd_oracle(args, cli.json),
        Command::Verify(args) => cmd_verify(args, cli.json),
        Command::ExportDot(args) => cmd_export_dot(args),
    }
}

// ---------------------------------------------------------------------------
// Input loading and realization

fn load_presentation(input: &InputArgs) -> Result<(Presentation, Vec<ParseWarning>), Failure> {
    let text = match (&input.file, &input.inline) {
        (Some(path), None) => std::fs::read_to_string(path).map_err(|e| {
            Failure::Usage(format!("cannot read {}: {e}", path.display()))
        })?,
        (None, Some(text)) => text.clone(),
        _ => {
            return Err(Failure::Usage(
                "provide exactly one presentation: a FILE argument or --inline TEXT".into(),
            ))
        }
    };
    Ok(Presentation::parse(&text)?)
}

struct Realized {
    presentation: Presentation,
    warnings: Vec<ParseWarning>,
    backend: GroupBackend,
    classes: Vec<ConjugacyClass>,
}

impl Realized {
    fn finite_table(&self) -> Option<&FiniteGroupTable> {
        self.backend.as_finite()
    }
}

fn realize(args: &RealizeArgs) -> Result<Realized, Failure> {
    let (presentation, warnings) = load_presentation(&args.input)?;
    match args.backend {
        BackendKind::Finite => {
            if args.rank.is_some() {
                return Err(Failure::Usage(
                    "--rank only applies to --backend free-abelian".into(),
                ));
            }
            if args.classes.is_some() {
                return Err(Failure::Usage(
                    "--classes only applies to --backend free-abelian".into(),
                ));
            }
            let table = FiniteGroupTable::enumerate(&presentation, args.coset_budget)?;
            let backend = GroupBackend::finite(table);
            let classes = backend.conjugacy_classes();
            Ok(Realized { presentation, warnings, backend, classes })
        }
        BackendKind::FreeAbelian => {
            if !args.trust_abelian {
                return Err(Failure::Usage(
                    "the free-abelian realization trusts the relators instead of checking \
                     them; acknowledge with --trust-abelian"
                        .into(),
                ));
            }
            let rank = args.rank.ok_or_else(|| {
                Failure::Usage("--backend free-abelian requires --rank".into())
            })?;
            if rank != presentation.generator_count() {
                return Err(Failure::Usage(format!(
                    "--rank {rank} must equal the generator count {}",
                    presentation.generator_count()
                )));
            }
            let class_list = args.classes.as_deref().ok_or_else(|| {
                Failure::Usage(
                    "--backend free-abelian requires --classes with at least one tuple"
                        .into(),
                )
            })?;
            let elements = parse_class_tuples(class_list, rank)?;
            let backend = GroupBackend::free_abelian(&presentation, rank)?;
            let classes = backend.singleton_classes(&elements);
            Ok(Realized { presentation, warnings, backend, classes })
        }
    }
}

/// Parse `"(0,0),(1,0)"` into lattice elements of the given rank.
fn parse_class_tuples(class_list: &str, rank: usize) -> Result<Vec<Element>, Failure> {
    let mut elements = Vec::new();
    let mut rest = class_list.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| {
            Failure::Usage(format!("expected a tuple like (0,0) in --classes, found `{rest}`"))
        })?;
        let close = open.find(')').ok_or_else(|| {
            Failure::Usage("unclosed tuple in --classes".into())
        })?;
        let body = &open[..close];
        let coords: Result<Vec<i64>, _> =
            body.split(',').map(|part| part.trim().parse::<i64>()).collect();
        let coords = coords.map_err(|_| {
            Failure::Usage(format!("tuple ({body}) in --classes is not a list of integers"))
        })?;
        if coords.len() != rank {
            return Err(Failure::Usage(format!(
                "tuple ({body}) has {} coordinates but --rank is {rank}",
                coords.len()
            )));
        }
        elements.push(Element::Vector(coords));
        rest = open[close + 1..].trim_start();
        if let Some(after_comma) = rest.strip_prefix(',') {
            rest = after_comma.trim_start();
        } else if !rest.is_empty() {
            return Err(Failure::Usage(format!(
                "expected `,` between tuples in --classes, found `{rest}`"
            )));
        }
    }
    if elements.is_empty() {
        return Err(Failure::Usage("--classes needs at least one tuple".into()));
    }
    Ok(elements)
}

fn require_finite<'a>(realized: &'a Realized, command: &str) -> Result<&'a FiniteGroupTable, Failure> {
    realized.finite_table().ok_or_else(|| {
        Failure::Usage(format!("{command} requires --backend finite"))
    })
}

// ---------------------------------------------------------------------------
// JSON report shapes (schema version "1"; field order is part of the schema)

const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
struct ParseJson {
    schema_version: &'static str,
    generators: Vec<String>,
    relators: Vec<String>,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct ReportJson {
    schema_version: &'static str,
    group: GroupJson,
    components: Vec<ComponentJson>,
    oracle: Option<OracleJson>,
    matches: Option<MatchesJson>,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct GroupJson {
    order: OrderJson,
    num_classes_listed: usize,
    class_sizes: Vec<usize>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum OrderJson {
    Finite(usize),
    Infinite(&'static str),
}

#[derive(Serialize)]
struct ComponentJson {
    class_representative: String,
    num_vertices: usize,
    num_edges: usize,
    num_cells: usize,
    dim_ker_d1: usize,
    rank_d0: usize,
    h1: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    outer_cocycles: Option<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct OracleJson {
    group_order: usize,
    num_classes: usize,
    dim_der: usize,
    dim_int: usize,
    dim_out: usize,
}

#[derive(Serialize)]
struct MatchesJson {
    der: bool,
    int: bool,
    out: bool,
}

fn rational_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

fn warning_strings(warnings: &[ParseWarning]) -> Vec<String> {
    warnings.iter().map(|w| w.to_string()).collect()
}

fn group_json(realized: &Realized) -> GroupJson {
    let order = match realized.finite_table() {
        Some(table) => OrderJson::Finite(table.order()),
        None => OrderJson::Infinite("infinite"),
    };
    GroupJson {
        order,
        num_classes_listed: realized.classes.len(),
        class_sizes: realized.classes.iter().map(|c| c.size()).collect(),
    }
}

fn component_json(report: &ComponentReport, cocycles: Option<Vec<Vec<String>>>) -> ComponentJson {
    ComponentJson {
        class_representative: report.class_representative.to_string(),
        num_vertices: report.num_vertices,
        num_edges: report.num_edges,
        num_cells: report.num_cells,
        dim_ker_d1: report.dim_ker_d1,
        rank_d0: report.rank_d0,
        h1: report.h1,
        outer_cocycles: cocycles,
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn print_text_warnings(warnings: &[ParseWarning]) {
    for warning in warnings {
        eprintln!("warning: {warning}");
    }
}

// ---------------------------------------------------------------------------
// Commands

fn cmd_parse(input: &InputArgs, json: bool) -> Result<(), Failure> {
    let (presentation, warnings) = load_presentation(input)?;
    if json {
        print_json(&ParseJson {
            schema_version: SCHEMA_VERSION,
            generators: presentation.generator_names().to_vec(),
            relators: presentation
                .relators()
                .iter()
                .map(|r| presentation.display_word(r))
                .collect(),
            warnings: warning_strings(&warnings),
        });
    } else {
        print_text_warnings(&warnings);
        println!("{presentation}");
    }
    Ok(())
}

fn cmd_enumerate(args: &RealizeArgs, json: bool) -> Result<(), Failure> {
    let realized = realize(args)?;
    let table = require_finite(&realized, "enumerate")?;
    if json {
        print_json(&ReportJson {
            schema_version: SCHEMA_VERSION,
            group: group_json(&realized),
            components: Vec::new(),
            oracle: None,
            matches: None,
            warnings: warning_strings(&realized.warnings),
        });
    } else {
        print_text_warnings(&realized.warnings);
        let sizes: Vec<String> =
            realized.classes.iter().map(|c| c.size().to_string()).collect();
        println!(
            "order={} classes={} sizes=[{}]",
            table.order(),
            realized.classes.len(),
            sizes.join(",")
        );
    }
    Ok(())
}

fn build_components(realized: &Realized) -> Result<Vec<ComponentComplex>, Failure> {
    realized
        .classes
        .iter()
        .map(|class| {
            build_component(&realized.presentation, &realized.backend, &class.members)
                .map_err(Failure::from)
        })
        .collect()
}

fn cmd_complex(args: &RealizeArgs, json: bool) -> Result<(), Failure> {
    let realized = realize(args)?;
    let components = build_components(&realized)?;
    let reports: Vec<ComponentReport> = components
        .iter()
        .map(|c| outerd_core::verify::component_report(c).map_err(Failure::from))
        .collect::<Result<_, _>>()?;
    if json {
        print_json(&ReportJson {
            schema_version: SCHEMA_VERSION,
            group: group_json(&realized),
            components: reports.iter().map(|r| component_json(r, None)).collect(),
            oracle: None,
            matches: None,
            warnings: warning_strings(&realized.warnings),
        });
    } else {
        print_text_warnings(&realized.warnings);
        for report in &reports {
            println!(
                "class={} vertices={} edges={} cells={}",
                report.class_representative,
                report.num_vertices,
                report.num_edges,
                report.num_cells
            );
        }
    }
    Ok(())
}

fn cmd_cohomology(args: &RealizeArgs, json: bool) -> Result<(), Failure> {
    let realized = realize(args)?;
    let components = build_components(&realized)?;
    let mut reports = Vec::with_capacity(components.len());
    let mut cocycles = Vec::with_capacity(components.len());
    for component in &components {
        reports.push(outerd_core::verify::component_report(component)?);
        let vectors = outer_cocycles(component)?;
        cocycles.push(
            vectors
                .iter()
                .map(|v| {
                    (0..component.num_edges())
                        .map(|edge| rational_string(&v.get(edge)))
                        .collect::<Vec<String>>()
                })
                .collect::<Vec<Vec<String>>>(),
        );
    }
    if json {
        print_json(&ReportJson {
            schema_version: SCHEMA_VERSION,
            group: group_json(&realized),
            components: reports
                .iter()
                .zip(cocycles)
                .map(|(r, c)| component_json(r, Some(c)))
                .collect(),
            oracle: None,
            matches: None,
            warnings: warning_strings(&realized.warnings),
        });
    } else {
        print_text_warnings(&realized.warnings);
        for (report, vectors) in reports.iter().zip(&cocycles) {
            println!(
                "class={} dim_ker_d1={} rank_d0={} h1={}",
                report.class_representative, report.dim_ker_d1, report.rank_d0, report.h1
            );
            for vector in vectors {
                println!("  cocycle: [{}]", vector.join(", "));
            }
        }
    }
    Ok(())
}

fn cmd_oracle(args: &RealizeArgs, json: bool) -> Result<(), Failure> {
    let realized = realize(args)?;
    let table = require_finite(&realized, "oracle")?;
    let report = derivation_dims(table, args.oracle_cap)?;
    if json {
        print_json(&ReportJson {
            schema_version: SCHEMA_VERSION,
            group: group_json(&realized),
            components: Vec::new(),
            oracle: Some(OracleJson {
                group_order: report.group_order,
                num_classes: report.num_classes,
                dim_der: report.dim_der,
                dim_int: report.dim_int,
                dim_out: report.dim_out,
            }),
            matches: None,
            warnings: warning_strings(&realized.warnings),
        });
    } else {
        print_text_warnings(&realized.warnings);
        println!(
            "order={} classes={} dim_der={} dim_int={} dim_out={}",
            report.group_order,
            report.num_classes,
            report.dim_der,
            report.dim_int,
            report.dim_out
        );
    }
    Ok(())
}

fn cmd_verify(args: &RealizeArgs, json: bool) -> Result<(), Failure> {
    let realized = realize(args)?;
    let report = verify_group(
        &realized.presentation,
        &realized.backend,
        &realized.classes,
        true,
        args.oracle_cap,
    )?;
    if json {
        print_json(&report_json(&realized, &report));
    } else {
        print_text_warnings(&realized.warnings);
        print!("{}", verify_text(&report));
    }
    if report.is_consistent() {
        Ok(())
    } else {
        Err(Failure::Mismatch(
            "the cohomology and brute-force routes disagree; see the report above".into(),
        ))
    }
}

fn report_json(realized: &Realized, report: &VerificationReport) -> ReportJson {
    ReportJson {
        schema_version: SCHEMA_VERSION,
        group: group_json(realized),
        components: report.components.iter().map(|r| component_json(r, None)).collect(),
        oracle: report.oracle.as_ref().map(|o| OracleJson {
            group_order: o.group_order,
            num_classes: o.num_classes,
            dim_der: o.dim_der,
            dim_int: o.dim_int,
            dim_out: o.dim_out,
        }),
        matches: match (report.matches_der, report.matches_int, report.matches_out) {
            (Some(der), Some(int), Some(out)) => Some(MatchesJson { der, int, out }),
            _ => None,
        },
        warnings: warning_strings(&realized.warnings),
    }
}

fn verify_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    for component in &report.components {
        let _ = writeln!(
            out,
            "class={} vertices={} edges={} cells={} dim_ker_d1={} rank_d0={} h1={}",
            component.class_representative,
            component.num_vertices,
            component.num_edges,
            component.num_cells,
            component.dim_ker_d1,
            component.rank_d0,
            component.h1
        );
    }
    let _ = writeln!(
        out,
        "totals: dim_ker_d1={} rank_d0={} h1={}",
        report.total_dim_ker_d1, report.total_rank_d0, report.total_h1
    );
    match &report.oracle {
        Some(oracle) => {
            let _ = writeln!(
                out,
                "oracle: order={} classes={} dim_der={} dim_int={} dim_out={}",
                oracle.group_order,
                oracle.num_classes,
                oracle.dim_der,
                oracle.dim_int,
                oracle.dim_out
            );
        }
        None => {
            let _ = writeln!(out, "oracle: none");
        }
    }
    match (report.matches_der, report.matches_int, report.matches_out) {
        (Some(der), Some(int), Some(out_flag)) => {
            let yn = |b: bool| if b { "yes" } else { "no" };
            let _ = writeln!(
                out,
                "matches: der={} int={} out={}",
                yn(der),
                yn(int),
                yn(out_flag)
            );
        }
        _ => {
            let _ = writeln!(out, "matches: none");
        }
    }
    out
}

fn cmd_export_dot(args: &ExportArgs) -> Result<(), Failure> {
    let realized = realize(&args.realize)?;
    if args.class_index >= realized.classes.len() {
        return Err(Failure::Usage(format!(
            "--class-index {} is out of range: {} classes",
            args.class_index,
            realized.classes.len()
        )));
    }
    let class = &realized.classes[args.class_index];
    let component =
        build_component(&realized.presentation, &realized.backend, &class.members)?;
    print!("{}", component.to_dot(&realized.presentation));
    Ok(())
}
