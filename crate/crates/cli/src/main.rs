//! `khoflow`: compute Khovanov homology tables, branched double cover
//! invariants, spectral sequence pages and mapping-cone model homology from
//! planar diagram codes.
//!
//! Exit codes: 0 success, 2 input error, 3 internal invariant violation.

use clap::{Args, Parser, Subcommand};
use khoflow_core::corpus::Corpus;
use khoflow_core::diagram::LinkDiagram;
use khoflow_core::hmr::{self, HmrModel};
use khoflow_core::khovanov::{self, BigradedDims};
use khoflow_core::report::*;
use khoflow_core::specseq;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "khoflow", version, about = "Link homology workbench over F2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DiagramInput {
    /// Named diagram from the corpus (see corpus/diagrams.json)
    #[arg(long, value_name = "NAME")]
    corpus: Option<String>,
    /// File containing a PD code
    #[arg(long, value_name = "FILE", conflicts_with = "corpus")]
    pd: Option<PathBuf>,
    /// Corpus file to use instead of the bundled one
    #[arg(long, value_name = "FILE")]
    corpus_file: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    /// Emit the JSON report instead of the table
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Unreduced Khovanov homology dimensions over F2
    Kh {
        #[command(flatten)]
        input: DiagramInput,
        #[command(flatten)]
        out: Output,
    },
    /// Reduced Khovanov homology dimensions over F2
    Khr {
        #[command(flatten)]
        input: DiagramInput,
        #[command(flatten)]
        out: Output,
    },
    /// Link determinant from the Goeritz form
    Det {
        #[command(flatten)]
        input: DiagramInput,
        #[command(flatten)]
        out: Output,
    },
    /// Invariant factors of H1 of the double branched cover
    H1 {
        #[command(flatten)]
        input: DiagramInput,
        #[command(flatten)]
        out: Output,
    },
    /// Spectral sequence pages of the weight-filtered cube complex
    Ss {
        #[command(flatten)]
        input: DiagramInput,
        /// Highest page to report (pages 1..=R)
        #[arg(long, value_name = "R", default_value_t = 2)]
        page: i32,
        /// Use the unreduced vertex spaces
        #[arg(long)]
        unreduced: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Homology of a mapping-cone model complex
    Hmr {
        /// Library model name (p237, unlink(n), two_bridge(d), torus_odd)
        /// or a path to a model JSON file
        #[arg(long, value_name = "NAME|FILE")]
        model: String,
        /// Truncation cutoff (defaults to the model minimum)
        #[arg(long, value_name = "N")]
        trunc: Option<i64>,
        /// Also print the Euler characteristic lines
        #[arg(long)]
        chi: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Skein triple at a crossing: determinants and triangle rank check
    Skein {
        #[command(flatten)]
        input: DiagramInput,
        /// Crossing index to resolve
        #[arg(long, value_name = "I")]
        crossing: Option<usize>,
        /// Check a dimension triple a,b,c directly
        #[arg(long, value_name = "A,B,C", conflicts_with_all = ["corpus", "pd", "crossing"])]
        dims: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> CliError {
        CliError::Input(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load_diagram(input: &DiagramInput) -> Result<(String, LinkDiagram), CliError> {
    let corpus = match &input.corpus_file {
        Some(path) => Corpus::from_path(path).map_err(CliError::input)?,
        None => Corpus::bundled(),
    };
    match (&input.corpus, &input.pd) {
        (Some(name), None) => Ok((name.clone(), corpus.diagram(name).map_err(CliError::input)?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let d = LinkDiagram::parse_pd(&text).map_err(CliError::input)?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
            Ok((name.unwrap_or_else(|| "pd".into()), d))
        }
        _ => Err(CliError::Input("exactly one of --corpus or --pd is required".into())),
    }
}

fn load_model(spec: &str) -> Result<HmrModel, CliError> {
    let path = PathBuf::from(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
        let mf: ModelFile = serde_json::from_str(&text).map_err(CliError::input)?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        mf.into_model(&name.unwrap_or_else(|| "model".into())).map_err(CliError::input)
    } else {
        hmr::model_library(spec).map_err(CliError::input)
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> CliResult {
    let text = serde_json::to_string(value)
        .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Kh { input, out } => homology_cmd(&input, false, out.json),
        Command::Khr { input, out } => homology_cmd(&input, true, out.json),
        Command::Det { input, out } | Command::H1 { input, out } => det_cmd(&input, out.json),
        Command::Ss { input, page, unreduced, out } => ss_cmd(&input, page, !unreduced, out.json),
        Command::Hmr { model, trunc, chi, out } => hmr_cmd(&model, trunc, chi, out.json),
        Command::Skein { input, crossing, dims, out } => skein_cmd(&input, crossing, dims, out.json),
    }
}

fn homology_cmd(input: &DiagramInput, reduced: bool, json: bool) -> CliResult {
    let (name, d) = load_diagram(input)?;
    let dims: BigradedDims = if reduced {
        khovanov::khr_homology(&d).map_err(CliError::input)?
    } else {
        khovanov::kh_homology(&d).map_err(CliError::input)?
    };
    let report = KhReport::new(&name, reduced, &dims);
    if json {
        return print_json(&report);
    }
    println!("{} homology of {name}", if reduced { "reduced Khovanov" } else { "Khovanov" });
    println!("{:>5} {:>5} {:>5}", "h", "q", "dim");
    for (h, q, dim) in &report.table {
        println!("{h:>5} {q:>5} {dim:>5}");
    }
    println!("total {}", report.total_dim);
    Ok(())
}

fn det_cmd(input: &DiagramInput, json: bool) -> CliResult {
    let (name, d) = load_diagram(input)?;
    let report = DetReport::new(&name, &d).map_err(CliError::input)?;
    if json {
        return print_json(&report);
    }
    println!("det({name}) = {}", report.det);
    println!("h1 invariant factors: {:?}", report.h1_invariant_factors);
    println!("b1 = {}", report.b1);
    Ok(())
}

fn ss_cmd(input: &DiagramInput, page: i32, reduced: bool, json: bool) -> CliResult {
    let (name, d) = load_diagram(input)?;
    let cube = khovanov::build_cube(&d).map_err(CliError::input)?;
    let fc = specseq::from_cube(&cube, reduced);
    let report = SsReport::new(&name, reduced, &fc, page).map_err(CliError::input)?;
    if json {
        return print_json(&report);
    }
    println!("spectral sequence of {name} (weight filtration)");
    for p in &report.pages {
        let cells: Vec<String> =
            p.dims.iter().map(|(w, dim)| format!("w{w}:{dim}")).collect();
        println!("E_{}: {} (total {})", p.r, cells.join(" "), p.total);
    }
    println!("E_infinity total {}", report.e_infinity_total);
    Ok(())
}

fn hmr_cmd(model_spec: &str, trunc: Option<i64>, chi: bool, json: bool) -> CliResult {
    let model = load_model(model_spec)?;
    let report = HmrReport::new(&model, trunc).map_err(CliError::input)?;
    if json {
        return print_json(&report);
    }
    println!("model {}", report.model);
    for (g, dim) in &report.dims_by_grading {
        println!("gr {g:>4}: dim {dim}");
    }
    println!("total {}", report.total_dim);
    if chi {
        println!("|chi| = {}", report.abs_chi);
        if let Some(per) = &report.per_spinc {
            println!("per-spin-c dims: {per:?}");
        }
    }
    Ok(())
}

fn skein_cmd(
    input: &DiagramInput,
    crossing: Option<usize>,
    dims: Option<String>,
    json: bool,
) -> CliResult {
    if let Some(spec) = dims {
        let parts: Vec<u64> = spec
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Input(format!("bad --dims `{spec}`, expected a,b,c")))?;
        let [a, b, c] = parts[..] else {
            return Err(CliError::Input(format!("bad --dims `{spec}`, expected three values")));
        };
        let check = hmr::triangle_rank_check(a, b, c);
        let report = TriangleReport::from(&check);
        if json {
            return print_json(&report);
        }
        println!("triangle check on ({a}, {b}, {c}): {}", if check.pass { "pass" } else { "fail" });
        for v in &check.violations {
            println!("  violated: {v}");
        }
        return Ok(());
    }
    let (name, d) = load_diagram(input)?;
    let crossing = crossing.ok_or_else(|| CliError::Input("--crossing is required".into()))?;
    let (k2, k1, k0) = d.skein_triple(crossing).map_err(CliError::input)?;
    let dets = [
        khoflow_core::branched::determinant(&k2).map_err(CliError::input)?,
        khoflow_core::branched::determinant(&k1).map_err(CliError::input)?,
        khoflow_core::branched::determinant(&k0).map_err(CliError::input)?,
    ];
    let check = hmr::triangle_rank_check(dets[0], dets[1], dets[2]);
    let report = SkeinReport {
        schema: SCHEMA_VERSION,
        diagram: name.clone(),
        crossing,
        dets,
        components: [k2.n_components(), k1.n_components(), k0.n_components()],
        triangle: TriangleReport::from(&check),
    };
    if json {
        return print_json(&report);
    }
    println!("skein triple of {name} at crossing {crossing}");
    println!("dets (K2, K1, K0) = ({}, {}, {})", dets[0], dets[1], dets[2]);
    println!("components        = ({}, {}, {})", report.components[0], report.components[1], report.components[2]);
    println!("triangle check: {}", if check.pass { "pass" } else { "fail" });
    for v in &check.violations {
        println!("  violated: {v}");
    }
    Ok(())
}
