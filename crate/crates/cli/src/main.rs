//! `flopwin`: command-line driver for the window/tilting checks.
//!
//! Every subcommand prints JSON (or CSV where offered) on stdout. When
//! `FLOPWIN_REPORT_DIR` is set, the same JSON is also written there as
//! `<subcommand>.json`. Exit status: 0 on success, 1 when a check fails,
//! 2 on malformed input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flopwin::bott::{self, LineBundleWeight, ResolutionModel};
use flopwin::characters::{hom_euler_series, LaurentChar, DEFAULT_SERIES_TRUNCATION};
use flopwin::closure::standard_closure;
use flopwin::figures::{self, Figure};
use flopwin::gamma::character_table;
use flopwin::git::{semistable, slice_weights, unstable_stratum};
use flopwin::koszul::{self, tor_weights, KoszulSpec};
use flopwin::potential::{critical_stratum_check, Cubic6};
use flopwin::verify::{self, Status};
use flopwin::windows::{WindowSet, DEFAULT_BOX};
use flopwin::{GitProblem, IrrepDecomp, PointV, Side, Weight};

const REPORT_DIR_ENV: &str = "FLOPWIN_REPORT_DIR";

#[derive(Parser)]
#[command(name = "flopwin", version, about = "Exact checks for the GL₂ flop windows and tilting bundles")]
struct Cli {
    /// GIT problem as JSON (defaults to the built-in flop).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// η-invariants of the destabilizing 1-PS.
    Eta,
    /// Enumerate a window set.
    Windows {
        #[arg(long, allow_hyphen_values = true)]
        side: Side,
        #[arg(long, default_value_t = DEFAULT_BOX)]
        r#box: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Character table of Γ.
    GammaTable {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Semistability of a point given as JSON (inline or a file path).
    Semistable {
        #[arg(long)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        side: Side,
    },
    /// Residual weights on a transverse slice.
    SliceWeights { model: String },
    /// Terms of a Weyman complex.
    Weyman {
        #[arg(long)]
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        twist: LineBundleWeight,
        /// Drop the degree-0 term.
        #[arg(long)]
        drop_first: bool,
        /// Also write an SVG scatter of the support.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Generation closure of ∇₊.
    Closure {
        #[arg(long, conflicts_with = "without_k")]
        with_k: bool,
        #[arg(long)]
        without_k: bool,
        #[arg(long, default_value_t = DEFAULT_BOX)]
        bound: i64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Koszul homology weights.
    KoszulTor {
        /// `z1plus`, `z1minus`, or a JSON file.
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 6)]
        truncation: usize,
    },
    /// Graded Hom series `dim Hom(𝒯_src, 𝒯_tgt ⊗ Symⁿ V∨)^G`.
    HomSeries {
        #[arg(long, allow_hyphen_values = true)]
        src: Weight,
        #[arg(long, allow_hyphen_values = true)]
        tgt: Weight,
        #[arg(long, default_value_t = DEFAULT_SERIES_TRUNCATION)]
        truncation: usize,
    },
    /// Critical locus of the superpotential.
    Critical {
        /// `fermat` or a JSON file of cubic terms.
        #[arg(long, default_value = "fermat")]
        f: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the three figures as SVG and JSON.
    Figures {
        /// Output directory; defaults to the report directory, then `figures`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every acceptance check.
    VerifyAll {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Input the user got wrong; maps to exit status 2.
#[derive(Debug)]
struct BadInput(String);

impl std::fmt::Display for BadInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for BadInput {}

fn bad(e: impl std::fmt::Display) -> anyhow::Error {
    BadInput(e.to_string()).into()
}

fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))
}

fn load_problem(config: &Option<PathBuf>) -> Result<GitProblem> {
    match config {
        None => Ok(GitProblem::flop()),
        Some(p) => GitProblem::from_json(&read_input(p)?).map_err(bad),
    }
}

/// Inline JSON, or a path to a JSON file.
fn json_arg(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') { Ok(arg.to_string()) } else { read_input(Path::new(arg)) }
}

fn emit(name: &str, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    out(&text)?;
    save_report(name, &text)
}

/// Prints a line to stdout; a closed pipe is not an error.
fn out(text: &str) -> Result<()> {
    use std::io::Write;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn save_report(name: &str, text: &str) -> Result<()> {
    if let Some(dir) = std::env::var_os(REPORT_DIR_ENV) {
        let dir = PathBuf::from(dir);
        std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        std::fs::write(dir.join(format!("{name}.json")), text)?;
    }
    Ok(())
}

fn write_figure(dir: &Path, fig: &Figure) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let svg = dir.join(format!("{}.svg", fig.name));
    let js = dir.join(format!("{}.json", fig.name));
    std::fs::write(&svg, fig.to_svg())?;
    std::fs::write(&js, fig.to_json())?;
    Ok(vec![svg.display().to_string(), js.display().to_string()])
}

fn write_svg(path: &Path, fig: &Figure) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, fig.to_svg()).with_context(|| format!("writing {}", path.display()))
}

/// Returns whether every check that ran passed.
fn run(cli: Cli) -> Result<bool> {
    let problem = load_problem(&cli.config)?;
    match cli.command {
        Command::Eta => {
            let rows: Vec<Value> = problem
                .one_ps
                .iter()
                .map(|l| json!({ "lambda": l, "eta": problem.eta(l), "eta_negated": problem.eta(&l.neg()) }))
                .collect();
            emit("eta", &json!({ "calabi_yau": problem.is_calabi_yau(), "strata": rows }))?;
        }
        Command::Windows { side, r#box, format } => {
            if r#box < 1 {
                return Err(bad("box must be positive"));
            }
            let rules = WindowSet::from_problem(&problem, side);
            let set = rules.enumerate(r#box);
            match format {
                Format::Json => emit("windows", &json!({ "side": side, "rules": rules.rules, "count": set.len(), "weights": set }))?,
                Format::Csv => {
                    let rows: Vec<String> = set.iter().map(|w| format!("{},{}", w.a, w.b)).collect();
                    out(&format!("a,b\n{}", rows.join("\n")))?;
                }
            }
        }
        Command::GammaTable { format } => {
            let t = character_table();
            match format {
                Format::Json => emit("gamma-table", &serde_json::to_value(&t)?)?,
                Format::Csv => out(t.to_csv().trim_end())?,
            }
        }
        Command::Semistable { point, side } => {
            let p = PointV::from_json(&json_arg(&point)?).map_err(bad)?;
            emit(
                "semistable",
                &json!({ "side": side, "semistable": semistable(&p, side), "unstable_stratum": unstable_stratum(&p, side), "phi_rank": p.phi_rank(), "psi_stratum": p.psi.stratum() }),
            )?;
        }
        Command::SliceWeights { model } => {
            emit("slice-weights", &serde_json::to_value(slice_weights(&model).map_err(bad)?)?)?;
        }
        Command::Weyman { model, twist, drop_first, svg } => {
            let m = ResolutionModel::by_name(&model).map_err(bad)?;
            let mut cx = bott::weyman_complex(&m, twist)?;
            if drop_first {
                cx = cx.without_degree(cx.min_degree());
            }
            let exact = bott::exactness_check(&m, &cx, 4)?;
            if let Some(path) = svg {
                write_svg(&path, &figures::complex_figure("weyman", &format!("{model} ⊗ {twist}"), &cx))?;
            }
            emit(
                "weyman",
                &json!({ "complex": cx, "support": cx.support(), "rank_balance": cx.rank_balance(), "first_inexact_degree": exact }),
            )?;
        }
        Command::Closure { with_k, without_k: _, bound, svg } => {
            if bound < DEFAULT_BOX {
                return Err(bad(format!("bound must be at least {DEFAULT_BOX}")));
            }
            let st = standard_closure(with_k, bound)?;
            if let Some(path) = svg {
                let fig = figures::closure_figure()?;
                let panel = fig.panels[usize::from(with_k)].clone();
                write_svg(&path, &Figure { name: "closure".into(), title: panel.title.clone(), panels: vec![panel] })?;
            }
            emit("closure", &json!({ "with_k": with_k, "count": st.weights().len(), "weights": st.weights(), "state": st }))?;
        }
        Command::KoszulTor { case, truncation } => {
            let p = match case.as_str() {
                "z1plus" => koszul::z1_plus(),
                "z1minus" => koszul::z1_minus(),
                path => {
                    let spec: KoszulSpec = serde_json::from_str(&read_input(Path::new(path))?).map_err(bad)?;
                    spec.build().map_err(bad)?
                }
            };
            let rep = tor_weights(&p, truncation);
            let support: Vec<Value> =
                rep.degrees.iter().map(|d| json!({ "k": d.k, "weights": d.support() })).collect();
            emit("koszul-tor", &json!({ "case": case, "support": support, "report": rep }))?;
        }
        Command::HomSeries { src, tgt, truncation } => {
            for w in [src, tgt] {
                w.check_dominant().map_err(bad)?;
            }
            let v = LaurentChar::from_weights(problem.v_weights.iter().copied());
            let series = hom_euler_series(&IrrepDecomp::single(src), &IrrepDecomp::single(tgt), &v, truncation)?;
            emit("hom-series", &json!({ "src": src, "tgt": tgt, "series": series }))?;
        }
        Command::Critical { f, samples, seed } => {
            let cubic = if f == "fermat" { Cubic6::fermat() } else { Cubic6::from_json(&read_input(Path::new(&f))?).map_err(bad)? };
            let rep = critical_stratum_check(&cubic, samples, seed);
            emit("critical", &serde_json::to_value(&rep)?)?;
            return Ok(rep.status != Status::Fail);
        }
        Command::Figures { out } => {
            let dir = out
                .or_else(|| std::env::var_os(REPORT_DIR_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("figures"));
            let mut files = Vec::new();
            for fig in figures::all_figures()? {
                files.extend(write_figure(&dir, &fig)?);
            }
            emit("figures", &json!({ "files": files }))?;
        }
        Command::VerifyAll { seed } => {
            let report = verify::run_all(seed);
            let text = report.to_json();
            out(&text)?;
            save_report("verify-all", &text)?;
            for c in &report.checks {
                eprintln!("{:<24} {:?}", c.name, c.status);
            }
            return Ok(report.ok());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let input = e.downcast_ref::<BadInput>().is_some() || e.downcast_ref::<flopwin::Error>().is_some_and(is_input_error);
            ExitCode::from(if input { 2 } else { 1 })
        }
    }
}

fn is_input_error(e: &flopwin::Error) -> bool {
    matches!(e, flopwin::Error::Parse(_) | flopwin::Error::UnknownModel(_) | flopwin::Error::NotDominant(..))
}
