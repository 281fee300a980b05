use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use frontcalc::catalog;
use frontcalc::cobordism::{check_trace, pinch, ruling_fillability, search_with, CobordismTrace, PinchMode, SearchConfig, Site};
use frontcalc::format::{parse_diagram, parse_pattern, print_diagram};
use frontcalc::front::{classical_invariants, FrontDiagram};
use frontcalc::isotopy::random_shuffle;
use frontcalc::render::{render_filmstrip, render_svg, RenderOptions};
use frontcalc::rulings::{enumerate_rulings, format_rulings};
use frontcalc::satellites::{pattern_by_name, satellite, PatternFront};

#[derive(Parser)]
#[command(name = "frontcalc", version, about = "Legendrian front calculator")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Print tb and rot.
    Invariants { source: String },
    /// Count or list normal rulings.
    Rulings {
        #[arg(long)]
        list: bool,
        source: String,
    },
    /// Apply a random sequence of isotopy rewrites.
    Shuffle {
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Defaults to $FRONTCALC_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        source: String,
    },
    /// Pinch at a site `i@k`.
    Pinch {
        #[arg(long)]
        site: Site,
        #[arg(long)]
        orientable: bool,
        source: String,
    },
    /// Search for a decomposable filling.
    SearchFilling {
        #[arg(long, default_value_t = 3)]
        max_pinches: usize,
        #[arg(long, default_value_t = 0)]
        budget: usize,
        /// Allow pinches between strands oriented the same way.
        #[arg(long)]
        any_orientation: bool,
        source: String,
    },
    /// Search for a filling compatible with a ruling (1-based index).
    RulingFillable {
        #[arg(long)]
        ruling: usize,
        #[arg(long, default_value_t = 4)]
        max_pinches: usize,
        source: String,
    },
    /// Build a satellite from a named or file pattern.
    Satellite {
        #[arg(long)]
        pattern: String,
        source: String,
    },
    /// Replay and validate a trace file.
    CheckTrace { trace: PathBuf },
    /// Write an SVG of a front, optionally with a ruling, or of a trace.
    Render {
        #[arg(long)]
        svg: PathBuf,
        /// Overlay this ruling (1-based index).
        #[arg(long)]
        ruling: Option<usize>,
        /// Draw a filmstrip of this trace instead of a single front.
        #[arg(long)]
        trace: Option<PathBuf>,
        source: Option<String>,
    },
    /// Inspect the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Selftest,
}

enum Failure {
    /// Unreadable or malformed input.
    Input(String),
    /// Well-formed input the operation rejects.
    Domain(String),
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(source: &str) -> Result<FrontDiagram, Failure> {
    if let Some(name) = source.strip_prefix("catalog:") {
        return catalog::lookup(name)
            .map(|e| e.diagram())
            .ok_or_else(|| Failure::Input(format!("no catalog entry `{name}`")));
    }
    let text = read(Path::new(source))?;
    parse_diagram(&text).map_err(|e| Failure::Input(format!("{source}: {e}")))
}

fn load_pattern(spec: &str) -> Result<PatternFront, Failure> {
    if Path::new(spec).is_file() {
        let text = read(Path::new(spec))?;
        return parse_pattern(&text).map_err(|e| Failure::Input(format!("{spec}: {e}")));
    }
    pattern_by_name(spec).map_err(|e| Failure::Input(e.to_string()))
}

fn load_trace(path: &Path) -> Result<CobordismTrace, Failure> {
    let text = read(path)?;
    CobordismTrace::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn pick_ruling(d: &FrontDiagram, index: usize) -> Result<frontcalc::rulings::NormalRuling, Failure> {
    let mut rs = enumerate_rulings(d);
    if index == 0 || index > rs.len() {
        return Err(Failure::Domain(format!("ruling {index} out of range, diagram has {}", rs.len())));
    }
    Ok(rs.swap_remove(index - 1))
}

fn default_seed() -> Result<u64, Failure> {
    match std::env::var("FRONTCALC_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Input(format!("FRONTCALC_SEED is not an integer: `{s}`"))),
        Err(_) => Ok(0),
    }
}

fn run(cli: Cli) -> Outcome {
    let tsv = cli.format == Format::Tsv;
    match cli.command {
        Command::Invariants { source } => {
            let d = load(&source)?;
            let inv = classical_invariants(&d);
            let mut out = String::new();
            if tsv {
                out.push_str("component\ttb\trot\n");
                let _ = writeln!(out, "all\t{}\t{}", inv.tb, inv.rot);
                if inv.per_component.len() > 1 {
                    for (c, (tb, rot)) in inv.per_component.iter().enumerate() {
                        let _ = writeln!(out, "{c}\t{tb}\t{rot}");
                    }
                }
            } else {
                let _ = writeln!(out, "tb={} rot={}", inv.tb, inv.rot);
                if inv.per_component.len() > 1 {
                    for (c, (tb, rot)) in inv.per_component.iter().enumerate() {
                        let _ = writeln!(out, "component {c}: tb={tb} rot={rot}");
                    }
                }
            }
            Ok(out)
        }
        Command::Rulings { list, source } => {
            let d = load(&source)?;
            let rs = enumerate_rulings(&d);
            Ok(match (list, tsv) {
                (true, false) => format_rulings(&rs),
                (false, false) => format!("count: {}\n", rs.len()),
                (_, true) => {
                    let mut out = String::from("ruling\tswitches\n");
                    if list {
                        for (k, r) in rs.iter().enumerate() {
                            let sw: Vec<String> = r.switches.iter().map(|i| i.to_string()).collect();
                            let _ = writeln!(out, "{}\t{}", k + 1, sw.join(","));
                        }
                    }
                    let _ = writeln!(out, "count\t{}", rs.len());
                    out
                }
            })
        }
        Command::Shuffle { steps, seed, source } => {
            let d = load(&source)?;
            let seed = match seed {
                Some(s) => s,
                None => default_seed()?,
            };
            Ok(print_diagram(&random_shuffle(&d, steps, seed)))
        }
        Command::Pinch { site, orientable, source } => {
            let d = load(&source)?;
            let mode = if orientable { PinchMode::OrientableOnly } else { PinchMode::Any };
            pinch(&d, site, mode).map(|p| print_diagram(&p)).map_err(|e| Failure::Domain(e.to_string()))
        }
        Command::SearchFilling { max_pinches, budget, any_orientation, source } => {
            let d = load(&source)?;
            let mut cfg = SearchConfig::new(max_pinches, budget);
            cfg.orientable_only = !any_orientation;
            match search_with(&d, &cfg).0 {
                Some(t) => Ok(t.to_text()),
                None => Err(Failure::Domain(format!(
                    "no decomposable filling within {max_pinches} pinches and budget {budget}"
                ))),
            }
        }
        Command::RulingFillable { ruling, max_pinches, source } => {
            let d = load(&source)?;
            let r = pick_ruling(&d, ruling)?;
            match ruling_fillability(&d, &r, max_pinches) {
                Some(t) => Ok(t.to_text()),
                None => Err(Failure::Domain(format!("ruling {ruling}: no paired-pinch filling within {max_pinches} pinches"))),
            }
        }
        Command::Satellite { pattern, source } => {
            let d = load(&source)?;
            let p = load_pattern(&pattern)?;
            let s = satellite(&d, &p).map_err(|e| Failure::Domain(e.to_string()))?;
            Ok(print_diagram(&s.diagram))
        }
        Command::CheckTrace { trace } => {
            let t = load_trace(&trace)?;
            let c = check_trace(&t);
            match c.failure {
                None => Ok(if tsv { "valid\ttrue\n".into() } else { "valid\n".into() }),
                Some(f) => {
                    let at = f.step.map_or("trace".to_string(), |s| format!("step {}", s + 1));
                    Err(Failure::Domain(format!("invalid: {at}: {}", f.reason)))
                }
            }
        }
        Command::Render { svg, ruling, trace, source } => {
            let doc = match (trace, source) {
                (Some(t), None) => render_filmstrip(&load_trace(&t)?).map_err(Failure::Domain)?,
                (None, Some(src)) => {
                    let d = load(&src)?;
                    let ruling = ruling.map(|r| pick_ruling(&d, r)).transpose()?;
                    render_svg(&d, &RenderOptions { ruling, title: Some(src) })
                }
                _ => return Err(Failure::Input("render takes either a source diagram or --trace".into())),
            };
            std::fs::write(&svg, doc).map_err(|e| Failure::Domain(format!("{}: {e}", svg.display())))?;
            Ok(String::new())
        }
        Command::Catalog { action: CatalogAction::List } => {
            let mut out = String::new();
            if tsv {
                out.push_str("name\ttb\trot\trulings\tprovenance\tword\n");
            }
            for e in catalog::entries() {
                let (tb, rot, r, prov) = match e.expected {
                    Some(x) => (x.tb.to_string(), x.rot.to_string(), x.rulings.to_string(), x.provenance.tag()),
                    None => ("?".into(), "?".into(), "?".into(), "-"),
                };
                if tsv {
                    let _ = writeln!(out, "{}\t{tb}\t{rot}\t{r}\t{prov}\t{}", e.name, e.word);
                } else {
                    let _ = writeln!(out, "{:<18} tb={tb} rot={rot} rulings={r} [{prov}] {}", e.name, e.source_note);
                }
            }
            Ok(out)
        }
        Command::Catalog { action: CatalogAction::Selftest } => {
            let lines = catalog::selftest();
            let mut out = String::new();
            for l in &lines {
                let _ = writeln!(out, "{l}");
            }
            if lines.iter().all(|l| l.ok) {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Domain("catalog selftest failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
