use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use homstat::model_io::{
    critical_prism_twist, export_diagrams, generate_prism, parse_structure, regular_k5, serialize_structure, validate,
    AnalysisReport, ExportOptions, StateDocument,
};
use homstat::{
    analyze, axial_to_state, synthesize_diagram, BarSelection, CycleBasis, DiagramOptions, Frame, NodeId, Point4,
    SelfStressState,
};
use nalgebra::Vector3;

#[derive(Parser)]
#[command(name = "homstat", version, about = "Loop-based graphic statics for 3D frames")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Common {
    /// Structure document.
    structure: PathBuf,
    /// Relative tolerance for rank and axial checks.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Root node of the spanning tree (default: lowest id).
    #[arg(long)]
    tree_root: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Spanning tree, cycle basis and counts.
    Cycles(Common),
    /// Axial self-stress from the equilibrium matrix, carried over to the
    /// cycle basis.
    Axial {
        #[command(flatten)]
        common: Common,
        /// Which null vector to use.
        #[arg(long, default_value_t = 0)]
        mode: usize,
        /// Write the resulting state here.
        #[arg(long)]
        state_out: Option<PathBuf>,
    },
    /// Node residuals of a supplied state; exits with status 2 if any
    /// exceeds the tolerance.
    Check {
        #[command(flatten)]
        common: Common,
        state: PathBuf,
    },
    /// Write form.obj and force.obj.
    Export {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: PathBuf,
        /// State to draw; without it, and without --axial, only the form
        /// diagram is written.
        #[arg(long, conflicts_with = "axial")]
        state: Option<PathBuf>,
        /// Draw the first axial self-stress.
        #[arg(long)]
        axial: bool,
        /// One loop per bar instead of one per basis cycle.
        #[arg(long)]
        all_bars: bool,
        /// Start every loop at the origin of the force diagram.
        #[arg(long)]
        shared_anchor: bool,
        #[arg(long)]
        merge_loops: bool,
    },
    /// Built-in example structures.
    Gen {
        #[command(subcommand)]
        which: Example,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Example {
    /// Regular tetrahedron with a connected center node.
    K5 {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0,0,0")]
        center: Vec<f64>,
    },
    /// Three-strut prism on a cylinder.
    Prism {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.5)]
        half_height: f64,
        /// Twist in degrees; defaults to the critical twist.
        #[arg(long, allow_negative_numbers = true)]
        twist: Option<f64>,
    },
}

fn load(common: &Common) -> homstat::Result<(Frame, CycleBasis)> {
    let g = validate(&parse_structure(&fs::read_to_string(&common.structure)?)?)?;
    let basis = match common.tree_root {
        Some(r) => CycleBasis::with_root(&g, NodeId(r))?,
        None => CycleBasis::new(&g),
    };
    Ok((g, basis))
}

fn emit(report: &AnalysisReport, format: Format) {
    match format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> homstat::Result<()> {
    match path {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn axial_state(g: &Frame, basis: &CycleBasis, tol: f64, mode: usize) -> homstat::Result<(AnalysisReport, Option<SelfStressState<f64>>)> {
    let svd = analyze(g, tol)?;
    let report = AnalysisReport::structure(g, basis, &svd);
    let Some(q) = svd.null_basis.get(mode) else {
        return Ok((report, None));
    };
    let state = axial_to_state(g, basis, q, tol)?;
    let report = report.with_oracle_forces(q).with_state(g, basis, &state, tol)?;
    Ok((report, Some(state)))
}

fn run(cli: Cli) -> homstat::Result<ExitCode> {
    match cli.command {
        Command::Cycles(c) => {
            let (g, basis) = load(&c)?;
            emit(&AnalysisReport::structure(&g, &basis, &analyze(&g, c.tol)?), c.format);
        }
        Command::Axial { common: c, mode, state_out } => {
            let (g, basis) = load(&c)?;
            let (report, state) = axial_state(&g, &basis, c.tol, mode)?;
            if let (Some(path), Some(s)) = (state_out, &state) {
                fs::write(path, StateDocument::from_state(s).to_json())?;
            }
            emit(&report, c.format);
        }
        Command::Check { common: c, state } => {
            let (g, basis) = load(&c)?;
            let doc = StateDocument::parse(&fs::read_to_string(state)?)?;
            let base = AnalysisReport::structure(&g, &basis, &analyze(&g, c.tol)?);
            let report = if doc.is_per_bar() {
                base.with_bar_resultants(&g, &basis, &doc.bar_resultants())?
            } else {
                base.with_state(&g, &basis, &doc.to_state(&basis)?, c.tol)?
            };
            emit(&report, c.format);
            if report.max_relative_residual.unwrap_or(0.0) > c.tol {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Export { common: c, out, state, axial, all_bars, shared_anchor, merge_loops } => {
            let (g, basis) = load(&c)?;
            let s = if let Some(path) = state {
                Some(StateDocument::parse(&fs::read_to_string(path)?)?.to_state(&basis)?)
            } else if axial {
                axial_state(&g, &basis, c.tol, 0)?.1
            } else {
                None
            };
            let loops = match s {
                Some(s) => {
                    let opts = DiagramOptions {
                        bars: if all_bars { BarSelection::All } else { BarSelection::Generators },
                        shared_anchor: shared_anchor.then(Point4::origin),
                        tol: c.tol.max(1e-9),
                    };
                    synthesize_diagram(&g, &basis, &s, &opts)?
                }
                None => Vec::new(),
            };
            let files = export_diagrams(&g, &loops, &out, ExportOptions { merge_loops })?;
            eprintln!("wrote {}", files.form.display());
            if let Some(f) = files.force {
                eprintln!("wrote {} ({} loops)", f.display(), loops.len());
            }
        }
        Command::Gen { which, out } => {
            let doc = match which {
                Example::K5 { center } => {
                    let [x, y, z] = center[..] else {
                        return Err(homstat::Error::Document("--center takes three comma-separated numbers".into()));
                    };
                    regular_k5(Vector3::new(x, y, z))
                }
                Example::Prism { radius, half_height, twist } => {
                    let t = match twist {
                        Some(deg) => deg.to_radians(),
                        None => critical_prism_twist(radius, half_height)?.twist,
                    };
                    generate_prism(radius, half_height, t)?
                }
            };
            write_or_print(out.as_deref(), &serialize_structure(&doc))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
