//! `tonnetz`: build, verify and export the catalog of tone networks.
//!
//! Exit status is 0 on success, 1 when a verification fails or an
//! operation errors, and 2 on a usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tonnetz::catalog::{self, BuildOptions, CatalogError};
use tonnetz::cycles::{enumerate_hamiltonians, CycleCatalog, ReferenceHamiltonian};
use tonnetz::export::{self, tessellation_patch, Flavor};
use tonnetz::incidence::IncidenceStructure;
use tonnetz::levi::LeviGraph;
use tonnetz::music::{PitchClass, Scale};
use tonnetz::progression::{chart_progression, minimal_trajectory, Progression, Trajectory};
use tonnetz::score;
use tonnetz::verify;

#[derive(Parser)]
#[command(name = "tonnetz", version, about = "Tone networks as configurations and Levi graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Structure {
    /// Catalog name, or a path to an incidence JSON file.
    structure: String,
    /// Scale as `C:major`, `A:minor` or `pentatonic:C,D,E,G,A`.
    #[arg(long)]
    scale: Option<String>,
    /// Six comma-separated notes tagged 1 to 6.
    #[arg(long)]
    hexachord: Option<String>,
}

#[derive(Args, Clone)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Csv,
    Json,
    Svg,
    Midi,
}

#[derive(Subcommand)]
enum Command {
    /// Build a structure and print it.
    Build {
        #[command(flatten)]
        structure: Structure,
        #[command(flatten)]
        output: Output,
    },
    /// Run the invariant suite for one catalog entry, or `all`.
    Verify {
        structure: String,
        #[arg(long)]
        scale: Option<String>,
        #[arg(long)]
        hexachord: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Count cycles by length and p-number against the pinned perimeter.
    Cycles {
        #[command(flatten)]
        structure: Structure,
        #[command(flatten)]
        output: Output,
    },
    /// Chart a chord progression.
    Progress {
        #[command(flatten)]
        structure: Structure,
        #[arg(long, value_delimiter = ',', required = true)]
        chords: Vec<String>,
        #[arg(long)]
        minimal: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Realize one of the two compositions as a score.
    Compose {
        #[arg(value_enum)]
        piece: Piece,
        #[arg(long)]
        scale: Option<String>,
        #[arg(long)]
        hexachord: Option<String>,
        /// Hold the grounding B under the decacycle.
        #[arg(long)]
        pedal: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Export a structure as DOT, JSON or an SVG tessellation patch.
    Export {
        #[command(flatten)]
        structure: Structure,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = 3)]
        rows: usize,
        #[arg(long, default_value_t = 4)]
        cols: usize,
        #[arg(long, default_value = "bipartite")]
        flavor: String,
    },
    /// Print the letter tables of the duads and synthemes.
    Tables {
        #[arg(value_enum, default_value = "all")]
        table: Table,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Piece {
    Perimeter,
    Decacycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    I,
    Ii,
    Iii,
    Iv,
    All,
}

/// Failures that map to exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn options(scale: Option<&str>, hexachord: Option<&str>) -> Result<BuildOptions> {
    let mut o = BuildOptions::default();
    if let Some(s) = scale {
        o.scale = s.parse().map_err(|e| usage(format!("--scale: {e}")))?;
    }
    if let Some(h) = hexachord {
        let notes = tonnetz::music::parse_notes(h).map_err(|e| usage(format!("--hexachord: {e}")))?;
        o.hexachord = Scale::hexachord(notes).map_err(|e| usage(format!("--hexachord: {e}")))?;
    }
    Ok(o)
}

struct Loaded {
    name: String,
    options: BuildOptions,
    structure: IncidenceStructure,
    from_catalog: bool,
}

fn load(s: &Structure) -> Result<Loaded> {
    let options = options(s.scale.as_deref(), s.hexachord.as_deref())?;
    let path = Path::new(&s.structure);
    if s.structure.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let structure = IncidenceStructure::from_json(&text).with_context(|| format!("in {}", path.display()))?;
        return Ok(Loaded {
            name: structure.name().to_string(),
            options,
            structure,
            from_catalog: false,
        });
    }
    let structure = catalog::build(&s.structure, &options).map_err(|e| match e {
        CatalogError::UnknownStructure(_) => usage(e.to_string()),
        e => e.into(),
    })?;
    Ok(Loaded {
        name: s.structure.clone(),
        options,
        structure,
        from_catalog: true,
    })
}

/// The requested format, else the one implied by the output extension.
fn format_of(output: &Output, default: Format) -> Format {
    output.format.unwrap_or_else(
        || match output.out.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("dot") => Format::Dot,
            Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            Some("svg") => Format::Svg,
            Some("mid" | "midi") => Format::Midi,
            Some("txt") => Format::Text,
            _ => default,
        },
    )
}

fn emit(output: &Output, bytes: &[u8]) -> Result<()> {
    match &output.out {
        Some(path) => export::write_output(path, bytes)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)?;
        }
    }
    Ok(())
}

fn unsupported(format: Format, verb: &str) -> anyhow::Error {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    usage(format!("{verb} cannot write {name}"))
}

fn reference_for(loaded: &Loaded, levi: &LeviGraph) -> Result<Option<ReferenceHamiltonian>> {
    if loaded.from_catalog && catalog::perimeter_labels(&loaded.name, &loaded.options).is_some() {
        return Ok(Some(catalog::pinned_reference(&loaded.name, &loaded.options, levi)?));
    }
    let g = levi.graph();
    Ok(match enumerate_hamiltonians(g)?.into_iter().next() {
        Some(c) => Some(ReferenceHamiltonian::new(g, c)?),
        None => None,
    })
}

fn trajectory_text(t: &Trajectory) -> String {
    let mut out = String::new();
    if t.path.is_empty() {
        out.push_str("path: none\n");
    } else {
        out.push_str(&format!("path: {}\n", t.path.join(" - ")));
    }
    out.push_str(&format!("continuous: {}\n", t.is_continuous));
    for (a, b) in t.breaks() {
        out.push_str(&format!("break: ({a}, {b})\n"));
    }
    for s in &t.steps {
        if !s.pivots.is_empty() {
            out.push_str(&format!("pivot {} -> {}: {}\n", s.from, s.to, s.pivots.join(", ")));
        }
    }
    out.push_str(&format!("minimal: {}\n", t.is_minimal));
    out.push_str(&format!("unique minimal: {}\n", t.is_unique_minimal));
    out
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Build { structure, output } => {
            let loaded = load(&structure)?;
            let text = match format_of(&output, Format::Json) {
                Format::Json => format!("{}\n", loaded.structure.to_json()),
                Format::Dot => export::export_levi_dot(&LeviGraph::from_incidence(&loaded.structure)),
                f => return Err(unsupported(f, "build")),
            };
            emit(&output, text.as_bytes())?;
        }
        Command::Verify {
            structure,
            scale,
            hexachord,
            output,
        } => {
            let o = options(scale.as_deref(), hexachord.as_deref())?;
            let reports = if structure == "all" {
                verify::verify_all(&o)?
            } else {
                vec![verify::verify(&structure, &o).map_err(|e| match e {
                    CatalogError::UnknownStructure(_) => usage(e.to_string()),
                    e => e.into(),
                })?]
            };
            let text = match format_of(&output, Format::Text) {
                Format::Text => verify::render_all(&reports),
                Format::Json => export::export_json(&reports)?,
                f => return Err(unsupported(f, "verify")),
            };
            emit(&output, text.as_bytes())?;
            return Ok(reports.iter().all(|r| r.passed()));
        }
        Command::Cycles { structure, output } => {
            let loaded = load(&structure)?;
            let levi = LeviGraph::from_incidence(&loaded.structure);
            let catalog = CycleCatalog::build(levi.graph())?;
            let text = match reference_for(&loaded, &levi)? {
                Some(reference) => {
                    let table = catalog.table(&reference);
                    match format_of(&output, Format::Csv) {
                        Format::Csv => export::export_csv(&table),
                        Format::Json => export::export_json(&table)?,
                        f => return Err(unsupported(f, "cycles")),
                    }
                }
                None => {
                    let mut out = String::from("length,total\n");
                    for (len, n) in catalog.length_histogram() {
                        out.push_str(&format!("{len},{n}\n"));
                    }
                    out
                }
            };
            emit(&output, text.as_bytes())?;
        }
        Command::Progress {
            structure,
            chords,
            minimal,
            output,
        } => {
            let loaded = load(&structure)?;
            let levi = LeviGraph::from_incidence(&loaded.structure);
            let p = Progression::new(chords).map_err(|e| usage(e.to_string()))?;
            let t = if minimal {
                minimal_trajectory(&levi, &p)?
            } else {
                chart_progression(&levi, &p)?
            };
            let text = match format_of(&output, Format::Text) {
                Format::Text => trajectory_text(&t),
                Format::Json => export::export_json(&t)?,
                f => return Err(unsupported(f, "progress")),
            };
            emit(&output, text.as_bytes())?;
        }
        Command::Compose {
            piece,
            scale,
            hexachord,
            pedal,
            output,
        } => {
            let sc = match piece {
                Piece::Perimeter => {
                    let s = match scale {
                        Some(s) => s.parse::<Scale>().map_err(|e| usage(format!("--scale: {e}")))?,
                        None => score::perimeter_scale(),
                    };
                    score::perimeter_composition(&s)?
                }
                Piece::Decacycle => {
                    let o = options(None, hexachord.as_deref())?;
                    score::decacycle_composition(&o.hexachord, pedal)?
                }
            };
            match format_of(&output, Format::Json) {
                Format::Json => emit(&output, export::export_json(&sc)?.as_bytes())?,
                Format::Midi => emit(&output, &export::export_midi(&sc)?)?,
                Format::Text => {
                    let mut text = String::new();
                    for e in &sc.events {
                        text.push_str(&format!("{} x{}\n", e.pitches, e.beats));
                    }
                    if let Some(p) = sc.pedal {
                        text.push_str(&format!("pedal {}\n", PitchClass::name(p)));
                    }
                    emit(&output, text.as_bytes())?;
                }
                f => return Err(unsupported(f, "compose")),
            }
        }
        Command::Export {
            structure,
            output,
            rows,
            cols,
            flavor,
        } => {
            let loaded = load(&structure)?;
            let text = match format_of(&output, Format::Dot) {
                Format::Dot => export::export_levi_dot(&LeviGraph::from_incidence(&loaded.structure)),
                Format::Json => format!("{}\n", loaded.structure.to_json()),
                Format::Svg => {
                    let flavor: Flavor = flavor.parse().map_err(usage)?;
                    tessellation_patch(&loaded.structure, rows, cols, flavor)?.to_svg()
                }
                Format::Csv => {
                    let levi = LeviGraph::from_incidence(&loaded.structure);
                    let reference = reference_for(&loaded, &levi)?.context("no Hamiltonian cycle")?;
                    export::export_csv(&CycleCatalog::build(levi.graph())?.table(&reference))
                }
                f => return Err(unsupported(f, "export")),
            };
            emit(&output, text.as_bytes())?;
        }
        Command::Tables { table } => {
            let ds = catalog::build_duads_synthemes(&catalog::default_hexachord())?;
            let t = &ds.tables;
            let text = match table {
                Table::I => t.render_table_i(),
                Table::Ii => t.render_table_ii(),
                Table::Iii => t.render_table_iii(),
                Table::Iv => t.render_table_iv(),
                Table::All => [
                    ("Table I", t.render_table_i()),
                    ("Table II", t.render_table_ii()),
                    ("Table III", t.render_table_iii()),
                    ("Table IV", t.render_table_iv()),
                ]
                .iter()
                .map(|(title, body)| format!("{title}\n{body}"))
                .collect::<Vec<_>>()
                .join("\n"),
            };
            print!("{text}");
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
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
