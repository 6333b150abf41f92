use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use portrait_core::{
    assemble_tree, build_regions, certify, enumerate_portraits, enumerate_rotation_sets,
    parse_portrait, print_portrait, recover_portrait, render_svg, validate_portrait, Degree,
    Portrait,
};

/// Validate fixed point portraits, build their Hubbard trees, and recover
/// the portrait from the tree.
#[derive(Parser)]
#[command(name = "portrait", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the admissibility conditions; exit 0 iff all hold.
    Validate { file: PathBuf },
    /// Construct the tree, run every check and the round trip.
    Build {
        file: PathBuf,
        /// Write an SVG drawing of the tree.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the plain-text report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the portrait recovered from the constructed tree.
    Roundtrip { file: PathBuf },
    /// List rotation sets, or every admissible portrait built from them.
    Enumerate {
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        max_period: u32,
        /// Upper bound on set cardinality (rotation sets only).
        #[arg(long)]
        max_cardinality: Option<usize>,
        #[arg(long)]
        portraits: bool,
    },
}

const PASS: u8 = 0;
const CHECK_FAILED: u8 = 1;
const USAGE: u8 = 2;

struct Failure(u8, String);

fn load(path: &Path) -> Result<Portrait, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))?;
    parse_portrait(&text).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) -> Result<(), Failure> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure(USAGE, e.to_string())),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Validate { file } => {
            let p = load(&file)?;
            match validate_portrait(&p) {
                Ok(_) => {
                    emit("ok\n")?;
                    Ok(PASS)
                }
                Err(v) => {
                    let mut out = String::new();
                    for violation in &v.violations {
                        out.push_str(&format!("{violation}\n"));
                    }
                    for note in &v.skipped {
                        out.push_str(&format!("note: {note}\n"));
                    }
                    emit(&out)?;
                    Ok(CHECK_FAILED)
                }
            }
        }
        Command::Build { file, svg, report, json } => {
            let p = load(&file)?;
            let r = certify(&p);
            emit(&r.to_text())?;
            if let Some(path) = report {
                write(&path, &r.to_text())?;
            }
            if let Some(path) = json {
                write(&path, &(r.to_json() + "\n"))?;
            }
            if let Some(path) = svg {
                let drawing = validate_portrait(&p).ok().and_then(|v| {
                    let regions = build_regions(&v).ok()?;
                    let ct = assemble_tree(&v).ok()?;
                    Some(render_svg(&v, &regions, &ct))
                });
                match drawing {
                    Some(doc) => write(&path, &doc)?,
                    None => eprintln!("no tree to draw"),
                }
            }
            Ok(if r.passed() { PASS } else { CHECK_FAILED })
        }
        Command::Roundtrip { file } => {
            let p = load(&file)?;
            let valid = validate_portrait(&p).map_err(|v| {
                let codes: Vec<String> = v.violations.iter().map(ToString::to_string).collect();
                Failure(CHECK_FAILED, format!("invalid portrait: {}", codes.join("; ")))
            })?;
            let recovered = assemble_tree(&valid)
                .and_then(|ct| recover_portrait(&ct))
                .map_err(|e| Failure(CHECK_FAILED, e.to_string()))?;
            emit(&print_portrait(&recovered))?;
            Ok(if recovered == p { PASS } else { CHECK_FAILED })
        }
        Command::Enumerate { degree, max_period, max_cardinality, portraits } => {
            let d = Degree::new(degree).map_err(|e| Failure(USAGE, e.to_string()))?;
            if portraits {
                let all = enumerate_portraits(d, max_period).map_err(|e| Failure(USAGE, e.to_string()))?;
                let blocks: Vec<String> = all.iter().map(print_portrait).collect();
                emit(&blocks.join("\n"))?;
            } else {
                let sets = enumerate_rotation_sets(d, max_cardinality.unwrap_or(usize::MAX), max_period)
                    .map_err(|e| Failure(USAGE, e.to_string()))?;
                let mut out = String::new();
                for s in sets {
                    let angles: Vec<String> = s.angles().iter().map(ToString::to_string).collect();
                    out.push_str(&format!(
                        "set {}  # shift {} of {}, deployment {}\n",
                        angles.join(" "),
                        s.shift(),
                        s.cardinality(),
                        s.deployment()
                    ));
                }
                emit(&out)?;
            }
            Ok(PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
