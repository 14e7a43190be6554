use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use cnat::cnat::{cnat_count, enumerate_cnats, Cnat, DotGrid, LabelledCnat};
use cnat::harness::{self, TheoremId, DEFAULT_N_MAX};
use cnat::perm::Permutation;
use cnat::render;

/// Complete non-ambiguous trees over permutations: counting, listing,
/// bijections, tables, and theorem verification.
///
/// Worker count for the exhaustive scans comes from the CNAT_THREADS
/// environment variable, defaulting to the available parallelism.
#[derive(Parser)]
#[command(name = "cnat", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Number of trees associated with a permutation (0 when reducible).
    Count {
        /// Permutation, e.g. "561243" or "5 6 1 2 4 3".
        perm: String,
    },
    /// List every tree associated with a permutation.
    List {
        perm: String,
        #[arg(long, value_enum, default_value_t = ListFormat::Ascii)]
        format: ListFormat,
    },
    /// Word of a labelled upper-diagonal tree (JSON on stdin or --in FILE).
    Psi {
        /// JSON file with {"labels":[...],"cnat":{...}}; "-" reads stdin.
        /// Labels default to 1..size-1 when omitted.
        #[arg(long = "in", default_value = "-")]
        input: PathBuf,
    },
    /// Labelled upper-diagonal tree of a word, as JSON.
    Phi {
        /// The word, e.g. "9 14 10 5 7 13 2 16 4".
        #[arg(long)]
        word: String,
        /// Optional comma-separated label set; must equal the sorted word.
        #[arg(long)]
        labels: Option<String>,
    },
    /// Exhaustive b(n,k) table over S_2..S_n.
    Table {
        #[arg(long = "n-max", default_value_t = 7)]
        n_max: u32,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Allow n-max beyond 8. The scan is factorial; expect a long wait.
        #[arg(long)]
        big: bool,
    },
    /// Run one verification suite; exits 1 on failure.
    Verify {
        /// One of: b1-formula, b2-formula, b3-formula, b5-zero,
        /// max-factorial, equinumerosity, psi-bijection, sink-invariance,
        /// quadrant-b1, quadrant-b2, quadrant-b3, b6-conjecture.
        #[arg(long)]
        id: String,
        /// Largest permutation length to check (per-claim default otherwise).
        #[arg(long = "n-max")]
        n_max: Option<u32>,
    },
    /// Draw a tree from a file (JSON grid or "m n" / "c r" text lines).
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Json,
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Count { perm } => {
            let p: Permutation = perm.parse().map_err(|e| format!("{e}"))?;
            println!("{}", cnat_count(&p));
        }
        Cmd::List { perm, format } => {
            let p: Permutation = perm.parse().map_err(|e| format!("{e}"))?;
            let trees = enumerate_cnats(&p);
            match format {
                ListFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string(&trees).map_err(|e| e.to_string())?
                    );
                }
                ListFormat::Ascii => {
                    for (i, t) in trees.iter().enumerate() {
                        if i > 0 {
                            println!();
                        }
                        print!("{}", render::ascii(t));
                    }
                }
                ListFormat::Svg => print!("{}", render::svg_row(&trees)),
            }
        }
        Cmd::Psi { input } => {
            let text = read_input(&input)?;
            let parsed: PsiInput =
                serde_json::from_str(&text).map_err(|e| format!("bad input JSON: {e}"))?;
            let tree = Cnat::validate(parsed.cnat).map_err(|e| e.to_string())?;
            let labelled = match parsed.labels {
                Some(labels) => LabelledCnat::new(tree, labels),
                None => LabelledCnat::with_default_labels(tree),
            }
            .map_err(|e| e.to_string())?;
            let word: Vec<String> = labelled.psi().iter().map(u32::to_string).collect();
            println!("{}", word.join(" "));
        }
        Cmd::Phi { word, labels } => {
            let word: Vec<u32> = word
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| format!("bad letter `{t}`")))
                .collect::<Result<_, _>>()?;
            let tree = cnat::bijections::phi(&word).map_err(|e| e.to_string())?;
            if let Some(labels) = labels {
                let labels: Vec<u32> = labels
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse().map_err(|_| format!("bad label `{t}`")))
                    .collect::<Result<_, _>>()?;
                if labels != tree.labels() {
                    return Err(format!(
                        "label set {labels:?} does not match the word's letters {:?}",
                        tree.labels()
                    ));
                }
            }
            println!(
                "{}",
                serde_json::to_string(&tree).map_err(|e| e.to_string())?
            );
        }
        Cmd::Table {
            n_max,
            out,
            format,
            big,
        } => {
            if n_max > DEFAULT_N_MAX && !big {
                return Err(format!(
                    "n-max {n_max} exceeds {DEFAULT_N_MAX}; pass --big to run anyway"
                ));
            }
            if n_max > DEFAULT_N_MAX {
                eprintln!(
                    "warning: scanning S_{n_max} exhaustively; this can take a very long time"
                );
            }
            let table = harness::bnk_table_with_limit(n_max, n_max.max(DEFAULT_N_MAX), None)
                .map_err(|e| e.to_string())?;
            let text = match format {
                TableFormat::Csv => table.to_csv(),
                TableFormat::Json => table.to_json(),
            };
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            let odd = table.odd_entries();
            if !odd.is_empty() {
                eprintln!("note: odd entries (n, k, count): {odd:?}");
            }
        }
        Cmd::Verify { id, n_max } => {
            let id: TheoremId = id.parse().map_err(|e| format!("{e}"))?;
            let n_max = n_max.unwrap_or_else(|| id.default_n_max());
            let report = harness::verify(id, n_max, None);
            print!("{report}");
            if !report.passed && !report.informational {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Render { input, format } => {
            let text = read_input(&input)?;
            let grid = if text.trim_start().starts_with('{') {
                serde_json::from_str::<DotGrid>(&text).map_err(|e| format!("bad JSON: {e}"))?
            } else {
                DotGrid::from_text(&text).map_err(|e| e.to_string())?
            };
            let tree = Cnat::validate(grid).map_err(|e| e.to_string())?;
            match format {
                RenderFormat::Ascii => print!("{}", render::ascii(&tree)),
                RenderFormat::Svg => print!("{}", render::svg(&tree)),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Deserialize)]
struct PsiInput {
    labels: Option<Vec<u32>>,
    cnat: DotGrid,
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
    }
}
