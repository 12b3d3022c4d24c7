mod input;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use input::{parse_indices, DupPolicy, Format, Loader};
use sparsegraph_core::graph::{self, BfsOptions};
use sparsegraph_core::io;
use sparsegraph_core::kernels;
use sparsegraph_core::overhead::{self, BenchConfig, BenchOp, BenchReport, MAX_SCALE};
use sparsegraph_core::{semiring_by_name, BinaryOp, Error, IndexVector, Scalar, Semiring, SparseMatrix};

#[derive(Parser, Debug)]
#[command(name = "sparsegraph", version, about = "Semiring sparse matrices and graph queries")]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Semiring name, e.g. arith-real, min-plus, xor-and, union-intersect.
    #[arg(long, global = true, default_value = "arith-real")]
    semiring: String,

    /// Universe size for union-intersect.
    #[arg(long, global = true)]
    universe: Option<u32>,

    /// Input format; inferred from the file extension when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Vertex and index numbering starts at 1 (TSV files, index lists, tables).
    #[arg(long, global = true)]
    one_based: bool,

    /// Seed for the bench graph generator.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Output file. `.tsv` writes triples, anything else Matrix Market.
    /// Matrices go to stdout when omitted.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an adjacency matrix from an edge list or triples.
    Build {
        input: PathBuf,
        /// Operator folding repeated edges, or `strict` to reject them.
        /// Defaults to the semiring's addition.
        #[arg(long)]
        dup: Option<String>,
        /// Vertex count; defaults to the largest id + 1.
        #[arg(long)]
        vertices: Option<usize>,
    },
    /// Print stored entries as `row col value` lines.
    Tuples { input: PathBuf },
    /// Swap rows and columns.
    Transpose { input: PathBuf },
    /// Semiring product `A ⊕.⊗ B`.
    Mxm { a: PathBuf, b: PathBuf },
    /// Hop levels from one or more sources.
    Bfs {
        input: PathBuf,
        /// Comma-separated source vertices.
        #[arg(long, required = true)]
        source: String,
        #[arg(long)]
        max_hops: Option<usize>,
        /// Also print a BFS parent per vertex.
        #[arg(long)]
        parents: bool,
    },
    /// Min-plus shortest-path distances; unweighted edges count 1.
    Sssp {
        input: PathBuf,
        #[arg(long)]
        source: usize,
    },
    /// Sub-graph on the given rows and columns.
    Subgraph {
        input: PathBuf,
        #[arg(long)]
        rows: String,
        /// Defaults to `--rows`.
        #[arg(long)]
        cols: Option<String>,
    },
    /// Write `A` into `C` at `rows x cols`.
    Assign {
        c: PathBuf,
        a: PathBuf,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
    },
    /// Element-wise `⊕` of two graphs.
    Union { a: PathBuf, b: PathBuf },
    /// Element-wise `⊗` of two graphs.
    Intersect { a: PathBuf, b: PathBuf },
    /// Adjacency `E_outᵀ E_in` from an incidence pair.
    Adjacency { e_out: PathBuf, e_in: PathBuf },
    /// Time the checked API against the bare kernels on R-MAT graphs.
    Bench {
        /// Comma-separated operations, or `all`.
        #[arg(long, default_value = "all")]
        ops: String,
        /// Scale range such as `10-14`, or a single scale.
        #[arg(long, default_value = "10-14")]
        scales: String,
        #[arg(long, default_value_t = 32)]
        edge_factor: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Minimum wall time per timed batch, in milliseconds.
        #[arg(long, default_value_t = 2)]
        min_batch_ms: u64,
    },
}

struct Ctx {
    semiring: Semiring,
    global: Global,
}

impl Ctx {
    fn loader(&self, vertices: Option<usize>) -> Loader<'_> {
        Loader {
            semiring: &self.semiring,
            format: self.global.format,
            one_based: self.global.one_based,
            vertices,
        }
    }

    fn matrix(&self, path: &Path) -> Result<SparseMatrix> {
        self.loader(None).matrix(path)
    }

    fn indices(&self, text: &str) -> Result<IndexVector> {
        Ok(parse_indices(text, self.global.one_based)?.into())
    }

    fn vertex_label(&self, v: usize) -> usize {
        v + usize::from(self.global.one_based)
    }

    fn check_sources(&self, sources: &[usize], n: usize) -> Result<()> {
        if let Some(&s) = sources.iter().find(|&&s| s >= n) {
            bail!("source vertex {} is out of range for {n} vertices", self.vertex_label(s));
        }
        Ok(())
    }

    /// Writes a matrix to `--output` or stdout. Returns whether it went to a file.
    fn emit(&self, m: &SparseMatrix) -> Result<bool> {
        match &self.global.output {
            Some(path) => {
                match Format::from_path(path) {
                    Format::Tsv => io::write_tsv_file(path, m, self.global.one_based)?,
                    Format::Mm => io::write_matrix_market_file(path, m)?,
                }
                Ok(true)
            }
            None => {
                std::io::stdout().write_all(io::to_matrix_market_string(m).as_bytes())?;
                Ok(false)
            }
        }
    }

    /// Writes the matrix and a one-line summary that never mixes with it.
    fn emit_with_summary(&self, m: &SparseMatrix, extra: &str) -> Result<()> {
        let line = format!("{} x {}, {} entries{extra}", m.nrows(), m.ncols(), m.nnz());
        if self.emit(m)? {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
        Ok(())
    }
}

fn parse_dup(name: Option<&str>, sr: &Semiring) -> Result<DupPolicy> {
    Ok(match name {
        None => DupPolicy::Combine(sr.add_op().clone()),
        Some("strict") => DupPolicy::Strict,
        Some(op) => DupPolicy::Combine(BinaryOp::by_name(op)?),
    })
}

fn parse_scales(text: &str) -> Result<Vec<u32>> {
    let (lo, hi) = match text.split_once('-') {
        Some((lo, hi)) => (lo.trim().parse::<u32>()?, hi.trim().parse::<u32>()?),
        None => {
            let s = text.trim().parse::<u32>()?;
            (s, s)
        }
    };
    if lo > hi {
        bail!("empty scale range `{text}`");
    }
    if hi > MAX_SCALE {
        bail!("scale {hi} exceeds the limit of {MAX_SCALE}");
    }
    Ok((lo..=hi).collect())
}

fn parse_ops(text: &str) -> Result<Vec<BenchOp>> {
    if text == "all" {
        return Ok(BenchOp::ALL.to_vec());
    }
    text.split(',')
        .map(|s| s.trim().parse::<BenchOp>().map_err(Into::into))
        .collect()
}

fn run(cli: Cli) -> Result<()> {
    let semiring = semiring_by_name(&cli.global.semiring, cli.global.universe)?;
    let ctx = Ctx {
        semiring,
        global: cli.global,
    };
    let sr = &ctx.semiring;

    match cli.command {
        Command::Build { input, dup, vertices } => {
            let dup = parse_dup(dup.as_deref(), sr)?;
            let built = ctx.loader(vertices).build(&input, &dup, None)?;
            let extra = match built.folded {
                0 => String::new(),
                1 => " (1 duplicate folded)".into(),
                k => format!(" ({k} duplicates folded)"),
            };
            ctx.emit_with_summary(&built.matrix, &extra)?;
        }
        Command::Tuples { input } => {
            let m = ctx.matrix(&input)?;
            let mut out = std::io::stdout().lock();
            for (i, j, v) in m.iter() {
                writeln!(out, "{}\t{}\t{}", ctx.vertex_label(i), ctx.vertex_label(j), v)?;
            }
        }
        Command::Transpose { input } => {
            let m = ctx.matrix(&input)?;
            ctx.emit(&kernels::transpose(&m))?;
        }
        Command::Mxm { a, b } => {
            let c = kernels::mxm(sr, &ctx.matrix(&a)?, &ctx.matrix(&b)?)?;
            ctx.emit_with_summary(&c, "")?;
        }
        Command::Bfs {
            input,
            source,
            max_hops,
            parents,
        } => {
            let m = ctx.matrix(&input)?;
            let sources = ctx.indices(&source)?;
            ctx.check_sources(&sources, m.nrows())?;
            let opts = BfsOptions {
                max_hops,
                parents,
                ..BfsOptions::default()
            };
            let res = graph::bfs(&m, &sources, &opts)?;
            let mut out = std::io::stdout().lock();
            writeln!(out, "vertex\tlevel{}", if parents { "\tparent" } else { "" })?;
            for (v, level) in res.levels.iter().enumerate() {
                let level = level.map_or("-".to_string(), |l| l.to_string());
                write!(out, "{}\t{level}", ctx.vertex_label(v))?;
                if let Some(p) = &res.parents {
                    let parent = p[v].map_or("-".to_string(), |p| ctx.vertex_label(p).to_string());
                    write!(out, "\t{parent}")?;
                }
                writeln!(out)?;
            }
        }
        Command::Sssp { input, source } => {
            let mp = Semiring::min_plus();
            let loader = Loader {
                semiring: &mp,
                ..ctx.loader(None)
            };
            let m = match loader.format.unwrap_or_else(|| Format::from_path(&input)) {
                Format::Tsv => loader
                    .build(&input, &DupPolicy::Combine(mp.add_op().clone()), Some(Scalar::Real(1.0)))?
                    .matrix,
                Format::Mm => loader.matrix(&input)?,
            };
            let source = if ctx.global.one_based {
                source.checked_sub(1).context("vertex 0 in 1-based numbering")?
            } else {
                source
            };
            ctx.check_sources(&[source], m.nrows())?;
            let dist = graph::sssp_minplus(&m, source)?;
            let mut out = std::io::stdout().lock();
            writeln!(out, "vertex\tdistance")?;
            for (v, d) in dist.iter().enumerate() {
                let d = if d.is_finite() { d.to_string() } else { "-".into() };
                writeln!(out, "{}\t{d}", ctx.vertex_label(v))?;
            }
        }
        Command::Subgraph { input, rows, cols } => {
            let m = ctx.matrix(&input)?;
            let rows = ctx.indices(&rows)?;
            let cols = match cols {
                Some(c) => ctx.indices(&c)?,
                None => rows.clone(),
            };
            ctx.emit_with_summary(&kernels::extract(&m, &rows, &cols)?, "")?;
        }
        Command::Assign { c, a, rows, cols } => {
            let out = kernels::assign(&ctx.matrix(&c)?, &ctx.indices(&rows)?, &ctx.indices(&cols)?, &ctx.matrix(&a)?)?;
            ctx.emit_with_summary(&out, "")?;
        }
        Command::Union { a, b } => {
            let out = graph::graph_union(sr, &ctx.matrix(&a)?, &ctx.matrix(&b)?)?;
            ctx.emit_with_summary(&out, "")?;
        }
        Command::Intersect { a, b } => {
            let out = graph::graph_intersection(sr, &ctx.matrix(&a)?, &ctx.matrix(&b)?)?;
            ctx.emit_with_summary(&out, "")?;
        }
        Command::Adjacency { e_out, e_in } => {
            let out = graph::adjacency_from_incidence(sr, &ctx.matrix(&e_out)?, &ctx.matrix(&e_in)?)?;
            ctx.emit_with_summary(&out, "")?;
        }
        Command::Bench {
            ops,
            scales,
            edge_factor,
            trials,
            min_batch_ms,
        } => {
            let cfg = BenchConfig {
                ops: parse_ops(&ops)?,
                scales: parse_scales(&scales)?,
                edge_factor,
                semiring: sr.clone(),
                trials,
                seed: ctx.global.seed,
                min_trial_time: Duration::from_millis(min_batch_ms),
            };
            println!(
                "{:<11} {:>5} {:>9} {:>14} {:>14} {:>10}",
                "op", "scale", "edges", "api (us)", "direct (us)", "overhead"
            );
            let reports = overhead::run_bench(&cfg, |r| {
                println!(
                    "{:<11} {:>5} {:>9} {:>14.1} {:>14.1} {:>9.2}%",
                    r.op.name(),
                    r.scale,
                    r.edges,
                    r.mean_api_us,
                    r.mean_direct_us,
                    r.overhead_pct()
                );
            })?;
            println!();
            println!("{}", BenchReport::CSV_HEADER);
            for r in &reports {
                println!("{}", r.csv_line());
            }
        }
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Invariant(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
