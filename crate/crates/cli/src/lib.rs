//! `sfc3` command-line front end.
//!
//! Exit codes are shared by every subcommand: 0 success, 1 I/O or parse
//! failure, 2 invalid arguments, 3 verification failed.

pub mod bench;
pub mod pathfile;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sfc3::analysis::{compare_orderings, format_histogram, verify_path};
use sfc3::{CurvePath, Dims3, OrderingSpec};

use crate::bench::Kernel;
use crate::pathfile::Format;

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sfc3",
    version,
    about = "Generate, verify and measure 3D space-filling-curve orderings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write an ordering to a file (or standard output).
    Gen {
        #[command(flatten)]
        order: OrderArgs,
        /// Volume extents as PxNxM (slabs x rows x columns).
        #[arg(long, value_parser = parse_dims)]
        dims: Dims3,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a path file is a permutation of the volume.
    Verify {
        /// Path file; format is detected from its contents unless --format is given.
        input: PathBuf,
        /// Extents to verify against; defaults to the file header (required for CSV).
        #[arg(long, value_parser = parse_dims)]
        dims: Option<Dims3>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print locality metrics for one or more orderings as CSV.
    Metrics {
        /// Ordering to measure; repeat to compare several.
        #[arg(long = "order", required = true)]
        orders: Vec<String>,
        #[command(flatten)]
        hybrid: HybridArgs,
        #[arg(long, value_parser = parse_dims)]
        dims: Dims3,
    },
    /// Time a traversal kernel over an array laid out row-major.
    Bench {
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long, value_parser = parse_dims)]
        dims: Dims3,
        #[arg(long, value_enum, default_value = "reduce")]
        kernel: Kernel,
        #[arg(long, default_value_t = 1)]
        repeat: u32,
    },
}

#[derive(Debug, Args)]
struct OrderArgs {
    /// rowmajor, morton, hilbert or hybrid.
    #[arg(long)]
    order: String,
    #[command(flatten)]
    hybrid: HybridArgs,
}

#[derive(Debug, Args)]
struct HybridArgs {
    /// Block extents for hybrid orderings, as pxnxm.
    #[arg(long, value_parser = parse_dims)]
    block: Option<Dims3>,
    /// Ordering of the block grid for hybrid orderings.
    #[arg(long)]
    inter: Option<String>,
    /// Ordering within each block for hybrid orderings.
    #[arg(long)]
    intra: Option<String>,
    /// Let Hilbert orderings accept odd extents (steps may then be diagonal).
    #[arg(long)]
    allow_odd: bool,
}

impl HybridArgs {
    fn spec(&self, kind: &str) -> Result<OrderingSpec, Failure> {
        OrderingSpec::from_parts(
            kind,
            self.block,
            self.inter.as_deref(),
            self.intra.as_deref(),
            self.allow_odd,
        )
        .map_err(Failure::invalid)
    }
}

fn parse_dims(s: &str) -> Result<Dims3, String> {
    s.parse().map_err(|e: sfc3::Error| e.to_string())
}

/// A command failure: exit code plus message for standard error.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(e: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }

    fn io(e: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

/// Runs the CLI with `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_INVALID
                }
            };
        }
    };
    let result = match cli.command {
        Command::Gen {
            order,
            dims,
            format,
            out,
        } => cmd_gen(&order, dims, format, out, stdout),
        Command::Verify {
            input,
            dims,
            format,
        } => cmd_verify(&input, dims, format, stdout),
        Command::Metrics {
            orders,
            hybrid,
            dims,
        } => cmd_metrics(&orders, &hybrid, dims, stdout),
        Command::Bench {
            order,
            dims,
            kernel,
            repeat,
        } => cmd_bench(&order, dims, kernel, repeat, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn generate(order: &OrderArgs, dims: Dims3) -> Result<(OrderingSpec, CurvePath), Failure> {
    let spec = order.hybrid.spec(&order.order)?;
    let path = spec.generate(dims).map_err(Failure::invalid)?;
    Ok((spec, path))
}

fn cmd_gen(
    order: &OrderArgs,
    dims: Dims3,
    format: Format,
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<u8, Failure> {
    let (spec, path) = generate(order, dims)?;
    let name = spec.to_string();
    match out {
        Some(file) => {
            let mut f = fs::File::create(&file)
                .map_err(|e| Failure::io(format!("{}: {e}", file.display())))?;
            pathfile::write_path(&mut f, &path, &name, format)
                .map_err(|e| Failure::io(format!("{}: {e}", file.display())))?;
        }
        None => pathfile::write_path(stdout, &path, &name, format).map_err(Failure::io)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    input: &PathBuf,
    dims: Option<Dims3>,
    format: Option<Format>,
    stdout: &mut dyn Write,
) -> Result<u8, Failure> {
    let bytes = fs::read(input).map_err(|e| Failure::io(format!("{}: {e}", input.display())))?;
    let file = pathfile::read_path(&bytes, format)
        .map_err(|e| Failure::io(format!("{}: {e}", input.display())))?;
    let dims = dims.or(file.dims).ok_or_else(|| {
        Failure::invalid("--dims is required for files without a dims header (CSV)")
    })?;
    let report = verify_path(&CurvePath::new(dims, file.cells));
    writeln!(stdout, "dims={dims} {report}").map_err(Failure::io)?;
    Ok(if report.is_permutation() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

fn cmd_metrics(
    orders: &[String],
    hybrid: &HybridArgs,
    dims: Dims3,
    stdout: &mut dyn Write,
) -> Result<u8, Failure> {
    let specs = orders
        .iter()
        .map(|o| hybrid.spec(o))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = compare_orderings(dims, &specs).map_err(Failure::invalid)?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(stdout);
    let header = [
        "order",
        "mean_gap",
        "mean_gap_decimal",
        "max_gap",
        "edges",
        "histogram",
    ];
    w.write_record(header).map_err(Failure::io)?;
    for row in rows {
        let r = &row.report;
        w.write_record([
            row.spec.to_string(),
            r.mean_adjacent_rank_gap().to_string(),
            r.mean_decimal(),
            r.max_adjacent_rank_gap.to_string(),
            r.edges_counted.to_string(),
            format_histogram(&r.step_histogram),
        ])
        .map_err(Failure::io)?;
    }
    w.flush().map_err(Failure::io)?;
    Ok(EXIT_OK)
}

fn cmd_bench(
    order: &OrderArgs,
    dims: Dims3,
    kernel: Kernel,
    repeat: u32,
    stdout: &mut dyn Write,
) -> Result<u8, Failure> {
    if repeat == 0 {
        return Err(Failure::invalid("--repeat must be at least 1"));
    }
    let (spec, path) = generate(order, dims)?;
    let report = bench::run_bench(&path, kernel, repeat)
        .map_err(|e| Failure::invalid(format!("cannot allocate a {dims} array: {e}")))?;
    let cells = dims.total();
    let rate = |t: std::time::Duration| cells as f64 / t.as_secs_f64().max(1e-12);
    let kernel_name = match kernel {
        Kernel::Reduce => "reduce",
        Kernel::Stencil => "stencil",
    };
    let mut lines = vec![format!(
        "order={spec} dims={dims} kernel={kernel_name} cells={cells} repeats={repeat} seed={}",
        bench::SEED
    )];
    for (i, t) in report.timings.iter().enumerate() {
        lines.push(format!(
            "repeat {}: {:.9} s {:.0} cells/s",
            i + 1,
            t.as_secs_f64(),
            rate(*t)
        ));
    }
    if let Some(t) = report.min_time() {
        lines.push(format!(
            "min: {:.9} s {:.0} cells/s",
            t.as_secs_f64(),
            rate(t)
        ));
    }
    lines.push(format!("visits per repeat: {}", report.visits_per_repeat));
    lines.push(format!(
        "checksum: {:.17e} bits=0x{:016x}",
        report.checksum,
        report.checksum.to_bits()
    ));
    for line in lines {
        writeln!(stdout, "{line}").map_err(Failure::io)?;
    }
    Ok(EXIT_OK)
}
