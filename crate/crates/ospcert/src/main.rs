use clap::{Parser, Subcommand};
use ospcert::cli_io::{self, Report};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact verification of the gamma-deformation triviality dichotomy for the
/// orthosymplectic Lie superalgebras B(m,n) = osp(2m+1|2n).
#[derive(Parser)]
#[command(name = "ospcert", version, about)]
struct Cli {
    /// Data directory for generated files (env OSPCERT_DATA_DIR, default ./data)
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    /// Write the machine-readable report to this path
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sector-parallel work (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Refuse assembling systems above this estimated row count
    #[arg(long, global = true, default_value_t = 1_000_000)]
    row_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate algebra and gamma structure files for B(m,n)
    Generate {
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Verify the 6n-2 dimension formula and its 8-category census
    DimCheck {
        #[arg(long)]
        n: u32,
    },
    /// Per-sector (dim, rank, corank); full-matrix triple for n = 1
    Rank {
        #[arg(long)]
        n: u32,
        /// Restrict to one sector, e.g. +d1 or -d3
        #[arg(long)]
        sector: Option<String>,
    },
    /// Build and verify all 2n certificates for each n in the range
    VerifyCerts {
        /// Range of n values, e.g. 2..5 (inclusive)
        #[arg(long, default_value = "2..5")]
        n_range: String,
    },
    /// B(0,1) complete triviality: rank pair and explicit solutions
    VerifyB01,
    /// Strong rank condition rank([A|L]) = rank(A) + rank(L) for B(m,n), m >= 1
    VerifyBmn {
        #[arg(long, default_value_t = 2)]
        max_m: u32,
        #[arg(long, default_value_t = 2)]
        max_n: u32,
    },
}

fn parse_range(s: &str) -> Option<(u32, u32)> {
    if let Some((a, b)) = s.split_once("..") {
        let from = a.parse().ok()?;
        let to = b.trim_start_matches('=').parse().ok()?;
        Some((from, to))
    } else {
        let v = s.parse().ok()?;
        Some((v, v))
    }
}

fn finish(report: Report, out: Option<&PathBuf>) -> ExitCode {
    report.print_human();
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, report.to_canonical_json()) {
            eprintln!("error: cannot write report to {}: {}", path.display(), e);
            return ExitCode::from(2);
        }
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let result = match &cli.command {
        Command::Generate { m, n } => {
            let dir = cli_io::resolve_data_dir(cli.data_dir.as_deref());
            cli_io::cmd_generate(*m, *n, &dir, cli.row_cap)
        }
        Command::DimCheck { n } => cli_io::cmd_dim_check(*n),
        Command::Rank { n, sector } => cli_io::cmd_rank(*n, sector.as_deref()),
        Command::VerifyCerts { n_range } => match parse_range(n_range) {
            Some((from, to)) => cli_io::cmd_verify_certs(from, to),
            None => {
                eprintln!("error: cannot parse --n-range {}", n_range);
                return ExitCode::from(2);
            }
        },
        Command::VerifyB01 => cli_io::cmd_verify_b01(),
        Command::VerifyBmn { max_m, max_n } => cli_io::cmd_verify_bmn(*max_m, *max_n, cli.row_cap),
    };
    match result {
        Ok(report) => finish(report, cli.out.as_ref()),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
