use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use folia::cli::{parse_matrix, parse_verification, run, Command, Format, JobConfig, JobError};

#[derive(Debug, Parser)]
#[command(name = "folia", version, about = "Resolutions, brackets and Tor fibers of linear singular foliations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,

    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Build a classical family and run its identity suite.
    Family {
        /// gl, glw, sl or sp.
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        n: usize,
        /// ω as a JSON matrix of ω(e_i, e_j), e.g. [[0,1],[-1,0]]; Darboux by default.
        #[arg(long)]
        omega: Option<String>,
        /// Spanning vectors of W as a JSON array of rows; e₁ by default.
        #[arg(long)]
        w: Option<String>,
        #[arg(long, default_value_t = 4)]
        cutoff: u32,
        /// exhaustive | random:COUNT[:SEED]
        #[arg(long, default_value = "exhaustive")]
        verify: String,
        /// Seed for random:COUNT without an explicit seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Fibers of a minimal resolution of a polynomial foliation at the origin.
    Tor {
        /// JSON foliation file.
        foliation: PathBuf,
        #[arg(long, default_value_t = 6)]
        cutoff: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Equivariant left inverses of φ^ω for n = 4 and the top-degree obstruction.
    Appendix {
        /// Run only the top-degree spanning check.
        #[arg(long)]
        top_degree_check: bool,
        /// Dimension for the top-degree check.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
}

fn config_from(cli: Cli) -> Result<JobConfig, JobError> {
    let (mut config, out) = match cli.command {
        Cmd::Family { family, n, omega, w, cutoff, verify, seed, out } => {
            let mut c = JobConfig::new(Command::Family);
            c.family = Some(family);
            c.n = Some(n);
            c.omega = omega.map(|s| parse_matrix("omega", &s)).transpose()?;
            c.w = w.map(|s| parse_matrix("w", &s)).transpose()?;
            c.cutoff = cutoff;
            c.verify = parse_verification(&verify, seed)?;
            (c, out)
        }
        Cmd::Tor { foliation, cutoff, out } => {
            let mut c = JobConfig::new(Command::Tor);
            c.foliation = Some(foliation.display().to_string());
            c.cutoff = cutoff;
            (c, out)
        }
        Cmd::Appendix { top_degree_check, n, out } => {
            let mut c = JobConfig::new(Command::Appendix);
            c.top_degree_only = top_degree_check;
            c.n = Some(n);
            (c, out)
        }
    };
    config.format = match out.format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
    };
    config.output = out.output.map(|p| p.display().to_string());
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = std::env::var("FOLIA_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let config = match config_from(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("folia: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("folia: {e}");
            return ExitCode::from(2);
        }
    };
    let text = report.render();
    match &config.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("folia: cannot write {p}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
