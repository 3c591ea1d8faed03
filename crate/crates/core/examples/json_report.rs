//! Builds a job programmatically and prints the JSON report the command line tool emits.

use folia::cli::{run, Command, Format, JobConfig};
use folia::report::Verification;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut config = JobConfig::new(Command::Family);
    config.family = Some("sl".into());
    config.n = Some(3);
    config.verify = Verification::Random { seed: 42, count: 25 };
    config.format = Format::Json;
    let report = run(&config)?;
    print!("{}", report.render());
    std::process::exit(report.exit_code());
}
