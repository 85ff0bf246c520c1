use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use cyclestat::cache::Cache;
use cyclestat::output::write_record;
use cyclestat::{commands, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cyclestat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        // only fails if a global pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let config = cli.run_config();
    let cache = cli.cache_dir.as_ref().map(Cache::open).transpose()?;
    let record = commands::run(&config, cache.as_ref())?;
    match &cli.output {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            write_record(&record, cli.format, &mut out)?;
            out.flush()?;
        }
        None => write_record(&record, cli.format, io::stdout().lock())?,
    }
    Ok(())
}
