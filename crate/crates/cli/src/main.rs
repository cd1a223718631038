use clap::Parser;

use stabletensor_cli::{cache::CACHE_ENV, run, Cli};

fn main() {
    let cli = Cli::parse();
    let env = std::env::var(CACHE_ENV).ok();
    let code = run(
        cli,
        env.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
