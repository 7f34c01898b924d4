use clap::Parser;

use oddcycle::cli::{emit, run, Cli, Exit};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Exit::Usage as i32 } else { Exit::Success as i32 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Some(threads) = std::env::var("ODDCYCLE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // ignore failure: the pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let outcome = run(&cli);
    std::process::exit(emit(&cli, &outcome));
}
