use std::io::Write;

fn main() {
    let outcome = lts_cli::run_args(std::env::args_os());
    print!("{}", outcome.report);
    let _ = std::io::stdout().flush();
    if !outcome.summary.is_empty() {
        eprintln!("{}", outcome.summary.trim_end());
    }
    std::process::exit(outcome.code);
}
