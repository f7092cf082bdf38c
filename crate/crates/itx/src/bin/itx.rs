use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = itx::cli::run_cli(&args, &mut out, &mut err);
    out.flush().ok();
    err.flush().ok();
    std::process::exit(code);
}
