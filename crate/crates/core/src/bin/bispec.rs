use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = bispec::cli::run_from_args(std::env::args_os(), std::env::var_os(bispec::cli::CONFIG_ENV));
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code.clamp(0, 255) as u8)
}
