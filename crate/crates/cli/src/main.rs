use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(rabi_spectra::run(std::env::args_os()))
}
