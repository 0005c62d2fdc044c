use std::process::ExitCode;

fn main() -> ExitCode {
    lcm_lattice::cli::main_with_args(std::env::args_os())
}
