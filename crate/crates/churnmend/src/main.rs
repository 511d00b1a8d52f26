//! Thin binary wrapper; all behavior lives in the library's CLI module.

use std::process::ExitCode;

fn main() -> ExitCode {
    churnmend::cli::main()
}
