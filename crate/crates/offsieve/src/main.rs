use std::process::exit;

fn main() {
    exit(offsieve::cli::run(std::env::args_os()));
}
