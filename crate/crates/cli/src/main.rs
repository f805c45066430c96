use std::io::{stderr, stdout};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let code = plumblink_cli::run(&argv, &mut stdout(), &mut stderr());
    std::process::exit(code);
}
