fn main() {
    let outcome = bicomplex_cli::run(std::env::args_os());
    if !outcome.report.is_empty() {
        if outcome.code == 0 {
            println!("{}", outcome.report.trim_end());
        } else {
            eprintln!("{}", outcome.report.trim_end());
        }
    }
    std::process::exit(outcome.code);
}
