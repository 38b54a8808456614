use std::io::Write;

fn main() {
    let (code, out) = cli::run(std::env::args_os());
    // a closed pipe downstream is not an error worth reporting
    let _ = if code == 1 {
        writeln!(std::io::stderr(), "{out}")
    } else {
        writeln!(std::io::stdout(), "{out}")
    };
    std::process::exit(code);
}
