use std::io::Write;

fn main() {
    let out = leibniz_cli::run(std::env::args_os());
    // Ignore write errors such as a closed pipe.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
