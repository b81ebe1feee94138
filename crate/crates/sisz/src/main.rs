fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = sisz::run_with_io(std::env::args(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
