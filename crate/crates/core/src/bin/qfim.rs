fn main() -> std::process::ExitCode {
    qfim::cli::run()
}
