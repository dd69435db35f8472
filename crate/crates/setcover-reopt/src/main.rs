fn main() -> std::process::ExitCode {
    setcover_reopt::cli::run()
}
