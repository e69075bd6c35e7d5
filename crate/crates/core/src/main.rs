fn main() -> std::process::ExitCode {
    lonlab::cli::main()
}
