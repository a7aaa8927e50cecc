fn main() -> std::process::ExitCode {
    proxcatch::cli::main()
}
