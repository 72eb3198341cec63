fn main() -> std::process::ExitCode {
    recmodal::cli::main()
}
