fn main() -> std::process::ExitCode {
    mvmeasure::cli::main()
}
