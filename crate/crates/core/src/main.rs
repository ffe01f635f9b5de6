fn main() -> std::process::ExitCode {
    dunwoody_core::cli::main_entry()
}
