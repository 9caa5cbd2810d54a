fn main() -> std::process::ExitCode {
    std::process::ExitCode::from(posmon_cli::run(std::env::args_os()))
}
