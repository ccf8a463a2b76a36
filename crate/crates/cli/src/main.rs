use std::process::ExitCode;

fn main() -> ExitCode {
    let code = qinv_cli::run(
        std::env::args_os(),
        std::env::var(qinv_cli::DIM_CAP_VAR).ok(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    ExitCode::from(code as u8)
}
