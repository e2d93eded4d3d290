use autl_cli::app::{Cli, Io};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let (mut out, mut err) = (std::io::stdout(), std::io::stderr());
    let code = Cli::run_args(std::env::args_os(), &mut Io { out: &mut out, err: &mut err });
    std::process::exit(code);
}
