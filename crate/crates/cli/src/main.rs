use clap::Parser;

fn main() {
    let opts = lds_cli::opts::Opts::parse();
    if let Err(e) = lds_cli::run(opts) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
