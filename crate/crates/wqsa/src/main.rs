use clap::Parser;

fn main() {
    let cli = wqsa::cli::Cli::parse();
    let code = wqsa::cli::dispatch(&cli, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
