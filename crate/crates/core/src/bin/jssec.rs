use clap::Parser;

fn main() {
    let cli = jssec::cli::Cli::parse();
    let code = jssec::cli::execute(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
