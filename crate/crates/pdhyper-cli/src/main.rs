use clap::Parser;

fn main() {
    let cli = pdhyper_cli::Cli::parse();
    match pdhyper_cli::run(&cli) {
        Ok(output) => print!("{output}"),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
