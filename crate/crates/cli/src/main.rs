use clap::Parser;

fn main() {
    let cli = c2j_cli::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let status = match c2j_cli::run(cli, &mut stdout) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("c2j: {e}");
            e.status
        }
    };
    std::process::exit(status as i32);
}
