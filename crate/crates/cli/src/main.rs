use clap::Parser;
use hocat_cli::commands::{execute, Cli, Response, EXIT_INPUT};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            std::process::exit(EXIT_INPUT);
        }
        Err(e) => {
            print!("{e}");
            return;
        }
    };
    let r: Response = execute(&cli);
    if r.code == EXIT_INPUT {
        eprintln!("{}", r.render(cli.output));
    } else {
        println!("{}", r.render(cli.output));
    }
    std::process::exit(r.code);
}
