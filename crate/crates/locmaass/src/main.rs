use clap::Parser;

fn main() {
    locmaass::cli::init_thread_pool();
    let cli = locmaass::cli::Cli::parse();
    std::process::exit(locmaass::cli::run(&cli));
}
