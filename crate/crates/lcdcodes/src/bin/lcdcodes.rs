fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(lcdcodes::cli::run(&argv));
}
