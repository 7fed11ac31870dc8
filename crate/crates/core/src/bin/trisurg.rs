fn main() {
    let (code, report) = trisurg::cli::run(std::env::args_os());
    print!("{}", report.render());
    std::process::exit(code);
}
