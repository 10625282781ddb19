fn main() {
    std::process::exit(ohomresolve::run(std::env::args_os()));
}
