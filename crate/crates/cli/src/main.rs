fn main() {
    std::process::exit(hardy_spectra_cli::run(std::env::args_os()));
}
