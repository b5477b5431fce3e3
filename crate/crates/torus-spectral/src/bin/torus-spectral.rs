fn main() {
    std::process::exit(torus_spectral::cli::entry());
}
