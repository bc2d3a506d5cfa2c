fn main() {
    std::process::exit(tree_cycles::cli::main());
}
