//! Command line front end (stub, under construction).

/// Entry point used by the `whittaker` binary.
pub fn run() -> i32 {
    eprintln!("not yet implemented");
    2
}
