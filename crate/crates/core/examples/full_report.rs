//! The whole identity catalogue for one file, as text and machine output.
//!
//! `cargo run --example full_report -- path/to/file.norden`

use norden::field::Mode;
use norden::verify::{load_raw, verify_raw};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| format!("{}/corpus/w3-4d-c.norden", env!("CARGO_MANIFEST_DIR")));
    let raw = load_raw(std::path::Path::new(&path)).expect("readable file");
    let report = verify_raw(&raw, Mode::Rational, None).expect("valid structure");
    print!("{}", report.to_text());
    println!();
    let float = verify_raw(&raw, Mode::Float, None).expect("valid structure");
    print!("{}", float.to_machine());
}
