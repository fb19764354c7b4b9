//! Levi-Civita connection, the tensor F, and the W0 / W3 classes.

use norden::connection::{classify, f_symmetry_residuals, fundamental_tensor, levi_civita};
use norden::field::Rational;
use norden::format::parse;
use norden::structure::validate;

fn load(name: &str) -> norden::NordenStructure<Rational> {
    let path = format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    validate(&parse(&std::fs::read_to_string(path).unwrap()).unwrap()).unwrap()
}

fn main() {
    for name in ["abelian4.norden", "w3-4d-a.norden", "nonw3-4d-a.norden"] {
        let s = load(name);
        let nabla = levi_civita(&s);
        let f = fundamental_tensor(&s, &nabla);
        let (swap, jj) = f_symmetry_residuals(&s, &f);
        let flags = classify(&s, &nabla, &f);
        println!(
            "{name:<20} max|F| {:<4} S F residual {:<4} W0 {:<5} W3 {:<5} F symmetries {} {}",
            flags.w0_residual.value.to_string(),
            flags.w3_residual.value.to_string(),
            flags.is_w0,
            flags.is_w3,
            swap.value,
            jj.value
        );
    }
}
