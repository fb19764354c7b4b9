//! Scalar curvatures and the trace relations on quasi-Kähler examples.

use norden::field::Rational;
use norden::format::parse;
use norden::scalars::{isotropic_kahler_check, trace_relations};
use norden::structure::validate;
use norden::verify::Analysis;

fn main() {
    for name in ["w3-4d-a.norden", "w3-isotropic-4d.norden"] {
        let path = format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"));
        let s = validate::<Rational>(&parse(&std::fs::read_to_string(path).unwrap()).unwrap()).unwrap();
        let a = Analysis::compute(s);
        let sc = &a.scalars;
        println!("== {name}");
        println!("  tau {}  tau** {}  tau(K) {}  tau(P) {}  |nabla J|^2 {}", sc.tau, sc.tau_star_star, sc.tau_k, sc.tau_p, sc.norm_nabla_j);
        for rel in trace_relations(sc, &a.structure.j) {
            println!("  {:<24} residual {}", rel.id, rel.residual.value);
        }
        let iso = isotropic_kahler_check(sc);
        println!("  isotropic-Kähler: {} (tau = tau(K): {})", iso.isotropic, iso.criterion.right.vanishes());
    }
}
