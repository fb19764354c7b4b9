//! Curvature of D computed directly and by the closed formula, and the
//! Kähler criteria for K, P and H.

use norden::curvature::{bianchi_residual, curvature_like_check, kahler_check, k_kahler_criterion, p_kahler_criterion};
use norden::field::Rational;
use norden::format::parse;
use norden::report::Residual;
use norden::structure::validate;
use norden::verify::Analysis;

fn main() {
    for name in ["w3-4d-a.norden", "w3-l2-6d.norden"] {
        let path = format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"));
        let s = validate::<Rational>(&parse(&std::fs::read_to_string(path).unwrap()).unwrap()).unwrap();
        let a = Analysis::compute(s);
        let b = &a.bundle;
        let j = &a.structure.j;
        println!("== {name}");
        println!("  K direct vs formula: {}", Residual::between(&b.k_direct, &b.k_formula).value);
        println!("  K J-invariant: {}", kahler_check(&b.k_direct, j).vanishes());
        println!("  Bianchi(K): {}", bianchi_residual(&b.k_direct).value);
        let k_crit = k_kahler_criterion(&b.r, &b.p, j, &b.k_direct);
        println!("  Bianchi(K) = 0 iff 2 S R(x,y,Jz,Jw) = S P: holds {}", k_crit.holds());
        println!("  in L2: {}", a.is_l2);
        if a.is_l2 {
            println!("  Bianchi(K) = 0 iff Bianchi(P) = 0: holds {}", p_kahler_criterion(&b.p, &b.k_direct).holds());
            println!("  H curvature-like: {}", curvature_like_check(&b.h).holds());
        }
    }
}
