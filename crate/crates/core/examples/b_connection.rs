//! The B-connection: naturality, the tensor Q, and its torsion.

use norden::connection::{
    b_connection, fundamental_tensor, levi_civita, q_antisymmetry_residual, q_tensor, q_tensor_from_connection,
    torsion, torsion_cyclic_residual, torsion_f_residual,
};
use norden::field::Rational;
use norden::format::parse;
use norden::report::Residual;
use norden::structure::validate;

fn main() {
    let path = format!("{}/corpus/w3-4d-b.norden", env!("CARGO_MANIFEST_DIR"));
    let s = validate::<Rational>(&parse(&std::fs::read_to_string(path).unwrap()).unwrap()).unwrap();
    let nabla = levi_civita(&s);
    let d = b_connection(&s, &nabla).expect("Dg = DJ = 0");
    println!("D differs from the Levi-Civita connection: {}", d.gamma != nabla.gamma);

    let f = fundamental_tensor(&s, &nabla);
    let q = q_tensor(&s, &f);
    println!("Q antisymmetric in its last pair: {}", q_antisymmetry_residual(&q).vanishes());
    println!("Q by both routes agrees: {}", Residual::between(&q, &q_tensor_from_connection(&s, &nabla)).vanishes());

    let t = torsion(&s, &d);
    println!("T(x,y,Jz) = (F(x,y,z) - F(y,x,z))/2 residual: {}", torsion_f_residual(&s, &t, &f).value);
    println!("cyclic sum of T(x,y,Jz) residual: {}", torsion_cyclic_residual(&t, &s.j).value);
}
