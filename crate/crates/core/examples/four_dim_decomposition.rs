//! The basis pi1, pi2, pi3 and the decomposition of Kähler tensors in
//! dimension 4.

use norden::field::rat;
use norden::fourdim::{build_pi, decompose_kahler};
use norden::scalars::ricci_and_scalar;
use norden::search::canonical_pair;
use norden::structure::validate_parts;
use norden::tensor::FrameTensor;

fn main() {
    let pair = canonical_pair(4);
    let s = validate_parts(FrameTensor::zeros(4, 1, 2), pair.g, pair.j).unwrap();
    let pi = build_pi(&s);

    let a = ricci_and_scalar(&pi.pi1_minus_pi2(), &s.metric, &s.j);
    let b = ricci_and_scalar(&pi.pi3, &s.metric, &s.j);
    println!("tau(pi1 - pi2) = {}, tau*(pi1 - pi2) = {}", a.tau, a.tau_star);
    println!("tau(pi3) = {}, tau*(pi3) = {}", b.tau, b.tau_star);

    let l = pi.combine(&rat(3, 7), &rat(-5, 2));
    let d = decompose_kahler(&l, &s, &pi).unwrap();
    println!("3/7 (pi1 - pi2) - 5/2 pi3 decomposes to nu = {}, nu* = {}, residual {}", d.nu, d.nu_star, d.residual.value);

    match decompose_kahler(&pi.pi1, &s, &pi) {
        Ok(_) => println!("pi1 decomposed"),
        Err(e) => println!("pi1 alone: {e}"),
    }
}
