//! Frame tensors: contraction with the metric, cyclic sums, index moves.

use norden::field::{rat, Rational};
use norden::search::canonical_pair;
use norden::tensor::{Direction, FrameTensor, MetricPair};

fn main() {
    let pair = canonical_pair(4);
    let metric = MetricPair::new(pair.g.clone()).expect("nondegenerate");

    // g^{ij} g_{ij} is the dimension
    println!("trace of g: {}", pair.g.contract(0, 1, &metric).unwrap().value());

    // a (0,3) tensor with a single entry, and its cyclic sum
    let mut t = FrameTensor::<Rational>::zeros(4, 0, 3);
    t.set(&[0, 1, 2], rat(1, 1));
    let s = t.cyclic_sum([0, 1, 2]).unwrap();
    println!("cyclic sum at (1,2,3), (2,3,1), (3,1,2): {} {} {}", s[[0, 1, 2]], s[[1, 2, 0]], s[[2, 0, 1]]);

    // lowering the upper index of J gives g(J., .)
    let low = pair.j.raise_lower(0, Direction::Down, &metric).unwrap();
    println!("g(J e1, e3) = {}", low[[0, 2]]);
}
