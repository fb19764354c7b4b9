//! Parsing, validation with diagnostics, and canonical export.

use norden::field::Rational;
use norden::format::{export, parse};
use norden::structure::validate;

const TEXT: &str = "\
dim 4
# su(2) + R on the standard pair, written with a redundant entry
C 2 3 1 1
C 3 2 1 -1
C 3 1 2 1
C 1 2 3 2/2
g 1 1 1
g 2 2 1
g 3 3 -1
g 4 4 -1
J 3 1 1
J 4 2 1
J 1 3 -1
J 2 4 -1
";

fn main() {
    let raw = parse(TEXT).expect("well-formed");
    let s = validate::<Rational>(&raw).expect("valid");
    println!("signature {:?}", s.signature);
    print!("canonical form:\n{}", export(&raw));

    // the first violated invariant is named with 1-based indices
    let broken = TEXT.replace("J 2 4 -1", "J 2 4 1");
    let err = validate::<Rational>(&parse(&broken).unwrap()).unwrap_err();
    println!("modified J: {err}");

    let odd = validate::<Rational>(&parse("dim 3\n").unwrap()).unwrap_err();
    println!("dim 3: {odd}");
}
