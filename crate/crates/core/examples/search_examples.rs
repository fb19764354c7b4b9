//! Seeded search for quasi-Kähler examples with F != 0.

use norden::search::{canonical_pair, hunt, solve_w3_linear, HuntConfig, Target};

fn main() {
    let basis = solve_w3_linear(&canonical_pair(4));
    println!("W3 solution space on the standard pair has dimension {}", basis.len());

    let out = std::env::temp_dir().join("norden-search-example");
    let mut cfg = HuntConfig::new(Target::W3Nontrivial, 4, 7);
    cfg.budget = 500;
    cfg.max_hits = 3;
    let summary = hunt(&cfg, &out).expect("writable temp dir");
    print!("{}", summary.render());
    println!("files written to {}", out.display());
}
