//! Derives the bracket on the simplex from the quadratic bracket upstairs
//! and prints it in factored form.
//!
//! cargo run --example simplex_bracket -- [n] [seed]

use std::time::Instant;

use poisson_fixset::sampling;
use poisson_fixset::simplex::{derive_simplex_bracket, simplex_bracket, SkewParamMatrix};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(2, |s| s.parse().expect("n"));
    let seed: u64 = args.next().map_or(7, |s| s.parse().expect("seed"));

    let symbolic = SkewParamMatrix::symbolic(1).unwrap();
    let d = derive_simplex_bracket(&symbolic).unwrap();
    for (i, j, e) in d.formatted() {
        println!("symbolic n=1: {{mu{i},mu{j}}} = {e}");
    }

    let mut rng = sampling::seeded(seed);
    let a = SkewParamMatrix::random(n, &mut rng).unwrap();
    println!("A = {}", a.matrix().unwrap());
    let t = Instant::now();
    let d = derive_simplex_bracket(&a).unwrap();
    println!("certified {} pairs in {:?}", d.pairs_certified, t.elapsed());
    for (i, j, e) in d.formatted() {
        println!("  {{mu{i},mu{j}}} = {e}");
    }
    if let Some(c) = &d.conjugate_factor {
        println!("conjugate-symmetric convention scales every bracket by {c}");
    }
    let t = Instant::now();
    simplex_bracket(&a).expect("Jacobi identity");
    println!("Jacobi identity verified in {:?}", t.elapsed());
}
