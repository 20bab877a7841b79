//! Exact rational functions: parsing, canonical form, derivatives and
//! substitution.

use poisson_fixset::symexpr::{parse_expr, VarSet};

fn main() {
    let vars = VarSet::new(["x", "y", "t"]);
    let f = parse_expr("(x^2 - y^2)/(x - y) + t/2", &vars).unwrap();
    println!("f          = {f}");
    println!("df/dx      = {}", f.derivative(0));

    let g = parse_expr("1/(x + y) - 1/(x - y)", &vars).unwrap();
    println!("g          = {g}");
    println!("g * (x^2 - y^2) = {}", &g * &parse_expr("x^2 - y^2", &vars).unwrap());

    // equality is structural because the form is canonical
    let h = parse_expr("(2*x*t + 2*y*t)/(4*x + 4*y)", &vars).unwrap();
    println!("h          = {h}, h == t/2: {}", h == parse_expr("t/2", &vars).unwrap());

    match parse_expr("x / (y - y)", &vars) {
        Ok(v) => println!("unexpected value {v}"),
        Err(e) => println!("x / (y - y): {e}"),
    }
    match parse_expr("x + w", &vars) {
        Ok(v) => println!("unexpected value {v}"),
        Err(e) => println!("x + w: {e}"),
    }
}
