//! Jacobi identity checks on a Lie-Poisson structure, a constant
//! structure with a parameter, and a table that is not Poisson.

use poisson_fixset::poisson::{jacobi_defect, rank_at, Chart, PoissonStructure};
use poisson_fixset::symexpr::int;

fn show(name: &str, p: &PoissonStructure) {
    let defects: Vec<_> = jacobi_defect(p).into_iter().filter(|d| !d.value.is_zero()).collect();
    if defects.is_empty() {
        println!("{name}: Poisson");
    }
    let names = p.chart().coordinate_names();
    for d in defects {
        let (i, j, k) = d.triple;
        println!(
            "{name}: defect on ({},{},{}) = {}",
            names[i], names[j], names[k], d.value
        );
    }
}

fn main() {
    let c = Chart::new(&["x", "y", "z"], &[] as &[&str]).unwrap();
    let so3 = PoissonStructure::from_table(&c, &[("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")]).unwrap();
    show("so(3)", &so3);
    println!(
        "so(3) rank at (1,2,3): {}",
        rank_at(&so3, &[int(1), int(2), int(3)]).unwrap()
    );
    println!(
        "so(3) rank at origin: {}",
        rank_at(&so3, &[int(0), int(0), int(0)]).unwrap()
    );

    let cp = Chart::new(&["x", "y", "z"], &["c"]).unwrap();
    let constant = PoissonStructure::from_table(&cp, &[("x", "y", "1"), ("x", "z", "c"), ("y", "z", "1/2")]).unwrap();
    show("constant", &constant);

    let bad = PoissonStructure::from_table(&c, &[("x", "y", "y^2"), ("x", "z", "z"), ("y", "z", "x")]).unwrap();
    show("quadratic table", &bad);
}
