//! The full reduction pipeline on three fixed point sets: a symplectic
//! factor, an axis in so(3)*, and a diagonal that is not a coordinate axis.

use poisson_fixset::action::{FiniteActionSpec, GroupAction};
use poisson_fixset::linalg::Matrix;
use poisson_fixset::poisson::{Chart, PoissonStructure};
use poisson_fixset::reduction::{reduce_fixed_set, ReductionOptions};

fn run(name: &str, p: &PoissonStructure, g: Matrix) {
    let action: GroupAction = FiniteActionSpec::new(p.chart(), vec![g]).unwrap().into();
    let opts = ReductionOptions {
        seed: 3,
        ..Default::default()
    };
    let rep = reduce_fixed_set(p, &action, &opts).unwrap();
    println!("{name}: {}", if rep.passed() { "PASS" } else { "FAIL" });
    println!(
        "  fixed set of dimension {} in coordinates {:?}",
        rep.fixed.dimension(),
        rep.n_chart.coordinate_names()
    );
    println!(
        "  Dirac condition at {} points, max intersection {}",
        rep.eq1.dimensions.len(),
        rep.eq1.max_dimension()
    );
    if let Some(ind) = &rep.induced {
        let names = ind.chart().coordinate_names();
        for (i, j, e) in ind.upper_entries() {
            println!("  {{{},{}}} = {e}", names[i], names[j]);
        }
    }
}

fn main() {
    let r4 = Chart::new(&["q1", "p1", "q2", "p2"], &[] as &[&str]).unwrap();
    let p = PoissonStructure::from_table(&r4, &[("q1", "p1", "1"), ("q2", "p2", "1")]).unwrap();
    run(
        "R^4 with (q2,p2) -> -(q2,p2)",
        &p,
        Matrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]),
    );

    let c = Chart::new(&["x", "y", "z"], &[] as &[&str]).unwrap();
    let so3 = PoissonStructure::from_table(&c, &[("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")]).unwrap();
    run(
        "so(3)* with rotation by pi",
        &so3,
        Matrix::from_i64_rows(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]),
    );

    let c = Chart::new(&["x1", "y1", "x2", "y2"], &[] as &[&str]).unwrap();
    let two = PoissonStructure::from_table(&c, &[("x1", "y1", "1"), ("x2", "y2", "1")]).unwrap();
    run(
        "two planes swapped",
        &two,
        Matrix::from_i64_rows(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]),
    );
}
