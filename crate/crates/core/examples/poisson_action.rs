//! Checking that finite and torus actions preserve a bracket, and building
//! invariant metrics and fixed subspaces.

use poisson_fixset::action::{fixed_subspace, invariant_metric, is_poisson_action, FiniteActionSpec, GroupAction};
use poisson_fixset::linalg::Matrix;
use poisson_fixset::poisson::{Chart, PoissonStructure};
use poisson_fixset::simplex::{cpn_bracket, cpn_chart, cpn_torus, SkewParamMatrix};

fn main() {
    let c = Chart::new(&["q", "p"], &[] as &[&str]).unwrap();
    let plane = PoissonStructure::from_table(&c, &[("q", "p", "1")]).unwrap();
    for (name, g) in [
        ("rotation by pi/2", Matrix::from_i64_rows(&[&[0, -1], &[1, 0]])),
        ("(q,p) -> (q,-p)", Matrix::from_i64_rows(&[&[1, 0], &[0, -1]])),
    ] {
        let action: GroupAction = FiniteActionSpec::new(&c, vec![g]).unwrap().into();
        let cert = is_poisson_action(&plane, &action).unwrap();
        println!("{name}: {} elements checked, Poisson: {}", cert.checked, cert.passed());
        for f in &cert.failures {
            println!("  witness: {f:?}");
        }
    }

    let a = SkewParamMatrix::numeric(Matrix::from_i64_rows(&[&[0, 1, -2], &[-1, 0, 3], &[2, -3, 0]])).unwrap();
    let p = cpn_bracket(&a).unwrap();
    let action: GroupAction = cpn_torus(&cpn_chart(&a), 2).into();
    let cert = is_poisson_action(&p, &action).unwrap();
    println!("torus on C^3: Poisson: {}", cert.passed());
    let metric = invariant_metric(&action, None).unwrap();
    println!("invariant Hermitian metric: {}", metric.matrix);
    let n = fixed_subspace(&action).unwrap();
    println!("fixed subspace has dimension {}", n.dimension());
}
