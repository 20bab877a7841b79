//! Independent oracles: values computed by hand-rolled formulas that share
//! no code path with the library's symbolic pipeline.

use num_rational::BigRational;
use num_traits::{One, Zero};

use poisson_fixset::cli::cmd_jacobi;
use poisson_fixset::linalg::Matrix;
use poisson_fixset::poisson::jacobi_defect;
use poisson_fixset::problem::ProblemFile;
use poisson_fixset::sampling;
use poisson_fixset::simplex::{enumerate_faces, simplex_chart, simplex_entry, SkewParamMatrix};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `{μ_i, μ_j}` at the point `u` (all `u_l > 0`), from `{u_i, u_j} = a_ij u_i u_j`
/// and the quotient rule for `μ_i = u_i / r`, `r = Σ u_l`.
fn quotient_rule(a: &Matrix, u: &[Q], i: usize, j: usize) -> Q {
    let r: Q = u.iter().sum();
    let ub = |k: usize, l: usize| &a[(k, l)] * &u[k] * &u[l];
    let ur = |k: usize| (0..u.len()).map(|l| ub(k, l)).sum::<Q>();
    // {u_i/r, u_j/r} = {u_i,u_j}/r² − u_j{u_i,r}/r³ − u_i{r,u_j}/r³
    let r2 = &r * &r;
    let r3 = &r2 * &r;
    ub(i, j) / &r2 - &u[j] * ur(i) / &r3 + &u[i] * ur(j) / &r3
}

fn random_skew(n: usize, seed: u64) -> Matrix {
    let mut rng = sampling::seeded(seed);
    let mut a = Matrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in i + 1..=n {
            let v = sampling::rational(&mut rng, 9, 5);
            a[(j, i)] = -v.clone();
            a[(i, j)] = v;
        }
    }
    a
}

#[test]
fn simplex_formula_matches_quotient_rule_at_rational_points() {
    for n in 1..=3 {
        for seed in 0..4 {
            let a = random_skew(n, 100 + seed);
            let param = SkewParamMatrix::numeric(a.clone()).unwrap();
            let chart = simplex_chart(&param);
            let mut rng = sampling::seeded(seed);
            for _ in 0..6 {
                let u: Vec<Q> = (0..=n)
                    .map(|_| {
                        let v = sampling::nonzero_rational(&mut rng, 7, 4);
                        if v < Q::zero() {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect();
                let r: Q = u.iter().sum();
                let mu: Vec<Q> = u.iter().map(|x| x / &r).collect();
                for i in 0..=n {
                    for j in i + 1..=n {
                        let formula = simplex_entry(&param, &chart, i, j).eval(&mu);
                        assert_eq!(formula, quotient_rule(&a, &u, i, j), "n={n} seed={seed} ({i},{j})");
                    }
                }
            }
        }
    }
}

#[test]
fn one_simplex_closed_form_at_points() {
    let a = Matrix::from_i64_rows(&[&[0, 3], &[-3, 0]]);
    let param = SkewParamMatrix::numeric(a).unwrap();
    let chart = simplex_chart(&param);
    for (m0, m1) in [(1, 2), (-3, 5), (7, 0), (2, 2)] {
        let (m0, m1) = (q(m0), q(m1));
        let hand = q(3) * &m0 * &m1 * (Q::one() - &m0 - &m1);
        assert_eq!(simplex_entry(&param, &chart, 0, 1).eval(&[m0, m1]), hand);
    }
}

#[test]
fn jacobi_violation_matches_hand_computation() {
    let text = include_str!("../fixtures/jacobi_violation.txt");
    let p = ProblemFile::parse(text).unwrap().structure().unwrap();
    let defects = jacobi_defect(&p);
    assert_eq!(defects.len(), 1);
    // π^{yz}∂_z π^{zx} + π^{zy}∂_y π^{xy} = −x − 2xy
    let expected = p.chart().parse("-x - 2*x*y").unwrap();
    assert_eq!(defects[0].value, expected);
    let report = cmd_jacobi(text).unwrap();
    assert!(!report.passed());
    assert_eq!(report.value("defect.{x,y,z}"), Some(expected.to_string().as_str()));
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn face_counts_are_binomial() {
    for n in 1..=4 {
        let faces = enumerate_faces(n);
        for d in 0..=n {
            let count = faces.iter().filter(|f| f.dimension == d).count();
            assert_eq!(count, binomial(n + 1, n - d), "n={n} d={d}");
        }
        assert_eq!(faces.len(), (1 << (n + 1)) - 1);
    }
}
