//! Randomized algebraic identities for the expression engine, Poisson
//! structures, group actions and the reduction pipeline.

use num_rational::BigRational;
use proptest::prelude::*;

use poisson_fixset::action::{
    average_metric, cotangent_lift, enumerate_group, fixed_subspace, orthogonal_complement, FiniteActionSpec,
    GroupAction,
};
use poisson_fixset::linalg::Matrix;
use poisson_fixset::poisson::{bracket, jacobi_defect, pushforward_linear, rank_at, Chart, PoissonStructure};
use poisson_fixset::reduction::{induced_bracket_via_extensions, SplitContext};
use poisson_fixset::symexpr::{divides, gcd, parse_expr, Monomial, Polynomial, RationalFunction, VarSet};

fn vars() -> VarSet {
    VarSet::new(["x", "y", "z"])
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

prop_compose! {
    fn poly(max_terms: usize, max_exp: u16)(terms in prop::collection::vec(
        ((0..=max_exp, 0..=max_exp, 0..=max_exp), -6i64..=6, 1i64..=4), 0..=max_terms)) -> Polynomial {
        let v = vars();
        terms.into_iter().fold(Polynomial::zero(&v), |acc, ((a, b, c), n, d)| {
            &acc + &Polynomial::monomial(&v, Monomial::from_exponents(&[a, b, c]), r(n, d))
        })
    }
}

prop_compose! {
    fn nonzero_poly()(p in poly(3, 2), c in 1i64..=5) -> Polynomial {
        if p.is_zero() { Polynomial::from_int(&vars(), c) } else { p }
    }
}

prop_compose! {
    fn ratfun()(n in poly(3, 2), d in nonzero_poly()) -> RationalFunction {
        RationalFunction::new(n, d).unwrap()
    }
}

// Denominators of low degree keep repeated gcd computations cheap.
prop_compose! {
    fn small_ratfun()(n in poly(3, 2), d in poly(2, 1), c in 1i64..=5) -> RationalFunction {
        let d = &d + &Polynomial::from_int(&vars(), c);
        let d = if d.is_zero() { Polynomial::from_int(&vars(), c) } else { d };
        RationalFunction::new(n, d).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_axioms(a in poly(4, 3), b in poly(4, 3), c in poly(4, 3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(4, 2), b in nonzero_poly()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.exact_div(&b), Some(a));
        prop_assert!(divides(&b, &prod).unwrap());
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let ac = &a * &c;
        let bc = &b * &c;
        let g = gcd(&ac, &bc);
        prop_assert!(g.divides(&ac) && g.divides(&bc));
        prop_assert!(c.monic().divides(&g));
    }

    #[test]
    fn rational_field_axioms(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).constant_value() == Some(r(1, 1)));
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_structural(a in ratfun(), b in ratfun()) {
        prop_assert_eq!(a.normalize(), a.clone());
        prop_assert_eq!(a.normalize().normalize(), a.normalize());
        prop_assert_eq!(a == b, a.equals_by_cross_multiplication(&b));
    }

    #[test]
    fn leibniz_rule(a in small_ratfun(), b in small_ratfun(), v in 0usize..3) {
        let lhs = (&a * &b).derivative(v);
        let rhs = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_reparses(a in ratfun()) {
        prop_assert_eq!(parse_expr(&a.to_string(), &vars()).unwrap(), a);
    }
}

fn chart3() -> Chart {
    Chart::coords(&["x", "y", "z"]).unwrap()
}

/// The so(3) Lie-Poisson structure rescaled by `k + x² + y² + z²`, a
/// Casimir, so the result is again Poisson.
fn so3_family(k: i64) -> PoissonStructure {
    let c = chart3();
    let casimir = format!("({k} + x^2 + y^2 + z^2)");
    PoissonStructure::from_table(
        &c,
        &[
            ("x", "y", &format!("{casimir}*z")),
            ("y", "z", &format!("{casimir}*x")),
            ("z", "x", &format!("{casimir}*y")),
        ],
    )
    .unwrap()
}

prop_compose! {
    fn invertible3()(entries in prop::collection::vec(-3i64..=3, 9)) -> Option<Matrix> {
        let m = Matrix::from_rows(entries.chunks(3).map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect());
        m.inverse().map(|_| m)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_is_antisymmetric(f in small_ratfun(), g in poly(3, 2), k in 1i64..4) {
        let p = so3_family(k);
        let g = RationalFunction::from_polynomial(g);
        let a = bracket(&p, &f, &g).unwrap();
        let b = bracket(&p, &g, &f).unwrap();
        prop_assert_eq!(a, -b);
    }

    #[test]
    fn jacobiator_vanishes_on_functions(f in poly(2, 2), g in poly(2, 2), h in poly(2, 2), k in 1i64..4) {
        let p = so3_family(k);
        let (f, g, h) = (RationalFunction::from_polynomial(f), RationalFunction::from_polynomial(g), RationalFunction::from_polynomial(h));
        let b = |a: &RationalFunction, c: &RationalFunction| bracket(&p, a, c).unwrap();
        let total = &(&b(&f, &b(&g, &h)) + &b(&g, &b(&h, &f))) + &b(&h, &b(&f, &g));
        prop_assert!(total.is_zero());
        prop_assert!(jacobi_defect(&p).iter().all(|d| d.value.is_zero()));
    }

    #[test]
    fn pushforward_is_functorial(s in invertible3(), t in invertible3(), k in 1i64..4) {
        prop_assume!(s.is_some() && t.is_some());
        let (s, t) = (s.unwrap(), t.unwrap());
        let p = so3_family(k);
        let composed = pushforward_linear(&p, &(&s * &t)).unwrap();
        let stepwise = pushforward_linear(&pushforward_linear(&p, &t).unwrap(), &s).unwrap();
        prop_assert_eq!(composed.rows(), stepwise.rows());
        prop_assert!(jacobi_defect(&composed).iter().all(|d| d.value.is_zero()));
    }

    #[test]
    fn rank_is_even(x in -5i64..5, y in -5i64..5, z in -5i64..5, k in 1i64..4) {
        let p = so3_family(k);
        let rank = rank_at(&p, &[r(x, 1), r(y, 1), r(z, 1)]).unwrap();
        prop_assert_eq!(rank % 2, 0);
        prop_assert_eq!(rank == 0, x == 0 && y == 0 && z == 0);
    }
}

fn permutation_group(chart: &Chart, perm: &[usize]) -> FiniteActionSpec {
    let n = perm.len();
    let mut g = Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        g[(j, i)] = r(1, 1);
    }
    FiniteActionSpec::new(chart, vec![g]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn averaged_metric_is_invariant(diag in prop::collection::vec(1i64..6, 4), off in -1i64..=1) {
        let c = Chart::coords(&["a", "b", "c", "d"]).unwrap();
        let spec = permutation_group(&c, &[1, 2, 0, 3]);
        let mut seed = Matrix::diagonal(&diag.iter().map(|&d| r(d * 4, 1)).collect::<Vec<_>>());
        seed[(0, 3)] = r(off, 1);
        seed[(3, 0)] = r(off, 1);
        let m = average_metric(&spec, &seed).unwrap();
        for g in enumerate_group(&spec).unwrap() {
            prop_assert_eq!(&(&g.transpose() * &m.matrix) * &g, m.matrix.clone());
        }
        prop_assert!(m.matrix.is_positive_definite());

        // fixed subspace is invariant; E⁰ is fixed by the cotangent lift
        let action: GroupAction = spec.clone().into();
        let n = fixed_subspace(&action).unwrap();
        let e = orthogonal_complement(&n, &m).unwrap();
        let e0 = poisson_fixset::action::annihilator(&e.basis, 4);
        for g in enumerate_group(&spec).unwrap() {
            prop_assert!(n.is_invariant_under(&g));
            let lift = cotangent_lift(&g);
            for xi in &e0 {
                prop_assert_eq!(&lift.mul_vec(xi), xi);
            }
        }
    }

    #[test]
    fn split_and_extension_brackets_agree(f in poly(3, 2), g in poly(3, 2), k in 1i64..4) {
        // swap of two copies of the scaled so(3) structure; N is the diagonal
        let c = Chart::coords(&["x1", "y1", "z1", "x2", "y2", "z2"]).unwrap();
        let cas1 = format!("({k} + x1^2 + y1^2 + z1^2)");
        let cas2 = format!("({k} + x2^2 + y2^2 + z2^2)");
        let p = PoissonStructure::from_table(&c, &[
            ("x1", "y1", &format!("{cas1}*z1")), ("y1", "z1", &format!("{cas1}*x1")), ("z1", "x1", &format!("{cas1}*y1")),
            ("x2", "y2", &format!("{cas2}*z2")), ("y2", "z2", &format!("{cas2}*x2")), ("z2", "x2", &format!("{cas2}*y2")),
        ]).unwrap();
        let spec = permutation_group(&c, &[3, 4, 5, 0, 1, 2]);
        let action: GroupAction = spec.into();
        let metric = poisson_fixset::action::invariant_metric(&action, None).unwrap();
        let n = fixed_subspace(&action).unwrap();
        let e = orthogonal_complement(&n, &metric).unwrap();
        let ctx = SplitContext::new(&p, n, e, metric).unwrap().with_action(action);
        let vars = ctx.n_chart().vars().clone();
        let embed = |q: &Polynomial| {
            let images: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(&vars, i)).collect();
            RationalFunction::from_polynomial(q.compose(&vars, &images))
        };
        let (f, g) = (embed(&f), embed(&g));
        let value = induced_bracket_via_extensions(&ctx, &f, &g).unwrap();
        let swapped = induced_bracket_via_extensions(&ctx, &g, &f).unwrap();
        prop_assert_eq!(value, -swapped);
        let induced = ctx.induced().unwrap();
        prop_assert!(jacobi_defect(induced).iter().all(|d| d.value.is_zero()));
    }
}
