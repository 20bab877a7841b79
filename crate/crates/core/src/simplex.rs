//! Quadratic bracket on `ℂⁿ⁺¹`, its torus-invariant moment functions
//! `μ_i = z_i z̄_i / Σ_l z_l z̄_l`, and the induced bracket on the simplex
//! with its face stratification.
//!
//! Charts: `(z0..zn, zbar0..zbarn)` upstairs, `(mu0..mun)` on the simplex,
//! followed by parameters `a01, a02, ...` when `A` is symbolic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::action::TorusActionSpec;
use crate::linalg::Matrix;
use crate::poisson::{bracket, Chart, PoissonError, PoissonStructure};
use crate::sampling::{self, SeededRng};
use crate::symexpr::{divides, gcd, Monomial, Polynomial, RationalFunction, SymError, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("A must be square of size n+1 with n >= 1")]
    BadShape,
    #[error("A is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error("derived bracket {{mu{i}, mu{j}}} differs from the closed form by {residual}")]
    DerivationMismatch {
        i: usize,
        j: usize,
        residual: RationalFunction,
    },
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Entries {
    Numeric(Matrix),
    Symbolic,
}

/// Skew matrix `A = (a_ij)`, `0 ≤ i, j ≤ n`, numeric or with formal entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewParamMatrix {
    n: usize,
    entries: Entries,
}

impl SkewParamMatrix {
    pub fn numeric(a: Matrix) -> Result<Self, SimplexError> {
        if !a.is_square() || a.rows() < 2 {
            return Err(SimplexError::BadShape);
        }
        for i in 0..a.rows() {
            for j in i..a.rows() {
                if a[(i, j)] != -a[(j, i)].clone() {
                    return Err(SimplexError::NotSkew(i, j));
                }
            }
        }
        Ok(SkewParamMatrix {
            n: a.rows() - 1,
            entries: Entries::Numeric(a),
        })
    }

    /// Formal parameters `a_ij` for `i < j`.
    pub fn symbolic(n: usize) -> Result<Self, SimplexError> {
        if n == 0 {
            return Err(SimplexError::BadShape);
        }
        Ok(SkewParamMatrix {
            n,
            entries: Entries::Symbolic,
        })
    }

    /// Entries `p/q` with `p ∈ [−9, 9]`, `q ∈ [1, 5]` above the diagonal.
    pub fn random(n: usize, rng: &mut SeededRng) -> Result<Self, SimplexError> {
        let mut a = Matrix::zeros(n + 1, n + 1);
        for i in 0..=n {
            for j in i + 1..=n {
                let x = sampling::rational(rng, 9, 5);
                a[(j, i)] = -x.clone();
                a[(i, j)] = x;
            }
        }
        Self::numeric(a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.entries, Entries::Symbolic)
    }

    pub fn matrix(&self) -> Option<&Matrix> {
        match &self.entries {
            Entries::Numeric(m) => Some(m),
            Entries::Symbolic => None,
        }
    }

    pub fn param_name(&self, i: usize, j: usize) -> String {
        if self.n < 10 {
            format!("a{i}{j}")
        } else {
            format!("a{i}_{j}")
        }
    }

    /// Parameter names in chart order; empty when numeric.
    pub fn param_names(&self) -> Vec<String> {
        match self.entries {
            Entries::Numeric(_) => Vec::new(),
            Entries::Symbolic => (0..=self.n)
                .flat_map(|i| (i + 1..=self.n).map(move |j| (i, j)))
                .map(|(i, j)| self.param_name(i, j))
                .collect(),
        }
    }

    /// `a_ij` as a polynomial over `vars`, which must contain the parameters.
    pub fn entry(&self, vars: &VarSet, i: usize, j: usize) -> Polynomial {
        match &self.entries {
            Entries::Numeric(m) => Polynomial::constant(vars, m[(i, j)].clone()),
            Entries::Symbolic => match i.cmp(&j) {
                std::cmp::Ordering::Equal => Polynomial::zero(vars),
                std::cmp::Ordering::Less => param(vars, &self.param_name(i, j)),
                std::cmp::Ordering::Greater => -param(vars, &self.param_name(j, i)),
            },
        }
    }
}

fn param(vars: &VarSet, name: &str) -> Polynomial {
    Polynomial::var(vars, vars.index_of(name).expect("parameter declared in chart"))
}

/// `(z0..zn, zbar0..zbarn)` plus the parameters of `A`.
pub fn cpn_chart(a: &SkewParamMatrix) -> Chart {
    let n = a.n;
    let coords: Vec<String> = (0..=n)
        .map(|i| format!("z{i}"))
        .chain((0..=n).map(|i| format!("zbar{i}")))
        .collect();
    Chart::new(&coords, &a.param_names()).expect("generated names are distinct")
}

/// `(mu0..mun)` plus the parameters of `A`.
pub fn simplex_chart(a: &SkewParamMatrix) -> Chart {
    let coords: Vec<String> = (0..=a.n).map(|i| format!("mu{i}")).collect();
    Chart::new(&coords, &a.param_names()).expect("generated names are distinct")
}

fn quadratic_bracket(a: &SkewParamMatrix, conjugate_symmetric: bool) -> Result<PoissonStructure, SimplexError> {
    let chart = cpn_chart(a);
    let vars = chart.vars().clone();
    let n = a.n;
    let mut entries = Vec::new();
    let mut add = |i: usize, j: usize, ai: usize, aj: usize| {
        let e = &(&a.entry(&vars, ai, aj) * &Polynomial::var(&vars, i)) * &Polynomial::var(&vars, j);
        if !e.is_zero() {
            entries.push((i, j, RationalFunction::from_polynomial(e)));
        }
    };
    for i in 0..=n {
        for j in i + 1..=n {
            add(i, j, i, j);
            if conjugate_symmetric {
                add(n + 1 + i, n + 1 + j, i, j);
            }
        }
    }
    Ok(PoissonStructure::from_entries(&chart, entries)?.verify()?)
}

/// `{z_i, z_j} = a_ij z_i z_j`, all brackets involving some `z̄` zero.
pub fn cpn_bracket(a: &SkewParamMatrix) -> Result<PoissonStructure, SimplexError> {
    quadratic_bracket(a, false)
}

/// Variant that also sets `{z̄_i, z̄_j} = a_ij z̄_i z̄_j`.
pub fn cpn_bracket_conjugate_symmetric(a: &SkewParamMatrix) -> Result<PoissonStructure, SimplexError> {
    quadratic_bracket(a, true)
}

/// Torus `𝕋ⁿ` with weight `e_k` on `(z_k, z̄_k)` for `k ≥ 1` and weight 0 on `(z_0, z̄_0)`.
pub fn cpn_torus(chart: &Chart, n: usize) -> TorusActionSpec {
    let pairs = (0..=n).map(|k| (k, n + 1 + k)).collect();
    let weights = (0..=n).map(|k| (1..=n).map(|t| i64::from(t == k)).collect()).collect();
    TorusActionSpec::new(chart, pairs, weights).expect("well-formed torus")
}

/// `μ_i = z_i z̄_i / Σ_l z_l z̄_l` over a chart from [`cpn_chart`].
pub fn moment_components(chart: &Chart) -> Vec<RationalFunction> {
    let n = chart.dimension() / 2 - 1;
    let vars = chart.vars();
    let u: Vec<Polynomial> = (0..=n)
        .map(|i| &Polynomial::var(vars, i) * &Polynomial::var(vars, n + 1 + i))
        .collect();
    let r = u.iter().fold(Polynomial::zero(vars), |acc, x| &acc + x);
    u.into_iter()
        .map(|ui| RationalFunction::new(ui, r.clone()).expect("nonzero denominator"))
        .collect()
}

/// `(a_ij − Σ_l (a_il + a_lj) μ_l) μ_i μ_j` over `simplex_chart(a)`.
pub fn simplex_entry(a: &SkewParamMatrix, chart: &Chart, i: usize, j: usize) -> Polynomial {
    let vars = chart.vars();
    &simplex_factor(a, chart, i, j) * &(&Polynomial::var(vars, i) * &Polynomial::var(vars, j))
}

fn simplex_factor(a: &SkewParamMatrix, chart: &Chart, i: usize, j: usize) -> Polynomial {
    let vars = chart.vars();
    let mut f = a.entry(vars, i, j);
    for l in 0..=a.n {
        let c = &a.entry(vars, i, l) + &a.entry(vars, l, j);
        if !c.is_zero() {
            f = &f - &(&c * &Polynomial::var(vars, l));
        }
    }
    f
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexDerivation {
    pub chart: Chart,
    /// `{μ_i, μ_j}` for `i < j`, as polynomials on the simplex chart.
    pub entries: Vec<(usize, usize, Polynomial)>,
    /// Pairs at which the bracket upstairs equals the closed form composed with `μ`.
    pub pairs_certified: usize,
    /// Constant ratio of the conjugate-symmetric bracket to this one, when
    /// some `{μ_i, μ_j}` is nonzero.
    pub conjugate_factor: Option<BigRational>,
}

/// Computes `{μ_i, μ_j}` upstairs with [`cpn_bracket`] and certifies it
/// equals the closed form composed with the moment functions.
pub fn derive_simplex_bracket(a: &SkewParamMatrix) -> Result<SimplexDerivation, SimplexError> {
    let upstairs = cpn_bracket(a)?;
    let up_chart = upstairs.chart().clone();
    let mu = moment_components(&up_chart);
    let chart = simplex_chart(a);
    let nparams = chart.parameter_names().len();
    let images: Vec<RationalFunction> = mu
        .iter()
        .cloned()
        .chain((0..nparams).map(|k| RationalFunction::var(up_chart.vars(), up_chart.dimension() + k)))
        .collect();
    let mut entries = Vec::new();
    let mut lhs_values = Vec::new();
    for i in 0..=a.n {
        for j in i + 1..=a.n {
            let lhs = bracket(&upstairs, &mu[i], &mu[j])?;
            let poly = simplex_entry(a, &chart, i, j);
            let rhs = RationalFunction::from_polynomial(poly.clone()).compose(up_chart.vars(), &images)?;
            if lhs != rhs {
                return Err(SimplexError::DerivationMismatch {
                    i,
                    j,
                    residual: &lhs - &rhs,
                });
            }
            entries.push((i, j, poly));
            lhs_values.push(lhs);
        }
    }
    let conjugate_factor = conjugate_factor(a, &mu, &lhs_values)?;
    Ok(SimplexDerivation {
        chart,
        pairs_certified: entries.len(),
        entries,
        conjugate_factor,
    })
}

fn conjugate_factor(
    a: &SkewParamMatrix,
    mu: &[RationalFunction],
    lhs: &[RationalFunction],
) -> Result<Option<BigRational>, SimplexError> {
    let symmetric = cpn_bracket_conjugate_symmetric(a)?;
    let mut factor: Option<BigRational> = None;
    let mut k = 0;
    for i in 0..=a.n {
        for j in i + 1..=a.n {
            let base = &lhs[k];
            k += 1;
            if base.is_zero() {
                continue;
            }
            let other = bracket(&symmetric, &mu[i], &mu[j])?;
            let Some(c) = other.checked_div(base)?.constant_value() else {
                return Ok(None);
            };
            match &factor {
                Some(f) if *f != c => return Ok(None),
                _ => factor = Some(c),
            }
        }
    }
    Ok(factor)
}

/// The closed-form bracket on `(mu0..mun)`, Jacobi-verified.
pub fn simplex_bracket(a: &SkewParamMatrix) -> Result<PoissonStructure, SimplexError> {
    Ok(simplex_bracket_unverified(a).verify()?)
}

/// The closed-form bracket without the Jacobi check, for reporting defects.
pub fn simplex_bracket_unverified(a: &SkewParamMatrix) -> PoissonStructure {
    let chart = simplex_chart(a);
    let entries = (0..=a.n)
        .flat_map(|i| (i + 1..=a.n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, RationalFunction::from_polynomial(simplex_entry(a, &chart, i, j))))
        .collect::<Vec<_>>();
    PoissonStructure::from_entries(&chart, entries).expect("entries are indexed within the chart")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCheck {
    pub i: usize,
    pub l: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumCheck {
    pub i: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratificationCertificate {
    /// `μ_l | {μ_i, μ_l}` for all `i, l`.
    pub faces: Vec<FaceCheck>,
    /// `(1 − Σ μ_l) | {μ_i, Σ μ_l}` for all `i`.
    pub sums: Vec<SumCheck>,
}

impl StratificationCertificate {
    pub fn passed(&self) -> bool {
        self.faces.iter().all(|c| c.passed) && self.sums.iter().all(|c| c.passed)
    }
}

/// Exact divisibility checks showing every face `{μ_l = 0}` and the
/// hyperplane `{Σ μ = 1}` are Poisson submanifolds.
pub fn check_face_stratification(a: &SkewParamMatrix) -> Result<StratificationCertificate, SimplexError> {
    let chart = simplex_chart(a);
    let vars = chart.vars();
    let n = a.n;
    let entry = |i: usize, j: usize| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Polynomial::zero(vars),
        std::cmp::Ordering::Less => simplex_entry(a, &chart, i, j),
        std::cmp::Ordering::Greater => -simplex_entry(a, &chart, j, i),
    };
    let mut faces = Vec::new();
    for i in 0..=n {
        for l in 0..=n {
            let passed = divides(&Polynomial::var(vars, l), &entry(i, l))?;
            faces.push(FaceCheck { i, l, passed });
        }
    }
    let total = (0..=n).fold(Polynomial::zero(vars), |acc, l| &acc + &Polynomial::var(vars, l));
    let hyperplane = &Polynomial::one(vars) - &total;
    let mut sums = Vec::new();
    for i in 0..=n {
        let b = (0..=n).fold(Polynomial::zero(vars), |acc, l| &acc + &entry(i, l));
        sums.push(SumCheck {
            i,
            passed: divides(&hyperplane, &b)?,
        });
    }
    Ok(StratificationCertificate { faces, sums })
}

/// Face `{μ_l = 0 : l ∈ vanishing}` of `Δⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub vanishing: Vec<usize>,
    pub dimension: usize,
}

impl FaceDescriptor {
    /// Indices `l` with `μ_l` free on the face.
    pub fn support(&self, n: usize) -> Vec<usize> {
        (0..=n).filter(|l| !self.vanishing.contains(l)).collect()
    }
}

/// All `2ⁿ⁺¹ − 1` nonempty faces, by increasing dimension, each dimension
/// in lexicographic order of the vanishing set.
pub fn enumerate_faces(n: usize) -> Vec<FaceDescriptor> {
    let mut faces: Vec<FaceDescriptor> = (0u64..(1u64 << (n + 1)) - 1)
        .map(|mask| {
            let vanishing: Vec<usize> = (0..=n).filter(|&l| mask & (1 << l) != 0).collect();
            FaceDescriptor {
                dimension: n - vanishing.len(),
                vanishing,
            }
        })
        .collect();
    faces.sort_by(|a, b| {
        a.dimension
            .cmp(&b.dimension)
            .then_with(|| a.vanishing.cmp(&b.vanishing))
    });
    faces
}

/// Restriction of the simplex bracket to the coordinates free on `face`.
pub fn face_structure(a: &SkewParamMatrix, face: &FaceDescriptor) -> Result<PoissonStructure, SimplexError> {
    let full = simplex_chart(a);
    let support = face.support(a.n);
    let names: Vec<String> = support.iter().map(|&l| full.coordinate_names()[l].clone()).collect();
    let chart = Chart::new(&names, full.parameter_names())?;
    let vars = chart.vars();
    let images: Vec<Polynomial> = (0..=a.n)
        .map(|l| match support.iter().position(|&s| s == l) {
            Some(k) => Polynomial::var(vars, k),
            None => Polynomial::zero(vars),
        })
        .chain((0..full.parameter_names().len()).map(|k| Polynomial::var(vars, support.len() + k)))
        .collect();
    let mut entries = Vec::new();
    for (a_idx, &i) in support.iter().enumerate() {
        for (b_idx, &j) in support.iter().enumerate().skip(a_idx + 1) {
            let e = simplex_entry(a, &full, i, j).compose(vars, &images);
            if !e.is_zero() {
                entries.push((a_idx, b_idx, RationalFunction::from_polynomial(e)));
            }
        }
    }
    Ok(PoissonStructure::from_entries(&chart, entries)?.verify()?)
}

/// `{mu_i, mu_j}` as `c*mu_i*mu_j*(rest)` with the parameter content `c`
/// pulled out and `rest` normalized so its lowest term has coefficient 1
/// when that coefficient is a number.
pub fn format_simplex_entry(chart: &Chart, i: usize, j: usize, entry: &Polynomial) -> String {
    let vars = chart.vars();
    let mi = &chart.coordinate_names()[i];
    let mj = &chart.coordinate_names()[j];
    let mono = &Polynomial::var(vars, i) * &Polynomial::var(vars, j);
    let Some(factor) = entry.exact_div(&mono).filter(|f| !entry.is_zero() && !f.is_zero()) else {
        return entry.to_string();
    };
    let dim = chart.dimension();
    let mut by_mu: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, c) in factor.terms() {
        let exps = m.exponents();
        let mu_part: Vec<u16> = exps
            .iter()
            .enumerate()
            .map(|(k, &e)| if k < dim { e } else { 0 })
            .collect();
        let par_part: Vec<u16> = exps
            .iter()
            .enumerate()
            .map(|(k, &e)| if k < dim { 0 } else { e })
            .collect();
        let term = Polynomial::monomial(vars, Monomial::from_exponents(&par_part), c.clone());
        let slot = by_mu
            .entry(Monomial::from_exponents(&mu_part))
            .or_insert_with(|| Polynomial::zero(vars));
        *slot = &*slot + &term;
    }
    let mut content = by_mu.values().fold(Polynomial::zero(vars), |g, c| gcd(&g, c));
    let lowest = by_mu.values().next().expect("nonzero factor");
    let scalar = lowest
        .exact_div(&content)
        .and_then(|q| q.constant_value())
        .unwrap_or_else(BigRational::one);
    content = content.scale(&scalar);
    let rest = factor.exact_div(&content).expect("content divides the factor");

    let mut out = String::new();
    match content.constant_value() {
        Some(c) if c.is_one() => {}
        Some(c) if c == -BigRational::one() => out.push('-'),
        Some(c) => write!(out, "{c}*").unwrap(),
        None if content.num_terms() == 1 && content.leading_coefficient().is_one() => {
            write!(out, "{content}*").unwrap()
        }
        None => write!(out, "({content})*").unwrap(),
    }
    write!(out, "{mi}*{mj}").unwrap();
    if !rest.is_one() {
        write!(out, "*({rest})").unwrap();
    }
    out
}

impl SimplexDerivation {
    pub fn formatted(&self) -> Vec<(usize, usize, String)> {
        self.entries
            .iter()
            .filter(|(_, _, p)| !p.is_zero())
            .map(|(i, j, p)| (*i, *j, format_simplex_entry(&self.chart, *i, *j, p)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::jacobi_defect;
    use num_traits::Zero;

    #[test]
    fn cpn_entries() {
        let a = SkewParamMatrix::symbolic(1).unwrap();
        let p = cpn_bracket(&a).unwrap();
        assert_eq!(p.chart().coordinate_names(), ["z0", "z1", "zbar0", "zbar1"]);
        let nonzero: Vec<_> = p.upper_entries().filter(|(_, _, e)| !e.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].2, &p.chart().parse("a01*z0*z1").unwrap());

        let zero = SkewParamMatrix::numeric(Matrix::zeros(3, 3)).unwrap();
        assert!(cpn_bracket(&zero).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_matrices() {
        let diag = Matrix::from_i64_rows(&[&[1, 0], &[0, 0]]);
        assert_eq!(SkewParamMatrix::numeric(diag), Err(SimplexError::NotSkew(0, 0)));
        let sym = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(SkewParamMatrix::numeric(sym), Err(SimplexError::NotSkew(0, 1)));
        assert_eq!(
            SkewParamMatrix::numeric(Matrix::zeros(1, 1)),
            Err(SimplexError::BadShape)
        );
    }

    #[test]
    fn moment_functions_sum_to_one_and_hit_vertices() {
        let a = SkewParamMatrix::symbolic(2).unwrap();
        let chart = cpn_chart(&a);
        let mu = moment_components(&chart);
        let total = mu.iter().fold(RationalFunction::zero(chart.vars()), |s, m| &s + m);
        assert_eq!(total, RationalFunction::one(chart.vars()));
        let mut pt = vec![BigRational::zero(); chart.vars().len()];
        pt[0] = BigRational::one();
        pt[3] = BigRational::one();
        assert_eq!(mu[0].eval_at(&pt).unwrap(), BigRational::one());
        let t = cpn_torus(&chart, 2);
        assert!(mu.iter().all(|m| t.is_invariant_function(m)));
    }

    #[test]
    fn closed_form_for_one_simplex() {
        let a = SkewParamMatrix::symbolic(1).unwrap();
        let d = derive_simplex_bracket(&a).unwrap();
        let expect = d.chart.parse("a01*mu0*mu1*(1-mu0-mu1)").unwrap();
        assert_eq!(RationalFunction::from_polynomial(d.entries[0].2.clone()), expect);
        assert_eq!(d.formatted()[0].2, "a01*mu0*mu1*(-mu0 - mu1 + 1)");
        // the upstairs bracket vanishes identically at n = 1
        assert_eq!(d.conjugate_factor, None);
    }

    #[test]
    fn conjugate_symmetric_convention_doubles() {
        let a = SkewParamMatrix::symbolic(2).unwrap();
        let d = derive_simplex_bracket(&a).unwrap();
        assert_eq!(d.pairs_certified, 3);
        assert_eq!(d.conjugate_factor, Some(BigRational::from_integer(2.into())));
    }

    #[test]
    fn simplex_bracket_is_poisson_and_vanishes_on_the_line() {
        let a = SkewParamMatrix::symbolic(2).unwrap();
        let s = simplex_bracket(&a).unwrap();
        assert!(jacobi_defect(&s).iter().all(|d| d.value.is_zero()));

        let a1 = SkewParamMatrix::symbolic(1).unwrap();
        let s1 = simplex_bracket(&a1).unwrap();
        let vars = s1.chart().vars();
        let line = [
            RationalFunction::var(vars, 0),
            s1.chart().parse("1 - mu0").unwrap(),
            RationalFunction::var(vars, 2),
        ];
        assert!(s1.entry(0, 1).compose(vars, &line).unwrap().is_zero());
    }

    #[test]
    fn stratification_counts() {
        let mut rng = sampling::seeded(3);
        let a = SkewParamMatrix::random(2, &mut rng).unwrap();
        let cert = check_face_stratification(&a).unwrap();
        assert_eq!((cert.faces.len(), cert.sums.len()), (9, 3));
        assert!(cert.passed());
        assert!(check_face_stratification(&SkewParamMatrix::symbolic(1).unwrap())
            .unwrap()
            .passed());
    }

    #[test]
    fn face_enumeration() {
        assert_eq!(enumerate_faces(1).len(), 3);
        let f2 = enumerate_faces(2);
        assert_eq!(f2.len(), 7);
        assert_eq!(f2.iter().filter(|f| f.dimension == 0).count(), 3);
        assert_eq!(f2[0].vanishing, vec![0, 1]);
        let a = SkewParamMatrix::symbolic(2).unwrap();
        for f in f2.iter().filter(|f| f.dimension == 0) {
            assert!(face_structure(&a, f).unwrap().is_zero());
        }
        let edge = face_structure(
            &a,
            &FaceDescriptor {
                vanishing: vec![2],
                dimension: 1,
            },
        )
        .unwrap();
        assert_eq!(
            edge.entry(0, 1),
            &edge.chart().parse("a01*mu0*mu1*(1-mu0-mu1)").unwrap()
        );
    }
}
