//! Linear group actions on a chart: finite groups given by generator
//! matrices and tori given by integer weights on `(z, z̄)` coordinate pairs.

use std::collections::{HashSet, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{span_rank, Matrix, Vector};
use crate::poisson::{linear_images, pushforward_linear, Chart, PoissonError, PoissonStructure};
use crate::symexpr::{Polynomial, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("action and structure live on different charts")]
    ChartMismatch,
    #[error("generator {0} is not a square matrix of the chart dimension")]
    BadGeneratorShape(usize),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("group generated does not close within {0} elements")]
    ClosureNotReached(usize),
    #[error("invalid torus action: {0}")]
    InvalidTorus(String),
    #[error("metric is not symmetric positive-definite")]
    NotPositiveDefinite,
    #[error("metric is not invariant under the action")]
    NotInvariant,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("subspace and complement do not span the chart")]
    NotComplementary,
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteActionSpec {
    pub chart: Chart,
    pub generators: Vec<Matrix>,
    pub max_order: usize,
}

impl FiniteActionSpec {
    pub const DEFAULT_MAX_ORDER: usize = 1024;

    pub fn new(chart: &Chart, generators: Vec<Matrix>) -> Result<Self, ActionError> {
        Self::with_max_order(chart, generators, Self::DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(chart: &Chart, generators: Vec<Matrix>, max_order: usize) -> Result<Self, ActionError> {
        let n = chart.dimension();
        for (k, g) in generators.iter().enumerate() {
            if !g.is_square() || g.rows() != n {
                return Err(ActionError::BadGeneratorShape(k));
            }
            if g.determinant().is_zero() {
                return Err(ActionError::NotInvertible(k));
            }
        }
        Ok(FiniteActionSpec {
            chart: chart.clone(),
            generators,
            max_order: max_order.max(1),
        })
    }

    /// The group `{I}`.
    pub fn trivial(chart: &Chart) -> Self {
        FiniteActionSpec {
            chart: chart.clone(),
            generators: Vec::new(),
            max_order: 1,
        }
    }
}

/// Torus `T^m` acting by `z_k ↦ e^{i⟨w_k, θ⟩} z_k`, `z̄_k ↦ e^{−i⟨w_k, θ⟩} z̄_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusActionSpec {
    pub chart: Chart,
    /// `(z index, z̄ index)` per complex coordinate.
    pub pairs: Vec<(usize, usize)>,
    /// `weights[k]` is the weight vector of pair `k`, one entry per circle factor.
    pub weights: Vec<Vec<i64>>,
}

impl TorusActionSpec {
    pub fn new(chart: &Chart, pairs: Vec<(usize, usize)>, weights: Vec<Vec<i64>>) -> Result<Self, ActionError> {
        if pairs.len() != weights.len() {
            return Err(ActionError::InvalidTorus("one weight vector per pair required".into()));
        }
        let rank = weights.first().map_or(0, Vec::len);
        if weights.iter().any(|w| w.len() != rank) {
            return Err(ActionError::InvalidTorus("weight vectors differ in length".into()));
        }
        let mut seen = HashSet::new();
        for &(a, b) in &pairs {
            if a >= chart.dimension() || b >= chart.dimension() {
                return Err(ActionError::InvalidTorus("pair index outside the chart".into()));
            }
            if a == b || !seen.insert(a) || !seen.insert(b) {
                return Err(ActionError::InvalidTorus(format!(
                    "variable used twice in pairs ({}, {})",
                    chart.vars().name(a),
                    chart.vars().name(b)
                )));
            }
        }
        Ok(TorusActionSpec {
            chart: chart.clone(),
            pairs,
            weights,
        })
    }

    pub fn rank(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    /// Weight vector of every chart variable (parameters included, weight 0).
    pub fn variable_weights(&self) -> Vec<Vec<i64>> {
        let mut w = vec![vec![0; self.rank()]; self.chart.vars().len()];
        for (&(z, zb), wk) in self.pairs.iter().zip(&self.weights) {
            w[z] = wk.clone();
            w[zb] = wk.iter().map(|x| -x).collect();
        }
        w
    }

    fn monomial_weight(&self, weights: &[Vec<i64>], exps: &[u16]) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for (e, w) in exps.iter().zip(weights) {
            for (o, x) in out.iter_mut().zip(w) {
                *o += i64::from(*e) * x;
            }
        }
        out
    }

    /// Common weight of all terms, or `None` if `p` mixes weights. Zero has no weight.
    pub fn polynomial_weight(&self, p: &Polynomial) -> Option<Vec<i64>> {
        let weights = self.variable_weights();
        let mut it = p.terms().map(|(m, _)| self.monomial_weight(&weights, m.exponents()));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Weight of a rational function in canonical form, if homogeneous.
    pub fn weight_of(&self, f: &RationalFunction) -> Option<Vec<i64>> {
        let n = self.polynomial_weight(f.numerator())?;
        let d = self.polynomial_weight(f.denominator())?;
        Some(n.iter().zip(&d).map(|(a, b)| a - b).collect())
    }

    pub fn is_invariant_function(&self, f: &RationalFunction) -> bool {
        f.is_zero() || self.weight_of(f).is_some_and(|w| w.iter().all(|&x| x == 0))
    }

    /// Projection onto weight-zero terms: the torus average of `p`.
    pub fn reynolds(&self, p: &Polynomial) -> Polynomial {
        let weights = self.variable_weights();
        Polynomial::from_terms(
            p.vars(),
            p.terms()
                .filter(|(m, _)| self.monomial_weight(&weights, m.exponents()).iter().all(|&x| x == 0))
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupAction {
    Finite(FiniteActionSpec),
    Torus(TorusActionSpec),
}

impl GroupAction {
    pub fn chart(&self) -> &Chart {
        match self {
            GroupAction::Finite(a) => &a.chart,
            GroupAction::Torus(t) => &t.chart,
        }
    }

    /// Group average of a polynomial function over the chart.
    pub fn reynolds(&self, p: &Polynomial) -> Result<Polynomial, ActionError> {
        match self {
            GroupAction::Torus(t) => Ok(t.reynolds(p)),
            GroupAction::Finite(spec) => {
                let elements = enumerate_group(spec)?;
                let vars = spec.chart.vars();
                let mut acc = Polynomial::zero(vars);
                for g in &elements {
                    let images: Vec<Polynomial> = linear_images(&spec.chart, g)
                        .into_iter()
                        .map(|f| f.as_polynomial().expect("linear image").clone())
                        .collect();
                    acc = &acc + &p.compose(vars, &images);
                }
                let inv = BigRational::new(1.into(), (elements.len() as i64).into());
                Ok(acc.scale(&inv))
            }
        }
    }
}

impl From<FiniteActionSpec> for GroupAction {
    fn from(a: FiniteActionSpec) -> Self {
        GroupAction::Finite(a)
    }
}

impl From<TorusActionSpec> for GroupAction {
    fn from(t: TorusActionSpec) -> Self {
        GroupAction::Torus(t)
    }
}

/// All group elements, identity first, in breadth-first order over words
/// in the generators.
pub fn enumerate_group(spec: &FiniteActionSpec) -> Result<Vec<Matrix>, ActionError> {
    let n = spec.chart.dimension();
    let id = Matrix::identity(n);
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut elements = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(h) = queue.pop_front() {
        for g in &spec.generators {
            let next = g * &h;
            if seen.insert(next.clone()) {
                if elements.len() == spec.max_order {
                    return Err(ActionError::ClosureNotReached(spec.max_order));
                }
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(elements)
}

/// Lifted action on covectors, `ξ ↦ g^{-T} ξ`, from `(g·ξ)(v) = ξ(g⁻¹v)`.
pub fn cotangent_lift(g: &Matrix) -> Matrix {
    g.inverse().expect("group elements are invertible").transpose()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionFailure {
    /// `g_* π ≠ π` at entry `(i, j)`.
    Element {
        element: usize,
        matrix: Matrix,
        entry: (usize, usize),
        pushed: RationalFunction,
        original: RationalFunction,
    },
    /// Entry `π^{ij}` is not homogeneous of weight `w_i + w_j`.
    Weight {
        entry: (usize, usize),
        value: RationalFunction,
        expected: Vec<i64>,
        found: Option<Vec<i64>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionCertificate {
    /// Group elements (finite) or entries (torus) examined.
    pub checked: usize,
    pub failures: Vec<ActionFailure>,
}

impl ActionCertificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact check that every group element acts by Poisson automorphisms.
pub fn is_poisson_action(p: &PoissonStructure, action: &GroupAction) -> Result<ActionCertificate, ActionError> {
    if action.chart() != p.chart() {
        return Err(ActionError::ChartMismatch);
    }
    match action {
        GroupAction::Finite(spec) => {
            let elements = enumerate_group(spec)?;
            let n = p.dimension();
            let mut failures = Vec::new();
            for (k, g) in elements.iter().enumerate().skip(1) {
                let pushed = pushforward_linear(p, g)?;
                let bad = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| pushed.entry(i, j) != p.entry(i, j));
                if let Some((i, j)) = bad {
                    failures.push(ActionFailure::Element {
                        element: k,
                        matrix: g.clone(),
                        entry: (i, j),
                        pushed: pushed.entry(i, j).clone(),
                        original: p.entry(i, j).clone(),
                    });
                }
            }
            Ok(ActionCertificate {
                checked: elements.len(),
                failures,
            })
        }
        GroupAction::Torus(t) => {
            let w = t.variable_weights();
            let mut failures = Vec::new();
            let mut checked = 0;
            for (i, j, e) in p.upper_entries() {
                checked += 1;
                let expected: Vec<i64> = w[i].iter().zip(&w[j]).map(|(a, b)| a + b).collect();
                let found = t.weight_of(e);
                if found.as_ref() != Some(&expected) {
                    failures.push(ActionFailure::Weight {
                        entry: (i, j),
                        value: e.clone(),
                        expected,
                        found,
                    });
                }
            }
            Ok(ActionCertificate { checked, failures })
        }
    }
}

/// A linear subspace of the chart with a basis and a complete set of
/// defining covectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubmanifold {
    pub chart: Chart,
    pub basis: Vec<Vector>,
    pub equations: Vec<Vector>,
}

impl LinearSubmanifold {
    pub fn from_basis(chart: &Chart, basis: Vec<Vector>) -> Result<Self, ActionError> {
        let n = chart.dimension();
        if basis.iter().any(|b| b.len() != n) {
            return Err(ActionError::Poisson(PoissonError::DimensionMismatch {
                expected: n,
                got: basis.iter().map(Vec::len).find(|&l| l != n).unwrap_or(0),
            }));
        }
        if span_rank(&basis, n) != basis.len() {
            return Err(ActionError::DependentBasis);
        }
        let equations = annihilator(&basis, n);
        Ok(LinearSubmanifold {
            chart: chart.clone(),
            basis,
            equations,
        })
    }

    /// Subspace cut out by the given covectors.
    pub fn from_equations(chart: &Chart, equations: Vec<Vector>) -> Result<Self, ActionError> {
        let n = chart.dimension();
        let basis = if equations.is_empty() {
            (0..n).map(|i| unit(n, i)).collect()
        } else {
            Matrix::from_rows(equations).kernel()
        };
        Self::from_basis(chart, basis)
    }

    /// Span of the named coordinate axes.
    pub fn coordinate_span(chart: &Chart, axes: &[usize]) -> Result<Self, ActionError> {
        let n = chart.dimension();
        let basis = axes.iter().map(|&a| unit(n, a)).collect();
        Self::from_basis(chart, basis)
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn codimension(&self) -> usize {
        self.equations.len()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.equations.iter().all(|eq| dot(eq, v).is_zero())
    }

    /// Point `Σ_k s_k b_k` of the subspace.
    pub fn point(&self, s: &[BigRational]) -> Vector {
        assert_eq!(s.len(), self.basis.len());
        let mut x = vec![BigRational::zero(); self.chart.dimension()];
        for (sk, b) in s.iter().zip(&self.basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += sk * bi;
            }
        }
        x
    }

    /// Whether the span is carried to itself by `g`.
    pub fn is_invariant_under(&self, g: &Matrix) -> bool {
        self.basis.iter().all(|b| self.contains(&g.mul_vec(b)))
    }

    /// Index of the coordinate axis when basis vector `k` is a unit vector.
    pub fn axis_of(&self, k: usize) -> Option<usize> {
        axis_of(&self.basis[k])
    }
}

pub(crate) fn axis_of(v: &[BigRational]) -> Option<usize> {
    let mut nz = v.iter().enumerate().filter(|(_, x)| !x.is_zero());
    match (nz.next(), nz.next()) {
        (Some((i, x)), None) if x.is_one() => Some(i),
        _ => None,
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![BigRational::zero(); n];
    v[i] = BigRational::one();
    v
}

pub(crate) fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .fold(BigRational::zero(), |s, t| s + t)
}

/// Basis of the covectors vanishing on `span(vectors)`.
pub fn annihilator(vectors: &[Vector], n: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    Matrix::from_rows(vectors.to_vec()).kernel()
}

/// Joint fixed subspace of the action.
pub fn fixed_subspace(action: &GroupAction) -> Result<LinearSubmanifold, ActionError> {
    match action {
        GroupAction::Finite(spec) => {
            let n = spec.chart.dimension();
            if spec.generators.is_empty() {
                return LinearSubmanifold::coordinate_span(&spec.chart, &(0..n).collect::<Vec<_>>());
            }
            let id = Matrix::identity(n);
            let rows: Vec<Vector> = spec
                .generators
                .iter()
                .flat_map(|g| {
                    let d = g.sub(&id);
                    (0..n).map(move |i| d.row(i)).collect::<Vec<_>>()
                })
                .collect();
            LinearSubmanifold::from_basis(&spec.chart, Matrix::from_rows(rows).kernel())
        }
        GroupAction::Torus(t) => {
            let w = t.variable_weights();
            let axes: Vec<usize> = (0..t.chart.dimension())
                .filter(|&i| w[i].iter().all(|&x| x == 0))
                .collect();
            LinearSubmanifold::coordinate_span(&t.chart, &axes)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricKind {
    /// Real symmetric positive-definite form on the chart coordinates.
    Euclidean,
    /// Symmetric form on formal `(z, z̄)` coordinates whose restriction to
    /// real points `z̄ = conj(z)` is positive-definite.
    Hermitian { pairs: Vec<(usize, usize)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantMetric {
    pub chart: Chart,
    pub matrix: Matrix,
    pub kind: MetricKind,
}

impl InvariantMetric {
    /// `⟨u, v⟩ = uᵀ M v`.
    pub fn pairing(&self, u: &[BigRational], v: &[BigRational]) -> BigRational {
        dot(u, &self.matrix.mul_vec(v))
    }

    pub fn is_positive_definite(&self) -> bool {
        match &self.kind {
            MetricKind::Euclidean => self.matrix.is_positive_definite(),
            MetricKind::Hermitian { pairs } => real_form(&self.matrix, pairs).is_some_and(|m| m.is_positive_definite()),
        }
    }

    /// Exact invariance under every group element (finite) or every torus
    /// phase (torus: entries may only pair opposite weights).
    pub fn is_invariant(&self, action: &GroupAction) -> Result<bool, ActionError> {
        match action {
            GroupAction::Finite(spec) => Ok(enumerate_group(spec)?
                .iter()
                .all(|g| &(&g.transpose() * &self.matrix) * g == self.matrix)),
            GroupAction::Torus(t) => {
                let w = t.variable_weights();
                let n = self.chart.dimension();
                Ok((0..n).all(|a| {
                    (0..n).all(|b| self.matrix[(a, b)].is_zero() || w[a].iter().zip(&w[b]).all(|(x, y)| x + y == 0))
                }))
            }
        }
    }
}

/// Real form `Cᵀ M C` in coordinates `z = x + iy`, `z̄ = x − iy`; `None`
/// when it has an imaginary part.
fn real_form(m: &Matrix, pairs: &[(usize, usize)]) -> Option<Matrix> {
    let n = m.rows();
    // columns of C as (real, imaginary) parts
    let mut re = Matrix::identity(n);
    let mut im = Matrix::zeros(n, n);
    for &(z, zb) in pairs {
        let one = BigRational::one();
        re[(z, z)] = one.clone();
        re[(zb, z)] = one.clone();
        re[(z, zb)] = BigRational::zero();
        re[(zb, zb)] = BigRational::zero();
        im[(z, zb)] = one.clone();
        im[(zb, zb)] = -one;
    }
    let re_t = re.transpose();
    let im_t = im.transpose();
    let real = (&(&re_t * m) * &re).sub(&(&(&im_t * m) * &im));
    let imag = (&(&re_t * m) * &im).add(&(&(&im_t * m) * &re));
    imag.is_zero().then_some(real)
}

/// Group average `(1/|G|) Σ_g gᵀ S g` of a seed form, certified.
pub fn average_metric(spec: &FiniteActionSpec, seed: &Matrix) -> Result<InvariantMetric, ActionError> {
    let n = spec.chart.dimension();
    if !seed.is_square() || seed.rows() != n || !seed.is_positive_definite() {
        return Err(ActionError::NotPositiveDefinite);
    }
    let elements = enumerate_group(spec)?;
    let mut acc = Matrix::zeros(n, n);
    for g in &elements {
        acc = acc.add(&(&(&g.transpose() * seed) * g));
    }
    let matrix = acc.scale(&BigRational::new(1.into(), (elements.len() as i64).into()));
    let metric = InvariantMetric {
        chart: spec.chart.clone(),
        matrix,
        kind: MetricKind::Euclidean,
    };
    if !metric.is_invariant(&GroupAction::Finite(spec.clone()))? {
        return Err(ActionError::NotInvariant);
    }
    if !metric.is_positive_definite() {
        return Err(ActionError::NotPositiveDefinite);
    }
    Ok(metric)
}

/// `Σ_k (dz_k ⊗ dz̄_k + dz̄_k ⊗ dz_k)/2` on pairs plus the identity on
/// unpaired coordinates: the flat metric `Σ |dz_k|²`.
pub fn torus_metric(t: &TorusActionSpec) -> InvariantMetric {
    let n = t.chart.dimension();
    let mut m = Matrix::identity(n);
    let half = BigRational::new(1.into(), 2.into());
    for &(z, zb) in &t.pairs {
        m[(z, z)] = BigRational::zero();
        m[(zb, zb)] = BigRational::zero();
        m[(z, zb)] = half.clone();
        m[(zb, z)] = half.clone();
    }
    InvariantMetric {
        chart: t.chart.clone(),
        matrix: m,
        kind: MetricKind::Hermitian { pairs: t.pairs.clone() },
    }
}

/// Invariant metric for either kind of action. A finite action averages
/// `seed` (identity by default); a torus uses the flat Hermitian metric,
/// or `seed` after checking it is invariant and positive on real points.
pub fn invariant_metric(action: &GroupAction, seed: Option<&Matrix>) -> Result<InvariantMetric, ActionError> {
    match action {
        GroupAction::Finite(spec) => {
            let id = Matrix::identity(spec.chart.dimension());
            average_metric(spec, seed.unwrap_or(&id))
        }
        GroupAction::Torus(t) => {
            let mut metric = torus_metric(t);
            if let Some(s) = seed {
                metric.matrix = s.clone();
                if !s.is_symmetric() || !metric.is_positive_definite() {
                    return Err(ActionError::NotPositiveDefinite);
                }
                if !metric.is_invariant(action)? {
                    return Err(ActionError::NotInvariant);
                }
            }
            Ok(metric)
        }
    }
}

/// The metric-orthogonal complement `E = {v : ⟨v, w⟩ = 0 ∀ w ∈ N}`,
/// certified to satisfy `N ⊕ E = chart`.
pub fn orthogonal_complement(
    n: &LinearSubmanifold,
    metric: &InvariantMetric,
) -> Result<LinearSubmanifold, ActionError> {
    if n.chart != metric.chart {
        return Err(ActionError::ChartMismatch);
    }
    let dim = n.chart.dimension();
    let basis = if n.basis.is_empty() {
        (0..dim).map(|i| unit(dim, i)).collect()
    } else {
        let rows: Vec<Vector> = n.basis.iter().map(|b| metric.matrix.transpose().mul_vec(b)).collect();
        Matrix::from_rows(rows).kernel()
    };
    let e = LinearSubmanifold::from_basis(&n.chart, basis)?;
    let all: Vec<Vector> = n.basis.iter().chain(&e.basis).cloned().collect();
    if span_rank(&all, dim) != dim {
        return Err(ActionError::NotComplementary);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{int, rat};

    fn r4() -> PoissonStructure {
        let c = Chart::coords(&["q1", "p1", "q2", "p2"]).unwrap();
        PoissonStructure::from_table(&c, &[("q1", "p1", "1"), ("q2", "p2", "1")]).unwrap()
    }

    fn z2_r4(p: &PoissonStructure) -> FiniteActionSpec {
        let g = Matrix::diagonal(&[int(1), int(1), int(-1), int(-1)]);
        FiniteActionSpec::new(p.chart(), vec![g]).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let p = r4();
        let z2 = z2_r4(&p);
        let els = enumerate_group(&z2).unwrap();
        assert_eq!(els.len(), 2);
        assert!(els[0].is_identity());

        let c = Chart::coords(&["x", "y"]).unwrap();
        let rot = Matrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(
            enumerate_group(&FiniteActionSpec::new(&c, vec![rot]).unwrap())
                .unwrap()
                .len(),
            4
        );

        let shear = Matrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let spec = FiniteActionSpec::with_max_order(&c, vec![shear], 50).unwrap();
        assert_eq!(enumerate_group(&spec), Err(ActionError::ClosureNotReached(50)));
    }

    #[test]
    fn enumeration_is_closed() {
        let c = Chart::coords(&["x", "y", "z"]).unwrap();
        let a = Matrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let b = Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let els = enumerate_group(&FiniteActionSpec::new(&c, vec![a, b]).unwrap()).unwrap();
        assert_eq!(els.len(), 6);
        for g in &els {
            assert!(els.contains(&g.inverse().unwrap()));
            for h in &els {
                assert!(els.contains(&(g * h)));
            }
        }
    }

    #[test]
    fn poisson_action_examples() {
        let p = r4();
        let cert = is_poisson_action(&p, &z2_r4(&p).into()).unwrap();
        assert!(cert.passed());

        let c = Chart::coords(&["q", "p"]).unwrap();
        let plane = PoissonStructure::from_table(&c, &[("q", "p", "1")]).unwrap();
        let flip = FiniteActionSpec::new(&c, vec![Matrix::diagonal(&[int(1), int(-1)])]).unwrap();
        let cert = is_poisson_action(&plane, &flip.into()).unwrap();
        assert!(!cert.passed());
        assert!(matches!(cert.failures[0], ActionFailure::Element { entry: (0, 1), .. }));

        assert!(is_poisson_action(&plane, &FiniteActionSpec::trivial(&c).into())
            .unwrap()
            .passed());
    }

    #[test]
    fn torus_weight_criterion() {
        let c = Chart::coords(&["z0", "z1", "zbar0", "zbar1"]).unwrap();
        let p = PoissonStructure::from_table(&c, &[("z0", "z1", "3*z0*z1")]).unwrap();
        let t = TorusActionSpec::new(&c, vec![(0, 2), (1, 3)], vec![vec![0], vec![1]]).unwrap();
        assert!(is_poisson_action(&p, &t.clone().into()).unwrap().passed());
        // {z0, z1} = z0 has weight 0, not 1
        let q = PoissonStructure::from_table(&c, &[("z0", "z1", "z0")]).unwrap();
        assert!(!is_poisson_action(&q, &t.into()).unwrap().passed());
    }

    #[test]
    fn fixed_subspace_examples() {
        let p = r4();
        let n = fixed_subspace(&z2_r4(&p).into()).unwrap();
        assert_eq!(n.basis, vec![unit(4, 0), unit(4, 1)]);
        assert_eq!(n.equations, vec![unit(4, 2), unit(4, 3)]);

        let c = Chart::coords(&["x", "y", "z"]).unwrap();
        let inv = FiniteActionSpec::new(&c, vec![Matrix::diagonal(&[int(-1), int(-1), int(1)])]).unwrap();
        assert_eq!(fixed_subspace(&inv.into()).unwrap().basis, vec![unit(3, 2)]);

        let c = Chart::coords(&["z0", "z1", "z2", "zbar0", "zbar1", "zbar2"]).unwrap();
        let t = TorusActionSpec::new(
            &c,
            vec![(0, 3), (1, 4), (2, 5)],
            vec![vec![0, 0], vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        assert_eq!(fixed_subspace(&t.into()).unwrap().basis, vec![unit(6, 0), unit(6, 3)]);
    }

    #[test]
    fn averaging_examples() {
        let c = Chart::coords(&["x", "y"]).unwrap();
        let swap = FiniteActionSpec::new(&c, vec![Matrix::from_i64_rows(&[&[0, 1], &[1, 0]])]).unwrap();
        let m = average_metric(&swap, &Matrix::diagonal(&[int(1), int(2)])).unwrap();
        assert_eq!(m.matrix, Matrix::diagonal(&[rat(3, 2), rat(3, 2)]));

        let rot = FiniteActionSpec::new(&c, vec![Matrix::from_i64_rows(&[&[0, -1], &[1, 0]])]).unwrap();
        assert!(average_metric(&rot, &Matrix::identity(2)).unwrap().matrix.is_identity());

        let seed = Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(
            average_metric(&FiniteActionSpec::trivial(&c), &seed).unwrap().matrix,
            seed
        );
    }

    #[test]
    fn complement_examples() {
        let c4 = Chart::coords(&["a", "b", "c", "d"]).unwrap();
        let n = LinearSubmanifold::coordinate_span(&c4, &[0, 1]).unwrap();
        let id = InvariantMetric {
            chart: c4.clone(),
            matrix: Matrix::identity(4),
            kind: MetricKind::Euclidean,
        };
        assert_eq!(
            orthogonal_complement(&n, &id).unwrap().basis,
            vec![unit(4, 2), unit(4, 3)]
        );

        let c2 = Chart::coords(&["x", "y"]).unwrap();
        let id2 = InvariantMetric {
            chart: c2.clone(),
            matrix: Matrix::identity(2),
            kind: MetricKind::Euclidean,
        };
        let diag = LinearSubmanifold::from_basis(&c2, vec![vec![int(1), int(1)]]).unwrap();
        let e = orthogonal_complement(&diag, &id2).unwrap();
        assert_eq!(span_rank(&[e.basis[0].clone(), vec![int(1), int(-1)]], 2), 1);

        let skewed = InvariantMetric {
            chart: c2.clone(),
            matrix: Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]),
            kind: MetricKind::Euclidean,
        };
        let axis = LinearSubmanifold::coordinate_span(&c2, &[0]).unwrap();
        let e = orthogonal_complement(&axis, &skewed).unwrap();
        assert_eq!(span_rank(&[e.basis[0].clone(), vec![int(1), int(-2)]], 2), 1);
    }

    #[test]
    fn torus_metric_is_invariant_and_positive() {
        let c = Chart::coords(&["z0", "z1", "zbar0", "zbar1"]).unwrap();
        let t = TorusActionSpec::new(&c, vec![(0, 2), (1, 3)], vec![vec![0], vec![1]]).unwrap();
        let m = torus_metric(&t);
        assert!(m.is_positive_definite());
        assert!(m.is_invariant(&t.clone().into()).unwrap());
        // the formal identity is not torus invariant
        let id = InvariantMetric {
            matrix: Matrix::identity(4),
            ..m
        };
        assert!(!id.is_invariant(&t.into()).unwrap());
    }

    #[test]
    fn reynolds_projects_onto_invariants() {
        let c = Chart::coords(&["x", "y"]).unwrap();
        let swap: GroupAction = FiniteActionSpec::new(&c, vec![Matrix::from_i64_rows(&[&[0, 1], &[1, 0]])])
            .unwrap()
            .into();
        let f = crate::symexpr::parse_polynomial("x^2 + 3*y", c.vars()).unwrap();
        let r = swap.reynolds(&f).unwrap();
        assert_eq!(
            r,
            crate::symexpr::parse_polynomial("(x^2+y^2)/2 + 3*(x+y)/2", c.vars()).unwrap()
        );
    }
}
