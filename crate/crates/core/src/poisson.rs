//! Poisson structures on coordinate charts.
//!
//! Conventions are fixed once for the whole crate:
//!
//! * `{f, g} = Σ_{i,j} π^{ij} ∂_i f ∂_j g`, so `{x_i, x_j} = π^{ij}`;
//! * `(#ξ)^i = Σ_j π^{ij} ξ_j`;
//! * `X_f(g) = {f, g}`, which makes `X_f = −#(df)` under the two rules above.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{Matrix, Vector};
use crate::symexpr::{Polynomial, RationalFunction, SymError, VarSet, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error("operands belong to different charts")]
    ChartMismatch,
    #[error("chart must have at least one coordinate")]
    EmptyChart,
    #[error("duplicate variable name '{0}'")]
    DuplicateName(String),
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("linear map is singular")]
    Singular,
    #[error("Jacobi identity fails for coordinates ({}, {}, {}): defect {}", .0.triple.0, .0.triple.1, .0.triple.2, .0.value)]
    Jacobi(Box<JacobiDefect>),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Coordinates `vars[0..dim]` followed by constant parameters `vars[dim..]`.
/// Derivatives and brackets only act on the coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    vars: VarSet,
    dim: usize,
}

impl Chart {
    pub fn new<S: AsRef<str>>(coords: &[S], params: &[S]) -> Result<Self, PoissonError> {
        if coords.is_empty() {
            return Err(PoissonError::EmptyChart);
        }
        let names = coords.iter().chain(params).map(|s| s.as_ref().to_string());
        let vars = VarSet::try_new(names).map_err(PoissonError::DuplicateName)?;
        Ok(Chart {
            vars,
            dim: coords.len(),
        })
    }

    pub fn coords<S: AsRef<str>>(coords: &[S]) -> Result<Self, PoissonError> {
        Self::new(coords, &[])
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn coordinates(&self) -> Vec<Variable> {
        (0..self.dim).map(|i| self.vars.variable(i)).collect()
    }

    pub fn coordinate_names(&self) -> &[String] {
        &self.vars.names()[..self.dim]
    }

    pub fn parameter_names(&self) -> &[String] {
        &self.vars.names()[self.dim..]
    }

    pub fn coordinate(&self, i: usize) -> RationalFunction {
        assert!(i < self.dim);
        RationalFunction::var(&self.vars, i)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.index_of(name).filter(|&i| i < self.dim)
    }

    pub fn parse(&self, text: &str) -> Result<RationalFunction, SymError> {
        crate::symexpr::parse_expr(text, &self.vars)
    }

    /// Full evaluation point from coordinate values and parameter values.
    pub fn point(&self, coords: &[BigRational], params: &[BigRational]) -> Vector {
        assert_eq!(coords.len(), self.dim);
        assert_eq!(params.len(), self.vars.len() - self.dim);
        coords.iter().chain(params).cloned().collect()
    }

    fn check(&self, f: &RationalFunction) -> Result<(), PoissonError> {
        if f.vars() == &self.vars {
            Ok(())
        } else {
            Err(PoissonError::ChartMismatch)
        }
    }
}

/// Components of a vector field in the coordinate frame `∂_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFieldExpr {
    pub chart: Chart,
    pub components: Vec<RationalFunction>,
}

impl VectorFieldExpr {
    /// `X(g) = Σ_i X^i ∂_i g`.
    pub fn apply(&self, g: &RationalFunction) -> Result<RationalFunction, PoissonError> {
        self.chart.check(g)?;
        Ok(sum(
            &self.chart.vars,
            self.components
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| c * &g.derivative(i)),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RationalFunction::is_zero)
    }
}

/// Components of a one-form in the coordinate coframe `dx_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovectorExpr {
    pub chart: Chart,
    pub components: Vec<RationalFunction>,
}

impl CovectorExpr {
    pub fn differential(chart: &Chart, f: &RationalFunction) -> Result<Self, PoissonError> {
        chart.check(f)?;
        Ok(CovectorExpr {
            chart: chart.clone(),
            components: (0..chart.dim).map(|i| f.derivative(i)).collect(),
        })
    }

    pub fn constant(chart: &Chart, xi: &[BigRational]) -> Result<Self, PoissonError> {
        if xi.len() != chart.dim {
            return Err(PoissonError::DimensionMismatch {
                expected: chart.dim,
                got: xi.len(),
            });
        }
        Ok(CovectorExpr {
            chart: chart.clone(),
            components: xi
                .iter()
                .map(|c| RationalFunction::constant(&chart.vars, c.clone()))
                .collect(),
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        CovectorExpr {
            chart: chart.clone(),
            components: vec![RationalFunction::zero(&chart.vars); chart.dim],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDefect {
    pub triple: (usize, usize, usize),
    pub value: RationalFunction,
}

/// A skew matrix of rational functions `π^{ij}` over a chart.
#[derive(Clone, PartialEq, Eq)]
pub struct PoissonStructure {
    chart: Chart,
    pi: Vec<RationalFunction>,
    verified: bool,
}

impl PoissonStructure {
    pub fn zero(chart: &Chart) -> Self {
        let n = chart.dim;
        PoissonStructure {
            chart: chart.clone(),
            pi: vec![RationalFunction::zero(&chart.vars); n * n],
            verified: true,
        }
    }

    /// Builds from a full matrix, rejecting anything that is not exactly skew.
    pub fn from_matrix(chart: &Chart, rows: Vec<Vec<RationalFunction>>) -> Result<Self, PoissonError> {
        let n = chart.dim;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(PoissonError::DimensionMismatch {
                expected: n,
                got: rows.len(),
            });
        }
        let pi: Vec<RationalFunction> = rows.into_iter().flatten().collect();
        for f in &pi {
            chart.check(f)?;
        }
        for i in 0..n {
            for j in i..n {
                if pi[i * n + j] != -&pi[j * n + i] {
                    return Err(PoissonError::NotSkew(i, j));
                }
            }
        }
        Ok(PoissonStructure {
            chart: chart.clone(),
            pi,
            verified: false,
        })
    }

    /// Builds from entries `(i, j, π^{ij})`; the mirrored entry is implied.
    pub fn from_entries<I>(chart: &Chart, entries: I) -> Result<Self, PoissonError>
    where
        I: IntoIterator<Item = (usize, usize, RationalFunction)>,
    {
        let mut p = Self::zero(chart);
        p.verified = false;
        let n = chart.dim;
        for (i, j, f) in entries {
            chart.check(&f)?;
            if i >= n || j >= n {
                return Err(PoissonError::DimensionMismatch {
                    expected: n,
                    got: i.max(j) + 1,
                });
            }
            if i == j {
                if !f.is_zero() {
                    return Err(PoissonError::NotSkew(i, j));
                }
                continue;
            }
            p.pi[j * n + i] = -&f;
            p.pi[i * n + j] = f;
        }
        Ok(p)
    }

    /// Entries given as expression strings keyed by coordinate names.
    pub fn from_table(chart: &Chart, table: &[(&str, &str, &str)]) -> Result<Self, PoissonError> {
        let mut entries = Vec::new();
        for (a, b, expr) in table {
            let i = chart.index_of(a).ok_or_else(|| SymError::UnknownVariable {
                name: a.to_string(),
                pos: 0,
            })?;
            let j = chart.index_of(b).ok_or_else(|| SymError::UnknownVariable {
                name: b.to_string(),
                pos: 0,
            })?;
            entries.push((i, j, chart.parse(expr)?));
        }
        Self::from_entries(chart, entries)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dimension(&self) -> usize {
        self.chart.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFunction {
        &self.pi[i * self.chart.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<RationalFunction>> {
        self.pi.chunks(self.chart.dim).map(<[_]>::to_vec).collect()
    }

    /// Nonzero entries above the diagonal, in row-major order.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, &RationalFunction)> {
        let n = self.chart.dim;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .map(move |(i, j)| (i, j, self.entry(i, j)))
            .filter(|(_, _, f)| !f.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.pi.iter().all(RationalFunction::is_zero)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Runs the symbolic Jacobi check and marks the structure verified.
    pub fn verify(mut self) -> Result<Self, PoissonError> {
        if let Some(d) = jacobi_defect(&self).into_iter().find(|d| !d.value.is_zero()) {
            return Err(PoissonError::Jacobi(Box::new(d)));
        }
        self.verified = true;
        Ok(self)
    }
}

impl fmt::Debug for PoissonStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PoissonStructure {} {{", self.chart.vars)?;
        for (i, j, e) in self.upper_entries() {
            write!(
                f,
                " {{{},{}}} = {};",
                self.chart.vars.name(i),
                self.chart.vars.name(j),
                e
            )?;
        }
        write!(f, " }}")
    }
}

fn sum<I: Iterator<Item = RationalFunction>>(vars: &VarSet, it: I) -> RationalFunction {
    it.fold(RationalFunction::zero(vars), |acc, f| &acc + &f)
}

/// `{f, g} = Σ_{i<j} π^{ij} (∂_i f ∂_j g − ∂_j f ∂_i g)`.
pub fn bracket(
    p: &PoissonStructure,
    f: &RationalFunction,
    g: &RationalFunction,
) -> Result<RationalFunction, PoissonError> {
    p.chart.check(f)?;
    p.chart.check(g)?;
    let n = p.chart.dim;
    let df: Vec<RationalFunction> = (0..n).map(|i| f.derivative(i)).collect();
    let dg: Vec<RationalFunction> = (0..n).map(|i| g.derivative(i)).collect();
    let mut acc = RationalFunction::zero(&p.chart.vars);
    for (i, j, pij) in p.upper_entries() {
        let a = &df[i] * &dg[j];
        let b = &df[j] * &dg[i];
        let inner = &a - &b;
        if !inner.is_zero() {
            acc = &acc + &(pij * &inner);
        }
    }
    Ok(acc)
}

/// `(#ξ)^i = Σ_j π^{ij} ξ_j`.
pub fn sharp(p: &PoissonStructure, xi: &CovectorExpr) -> Result<VectorFieldExpr, PoissonError> {
    if xi.chart != p.chart {
        return Err(PoissonError::ChartMismatch);
    }
    let n = p.chart.dim;
    let components = (0..n)
        .map(|i| {
            sum(
                &p.chart.vars,
                (0..n)
                    .filter(|&j| !p.entry(i, j).is_zero() && !xi.components[j].is_zero())
                    .map(|j| p.entry(i, j) * &xi.components[j]),
            )
        })
        .collect();
    Ok(VectorFieldExpr {
        chart: p.chart.clone(),
        components,
    })
}

/// Hamiltonian vector field normalized by `X_f(g) = {f, g}`, i.e.
/// `X_f^j = Σ_i π^{ij} ∂_i f = −(#df)^j`.
pub fn hamiltonian_vf(p: &PoissonStructure, f: &RationalFunction) -> Result<VectorFieldExpr, PoissonError> {
    let df = CovectorExpr::differential(&p.chart, f)?;
    let s = sharp(p, &df)?;
    Ok(VectorFieldExpr {
        chart: s.chart,
        components: s.components.into_iter().map(|c| -c).collect(),
    })
}

/// Cyclic sums `Σ_l π^{il} ∂_l π^{jk} + π^{jl} ∂_l π^{ki} + π^{kl} ∂_l π^{ij}`
/// for every coordinate triple `i < j < k`.
pub fn jacobi_defect(p: &PoissonStructure) -> Vec<JacobiDefect> {
    let n = p.chart.dim;
    let vars = &p.chart.vars;
    let term = |a: usize, b: usize, c: usize| -> RationalFunction {
        let target = p.entry(b, c);
        if target.is_zero() {
            return RationalFunction::zero(vars);
        }
        sum(
            vars,
            (0..n)
                .filter(|&l| !p.entry(a, l).is_zero())
                .map(|l| p.entry(a, l) * &target.derivative(l)),
        )
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let value = &(&term(i, j, k) + &term(j, k, i)) + &term(k, i, j);
                out.push(JacobiDefect {
                    triple: (i, j, k),
                    value,
                });
            }
        }
    }
    out
}

pub fn is_poisson(p: &PoissonStructure) -> bool {
    jacobi_defect(p).iter().all(|d| d.value.is_zero())
}

/// Pushforward along the linear map `x ↦ T x`: `π'(x) = T π(T⁻¹ x) Tᵀ`.
pub fn pushforward_linear(p: &PoissonStructure, t: &Matrix) -> Result<PoissonStructure, PoissonError> {
    let n = p.chart.dim;
    if !t.is_square() || t.rows() != n {
        return Err(PoissonError::DimensionMismatch {
            expected: n,
            got: t.rows(),
        });
    }
    let tinv = t.inverse().ok_or(PoissonError::Singular)?;
    let pulled = substitute_linear(p, &tinv);
    let vars = &p.chart.vars;
    let mut out = PoissonStructure::zero(&p.chart);
    out.verified = false;
    for a in 0..n {
        for b in a + 1..n {
            let mut acc = RationalFunction::zero(vars);
            for (i, j, e) in pulled
                .iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, e)| (i, j, e)))
            {
                if e.is_zero() || t[(a, i)].is_zero() || t[(b, j)].is_zero() {
                    continue;
                }
                acc = &acc + &e.scale(&(&t[(a, i)] * &t[(b, j)]));
            }
            out.pi[b * n + a] = -&acc;
            out.pi[a * n + b] = acc;
        }
    }
    Ok(out)
}

/// Entries of `π` composed with `x ↦ M x` on the coordinates.
fn substitute_linear(p: &PoissonStructure, m: &Matrix) -> Vec<Vec<RationalFunction>> {
    let vars = &p.chart.vars;
    let images = linear_images(&p.chart, m);
    p.rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| {
                    if e.is_zero() {
                        e
                    } else {
                        e.compose(vars, &images)
                            .expect("linear change of variables has no poles")
                    }
                })
                .collect()
        })
        .collect()
}

/// Images `x_i ↦ Σ_j M_{ij} x_j` for coordinates, identity on parameters.
pub fn linear_images(chart: &Chart, m: &Matrix) -> Vec<RationalFunction> {
    let vars = &chart.vars;
    (0..vars.len())
        .map(|i| {
            if i >= chart.dim {
                return RationalFunction::var(vars, i);
            }
            let mut poly = Polynomial::zero(vars);
            for j in 0..chart.dim {
                if !m[(i, j)].is_zero() {
                    poly = &poly + &Polynomial::var(vars, j).scale(&m[(i, j)]);
                }
            }
            RationalFunction::from_polynomial(poly)
        })
        .collect()
}

/// Rank of `π` evaluated at `point` (coordinates followed by parameter values).
pub fn rank_at(p: &PoissonStructure, point: &[BigRational]) -> Result<usize, PoissonError> {
    Ok(evaluate(p, point)?.rank())
}

pub fn evaluate(p: &PoissonStructure, point: &[BigRational]) -> Result<Matrix, PoissonError> {
    let n = p.chart.dim;
    if point.len() != p.chart.vars.len() {
        return Err(PoissonError::DimensionMismatch {
            expected: p.chart.vars.len(),
            got: point.len(),
        });
    }
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let e = p.entry(i, j);
            m[(i, j)] = if e.is_zero() {
                BigRational::zero()
            } else {
                e.eval_at(point)?
            };
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{int, rat};

    fn plane() -> PoissonStructure {
        let c = Chart::coords(&["q", "p"]).unwrap();
        PoissonStructure::from_table(&c, &[("q", "p", "1")]).unwrap()
    }

    fn so3() -> PoissonStructure {
        let c = Chart::coords(&["x", "y", "z"]).unwrap();
        PoissonStructure::from_table(&c, &[("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")]).unwrap()
    }

    #[test]
    fn canonical_bracket() {
        let p = plane();
        let c = p.chart().clone();
        assert_eq!(
            bracket(&p, &c.coordinate(0), &c.coordinate(1)).unwrap(),
            RationalFunction::one(c.vars())
        );
    }

    #[test]
    fn quadratic_bracket_with_symbolic_coefficient() {
        let c = Chart::new(&["z0", "z1"], &["a01"]).unwrap();
        let p = PoissonStructure::from_table(&c, &[("z0", "z1", "a01*z0*z1")]).unwrap();
        let b = bracket(&p, &c.coordinate(0), &c.coordinate(1)).unwrap();
        assert_eq!(b, c.parse("a01*z0*z1").unwrap());
    }

    #[test]
    fn so3_bracket_of_square() {
        let p = so3();
        let c = p.chart().clone();
        let b = bracket(&p, &c.parse("x^2").unwrap(), &c.parse("y").unwrap()).unwrap();
        assert_eq!(b, c.parse("2*x*z").unwrap());
    }

    #[test]
    fn sharp_examples() {
        let p = plane();
        let c = p.chart().clone();
        let dq = CovectorExpr::constant(&c, &[int(1), int(0)]).unwrap();
        let v = sharp(&p, &dq).unwrap();
        assert_eq!(
            v.components,
            vec![
                RationalFunction::zero(c.vars()),
                RationalFunction::from_int(c.vars(), -1)
            ]
        );

        let s = so3();
        let c = s.chart().clone();
        let dx = CovectorExpr::constant(&c, &[int(1), int(0), int(0)]).unwrap();
        let v = sharp(&s, &dx).unwrap();
        assert_eq!(
            v.components,
            vec![c.parse("0").unwrap(), c.parse("-z").unwrap(), c.parse("y").unwrap()]
        );

        assert!(sharp(&s, &CovectorExpr::zero(&c)).unwrap().is_zero());
    }

    #[test]
    fn hamiltonian_of_kinetic_energy() {
        let p = plane();
        let c = p.chart().clone();
        let x = hamiltonian_vf(&p, &c.parse("p^2/2").unwrap()).unwrap();
        assert_eq!(x.components, vec![c.parse("-p").unwrap(), c.parse("0").unwrap()]);
        let g = c.parse("q^3*p").unwrap();
        let f = c.parse("p^2/2").unwrap();
        assert_eq!(x.apply(&g).unwrap(), bracket(&p, &f, &g).unwrap());
        assert!(hamiltonian_vf(&p, &c.parse("7").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn hamiltonian_on_quadratic_structure() {
        let c = Chart::new(&["z0", "z1"], &["a01"]).unwrap();
        let p = PoissonStructure::from_table(&c, &[("z0", "z1", "a01*z0*z1")]).unwrap();
        let x = hamiltonian_vf(&p, &c.coordinate(0)).unwrap();
        assert!(x.components[0].is_zero());
        assert_eq!(x.components[1], c.parse("a01*z0*z1").unwrap());
        let s = sharp(&p, &CovectorExpr::differential(&c, &c.coordinate(0)).unwrap()).unwrap();
        assert_eq!(s.components[1], c.parse("-a01*z0*z1").unwrap());
    }

    #[test]
    fn jacobi_examples() {
        assert!(is_poisson(&so3()));
        let c = Chart::coords(&["x", "y", "z", "w"]).unwrap();
        let k = PoissonStructure::from_table(&c, &[("x", "y", "3"), ("x", "w", "-1/2"), ("z", "w", "5")]).unwrap();
        assert!(is_poisson(&k));
        let c = Chart::coords(&["x", "y", "z"]).unwrap();
        let two = PoissonStructure::from_table(&c, &[("x", "y", "x")]).unwrap();
        assert!(is_poisson(&two));
        let bad = PoissonStructure::from_table(&c, &[("x", "y", "y^2"), ("x", "z", "z"), ("y", "z", "x")]).unwrap();
        let d = jacobi_defect(&bad);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].value, c.parse("-x-2*x*y").unwrap());
        assert!(matches!(bad.verify(), Err(PoissonError::Jacobi(_))));
    }

    #[test]
    fn pushforward_examples() {
        let p = plane();
        assert_eq!(pushforward_linear(&p, &Matrix::identity(2)).unwrap().rows(), p.rows());
        let d = Matrix::diagonal(&[int(2), rat(1, 2)]);
        assert_eq!(pushforward_linear(&p, &d).unwrap().rows(), p.rows());
        let flip = Matrix::diagonal(&[int(1), int(-1)]);
        let q = pushforward_linear(&p, &flip).unwrap();
        assert_eq!(*q.entry(0, 1), RationalFunction::from_int(p.chart().vars(), -1));
        assert!(matches!(
            pushforward_linear(&p, &Matrix::zeros(2, 2)),
            Err(PoissonError::Singular)
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_at(&plane(), &[int(3), rat(-1, 7)]).unwrap(), 2);
        assert_eq!(rank_at(&so3(), &[int(0), int(0), int(0)]).unwrap(), 0);
        assert_eq!(rank_at(&so3(), &[int(0), int(0), int(1)]).unwrap(), 2);
    }

    #[test]
    fn non_skew_rejected() {
        let c = Chart::coords(&["x", "y"]).unwrap();
        let one = RationalFunction::one(c.vars());
        let rows = vec![
            vec![one.clone(), one.clone()],
            vec![-&one, RationalFunction::zero(c.vars())],
        ];
        assert!(matches!(
            PoissonStructure::from_matrix(&c, rows),
            Err(PoissonError::NotSkew(0, 0))
        ));
    }
}
