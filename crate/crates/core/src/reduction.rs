//! Induced Poisson structures on fixed-point subspaces.
//!
//! A [`SplitContext`] fixes `T_N M = TN ⊕ E` through an adapted frame
//! `F = [basis(N) | basis(E)]`. Points of `N` are `x = B_N s`; the
//! projection along `E` is `s = (F⁻¹ x)[..k]`, and the first `k` rows of
//! `F⁻¹` span `E⁰`.

use std::cell::OnceCell;
use std::collections::HashSet;

use num_traits::Zero;
use thiserror::Error;

use crate::action::{
    axis_of, fixed_subspace, invariant_metric, is_poisson_action, orthogonal_complement, ActionCertificate,
    ActionError, GroupAction, InvariantMetric, LinearSubmanifold,
};
use crate::linalg::{intersection_dim, Matrix, Vector};
use crate::poisson::{bracket, evaluate, jacobi_defect, Chart, JacobiDefect, PoissonError, PoissonStructure};
use crate::sampling::{self, SeededRng};
use crate::symexpr::{Polynomial, RationalFunction, SymError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("action is not Poisson: {} failing element(s) or entries", .0.failures.len())]
    NotPoissonAction(Box<ActionCertificate>),
    #[error("fixed subspace is a single point")]
    FixedSetIsPoint,
    #[error("subspace and complement do not form a frame of the chart")]
    NotComplementary,
    #[error("sample point {0} does not lie on the subspace")]
    PointOffSubmanifold(usize),
    #[error("bivector has a pole on the subspace")]
    PoleOnSubmanifold,
    #[error("no pole-free sample points found on the subspace")]
    NoRegularPoints,
    #[error("mixed block entry ({}, {}) does not vanish on the subspace: {residual}", .entry.0, .entry.1)]
    InvalidSplit {
        entry: (usize, usize),
        residual: Box<RationalFunction>,
    },
    #[error("{0}")]
    ConstructionMismatch(Box<Mismatch>),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("split and extension brackets disagree for f = {f}, g = {g}: {via_split} vs {via_extension}")]
pub struct Mismatch {
    pub f: RationalFunction,
    pub g: RationalFunction,
    pub via_split: RationalFunction,
    pub via_extension: RationalFunction,
}

impl From<SymError> for ReductionError {
    fn from(e: SymError) -> Self {
        match e {
            SymError::Pole => ReductionError::PoleOnSubmanifold,
            other => ReductionError::Poisson(other.into()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SplitContext {
    pub poisson: PoissonStructure,
    pub n: LinearSubmanifold,
    pub e: LinearSubmanifold,
    pub metric: InvariantMetric,
    /// Columns: basis of `N`, then basis of `E`.
    pub frame: Matrix,
    frame_inv: Matrix,
    n_chart: Chart,
    action: Option<GroupAction>,
    /// `π^{ij}` restricted to `N`, as functions on `n_chart`.
    restricted: Vec<Vec<RationalFunction>>,
    induced: OnceCell<Result<PoissonStructure, ReductionError>>,
}

impl SplitContext {
    pub fn new(
        p: &PoissonStructure,
        n: LinearSubmanifold,
        e: LinearSubmanifold,
        metric: InvariantMetric,
    ) -> Result<Self, ReductionError> {
        let chart = p.chart();
        if &n.chart != chart || &e.chart != chart || &metric.chart != chart {
            return Err(PoissonError::ChartMismatch.into());
        }
        let dim = chart.dimension();
        if n.dimension() == 0 {
            return Err(ReductionError::FixedSetIsPoint);
        }
        if n.dimension() + e.dimension() != dim {
            return Err(ReductionError::NotComplementary);
        }
        let cols: Vec<Vector> = n.basis.iter().chain(&e.basis).cloned().collect();
        let frame = Matrix::from_columns(&cols, dim);
        let frame_inv = frame.inverse().ok_or(ReductionError::NotComplementary)?;
        let n_chart = n_chart_for(chart, &n)?;
        let mut ctx = SplitContext {
            poisson: p.clone(),
            n,
            e,
            metric,
            frame,
            frame_inv,
            n_chart,
            action: None,
            restricted: Vec::new(),
            induced: OnceCell::new(),
        };
        ctx.restricted = p
            .rows()
            .iter()
            .map(|row| row.iter().map(|f| ctx.restrict(f)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        Ok(ctx)
    }

    /// Group used to average extension perturbations.
    pub fn with_action(mut self, action: GroupAction) -> Self {
        self.action = Some(action);
        self
    }

    pub fn action(&self) -> Option<&GroupAction> {
        self.action.as_ref()
    }

    /// Chart on `N`: coordinates `s_k`, then the ambient parameters.
    pub fn n_chart(&self) -> &Chart {
        &self.n_chart
    }

    pub fn frame_inverse(&self) -> &Matrix {
        &self.frame_inv
    }

    /// Constant covectors spanning `E⁰`.
    pub fn e_annihilator(&self) -> Vec<Vector> {
        (0..self.n.dimension()).map(|k| self.frame_inv.row(k)).collect()
    }

    /// `f ∘ (s ↦ B_N s)`: substitutes the defining equations of `N`.
    pub fn restrict(&self, f: &RationalFunction) -> Result<RationalFunction, ReductionError> {
        let vars = self.n_chart.vars();
        let chart = self.poisson.chart();
        let k = self.n.dimension();
        let images: Vec<RationalFunction> = (0..chart.vars().len())
            .map(|i| {
                if i >= chart.dimension() {
                    return RationalFunction::var(vars, k + i - chart.dimension());
                }
                let mut p = Polynomial::zero(vars);
                for (s, b) in self.n.basis.iter().enumerate() {
                    if !b[i].is_zero() {
                        p = &p + &Polynomial::var(vars, s).scale(&b[i]);
                    }
                }
                RationalFunction::from_polynomial(p)
            })
            .collect();
        Ok(f.compose(vars, &images)?)
    }

    /// Canonical extension `f ∘ proj_N`, constant along `E`.
    pub fn extend(&self, f: &RationalFunction) -> Result<RationalFunction, ReductionError> {
        if f.vars() != self.n_chart.vars() {
            return Err(PoissonError::ChartMismatch.into());
        }
        let chart = self.poisson.chart();
        let vars = chart.vars();
        let k = self.n.dimension();
        let images: Vec<RationalFunction> = (0..self.n_chart.vars().len())
            .map(|s| {
                if s >= k {
                    return RationalFunction::var(vars, chart.dimension() + s - k);
                }
                let mut p = Polynomial::zero(vars);
                for i in 0..chart.dimension() {
                    let c = &self.frame_inv[(s, i)];
                    if !c.is_zero() {
                        p = &p + &Polynomial::var(vars, i).scale(c);
                    }
                }
                RationalFunction::from_polynomial(p)
            })
            .collect();
        Ok(f.compose(vars, &images)?)
    }

    /// Induced structure on `N`, computed once and Jacobi-verified.
    pub fn induced(&self) -> Result<&PoissonStructure, ReductionError> {
        self.induced
            .get_or_init(|| Ok(induced_candidate(self)?.verify()?))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Function on the full chart vanishing on `N` with zero differential
    /// there, averaged over the group when one is attached. Returns zero
    /// when no nonzero candidate turns up.
    pub fn perturbation(&self, rng: &mut SeededRng, first_order: bool) -> Result<Polynomial, ReductionError> {
        let chart = self.poisson.chart();
        let vars = chart.vars();
        let dim = chart.dimension();
        let eqs: Vec<Polynomial> = self.n.equations.iter().map(|eta| linear_form(vars, eta)).collect();
        if eqs.is_empty() {
            return Ok(Polynomial::zero(vars));
        }
        // a single equation factor is only safe after averaging
        let first_order = first_order && self.action.is_some();
        for _ in 0..200 {
            let h = sampling::polynomial(rng, vars, dim, 3, 2);
            let a = &eqs[rand::Rng::gen_range(rng, 0..eqs.len())];
            let mut base = &h * a;
            if !first_order {
                base = &base * &eqs[rand::Rng::gen_range(rng, 0..eqs.len())];
            }
            let p = match &self.action {
                Some(g) => g.reynolds(&base)?,
                None => base,
            };
            if !p.is_zero() {
                return Ok(p);
            }
        }
        Ok(Polynomial::zero(vars))
    }

    /// Random polynomial function on `N`.
    pub fn random_function(&self, rng: &mut SeededRng) -> RationalFunction {
        let vars = self.n_chart.vars();
        RationalFunction::from_polynomial(sampling::polynomial(rng, vars, self.n.dimension(), 3, 3))
    }
}

fn linear_form(vars: &crate::symexpr::VarSet, eta: &[num_rational::BigRational]) -> Polynomial {
    eta.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(Polynomial::zero(vars), |acc, (i, c)| {
            &acc + &Polynomial::var(vars, i).scale(c)
        })
}

/// Names basis vector `k` after the ambient coordinate when it is a unit
/// vector, `n{k+1}` otherwise; suffixes keep names distinct.
fn n_chart_for(chart: &Chart, n: &LinearSubmanifold) -> Result<Chart, ReductionError> {
    let mut taken: HashSet<String> = chart.parameter_names().iter().cloned().collect();
    let mut names = Vec::new();
    for (k, b) in n.basis.iter().enumerate() {
        let mut name = match axis_of(b) {
            Some(i) => chart.coordinate_names()[i].clone(),
            None => format!("n{}", k + 1),
        };
        while taken.contains(&name) {
            name.push('_');
        }
        taken.insert(name.clone());
        names.push(name);
    }
    Ok(Chart::new(&names, chart.parameter_names())?)
}

/// Per-point `dim(TN ∩ #(TN⁰))`; zero everywhere means the Dirac
/// condition holds at the sampled points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eq1Certificate {
    pub dimensions: Vec<usize>,
}

impl Eq1Certificate {
    pub fn passed(&self) -> bool {
        self.dimensions.iter().all(|&d| d == 0)
    }

    pub fn max_dimension(&self) -> usize {
        self.dimensions.iter().copied().max().unwrap_or(0)
    }
}

/// Points are full evaluation points: coordinates then parameter values.
pub fn check_eq1(
    p: &PoissonStructure,
    n: &LinearSubmanifold,
    points: &[Vector],
) -> Result<Eq1Certificate, ReductionError> {
    if &n.chart != p.chart() {
        return Err(PoissonError::ChartMismatch.into());
    }
    let dim = p.dimension();
    let mut dimensions = Vec::with_capacity(points.len());
    for (idx, x) in points.iter().enumerate() {
        if x.len() != p.chart().vars().len() || !n.contains(&x[..dim]) {
            return Err(ReductionError::PointOffSubmanifold(idx));
        }
        let m = evaluate(p, x)?;
        let images: Vec<Vector> = n.equations.iter().map(|eta| m.mul_vec(eta)).collect();
        dimensions.push(intersection_dim(&images, &n.basis, dim));
    }
    Ok(Eq1Certificate { dimensions })
}

/// Seeded rational points of `N` (with random parameter values) at which
/// `π` has no pole.
pub fn sample_points(
    p: &PoissonStructure,
    n: &LinearSubmanifold,
    count: usize,
    rng: &mut SeededRng,
) -> Result<Vec<Vector>, ReductionError> {
    let nparams = p.chart().parameter_names().len();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 50 * count.max(1) {
            return Err(ReductionError::NoRegularPoints);
        }
        let s: Vector = (0..n.dimension()).map(|_| sampling::rational(rng, 9, 5)).collect();
        let params: Vector = (0..nparams).map(|_| sampling::rational(rng, 9, 5)).collect();
        let x = p.chart().point(&n.point(&s), &params);
        match evaluate(p, &x) {
            Ok(_) => out.push(x),
            Err(PoissonError::Sym(SymError::Pole)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpCheck {
    pub covector: Vector,
    /// `E`-components of `#ξ` on `N`.
    pub residual: Vec<RationalFunction>,
}

impl SharpCheck {
    pub fn passed(&self) -> bool {
        self.residual.iter().all(RationalFunction::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpCertificate {
    pub checks: Vec<SharpCheck>,
}

impl SharpCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(SharpCheck::passed)
    }
}

/// Symbolic check of `#(E⁰) ⊂ TN` along `N`.
pub fn check_sharp_e0(ctx: &SplitContext) -> SharpCertificate {
    let dim = ctx.poisson.dimension();
    let k = ctx.n.dimension();
    let vars = ctx.n_chart.vars();
    let checks = ctx
        .e_annihilator()
        .into_iter()
        .map(|xi| {
            let v: Vec<RationalFunction> = (0..dim)
                .map(|i| combine(vars, (0..dim).map(|j| (&xi[j], &ctx.restricted[i][j]))))
                .collect();
            let residual = (k..dim)
                .map(|r| combine(vars, (0..dim).map(|i| (&ctx.frame_inv[(r, i)], &v[i]))))
                .collect();
            SharpCheck { covector: xi, residual }
        })
        .collect();
    SharpCertificate { checks }
}

fn combine<'a, I>(vars: &crate::symexpr::VarSet, terms: I) -> RationalFunction
where
    I: Iterator<Item = (&'a num_rational::BigRational, &'a RationalFunction)>,
{
    terms
        .filter(|(c, f)| !c.is_zero() && !f.is_zero())
        .fold(RationalFunction::zero(vars), |acc, (c, f)| &acc + &f.scale(c))
}

/// `F⁻¹ π F⁻ᵀ` on `N`, cut into blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub pi_n: Vec<Vec<RationalFunction>>,
    pub pi_e: Vec<Vec<RationalFunction>>,
    /// Rows indexed by `N`, columns by `E`.
    pub pi_mixed: Vec<Vec<RationalFunction>>,
}

impl Split {
    pub fn first_mixed_residual(&self) -> Option<((usize, usize), &RationalFunction)> {
        self.pi_mixed
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().enumerate().map(move |(b, f)| ((a, b), f)))
            .find(|(_, f)| !f.is_zero())
    }

    pub fn is_valid(&self) -> bool {
        self.first_mixed_residual().is_none()
    }
}

pub fn split_bivector(ctx: &SplitContext) -> Split {
    let dim = ctx.poisson.dimension();
    let k = ctx.n.dimension();
    let vars = ctx.n_chart.vars();
    let fi = &ctx.frame_inv;
    // half = F⁻¹ π
    let half: Vec<Vec<RationalFunction>> = (0..dim)
        .map(|a| {
            (0..dim)
                .map(|j| combine(vars, (0..dim).map(|i| (&fi[(a, i)], &ctx.restricted[i][j]))))
                .collect()
        })
        .collect();
    let full = |a: usize, b: usize| combine(vars, (0..dim).map(|j| (&fi[(b, j)], &half[a][j])));
    Split {
        pi_n: (0..k).map(|a| (0..k).map(|b| full(a, b)).collect()).collect(),
        pi_e: (k..dim).map(|a| (k..dim).map(|b| full(a, b)).collect()).collect(),
        pi_mixed: (0..k).map(|a| (k..dim).map(|b| full(a, b)).collect()).collect(),
    }
}

/// `N`-block of the split as a structure on `N`, not yet Jacobi-checked.
fn induced_candidate(ctx: &SplitContext) -> Result<PoissonStructure, ReductionError> {
    let split = split_bivector(ctx);
    if let Some(((a, b), f)) = split.first_mixed_residual() {
        return Err(ReductionError::InvalidSplit {
            entry: (a, ctx.n.dimension() + b),
            residual: Box::new(f.clone()),
        });
    }
    Ok(PoissonStructure::from_matrix(&ctx.n_chart, split.pi_n)?)
}

/// Induced structure on `N`; fails on an invalid split or a Jacobi defect.
pub fn induced_structure(ctx: &SplitContext) -> Result<PoissonStructure, ReductionError> {
    ctx.induced().cloned()
}

/// `{f̃, g̃}|_N` with canonical extensions, cross-checked against the
/// bracket of the induced structure. Disagreement aborts.
pub fn induced_bracket_via_extensions(
    ctx: &SplitContext,
    f: &RationalFunction,
    g: &RationalFunction,
) -> Result<RationalFunction, ReductionError> {
    let via_extension = ctx.restrict(&bracket(&ctx.poisson, &ctx.extend(f)?, &ctx.extend(g)?)?)?;
    let via_split = bracket(ctx.induced()?, f, g)?;
    if via_split != via_extension {
        return Err(ReductionError::ConstructionMismatch(Box::new(Mismatch {
            f: f.clone(),
            g: g.clone(),
            via_split,
            via_extension,
        })));
    }
    Ok(via_extension)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceFailure {
    pub trial: usize,
    pub perturbation_f: Polynomial,
    pub perturbation_g: Polynomial,
    pub value: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceCertificate {
    pub trials: usize,
    /// Trials in which at least one perturbation was nonzero.
    pub nontrivial: usize,
    pub canonical: RationalFunction,
    pub counterexample: Option<IndependenceFailure>,
}

impl IndependenceCertificate {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Perturbs both canonical extensions by functions vanishing on `N` and
/// compares the restricted brackets exactly. Odd trials use a single
/// defining-equation factor when a group is attached.
pub fn extension_independence_test(
    ctx: &SplitContext,
    f: &RationalFunction,
    g: &RationalFunction,
    trials: usize,
    seed: u64,
) -> Result<IndependenceCertificate, ReductionError> {
    let mut rng = sampling::seeded(seed);
    let ft = ctx.extend(f)?;
    let gt = ctx.extend(g)?;
    let canonical = ctx.restrict(&bracket(&ctx.poisson, &ft, &gt)?)?;
    let mut nontrivial = 0;
    for trial in 0..trials {
        let pf = ctx.perturbation(&mut rng, trial % 2 == 1)?;
        let pg = ctx.perturbation(&mut rng, trial % 2 == 1)?;
        if pf.is_zero() && pg.is_zero() {
            continue;
        }
        nontrivial += 1;
        let fp = &ft + &RationalFunction::from_polynomial(pf.clone());
        let gp = &gt + &RationalFunction::from_polynomial(pg.clone());
        let value = ctx.restrict(&bracket(&ctx.poisson, &fp, &gp)?)?;
        if value != canonical {
            return Ok(IndependenceCertificate {
                trials: trial + 1,
                nontrivial,
                canonical,
                counterexample: Some(IndependenceFailure {
                    trial,
                    perturbation_f: pf,
                    perturbation_g: pg,
                    value,
                }),
            });
        }
    }
    Ok(IndependenceCertificate {
        trials,
        nontrivial,
        canonical,
        counterexample: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOptions {
    pub seed: u64,
    pub points: usize,
    pub trials: usize,
    /// Random function pairs on which the two bracket constructions are compared.
    pub pairs: usize,
    /// Seed metric for averaging; identity (finite) or flat Hermitian (torus) when absent.
    pub metric_seed: Option<Matrix>,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            seed: 0,
            points: 100,
            trials: 20,
            pairs: 20,
            metric_seed: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub action: ActionCertificate,
    pub metric: InvariantMetric,
    pub fixed: LinearSubmanifold,
    pub complement: LinearSubmanifold,
    pub n_chart: Chart,
    pub sharp_e0: SharpCertificate,
    pub split: Split,
    /// Absent when the split is invalid.
    pub induced: Option<PoissonStructure>,
    /// Nonzero Jacobi defects of the induced structure.
    pub jacobi: Vec<JacobiDefect>,
    pub eq1: Eq1Certificate,
    /// Function pairs on which split and extension brackets agreed.
    pub agreement_pairs: usize,
    pub independence: Option<IndependenceCertificate>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.action.passed()
            && self.sharp_e0.passed()
            && self.split.is_valid()
            && self.induced.is_some()
            && self.jacobi.is_empty()
            && self.eq1.passed()
            && self.independence.as_ref().is_some_and(IndependenceCertificate::passed)
    }
}

/// Full pipeline: action check, invariant metric, `N = M^G`, `E = N^⊥`,
/// tangency of `#(E⁰)`, split, induced structure, Jacobi, Dirac condition
/// at sample points, agreement of both bracket constructions, and
/// extension-independence trials.
pub fn reduce_fixed_set(
    p: &PoissonStructure,
    action: &GroupAction,
    options: &ReductionOptions,
) -> Result<ReductionReport, ReductionError> {
    let cert = is_poisson_action(p, action)?;
    if !cert.passed() {
        return Err(ReductionError::NotPoissonAction(Box::new(cert)));
    }
    let metric = invariant_metric(action, options.metric_seed.as_ref())?;
    let fixed = fixed_subspace(action)?;
    let complement = orthogonal_complement(&fixed, &metric)?;
    let ctx = SplitContext::new(p, fixed.clone(), complement.clone(), metric.clone())?.with_action(action.clone());
    let mut rng = sampling::seeded(options.seed);

    let sharp_e0 = check_sharp_e0(&ctx);
    let split = split_bivector(&ctx);
    let points = sample_points(p, &fixed, options.points, &mut rng)?;
    let eq1 = check_eq1(p, &fixed, &points)?;

    let mut report = ReductionReport {
        action: cert,
        metric,
        fixed,
        complement,
        n_chart: ctx.n_chart().clone(),
        sharp_e0,
        split,
        induced: None,
        jacobi: Vec::new(),
        eq1,
        agreement_pairs: 0,
        independence: None,
    };
    if !report.split.is_valid() {
        return Ok(report);
    }
    let candidate = induced_candidate(&ctx)?;
    report.jacobi = jacobi_defect(&candidate)
        .into_iter()
        .filter(|d| !d.value.is_zero())
        .collect();
    report.induced = Some(candidate);
    if !report.jacobi.is_empty() {
        return Ok(report);
    }

    let k = ctx.n_chart().dimension();
    let coords: Vec<RationalFunction> = (0..k).map(|i| ctx.n_chart().coordinate(i)).collect();
    let mut pairs: Vec<(RationalFunction, RationalFunction)> = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            pairs.push((coords[a].clone(), coords[b].clone()));
        }
    }
    for _ in 0..options.pairs {
        pairs.push((ctx.random_function(&mut rng), ctx.random_function(&mut rng)));
    }
    for (f, g) in &pairs {
        induced_bracket_via_extensions(&ctx, f, g)?;
    }
    report.agreement_pairs = pairs.len();

    let f = ctx.random_function(&mut rng);
    let g = ctx.random_function(&mut rng);
    let trial_seed = rand::Rng::gen(&mut rng);
    report.independence = Some(extension_independence_test(&ctx, &f, &g, options.trials, trial_seed)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{FiniteActionSpec, MetricKind};
    use crate::symexpr::int;

    fn r4() -> PoissonStructure {
        let c = Chart::coords(&["q1", "p1", "q2", "p2"]).unwrap();
        PoissonStructure::from_table(&c, &[("q1", "p1", "1"), ("q2", "p2", "1")]).unwrap()
    }

    fn so3() -> PoissonStructure {
        let c = Chart::coords(&["x", "y", "z"]).unwrap();
        PoissonStructure::from_table(&c, &[("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")]).unwrap()
    }

    fn context(p: &PoissonStructure, g: Matrix) -> SplitContext {
        let action: GroupAction = FiniteActionSpec::new(p.chart(), vec![g]).unwrap().into();
        let metric = invariant_metric(&action, None).unwrap();
        let n = fixed_subspace(&action).unwrap();
        let e = orthogonal_complement(&n, &metric).unwrap();
        SplitContext::new(p, n, e, metric).unwrap().with_action(action)
    }

    fn lagrangian() -> SplitContext {
        let c = Chart::coords(&["q", "p"]).unwrap();
        let p = PoissonStructure::from_table(&c, &[("q", "p", "1")]).unwrap();
        let n = LinearSubmanifold::coordinate_span(&c, &[0]).unwrap();
        let e = LinearSubmanifold::coordinate_span(&c, &[1]).unwrap();
        let metric = InvariantMetric {
            chart: c,
            matrix: Matrix::identity(2),
            kind: MetricKind::Euclidean,
        };
        SplitContext::new(&p, n, e, metric).unwrap()
    }

    fn z2() -> Matrix {
        Matrix::diagonal(&[int(1), int(1), int(-1), int(-1)])
    }

    fn inv3() -> Matrix {
        Matrix::diagonal(&[int(-1), int(-1), int(1)])
    }

    #[test]
    fn eq1_examples() {
        let ctx = context(&r4(), z2());
        let mut rng = sampling::seeded(1);
        let pts = sample_points(&ctx.poisson, &ctx.n, 10, &mut rng).unwrap();
        assert!(check_eq1(&ctx.poisson, &ctx.n, &pts).unwrap().passed());

        let lag = lagrangian();
        let pts = sample_points(&lag.poisson, &lag.n, 10, &mut rng).unwrap();
        assert_eq!(check_eq1(&lag.poisson, &lag.n, &pts).unwrap().dimensions, vec![1; 10]);

        let ctx = context(&so3(), inv3());
        let cert = check_eq1(&ctx.poisson, &ctx.n, &[vec![int(0), int(0), int(1)]]).unwrap();
        assert_eq!(cert.dimensions, vec![0]);
        assert_eq!(
            check_eq1(&ctx.poisson, &ctx.n, &[vec![int(1), int(0), int(1)]]),
            Err(ReductionError::PointOffSubmanifold(0))
        );
    }

    #[test]
    fn sharp_e0_examples() {
        let ctx = context(&r4(), z2());
        let cert = check_sharp_e0(&ctx);
        assert_eq!(cert.checks.len(), 2);
        assert!(cert.passed());

        assert!(check_sharp_e0(&context(&so3(), inv3())).passed());

        let cert = check_sharp_e0(&lagrangian());
        assert!(!cert.passed());
        // #dq = −∂p, a pure E component
        assert_eq!(cert.checks[0].residual[0].to_string(), "-1");
    }

    #[test]
    fn split_examples() {
        let ctx = context(&r4(), z2());
        let s = split_bivector(&ctx);
        let vars = ctx.n_chart().vars();
        let one = RationalFunction::one(vars);
        let zero = RationalFunction::zero(vars);
        assert_eq!(s.pi_n, vec![vec![zero.clone(), one.clone()], vec![-&one, zero.clone()]]);
        assert_eq!(s.pi_e, s.pi_n);
        assert!(s.is_valid());

        let s = split_bivector(&context(&so3(), inv3()));
        assert!(s.pi_n[0][0].is_zero());
        assert!(s.is_valid());

        assert!(!split_bivector(&lagrangian()).is_valid());
        assert!(matches!(
            induced_structure(&lagrangian()),
            Err(ReductionError::InvalidSplit { .. })
        ));
    }

    #[test]
    fn induced_examples() {
        let ctx = context(&r4(), z2());
        let ind = induced_structure(&ctx).unwrap();
        assert_eq!(ind.chart().coordinate_names(), ["q1", "p1"]);
        assert_eq!(ind.entry(0, 1).to_string(), "1");
        let ind = induced_structure(&context(&so3(), inv3())).unwrap();
        assert!(ind.is_zero());
        assert_eq!(ind.chart().coordinate_names(), ["z"]);
    }

    #[test]
    fn extension_examples() {
        let ctx = context(&r4(), z2());
        let q1 = ctx.n_chart().coordinate(0);
        let p1 = ctx.n_chart().coordinate(1);
        assert_eq!(induced_bracket_via_extensions(&ctx, &q1, &p1).unwrap().to_string(), "1");
        assert!(induced_bracket_via_extensions(&ctx, &q1, &q1).unwrap().is_zero());

        let ctx = context(&so3(), inv3());
        let z = ctx.n_chart().coordinate(0);
        assert!(induced_bracket_via_extensions(&ctx, &z, &z.pow(2)).unwrap().is_zero());
    }

    #[test]
    fn hand_perturbation_does_not_change_the_bracket() {
        let ctx = context(&r4(), z2());
        let vars = ctx.poisson.chart().vars().clone();
        let q1 = ctx.extend(&ctx.n_chart().coordinate(0)).unwrap();
        let p1 = ctx.extend(&ctx.n_chart().coordinate(1)).unwrap();
        // h invariant, h·q2² vanishes to second order on N
        let pert = crate::symexpr::parse_expr("(q1^2 + p2^2 + 3) * q2^2", &vars).unwrap();
        let b = bracket(&ctx.poisson, &(&q1 + &pert), &p1).unwrap();
        assert_eq!(ctx.restrict(&b).unwrap().to_string(), "1");
    }

    #[test]
    fn independence_trials() {
        let ctx = context(&so3(), inv3());
        let z = ctx.n_chart().coordinate(0);
        let cert = extension_independence_test(&ctx, &z, &z.pow(3), 20, 7).unwrap();
        assert!(cert.passed());
        assert!(cert.canonical.is_zero());
        assert!(cert.nontrivial > 0);

        let ctx = context(&r4(), z2());
        let f = ctx.n_chart().parse("q1^2*p1 + 1/3*q1").unwrap();
        let g = ctx.n_chart().parse("p1^3 - q1").unwrap();
        let cert = extension_independence_test(&ctx, &f, &g, 20, 11).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.nontrivial, 20);
    }

    #[test]
    fn pipeline_examples() {
        let opts = ReductionOptions {
            points: 20,
            trials: 6,
            pairs: 4,
            ..Default::default()
        };
        let p = r4();
        let action: GroupAction = FiniteActionSpec::new(p.chart(), vec![z2()]).unwrap().into();
        let rep = reduce_fixed_set(&p, &action, &opts).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.induced.unwrap().entry(0, 1).to_string(), "1");

        let p = so3();
        let action: GroupAction = FiniteActionSpec::new(p.chart(), vec![inv3()]).unwrap().into();
        let rep = reduce_fixed_set(&p, &action, &opts).unwrap();
        assert!(rep.passed());
        assert!(rep.induced.unwrap().is_zero());

        let c = Chart::coords(&["q", "p"]).unwrap();
        let plane = PoissonStructure::from_table(&c, &[("q", "p", "1")]).unwrap();
        let flip: GroupAction = FiniteActionSpec::new(&c, vec![Matrix::diagonal(&[int(1), int(-1)])])
            .unwrap()
            .into();
        assert!(matches!(
            reduce_fixed_set(&plane, &flip, &opts),
            Err(ReductionError::NotPoissonAction(_))
        ));
    }

    #[test]
    fn non_axis_fixed_set() {
        // swap (x1,y1) <-> (x2,y2) on two symplectic planes: N is the diagonal
        let c = Chart::coords(&["x1", "y1", "x2", "y2"]).unwrap();
        let p = PoissonStructure::from_table(&c, &[("x1", "y1", "1"), ("x2", "y2", "1")]).unwrap();
        let g = Matrix::from_i64_rows(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let action: GroupAction = FiniteActionSpec::new(&c, vec![g]).unwrap().into();
        let opts = ReductionOptions {
            points: 10,
            trials: 10,
            pairs: 5,
            ..Default::default()
        };
        let rep = reduce_fixed_set(&p, &action, &opts).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let ind = rep.induced.unwrap();
        assert_eq!(ind.chart().coordinate_names(), ["n1", "n2"]);
        // pulling back along s ↦ (s1, s2, s1, s2) and projecting orthogonally gives 1/2
        assert_eq!(ind.entry(0, 1).to_string(), "1/2");
    }
}
