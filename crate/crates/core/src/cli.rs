//! Command implementations behind the `poisson-fixset` binary. Each command
//! takes the problem text and returns a [`Report`]; the binary only handles
//! argument parsing, file reading and printing.

use thiserror::Error;

use crate::action::{
    fixed_subspace, invariant_metric, is_poisson_action, orthogonal_complement, ActionCertificate, ActionFailure,
    GroupAction, LinearSubmanifold,
};
use crate::linalg::{Matrix, Vector};
use crate::poisson::{jacobi_defect, Chart, PoissonStructure};
use crate::problem::{InputError, ProblemFile};
use crate::reduction::{
    check_eq1, check_sharp_e0, reduce_fixed_set, sample_points, ReductionError, ReductionOptions, SplitContext,
};
use crate::report::{Report, Status, EXIT_INPUT, EXIT_INTERNAL};
use crate::sampling;
use crate::simplex::{
    check_face_stratification, derive_simplex_bracket, enumerate_faces, face_structure, format_simplex_entry,
    simplex_bracket_unverified, FaceDescriptor, SimplexError, SkewParamMatrix,
};

pub const DEFAULT_POINTS: usize = 100;
pub const DEFAULT_TRIALS: usize = 20;
/// Largest `n` accepted with formal `a_ij`.
pub const SYMBOLIC_N_LIMIT: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("internal abort: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

/// Global flags; `None` falls back to the file's `[params]`, then defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub points: Option<usize>,
    pub trials: Option<usize>,
}

struct Effective {
    seed: u64,
    points: usize,
    trials: usize,
}

fn effective(opts: &RunOptions, pf: &ProblemFile) -> Effective {
    Effective {
        seed: opts.seed.or(pf.params.seed).unwrap_or(0),
        points: opts.points.or(pf.params.points).unwrap_or(DEFAULT_POINTS),
        trials: opts.trials.or(pf.params.trials).unwrap_or(DEFAULT_TRIALS),
    }
}

fn vector(v: &Vector) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn vectors(vs: &[Vector]) -> String {
    if vs.is_empty() {
        return "{}".into();
    }
    vs.iter().map(vector).collect::<Vec<_>>().join(" ")
}

fn triple_name(chart: &Chart, (i, j, k): (usize, usize, usize)) -> String {
    let n = chart.coordinate_names();
    format!("{},{},{}", n[i], n[j], n[k])
}

fn pair_name(chart: &Chart, i: usize, j: usize) -> String {
    let n = chart.coordinate_names();
    format!("{},{}", n[i], n[j])
}

fn table_lines(report: &mut Report, prefix: &str, p: &PoissonStructure) {
    let chart = p.chart();
    for (i, j, e) in p.upper_entries().filter(|(_, _, e)| !e.is_zero()) {
        report.key(format!("{prefix}.{{{}}}", pair_name(chart, i, j)), e);
    }
}

fn load(text: &str) -> Result<(ProblemFile, PoissonStructure), CliError> {
    let pf = ProblemFile::parse(text)?;
    if !pf.has_chart() {
        return Err(input("problem needs a [chart] section with coords"));
    }
    let p = pf.structure()?;
    Ok((pf, p))
}

fn load_action(pf: &ProblemFile, p: &PoissonStructure) -> Result<(GroupAction, Option<Matrix>), CliError> {
    pf.group_action(p.chart())?
        .ok_or_else(|| input("problem needs an [action] or [torus] section"))
}

/// `jacobi`: PASS iff every Jacobi defect vanishes.
pub fn cmd_jacobi(text: &str) -> Result<Report, CliError> {
    let (_, p) = load(text)?;
    let mut r = Report::new("jacobi", text);
    let chart = p.chart();
    r.line(format!("chart: {}", chart.vars()));
    let defects = jacobi_defect(&p);
    let bad: Vec<_> = defects.iter().filter(|d| !d.value.is_zero()).collect();
    r.line(format!("triples checked: {}", defects.len()));
    r.key("triples", defects.len());
    r.key("nonzero_defects", bad.len());
    for d in &bad {
        let t = triple_name(chart, d.triple);
        r.line(format!("defect {{{t}}}: {}", d.value));
        r.key(format!("defect.{{{t}}}"), &d.value);
    }
    r.check("jacobi", bad.is_empty());
    Ok(r)
}

fn describe_action(r: &mut Report, action: &GroupAction, chart: &Chart, cert: &ActionCertificate) {
    match action {
        GroupAction::Finite(spec) => {
            r.line(format!(
                "finite group with {} generator(s), {} element(s)",
                spec.generators.len(),
                cert.checked
            ));
            r.key("action.kind", "finite");
            r.key("action.order", cert.checked);
        }
        GroupAction::Torus(t) => {
            r.line(format!(
                "torus of rank {} on {} pair(s), {} entries checked",
                t.rank(),
                t.pairs.len(),
                cert.checked
            ));
            r.key("action.kind", "torus");
            r.key("action.rank", t.rank());
        }
    }
    r.key("action.failures", cert.failures.len());
    for (k, f) in cert.failures.iter().enumerate() {
        let text = match f {
            ActionFailure::Element {
                element,
                matrix,
                entry,
                pushed,
                original,
            } => format!(
                "element {element} [{matrix}] moves {{{}}}: {pushed} instead of {original}",
                pair_name(chart, entry.0, entry.1)
            ),
            ActionFailure::Weight {
                entry,
                value,
                expected,
                found,
            } => format!(
                "entry {{{}}} = {value} has weight {} instead of {:?}",
                pair_name(chart, entry.0, entry.1),
                found.as_ref().map_or("(mixed)".to_string(), |w| format!("{w:?}")),
                expected
            ),
        };
        r.line(format!("witness: {text}"));
        r.key(format!("action.witness.{}", k + 1), text);
    }
}

/// `action-check`: PASS iff every group element preserves the bracket.
pub fn cmd_action_check(text: &str) -> Result<Report, CliError> {
    let (pf, p) = load(text)?;
    let (action, _) = load_action(&pf, &p)?;
    let cert = is_poisson_action(&p, &action).map_err(input)?;
    let mut r = Report::new("action-check", text);
    describe_action(&mut r, &action, p.chart(), &cert);
    r.check("poisson_action", cert.passed());
    Ok(r)
}

fn describe_subspaces(r: &mut Report, n: &LinearSubmanifold, e: &LinearSubmanifold, metric: &Matrix) {
    r.line(format!("invariant metric: {metric}"));
    r.line(format!(
        "fixed subspace N: dim {}, basis {}",
        n.dimension(),
        vectors(&n.basis)
    ));
    r.line(format!("equations of N: {}", vectors(&n.equations)));
    r.line(format!(
        "complement E: dim {}, basis {}",
        e.dimension(),
        vectors(&e.basis)
    ));
    r.key("metric", metric);
    r.key("fixed.dim", n.dimension());
    r.key("fixed.basis", vectors(&n.basis));
    r.key("fixed.equations", vectors(&n.equations));
    r.key("complement.basis", vectors(&e.basis));
}

/// `fixed-set`: fixed subspace, invariant metric, complement, and the
/// tangency and Dirac conditions on it.
pub fn cmd_fixed_set(text: &str, opts: &RunOptions) -> Result<Report, CliError> {
    let (pf, p) = load(text)?;
    let eff = effective(opts, &pf);
    let (action, seed_metric) = load_action(&pf, &p)?;
    let mut r = Report::new("fixed-set", text);
    let cert = is_poisson_action(&p, &action).map_err(input)?;
    describe_action(&mut r, &action, p.chart(), &cert);
    r.check("poisson_action", cert.passed());
    let metric = invariant_metric(&action, seed_metric.as_ref()).map_err(input)?;
    let n = fixed_subspace(&action).map_err(input)?;
    let e = orthogonal_complement(&n, &metric).map_err(input)?;
    describe_subspaces(&mut r, &n, &e, &metric.matrix);
    if n.dimension() == 0 {
        r.line("fixed set is the origin; nothing to reduce");
        return Ok(r);
    }
    let ctx = SplitContext::new(&p, n.clone(), e, metric).map_err(reduction_error)?;
    let sharp = check_sharp_e0(&ctx);
    r.line(format!(
        "#(E0) tangent to N: {}",
        Status::from_bool(sharp.passed()).as_str()
    ));
    r.check("sharp_e0", sharp.passed());
    let mut rng = sampling::seeded(eff.seed);
    let points = sample_points(&p, &n, eff.points, &mut rng).map_err(reduction_error)?;
    let eq1 = check_eq1(&p, &n, &points).map_err(reduction_error)?;
    r.line(format!(
        "dim(TN ∩ #(TN0)) at {} points: max {}",
        eq1.dimensions.len(),
        eq1.max_dimension()
    ));
    r.key("eq1.points", eq1.dimensions.len());
    r.key("eq1.max_dim", eq1.max_dimension());
    r.check("eq1", eq1.passed());
    Ok(r)
}

fn reduction_error(e: ReductionError) -> CliError {
    match e {
        ReductionError::ConstructionMismatch(_) => CliError::Internal(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

/// `reduce`: the full fixed-point pipeline. A non-Poisson action is a
/// FAIL with witness.
pub fn cmd_reduce(text: &str, opts: &RunOptions) -> Result<Report, CliError> {
    let (pf, p) = load(text)?;
    let eff = effective(opts, &pf);
    let (action, metric_seed) = load_action(&pf, &p)?;
    let options = ReductionOptions {
        seed: eff.seed,
        points: eff.points,
        trials: eff.trials,
        pairs: eff.trials,
        metric_seed,
    };
    let mut r = Report::new("reduce", text);
    r.key("seed", eff.seed);
    let rep = match reduce_fixed_set(&p, &action, &options) {
        Ok(rep) => rep,
        Err(ReductionError::NotPoissonAction(cert)) => {
            r.line("the action does not preserve the bracket; no reduction performed");
            describe_action(&mut r, &action, p.chart(), &cert);
            r.check("poisson_action", false);
            return Ok(r);
        }
        Err(e) => return Err(reduction_error(e)),
    };
    describe_action(&mut r, &action, p.chart(), &rep.action);
    r.check("poisson_action", rep.action.passed());
    describe_subspaces(&mut r, &rep.fixed, &rep.complement, &rep.metric.matrix);

    r.line(format!(
        "#(E0) tangent to N: {}",
        Status::from_bool(rep.sharp_e0.passed()).as_str()
    ));
    for c in rep.sharp_e0.checks.iter().filter(|c| !c.passed()) {
        let res: Vec<String> = c.residual.iter().map(ToString::to_string).collect();
        r.line(format!(
            "  witness: covector {} has E-components [{}]",
            vector(&c.covector),
            res.join(", ")
        ));
    }
    r.check("sharp_e0", rep.sharp_e0.passed());
    if let Some(((a, b), f)) = rep.split.first_mixed_residual() {
        r.line(format!("mixed block entry ({a}, {b}) = {f} on N"));
    }
    r.check("split", rep.split.is_valid());
    r.line(format!(
        "dim(TN ∩ #(TN0)) at {} points: max {}",
        rep.eq1.dimensions.len(),
        rep.eq1.max_dimension()
    ));
    r.key("eq1.points", rep.eq1.dimensions.len());
    r.key("eq1.max_dim", rep.eq1.max_dimension());
    r.check("eq1", rep.eq1.passed());

    if let Some(ind) = &rep.induced {
        for d in &rep.jacobi {
            r.line(format!(
                "induced Jacobi defect {{{}}}: {}",
                triple_name(ind.chart(), d.triple),
                d.value
            ));
        }
        r.check("induced.jacobi", rep.jacobi.is_empty());
        r.line("induced structure on the fixed set:");
        r.line("--- induced ---");
        for l in ProblemFile::from_structure(ind).to_string().lines() {
            r.line(l.to_string());
        }
        r.line("--- end induced ---");
        r.key("induced.coords", ind.chart().coordinate_names().join(" "));
        table_lines(&mut r, "induced", ind);
    }
    r.line(format!(
        "split and extension brackets agree on {} function pairs",
        rep.agreement_pairs
    ));
    r.key("agreement.pairs", rep.agreement_pairs);
    match &rep.independence {
        Some(ind) => {
            r.line(format!(
                "extension independence: {} trials, {} with nonzero perturbations, canonical bracket {}",
                ind.trials, ind.nontrivial, ind.canonical
            ));
            if let Some(c) = &ind.counterexample {
                r.line(format!("  witness: trial {} gives {}", c.trial, c.value));
            }
            r.key("independence.trials", ind.trials);
            r.key("independence.nontrivial", ind.nontrivial);
            r.check("independence", ind.passed());
        }
        None => r.check("independence", false),
    }
    Ok(r)
}

/// Arguments for `simplex` and `stratify`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplexArgs {
    pub n: Option<usize>,
    pub symbolic: bool,
}

fn simplex_input(
    file: Option<&str>,
    args: &SimplexArgs,
    opts: &RunOptions,
) -> Result<(SkewParamMatrix, String), CliError> {
    let pf = match file {
        Some(t) => ProblemFile::parse(t)?,
        None => ProblemFile::default(),
    };
    let symbolic = args.symbolic || pf.params.symbolic == Some(true);
    let n_given = args.n.or(pf.params.n);
    let seed = opts.seed.or(pf.params.seed).unwrap_or(0);
    let a = if symbolic {
        let n = n_given.unwrap_or(1);
        if n > SYMBOLIC_N_LIMIT {
            return Err(input(format!("symbolic mode is limited to n <= {SYMBOLIC_N_LIMIT}")));
        }
        SkewParamMatrix::symbolic(n).map_err(input)?
    } else if let Some(m) = &pf.params.a {
        let a = SkewParamMatrix::numeric(m.clone()).map_err(input)?;
        if n_given.is_some_and(|n| n != a.n()) {
            return Err(input(format!("A has size {} but n = {}", a.n() + 1, n_given.unwrap())));
        }
        a
    } else {
        let n = n_given.unwrap_or(2);
        SkewParamMatrix::random(n, &mut sampling::seeded(seed)).map_err(input)?
    };
    let description = match file {
        Some(t) => t.to_string(),
        None => format!("n={} symbolic={} seed={}\n", a.n(), symbolic, seed),
    };
    Ok((a, description))
}

fn describe_matrix(r: &mut Report, a: &SkewParamMatrix) {
    r.key("simplex.n", a.n());
    match a.matrix() {
        Some(m) => {
            r.line(format!("A = {m}"));
            r.key("simplex.A", m);
        }
        None => {
            r.line(format!("A symbolic in {}", a.param_names().join(" ")));
            r.key("simplex.A", "symbolic");
        }
    }
}

fn face_name(f: &FaceDescriptor) -> String {
    if f.vanishing.is_empty() {
        return "interior".into();
    }
    let eqs: Vec<String> = f.vanishing.iter().map(|l| format!("mu{l}")).collect();
    format!("{}=0", eqs.join("="))
}

fn face_key(f: &FaceDescriptor) -> String {
    if f.vanishing.is_empty() {
        return "face.interior".into();
    }
    let names: Vec<String> = f.vanishing.iter().map(|l| format!("mu{l}")).collect();
    format!("face.zero({})", names.join(","))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn face_summary(r: &mut Report, n: usize) -> Vec<FaceDescriptor> {
    let faces = enumerate_faces(n);
    let mut counts_ok = true;
    for d in 0..=n {
        let count = faces.iter().filter(|f| f.dimension == d).count();
        counts_ok &= count == binomial(n + 1, n - d);
        r.key(format!("faces.dim{d}"), count);
    }
    r.line(format!("{} faces", faces.len()));
    r.key("faces.total", faces.len());
    r.check("faces.counts", counts_ok && faces.len() == (1 << (n + 1)) - 1);
    faces
}

fn simplex_error(e: SimplexError) -> CliError {
    match e {
        SimplexError::DerivationMismatch { .. } => CliError::Internal(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

/// `simplex`: derive the simplex bracket from the quadratic bracket,
/// verify Jacobi and the face conditions, list the faces.
pub fn cmd_simplex(file: Option<&str>, args: &SimplexArgs, opts: &RunOptions) -> Result<Report, CliError> {
    let (a, description) = simplex_input(file, args, opts)?;
    let mut r = Report::new("simplex", &description);
    describe_matrix(&mut r, &a);
    let d = derive_simplex_bracket(&a).map_err(simplex_error)?;
    r.line(format!(
        "derived bracket matches the closed form on all {} pairs",
        d.pairs_certified
    ));
    r.key("derivation.pairs", d.pairs_certified);
    r.check("derivation", true);
    r.line("bracket on the simplex:");
    let formatted = d.formatted();
    if formatted.is_empty() {
        r.line("  (zero)");
    }
    for (i, j, e) in &formatted {
        r.line(format!("  {{mu{i},mu{j}}} = {e}"));
        r.key(format!("simplex.{{mu{i},mu{j}}}"), e);
    }
    match &d.conjugate_factor {
        Some(c) => {
            r.line(format!(
                "with {{zbar_i,zbar_j}} = a_ij zbar_i zbar_j every bracket is multiplied by {c}"
            ));
            r.key("conjugate_factor", c);
        }
        None => r.key("conjugate_factor", "none"),
    }
    let s = simplex_bracket_unverified(&a);
    let bad: Vec<_> = jacobi_defect(&s).into_iter().filter(|d| !d.value.is_zero()).collect();
    for d in &bad {
        r.line(format!(
            "Jacobi defect {{{}}}: {}",
            triple_name(s.chart(), d.triple),
            d.value
        ));
    }
    r.check("jacobi", bad.is_empty());
    let cert = check_face_stratification(&a).map_err(simplex_error)?;
    r.line(format!(
        "face conditions: {} of {} mu_l | {{mu_i,mu_l}}, {} of {} (1 - sum mu) | {{mu_i, sum mu}}",
        cert.faces.iter().filter(|c| c.passed).count(),
        cert.faces.len(),
        cert.sums.iter().filter(|c| c.passed).count(),
        cert.sums.len()
    ));
    r.key("stratification.face_checks", cert.faces.len());
    r.key("stratification.sum_checks", cert.sums.len());
    r.check("stratification", cert.passed());
    let faces = face_summary(&mut r, a.n());
    for f in &faces {
        r.line(format!("  dim {}: {}", f.dimension, face_name(f)));
    }
    Ok(r)
}

/// `stratify`: every face with the bracket it inherits.
pub fn cmd_stratify(file: Option<&str>, args: &SimplexArgs, opts: &RunOptions) -> Result<Report, CliError> {
    let (a, description) = simplex_input(file, args, opts)?;
    let mut r = Report::new("stratify", &description);
    describe_matrix(&mut r, &a);
    let cert = check_face_stratification(&a).map_err(simplex_error)?;
    for c in cert.faces.iter().filter(|c| !c.passed) {
        r.line(format!("witness: mu{} does not divide {{mu{},mu{}}}", c.l, c.i, c.l));
    }
    for c in cert.sums.iter().filter(|c| !c.passed) {
        r.line(format!("witness: 1 - sum mu does not divide {{mu{}, sum mu}}", c.i));
    }
    r.check("stratification", cert.passed());
    let faces = face_summary(&mut r, a.n());
    let mut all_poisson = true;
    for f in &faces {
        let name = face_name(f);
        match face_structure(&a, f) {
            Ok(s) => {
                let entries: Vec<String> = s
                    .upper_entries()
                    .filter(|(_, _, e)| !e.is_zero())
                    .map(|(i, j, e)| {
                        let poly = e.as_polynomial().expect("face brackets are polynomial");
                        format!(
                            "{{{}}} = {}",
                            pair_name(s.chart(), i, j),
                            format_simplex_entry(s.chart(), i, j, poly)
                        )
                    })
                    .collect();
                let body = if entries.is_empty() {
                    "zero bracket".to_string()
                } else {
                    entries.join("; ")
                };
                r.line(format!("  dim {} {name}: {body}", f.dimension));
                r.key(
                    face_key(f),
                    if entries.is_empty() {
                        "0".to_string()
                    } else {
                        entries.join("; ")
                    },
                );
            }
            Err(e) => {
                all_poisson = false;
                r.line(format!("  dim {} {name}: {e}", f.dimension));
            }
        }
    }
    r.check("faces.jacobi", all_poisson);
    Ok(r)
}
