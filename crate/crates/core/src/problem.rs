//! Line-oriented problem files.
//!
//! ```text
//! # comment
//! [chart]
//! coords = q1 p1 q2 p2
//! symbols = a           # optional constant parameters
//!
//! [bracket]
//! {q1,p1} = 1           # one entry per line, mirror implied
//! {q2,p2} = 1
//!
//! [action]
//! order = 64            # closure bound, optional
//! generator = 1 0 0 0; 0 1 0 0; 0 0 -1 0; 0 0 0 -1
//! metric = 1 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1   # optional seed
//!
//! [torus]
//! pair = z1 zbar1 : 1 0  # z, z̄, weight per circle factor
//!
//! [params]
//! seed = 7
//! points = 100
//! trials = 20
//! n = 2
//! A = 0 1 2; -1 0 3; -2 -3 0
//! symbolic = false
//! ```
//!
//! Matrices list rows separated by `;`, entries by spaces. Names in lists
//! may be separated by spaces or commas. Unset brackets are zero.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use thiserror::Error;

use crate::action::{FiniteActionSpec, GroupAction, TorusActionSpec};
use crate::linalg::Matrix;
use crate::poisson::{Chart, PoissonError, PoissonStructure};
use crate::symexpr::{RationalFunction, SymError};

/// Input problem with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl InputError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        InputError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketLine {
    pub left: String,
    pub right: String,
    pub expr: String,
    pub line: usize,
    /// Column of the first character of `expr`.
    pub expr_column: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionBlock {
    pub order: Option<usize>,
    pub generators: Vec<Matrix>,
    pub metric: Option<Matrix>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPair {
    pub z: String,
    pub zbar: String,
    pub weights: Vec<i64>,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorusBlock {
    pub pairs: Vec<TorusPair>,
    pub metric: Option<Matrix>,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub seed: Option<u64>,
    pub points: Option<usize>,
    pub trials: Option<usize>,
    pub n: Option<usize>,
    pub a: Option<Matrix>,
    pub symbolic: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProblemFile {
    pub coords: Vec<String>,
    pub symbols: Vec<String>,
    pub bracket: Vec<BracketLine>,
    pub action: Option<ActionBlock>,
    pub torus: Option<TorusBlock>,
    pub params: Params,
    chart_line: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Chart,
    Bracket,
    Action,
    Torus,
    Params,
}

fn names(value: &str) -> Vec<String> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn parse_rational(tok: &str) -> Option<BigRational> {
    BigRational::from_str(tok).ok()
}

fn parse_matrix(value: &str, line: usize, column: usize) -> Result<Matrix, InputError> {
    let rows: Vec<Vec<BigRational>> = value
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|t| {
                    parse_rational(t).ok_or_else(|| InputError::new(line, column, format!("bad matrix entry '{t}'")))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err(InputError::new(
            line,
            column,
            "matrix rows must be nonempty and of equal length",
        ));
    }
    if rows.len() != cols {
        return Err(InputError::new(line, column, "matrix must be square"));
    }
    Ok(Matrix::from_rows(rows))
}

fn parse_num<T: FromStr>(value: &str, line: usize, column: usize, what: &str) -> Result<T, InputError> {
    value
        .parse()
        .map_err(|_| InputError::new(line, column, format!("{what} must be a non-negative integer")))
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let mut pf = ProblemFile::default();
        let mut section = Section::None;
        let mut seen_chart = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len();
            if trimmed.starts_with('[') {
                section = match trimmed {
                    "[chart]" => {
                        seen_chart = true;
                        pf.chart_line = line;
                        Section::Chart
                    }
                    "[bracket]" => Section::Bracket,
                    "[action]" => {
                        pf.action.get_or_insert_with(|| ActionBlock {
                            line,
                            ..Default::default()
                        });
                        Section::Action
                    }
                    "[torus]" => {
                        pf.torus.get_or_insert_with(|| TorusBlock {
                            line,
                            ..Default::default()
                        });
                        Section::Torus
                    }
                    "[params]" => Section::Params,
                    other => return Err(InputError::new(line, indent + 1, format!("unknown section {other}"))),
                };
                continue;
            }
            let Some(eq) = content.find('=') else {
                return Err(InputError::new(line, indent + 1, "expected 'key = value'"));
            };
            let key = content[..eq].trim();
            let value_raw = &content[eq + 1..];
            let value = value_raw.trim();
            let vcol = eq + 2 + (value_raw.len() - value_raw.trim_start().len());
            match section {
                Section::None => return Err(InputError::new(line, indent + 1, "entry outside any section")),
                Section::Chart => match key {
                    "coords" => pf.coords = names(value),
                    "symbols" => pf.symbols = names(value),
                    _ => return Err(InputError::new(line, indent + 1, format!("unknown chart key '{key}'"))),
                },
                Section::Bracket => {
                    let inner = key
                        .strip_prefix('{')
                        .and_then(|k| k.strip_suffix('}'))
                        .ok_or_else(|| InputError::new(line, indent + 1, "expected '{a,b} = expression'"))?;
                    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
                    if parts.len() != 2 || parts.iter().any(|p| p.is_empty()) {
                        return Err(InputError::new(line, indent + 1, "bracket key needs two coordinates"));
                    }
                    if value.is_empty() {
                        return Err(InputError::new(line, vcol, "missing expression"));
                    }
                    pf.bracket.push(BracketLine {
                        left: parts[0].to_string(),
                        right: parts[1].to_string(),
                        expr: value.to_string(),
                        line,
                        expr_column: vcol,
                    });
                }
                Section::Action => {
                    let block = pf.action.as_mut().expect("opened with section");
                    match key {
                        "order" => block.order = Some(parse_num(value, line, vcol, "order")?),
                        "generator" => block.generators.push(parse_matrix(value, line, vcol)?),
                        "metric" => block.metric = Some(parse_matrix(value, line, vcol)?),
                        _ => return Err(InputError::new(line, indent + 1, format!("unknown action key '{key}'"))),
                    }
                }
                Section::Torus => {
                    let block = pf.torus.as_mut().expect("opened with section");
                    match key {
                        "pair" => {
                            let (vars, weights) = value
                                .split_once(':')
                                .ok_or_else(|| InputError::new(line, vcol, "expected 'z zbar : weights'"))?;
                            let vars = names(vars);
                            if vars.len() != 2 {
                                return Err(InputError::new(line, vcol, "a pair names exactly two variables"));
                            }
                            let weights = weights
                                .split_whitespace()
                                .map(|w| w.parse::<i64>())
                                .collect::<Result<Vec<_>, _>>()
                                .map_err(|_| InputError::new(line, vcol, "weights must be integers"))?;
                            block.pairs.push(TorusPair {
                                z: vars[0].clone(),
                                zbar: vars[1].clone(),
                                weights,
                                line,
                            });
                        }
                        "metric" => block.metric = Some(parse_matrix(value, line, vcol)?),
                        _ => return Err(InputError::new(line, indent + 1, format!("unknown torus key '{key}'"))),
                    }
                }
                Section::Params => {
                    let p = &mut pf.params;
                    match key {
                        "seed" => p.seed = Some(parse_num(value, line, vcol, "seed")?),
                        "points" => p.points = Some(parse_num(value, line, vcol, "points")?),
                        "trials" => p.trials = Some(parse_num(value, line, vcol, "trials")?),
                        "n" => p.n = Some(parse_num(value, line, vcol, "n")?),
                        "A" => p.a = Some(parse_matrix(value, line, vcol)?),
                        "symbolic" => {
                            p.symbolic = Some(match value {
                                "true" => true,
                                "false" => false,
                                _ => return Err(InputError::new(line, vcol, "symbolic must be true or false")),
                            })
                        }
                        _ => return Err(InputError::new(line, indent + 1, format!("unknown params key '{key}'"))),
                    }
                }
            }
        }
        if !seen_chart && (!pf.bracket.is_empty() || pf.action.is_some() || pf.torus.is_some()) {
            return Err(InputError::new(1, 1, "missing [chart] section"));
        }
        if let (Some(_), Some(torus)) = (&pf.action, &pf.torus) {
            return Err(InputError::new(
                torus.line,
                1,
                "give either [action] or [torus], not both",
            ));
        }
        Ok(pf)
    }

    pub fn has_chart(&self) -> bool {
        !self.coords.is_empty()
    }

    pub fn chart(&self) -> Result<Chart, InputError> {
        Chart::new(&self.coords, &self.symbols).map_err(|e| InputError::new(self.chart_line.max(1), 1, e.to_string()))
    }

    /// Bracket table as a structure; not Jacobi-checked.
    pub fn structure(&self) -> Result<PoissonStructure, InputError> {
        let chart = self.chart()?;
        let mut entries: Vec<(usize, usize, RationalFunction)> = Vec::new();
        for b in &self.bracket {
            let find = |name: &str| {
                chart
                    .index_of(name)
                    .ok_or_else(|| InputError::new(b.line, 1, format!("'{name}' is not a declared coordinate")))
            };
            let (i, j) = (find(&b.left)?, find(&b.right)?);
            if i == j {
                return Err(InputError::new(
                    b.line,
                    1,
                    "diagonal bracket entries are zero by skewness",
                ));
            }
            let value = chart.parse(&b.expr).map_err(|e| {
                let (offset, message) = match &e {
                    SymError::Syntax { pos, .. } | SymError::UnknownVariable { pos, .. } => (*pos, e.to_string()),
                    other => (0, other.to_string()),
                };
                InputError::new(b.line, b.expr_column + offset, message)
            })?;
            let (i, j, value) = if i < j { (i, j, value) } else { (j, i, -value) };
            if entries.iter().any(|(a, c, _)| (*a, *c) == (i, j)) {
                return Err(InputError::new(b.line, 1, "bracket entry given twice"));
            }
            entries.push((i, j, value));
        }
        PoissonStructure::from_entries(&chart, entries).map_err(|e| InputError::new(1, 1, e.to_string()))
    }

    /// The `[action]` or `[torus]` block over `chart`, if present.
    pub fn group_action(&self, chart: &Chart) -> Result<Option<(GroupAction, Option<Matrix>)>, InputError> {
        if let Some(a) = &self.action {
            let spec = match a.order {
                Some(o) => FiniteActionSpec::with_max_order(chart, a.generators.clone(), o),
                None => FiniteActionSpec::new(chart, a.generators.clone()),
            }
            .map_err(|e| InputError::new(a.line, 1, e.to_string()))?;
            return Ok(Some((spec.into(), a.metric.clone())));
        }
        if let Some(t) = &self.torus {
            let mut pairs = Vec::new();
            let mut weights = Vec::new();
            for p in &t.pairs {
                let find = |name: &str| {
                    chart
                        .index_of(name)
                        .ok_or_else(|| InputError::new(p.line, 1, format!("'{name}' is not a declared coordinate")))
                };
                pairs.push((find(&p.z)?, find(&p.zbar)?));
                weights.push(p.weights.clone());
            }
            let spec =
                TorusActionSpec::new(chart, pairs, weights).map_err(|e| InputError::new(t.line, 1, e.to_string()))?;
            return Ok(Some((spec.into(), t.metric.clone())));
        }
        Ok(None)
    }

    /// Chart and bracket sections describing `p`.
    pub fn from_structure(p: &PoissonStructure) -> Self {
        let chart = p.chart();
        let bracket = p
            .upper_entries()
            .filter(|(_, _, e)| !e.is_zero())
            .map(|(i, j, e)| BracketLine {
                left: chart.coordinate_names()[i].clone(),
                right: chart.coordinate_names()[j].clone(),
                expr: e.to_string(),
                line: 0,
                expr_column: 0,
            })
            .collect();
        ProblemFile {
            coords: chart.coordinate_names().to_vec(),
            symbols: chart.parameter_names().to_vec(),
            bracket,
            ..Default::default()
        }
    }
}

impl From<PoissonError> for InputError {
    fn from(e: PoissonError) -> Self {
        InputError::new(1, 1, e.to_string())
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[chart]")?;
        writeln!(f, "coords = {}", self.coords.join(" "))?;
        if !self.symbols.is_empty() {
            writeln!(f, "symbols = {}", self.symbols.join(" "))?;
        }
        writeln!(f, "\n[bracket]")?;
        for b in &self.bracket {
            writeln!(f, "{{{},{}}} = {}", b.left, b.right, b.expr)?;
        }
        if let Some(a) = &self.action {
            writeln!(f, "\n[action]")?;
            if let Some(o) = a.order {
                writeln!(f, "order = {o}")?;
            }
            for g in &a.generators {
                writeln!(f, "generator = {g}")?;
            }
            if let Some(m) = &a.metric {
                writeln!(f, "metric = {m}")?;
            }
        }
        if let Some(t) = &self.torus {
            writeln!(f, "\n[torus]")?;
            for p in &t.pairs {
                let w: Vec<String> = p.weights.iter().map(ToString::to_string).collect();
                writeln!(f, "pair = {} {} : {}", p.z, p.zbar, w.join(" "))?;
            }
            if let Some(m) = &t.metric {
                writeln!(f, "metric = {m}")?;
            }
        }
        let p = &self.params;
        if p != &Params::default() {
            writeln!(f, "\n[params]")?;
            if let Some(v) = p.seed {
                writeln!(f, "seed = {v}")?;
            }
            if let Some(v) = p.points {
                writeln!(f, "points = {v}")?;
            }
            if let Some(v) = p.trials {
                writeln!(f, "trials = {v}")?;
            }
            if let Some(v) = p.n {
                writeln!(f, "n = {v}")?;
            }
            if let Some(v) = &p.a {
                writeln!(f, "A = {v}")?;
            }
            if let Some(v) = p.symbolic {
                writeln!(f, "symbolic = {v}")?;
            }
        }
        Ok(())
    }
}
