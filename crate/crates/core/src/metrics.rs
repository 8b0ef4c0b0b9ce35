//! Translation sizes and growth experiments.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::abstraction::{translate, AlgorithmId};
use crate::term::{ClTerm, LambdaTerm, Var};

/// Number of atom occurrences: variables and combinator constants. Binders
/// are not counted.
pub trait Size {
    fn size(&self) -> usize;
}

impl Size for LambdaTerm {
    fn size(&self) -> usize {
        match self {
            LambdaTerm::Var(_) | LambdaTerm::Prim(_) => 1,
            LambdaTerm::App(f, a) => f.size() + a.size(),
            LambdaTerm::Abs(_, body) => body.size(),
        }
    }
}

impl Size for ClTerm {
    fn size(&self) -> usize {
        match self {
            ClTerm::Var(_) | ClTerm::Prim(_) => 1,
            ClTerm::App(f, a) => f.size() + a.size(),
        }
    }
}

pub fn size<T: Size>(t: &T) -> usize {
    t.size()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// `\x1 ... xn. x1 x2 ... xn`.
    FanApply,
    /// `\x1 ... xn. (x1 ... xn) (x1 ... xn)`.
    NestedShared,
}

impl FamilyId {
    pub fn cli_name(self) -> &'static str {
        match self {
            FamilyId::FanApply => "fan",
            FamilyId::NestedShared => "nested",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for FamilyId {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fan" => Ok(FamilyId::FanApply),
            "nested" => Ok(FamilyId::NestedShared),
            _ => Err(MetricsError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("unknown family `{0}` (expected fan or nested)")]
    UnknownFamily(String),
    #[error("growth experiments need n_max >= {MIN_N_MAX}, got {0}")]
    TooFewPoints(usize),
    #[error("translation output reached {size} atoms at n = {n}; larger n would exhaust memory")]
    OutputTooLarge { n: usize, size: usize },
    #[error("malformed CSV: {0}")]
    Csv(String),
}

impl From<csv::Error> for MetricsError {
    fn from(e: csv::Error) -> Self {
        MetricsError::Csv(e.to_string())
    }
}

pub const MIN_N_MAX: usize = 8;

/// Growth experiments stop once an output exceeds this many atoms; the
/// exponential algorithms would otherwise exhaust memory a few rows later.
pub const OUTPUT_LIMIT: usize = 1_000_000;

/// Member `n` of a family. Panics if `n` is 0.
pub fn term_family(f: FamilyId, n: usize) -> LambdaTerm {
    assert!(n >= 1, "term families start at n = 1");
    let xs: Vec<Var> = (1..=n).map(|i| Var::new(&format!("x{i}"))).collect();
    let spine = || {
        let mut vars = xs.iter().cloned().map(LambdaTerm::Var);
        let head = vars.next().expect("n >= 1");
        LambdaTerm::apply_all(head, vars)
    };
    let body = match f {
        FamilyId::FanApply => spine(),
        FamilyId::NestedShared => LambdaTerm::app(spine(), spine()),
    };
    LambdaTerm::abs_many(xs, body)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: usize,
    pub input_size: usize,
    pub output_size: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub algorithm: AlgorithmId,
    pub family: FamilyId,
    pub rows: Vec<GrowthRow>,
    /// Least-squares slope of log(output size) against log(input size) over
    /// the upper half of n.
    pub fitted_slope: f64,
}

/// Least-squares slope of `ys` on `xs`; 0 for fewer than two distinct xs.
fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

pub fn growth_experiment(
    alg: AlgorithmId,
    f: FamilyId,
    n_max: usize,
) -> Result<GrowthReport, MetricsError> {
    if n_max < MIN_N_MAX {
        return Err(MetricsError::TooFewPoints(n_max));
    }
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let t = term_family(f, n);
        let output_size = translate(alg, &t).size();
        if output_size > OUTPUT_LIMIT && n < n_max {
            return Err(MetricsError::OutputTooLarge {
                n,
                size: output_size,
            });
        }
        rows.push(GrowthRow {
            n,
            input_size: t.size(),
            output_size,
        });
    }
    let upper: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.n > n_max / 2)
        .map(|r| ((r.input_size as f64).ln(), (r.output_size as f64).ln()))
        .collect();
    Ok(GrowthReport {
        algorithm: alg,
        family: f,
        fitted_slope: slope(&upper),
        rows,
    })
}

/// `n,input_size,output_size` rows followed by `# slope=<value>`.
pub fn emit_csv(report: &GrowthReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "input_size", "output_size"])
        .expect("writing to memory");
    for r in &report.rows {
        w.write_record([
            r.n.to_string(),
            r.input_size.to_string(),
            r.output_size.to_string(),
        ])
        .expect("writing to memory");
    }
    let bytes = w.into_inner().expect("flushing to memory");
    let mut out = String::from_utf8(bytes).expect("ASCII output");
    out += &format!("# slope={:.4}\n", report.fitted_slope);
    out
}

/// Rows and slope of [`emit_csv`] output.
pub fn parse_csv(text: &str) -> Result<(Vec<GrowthRow>, Option<f64>), MetricsError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let field = |rec: &csv::StringRecord, i: usize| -> Result<usize, MetricsError> {
        rec.get(i)
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| MetricsError::Csv(format!("bad field {i} in {rec:?}")))
    };
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        rows.push(GrowthRow {
            n: field(&rec, 0)?,
            input_size: field(&rec, 1)?,
            output_size: field(&rec, 2)?,
        });
    }
    let slope = text
        .lines()
        .filter_map(|l| l.strip_prefix("# slope="))
        .next_back()
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| MetricsError::Csv(e.to_string()))
        })
        .transpose()?;
    Ok((rows, slope))
}
