//! Front end for `rtlink`: braid specs in, exact invariants out.

pub mod crosscheck;
mod spec;

use std::fmt;
use std::str::FromStr;

use rtlink::braid::{braid_to_diagram, closure_components, writhe_per_component};
use rtlink::rt_engine::{evaluate_rt, framing_correction};
use rtlink::shadow_engine::evaluate_shadow;
use rtlink::skein_oracle::jones_at_q_squared;
use rtlink::{ColoredBraidWord, LaurentScalar, Strategy};
use serde_json::json;
use thiserror::Error;

pub use spec::{parse_braid_spec, SpecError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    Rt,
    Shadow,
    Skein,
}

impl Pipeline {
    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Rt => "rt",
            Pipeline::Shadow => "shadow",
            Pipeline::Skein => "skein",
        }
    }
}

impl FromStr for Pipeline {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rt" => Ok(Pipeline::Rt),
            "shadow" => Ok(Pipeline::Shadow),
            "skein" => Ok(Pipeline::Skein),
            _ => Err(format!("unknown pipeline {s:?} (expected rt, shadow or skein)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected text or json)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("{0}")]
    Input(rtlink::Error),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// 1 for bad input, 2 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) | CliError::Input(_) | CliError::Io { .. } => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl From<rtlink::Error> for CliError {
    fn from(e: rtlink::Error) -> Self {
        use rtlink::Error as E;
        match e {
            E::ColorMismatch { .. }
            | E::InvalidGenerator { .. }
            | E::WrongColorCount { .. }
            | E::NoStrands
            | E::NoSuchComponent(_)
            | E::NonFundamental(_)
            | E::BadSlot { .. }
            | E::BadPosition { .. } => CliError::Input(e),
            other => CliError::Internal(other.to_string()),
        }
    }
}

/// Everything reported for one braid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub w: LaurentScalar,
    pub framed: LaurentScalar,
    pub writhe: Vec<i64>,
    pub components: usize,
    pub pipeline: Pipeline,
}

/// `w_L` through the chosen pipeline. The skein route uses
/// `w_L = q^{(3/2)·writhe} P(L, q²)` with the total diagram writhe.
pub fn compute_w(b: &ColoredBraidWord, pipeline: Pipeline) -> Result<LaurentScalar, rtlink::Error> {
    match pipeline {
        Pipeline::Rt => evaluate_rt(b),
        Pipeline::Shadow => evaluate_shadow(b),
        Pipeline::Skein => {
            let d = braid_to_diagram(b)?;
            let p = jones_at_q_squared(&d)?;
            Ok(&p * &LaurentScalar::q_frac(3 * d.writhe(), 2))
        }
    }
}

pub fn compute(b: &ColoredBraidWord, pipeline: Pipeline) -> Result<InvariantReport, CliError> {
    let components = closure_components(b)?.len();
    let writhe = writhe_per_component(b)?;
    let w = compute_w(b, pipeline)?;
    let framed = &framing_correction(b)? * &w;
    Ok(InvariantReport { w, framed, writhe, components, pipeline })
}

impl InvariantReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => format!(
                "w_L = {}\nI_L = {}\nwrithe = {:?}\n",
                self.w, self.framed, self.writhe
            ),
            Format::Json => {
                let v = json!({
                    "w_L": self.w.to_json(),
                    "I_L": self.framed.to_json(),
                    "writhe": self.writhe,
                    "components": self.components,
                    "pipeline": self.pipeline.name(),
                });
                format!("{v}\n")
            }
        }
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Format::Text))
    }
}

/// Evaluates one spec string.
pub fn run_invariant(spec: &str, pipeline: Pipeline, format: Format) -> Result<String, CliError> {
    let b = parse_braid_spec(spec)?;
    Ok(compute(&b, pipeline)?.render(format))
}

/// Spec lines of a batch file: blank lines and `#` comments dropped.
pub fn batch_lines(contents: &str) -> Vec<(usize, &str)> {
    contents
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

/// One result per spec line, in input order; entries run concurrently.
pub fn run_batch(
    contents: &str,
    pipeline: Pipeline,
    format: Format,
) -> Vec<(usize, Result<String, CliError>)> {
    let lines = batch_lines(contents);
    let results = Strategy::default().map_slice(&lines, |(_, spec)| run_invariant(spec, pipeline, format));
    lines.into_iter().map(|(n, _)| n).zip(results).collect()
}
