use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::cache::{cached_buchberger, GroebnerCache};
use super::parse::{expression_from_file_contents, parse_function, ParseError, ParsedFunction};
use super::report::{CheckOutcome, CohomologyInfo, LambdaInfo, Report, TruncationRow, WindowInfo};
use crate::cohom::{renormalized_nearby_cohomology, truncation_tower, RESIDUE_AXIOM};
use crate::grobner::{milnor_from_basis, milnor_number_oracle, GrobnerError, Ideal};
use crate::loopfun::{
    check_derivative_identity, check_support_bound, check_top_linearity, constant_loop_restriction,
    jet_coefficient, Window,
};

#[derive(
    Clone,
    Copy,
    Debug,
    PartialEq,
    Eq,
    PartialOrd,
    Ord,
    Hash,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Lambda,
    Support,
    Linearity,
    Derivative,
    Milnor,
    Cohomology,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Lambda,
        Check::Support,
        Check::Linearity,
        Check::Derivative,
        Check::Milnor,
        Check::Cohomology,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Lambda => "lambda",
            Check::Support => "support",
            Check::Linearity => "linearity",
            Check::Derivative => "derivative",
            Check::Milnor => "milnor",
            Check::Cohomology => "cohomology",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    #[value(alias = "json")]
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionSource {
    Expression(String),
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub function_source: FunctionSource,
    pub window_bottom: u32,
    pub n_max: u32,
    pub checks: BTreeSet<Check>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub emit_lambda: bool,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn for_expression(src: &str) -> Self {
        RunConfig {
            function_source: FunctionSource::Expression(src.to_string()),
            window_bottom: 1,
            n_max: 4,
            checks: Check::ALL.into_iter().collect(),
            output_format: OutputFormat::Text,
            output_path: None,
            emit_lambda: false,
            cache_dir: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("no checks selected")]
    NoChecks,
    #[error(
        "n-max {n_max} must be at least the window bottom {bottom} and at least 2 for cohomology"
    )]
    NMaxTooSmall { n_max: u32, bottom: u32 },
}

pub fn load_function(source: &FunctionSource) -> Result<ParsedFunction, ConfigError> {
    match source {
        FunctionSource::Expression(s) => Ok(parse_function(s)?),
        FunctionSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(parse_function(&expression_from_file_contents(&text))?)
        }
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Runs the enabled checks in dependency order: parse, Λ, structural
/// checks, Milnor number, cohomology. Cohomology is skipped (and fails)
/// when the singularity is not isolated.
pub fn run(config: &RunConfig) -> Result<Report, ConfigError> {
    if config.checks.is_empty() {
        return Err(ConfigError::NoChecks);
    }
    let wants = |c: Check| config.checks.contains(&c);
    if wants(Check::Cohomology) && (config.n_max < config.window_bottom || config.n_max < 2) {
        return Err(ConfigError::NMaxTooSmall {
            n_max: config.n_max,
            bottom: config.window_bottom,
        });
    }

    let mut timing = BTreeMap::new();
    let t = Instant::now();
    let parsed = load_function(&config.function_source)?;
    timing.insert("parse".to_string(), ms(t));
    let f = &parsed.function;
    let b = config.window_bottom;
    let mut checks = BTreeMap::new();

    let t = Instant::now();
    let window = Window::minimal(b, f.delta());
    let lambda = jet_coefficient(f, window, 0);
    if wants(Check::Lambda) {
        let bad_cdeg = lambda.terms().find(|(m, _)| m.weight(|v| v.cdeg) != 0);
        let bad_degree = lambda.terms().find(|(m, _)| m.degree() != f.delta());
        let restricted = constant_loop_restriction(f, window).ok();
        let outcome = if let Some((m, _)) = bad_cdeg {
            CheckOutcome::fail(format!(
                "term {} has nonzero conformal weight",
                parsed.render_monomial(m)
            ))
        } else if let Some((m, _)) = bad_degree {
            CheckOutcome::fail(format!(
                "term {} has degree {}",
                parsed.render_monomial(m),
                m.degree()
            ))
        } else if restricted.as_ref() != Some(f.poly()) {
            CheckOutcome::fail("constant-loop restriction differs from F")
        } else {
            CheckOutcome::pass()
        };
        checks.insert(Check::Lambda.name().to_string(), outcome);
    }
    timing.insert("lambda".to_string(), ms(t));

    let t = Instant::now();
    if wants(Check::Support) {
        let r = check_support_bound(f, b);
        let outcome = if r.ok {
            CheckOutcome::pass()
        } else {
            CheckOutcome::fail(format!(
                "conformal degree {} occurs above bound {}",
                r.max_cdeg_present, r.bound
            ))
        };
        checks.insert(Check::Support.name().to_string(), outcome);
    }
    let structural_bottom = b.max(1);
    if wants(Check::Linearity) {
        let r = check_top_linearity(f, structural_bottom).expect("bottom is positive");
        let outcome = match r.offending_monomials.first() {
            None if r.ok => CheckOutcome::pass(),
            Some(m) => CheckOutcome::fail(format!(
                "{} has several factors of conformal degree {}",
                parsed.render_monomial(m),
                r.top_degree
            )),
            None => CheckOutcome::fail("remainder still contains top-degree variables"),
        };
        checks.insert(Check::Linearity.name().to_string(), outcome);
    }
    if wants(Check::Derivative) {
        let r = check_derivative_identity(f, structural_bottom).expect("bottom is positive");
        let failing: Vec<String> = r
            .coords
            .iter()
            .filter(|c| !(c.via_jet && c.via_bottom))
            .map(|c| {
                format!(
                    "d/d{} (jet: {}, bottom evaluation: {})",
                    parsed.loop_var_name(crate::exactalg::LoopVar::new(c.coord, r.top_degree)),
                    c.via_jet,
                    c.via_bottom
                )
            })
            .collect();
        let outcome = if failing.is_empty() {
            CheckOutcome::pass()
        } else {
            CheckOutcome::fail(failing.join("; "))
        };
        checks.insert(Check::Derivative.name().to_string(), outcome);
    }
    timing.insert("structure".to_string(), ms(t));

    let mut milnor_number = None;
    let mut isolated = None;
    let mut not_isolated_reason = None;
    if wants(Check::Milnor) || wants(Check::Cohomology) {
        let t = Instant::now();
        let cache = config
            .cache_dir
            .as_ref()
            .map(GroebnerCache::new)
            .or_else(GroebnerCache::from_env);
        let ideal = Ideal::jacobian(f);
        let basis = cached_buchberger(&ideal, cache.as_ref());
        let via_basis = milnor_from_basis(f, &basis);
        let via_oracle = milnor_number_oracle(f);
        timing.insert("milnor".to_string(), ms(t));
        let outcome = match (&via_basis, &via_oracle) {
            (Ok(a), Ok(o)) if a == o => {
                milnor_number = Some(*a);
                isolated = Some(true);
                CheckOutcome::pass()
            }
            (Ok(a), Ok(o)) => {
                CheckOutcome::fail(format!("Gröbner count {a} but linear algebra gives {o}"))
            }
            (Err(GrobnerError::NotIsolated(w)), _) => {
                isolated = Some(false);
                not_isolated_reason = Some(w.to_string());
                CheckOutcome::fail(format!("not isolated: {w}"))
            }
            (Err(e), _) | (_, Err(e)) => CheckOutcome::fail(e.to_string()),
        };
        if wants(Check::Milnor) {
            checks.insert(Check::Milnor.name().to_string(), outcome);
        }
    }

    let mut cohomology = None;
    let mut axioms = Vec::new();
    if wants(Check::Cohomology) {
        let t = Instant::now();
        let outcome = match (milnor_number, &not_isolated_reason) {
            (_, Some(reason)) => {
                CheckOutcome::fail(format!("skipped: singularity is not isolated ({reason})"))
            }
            (None, None) => CheckOutcome::fail("skipped: Milnor number unavailable"),
            (Some(mu), None) => {
                axioms.push(RESIDUE_AXIOM.to_string());
                let d = f.d();
                match (
                    truncation_tower(d, mu, config.n_max),
                    renormalized_nearby_cohomology(d, mu, config.n_max),
                ) {
                    (Ok(tower), Ok(renorm)) => {
                        let steps_ok = tower.windows(2).all(|w| {
                            w[1].concentration_degree - w[0].concentration_degree == 2 * d as i64
                        });
                        cohomology = Some(CohomologyInfo {
                            truncations: tower
                                .iter()
                                .map(|t| TruncationRow {
                                    n: t.n,
                                    dims: t.dims.clone(),
                                    concentration_degree: t.concentration_degree,
                                    stated_bound: t.stated_bound,
                                    meets_stated_bound: t.meets_stated_bound(),
                                })
                                .collect(),
                            renormalized: renorm.stable.clone(),
                            stabilization: renorm.stabilization_step.clone(),
                        });
                        if !renorm.disagreements.is_empty() {
                            CheckOutcome::fail(format!(
                                "renormalized cohomology {} differs from {} in degrees {:?}",
                                renorm.stable, renorm.expected, renorm.disagreements
                            ))
                        } else if !steps_ok {
                            CheckOutcome::fail("concentration degrees do not advance by 2d")
                        } else {
                            CheckOutcome::pass()
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => CheckOutcome::fail(e.to_string()),
                }
            }
        };
        checks.insert(Check::Cohomology.name().to_string(), outcome);
        timing.insert("cohomology".to_string(), ms(t));
    }

    Ok(Report {
        function: parsed.render(),
        variables: parsed.names.clone(),
        d: f.d(),
        delta: f.delta(),
        milnor_number,
        isolated,
        window: WindowInfo {
            bottom: window.bottom(),
            top: window.top(),
        },
        lambda: LambdaInfo {
            term_count: lambda.term_count(),
            polynomial: config.emit_lambda.then(|| parsed.render_loop_poly(&lambda)),
        },
        checks,
        cohomology,
        axioms,
        timing,
    })
}
