//! Command dispatch: each command turns a parsed problem into a [`ReportDocument`].

use std::str::FromStr;
use std::time::Instant;

use super::report::{
    CertificateReport, DeltaReport, Format, HomologyReport, ModuleResult, ModuleValidation, ObstructionEntry,
    ReportDocument, ValidationReport, WitnessEntry,
};
use super::{parse_algebra_element, ring_string, NamedModule, ProblemDescription};
use crate::error::{Error, Result};
use crate::obstruction::{
    check_naive_lift_with, default_method, delta_n, DeltaMode, LiftCertificate, Method, ObstructionReport,
};
use crate::scalar::Scalar;
use crate::semifree_module::{SemifreeModule, TensorJElement};
use crate::selftest;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Delta,
    Obstruction,
    CheckLift,
    Homology,
    Selftest,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Delta => "delta",
            Command::Obstruction => "obstruction",
            Command::CheckLift => "check-lift",
            Command::Homology => "homology",
            Command::Selftest => "selftest",
        }
    }

    pub fn needs_problem(self) -> bool {
        self != Command::Selftest
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "validate" => Command::Validate,
            "delta" => Command::Delta,
            "obstruction" => Command::Obstruction,
            "check-lift" => Command::CheckLift,
            "homology" => Command::Homology,
            "selftest" => Command::Selftest,
            other => return Err(Error::Usage(format!("unknown command `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOptions {
    /// `None` selects every module in the file.
    pub module: Option<String>,
    pub bidegree: Option<(i32, i32)>,
    pub witness: bool,
    pub format: Format,
    /// Algebra expression for `delta`; without it every variable is reported.
    pub element: Option<String>,
    pub method: Option<Method>,
}

pub fn run_command(
    cmd: Command,
    problem: Option<&ProblemDescription>,
    opts: &CommandOptions,
) -> Result<ReportDocument> {
    let start = Instant::now();
    let mut doc = ReportDocument {
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: cmd.as_str().to_string(),
        problem: problem.map(ToString::to_string),
        results: Vec::new(),
        delta: None,
        homology: None,
        validation: None,
        selftest: None,
        timing_ms: 0,
    };
    if cmd == Command::Selftest {
        doc.selftest = Some(selftest::run_all(selftest::DEFAULT_SEED));
    } else {
        let problem = problem.ok_or_else(|| Error::Usage(format!("`{}` needs a problem file", cmd.as_str())))?;
        match cmd {
            Command::Validate => doc.validation = Some(validate(problem, opts)?),
            Command::Delta => doc.delta = Some(delta(problem, opts)?),
            Command::Obstruction => {
                for m in selected(problem, opts)? {
                    doc.results.push(ModuleResult {
                        module: m.name.clone(),
                        decision: None,
                        method: None,
                        obstruction: obstruction_entries(&m.module, &delta_n(&m.module, DeltaMode::ViaFormula)),
                        witness: None,
                        certificate: None,
                    });
                }
            }
            Command::CheckLift => {
                for m in selected(problem, opts)? {
                    let method = opts.method.unwrap_or_else(|| default_method(&m.module));
                    let report = check_naive_lift_with(&m.module, method)?;
                    doc.results.push(module_result(m, &report, opts.witness));
                }
            }
            Command::Homology => doc.homology = Some(homology(problem, opts)?),
            Command::Selftest => unreachable!(),
        }
    }
    doc.timing_ms = start.elapsed().as_millis() as u64;
    log::info!("{} finished in {} ms", cmd.as_str(), doc.timing_ms);
    Ok(doc)
}

fn selected<'a>(problem: &'a ProblemDescription, opts: &CommandOptions) -> Result<Vec<&'a NamedModule>> {
    match &opts.module {
        None => Ok(problem.modules.iter().collect()),
        Some(name) => problem
            .modules
            .iter()
            .find(|m| &m.name == name)
            .map(|m| vec![m])
            .ok_or_else(|| Error::Usage(format!("no module named `{name}`"))),
    }
}

fn validate(problem: &ProblemDescription, opts: &CommandOptions) -> Result<ValidationReport> {
    let b = &*problem.algebra;
    let variables = b
        .variables()
        .iter()
        .map(|v| {
            format!(
                "{}:{}:{} d{} = {}",
                v.name,
                v.hom_degree,
                v.int_degree,
                v.name,
                b.format_element(&v.differential)
            )
        })
        .collect();
    let mut modules = Vec::new();
    for m in selected(problem, opts)? {
        modules.push(ModuleValidation {
            module: m.name.clone(),
            basis: m
                .module
                .basis()
                .iter()
                .map(|e| format!("{}:{}:{}", e.label, e.hom_degree, e.int_degree))
                .collect(),
            square_zero: m.module.check_square_zero().is_ok(),
        });
    }
    Ok(ValidationReport {
        ring: ring_string(b.ring()),
        variables,
        modules,
    })
}

fn delta(problem: &ProblemDescription, opts: &CommandOptions) -> Result<Vec<DeltaReport>> {
    let b = &*problem.algebra;
    let env = b.envelope();
    let inputs = match &opts.element {
        Some(text) => vec![(text.trim().to_string(), parse_algebra_element(problem, text)?)],
        None => (0..b.num_variables())
            .map(|i| (b.variables()[i].name.clone(), b.variable(i)))
            .collect(),
    };
    Ok(inputs
        .into_iter()
        .map(|(name, a)| {
            let d = env.delta(&a);
            DeltaReport {
                element: name,
                value: env.format_diagonal(&d),
                expanded: env.format_diagonal_raw(&d),
            }
        })
        .collect())
}

fn homology(problem: &ProblemDescription, opts: &CommandOptions) -> Result<HomologyReport> {
    let (n, w) = opts
        .bidegree
        .ok_or_else(|| Error::Usage("`homology` needs --bidegree n,w".into()))?;
    let env = problem.algebra.envelope();
    Ok(HomologyReport {
        bidegree: [n, w],
        chain_dim: env.diagonal_basis(n, w).len(),
        boundary_rank: env.diff_block(n + 1, w).rank(),
        dimension: env.homology_dim(n, w)?,
    })
}

fn obstruction_entries(n: &SemifreeModule, values: &[TensorJElement]) -> Vec<ObstructionEntry> {
    n.basis()
        .iter()
        .zip(values)
        .map(|(e, v)| ObstructionEntry {
            basis: e.label.clone(),
            value: n.format_tensor(v),
            expanded: n.format_tensor_env(&n.iota_n(v)),
        })
        .collect()
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn certificate_report(c: &LiftCertificate) -> CertificateReport {
    let m = &c.matrix;
    CertificateReport {
        rows: m.row_labels().to_vec(),
        columns: m.col_labels().to_vec(),
        matrix: m.rows().iter().map(|r| strings(r)).collect(),
        target: strings(&c.target),
        reduced_augmented: c.inconsistency.reduced_augmented.iter().map(|r| strings(r)).collect(),
        left_null: strings(&c.inconsistency.left_null),
        rank: c.inconsistency.rank,
        augmented_rank: c.inconsistency.augmented_rank,
        verified: c.verify(),
    }
}

fn module_result(m: &NamedModule, report: &ObstructionReport, with_witness: bool) -> ModuleResult {
    let n = &m.module;
    let witness = report.witness.as_ref().filter(|_| with_witness).map(|w| {
        n.basis()
            .iter()
            .zip(w.gammas())
            .map(|(e, g)| WitnessEntry {
                basis: e.label.clone(),
                gamma: n.format_tensor(g),
                expanded: n.format_tensor_env(&n.iota_n(g)),
            })
            .collect()
    });
    ModuleResult {
        module: m.name.clone(),
        decision: Some(report.decision),
        method: Some(report.method),
        obstruction: obstruction_entries(n, &report.obstruction),
        witness,
        certificate: report.certificate.as_ref().map(certificate_report),
    }
}
