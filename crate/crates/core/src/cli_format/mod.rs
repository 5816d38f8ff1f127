//! The problem-file language, report documents and the command dispatcher behind the
//! `dglift` binary.

mod commands;
mod parser;
mod report;

use std::fmt;
use std::sync::Arc;

pub use commands::{run_command, Command, CommandOptions};
pub use parser::{parse_algebra_element, parse_module_element, parse_problem};
pub use report::{
    emit_report, CertificateReport, DeltaReport, Format, HomologyReport, ModuleResult, ModuleValidation,
    ObstructionEntry, ReportDocument, SuiteReport, ValidationReport, WitnessEntry,
};

use crate::coefficients::BaseRing;
use crate::free_dga::FreeDgAlgebra;
use crate::semifree_module::SemifreeModule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedModule {
    pub name: String,
    pub module: SemifreeModule,
}

/// One ring, one algebra over it, and any number of modules over the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemDescription {
    pub ring_name: String,
    pub algebra_name: String,
    pub algebra: Arc<FreeDgAlgebra>,
    pub modules: Vec<NamedModule>,
}

impl ProblemDescription {
    pub fn ring(&self) -> &BaseRing {
        self.algebra.ring()
    }

    pub fn module(&self, name: &str) -> Option<&SemifreeModule> {
        self.modules.iter().find(|m| m.name == name).map(|m| &m.module)
    }
}

fn write_ring(f: &mut fmt::Formatter<'_>, r: &BaseRing) -> fmt::Result {
    write!(f, "{}", r.field())?;
    if r.num_generators() > 0 {
        let gens: Vec<String> = r.generators().iter().map(|g| format!("{}:{}", g.name, g.degree)).collect();
        write!(f, "[{}]", gens.join(", "))?;
    }
    if !r.relations().is_empty() {
        let rels: Vec<String> = r.relations().iter().map(|e| r.format_monomial(e)).collect();
        write!(f, "/({})", rels.join(", "))?;
    }
    Ok(())
}

struct RingDisplay<'a>(&'a BaseRing);

impl fmt::Display for RingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ring(f, self.0)
    }
}

pub(crate) fn ring_string(r: &BaseRing) -> String {
    RingDisplay(r).to_string()
}

/// Prints the problem back in the input language; parsing the output gives an equal value.
impl fmt::Display for ProblemDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &*self.algebra;
        write!(f, "ring {} = ", self.ring_name)?;
        write_ring(f, b.ring())?;
        writeln!(f)?;

        let decls: Vec<String> = b
            .variables()
            .iter()
            .map(|v| {
                if v.differential.is_zero() {
                    format!("{}:{}:{}", v.name, v.hom_degree, v.int_degree)
                } else {
                    format!("{}:{}", v.name, v.hom_degree)
                }
            })
            .collect();
        let diffs: Vec<String> = b
            .variables()
            .iter()
            .filter(|v| !v.differential.is_zero())
            .map(|v| format!("d{} = {}", v.name, b.format_element(&v.differential)))
            .collect();
        write!(f, "algebra {} = {}<{}", self.algebra_name, self.ring_name, decls.join(", "))?;
        if !diffs.is_empty() {
            write!(f, " | {}", diffs.join(", "))?;
        }
        writeln!(f, ">")?;

        for m in &self.modules {
            let n = &m.module;
            let decls: Vec<String> = n
                .basis()
                .iter()
                .map(|e| format!("{}:{}:{}", e.label, e.hom_degree, e.int_degree))
                .collect();
            let diffs: Vec<String> = (0..n.rank())
                .map(|i| {
                    format!(
                        "d{} = {}",
                        n.basis()[i].label,
                        n.format_element(&n.diff(&n.generator(i)))
                    )
                })
                .collect();
            write!(f, "module {} over {} = <{}", m.name, self.algebra_name, decls.join(", "))?;
            if !diffs.is_empty() {
                write!(f, " | {}", diffs.join(", "))?;
            }
            writeln!(f, ">")?;
        }
        Ok(())
    }
}
