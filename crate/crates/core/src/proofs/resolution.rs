use crate::algebra::VarId;
use crate::error::{Error, Result};
use crate::formulas::{Clause, Cnf};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ResStep {
    /// Input clause by 0-based index.
    Input(usize),
    /// Resolvent of two earlier lines on `pivot`.
    Resolve { i: usize, j: usize, pivot: VarId },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ResolutionProof {
    pub steps: Vec<ResStep>,
}

impl ResolutionProof {
    pub fn new() -> ResolutionProof {
        ResolutionProof::default()
    }

    pub fn push(&mut self, step: ResStep) -> usize {
        self.steps.push(step);
        self.steps.len() - 1
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of derived (non-input) lines.
    pub fn resolutions(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, ResStep::Resolve { .. }))
            .count()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResReport {
    pub valid: bool,
    /// Valid and the last clause is empty.
    pub refutes: bool,
    /// Number of lines (clauses) in the proof.
    pub clauses: usize,
    pub max_width: usize,
    /// Largest number of negative literals in a derived clause.
    pub max_negative: usize,
    pub first_bad_line: Option<usize>,
    pub failure: Option<String>,
}

fn derive(step: &ResStep, k: usize, cnf: &Cnf, lines: &[Clause]) -> std::result::Result<Clause, String> {
    match *step {
        ResStep::Input(c) => cnf
            .clauses
            .get(c)
            .cloned()
            .ok_or_else(|| format!("no input clause number {}", c + 1)),
        ResStep::Resolve { i, j, pivot } => {
            if i >= k || j >= k {
                return Err("resolution must use earlier lines".to_string());
            }
            lines[i].resolve(&lines[j], pivot).map_err(|e| e.to_string())
        }
    }
}

/// Checks every line and reports width statistics.
pub fn check_resolution(proof: &ResolutionProof, cnf: &Cnf) -> ResReport {
    let mut lines = Vec::with_capacity(proof.len());
    let mut report = ResReport {
        valid: true,
        clauses: proof.len(),
        ..ResReport::default()
    };
    for (k, step) in proof.steps.iter().enumerate() {
        match derive(step, k, cnf, &lines) {
            Ok(c) => {
                report.max_width = report.max_width.max(c.width());
                if matches!(step, ResStep::Resolve { .. }) {
                    report.max_negative = report.max_negative.max(c.negative_count());
                }
                lines.push(c);
            }
            Err(msg) => {
                report.valid = false;
                report.first_bad_line = Some(k);
                report.failure = Some(msg);
                return report;
            }
        }
    }
    report.refutes = lines.last().is_some_and(Clause::is_empty);
    report
}

/// The clause of every line of a valid proof.
pub fn resolution_clauses(proof: &ResolutionProof, cnf: &Cnf) -> Result<Vec<Clause>> {
    let mut lines = Vec::with_capacity(proof.len());
    for (k, step) in proof.steps.iter().enumerate() {
        let c = derive(step, k, cnf, &lines).map_err(|reason| Error::InvalidProof { line: k + 1, reason })?;
        lines.push(c);
    }
    Ok(lines)
}
