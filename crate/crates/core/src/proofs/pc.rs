use std::collections::HashMap;

use crate::algebra::{Basis, Fe, Field, Polynomial, Term, VarId};
use crate::error::{Error, Result};
use crate::formulas::AxiomSystem;

/// One derivation step. Line references are 0-based and must point backwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// Input axiom by 0-based index.
    Axiom(usize),
    /// `x^2 - x` or `x^2 - 1`; multilinear reduction makes it the zero polynomial.
    Square(VarId),
    /// `x + ~x - 1` (Boolean) or `x ~x + 1` (Fourier), for the base of the given variable.
    Twin(VarId),
    /// `a * L[i] + b * L[j]`.
    LinComb { a: Fe, i: usize, b: Fe, j: usize },
    /// `var * L[i]`.
    MulVar { var: VarId, i: usize },
}

impl Step {
    pub fn refs(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            Step::LinComb { i, j, .. } => (Some(i), Some(j)),
            Step::MulVar { i, .. } => (Some(i), None),
            _ => (None, None),
        };
        a.into_iter().chain(b)
    }

    /// Scalar combination with a zero second coefficient.
    pub fn scale(a: Fe, i: usize) -> Step {
        Step::LinComb { a, i, b: Fe::ZERO, j: i }
    }
}

/// A PC/PCR derivation over a fixed basis and field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PcProof {
    pub field: Field,
    pub basis: Basis,
    pub steps: Vec<Step>,
}

impl PcProof {
    pub fn new(field: Field, basis: Basis) -> PcProof {
        PcProof {
            field,
            basis,
            steps: Vec::new(),
        }
    }

    /// Appends a step and returns its line index.
    pub fn push(&mut self, step: Step) -> usize {
        self.steps.push(step);
        self.steps.len() - 1
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// The polynomial of a twin axiom on the base of `v`.
pub fn twin_axiom(v: VarId, field: Field, basis: Basis) -> Polynomial {
    let x = v.base();
    match basis {
        Basis::Boolean => Polynomial::from_terms(
            field,
            basis,
            [
                (Term::var(x), Fe::ONE),
                (Term::var(x.twin()), Fe::ONE),
                (Term::one(), field.neg(Fe::ONE)),
            ],
        ),
        Basis::Fourier => Polynomial::from_terms(
            field,
            basis,
            [(Term::from_vars([x, x.twin()]), Fe::ONE), (Term::one(), Fe::ONE)],
        ),
    }
}

/// Outcome of checking a proof.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub valid: bool,
    /// Valid and the last line is the constant 1.
    pub refutes: bool,
    pub lines: usize,
    /// Total monomial count over all lines checked.
    pub size: usize,
    pub degree: usize,
    /// 0-based index of the first malformed line.
    pub first_bad_line: Option<usize>,
    pub failure: Option<String>,
}

fn derive_line(
    step: &Step,
    k: usize,
    proof: &PcProof,
    axioms: &AxiomSystem,
    get: impl Fn(usize) -> Option<Polynomial>,
) -> std::result::Result<Polynomial, String> {
    let fetch = |i: usize| -> std::result::Result<Polynomial, String> {
        if i >= k {
            return Err(format!("reference to line {} is not earlier", i + 1));
        }
        get(i).ok_or_else(|| format!("line {} is not available", i + 1))
    };
    match *step {
        Step::Axiom(a) => axioms
            .axioms
            .get(a)
            .cloned()
            .ok_or_else(|| format!("no axiom number {}", a + 1)),
        Step::Square(_) => Ok(Polynomial::zero(proof.field, proof.basis)),
        Step::Twin(v) => Ok(twin_axiom(v, proof.field, proof.basis)),
        Step::LinComb { a, i, b, j } => {
            let p = fetch(i)?;
            let q = fetch(j)?;
            p.lincomb(a, &q, b).map_err(|e| e.to_string())
        }
        Step::MulVar { var, i } => Ok(fetch(i)?.mul_var(var)),
    }
}

fn check_compat(proof: &PcProof, axioms: &AxiomSystem) -> Result<()> {
    if proof.basis != axioms.basis {
        return Err(Error::BasisMismatch {
            expected: axioms.basis,
            found: proof.basis,
        });
    }
    if proof.field != axioms.field {
        return Err(Error::FieldMismatch {
            expected: axioms.field.modulus(),
            found: proof.field.modulus(),
        });
    }
    Ok(())
}

/// Recomputes every line, keeping a line only until its last reference.
pub fn check_pc(proof: &PcProof, axioms: &AxiomSystem) -> Result<Report> {
    check_compat(proof, axioms)?;
    let n = proof.steps.len();
    let mut last_use = vec![0usize; n];
    for (k, s) in proof.steps.iter().enumerate() {
        for r in s.refs() {
            if r < k {
                last_use[r] = k;
            }
        }
    }
    let mut live: HashMap<usize, Polynomial> = HashMap::new();
    let mut report = Report {
        valid: true,
        lines: n,
        ..Report::default()
    };
    let mut last = None;
    for (k, step) in proof.steps.iter().enumerate() {
        let line = match derive_line(step, k, proof, axioms, |i| live.get(&i).cloned()) {
            Ok(p) => p,
            Err(msg) => {
                report.valid = false;
                report.first_bad_line = Some(k);
                report.failure = Some(msg);
                return Ok(report);
            }
        };
        report.size += line.monomial_count();
        report.degree = report.degree.max(line.degree());
        for r in step.refs() {
            if last_use[r] == k {
                live.remove(&r);
            }
        }
        if k + 1 == n {
            last = Some(line);
        } else if last_use[k] > k {
            live.insert(k, line);
        }
    }
    report.refutes = last.is_some_and(|p| p.is_one());
    Ok(report)
}

/// All lines of a valid proof.
pub fn materialize(proof: &PcProof, axioms: &AxiomSystem) -> Result<Vec<Polynomial>> {
    check_compat(proof, axioms)?;
    let mut lines: Vec<Polynomial> = Vec::with_capacity(proof.steps.len());
    for (k, step) in proof.steps.iter().enumerate() {
        let p = derive_line(step, k, proof, axioms, |i| lines.get(i).cloned())
            .map_err(|reason| Error::InvalidProof { line: k + 1, reason })?;
        lines.push(p);
    }
    Ok(lines)
}
