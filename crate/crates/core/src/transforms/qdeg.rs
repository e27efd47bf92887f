use super::builder::{prune_to, Builder};
use crate::algebra::{Basis, Fe, Term};
use crate::error::{Error, Result};
use crate::formulas::AxiomSystem;
use crate::proofs::{materialize, PcProof, Step};

/// Rewrites a Fourier proof so that line `k` becomes `t_k * P_k` for a term
/// `t_k` of `P_k`, bounding the degree by twice the larger of the quadratic
/// degree and the axiom degree.
///
/// Axiom lines take `t_k` to be their leading term and are multiplied by it
/// one variable at a time. A line `x * P_j` takes `t_k = x t_j` and reuses
/// the rewritten `P_j`. A combination `a P_i + b P_j` takes `t_k` to be the
/// leading term of `P_k` and combines `(t_k t_i) P'_i` and `(t_k t_j) P'_j`.
pub fn qdeg_to_deg(proof: &PcProof, axioms: &AxiomSystem) -> Result<PcProof> {
    if proof.basis != Basis::Fourier {
        return Err(Error::BasisMismatch {
            expected: Basis::Fourier,
            found: proof.basis,
        });
    }
    let lines = materialize(proof, axioms)?;
    let mut b = Builder::new(PcProof::new(proof.field, proof.basis));
    // rewritten line number and chosen term; None for zero lines
    let mut out: Vec<Option<(usize, Term)>> = Vec::with_capacity(lines.len());
    for (k, step) in proof.steps.iter().enumerate() {
        let entry = match *step {
            _ if lines[k].is_zero() => None,
            Step::Axiom(_) | Step::Twin(_) => {
                let t = lines[k].leading_term()?.clone();
                let base = b.emit(step.clone(), lines[k].clone());
                Some((b.mul_term(&t, base), t))
            }
            Step::Square(_) => None,
            Step::MulVar { var, i } => out[i].clone().map(|(l, t)| (l, t.mul_var(var, Basis::Fourier))),
            Step::LinComb { a, i, b: beta, j } => {
                let t = lines[k].leading_term()?.clone();
                let mut part = |coef: Fe, src: &Option<(usize, Term)>| match src {
                    Some((l, ts)) if !coef.is_zero() => Some(b.mul_term(&t.mul(ts, Basis::Fourier), *l)),
                    _ => None,
                };
                let pi = part(a, &out[i]);
                let pj = part(beta, &out[j]);
                let line = b
                    .combine(a, pi, beta, pj)
                    .expect("t_k P_k is nonzero when P_k is");
                Some((line, t))
            }
        };
        if let Some((l, t)) = &entry {
            debug_assert_eq!(b.lines[*l], lines[k].mul_term(t));
        }
        out.push(entry);
    }
    if lines.last().is_some_and(|p| p.is_one()) {
        let target = out.last().cloned().flatten().expect("last line is 1").0;
        return Ok(prune_to(&b.proof, target).0);
    }
    Ok(b.proof)
}

/// Lines produced while multiplying `axiom` by its leading term, starting
/// with the axiom itself. Exposed for inspecting intermediate degrees.
pub fn axiom_multiplication_chain(axiom: &crate::algebra::Polynomial) -> Result<Vec<crate::algebra::Polynomial>> {
    let t = axiom.leading_term()?;
    let mut chain = vec![axiom.clone()];
    for &v in t.vars() {
        let next = chain.last().expect("nonempty").mul_var(v);
        chain.push(next);
    }
    Ok(chain)
}
