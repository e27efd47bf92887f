use std::collections::BTreeSet;

use super::builder::{prune_to, Builder};
use crate::algebra::{Basis, Polynomial, Term, VarId};
use crate::error::{Error, Result};
use crate::formulas::AxiomSystem;
use crate::proofs::{materialize, quadratic_terms, PcProof, Step};

/// Writes `p = x * high + low` with `high` and `low` free of `x`.
pub fn split_line(p: &Polynomial, x: VarId) -> (Polynomial, Polynomial) {
    let mut high = Polynomial::zero(p.field(), p.basis());
    let mut low = Polynomial::zero(p.field(), p.basis());
    for (t, c) in p.terms() {
        if t.contains(x) {
            high.add_term(t.without(x), c);
        } else {
            low.add_term(t.clone(), c);
        }
    }
    (high, low)
}

fn check_split_preconditions(proof: &PcProof, axioms: &AxiomSystem, x: VarId) -> Result<()> {
    if proof.basis != Basis::Fourier {
        return Err(Error::BasisMismatch {
            expected: Basis::Fourier,
            found: proof.basis,
        });
    }
    let (x, xt) = (x.base(), x.base().twin());
    let used: BTreeSet<usize> = proof
        .steps
        .iter()
        .filter_map(|s| match s {
            Step::Axiom(a) => Some(*a),
            _ => None,
        })
        .collect();
    for a in used {
        let vars = axioms
            .axioms
            .get(a)
            .ok_or_else(|| Error::InvalidProof {
                line: 0,
                reason: format!("no axiom number {}", a + 1),
            })?
            .vars();
        if vars.contains(&x) || vars.contains(&xt) {
            return Err(Error::Precondition(format!("{x} occurs in axiom {}", a + 1)));
        }
    }
    for (k, s) in proof.steps.iter().enumerate() {
        match *s {
            Step::Twin(v) if v.base() == x => {
                return Err(Error::Precondition(format!("line {} is a twin axiom on {x}", k + 1)))
            }
            Step::MulVar { var, .. } if var == xt => {
                return Err(Error::Precondition(format!("line {} multiplies by {xt}", k + 1)))
            }
            _ => {}
        }
    }
    Ok(())
}

/// Split at `x` over the Fourier basis. Each line `P = x P1 + P0` is replaced
/// by derivations of its components; zero components are dropped. When the
/// input refutes, the output keeps only what the final `1` depends on.
pub fn split(proof: &PcProof, axioms: &AxiomSystem, x: VarId) -> Result<PcProof> {
    check_split_preconditions(proof, axioms, x)?;
    let x = x.base();
    let lines = materialize(proof, axioms)?;
    let mut b = Builder::new(PcProof::new(proof.field, proof.basis));
    // (high, low) component line numbers; None is the zero polynomial
    let mut comp: Vec<(Option<usize>, Option<usize>)> = Vec::with_capacity(lines.len());
    for (k, step) in proof.steps.iter().enumerate() {
        let c = match *step {
            Step::Axiom(_) | Step::Twin(_) => {
                if lines[k].is_zero() {
                    (None, None)
                } else {
                    (None, Some(b.emit(step.clone(), lines[k].clone())))
                }
            }
            Step::Square(_) => (None, None),
            Step::LinComb { a, i, b: beta, j } => {
                let (hi, lo) = (comp[i], comp[j]);
                (b.combine(a, hi.0, beta, lo.0), b.combine(a, hi.1, beta, lo.1))
            }
            Step::MulVar { var, i } if var == x => (comp[i].1, comp[i].0),
            Step::MulVar { var, i } => (comp[i].0.map(|h| b.mul_var(var, h)), comp[i].1.map(|l| b.mul_var(var, l))),
        };
        debug_assert_eq!(
            (
                c.0.map(|h| b.lines[h].clone()).unwrap_or_else(|| Polynomial::zero(proof.field, proof.basis)),
                c.1.map(|l| b.lines[l].clone()).unwrap_or_else(|| Polynomial::zero(proof.field, proof.basis)),
            ),
            split_line(&lines[k], x)
        );
        comp.push(c);
    }
    let refutes = lines.last().is_some_and(Polynomial::is_one);
    if refutes {
        let target = comp.last().and_then(|c| c.1).expect("the low part of 1 is 1");
        return Ok(prune_to(&b.proof, target).0);
    }
    Ok(b.proof)
}

/// `QT(after) ⊆ QT(before) \ QT_x(before)`, where `QT_x` holds the quadratic
/// terms containing `x`.
pub fn quadratic_containment_check(before: &[Polynomial], after: &[Polynomial], x: VarId) -> Result<bool> {
    let qt_before = quadratic_terms(before)?;
    let qt_after = quadratic_terms(after)?;
    let x = x.base();
    Ok(qt_after
        .iter()
        .all(|t: &Term| qt_before.contains(t) && !t.contains(x) && !t.contains(x.twin())))
}
