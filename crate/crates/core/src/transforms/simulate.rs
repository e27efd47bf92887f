use std::collections::HashMap;

use super::builder::Builder;
use crate::algebra::{Basis, Fe, Field, Polynomial, Term, VarId};
use crate::error::{Error, Result};
use crate::formulas::{clause_to_poly, cnf_to_axioms, AxiomSystem, Clause, Cnf};
use crate::proofs::{check_resolution, resolution_clauses, twin_axiom, PcProof, ResStep, ResolutionProof, Step};

fn monomial(c: &Clause) -> Term {
    c.literals()
        .iter()
        .map(|l| if l.is_positive() { l.var().twin() } else { l.var() })
        .collect()
}

/// Simulates a resolution refutation in PCR over the Boolean basis.
///
/// A clause is its falsifying monomial. Resolving `A` (with `x`) and `B`
/// (with `-x`) into `R` with monomial `r` takes `~x r` from `A`, `x r` from
/// `B`, and `(x + ~x - 1) r` from the twin axiom, then two combinations give
/// `r`. Twin-axiom multiples are shared between steps.
pub fn res_to_pcr(rproof: &ResolutionProof, cnf: &Cnf, field: Field) -> Result<(PcProof, AxiomSystem)> {
    let report = check_resolution(rproof, cnf);
    if !report.valid {
        return Err(Error::InvalidProof {
            line: report.first_bad_line.map_or(0, |k| k + 1),
            reason: report.failure.unwrap_or_default(),
        });
    }
    let clauses = resolution_clauses(rproof, cnf)?;
    let axioms = cnf_to_axioms(cnf, field, Basis::Boolean)?;
    let mut b = Builder::new(PcProof::new(field, Basis::Boolean));
    let mut line_of: Vec<usize> = Vec::with_capacity(clauses.len());
    // (pivot, prefix of r) -> line holding (x + ~x - 1) * prefix
    let mut twin_cache: HashMap<(VarId, Term), usize> = HashMap::new();
    let minus = field.neg(Fe::ONE);
    for (k, step) in rproof.steps.iter().enumerate() {
        let line = match *step {
            ResStep::Input(c) => b.emit(Step::Axiom(c), axioms.axioms[c].clone()),
            ResStep::Resolve { i, j, pivot } => {
                let x = pivot.base();
                let r = monomial(&clauses[k]);
                let (pos_parent, neg_parent) = if clauses[i].contains(crate::formulas::Literal::pos(x)) {
                    (i, j)
                } else {
                    (j, i)
                };
                let lift = |b: &mut Builder, parent: usize| {
                    let mut l = line_of[parent];
                    let have = monomial(&clauses[parent]);
                    for &v in r.vars() {
                        if !have.contains(v) {
                            l = b.mul_var(v, l);
                        }
                    }
                    l
                };
                let from_pos = lift(&mut b, pos_parent);
                let from_neg = lift(&mut b, neg_parent);
                let mut t = *twin_cache
                    .entry((x, Term::one()))
                    .or_insert_with(|| b.emit(Step::Twin(x), twin_axiom(x, field, Basis::Boolean)));
                let mut prefix = Term::one();
                for &v in r.vars() {
                    prefix = prefix.mul_var(v, Basis::Boolean);
                    t = match twin_cache.get(&(x, prefix.clone())) {
                        Some(&l) => l,
                        None => {
                            let l = b.mul_var(v, t);
                            twin_cache.insert((x, prefix.clone()), l);
                            l
                        }
                    };
                }
                let both = b.lincomb(Fe::ONE, from_pos, Fe::ONE, from_neg);
                b.lincomb(Fe::ONE, both, minus, t)
            }
        };
        debug_assert_eq!(b.lines[line], clause_to_poly(&clauses[k], field, Basis::Boolean));
        line_of.push(line);
    }
    let mut proof = b.proof;
    if let Some(&last) = line_of.last() {
        if last + 1 != proof.len() {
            proof.push(Step::scale(Fe::ONE, last));
        }
    }
    Ok((proof, axioms))
}

/// The Boolean polynomial of the empty clause is the constant 1.
pub fn empty_clause_poly(field: Field) -> Polynomial {
    clause_to_poly(&Clause::empty(), field, Basis::Boolean)
}
