use std::collections::{BTreeMap, BTreeSet};

use super::lop::clause_index;
use crate::algebra::{Field, VarId, VarKind};
use crate::error::{Error, Result};
use crate::formulas::{gen_bop, gen_bop_lifted, AxiomSystem, Clause, Cnf, Literal};
use crate::proofs::{resolution_clauses, PcProof, ResStep, ResolutionProof};
use crate::transforms::res_to_pcr;

/// Index chosen for each negative edge literal of an unlifted clause.
type Choice = BTreeMap<VarId, usize>;

fn copy(v: VarId, l: usize) -> VarId {
    match v.kind() {
        VarKind::Edge { i, j, .. } => VarId::edge(i as usize, j as usize, l),
        _ => v,
    }
}

fn is_edge(v: VarId) -> bool {
    matches!(v.kind(), VarKind::Edge { .. })
}

fn lifted_clause(c: &Clause, sigma: &Choice, ell: usize) -> Clause {
    let mut lits = Vec::new();
    for &lit in c.literals() {
        let v = lit.var();
        if !is_edge(v) {
            lits.push(lit);
        } else if lit.is_positive() {
            lits.extend((1..=ell).map(|l| Literal::pos(copy(v, l))));
        } else {
            lits.push(Literal::neg(copy(v, sigma[&v])));
        }
    }
    Clause::new(lits).expect("lifting keeps clauses non-tautological")
}

fn restrict_choice(sigma: &Choice, c: &Clause) -> Choice {
    c.literals()
        .iter()
        .filter(|l| !l.is_positive() && is_edge(l.var()))
        .map(|l| (l.var(), sigma[&l.var()]))
        .collect()
}

/// Lifts a resolution refutation of an unlifted formula to its `ell`-fold
/// OR-lift (all edge variables lifted, independent indices).
///
/// Every derived clause `C` is instantiated once per index choice for its
/// negative edge literals that is actually needed below it. A resolution on
/// a pointer bit stays one step; a resolution on an edge variable becomes
/// `ell` steps, one per copy of the pivot.
pub fn lift_refutation(proof: &ResolutionProof, base: &Cnf, lifted: &Cnf, ell: usize) -> Result<ResolutionProof> {
    if base.ell != 1 || lifted.ell != ell {
        return Err(Error::InvalidParameter("lift_refutation needs an unlifted base and its ell-lift".into()));
    }
    let clauses = resolution_clauses(proof, base)?;
    let last = proof.len().checked_sub(1).ok_or_else(|| Error::InvalidParameter("empty proof".into()))?;

    // backward pass: which index choices each line must provide
    let mut needed: Vec<BTreeSet<Choice>> = vec![BTreeSet::new(); proof.len()];
    needed[last].insert(restrict_choice(&Choice::new(), &Clause::empty()));
    for k in (0..proof.len()).rev() {
        let ResStep::Resolve { i, j, pivot } = proof.steps[k] else {
            continue;
        };
        let (pos, neg) = if clauses[i].contains(Literal::pos(pivot)) { (i, j) } else { (j, i) };
        let wanted: Vec<Choice> = needed[k].iter().cloned().collect();
        for sigma in wanted {
            needed[pos].insert(restrict_choice(&sigma, &clauses[pos]));
            if is_edge(pivot) {
                for l in 1..=ell {
                    let mut s = sigma.clone();
                    s.insert(pivot, l);
                    needed[neg].insert(restrict_choice(&s, &clauses[neg]));
                }
            } else {
                needed[neg].insert(restrict_choice(&sigma, &clauses[neg]));
            }
        }
    }

    // forward pass
    let index = clause_index(lifted);
    let mut out = ResolutionProof::new();
    let mut at: Vec<BTreeMap<Choice, usize>> = vec![BTreeMap::new(); proof.len()];
    for k in 0..proof.len() {
        for sigma in &needed[k] {
            let line = match proof.steps[k] {
                ResStep::Input(c) => {
                    let lc = lifted_clause(&base.clauses[c], sigma, ell);
                    let idx = *index.get(&lc).ok_or_else(|| Error::InvalidProof {
                        line: k,
                        reason: format!("{lc} is not a clause of the lifted formula"),
                    })?;
                    out.push(ResStep::Input(idx))
                }
                ResStep::Resolve { i, j, pivot } => {
                    let (pos, neg) = if clauses[i].contains(Literal::pos(pivot)) { (i, j) } else { (j, i) };
                    let mut d = at[pos][&restrict_choice(sigma, &clauses[pos])];
                    if is_edge(pivot) {
                        for l in 1..=ell {
                            let mut s = sigma.clone();
                            s.insert(pivot, l);
                            let e = at[neg][&restrict_choice(&s, &clauses[neg])];
                            d = out.push(ResStep::Resolve {
                                i: d,
                                j: e,
                                pivot: copy(pivot, l),
                            });
                        }
                        d
                    } else {
                        let e = at[neg][&restrict_choice(sigma, &clauses[neg])];
                        out.push(ResStep::Resolve { i: d, j: e, pivot })
                    }
                }
            };
            at[k].insert(sigma.clone(), line);
        }
    }
    Ok(out)
}

/// Resolution refutation of the lifted binary-pointer formula with
/// `O(n^3 ell^2)` clauses.
pub fn lifted_refutation(n: usize, ell: usize) -> Result<ResolutionProof> {
    let base = gen_bop(n)?;
    let lifted = gen_bop_lifted(n, ell)?;
    lift_refutation(&super::bop_resolution_refutation(n)?, &base, &lifted, ell)
}

/// PCR refutation of the lifted binary-pointer formula obtained by simulating
/// [`lifted_refutation`]. Returns the proof and its axiom system.
pub fn pcr_upper_bound(n: usize, ell: usize, field: Field) -> Result<(PcProof, AxiomSystem)> {
    res_to_pcr(&lifted_refutation(n, ell)?, &gen_bop_lifted(n, ell)?, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofs::{check_pc, check_resolution};

    #[test]
    fn lifted_refutations_check() {
        for (n, ell) in [(2, 1), (2, 2), (3, 2), (4, 3), (5, 2)] {
            let p = lifted_refutation(n, ell).unwrap();
            let r = check_resolution(&p, &gen_bop_lifted(n, ell).unwrap());
            assert!(r.valid && r.refutes, "n={n} ell={ell}: {:?}", r.failure);
        }
    }

    #[test]
    fn ell_one_is_the_base_proof() {
        let p = lifted_refutation(4, 1).unwrap();
        assert_eq!(p.len(), super::super::bop_resolution_refutation(4).unwrap().len());
    }

    #[test]
    fn pcr_bound_refutes() {
        let (p, ax) = pcr_upper_bound(3, 2, Field::default()).unwrap();
        let r = check_pc(&p, &ax).unwrap();
        assert!(r.valid && r.refutes);
    }
}
