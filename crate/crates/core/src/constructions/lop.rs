use std::collections::HashMap;

use crate::algebra::VarId;
use crate::error::{Error, Result};
use crate::formulas::{gen_bop, gen_lop, pointer_width, Clause, Cnf, Literal};
use crate::proofs::{ResStep, ResolutionProof};

fn x(i: usize, j: usize) -> VarId {
    VarId::edge(i, j, 1)
}

/// `∨_{i ≤ m, i ≠ j} x(i,j)`: "`j` is not minimal among the first `m`".
pub fn prefix_clause(j: usize, m: usize) -> Clause {
    Clause::new((1..=m).filter(|&i| i != j).map(|i| Literal::pos(x(i, j)))).expect("positive literals")
}

pub(crate) fn clause_index(cnf: &Cnf) -> HashMap<&Clause, usize> {
    cnf.clauses.iter().enumerate().map(|(k, c)| (c, k)).collect()
}

struct Emitter<'a> {
    proof: ResolutionProof,
    index: HashMap<&'a Clause, usize>,
}

impl Emitter<'_> {
    fn input(&mut self, c: &Clause) -> usize {
        let k = *self.index.get(c).unwrap_or_else(|| panic!("{c} is not an input clause"));
        self.proof.push(ResStep::Input(k))
    }

    fn resolve(&mut self, i: usize, j: usize, pivot: VarId) -> usize {
        self.proof.push(ResStep::Resolve { i, j, pivot })
    }
}

/// Eliminates vertices `n, n-1, ..., 2`. For each `j < m`, the clause
/// `C_m^m` has each `x(i,m)` (`i ≠ j`) replaced by `-x(m,j) v x(i,j)` through
/// transitivity, `x(j,m)` removed through antisymmetry, and `-x(m,j)`
/// resolved against `C_j^m`, giving `C_j^{m-1}`. `C_1^1` is empty.
fn eliminate(em: &mut Emitter<'_>, n: usize, mut current: Vec<usize>) {
    // current[j] = line holding C_j^m, 1-based
    for m in (2..=n).rev() {
        let mut next = current.clone();
        for j in 1..m {
            let mut d = current[m];
            for i in (1..m).filter(|&i| i != j) {
                let t = em.input(&Clause::new([Literal::neg(x(i, m)), Literal::neg(x(m, j)), Literal::pos(x(i, j))]).unwrap());
                d = em.resolve(d, t, x(i, m));
            }
            let a = em.input(&Clause::new([Literal::neg(x(j, m)), Literal::neg(x(m, j))]).unwrap());
            d = em.resolve(d, a, x(j, m));
            next[j] = em.resolve(d, current[j], x(m, j));
        }
        current = next;
    }
}

/// `O(n^3)` resolution refutation of the ordering principle in which every
/// clause has at most two negative literals.
pub fn lop_resolution_refutation(n: usize) -> Result<ResolutionProof> {
    let cnf = gen_lop(n)?;
    let mut em = Emitter {
        proof: ResolutionProof::new(),
        index: clause_index(&cnf),
    };
    let mut vertex = vec![usize::MAX; n + 1];
    for (j, v) in vertex.iter_mut().enumerate().skip(1) {
        *v = em.input(&prefix_clause(j, n));
    }
    eliminate(&mut em, n, vertex);
    Ok(em.proof)
}

fn derive_vertex_clauses(em: &mut Emitter<'_>, n: usize) -> Vec<usize> {
    let bits = pointer_width(n);
    let mut vertex = vec![usize::MAX; n + 1];
    for (j, slot) in vertex.iter_mut().enumerate().skip(1) {
        let cnf_clauses: Vec<Clause> = (0..1usize << bits)
            .map(|v| {
                let i = crate::formulas::code_vertex(v);
                let mut lits: Vec<Literal> = crate::formulas::pointer_differs(j, v, bits).collect();
                if i <= n && i != j {
                    lits.push(Literal::pos(x(i, j)));
                }
                Clause::new(lits).unwrap()
            })
            .collect();
        let mut layer: Vec<usize> = cnf_clauses.iter().map(|c| em.input(c)).collect();
        // lowest bit first: codes 2u and 2u+1 differ in bit a
        for a in 1..=bits {
            layer = layer
                .chunks(2)
                .map(|pair| em.resolve(pair[0], pair[1], VarId::pointer(j, a)))
                .collect();
        }
        *slot = layer[0];
    }
    vertex
}

/// For every `j`, derives `∨_{i ≠ j} x(i,j)` from the pointer clauses of `j`
/// by a complete resolution tree over the pointer bits, lowest bit first.
/// Returns the proof and the line of each vertex clause (index `j`, 1-based).
pub fn bop_to_lop_derivation(n: usize) -> Result<(ResolutionProof, Vec<usize>)> {
    let cnf = gen_bop(n)?;
    let mut em = Emitter {
        proof: ResolutionProof::new(),
        index: clause_index(&cnf),
    };
    let vertex = derive_vertex_clauses(&mut em, n);
    Ok((em.proof, vertex))
}

/// Resolution refutation of the binary-pointer formula: the vertex clauses
/// are derived first, then eliminated as in [`lop_resolution_refutation`].
pub fn bop_resolution_refutation(n: usize) -> Result<ResolutionProof> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let cnf = gen_bop(n)?;
    let mut em = Emitter {
        proof: ResolutionProof::new(),
        index: clause_index(&cnf),
    };
    let vertex = derive_vertex_clauses(&mut em, n);
    eliminate(&mut em, n, vertex);
    Ok(em.proof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofs::{check_resolution, resolution_clauses};

    #[test]
    fn lop2_in_two_steps() {
        let p = lop_resolution_refutation(2).unwrap();
        assert_eq!(p.resolutions(), 2);
        let r = check_resolution(&p, &gen_lop(2).unwrap());
        assert!(r.valid && r.refutes);
    }

    #[test]
    fn lop_refutations_check() {
        for n in 2..=8 {
            let r = check_resolution(&lop_resolution_refutation(n).unwrap(), &gen_lop(n).unwrap());
            assert!(r.valid && r.refutes, "n = {n}");
            assert!(r.max_negative <= 2);
        }
    }

    #[test]
    fn vertex_tree_shape() {
        let (p, v) = bop_to_lop_derivation(3).unwrap();
        assert_eq!(p.resolutions(), 3 * 3);
        let cs = resolution_clauses(&p, &gen_bop(3).unwrap()).unwrap();
        for j in 1..=3 {
            assert_eq!(cs[v[j]], prefix_clause(j, 3));
        }
        let (p2, _) = bop_to_lop_derivation(2).unwrap();
        assert_eq!(p2.resolutions(), 2);
    }

    #[test]
    fn bop_refutation_checks() {
        for n in 2..=6 {
            let r = check_resolution(&bop_resolution_refutation(n).unwrap(), &gen_bop(n).unwrap());
            assert!(r.valid && r.refutes, "n = {n}");
        }
    }
}
