//! Generators for the ordering-principle families and the Tseitin cycle.

use std::collections::BTreeSet;

use super::{AxiomSystem, Clause, Cnf, Group, Literal};
use crate::algebra::{Basis, Field, Polynomial, Term, VarId, VarKind};
use crate::error::{Error, Result};

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

fn clause(lits: impl IntoIterator<Item = Literal>) -> Clause {
    Clause::new(lits).expect("generated clauses are never tautological")
}

/// Number of pointer bits for `n` vertices: `ceil(log2 n)`, at least 1.
pub fn pointer_width(n: usize) -> usize {
    (usize::BITS - (n.max(2) - 1).leading_zeros()) as usize
}

/// Vertex encoded by pointer code `v`.
pub fn code_vertex(v: usize) -> usize {
    v + 1
}

/// Pointer code of vertex `i`.
pub fn vertex_code(i: usize) -> usize {
    i - 1
}

/// Literals of the clause "pointer of `j` is not `v`".
pub fn pointer_differs(j: usize, v: usize, bits: usize) -> impl Iterator<Item = Literal> {
    (1..=bits).map(move |a| {
        let y = VarId::pointer(j, a);
        if (v >> (a - 1)) & 1 == 1 {
            Literal::neg(y)
        } else {
            Literal::pos(y)
        }
    })
}

fn push_ordering(cnf: &mut Cnf, n: usize) {
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i != j && j != k && i != k {
                    cnf.push(
                        clause([
                            Literal::neg(VarId::edge(i, j, 1)),
                            Literal::neg(VarId::edge(j, k, 1)),
                            Literal::pos(VarId::edge(i, k, 1)),
                        ]),
                        Group::Ordering,
                    );
                }
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            cnf.push(
                clause([
                    Literal::neg(VarId::edge(i, j, 1)),
                    Literal::neg(VarId::edge(j, i, 1)),
                ]),
                Group::Ordering,
            );
        }
    }
}

fn edge_universe(cnf: &mut Cnf, n: usize, ell: usize) {
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                cnf.universe.extend((1..=ell).map(|l| VarId::edge(i, j, l)));
            }
        }
    }
}

/// Linear ordering principle: `x(i,j,1)` reads "i precedes j"; every vertex
/// has a predecessor, the order is transitive and antisymmetric.
pub fn gen_lop(n: usize) -> Result<Cnf> {
    need(n >= 2, "the ordering principle needs n >= 2")?;
    let mut cnf = Cnf::new(n, 1);
    for j in 1..=n {
        cnf.push(
            clause((1..=n).filter(|&i| i != j).map(|i| Literal::pos(VarId::edge(i, j, 1)))),
            Group::Vertex(j),
        );
    }
    push_ordering(&mut cnf, n);
    edge_universe(&mut cnf, n, 1);
    Ok(cnf)
}

/// Ordering principle with binary pointers: the pointer of `j` names a
/// predecessor. Codes naming `j` itself or no vertex are prohibited.
pub fn gen_bop(n: usize) -> Result<Cnf> {
    need(n >= 2, "the ordering principle needs n >= 2")?;
    let bits = pointer_width(n);
    let mut cnf = Cnf::new(n, 1);
    for j in 1..=n {
        for v in 0..1usize << bits {
            let i = code_vertex(v);
            let mut lits: Vec<Literal> = pointer_differs(j, v, bits).collect();
            if i <= n && i != j {
                lits.push(Literal::pos(VarId::edge(i, j, 1)));
            }
            cnf.push(clause(lits), Group::Vertex(j));
        }
    }
    push_ordering(&mut cnf, n);
    edge_universe(&mut cnf, n, 1);
    Ok(cnf)
}

fn lifted(v: VarId, l: usize) -> VarId {
    match v.kind() {
        VarKind::Edge { i, j, .. } => VarId::edge(i as usize, j as usize, l),
        _ => unreachable!("only edge variables are lifted"),
    }
}

fn lift_with(
    cnf: &Cnf,
    ell: usize,
    lift_set: &BTreeSet<VarId>,
    choices: impl Fn(usize) -> Vec<Vec<usize>>,
) -> Result<Cnf> {
    need(ell >= 1, "lifting needs ell >= 1")?;
    need(cnf.ell == 1, "the input formula is already lifted")?;
    if let Some(v) = lift_set.iter().find(|v| !matches!(v.kind(), VarKind::Edge { .. })) {
        return Err(Error::ForeignVariable(*v));
    }
    let mut out = Cnf::new(cnf.n, ell);
    for (c, g) in cnf.iter() {
        let mut fixed = Vec::new();
        let mut negs = Vec::new();
        for &lit in c.literals() {
            if !lift_set.contains(&lit.var()) {
                fixed.push(lit);
            } else if lit.is_positive() {
                fixed.extend((1..=ell).map(|l| Literal::pos(lifted(lit.var(), l))));
            } else {
                negs.push(lit.var());
            }
        }
        for idx in choices(negs.len()) {
            let lits = fixed
                .iter()
                .copied()
                .chain(negs.iter().zip(&idx).map(|(&v, &l)| Literal::neg(lifted(v, l))));
            out.push(Clause::new(lits)?, g);
        }
    }
    for &v in &cnf.universe {
        if lift_set.contains(&v) {
            out.universe.extend((1..=ell).map(|l| lifted(v, l)));
        } else {
            out.universe.insert(v);
        }
    }
    Ok(out)
}

/// All index tuples in `[1, ell]^k`, lexicographic.
fn index_tuples(k: usize, ell: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=ell).map(move |l| {
                    let mut t = t.clone();
                    t.push(l);
                    t
                })
            })
            .collect();
    }
    out
}

/// Replaces each variable of `lift_set` by an OR of `ell` copies. A clause
/// with `k` negative lifted literals expands to `ell^k` clauses, one per
/// independent index choice.
pub fn or_lift(cnf: &Cnf, ell: usize, lift_set: &BTreeSet<VarId>) -> Result<Cnf> {
    lift_with(cnf, ell, lift_set, |k| index_tuples(k, ell))
}

/// Variant where all negative lifted literals of a clause share one index.
/// It is satisfiable already at `n = 2, ell = 2`, which is why the
/// independent-index expansion is the default.
pub fn or_lift_diagonal(cnf: &Cnf, ell: usize, lift_set: &BTreeSet<VarId>) -> Result<Cnf> {
    lift_with(cnf, ell, lift_set, |k| {
        if k == 0 {
            vec![Vec::new()]
        } else {
            (1..=ell).map(|l| vec![l; k]).collect()
        }
    })
}

fn edge_vars(cnf: &Cnf) -> BTreeSet<VarId> {
    cnf.universe
        .iter()
        .copied()
        .filter(|v| matches!(v.kind(), VarKind::Edge { .. }))
        .collect()
}

/// The OR-lifted binary-pointer ordering principle.
pub fn gen_bop_lifted(n: usize, ell: usize) -> Result<Cnf> {
    let base = gen_bop(n)?;
    or_lift(&base, ell, &edge_vars(&base))
}

/// [`gen_bop_lifted`] with shared negative indices.
pub fn gen_bop_lifted_diagonal(n: usize, ell: usize) -> Result<Cnf> {
    let base = gen_bop(n)?;
    or_lift_diagonal(&base, ell, &edge_vars(&base))
}

/// Variables `x1..xn` of the Tseitin cycle.
pub fn cycle_var(k: usize) -> VarId {
    VarId::plain(&format!("x{k}"))
}

/// Odd charge on an `n`-cycle over the Fourier basis:
/// `x_k x_{k+1} - 1` for `k < n` and `x_n x_1 + 1`.
pub fn gen_cycle_tseitin(n: usize, field: Field) -> Result<AxiomSystem> {
    need(n >= 3, "the Tseitin cycle needs n >= 3")?;
    let mut sys = AxiomSystem::new(field, Basis::Fourier, n, 1);
    for k in 1..=n {
        let next = if k == n { 1 } else { k + 1 };
        let rhs: i64 = if k == n { 1 } else { -1 };
        let p = Polynomial::from_terms(
            field,
            Basis::Fourier,
            [
                (Term::from_vars([cycle_var(k), cycle_var(next)]), field.elem(1)),
                (Term::one(), field.elem(rhs)),
            ],
        );
        sys.push(p, Group::Other)?;
    }
    Ok(sys)
}
