use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::builder::Builder;
use crate::algebra::text::parse_var;
use crate::algebra::{Fe, Polynomial, VarId};
use crate::error::{Error, Result};
use crate::formulas::{code_vertex, pointer_width, vertex_code, AxiomSystem, Clause, Cnf, Literal};
use crate::proofs::{materialize, PcProof, Step};

/// A partial truth assignment on base variables; twins follow their base.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Restriction {
    values: BTreeMap<VarId, bool>,
}

impl Restriction {
    pub fn new() -> Restriction {
        Restriction::default()
    }

    /// Assigns `var` (a twin assigns the negation to its base).
    pub fn set(&mut self, var: VarId, value: bool) -> Result<()> {
        let (base, value) = (var.base(), value != var.is_twin());
        match self.values.insert(base, value) {
            Some(old) if old != value => Err(Error::InconsistentTwin(base)),
            _ => Ok(()),
        }
    }

    /// Value of `var`, reading twins through their base.
    pub fn get(&self, var: VarId) -> Option<bool> {
        self.values.get(&var.base()).map(|&b| b != var.is_twin())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, bool)> + '_ {
        self.values.iter().map(|(&v, &b)| (v, b))
    }

    /// Lines `set <var> = true|false`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, b) in self.iter() {
            let _ = writeln!(out, "set {v} = {b}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Restriction> {
        let mut r = Restriction::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse {
                line: k + 1,
                msg: "expected `set <var> = true|false`".into(),
            };
            let (v, b) = line.strip_prefix("set ").and_then(|r| r.split_once('=')).ok_or_else(bad)?;
            let value = match b.trim() {
                "true" => true,
                "false" => false,
                _ => return Err(bad()),
            };
            r.set(parse_var(v.trim(), k + 1)?, value)?;
        }
        Ok(r)
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        p.restrict(|v| self.get(v))
    }
}

/// Restricted clauses: satisfied clauses vanish, falsified literals drop out.
/// The map sends each old clause to its new index.
pub fn restrict_cnf(cnf: &Cnf, rho: &Restriction) -> (Cnf, Vec<Option<usize>>) {
    let mut out = Cnf::new(cnf.n, cnf.ell);
    let mut map = Vec::with_capacity(cnf.len());
    for (c, g) in cnf.iter() {
        if c.literals().iter().any(|l| rho.get(l.var()).is_some_and(|b| l.satisfied_by(b))) {
            map.push(None);
            continue;
        }
        let kept: Vec<Literal> = c.literals().iter().copied().filter(|l| rho.get(l.var()).is_none()).collect();
        map.push(Some(out.len()));
        out.push(Clause::new(kept).expect("sub-clause of a clause"), g);
    }
    out.universe = cnf.universe.iter().copied().filter(|&v| rho.get(v).is_none()).collect();
    (out, map)
}

/// Restricted axioms; those that become zero are dropped.
pub fn restrict_axioms(sys: &AxiomSystem, rho: &Restriction) -> (AxiomSystem, Vec<Option<usize>>) {
    let mut out = AxiomSystem::new(sys.field, sys.basis, sys.n, sys.ell);
    let mut map = Vec::with_capacity(sys.len());
    for (p, &g) in sys.axioms.iter().zip(&sys.groups) {
        let q = rho.apply(p);
        if q.is_zero() {
            map.push(None);
        } else {
            map.push(Some(out.len()));
            out.push(q, g).expect("same basis");
        }
    }
    (out, map)
}

/// A restricted proof with its axioms and the old-to-new line map
/// (`None` marks lines that became zero).
#[derive(Clone, Debug)]
pub struct RestrictedProof {
    pub proof: PcProof,
    pub axioms: AxiomSystem,
    pub provenance: Vec<Option<usize>>,
}

/// Applies `rho` to every line. Multiplication by an assigned variable
/// becomes scaling by its value; lines that become zero are dropped and
/// references to them are removed.
pub fn restrict_proof(proof: &PcProof, axioms: &AxiomSystem, rho: &Restriction) -> Result<RestrictedProof> {
    let lines = materialize(proof, axioms)?;
    let (new_axioms, axiom_map) = restrict_axioms(axioms, rho);
    let f = proof.field;
    let mut b = Builder::new(PcProof::new(f, proof.basis));
    let mut map: Vec<Option<usize>> = Vec::with_capacity(lines.len());
    for step in &proof.steps {
        let entry = match *step {
            Step::Axiom(a) => axiom_map[a].map(|na| b.emit(Step::Axiom(na), new_axioms.axioms[na].clone())),
            Step::Square(_) => None,
            Step::Twin(v) => match rho.get(v) {
                Some(_) => None,
                None => {
                    let p = crate::proofs::twin_axiom(v, f, proof.basis);
                    Some(b.emit(Step::Twin(v), p))
                }
            },
            Step::LinComb { a, i, b: beta, j } => b.combine(a, map[i], beta, map[j]),
            Step::MulVar { var, i } => match (rho.get(var), map[i]) {
                (_, None) => None,
                (None, Some(l)) => Some(b.mul_var(var, l)),
                (Some(truth), Some(l)) => {
                    let e: Fe = proof.basis.encode(f, truth);
                    b.combine(e, Some(l), Fe::ZERO, None)
                }
            },
        };
        map.push(entry);
    }
    for (k, m) in map.iter().enumerate() {
        let want = rho.apply(&lines[k]);
        match m {
            Some(l) => debug_assert_eq!(b.lines[*l], want),
            None => debug_assert!(want.is_zero()),
        }
    }
    let mut out = b.proof;
    // keep the image of the last line last
    if let Some(Some(last)) = map.last() {
        if *last + 1 != out.len() {
            let k = out.push(Step::scale(Fe::ONE, *last));
            *map.last_mut().expect("nonempty") = Some(k);
        }
    }
    Ok(RestrictedProof {
        proof: out,
        axioms: new_axioms,
        provenance: map,
    })
}

fn set_pointer(rho: &mut Restriction, k: usize, target: usize, n: usize) -> Result<()> {
    let code = vertex_code(target);
    debug_assert_eq!(code_vertex(code), target);
    for a in 1..=pointer_width(n) {
        rho.set(VarId::pointer(k, a), (code >> (a - 1)) & 1 == 1)?;
    }
    Ok(())
}

/// The assignment making `j` the minimum: every `x(i,j,l)` FALSE, one copy
/// `x(j,k,l_k)` TRUE per `k`, and pointers of `extra` vertices aimed at `j`.
pub fn build_jcta(
    n: usize,
    ell: usize,
    j: usize,
    extra: &BTreeSet<usize>,
    lk: &BTreeMap<usize, usize>,
) -> Result<Restriction> {
    if j == 0 || j > n {
        return Err(Error::InvalidParameter(format!("vertex {j} is outside [1,{n}]")));
    }
    let mut rho = Restriction::new();
    for i in (1..=n).filter(|&i| i != j) {
        for l in 1..=ell {
            rho.set(VarId::edge(i, j, l), false)?;
        }
    }
    for k in (1..=n).filter(|&k| k != j) {
        let l = *lk
            .get(&k)
            .ok_or_else(|| Error::InvalidParameter(format!("no gadget index chosen for vertex {k}")))?;
        if l == 0 || l > ell {
            return Err(Error::InvalidParameter(format!("gadget index {l} outside [1,{ell}]")));
        }
        rho.set(VarId::edge(j, k, l), true)?;
    }
    for &k in extra {
        if k == j || k == 0 || k > n {
            return Err(Error::InvalidParameter(format!("cannot aim the pointer of {k} at {j}")));
        }
        set_pointer(&mut rho, k, j, n)?;
    }
    Ok(rho)
}

/// The restriction used before splitting around a heavily touched vertex
/// `j`: `x(i,j,l)` TRUE for `l != l_i`, and every `x(j,k,l)` FALSE.
pub fn heavy_vertex_restriction(n: usize, ell: usize, j: usize, li: &BTreeMap<usize, usize>) -> Result<Restriction> {
    let mut rho = Restriction::new();
    for i in (1..=n).filter(|&i| i != j) {
        let keep = *li
            .get(&i)
            .ok_or_else(|| Error::InvalidParameter(format!("no gadget index chosen for vertex {i}")))?;
        for l in (1..=ell).filter(|&l| l != keep) {
            rho.set(VarId::edge(i, j, l), true)?;
        }
        for l in 1..=ell {
            rho.set(VarId::edge(j, i, l), false)?;
        }
    }
    Ok(rho)
}
