use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Basis, Polynomial, Term, VarId, VarKind};
use crate::error::{Error, Result};

/// Pairs of terms sharing a line (unordered, self-pairs included) and their
/// reduced products.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuadraticSet {
    pub pairs: BTreeSet<(Term, Term)>,
    pub terms: BTreeSet<Term>,
}

impl QuadraticSet {
    pub fn degree(&self) -> usize {
        self.terms.iter().map(Term::degree).max().unwrap_or(0)
    }
}

fn require_fourier<'a>(lines: impl IntoIterator<Item = &'a Polynomial>) -> Result<()> {
    match lines.into_iter().find(|p| p.basis() != Basis::Fourier) {
        Some(p) => Err(Error::BasisMismatch {
            expected: Basis::Fourier,
            found: p.basis(),
        }),
        None => Ok(()),
    }
}

/// Pairs and products over all lines (Fourier only).
pub fn quadratic_set(lines: &[Polynomial]) -> Result<QuadraticSet> {
    require_fourier(lines)?;
    let mut q = QuadraticSet::default();
    for p in lines {
        let ts: Vec<&Term> = p.terms().map(|(t, _)| t).collect();
        for (a, t1) in ts.iter().enumerate() {
            for t2 in &ts[a..] {
                q.terms.insert(t1.mul(t2, Basis::Fourier));
                q.pairs.insert(((*t1).clone(), (*t2).clone()));
            }
        }
    }
    Ok(q)
}

/// Quadratic terms only, without storing the pairs.
pub fn quadratic_terms<'a>(lines: impl IntoIterator<Item = &'a Polynomial>) -> Result<BTreeSet<Term>> {
    let mut out = BTreeSet::new();
    for p in lines {
        require_fourier([p])?;
        let ts: Vec<&Term> = p.terms().map(|(t, _)| t).collect();
        for (a, t1) in ts.iter().enumerate() {
            for t2 in &ts[a..] {
                out.insert(t1.mul(t2, Basis::Fourier));
            }
        }
    }
    Ok(out)
}

/// Largest degree of a quadratic term.
pub fn quadratic_degree<'a>(lines: impl IntoIterator<Item = &'a Polynomial>) -> Result<usize> {
    let mut d = 0;
    for p in lines {
        require_fourier([p])?;
        let ts: Vec<&Term> = p.terms().map(|(t, _)| t).collect();
        for (a, t1) in ts.iter().enumerate() {
            for t2 in &ts[a..] {
                // |t1 xor t2| without building the product
                let common = t1.vars().iter().filter(|v| t2.contains(**v)).count();
                d = d.max(t1.degree() + t2.degree() - 2 * common);
            }
        }
    }
    Ok(d)
}

/// Vertices touched by a term over gadget and pointer variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TouchReport {
    pub strong: BTreeSet<usize>,
    pub light: BTreeSet<usize>,
}

impl TouchReport {
    /// `strong ∪ light`.
    pub fn touched(&self) -> BTreeSet<usize> {
        self.strong.union(&self.light).copied().collect()
    }

    pub fn special_degree(&self) -> usize {
        self.strong.union(&self.light).count()
    }
}

/// `j` is strongly touched when some `x(i,j,l)` or `y(j,a)` occurs; `i` is
/// lightly touched when, for some `j`, all gadget copies `x(i,j,1..ell)`
/// occur. Cluster variables count as gadget variables; twins count as their
/// base.
pub fn touched(t: &Term, n: usize, ell: usize) -> Result<TouchReport> {
    let mut rep = TouchReport::default();
    let mut copies: BTreeMap<(u16, u16), BTreeSet<u16>> = BTreeMap::new();
    for &v in t.vars() {
        match v.kind() {
            VarKind::Edge { i, j, l } | VarKind::Cluster { i, j, l } => {
                if i as usize > n || j as usize > n || l == 0 || l as usize > ell {
                    return Err(Error::ForeignVariable(v));
                }
                rep.strong.insert(j as usize);
                copies.entry((i, j)).or_default().insert(l);
            }
            VarKind::Pointer { j, a } => {
                if j as usize > n || a == 0 {
                    return Err(Error::ForeignVariable(v));
                }
                rep.strong.insert(j as usize);
            }
            VarKind::Plain(_) => return Err(Error::ForeignVariable(v)),
        }
    }
    for ((i, _), ls) in copies {
        if ls.len() == ell {
            rep.light.insert(i as usize);
        }
    }
    Ok(rep)
}

/// Largest `|τ(t)|` over all terms of all lines.
pub fn special_degree<'a>(lines: impl IntoIterator<Item = &'a Polynomial>, n: usize, ell: usize) -> Result<usize> {
    let mut best = 0;
    for p in lines {
        for (t, _) in p.terms() {
            best = best.max(touched(t, n, ell)?.special_degree());
        }
    }
    Ok(best)
}

/// Variables of a line set, twins folded onto their base.
pub fn base_vars<'a>(lines: impl IntoIterator<Item = &'a Polynomial>) -> BTreeSet<VarId> {
    lines
        .into_iter()
        .flat_map(|p| p.vars())
        .map(VarId::base)
        .collect()
}
