use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Basis, Field, Polynomial, Term, VarId, VarKind};
use crate::error::{Error, Result};
use crate::formulas::{cnf_to_axioms, gen_bop_lifted, pointer_width};
use crate::proofs::{materialize, quadratic_terms, random_derivation, touched, PcProof};
use crate::transforms::{heavy_vertex_restriction, restrict_proof, split};

/// The vertex chosen for one restrict-and-split round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavySelection {
    pub vertex: usize,
    /// Gadget index `l_i` kept for each other vertex `i`.
    pub gadget: BTreeMap<usize, usize>,
    /// Pointer bits of the vertex followed by `x(i, vertex, l_i)`.
    pub split_vars: Vec<VarId>,
    /// Size of the heavy set `H`.
    pub heavy: usize,
    /// Heavy terms strongly touching the chosen vertex.
    pub touching: usize,
}

/// Quadratic terms of `lines` that strongly touch at least `threshold` vertices.
pub fn heavy_terms(lines: &[Polynomial], n: usize, ell: usize, threshold: usize) -> Result<Vec<Term>> {
    let mut out = Vec::new();
    for t in quadratic_terms(lines)? {
        if touched(&t, n, ell)?.strong.len() >= threshold {
            out.push(t);
        }
    }
    Ok(out)
}

/// Picks the vertex strongly touched by the most heavy quadratic terms and,
/// for every other vertex `i`, the copy `l_i` of `x(i,j,·)` occurring most
/// often in heavy terms. Ties go to the lowest vertex and the lowest copy.
pub fn heavy_term_selection(lines: &[Polynomial], n: usize, ell: usize, threshold: usize) -> Result<HeavySelection> {
    let h = heavy_terms(lines, n, ell, threshold)?;
    if h.is_empty() {
        return Err(Error::Precondition(format!("no quadratic term strongly touches {threshold} vertices")));
    }
    let mut per_vertex = vec![0usize; n + 1];
    for t in &h {
        for j in touched(t, n, ell)?.strong {
            per_vertex[j] += 1;
        }
    }
    let (vertex, touching) = (1..=n)
        .map(|j| (j, per_vertex[j]))
        .fold((1, per_vertex[1]), |best, cur| if cur.1 > best.1 { cur } else { best });

    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for t in &h {
        for v in t.vars() {
            if let VarKind::Edge { i, j, l } = v.kind() {
                if j as usize == vertex {
                    *counts.entry((i as usize, l as usize)).or_default() += 1;
                }
            }
        }
    }
    let mut gadget = BTreeMap::new();
    for i in (1..=n).filter(|&i| i != vertex) {
        let best = (1..=ell)
            .map(|l| (l, counts.get(&(i, l)).copied().unwrap_or(0)))
            .fold((1, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
        gadget.insert(i, best.0);
    }
    let mut split_vars: Vec<VarId> = (1..=pointer_width(n)).map(|a| VarId::pointer(vertex, a)).collect();
    split_vars.extend(gadget.iter().map(|(&i, &l)| VarId::edge(i, vertex, l)));
    Ok(HeavySelection {
        vertex,
        gadget,
        split_vars,
        heavy: h.len(),
        touching,
    })
}

/// One round of the demo pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemoRound {
    pub vertex: usize,
    pub heavy_before: usize,
    pub heavy_after: usize,
    pub lines_before: usize,
    pub lines_after: usize,
    /// Split variables left alone because they still occur in a used axiom
    /// (pointer bits of the vertex stay in its prohibition clauses).
    pub blocked: Vec<VarId>,
}

/// Settings for [`demo_pipeline`]. `gamma` scales the heavy threshold:
/// a term is heavy when it strongly touches at least `max(1, ceil(gamma n))`
/// vertices.
#[derive(Clone, Copy, Debug)]
pub struct DemoConfig {
    pub steps: usize,
    pub gamma: f64,
    pub rounds: usize,
}

impl Default for DemoConfig {
    fn default() -> Self {
        DemoConfig {
            steps: 40,
            gamma: 0.25,
            rounds: 3,
        }
    }
}

/// Random Fourier derivation over the lifted binary-pointer formula, then
/// repeated rounds of: select a heavy vertex, restrict around it, split on
/// its pointer bits and kept gadget copies. Reports `|H|` per round.
///
/// Pointer bits that still occur in a used axiom are not split and are
/// listed in [`DemoRound::blocked`]. The pipeline stops after a round that
/// does not shrink `H`.
pub fn demo_pipeline(n: usize, ell: usize, config: &DemoConfig, seed: u64) -> Result<Vec<DemoRound>> {
    if ell < 2 {
        return Err(Error::InvalidParameter("the restriction kills vertex axioms only for ell >= 2".into()));
    }
    let field = Field::default();
    let threshold = ((config.gamma * n as f64).ceil() as usize).max(1);
    let mut axioms = cnf_to_axioms(&gen_bop_lifted(n, ell)?, field, Basis::Fourier)?;
    let mut proof: PcProof = random_derivation(&axioms, config.steps, seed);
    let mut rounds = Vec::new();
    for _ in 0..config.rounds {
        let lines = materialize(&proof, &axioms)?;
        let sel = match heavy_term_selection(&lines, n, ell, threshold) {
            Ok(s) => s,
            Err(Error::Precondition(_)) => break,
            Err(e) => return Err(e),
        };
        let rho = heavy_vertex_restriction(n, ell, sel.vertex, &sel.gadget)?;
        let restricted = restrict_proof(&proof, &axioms, &rho)?;
        let mut next = restricted.proof;
        axioms = restricted.axioms;
        let mut blocked = Vec::new();
        for &v in &sel.split_vars {
            match split(&next, &axioms, v) {
                Ok(p) => next = p,
                Err(Error::Precondition(_)) => blocked.push(v),
                Err(e) => return Err(e),
            }
        }
        let after = materialize(&next, &axioms)?;
        let round = DemoRound {
            vertex: sel.vertex,
            heavy_before: sel.heavy,
            heavy_after: heavy_terms(&after, n, ell, threshold)?.len(),
            lines_before: proof.len(),
            lines_after: next.len(),
            blocked,
        };
        let stalled = round.heavy_after >= round.heavy_before;
        rounds.push(round);
        proof = next;
        if stalled {
            break;
        }
    }
    Ok(rounds)
}

/// Vertices touched by the selection's split variables (for reports).
pub fn selection_vertices(sel: &HeavySelection) -> BTreeSet<usize> {
    sel.gadget.keys().copied().chain([sel.vertex]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Fe;

    fn line(terms: &[&[VarId]]) -> Polynomial {
        Polynomial::from_terms(
            Field::default(),
            Basis::Fourier,
            terms.iter().map(|vs| (Term::from_vars(vs.iter().copied()), Fe::ONE)),
        )
    }

    #[test]
    fn dominant_vertex_wins() {
        let x = VarId::edge;
        let lines = [line(&[&[x(1, 3, 2)], &[x(2, 3, 1)]]), line(&[&[x(1, 3, 2), VarId::pointer(3, 1)]])];
        let sel = heavy_term_selection(&lines, 3, 2, 1).unwrap();
        assert_eq!(sel.vertex, 3);
        assert_eq!(sel.gadget[&1], 2);
        assert_eq!(sel.gadget[&2], 1);
        assert_eq!(sel.split_vars[..2], [VarId::pointer(3, 1), VarId::pointer(3, 2)]);
    }

    #[test]
    fn ties_go_low() {
        let x = VarId::edge;
        let lines = [line(&[&[x(1, 2, 1)], &[x(2, 1, 1)]])];
        assert_eq!(heavy_term_selection(&lines, 3, 1, 1).unwrap().vertex, 1);
    }

    #[test]
    fn empty_heavy_set_is_an_error() {
        let lines = [line(&[&[]])];
        assert!(matches!(heavy_term_selection(&lines, 3, 1, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn demo_reduces_heavy_terms() {
        let rounds = demo_pipeline(3, 2, &DemoConfig::default(), 5).unwrap();
        assert!(!rounds.is_empty());
        assert!(rounds[0].heavy_after < rounds[0].heavy_before, "{rounds:?}");
        assert!(rounds.iter().all(|r| r.heavy_after <= r.heavy_before));
        assert!(rounds.last().unwrap().heavy_after < rounds[0].heavy_before);
    }
}
