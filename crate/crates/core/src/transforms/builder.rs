use crate::algebra::{Fe, Polynomial, Term, VarId};
use crate::proofs::{PcProof, Step};

/// A proof under construction that keeps every line's polynomial, so callers
/// can inspect what they emit.
pub(crate) struct Builder {
    pub proof: PcProof,
    pub lines: Vec<Polynomial>,
}

impl Builder {
    pub fn new(proof: PcProof) -> Builder {
        Builder {
            proof,
            lines: Vec::new(),
        }
    }

    pub fn emit(&mut self, step: Step, poly: Polynomial) -> usize {
        debug_assert_eq!(self.proof.len(), self.lines.len());
        self.lines.push(poly);
        self.proof.push(step)
    }

    pub fn mul_var(&mut self, var: VarId, i: usize) -> usize {
        let p = self.lines[i].mul_var(var);
        self.emit(Step::MulVar { var, i }, p)
    }

    /// Multiplies line `i` by the variables of `t` one at a time.
    pub fn mul_term(&mut self, t: &Term, mut i: usize) -> usize {
        for &v in t.vars() {
            i = self.mul_var(v, i);
        }
        i
    }

    pub fn lincomb(&mut self, a: Fe, i: usize, b: Fe, j: usize) -> usize {
        let p = self.lines[i].lincomb(a, &self.lines[j], b).expect("one basis");
        self.emit(Step::LinComb { a, i, b, j }, p)
    }

    /// `a * L[i]`, reusing `i` when `a = 1`.
    pub fn scale(&mut self, a: Fe, i: usize) -> usize {
        if a == Fe::ONE {
            i
        } else {
            let p = self.lines[i].scale(a);
            self.emit(Step::scale(a, i), p)
        }
    }

    /// `a * L[i] + b * L[j]` where either side may be absent (zero).
    /// Returns `None` when the result is the zero polynomial.
    pub fn combine(&mut self, a: Fe, i: Option<usize>, b: Fe, j: Option<usize>) -> Option<usize> {
        let i = i.filter(|_| !a.is_zero());
        let j = j.filter(|_| !b.is_zero());
        let k = match (i, j) {
            (None, None) => return None,
            (Some(i), None) => self.scale(a, i),
            (None, Some(j)) => self.scale(b, j),
            (Some(i), Some(j)) => self.lincomb(a, i, b, j),
        };
        (!self.lines[k].is_zero()).then_some(k)
    }
}

/// Keeps only the lines that `target` depends on, renumbered in order, so
/// `target` becomes the last line. Returns the new proof and the map from
/// old to new line numbers.
pub fn prune_to(proof: &PcProof, target: usize) -> (PcProof, Vec<Option<usize>>) {
    let mut needed = vec![false; proof.len()];
    needed[target] = true;
    for k in (0..=target).rev() {
        if needed[k] {
            for r in proof.steps[k].refs() {
                needed[r] = true;
            }
        }
    }
    let mut map = vec![None; proof.len()];
    let mut out = PcProof::new(proof.field, proof.basis);
    for k in 0..=target {
        if !needed[k] {
            continue;
        }
        let step = match proof.steps[k].clone() {
            Step::LinComb { a, i, b, j } => Step::LinComb {
                a,
                i: map[i].expect("kept"),
                b,
                j: map[j].expect("kept"),
            },
            Step::MulVar { var, i } => Step::MulVar {
                var,
                i: map[i].expect("kept"),
            },
            s => s,
        };
        map[k] = Some(out.push(step));
    }
    (out, map)
}
