use rand::seq::SliceRandom;
use rand::Rng as _;

use super::{PcProof, Step};
use crate::algebra::{Basis, Fe, Field, Polynomial, Term, VarId};
use crate::formulas::{AxiomSystem, Group};
use crate::rng::{self, Rng};

/// Knobs for [`random_derivation_with`].
#[derive(Clone, Debug)]
pub struct DerivationShape {
    pub steps: usize,
    /// A linear combination producing more terms than this is replaced by a
    /// variable multiplication.
    pub max_terms: usize,
    /// Multiplier variables besides those of the axioms.
    pub extra_vars: Vec<VarId>,
}

impl Default for DerivationShape {
    fn default() -> Self {
        DerivationShape {
            steps: 20,
            max_terms: 12,
            extra_vars: Vec::new(),
        }
    }
}

fn nonzero_coef(field: Field, rng: &mut Rng) -> Fe {
    let c = rng.gen_range(1..=3i64);
    field.elem(if rng.gen_bool(0.5) { c } else { -c })
}

/// Random application of the derivation rules. Every axiom is loaded first,
/// then `shape.steps` rule applications follow. The result is always a
/// valid derivation.
pub fn random_derivation_with(axioms: &AxiomSystem, shape: &DerivationShape, rng: &mut Rng) -> PcProof {
    let mut proof = PcProof::new(axioms.field, axioms.basis);
    let mut lines: Vec<Polynomial> = Vec::new();
    for (k, a) in axioms.axioms.iter().enumerate() {
        proof.push(Step::Axiom(k));
        lines.push(a.clone());
    }
    let mut pool: Vec<VarId> = axioms.vars().into_iter().collect();
    pool.extend(shape.extra_vars.iter().copied());
    pool.sort();
    pool.dedup();
    if lines.is_empty() || pool.is_empty() {
        return proof;
    }
    for _ in 0..shape.steps {
        let i = rng.gen_range(0..lines.len());
        let mut step = None;
        if rng.gen_bool(0.5) {
            let j = rng.gen_range(0..lines.len());
            let (a, b) = (nonzero_coef(axioms.field, rng), nonzero_coef(axioms.field, rng));
            let p = lines[i].lincomb(a, &lines[j], b).expect("same basis");
            if p.monomial_count() <= shape.max_terms {
                step = Some((Step::LinComb { a, i, b, j }, p));
            }
        }
        let (s, p) = step.unwrap_or_else(|| {
            let var = *pool.choose(rng).expect("nonempty pool");
            (Step::MulVar { var, i }, lines[i].mul_var(var))
        });
        proof.push(s);
        lines.push(p);
    }
    proof
}

/// [`random_derivation_with`] with default shape and `steps` rule
/// applications, seeded from `seed`.
pub fn random_derivation(axioms: &AxiomSystem, steps: usize, seed: u64) -> PcProof {
    let shape = DerivationShape {
        steps,
        ..DerivationShape::default()
    };
    random_derivation_with(axioms, &shape, &mut rng::stream(seed, "random-derivation"))
}

/// A random axiom system over `vars`: `count` polynomials with up to
/// `max_terms` terms of degree at most `max_degree`.
pub fn random_axioms(
    vars: &[VarId],
    count: usize,
    max_terms: usize,
    max_degree: usize,
    field: Field,
    basis: Basis,
    rng: &mut Rng,
) -> AxiomSystem {
    let mut sys = AxiomSystem::new(field, basis, 0, 1);
    for _ in 0..count {
        let mut p = Polynomial::zero(field, basis);
        while p.is_zero() {
            let terms = rng.gen_range(1..=max_terms.max(1));
            for _ in 0..terms {
                let deg = rng.gen_range(0..=max_degree.min(vars.len()));
                let t: Term = vars.choose_multiple(rng, deg).copied().collect();
                p.add_term(t, nonzero_coef(field, rng));
            }
        }
        sys.push(p, Group::Other).expect("same basis and field");
    }
    sys
}
