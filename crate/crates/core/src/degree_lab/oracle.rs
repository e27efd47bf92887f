use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use super::span::SpanBasis;
use crate::algebra::{Basis, Field, Polynomial, Term, VarId};
use crate::error::{Error, Result};
use crate::formulas::{cnf_to_axioms, gen_bop_lifted, AxiomSystem, Group};
use crate::proofs::touched;

/// Residues against `T ∪ {BV_j : j ∈ I}` for vertex sets `I`, over a fixed
/// binary-pointer instance. Axioms are the Boolean twin encoding (one
/// monomial per clause); span bases are cached per vertex set.
#[derive(Debug)]
pub struct ResidueOracle {
    n: usize,
    ell: usize,
    axioms: AxiomSystem,
    universe: BTreeSet<VarId>,
    cache: Mutex<HashMap<BTreeSet<usize>, Arc<SpanBasis>>>,
}

impl ResidueOracle {
    /// Oracle for the lifted binary-pointer formula (`ell = 1` is the plain one).
    pub fn new(n: usize, ell: usize, field: Field) -> Result<ResidueOracle> {
        let sys = cnf_to_axioms(&gen_bop_lifted(n, ell)?, field, Basis::Boolean)?;
        ResidueOracle::from_axioms(sys)
    }

    /// Oracle over any Boolean axiom system whose groups are `Vertex(j)`
    /// and `Ordering`.
    pub fn from_axioms(axioms: AxiomSystem) -> Result<ResidueOracle> {
        if axioms.basis != Basis::Boolean {
            return Err(Error::BasisMismatch {
                expected: Basis::Boolean,
                found: axioms.basis,
            });
        }
        if let Some(g) = axioms.groups.iter().find(|g| matches!(g, Group::Other)) {
            return Err(Error::InvalidParameter(format!("unexpected axiom group {g}")));
        }
        let universe: BTreeSet<VarId> = axioms.vars().into_iter().map(VarId::base).collect();
        Ok(ResidueOracle {
            n: axioms.n,
            ell: axioms.ell,
            axioms,
            universe,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn field(&self) -> Field {
        self.axioms.field
    }

    pub fn axioms(&self) -> &AxiomSystem {
        &self.axioms
    }

    /// Base variables of the instance, ascending.
    pub fn universe(&self) -> &BTreeSet<VarId> {
        &self.universe
    }

    /// Vertices touched (strongly or lightly) by `t`.
    pub fn tau(&self, t: &Term) -> Result<BTreeSet<usize>> {
        Ok(touched(t, self.n, self.ell)?.touched())
    }

    fn build(&self, set: &BTreeSet<usize>) -> Result<SpanBasis> {
        let family: Vec<Polynomial> = self
            .axioms
            .select(|g| match g {
                Group::Ordering => true,
                Group::Vertex(j) => set.contains(&j),
                Group::Other => false,
            })
            .cloned()
            .collect();
        SpanBasis::new(&family, &self.universe, self.axioms.field)
    }

    /// Span basis of `T ∪ BV_set`, computed once per set.
    pub fn span(&self, set: &BTreeSet<usize>) -> Result<Arc<SpanBasis>> {
        if let Some(b) = self.cache.lock().expect("cache lock").get(set) {
            return Ok(Arc::clone(b));
        }
        let built = Arc::new(self.build(set)?);
        let mut cache = self.cache.lock().expect("cache lock");
        Ok(Arc::clone(cache.entry(set.clone()).or_insert(built)))
    }

    /// Recomputes without touching the cache.
    pub fn span_uncached(&self, set: &BTreeSet<usize>) -> Result<SpanBasis> {
        self.build(set)
    }

    /// `R_{T ∪ BV_set}(p)`.
    pub fn residue(&self, set: &BTreeSet<usize>, p: &Polynomial) -> Result<Polynomial> {
        self.span(set)?.reduce(p)
    }

    /// `R(t) = R_{τ(t)}(t)`.
    pub fn r_term(&self, t: &Term) -> Result<Polynomial> {
        let p = Polynomial::monomial(self.field(), Basis::Boolean, t.clone(), crate::algebra::Fe::ONE);
        self.residue(&self.tau(t)?, &p)
    }

    /// The operator `R`, extended linearly from terms.
    pub fn r(&self, p: &Polynomial) -> Result<Polynomial> {
        let f = self.field();
        let mut out = Polynomial::zero(f, Basis::Boolean);
        for (t, c) in p.terms() {
            out = out.lincomb(crate::algebra::Fe::ONE, &self.r_term(t)?, c)?;
        }
        Ok(out)
    }
}
