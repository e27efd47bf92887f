use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{Basis, Field, Polynomial, VarId};
use crate::error::{Error, Result};

/// A variable with a polarity. The variable is always the un-negated twin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    var: VarId,
    positive: bool,
}

impl Literal {
    pub fn new(var: VarId, positive: bool) -> Literal {
        // a twin variable read as a literal is the negated base
        Literal {
            var: var.base(),
            positive: positive != var.is_twin(),
        }
    }

    pub fn pos(var: VarId) -> Literal {
        Literal::new(var, true)
    }

    pub fn neg(var: VarId) -> Literal {
        Literal::new(var, false)
    }

    #[inline]
    pub fn var(self) -> VarId {
        self.var
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negated(self) -> Literal {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// Truth value of the literal when its variable has value `value`.
    pub fn satisfied_by(self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "-{}", self.var)
        }
    }
}

/// A non-tautological disjunction of literals, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(Vec<Literal>);

impl Clause {
    /// Builds a clause, merging duplicates. Fails when some variable occurs
    /// in both polarities.
    pub fn new<I: IntoIterator<Item = Literal>>(lits: I) -> Result<Clause> {
        let mut v: Vec<Literal> = lits.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.windows(2).any(|w| w[0].var == w[1].var) {
            return Err(Error::InvalidParameter(format!(
                "clause {} contains a variable in both polarities",
                Clause(v)
            )));
        }
        Ok(Clause(v))
    }

    pub fn empty() -> Clause {
        Clause(Vec::new())
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.0.binary_search(&lit).is_ok()
    }

    pub fn negative_count(&self) -> usize {
        self.0.iter().filter(|l| !l.positive).count()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().map(|l| l.var)
    }

    /// Resolvent on `pivot`: `self` must contain the pivot positively and
    /// `other` negatively (or vice versa).
    pub fn resolve(&self, other: &Clause, pivot: VarId) -> Result<Clause> {
        let pivot = pivot.base();
        let p = Literal::pos(pivot);
        let n = Literal::neg(pivot);
        let ok = (self.contains(p) && other.contains(n)) || (self.contains(n) && other.contains(p));
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "{pivot} is not complementary in {self} and {other}"
            )));
        }
        Clause::new(
            self.0
                .iter()
                .chain(other.0.iter())
                .copied()
                .filter(|l| l.var != pivot),
        )
    }

    /// True when every literal of `self` occurs in `other`.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.0.iter().all(|l| other.contains(*l))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " v ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// Axiom grouping used by the ordering families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    /// Vertex axioms of one vertex.
    Vertex(usize),
    /// Transitivity and antisymmetry.
    Ordering,
    Other,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Vertex(j) => write!(f, "BV({j})"),
            Group::Ordering => write!(f, "T"),
            Group::Other => write!(f, "none"),
        }
    }
}

impl std::str::FromStr for Group {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "T" => Ok(Group::Ordering),
            "none" => Ok(Group::Other),
            _ => s
                .strip_prefix("BV(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|j| j.parse().ok())
                .map(Group::Vertex)
                .ok_or_else(|| format!("bad group `{s}`")),
        }
    }
}

/// A CNF with per-clause groups and the family parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub clauses: Vec<Clause>,
    pub groups: Vec<Group>,
    /// Declared variables; may include variables that occur in no clause.
    pub universe: BTreeSet<VarId>,
    pub n: usize,
    pub ell: usize,
}

impl Cnf {
    pub fn new(n: usize, ell: usize) -> Cnf {
        Cnf {
            clauses: Vec::new(),
            groups: Vec::new(),
            universe: BTreeSet::new(),
            n,
            ell,
        }
    }

    pub fn push(&mut self, clause: Clause, group: Group) {
        self.universe.extend(clause.vars());
        self.clauses.push(clause);
        self.groups.push(group);
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Clause::width).max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Clause, Group)> {
        self.clauses.iter().zip(self.groups.iter().copied())
    }
}

/// Polynomial axioms with groups, in one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSystem {
    pub field: Field,
    pub basis: Basis,
    pub axioms: Vec<Polynomial>,
    pub groups: Vec<Group>,
    pub n: usize,
    pub ell: usize,
}

impl AxiomSystem {
    pub fn new(field: Field, basis: Basis, n: usize, ell: usize) -> AxiomSystem {
        AxiomSystem {
            field,
            basis,
            axioms: Vec::new(),
            groups: Vec::new(),
            n,
            ell,
        }
    }

    pub fn push(&mut self, p: Polynomial, group: Group) -> Result<()> {
        if p.basis() != self.basis {
            return Err(Error::BasisMismatch {
                expected: self.basis,
                found: p.basis(),
            });
        }
        if p.field() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field.modulus(),
                found: p.field().modulus(),
            });
        }
        self.axioms.push(p);
        self.groups.push(group);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// Base variables occurring in some axiom (twins folded onto their base).
    pub fn vars(&self) -> BTreeSet<VarId> {
        self.axioms
            .iter()
            .flat_map(|p| p.vars())
            .map(VarId::base)
            .collect()
    }

    /// Axioms belonging to any of the given groups.
    pub fn select<'a>(&'a self, keep: impl Fn(Group) -> bool + 'a) -> impl Iterator<Item = &'a Polynomial> + 'a {
        self.axioms
            .iter()
            .zip(self.groups.iter())
            .filter(move |(_, &g)| keep(g))
            .map(|(p, _)| p)
    }

    pub fn max_degree(&self) -> usize {
        self.axioms.iter().map(Polynomial::degree).max().unwrap_or(0)
    }
}
