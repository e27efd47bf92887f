//! Structured variable identifiers.
//!
//! Ordering-principle formulas are indexed by vertices and gadget indices, so
//! variables carry that structure directly instead of being opaque integers.
//! Every variable has a *twin* (its formal negation in PCR); the twin is a
//! distinct variable linked to the original only through explicit axioms.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// Interned name of a plain variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symbol(u32);

#[derive(Default)]
struct Interner {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

impl Symbol {
    pub fn intern(name: &str) -> Symbol {
        if let Some(&id) = interner().read().unwrap().index.get(name) {
            return Symbol(id);
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.index.get(name) {
            return Symbol(id);
        }
        let id = table.names.len() as u32;
        table.names.push(name.to_string());
        table.index.insert(name.to_string(), id);
        Symbol(id)
    }

    pub fn with_name<R>(self, f: impl FnOnce(&str) -> R) -> R {
        let table = interner().read().unwrap();
        f(&table.names[self.0 as usize])
    }

    pub fn name(self) -> String {
        self.with_name(str::to_string)
    }
}

// Symbols order by name so that variable order never depends on interning order.
impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let table = interner().read().unwrap();
        table.names[self.0 as usize].cmp(&table.names[other.0 as usize])
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.with_name(|n| write!(f, "{n}"))
    }
}

/// The shape of a variable. Variant order fixes the global variable order:
/// pointer bits first, then edge variables, cluster variables, plain names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// `y_{j,a}`: bit `a` (1-based) of the pointer of vertex `j`.
    Pointer { j: u16, a: u16 },
    /// `x_{i,j,l}`: "i precedes j", gadget copy `l` (1 when unlifted).
    Edge { i: u16, j: u16, l: u16 },
    /// `z_{i,j,l}`: clustered gadget variable.
    Cluster { i: u16, j: u16, l: u16 },
    Plain(Symbol),
}

/// A variable together with its twin marker.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    kind: VarKind,
    negated: bool,
}

impl VarId {
    pub fn new(kind: VarKind) -> VarId {
        if let VarKind::Edge { i, j, .. } | VarKind::Cluster { i, j, .. } = kind {
            assert_ne!(i, j, "edge variables need two distinct vertices");
        }
        VarId {
            kind,
            negated: false,
        }
    }

    pub fn edge(i: usize, j: usize, l: usize) -> VarId {
        VarId::new(VarKind::Edge {
            i: i as u16,
            j: j as u16,
            l: l as u16,
        })
    }

    pub fn pointer(j: usize, a: usize) -> VarId {
        VarId::new(VarKind::Pointer {
            j: j as u16,
            a: a as u16,
        })
    }

    pub fn cluster(i: usize, j: usize, l: usize) -> VarId {
        VarId::new(VarKind::Cluster {
            i: i as u16,
            j: j as u16,
            l: l as u16,
        })
    }

    pub fn plain(name: &str) -> VarId {
        VarId::new(VarKind::Plain(Symbol::intern(name)))
    }

    #[inline]
    pub fn kind(self) -> VarKind {
        self.kind
    }

    #[inline]
    pub fn is_twin(self) -> bool {
        self.negated
    }

    /// The twin partner (flips the marker).
    #[inline]
    pub fn twin(self) -> VarId {
        VarId {
            kind: self.kind,
            negated: !self.negated,
        }
    }

    /// The un-negated member of the twin pair.
    #[inline]
    pub fn base(self) -> VarId {
        VarId {
            kind: self.kind,
            negated: false,
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~")?;
        }
        match self.kind {
            VarKind::Pointer { j, a } => write!(f, "y({j},{a})"),
            VarKind::Edge { i, j, l } => write!(f, "x({i},{j},{l})"),
            VarKind::Cluster { i, j, l } => write!(f, "z({i},{j},{l})"),
            VarKind::Plain(s) => s.with_name(|n| write!(f, "{n}")),
        }
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
