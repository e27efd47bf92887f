//! Span bases in the Boolean multilinear quotient.
//!
//! Over `{0,1}` points the quotient ring is the ring of functions on the
//! cube, so the span of `F` is exactly the set of multilinear polynomials
//! vanishing on the common zeros `Z` of `F`. A monomial is *standard* when
//! its evaluation vector on `Z` is independent of all grlex-smaller
//! monomials; the standard monomials are the complement of the leading terms
//! of the span, and the residue of `P` is the unique combination of standard
//! monomials that agrees with `P` on `Z`.
//!
//! Variables not occurring in `F` are free: the zero set is a product with
//! the full cube on them, so only the *active* variables are enumerated.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Basis, Fe, Field, Polynomial, Term, VarId};
use crate::error::{Error, Result};

/// Largest universe accepted by [`SpanBasis`] (exhaustive point enumeration).
pub const SPAN_MAX_VARS: usize = 16;

/// Largest universe accepted by the closure oracle [`ClosureSpan`].
pub const CLOSURE_MAX_VARS: usize = 8;

fn check_universe(universe: &BTreeSet<VarId>, limit: usize) -> Result<Vec<VarId>> {
    if let Some(v) = universe.iter().find(|v| v.is_twin()) {
        return Err(Error::InvalidParameter(format!("universe must list base variables, found {v}")));
    }
    if universe.len() > limit {
        return Err(Error::ScaleLimit {
            what: "span universe size",
            got: universe.len(),
            limit,
        });
    }
    Ok(universe.iter().copied().collect())
}

fn boolean_twin_free(p: &Polynomial, universe: &[VarId]) -> Result<Polynomial> {
    if p.basis() != Basis::Boolean {
        return Err(Error::BasisMismatch {
            expected: Basis::Boolean,
            found: p.basis(),
        });
    }
    let e = p.expand_twins();
    if let Some(v) = e.vars().into_iter().find(|v| universe.binary_search(v).is_err()) {
        return Err(Error::ForeignVariable(v));
    }
    Ok(e)
}

fn mask_of(t: &Term, vars: &[VarId]) -> u32 {
    t.vars().iter().fold(0, |m, v| m | 1 << vars.binary_search(v).expect("variable in range"))
}

fn term_of(mask: u32, vars: &[VarId]) -> Term {
    Term::from_vars((0..vars.len()).filter(|k| mask >> k & 1 == 1).map(|k| vars[k]))
}

/// All masks over `k` variables in ascending grlex order. With variables
/// indexed in ascending order, grlex on masks is (popcount, integer value).
fn grlex_masks(k: usize) -> Vec<u32> {
    let mut m: Vec<u32> = (0..1u32 << k).collect();
    m.sort_by_key(|&x| (x.count_ones(), x));
    m
}

/// Row echelon form over `F_p` with incremental insertion.
struct Echelon {
    field: Field,
    rows: Vec<(usize, Vec<Fe>)>,
}

impl Echelon {
    fn reduce(&self, v: &mut [Fe]) {
        let f = self.field;
        for (p, row) in &self.rows {
            let c = v[*p];
            if !c.is_zero() {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, *r));
                }
            }
        }
    }

    /// Inserts `v` if independent; returns whether it was.
    fn insert(&mut self, mut v: Vec<Fe>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v[p]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push((p, v));
        true
    }
}

/// Inverts a square matrix over `F_p` by Gauss-Jordan elimination.
fn invert(field: Field, mut a: Vec<Vec<Fe>>) -> Vec<Vec<Fe>> {
    let k = a.len();
    let f = field;
    let mut inv: Vec<Vec<Fe>> = (0..k).map(|i| (0..k).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }).collect()).collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero()).expect("standard monomials are independent");
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = f.inv(a[col][col]).expect("nonzero pivot");
        for x in a[col].iter_mut() {
            *x = f.mul(*x, s);
        }
        for x in inv[col].iter_mut() {
            *x = f.mul(*x, s);
        }
        for r in 0..k {
            let c = a[r][col];
            if r != col && !c.is_zero() {
                for j in 0..k {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] = f.sub(a[r][j], f.mul(c, ac));
                    inv[r][j] = f.sub(inv[r][j], f.mul(c, ic));
                }
            }
        }
    }
    inv
}

/// The span of a family `F` in the multilinear quotient over a fixed
/// universe of base variables, with residues computed by interpolation on
/// the common zeros of `F`.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    field: Field,
    universe: Vec<VarId>,
    active: Vec<VarId>,
    /// Common zeros of `F`, as masks over `active`.
    points: Vec<u32>,
    /// Standard monomials over `active`, ascending grlex.
    standard: Vec<u32>,
    /// `inverse[s][z]`: coefficient of standard monomial `s` per unit value at point `z`.
    inverse: Vec<Vec<Fe>>,
}

impl SpanBasis {
    /// Builds the span of `family` (Boolean polynomials; twins are read as
    /// `1 - x`) over `universe`.
    pub fn new(family: &[Polynomial], universe: &BTreeSet<VarId>, field: Field) -> Result<SpanBasis> {
        let universe = check_universe(universe, SPAN_MAX_VARS)?;
        let mut polys = Vec::with_capacity(family.len());
        for p in family {
            if p.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field.modulus(),
                    found: p.field().modulus(),
                });
            }
            polys.push(boolean_twin_free(p, &universe)?);
        }
        let active: Vec<VarId> = polys.iter().flat_map(|p| p.vars()).collect::<BTreeSet<_>>().into_iter().collect();
        let compiled: Vec<Vec<(u32, Fe)>> = polys
            .iter()
            .map(|p| p.terms().map(|(t, c)| (mask_of(t, &active), c)).collect())
            .collect();
        let points: Vec<u32> = (0..1u32 << active.len())
            .filter(|&z| {
                compiled.iter().all(|p| {
                    p.iter()
                        .filter(|(m, _)| m & !z == 0)
                        .fold(Fe::ZERO, |acc, (_, c)| field.add(acc, *c))
                        .is_zero()
                })
            })
            .collect();

        let mut ech = Echelon { field, rows: Vec::new() };
        let mut standard = Vec::with_capacity(points.len());
        for m in grlex_masks(active.len()) {
            if standard.len() == points.len() {
                break;
            }
            let v: Vec<Fe> = points.iter().map(|&z| if m & !z == 0 { Fe::ONE } else { Fe::ZERO }).collect();
            if ech.insert(v) {
                standard.push(m);
            }
        }
        let matrix: Vec<Vec<Fe>> = points
            .iter()
            .map(|&z| standard.iter().map(|&s| if s & !z == 0 { Fe::ONE } else { Fe::ZERO }).collect())
            .collect();
        let inverse = invert(field, matrix);
        Ok(SpanBasis {
            field,
            universe,
            active,
            points,
            standard,
            inverse,
        })
    }

    pub fn universe(&self) -> &[VarId] {
        &self.universe
    }

    /// Number of common zeros over the active variables.
    pub fn zero_count(&self) -> usize {
        self.points.len()
    }

    /// True when `1` lies in the span, i.e. `F` has no common zero.
    pub fn is_trivial(&self) -> bool {
        self.points.is_empty()
    }

    /// Standard monomials over the variables occurring in `F`.
    pub fn standard_monomials(&self) -> Vec<Term> {
        self.standard.iter().map(|&m| term_of(m, &self.active)).collect()
    }

    /// Residue of `p`: the grlex-minimal element of `p + Span(F)`.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        let e = boolean_twin_free(p, &self.universe)?;
        if p.field() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field.modulus(),
                found: p.field().modulus(),
            });
        }
        let f = self.field;
        let mut groups: BTreeMap<Term, Vec<Fe>> = BTreeMap::new();
        for (t, c) in e.terms() {
            let (act, free): (Vec<VarId>, Vec<VarId>) =
                t.vars().iter().partition(|v| self.active.binary_search(v).is_ok());
            let m = mask_of(&Term::from_vars(act), &self.active);
            let values = groups.entry(Term::from_vars(free)).or_insert_with(|| vec![Fe::ZERO; self.points.len()]);
            for (val, &z) in values.iter_mut().zip(&self.points) {
                if m & !z == 0 {
                    *val = f.add(*val, c);
                }
            }
        }
        let mut out = Polynomial::zero(f, Basis::Boolean);
        for (free, values) in groups {
            for (s, row) in self.standard.iter().zip(&self.inverse) {
                let c = row.iter().zip(&values).fold(Fe::ZERO, |acc, (a, b)| f.add(acc, f.mul(*a, *b)));
                if !c.is_zero() {
                    out.add_term(term_of(*s, &self.active).mul(&free, Basis::Boolean), c);
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// The fully inter-reduced basis `{m - R(m)}` over all non-standard
    /// monomials `m` of the universe, by strictly decreasing leading term.
    pub fn basis(&self) -> Vec<Polynomial> {
        let std: BTreeSet<u32> = self.standard.iter().copied().collect();
        let mut out = Vec::new();
        for m in grlex_masks(self.universe.len()).into_iter().rev() {
            let t = term_of(m, &self.universe);
            let act = mask_of(
                &Term::from_vars(t.vars().iter().copied().filter(|v| self.active.binary_search(v).is_ok())),
                &self.active,
            );
            if std.contains(&act) {
                continue;
            }
            let mono = Polynomial::monomial(self.field, Basis::Boolean, t, Fe::ONE);
            let r = self.reduce(&mono).expect("monomial over the universe");
            out.push(mono.sub(&r).expect("same ring"));
        }
        out
    }
}

/// `R_F(P)` for a one-off family.
pub fn residue(p: &Polynomial, family: &[Polynomial], universe: &BTreeSet<VarId>) -> Result<Polynomial> {
    SpanBasis::new(family, universe, p.field())?.reduce(p)
}

/// Independent span computation for small universes: closes `F` under
/// multiplication by every monomial and row-reduces the coefficient matrix
/// with grlex-maximal pivots.
#[derive(Clone, Debug)]
pub struct ClosureSpan {
    field: Field,
    universe: Vec<VarId>,
    /// Column order: ascending grlex masks.
    columns: Vec<u32>,
    /// Fully reduced rows, keyed by pivot column.
    rows: BTreeMap<usize, Vec<Fe>>,
}

impl ClosureSpan {
    pub fn new(family: &[Polynomial], universe: &BTreeSet<VarId>, field: Field) -> Result<ClosureSpan> {
        let universe = check_universe(universe, CLOSURE_MAX_VARS)?;
        let columns = grlex_masks(universe.len());
        let mut col_of = vec![0usize; columns.len()];
        for (k, &m) in columns.iter().enumerate() {
            col_of[m as usize] = k;
        }
        let mut dense: Vec<Vec<Fe>> = Vec::new();
        for p in family {
            let p = boolean_twin_free(p, &universe)?;
            let terms: Vec<(u32, Fe)> = p.terms().map(|(t, c)| (mask_of(t, &universe), c)).collect();
            for m in 0..1u32 << universe.len() {
                let mut row = vec![Fe::ZERO; columns.len()];
                for &(t, c) in &terms {
                    let k = col_of[(t | m) as usize];
                    row[k] = field.add(row[k], c);
                }
                dense.push(row);
            }
        }
        // eliminate from the highest column down
        let mut rows: BTreeMap<usize, Vec<Fe>> = BTreeMap::new();
        for mut row in dense {
            for (&p, r) in rows.iter().rev() {
                let c = row[p];
                if !c.is_zero() {
                    for (x, y) in row.iter_mut().zip(r) {
                        *x = field.sub(*x, field.mul(c, *y));
                    }
                }
            }
            let Some(p) = row.iter().rposition(|c| !c.is_zero()) else {
                continue;
            };
            let inv = field.inv(row[p]).expect("nonzero pivot");
            for x in row.iter_mut() {
                *x = field.mul(*x, inv);
            }
            for r in rows.values_mut() {
                let c = r[p];
                if !c.is_zero() {
                    for (x, y) in r.iter_mut().zip(&row) {
                        *x = field.sub(*x, field.mul(c, *y));
                    }
                }
            }
            rows.insert(p, row);
        }
        Ok(ClosureSpan {
            field,
            universe,
            columns,
            rows,
        })
    }

    fn to_poly(&self, v: &[Fe]) -> Polynomial {
        let mut out = Polynomial::zero(self.field, Basis::Boolean);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(term_of(self.columns[k], &self.universe), *c);
            }
        }
        out
    }

    /// Basis rows by strictly decreasing leading term.
    pub fn rows(&self) -> Vec<Polynomial> {
        self.rows.values().rev().map(|r| self.to_poly(r)).collect()
    }

    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        let e = boolean_twin_free(p, &self.universe)?;
        let mut col_of = vec![0usize; self.columns.len()];
        for (k, &m) in self.columns.iter().enumerate() {
            col_of[m as usize] = k;
        }
        let mut v = vec![Fe::ZERO; self.columns.len()];
        for (t, c) in e.terms() {
            v[col_of[mask_of(t, &self.universe) as usize]] = c;
        }
        let f = self.field;
        for (&p, r) in self.rows.iter().rev() {
            let c = v[p];
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        Ok(self.to_poly(&v))
    }
}
