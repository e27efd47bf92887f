//! Exhaustive satisfiability and semantic implication.
//!
//! Assignments are bitmasks over a sorted universe of base variables, so the
//! universe is capped at [`ORACLE_MAX_VARS`]. Searches run in parallel and
//! always report the numerically smallest witness.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{AxiomSystem, Cnf};
use crate::algebra::{Assignment, Basis, Fe, Field, Polynomial, VarId};
use crate::error::{Error, Result};

pub const ORACLE_MAX_VARS: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Sat(Assignment),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }
}

fn universe_index(universe: &BTreeSet<VarId>) -> Result<Vec<VarId>> {
    if universe.len() > ORACLE_MAX_VARS {
        return Err(Error::ScaleLimit {
            what: "oracle universe",
            got: universe.len(),
            limit: ORACLE_MAX_VARS,
        });
    }
    Ok(universe.iter().copied().collect())
}

fn position(vars: &[VarId], v: VarId) -> u32 {
    vars.binary_search(&v.base()).expect("variable inside universe") as u32
}

fn decode(vars: &[VarId], mask: u32) -> Assignment {
    vars.iter()
        .enumerate()
        .map(|(k, &v)| (v, mask >> k & 1 == 1))
        .collect()
}

fn first_match(bits: usize, pred: impl Fn(u32) -> bool + Sync) -> Option<u32> {
    (0..1u64 << bits).into_par_iter().map(|m| m as u32).find_first(|&m| pred(m))
}

/// Exhaustive search for a satisfying assignment over the declared universe.
pub fn sat_cnf(cnf: &Cnf) -> Result<SatResult> {
    let mut universe = cnf.universe.clone();
    universe.extend(cnf.clauses.iter().flat_map(|c| c.vars().collect::<Vec<_>>()));
    let vars = universe_index(&universe)?;
    let masks: Vec<(u32, u32)> = cnf
        .clauses
        .iter()
        .map(|c| {
            c.literals().iter().fold((0, 0), |(p, n), l| {
                let b = 1u32 << position(&vars, l.var());
                if l.is_positive() {
                    (p | b, n)
                } else {
                    (p, n | b)
                }
            })
        })
        .collect();
    let hit = first_match(vars.len(), |a| masks.iter().all(|&(p, n)| a & p != 0 || !a & n != 0));
    Ok(match hit {
        Some(m) => SatResult::Sat(decode(&vars, m)),
        None => SatResult::Unsat,
    })
}

/// A polynomial compiled for fast evaluation at bitmask points.
struct Compiled {
    field: Field,
    basis: Basis,
    // (coefficient, variable mask, twin mask)
    terms: Vec<(Fe, u32, u32)>,
}

impl Compiled {
    fn new(p: &Polynomial, vars: &[VarId]) -> Compiled {
        let terms = p
            .terms()
            .map(|(t, c)| {
                t.vars().iter().fold((c, 0u32, 0u32), |(c, m, tw), &v| {
                    let b = 1u32 << position(vars, v);
                    if v.is_twin() {
                        (c, m, tw | b)
                    } else {
                        (c, m | b, tw)
                    }
                })
            })
            .collect();
        Compiled {
            field: p.field(),
            basis: p.basis(),
            terms,
        }
    }

    fn is_zero_at(&self, a: u32) -> bool {
        let f = self.field;
        let mut acc = Fe::ZERO;
        for &(c, m, tw) in &self.terms {
            match self.basis {
                Basis::Boolean => {
                    // x needs TRUE, ~x needs FALSE; a term with both is 0
                    if a & m == m && !a & tw == tw {
                        acc = f.add(acc, c);
                    }
                }
                Basis::Fourier => {
                    // TRUE is -1 and ~x = -x
                    let odd = ((a & (m | tw)).count_ones() + tw.count_ones()) & 1 == 1;
                    acc = if odd { f.sub(acc, c) } else { f.add(acc, c) };
                }
            }
        }
        acc.is_zero()
    }
}

fn poly_universe<'a>(ps: impl IntoIterator<Item = &'a Polynomial>) -> BTreeSet<VarId> {
    ps.into_iter()
        .flat_map(|p| p.vars())
        .map(VarId::base)
        .collect()
}

/// Smallest common zero of `polys` over the encoded truth points, if any.
pub fn common_zero(polys: &[Polynomial]) -> Result<Option<Assignment>> {
    let vars = universe_index(&poly_universe(polys))?;
    let compiled: Vec<Compiled> = polys.iter().map(|p| Compiled::new(p, &vars)).collect();
    let hit = first_match(vars.len(), |a| compiled.iter().all(|c| c.is_zero_at(a)));
    Ok(hit.map(|m| decode(&vars, m)))
}

/// Exhaustive satisfiability of a polynomial axiom system.
pub fn sat_axioms(sys: &AxiomSystem) -> Result<SatResult> {
    Ok(match common_zero(&sys.axioms)? {
        Some(a) => SatResult::Sat(a),
        None => SatResult::Unsat,
    })
}

/// Whether `g` vanishes on every common zero of `premises`.
pub fn semantic_implies(premises: &[Polynomial], g: &Polynomial) -> Result<bool> {
    let vars = universe_index(&poly_universe(premises.iter().chain([g])))?;
    let compiled: Vec<Compiled> = premises.iter().map(|p| Compiled::new(p, &vars)).collect();
    let goal = Compiled::new(g, &vars);
    let bad = first_match(vars.len(), |a| compiled.iter().all(|c| c.is_zero_at(a)) && !goal.is_zero_at(a));
    Ok(bad.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Term;
    use crate::formulas::{gen_cycle_tseitin, gen_lop};

    #[test]
    fn implication_examples() {
        let f = Field::default();
        let b = Basis::Boolean;
        let (x, y) = (VarId::plain("ox"), VarId::plain("oy"));
        let x_minus_1 = Polynomial::from_terms(f, b, [(Term::var(x), Fe::ONE), (Term::one(), f.elem(-1))]);
        let xy_minus_y = Polynomial::from_terms(f, b, [(Term::from_vars([x, y]), Fe::ONE), (Term::var(y), f.elem(-1))]);
        assert!(semantic_implies(&[x_minus_1], &xy_minus_y).unwrap());
        assert!(!semantic_implies(&[], &Polynomial::var(f, b, x)).unwrap());
    }

    #[test]
    fn lop3_is_unsat() {
        assert_eq!(sat_cnf(&gen_lop(3).unwrap()).unwrap(), SatResult::Unsat);
    }

    #[test]
    fn tseitin_cycle_is_unsat_and_drop_last_is_sat() {
        let s = gen_cycle_tseitin(3, Field::default()).unwrap();
        assert_eq!(sat_axioms(&s).unwrap(), SatResult::Unsat);
        let z = common_zero(&s.axioms[..2]).unwrap();
        assert!(z.unwrap().values().all(|&v| !v));
    }

    #[test]
    fn twin_evaluation_matches_slow_path() {
        let f = Field::default();
        let x = VarId::plain("ox");
        let y = VarId::plain("oy");
        for basis in [Basis::Boolean, Basis::Fourier] {
            let p = Polynomial::from_terms(
                f,
                basis,
                [(Term::from_vars([x.twin(), y]), f.elem(3)), (Term::var(x), f.elem(2)), (Term::one(), f.elem(-5))],
            );
            let vars = vec![x, y];
            let c = Compiled::new(&p, &vars);
            for a in 0..4u32 {
                let slow = p.evaluate(&decode(&vars, a)).unwrap();
                assert_eq!(c.is_zero_at(a), slow.is_zero());
            }
        }
    }

    #[test]
    fn universe_cap() {
        let mut big = crate::formulas::Cnf::new(2, 1);
        for k in 0..26 {
            big.universe.insert(VarId::plain(&format!("cap{k:02}")));
        }
        assert!(matches!(sat_cnf(&big), Err(Error::ScaleLimit { .. })));
    }
}
