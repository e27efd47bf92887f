//! Residue invariants on random small families, against the literal
//! closure-and-echelon oracle and against brute-force evaluation.

use std::collections::BTreeSet;

use pclab::algebra::{Assignment, Basis, Fe, Field, Polynomial, Term, VarId};
use pclab::degree_lab::{ClosureSpan, ResidueOracle, SpanBasis};
use proptest::prelude::*;

fn vars(k: usize) -> Vec<VarId> {
    (0..k).map(|i| VarId::plain(&format!("r{i}"))).collect()
}

/// A polynomial from (coefficient, variable mask) pairs.
fn poly(f: Field, vs: &[VarId], terms: &[(i64, u8)]) -> Polynomial {
    Polynomial::from_terms(
        f,
        Basis::Boolean,
        terms.iter().map(|&(c, m)| {
            let t: Term = vs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, v)| *v).collect();
            (t, f.elem(c))
        }),
    )
}

fn terms_strategy(width: usize) -> impl Strategy<Value = Vec<(i64, u8)>> {
    prop::collection::vec((-3i64..=3, 0u8..(1 << width)), 1..5)
}

fn family_strategy(width: usize) -> impl Strategy<Value = Vec<Vec<(i64, u8)>>> {
    prop::collection::vec(terms_strategy(width), 0..4)
}

fn all_assignments(vs: &[VarId]) -> impl Iterator<Item = Assignment> + '_ {
    (0u32..1 << vs.len()).map(move |m| vs.iter().enumerate().map(|(i, &v)| (v, m >> i & 1 == 1)).collect())
}

const WIDTH: usize = 5;

fn active(family: &[Polynomial]) -> BTreeSet<VarId> {
    family.iter().flat_map(Polynomial::vars).collect()
}

/// Common zeros over the whole universe; free variables double the count.
fn full_zero_count(span: &SpanBasis, family: &[Polynomial]) -> usize {
    span.zero_count() << (WIDTH - active(family).len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn agrees_with_closure_oracle(fam in family_strategy(WIDTH), p in terms_strategy(WIDTH)) {
        let f = Field::default();
        let vs = vars(WIDTH);
        let universe: BTreeSet<VarId> = vs.iter().copied().collect();
        let family: Vec<Polynomial> = fam.iter().map(|t| poly(f, &vs, t)).collect();
        let p = poly(f, &vs, &p);
        let fast = SpanBasis::new(&family, &universe, f).unwrap();
        let slow = ClosureSpan::new(&family, &universe, f).unwrap();
        prop_assert_eq!(fast.reduce(&p).unwrap(), slow.reduce(&p).unwrap());
    }

    #[test]
    fn residue_is_idempotent_and_below(fam in family_strategy(WIDTH), p in terms_strategy(WIDTH)) {
        let f = Field::default();
        let vs = vars(WIDTH);
        let universe: BTreeSet<VarId> = vs.iter().copied().collect();
        let family: Vec<Polynomial> = fam.iter().map(|t| poly(f, &vs, t)).collect();
        let span = SpanBasis::new(&family, &universe, f).unwrap();
        let p = poly(f, &vs, &p);
        let r = span.reduce(&p).unwrap();
        prop_assert_eq!(span.reduce(&r).unwrap(), r.clone());
        prop_assert!(r.cmp_support(&p).is_le());
        prop_assert!(span.contains(&p.sub(&r).unwrap()).unwrap());
    }

    /// `P - R(P)` vanishes wherever every family member vanishes, and the
    /// active part of each term of `R(P)` is a standard monomial.
    #[test]
    fn residue_agrees_on_common_zeros(fam in family_strategy(WIDTH), p in terms_strategy(WIDTH)) {
        let f = Field::default();
        let vs = vars(WIDTH);
        let universe: BTreeSet<VarId> = vs.iter().copied().collect();
        let family: Vec<Polynomial> = fam.iter().map(|t| poly(f, &vs, t)).collect();
        let span = SpanBasis::new(&family, &universe, f).unwrap();
        let p = poly(f, &vs, &p);
        let r = span.reduce(&p).unwrap();
        let mut zeros = 0;
        for a in all_assignments(&vs) {
            if family.iter().all(|g| g.evaluate(&a).unwrap() == Fe::ZERO) {
                zeros += 1;
                prop_assert_eq!(p.evaluate(&a).unwrap(), r.evaluate(&a).unwrap());
            }
        }
        prop_assert_eq!(zeros, full_zero_count(&span, &family));
        let standard: BTreeSet<Term> = span.standard_monomials().into_iter().collect();
        let act = active(&family);
        prop_assert!(r
            .terms()
            .all(|(t, _)| standard.contains(&t.vars().iter().copied().filter(|v| act.contains(v)).collect::<Term>())));
    }

    /// A larger family has a larger span, so reducing first by the smaller
    /// one changes nothing.
    #[test]
    fn larger_family_absorbs_smaller(
        fam in family_strategy(WIDTH),
        extra in terms_strategy(WIDTH),
        p in terms_strategy(WIDTH),
    ) {
        let f = Field::default();
        let vs = vars(WIDTH);
        let universe: BTreeSet<VarId> = vs.iter().copied().collect();
        let small: Vec<Polynomial> = fam.iter().map(|t| poly(f, &vs, t)).collect();
        let mut large = small.clone();
        large.push(poly(f, &vs, &extra));
        let s = SpanBasis::new(&small, &universe, f).unwrap();
        let l = SpanBasis::new(&large, &universe, f).unwrap();
        let p = poly(f, &vs, &p);
        prop_assert_eq!(l.reduce(&s.reduce(&p).unwrap()).unwrap(), l.reduce(&p).unwrap());
        prop_assert!(full_zero_count(&l, &large) <= full_zero_count(&s, &small));
    }
}

#[test]
fn cached_and_fresh_spans_agree() {
    let o = ResidueOracle::new(3, 1, Field::default()).unwrap();
    let probe = Polynomial::from_terms(
        o.field(),
        Basis::Boolean,
        [
            (Term::from_vars([VarId::edge(1, 2, 1), VarId::edge(2, 3, 1)]), Fe::ONE),
            (Term::var(VarId::pointer(1, 1)), o.field().elem(-2)),
        ],
    );
    for mask in 0u32..8 {
        let set: BTreeSet<usize> = (1..=3).filter(|j| mask >> (j - 1) & 1 == 1).collect();
        let cached = o.span(&set).unwrap();
        let again = o.span(&set).unwrap();
        let fresh = o.span_uncached(&set).unwrap();
        assert_eq!(cached.reduce(&probe).unwrap(), fresh.reduce(&probe).unwrap());
        assert_eq!(again.zero_count(), fresh.zero_count());
    }
    // the full family is unsatisfiable, so every residue vanishes there
    assert!(o.span(&BTreeSet::from([1, 2, 3])).unwrap().is_trivial());
}
