//! Sparse multilinear polynomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use super::{Basis, Fe, Field, Term, VarId};
use crate::error::{Error, Result};

/// Truth assignment. Keys may be variables or twins; a twin entry is read as
/// the negation of its partner.
pub type Assignment = BTreeMap<VarId, bool>;

/// A polynomial over one basis: terms mapped to nonzero coefficients.
///
/// Zero coefficients are never stored, so [`Polynomial::monomial_count`] is
/// exactly the size contribution of a proof line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    basis: Basis,
    terms: BTreeMap<Term, Fe>,
}

impl Polynomial {
    pub fn zero(field: Field, basis: Basis) -> Polynomial {
        Polynomial {
            field,
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, basis: Basis, c: Fe) -> Polynomial {
        Polynomial::monomial(field, basis, Term::one(), c)
    }

    pub fn one(field: Field, basis: Basis) -> Polynomial {
        Polynomial::constant(field, basis, Fe::ONE)
    }

    pub fn monomial(field: Field, basis: Basis, term: Term, coef: Fe) -> Polynomial {
        let mut p = Polynomial::zero(field, basis);
        p.add_term(term, coef);
        p
    }

    pub fn var(field: Field, basis: Basis, v: VarId) -> Polynomial {
        Polynomial::monomial(field, basis, Term::var(v), Fe::ONE)
    }

    /// Sums the given `(term, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(field: Field, basis: Basis, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Term, Fe)>,
    {
        let mut p = Polynomial::zero(field, basis);
        for (t, c) in terms {
            p.add_term(t, c);
        }
        p
    }

    /// Adds `c * t` in place.
    pub fn add_term(&mut self, t: Term, c: Fe) {
        if c.is_zero() {
            return;
        }
        let field = self.field;
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = field.add(*e.get(), c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Term, Fe)> + ExactSizeIterator {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn coefficient(&self, t: &Term) -> Fe {
        self.terms.get(t).copied().unwrap_or(Fe::ZERO)
    }

    #[inline]
    pub fn monomial_count(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for exactly the constant polynomial `1`.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&Term::one()) == Fe::ONE
    }

    /// Maximum term degree; `0` for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Term::degree).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|t| t.vars().iter().copied())
            .collect()
    }

    /// The grlex-greatest term.
    pub fn leading_term(&self) -> Result<&Term> {
        self.terms.keys().next_back().ok_or(Error::ZeroPolynomial)
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                expected: self.basis,
                found: other.basis,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.modulus(),
                found: other.field.modulus(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.lincomb(Fe::ONE, other, Fe::ONE)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        let minus_one = self.field.neg(Fe::ONE);
        self.lincomb(Fe::ONE, other, minus_one)
    }

    /// `alpha * self + beta * other`.
    pub fn lincomb(&self, alpha: Fe, other: &Polynomial, beta: Fe) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = self.scale(alpha);
        out.add_scaled(beta, other);
        Ok(out)
    }

    /// `self += beta * other`; caller guarantees compatibility.
    pub(crate) fn add_scaled(&mut self, beta: Fe, other: &Polynomial) {
        if beta.is_zero() {
            return;
        }
        for (t, &c) in &other.terms {
            self.add_term(t.clone(), self.field.mul(beta, c));
        }
    }

    pub fn scale(&self, alpha: Fe) -> Polynomial {
        if alpha.is_zero() {
            return Polynomial::zero(self.field, self.basis);
        }
        Polynomial {
            field: self.field,
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(t, &c)| (t.clone(), self.field.mul(alpha, c)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field.neg(Fe::ONE))
    }

    /// Multiplies every term by `v` and merges.
    pub fn mul_var(&self, v: VarId) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.basis);
        for (t, &c) in &self.terms {
            out.add_term(t.mul_var(v, self.basis), c);
        }
        out
    }

    pub fn mul_term(&self, m: &Term) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.basis);
        for (t, &c) in &self.terms {
            out.add_term(t.mul(m, self.basis), c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = Polynomial::zero(self.field, self.basis);
        for (t1, &c1) in &self.terms {
            for (t2, &c2) in &other.terms {
                out.add_term(t1.mul(t2, self.basis), self.field.mul(c1, c2));
            }
        }
        Ok(out)
    }

    /// Value of the literal `v` under `assignment`, encoded per basis.
    fn literal_value(&self, v: VarId, assignment: &Assignment) -> Result<Fe> {
        let direct = assignment.get(&v).copied();
        let via_twin = assignment.get(&v.twin()).map(|b| !b);
        let truth = match (direct, via_twin) {
            (Some(a), Some(b)) if a != b => return Err(Error::InconsistentTwin(v.base())),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(Error::MissingAssignment(v.base())),
        };
        Ok(self.basis.encode(self.field, truth))
    }

    /// Evaluates at the point encoded from a truth assignment
    /// (Boolean: TRUE = 1; Fourier: TRUE = -1).
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Fe> {
        let f = self.field;
        let mut acc = Fe::ZERO;
        for (t, &c) in &self.terms {
            let mut val = c;
            for &v in t.vars() {
                val = f.mul(val, self.literal_value(v, assignment)?);
            }
            acc = f.add(acc, val);
        }
        Ok(acc)
    }

    /// Substitutes each twin by its algebraic meaning
    /// (`1 - x` over Boolean, `-x` over Fourier), yielding a twin-free polynomial.
    pub fn expand_twins(&self) -> Polynomial {
        let f = self.field;
        let mut out = Polynomial::zero(f, self.basis);
        for (t, &c) in &self.terms {
            let mut partial = Polynomial::constant(f, self.basis, c);
            for &v in t.vars() {
                partial = if !v.is_twin() {
                    partial.mul_var(v)
                } else {
                    match self.basis {
                        Basis::Boolean => {
                            let xv = partial.mul_var(v.base());
                            let mut p = partial;
                            p.add_scaled(f.neg(Fe::ONE), &xv);
                            p
                        }
                        Basis::Fourier => partial.mul_var(v.base()).neg(),
                    }
                };
            }
            out.add_scaled(Fe::ONE, &partial);
        }
        out
    }

    /// Plugs in truth values for the variables on which `value` answers.
    /// Twins are resolved through their partner.
    pub fn restrict<F>(&self, mut value: F) -> Polynomial
    where
        F: FnMut(VarId) -> Option<bool>,
    {
        let f = self.field;
        let mut out = Polynomial::zero(f, self.basis);
        'terms: for (t, &c) in &self.terms {
            let mut coef = c;
            let mut kept = Vec::with_capacity(t.degree());
            for &v in t.vars() {
                let truth = if v.is_twin() {
                    value(v.base()).map(|b| !b)
                } else {
                    value(v)
                };
                match truth {
                    Some(b) => {
                        coef = f.mul(coef, self.basis.encode(f, b));
                        if coef.is_zero() {
                            continue 'terms;
                        }
                    }
                    None => kept.push(v),
                }
            }
            out.add_term(Term::from_vars(kept), coef);
        }
        out
    }

    /// Renames variables through `map`, re-reducing products per basis.
    pub fn substitute_vars<F>(&self, mut map: F) -> Polynomial
    where
        F: FnMut(VarId) -> VarId,
    {
        let mut out = Polynomial::zero(self.field, self.basis);
        for (t, &c) in &self.terms {
            let image = t
                .vars()
                .iter()
                .fold(Term::one(), |acc, &v| acc.mul_var(map(v), self.basis));
            out.add_term(image, c);
        }
        out
    }

    /// Compares polynomials by their supports: the term lists are scanned in
    /// descending grlex order and the first difference decides; a proper
    /// prefix is smaller. Coefficients are ignored, so distinct polynomials
    /// can compare `Equal`.
    pub fn cmp_support(&self, other: &Polynomial) -> Ordering {
        self.terms.keys().rev().cmp(other.terms.keys().rev())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> Field {
        Field::default()
    }

    fn v(name: &str) -> VarId {
        VarId::plain(name)
    }

    fn poly(basis: Basis, terms: &[(i64, &[&str])]) -> Polynomial {
        Polynomial::from_terms(
            f(),
            basis,
            terms
                .iter()
                .map(|(c, vs)| (vs.iter().map(|n| v(n)).collect(), f().elem(*c))),
        )
    }

    #[test]
    fn addition_cancels() {
        let p = poly(Basis::Boolean, &[(1, &["x"]), (1, &["y"])]);
        let q = poly(Basis::Boolean, &[(-1, &["x"])]);
        assert_eq!(p.add(&q).unwrap(), poly(Basis::Boolean, &[(1, &["y"])]));
    }

    #[test]
    fn fourier_mul_var_squares_to_one() {
        let p = poly(Basis::Fourier, &[(1, &[]), (1, &["x"])]);
        assert_eq!(p.mul_var(v("x")), p);
    }

    #[test]
    fn boolean_twin_collision_is_kept() {
        let x = v("x");
        let p = Polynomial::monomial(f(), Basis::Boolean, Term::from_vars([x.twin(), v("y")]), Fe::ONE);
        let q = p.mul_var(x);
        assert_eq!(q.leading_term().unwrap(), &Term::from_vars([x, x.twin(), v("y")]));
    }

    #[test]
    fn basis_mismatch_is_an_error() {
        let p = poly(Basis::Boolean, &[(1, &["x"])]);
        let q = poly(Basis::Fourier, &[(1, &["x"])]);
        assert!(matches!(p.add(&q), Err(Error::BasisMismatch { .. })));
    }

    #[test]
    fn leading_terms() {
        let p = poly(Basis::Boolean, &[(1, &[]), (1, &["x1"]), (1, &["x1", "x2"])]);
        assert_eq!(p.leading_term().unwrap(), &Term::from_vars([v("x1"), v("x2")]));
        let c = poly(Basis::Boolean, &[(5, &[])]);
        assert!(c.leading_term().unwrap().is_one());
        let q = poly(Basis::Boolean, &[(1, &["x1", "x3"]), (1, &["x2", "x3"])]);
        assert_eq!(q.leading_term().unwrap(), &Term::from_vars([v("x2"), v("x3")]));
        assert_eq!(Polynomial::zero(f(), Basis::Boolean).leading_term(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn evaluation_examples() {
        let x = v("x");
        let y = v("y");
        let p = poly(Basis::Fourier, &[(1, &[]), (1, &["x"])]);
        assert_eq!(p.evaluate(&Assignment::from([(x, true)])).unwrap(), Fe::ZERO);

        let q = Polynomial::monomial(f(), Basis::Boolean, Term::from_vars([x.twin(), y]), Fe::ONE);
        assert_eq!(q.evaluate(&Assignment::from([(x, false), (y, false)])).unwrap(), Fe::ZERO);

        let r = poly(Basis::Fourier, &[(1, &["x", "y"]), (-1, &[])]);
        assert_eq!(r.evaluate(&Assignment::from([(x, true), (y, true)])).unwrap(), Fe::ZERO);
    }

    #[test]
    fn evaluation_errors() {
        let x = v("x");
        let p = poly(Basis::Boolean, &[(1, &["x"])]);
        assert!(matches!(p.evaluate(&Assignment::new()), Err(Error::MissingAssignment(_))));
        let bad = Assignment::from([(x, true), (x.twin(), true)]);
        assert!(matches!(p.evaluate(&bad), Err(Error::InconsistentTwin(_))));
    }

    #[test]
    fn expand_twins_matches_evaluation() {
        let x = v("x");
        for basis in [Basis::Boolean, Basis::Fourier] {
            let p = Polynomial::from_terms(
                f(),
                basis,
                [
                    (Term::from_vars([x.twin(), v("y")]), f().elem(3)),
                    (Term::from_vars([x]), f().elem(2)),
                ],
            );
            let e = p.expand_twins();
            assert!(e.vars().iter().all(|w| !w.is_twin()));
            for bits in 0..4u8 {
                let a = Assignment::from([(x, bits & 1 == 1), (v("y"), bits & 2 == 2)]);
                assert_eq!(p.evaluate(&a).unwrap(), e.evaluate(&a).unwrap());
            }
        }
    }

    #[test]
    fn restriction_example() {
        let p = poly(Basis::Fourier, &[(1, &["x"]), (1, &["y"])]);
        let r = p.restrict(|w| (w == v("x")).then_some(false));
        assert_eq!(r, poly(Basis::Fourier, &[(1, &[]), (1, &["y"])]));
    }

    const NAMES: [&str; 4] = ["pa", "pb", "pc", "pd"];

    fn arb_poly(basis: Basis) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((-5i64..5, proptest::collection::btree_set(0usize..4, 0..4)), 0..6)
            .prop_map(move |ts| {
                Polynomial::from_terms(
                    f(),
                    basis,
                    ts.into_iter()
                        .map(|(c, s)| (s.into_iter().map(|k| v(NAMES[k])).collect(), f().elem(c))),
                )
            })
    }

    fn arb_point() -> impl Strategy<Value = Assignment> {
        proptest::collection::vec(any::<bool>(), 4)
            .prop_map(|bits| NAMES.iter().zip(bits).map(|(n, b)| (v(n), b)).collect())
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_poly(Basis::Boolean), q in arb_poly(Basis::Boolean), r in arb_poly(Basis::Boolean),
                     pf in arb_poly(Basis::Fourier), qf in arb_poly(Basis::Fourier), rf in arb_poly(Basis::Fourier)) {
            for (p, q, r) in [(&p, &q, &r), (&pf, &qf, &rf)] {
                prop_assert_eq!(p.add(q).unwrap(), q.add(p).unwrap());
                prop_assert_eq!(p.add(q).unwrap().add(r).unwrap(), p.add(&q.add(r).unwrap()).unwrap());
                prop_assert_eq!(p.mul(q).unwrap(), q.mul(p).unwrap());
                let x = v(NAMES[0]);
                prop_assert_eq!(p.add(q).unwrap().mul_var(x), p.mul_var(x).add(&q.mul_var(x)).unwrap());
                prop_assert!(p.sub(p).unwrap().is_zero());
            }
        }

        #[test]
        fn evaluation_is_a_homomorphism(p in arb_poly(Basis::Boolean), q in arb_poly(Basis::Boolean),
                                        pf in arb_poly(Basis::Fourier), qf in arb_poly(Basis::Fourier),
                                        a in arb_point()) {
            let fld = f();
            for (p, q) in [(&p, &q), (&pf, &qf)] {
                let sum = p.add(q).unwrap().evaluate(&a).unwrap();
                prop_assert_eq!(sum, fld.add(p.evaluate(&a).unwrap(), q.evaluate(&a).unwrap()));
                let x = v(NAMES[1]);
                let xv = Polynomial::var(fld, p.basis(), x).evaluate(&a).unwrap();
                prop_assert_eq!(p.mul_var(x).evaluate(&a).unwrap(), fld.mul(xv, p.evaluate(&a).unwrap()));
                prop_assert_eq!(p.mul(q).unwrap().evaluate(&a).unwrap(),
                                fld.mul(p.evaluate(&a).unwrap(), q.evaluate(&a).unwrap()));
            }
        }
    }
}
