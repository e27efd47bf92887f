//! Multilinear terms and the graded lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::{Basis, VarId};

/// A multilinear monomial: a sorted, duplicate-free set of variables.
/// The empty term is the constant monomial `1`.
///
/// `Ord` on terms is the graded lexicographic order under the default
/// variable order: lower degree first, ties decided by the largest variable
/// at which the two terms differ.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Term(SmallVec<[VarId; 4]>);

impl Term {
    pub fn one() -> Term {
        Term(SmallVec::new())
    }

    pub fn from_vars<I: IntoIterator<Item = VarId>>(vars: I) -> Term {
        let mut v: SmallVec<[VarId; 4]> = vars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Term(v)
    }

    pub fn var(v: VarId) -> Term {
        let mut s = SmallVec::new();
        s.push(v);
        Term(s)
    }

    #[inline]
    pub fn vars(&self) -> &[VarId] {
        &self.0
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: VarId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Multiplies by one variable, reducing squares per basis
    /// (`x^2 = x` over Boolean, `x^2 = 1` over Fourier).
    ///
    /// The sign of the result is always `+1`: a variable next to its twin is
    /// kept as is, since twin relations only enter proofs as axiom lines.
    pub fn mul_var(&self, v: VarId, basis: Basis) -> Term {
        match self.0.binary_search(&v) {
            Ok(pos) => match basis {
                Basis::Boolean => self.clone(),
                Basis::Fourier => {
                    let mut out = self.0.clone();
                    out.remove(pos);
                    Term(out)
                }
            },
            Err(pos) => {
                let mut out = self.0.clone();
                out.insert(pos, v);
                Term(out)
            }
        }
    }

    /// Product of two terms: union over Boolean, symmetric difference over Fourier.
    pub fn mul(&self, other: &Term, basis: Basis) -> Term {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    if basis == Basis::Boolean {
                        out.push(a[i]);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Term(out)
    }

    /// `self` with `v` removed (no-op if absent).
    pub fn without(&self, v: VarId) -> Term {
        let mut out = self.0.clone();
        if let Ok(pos) = out.binary_search(&v) {
            out.remove(pos);
        }
        Term(out)
    }

    /// True when every variable of `self` occurs in `other`.
    pub fn divides(&self, other: &Term) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }
}

/// Graded lexicographic comparison under an arbitrary variable order.
pub fn compare_grlex_by<F>(t1: &Term, t2: &Term, mut var_order: F) -> Ordering
where
    F: FnMut(&VarId, &VarId) -> Ordering,
{
    match t1.degree().cmp(&t2.degree()) {
        Ordering::Equal => {}
        other => return other,
    }
    let mut a: SmallVec<[VarId; 8]> = t1.0.iter().copied().collect();
    let mut b: SmallVec<[VarId; 8]> = t2.0.iter().copied().collect();
    a.sort_by(|x, y| var_order(y, x));
    b.sort_by(|x, y| var_order(y, x));
    for (x, y) in a.iter().zip(&b) {
        match var_order(x, y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Graded lexicographic comparison under the default variable order.
pub fn compare_grlex(t1: &Term, t2: &Term) -> Ordering {
    t1.cmp(t2)
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.0.iter().rev().cmp(other.0.iter().rev()),
            other => other,
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromIterator<VarId> for Term {
    fn from_iter<I: IntoIterator<Item = VarId>>(iter: I) -> Self {
        Term::from_vars(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(k: usize) -> VarId {
        VarId::plain(&format!("v{k:02}"))
    }

    fn term(ks: &[usize]) -> Term {
        ks.iter().map(|&k| p(k)).collect()
    }

    #[test]
    fn boolean_square_is_idempotent() {
        let x = p(1);
        assert_eq!(Term::var(x).mul_var(x, Basis::Boolean), Term::var(x));
    }

    #[test]
    fn fourier_square_cancels() {
        let x = p(1);
        assert_eq!(Term::var(x).mul_var(x, Basis::Fourier), Term::one());
        assert_eq!(Term::var(x).mul_var(p(2), Basis::Fourier), term(&[1, 2]));
    }

    #[test]
    fn twin_collisions_are_kept() {
        let x = p(1);
        let t = Term::from_vars([x.twin(), p(2)]).mul_var(x, Basis::Boolean);
        assert_eq!(t.degree(), 3);
        assert!(t.contains(x) && t.contains(x.twin()));
    }

    #[test]
    fn grlex_examples() {
        // x2 < x1 x2 by degree
        assert_eq!(compare_grlex(&term(&[2]), &term(&[1, 2])), Ordering::Less);
        assert_eq!(compare_grlex(&term(&[1, 3]), &term(&[1, 3])), Ordering::Equal);
        // equal degree: the first difference scanning from the largest variable
        // is x1 vs x2, so x1 x3 < x2 x3
        assert_eq!(compare_grlex(&term(&[1, 3]), &term(&[2, 3])), Ordering::Less);
        assert_eq!(compare_grlex(&Term::one(), &term(&[1])), Ordering::Less);
    }

    #[test]
    fn custom_order_agrees_with_default_and_can_reverse() {
        let (a, b) = (term(&[1, 3]), term(&[2, 3]));
        assert_eq!(compare_grlex_by(&a, &b, |x, y| x.cmp(y)), Ordering::Less);
        assert_eq!(compare_grlex_by(&a, &b, |x, y| y.cmp(x)), Ordering::Greater);
    }

    #[test]
    fn divides_is_subset() {
        assert!(term(&[1, 3]).divides(&term(&[1, 2, 3])));
        assert!(!term(&[1, 4]).divides(&term(&[1, 2, 3])));
        assert!(Term::one().divides(&term(&[5])));
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        proptest::collection::btree_set(0usize..8, 0..6)
            .prop_map(|s| s.into_iter().map(p).collect())
    }

    proptest! {
        #[test]
        fn fourier_self_product_is_one(t in arb_term()) {
            let mut acc = t.clone();
            for &v in t.vars() {
                acc = acc.mul_var(v, Basis::Fourier);
            }
            prop_assert!(acc.is_one());
        }

        #[test]
        fn grlex_is_a_total_order(a in arb_term(), b in arb_term(), c in arb_term()) {
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
            if a.degree() < b.degree() {
                prop_assert!(a < b);
            }
            prop_assert_eq!(compare_grlex_by(&a, &b, |x, y| x.cmp(y)), a.cmp(&b));
        }

        #[test]
        fn term_product_matches_repeated_mul_var(a in arb_term(), b in arb_term()) {
            for basis in [Basis::Boolean, Basis::Fourier] {
                let mut acc = a.clone();
                for &v in b.vars() {
                    acc = acc.mul_var(v, basis);
                }
                prop_assert_eq!(a.mul(&b, basis), acc);
            }
        }
    }
}
