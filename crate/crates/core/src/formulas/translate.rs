use super::{AxiomSystem, Clause, Cnf};
use crate::algebra::{Basis, Fe, Field, Polynomial, Term};
use crate::error::Result;

/// Polynomial that vanishes exactly on the assignments satisfying `clause`.
///
/// Boolean: the single monomial of opposite literals (`x` contributes `~x`,
/// `-x` contributes `x`). Fourier: the product of `1 + x` / `1 - x`, with
/// `2^width` monomials and no normalizing factor.
pub fn clause_to_poly(clause: &Clause, field: Field, basis: Basis) -> Polynomial {
    match basis {
        Basis::Boolean => {
            let t: Term = clause
                .literals()
                .iter()
                .map(|l| if l.is_positive() { l.var().twin() } else { l.var() })
                .collect();
            Polynomial::monomial(field, basis, t, Fe::ONE)
        }
        Basis::Fourier => {
            let minus = field.neg(Fe::ONE);
            let mut p = Polynomial::one(field, basis);
            for l in clause.literals() {
                let sign = if l.is_positive() { Fe::ONE } else { minus };
                let mut next = p.clone();
                next.add_scaled(sign, &p.mul_var(l.var()));
                p = next;
            }
            p
        }
    }
}

/// Translates every clause, keeping groups and parameters.
pub fn cnf_to_axioms(cnf: &Cnf, field: Field, basis: Basis) -> Result<AxiomSystem> {
    let mut sys = AxiomSystem::new(field, basis, cnf.n, cnf.ell);
    for (c, g) in cnf.iter() {
        sys.push(clause_to_poly(c, field, basis), g)?;
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::super::Literal;
    use super::*;
    use crate::algebra::{Assignment, VarId};

    #[test]
    fn examples() {
        let f = Field::default();
        let (x, y) = (VarId::plain("tx"), VarId::plain("ty"));
        let c = Clause::new([Literal::pos(x), Literal::neg(y)]).unwrap();
        let p = clause_to_poly(&c, f, Basis::Boolean);
        assert_eq!(p, Polynomial::monomial(f, Basis::Boolean, Term::from_vars([x.twin(), y]), Fe::ONE));

        let c = Clause::new([Literal::pos(x), Literal::pos(y)]).unwrap();
        let q = clause_to_poly(&c, f, Basis::Fourier);
        let want = Polynomial::from_terms(
            f,
            Basis::Fourier,
            [Term::one(), Term::var(x), Term::var(y), Term::from_vars([x, y])].map(|t| (t, Fe::ONE)),
        );
        assert_eq!(q, want);
    }

    #[test]
    fn zero_exactly_on_satisfying_assignments() {
        let f = Field::default();
        let vars: Vec<VarId> = (0..4).map(|k| VarId::plain(&format!("tv{k}"))).collect();
        for width in 0..=4 {
            for signs in 0..1u32 << width {
                let c = Clause::new((0..width).map(|k| Literal::new(vars[k], signs >> k & 1 == 1))).unwrap();
                for basis in [Basis::Boolean, Basis::Fourier] {
                    let p = clause_to_poly(&c, f, basis);
                    if basis == Basis::Fourier {
                        assert_eq!(p.monomial_count(), 1 << width);
                    }
                    for a in 0..1u32 << width {
                        let asg: Assignment = (0..width).map(|k| (vars[k], a >> k & 1 == 1)).collect();
                        let sat = c.literals().iter().any(|l| l.satisfied_by(asg[&l.var()]));
                        assert_eq!(p.evaluate(&asg).unwrap().is_zero(), sat);
                    }
                }
            }
        }
    }
}
