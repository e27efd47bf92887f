use crate::algebra::{Basis, Fe, Field};
use crate::error::Result;
use crate::formulas::{cycle_var, gen_cycle_tseitin, AxiomSystem};
use crate::proofs::{PcProof, Step};

/// Fourier refutation of the odd-charge Tseitin cycle in which every line
/// has at most two monomials.
///
/// Telescopes `x1 - x_k` along the path, adds the closing edge to get
/// `2 x1`, multiplies by `x1` and divides by two.
pub fn tseitin_fourier_refutation(n: usize, field: Field) -> Result<(PcProof, AxiomSystem)> {
    let axioms = gen_cycle_tseitin(n, field)?;
    let mut p = PcProof::new(field, Basis::Fourier);
    let one = Fe::ONE;
    let a1 = p.push(Step::Axiom(0));
    // x2 (x1 x2 - 1) = x1 - x2
    let mut tele = p.push(Step::MulVar { var: cycle_var(2), i: a1 });
    for k in 2..n {
        let a = p.push(Step::Axiom(k - 1));
        let m = p.push(Step::MulVar { var: cycle_var(k + 1), i: a });
        tele = p.push(Step::LinComb { a: one, i: tele, b: one, j: m });
    }
    // x1 (x_n x1 + 1) = x_n + x1
    let close = p.push(Step::Axiom(n - 1));
    let m = p.push(Step::MulVar { var: cycle_var(1), i: close });
    let two_x1 = p.push(Step::LinComb { a: one, i: tele, b: one, j: m });
    let two = p.push(Step::MulVar { var: cycle_var(1), i: two_x1 });
    p.push(Step::scale(field.half(), two));
    Ok((p, axioms))
}
