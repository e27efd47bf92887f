use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::algebra::{Basis, Polynomial, Term, VarId, VarKind};
use crate::error::{Error, Result};
use crate::formulas::AxiomSystem;
use crate::proofs::{PcProof, Step};
use crate::rng::{self, Rng};

/// For every ordered vertex pair, a perfect pairing of the gadget copies
/// `1..=ell`; pair `p` (1-based) becomes the variable `z(i,j,p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterMap {
    pub ell: usize,
    pairs: BTreeMap<(usize, usize), Vec<(usize, usize)>>,
    // (i, j, l) -> p
    index: BTreeMap<(usize, usize, usize), usize>,
}

impl ClusterMap {
    pub fn new(ell: usize) -> Result<ClusterMap> {
        if ell == 0 || ell % 2 == 1 {
            return Err(Error::InvalidParameter(format!("clustering needs an even ell, got {ell}")));
        }
        Ok(ClusterMap {
            ell,
            pairs: BTreeMap::new(),
            index: BTreeMap::new(),
        })
    }

    /// Sets the pairing for `(i, j)`; it must cover `1..=ell` exactly once.
    pub fn insert(&mut self, i: usize, j: usize, pairing: Vec<(usize, usize)>) -> Result<()> {
        let mut seen = vec![false; self.ell + 1];
        for &(a, b) in &pairing {
            for l in [a, b] {
                if l == 0 || l > self.ell || std::mem::replace(&mut seen[l], true) {
                    return Err(Error::InvalidParameter(format!("pairing for ({i},{j}) is not perfect")));
                }
            }
        }
        if pairing.len() * 2 != self.ell {
            return Err(Error::InvalidParameter(format!("pairing for ({i},{j}) is not perfect")));
        }
        for (p, &(a, b)) in pairing.iter().enumerate() {
            self.index.insert((i, j, a), p + 1);
            self.index.insert((i, j, b), p + 1);
        }
        self.pairs.insert((i, j), pairing);
        Ok(())
    }

    /// Image of a variable; non-gadget variables and unpaired vertex pairs
    /// map to themselves.
    pub fn map_var(&self, v: VarId) -> VarId {
        if let VarKind::Edge { i, j, l } = v.kind() {
            if let Some(&p) = self.index.get(&(i as usize, j as usize, l as usize)) {
                let z = VarId::cluster(i as usize, j as usize, p);
                return if v.is_twin() { z.twin() } else { z };
            }
        }
        v
    }

    /// Lines `pair i j l1 l2 -> p`.
    pub fn to_text(&self) -> String {
        let mut out = format!("ell {}\n", self.ell);
        for (&(i, j), ps) in &self.pairs {
            for (p, &(a, b)) in ps.iter().enumerate() {
                let _ = writeln!(out, "pair {i} {j} {a} {b} -> {}", p + 1);
            }
        }
        out
    }
}

/// Uniform random perfect pairings for every ordered pair of distinct
/// vertices in `[n]`, drawn in pair order from one stream.
pub fn random_pairing(n: usize, ell: usize, rng: &mut Rng) -> Result<ClusterMap> {
    let mut map = ClusterMap::new(ell)?;
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            map.insert(i, j, random_perfect_pairing(ell, rng))?;
        }
    }
    Ok(map)
}

/// [`random_pairing`] seeded from `seed`.
pub fn random_pairing_seeded(n: usize, ell: usize, seed: u64) -> Result<ClusterMap> {
    random_pairing(n, ell, &mut rng::stream(seed, "cluster"))
}

/// A uniformly random perfect pairing of `1..=ell`.
pub fn random_perfect_pairing(ell: usize, rng: &mut Rng) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (1..=ell).collect();
    perm.shuffle(rng);
    perm.chunks(2)
        .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
        .collect()
}

pub fn cluster_term(t: &Term, map: &ClusterMap) -> Term {
    t.vars()
        .iter()
        .fold(Term::one(), |acc, &v| acc.mul_var(map.map_var(v), Basis::Fourier))
}

fn fourier_only(basis: Basis) -> Result<()> {
    if basis == Basis::Fourier {
        Ok(())
    } else {
        Err(Error::BasisMismatch {
            expected: Basis::Fourier,
            found: basis,
        })
    }
}

pub fn cluster_poly(p: &Polynomial, map: &ClusterMap) -> Result<Polynomial> {
    fourier_only(p.basis())?;
    Ok(p.substitute_vars(|v| map.map_var(v)))
}

pub fn cluster_axioms(sys: &AxiomSystem, map: &ClusterMap) -> Result<AxiomSystem> {
    fourier_only(sys.basis)?;
    let mut out = AxiomSystem::new(sys.field, sys.basis, sys.n, map.ell / 2);
    for (p, &g) in sys.axioms.iter().zip(&sys.groups) {
        out.push(cluster_poly(p, map)?, g)?;
    }
    Ok(out)
}

/// Renames multiplier and twin variables; axiom references stay the same
/// and point into [`cluster_axioms`] of the original system.
pub fn cluster_proof(proof: &PcProof, map: &ClusterMap) -> Result<PcProof> {
    fourier_only(proof.basis)?;
    let mut out = PcProof::new(proof.field, proof.basis);
    for s in &proof.steps {
        out.push(match *s {
            Step::MulVar { var, i } => Step::MulVar { var: map.map_var(var), i },
            Step::Twin(v) => Step::Twin(map.map_var(v)),
            Step::Square(v) => Step::Square(map.map_var(v)),
            ref other => other.clone(),
        });
    }
    Ok(out)
}

/// Whether the clustered image of a term keeps one `z` per pair, i.e. the
/// term meets every pair of `(i, j)` in exactly one copy.
pub fn retains_all_pairs(copies: &[usize], pairing: &[(usize, usize)]) -> bool {
    pairing
        .iter()
        .all(|&(a, b)| copies.contains(&a) != copies.contains(&b))
}

/// Monte Carlo estimate of the probability that a term with `ell / 2`
/// distinct copies of `x(1,2,·)` keeps all `ell / 2` cluster variables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RetentionEstimate {
    pub ell: usize,
    pub trials: usize,
    pub hits: usize,
    /// `(3/4)^(ell/2)`.
    pub bound: f64,
    /// Exact probability `m! / (2m-1)!!` with `m = ell / 2`.
    pub exact: f64,
}

impl RetentionEstimate {
    pub fn frequency(&self) -> f64 {
        self.hits as f64 / self.trials as f64
    }

    /// Binomial standard error at the bound.
    pub fn sigma(&self) -> f64 {
        (self.bound * (1.0 - self.bound) / self.trials as f64).sqrt()
    }

    pub fn within_bound(&self, sigmas: f64) -> bool {
        self.frequency() <= self.bound + sigmas * self.sigma()
    }
}

/// Exact retention probability for `ell / 2` copies under a uniform pairing.
pub fn exact_retention(ell: usize) -> f64 {
    let m = ell / 2;
    (1..=m).map(|k| k as f64 / (2 * k - 1) as f64).product()
}

/// Each trial draws a uniform set of `ell / 2` copies and a uniform pairing,
/// clusters the term and checks that `ell / 2` cluster variables remain.
/// Trial `k` uses substream `k` of `cluster-retention/<ell>`.
pub fn retention_monte_carlo(ell: usize, trials: usize, seed: u64) -> Result<RetentionEstimate> {
    if ell < 2 || ell % 2 == 1 || trials == 0 {
        return Err(Error::InvalidParameter("retention needs an even ell >= 2 and trials > 0".into()));
    }
    let name = format!("cluster-retention/{ell}");
    let hits = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng::substream(seed, &name, k as u64);
            let mut copies: Vec<usize> = (1..=ell).collect();
            copies.shuffle(&mut rng);
            copies.truncate(ell / 2);
            let mut map = ClusterMap::new(ell).expect("even ell");
            map.insert(1, 2, random_perfect_pairing(ell, &mut rng)).expect("valid pairing");
            let t = Term::from_vars(copies.iter().map(|&l| VarId::edge(1, 2, l)));
            usize::from(cluster_term(&t, &map).degree() == ell / 2)
        })
        .sum();
    Ok(RetentionEstimate {
        ell,
        trials,
        hits,
        bound: 0.75f64.powi((ell / 2) as i32),
        exact: exact_retention(ell),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_cancel_or_survive() {
        let t = Term::from_vars([VarId::edge(1, 2, 1), VarId::edge(1, 2, 2)]);
        let mut m = ClusterMap::new(2).unwrap();
        m.insert(1, 2, vec![(1, 2)]).unwrap();
        assert!(cluster_term(&t, &m).is_one());
        let mut m = ClusterMap::new(4).unwrap();
        m.insert(1, 2, vec![(1, 3), (2, 4)]).unwrap();
        assert_eq!(cluster_term(&t, &m), Term::from_vars([VarId::cluster(1, 2, 1), VarId::cluster(1, 2, 2)]));
    }

    #[test]
    fn exact_retention_values() {
        assert!((exact_retention(2) - 1.0).abs() < 1e-12);
        assert!((exact_retention(4) - 2.0 / 3.0).abs() < 1e-12);
        assert!((exact_retention(20) - 0.005_542).abs() < 1e-5);
    }

    #[test]
    fn small_monte_carlo_matches_exact() {
        let e = retention_monte_carlo(4, 20_000, 3).unwrap();
        assert!((e.frequency() - 2.0 / 3.0).abs() < 0.02, "{e:?}");
        // at ell = 4 the exact value 2/3 exceeds (3/4)^2
        assert!(!e.within_bound(3.0));
        assert!(retention_monte_carlo(8, 20_000, 3).unwrap().within_bound(3.0));
        assert!((2..=20).step_by(2).all(|l| (exact_retention(l) <= 0.75f64.powi(l as i32 / 2)) == (l >= 6)));
    }

    #[test]
    fn odd_ell_and_bad_pairings_are_rejected() {
        assert!(ClusterMap::new(3).is_err());
        let mut m = ClusterMap::new(4).unwrap();
        assert!(m.insert(1, 2, vec![(1, 1), (2, 3)]).is_err());
        assert!(m.insert(1, 2, vec![(1, 2)]).is_err());
    }

    #[test]
    fn seeded_pairings_are_reproducible() {
        let a = random_pairing_seeded(3, 6, 9).unwrap();
        assert_eq!(a, random_pairing_seeded(3, 6, 9).unwrap());
        assert!(a.to_text().contains("pair 1 2 "));
    }
}
