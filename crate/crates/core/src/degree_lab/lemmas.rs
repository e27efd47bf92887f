use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng as _;
use rayon::prelude::*;

use super::oracle::ResidueOracle;
use super::span::SpanBasis;
use crate::algebra::text::format_polynomial;
use crate::algebra::{Basis, Fe, Field, Polynomial, Term, VarId};
use crate::error::Result;
use crate::formulas::Group;
use crate::rng::{stream, Rng};

/// Counterexamples kept verbatim in a report; further ones are only counted.
const KEPT: usize = 20;

/// Outcome of one exhaustive or sampled check.
#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub lemma: String,
    pub n: usize,
    pub ell: usize,
    pub cases: usize,
    pub failures: usize,
    pub counterexamples: Vec<String>,
    pub elapsed: Duration,
}

impl LemmaReport {
    fn new(lemma: &str, n: usize, ell: usize) -> LemmaReport {
        LemmaReport {
            lemma: lemma.to_string(),
            n,
            ell,
            cases: 0,
            failures: 0,
            counterexamples: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn absorb(&mut self, part: Partial) {
        self.cases += part.cases;
        self.failures += part.failures.len();
        for f in part.failures {
            if self.counterexamples.len() < KEPT {
                self.counterexamples.push(f);
            }
        }
    }

    /// CSV header matching [`LemmaReport::csv_row`].
    pub fn csv_header(timing: bool) -> &'static str {
        if timing {
            "lemma,n,ell,cases,counterexamples,seconds"
        } else {
            "lemma,n,ell,cases,counterexamples"
        }
    }

    pub fn csv_row(&self, timing: bool) -> String {
        let mut s = format!("{},{},{},{},{}", self.lemma, self.n, self.ell, self.cases, self.failures);
        if timing {
            s.push_str(&format!(",{:.3}", self.elapsed.as_secs_f64()));
        }
        s
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} ell={}: {} cases, {} counterexamples",
            self.lemma, self.n, self.ell, self.cases, self.failures
        )?;
        for c in &self.counterexamples {
            write!(f, "\n  {c}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Partial {
    cases: usize,
    failures: Vec<String>,
}

impl Partial {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}

fn run<F>(lemma: &str, oracle: &ResidueOracle, terms: &[Term], per_term: F) -> Result<LemmaReport>
where
    F: Fn(&Term) -> Result<Partial> + Sync + Send,
{
    let start = Instant::now();
    let parts: Vec<Partial> = terms.par_iter().map(per_term).collect::<Result<_>>()?;
    let mut rep = LemmaReport::new(lemma, oracle.n(), oracle.ell());
    for p in parts {
        rep.absorb(p);
    }
    rep.elapsed = start.elapsed();
    Ok(rep)
}

/// All terms over `vars` of degree at most `max_degree`, ascending grlex.
pub fn terms_up_to(vars: &[VarId], max_degree: usize) -> Vec<Term> {
    let mut out = vec![Term::one()];
    let mut layer = vec![(Term::one(), 0usize)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for (t, from) in &layer {
            for (k, &v) in vars.iter().enumerate().skip(*from) {
                next.push((t.mul_var(v, Basis::Boolean), k + 1));
            }
        }
        out.extend(next.iter().map(|(t, _)| t.clone()));
        layer = next;
    }
    out.sort();
    out
}

fn mono(field: Field, t: &Term) -> Polynomial {
    Polynomial::monomial(field, Basis::Boolean, t.clone(), Fe::ONE)
}

fn universe_vec(oracle: &ResidueOracle) -> Vec<VarId> {
    oracle.universe().iter().copied().collect()
}

/// Residue against a larger vertex set changes nothing: for every term `t`
/// and variable `w` with `|τ(wt)| < n`, `R_{τ(wt)}(t) = R_{τ(t)}(t)`.
pub fn verify_rdrop(oracle: &ResidueOracle, max_degree: usize) -> Result<LemmaReport> {
    let vars = universe_vec(oracle);
    let terms = terms_up_to(&vars, max_degree);
    let n = oracle.n();
    run("rdrop", oracle, &terms, |t| {
        let mut part = Partial::default();
        let base = oracle.r_term(t)?;
        for &w in &vars {
            let set = oracle.tau(&t.mul_var(w, Basis::Boolean))?;
            if set.len() >= n {
                continue;
            }
            let wide = oracle.residue(&set, &mono(oracle.field(), t))?;
            part.check(wide == base, || {
                format!("t={t} w={w}: {} vs {}", format_polynomial(&wide), format_polynomial(&base))
            });
        }
        Ok(part)
    })
}

fn supersets(base: &BTreeSet<usize>, n: usize) -> Vec<BTreeSet<usize>> {
    let rest: Vec<usize> = (1..=n).filter(|v| !base.contains(v)).collect();
    (0..1usize << rest.len())
        .map(|mask| {
            let mut s = base.clone();
            s.extend(rest.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v));
            s
        })
        .filter(|s| s.len() < n)
        .collect()
}

/// For every vertex set `I ⊇ τ(t)` with `|I| < n`, `R_I(t) = R_{τ(t)}(t)`.
pub fn verify_rdrop2(oracle: &ResidueOracle, max_degree: usize) -> Result<LemmaReport> {
    let terms = terms_up_to(&universe_vec(oracle), max_degree);
    let n = oracle.n();
    run("rdrop2", oracle, &terms, |t| {
        let mut part = Partial::default();
        let tau = oracle.tau(t)?;
        if tau.len() >= n {
            return Ok(part);
        }
        let base = oracle.r_term(t)?;
        for set in supersets(&tau, n) {
            let wide = oracle.residue(&set, &mono(oracle.field(), t))?;
            part.check(wide == base, || format!("t={t} I={set:?}: {}", format_polynomial(&wide)));
        }
        Ok(part)
    })
}

/// Every term `t'` of `R(t)` satisfies `τ(t') ⊆ τ(t)`.
pub fn verify_rtech(oracle: &ResidueOracle, max_degree: usize) -> Result<LemmaReport> {
    let terms = terms_up_to(&universe_vec(oracle), max_degree);
    run("rtech", oracle, &terms, |t| {
        let mut part = Partial::default();
        let tau = oracle.tau(t)?;
        for (s, _) in oracle.r_term(t)?.terms() {
            let ts = oracle.tau(s)?;
            part.check(ts.is_subset(&tau), || format!("t={t}: term {s} touches {ts:?}, t touches {tau:?}"));
        }
        Ok(part)
    })
}

/// Conditions 1 and 3 of the operator: `R(A) = 0` for every axiom and `R(1) = 1`.
pub fn verify_rop_axioms(oracle: &ResidueOracle) -> Result<LemmaReport> {
    let start = Instant::now();
    let mut part = Partial::default();
    for (k, a) in oracle.axioms().axioms.iter().enumerate() {
        let r = oracle.r(a)?;
        part.check(r.is_zero(), || format!("axiom {}: R = {}", k + 1, format_polynomial(&r)));
    }
    let one = Polynomial::one(oracle.field(), Basis::Boolean);
    let r1 = oracle.r(&one)?;
    part.check(r1 == one, || format!("R(1) = {}", format_polynomial(&r1)));
    let mut rep = LemmaReport::new("rop-axioms", oracle.n(), oracle.ell());
    rep.absorb(part);
    rep.elapsed = start.elapsed();
    Ok(rep)
}

fn random_coefficient(field: Field, rng: &mut Rng) -> Fe {
    let p = field.modulus();
    field.from_u64(rng.gen_range(1..p))
}

fn random_term(vars: &[VarId], max_degree: usize, rng: &mut Rng) -> Term {
    let d = rng.gen_range(0..=max_degree.min(vars.len()));
    vars.choose_multiple(rng, d).copied().collect()
}

/// Random Boolean polynomial with up to `max_terms` terms of degree at most `max_degree`.
pub fn random_polynomial(vars: &[VarId], max_terms: usize, max_degree: usize, field: Field, rng: &mut Rng) -> Polynomial {
    let k = rng.gen_range(1..=max_terms);
    let mut p = Polynomial::zero(field, Basis::Boolean);
    for _ in 0..k {
        let t = random_term(vars, max_degree, rng);
        let c = random_coefficient(field, rng);
        p.add_term(t, c);
    }
    p
}

/// Condition 2 of the operator on seeded samples: `R(wP) = R(w R(P))` for
/// polynomials `P` (at most 5 terms, degree at most 3) and variables `w`
/// with `|τ(wt)| < n` for every term `t` of `P`.
pub fn verify_rop_condition2(oracle: &ResidueOracle, samples: usize, seed: u64) -> Result<LemmaReport> {
    let start = Instant::now();
    let vars = universe_vec(oracle);
    let f = oracle.field();
    let n = oracle.n();
    let mut rng = stream(seed, "rop-condition2");
    let mut cases = Vec::with_capacity(samples);
    while cases.len() < samples {
        let w = *vars.choose(&mut rng).expect("nonempty universe");
        let k = rng.gen_range(1..=5);
        let mut p = Polynomial::zero(f, Basis::Boolean);
        let mut attempts = 0;
        while p.monomial_count() < k && attempts < 200 {
            attempts += 1;
            let t = random_term(&vars, 3, &mut rng);
            if oracle.tau(&t.mul_var(w, Basis::Boolean))?.len() < n {
                p.add_term(t, random_coefficient(f, &mut rng));
            }
        }
        if !p.is_zero() {
            cases.push((w, p));
        }
    }
    let parts: Vec<Partial> = cases
        .par_iter()
        .map(|(w, p)| {
            let mut part = Partial::default();
            let lhs = oracle.r(&p.mul_var(*w))?;
            let rhs = oracle.r(&oracle.r(p)?.mul_var(*w))?;
            part.check(lhs == rhs, || {
                format!(
                    "w={w} P={}: {} vs {}",
                    format_polynomial(p),
                    format_polynomial(&lhs),
                    format_polynomial(&rhs)
                )
            });
            Ok(part)
        })
        .collect::<Result<_>>()?;
    let mut rep = LemmaReport::new("rop-condition2", oracle.n(), oracle.ell());
    for p in parts {
        rep.absorb(p);
    }
    rep.elapsed = start.elapsed();
    Ok(rep)
}

/// The four residue properties for the span of `family`:
/// (1) `R(P) ⪯ P`; (2) `P - Q ∈ Span ⇒ R(P) = R(Q)`; (3) linearity;
/// (4) `R(PQ) = R(P R(Q))`. Checked on `pairs` seeded random pairs and on
/// all pairs of terms of degree at most `exhaustive_degree`.
pub fn verify_residue_properties(
    label: &str,
    span: &SpanBasis,
    family: &[Polynomial],
    (n, ell): (usize, usize),
    pairs: usize,
    exhaustive_degree: usize,
    seed: u64,
) -> Result<LemmaReport> {
    let start = Instant::now();
    let vars: Vec<VarId> = span.universe().to_vec();
    let field = family.first().map(Polynomial::field).unwrap_or_default();
    let family: Vec<Polynomial> = family.iter().map(Polynomial::expand_twins).collect();
    let r = |p: &Polynomial| span.reduce(p);
    let mut rng = stream(seed, &format!("residue-properties/{label}"));

    let check_pair = |p: &Polynomial, q: &Polynomial, a: Fe, b: Fe, shifted: &Polynomial| -> Result<Partial> {
        let mut part = Partial::default();
        let (rp, rq) = (r(p)?, r(q)?);
        part.check(rp.cmp_support(p).is_le(), || format!("item 1: P={} R={}", format_polynomial(p), format_polynomial(&rp)));
        let rs = r(shifted)?;
        part.check(rs == rp, || format!("item 2: P={}", format_polynomial(p)));
        let lin = r(&p.lincomb(a, q, b)?)?;
        part.check(lin == rp.lincomb(a, &rq, b)?, || {
            format!("item 3: P={} Q={}", format_polynomial(p), format_polynomial(q))
        });
        let prod = r(&p.mul(q)?)?;
        let via = r(&p.mul(&rq)?)?;
        part.check(prod == via, || format!("item 4: P={} Q={}", format_polynomial(p), format_polynomial(q)));
        Ok(part)
    };
    let shift = |p: &Polynomial, rng: &mut Rng| -> Result<Polynomial> {
        let mut out = p.clone();
        if family.is_empty() {
            return Ok(out);
        }
        for _ in 0..2 {
            let g = family.choose(rng).expect("nonempty family");
            let m = random_term(&vars, 2, rng);
            out = out.lincomb(Fe::ONE, &g.mul_term(&m), random_coefficient(field, rng))?;
        }
        Ok(out)
    };

    let mut rep = LemmaReport::new(&format!("residue-properties[{label}]"), n, ell);
    for _ in 0..pairs {
        let p = random_polynomial(&vars, 5, 3, field, &mut rng);
        let q = random_polynomial(&vars, 5, 3, field, &mut rng);
        let (a, b) = (random_coefficient(field, &mut rng), random_coefficient(field, &mut rng));
        let shifted = shift(&p, &mut rng)?;
        rep.absorb(check_pair(&p, &q, a, b, &shifted)?);
    }
    let terms = terms_up_to(&vars, exhaustive_degree);
    let polys: Vec<Polynomial> = terms.iter().map(|t| mono(field, t)).collect();
    let (a, b) = (field.elem(2), field.elem(-3));
    let parts: Vec<Partial> = polys
        .par_iter()
        .enumerate()
        .map(|(k, p)| {
            let mut rng = crate::rng::substream(seed, &format!("residue-properties/{label}/exhaustive"), k as u64);
            let shifted = shift(p, &mut rng)?;
            let mut acc = Partial::default();
            for q in &polys {
                let part = check_pair(p, q, a, b, &shifted)?;
                acc.cases += part.cases;
                acc.failures.extend(part.failures);
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    for p in parts {
        rep.absorb(p);
    }
    rep.elapsed = start.elapsed();
    Ok(rep)
}

/// [`verify_residue_properties`] for the span of `T ∪ {BV_j : j ∈ I}`, for
/// every vertex set `I ⊆ [n]` (the full family included).
pub fn verify_property_suite(
    oracle: &ResidueOracle,
    pairs: usize,
    exhaustive_degree: usize,
    seed: u64,
) -> Result<Vec<LemmaReport>> {
    let n = oracle.n();
    (0u32..1 << n)
        .map(|mask| {
            let set: BTreeSet<usize> = (1..=n).filter(|j| mask >> (j - 1) & 1 == 1).collect();
            let family: Vec<Polynomial> = oracle
                .axioms()
                .select(|g| match g {
                    Group::Ordering => true,
                    Group::Vertex(j) => set.contains(&j),
                    Group::Other => false,
                })
                .cloned()
                .collect();
            let label = format!("I={set:?}");
            let span = oracle.span(&set)?;
            verify_residue_properties(&label, &span, &family, (n, oracle.ell()), pairs, exhaustive_degree, seed)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_enumeration_counts() {
        let vars: Vec<VarId> = (0..12).map(|k| VarId::plain(&format!("te{k:02}"))).collect();
        assert_eq!(terms_up_to(&vars, 4).len(), 1 + 12 + 66 + 220 + 495);
        assert_eq!(terms_up_to(&vars, 0), vec![Term::one()]);
    }

    #[test]
    fn supersets_stay_below_n() {
        let s = supersets(&BTreeSet::from([1]), 3);
        assert_eq!(s, vec![BTreeSet::from([1]), BTreeSet::from([1, 2]), BTreeSet::from([1, 3])]);
    }

    #[test]
    fn rop_axioms_hold_at_three() {
        let o = ResidueOracle::new(3, 1, Field::default()).unwrap();
        let rep = verify_rop_axioms(&o).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.cases, o.axioms().len() + 1);
    }
}
