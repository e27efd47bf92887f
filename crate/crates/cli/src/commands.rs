use std::path::Path;
use std::time::Instant;

use anyhow::Result;
use pclab::algebra::text::parse_var;
use pclab::algebra::{Basis, Field};
use pclab::constructions::{
    bop_resolution_refutation, lifted_refutation, lop_resolution_refutation, pcr_upper_bound,
    tseitin_fourier_refutation,
};
use pclab::degree_lab::{
    demo_pipeline, verify_property_suite, verify_rdrop, verify_rdrop2, verify_rop_axioms, verify_rop_condition2,
    verify_rtech, DemoConfig, LemmaReport, ResidueOracle,
};
use pclab::formulas::{
    cnf_to_axioms, gen_bop, gen_bop_lifted, gen_bop_lifted_diagonal, gen_cycle_tseitin, gen_lop, AxiomSystem, Cnf,
};
use pclab::proofs::io::{write_pc, write_resolution};
use pclab::proofs::{check_pc, random_derivation, check_resolution, materialize, quadratic_degree, PcProof, Report, ResolutionProof};
use pclab::transforms::{
    cluster_axioms, cluster_proof, qdeg_to_deg, random_pairing_seeded, res_to_pcr, restrict_proof, split, Restriction,
};

use crate::files::{self, Loaded, Manifest};
use crate::{Failure, GenFamily, Global, Lemma, RefuteFamily, Transform, MAX_ELL, MAX_N};

/// Positional value, else the flag, else a usage error.
pub fn param(positional: Option<usize>, flag: Option<usize>, what: &str) -> Result<usize> {
    match positional.or(flag) {
        Some(0) => Err(Failure::Usage(format!("{what} must be positive")).into()),
        Some(v) => Ok(v),
        None => Err(Failure::Usage(format!("missing {what}")).into()),
    }
}

pub fn within_limits(n: usize, ell: usize) -> Result<()> {
    if n > MAX_N {
        return Err(pclab::Error::ScaleLimit {
            what: "n",
            got: n,
            limit: MAX_N,
        }
        .into());
    }
    if ell > MAX_ELL {
        return Err(pclab::Error::ScaleLimit {
            what: "ell",
            got: ell,
            limit: MAX_ELL,
        }
        .into());
    }
    Ok(())
}

pub fn field(g: &Global) -> Result<Field> {
    Ok(Field::new(g.field)?)
}

pub fn gen(g: &Global, family: GenFamily, n: Option<usize>, ell: Option<usize>, axioms: bool) -> Result<()> {
    let n = param(n, g.n_flag, "n")?;
    let ell = param(ell, g.ell_flag.or(Some(1)), "ell")?;
    within_limits(n, ell)?;
    let f = field(g)?;
    let (stem, cnf): (String, Cnf) = match family {
        GenFamily::Lop => (format!("lop-{n}"), gen_lop(n)?),
        GenFamily::Bop => (format!("bop-{n}"), gen_bop(n)?),
        GenFamily::BopLifted => (format!("bop-lifted-{n}-{ell}"), gen_bop_lifted(n, ell)?),
        GenFamily::BopLiftedDiagonal => (format!("bop-lifted-diagonal-{n}-{ell}"), gen_bop_lifted_diagonal(n, ell)?),
        GenFamily::TseitinCycle => {
            let sys = gen_cycle_tseitin(n, f)?;
            let name = files::save_axioms(g, &format!("tseitin-cycle-{n}"), &sys)?;
            println!("{name}: {} axioms, basis {}", sys.len(), sys.basis);
            return Ok(());
        }
    };
    let name = files::save_cnf(g, &stem, &cnf)?;
    println!(
        "{name}: {} clauses, {} variables, max width {}",
        cnf.len(),
        cnf.universe.len(),
        cnf.max_width()
    );
    if axioms {
        let sys = cnf_to_axioms(&cnf, f, g.basis)?;
        let name = files::save_axioms(g, &stem, &sys)?;
        println!("{name}: {} axioms, basis {}, degree {}", sys.len(), sys.basis, sys.max_degree());
    }
    Ok(())
}

fn pc_summary(r: &Report) -> String {
    let mut s = format!(
        "valid={} refutes={} lines={} size={} degree={}",
        r.valid, r.refutes, r.lines, r.size, r.degree
    );
    if let Some(k) = r.first_bad_line {
        s.push_str(&format!(" first_bad_line={}", k + 1));
    }
    if let Some(why) = &r.failure {
        s.push_str(&format!(" reason=\"{why}\""));
    }
    s
}

fn res_summary(r: &pclab::proofs::ResReport, proof: &ResolutionProof) -> String {
    let mut s = format!(
        "valid={} refutes={} clauses={} resolutions={} max_width={} max_negative={}",
        r.valid,
        r.refutes,
        r.clauses,
        proof.resolutions(),
        r.max_width,
        r.max_negative
    );
    if let Some(k) = r.first_bad_line {
        s.push_str(&format!(" first_bad_line={}", k + 1));
    }
    if let Some(why) = &r.failure {
        s.push_str(&format!(" reason=\"{why}\""));
    }
    s
}

/// Checks `proof` and refuses to go on unless it is valid.
fn ensure_pc(proof: &PcProof, axioms: &AxiomSystem) -> Result<Report> {
    let r = check_pc(proof, axioms)?;
    if !r.valid {
        return Err(Failure::Invalid(format!("produced proof does not check: {}", pc_summary(&r))).into());
    }
    Ok(r)
}

fn timed<T>(g: &Global, secs: f64, line: String, extra: T) -> String
where
    T: std::fmt::Display,
{
    if g.no_timing {
        format!("{line}{extra}")
    } else {
        format!("{line}{extra} seconds={secs:.3}")
    }
}

pub fn refute(g: &Global, family: RefuteFamily, n: Option<usize>, ell: Option<usize>, print: bool) -> Result<()> {
    let n = param(n, g.n_flag, "n")?;
    let ell = param(ell, g.ell_flag.or(Some(1)), "ell")?;
    within_limits(n, ell)?;
    let f = field(g)?;
    let start = Instant::now();
    let emit = |report: String, text: &str| {
        if print {
            print!("{text}");
            eprintln!("{report}");
        } else {
            println!("{report}");
        }
    };
    match family {
        RefuteFamily::Lop | RefuteFamily::Bop | RefuteFamily::BopLifted => {
            let (label, stem, cnf, proof) = match family {
                RefuteFamily::Lop => ("lop", format!("lop-{n}"), gen_lop(n)?, lop_resolution_refutation(n)?),
                RefuteFamily::Bop => ("bop", format!("bop-{n}"), gen_bop(n)?, bop_resolution_refutation(n)?),
                _ => (
                    "bop-lifted",
                    format!("bop-lifted-{n}-{ell}"),
                    gen_bop_lifted(n, ell)?,
                    lifted_refutation(n, ell)?,
                ),
            };
            let rep = check_resolution(&proof, &cnf);
            let secs = start.elapsed().as_secs_f64();
            if !rep.valid {
                return Err(Failure::Invalid(format!("constructed proof does not check: {}", res_summary(&rep, &proof))).into());
            }
            let cnf_name = files::save_cnf(g, &stem, &cnf)?;
            let text = write_resolution(&proof, &cnf_name);
            let proof_name = format!("{stem}.res");
            files::write(g, &proof_name, &text)?;
            let mut m = Manifest::new(g, "refute");
            m.add("family", label).add("n", n).add("ell", if label == "bop-lifted" { ell } else { 1 });
            m.add("formula", &cnf_name).add("proof", &proof_name);
            m.add("formula_clauses", cnf.len()).add("proof_clauses", rep.clauses);
            m.add("resolutions", proof.resolutions()).add("max_width", rep.max_width);
            m.add("max_negative", rep.max_negative).add("valid", rep.valid).add("refutes", rep.refutes);
            m.seconds(secs).save(g, &stem)?;
            let line = format!("{proof_name}: {}", res_summary(&rep, &proof));
            emit(timed(g, secs, line, ""), &text);
        }
        RefuteFamily::PcrUpper | RefuteFamily::Tseitin => {
            let (label, stem, (proof, axioms)) = match family {
                RefuteFamily::PcrUpper => ("pcr-upper", format!("pcr-upper-{n}-{ell}"), pcr_upper_bound(n, ell, f)?),
                _ => ("tseitin", format!("tseitin-{n}"), tseitin_fourier_refutation(n, f)?),
            };
            let rep = ensure_pc(&proof, &axioms)?;
            let secs = start.elapsed().as_secs_f64();
            let ax_name = files::save_axioms(g, &stem, &axioms)?;
            let text = write_pc(&proof, &ax_name);
            let proof_name = format!("{stem}.pc");
            files::write(g, &proof_name, &text)?;
            let mut m = Manifest::new(g, "refute");
            m.add("family", label).add("n", n).add("ell", if label == "tseitin" { 1 } else { ell });
            m.add("field", f.modulus()).add("basis", proof.basis);
            m.add("axioms", &ax_name).add("proof", &proof_name).add("axiom_count", axioms.len());
            m.add("lines", rep.lines).add("size", rep.size).add("degree", rep.degree);
            if proof.basis == Basis::Fourier {
                let lines = materialize(&proof, &axioms)?;
                m.add("qdeg", quadratic_degree(&lines)?);
            }
            m.add("valid", rep.valid).add("refutes", rep.refutes);
            m.seconds(secs).save(g, &stem)?;
            let line = format!("{proof_name}: {}", pc_summary(&rep));
            emit(timed(g, secs, line, ""), &text);
        }
    }
    Ok(())
}

pub fn check(g: &Global, proof: &Path, formula: Option<&Path>, derivation: bool) -> Result<()> {
    let (valid, refutes, lines, summary) = match files::load_proof(g, proof, formula)? {
        Loaded::Pc { proof, axioms } => {
            let r = check_pc(&proof, &axioms)?;
            (r.valid, r.refutes, r.lines, pc_summary(&r))
        }
        Loaded::Res { proof, cnf } => {
            let r = check_resolution(&proof, &cnf);
            (r.valid, r.refutes, r.clauses, res_summary(&r, &proof))
        }
    };
    if valid && !refutes && !derivation {
        println!("{summary} first_bad_line={lines} reason=\"the last line is not a contradiction\"");
    } else {
        println!("{summary}");
    }
    if valid && (refutes || derivation) {
        Ok(())
    } else {
        Err(Failure::Invalid(format!("{} is not a valid refutation", proof.display())).into())
    }
}

fn pc_input(g: &Global, path: &Path) -> Result<(PcProof, AxiomSystem)> {
    match files::load_proof(g, path, None)? {
        Loaded::Pc { proof, axioms } => Ok((proof, axioms)),
        Loaded::Res { .. } => Err(Failure::Usage("expected a PC proof, found a resolution proof".into()).into()),
    }
}

/// Re-checks and writes `<stem>.<suffix>.pc` with its axioms next to it.
fn save_transformed(g: &Global, stem: &str, proof: &PcProof, axioms: &AxiomSystem, kind: &str) -> Result<Report> {
    let rep = ensure_pc(proof, axioms)?;
    let ax_name = files::save_axioms(g, stem, axioms)?;
    let proof_name = format!("{stem}.pc");
    files::write(g, &proof_name, &write_pc(proof, &ax_name))?;
    let mut m = Manifest::new(g, kind);
    m.add("seed", g.seed);
    m.add("field", proof.field.modulus()).add("basis", proof.basis);
    m.add("axioms", &ax_name).add("proof", &proof_name);
    m.add("lines", rep.lines).add("size", rep.size).add("degree", rep.degree);
    m.add("valid", rep.valid).add("refutes", rep.refutes);
    m.save(g, stem)?;
    println!("{proof_name}: {}", pc_summary(&rep));
    Ok(rep)
}

pub fn sample(g: &Global, axioms_path: &Path, steps: usize) -> Result<()> {
    let axioms = files::load_axioms(axioms_path)?;
    let name = files::stem(axioms_path);
    let base = name.strip_suffix(&format!(".{}", axioms.basis)).unwrap_or(&name);
    let proof = random_derivation(&axioms, steps, g.seed);
    save_transformed(g, &format!("{base}-sample{}", g.seed), &proof, &axioms, "sample")?;
    Ok(())
}

pub fn transform(g: &Global, kind: &Transform) -> Result<()> {
    match kind {
        Transform::Split { proof, var } => {
            let x = parse_var(var, 0).map_err(|e| Failure::Usage(format!("bad variable `{var}`: {e}")))?;
            let (p, axioms) = pc_input(g, proof)?;
            let out = split(&p, &axioms, x)?;
            save_transformed(g, &format!("{}.split", files::stem(proof)), &out, &axioms, "transform split")?;
        }
        Transform::Qdeg2deg { proof } => {
            let (p, axioms) = pc_input(g, proof)?;
            let lines = materialize(&p, &axioms)?;
            let qdeg = quadratic_degree(&lines)?;
            let out = qdeg_to_deg(&p, &axioms)?;
            let rep = save_transformed(g, &format!("{}.deg", files::stem(proof)), &out, &axioms, "transform qdeg2deg")?;
            println!(
                "qdeg={qdeg} axiom_degree={} degree_bound={} degree={}",
                axioms.max_degree(),
                2 * qdeg.max(axioms.max_degree()),
                rep.degree
            );
        }
        Transform::Restrict { proof, restriction } => {
            let (p, axioms) = pc_input(g, proof)?;
            let rho = Restriction::from_text(&files::read(restriction)?)?;
            let out = restrict_proof(&p, &axioms, &rho)?;
            save_transformed(g, &format!("{}.restricted", files::stem(proof)), &out.proof, &out.axioms, "transform restrict")?;
        }
        Transform::Cluster { proof } => {
            let (p, axioms) = pc_input(g, proof)?;
            let map = random_pairing_seeded(axioms.n, axioms.ell, g.seed)?;
            let stem = format!("{}.clustered", files::stem(proof));
            let new_axioms = cluster_axioms(&axioms, &map)?;
            let out = cluster_proof(&p, &map)?;
            save_transformed(g, &stem, &out, &new_axioms, "transform cluster")?;
            files::write(g, &format!("{stem}.pairs"), &map.to_text())?;
        }
        Transform::Res2pcr { proof } => {
            let (p, cnf) = match files::load_proof(g, proof, None)? {
                Loaded::Res { proof, cnf } => (proof, cnf),
                Loaded::Pc { .. } => return Err(Failure::Usage("expected a resolution proof".into()).into()),
            };
            let (out, axioms) = res_to_pcr(&p, &cnf, field(g)?)?;
            save_transformed(g, &format!("{}.pcr", files::stem(proof)), &out, &axioms, "transform res2pcr")?;
        }
    }
    Ok(())
}

pub fn verify_lemmas(
    g: &Global,
    n: Option<usize>,
    ell: Option<usize>,
    which: Lemma,
    max_degree: usize,
    samples: usize,
    pairs: usize,
) -> Result<()> {
    let n = param(n, g.n_flag, "n")?;
    let ell = param(ell, g.ell_flag.or(Some(1)), "ell")?;
    let f = field(g)?;
    let wants = |l: Lemma| which == Lemma::All || which == l;
    let mut reports: Vec<LemmaReport> = Vec::new();
    let needs_oracle = [Lemma::Rdrop, Lemma::Rdrop2, Lemma::Rtech, Lemma::Rop, Lemma::Properties]
        .into_iter()
        .any(wants);
    if needs_oracle {
        let oracle = ResidueOracle::new(n, ell, f)?;
        if wants(Lemma::Rop) {
            reports.push(verify_rop_axioms(&oracle)?);
            reports.push(verify_rop_condition2(&oracle, samples, g.seed)?);
        }
        if wants(Lemma::Rdrop) {
            reports.push(verify_rdrop(&oracle, max_degree)?);
        }
        if wants(Lemma::Rdrop2) {
            reports.push(verify_rdrop2(&oracle, max_degree)?);
        }
        if wants(Lemma::Rtech) {
            reports.push(verify_rtech(&oracle, max_degree)?);
        }
        if wants(Lemma::Properties) {
            reports.extend(verify_property_suite(&oracle, pairs, 2, g.seed)?);
        }
    }
    let timing = !g.no_timing;
    for r in &reports {
        if timing {
            println!("{r}");
        } else {
            println!("{}", r.csv_row(false));
        }
    }
    if wants(Lemma::Demo) {
        if ell < 2 && which == Lemma::All {
            println!("demo: skipped, the heavy-term pipeline needs ell >= 2");
        } else {
            for (k, round) in demo_pipeline(n, ell, &DemoConfig::default(), g.seed)?.iter().enumerate() {
                let blocked: Vec<String> = round.blocked.iter().map(ToString::to_string).collect();
                println!(
                    "demo round {}: vertex {} |H| {} -> {} lines {} -> {} blocked [{}]",
                    k + 1,
                    round.vertex,
                    round.heavy_before,
                    round.heavy_after,
                    round.lines_before,
                    round.lines_after,
                    blocked.join(" ")
                );
            }
        }
    }
    if !reports.is_empty() {
        let mut csv = String::from(LemmaReport::csv_header(timing));
        csv.push('\n');
        for r in &reports {
            csv.push_str(&r.csv_row(timing));
            csv.push('\n');
        }
        files::write(g, &format!("lemmas-{n}-{ell}.csv"), &csv)?;
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.lemma.as_str()).collect();
    let counterexamples: usize = reports.iter().map(|r| r.failures).sum();
    println!("total: {} checks, {counterexamples} counterexamples", reports.iter().map(|r| r.cases).sum::<usize>());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invalid(format!("counterexamples found in {}", failed.join(", "))).into())
    }
}
