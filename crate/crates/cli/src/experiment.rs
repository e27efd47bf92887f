//! Scaling experiments over an `n` × `ell` grid.
//!
//! Rows are `family,n,ell,clauses,proof_size_monomials,degree,qdeg,seconds`.
//! `clauses` is the number of proof lines. A resolution clause is one
//! monomial in the twin encoding, so for resolution families the size equals
//! the clause count and the degree is the largest width. `qdeg` is only
//! defined over the Fourier basis and is empty otherwise.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use anyhow::Result;
use pclab::constructions::{lifted_refutation, lop_resolution_refutation, pcr_upper_bound, tseitin_fourier_refutation};
use pclab::formulas::{gen_bop_lifted, gen_lop, Cnf};
use pclab::proofs::{check_pc, check_resolution, materialize, quadratic_degree, ResolutionProof};
use pclab::stats::{constant_fit, loglog_fit};
use rayon::prelude::*;

use crate::commands::{field, within_limits};
use crate::files;
use crate::{ExperimentKind, Failure, Global};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub n: Vec<usize>,
    pub ell: Vec<usize>,
}

/// Parses one comma list of values and inclusive ranges (`a..b` or `a..=b`).
fn parse_values(text: &str) -> Result<Vec<usize>> {
    let bad = || Failure::Usage(format!("bad grid values `{text}`"));
    let mut out = Vec::new();
    for part in text.split(',').filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| bad())?;
                let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
                out.extend(a..=b);
            }
            None => out.push(part.trim().parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

/// Reads `n=...` and `ell=...` tokens; `--n`/`--ell` fill in missing axes,
/// `ell` defaults to 1. An axis without values is a usage error.
pub fn parse_grid(tokens: &[String], g: &Global) -> Result<Grid> {
    let mut n = None;
    let mut ell = None;
    for tok in tokens {
        let (key, values) = tok
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("grid entries look like `n=4..12`, got `{tok}`")))?;
        let values = parse_values(values)?;
        match key.trim() {
            "n" => n = Some(values),
            "ell" | "l" => ell = Some(values),
            other => return Err(Failure::Usage(format!("unknown grid axis `{other}`")).into()),
        }
    }
    let n = n.or(g.n_flag.map(|v| vec![v])).unwrap_or_default();
    let ell = ell.or(g.ell_flag.map(|v| vec![v])).unwrap_or_else(|| vec![1]);
    if n.is_empty() || ell.is_empty() {
        return Err(Failure::Usage("empty experiment grid".into()).into());
    }
    if n.iter().chain(&ell).any(|&v| v == 0) {
        return Err(Failure::Usage("grid parameters must be positive".into()).into());
    }
    Ok(Grid { n, ell })
}

#[derive(Clone, Debug)]
pub struct Row {
    pub family: &'static str,
    pub n: usize,
    pub ell: usize,
    pub clauses: usize,
    pub size: usize,
    pub degree: usize,
    pub qdeg: Option<usize>,
    pub seconds: f64,
    pub valid: bool,
}

fn resolution_row(family: &'static str, n: usize, ell: usize, cnf: &Cnf, proof: &ResolutionProof, start: Instant) -> Row {
    let r = check_resolution(proof, cnf);
    Row {
        family,
        n,
        ell,
        clauses: r.clauses,
        size: r.clauses,
        degree: r.max_width,
        qdeg: None,
        seconds: start.elapsed().as_secs_f64(),
        valid: r.refutes,
    }
}

fn measure(kind: ExperimentKind, n: usize, ell: usize, g: &Global) -> Result<Row> {
    let f = field(g)?;
    let start = Instant::now();
    Ok(match kind {
        ExperimentKind::Lop => resolution_row("lop", n, 1, &gen_lop(n)?, &lop_resolution_refutation(n)?, start),
        ExperimentKind::Lifted => {
            resolution_row("bop-lifted", n, ell, &gen_bop_lifted(n, ell)?, &lifted_refutation(n, ell)?, start)
        }
        ExperimentKind::PcrUpper | ExperimentKind::Tseitin => {
            let ((proof, axioms), family, ell) = match kind {
                ExperimentKind::PcrUpper => (pcr_upper_bound(n, ell, f)?, "pcr-upper", ell),
                _ => (tseitin_fourier_refutation(n, f)?, "tseitin", 1),
            };
            let r = check_pc(&proof, &axioms)?;
            let qdeg = match kind {
                ExperimentKind::Tseitin => Some(quadratic_degree(&materialize(&proof, &axioms)?)?),
                _ => None,
            };
            Row {
                family,
                n,
                ell,
                clauses: r.lines,
                size: r.size,
                degree: r.degree,
                qdeg,
                seconds: start.elapsed().as_secs_f64(),
                valid: r.refutes,
            }
        }
    })
}

/// Measures every grid cell in parallel; rows come back in grid order.
pub fn measure_grid(kind: ExperimentKind, grid: &Grid, g: &Global) -> Result<Vec<Row>> {
    let ells: Vec<usize> = match kind {
        ExperimentKind::Lop | ExperimentKind::Tseitin => vec![1],
        _ => grid.ell.clone(),
    };
    let cells: Vec<(usize, usize)> = grid.n.iter().flat_map(|&n| ells.iter().map(move |&l| (n, l))).collect();
    for &(n, ell) in &cells {
        within_limits(n, ell)?;
    }
    cells.par_iter().map(|&(n, ell)| measure(kind, n, ell, g)).collect()
}

pub fn csv(rows: &[Row], timing: bool) -> String {
    let mut out = String::from("family,n,ell,clauses,proof_size_monomials,degree,qdeg");
    out.push_str(if timing { ",seconds\n" } else { "\n" });
    for r in rows {
        let qdeg = r.qdeg.map(|q| q.to_string()).unwrap_or_default();
        let _ = write!(out, "{},{},{},{},{},{},{}", r.family, r.n, r.ell, r.clauses, r.size, r.degree, qdeg);
        if timing {
            let _ = write!(out, ",{:.6}", r.seconds);
        }
        out.push('\n');
    }
    out
}

/// Log-log slope of size and clause count against `n`, per `ell`, and for
/// the lifted family the constant fit of clauses against `n^3 ell^2`.
pub fn summary(kind: ExperimentKind, rows: &[Row]) -> String {
    let mut by_ell: BTreeMap<usize, Vec<&Row>> = BTreeMap::new();
    for r in rows {
        by_ell.entry(r.ell).or_default().push(r);
    }
    let mut out = String::new();
    for (ell, rs) in &by_ell {
        let xs: Vec<f64> = rs.iter().map(|r| r.n as f64).collect();
        let size: Vec<f64> = rs.iter().map(|r| r.size as f64).collect();
        let clauses: Vec<f64> = rs.iter().map(|r| r.clauses as f64).collect();
        match (loglog_fit(&xs, &size), loglog_fit(&xs, &clauses)) {
            (Ok(s), Ok(c)) => {
                let _ = writeln!(
                    out,
                    "ell={ell} points={} size_slope={:.9} size_r2={:.9} clauses_slope={:.9} clauses_r2={:.9}",
                    rs.len(),
                    s.slope,
                    s.r_squared,
                    c.slope,
                    c.r_squared
                );
            }
            _ => {
                let _ = writeln!(out, "ell={ell} points={} slope=undefined", rs.len());
            }
        }
    }
    if kind == ExperimentKind::Lifted {
        let model: Vec<f64> = rows.iter().map(|r| (r.n as f64).powi(3) * (r.ell as f64).powi(2)).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.clauses as f64).collect();
        if let Ok(c) = constant_fit(&model, &ys) {
            let envelope = ys.iter().zip(&model).map(|(y, m)| y / m).fold(0.0, f64::max);
            let _ = writeln!(
                out,
                "clauses/(n^3 ell^2): constant={:.9} relative_rms={:.9} max_relative={:.9} envelope={:.9}",
                c.constant, c.relative_rms, c.max_relative, envelope
            );
        }
    }
    out
}

fn kind_name(kind: ExperimentKind) -> &'static str {
    match kind {
        ExperimentKind::PcrUpper => "pcr-upper",
        ExperimentKind::Lop => "lop",
        ExperimentKind::Lifted => "lifted",
        ExperimentKind::Tseitin => "tseitin",
    }
}

pub fn run(g: &Global, kind: ExperimentKind, tokens: &[String]) -> Result<()> {
    let grid = parse_grid(tokens, g)?;
    let rows = measure_grid(kind, &grid, g)?;
    let name = kind_name(kind);
    let table = csv(&rows, !g.no_timing);
    let sum = summary(kind, &rows);
    files::write(g, &format!("experiment-{name}.csv"), &table)?;
    files::write(g, &format!("experiment-{name}.summary"), &sum)?;
    print!("{table}{sum}");
    let bad: Vec<String> = rows.iter().filter(|r| !r.valid).map(|r| format!("(n={}, ell={})", r.n, r.ell)).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invalid(format!("refutations do not check at {}", bad.join(" "))).into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_lists_and_ranges() {
        assert_eq!(parse_values("4..7").unwrap(), vec![4, 5, 6, 7]);
        assert_eq!(parse_values("1,3..=4").unwrap(), vec![1, 3, 4]);
        assert!(parse_values("5..3").unwrap().is_empty());
        assert!(parse_values("x").is_err());
    }
}
