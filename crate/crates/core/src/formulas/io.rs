//! DIMACS with a name sidecar, and the polynomial axiom file.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{AxiomSystem, Clause, Cnf, Group, Literal};
use crate::algebra::text::{format_header, format_polynomial, parse_header, parse_polynomial, parse_var};
use crate::algebra::VarId;
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// DIMACS text and its `var <k> = <name>` sidecar. Variables are numbered
/// in universe order; groups travel as `c group ...` comments.
pub fn write_dimacs(cnf: &Cnf) -> (String, String) {
    let mut universe = cnf.universe.clone();
    universe.extend(cnf.clauses.iter().flat_map(|c| c.vars().collect::<Vec<_>>()));
    let index: BTreeMap<VarId, usize> = universe.iter().enumerate().map(|(k, &v)| (v, k + 1)).collect();
    let mut text = String::new();
    let _ = writeln!(text, "c pclab n={} ell={}", cnf.n, cnf.ell);
    let _ = writeln!(text, "p cnf {} {}", index.len(), cnf.len());
    let mut current = None;
    for (c, g) in cnf.iter() {
        if current != Some(g) {
            let _ = writeln!(text, "c group {g}");
            current = Some(g);
        }
        for l in c.literals() {
            let k = index[&l.var()] as i64;
            let _ = write!(text, "{} ", if l.is_positive() { k } else { -k });
        }
        text.push_str("0\n");
    }
    let mut map = String::new();
    for (v, k) in &index {
        let _ = writeln!(map, "var {k} = {v}");
    }
    (text, map)
}

fn parse_params(rest: &str, n: &mut usize, ell: &mut usize) {
    for tok in rest.split_whitespace() {
        match tok.split_once('=') {
            Some(("n", v)) => *n = v.parse().unwrap_or(*n),
            Some(("ell", v)) => *ell = v.parse().unwrap_or(*ell),
            _ => {}
        }
    }
}

/// Reads back the output of [`write_dimacs`]. Without a map, variable `k`
/// becomes the plain variable `v<k>`.
pub fn read_dimacs(text: &str, map: Option<&str>) -> Result<Cnf> {
    let mut names: BTreeMap<i64, VarId> = BTreeMap::new();
    if let Some(map) = map {
        for (ln, line) in map.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let rest = line
                .strip_prefix("var ")
                .ok_or_else(|| perr(ln + 1, "expected `var <k> = <name>`"))?;
            let (k, name) = rest
                .split_once('=')
                .ok_or_else(|| perr(ln + 1, "expected `=`"))?;
            let k: i64 = k.trim().parse().map_err(|_| perr(ln + 1, "bad index"))?;
            names.insert(k, parse_var(name.trim(), ln + 1)?);
        }
    }
    let (mut n, mut ell) = (0, 1);
    let mut declared = None;
    let mut group = Group::Other;
    let mut pending: Vec<Literal> = Vec::new();
    let mut cnf = Cnf::new(0, 1);
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(c) = line.strip_prefix('c') {
            let c = c.trim();
            if let Some(rest) = c.strip_prefix("pclab") {
                parse_params(rest, &mut n, &mut ell);
            } else if let Some(g) = c.strip_prefix("group ") {
                group = g.trim().parse().map_err(|e: String| perr(ln + 1, e))?;
            }
            continue;
        }
        if let Some(p) = line.strip_prefix("p cnf") {
            let nums: Vec<usize> = p.split_whitespace().filter_map(|s| s.parse().ok()).collect();
            if nums.len() != 2 {
                return Err(perr(ln + 1, "bad problem line"));
            }
            declared = Some(nums[0]);
            continue;
        }
        for tok in line.split_whitespace() {
            let k: i64 = tok.parse().map_err(|_| perr(ln + 1, format!("bad literal `{tok}`")))?;
            if k == 0 {
                cnf.push(Clause::new(pending.drain(..)).map_err(|e| perr(ln + 1, e.to_string()))?, group);
                continue;
            }
            let v = match names.get(&k.abs()) {
                Some(&v) => v,
                None if map.is_none() => VarId::plain(&format!("v{}", k.abs())),
                None => return Err(perr(ln + 1, format!("variable {} has no name", k.abs()))),
            };
            pending.push(Literal::new(v, k > 0));
        }
    }
    if !pending.is_empty() {
        return Err(perr(text.lines().count(), "unterminated clause"));
    }
    if declared.is_none() {
        return Err(perr(1, "missing `p cnf` line"));
    }
    cnf.universe.extend(names.values().copied());
    cnf.n = n;
    cnf.ell = ell;
    Ok(cnf)
}

/// Axiom file: polynomial header, a `params` line, then `group` annotations
/// each followed by the polynomials of that group.
pub fn write_axioms(sys: &AxiomSystem) -> String {
    let mut out = format_header(sys.field, sys.basis);
    let _ = write!(out, "\nparams n={} ell={}\n", sys.n, sys.ell);
    let mut current = None;
    for (p, &g) in sys.axioms.iter().zip(&sys.groups) {
        if current != Some(g) {
            let _ = writeln!(out, "group {g}");
            current = Some(g);
        }
        out.push_str(&format_polynomial(p));
        out.push('\n');
    }
    out
}

pub fn read_axioms(text: &str) -> Result<AxiomSystem> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, header) = lines.next().ok_or_else(|| perr(1, "empty axiom file"))?;
    let (field, basis) = parse_header(header, ln)?;
    let mut sys = AxiomSystem::new(field, basis, 0, 1);
    let mut group = Group::Other;
    for (ln, line) in lines {
        if let Some(rest) = line.strip_prefix("params") {
            parse_params(rest, &mut sys.n, &mut sys.ell);
        } else if let Some(g) = line.strip_prefix("group ") {
            group = g.trim().parse().map_err(|e: String| perr(ln, e))?;
        } else {
            sys.push(parse_polynomial(line, field, basis, ln)?, group)?;
        }
    }
    Ok(sys)
}
