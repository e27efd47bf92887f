//! Text formats for PC and resolution proofs. Line and axiom numbers in
//! files are 1-based.

use std::fmt::Write as _;

use super::{PcProof, ResStep, ResolutionProof, Step};
use crate::algebra::text::{parse_header, parse_var};
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Writes a PC proof that refers to the axiom file at `axioms`.
pub fn write_pc(proof: &PcProof, axioms: &str) -> String {
    let f = proof.field;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "pcproof v1 basis={} field={} axioms={axioms}",
        proof.basis,
        f.modulus()
    );
    for (k, s) in proof.steps.iter().enumerate() {
        let _ = write!(out, "L{} ", k + 1);
        let _ = match *s {
            Step::Axiom(a) => writeln!(out, "AX {}", a + 1),
            Step::Square(v) => writeln!(out, "SQ {v}"),
            Step::Twin(v) => writeln!(out, "TW {v}"),
            Step::LinComb { a, i, b, j } => {
                writeln!(out, "LIN {} L{} {} L{}", f.signed(a), i + 1, f.signed(b), j + 1)
            }
            Step::MulVar { var, i } => writeln!(out, "MUL {var} L{}", i + 1),
        };
    }
    out
}

fn line_ref(tok: &str, ln: usize) -> Result<usize> {
    tok.strip_prefix('L')
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&k| k >= 1)
        .map(|k| k - 1)
        .ok_or_else(|| perr(ln, format!("bad line reference `{tok}`")))
}

fn index(tok: &str, ln: usize) -> Result<usize> {
    tok.parse::<usize>()
        .ok()
        .filter(|&k| k >= 1)
        .map(|k| k - 1)
        .ok_or_else(|| perr(ln, format!("bad index `{tok}`")))
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn expect_label(tok: Option<&str>, want: usize, ln: usize) -> Result<()> {
    match tok {
        Some(t) if line_ref(t, ln)? == want => Ok(()),
        _ => Err(perr(ln, format!("expected label L{}", want + 1))),
    }
}

/// Parses a PC proof; returns it with the axiom path from the header.
pub fn read_pc(text: &str) -> Result<(PcProof, String)> {
    let mut lines = numbered_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| perr(1, "empty proof"))?;
    let rest = header
        .strip_prefix("pcproof v1")
        .ok_or_else(|| perr(ln, "expected `pcproof v1` header"))?;
    let mut axioms = None;
    let mut keys = Vec::new();
    for tok in rest.split_whitespace() {
        match tok.strip_prefix("axioms=") {
            Some(p) => axioms = Some(p.to_string()),
            None => keys.push(tok),
        }
    }
    let (field, basis) = parse_header(&keys.join(" "), ln)?;
    let mut proof = PcProof::new(field, basis);
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        expect_label(toks.next(), proof.len(), ln)?;
        let op = toks.next().ok_or_else(|| perr(ln, "missing rule"))?;
        let args: Vec<&str> = toks.collect();
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(perr(ln, format!("{op} takes {k} arguments")))
            }
        };
        let step = match op {
            "AX" => {
                arity(1)?;
                Step::Axiom(index(args[0], ln)?)
            }
            "SQ" => {
                arity(1)?;
                Step::Square(parse_var(args[0], ln)?)
            }
            "TW" => {
                arity(1)?;
                Step::Twin(parse_var(args[0], ln)?)
            }
            "LIN" => {
                arity(4)?;
                let coef = |s: &str| field.parse(s).ok_or_else(|| perr(ln, format!("bad coefficient `{s}`")));
                Step::LinComb {
                    a: coef(args[0])?,
                    i: line_ref(args[1], ln)?,
                    b: coef(args[2])?,
                    j: line_ref(args[3], ln)?,
                }
            }
            "MUL" => {
                arity(2)?;
                Step::MulVar {
                    var: parse_var(args[0], ln)?,
                    i: line_ref(args[1], ln)?,
                }
            }
            other => return Err(perr(ln, format!("unknown rule `{other}`"))),
        };
        proof.push(step);
    }
    Ok((proof, axioms.unwrap_or_default()))
}

pub fn write_resolution(proof: &ResolutionProof, cnf: &str) -> String {
    let mut out = format!("resproof v1 cnf={cnf}\n");
    for (k, s) in proof.steps.iter().enumerate() {
        let _ = match *s {
            ResStep::Input(c) => writeln!(out, "L{} IN {}", k + 1, c + 1),
            ResStep::Resolve { i, j, pivot } => {
                writeln!(out, "L{} RES L{} L{} {pivot}", k + 1, i + 1, j + 1)
            }
        };
    }
    out
}

/// Parses a resolution proof; returns it with the CNF path from the header.
pub fn read_resolution(text: &str) -> Result<(ResolutionProof, String)> {
    let mut lines = numbered_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| perr(1, "empty proof"))?;
    let cnf = header
        .strip_prefix("resproof v1")
        .map(str::trim)
        .ok_or_else(|| perr(ln, "expected `resproof v1` header"))?
        .strip_prefix("cnf=")
        .unwrap_or("")
        .to_string();
    let mut proof = ResolutionProof::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        expect_label(toks.first().copied(), proof.len(), ln)?;
        let step = match toks.get(1..) {
            Some(["IN", c]) => ResStep::Input(index(c, ln)?),
            Some(["RES", i, j, v]) => ResStep::Resolve {
                i: line_ref(i, ln)?,
                j: line_ref(j, ln)?,
                pivot: parse_var(v, ln)?,
            },
            _ => return Err(perr(ln, "expected `IN <i>` or `RES L<i> L<j> <var>`")),
        };
        proof.push(step);
    }
    Ok((proof, cnf))
}
