//! Line-oriented text form of polynomials.
//!
//! ```text
//! field=2147483647 basis=fourier
//! 1 * x(1,2,1) y(2,1); -1
//! 0
//! ```
//!
//! Each monomial is `<coef> * <var> <var> ...`, monomials are separated by
//! `;`, a bare coefficient is a constant and `0` is the zero polynomial.

use std::fmt::Write as _;

use super::{Basis, Fe, Field, Polynomial, Term, VarId};
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn format_header(field: Field, basis: Basis) -> String {
    format!("field={} basis={}", field.modulus(), basis)
}

/// Parses `field=<p> basis=<b>`; keys may come in either order.
pub fn parse_header(s: &str, line: usize) -> Result<(Field, Basis)> {
    let mut field = None;
    let mut basis = None;
    for tok in s.split_whitespace() {
        match tok.split_once('=') {
            Some(("field", v)) => {
                let p = v.parse().map_err(|_| perr(line, format!("bad modulus `{v}`")))?;
                field = Some(Field::new(p)?);
            }
            Some(("basis", v)) => {
                basis = Some(v.parse().map_err(|_| perr(line, format!("bad basis `{v}`")))?);
            }
            _ => return Err(perr(line, format!("unexpected header token `{tok}`"))),
        }
    }
    Ok((
        field.ok_or_else(|| perr(line, "header lacks field="))?,
        basis.ok_or_else(|| perr(line, "header lacks basis="))?,
    ))
}

/// Formats one polynomial, terms in descending grlex order.
pub fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let f = p.field();
    let mut out = String::new();
    for (k, (t, c)) in p.terms().rev().enumerate() {
        if k > 0 {
            out.push_str("; ");
        }
        let _ = write!(out, "{}", f.signed(c));
        if !t.is_one() {
            let _ = write!(out, " * {t}");
        }
    }
    out
}

fn parse_index_list(body: &str, line: usize, arity: usize) -> Result<Vec<usize>> {
    let idx: Vec<usize> = body
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| perr(line, format!("bad index list `{body}`")))?;
    if idx.len() != arity || idx.iter().any(|&i| i == 0 || i > u16::MAX as usize) {
        return Err(perr(line, format!("expected {arity} positive indices in `{body}`")));
    }
    Ok(idx)
}

/// Parses a variable token such as `x(1,2,1)`, `~y(3,2)` or `p7`.
pub fn parse_var(tok: &str, line: usize) -> Result<VarId> {
    let (neg, body) = match tok.strip_prefix('~') {
        Some(rest) => (true, rest),
        None => (false, tok),
    };
    let v = if let Some(open) = body.find('(') {
        let inner = body[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| perr(line, format!("unclosed variable `{tok}`")))?;
        match &body[..open] {
            "x" | "z" => {
                let ix = parse_index_list(inner, line, 3)?;
                if ix[0] == ix[1] {
                    return Err(perr(line, format!("`{tok}` needs two distinct vertices")));
                }
                if &body[..open] == "x" {
                    VarId::edge(ix[0], ix[1], ix[2])
                } else {
                    VarId::cluster(ix[0], ix[1], ix[2])
                }
            }
            "y" => {
                let ix = parse_index_list(inner, line, 2)?;
                VarId::pointer(ix[0], ix[1])
            }
            other => return Err(perr(line, format!("unknown variable family `{other}`"))),
        }
    } else {
        let ok = body
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && body.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(perr(line, format!("bad variable `{tok}`")));
        }
        VarId::plain(body)
    };
    Ok(if neg { v.twin() } else { v })
}

/// Parses one polynomial line. Repeated variables inside a monomial are
/// reduced per basis.
pub fn parse_polynomial(s: &str, field: Field, basis: Basis, line: usize) -> Result<Polynomial> {
    let mut p = Polynomial::zero(field, basis);
    for mono in s.split(';') {
        let mono = mono.trim();
        if mono.is_empty() {
            return Err(perr(line, "empty monomial"));
        }
        let (coef, vars) = match mono.split_once('*') {
            Some((c, v)) => (c.trim(), v.trim()),
            None => (mono, ""),
        };
        let c: Fe = field
            .parse(coef)
            .ok_or_else(|| perr(line, format!("bad coefficient `{coef}`")))?;
        let mut t = Term::one();
        for tok in vars.split_whitespace() {
            t = t.mul_var(parse_var(tok, line)?, basis);
        }
        if vars.is_empty() && mono.contains('*') {
            return Err(perr(line, "`*` without variables"));
        }
        p.add_term(t, c);
    }
    Ok(p)
}
