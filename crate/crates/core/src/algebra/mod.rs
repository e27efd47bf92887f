//! Exact multilinear polynomial arithmetic over a prime field.

use std::fmt;
use std::str::FromStr;

mod field;
mod poly;
mod term;
pub mod text;
mod var;

pub use field::{is_prime, Fe, Field};
pub use poly::{Assignment, Polynomial};
pub use term::{compare_grlex, compare_grlex_by, Term};
pub use var::{Symbol, VarId, VarKind};

/// Which ring the variables live in.
///
/// Over `Boolean` variables take values in `{0,1}` (`x^2 = x`, `x + ~x = 1`);
/// over `Fourier` they take values in `{+1,-1}` (`x^2 = 1`, `x * ~x = -1`)
/// with TRUE encoded as `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Boolean,
    Fourier,
}

impl Basis {
    /// Field value of a truth value.
    pub fn encode(self, field: Field, truth: bool) -> Fe {
        match (self, truth) {
            (Basis::Boolean, true) => Fe::ONE,
            (Basis::Boolean, false) => Fe::ZERO,
            (Basis::Fourier, true) => field.neg(Fe::ONE),
            (Basis::Fourier, false) => Fe::ONE,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Boolean => "boolean",
            Basis::Fourier => "fourier",
        })
    }
}

impl FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "boolean" | "bool" | "01" => Ok(Basis::Boolean),
            "fourier" | "pm1" => Ok(Basis::Fourier),
            other => Err(format!("unknown basis `{other}` (expected boolean or fourier)")),
        }
    }
}
