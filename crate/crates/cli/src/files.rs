//! Artifact paths, loading and manifests.
//!
//! Proof headers name their formula file relative to the proof's own
//! directory, so an output directory can be moved as a whole. A proof read
//! from stdin resolves its formula against `--out`.

use std::fmt::Display;
use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use pclab::formulas::io::{read_axioms, read_dimacs, write_axioms, write_dimacs};
use pclab::formulas::{AxiomSystem, Cnf};
use pclab::proofs::io::{read_pc, read_resolution};
use pclab::proofs::{PcProof, ResolutionProof};

use crate::{Failure, Global};

pub fn out_path(g: &Global, name: &str) -> Result<PathBuf> {
    fs::create_dir_all(&g.out).with_context(|| format!("creating {}", g.out.display()))?;
    Ok(g.out.join(name))
}

pub fn write(g: &Global, name: &str, text: &str) -> Result<PathBuf> {
    let path = out_path(g, name)?;
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn is_stdin(path: &Path) -> bool {
    path.as_os_str() == "-"
}

/// Reads a file, or stdin for `-`. A missing input is a usage error.
pub fn read(path: &Path) -> Result<String> {
    if is_stdin(path) {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())).into())
}

/// Directory against which a proof's formula reference is resolved.
fn base_dir(proof: &Path, g: &Global) -> PathBuf {
    if is_stdin(proof) {
        return g.out.clone();
    }
    match proof.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

/// File name of `path` without its last extension; `stdin` for `-`.
pub fn stem(path: &Path) -> String {
    if is_stdin(path) {
        return "stdin".into();
    }
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "proof".into())
}

/// Writes `<stem>.cnf` and its `<stem>.cnf.map` sidecar; returns the CNF file name.
pub fn save_cnf(g: &Global, stem: &str, cnf: &Cnf) -> Result<String> {
    let (text, map) = write_dimacs(cnf);
    let name = format!("{stem}.cnf");
    write(g, &name, &text)?;
    write(g, &format!("{name}.map"), &map)?;
    Ok(name)
}

/// Writes `<stem>.<basis>.ax`; returns the file name.
pub fn save_axioms(g: &Global, stem: &str, sys: &AxiomSystem) -> Result<String> {
    let name = format!("{stem}.{}.ax", sys.basis);
    write(g, &name, &write_axioms(sys))?;
    Ok(name)
}

pub fn load_cnf(path: &Path) -> Result<Cnf> {
    let text = read(path)?;
    let mut map_path = path.as_os_str().to_owned();
    map_path.push(".map");
    let map = fs::read_to_string(PathBuf::from(map_path)).ok();
    read_dimacs(&text, map.as_deref()).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_axioms(path: &Path) -> Result<AxiomSystem> {
    let text = read(path)?;
    read_axioms(&text).with_context(|| format!("parsing {}", path.display()))
}

pub enum Loaded {
    Pc { proof: PcProof, axioms: AxiomSystem },
    Res { proof: ResolutionProof, cnf: Cnf },
}

/// Loads a PC or resolution proof (told apart by the header) with the
/// formula it refers to, unless `formula` overrides that reference.
pub fn load_proof(g: &Global, path: &Path, formula: Option<&Path>) -> Result<Loaded> {
    let text = read(path)?;
    let base = base_dir(path, g);
    let locate = |reference: &str| -> Result<PathBuf> {
        match formula {
            Some(f) => Ok(f.to_path_buf()),
            None if reference.is_empty() => {
                Err(Failure::Usage("the proof header names no formula file; pass --axioms".into()).into())
            }
            None => Ok(base.join(reference)),
        }
    };
    if text.trim_start().starts_with("resproof") {
        let (proof, reference) = read_resolution(&text)?;
        let cnf = load_cnf(&locate(&reference)?)?;
        Ok(Loaded::Res { proof, cnf })
    } else {
        let (proof, reference) = read_pc(&text)?;
        let axioms = load_axioms(&locate(&reference)?)?;
        Ok(Loaded::Pc { proof, axioms })
    }
}

/// `key = value` lines describing how an artifact was produced and what
/// was measured. Wall-clock entries are dropped under `--no-timing`.
pub struct Manifest {
    lines: Vec<String>,
    timing: bool,
}

impl Manifest {
    pub fn new(g: &Global, command: &str) -> Manifest {
        let mut m = Manifest {
            lines: Vec::new(),
            timing: !g.no_timing,
        };
        m.add("tool", concat!("pclab ", env!("CARGO_PKG_VERSION")));
        m.add("command", command);
        m
    }

    pub fn add(&mut self, key: &str, value: impl Display) -> &mut Manifest {
        self.lines.push(format!("{key} = {value}"));
        self
    }

    pub fn seconds(&mut self, secs: f64) -> &mut Manifest {
        if self.timing {
            self.lines.push(format!("seconds = {secs:.6}"));
        }
        self
    }

    pub fn save(&self, g: &Global, stem: &str) -> Result<PathBuf> {
        let mut text = self.lines.join("\n");
        text.push('\n');
        write(g, &format!("{stem}.manifest"), &text)
    }
}
