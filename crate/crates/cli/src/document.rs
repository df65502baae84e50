//! Definition files: `vars`, `ideal`, `dim`, `trunc`, `name = series`
//! statements and `include "path";`, which splices another file in place.
//! Included paths are resolved against the including file's directory.

use std::path::{Path, PathBuf};
use std::sync::Arc as Shared;

use nashlift_core::algebra::{Polynomial, Position};
use nashlift_core::arcs::{parse_assignments, Arc, DEFAULT_TRUNCATION};
use nashlift_core::geometry::{parse_generators, parse_int, parse_vars, AffineChart};
use nashlift_core::text::{parse_error, quoted, statements, Statement};

use crate::error::CliError;

/// Include nesting limit; deeper chains are reported as cycles.
const MAX_INCLUDE_DEPTH: usize = 16;

#[derive(Clone, Debug)]
struct Located {
    file: PathBuf,
    statement: Statement,
}

/// A chart definition and/or an arc block, with the file each came from.
#[derive(Clone, Debug)]
pub struct Document {
    pub path: PathBuf,
    pub chart: Option<Shared<AffineChart>>,
    pub arc: Option<ArcBlock>,
}

#[derive(Clone, Debug)]
pub struct ArcBlock {
    pub file: PathBuf,
    pub truncation: Option<usize>,
    assignments: Vec<(String, Position)>,
}

impl ArcBlock {
    pub fn components(&self, chart: &AffineChart) -> Result<Vec<Polynomial>, CliError> {
        parse_assignments(chart, &self.assignments).map_err(|e| CliError::in_file(&self.file, e))
    }

    /// The arc modulo `t^T`, `T` from the override, the file, or the default.
    pub fn truncated(&self, chart: &Shared<AffineChart>, trunc: Option<usize>) -> Result<Arc, CliError> {
        let comps = self.components(chart)?;
        Arc::truncated(chart, &comps, self.effective_truncation(trunc)).map_err(|e| CliError::in_file(&self.file, e))
    }

    /// The arc with exact polynomial components.
    pub fn polynomial(&self, chart: &Shared<AffineChart>, trunc: Option<usize>) -> Result<Arc, CliError> {
        let comps = self.components(chart)?;
        Arc::polynomial(chart, &comps, self.effective_truncation(trunc)).map_err(|e| CliError::in_file(&self.file, e))
    }

    pub fn effective_truncation(&self, trunc: Option<usize>) -> usize {
        trunc.or(self.truncation).unwrap_or(DEFAULT_TRUNCATION)
    }
}

impl Document {
    pub fn load(path: &Path) -> Result<Document, CliError> {
        let mut located = Vec::new();
        let mut stack = Vec::new();
        collect(path, &mut stack, &mut located)?;
        assemble(path, located)
    }

    pub fn parse_str(path: &Path, text: &str) -> Result<Document, CliError> {
        let mut located = Vec::new();
        let mut stack = vec![path.to_path_buf()];
        splice(path, text, &mut stack, &mut located)?;
        assemble(path, located)
    }

    pub fn require_chart(&self) -> Result<&Shared<AffineChart>, CliError> {
        self.chart
            .as_ref()
            .ok_or_else(|| CliError::Input(format!("{}: no 'vars' statement, so no chart is defined", self.path.display())))
    }

    pub fn require_arc(&self) -> Result<&ArcBlock, CliError> {
        self.arc
            .as_ref()
            .ok_or_else(|| CliError::Input(format!("{}: no arc assignments found", self.path.display())))
    }
}

fn collect(path: &Path, stack: &mut Vec<PathBuf>, out: &mut Vec<Located>) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let key = path.canonicalize().unwrap_or_else(|_| path.to_path_buf());
    if stack.contains(&key) || stack.len() >= MAX_INCLUDE_DEPTH {
        return Err(CliError::Input(format!("{}: include cycle", path.display())));
    }
    stack.push(key);
    splice(path, &text, stack, out)?;
    stack.pop();
    Ok(())
}

fn splice(path: &Path, text: &str, stack: &mut Vec<PathBuf>, out: &mut Vec<Located>) -> Result<(), CliError> {
    for st in statements(text).map_err(|e| CliError::in_file(path, e))? {
        let (kw, rest, at) = st.keyword();
        if kw == "include" {
            let target = quoted(&rest, at).map_err(|e| CliError::in_file(path, e))?;
            let resolved = path.parent().unwrap_or_else(|| Path::new("")).join(target);
            collect(&resolved, stack, out)?;
        } else {
            out.push(Located {
                file: path.to_path_buf(),
                statement: st,
            });
        }
    }
    Ok(())
}

fn assemble(path: &Path, located: Vec<Located>) -> Result<Document, CliError> {
    let mut ring = None;
    let mut gens: Option<Vec<Polynomial>> = None;
    let mut dim = None;
    let mut chart_file: Option<PathBuf> = None;
    let mut trunc = None;
    let mut assignments = Vec::new();
    let mut arc_file: Option<PathBuf> = None;
    for Located { file, statement: st } in located {
        let (kw, rest, at) = st.keyword();
        let fail = |e| CliError::in_file(&file, e);
        let is_assignment = !matches!(kw.as_str(), "vars" | "ideal" | "dim" | "trunc") && st.text.contains('=');
        let owner = if is_assignment || kw == "trunc" {
            &mut arc_file
        } else {
            &mut chart_file
        };
        match owner {
            Some(f) if *f != file => {
                return Err(fail(parse_error(
                    st.head(),
                    format!("definition already started in {}; one definition per file", f.display()),
                )))
            }
            _ => *owner = Some(file.clone()),
        }
        match kw.as_str() {
            "vars" => {
                if ring.is_some() {
                    return Err(fail(parse_error(st.head(), "duplicate 'vars' statement")));
                }
                ring = Some(parse_vars(&rest, at).map_err(fail)?);
            }
            "ideal" => {
                let r = ring.as_ref().ok_or_else(|| fail(parse_error(st.head(), "ideal before vars")))?;
                if gens.is_some() {
                    return Err(fail(parse_error(st.head(), "duplicate 'ideal' statement")));
                }
                gens = Some(parse_generators(&rest, at, r).map_err(fail)?);
            }
            "dim" => dim = Some(parse_int(&rest, at).map_err(fail)?),
            "trunc" => {
                let t = parse_int(&rest, at).map_err(fail)?;
                if t <= 0 {
                    return Err(fail(parse_error(at, "truncation must be positive")));
                }
                trunc = Some(t as usize);
            }
            _ if is_assignment => assignments.push((st.text.clone(), st.start)),
            _ => return Err(fail(parse_error(st.head(), format!("unknown statement '{kw}'")))),
        }
    }
    let chart = match ring {
        Some(r) => {
            let file = chart_file.expect("vars seen");
            let c = AffineChart::new(&r, gens.unwrap_or_default(), dim).map_err(|e| CliError::in_file(&file, e))?;
            Some(Shared::new(c))
        }
        None if gens.is_some() || dim.is_some() => {
            return Err(CliError::Input(format!("{}: 'ideal' or 'dim' without 'vars'", path.display())))
        }
        None => None,
    };
    let arc = if assignments.is_empty() && trunc.is_none() {
        None
    } else {
        Some(ArcBlock {
            file: arc_file.expect("arc statement seen"),
            truncation: trunc,
            assignments,
        })
    };
    Ok(Document {
        path: path.to_path_buf(),
        chart,
        arc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_and_arc_in_one_file() {
        let doc = Document::parse_str(
            Path::new("mem.var"),
            "vars x y; # plane curve\nideal y^2 - x^3;\ndim 1;\ntrunc 20;\nx = t^2;\ny = t^3;\n",
        )
        .unwrap();
        let chart = doc.require_chart().unwrap().clone();
        let arc = doc.require_arc().unwrap().truncated(&chart, None).unwrap();
        assert_eq!(arc.truncation(), 20);
        assert_eq!(chart.dim(), 1);
    }

    #[test]
    fn errors_carry_file_line_and_column() {
        let err = Document::parse_str(Path::new("bad.var"), "vars x y;\nideal y^2 - x^^3;\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("bad.var: parse error at line 2"), "{msg}");
        let err = Document::parse_str(Path::new("bad.var"), "vars x y;\nfoo 3;\n").unwrap_err();
        assert!(err.to_string().contains("line 2, column 1"), "{err}");
    }
}
