//! Line-by-line verification of derivation scripts: small programs that
//! introduce abbreviations and curves, then assert word identities in the
//! mapping class group.
//!
//! Script grammar (one statement per line, # comments):
//!   let NAME = <word-expr>
//!   curve NAME = chain <expr> <class> | image <expr> of <base> <class> | alias <base>
//!   <word-expr> = 1
//!   <word-expr> = prev
//! "= 1" asserts the expression is trivial in Mod_2; "= prev" asserts it
//! equals the left-hand side of the previous assertion line.

use crate::curves::CurveLibrary;
use crate::dsl::{self, ParseError};
use crate::homology::SpMatrix;
use crate::mcg::{evaluate_word, Convention, MappingClass};
use crate::word::{Alphabet, Word};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Let { name: String, expr: String },
    Curve { def: String },
    Assert { expr: String, rhs: Rhs },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rhs {
    One,
    Prev,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptLine {
    pub lineno: usize,
    pub text: String,
    pub statement: Statement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationScript {
    pub lines: Vec<ScriptLine>,
}

pub fn parse_script(text: &str) -> Result<DerivationScript, ParseError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = || ParseError::AtLine {
            line: lineno,
            source: Box::new(ParseError::MalformedLine(line.to_string())),
        };
        let statement = if let Some(rest) = line.strip_prefix("let ") {
            let (name, expr) = rest.split_once('=').ok_or_else(malformed)?;
            Statement::Let {
                name: name.trim().to_string(),
                expr: expr.trim().to_string(),
            }
        } else if let Some(rest) = line.strip_prefix("curve ") {
            Statement::Curve { def: rest.trim().to_string() }
        } else {
            let (expr, rhs) = line.rsplit_once('=').ok_or_else(malformed)?;
            let rhs = match rhs.trim() {
                "1" => Rhs::One,
                "prev" => Rhs::Prev,
                _ => return Err(malformed()),
            };
            Statement::Assert {
                expr: expr.trim().to_string(),
                rhs,
            }
        };
        lines.push(ScriptLine {
            lineno,
            text: line.to_string(),
            statement,
        });
    }
    Ok(DerivationScript { lines })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineStatus {
    Defined,
    Verified,
    /// The asserted identity fails; `defect` is lhs composed with the
    /// inverse of the expected value.
    Failed {
        sp: SpMatrix,
        inner_trivial: bool,
        perm_trivial: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineReport {
    pub lineno: usize,
    pub text: String,
    pub status: LineStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationReport {
    pub lines: Vec<LineReport>,
}

impl DerivationReport {
    pub fn all_passed(&self) -> bool {
        self.lines
            .iter()
            .all(|l| !matches!(l.status, LineStatus::Failed { .. }))
    }

    pub fn failures(&self) -> impl Iterator<Item = &LineReport> {
        self.lines
            .iter()
            .filter(|l| matches!(l.status, LineStatus::Failed { .. }))
    }
}

/// Runs the script against a copy of the given library. Parse and
/// name-resolution problems are hard errors; failed assertions are
/// reported per line.
pub fn verify_script(
    script: &DerivationScript,
    library: &CurveLibrary,
    conv: Convention,
) -> Result<DerivationReport, ParseError> {
    let mut lib = library.clone();
    let mut lets: HashMap<String, Word> = HashMap::new();
    let mut prev: Option<MappingClass> = None;
    let mut out = Vec::new();
    for line in &script.lines {
        let at = |e: ParseError| ParseError::AtLine {
            line: line.lineno,
            source: Box::new(e),
        };
        let status = match &line.statement {
            Statement::Let { name, expr } => {
                if lets.contains_key(name) || lib.lookup(name).is_some() {
                    return Err(at(ParseError::MalformedLine(format!(
                        "name {name} already defined"
                    ))));
                }
                let word = {
                    let resolve =
                        |n: &str| lets.get(n).cloned().or_else(|| lib.twist_word(n).ok().cloned());
                    dsl::parse_word(expr, &resolve).map_err(at)?
                };
                lets.insert(name.clone(), word);
                LineStatus::Defined
            }
            Statement::Curve { def } => {
                dsl::apply_catalog_line(def, &mut lib).map_err(at)?;
                LineStatus::Defined
            }
            Statement::Assert { expr, rhs } => {
                let word = {
                    let resolve =
                        |n: &str| lets.get(n).cloned().or_else(|| lib.twist_word(n).ok().cloned());
                    dsl::parse_word(expr, &resolve).map_err(at)?
                };
                let value = evaluate_word(&word, conv);
                let expected = match rhs {
                    Rhs::One => MappingClass::identity(),
                    Rhs::Prev => prev.clone().ok_or_else(|| {
                        at(ParseError::MalformedLine(
                            "'= prev' with no previous assertion".to_string(),
                        ))
                    })?,
                };
                let defect = value.compose(&expected.inverse());
                let status = if defect.is_identity_mod2() {
                    LineStatus::Verified
                } else {
                    LineStatus::Failed {
                        sp: defect.sp.clone(),
                        inner_trivial: defect.auto.is_inner_trivial(),
                        perm_trivial: defect.auto.puncture_perm().is_identity(),
                    }
                };
                prev = Some(value);
                status
            }
        };
        out.push(LineReport {
            lineno: line.lineno,
            text: line.text.clone(),
            status,
        });
    }
    Ok(DerivationReport { lines: out })
}

/// Does the mapping class of `w` commute with the chain twist t_i?
pub fn check_commutes(w: &Word, i: u8, conv: Convention) -> bool {
    let t = Word::generator(Alphabet::Twist, i).expect("chain index");
    let commutator = w
        .concat(&t)
        .and_then(|v| v.concat(&w.invert()))
        .and_then(|v| v.concat(&t.invert()))
        .expect("twist alphabet");
    evaluate_word(&commutator, conv).is_identity_mod2()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> DerivationReport {
        let script = parse_script(text).unwrap();
        verify_script(&script, &CurveLibrary::builtin(), Convention::Standard).unwrap()
    }

    #[test]
    fn braid_relation_line_verifies() {
        let r = run("t1 t2 t1 (t2 t1 t2)' = 1\n");
        assert!(r.all_passed());
    }

    #[test]
    fn failing_line_reports_defect() {
        let r = run("t1 t2 = 1\n");
        assert!(!r.all_passed());
        match &r.lines[0].status {
            LineStatus::Failed { sp, inner_trivial, perm_trivial } => {
                assert!(!sp.is_identity());
                assert!(!inner_trivial);
                assert!(!perm_trivial);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn let_and_prev() {
        let r = run("let A = t1 t2\n@A (@A)' = 1\nt1 t2 t1 (t2 t1 t2)' = prev\n");
        assert!(r.all_passed());
        assert_eq!(r.lines.len(), 3);
    }

    #[test]
    fn curve_statement_extends_library() {
        let r = run("curve Gp = image t4 t4 of G nonseparating\n@Gp ((t4 t4) @G (t4 t4)')' = 1\n");
        assert!(r.all_passed());
    }

    #[test]
    fn prev_without_previous_is_error() {
        let script = parse_script("t1 t1' = prev\n").unwrap();
        assert!(verify_script(&script, &CurveLibrary::builtin(), Convention::Standard).is_err());
    }

    #[test]
    fn redefinition_is_error() {
        let script = parse_script("let D = t1\n").unwrap();
        assert!(verify_script(&script, &CurveLibrary::builtin(), Convention::Standard).is_err());
    }

    #[test]
    fn commutation_check() {
        let w = Word::from_signed(Alphabet::Twist, &[4, 3, 2, 1, 1, 2, 3, 4]).unwrap();
        assert!(check_commutes(&w, 1, Convention::Standard));
        assert!(check_commutes(&w, 2, Convention::Standard));
        assert!(check_commutes(&w, 3, Convention::Standard));
        assert!(!check_commutes(&w, 4, Convention::Standard));
    }
}
