//! System files: a declared variable list plus one polynomial per line.
//!
//! ```text
//! # a comment
//! vars: x, y
//! x^2 + y^2 - 1
//! x - y
//! ```
//!
//! `#` comments run to end of line, blank lines are skipped, line endings may
//! be `\n` or `\r\n`.

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::parse::{is_valid_name, parse_poly_at};

#[derive(Debug, Clone)]
pub struct SystemFile {
    pub variables: Vec<String>,
    pub polynomials: Vec<MultiPoly>,
    pub source: Option<String>,
}

impl SystemFile {
    /// Parse from text; `source` is echoed in errors and reports.
    pub fn parse(text: &str, source: Option<String>) -> Result<SystemFile> {
        let mut variables: Option<Vec<String>> = None;
        let mut polynomials = Vec::new();
        for (idx, raw_line) in text.split('\n').enumerate() {
            let line_no = idx + 1;
            let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
            let significant = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            };
            if significant.trim().is_empty() {
                continue;
            }
            match &variables {
                None => {
                    let rest = significant.trim().strip_prefix("vars:").ok_or_else(|| {
                        Error::Parse {
                            line: line_no,
                            col: 1,
                            msg: "expected a 'vars: ...' declaration first".into(),
                        }
                    })?;
                    let names: Vec<String> =
                        rest.split(',').map(|s| s.trim().to_string()).collect();
                    if names.iter().any(String::is_empty) {
                        return Err(Error::Parse {
                            line: line_no,
                            col: 1,
                            msg: "empty variable name".into(),
                        });
                    }
                    for n in &names {
                        if !is_valid_name(n) {
                            return Err(Error::Parse {
                                line: line_no,
                                col: 1,
                                msg: format!("invalid variable name '{n}'"),
                            });
                        }
                    }
                    for (i, n) in names.iter().enumerate() {
                        if names[..i].contains(n) {
                            return Err(Error::Parse {
                                line: line_no,
                                col: 1,
                                msg: format!("duplicate variable '{n}'"),
                            });
                        }
                    }
                    variables = Some(names);
                }
                Some(vars) => {
                    polynomials.push(parse_poly_at(significant, vars, line_no)?);
                }
            }
        }
        let variables = variables.ok_or_else(|| Error::Parse {
            line: 1,
            col: 1,
            msg: "missing 'vars:' declaration".into(),
        })?;
        if polynomials.is_empty() {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: "empty system: no polynomials".into(),
            });
        }
        Ok(SystemFile { variables, polynomials, source })
    }

    /// Canonical text form that parses back to the same system.
    pub fn render(&self) -> String {
        let mut out = format!("vars: {}\n", self.variables.join(", "));
        for p in &self.polynomials {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_system() {
        let s = SystemFile::parse("vars: x\nx^2 - 2", None).unwrap();
        assert_eq!(s.variables, vec!["x"]);
        assert_eq!(s.polynomials.len(), 1);
    }

    #[test]
    fn two_polynomials_with_comments_and_crlf() {
        let s = SystemFile::parse(
            "# circle meets line\r\nvars: x, y\r\nx^2 + y^2 - 1  # the circle\r\nx - y\r\n",
            None,
        )
        .unwrap();
        assert_eq!(s.variables, vec!["x", "y"]);
        assert_eq!(s.polynomials.len(), 2);
    }

    #[test]
    fn unknown_variable_is_located() {
        let e = SystemFile::parse("vars: x\ny + 1", None).unwrap_err();
        match e {
            Error::Parse { line, msg, .. } => {
                assert_eq!(line, 2);
                assert!(msg.contains("unknown variable y"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_system_rejected() {
        assert!(SystemFile::parse("vars: x\n# nothing\n", None).is_err());
        assert!(SystemFile::parse("", None).is_err());
    }

    #[test]
    fn round_trip() {
        let s = SystemFile::parse("vars: x, y\n3/2*x^2*y - y + 1\nx - y\n", None).unwrap();
        let back = SystemFile::parse(&s.render(), None).unwrap();
        assert_eq!(s.variables, back.variables);
        assert_eq!(s.polynomials, back.polynomials);
    }
}
