//! Map files: an optional `vars:` header, then one component per line or
//! `;`-separated. `#` starts a comment.

use std::fmt;
use std::str::FromStr;

use ncinvert::freealg::{FormalMap, NCSeries};
use ncinvert::rings::Ring;

use crate::error::CliError;
use crate::expr::{parse_expr, Context, Pos, SyntaxError};

/// The coefficient ring named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingSpec {
    Rational,
    Gfp(u64),
}

impl FromStr for RingSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "rational" {
            return Ok(RingSpec::Rational);
        }
        if let Some(p) = s.strip_prefix("gfp:") {
            return p
                .parse()
                .map(RingSpec::Gfp)
                .map_err(|_| format!("bad prime in {s:?}"));
        }
        Err(format!(
            "unknown ring {s:?}; expected \"rational\" or \"gfp:<p>\""
        ))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rational => f.write_str("rational"),
            RingSpec::Gfp(p) => write!(f, "gfp:{p}"),
        }
    }
}

/// Unparsed component texts with their positions and the variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSource {
    pub vars: Vec<String>,
    pub components: Vec<(String, Pos)>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn check_names(names: &[String], pos: Pos) -> Result<(), SyntaxError> {
    for (i, n) in names.iter().enumerate() {
        if !valid_name(n) {
            return Err(SyntaxError {
                pos,
                message: format!("invalid variable name {n:?}"),
            });
        }
        if names[..i].contains(n) {
            return Err(SyntaxError {
                pos,
                message: format!("variable {n:?} declared twice"),
            });
        }
    }
    Ok(())
}

/// Splits `a, b` or `a b` into names.
pub fn split_names(text: &str) -> Vec<String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

impl MapSource {
    /// Reads a map file. Names given on the command line take the place of
    /// a `vars:` header and must agree with one if both are present.
    pub fn parse(text: &str, cli_vars: Option<&[String]>) -> Result<Self, SyntaxError> {
        let mut header: Option<(Vec<String>, Pos)> = None;
        let mut components = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let trimmed = line.trim_start();
            let indent = line.len() - trimmed.len();
            let pos = Pos {
                line: ln + 1,
                col: line[..indent].chars().count() + 1,
            };
            if let Some(rest) = trimmed.strip_prefix("vars:") {
                if header.is_some() || !components.is_empty() {
                    return Err(SyntaxError {
                        pos,
                        message: "the vars: header must come first, once".into(),
                    });
                }
                let names = split_names(rest);
                check_names(&names, pos)?;
                header = Some((names, pos));
                continue;
            }
            let mut col = 1;
            for piece in line.split(';') {
                if !piece.trim().is_empty() {
                    components.push((piece.to_string(), Pos { line: ln + 1, col }));
                }
                col += piece.chars().count() + 1;
            }
        }
        let end = Pos {
            line: text.lines().count().max(1),
            col: 1,
        };
        if components.is_empty() {
            return Err(SyntaxError {
                pos: end,
                message: "no map components".into(),
            });
        }
        let vars = match (header, cli_vars) {
            (Some((h, pos)), Some(c)) if h != c => {
                return Err(SyntaxError {
                    pos,
                    message: format!(
                        "vars header ({}) disagrees with --vars ({})",
                        h.join(", "),
                        c.join(", ")
                    ),
                })
            }
            (Some((h, _)), _) => h,
            (None, Some(c)) => {
                check_names(c, end)?;
                c.to_vec()
            }
            (None, None) => (1..=components.len()).map(|i| format!("z{i}")).collect(),
        };
        if vars.len() != components.len() {
            return Err(SyntaxError {
                pos: components[0].1,
                message: format!(
                    "{} variables declared but {} components given",
                    vars.len(),
                    components.len()
                ),
            });
        }
        Ok(Self { vars, components })
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// The components as series truncated at `degree`.
    pub fn series<R: Ring>(
        &self,
        ring: &R,
        degree: usize,
    ) -> Result<Vec<NCSeries<R>>, SyntaxError> {
        let cx = Context {
            ring,
            vars: &self.vars,
            degree,
        };
        self.components
            .iter()
            .map(|(text, pos)| parse_expr(text, *pos, &cx))
            .collect()
    }

    /// The map as `F = z - H`, rejecting components whose `H` part has a
    /// constant or linear term.
    pub fn f_map<R: Ring>(&self, ring: &R, degree: usize) -> Result<FormalMap<R>, CliError> {
        let comps = self.series(ring, degree)?;
        let h: Vec<_> = comps
            .iter()
            .enumerate()
            .map(|(i, f)| &NCSeries::var(ring.clone(), self.arity(), degree, i) - f)
            .collect();
        FormalMap::from_h(h)
            .map_err(|e| CliError::Precondition(format!("H = z - F must have order >= 2: {e}")))
    }

    /// The map as written, without any form check.
    pub fn general_map<R: Ring>(&self, ring: &R, degree: usize) -> Result<FormalMap<R>, CliError> {
        Ok(FormalMap::general(self.series(ring, degree)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncinvert::rings::Rationals;

    #[test]
    fn header_and_separators() {
        let src = MapSource::parse("vars: x, y\nx - (y*x - x*y); y\n", None).unwrap();
        assert_eq!(src.vars, ["x", "y"]);
        assert_eq!(src.components[1].1, Pos { line: 2, col: 17 });
        let f = src.f_map(&Rationals, 5).unwrap();
        assert_eq!(f.nonlinear_part()[0].term_count(), 2);
    }

    #[test]
    fn default_names() {
        let src = MapSource::parse("z1 - z1^2", None).unwrap();
        assert_eq!(src.vars, ["z1"]);
        assert!(src.f_map(&Rationals, 4).is_ok());
    }

    #[test]
    fn rejects_linear_h() {
        let names = vec!["x".to_string(), "y".to_string()];
        let src = MapSource::parse("x - y; y", Some(&names)).unwrap();
        let e = src.f_map(&Rationals, 4).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().contains("order 1"));
    }

    #[test]
    fn reports_mismatches() {
        let e = MapSource::parse("vars: x, y\nx", None).unwrap_err();
        assert_eq!(e.pos.line, 2);
        let names = vec!["a".to_string()];
        assert!(MapSource::parse("vars: x\nx", Some(&names)).is_err());
        assert!(MapSource::parse("vars: x, x\nx; x", None).is_err());
        assert!(MapSource::parse("# nothing\n", None).is_err());
        let e = MapSource::parse("vars: x, y\nx; y +", None)
            .unwrap()
            .series(&Rationals, 3)
            .unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 7 });
    }

    #[test]
    fn ring_names() {
        assert_eq!("rational".parse::<RingSpec>().unwrap(), RingSpec::Rational);
        assert_eq!("gfp:5".parse::<RingSpec>().unwrap(), RingSpec::Gfp(5));
        assert!("gfp:x".parse::<RingSpec>().is_err());
        assert!("real".parse::<RingSpec>().is_err());
    }
}
