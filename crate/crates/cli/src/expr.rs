//! Expressions over noncommuting variables.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" INT)?
//! atom   := INT ("/" INT)? | NAME | "(" expr ")"
//! ```
//!
//! `*` is noncommutative and mandatory: `x y` and `2x` are errors. `^` is
//! repeated self-multiplication of its base, so `(x*y)^2` is `x*y*x*y`.

use std::fmt;

use ncinvert::freealg::NCSeries;
use ncinvert::rings::Ring;
use num_bigint::BigInt;
use num_rational::BigRational;

/// 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

fn err<T>(pos: Pos, message: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError {
        pos,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "number {n}"),
            Tok::Name(s) => write!(f, "name {s:?}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of expression"),
        }
    }
}

fn lex(text: &str, start: Pos) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos {
            line: start.line,
            col: start.col + i,
        };
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
        } else if c.is_ascii_digit() {
            let j = (i..chars.len())
                .find(|&j| !chars[j].is_ascii_digit())
                .unwrap_or(chars.len());
            let digits: String = chars[i..j].iter().collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let j = (i..chars.len())
                .find(|&j| !(chars[j].is_alphanumeric() || chars[j] == '_'))
                .unwrap_or(chars.len());
            out.push((Tok::Name(chars[i..j].iter().collect()), pos));
            i = j;
        } else {
            return err(pos, format!("unexpected character {c:?}"));
        }
    }
    out.push((
        Tok::End,
        Pos {
            line: start.line,
            col: start.col + chars.len(),
        },
    ));
    Ok(out)
}

/// What the parser needs to turn text into a series.
pub struct Context<'a, R: Ring> {
    pub ring: &'a R,
    pub vars: &'a [String],
    pub degree: usize,
}

const MAX_EXPONENT: u64 = 10_000;

struct Parser<'a, 'c, R: Ring> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    cx: &'c Context<'a, R>,
}

impl<R: Ring> Parser<'_, '_, R> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn zero(&self) -> NCSeries<R> {
        NCSeries::zero(self.cx.ring.clone(), self.cx.vars.len(), self.cx.degree)
    }

    fn expr(&mut self) -> Result<NCSeries<R>, SyntaxError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCSeries<R>, SyntaxError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<NCSeries<R>, SyntaxError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<NCSeries<R>, SyntaxError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, pos) = self.bump();
        let Tok::Int(n) = tok else {
            return err(
                pos,
                format!("expected a non-negative integer exponent, found {tok}"),
            );
        };
        let e: u64 = match u64::try_from(&n) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return err(pos, format!("exponent {n} exceeds {MAX_EXPONENT}")),
        };
        let mut acc = NCSeries::one(self.cx.ring.clone(), self.cx.vars.len(), self.cx.degree);
        for _ in 0..e {
            acc = &acc * &base;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<NCSeries<R>, SyntaxError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => {
                let mut q = BigRational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let (den, dpos) = self.bump();
                    match den {
                        Tok::Int(d) if d != BigInt::from(0) => q /= BigRational::from_integer(d),
                        Tok::Int(_) => return err(dpos, "division by zero"),
                        other => {
                            return err(
                                dpos,
                                format!("'/' only divides integer literals, found {other}"),
                            )
                        }
                    }
                }
                let c = match self.cx.ring.from_rational(&q) {
                    Ok(c) => c,
                    Err(e) => return err(pos, e.to_string()),
                };
                let mut s = self.zero();
                s.add_term(ncinvert::freealg::Word::empty(), c);
                Ok(s)
            }
            Tok::Name(name) => match self.cx.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(NCSeries::var(
                    self.cx.ring.clone(),
                    self.cx.vars.len(),
                    self.cx.degree,
                    i,
                )),
                None => err(
                    pos,
                    format!(
                        "unknown variable {name:?}; declared: {}",
                        self.cx.vars.join(", ")
                    ),
                ),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let (close, cpos) = self.bump();
                if close != Tok::RParen {
                    return err(cpos, format!("expected ')', found {close}"));
                }
                Ok(inner)
            }
            Tok::Slash => err(pos, "'/' only divides integer literals"),
            other => err(
                pos,
                format!("expected a number, variable or '(', found {other}"),
            ),
        }
    }
}

/// Parses one expression whose first character sits at `start`.
pub fn parse_expr<R: Ring>(
    text: &str,
    start: Pos,
    cx: &Context<'_, R>,
) -> Result<NCSeries<R>, SyntaxError> {
    let toks = lex(text, start)?;
    let mut p = Parser { toks, at: 0, cx };
    if *p.peek() == Tok::End {
        return err(p.pos(), "empty expression");
    }
    let value = p.expr()?;
    match p.peek() {
        Tok::End => Ok(value),
        Tok::Int(_) | Tok::Name(_) | Tok::LParen => err(
            p.pos(),
            format!(
                "expected an operator before {}; write '*' for multiplication",
                p.peek()
            ),
        ),
        Tok::Slash => err(p.pos(), "'/' only divides integer literals"),
        other => err(p.pos(), format!("unexpected {other}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncinvert::freealg::Word;
    use ncinvert::rings::{PrimeField, Rationals};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn parse(text: &str) -> Result<NCSeries<Rationals>, SyntaxError> {
        let vars = names(&["x", "y"]);
        let cx = Context {
            ring: &Rationals,
            vars: &vars,
            degree: 6,
        };
        parse_expr(text, Pos { line: 1, col: 1 }, &cx)
    }

    #[test]
    fn precedence_and_noncommutativity() {
        let s = parse("x - (y*x - x*y)").unwrap();
        assert_eq!(
            s.coeff(&Word::from_letters(&[1, 0])),
            Rationals.from_i64(-1)
        );
        assert_eq!(s.coeff(&Word::from_letters(&[0, 1])), Rationals.from_i64(1));
        assert_eq!(parse("-x^2").unwrap(), -&parse("x*x").unwrap());
        assert_eq!(parse("(x*y)^2").unwrap(), parse("x*y*x*y").unwrap());
        assert_eq!(parse("3/4*x - 1/4*x").unwrap(), parse("1/2*x").unwrap());
        assert_eq!(parse("(x+y)^0").unwrap(), parse("1").unwrap());
    }

    #[test]
    fn truncates_high_powers() {
        assert!(parse("x^7").unwrap().is_zero());
        assert!(parse("(x+y)^10000").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("x y").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 3 });
        assert!(e.message.contains("'*'"));
        assert_eq!(parse("2x").unwrap_err().pos.col, 2);
        assert_eq!(parse("x + w").unwrap_err().pos.col, 5);
        assert!(parse("x / y")
            .unwrap_err()
            .message
            .contains("integer literals"));
        assert_eq!(parse("(x + y").unwrap_err().pos.col, 7);
        assert_eq!(parse("x $ y").unwrap_err().pos.col, 3);
        assert!(parse("").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("x^y").is_err());
    }

    #[test]
    fn prime_field_literals() {
        let gf = PrimeField::new(5).unwrap();
        let vars = names(&["x"]);
        let cx = Context {
            ring: &gf,
            vars: &vars,
            degree: 3,
        };
        let at = Pos { line: 1, col: 1 };
        let s = parse_expr("1/2*x", at, &cx).unwrap();
        assert_eq!(s.coeff(&Word::letter(0)), 3);
        assert!(parse_expr("1/5*x", at, &cx).is_err());
        assert!(parse_expr("5*x", at, &cx).unwrap().is_zero());
    }
}
