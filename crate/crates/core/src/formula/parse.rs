//! Concrete syntax.
//!
//! ```text
//! formula := rhd ( "->" formula )?          right-associative
//! rhd     := or ( "|>" or )?                non-associative
//! or      := and ( "|" and )*               left-associative
//! and     := unary ( "&" unary )*           left-associative
//! unary   := "~" unary | atom
//! atom    := ident | "true" | "false" | "(" formula ")"
//! ```

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unknown token {found:?} at position {pos}")]
    UnknownToken { pos: usize, found: char },
    #[error("unexpected {found} at position {pos}, expected {expected}")]
    Unexpected {
        pos: usize,
        found: String,
        expected: &'static str,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("unbalanced parenthesis at position {pos}")]
    Unbalanced { pos: usize },
    #[error("`|>` does not associate; parenthesize the nested modality at position {pos}")]
    ChainedRhd { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Arrow,
    Rhd,
    And,
    Or,
    Not,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => alloc::format!("identifier `{name}`"),
            Tok::True => "`true`".to_string(),
            Tok::False => "`false`".to_string(),
            Tok::Arrow => "`->`".to_string(),
            Tok::Rhd => "`|>`".to_string(),
            Tok::And => "`&`".to_string(),
            Tok::Or => "`|`".to_string(),
            Tok::Not => "`~`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '&' => Tok::And,
            '~' => Tok::Not,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            '|' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Rhd
            }
            '|' => Tok::Or,
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_' || chars[i + 1] == '\'')
                {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                }
            }
            other => return Err(ParseError::UnknownToken { pos: start, found: other }),
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(usize::MAX, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.rhd()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn rhd(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Rhd) {
            let rhs = self.or()?;
            if self.peek() == Some(&Tok::Rhd) {
                return Err(ParseError::ChainedRhd { pos: self.pos() });
            }
            return Ok(Formula::rhd(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.eat(&Tok::Or) {
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::And) {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        const EXPECTED: &str = "a variable, `true`, `false`, `~` or `(`";
        let Some((pos, tok)) = self.toks.get(self.at).cloned() else {
            return Err(ParseError::UnexpectedEnd { expected: EXPECTED });
        };
        self.at += 1;
        match tok {
            Tok::Ident(name) => Ok(Formula::Var(name)),
            Tok::True => Ok(Formula::top()),
            Tok::False => Ok(Formula::Bottom),
            Tok::LParen => {
                let inner = self.formula()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    None => Err(ParseError::Unbalanced { pos }),
                    Some(other) => Err(ParseError::Unexpected {
                        pos: self.pos(),
                        found: other.describe(),
                        expected: "`)`",
                    }),
                }
            }
            Tok::RParen => Err(ParseError::Unbalanced { pos }),
            other => Err(ParseError::Unexpected {
                pos,
                found: other.describe(),
                expected: EXPECTED,
            }),
        }
    }
}

/// Parses a formula, expanding derived connectives into `⊥`/`→`/`▷`.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser { toks: lex(text)?, at: 0 };
    let formula = parser.formula()?;
    match parser.toks.get(parser.at) {
        None => Ok(formula),
        Some((pos, Tok::RParen)) => Err(ParseError::Unbalanced { pos: *pos }),
        Some((pos, tok)) => Err(ParseError::Unexpected {
            pos: *pos,
            found: tok.describe(),
            expected: "end of input",
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }
    fn q() -> Formula {
        Formula::var("q")
    }
    fn r() -> Formula {
        Formula::var("r")
    }

    #[test]
    fn constants() {
        assert_eq!(parse("false").unwrap(), Formula::Bottom);
        assert_eq!(parse("true").unwrap(), Formula::implies(Formula::Bottom, Formula::Bottom));
    }

    #[test]
    fn rhd_binds_tighter_than_implication() {
        assert_eq!(
            parse("p |> q -> r").unwrap(),
            Formula::implies(Formula::rhd(p(), q()), r())
        );
    }

    #[test]
    fn derived_connectives_expand() {
        assert_eq!(
            parse("(p | q) |> true").unwrap(),
            Formula::rhd(Formula::or(p(), q()), Formula::top())
        );
        assert_eq!(
            parse("(p | q) |> true").unwrap(),
            Formula::rhd(
                Formula::implies(Formula::implies(p(), Formula::Bottom), q()),
                Formula::implies(Formula::Bottom, Formula::Bottom)
            )
        );
        assert_eq!(
            parse("p & q").unwrap(),
            Formula::implies(
                Formula::implies(p(), Formula::implies(q(), Formula::Bottom)),
                Formula::Bottom
            )
        );
        assert_eq!(parse("~p").unwrap(), Formula::implies(p(), Formula::Bottom));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::implies(p(), Formula::implies(q(), r()))
        );
        assert_eq!(
            parse("p | q & r").unwrap(),
            Formula::or(p(), Formula::and(q(), r()))
        );
        assert_eq!(
            parse("p & q & r").unwrap(),
            Formula::and(Formula::and(p(), q()), r())
        );
        assert_eq!(parse("~p & q").unwrap(), Formula::and(Formula::not(p()), q()));
        assert_eq!(
            parse("p | q |> r").unwrap(),
            Formula::rhd(Formula::or(p(), q()), r())
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("p |> q |> r"), Err(ParseError::ChainedRhd { pos: 7 }));
        assert_eq!(parse("(p -> q"), Err(ParseError::Unbalanced { pos: 0 }));
        assert_eq!(parse("p -> q)"), Err(ParseError::Unbalanced { pos: 6 }));
        assert_eq!(parse("p $ q"), Err(ParseError::UnknownToken { pos: 2, found: '$' }));
        assert!(matches!(parse("p ->"), Err(ParseError::UnexpectedEnd { .. })));
        assert!(matches!(parse("p q"), Err(ParseError::Unexpected { pos: 2, .. })));
        assert!(matches!(parse(""), Err(ParseError::UnexpectedEnd { .. })));
        assert!(matches!(parse("p - q"), Err(ParseError::UnknownToken { pos: 2, .. })));
    }

    #[test]
    fn identifiers() {
        assert_eq!(parse("x_1'").unwrap(), Formula::var("x_1'"));
        assert_eq!(parse("trueish").unwrap(), Formula::var("trueish"));
    }
}
