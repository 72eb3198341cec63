//! S-expressions: the shared universe of data, inputs, outputs and codes.

use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// An s-expression. Lists are right-nested pairs ending in the atom `nil`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sexp {
    Atom(Rc<str>),
    Pair(Rc<Sexp>, Rc<Sexp>),
}

impl Sexp {
    /// An atom. Names must be non-empty and free of whitespace, parentheses,
    /// quote marks and be different from `.`, so that they print back.
    pub fn atom(name: &str) -> Self {
        debug_assert!(is_atom_name(name), "invalid atom name {name:?}");
        Sexp::Atom(Rc::from(name))
    }

    pub fn nil() -> Self {
        Sexp::atom("nil")
    }

    pub fn t() -> Self {
        Sexp::atom("t")
    }

    pub fn cons(car: Sexp, cdr: Sexp) -> Self {
        Sexp::Pair(Rc::new(car), Rc::new(cdr))
    }

    /// A proper list of the given items.
    pub fn list(items: impl IntoIterator<Item = Sexp>) -> Self {
        let items: Vec<Sexp> = items.into_iter().collect();
        items.into_iter().rev().fold(Sexp::nil(), |acc, x| Sexp::cons(x, acc))
    }

    pub fn is_nil(&self) -> bool {
        self.as_atom() == Some("nil")
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a) => Some(a),
            Sexp::Pair(..) => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Sexp, &Sexp)> {
        match self {
            Sexp::Pair(a, b) => Some((a, b)),
            Sexp::Atom(_) => None,
        }
    }

    /// The items of a proper list, or `None` for improper lists and atoms
    /// other than `nil`.
    pub fn list_items(&self) -> Option<Vec<&Sexp>> {
        let mut items = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Sexp::Atom(a) if &**a == "nil" => return Some(items),
                Sexp::Atom(_) => return None,
                Sexp::Pair(car, cdr) => {
                    items.push(&**car);
                    cur = cdr;
                }
            }
        }
    }

    /// Number of atoms and pairs.
    pub fn size(&self) -> usize {
        match self {
            Sexp::Atom(_) => 1,
            Sexp::Pair(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn contains_atom(&self, name: &str) -> bool {
        match self {
            Sexp::Atom(a) => &**a == name,
            Sexp::Pair(a, b) => a.contains_atom(name) || b.contains_atom(name),
        }
    }
}

fn is_atom_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | '\'')
}

fn is_atom_name(name: &str) -> bool {
    !name.is_empty() && name != "." && name.chars().all(is_atom_char)
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a) => f.write_str(a),
            Sexp::Pair(car, cdr) => {
                write!(f, "({car}")?;
                let mut rest = &**cdr;
                loop {
                    match rest {
                        Sexp::Pair(a, b) => {
                            write!(f, " {a}")?;
                            rest = b;
                        }
                        Sexp::Atom(a) if &**a == "nil" => return f.write_str(")"),
                        Sexp::Atom(a) => return write!(f, " . {a})"),
                    }
                }
            }
        }
    }
}

impl fmt::Debug for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SexpError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected `{found}` at position {pos}")]
    Unexpected { pos: usize, found: String },
    #[error("trailing input at position {pos}")]
    Trailing { pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Quote,
    Dot,
    Atom(String),
}

fn tokenize(text: &str) -> Vec<(usize, Token)> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '(' => {
                tokens.push((i, Token::Open));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::Close));
                i += 1;
            }
            '\'' => {
                tokens.push((i, Token::Quote));
                i += 1;
            }
            _ => {
                let start = i;
                while i < chars.len() && is_atom_char(chars[i]) {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                let token = if name == "." { Token::Dot } else { Token::Atom(name) };
                tokens.push((start, token));
            }
        }
    }
    tokens
}

fn describe(token: &Token) -> String {
    match token {
        Token::Open => "(".to_string(),
        Token::Close => ")".to_string(),
        Token::Quote => "'".to_string(),
        Token::Dot => ".".to_string(),
        Token::Atom(a) => a.clone(),
    }
}

struct Reader {
    tokens: Vec<(usize, Token)>,
    next: usize,
}

impl Reader {
    fn bump(&mut self) -> Result<(usize, Token), SexpError> {
        let token = self.tokens.get(self.next).cloned().ok_or(SexpError::UnexpectedEnd)?;
        self.next += 1;
        Ok(token)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.next).map(|(_, t)| t)
    }

    fn expr(&mut self) -> Result<Sexp, SexpError> {
        let (pos, token) = self.bump()?;
        match token {
            Token::Atom(a) => Ok(Sexp::atom(&a)),
            Token::Quote => Ok(Sexp::list([Sexp::atom("quote"), self.expr()?])),
            Token::Open => self.list_tail(),
            other => Err(SexpError::Unexpected {
                pos,
                found: describe(&other),
            }),
        }
    }

    fn list_tail(&mut self) -> Result<Sexp, SexpError> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                None => return Err(SexpError::UnexpectedEnd),
                Some(Token::Close) => {
                    self.next += 1;
                    return Ok(Sexp::list(items));
                }
                Some(Token::Dot) if !items.is_empty() => {
                    self.next += 1;
                    let tail = self.expr()?;
                    let (pos, close) = self.bump()?;
                    if close != Token::Close {
                        return Err(SexpError::Unexpected {
                            pos,
                            found: describe(&close),
                        });
                    }
                    return Ok(items.into_iter().rev().fold(tail, |acc, x| Sexp::cons(x, acc)));
                }
                Some(_) => items.push(self.expr()?),
            }
        }
    }
}

/// Parses one s-expression. `()` reads as `nil` and `'x` as `(quote x)`.
pub fn parse_sexp(text: &str) -> Result<Sexp, SexpError> {
    let mut reader = Reader {
        tokens: tokenize(text),
        next: 0,
    };
    let expr = reader.expr()?;
    match reader.tokens.get(reader.next) {
        None => Ok(expr),
        Some(&(pos, _)) => Err(SexpError::Trailing { pos }),
    }
}

impl core::str::FromStr for Sexp {
    type Err = SexpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sexp(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use proptest::prelude::*;

    #[test]
    fn lists_print_and_parse() {
        let e = parse_sexp("(if (eq input 'a) (quote b) diverge)").unwrap();
        assert_eq!(format!("{e}"), "(if (eq input (quote a)) (quote b) diverge)");
        assert_eq!(parse_sexp("()").unwrap(), Sexp::nil());
        assert_eq!(parse_sexp("(a . b)").unwrap(), Sexp::cons(Sexp::atom("a"), Sexp::atom("b")));
        assert_eq!(format!("{}", parse_sexp("(a b . c)").unwrap()), "(a b . c)");
        assert_eq!(parse_sexp("(a . (b))").unwrap(), parse_sexp("(a b)").unwrap());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_sexp("(a b"), Err(SexpError::UnexpectedEnd));
        assert_eq!(parse_sexp("a b"), Err(SexpError::Trailing { pos: 2 }));
        assert!(matches!(parse_sexp(")"), Err(SexpError::Unexpected { pos: 0, .. })));
        assert!(matches!(parse_sexp("(. a)"), Err(SexpError::Unexpected { .. })));
        assert!(matches!(parse_sexp("(a . b c)"), Err(SexpError::Unexpected { .. })));
        assert_eq!(parse_sexp(""), Err(SexpError::UnexpectedEnd));
    }

    #[test]
    fn list_items_only_for_proper_lists() {
        assert_eq!(parse_sexp("(a b)").unwrap().list_items().map(|v| v.len()), Some(2));
        assert_eq!(parse_sexp("(a . b)").unwrap().list_items(), None);
        assert_eq!(Sexp::atom("x").list_items(), None);
    }

    fn arb_sexp() -> impl Strategy<Value = Sexp> {
        let leaf = prop_oneof![
            Just(Sexp::nil()),
            Just(Sexp::atom("a")),
            Just(Sexp::atom("quote")),
            Just(Sexp::atom("x-1")),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| Sexp::cons(a, b))
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_sexp()) {
            prop_assert_eq!(parse_sexp(&format!("{e}")).unwrap(), e);
        }
    }
}
