//! Constructors for program forms.
//!
//! A program is an s-expression read as follows. The atom `input` is the
//! argument and `diverge` ends the current branch without a value; every
//! other atom evaluates to itself. The compound forms are
//! `(quote x)`, `(if c t e)` (only `nil` is false), `(eq a b)` (yields `t` or
//! `nil`), `(cons a b)`, `(head e)`, `(tail e)`, `(amb a b)` (nondeterministic
//! choice) and `(apply c a)`, which runs the program denoted by the value of
//! `c` on the value of `a`. Any other compound form is stuck.

use super::Sexp;

pub fn input() -> Sexp {
    Sexp::atom("input")
}

pub fn diverge() -> Sexp {
    Sexp::atom("diverge")
}

pub fn quote(x: Sexp) -> Sexp {
    Sexp::list([Sexp::atom("quote"), x])
}

pub fn if_(c: Sexp, then: Sexp, els: Sexp) -> Sexp {
    Sexp::list([Sexp::atom("if"), c, then, els])
}

pub fn eq(a: Sexp, b: Sexp) -> Sexp {
    Sexp::list([Sexp::atom("eq"), a, b])
}

pub fn cons(a: Sexp, b: Sexp) -> Sexp {
    Sexp::list([Sexp::atom("cons"), a, b])
}

pub fn head(e: Sexp) -> Sexp {
    Sexp::list([Sexp::atom("head"), e])
}

pub fn tail(e: Sexp) -> Sexp {
    Sexp::list([Sexp::atom("tail"), e])
}

pub fn amb(a: Sexp, b: Sexp) -> Sexp {
    Sexp::list([Sexp::atom("amb"), a, b])
}

pub fn apply(code: Sexp, arg: Sexp) -> Sexp {
    Sexp::list([Sexp::atom("apply"), code, arg])
}

/// The `j`-th element (0-based) of the list denoted by `e`.
pub fn nth(j: usize, e: Sexp) -> Sexp {
    head((0..j).fold(e, |acc, _| tail(acc)))
}

/// Whether `code` mentions the `amb` form anywhere, quoted parts included.
pub fn contains_amb(code: &Sexp) -> bool {
    code.contains_atom("amb")
}
