use core::fmt;

use super::Formula;

const IMP: u8 = 1;
const RHD: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

/// Sugared view of a formula, used only for printing.
enum View<'a> {
    Var(&'a str),
    Bottom,
    Top,
    Not(&'a Formula),
    And(&'a Formula, &'a Formula),
    Or(&'a Formula, &'a Formula),
    Implies(&'a Formula, &'a Formula),
    Rhd(&'a Formula, &'a Formula),
}

fn view(f: &Formula) -> View<'_> {
    match f {
        Formula::Var(name) => View::Var(name),
        Formula::Bottom => View::Bottom,
        Formula::Rhd(a, b) => View::Rhd(a, b),
        Formula::Implies(a, b) => {
            if **a == Formula::Bottom && **b == Formula::Bottom {
                return View::Top;
            }
            if **b == Formula::Bottom {
                if let Formula::Implies(x, y) = &**a {
                    if let Some(y) = y.negated() {
                        return View::And(x, y);
                    }
                }
                return View::Not(a);
            }
            if let Some(x) = a.negated() {
                if *x != Formula::Bottom {
                    return View::Or(x, b);
                }
            }
            View::Implies(a, b)
        }
    }
}

fn write(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let (prec, left, right) = match view(f) {
        View::Var(name) => return out.write_str(name),
        View::Bottom => return out.write_str("false"),
        View::Top => return out.write_str("true"),
        View::Not(inner) => {
            out.write_str("~")?;
            return write(inner, UNARY, out);
        }
        View::And(a, b) => ((AND, " & "), (a, AND), (b, UNARY)),
        View::Or(a, b) => ((OR, " | "), (a, OR), (b, AND)),
        View::Rhd(a, b) => ((RHD, " |> "), (a, OR), (b, OR)),
        View::Implies(a, b) => ((IMP, " -> "), (a, RHD), (b, IMP)),
    };
    let parens = prec.0 < min;
    if parens {
        out.write_str("(")?;
    }
    write(left.0, left.1, out)?;
    out.write_str(prec.1)?;
    write(right.0, right.1, out)?;
    if parens {
        out.write_str(")")?;
    }
    Ok(())
}

/// Canonical text: derived connectives are re-sugared and parentheses are
/// minimal under the parser's precedence table.
impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write(self, 0, out)
    }
}

#[cfg(test)]
mod tests {
    extern crate std;

    use alloc::string::{String, ToString};
    use proptest::prelude::*;

    use super::super::parse;
    use super::*;

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::Bottom),
            Just(Formula::var("p")),
            Just(Formula::var("q")),
            Just(Formula::var("r")),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::rhd(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                inner.prop_map(Formula::not),
            ]
        })
    }

    #[test]
    fn printing_examples() {
        let cases = [
            ("p |> q -> r", "p |> q -> r"),
            ("(p -> q) -> r", "(p -> q) -> r"),
            ("(p | q) |> true", "p | q |> true"),
            ("~(p & q)", "~(p & q)"),
            ("(p |> q) |> p", "(p |> q) |> p"),
            ("~~p", "~~p"),
            ("true -> p", "true -> p"),
            ("p & (q & r)", "p & (q & r)"),
        ];
        for (input, canonical) in cases {
            assert_eq!(parse(input).unwrap().to_string(), canonical);
        }
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(phi in arb_formula()) {
            let text = phi.to_string();
            prop_assert_eq!(parse(&text).unwrap(), phi);
        }

        #[test]
        fn canonical_text_is_a_fixpoint(phi in arb_formula()) {
            let text: String = phi.to_string();
            prop_assert_eq!(parse(&text).unwrap().to_string(), text);
        }
    }
}
