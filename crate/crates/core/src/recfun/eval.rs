//! Budgeted breadth-first evaluation of programs.
//!
//! Each branch is a small CEK-style machine: the control is either an
//! expression to evaluate under an input or a value to return, and the
//! continuation is a shared linked stack so that `amb` can fork a branch in
//! constant time. Branches are explored breadth first; each has its own step
//! budget counted from the start of the run, and the number of branches is
//! capped.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;

use super::Sexp;

/// Default step budget per branch.
pub const DEFAULT_BUDGET: usize = 10_000;
/// Maximum number of branches explored in one evaluation.
pub const MAX_BRANCHES: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EvalMode {
    /// `amb` is an error.
    Deterministic,
    /// `amb` forks the branch.
    Nondeterministic,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("stuck: {0}")]
    Stuck(String),
    #[error("`amb` reached in deterministic mode")]
    AmbInDeterministic,
}

/// The value set of a program on an input, with how the search ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalResult {
    pub values: BTreeSet<Sexp>,
    /// Some branch ran out of steps; emptiness of `values` is inconclusive.
    pub budget_exhausted: bool,
    /// Some branch was dropped because of the branch cap.
    pub branch_overflow: bool,
    /// Every branch ended in `diverge`.
    pub definitely_divergent: bool,
    /// Steps taken over all branches.
    pub steps: usize,
}

impl EvalResult {
    /// Whether the value set is exact: no branch was cut short.
    pub fn is_complete(&self) -> bool {
        !self.budget_exhausted && !self.branch_overflow
    }
}

#[derive(Clone, Debug)]
enum Frame {
    If { then: Sexp, els: Sexp, input: Sexp },
    EqArg { rhs: Sexp, input: Sexp },
    EqDone { lhs: Sexp },
    ConsArg { rhs: Sexp, input: Sexp },
    ConsDone { lhs: Sexp },
    Head,
    Tail,
    ApplyArg { arg: Sexp, input: Sexp },
    ApplyDone { code: Sexp },
}

#[derive(Clone, Debug, Default)]
struct Kont(Option<Rc<(Frame, Kont)>>);

impl Kont {
    fn push(self, frame: Frame) -> Kont {
        Kont(Some(Rc::new((frame, self))))
    }

    fn pop(self) -> Option<(Frame, Kont)> {
        self.0.map(|node| match Rc::try_unwrap(node) {
            Ok(pair) => pair,
            Err(shared) => (*shared).clone(),
        })
    }
}

#[derive(Clone, Debug)]
enum Control {
    Eval { expr: Sexp, input: Sexp },
    Return(Sexp),
}

struct Branch {
    control: Control,
    kont: Kont,
    steps: usize,
}

enum Outcome {
    Continue(Branch),
    Fork(Branch, Branch),
    Value(Sexp),
    Diverged,
}

fn stuck(msg: String) -> EvalError {
    EvalError::Stuck(msg)
}

/// Splits a compound form into its keyword and argument list, checking the
/// arity.
fn form(expr: &Sexp) -> Result<(&str, alloc::vec::Vec<&Sexp>), EvalError> {
    let (op, _) = expr.as_pair().expect("form called on a pair");
    let items = expr
        .list_items()
        .ok_or_else(|| stuck(format!("improper form {expr}")))?;
    let keyword = op
        .as_atom()
        .ok_or_else(|| stuck(format!("form without keyword {expr}")))?;
    let arity = match keyword {
        "quote" | "head" | "tail" => 1,
        "eq" | "cons" | "amb" | "apply" => 2,
        "if" => 3,
        _ => return Err(stuck(format!("unknown form {expr}"))),
    };
    if items.len() != arity + 1 {
        return Err(stuck(format!("`{keyword}` expects {arity} argument(s) in {expr}")));
    }
    Ok((keyword, items[1..].to_vec()))
}

fn step(branch: Branch, mode: EvalMode) -> Result<Outcome, EvalError> {
    let Branch { control, kont, steps } = branch;
    let steps = steps + 1;
    let next = |control, kont| Ok(Outcome::Continue(Branch { control, kont, steps }));
    match control {
        Control::Eval { expr, input } => match &expr {
            Sexp::Atom(a) => match &**a {
                "input" => next(Control::Return(input), kont),
                "diverge" => Ok(Outcome::Diverged),
                _ => next(Control::Return(expr.clone()), kont),
            },
            Sexp::Pair(..) => {
                let (keyword, args) = form(&expr)?;
                let eval = |e: &Sexp, input: &Sexp| Control::Eval {
                    expr: e.clone(),
                    input: input.clone(),
                };
                match keyword {
                    "quote" => next(Control::Return(args[0].clone()), kont),
                    "if" => {
                        let frame = Frame::If {
                            then: args[1].clone(),
                            els: args[2].clone(),
                            input: input.clone(),
                        };
                        next(eval(args[0], &input), kont.push(frame))
                    }
                    "eq" => {
                        let frame = Frame::EqArg {
                            rhs: args[1].clone(),
                            input: input.clone(),
                        };
                        next(eval(args[0], &input), kont.push(frame))
                    }
                    "cons" => {
                        let frame = Frame::ConsArg {
                            rhs: args[1].clone(),
                            input: input.clone(),
                        };
                        next(eval(args[0], &input), kont.push(frame))
                    }
                    "head" => next(eval(args[0], &input), kont.push(Frame::Head)),
                    "tail" => next(eval(args[0], &input), kont.push(Frame::Tail)),
                    "apply" => {
                        let frame = Frame::ApplyArg {
                            arg: args[1].clone(),
                            input: input.clone(),
                        };
                        next(eval(args[0], &input), kont.push(frame))
                    }
                    "amb" => {
                        if mode == EvalMode::Deterministic {
                            return Err(EvalError::AmbInDeterministic);
                        }
                        let left = Branch {
                            control: eval(args[0], &input),
                            kont: kont.clone(),
                            steps,
                        };
                        let right = Branch {
                            control: eval(args[1], &input),
                            kont,
                            steps,
                        };
                        Ok(Outcome::Fork(left, right))
                    }
                    _ => unreachable!("arity table covers every keyword"),
                }
            }
        },
        Control::Return(value) => {
            let Some((frame, kont)) = kont.pop() else {
                return Ok(Outcome::Value(value));
            };
            match frame {
                Frame::If { then, els, input } => {
                    let expr = if value.is_nil() { els } else { then };
                    next(Control::Eval { expr, input }, kont)
                }
                Frame::EqArg { rhs, input } => {
                    next(Control::Eval { expr: rhs, input }, kont.push(Frame::EqDone { lhs: value }))
                }
                Frame::EqDone { lhs } => {
                    let answer = if lhs == value { Sexp::t() } else { Sexp::nil() };
                    next(Control::Return(answer), kont)
                }
                Frame::ConsArg { rhs, input } => {
                    next(Control::Eval { expr: rhs, input }, kont.push(Frame::ConsDone { lhs: value }))
                }
                Frame::ConsDone { lhs } => next(Control::Return(Sexp::cons(lhs, value)), kont),
                Frame::Head | Frame::Tail => match value.as_pair() {
                    Some((car, cdr)) => {
                        let part = if matches!(frame, Frame::Head) { car } else { cdr };
                        next(Control::Return(part.clone()), kont)
                    }
                    None => Err(stuck(format!("head or tail of atom {value}"))),
                },
                Frame::ApplyArg { arg, input } => next(
                    Control::Eval { expr: arg, input },
                    kont.push(Frame::ApplyDone { code: value }),
                ),
                Frame::ApplyDone { code } => next(Control::Eval { expr: code, input: value }, kont),
            }
        }
    }
}

/// Runs `code` on `input` with `budget` steps per branch.
///
/// Value sets do not depend on the exploration order; in deterministic mode
/// there is a single branch and so at most one value.
pub fn eval_program(code: &Sexp, input: &Sexp, budget: usize, mode: EvalMode) -> Result<EvalResult, EvalError> {
    let mut result = EvalResult {
        values: BTreeSet::new(),
        budget_exhausted: false,
        branch_overflow: false,
        definitely_divergent: false,
        steps: 0,
    };
    let mut queue = VecDeque::new();
    queue.push_back(Branch {
        control: Control::Eval {
            expr: code.clone(),
            input: input.clone(),
        },
        kont: Kont::default(),
        steps: 0,
    });
    let mut branches = 1usize;
    let mut diverged = 0usize;
    while let Some(mut branch) = queue.pop_front() {
        loop {
            if branch.steps >= budget {
                result.budget_exhausted = true;
                break;
            }
            result.steps += 1;
            match step(branch, mode)? {
                Outcome::Continue(b) => branch = b,
                Outcome::Value(v) => {
                    result.values.insert(v);
                    break;
                }
                Outcome::Diverged => {
                    diverged += 1;
                    break;
                }
                Outcome::Fork(left, right) => {
                    // A fork turns one branch into two.
                    if branches < MAX_BRANCHES {
                        queue.push_back(left);
                        queue.push_back(right);
                        branches += 1;
                    } else {
                        result.branch_overflow = true;
                    }
                    break;
                }
            }
        }
    }
    result.definitely_divergent = result.values.is_empty() && result.is_complete() && diverged > 0;
    Ok(result)
}
