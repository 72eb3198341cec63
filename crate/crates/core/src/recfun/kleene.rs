//! A constructive n-ary recursion theorem.
//!
//! Given transformers `f_1 … f_n`, each a total map from n-tuples of codes to
//! codes, we build codes `u_1 … u_n` with `ξ_{u_i} = ξ_{f_i(u_1,…,u_n)}`.
//!
//! Each transformer is a [`Template`]: an s-expression with holes, usable
//! both as a host-level builder (fill the holes) and, after compiling it
//! like a quasi-quotation, as an object-level program that reads the code
//! tuple from its input list.
//!
//! The construction uses double application. For a code `x` and a list `X`,
//! `g(x, X)` is the code `(apply (apply (quote x) (quote X)) input)`, which
//! on input `a` runs `x` on `X` and then runs the result on `a`. The
//! generator `w_i` is the program that, on a list `X = (x_1 … x_n)`, builds
//! the codes `g(x_j, X)` and hands them to `f_i`. With `W = (w_1 … w_n)` the
//! fixed points are `u_i = g(w_i, W)`: running `w_i` on `W` yields
//! `f_i(g(w_1, W), …, g(w_n, W)) = f_i(u_1, …, u_n)`, so `u_i` behaves like
//! `f_i(u⃗)` on every input.

use alloc::boxed::Box;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eval::{eval_program, EvalError, EvalMode, EvalResult};
use super::prog;
use super::Sexp;

/// An s-expression with holes for the elements of a code tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Template {
    Const(Sexp),
    Pair(Box<Template>, Box<Template>),
    /// The `j`-th code (0-based).
    Hole(usize),
    /// The whole tuple, as a list.
    All,
}

impl Template {
    pub fn atom(name: &str) -> Self {
        Template::Const(Sexp::atom(name))
    }

    /// A pair; constant halves are merged into one constant.
    pub fn pair(car: Template, cdr: Template) -> Self {
        match (car, cdr) {
            (Template::Const(a), Template::Const(b)) => Template::Const(Sexp::cons(a, b)),
            (a, b) => Template::Pair(Box::new(a), Box::new(b)),
        }
    }

    pub fn list(items: impl IntoIterator<Item = Template>) -> Self {
        let items: Vec<Template> = items.into_iter().collect();
        items
            .into_iter()
            .rev()
            .fold(Template::Const(Sexp::nil()), |acc, x| Template::pair(x, acc))
    }

    /// The largest hole index, if any.
    pub fn max_hole(&self) -> Option<usize> {
        match self {
            Template::Const(_) | Template::All => None,
            Template::Hole(j) => Some(*j),
            Template::Pair(a, b) => a.max_hole().max(b.max_hole()),
        }
    }

    /// Host-level builder: fills the holes with `args`.
    pub fn instantiate(&self, args: &[Sexp]) -> Sexp {
        match self {
            Template::Const(c) => c.clone(),
            Template::Pair(a, b) => Sexp::cons(a.instantiate(args), b.instantiate(args)),
            Template::Hole(j) => args[*j].clone(),
            Template::All => Sexp::list(args.iter().cloned()),
        }
    }

    /// Object-level builder: a program that, on the list of codes as input,
    /// returns the instantiated template.
    pub fn compile(&self) -> Sexp {
        match self {
            Template::Const(c) => prog::quote(c.clone()),
            Template::Pair(a, b) => prog::cons(a.compile(), b.compile()),
            Template::Hole(j) => prog::nth(*j, prog::input()),
            Template::All => prog::input(),
        }
    }
}

/// A code-to-code transformer of some fixed arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformer {
    pub template: Template,
    /// An optional constant carried in the program text but never returned.
    /// Tags make otherwise identical transformers have distinct codes.
    pub tag: Option<Sexp>,
}

impl Transformer {
    pub fn new(template: Template) -> Self {
        Transformer { template, tag: None }
    }

    pub fn tagged(template: Template, tag: Sexp) -> Self {
        Transformer {
            template,
            tag: Some(tag),
        }
    }

    /// The object-level program: reads the code tuple from its input list.
    pub fn program(&self) -> Sexp {
        let body = self.template.compile();
        match &self.tag {
            None => body,
            // The tag sits in a branch that is never taken.
            Some(tag) => prog::if_(prog::quote(Sexp::nil()), prog::quote(tag.clone()), body),
        }
    }

    /// The host-level map.
    pub fn apply(&self, codes: &[Sexp]) -> Sexp {
        self.template.instantiate(codes)
    }
}

/// `g(x, X)`: the code that runs `x` on `X` and then runs the result on its
/// own input.
pub fn double_application(x: &Sexp, all: &Sexp) -> Sexp {
    prog::apply(
        prog::apply(prog::quote(x.clone()), prog::quote(all.clone())),
        prog::input(),
    )
}

/// Template of `g(x_j, X)` over the tuple `X`.
fn double_application_template(j: usize) -> Template {
    Template::list([
        Template::atom("apply"),
        Template::list([
            Template::atom("apply"),
            Template::list([Template::atom("quote"), Template::Hole(j)]),
            Template::list([Template::atom("quote"), Template::All]),
        ]),
        Template::atom("input"),
    ])
}

/// The generator `w_i`: on a tuple `X`, applies `f_i` to the codes
/// `g(x_1, X) … g(x_n, X)`.
pub fn generator(f: &Transformer, n: usize) -> Sexp {
    let tuple = Template::list((0..n).map(double_application_template));
    prog::apply(prog::quote(f.program()), tuple.compile())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixedPointError {
    #[error("no transformers given")]
    Empty,
    #[error("transformer {index} uses code {hole} but the arity is {arity}")]
    HoleOutOfRange { index: usize, hole: usize, arity: usize },
    #[error("transformer {index} failed: {error}")]
    Eval { index: usize, error: EvalError },
    #[error("transformer {index} is not total within the budget on the fixed-point codes")]
    NotTotal { index: usize },
    #[error("transformer {index}: the object program and the host builder disagree")]
    Mismatch { index: usize },
}

/// Codes produced by the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoints {
    /// The fixed points `u_i`.
    pub codes: Vec<Sexp>,
    /// The generators `w_i`.
    pub generators: Vec<Sexp>,
    /// `f_i(u⃗)`, as computed by the object programs.
    pub images: Vec<Sexp>,
}

/// Runs the construction. The object program of every transformer is
/// executed on the fixed-point codes and its result compared with the host
/// builder, so a mistake in either surfaces as an error.
pub fn fixed_points(transformers: &[Transformer], budget: usize) -> Result<FixedPoints, FixedPointError> {
    let n = transformers.len();
    if n == 0 {
        return Err(FixedPointError::Empty);
    }
    for (index, f) in transformers.iter().enumerate() {
        if let Some(hole) = f.template.max_hole().filter(|&h| h >= n) {
            return Err(FixedPointError::HoleOutOfRange { index, hole, arity: n });
        }
    }
    let generators: Vec<Sexp> = transformers.iter().map(|f| generator(f, n)).collect();
    let all = Sexp::list(generators.iter().cloned());
    let codes: Vec<Sexp> = generators.iter().map(|w| double_application(w, &all)).collect();
    let mut images = Vec::with_capacity(n);
    for (index, (f, w)) in transformers.iter().zip(&generators).enumerate() {
        let inner = prog::apply(prog::quote(w.clone()), prog::quote(all.clone()));
        let result = eval_program(&inner, &Sexp::nil(), budget, EvalMode::Deterministic)
            .map_err(|error| FixedPointError::Eval { index, error })?;
        if !result.is_complete() || result.values.len() != 1 {
            return Err(FixedPointError::NotTotal { index });
        }
        let image = result.values.into_iter().next().expect("one value");
        if image != f.apply(&codes) {
            return Err(FixedPointError::Mismatch { index });
        }
        images.push(image);
    }
    Ok(FixedPoints {
        codes,
        generators,
        images,
    })
}

/// One comparison of `ξ_{u_i}(x)` with `ξ_{f_i(u⃗)}(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionalCheck {
    pub index: usize,
    pub input: Sexp,
    pub code: EvalResult,
    pub image: EvalResult,
}

impl ExtensionalCheck {
    pub fn agrees(&self) -> bool {
        self.code.values == self.image.values
    }

    pub fn exhausted(&self) -> bool {
        !self.code.is_complete() || !self.image.is_complete()
    }
}

/// Compares every fixed point with its image on each of the given inputs.
pub fn check_extensional(
    fixed: &FixedPoints,
    inputs: &[Sexp],
    budget: usize,
    mode: EvalMode,
) -> Result<Vec<ExtensionalCheck>, EvalError> {
    let mut checks = Vec::new();
    for (index, (code, image)) in fixed.codes.iter().zip(&fixed.images).enumerate() {
        for input in inputs {
            checks.push(ExtensionalCheck {
                index,
                input: input.clone(),
                code: eval_program(code, input, budget, mode)?,
                image: eval_program(image, input, budget, mode)?,
            });
        }
    }
    Ok(checks)
}

/// Reproducible random s-expressions over a small atom alphabet, for
/// probing programs on inputs they were not built for.
pub fn random_inputs(seed: u64, count: usize) -> Vec<Sexp> {
    const ATOMS: [&str; 6] = ["nil", "t", "a", "b", "input", "quote"];
    fn go(rng: &mut ChaCha8Rng, depth: usize) -> Sexp {
        if depth == 0 || rng.gen_bool(0.35) {
            return Sexp::atom(ATOMS[rng.gen_range(0..ATOMS.len())]);
        }
        Sexp::cons(go(rng, depth - 1), go(rng, depth - 1))
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| go(&mut rng, 4)).collect()
}

/// A transformer whose result is the constant-function code returning the
/// `j`-th code of the tuple.
pub fn constant_of(j: usize) -> Transformer {
    Transformer::new(Template::list([Template::atom("quote"), Template::Hole(j)]))
}
