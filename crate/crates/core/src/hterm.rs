//! Term syntax for morphisms built from the Hopf structure constants.
//!
//! An `HTerm` is a free syntax tree: generators, identities, block swaps,
//! binary composition and binary tensor. No relations are imposed at this
//! level; deciding equality of the morphisms that terms denote is the job
//! of the `canonical` module. What this module provides is type inference
//! (domain and codomain of a term), evaluation into bracket notation, and
//! structured constructors for the derived morphisms used everywhere else:
//! iterated (co)multiplications, permutation terms, convolution, the wedge
//! product, single-letter generators and the word-tuple expansion `alpha`.

use std::fmt;
use thiserror::Error;

use crate::fcat::{self, FMorphism, GenKind};
use crate::perm::Permutation;
use crate::words::ReducedWord;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HTerm {
    Gen(GenKind),
    Id(usize),
    Sym(usize, usize),
    Compose(Box<HTerm>, Box<HTerm>),
    Tensor(Box<HTerm>, Box<HTerm>),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("composition boundary mismatch: left factor has domain {left_dom}, right factor has codomain {right_cod}")]
    Boundary { left_dom: usize, right_cod: usize },
    #[error("convolution boundary mismatch: {left_dom} -> {left_cod} vs {right_dom} -> {right_cod}")]
    ConvBoundary {
        left_dom: usize,
        left_cod: usize,
        right_dom: usize,
        right_cod: usize,
    },
    #[error("codomain mismatch: {left_cod} vs {right_cod}")]
    Codomain { left_cod: usize, right_cod: usize },
    #[error("index out of range: {name} = {got} not in 1..={max}")]
    Index {
        name: &'static str,
        got: usize,
        max: usize,
    },
    #[error("rank mismatch: expected {expected} but word {position} has rank {got}")]
    Rank {
        expected: usize,
        position: usize,
        got: usize,
    },
}

pub type TermResult<T> = Result<T, TermError>;

impl HTerm {
    /// `g` after `f` (apply `f` first).
    pub fn compose(g: HTerm, f: HTerm) -> HTerm {
        HTerm::Compose(Box::new(g), Box::new(f))
    }

    pub fn tensor(f: HTerm, g: HTerm) -> HTerm {
        HTerm::Tensor(Box::new(f), Box::new(g))
    }

    /// Domain and codomain, or the first boundary clash found.
    pub fn infer_type(&self) -> TermResult<(usize, usize)> {
        match self {
            HTerm::Gen(kind) => Ok(kind.boundary()),
            HTerm::Id(n) => Ok((*n, *n)),
            HTerm::Sym(m, n) => Ok((m + n, n + m)),
            HTerm::Compose(g, f) => {
                let (g_dom, g_cod) = g.infer_type()?;
                let (f_dom, f_cod) = f.infer_type()?;
                if g_dom != f_cod {
                    return Err(TermError::Boundary {
                        left_dom: g_dom,
                        right_cod: f_cod,
                    });
                }
                Ok((f_dom, g_cod))
            }
            HTerm::Tensor(f, g) => {
                let (f_dom, f_cod) = f.infer_type()?;
                let (g_dom, g_cod) = g.infer_type()?;
                Ok((f_dom + g_dom, f_cod + g_cod))
            }
        }
    }

    /// Evaluate into bracket notation by structural recursion.
    pub fn eval(&self) -> TermResult<FMorphism> {
        self.infer_type()?;
        Ok(self.eval_unchecked())
    }

    fn eval_unchecked(&self) -> FMorphism {
        match self {
            HTerm::Gen(kind) => fcat::hopf_generator(*kind),
            HTerm::Id(n) => fcat::identity(*n),
            HTerm::Sym(m, n) => fcat::symmetry(*m, *n),
            HTerm::Compose(g, f) => {
                fcat::compose(&g.eval_unchecked(), &f.eval_unchecked())
                    .expect("well-typed term evaluates")
            }
            HTerm::Tensor(f, g) => fcat::tensor(&f.eval_unchecked(), &g.eval_unchecked()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            HTerm::Gen(_) | HTerm::Id(_) | HTerm::Sym(_, _) => 1,
            HTerm::Compose(a, b) | HTerm::Tensor(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }
}

/// `mu` applied `n - 1` times: the unique multiplication `n -> 1`.
/// Base cases: 0 strands give the unit, 1 strand the identity, 2 strands
/// the generator itself.
fn single_mu(n: usize) -> HTerm {
    match n {
        0 => HTerm::Gen(GenKind::Eta),
        1 => HTerm::Id(1),
        2 => HTerm::Gen(GenKind::Mu),
        _ => HTerm::compose(
            HTerm::Gen(GenKind::Mu),
            HTerm::tensor(single_mu(n - 1), HTerm::Id(1)),
        ),
    }
}

fn single_delta(n: usize) -> HTerm {
    match n {
        0 => HTerm::Gen(GenKind::Eps),
        1 => HTerm::Id(1),
        2 => HTerm::Gen(GenKind::Delta),
        _ => HTerm::compose(
            HTerm::tensor(single_delta(n - 1), HTerm::Id(1)),
            HTerm::Gen(GenKind::Delta),
        ),
    }
}

/// The multiplication with block sizes `ns`: a term of type `sum(ns) -> len(ns)`
/// multiplying each block of strands down to one.
pub fn iterated_mu(ns: &[usize]) -> HTerm {
    let mut it = ns.iter();
    match it.next() {
        None => HTerm::Id(0),
        Some(&first) => it.fold(single_mu(first), |acc, &n| {
            HTerm::tensor(acc, single_mu(n))
        }),
    }
}

/// The comultiplication with block sizes `ns`: a term of type
/// `len(ns) -> sum(ns)` copying each strand into a block.
pub fn iterated_delta(ns: &[usize]) -> HTerm {
    let mut it = ns.iter();
    match it.next() {
        None => HTerm::Id(0),
        Some(&first) => it.fold(single_delta(first), |acc, &n| {
            HTerm::tensor(acc, single_delta(n))
        }),
    }
}

/// A term of type `s -> s` evaluating to `[x_{sigma(1)}, ..., x_{sigma(s)}]`,
/// assembled from adjacent transpositions. The assignment is a homomorphism:
/// the result is independent of the decomposition.
pub fn perm_term(sigma: &Permutation) -> HTerm {
    let s = sigma.size();
    let slice = |i: usize| {
        HTerm::tensor(
            HTerm::Id(i - 1),
            HTerm::tensor(HTerm::Sym(1, 1), HTerm::Id(s - i - 1)),
        )
    };
    let mut swaps = sigma.adjacent_transpositions().into_iter();
    match swaps.next() {
        None => HTerm::Id(s),
        Some(first) => swaps.fold(slice(first), |acc, i| HTerm::compose(slice(i), acc)),
    }
}

/// The block transposition of `{1, ..., mn}` viewing it first as `m` rows of
/// length `n`, then as `n` rows of length `m`: position `(l-1)n + k` maps to
/// `(k-1)m + l`.
pub fn transpose_perm(m: usize, n: usize) -> Permutation {
    let mut map = vec![0usize; m * n];
    for l in 1..=m {
        for k in 1..=n {
            map[(l - 1) * n + k - 1] = (k - 1) * m + l;
        }
    }
    Permutation::from_one_line(map).expect("block transposition is a bijection")
}

/// The simultaneous multiplication `2m -> m`: strand `i` multiplies with
/// strand `m + i`.
pub fn power_mu(m: usize) -> HTerm {
    match m {
        0 => HTerm::Id(0),
        1 => HTerm::Gen(GenKind::Mu),
        _ => {
            let k = m - 1;
            HTerm::compose(
                HTerm::tensor(power_mu(k), HTerm::Gen(GenKind::Mu)),
                HTerm::tensor(
                    HTerm::Id(k),
                    HTerm::tensor(HTerm::Sym(1, k), HTerm::Id(1)),
                ),
            )
        }
    }
}

/// The simultaneous comultiplication `m -> 2m`: strand `i` copies onto
/// strands `i` and `m + i`.
pub fn power_delta(m: usize) -> HTerm {
    match m {
        0 => HTerm::Id(0),
        1 => HTerm::Gen(GenKind::Delta),
        _ => {
            let k = m - 1;
            HTerm::compose(
                HTerm::tensor(
                    HTerm::Id(k),
                    HTerm::tensor(HTerm::Sym(k, 1), HTerm::Id(1)),
                ),
                HTerm::tensor(power_delta(k), HTerm::Gen(GenKind::Delta)),
            )
        }
    }
}

fn power_gen(kind: GenKind, m: usize) -> HTerm {
    match m {
        0 => HTerm::Id(0),
        _ => (1..m).fold(HTerm::Gen(kind), |acc, _| {
            HTerm::tensor(acc, HTerm::Gen(kind))
        }),
    }
}

pub fn power_eta(m: usize) -> HTerm {
    power_gen(GenKind::Eta, m)
}

pub fn power_eps(m: usize) -> HTerm {
    power_gen(GenKind::Eps, m)
}

pub fn power_antipode(m: usize) -> HTerm {
    power_gen(GenKind::Antipode, m)
}

/// Convolution product of two parallel terms `m -> n`: copy the inputs,
/// run `f` and `g` side by side, multiply the outputs.
pub fn conv(f: HTerm, g: HTerm) -> TermResult<HTerm> {
    let (f_dom, f_cod) = f.infer_type()?;
    let (g_dom, g_cod) = g.infer_type()?;
    if (f_dom, f_cod) != (g_dom, g_cod) {
        return Err(TermError::ConvBoundary {
            left_dom: f_dom,
            left_cod: f_cod,
            right_dom: g_dom,
            right_cod: g_cod,
        });
    }
    Ok(HTerm::compose(
        power_mu(f_cod),
        HTerm::compose(HTerm::tensor(f, g), power_delta(f_dom)),
    ))
}

/// Wedge of `f: m -> n` and `g: m2 -> n`: run side by side, multiply the
/// outputs pointwise. Type `(m + m2) -> n`.
pub fn vee(f: HTerm, g: HTerm) -> TermResult<HTerm> {
    let (_, f_cod) = f.infer_type()?;
    let (_, g_cod) = g.infer_type()?;
    if f_cod != g_cod {
        return Err(TermError::Codomain {
            left_cod: f_cod,
            right_cod: g_cod,
        });
    }
    Ok(HTerm::compose(power_mu(f_cod), HTerm::tensor(f, g)))
}

/// The convolution unit `m -> n` as a term: delete all inputs, create all
/// outputs.
pub fn conv_unit(m: usize, n: usize) -> HTerm {
    HTerm::compose(power_eta(n), power_eps(m))
}

/// The single-letter morphism `m -> n` sending generator `i` to `x_j`
/// (inverted if `e = 1`) and every other generator to the empty word.
pub fn y_gen(i: usize, j: usize, e: u8, m: usize, n: usize) -> TermResult<HTerm> {
    if i == 0 || i > m {
        return Err(TermError::Index {
            name: "i",
            got: i,
            max: m,
        });
    }
    if j == 0 || j > n {
        return Err(TermError::Index {
            name: "j",
            got: j,
            max: n,
        });
    }
    if e > 1 {
        return Err(TermError::Index {
            name: "e",
            got: e as usize,
            max: 1,
        });
    }
    let keep_i = HTerm::tensor(
        power_eps(i - 1),
        HTerm::tensor(HTerm::Id(1), power_eps(m - i)),
    );
    let mid = if e == 1 {
        HTerm::Gen(GenKind::Antipode)
    } else {
        HTerm::Id(1)
    };
    let place_j = HTerm::tensor(
        power_eta(j - 1),
        HTerm::tensor(HTerm::Id(1), power_eta(n - j)),
    );
    Ok(HTerm::compose(place_j, HTerm::compose(mid, keep_i)))
}

/// Letter of rank `n` as a term `1 -> n`.
fn letter_term(index: usize, inv: bool, n: usize) -> HTerm {
    let mid = if inv {
        HTerm::Gen(GenKind::Antipode)
    } else {
        HTerm::Id(1)
    };
    HTerm::tensor(
        power_eta(index - 1),
        HTerm::tensor(mid, power_eta(n - index)),
    )
}

/// Expand a tuple of `m` reduced words of rank `n` into a term `m -> n`:
/// letters convolve within a word, words wedge across the tuple. Evaluating
/// the result recovers exactly `bracket(m, n, ws)`.
pub fn alpha(n: usize, ws: &[ReducedWord]) -> TermResult<HTerm> {
    for (i, w) in ws.iter().enumerate() {
        if w.rank() != n {
            return Err(TermError::Rank {
                expected: n,
                position: i + 1,
                got: w.rank(),
            });
        }
    }
    let word_term = |w: &ReducedWord| -> TermResult<HTerm> {
        let mut letters = w.letters().iter();
        match letters.next() {
            None => Ok(conv_unit(1, n)),
            Some(first) => {
                let mut acc = letter_term(first.index, first.inv, n);
                for l in letters {
                    acc = conv(acc, letter_term(l.index, l.inv, n))?;
                }
                Ok(acc)
            }
        }
    };
    let mut words = ws.iter();
    match words.next() {
        None => Ok(power_eta(n)),
        Some(first) => {
            let mut acc = word_term(first)?;
            for w in words {
                acc = vee(acc, word_term(w)?)?;
            }
            Ok(acc)
        }
    }
}

/// Restrict `f: (m + m2) -> n` to its first `m` inputs by feeding units into
/// the rest.
pub fn proj_left(f: HTerm, m: usize, m2: usize) -> TermResult<HTerm> {
    let (f_dom, _) = f.infer_type()?;
    if f_dom != m + m2 {
        return Err(TermError::Boundary {
            left_dom: f_dom,
            right_cod: m + m2,
        });
    }
    Ok(HTerm::compose(
        f,
        HTerm::tensor(HTerm::Id(m), power_eta(m2)),
    ))
}

/// Restrict `f: (m + m2) -> n` to its last `m2` inputs.
pub fn proj_right(f: HTerm, m: usize, m2: usize) -> TermResult<HTerm> {
    let (f_dom, _) = f.infer_type()?;
    if f_dom != m + m2 {
        return Err(TermError::Boundary {
            left_dom: f_dom,
            right_cod: m + m2,
        });
    }
    Ok(HTerm::compose(
        f,
        HTerm::tensor(power_eta(m), HTerm::Id(m2)),
    ))
}

// Printing follows the CLI grammar: `x` binds tighter than `.`, both parse
// right-associatively, so parentheses appear only where reparsing would
// otherwise regroup.
impl fmt::Display for HTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn comp_child_left(t: &HTerm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if matches!(t, HTerm::Compose(_, _)) {
                write!(f, "(")?;
                fmt::Display::fmt(t, f)?;
                write!(f, ")")
            } else {
                fmt::Display::fmt(t, f)
            }
        }
        fn tens_child(t: &HTerm, f: &mut fmt::Formatter<'_>, left: bool) -> fmt::Result {
            let needs = match t {
                HTerm::Compose(_, _) => true,
                HTerm::Tensor(_, _) => left,
                _ => false,
            };
            if needs {
                write!(f, "(")?;
                fmt::Display::fmt(t, f)?;
                write!(f, ")")
            } else {
                fmt::Display::fmt(t, f)
            }
        }
        match self {
            HTerm::Gen(kind) => write!(f, "{}", kind.name()),
            HTerm::Id(n) => write!(f, "id({n})"),
            HTerm::Sym(m, n) => write!(f, "P({m},{n})"),
            HTerm::Compose(g, h) => {
                comp_child_left(g, f)?;
                write!(f, " . ")?;
                fmt::Display::fmt(h, f)
            }
            HTerm::Tensor(a, b) => {
                tens_child(a, f, true)?;
                write!(f, " x ")?;
                tens_child(b, f, false)
            }
        }
    }
}
