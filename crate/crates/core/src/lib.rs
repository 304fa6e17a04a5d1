//! Exact symbolic calculus for Hopf-monoid terms and finitely generated
//! free groups.
//!
//! The crate has two interlocking halves. `words` and `fcat` implement the
//! concrete side: reduced words in a free group and homomorphism tuples in
//! bracket notation, with composition by substitution. `hterm` implements
//! the syntactic side: a term language over the Hopf structure constants
//! `mu`, `eta`, `delta`, `eps`, `S` plus identities and block swaps, with an
//! evaluator into bracket notation. `canonical` ties the halves together: a
//! normal form for terms, an encoder from brackets, and a rewrite engine
//! that normalizes terms without evaluating them. `axioms` provides seeded
//! randomized law checking over all of it, and `cli` exposes the whole
//! toolkit as a command-line calculator.

pub mod axioms;
pub mod canonical;
pub mod cli;
pub mod fcat;
pub mod hterm;
pub mod parse;
pub mod perm;
pub mod render;
pub mod words;

pub use axioms::{
    random_canonical, random_term, random_term_from, random_tuple, random_word, run_suite, Failure,
    FuzzConfig, SuiteReport, UnknownSuite, SUITES,
};
pub use canonical::{
    decode, encode, equal, normalize_eval, normalize_rewrite, normalize_rewrite_audited, peel,
    to_words, CanonError, CanonResult, CanonicalForm,
};
pub use fcat::{
    bracket, compose, conv_unit, convolve, hopf_generator, identity, symmetry, tensor, CatError,
    CatResult, FMorphism, GenKind,
};
pub use hterm::{
    alpha, conv, iterated_delta, iterated_mu, perm_term, power_antipode, power_delta, power_eps,
    power_eta, power_mu, proj_left, proj_right, transpose_perm, vee, y_gen, HTerm, TermError,
    TermResult,
};
pub use parse::{parse_bracket, parse_canonical, parse_term, ParseError, ParseResult};
pub use perm::{PermError, Permutation};
pub use render::render;
pub use words::{reduce, Letter, ReducedWord, WordError, WordResult};
