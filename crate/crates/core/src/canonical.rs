//! Canonical factorization of Hopf terms and the equality decision procedure.
//!
//! Every morphism denoted by an `HTerm` factors as
//! `multiply-blocks . route . invert-some . copy-blocks`: a comultiplication
//! layer with block sizes `p`, an antipode layer with bits `e`, a routing
//! permutation `sigma`, and a multiplication layer with block sizes `q`.
//! `CanonicalForm` stores exactly this data, normalized so that the word
//! tuple it denotes is freely reduced and the routing is stable (within each
//! target block, sources appear in increasing order). Under those two
//! conditions the factorization is unique, so structural equality of
//! canonical forms decides equality of morphisms.
//!
//! Two independent normalizers compute the form: `normalize_eval` goes
//! through bracket evaluation and re-encodes the resulting words, while
//! `normalize_rewrite` never evaluates: it absorbs the term's generators
//! one at a time into a staged factorization, then reduces and re-sorts.
//! Their agreement on random terms is the central correctness check of the
//! whole crate.

use std::fmt;
use thiserror::Error;

use crate::fcat::{self, FMorphism};
use crate::hterm::{iterated_delta, iterated_mu, perm_term, HTerm, TermError, TermResult};
use crate::perm::Permutation;
use crate::words::{reduce, Letter, ReducedWord};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CanonError {
    #[error("non-canonical form: {reason}")]
    Invalid { reason: String },
    #[error("cannot peel: size is 0")]
    CannotPeel,
    #[error("boundary mismatch: {left_dom} -> {left_cod} vs {right_dom} -> {right_cod}")]
    Boundary {
        left_dom: usize,
        left_cod: usize,
        right_dom: usize,
        right_cod: usize,
    },
    #[error(transparent)]
    Term(#[from] TermError),
}

pub type CanonResult<T> = Result<T, CanonError>;

/// The canonical factorization data of a morphism `m -> n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    m: usize,
    n: usize,
    p: Vec<usize>,
    q: Vec<usize>,
    e: Vec<u8>,
    sigma: Permutation,
}

fn invalid(reason: impl Into<String>) -> CanonError {
    CanonError::Invalid {
        reason: reason.into(),
    }
}

impl CanonicalForm {
    /// Validate and build. Checks the shape (`len(p) = m`, `len(q) = n`,
    /// `sum(p) = sum(q) = len(e) = size(sigma)`, bits are bits) and
    /// canonicality (reduced words, stable routing).
    pub fn new(
        m: usize,
        n: usize,
        p: Vec<usize>,
        q: Vec<usize>,
        e: Vec<u8>,
        sigma: Permutation,
    ) -> CanonResult<CanonicalForm> {
        if p.len() != m {
            return Err(invalid(format!("p has length {}, domain is {m}", p.len())));
        }
        if q.len() != n {
            return Err(invalid(format!(
                "q has length {}, codomain is {n}",
                q.len()
            )));
        }
        let s: usize = p.iter().sum();
        let s_q: usize = q.iter().sum();
        if s != s_q {
            return Err(invalid(format!("sum(p) = {s} but sum(q) = {s_q}")));
        }
        if e.len() != s {
            return Err(invalid(format!("e has length {}, size is {s}", e.len())));
        }
        if sigma.size() != s {
            return Err(invalid(format!(
                "sigma has size {}, size is {s}",
                sigma.size()
            )));
        }
        if let Some(k) = e.iter().position(|&b| b > 1) {
            return Err(invalid(format!("e[{}] = {} is not a bit", k + 1, e[k])));
        }
        let form = CanonicalForm {
            m,
            n,
            p,
            q,
            e,
            sigma,
        };
        // reducedness: no adjacent cancelling letters within a word
        let block_of = form.slot_blocks();
        let mut k = 0;
        for (i, &pi) in form.p.iter().enumerate() {
            for pos in 0..pi {
                if pos > 0 {
                    let prev = k - 1;
                    let same_block =
                        block_of[form.sigma.apply(k + 1) - 1] == block_of[form.sigma.apply(prev + 1) - 1];
                    if same_block && form.e[k] != form.e[prev] {
                        return Err(invalid(format!(
                            "word {} is not reduced at letter {}",
                            i + 1,
                            pos + 1
                        )));
                    }
                }
                k += 1;
            }
        }
        // stable routing: within each target block, slot order = source order
        let inv = form.sigma.inverse();
        let mut slot = 1;
        for (j, &qj) in form.q.iter().enumerate() {
            let mut last = 0;
            for _ in 0..qj {
                let src = inv.apply(slot);
                if src <= last {
                    return Err(invalid(format!(
                        "routing into block {} is not stable",
                        j + 1
                    )));
                }
                last = src;
                slot += 1;
            }
        }
        Ok(form)
    }

    /// The convolution unit `m -> n`: all blocks empty, nothing routed.
    pub fn unit(m: usize, n: usize) -> CanonicalForm {
        CanonicalForm {
            m,
            n,
            p: vec![0; m],
            q: vec![0; n],
            e: vec![],
            sigma: Permutation::identity(0),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> &[usize] {
        &self.p
    }

    pub fn q(&self) -> &[usize] {
        &self.q
    }

    pub fn e(&self) -> &[u8] {
        &self.e
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    /// Total letter count; 0 exactly for the convolution unit.
    pub fn size(&self) -> usize {
        self.e.len()
    }

    /// For each slot (1-based, indexed at `slot - 1`) the 1-based target
    /// block containing it.
    fn slot_blocks(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        for (j, &qj) in self.q.iter().enumerate() {
            for _ in 0..qj {
                out.push(j + 1);
            }
        }
        out
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nats = |xs: &[usize]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let bits = self
            .e
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(
            f,
            "{{m:{},n:{},p:[{}],q:[{}],e:[{}],sigma:{}}}",
            self.m,
            self.n,
            nats(&self.p),
            nats(&self.q),
            bits,
            self.sigma
        )
    }
}

/// Read the canonical form straight off a tuple of reduced words: word
/// lengths become `p`, letter signs become `e`, generator usage counts
/// become `q`, and each letter routes to the next free slot of its
/// generator's block.
pub fn encode(f: &FMorphism) -> CanonicalForm {
    let m = f.dom();
    let n = f.cod();
    let p: Vec<usize> = f.words().iter().map(|w| w.len()).collect();
    let mut q = vec![0usize; n];
    for w in f.words() {
        for l in w.letters() {
            q[l.index - 1] += 1;
        }
    }
    let mut next = vec![0usize; n];
    let mut start = vec![0usize; n];
    let mut acc = 0;
    for j in 0..n {
        start[j] = acc;
        acc += q[j];
    }
    let mut e = Vec::with_capacity(acc);
    let mut map = Vec::with_capacity(acc);
    for w in f.words() {
        for l in w.letters() {
            let j = l.index - 1;
            e.push(u8::from(l.inv));
            map.push(start[j] + next[j] + 1);
            next[j] += 1;
        }
    }
    let sigma = Permutation::from_one_line(map).expect("slot assignment is a bijection");
    CanonicalForm::new(m, n, p, q, e, sigma).expect("encoding of reduced words is canonical")
}

/// The factored term: copy inputs into blocks of sizes `p`, invert where
/// `e` says so, route by `sigma`, multiply blocks of sizes `q`.
pub fn decode(c: &CanonicalForm) -> HTerm {
    let s = c.size();
    let mut layer = HTerm::Id(0);
    for (k, &bit) in c.e.iter().enumerate() {
        let factor = if bit == 1 {
            HTerm::Gen(fcat::GenKind::Antipode)
        } else {
            HTerm::Id(1)
        };
        layer = if k == 0 {
            factor
        } else {
            HTerm::tensor(layer, factor)
        };
    }
    if s == 0 {
        layer = HTerm::Id(0);
    }
    HTerm::compose(
        iterated_mu(&c.q),
        HTerm::compose(
            perm_term(&c.sigma),
            HTerm::compose(layer, iterated_delta(&c.p)),
        ),
    )
}

/// The word tuple the form denotes; inverse to `encode`.
pub fn to_words(c: &CanonicalForm) -> Vec<ReducedWord> {
    let block_of = c.slot_blocks();
    let mut out = Vec::with_capacity(c.m);
    let mut k = 0;
    for &pi in &c.p {
        let letters = (0..pi).map(|_| {
            let l = Letter {
                index: block_of[c.sigma.apply(k + 1) - 1],
                inv: c.e[k] == 1,
            };
            k += 1;
            l
        });
        let letters: Vec<Letter> = letters.collect();
        out.push(reduce(c.n, letters).expect("canonical letters are in range and reduced"));
    }
    out
}

/// Normalize by evaluating to bracket notation and re-reading the words.
pub fn normalize_eval(t: &HTerm) -> TermResult<CanonicalForm> {
    Ok(encode(&t.eval()?))
}

// The staged factorization used by the rewrite normalizer. Each source word
// is a sequence of letters, each letter carrying the index of the target
// block it currently routes into and its antipode bit. Block sizes, the
// routing permutation and the antipode layer are all implicit: they are read
// off at the end by a stable scan. Absorbing a generator post-composed at a
// given block offset is a local update:
//
//   multiply     merge two adjacent blocks (letters re-target the union)
//   unit         insert an empty block
//   counit       delete a block and every letter routed into it
//   antipode     flip the bit of every letter routed into the block
//   copy         split a block in two; each letter routed into it becomes
//                two adjacent letters, in word order for positive letters
//                and reversed for inverted ones
//   block swap   renumber two adjacent runs of blocks
//
// After each step, words are reduced left to right (adjacent letters with
// the same target block and opposite bits cancel). Every update preserves
// the denoted morphism; the audited variant checks that claim step by step.
struct Staged {
    blocks: usize,
    words: Vec<Vec<(usize, u8)>>,
}

pub(crate) enum Slice {
    Gen { offset: usize, kind: fcat::GenKind },
    Swap { offset: usize, c: usize, d: usize },
}

/// Serialize a term into single-generator layers, leftmost strand offset
/// first, in application order.
pub(crate) fn flatten(t: &HTerm, offset: usize, out: &mut Vec<Slice>) -> (usize, usize) {
    match t {
        HTerm::Id(n) => (*n, *n),
        HTerm::Gen(kind) => {
            out.push(Slice::Gen {
                offset,
                kind: *kind,
            });
            kind.boundary()
        }
        HTerm::Sym(c, d) => {
            if *c > 0 && *d > 0 {
                out.push(Slice::Swap {
                    offset,
                    c: *c,
                    d: *d,
                });
            }
            (c + d, c + d)
        }
        HTerm::Compose(g, f) => {
            let (f_dom, _) = flatten(f, offset, out);
            let (_, g_cod) = flatten(g, offset, out);
            (f_dom, g_cod)
        }
        HTerm::Tensor(f, g) => {
            let (f_dom, f_cod) = flatten(f, offset, out);
            let (g_dom, g_cod) = flatten(g, offset + f_cod, out);
            (f_dom + g_dom, f_cod + g_cod)
        }
    }
}

impl Staged {
    fn identity(m: usize) -> Staged {
        Staged {
            blocks: m,
            words: (0..m).map(|i| vec![(i, 0)]).collect(),
        }
    }

    fn absorb(&mut self, slice: &Slice) {
        match *slice {
            Slice::Gen { offset: a, kind } => match kind {
                fcat::GenKind::Mu => {
                    for w in &mut self.words {
                        for l in w.iter_mut() {
                            if l.0 > a {
                                l.0 -= 1;
                            }
                        }
                    }
                    self.blocks -= 1;
                }
                fcat::GenKind::Eta => {
                    for w in &mut self.words {
                        for l in w.iter_mut() {
                            if l.0 >= a {
                                l.0 += 1;
                            }
                        }
                    }
                    self.blocks += 1;
                }
                fcat::GenKind::Eps => {
                    for w in &mut self.words {
                        w.retain(|l| l.0 != a);
                        for l in w.iter_mut() {
                            if l.0 > a {
                                l.0 -= 1;
                            }
                        }
                    }
                    self.blocks -= 1;
                }
                fcat::GenKind::Antipode => {
                    for w in &mut self.words {
                        for l in w.iter_mut() {
                            if l.0 == a {
                                l.1 ^= 1;
                            }
                        }
                    }
                }
                fcat::GenKind::Delta => {
                    for w in &mut self.words {
                        let mut split = Vec::with_capacity(w.len());
                        for &(blk, bit) in w.iter() {
                            if blk == a {
                                if bit == 0 {
                                    split.push((a, 0));
                                    split.push((a + 1, 0));
                                } else {
                                    split.push((a + 1, 1));
                                    split.push((a, 1));
                                }
                            } else if blk > a {
                                split.push((blk + 1, bit));
                            } else {
                                split.push((blk, bit));
                            }
                        }
                        *w = split;
                    }
                    self.blocks += 1;
                }
            },
            Slice::Swap { offset: a, c, d } => {
                for w in &mut self.words {
                    for l in w.iter_mut() {
                        if l.0 >= a && l.0 < a + c {
                            l.0 += d;
                        } else if l.0 >= a + c && l.0 < a + c + d {
                            l.0 -= c;
                        }
                    }
                }
            }
        }
        self.reduce_words();
    }

    fn reduce_words(&mut self) {
        for w in &mut self.words {
            let mut stack: Vec<(usize, u8)> = Vec::with_capacity(w.len());
            for &l in w.iter() {
                match stack.last() {
                    Some(&top) if top.0 == l.0 && top.1 != l.1 => {
                        stack.pop();
                    }
                    _ => stack.push(l),
                }
            }
            *w = stack;
        }
    }

    /// Read off the canonical form: block sizes by counting, routing by a
    /// stable scan in source order.
    fn extract(&self) -> CanonicalForm {
        let m = self.words.len();
        let n = self.blocks;
        let p: Vec<usize> = self.words.iter().map(|w| w.len()).collect();
        let mut q = vec![0usize; n];
        for w in &self.words {
            for &(blk, _) in w {
                q[blk] += 1;
            }
        }
        let mut start = vec![0usize; n];
        let mut acc = 0;
        for j in 0..n {
            start[j] = acc;
            acc += q[j];
        }
        let mut next = vec![0usize; n];
        let mut e = Vec::with_capacity(acc);
        let mut map = Vec::with_capacity(acc);
        for w in &self.words {
            for &(blk, bit) in w {
                e.push(bit);
                map.push(start[blk] + next[blk] + 1);
                next[blk] += 1;
            }
        }
        let s_p: usize = p.iter().sum();
        let s_q: usize = q.iter().sum();
        assert_eq!(s_p, s_q, "staged form lost a letter");
        let sigma = Permutation::from_one_line(map).expect("staged routing is a bijection");
        CanonicalForm::new(m, n, p, q, e, sigma).expect("staged form extracts canonically")
    }

    /// The bracket the staged form denotes, for auditing.
    fn to_bracket(&self) -> FMorphism {
        let n = self.blocks;
        let words = self
            .words
            .iter()
            .map(|w| {
                reduce(
                    n,
                    w.iter().map(|&(blk, bit)| Letter {
                        index: blk + 1,
                        inv: bit == 1,
                    }),
                )
                .expect("staged letters are in range")
            })
            .collect();
        fcat::bracket(self.words.len(), n, words).expect("staged form is a bracket")
    }
}

fn slice_morphism(slice: &Slice, width: usize) -> FMorphism {
    let (body, used) = match *slice {
        Slice::Gen { kind, .. } => (fcat::hopf_generator(kind), kind.boundary().0),
        Slice::Swap { c, d, .. } => (fcat::symmetry(c, d), c + d),
    };
    let offset = match *slice {
        Slice::Gen { offset, .. } | Slice::Swap { offset, .. } => offset,
    };
    fcat::tensor(
        &fcat::tensor(&fcat::identity(offset), &body),
        &fcat::identity(width - offset - used),
    )
}

fn rewrite_with(t: &HTerm, audit: bool) -> TermResult<CanonicalForm> {
    let (m, _) = t.infer_type()?;
    let mut slices = Vec::new();
    flatten(t, 0, &mut slices);
    let mut staged = Staged::identity(m);
    let mut running = if audit { Some(fcat::identity(m)) } else { None };
    for slice in &slices {
        if let Some(prefix) = running.as_mut() {
            let layer = slice_morphism(slice, prefix.cod());
            *prefix = fcat::compose(&layer, prefix).expect("slice layer fits the prefix");
        }
        staged.absorb(slice);
        if let Some(prefix) = &running {
            assert_eq!(
                &staged.to_bracket(),
                prefix,
                "staged form diverged from the evaluated prefix"
            );
        }
    }
    let form = staged.extract();
    if let Some(prefix) = &running {
        assert_eq!(
            &to_words(&form),
            &prefix.words(),
            "extraction changed the denoted words"
        );
    }
    Ok(form)
}

/// Normalize without evaluating: absorb the term's generators one at a time
/// into a staged factorization, reducing after every step, then read the
/// form off by a stable scan.
pub fn normalize_rewrite(t: &HTerm) -> TermResult<CanonicalForm> {
    rewrite_with(t, false)
}

/// `normalize_rewrite` with a step-by-step soundness audit: after every
/// absorbed generator, the staged form is compared against the evaluated
/// prefix of the term. Panics on divergence.
pub fn normalize_rewrite_audited(t: &HTerm) -> TermResult<CanonicalForm> {
    rewrite_with(t, true)
}

/// Split off the leading letter: the first letter of the first nonempty
/// word, returned as a single-letter generator index triple `(i, j, e)`
/// together with the remainder form. Convolving the triple's generator back
/// onto the remainder recovers the input.
pub fn peel(c: &CanonicalForm) -> CanonResult<((usize, usize, u8), CanonicalForm)> {
    if c.size() == 0 {
        return Err(CanonError::CannotPeel);
    }
    let ws = to_words(c);
    let i = ws
        .iter()
        .position(|w| !w.is_empty())
        .expect("positive size means some word is nonempty");
    let first = ws[i].letters()[0];
    let rest: Vec<Letter> = ws[i].letters()[1..].to_vec();
    let mut remainder = ws;
    remainder[i] = reduce(c.n, rest).expect("suffix of a reduced word is reduced");
    let f = fcat::bracket(c.m, c.n, remainder).expect("remainder words keep rank");
    Ok((
        (i + 1, first.index, u8::from(first.inv)),
        encode(&f),
    ))
}

/// Decide equality of the denoted morphisms. Errors if the boundaries
/// disagree (then the terms are not even comparable).
pub fn equal(t: &HTerm, u: &HTerm) -> CanonResult<bool> {
    let (t_dom, t_cod) = t.infer_type()?;
    let (u_dom, u_cod) = u.infer_type()?;
    if (t_dom, t_cod) != (u_dom, u_cod) {
        return Err(CanonError::Boundary {
            left_dom: t_dom,
            left_cod: t_cod,
            right_dom: u_dom,
            right_cod: u_cod,
        });
    }
    Ok(normalize_eval(t)? == normalize_eval(u)?)
}
