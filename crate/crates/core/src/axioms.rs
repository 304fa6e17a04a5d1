//! Seeded randomized checking of the crate's laws.
//!
//! Everything here is deterministic: a case with number `i` under
//! configuration seed `s` runs with its own generator seeded by `s + i`, so
//! a reported failure seed reruns exactly (set the seed to the reported
//! value and the count to 1). Reports serialize as line-oriented text for
//! golden-file use.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::canonical::{
    decode, encode, normalize_eval, normalize_rewrite, peel, to_words, CanonicalForm,
};
use crate::fcat::{self, bracket, compose, convolve, identity, tensor, FMorphism, GenKind};
use crate::hterm::{
    alpha, conv, conv_unit, iterated_delta, iterated_mu, perm_term, power_antipode, proj_left,
    proj_right, transpose_perm, vee, y_gen, HTerm,
};
use crate::perm::Permutation;
use crate::words::{reduce, Letter, ReducedWord};

/// Knobs for the randomized suites. `count` is the number of randomized
/// cases; deterministic suites ignore it and run their fixed battery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub max_nodes: usize,
    pub max_boundary: usize,
    pub count: usize,
}

impl Default for FuzzConfig {
    fn default() -> FuzzConfig {
        FuzzConfig {
            seed: 1,
            max_nodes: 30,
            max_boundary: 4,
            count: 1000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub seed: u64,
    pub counterexample: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SUITE {} CASES {} FAILURES {}",
            self.name,
            self.cases,
            self.failures.len()
        )?;
        for failure in &self.failures {
            write!(f, "\nFAILURE seed={} {}", failure.seed, failure.counterexample)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("unknown suite: {0}")]
pub struct UnknownSuite(pub String);

/// Suite names with one-line descriptions, in listing order.
pub const SUITES: &[(&str, &str)] = &[
    ("words", "free reduction and group laws; substitution is a homomorphism"),
    ("category", "identities, associativity, and functoriality of evaluation"),
    (
        "hopf-axioms",
        "(co)associativity, (co)units, bialgebra, antipode, commutativity, involution",
    ),
    ("delta-mu", "comultiplying a product routes through the block transposition"),
    ("interchange", "convolution of wedges is the wedge of convolutions"),
    ("triangle", "word expansion evaluates back to its bracket"),
    ("convolution", "convolution transports to pointwise word multiplication"),
    ("normalizers", "rewrite and eval normalizers agree; encode/decode round-trips"),
    ("peeling", "peeling terminates in size steps and reconvolves to the input"),
    ("coproduct", "wedge and projections are mutually inverse; zero is initial"),
];

/// Random reduced word: up to `max_len` uniform letters, then reduced.
pub fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> ReducedWord {
    if rank == 0 {
        return ReducedWord::empty(0);
    }
    let len = rng.random_range(0..=max_len);
    let letters = (0..len).map(|_| Letter {
        index: rng.random_range(1..=rank),
        inv: rng.random::<bool>(),
    });
    let letters: Vec<Letter> = letters.collect();
    reduce(rank, letters).expect("random letters are in range")
}

pub fn random_tuple(rng: &mut impl Rng, m: usize, n: usize, max_len: usize) -> Vec<ReducedWord> {
    (0..m).map(|_| random_word(rng, n, max_len)).collect()
}

pub fn random_canonical(rng: &mut impl Rng, m: usize, n: usize, max_len: usize) -> CanonicalForm {
    let ws = random_tuple(rng, m, n, max_len);
    encode(&bracket(m, n, ws).expect("random tuple has uniform rank"))
}

fn random_atom(rng: &mut impl Rng, max_boundary: usize) -> HTerm {
    match rng.random_range(0..3) {
        0 => {
            let kinds = [
                GenKind::Mu,
                GenKind::Eta,
                GenKind::Delta,
                GenKind::Eps,
                GenKind::Antipode,
            ];
            HTerm::Gen(kinds[rng.random_range(0..kinds.len())])
        }
        1 => HTerm::Id(rng.random_range(0..=max_boundary)),
        _ => {
            if max_boundary < 2 {
                HTerm::Id(max_boundary)
            } else {
                let c = rng.random_range(1..max_boundary);
                let d = rng.random_range(1..=(max_boundary - c));
                HTerm::Sym(c, d)
            }
        }
    }
}

/// The term `from -> to` that keeps the first strands and deletes or
/// creates the rest.
fn boundary_adapter(from: usize, to: usize) -> HTerm {
    if from > to {
        HTerm::tensor(HTerm::Id(to), crate::hterm::power_eps(from - to))
    } else {
        HTerm::tensor(HTerm::Id(from), crate::hterm::power_eta(to - from))
    }
}

fn random_free(rng: &mut impl Rng, budget: usize, max_boundary: usize) -> HTerm {
    if budget <= 1 {
        return random_atom(rng, max_boundary);
    }
    match rng.random_range(0..10) {
        0..=3 => {
            let f = random_free(rng, budget / 2, max_boundary);
            let g = random_free(rng, budget / 2, max_boundary);
            let (_, f_cod) = f.infer_type().expect("generated terms are well-typed");
            let (g_dom, _) = g.infer_type().expect("generated terms are well-typed");
            if f_cod == g_dom {
                HTerm::compose(g, f)
            } else {
                HTerm::compose(g, HTerm::compose(boundary_adapter(f_cod, g_dom), f))
            }
        }
        4..=6 => HTerm::tensor(
            random_free(rng, budget / 2, max_boundary),
            random_free(rng, budget / 2, max_boundary),
        ),
        _ => random_atom(rng, max_boundary),
    }
}

/// Random well-typed term drawn from `rng`. Boundaries are forced by
/// padding with unit/counit layers when requested. The node budget is best
/// effort: the builder retries with smaller budgets until the term fits,
/// which always succeeds under the default configuration.
pub fn random_term_from(
    rng: &mut impl Rng,
    max_nodes: usize,
    max_boundary: usize,
    dom: Option<usize>,
    cod: Option<usize>,
) -> HTerm {
    let mut budget = max_nodes;
    let mut best: Option<HTerm> = None;
    for _ in 0..16 {
        let core = random_free(rng, budget, max_boundary);
        let (core_dom, _) = core.infer_type().expect("generated terms are well-typed");
        let mut t = core;
        if let Some(d) = dom {
            if d != core_dom {
                t = HTerm::compose(t, boundary_adapter(d, core_dom));
            }
        }
        if let Some(c) = cod {
            let (_, t_cod) = t.infer_type().expect("generated terms are well-typed");
            if c != t_cod {
                t = HTerm::compose(boundary_adapter(t_cod, c), t);
            }
        }
        if t.node_count() <= max_nodes {
            return t;
        }
        if best.as_ref().map_or(true, |b| t.node_count() < b.node_count()) {
            best = Some(t);
        }
        budget = (budget / 2).max(1);
    }
    best.expect("at least one candidate was built")
}

/// One random well-typed term, deterministic in `cfg.seed`.
pub fn random_term(cfg: &FuzzConfig, dom: Option<usize>, cod: Option<usize>) -> HTerm {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    random_term_from(&mut rng, cfg.max_nodes, cfg.max_boundary, dom, cod)
}

struct Run {
    report: SuiteReport,
}

impl Run {
    fn new(name: &str) -> Run {
        Run {
            report: SuiteReport {
                name: name.to_string(),
                cases: 0,
                failures: Vec::new(),
            },
        }
    }

    fn check(&mut self, seed: u64, ok: bool, counterexample: impl FnOnce() -> String) {
        self.report.cases += 1;
        if !ok {
            self.report.failures.push(Failure {
                seed,
                counterexample: counterexample(),
            });
        }
    }
}

fn case_seeds(cfg: &FuzzConfig) -> impl Iterator<Item = u64> + '_ {
    (0..cfg.count).map(|i| cfg.seed.wrapping_add(i as u64))
}

fn tuple_display(ws: &[ReducedWord]) -> String {
    let inner = ws
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    format!("({inner})")
}

fn suite_words(cfg: &FuzzConfig) -> SuiteReport {
    let mut run = Run::new("words");
    for seed in case_seeds(cfg) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rank = rng.random_range(0..=cfg.max_boundary);
        let u = random_word(&mut rng, rank, 8);
        let v = random_word(&mut rng, rank, 8);
        let w = random_word(&mut rng, rank, 8);
        let detail = || format!("u={u} v={v} w={w} rank={rank}");
        let assoc = u.mul(&v).unwrap().mul(&w).unwrap() == u.mul(&v.mul(&w).unwrap()).unwrap();
        run.check(seed, assoc, detail);
        let inverse = u.mul(&u.inv()).unwrap() == ReducedWord::empty(rank)
            && u.inv().mul(&u).unwrap() == ReducedWord::empty(rank);
        run.check(seed, inverse, detail);
        let antihom = u.mul(&v).unwrap().inv() == v.inv().mul(&u.inv()).unwrap();
        run.check(seed, antihom, detail);
        let n2 = rng.random_range(0..=cfg.max_boundary);
        let ws = random_tuple(&mut rng, rank, n2, 6);
        let sub_hom = u.mul(&v).unwrap().substitute(&ws, n2).unwrap()
            == u.substitute(&ws, n2)
                .unwrap()
                .mul(&v.substitute(&ws, n2).unwrap())
                .unwrap();
        run.check(seed, sub_hom, || {
            format!("u={u} v={v} into {}", tuple_display(&ws))
        });
    }
    run.report
}

fn suite_category(cfg: &FuzzConfig) -> SuiteReport {
    let mut run = Run::new("category");
    for seed in case_seeds(cfg) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = rng.random_range(0..=cfg.max_boundary);
        let b = rng.random_range(0..=cfg.max_boundary);
        let c = rng.random_range(0..=cfg.max_boundary);
        let d = rng.random_range(0..=cfg.max_boundary);
        let f = random_term_from(&mut rng, cfg.max_nodes, cfg.max_boundary, Some(a), Some(b));
        let g = random_term_from(&mut rng, cfg.max_nodes, cfg.max_boundary, Some(b), Some(c));
        let h = random_term_from(&mut rng, cfg.max_nodes, cfg.max_boundary, Some(c), Some(d));
        let detail = || format!("f={f} g={g} h={h}");
        let fe = f.eval().unwrap();
        let ge = g.eval().unwrap();
        let he = h.eval().unwrap();
        let functorial_comp =
            HTerm::compose(g.clone(), f.clone()).eval().unwrap() == compose(&ge, &fe).unwrap();
        run.check(seed, functorial_comp, detail);
        let functorial_tens =
            HTerm::tensor(f.clone(), g.clone()).eval().unwrap() == tensor(&fe, &ge);
        run.check(seed, functorial_tens, detail);
        let unit_laws = compose(&identity(b), &fe).unwrap() == fe
            && compose(&fe, &identity(a)).unwrap() == fe;
        run.check(seed, unit_laws, detail);
        let assoc = compose(&he, &compose(&ge, &fe).unwrap()).unwrap()
            == compose(&compose(&he, &ge).unwrap(), &fe).unwrap();
        run.check(seed, assoc, detail);
    }
    run.report
}

fn suite_hopf_axioms(cfg: &FuzzConfig) -> SuiteReport {
    let mut run = Run::new("hopf-axioms");
    let seed = cfg.seed;
    let mu = fcat::hopf_generator(GenKind::Mu);
    let eta = fcat::hopf_generator(GenKind::Eta);
    let delta = fcat::hopf_generator(GenKind::Delta);
    let eps = fcat::hopf_generator(GenKind::Eps);
    let s = fcat::hopf_generator(GenKind::Antipode);
    let id1 = identity(1);
    let p11 = fcat::symmetry(1, 1);
    let mut law = |name: &str, lhs: FMorphism, rhs: FMorphism| {
        run.check(seed, lhs == rhs, || format!("{name}: {lhs} != {rhs}"));
    };
    law(
        "associativity",
        compose(&mu, &tensor(&mu, &id1)).unwrap(),
        compose(&mu, &tensor(&id1, &mu)).unwrap(),
    );
    law(
        "left unit",
        compose(&mu, &tensor(&eta, &id1)).unwrap(),
        id1.clone(),
    );
    law(
        "right unit",
        compose(&mu, &tensor(&id1, &eta)).unwrap(),
        id1.clone(),
    );
    law(
        "coassociativity",
        compose(&tensor(&delta, &id1), &delta).unwrap(),
        compose(&tensor(&id1, &delta), &delta).unwrap(),
    );
    law(
        "left counit",
        compose(&tensor(&eps, &id1), &delta).unwrap(),
        id1.clone(),
    );
    law(
        "right counit",
        compose(&tensor(&id1, &eps), &delta).unwrap(),
        id1.clone(),
    );
    law("counit of unit", compose(&eps, &eta).unwrap(), identity(0));
    law(
        "counit of product",
        compose(&eps, &mu).unwrap(),
        tensor(&eps, &eps),
    );
    law(
        "coproduct of unit",
        compose(&delta, &eta).unwrap(),
        tensor(&eta, &eta),
    );
    law(
        "bialgebra",
        compose(&delta, &mu).unwrap(),
        compose(
            &compose(&tensor(&mu, &mu), &tensor(&tensor(&id1, &p11), &id1)).unwrap(),
            &tensor(&delta, &delta),
        )
        .unwrap(),
    );
    let unit_form = compose(&eta, &eps).unwrap();
    law(
        "left antipode",
        compose(&mu, &compose(&tensor(&s, &id1), &delta).unwrap()).unwrap(),
        unit_form.clone(),
    );
    law(
        "right antipode",
        compose(&mu, &compose(&tensor(&id1, &s), &delta).unwrap()).unwrap(),
        unit_form,
    );
    law("commutativity", compose(&mu, &p11).unwrap(), mu.clone());
    law("involution", compose(&s, &s).unwrap(), id1);
    // generalized (co)associativity over all block shapes with up to three
    // blocks of size up to three
    for m in 0..=3usize {
        let mut shapes: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..m {
            shapes = shapes
                .into_iter()
                .flat_map(|v| {
                    (0..=3usize).map(move |k| {
                        let mut v = v.clone();
                        v.push(k);
                        v
                    })
                })
                .collect();
        }
        for ks in shapes {
            let total: usize = ks.iter().sum();
            let lhs = HTerm::compose(iterated_mu(&[m]), iterated_mu(&ks))
                .eval()
                .unwrap();
            let rhs = iterated_mu(&[total]).eval().unwrap();
            run.check(seed, lhs == rhs, || {
                format!("generalized associativity at blocks {ks:?}")
            });
            let lhs = HTerm::compose(iterated_delta(&ks), iterated_delta(&[m]))
                .eval()
                .unwrap();
            let rhs = iterated_delta(&[total]).eval().unwrap();
            run.check(seed, lhs == rhs, || {
                format!("generalized coassociativity at blocks {ks:?}")
            });
        }
    }
    run.report
}

fn suite_delta_mu(cfg: &FuzzConfig) -> SuiteReport {
    let mut run = Run::new("delta-mu");
    let seed = cfg.seed;
    for n in 0..=6usize {
        run.check(
            seed,
            transpose_perm(1, n) == Permutation::identity(n),
            || format!("block transposition of 1 x {n} is not the identity"),
        );
    }
    run.check(
        seed,
        transpose_perm(2, 2) == Permutation::from_one_line(vec![1, 3, 2, 4]).unwrap(),
        || "block transposition 2 x 2".to_string(),
    );
    run.check(
        seed,
        transpose_perm(2, 3) == Permutation::from_one_line(vec![1, 3, 5, 2, 4, 6]).unwrap(),
        || "block transposition 2 x 3".to_string(),
    );
    for m in 0..=4usize {
        for n in 0..=4usize {
            let lhs = HTerm::compose(iterated_delta(&[n]), iterated_mu(&[m]))
                .eval()
                .unwrap();
            let rhs = HTerm::compose(
                iterated_mu(&vec![m; n]),
                HTerm::compose(perm_term(&transpose_perm(m, n)), iterated_delta(&vec![n; m])),
            )
            .eval()
            .unwrap();
            run.check(seed, lhs == rhs, || {
                format!("product/coproduct exchange at m={m} n={n}")
            });
        }
    }
    run.report
}

fn suite_interchange(cfg: &FuzzConfig) -> SuiteReport {
    let mut run = Run::new("interchange");
    for seed in case_seeds(cfg) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(0..=cfg.max_boundary);
        let m2 = rng.random_range(0..=cfg.max_boundary);
        let n = rng.random_range(0..=cfg.max_boundary);
        let f = random_term_from(&mut rng, cfg.max_nodes, cfg.max_boundary, Some(m), Some(n));
        let g = random_term_from(&mut rng, cfg.max_nodes, cfg.max_boundary, Some(m), Some(n));
        let f2 = random_term_from(&mut rng, cfg.max_nodes, cfg.max_boundary, Some(m2), Some(n));
        let g2 = random_term_from(&mut rng, cfg.max_nodes, cfg.max_boundary, Some(m2), Some(n));
        let lhs = conv(
            vee(f.clone(), f2.clone()).unwrap(),
            vee(g.clone(), g2.clone()).unwrap(),
        )
        .unwrap();
        let rhs = vee(
            conv(f.clone(), g.clone()).unwrap(),
            conv(f2.clone(), g2.clone()).unwrap(),
        )
        .unwrap();
        run.check(seed, lhs.eval().unwrap() == rhs.eval().unwrap(), || {
            format!("f={f} f'={f2} g={g} g'={g2}")
        });
    }
    run.report
}

fn suite_triangle(cfg: &FuzzConfig) -> SuiteReport {
    let mut run = Run::new("triangle");
    let seed = cfg.seed;
    for m in 1..=4usize {
        for n in 1..=4usize {
            for i in 1..=m {
                for j in 1..=n {
                    for e in 0..=1u8 {
                        let mut ws = vec![ReducedWord::empty(n); m];
                        let letter = reduce(
                            n,
                            [Letter {
                                index: j,
                                inv: e == 1,
                            }],
                        )
                        .unwrap();
                        ws[i - 1] = letter;
                        let expected = bracket(m, n, ws.clone()).unwrap();
                        let y_ok = y_gen(i, j, e, m, n).unwrap().eval().unwrap() == expected;
                        run.check(seed, y_ok, || {
                            format!("letter generator at i={i} j={j} e={e} m={m} n={n}")
                        });
                        let a_ok = alpha(n, &ws).unwrap().eval().unwrap() == expected;
                        run.check(seed, a_ok, || {
                            format!("expansion of {} at m={m} n={n}", tuple_display(&ws))
                        });
                    }
                }
            }
        }
    }
    for seed in case_seeds(cfg) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(0..=cfg.max_boundary);
        let n = rng.random_range(0..=cfg.max_boundary);
        let ws = random_tuple(&mut rng, m, n, 6);
        let ok = alpha(n, &ws).unwrap().eval().unwrap() == bracket(m, n, ws.clone()).unwrap();
        run.check(seed, ok, || tuple_display(&ws));
    }
    run.report
}

fn suite_convolution(cfg: &FuzzConfig) -> SuiteReport {
    let mut run = Run::new("convolution");
    for seed in case_seeds(cfg) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(0..=cfg.max_boundary);
        let n = rng.random_range(0..=cfg.max_boundary);
        let fu = bracket(m, n, random_tuple(&mut rng, m, n, 6)).unwrap();
        let fv = bracket(m, n, random_tuple(&mut rng, m, n, 6)).unwrap();
        let fw = bracket(m, n, random_tuple(&mut rng, m, n, 6)).unwrap();
        let a = encode(&fu);
        let b = encode(&fv);
        let c = encode(&fw);
        let detail = || format!("f={fu} g={fv}");
        let transport = normalize_eval(&conv(decode(&a), decode(&b)).unwrap()).unwrap()
            == encode(&convolve(&fu, &fv).unwrap());
        run.check(seed, transport, detail);
        let twisted = HTerm::compose(decode(&a), power_antipode(m));
        let inv_transport = normalize_eval(&twisted).unwrap() == encode(&fu.pointwise_inv());
        run.check(seed, inv_transport, detail);
        let inverse_law = normalize_eval(&conv(decode(&a), twisted).unwrap()).unwrap()
            == CanonicalForm::unit(m, n);
        run.check(seed, inverse_law, detail);
        let assoc_lhs = conv(conv(decode(&a), decode(&b)).unwrap(), decode(&c)).unwrap();
        let assoc_rhs = conv(decode(&a), conv(decode(&b), decode(&c)).unwrap()).unwrap();
        run.check(
            seed,
            normalize_eval(&assoc_lhs).unwrap() == normalize_eval(&assoc_rhs).unwrap(),
            || format!("f={fu} g={fv} h={fw}"),
        );
        let unit_law = normalize_eval(&conv(decode(&a), conv_unit(m, n)).unwrap()).unwrap() == a;
        run.check(seed, unit_law, detail);
    }
    run.report
}

fn suite_normalizers(cfg: &FuzzConfig) -> SuiteReport {
    let mut run = Run::new("normalizers");
    for seed in case_seeds(cfg) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(0..=cfg.max_boundary);
        let n = rng.random_range(0..=cfg.max_boundary);
        let t = random_term_from(&mut rng, cfg.max_nodes, cfg.max_boundary, Some(m), Some(n));
        let agree = normalize_rewrite(&t).unwrap() == normalize_eval(&t).unwrap();
        run.check(seed, agree, || t.to_string());
        let ws = random_tuple(&mut rng, m, n, 6);
        let f = bracket(m, n, ws.clone()).unwrap();
        let c = encode(&f);
        run.check(seed, to_words(&c) == ws, || f.to_string());
        let back = normalize_eval(&decode(&c)).unwrap() == c
            && normalize_rewrite(&decode(&c)).unwrap() == c;
        run.check(seed, back, || f.to_string());
    }
    run.report
}

fn suite_peeling(cfg: &FuzzConfig) -> SuiteReport {
    let mut run = Run::new("peeling");
    for seed in case_seeds(cfg) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(0..=cfg.max_boundary);
        let n = rng.random_range(0..=cfg.max_boundary);
        let c = random_canonical(&mut rng, m, n, 6);
        let detail = || c.to_string();
        let mut cur = c.clone();
        let mut emitted = Vec::new();
        let mut steps = 0;
        let mut ok = true;
        while cur.size() > 0 {
            match peel(&cur) {
                Ok(((i, j, e), rest)) => {
                    if rest.size() + 1 != cur.size() {
                        ok = false;
                        break;
                    }
                    emitted.push((i, j, e));
                    cur = rest;
                    steps += 1;
                }
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        run.check(seed, ok && steps == c.size(), detail);
        let mut acc = decode(&CanonicalForm::unit(m, n));
        for &(i, j, e) in emitted.iter().rev() {
            acc = conv(y_gen(i, j, e, m, n).unwrap(), acc).unwrap();
        }
        run.check(seed, normalize_eval(&acc).unwrap() == c, detail);
    }
    run.report
}

fn suite_coproduct(cfg: &FuzzConfig) -> SuiteReport {
    let mut run = Run::new("coproduct");
    let seed0 = cfg.seed;
    for n in 0..=4usize {
        let only_unit = encode(&bracket(0, n, vec![]).unwrap()) == CanonicalForm::unit(0, n);
        run.check(seed0, only_unit, || {
            format!("empty-domain encoding at n={n}")
        });
    }
    for seed in case_seeds(cfg) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(0..=cfg.max_boundary);
        let m2 = rng.random_range(0..=cfg.max_boundary);
        let n = rng.random_range(0..=cfg.max_boundary);
        let a = random_canonical(&mut rng, m, n, 6);
        let b = random_canonical(&mut rng, m2, n, 6);
        let detail = || format!("a={a} b={b}");
        let joined = vee(decode(&a), decode(&b)).unwrap();
        let left = normalize_eval(&proj_left(joined.clone(), m, m2).unwrap()).unwrap() == a;
        run.check(seed, left, detail);
        let right = normalize_eval(&proj_right(joined, m, m2).unwrap()).unwrap() == b;
        run.check(seed, right, detail);
        let c = random_canonical(&mut rng, m + m2, n, 6);
        let h = decode(&c);
        let rejoined = vee(
            proj_left(h.clone(), m, m2).unwrap(),
            proj_right(h, m, m2).unwrap(),
        )
        .unwrap();
        run.check(seed, normalize_eval(&rejoined).unwrap() == c, || {
            c.to_string()
        });
        let t = random_term_from(&mut rng, cfg.max_nodes, cfg.max_boundary, Some(0), Some(n));
        let initial = normalize_eval(&t).unwrap() == CanonicalForm::unit(0, n);
        run.check(seed, initial, || t.to_string());
    }
    run.report
}

/// Run the named suite. Deterministic suites run their fixed battery;
/// randomized suites run `cfg.count` cases with per-case seeds
/// `cfg.seed + i`.
pub fn run_suite(name: &str, cfg: &FuzzConfig) -> Result<SuiteReport, UnknownSuite> {
    match name {
        "words" => Ok(suite_words(cfg)),
        "category" => Ok(suite_category(cfg)),
        "hopf-axioms" => Ok(suite_hopf_axioms(cfg)),
        "delta-mu" => Ok(suite_delta_mu(cfg)),
        "interchange" => Ok(suite_interchange(cfg)),
        "triangle" => Ok(suite_triangle(cfg)),
        "convolution" => Ok(suite_convolution(cfg)),
        "normalizers" => Ok(suite_normalizers(cfg)),
        "peeling" => Ok(suite_peeling(cfg)),
        "coproduct" => Ok(suite_coproduct(cfg)),
        _ => Err(UnknownSuite(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(count: usize) -> FuzzConfig {
        FuzzConfig {
            seed: 7,
            max_nodes: 30,
            max_boundary: 3,
            count,
        }
    }

    #[test]
    fn random_term_is_deterministic_per_seed() {
        let cfg = FuzzConfig::default();
        assert_eq!(random_term(&cfg, None, None), random_term(&cfg, None, None));
        assert_eq!(
            random_term(&cfg, Some(2), Some(1)),
            random_term(&cfg, Some(2), Some(1))
        );
        let other = FuzzConfig {
            seed: 2,
            ..FuzzConfig::default()
        };
        assert_ne!(
            random_term(&cfg, None, None),
            random_term(&other, None, None)
        );
    }

    #[test]
    fn random_terms_are_well_typed_and_bounded() {
        let cfg = FuzzConfig::default();
        for i in 0..300u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i));
            let dom = rng.random_range(0..=cfg.max_boundary);
            let cod = rng.random_range(0..=cfg.max_boundary);
            let t = random_term_from(&mut rng, cfg.max_nodes, cfg.max_boundary, Some(dom), Some(cod));
            assert_eq!(t.infer_type().unwrap(), (dom, cod));
            assert!(t.node_count() <= cfg.max_nodes, "{t}");
        }
    }

    #[test]
    fn random_words_respect_rank_and_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let w = random_word(&mut rng, 3, 8);
            assert_eq!(w.rank(), 3);
            assert!(w.len() <= 8);
        }
        let w = random_word(&mut rng, 0, 8);
        assert!(w.is_empty());
    }

    #[test]
    fn all_suites_pass_a_quick_run() {
        for (name, _) in SUITES {
            let report = run_suite(name, &quick(40)).unwrap();
            assert!(report.passed(), "suite {name}: {report}");
            assert!(report.cases > 0);
        }
    }

    #[test]
    fn suites_are_reproducible() {
        let report1 = run_suite("normalizers", &quick(25)).unwrap();
        let report2 = run_suite("normalizers", &quick(25)).unwrap();
        assert_eq!(report1.to_string(), report2.to_string());
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert_eq!(
            run_suite("nope", &FuzzConfig::default()).unwrap_err(),
            UnknownSuite("nope".to_string())
        );
    }

    #[test]
    fn report_lines_are_machine_readable() {
        let report = SuiteReport {
            name: "demo".to_string(),
            cases: 3,
            failures: vec![Failure {
                seed: 42,
                counterexample: "mu . delta".to_string(),
            }],
        };
        assert_eq!(
            report.to_string(),
            "SUITE demo CASES 3 FAILURES 1\nFAILURE seed=42 mu . delta"
        );
        assert!(!report.passed());
    }

    #[test]
    fn suite_listing_is_stable() {
        let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
        assert_eq!(
            names,
            vec![
                "words",
                "category",
                "hopf-axioms",
                "delta-mu",
                "interchange",
                "triangle",
                "convolution",
                "normalizers",
                "peeling",
                "coproduct"
            ]
        );
    }
}
