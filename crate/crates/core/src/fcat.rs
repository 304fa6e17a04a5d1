//! The category of finitely generated free groups in bracket notation.
//!
//! A morphism `m -> n` is a group homomorphism `F_m -> F_n`, recorded as the
//! tuple of images of the domain generators: `[w1, ..., wm]` with every `w_i`
//! a reduced word of rank `n`. Composition is substitution, the tensor is
//! juxtaposition with the second factor's indices shifted, and the object `1`
//! carries a commutative Hopf structure whose convolution product is
//! pointwise word multiplication.
//!
//! Because reduced words are canonical representatives, structural equality
//! of `FMorphism` values is semantic equality of morphisms.

use std::fmt;
use thiserror::Error;

use crate::words::{ReducedWord, WordError};

/// The five Hopf structure constants on the object 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Mu,
    Eta,
    Delta,
    Eps,
    Antipode,
}

impl GenKind {
    /// Domain and codomain of the generator.
    pub fn boundary(self) -> (usize, usize) {
        match self {
            GenKind::Mu => (2, 1),
            GenKind::Eta => (0, 1),
            GenKind::Delta => (1, 2),
            GenKind::Eps => (1, 0),
            GenKind::Antipode => (1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenKind::Mu => "mu",
            GenKind::Eta => "eta",
            GenKind::Delta => "delta",
            GenKind::Eps => "eps",
            GenKind::Antipode => "S",
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CatError {
    #[error("bracket arity mismatch: domain {expected} but {got} words")]
    Arity { expected: usize, got: usize },
    #[error("bracket rank mismatch: codomain {expected} but word {position} has rank {got}")]
    Rank {
        expected: usize,
        position: usize,
        got: usize,
    },
    #[error("composition boundary mismatch: left factor has domain {left_dom}, right factor has codomain {right_cod}")]
    Boundary { left_dom: usize, right_cod: usize },
    #[error("convolution boundary mismatch: {left_dom} -> {left_cod} vs {right_dom} -> {right_cod}")]
    ConvBoundary {
        left_dom: usize,
        left_cod: usize,
        right_dom: usize,
        right_cod: usize,
    },
    #[error(transparent)]
    Word(#[from] WordError),
}

pub type CatResult<T> = Result<T, CatError>;

/// A morphism of the free-group category: `m` reduced words of rank `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FMorphism {
    dom: usize,
    cod: usize,
    words: Vec<ReducedWord>,
}

impl FMorphism {
    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn words(&self) -> &[ReducedWord] {
        &self.words
    }

    /// Pointwise inverse; the inverse for `convolve`.
    pub fn pointwise_inv(&self) -> FMorphism {
        FMorphism {
            dom: self.dom,
            cod: self.cod,
            words: self.words.iter().map(|w| w.inv()).collect(),
        }
    }
}

/// `[w1, ..., wm]_{m,n}`: the homomorphism sending `x_i` to `ws[i]`.
pub fn bracket(m: usize, n: usize, ws: Vec<ReducedWord>) -> CatResult<FMorphism> {
    if ws.len() != m {
        return Err(CatError::Arity {
            expected: m,
            got: ws.len(),
        });
    }
    for (i, w) in ws.iter().enumerate() {
        if w.rank() != n {
            return Err(CatError::Rank {
                expected: n,
                position: i + 1,
                got: w.rank(),
            });
        }
    }
    Ok(FMorphism {
        dom: m,
        cod: n,
        words: ws,
    })
}

pub fn identity(n: usize) -> FMorphism {
    FMorphism {
        dom: n,
        cod: n,
        words: (1..=n)
            .map(|i| ReducedWord::generator(n, i).expect("index within rank"))
            .collect(),
    }
}

/// The block swap `m+n -> n+m`: `x_i -> x_{n+i}` for `i <= m`, and
/// `x_{m+i} -> x_i` for `i <= n`.
///
/// This is the unique choice coherent with `tensor` and `compose`: it
/// satisfies the hexagon identities and naturality, and degenerates to
/// `[x2,x1]` at m = n = 1.
pub fn symmetry(m: usize, n: usize) -> FMorphism {
    let rank = m + n;
    let gen = |i: usize| ReducedWord::generator(rank, i).expect("index within rank");
    let mut words = Vec::with_capacity(rank);
    for i in 1..=m {
        words.push(gen(n + i));
    }
    for i in 1..=n {
        words.push(gen(i));
    }
    FMorphism {
        dom: m + n,
        cod: n + m,
        words,
    }
}

/// The Hopf structure constants on the object 1.
pub fn hopf_generator(kind: GenKind) -> FMorphism {
    let (dom, cod) = kind.boundary();
    let words = match kind {
        // mu = [x1, x1]: both inputs multiply onto the single output.
        GenKind::Mu => vec![
            ReducedWord::generator(1, 1).unwrap(),
            ReducedWord::generator(1, 1).unwrap(),
        ],
        GenKind::Eta => vec![],
        // delta = [x1 x2]: the input maps to the product of both outputs.
        GenKind::Delta => vec![ReducedWord::generator(2, 1)
            .unwrap()
            .mul(&ReducedWord::generator(2, 2).unwrap())
            .unwrap()],
        GenKind::Eps => vec![ReducedWord::empty(0)],
        GenKind::Antipode => vec![ReducedWord::generator(1, 1).unwrap().inv()],
    };
    FMorphism { dom, cod, words }
}

/// `g` after `f`: apply `f` first. Entry `i` substitutes the words of `g`
/// into the `i`-th word of `f`.
pub fn compose(g: &FMorphism, f: &FMorphism) -> CatResult<FMorphism> {
    if g.dom != f.cod {
        return Err(CatError::Boundary {
            left_dom: g.dom,
            right_cod: f.cod,
        });
    }
    let words = f
        .words
        .iter()
        .map(|w| w.substitute(&g.words, g.cod))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FMorphism {
        dom: f.dom,
        cod: g.cod,
        words,
    })
}

/// Juxtaposition: first factor's words embedded unchanged, second factor's
/// words shifted by `f.cod()`.
pub fn tensor(f: &FMorphism, f2: &FMorphism) -> FMorphism {
    let mut words = Vec::with_capacity(f.dom + f2.dom);
    for w in &f.words {
        words.push(w.pad(f2.cod));
    }
    for w in &f2.words {
        words.push(w.shift(f.cod));
    }
    FMorphism {
        dom: f.dom + f2.dom,
        cod: f.cod + f2.cod,
        words,
    }
}

/// Convolution product: pointwise word multiplication.
pub fn convolve(f: &FMorphism, g: &FMorphism) -> CatResult<FMorphism> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(CatError::ConvBoundary {
            left_dom: f.dom,
            left_cod: f.cod,
            right_dom: g.dom,
            right_cod: g.cod,
        });
    }
    let words = f
        .words
        .iter()
        .zip(&g.words)
        .map(|(a, b)| a.mul(b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FMorphism {
        dom: f.dom,
        cod: f.cod,
        words,
    })
}

/// The convolution unit `m -> n`: every generator maps to the empty word.
pub fn conv_unit(m: usize, n: usize) -> FMorphism {
    FMorphism {
        dom: m,
        cod: n,
        words: (0..m).map(|_| ReducedWord::empty(n)).collect(),
    }
}

impl fmt::Display for FMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, " | {} -> {}]", self.dom, self.cod)
    }
}
