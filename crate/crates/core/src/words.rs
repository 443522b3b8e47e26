//! Words in generators and the word problems the certificates rely on:
//! free reduction, arithmetic in F₂ × ℤ, and ShortLex normal forms in
//! right-angled Artin groups.

use std::fmt;
use std::ops::Mul;

use crate::character::Basis;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A generator or its inverse. The derived order is the ShortLex letter
/// order: by generator index, and `x` before `x⁻¹`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    #[must_use]
    pub fn inv(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word over generators indexed `0..`; the alphabet lives with whoever
/// interprets the indices (a [`Basis`] or a graph's vertex list).
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    /// `g^k`.
    pub fn power_of(g: usize, k: i64) -> Self {
        Word(vec![Letter::new(g, k < 0); k.unsigned_abs() as usize])
    }

    /// Builds a word from `(generator, exponent)` syllables.
    pub fn from_syllables(syllables: &[(usize, i64)]) -> Self {
        Word(
            syllables
                .iter()
                .flat_map(|&(g, k)| Self::power_of(g, k).0)
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[must_use]
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    #[must_use]
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `w^k` as an unreduced word.
    #[must_use]
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        Word(
            std::iter::repeat_n(base.0, k.unsigned_abs() as usize)
                .flatten()
                .collect(),
        )
    }

    /// `w u w⁻¹`.
    #[must_use]
    pub fn conjugate_by(&self, w: &Word) -> Word {
        w.concat(self).concat(&w.inverse())
    }

    /// `u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Keeps the letters selected by `map` and renames their generators;
    /// letters mapped to `None` are deleted.
    pub fn map_generators(&self, mut map: impl FnMut(usize) -> Option<usize>) -> Word {
        Word(
            self.0
                .iter()
                .filter_map(|l| map(l.generator).map(|g| Letter::new(g, l.inverse)))
                .collect(),
        )
    }

    pub fn display<'a>(&'a self, names: &'a Basis) -> DisplayWord<'a> {
        DisplayWord { word: self, names }
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Renders a word as space-separated letters `x` / `x^-1`; the empty word
/// renders as `1`.
pub struct DisplayWord<'a> {
    word: &'a Word,
    names: &'a Basis,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = self
                .names
                .names()
                .get(l.generator)
                .map(String::as_str)
                .unwrap_or("?");
            f.write_str(name)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

/// Two free-group elements commute iff their commutator reduces to 1.
pub fn free_commute(u: &Word, v: &Word) -> bool {
    free_reduce(&Word::commutator(u, v)).is_empty()
}

/// Generator indices of the free factor of F₂ × ℤ.
pub const F2_A: usize = 0;
pub const F2_B: usize = 1;

/// An element of F₂ × ℤ: a reduced word in `A`, `B` and a central exponent.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct F2ZElement {
    free: Word,
    central: i64,
}

impl F2ZElement {
    pub fn new(free: Word, central: i64) -> Result<Self> {
        if free.max_generator().is_some_and(|g| g > F2_B) {
            return Err(Error::InvalidInput(
                "F₂ words use only the generators A and B".into(),
            ));
        }
        Ok(F2ZElement {
            free: free_reduce(&free),
            central,
        })
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn free_part(&self) -> &Word {
        &self.free
    }

    pub fn central_exponent(&self) -> i64 {
        self.central
    }

    #[must_use]
    pub fn multiply(&self, other: &F2ZElement) -> F2ZElement {
        F2ZElement {
            free: free_reduce(&self.free.concat(&other.free)),
            central: self.central + other.central,
        }
    }

    #[must_use]
    pub fn inverse(&self) -> F2ZElement {
        F2ZElement {
            free: self.free.inverse(),
            central: -self.central,
        }
    }

    /// Commutation in F₂ × ℤ only depends on the free parts.
    pub fn commutes_with(&self, other: &F2ZElement) -> bool {
        free_commute(&self.free, &other.free)
    }

    /// Whether the two elements generate a free group of rank two. Decided
    /// on free parts modulo the center: a pair generates F₂ iff neither
    /// free part is trivial and they do not commute.
    pub fn generates_free_group_with(&self, other: &F2ZElement) -> bool {
        !self.free.is_empty() && !other.free.is_empty() && !self.commutes_with(other)
    }
}

impl fmt::Display for F2ZElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ab = Basis::new(["A", "B"]).expect("distinct names");
        write!(f, "({}, {})", self.free.display(&ab), self.central)
    }
}

pub fn f2z_multiply(x: &F2ZElement, y: &F2ZElement) -> F2ZElement {
    x.multiply(y)
}

pub fn f2z_commute(x: &F2ZElement, y: &F2ZElement) -> bool {
    x.commutes_with(y)
}

pub fn f2z_generate_free(x: &F2ZElement, y: &F2ZElement) -> bool {
    x.generates_free_group_with(y)
}

fn check_raag_word(g: &Graph, w: &Word) -> Result<()> {
    match w.max_generator() {
        Some(m) if m >= g.vertex_count() => Err(Error::UnknownGenerator(format!(
            "generator #{m} on a {}-vertex graph",
            g.vertex_count()
        ))),
        _ => Ok(()),
    }
}

fn commute_in(g: &Graph, a: Letter, b: Letter) -> bool {
    g.adjacent(a.generator, b.generator)
}

/// Removes cancelling pairs `x^ε … x^-ε` whose intermediate letters all
/// commute with `x`, until the word is geodesic.
fn raag_geodesic(g: &Graph, letters: &[Letter]) -> Vec<Letter> {
    let mut w = letters.to_vec();
    'scan: loop {
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[j].generator == w[i].generator {
                    if w[j].inverse != w[i].inverse {
                        w.remove(j);
                        w.remove(i);
                        continue 'scan;
                    }
                    break;
                }
                if !commute_in(g, w[i], w[j]) {
                    break;
                }
            }
        }
        return w;
    }
}

/// ShortLex-least representative of `w` in the RAAG `A_Γ`, where generator
/// `i` is vertex `i` of `g`.
///
/// The word is first made geodesic; all geodesic representatives of an
/// element differ by swaps of commuting letters, so the least one is built
/// greedily by repeatedly pulling the smallest letter that can be commuted
/// to the front.
pub fn raag_normal_form(g: &Graph, w: &Word) -> Result<Word> {
    check_raag_word(g, w)?;
    let mut rest = raag_geodesic(g, &w.0);
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for k in 0..rest.len() {
            if rest[..k].iter().all(|&p| commute_in(g, p, rest[k]))
                && best.is_none_or(|b| rest[k] < rest[b])
            {
                best = Some(k);
            }
        }
        let k = best.expect("the first letter is always movable");
        out.push(rest.remove(k));
    }
    Ok(Word(out))
}

pub fn raag_equal(g: &Graph, u: &Word, v: &Word) -> Result<bool> {
    raag_normal_form(g, &u.concat(&v.inverse())).map(|w| w.is_empty())
}

pub fn raag_commute(g: &Graph, u: &Word, v: &Word) -> Result<bool> {
    raag_normal_form(g, &Word::commutator(u, v)).map(|w| w.is_empty())
}
