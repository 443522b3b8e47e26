//! Machinery shared by the pure braid and pure loop braid families: groups
//! generated by symbols indexed by pairs of strands, standard projections
//! that delete strands, verdicts witnessed by a dead projection, witness
//! pairs, and the obstruction pipeline.

use std::fmt;

use itertools::Itertools;
use num_traits::Zero;

use crate::character::{abelianize, generic_point_avoiding, Basis, Character, GenericPoint};
use crate::character::{SaturatedLattice, VectorCharacter};
use crate::error::{Error, Result};
use crate::linalg::{self, Rational, Subspace};
use crate::words::{F2ZElement, Word};

/// Generators indexed by strand pairs `(i, j)` (1-based), in lexicographic
/// order. Braid generators use `i < j`; loop generators use all `i ≠ j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairBasis {
    n: usize,
    ordered: bool,
    pairs: Vec<(usize, usize)>,
    basis: Basis,
}

impl PairBasis {
    pub(crate) fn new(n: usize, ordered: bool, symbol: &str) -> Self {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| if ordered { i != j } else { i < j })
            .collect();
        let basis = Basis::new(pairs.iter().map(|(i, j)| format!("{symbol}({i},{j})")))
            .expect("pair names are distinct");
        PairBasis {
            n,
            ordered,
            pairs,
            basis,
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (i, j))
    }

    /// Generator on the unordered pair `{i, j}` for braids, or `(i, j)`
    /// for loops.
    pub fn generator(&self, i: usize, j: usize) -> Word {
        let key = if self.ordered {
            (i, j)
        } else {
            (i.min(j), i.max(j))
        };
        Word::generator(self.index(key.0, key.1).expect("strands in range"))
    }

    pub(crate) fn check_character(&self, c: &Character) -> Result<()> {
        if c.basis() == &self.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch(format!(
                "expected a character on {} generators {}…",
                self.basis.len(),
                self.basis.names().first().map(String::as_str).unwrap_or("")
            )))
        }
    }

    /// Sorted, distinct, in-range kept strands with at least `min` members.
    pub(crate) fn check_kept(&self, kept: &[usize], min: usize) -> Result<Vec<usize>> {
        let sorted: Vec<usize> = kept.iter().copied().sorted().dedup().collect();
        if sorted.len() != kept.len() {
            return Err(Error::InvalidInput("repeated strand index".into()));
        }
        if let Some(&bad) = sorted.iter().find(|&&s| s == 0 || s > self.n) {
            return Err(Error::InvalidInput(format!(
                "strand {bad} outside 1..={}",
                self.n
            )));
        }
        if sorted.len() < min {
            return Err(Error::InvalidInput(format!(
                "projection must keep at least {min} strands"
            )));
        }
        Ok(sorted)
    }

    /// Image of generator `g` under the standard projection onto `kept`
    /// (sorted): its index in the smaller group, or `None` when it dies.
    fn project_generator(&self, kept: &[usize], target: &PairBasis, g: usize) -> Option<usize> {
        let (i, j) = self.pairs[g];
        let ri = kept.iter().position(|&s| s == i)? + 1;
        let rj = kept.iter().position(|&s| s == j)? + 1;
        target.index(ri, rj)
    }

    pub(crate) fn project_character_unchecked(
        &self,
        kept: &[usize],
        target: &PairBasis,
        c: &Character,
    ) -> Option<Character> {
        let mut values = vec![Rational::zero(); target.basis.len()];
        for g in 0..self.pairs.len() {
            match self.project_generator(kept, target, g) {
                Some(h) => values[h] = c.value(g).clone(),
                None if !c.value(g).is_zero() => return None,
                None => {}
            }
        }
        Some(Character::new(target.basis.clone(), values).expect("target dimension"))
    }

    pub(crate) fn project_word_unchecked(
        &self,
        kept: &[usize],
        target: &PairBasis,
        w: &Word,
    ) -> Result<Word> {
        if w.max_generator().is_some_and(|g| g >= self.pairs.len()) {
            return Err(Error::UnknownGenerator(format!(
                "letter outside the {} generators",
                self.pairs.len()
            )));
        }
        Ok(w.map_generators(|g| self.project_generator(kept, target, g)))
    }

    /// Equations `χ(g) = 0` for every generator touching a deleted strand,
    /// followed by `base` (equations on the target basis) pulled back.
    pub(crate) fn pullback_equations(
        &self,
        kept: &[usize],
        target: &PairBasis,
        base: &[Vec<i64>],
    ) -> Vec<Vec<Rational>> {
        let d = self.pairs.len();
        let image: Vec<Option<usize>> = (0..d)
            .map(|g| self.project_generator(kept, target, g))
            .collect();
        let mut eqs: Vec<Vec<Rational>> = image
            .iter()
            .enumerate()
            .filter(|(_, im)| im.is_none())
            .map(|(g, _)| {
                let mut e = vec![Rational::zero(); d];
                e[g] = linalg::rational(1);
                e
            })
            .collect();
        for row in base {
            let e = image
                .iter()
                .map(|im| im.map_or(Rational::zero(), |h| linalg::rational(row[h])))
                .collect();
            eqs.push(e);
        }
        eqs
    }
}

/// Strand subsets of `{1..n}` of size `k`, lexicographically.
pub(crate) fn strand_subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=n).combinations(k)
}

/// A dead standard projection: the kept strands and which base condition
/// the induced character satisfies.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DeadProjection<B> {
    pub kept: Vec<usize>,
    pub base: B,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum OutWitness<B> {
    Zero,
    Projection(DeadProjection<B>),
}

/// Membership verdict for Σ¹; `Out` carries the first witness in the
/// enumeration order of the family.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SigmaVerdict<B> {
    In,
    Out(OutWitness<B>),
}

impl<B> SigmaVerdict<B> {
    pub fn is_in(&self) -> bool {
        matches!(self, SigmaVerdict::In)
    }

    pub fn dead_projection(&self) -> Option<&DeadProjection<B>> {
        match self {
            SigmaVerdict::Out(OutWitness::Projection(p)) => Some(p),
            _ => None,
        }
    }
}

pub(crate) fn format_strands(s: &[usize]) -> String {
    format!("{{{}}}", s.iter().join(","))
}

impl<B: fmt::Display> fmt::Display for SigmaVerdict<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaVerdict::In => f.write_str("IN"),
            SigmaVerdict::Out(OutWitness::Zero) => f.write_str("OUT zero-character"),
            SigmaVerdict::Out(OutWitness::Projection(p)) => {
                write!(f, "OUT {} {}", p.base, format_strands(&p.kept))
            }
        }
    }
}

/// Two elements of the group whose images under the projection onto
/// `designated` generate a free group of rank two.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessPair {
    pub first: Word,
    pub second: Word,
    pub designated: Vec<usize>,
}

/// Operations a strand family exposes to the shared obstruction pipeline.
pub(crate) trait StrandFamily {
    type Base: Clone + Eq + fmt::Debug;

    fn pair_basis(&self) -> &PairBasis;
    fn sigma_membership(&self, c: &Character) -> Result<SigmaVerdict<Self::Base>>;
    /// Every dead locus as a subspace of characters, in the same order the
    /// membership oracle enumerates witnesses.
    fn dead_loci(&self) -> Vec<(DeadProjection<Self::Base>, Subspace)>;
    fn witness_for(&self, locus: &DeadProjection<Self::Base>) -> Result<WitnessPair>;
    /// Reduces a witness pair in the designated base group to F₂ × ℤ.
    fn reduce_witness(&self, pair: &WitnessPair) -> Result<(F2ZElement, F2ZElement)>;
}

/// Outcome of the obstruction pipeline for a subgroup given by the
/// abelianizations of its generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Obstruction<B> {
    /// A character killing the subgroup with both `±χ` in Σ¹.
    Certificate {
        character: Character,
        plus: SigmaVerdict<B>,
        minus: SigmaVerdict<B>,
    },
    /// Every character killing the subgroup lies in the dead locus; the
    /// witness pair lies in the radical and projects to a free pair.
    Covered {
        locus: DeadProjection<B>,
        character: Character,
        witness: WitnessPair,
        reduced: (F2ZElement, F2ZElement),
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ObstructionReport<B> {
    pub lattice: SaturatedLattice,
    pub killing: VectorCharacter,
    pub outcome: Obstruction<B>,
}

pub(crate) fn run_obstruction<F: StrandFamily>(
    family: &F,
    gens: &[Vec<i64>],
) -> Result<ObstructionReport<F::Base>> {
    let basis = family.pair_basis().basis().clone();
    let lattice = SaturatedLattice::saturate(&basis, gens)?;
    let killing = lattice.kill_character();
    let u = killing.row_space();
    let loci = family.dead_loci();
    let covering = loci.iter().position(|(_, s)| s.contains(&u));
    let outcome = match covering {
        None => {
            let bad: Vec<Subspace> = loci.into_iter().map(|(_, s)| s).collect();
            let GenericPoint::Found(v) = generic_point_avoiding(&u, &bad)? else {
                unreachable!("no dead locus contains the annihilator")
            };
            let character = Character::new(basis, v)?.canonical_class()?;
            let plus = family.sigma_membership(&character)?;
            let minus = family.sigma_membership(&character.negate())?;
            Obstruction::Certificate {
                character,
                plus,
                minus,
            }
        }
        Some(i) => {
            let bad: Vec<Subspace> = loci
                .iter()
                .filter(|(_, s)| !s.contains(&u))
                .map(|(_, s)| s.clone())
                .collect();
            let GenericPoint::Found(v) = generic_point_avoiding(&u, &bad)? else {
                unreachable!("filtered loci do not contain the annihilator")
            };
            let character = Character::new(basis, v)?;
            let character = character.canonical_class().unwrap_or(character);
            let locus = loci[i].0.clone();
            let witness = family.witness_for(&locus)?;
            let reduced = family.reduce_witness(&witness)?;
            Obstruction::Covered {
                locus,
                character,
                witness,
                reduced,
            }
        }
    };
    Ok(ObstructionReport {
        lattice,
        killing,
        outcome,
    })
}

/// Checks that both witness words vanish under every character in `chars`
/// and that their reductions generate F₂.
pub fn witness_is_sound(
    basis: &Basis,
    chars: &[Character],
    pair: &WitnessPair,
    reduced: &(F2ZElement, F2ZElement),
) -> Result<bool> {
    let a = abelianize(basis, &pair.first)?;
    let b = abelianize(basis, &pair.second)?;
    for c in chars {
        if !c.eval(&a)?.is_zero() || !c.eval(&b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(reduced.0.generates_free_group_with(&reduced.1))
}
