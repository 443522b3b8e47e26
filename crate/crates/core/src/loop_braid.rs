//! Σ¹ of the pure loop braid groups `PLB_n` on the generators `A(i,j)`,
//! `i ≠ j`, where `A(i,j)` conjugates `x_i` by `x_j`.
//!
//! `PLB₂` is free on `A(1,2)` and `A(2,1)`, so every character of it is dead.
//! In `PLB₃` the dead characters are those induced from `PLB₂` together with
//! the solutions of three linear equations; for larger `n` a character is
//! dead exactly when it is induced from a dead character on two or three
//! indices.

use std::fmt;

use num_traits::Zero;

use crate::character::{Basis, Character};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::projection::{
    run_obstruction, strand_subsets, DeadProjection, ObstructionReport, OutWitness, PairBasis,
    SigmaVerdict, StrandFamily, WitnessPair,
};
use crate::words::{free_reduce, F2ZElement, Word, F2_A, F2_B};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PlbBase {
    /// Any character of `PLB₂`.
    Plb2All,
    /// `χ(A₂₁) + χ(A₃₁) = 0`, `χ(A₁₂) + χ(A₃₂) = 0`, `χ(A₁₃) + χ(A₂₃) = 0`
    /// on `PLB₃`.
    Plb3Equations,
}

impl fmt::Display for PlbBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlbBase::Plb2All => "plb2-all",
            PlbBase::Plb3Equations => "plb3-equations",
        })
    }
}

pub type PlbVerdict = SigmaVerdict<PlbBase>;

// On the PLB₃ basis (A12, A13, A21, A23, A31, A32).
const PLB3_EQUATIONS: [[i64; 6]; 3] = [[0, 0, 1, 0, 1, 0], [1, 0, 0, 0, 0, 1], [0, 1, 0, 1, 0, 0]];

/// The pure loop braid group `PLB_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PureLoopBraidGroup {
    gens: PairBasis,
}

impl PureLoopBraidGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Unsupported(format!("PLB_{n} has no generators")));
        }
        Ok(PureLoopBraidGroup {
            gens: PairBasis::new(n, true, "A"),
        })
    }

    pub fn strands(&self) -> usize {
        self.gens.strands()
    }

    pub fn basis(&self) -> &Basis {
        self.gens.basis()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        self.gens.pairs()
    }

    /// `A(i,j)` as a one-letter word.
    pub fn generator(&self, i: usize, j: usize) -> Word {
        self.gens.generator(i, j)
    }

    fn subgroup(&self, m: usize) -> PureLoopBraidGroup {
        PureLoopBraidGroup::new(m).expect("m ≥ 2")
    }

    pub fn project_character(&self, kept: &[usize], c: &Character) -> Result<Option<Character>> {
        self.gens.check_character(c)?;
        let kept = self.gens.check_kept(kept, 2)?;
        let target = self.subgroup(kept.len());
        Ok(self
            .gens
            .project_character_unchecked(&kept, &target.gens, c))
    }

    /// Letter-wise image under the map killing every `A(i,j)` that touches
    /// an index outside `kept`.
    pub fn project_word(&self, kept: &[usize], w: &Word) -> Result<Word> {
        let kept = self.gens.check_kept(kept, 2)?;
        let target = self.subgroup(kept.len());
        self.gens.project_word_unchecked(&kept, &target.gens, w)
    }

    pub fn sigma_membership(&self, c: &Character) -> Result<PlbVerdict> {
        self.gens.check_character(c)?;
        if c.is_zero() {
            return Ok(SigmaVerdict::Out(OutWitness::Zero));
        }
        let n = self.strands();
        let plb2 = self.subgroup(2);
        for kept in strand_subsets(n, 2) {
            if self
                .gens
                .project_character_unchecked(&kept, &plb2.gens, c)
                .is_some()
            {
                return Ok(dead(kept, PlbBase::Plb2All));
            }
        }
        if n >= 3 {
            let plb3 = self.subgroup(3);
            for kept in strand_subsets(n, 3) {
                if let Some(p) = self.gens.project_character_unchecked(&kept, &plb3.gens, c) {
                    if PLB3_EQUATIONS
                        .iter()
                        .all(|e| p.eval(e).is_ok_and(|v| v.is_zero()))
                    {
                        return Ok(dead(kept, PlbBase::Plb3Equations));
                    }
                }
            }
        }
        Ok(SigmaVerdict::In)
    }

    /// Pullbacks of the whole `PLB₂` character space over every 2-subset,
    /// then of the `PLB₃` equation space over every 3-subset.
    pub fn dead_subspaces(&self) -> Vec<(DeadProjection<PlbBase>, Subspace)> {
        let n = self.strands();
        let d = self.basis().len();
        let plb2 = self.subgroup(2);
        let mut out: Vec<_> = strand_subsets(n, 2)
            .map(|kept| {
                let eqs = self.gens.pullback_equations(&kept, &plb2.gens, &[]);
                let locus = DeadProjection {
                    kept,
                    base: PlbBase::Plb2All,
                };
                (locus, Subspace::from_equations(d, &eqs))
            })
            .collect();
        if n >= 3 {
            let plb3 = self.subgroup(3);
            let base: Vec<Vec<i64>> = PLB3_EQUATIONS.iter().map(|e| e.to_vec()).collect();
            for kept in strand_subsets(n, 3) {
                let eqs = self.gens.pullback_equations(&kept, &plb3.gens, &base);
                out.push((
                    DeadProjection {
                        kept,
                        base: PlbBase::Plb3Equations,
                    },
                    Subspace::from_equations(d, &eqs),
                ));
            }
        }
        out
    }

    /// For a locus deleting some index: `A(i,j), A(j,i)` with `i` the least
    /// deleted and `j` the least kept index, designated onto `{i,j}`. For
    /// the `PLB₃` equations on all three indices: `A₁₂A₃₂, A₂₁A₃₁`,
    /// designated onto `{1,2}`.
    pub fn witness_pair(&self, c: &Character) -> Result<WitnessPair> {
        self.require_witness_range()?;
        match self.sigma_membership(c)? {
            SigmaVerdict::In => Err(Error::Domain("character lies in Σ¹".into())),
            SigmaVerdict::Out(OutWitness::Zero) => Err(Error::Domain(
                "the zero character has no witness pair".into(),
            )),
            SigmaVerdict::Out(OutWitness::Projection(p)) => self.witness_for_locus(&p),
        }
    }

    fn require_witness_range(&self) -> Result<()> {
        if self.strands() < 3 {
            return Err(Error::Unsupported(
                "witness pairs and obstructions need n ≥ 3 (PLB₂ is free)".into(),
            ));
        }
        Ok(())
    }

    fn witness_for_locus(&self, locus: &DeadProjection<PlbBase>) -> Result<WitnessPair> {
        self.require_witness_range()?;
        let n = self.strands();
        let kept = &locus.kept;
        if let Some(i) = (1..=n).find(|s| !kept.contains(s)) {
            let j = kept[0];
            return Ok(WitnessPair {
                first: self.generator(i, j),
                second: self.generator(j, i),
                designated: vec![i.min(j), i.max(j)],
            });
        }
        let a = |i, j| self.generator(i, j);
        Ok(WitnessPair {
            first: a(1, 2).concat(&a(3, 2)),
            second: a(2, 1).concat(&a(3, 1)),
            designated: vec![1, 2],
        })
    }

    pub fn reduce_witness(&self, pair: &WitnessPair) -> Result<(F2ZElement, F2ZElement)> {
        let a = plb2_reduce(&self.project_word(&pair.designated, &pair.first)?)?;
        let b = plb2_reduce(&self.project_word(&pair.designated, &pair.second)?)?;
        Ok((F2ZElement::new(a, 0)?, F2ZElement::new(b, 0)?))
    }

    pub fn nf_obstruction_demo(&self, gens: &[Vec<i64>]) -> Result<ObstructionReport<PlbBase>> {
        self.require_witness_range()?;
        run_obstruction(self, gens)
    }
}

fn dead(kept: Vec<usize>, base: PlbBase) -> PlbVerdict {
    SigmaVerdict::Out(OutWitness::Projection(DeadProjection { kept, base }))
}

impl StrandFamily for PureLoopBraidGroup {
    type Base = PlbBase;

    fn pair_basis(&self) -> &PairBasis {
        &self.gens
    }

    fn sigma_membership(&self, c: &Character) -> Result<PlbVerdict> {
        PureLoopBraidGroup::sigma_membership(self, c)
    }

    fn dead_loci(&self) -> Vec<(DeadProjection<PlbBase>, Subspace)> {
        self.dead_subspaces()
    }

    fn witness_for(&self, locus: &DeadProjection<PlbBase>) -> Result<WitnessPair> {
        self.witness_for_locus(locus)
    }

    fn reduce_witness(&self, pair: &WitnessPair) -> Result<(F2ZElement, F2ZElement)> {
        PureLoopBraidGroup::reduce_witness(self, pair)
    }
}

/// Always true: Σ¹ of a free group of rank two is empty.
pub fn plb2_dead(c: &Character) -> Result<bool> {
    PureLoopBraidGroup::new(2)?.gens.check_character(c)?;
    Ok(true)
}

pub fn plb3_dead(c: &Character) -> Result<bool> {
    Ok(!PureLoopBraidGroup::new(3)?.sigma_membership(c)?.is_in())
}

/// `PLB₂ → F₂` with `A(1,2) ↦ A`, `A(2,1) ↦ B`, freely reduced.
pub fn plb2_reduce(w: &Word) -> Result<Word> {
    if w.max_generator().is_some_and(|g| g > 1) {
        return Err(Error::UnknownGenerator(
            "PLB₂ words use only A(1,2) and A(2,1)".into(),
        ));
    }
    debug_assert_eq!((F2_A, F2_B), (0, 1));
    Ok(free_reduce(w))
}
