//! Σ¹ of the pure braid groups `PB_n` on the generators `S(i,j)`,
//! `1 ≤ i < j ≤ n`.
//!
//! A character is outside Σ¹ exactly when it is zero or is pulled back along
//! a strand-deleting projection from a dead character of `PB₃` (the three
//! values sum to zero) or of `PB₄` (the four exceptional equations). Strands
//! are numbered from 1.

use std::fmt;

use num_traits::Zero;

use crate::character::{Basis, Character};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::projection::{
    run_obstruction, strand_subsets, DeadProjection, ObstructionReport, OutWitness, PairBasis,
    SigmaVerdict, StrandFamily, WitnessPair,
};
use crate::words::{F2ZElement, Word, F2_A, F2_B};

/// Base condition of a dead projection.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PbBase {
    /// `χ(S₁₂) + χ(S₁₃) + χ(S₂₃) = 0` on `PB₃`.
    Pb3Sum,
    /// `χ(S₁₂) = χ(S₃₄)`, `χ(S₁₃) = χ(S₂₄)`, `χ(S₁₄) = χ(S₂₃)` and
    /// `χ(S₁₂) + χ(S₁₃) + χ(S₁₄) = 0` on `PB₄`.
    Pb4Exceptional,
}

impl fmt::Display for PbBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PbBase::Pb3Sum => "pb3-sum",
            PbBase::Pb4Exceptional => "pb4-exceptional",
        })
    }
}

pub type PbVerdict = SigmaVerdict<PbBase>;

// Equations on the PB₃ basis (S12, S13, S23) and the PB₄ basis
// (S12, S13, S14, S23, S24, S34).
const PB3_SUM: [i64; 3] = [1, 1, 1];
const PB4_EXCEPTIONAL: [[i64; 6]; 4] = [
    [1, 0, 0, 0, 0, -1],
    [0, 1, 0, 0, -1, 0],
    [0, 0, 1, -1, 0, 0],
    [1, 1, 1, 0, 0, 0],
];

fn satisfies(c: &Character, eqs: &[&[i64]]) -> bool {
    eqs.iter().all(|e| c.eval(e).is_ok_and(|v| v.is_zero()))
}

/// The pure braid group `PB_n` through its generating set `S(i,j)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PureBraidGroup {
    gens: PairBasis,
}

impl PureBraidGroup {
    /// `PB_n` for `n ≥ 2`; Σ¹ queries further need `n ≥ 3`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Unsupported(format!("PB_{n} has no generators")));
        }
        Ok(PureBraidGroup {
            gens: PairBasis::new(n, false, "S"),
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

    /// `S(i,j)` as a one-letter word; the pair may be given in either order.
    pub fn generator(&self, i: usize, j: usize) -> Word {
        self.gens.generator(i, j)
    }

    fn subgroup(&self, m: usize) -> PureBraidGroup {
        PureBraidGroup::new(m).expect("m ≥ 2")
    }

    /// Character of `PB_m` (`m = |kept|`) inducing `c` along the projection
    /// deleting the other strands, if `c` factors through it.
    pub fn project_character(&self, kept: &[usize], c: &Character) -> Result<Option<Character>> {
        self.gens.check_character(c)?;
        let kept = self.gens.check_kept(kept, 3)?;
        let target = self.subgroup(kept.len());
        Ok(self
            .gens
            .project_character_unchecked(&kept, &target.gens, c))
    }

    /// Letter-wise image in `PB_m`: surviving `S(i,j)` are relabelled, the
    /// others deleted.
    pub fn project_word(&self, kept: &[usize], w: &Word) -> Result<Word> {
        let kept = self.gens.check_kept(kept, 2)?;
        let target = self.subgroup(kept.len());
        self.gens.project_word_unchecked(&kept, &target.gens, w)
    }

    pub fn sigma_membership(&self, c: &Character) -> Result<PbVerdict> {
        let n = self.strands();
        if n < 3 {
            return Err(Error::Unsupported("Σ¹ queries need n ≥ 3".into()));
        }
        self.gens.check_character(c)?;
        if c.is_zero() {
            return Ok(SigmaVerdict::Out(OutWitness::Zero));
        }
        let pb3 = self.subgroup(3);
        for kept in strand_subsets(n, 3) {
            if let Some(p) = self.gens.project_character_unchecked(&kept, &pb3.gens, c) {
                if satisfies(&p, &[&PB3_SUM]) {
                    return Ok(dead(kept, PbBase::Pb3Sum));
                }
            }
        }
        if n >= 4 {
            let pb4 = self.subgroup(4);
            let eqs: Vec<&[i64]> = PB4_EXCEPTIONAL.iter().map(|e| &e[..]).collect();
            for kept in strand_subsets(n, 4) {
                if let Some(p) = self.gens.project_character_unchecked(&kept, &pb4.gens, c) {
                    if satisfies(&p, &eqs) {
                        return Ok(dead(kept, PbBase::Pb4Exceptional));
                    }
                }
            }
        }
        Ok(SigmaVerdict::In)
    }

    /// The dead loci as subspaces of characters: one per 3-subset (pulled
    /// back sum hyperplane), then one per 4-subset (pulled back exceptional
    /// plane), lexicographically.
    pub fn dead_subspaces(&self) -> Vec<(DeadProjection<PbBase>, Subspace)> {
        let n = self.strands();
        let d = self.basis().len();
        let mut out = Vec::new();
        if n < 3 {
            return out;
        }
        let pb3 = self.subgroup(3);
        for kept in strand_subsets(n, 3) {
            let eqs = self
                .gens
                .pullback_equations(&kept, &pb3.gens, &[PB3_SUM.to_vec()]);
            out.push((
                DeadProjection {
                    kept,
                    base: PbBase::Pb3Sum,
                },
                Subspace::from_equations(d, &eqs),
            ));
        }
        if n >= 4 {
            let pb4 = self.subgroup(4);
            let base: Vec<Vec<i64>> = PB4_EXCEPTIONAL.iter().map(|e| e.to_vec()).collect();
            for kept in strand_subsets(n, 4) {
                let eqs = self.gens.pullback_equations(&kept, &pb4.gens, &base);
                out.push((
                    DeadProjection {
                        kept,
                        base: PbBase::Pb4Exceptional,
                    },
                    Subspace::from_equations(d, &eqs),
                ));
            }
        }
        out
    }

    /// Two kernel elements whose images in `PB₃` generate F₂ modulo the
    /// center.
    ///
    /// When a strand `j` is deleted by the dead projection, the pair is
    /// `S{j,p}, S{j,q}` for the two least kept strands `p < q`, designated
    /// onto `{j,p,q}`. For the exceptional `PB₄` locus it is
    /// `S₁₂S₃₄⁻¹, S₁₃S₂₄⁻¹`, designated onto `{1,2,3}`.
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
        if self.strands() < 4 {
            return Err(Error::Unsupported(
                "witness pairs and obstructions need n ≥ 4 (PB₃ splits over ℤ)".into(),
            ));
        }
        Ok(())
    }

    fn witness_for_locus(&self, locus: &DeadProjection<PbBase>) -> Result<WitnessPair> {
        self.require_witness_range()?;
        let n = self.strands();
        let kept = &locus.kept;
        if let Some(j) = (1..=n).find(|s| !kept.contains(s)) {
            let (p, q) = (kept[0], kept[1]);
            let mut designated = vec![j, p, q];
            designated.sort_unstable();
            return Ok(WitnessPair {
                first: self.generator(j, p),
                second: self.generator(j, q),
                designated,
            });
        }
        match locus.base {
            PbBase::Pb4Exceptional => {
                let s = |i, j| self.generator(i, j);
                Ok(WitnessPair {
                    first: s(1, 2).concat(&s(3, 4).inverse()),
                    second: s(1, 3).concat(&s(2, 4).inverse()),
                    designated: vec![1, 2, 3],
                })
            }
            PbBase::Pb3Sum => Err(Error::Unsupported(
                "a PB₃-sum locus keeping every strand only occurs for n = 3".into(),
            )),
        }
    }

    /// Projects both witness words onto the designated strands and reduces
    /// them in `PB₃ ≅ F₂ × ℤ`.
    pub fn reduce_witness(&self, pair: &WitnessPair) -> Result<(F2ZElement, F2ZElement)> {
        let a = pb3_reduce(&self.project_word(&pair.designated, &pair.first)?)?;
        let b = pb3_reduce(&self.project_word(&pair.designated, &pair.second)?)?;
        Ok((a, b))
    }

    /// Runs the obstruction pipeline on a subgroup given by the
    /// abelianizations of its generators.
    pub fn nf_obstruction_demo(&self, gens: &[Vec<i64>]) -> Result<ObstructionReport<PbBase>> {
        self.require_witness_range()?;
        run_obstruction(self, gens)
    }
}

fn dead(kept: Vec<usize>, base: PbBase) -> PbVerdict {
    SigmaVerdict::Out(OutWitness::Projection(DeadProjection { kept, base }))
}

impl StrandFamily for PureBraidGroup {
    type Base = PbBase;

    fn pair_basis(&self) -> &PairBasis {
        &self.gens
    }

    fn sigma_membership(&self, c: &Character) -> Result<PbVerdict> {
        PureBraidGroup::sigma_membership(self, c)
    }

    fn dead_loci(&self) -> Vec<(DeadProjection<PbBase>, Subspace)> {
        self.dead_subspaces()
    }

    fn witness_for(&self, locus: &DeadProjection<PbBase>) -> Result<WitnessPair> {
        self.witness_for_locus(locus)
    }

    fn reduce_witness(&self, pair: &WitnessPair) -> Result<(F2ZElement, F2ZElement)> {
        PureBraidGroup::reduce_witness(self, pair)
    }
}

fn check_basis(c: &Character, n: usize) -> Result<()> {
    PureBraidGroup::new(n)?.gens.check_character(c)
}

/// `χ(S₁₂) + χ(S₁₃) + χ(S₂₃) = 0` for a character of `PB₃`.
pub fn pb3_dead(c: &Character) -> Result<bool> {
    check_basis(c, 3)?;
    Ok(satisfies(c, &[&PB3_SUM]))
}

/// Dead in `PB₄`: induced from a dead `PB₃` character, or satisfying the
/// exceptional equations.
pub fn pb4_dead(c: &Character) -> Result<bool> {
    check_basis(c, 4)?;
    Ok(!PureBraidGroup::new(4)?.sigma_membership(c)?.is_in())
}

/// `PB₃ → F₂ × ℤ` with `S₁₂ ↦ (A, 0)`, `S₁₃ ↦ (B, 0)` and
/// `S₂₃ ↦ (B⁻¹A⁻¹, 1)`, so that the full twist `S₁₂S₁₃S₂₃` is the central
/// generator.
pub fn pb3_reduce(w: &Word) -> Result<F2ZElement> {
    let images = [
        F2ZElement::new(Word::generator(F2_A), 0)?,
        F2ZElement::new(Word::generator(F2_B), 0)?,
        F2ZElement::new(Word::from_syllables(&[(F2_B, -1), (F2_A, -1)]), 1)?,
    ];
    w.letters()
        .iter()
        .try_fold(F2ZElement::identity(), |acc, l| {
            let img = images.get(l.generator).ok_or_else(|| {
                Error::UnknownGenerator(format!("letter #{} is not a PB₃ generator", l.generator))
            })?;
            Ok(acc.multiply(&if l.inverse {
                img.inverse()
            } else {
                img.clone()
            }))
        })
}
