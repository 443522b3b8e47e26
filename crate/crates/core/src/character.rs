//! Characters as exact rational vectors over a generator basis, saturated
//! lattices in the integer abelianization, and the constructions that pick
//! characters killing a prescribed subgroup.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Rational, Subspace};
use crate::words::Word;

/// Ordered list of distinct generator names.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Basis(Arc<[String]>);

impl Basis {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidInput(format!("duplicate generator `{n}`")));
            }
        }
        Ok(Basis(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.len(),
                found,
            })
        }
    }
}

/// Exponent-sum vector of a word: the image of the word in ℤ^d.
pub fn abelianize(basis: &Basis, w: &Word) -> Result<Vec<i64>> {
    let mut v = vec![0i64; basis.len()];
    for l in w.letters() {
        let slot = v.get_mut(l.generator).ok_or_else(|| {
            Error::UnknownGenerator(format!("generator #{} outside the basis", l.generator))
        })?;
        *slot += l.exponent();
    }
    Ok(v)
}

/// A homomorphism to ℚ, given by its values on the basis generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Character {
    basis: Basis,
    values: Vec<Rational>,
}

impl Character {
    pub fn new(basis: Basis, values: Vec<Rational>) -> Result<Self> {
        basis.check_dim(values.len())?;
        Ok(Character { basis, values })
    }

    pub fn from_ints(basis: Basis, values: &[i64]) -> Result<Self> {
        Self::new(basis, linalg::to_rational_vec(values))
    }

    pub fn zero(basis: Basis) -> Self {
        let values = vec![Rational::zero(); basis.len()];
        Character { basis, values }
    }

    /// Indicator of generator `i`.
    pub fn unit(basis: Basis, i: usize) -> Self {
        let mut c = Self::zero(basis);
        c.values[i] = linalg::rational(1);
        c
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Value on an element given by its abelianization.
    pub fn eval(&self, abelianized: &[i64]) -> Result<Rational> {
        self.basis.check_dim(abelianized.len())?;
        Ok(self
            .values
            .iter()
            .zip(abelianized)
            .map(|(x, &k)| x * linalg::rational(k))
            .sum())
    }

    pub fn eval_word(&self, w: &Word) -> Result<Rational> {
        self.eval(&abelianize(&self.basis, w)?)
    }

    #[must_use]
    pub fn scale(&self, q: &Rational) -> Character {
        Character {
            basis: self.basis.clone(),
            values: self.values.iter().map(|x| x * q).collect(),
        }
    }

    #[must_use]
    pub fn negate(&self) -> Character {
        self.scale(&linalg::rational(-1))
    }

    /// Representative of the ray `[χ]`: the primitive integer vector on the
    /// same ray. Positive scaling never flips signs.
    pub fn canonical_class(&self) -> Result<Character> {
        if self.is_zero() {
            return Err(Error::Domain("the zero character has no class".into()));
        }
        let ints = linalg::primitive_integer(&self.values);
        Ok(Character {
            basis: self.basis.clone(),
            values: ints.into_iter().map(Rational::from_integer).collect(),
        })
    }

    /// Indices of generators on which the character vanishes.
    pub fn dead_indices(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| self.values[i].is_zero())
            .collect()
    }

    /// Names of generators on which the character vanishes.
    pub fn dead_support(&self) -> Vec<&str> {
        self.dead_indices()
            .into_iter()
            .map(|i| self.basis.name(i))
            .collect()
    }
}

impl fmt::Display for Character {
    /// `[v1,v2,...]` with rationals in lowest terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A rank-`r` linear map to ℚ^r, given by `r` independent characters.
/// Generic real combinations of the rows are the real-valued characters
/// with exactly the common kernel.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorCharacter {
    basis: Basis,
    rows: Vec<Vec<Rational>>,
}

impl VectorCharacter {
    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> Character {
        Character {
            basis: self.basis.clone(),
            values: self.rows[i].clone(),
        }
    }

    /// The characters this map spans.
    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.basis.len(), &self.rows)
    }

    /// Common kernel of the rows inside ℚ^d.
    pub fn common_kernel(&self) -> Subspace {
        Subspace::from_equations(self.basis.len(), &self.rows)
    }
}

/// Saturated sublattice of ℤ^d in row Hermite normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SaturatedLattice {
    basis: Basis,
    rows: Vec<Vec<BigInt>>,
}

impl SaturatedLattice {
    /// `(ℚ-span of vs) ∩ ℤ^d`, the image of the radical `√(J[G,G])` when
    /// the vectors are abelianized generators of `J`.
    pub fn saturate(basis: &Basis, vs: &[Vec<i64>]) -> Result<Self> {
        let d = basis.len();
        for v in vs {
            basis.check_dim(v.len())?;
        }
        let rows: Vec<Vec<Rational>> = vs.iter().map(|v| linalg::to_rational_vec(v)).collect();
        let annihilator: Vec<Vec<BigInt>> = linalg::nullspace(&rows, d)
            .iter()
            .map(|v| linalg::primitive_integer(v))
            .collect();
        Ok(SaturatedLattice {
            basis: basis.clone(),
            rows: linalg::integer_kernel(&annihilator, d),
        })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rational_rows(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
            .collect()
    }

    pub fn rational_span(&self) -> Subspace {
        Subspace::span(self.basis.len(), &self.rational_rows())
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.basis.len() && {
            let q = linalg::to_rational_vec(v);
            self.rational_span().contains_vector(&q)
        }
    }

    /// Independent characters whose common kernel is exactly the ℚ-span of
    /// the lattice. Rows are the RREF basis of the annihilator, scaled to
    /// primitive integer vectors with positive leading entry.
    pub fn kill_character(&self) -> VectorCharacter {
        let d = self.basis.len();
        let annihilator = linalg::nullspace(&self.rational_rows(), d);
        let (reduced, _) = linalg::rref(&annihilator, d);
        let rows = reduced
            .iter()
            .map(|r| {
                let mut ints = linalg::primitive_integer(r);
                if ints
                    .iter()
                    .find(|x| !x.is_zero())
                    .is_some_and(|x| x.is_negative())
                {
                    ints = ints.into_iter().map(|x| -x).collect();
                }
                ints.into_iter().map(Rational::from_integer).collect()
            })
            .collect();
        VectorCharacter {
            basis: self.basis.clone(),
            rows,
        }
    }
}

/// Result of [`generic_point_avoiding`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GenericPoint {
    /// A vector of `U` outside every listed subspace.
    Found(Vec<Rational>),
    /// `U` lies inside the subspace with this index, so no such vector exists.
    Covered(usize),
}

/// Picks a vector of `u` lying in none of the `bad` subspaces.
///
/// If some bad subspace contains `u` the first such index is reported.
/// Otherwise the search tries `Σ tⁱ·bᵢ` over the RREF basis `b₀, b₁, …` of
/// `u` for `t = 1, 2, …`; each bad subspace vanishes on at most `dim u − 1`
/// of these points, so the search stops after at most
/// `|bad|·(dim u − 1) + 1` steps. With no bad subspaces the first basis
/// vector is returned.
pub fn generic_point_avoiding(u: &Subspace, bad: &[Subspace]) -> Result<GenericPoint> {
    let d = u.ambient_dim();
    for b in bad {
        if b.ambient_dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: b.ambient_dim(),
            });
        }
    }
    if let Some(i) = bad.iter().position(|b| b.contains(u)) {
        return Ok(GenericPoint::Covered(i));
    }
    let basis = u.basis();
    if bad.is_empty() {
        return Ok(GenericPoint::Found(
            basis
                .first()
                .cloned()
                .unwrap_or_else(|| vec![Rational::zero(); d]),
        ));
    }
    for t in 1i64.. {
        let t = linalg::rational(t);
        let mut coeff = linalg::rational(1);
        let mut v = vec![Rational::zero(); d];
        for b in basis {
            for (x, y) in v.iter_mut().zip(b) {
                *x += &coeff * y;
            }
            coeff *= &t;
        }
        if bad.iter().all(|b| !b.contains_vector(&v)) {
            return Ok(GenericPoint::Found(v));
        }
    }
    unreachable!("the schedule is unbounded")
}
