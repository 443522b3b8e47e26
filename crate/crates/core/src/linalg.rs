//! Exact linear algebra over ℚ and ℤ: row reduction, kernels, Hermite
//! normal form, integer kernels, and subspaces of ℚ^d.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_rational_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rational(x)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduced row echelon form. Zero rows are dropped; the returned pivot
/// columns are strictly increasing.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in col..ncols {
                    let delta = &f * &m[r][c];
                    m[i][c] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : row · x = 0 for every row}`, one vector per free column.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(rows, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector by a positive factor to a primitive integer
/// vector. The zero vector maps to zero.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn sub_multiple(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Integer row echelon form by unimodular row operations, pivoting only in
/// the first `pivot_cols` columns. Returns the number of pivot rows; rows
/// below it vanish on the first `pivot_cols` columns. Pivots are positive
/// and entries above each pivot are reduced into `[0, pivot)`.
fn integer_echelon(m: &mut [Vec<BigInt>], pivot_cols: usize) -> usize {
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == m.len() {
            break;
        }
        loop {
            let Some(p) = (r..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()))
            else {
                break;
            };
            m.swap(r, p);
            let mut clean = true;
            for i in r + 1..m.len() {
                if !m[i][col].is_zero() {
                    let q = m[i][col].div_floor(&m[r][col]);
                    let (head, tail) = m.split_at_mut(i);
                    sub_multiple(&mut tail[0], &head[r], &q);
                    clean &= m[i][col].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if m[r][col].is_zero() {
            continue;
        }
        if m[r][col].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = m[i][col].div_floor(&m[r][col]);
            if !q.is_zero() {
                let (head, tail) = m.split_at_mut(r);
                sub_multiple(&mut head[i], &tail[0], &q);
            }
        }
        r += 1;
    }
    r
}

/// Row Hermite normal form of the lattice spanned by `rows`; zero rows are
/// dropped. Two generating sets span the same lattice iff their HNFs agree.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m = rows.to_vec();
    let r = integer_echelon(&mut m, ncols);
    m.truncate(r);
    m
}

/// ℤ-basis (in HNF) of `{x ∈ ℤ^ncols : row · x = 0 for every row}`.
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    // Row-reduce [Aᵀ | I]; rows whose Aᵀ part vanishes carry the kernel.
    let m_rows = rows.len();
    let mut aug: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| {
            let mut row: Vec<BigInt> = rows.iter().map(|r| r[j].clone()).collect();
            row.extend((0..ncols).map(|k| {
                if k == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let r = integer_echelon(&mut aug, m_rows);
    let kernel: Vec<Vec<BigInt>> = aug[r..].iter().map(|row| row[m_rows..].to_vec()).collect();
    hermite_normal_form(&kernel, ncols)
}

/// A linear subspace of ℚ^d, stored both by its RREF spanning basis and by
/// an RREF basis of defining equations (its annihilator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    equations: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn span(ambient: usize, rows: &[Vec<Rational>]) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == ambient),
            "row length mismatch"
        );
        let (basis, _) = rref(rows, ambient);
        let equations = rref(&nullspace(&basis, ambient), ambient).0;
        Subspace {
            ambient,
            basis,
            equations,
        }
    }

    /// Solution set of the given linear equations.
    pub fn from_equations(ambient: usize, equations: &[Vec<Rational>]) -> Self {
        assert!(
            equations.iter().all(|r| r.len() == ambient),
            "equation length mismatch"
        );
        let basis = rref(&nullspace(equations, ambient), ambient).0;
        let equations = rref(equations, ambient).0;
        Subspace {
            ambient,
            basis,
            equations,
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::from_equations(ambient, &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn equations(&self) -> &[Vec<Rational>] {
        &self.equations
    }

    /// The subspace of functionals vanishing on this one.
    pub fn annihilator(&self) -> Subspace {
        Subspace::span(self.ambient, &self.equations)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        self.equations.iter().all(|e| dot(e, v).is_zero())
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains_vector(b))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Subspace::from_equations(self.ambient, &eqs)
    }
}
