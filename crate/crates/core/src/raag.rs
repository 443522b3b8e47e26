//! Σ¹ of right-angled Artin groups and the reports built on it.
//!
//! A nonzero character `χ` of `A_Γ` lies in Σ¹ exactly when its living
//! subgraph (the vertices where `χ` is nonzero) is connected and dominating.
//! Characters killing an abelian subgroup `K` can be chosen with dead
//! subgraph the clique `Δ_K`, which turns separating cliques into the
//! obstruction to (virtual) splittings over `ℤ^k`.

use std::fmt;

use num_traits::Zero;

use crate::character::{abelianize, generic_point_avoiding, Basis, Character, GenericPoint};
use crate::character::{SaturatedLattice, VectorCharacter};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::linalg::{self, Rational, Subspace};
use crate::words::{raag_commute, Word};

/// Graphs larger than this are refused by the exhaustive subset scan.
pub const MAX_COMPLEMENT_SCAN: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RaagOut {
    ZeroCharacter,
    /// The living vertex set, which induces a disconnected subgraph.
    LivingDisconnected(VertexSet),
    /// The vertices with no living neighbour and not living themselves.
    NotDominating(VertexSet),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RaagVerdict {
    In,
    Out(RaagOut),
}

impl RaagVerdict {
    pub fn is_in(&self) -> bool {
        matches!(self, RaagVerdict::In)
    }

    /// Human-readable form with vertex labels, e.g. `OUT living-disconnected {a,c}`.
    pub fn render(&self, g: &Graph) -> String {
        match self {
            RaagVerdict::In => "IN".into(),
            RaagVerdict::Out(RaagOut::ZeroCharacter) => "OUT zero-character".into(),
            RaagVerdict::Out(RaagOut::LivingDisconnected(s)) => {
                format!("OUT living-disconnected {}", g.format_set(*s))
            }
            RaagVerdict::Out(RaagOut::NotDominating(s)) => {
                format!("OUT not-dominating {}", g.format_set(*s))
            }
        }
    }
}

/// The character basis given by the vertices of `g`.
pub fn vertex_basis(g: &Graph) -> Basis {
    Basis::new(g.labels().iter().cloned()).expect("vertex labels are distinct")
}

fn check_vertex_basis(g: &Graph, c: &Character) -> Result<()> {
    if c.basis().names() == g.labels() {
        Ok(())
    } else {
        Err(Error::BasisMismatch(format!(
            "character over ({}) but graph vertices are ({})",
            c.basis().names().join(","),
            g.labels().join(",")
        )))
    }
}

/// Verdict for a nonempty living set.
fn judge_living(g: &Graph, living: VertexSet) -> RaagVerdict {
    if !g.is_connected_on(living) {
        return RaagVerdict::Out(RaagOut::LivingDisconnected(living));
    }
    let undominated = g.undominated(living);
    if !undominated.is_empty() {
        return RaagVerdict::Out(RaagOut::NotDominating(undominated));
    }
    RaagVerdict::In
}

pub fn sigma_membership(g: &Graph, c: &Character) -> Result<RaagVerdict> {
    check_vertex_basis(g, c)?;
    let living = VertexSet::from_indices((0..g.vertex_count()).filter(|&v| !c.value(v).is_zero()));
    if living.is_empty() {
        return Ok(RaagVerdict::Out(RaagOut::ZeroCharacter));
    }
    Ok(judge_living(g, living))
}

/// Inclusion-minimal proper dead sets `W` such that characters dead on
/// exactly `W` lie outside Σ¹, sorted by size then lexicographically.
///
/// Failure is inherited by every larger proper dead set (a connected subset
/// of a disconnected living set misses a whole component, whose vertices
/// are then undominated), so these sets describe the complement completely.
pub fn sigma_complement_supports(g: &Graph) -> Result<Vec<VertexSet>> {
    let n = g.vertex_count();
    if n > MAX_COMPLEMENT_SCAN {
        return Err(Error::Unsupported(format!(
            "subset scan limited to {MAX_COMPLEMENT_SCAN} vertices"
        )));
    }
    let full = g.vertices();
    let mut candidates: Vec<VertexSet> = (0..(1u64 << n) - 1).map(VertexSet::from_bits).collect();
    candidates.sort_by(VertexSet::canonical_cmp);
    let mut minimal: Vec<VertexSet> = Vec::new();
    for w in candidates {
        if minimal.iter().any(|m| m.is_subset(w)) {
            continue;
        }
        if !judge_living(g, full.difference(w)).is_in() {
            minimal.push(w);
        }
    }
    Ok(minimal)
}

fn check_pairwise_commuting(g: &Graph, gens: &[Word]) -> Result<()> {
    for (i, u) in gens.iter().enumerate() {
        for v in &gens[i + 1..] {
            if !raag_commute(g, u, v)? {
                return Err(Error::Precondition(format!(
                    "generators {} and {} do not commute",
                    u.display(&vertex_basis(g)),
                    v.display(&vertex_basis(g))
                )));
            }
        }
    }
    for u in gens {
        abelianize(&vertex_basis(g), u)?;
    }
    Ok(())
}

fn abelianized(g: &Graph, gens: &[Word]) -> Result<Vec<Vec<i64>>> {
    let basis = vertex_basis(g);
    gens.iter().map(|w| abelianize(&basis, w)).collect()
}

/// Vertices lying in the radical of `K[A_Γ, A_Γ]` for `K = ⟨gens⟩`: those
/// whose basis vector is in the ℚ-span of the abelianized generators. For
/// pairwise commuting generators this is a clique.
pub fn delta_k(g: &Graph, gens: &[Word]) -> Result<VertexSet> {
    check_pairwise_commuting(g, gens)?;
    let rows = abelianized(g, gens)?;
    Ok(span_vertices(g, &rows))
}

fn span_vertices(g: &Graph, rows: &[Vec<i64>]) -> VertexSet {
    let n = g.vertex_count();
    let rational: Vec<Vec<Rational>> = rows.iter().map(|r| linalg::to_rational_vec(r)).collect();
    let span = Subspace::span(n, &rational);
    VertexSet::from_indices((0..n).filter(|&v| {
        let mut e = vec![Rational::zero(); n];
        e[v] = linalg::rational(1);
        span.contains_vector(&e)
    }))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KillReport {
    pub lattice: SaturatedLattice,
    /// Characters whose common kernel is the saturation of `φ(K)`.
    pub kernel: VectorCharacter,
    /// `Δ_K`, the dead set of `specialized`.
    pub dead: VertexSet,
    /// A single character killing `K` with dead set exactly `Δ_K`.
    pub specialized: Character,
    pub plus: RaagVerdict,
    pub minus: RaagVerdict,
}

/// Kills a proper abelian subgroup `K = ⟨gens⟩` by a character whose dead
/// subgraph is `Δ_K` and tests `±χ` for Σ¹ membership.
///
/// When the graph has no separating cliques of size at most `|gens|` both
/// verdicts are `In`.
pub fn kill_and_test(g: &Graph, gens: &[Word]) -> Result<KillReport> {
    check_pairwise_commuting(g, gens)?;
    let basis = vertex_basis(g);
    let rows = abelianized(g, gens)?;
    let lattice = SaturatedLattice::saturate(&basis, &rows)?;
    if lattice.rank() == g.vertex_count() {
        return Err(Error::Precondition(
            "the subgroup has full rank in the abelianization, so it is not proper".into(),
        ));
    }
    let kernel = lattice.kill_character();
    let dead = span_vertices(g, &rows);
    let n = g.vertex_count();
    let bad: Vec<Subspace> = (0..n)
        .filter(|&v| !dead.contains(v))
        .map(|v| {
            let mut e = vec![Rational::zero(); n];
            e[v] = linalg::rational(1);
            Subspace::from_equations(n, &[e])
        })
        .collect();
    let GenericPoint::Found(v) = generic_point_avoiding(&kernel.row_space(), &bad)? else {
        unreachable!("a vertex outside Δ_K is not killed by every character")
    };
    let specialized = Character::new(basis, v)?.canonical_class()?;
    let plus = sigma_membership(g, &specialized)?;
    let minus = sigma_membership(g, &specialized.negate())?;
    Ok(KillReport {
        lattice,
        kernel,
        dead,
        specialized,
        plus,
        minus,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SplitVerdict {
    /// `A_Γ` is not commensurable to any group splitting non-trivially over `ℤ^k`.
    NoVirtualSplit,
    /// `A_Γ` itself splits over `ℤ^m`, `m ≤ k`, along this separating clique.
    SplitWitness(VertexSet),
    /// Complete graphs: `ℤ^n` is an HNN extension of `ℤ^(n-1)`, so nothing
    /// is claimed.
    NoClaim,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitReport {
    pub vertices: usize,
    pub edges: usize,
    pub is_clique: bool,
    pub min_separating_clique: Option<VertexSet>,
    /// Verdicts for `k = 0..=max_k`.
    pub verdicts: Vec<SplitVerdict>,
    /// Not commensurable to any group splitting over a subgroup without
    /// non-abelian free subgroups.
    pub nf_certificate: bool,
    pub invariant: CommInvariant,
}

pub fn virtual_split_report(g: &Graph, max_k: usize) -> SplitReport {
    let is_clique = g.is_complete();
    let witness = if is_clique {
        None
    } else {
        g.min_separating_clique_witness()
    };
    let verdicts = (0..=max_k)
        .map(|k| match witness {
            _ if is_clique => SplitVerdict::NoClaim,
            Some(c) if c.len() <= k => SplitVerdict::SplitWitness(c),
            _ => SplitVerdict::NoVirtualSplit,
        })
        .collect();
    SplitReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        is_clique,
        min_separating_clique: witness,
        verdicts,
        nf_certificate: !is_clique && witness.is_none(),
        invariant: commensurability_invariant(g),
    }
}

/// Smallest separating clique size (`None` when there is none) for
/// non-cliques; the vertex count for cliques, whose RAAGs are free abelian.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CommInvariant {
    Clique(usize),
    MinSeparatingClique(Option<usize>),
}

impl fmt::Display for CommInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommInvariant::Clique(n) => write!(f, "clique-{n}"),
            CommInvariant::MinSeparatingClique(Some(m)) => write!(f, "{m}"),
            CommInvariant::MinSeparatingClique(None) => f.write_str("absent"),
        }
    }
}

pub fn commensurability_invariant(g: &Graph) -> CommInvariant {
    if g.is_complete() {
        CommInvariant::Clique(g.vertex_count())
    } else {
        CommInvariant::MinSeparatingClique(g.min_separating_clique())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CommVerdict {
    NotCommensurable,
    Inconclusive,
    /// Both graphs are complete of the same size.
    Isomorphic,
}

impl fmt::Display for CommVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommVerdict::NotCommensurable => "not-commensurable",
            CommVerdict::Inconclusive => "inconclusive",
            CommVerdict::Isomorphic => "isomorphic",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CommComparison {
    pub first: CommInvariant,
    pub second: CommInvariant,
    pub verdict: CommVerdict,
}

pub fn commensurability_compare(g1: &Graph, g2: &Graph) -> CommComparison {
    let (first, second) = (
        commensurability_invariant(g1),
        commensurability_invariant(g2),
    );
    use CommInvariant::*;
    let verdict = match (first, second) {
        (Clique(a), Clique(b)) if a == b => CommVerdict::Isomorphic,
        (Clique(_), _) | (_, Clique(_)) => CommVerdict::NotCommensurable,
        (a, b) if a == b => CommVerdict::Inconclusive,
        _ => CommVerdict::NotCommensurable,
    };
    CommComparison {
        first,
        second,
        verdict,
    }
}
