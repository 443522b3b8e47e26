//! Acceptance suite: one PASS/FAIL line per criterion. Every expected value
//! is recomputed here by a routine that does not go through the library's
//! own algorithm.

#[path = "common/golden.rs"]
mod golden;

use std::collections::HashMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bns::braid::{pb3_reduce, PureBraidGroup};
use bns::character::abelianize;
use bns::graph::Graph;
use bns::linalg::{ratio, Rational};
use bns::loop_braid::PureLoopBraidGroup;
use bns::projection::{
    witness_is_sound, DeadProjection, Obstruction, ObstructionReport, WitnessPair,
};
use bns::raag::{self, vertex_basis};
use bns::words::{raag_normal_form, F2ZElement, Letter};
use bns::{Basis, Character, Subspace, VertexSet, Word};
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 11] = [
        (
            "RAAG oracle equivalence on 5-vertex graphs",
            Some(Duration::from_secs(30)),
            raag_oracle,
        ),
        (
            "monotone badness and minimal supports",
            Some(Duration::from_secs(30)),
            monotone_badness,
        ),
        ("separating clique golden values", None, separating_cliques),
        (
            "kill-subgroup suite",
            Some(Duration::from_secs(60)),
            kill_subgroup_suite,
        ),
        ("killing characters on C5 and C6", None, cycles_positive),
        ("PB golden equations", None, pb_golden),
        (
            "PB/PLB negation and scaling invariance",
            None,
            symmetry_and_scaling,
        ),
        ("witness soundness", None, witness_soundness),
        ("obstruction pipeline totality", None, obstruction_totality),
        (
            "word engine against rewriting search",
            Some(Duration::from_secs(120)),
            word_engine,
        ),
        ("CLI golden corpus", None, cli_corpus),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| Err(panic_message(p)));
        let elapsed = start.elapsed();
        let result = result.and_then(|()| match budget {
            Some(b) if elapsed > *b => Err(format!("took {elapsed:?}, budget {b:?}")),
            _ => Ok(()),
        });
        match result {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({:.2?})", i + 1, elapsed),
            Err(e) => {
                failed += 1;
                println!(
                    "criterion {:>2}: FAIL  {name} ({:.2?}): {e}",
                    i + 1,
                    elapsed
                );
            }
        }
    }
    let _ = panic::take_hook();
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

// ---------------------------------------------------------------------------
// Independent graph oracles on adjacency matrices.

struct Adj {
    n: usize,
    m: Vec<Vec<bool>>,
}

impl Adj {
    fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Adj {
        let mut m = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            m[a][b] = true;
            m[b][a] = true;
        }
        Adj { n, m }
    }

    fn graph(&self) -> Graph {
        let edges: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.m[i][j])
            .collect();
        Graph::with_numbered_vertices(self.n, &edges).unwrap()
    }

    /// Connectivity of the subgraph induced on `keep` (empty is disconnected).
    fn connected(&self, keep: &[bool]) -> bool {
        let Some(s) = keep.iter().position(|&k| k) else {
            return false;
        };
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in 0..self.n {
                if keep[w] && self.m[v][w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        (0..self.n).all(|v| !keep[v] || seen[v])
    }

    fn dominating(&self, keep: &[bool]) -> bool {
        (0..self.n).all(|v| keep[v] || (0..self.n).any(|w| keep[w] && self.m[v][w]))
    }

    fn living_ok(&self, living: &[bool]) -> bool {
        self.connected(living) && self.dominating(living)
    }

    fn is_clique(&self, s: &[bool]) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| a == b || !s[a] || !s[b] || self.m[a][b]))
    }

    fn separating(&self, s: &[bool]) -> bool {
        let rest: Vec<bool> = s.iter().map(|&x| !x).collect();
        rest.iter().any(|&x| x) && !self.connected(&rest)
    }

    fn brute_min_separating_clique(&self) -> Option<usize> {
        (0u32..1 << self.n)
            .filter_map(|bits| {
                let s: Vec<bool> = (0..self.n).map(|v| bits >> v & 1 == 1).collect();
                (self.is_clique(&s) && self.separating(&s)).then_some(bits.count_ones() as usize)
            })
            .min()
    }
}

fn all_graphs(n: usize) -> impl Iterator<Item = Adj> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Adj::from_pairs(n, &chosen)
    })
}

fn sign_patterns(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..3usize.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let d = (code % 3) as i64 - 1;
                code /= 3;
                d
            })
            .collect()
    })
}

fn raag_oracle() -> Outcome {
    let mut graphs = 0;
    for adj in all_graphs(5) {
        graphs += 1;
        let g = adj.graph();
        let basis = vertex_basis(&g);
        for signs in sign_patterns(5).filter(|s| s.iter().any(|&x| x != 0)) {
            let c = Character::from_ints(basis.clone(), &signs).unwrap();
            let living: Vec<bool> = signs.iter().map(|&x| x != 0).collect();
            let got = raag::sigma_membership(&g, &c).unwrap().is_in();
            ensure!(got == adj.living_ok(&living), "graph {g}: character {c}");
        }
    }
    ensure!(graphs == 1024, "enumerated {graphs} graphs");
    Ok(())
}

fn monotone_badness() -> Outcome {
    for adj in all_graphs(5) {
        let g = adj.graph();
        let full = (1u32 << 5) - 1;
        let bad = |w: u32| {
            let living: Vec<bool> = (0..5).map(|v| w >> v & 1 == 0).collect();
            !adj.living_ok(&living)
        };
        for w in 0..full {
            if !bad(w) {
                continue;
            }
            for bigger in (w..full).filter(|b| b & w == w) {
                ensure!(bad(bigger), "graph {g}: {w:05b} bad but {bigger:05b} not");
            }
        }
        let mut minimal: Vec<u32> = (0..full)
            .filter(|&w| bad(w) && (0..full).all(|s| s == w || s & w != s || !bad(s)))
            .collect();
        minimal.sort_by_key(|&w| {
            let idx: Vec<u32> = (0..5).filter(|v| w >> v & 1 == 1).collect();
            (w.count_ones(), idx)
        });
        let got: Vec<u32> = raag::sigma_complement_supports(&g)
            .unwrap()
            .iter()
            .map(|s| s.bits() as u32)
            .collect();
        ensure!(
            got == minimal,
            "graph {g}: supports {got:?}, expected {minimal:?}"
        );
    }
    Ok(())
}

fn separating_cliques() -> Outcome {
    let named = |labels: &[&str], edges: &[(&str, &str)]| {
        let g = Graph::new(labels, edges).unwrap();
        let idx = |s: &str| labels.iter().position(|&l| l == s).unwrap();
        let pairs: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
        (g, Adj::from_pairs(labels.len(), &pairs))
    };
    let cases = [
        (
            "P3",
            named(&["a", "b", "c"], &[("a", "b"), ("b", "c")]),
            Some(1),
        ),
        (
            "C4",
            named(
                &["1", "2", "3", "4"],
                &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")],
            ),
            None,
        ),
        (
            "C5",
            named(
                &["1", "2", "3", "4", "5"],
                &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "1")],
            ),
            None,
        ),
        (
            "bowtie",
            named(
                &["a", "b", "c", "d", "e"],
                &[
                    ("a", "b"),
                    ("b", "c"),
                    ("a", "c"),
                    ("c", "d"),
                    ("d", "e"),
                    ("c", "e"),
                ],
            ),
            Some(1),
        ),
        (
            "diamond",
            named(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")],
            ),
            Some(2),
        ),
        (
            "disconnected",
            named(&["a", "b", "c"], &[("a", "b")]),
            Some(0),
        ),
    ];
    for (name, (g, adj), want) in cases {
        ensure!(
            g.min_separating_clique() == want,
            "{name}: got {:?}",
            g.min_separating_clique()
        );
        ensure!(
            adj.brute_min_separating_clique() == want,
            "{name}: brute force disagrees"
        );
    }
    for n in 1..=6 {
        for adj in all_graphs(n) {
            let g = adj.graph();
            ensure!(
                g.min_separating_clique() == adj.brute_min_separating_clique(),
                "graph {g}"
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exact integer linear algebra for the oracles (small entries, i128).

fn rank_i128(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for k in 0..cols {
                    m[r][k] = m[r][k] * a - m[rank][k] * b;
                }
                let g = m[r].iter().fold(0i128, |g, &x| gcd(g, x));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// A full-rank integer row set spans a saturated lattice iff the gcd of its
/// maximal minors is 1.
fn is_saturated(rows: &[Vec<i128>]) -> bool {
    let r = rows.len();
    if r == 0 {
        return true;
    }
    let d = rows[0].len();
    let mut g = 0;
    for cols in itertools_combinations(d, r) {
        let sub: Vec<Vec<i128>> = rows
            .iter()
            .map(|row| cols.iter().map(|&c| row[c]).collect())
            .collect();
        g = gcd(g, det(&sub));
    }
    g == 1
}

fn itertools_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn to_i128_rows(rows: &[Vec<num_bigint::BigInt>]) -> Vec<Vec<i128>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect())
        .collect()
}

fn exponent_sums(n: usize, w: &Word) -> Vec<i128> {
    let mut v = vec![0i128; n];
    for l in w.letters() {
        v[l.generator] += if l.inverse { -1 } else { 1 };
    }
    v
}

// ---------------------------------------------------------------------------
// Random commuting generators in a RAAG.

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| Letter::new(rng.gen_range(0..n), rng.gen_bool(0.5)))
        .collect()
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Adj {
    let n = rng.gen_range(1..=max_n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Adj::from_pairs(n, &pairs)
}

/// Up to `max_k` pairwise commuting words: products of powers over a random
/// clique, or powers of one root word, all conjugated by a common word.
fn commuting_gens(rng: &mut ChaCha8Rng, adj: &Adj, max_k: usize) -> Vec<Word> {
    let n = adj.n;
    let k = rng.gen_range(1..=max_k);
    let gens: Vec<Word> = if rng.gen_bool(0.5) {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut clique: Vec<usize> = Vec::new();
        for v in order {
            if clique.len() < 3 && clique.iter().all(|&u| adj.m[u][v]) {
                clique.push(v);
            }
        }
        (0..k)
            .map(|_| {
                let mut syl: Vec<(usize, i64)> =
                    clique.iter().map(|&v| (v, rng.gen_range(-2..=2))).collect();
                syl.shuffle(rng);
                Word::from_syllables(&syl)
            })
            .collect()
    } else {
        let root = random_word(rng, n, 4);
        (0..k)
            .map(|_| {
                let e = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
                root.pow(e)
            })
            .collect()
    };
    let c = random_word(rng, n, 3);
    gens.iter().map(|w| w.conjugate_by(&c)).collect()
}

fn kill_subgroup_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..1000 {
        let adj = random_graph(&mut rng, 6);
        let g = adj.graph();
        let n = adj.n;
        let gens = commuting_gens(&mut rng, &adj, 3);
        let basis = vertex_basis(&g);
        let ab: Vec<Vec<i64>> = gens
            .iter()
            .map(|w| abelianize(&basis, w).unwrap())
            .collect();
        let ab128: Vec<Vec<i128>> = gens.iter().map(|w| exponent_sums(n, w)).collect();

        let lattice = bns::SaturatedLattice::saturate(&basis, &ab).unwrap();
        let rows = to_i128_rows(lattice.rows());
        let r = rank_i128(&ab128);
        ensure!(
            rows.len() == r,
            "trial {trial}: lattice rank {} vs {r}",
            rows.len()
        );
        let mut joint = ab128.clone();
        joint.extend(rows.iter().cloned());
        ensure!(
            rank_i128(&joint) == r,
            "trial {trial}: lattice leaves the span"
        );
        ensure!(is_saturated(&rows), "trial {trial}: lattice not saturated");

        let kill = lattice.kill_character();
        ensure!(
            kill.rank() + r == n,
            "trial {trial}: killing rank {}",
            kill.rank()
        );
        for i in 0..kill.rank() {
            let row = kill.row(i);
            for v in &ab128 {
                let val: Rational = row
                    .values()
                    .iter()
                    .zip(v)
                    .map(|(x, &y)| x * Rational::from_integer((y as i64).into()))
                    .sum();
                ensure!(
                    val.is_zero(),
                    "trial {trial}: killing character misses a generator"
                );
            }
        }
        ensure!(
            kill.common_kernel() == lattice.rational_span(),
            "trial {trial}: kernel differs from saturation"
        );

        let delta = raag::delta_k(&g, &gens).unwrap();
        let oracle: Vec<usize> = (0..n)
            .filter(|&v| {
                let mut with = ab128.clone();
                with.push((0..n).map(|u| i128::from(u == v)).collect());
                rank_i128(&with) == r
            })
            .collect();
        ensure!(
            delta == VertexSet::from_indices(oracle.iter().copied()),
            "trial {trial}: Δ_K {delta:?} vs {oracle:?}"
        );
        let vanishing =
            (0..n).filter(|&v| (0..kill.rank()).all(|i| kill.row(i).value(v).is_zero()));
        ensure!(
            VertexSet::from_indices(vanishing) == delta,
            "trial {trial}: vanishing generators differ from Δ_K"
        );
        ensure!(delta.len() <= gens.len(), "trial {trial}: |Δ_K| > |gens|");
        let in_delta: Vec<bool> = (0..n).map(|v| delta.contains(v)).collect();
        ensure!(adj.is_clique(&in_delta), "trial {trial}: Δ_K not a clique");

        let d = random_word(&mut rng, n, 3);
        let conj: Vec<Word> = gens.iter().map(|w| w.conjugate_by(&d)).collect();
        ensure!(
            raag::delta_k(&g, &conj).unwrap() == delta,
            "trial {trial}: conjugation"
        );
        let powered: Vec<Word> = gens
            .iter()
            .map(|w| w.pow(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        ensure!(
            raag::delta_k(&g, &powered).unwrap() == delta,
            "trial {trial}: powers"
        );
    }
    Ok(())
}

fn cycles_positive() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [5, 6] {
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let adj = Adj::from_pairs(n, &pairs);
        let g = adj.graph();
        for trial in 0..200 {
            let gens = commuting_gens(&mut rng, &adj, 2);
            let rep =
                raag::kill_and_test(&g, &gens).map_err(|e| format!("C{n} trial {trial}: {e}"))?;
            ensure!(
                rep.plus.is_in() && rep.minus.is_in(),
                "C{n} trial {trial}: {:?} / {:?}",
                rep.plus,
                rep.minus
            );
            let dead: Vec<usize> = (0..n)
                .filter(|&v| rep.specialized.value(v).is_zero())
                .collect();
            ensure!(
                VertexSet::from_indices(dead.iter().copied()) == rep.dead,
                "C{n} trial {trial}: dead set"
            );
            for w in &gens {
                ensure!(
                    rep.specialized.eval_word(w).unwrap().is_zero(),
                    "C{n} trial {trial}: not killed"
                );
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Braid and loop braid families behind one interface.

trait Family {
    fn name(&self) -> String;
    fn basis(&self) -> &Basis;
    fn verdict(&self, c: &Character) -> (bool, String);
    fn loci(&self) -> Vec<Subspace>;
    fn witness(&self, c: &Character) -> (WitnessPair, (F2ZElement, F2ZElement));
    fn obstruct(&self, gens: &[Vec<i64>]) -> ObstructionSummary;
}

enum ObstructionSummary {
    Certificate {
        character: Character,
        plus_in: bool,
        minus_in: bool,
    },
    Covered {
        locus_space: Subspace,
        witness: WitnessPair,
        reduced: (F2ZElement, F2ZElement),
    },
}

fn summarize<B: Clone + PartialEq>(
    rep: ObstructionReport<B>,
    loci: Vec<(DeadProjection<B>, Subspace)>,
    in_sigma: impl Fn(&Character) -> bool,
) -> ObstructionSummary {
    match rep.outcome {
        Obstruction::Certificate { character, .. } => ObstructionSummary::Certificate {
            plus_in: in_sigma(&character),
            minus_in: in_sigma(&character.negate()),
            character,
        },
        Obstruction::Covered {
            locus,
            witness,
            reduced,
            ..
        } => ObstructionSummary::Covered {
            locus_space: loci.into_iter().find(|(p, _)| *p == locus).unwrap().1,
            witness,
            reduced,
        },
    }
}

impl Family for PureBraidGroup {
    fn name(&self) -> String {
        format!("PB_{}", self.strands())
    }
    fn basis(&self) -> &Basis {
        PureBraidGroup::basis(self)
    }
    fn verdict(&self, c: &Character) -> (bool, String) {
        let v = self.sigma_membership(c).unwrap();
        (v.is_in(), format!("{v:?}"))
    }
    fn loci(&self) -> Vec<Subspace> {
        self.dead_subspaces().into_iter().map(|(_, s)| s).collect()
    }
    fn witness(&self, c: &Character) -> (WitnessPair, (F2ZElement, F2ZElement)) {
        let w = self.witness_pair(c).unwrap();
        let r = self.reduce_witness(&w).unwrap();
        (w, r)
    }
    fn obstruct(&self, gens: &[Vec<i64>]) -> ObstructionSummary {
        let rep = self.nf_obstruction_demo(gens).unwrap();
        summarize(rep, self.dead_subspaces(), |c| {
            self.sigma_membership(c).unwrap().is_in()
        })
    }
}

impl Family for PureLoopBraidGroup {
    fn name(&self) -> String {
        format!("PLB_{}", self.strands())
    }
    fn basis(&self) -> &Basis {
        PureLoopBraidGroup::basis(self)
    }
    fn verdict(&self, c: &Character) -> (bool, String) {
        let v = self.sigma_membership(c).unwrap();
        (v.is_in(), format!("{v:?}"))
    }
    fn loci(&self) -> Vec<Subspace> {
        self.dead_subspaces().into_iter().map(|(_, s)| s).collect()
    }
    fn witness(&self, c: &Character) -> (WitnessPair, (F2ZElement, F2ZElement)) {
        let w = self.witness_pair(c).unwrap();
        let r = self.reduce_witness(&w).unwrap();
        (w, r)
    }
    fn obstruct(&self, gens: &[Vec<i64>]) -> ObstructionSummary {
        let rep = self.nf_obstruction_demo(gens).unwrap();
        summarize(rep, self.dead_subspaces(), |c| {
            self.sigma_membership(c).unwrap().is_in()
        })
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn random_in(rng: &mut ChaCha8Rng, s: &Subspace) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); s.ambient_dim()];
    for b in s.basis() {
        let t = random_rational(rng);
        for (x, y) in v.iter_mut().zip(b) {
            *x += &t * y;
        }
    }
    v
}

/// A nonzero character lying in a random dead locus.
fn random_dead(rng: &mut ChaCha8Rng, f: &dyn Family) -> Character {
    let loci = f.loci();
    loop {
        let s = loci.choose(rng).unwrap();
        let v = random_in(rng, s);
        if v.iter().any(|x| !x.is_zero()) {
            return Character::new(f.basis().clone(), v).unwrap();
        }
    }
}

fn random_character(rng: &mut ChaCha8Rng, f: &dyn Family) -> Character {
    if rng.gen_bool(0.5) {
        return random_dead(rng, f);
    }
    let density = rng.gen_range(0.1..=1.0);
    let v = (0..f.basis().len())
        .map(|_| {
            if rng.gen_bool(density) {
                random_rational(rng)
            } else {
                Rational::zero()
            }
        })
        .collect();
    Character::new(f.basis().clone(), v).unwrap()
}

fn families(pb: &[usize], plb: &[usize]) -> Vec<Box<dyn Family>> {
    let mut out: Vec<Box<dyn Family>> = Vec::new();
    for &n in pb {
        out.push(Box::new(PureBraidGroup::new(n).unwrap()));
    }
    for &n in plb {
        out.push(Box::new(PureLoopBraidGroup::new(n).unwrap()));
    }
    out
}

/// Index of `S(i,j)`, `i < j`, in the lexicographic pair order.
fn pb_index(n: usize, i: usize, j: usize) -> usize {
    (1..i).map(|a| n - a).sum::<usize>() + (j - i - 1)
}

/// Full enumeration of standard projections, written against the pair
/// indexing formula rather than the library.
fn pb_dead_by_enumeration(n: usize, v: &[Rational]) -> bool {
    let induced = |kept: &[usize]| -> Option<Vec<Rational>> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let x = &v[pb_index(n, i, j)];
                if kept.contains(&i) && kept.contains(&j) {
                    out.push(x.clone());
                } else if !x.is_zero() {
                    return None;
                }
            }
        }
        Some(out)
    };
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let threes = itertools_combinations(n, 3);
    let fours = if n >= 4 {
        itertools_combinations(n, 4)
    } else {
        Vec::new()
    };
    threes.iter().any(|k| {
        let k: Vec<usize> = k.iter().map(|x| x + 1).collect();
        induced(&k).is_some_and(|p| (&p[0] + &p[1] + &p[2]).is_zero())
    }) || fours.iter().any(|k| {
        let k: Vec<usize> = k.iter().map(|x| x + 1).collect();
        induced(&k).is_some_and(|p| {
            let (s12, s13, s14, s23, s24, s34) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5]);
            s12 == s34 && s13 == s24 && s14 == s23 && (s12 + s13 + s14).is_zero()
        })
    })
}

fn pb_golden() -> Outcome {
    let pb3 = PureBraidGroup::new(3).unwrap();
    let c = Character::from_ints(pb3.basis().clone(), &[1, 1, -2]).unwrap();
    ensure!(
        !pb3.sigma_membership(&c).unwrap().is_in(),
        "(1,1,-2) should be dead in PB_3"
    );
    ensure!(pb_dead_by_enumeration(3, c.values()), "oracle: (1,1,-2)");

    let pb4 = PureBraidGroup::new(4).unwrap();
    let v = [1i64, 1, -2, -2, 1, 1];
    let (s12, s13, s14, s23, s24, s34) = (v[0], v[1], v[2], v[3], v[4], v[5]);
    ensure!(
        s12 == s34 && s13 == s24 && s14 == s23 && s12 + s13 + s14 == 0,
        "the four equations fail"
    );
    let c = Character::from_ints(pb4.basis().clone(), &v).unwrap();
    let verdict = pb4.sigma_membership(&c).unwrap();
    ensure!(
        verdict
            .dead_projection()
            .is_some_and(|p| p.base == bns::braid::PbBase::Pb4Exceptional),
        "PB_4 verdict {verdict:?}"
    );
    ensure!(pb_dead_by_enumeration(4, c.values()), "oracle: PB_4 vector");

    let pb5 = PureBraidGroup::new(5).unwrap();
    let mut e12 = vec![0i64; 10];
    e12[pb_index(5, 1, 2)] = 1;
    let c = Character::from_ints(pb5.basis().clone(), &e12).unwrap();
    ensure!(
        pb5.sigma_membership(&c).unwrap().is_in(),
        "e_S(1,2) should be alive in PB_5"
    );
    ensure!(!pb_dead_by_enumeration(5, c.values()), "oracle: e_S(1,2)");

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 3..=6 {
        let f = PureBraidGroup::new(n).unwrap();
        for _ in 0..300 {
            let c = random_character(&mut rng, &f);
            ensure!(
                !f.sigma_membership(&c).unwrap().is_in() == pb_dead_by_enumeration(n, c.values()),
                "PB_{n}: {c}"
            );
        }
    }
    Ok(())
}

fn symmetry_and_scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in families(&[3, 4, 5, 6], &[2, 3, 4, 5, 6]) {
        for _ in 0..1000 {
            let c = random_character(&mut rng, f.as_ref());
            let base = f.verdict(&c);
            ensure!(
                f.verdict(&c.negate()) == base,
                "{}: negation of {c}",
                f.name()
            );
            let mut s = random_rational(&mut rng);
            while s.is_zero() {
                s = random_rational(&mut rng);
            }
            ensure!(
                f.verdict(&c.scale(&s)) == base,
                "{}: scaling {c} by {s}",
                f.name()
            );
        }
    }
    Ok(())
}

/// Free reduction and commutation in F₂, independent of the library.
fn free_parts_generate_f2(x: &F2ZElement, y: &F2ZElement) -> bool {
    fn reduce(letters: impl Iterator<Item = (usize, bool)>) -> Vec<(usize, bool)> {
        let mut out: Vec<(usize, bool)> = Vec::new();
        for l in letters {
            if out.last() == Some(&(l.0, !l.1)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    }
    let a: Vec<(usize, bool)> = x
        .free_part()
        .letters()
        .iter()
        .map(|l| (l.generator, l.inverse))
        .collect();
    let b: Vec<(usize, bool)> = y
        .free_part()
        .letters()
        .iter()
        .map(|l| (l.generator, l.inverse))
        .collect();
    let inv = |w: &[(usize, bool)]| w.iter().rev().map(|&(g, i)| (g, !i)).collect::<Vec<_>>();
    let commutator = reduce(
        a.iter()
            .chain(b.iter())
            .chain(inv(&a).iter())
            .chain(inv(&b).iter())
            .copied(),
    );
    !a.is_empty() && !b.is_empty() && !commutator.is_empty()
}

fn witness_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for f in families(&[4, 5, 6], &[3, 4, 5]) {
        let d = f.basis().len();
        for _ in 0..200 {
            let c = random_dead(&mut rng, f.as_ref());
            ensure!(!f.verdict(&c).0, "{}: sampled {c} is not dead", f.name());
            let (w, red) = f.witness(&c);
            for word in [&w.first, &w.second] {
                let sums = exponent_sums(d, word);
                let val: Rational = c
                    .values()
                    .iter()
                    .zip(&sums)
                    .map(|(x, &y)| x * Rational::from_integer((y as i64).into()))
                    .sum();
                ensure!(
                    val.is_zero(),
                    "{}: witness word does not vanish under {c}",
                    f.name()
                );
            }
            ensure!(
                free_parts_generate_f2(&red.0, &red.1),
                "{}: reductions {} {}",
                f.name(),
                red.0,
                red.1
            );
            ensure!(
                witness_is_sound(f.basis(), &[c.clone()], &w, &red).unwrap(),
                "{}: library check",
                f.name()
            );
        }
    }
    Ok(())
}

fn obstruction_totality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut branches = [0usize; 2];
    for f in families(&[4, 5], &[3, 4]) {
        let d = f.basis().len();
        let loci = f.loci();
        for trial in 0..100 {
            let rank = rng.gen_range(0..=3);
            let gens: Vec<Vec<i64>> = if rng.gen_bool(0.3) {
                // equations of a random locus, which may cover the annihilator
                let s = loci.choose(&mut rng).unwrap();
                let eqs: Vec<Vec<i64>> = s
                    .equations()
                    .iter()
                    .map(|e| {
                        bns::linalg::primitive_integer(e)
                            .iter()
                            .map(|x| x.to_i64().unwrap())
                            .collect()
                    })
                    .collect();
                eqs.into_iter().take(rank).collect()
            } else {
                (0..rank)
                    .map(|_| {
                        (0..d)
                            .map(|_| {
                                if rng.gen_bool(0.3) {
                                    rng.gen_range(-2..=2)
                                } else {
                                    0
                                }
                            })
                            .collect()
                    })
                    .collect()
            };
            let gens128: Vec<Vec<i128>> = gens
                .iter()
                .map(|g| g.iter().map(|&x| x as i128).collect())
                .collect();
            let tag = format!("{} trial {trial}", f.name());
            match f.obstruct(&gens) {
                ObstructionSummary::Certificate {
                    character,
                    plus_in,
                    minus_in,
                } => {
                    branches[0] += 1;
                    ensure!(
                        !character.is_zero() && plus_in && minus_in,
                        "{tag}: certificate {character}"
                    );
                    for g in &gens {
                        ensure!(
                            character.eval(g).unwrap().is_zero(),
                            "{tag}: certificate does not kill"
                        );
                    }
                }
                ObstructionSummary::Covered {
                    locus_space,
                    witness,
                    reduced,
                } => {
                    branches[1] += 1;
                    // every character killing the lattice lies in the locus
                    let mut eqs = gens128.clone();
                    for e in locus_space.equations() {
                        let ints: Vec<i128> = bns::linalg::primitive_integer(e)
                            .iter()
                            .map(|x| x.to_i128().unwrap())
                            .collect();
                        eqs.push(ints);
                    }
                    ensure!(
                        rank_i128(&eqs) == rank_i128(&gens128),
                        "{tag}: locus does not cover"
                    );
                    let ws = [
                        exponent_sums(d, &witness.first),
                        exponent_sums(d, &witness.second),
                    ];
                    for e in locus_space.basis() {
                        for w in &ws {
                            let v: Rational = e
                                .iter()
                                .zip(w)
                                .map(|(x, &y)| x * Rational::from_integer((y as i64).into()))
                                .sum();
                            ensure!(v.is_zero(), "{tag}: witness not killed by the locus");
                        }
                    }
                    ensure!(
                        free_parts_generate_f2(&reduced.0, &reduced.1),
                        "{tag}: reductions commute"
                    );
                }
            }
        }
    }
    ensure!(
        branches[0] > 0 && branches[1] > 0,
        "branches exercised: {branches:?}"
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// Word engine.

type Code = Vec<u8>;

fn shortlex_less(a: &Code, b: &Code) -> bool {
    (a.len(), a) < (b.len(), b)
}

/// Shortlex-least word reachable from `w` by swapping adjacent commuting
/// letters and deleting adjacent inverse pairs. Letters are coded as
/// `2·generator + inverse`.
fn rewrite_min(w: &Code, comm: &[Vec<bool>], memo: &mut HashMap<Code, Code>) -> Code {
    if let Some(m) = memo.get(w) {
        return m.clone();
    }
    let mut class = vec![w.clone()];
    let mut seen: std::collections::HashSet<Code> = class.iter().cloned().collect();
    let mut i = 0;
    while i < class.len() {
        let u = class[i].clone();
        for k in 0..u.len().saturating_sub(1) {
            let (a, b) = (u[k] as usize / 2, u[k + 1] as usize / 2);
            if a != b && comm[a][b] {
                let mut s = u.clone();
                s.swap(k, k + 1);
                if seen.insert(s.clone()) {
                    class.push(s);
                }
            }
        }
        i += 1;
    }
    let mut best = class
        .iter()
        .min_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)))
        .unwrap()
        .clone();
    for u in &class {
        for k in 0..u.len().saturating_sub(1) {
            if u[k] ^ 1 == u[k + 1] {
                let mut s = u.clone();
                s.drain(k..k + 2);
                let m = rewrite_min(&s, comm, memo);
                if shortlex_less(&m, &best) {
                    best = m;
                }
            }
        }
    }
    for u in class {
        memo.insert(u, best.clone());
    }
    best
}

fn word_engine() -> Outcome {
    for n in 1..=4 {
        for adj in all_graphs(n) {
            let g = adj.graph();
            let mut memo = HashMap::new();
            let mut words: Vec<Code> = vec![Vec::new()];
            let mut layer: Vec<Code> = vec![Vec::new()];
            for _ in 0..6 {
                layer = layer
                    .iter()
                    .flat_map(|w| {
                        (0..2 * n as u8).map(move |l| {
                            let mut x = w.clone();
                            x.push(l);
                            x
                        })
                    })
                    .collect();
                words.extend(layer.iter().cloned());
            }
            for code in &words {
                let w: Word = code
                    .iter()
                    .map(|&c| Letter::new(c as usize / 2, c % 2 == 1))
                    .collect();
                let nf = raag_normal_form(&g, &w).unwrap();
                let nf_code: Code = nf
                    .letters()
                    .iter()
                    .map(|l| (2 * l.generator + usize::from(l.inverse)) as u8)
                    .collect();
                let want = rewrite_min(code, &adj.m, &mut memo);
                ensure!(
                    nf_code == want,
                    "graph {g}: word {code:?} gives {nf_code:?}, search {want:?}"
                );
            }
        }
    }
    let pb3 = PureBraidGroup::new(3).unwrap();
    let twist = pb3
        .generator(1, 2)
        .concat(&pb3.generator(1, 3))
        .concat(&pb3.generator(2, 3));
    let z = pb3_reduce(&twist).unwrap();
    ensure!(
        z.free_part().is_empty() && z.central_exponent() == 1,
        "full twist reduces to {z}"
    );
    Ok(())
}

fn cli_corpus() -> Outcome {
    let cases = golden::cases();
    ensure!(cases.len() >= 15, "only {} golden cases", cases.len());
    let bad = golden::mismatches();
    ensure!(bad.is_empty(), "mismatched cases: {bad:?}");
    Ok(())
}
