//! Ground-truth first-passage times for the simple random walk, where a
//! walker at `u` moves to each neighbour with probability `1/k_u`.
//!
//! Two independent exact routes are provided: an edge decomposition that only
//! works on trees, and a generic exact-rational solve of the hitting-time
//! linear system. A seeded Monte Carlo simulator gives a third, stochastic
//! route.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::{subtree_sizes, Graph, VertexId};

/// Largest graph accepted by the exact rational solver.
pub const EXACT_SOLVE_CAP: usize = 300;

/// Largest tree accepted by [`mfpt_oracle`] (quadratic work).
pub const TREE_ORACLE_CAP: usize = 20_000;

/// First-passage times indexed by `(source, target)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HittingTimeTable<T> {
    n: usize,
    data: Vec<T>,
}

impl<T> HittingTimeTable<T> {
    pub fn from_rows(n: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), n * n);
        HittingTimeTable { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, source: usize, target: usize) -> &T {
        &self.data[source * self.n + target]
    }
}

fn check_vertex(g: &Graph, v: VertexId) -> Result<usize> {
    let n = g.vertex_count();
    if v.0 >= n {
        return Err(Error::IdOutOfRange { id: v.0, n });
    }
    Ok(v.0)
}

/// Exact `F(u -> target)` for every `u` on a tree. Stepping from `a` to its
/// neighbour `b` takes `2 N_a - 1` expected steps, `N_a` being the number of
/// vertices on `a`'s side of the edge.
pub fn hitting_times_tree(g: &Graph, target: VertexId) -> Result<Vec<u64>> {
    let root = check_vertex(g, target)?;
    if !g.is_tree() {
        return Err(Error::BadParameter(
            "hitting_times_tree needs a tree".into(),
        ));
    }
    Ok(tree_hitting(g, root))
}

fn tree_hitting(g: &Graph, root: usize) -> Vec<u64> {
    let rooted = subtree_sizes(g, root);
    let mut h = vec![0u64; g.vertex_count()];
    for &u in &rooted.order {
        if u != root {
            h[u] = h[rooted.parent[u]] + 2 * rooted.size[u] as u64 - 1;
        }
    }
    h
}

/// Full source-by-target table on a tree.
pub fn hitting_table_tree(g: &Graph) -> Result<HittingTimeTable<u64>> {
    if !g.is_tree() {
        return Err(Error::BadParameter(
            "hitting_table_tree needs a tree".into(),
        ));
    }
    let n = g.vertex_count();
    let cols: Vec<Vec<u64>> = (0..n).into_par_iter().map(|v| tree_hitting(g, v)).collect();
    let mut data = vec![0u64; n * n];
    for (v, col) in cols.iter().enumerate() {
        for (u, &x) in col.iter().enumerate() {
            data[u * n + v] = x;
        }
    }
    Ok(HittingTimeTable::from_rows(n, data))
}

/// Exact hitting times to `target` on any connected graph, by solving
/// `(D - A) h = d` on the vertices other than `target` in exact rationals.
///
/// Elimination picks the remaining unknown with the fewest nonzeros at each
/// step, so trees eliminate leaf-first with no fill-in.
pub fn hitting_times_solve(g: &Graph, target: VertexId) -> Result<Vec<BigRational>> {
    let tgt = check_vertex(g, target)?;
    let n = g.vertex_count();
    if n > EXACT_SOLVE_CAP {
        return Err(Error::TooLargeForExactSolve {
            n,
            cap: EXACT_SOLVE_CAP,
        });
    }
    if let Some(vertex) = g.first_unreachable() {
        return Err(Error::NotConnected { vertex });
    }

    let int = |x: usize| BigRational::from_integer(BigInt::from(x));
    let mut rows: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); n];
    let mut rhs: Vec<BigRational> = vec![BigRational::zero(); n];
    for u in (0..n).filter(|&u| u != tgt) {
        rows[u].insert(u, int(g.degree(u)));
        for &w in g.neighbors(u) {
            if w != tgt {
                rows[u].insert(w, -BigRational::one());
            }
        }
        rhs[u] = int(g.degree(u));
    }

    let mut alive: Vec<bool> = (0..n).map(|u| u != tgt).collect();
    let mut order = Vec::with_capacity(n.saturating_sub(1));
    for _ in 1..n {
        let p = (0..n)
            .filter(|&u| alive[u])
            .min_by_key(|&u| (rows[u].len(), u))
            .expect("an unknown remains");
        alive[p] = false;
        order.push(p);

        let pivot_row = rows[p].clone();
        let pivot = pivot_row
            .get(&p)
            .filter(|x| !x.is_zero())
            .cloned()
            .ok_or_else(|| Error::InternalInconsistency(format!("zero pivot at vertex {p}")))?;
        let pivot_rhs = rhs[p].clone();
        for &q in pivot_row.keys().filter(|&&q| q != p) {
            let factor = match rows[q].remove(&p) {
                Some(x) => x / &pivot,
                None => continue,
            };
            for (&c, val) in pivot_row.iter().filter(|(&c, _)| c != p) {
                let entry = rows[q].entry(c).or_insert_with(BigRational::zero);
                *entry -= &factor * val;
                if entry.is_zero() {
                    rows[q].remove(&c);
                }
            }
            rhs[q] -= &factor * &pivot_rhs;
        }
    }

    let mut h = vec![BigRational::zero(); n];
    for &p in order.iter().rev() {
        let mut acc = rhs[p].clone();
        for (&c, val) in rows[p].iter().filter(|(&c, _)| c != p) {
            acc -= val * &h[c];
        }
        h[p] = acc / &rows[p][&p];
    }
    Ok(h)
}

/// Mean first-passage time over ordered pairs, exact. Trees use the edge
/// decomposition; other graphs fall back to one exact solve per target.
pub fn mfpt_oracle(g: &Graph) -> Result<BigRational> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::DegenerateSize { n });
    }
    let pairs = BigInt::from(n) * BigInt::from(n - 1);
    if g.is_tree() {
        if n > TREE_ORACLE_CAP {
            return Err(Error::TooLargeForExactSolve {
                n,
                cap: TREE_ORACLE_CAP,
            });
        }
        let total: u128 = (0..n)
            .into_par_iter()
            .map(|v| tree_hitting(g, v).iter().map(|&x| x as u128).sum::<u128>())
            .sum();
        return Ok(BigRational::new(BigInt::from(total), pairs));
    }
    let mut total = BigRational::zero();
    for v in 0..n {
        for x in hitting_times_solve(g, VertexId(v))? {
            total += x;
        }
    }
    Ok(total / BigRational::from_integer(pairs))
}

/// Monte Carlo estimate with a normal-approximation 95% interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkEstimate {
    pub mean: f64,
    pub half_width_95: f64,
    pub samples: u64,
    pub rng_seed: u64,
}

impl WalkEstimate {
    /// Whether `exact` lies within `k` half-widths of the mean.
    pub fn covers(&self, exact: f64, k: f64) -> bool {
        (self.mean - exact).abs() <= k * self.half_width_95 + 1e-12 * exact.abs().max(1.0)
    }

    /// `{"mean", "ci95", "samples", "seed", "exact_num", "exact_den"}`.
    pub fn to_json(&self, exact: Option<&BigRational>) -> serde_json::Value {
        let mut v = serde_json::json!({
            "mean": self.mean,
            "ci95": self.half_width_95,
            "samples": self.samples,
            "seed": self.rng_seed,
        });
        if let Some(x) = exact {
            v["exact_num"] = x.numer().to_string().into();
            v["exact_den"] = x.denom().to_string().into();
        }
        v
    }
}

const Z95: f64 = 1.959963984540054;

/// Integer moments; merging is exact, so totals do not depend on scheduling.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    sum: u128,
    sum_sq: u128,
}

impl Moments {
    fn one(x: u64) -> Self {
        Moments {
            count: 1,
            sum: x as u128,
            sum_sq: (x as u128) * (x as u128),
        }
    }

    fn merge(self, o: Self) -> Self {
        Moments {
            count: self.count + o.count,
            sum: self.sum + o.sum,
            sum_sq: self.sum_sq + o.sum_sq,
        }
    }

    fn mean(&self) -> f64 {
        self.sum as f64 / self.count as f64
    }

    /// Unbiased sample variance, computed from exact integer moments.
    fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let c = self.count as u128;
        let num = c * self.sum_sq - self.sum * self.sum;
        num as f64 / (c * (c - 1)) as f64
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn walk_length<R: Rng>(g: &Graph, mut u: usize, target: usize, rng: &mut R) -> u64 {
    let mut steps = 0u64;
    while u != target {
        let nbrs = g.neighbors(u);
        u = nbrs[rng.random_range(0..nbrs.len())];
        steps += 1;
    }
    steps
}

fn require_walkable(g: &Graph) -> Result<()> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::DegenerateSize { n });
    }
    if let Some(vertex) = g.first_unreachable() {
        return Err(Error::NotConnected { vertex });
    }
    Ok(())
}

/// Mean first-passage steps from `source` to `target` over `samples`
/// independent walks. Walk `i` draws from ChaCha8 stream `i` under `rng_seed`.
pub fn mc_first_passage(
    g: &Graph,
    source: VertexId,
    target: VertexId,
    samples: u64,
    rng_seed: u64,
) -> Result<WalkEstimate> {
    let (src, tgt) = (check_vertex(g, source)?, check_vertex(g, target)?);
    if src == tgt {
        return Err(Error::SameSourceTarget(src));
    }
    if samples == 0 {
        return Err(Error::BadParameter("samples must be >= 1".into()));
    }
    require_walkable(g)?;
    let m = (0..samples)
        .into_par_iter()
        .map(|i| Moments::one(walk_length(g, src, tgt, &mut stream_rng(rng_seed, i))))
        .reduce(Moments::default, Moments::merge);
    Ok(WalkEstimate {
        mean: m.mean(),
        half_width_95: Z95 * (m.variance() / m.count as f64).sqrt(),
        samples,
        rng_seed,
    })
}

/// Estimates the mean first-passage time: `pair_samples` uniformly random
/// ordered pairs `u != v`, each walked `walk_samples` times. The interval is
/// built from the per-pair means, which are i.i.d. with the target mean; with
/// a single pair it degrades to the walk-level interval for that pair.
pub fn mc_mfpt(
    g: &Graph,
    pair_samples: u64,
    walk_samples: u64,
    rng_seed: u64,
) -> Result<WalkEstimate> {
    if pair_samples == 0 || walk_samples == 0 {
        return Err(Error::BadParameter(
            "pair_samples and walk_samples must be >= 1".into(),
        ));
    }
    require_walkable(g)?;
    let n = g.vertex_count();
    let (pairs, walks) = (0..pair_samples)
        .into_par_iter()
        .map(|p| {
            let mut rng = stream_rng(rng_seed, p);
            let u = rng.random_range(0..n);
            let mut v = rng.random_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            let mut per_walk = Moments::default();
            for _ in 0..walk_samples {
                per_walk = per_walk.merge(Moments::one(walk_length(g, u, v, &mut rng)));
            }
            let pair_sum = per_walk.sum as u64;
            (Moments::one(pair_sum), per_walk)
        })
        .reduce(
            || (Moments::default(), Moments::default()),
            |a, b| (a.0.merge(b.0), a.1.merge(b.1)),
        );

    let total = pair_samples * walk_samples;
    let mean = walks.sum as f64 / total as f64;
    let half_width_95 = if pair_samples >= 2 {
        let w = walk_samples as f64;
        Z95 * (pairs.variance() / (w * w) / pair_samples as f64).sqrt()
    } else {
        Z95 * (walks.variance() / total as f64).sqrt()
    };
    Ok(WalkEstimate {
        mean,
        half_width_95,
        samples: total,
        rng_seed,
    })
}
