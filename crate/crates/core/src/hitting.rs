//! Expected hitting times `h(i, A)` and the objective `F(A) = sum h(i, A)`.
//!
//! The canonical route is a direct dense solve of `(I - P_A) H = 1`. For
//! search loops that score many one- or two-element extensions of the same
//! base set, [`Fundamental`] keeps `Z = (I - P_A)^-1` and scores `F(A u Y)`
//! through a Schur complement of `Z` in `O(|Y|^3)` instead of a fresh solve.
//! Reported objective values always come from the direct route; the update
//! route is only used to rank candidates.

use std::collections::HashMap;
use std::sync::RwLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::linalg::Lu;

/// Condition estimates above this are surfaced on the profile.
pub const CONDITION_WARNING: f64 = 1e12;

/// Monte Carlo walks longer than this are treated as a hard failure.
pub const WALK_STEP_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct HittingProfile {
    pub target: NodeSet,
    /// Start nodes outside the target, increasing.
    pub nodes: Vec<usize>,
    /// `times[k]` is the expected hitting time from `nodes[k]`.
    pub times: Vec<f64>,
    pub total: f64,
    /// Infinity-norm condition number of `I - P_A`.
    pub condition: f64,
}

impl HittingProfile {
    pub fn time(&self, node: usize) -> Option<f64> {
        self.nodes.binary_search(&node).ok().map(|k| self.times[k])
    }

    pub fn ill_conditioned(&self) -> bool {
        self.condition > CONDITION_WARNING
    }
}

/// `I - P_A` on the complement of `a`, and the complement itself.
fn absorbing_system(g: &Graph, mask: &[bool]) -> (Vec<usize>, Vec<f64>) {
    let n = g.node_count();
    let nodes: Vec<usize> = (0..n).filter(|&i| !mask[i]).collect();
    let mut pos = vec![usize::MAX; n];
    for (k, &i) in nodes.iter().enumerate() {
        pos[i] = k;
    }
    let dim = nodes.len();
    let mut m = vec![0.0; dim * dim];
    for (r, &i) in nodes.iter().enumerate() {
        m[r * dim + r] = 1.0;
        let p = 1.0 / g.degree(i) as f64;
        for &j in g.neighbors(i) {
            if !mask[j] {
                m[r * dim + pos[j]] -= p;
            }
        }
    }
    (nodes, m)
}

/// Solves for the expected first hitting time of `a` from every node outside it.
pub fn hitting_times(g: &Graph, a: &NodeSet) -> Result<HittingProfile> {
    if a.is_empty() {
        return Err(Error::EmptyTarget);
    }
    let n = g.node_count();
    if let Some(&last) = a.as_slice().last() {
        if last >= n {
            return Err(Error::UnknownLabel(last as u64));
        }
    }
    if a.len() == n {
        return Ok(HittingProfile {
            target: a.clone(),
            nodes: Vec::new(),
            times: Vec::new(),
            total: 0.0,
            condition: 1.0,
        });
    }
    let (nodes, m) = absorbing_system(g, &a.mask(n));
    let dim = nodes.len();
    let norm = m
        .chunks(dim)
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let lu = Lu::factor(m, dim).map_err(|_| Error::SolverFailure { condition: f64::INFINITY })?;
    let times = lu.solve(&vec![1.0; dim]);
    // Z = (I - P_A)^-1 is entrywise non-negative, so its infinity norm is max h.
    let max_h = times.iter().copied().fold(0.0, f64::max);
    let condition = norm * max_h;
    if times.iter().any(|h| !h.is_finite()) {
        return Err(Error::SolverFailure { condition });
    }
    let total = times.iter().sum();
    Ok(HittingProfile {
        target: a.clone(),
        nodes,
        times,
        total,
        condition,
    })
}

/// `F(A)` by direct solve, no caching.
pub fn objective_uncached(g: &Graph, a: &NodeSet) -> Result<f64> {
    hitting_times(g, a).map(|p| p.total)
}

/// Memoised objective evaluator over one graph. Safe to share across threads;
/// cached values are always the direct-solve value, so the cache content does
/// not depend on evaluation order.
#[derive(Debug)]
pub struct Evaluator<'g> {
    graph: &'g Graph,
    cache: RwLock<HashMap<NodeSet, f64>>,
}

impl<'g> Evaluator<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Evaluator {
            graph,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn objective(&self, a: &NodeSet) -> Result<f64> {
        if a.len() == self.graph.node_count() {
            return Ok(0.0);
        }
        if let Some(&f) = self.cache.read().expect("cache poisoned").get(a) {
            return Ok(f);
        }
        let f = objective_uncached(self.graph, a)?;
        self.cache.write().expect("cache poisoned").insert(a.clone(), f);
        Ok(f)
    }

    pub fn profile(&self, a: &NodeSet) -> Result<HittingProfile> {
        hitting_times(self.graph, a)
    }

    pub fn fundamental(&self, a: &NodeSet) -> Result<Fundamental> {
        Fundamental::new(self.graph, a)
    }

    pub fn cached_sets(&self) -> usize {
        self.cache.read().expect("cache poisoned").len()
    }
}

/// The fundamental matrix `Z = (I - P_A)^-1` of a base target set with
/// its row and column sums, for cheap scoring of `F(A u Y)`.
#[derive(Debug, Clone)]
pub struct Fundamental {
    base: NodeSet,
    dim: usize,
    position: Vec<usize>,
    z: Vec<f64>,
    row_sums: Vec<f64>,
    col_sums: Vec<f64>,
    total: f64,
}

impl Fundamental {
    pub fn new(g: &Graph, a: &NodeSet) -> Result<Fundamental> {
        if a.is_empty() {
            return Err(Error::EmptyTarget);
        }
        let n = g.node_count();
        if a.len() >= n {
            return Err(Error::FullTarget);
        }
        let (nodes, m) = absorbing_system(g, &a.mask(n));
        let dim = nodes.len();
        let lu = Lu::factor(m, dim).map_err(|_| Error::SolverFailure { condition: f64::INFINITY })?;
        let z = lu.inverse();
        if z.iter().any(|x| !x.is_finite()) {
            return Err(Error::SolverFailure { condition: f64::INFINITY });
        }
        let mut position = vec![usize::MAX; n];
        for (k, &i) in nodes.iter().enumerate() {
            position[i] = k;
        }
        let row_sums: Vec<f64> = z.chunks(dim).map(|r| r.iter().sum()).collect();
        let mut col_sums = vec![0.0; dim];
        for r in z.chunks(dim) {
            for (c, v) in col_sums.iter_mut().zip(r) {
                *c += v;
            }
        }
        let total = row_sums.iter().sum();
        Ok(Fundamental {
            base: a.clone(),
            dim,
            position,
            z,
            row_sums,
            col_sums,
            total,
        })
    }

    pub fn base(&self) -> &NodeSet {
        &self.base
    }

    /// `F(A)` as the sum of all entries of `Z`.
    pub fn total(&self) -> f64 {
        self.total
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.z[self.position[i] * self.dim + self.position[j]]
    }

    /// `F(A u {u})` for a node `u` outside the base.
    pub fn with_node(&self, u: usize) -> f64 {
        debug_assert!(!self.base.contains(u));
        if self.dim == 1 {
            return 0.0;
        }
        let k = self.position[u];
        let zuu = self.z[k * self.dim + k];
        let r = self.row_sums[k];
        let c = self.col_sums[k];
        let rest = self.total - r - c + zuu;
        rest - (c - zuu) * (r - zuu) / zuu
    }

    /// `F(A u Y)` for nodes `Y` outside the base (distinct).
    pub fn with_nodes(&self, ys: &[usize]) -> f64 {
        match ys.len() {
            0 => return self.total,
            1 => return self.with_node(ys[0]),
            k if k >= self.dim => return 0.0,
            _ => {}
        }
        let k = ys.len();
        let mut zyy = vec![0.0; k * k];
        let mut rest = self.total;
        let mut a = vec![0.0; k];
        let mut b = vec![0.0; k];
        for (p, &y) in ys.iter().enumerate() {
            let idx = self.position[y];
            rest -= self.row_sums[idx] + self.col_sums[idx];
            a[p] = self.col_sums[idx];
            b[p] = self.row_sums[idx];
            for (q, &w) in ys.iter().enumerate() {
                let v = self.at(y, w);
                zyy[p * k + q] = v;
                rest += v;
                // a_y = c_y - sum_w Z[w][y], b_y = r_y - sum_w Z[y][w]
                b[p] -= v;
            }
        }
        for (q, &y) in ys.iter().enumerate() {
            for &w in ys {
                a[q] -= self.at(w, y);
            }
        }
        let Ok(lu) = Lu::factor(zyy, k) else {
            return f64::NAN;
        };
        let x = lu.solve(&b);
        rest - a.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>()
    }
}

/// Sample mean and standard error of a hitting time from Monte Carlo walks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub walks: u64,
}

/// Simulates `walks` independent simple random walks from `start` until they
/// enter `a`. The stream is selected by `(seed, start)` so different starts
/// draw independent, reproducible samples.
pub fn simulate_hitting(
    g: &Graph,
    a: &NodeSet,
    start: usize,
    walks: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if a.is_empty() {
        return Err(Error::EmptyTarget);
    }
    if a.contains(start) {
        return Err(Error::StartInsideTarget(g.label(start)));
    }
    let walks = walks.max(1);
    let target = a.mask(g.node_count());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(start as u64);
    // Welford running mean / variance
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for w in 0..walks {
        let mut at = start;
        let mut steps: u64 = 0;
        loop {
            let nb = g.neighbors(at);
            at = nb[rng.random_range(0..nb.len())];
            steps += 1;
            if target[at] {
                break;
            }
            if steps >= WALK_STEP_CAP {
                return Err(Error::WalkCapExceeded(WALK_STEP_CAP));
            }
        }
        let x = steps as f64;
        let delta = x - mean;
        mean += delta / (w + 1) as f64;
        m2 += delta * (x - mean);
    }
    let stderr = if walks > 1 {
        (m2 / (walks - 1) as f64 / walks as f64).sqrt()
    } else {
        0.0
    };
    Ok(MonteCarloEstimate { mean, stderr, walks })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEstimate {
    pub radius: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub const SPECTRAL_ITERATION_CAP: usize = 200_000;

/// Dominant eigenvalue of `P_A` by power iteration.
///
/// Works on the symmetrised form `D^-1/2 W D^-1/2` restricted to the
/// complement (similar to `P_A`), shifted to `(I + S) / 2` so bipartite
/// periodicity cannot stall the iteration. The Rayleigh quotient increases
/// monotonically to the top eigenvalue.
pub fn restricted_spectral_radius(g: &Graph, a: &NodeSet, tol: f64) -> Result<SpectralEstimate> {
    let n = g.node_count();
    if a.is_empty() {
        return Err(Error::EmptyTarget);
    }
    if a.len() >= n {
        return Err(Error::FullTarget);
    }
    let mask = a.mask(n);
    let nodes: Vec<usize> = (0..n).filter(|&i| !mask[i]).collect();
    let mut pos = vec![usize::MAX; n];
    for (k, &i) in nodes.iter().enumerate() {
        pos[i] = k;
    }
    let inv_sqrt_deg: Vec<f64> = (0..n).map(|i| 1.0 / (g.degree(i) as f64).sqrt()).collect();
    let apply = |x: &[f64], out: &mut [f64]| {
        for (k, &i) in nodes.iter().enumerate() {
            let mut s = 0.0;
            for &j in g.neighbors(i) {
                if !mask[j] {
                    s += inv_sqrt_deg[j] * x[pos[j]];
                }
            }
            out[k] = 0.5 * (x[k] + inv_sqrt_deg[i] * s);
        }
    };
    let dim = nodes.len();
    let mut x = vec![1.0 / (dim as f64).sqrt(); dim];
    let mut y = vec![0.0; dim];
    let mut mu = f64::NEG_INFINITY;
    for it in 1..=SPECTRAL_ITERATION_CAP {
        apply(&x, &mut y);
        let next_mu: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Ok(SpectralEstimate { radius: 0.0, iterations: it, converged: true });
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
        let done = (next_mu - mu).abs() < tol;
        mu = next_mu;
        if done {
            return Ok(SpectralEstimate {
                radius: (2.0 * mu - 1.0).clamp(0.0, 1.0),
                iterations: it,
                converged: true,
            });
        }
    }
    Ok(SpectralEstimate {
        radius: (2.0 * mu - 1.0).clamp(0.0, 1.0),
        iterations: SPECTRAL_ITERATION_CAP,
        converged: false,
    })
}
