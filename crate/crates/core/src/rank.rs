//! Normalisation constants and the rank functions built on `F`.
//!
//! `rho_bar(A) = (F_max - F(A)) / (F_max - F_min)` maps the worst singleton
//! to 0 and a reference vertex cover to 1. Extending `F` to the empty set as
//! `F(empty) = max over disjoint X, Y of F(X) + F(Y) - F(X u Y)` gives the
//! normalised rank `rho(A) = rho_bar(A) - rho_bar(empty)`, which is
//! non-negative, non-decreasing and submodular.

use rayon::prelude::*;
use serde::Serialize;

use crate::cover::require_cover;
use crate::error::{Error, Result};
use crate::graph::NodeSet;
use crate::hitting::{objective_uncached, Evaluator};
use crate::subsets::{count_up_to, Combinations};

/// Relative tolerance under which two objective values count as equal.
pub const TIE_TOL: f64 = 1e-9;

pub(crate) fn ties(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOL * a.abs().max(b.abs()).max(1.0)
}

/// `F_max` and every singleton attaining it.
pub fn f_max(ev: &Evaluator<'_>) -> Result<(f64, Vec<NodeSet>)> {
    let n = ev.node_count();
    let values = (0..n)
        .into_par_iter()
        .map(|i| ev.objective(&NodeSet::singleton(i)))
        .collect::<Result<Vec<f64>>>()?;
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let argmax = (0..n)
        .filter(|&i| ties(values[i], best))
        .map(NodeSet::singleton)
        .collect();
    Ok((best, argmax))
}

/// `F` of a vertex cover, which equals `N - |cover|`.
pub fn f_min(ev: &Evaluator<'_>, cover: &NodeSet) -> Result<f64> {
    require_cover(ev.graph(), cover)?;
    ev.objective(cover)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmptyValue {
    pub value: f64,
    /// True when every disjoint pair was considered.
    pub exact: bool,
    pub max_part_size: usize,
    #[serde(skip)]
    pub witness: (NodeSet, NodeSet),
}

/// Exhaustive bitmask route is used up to this many nodes.
pub const EXACT_EMPTY_MAX_NODES: usize = 20;
/// Default exact computation threshold.
pub const DEFAULT_EXACT_EMPTY_NODES: usize = 12;
pub const DEFAULT_EMPTY_PART_CAP: usize = 2;
const EMPTY_PAIR_CAP: u128 = 500_000_000;

/// `F(empty)` by maximising `F(X) + F(Y) - F(X u Y)` over disjoint nonempty
/// `X`, `Y` with `|X|, |Y| <= max_part_size`.
pub fn f_empty(ev: &Evaluator<'_>, max_part_size: usize) -> Result<EmptyValue> {
    let n = ev.node_count();
    let cap = max_part_size.max(1).min(n - 1);
    if cap == n - 1 && n <= EXACT_EMPTY_MAX_NODES {
        f_empty_bitmask(ev, cap, true)
    } else {
        f_empty_capped(ev, cap)
    }
}

/// Default part cap: exact for small graphs, pairs of size at most 2 otherwise.
pub fn default_empty_cap(n: usize) -> usize {
    if n <= DEFAULT_EXACT_EMPTY_NODES {
        n
    } else {
        DEFAULT_EMPTY_PART_CAP
    }
}

fn mask_set(mask: usize) -> NodeSet {
    NodeSet::from_sorted_unchecked((0..usize::BITS as usize).filter(|b| mask >> b & 1 == 1).collect())
}

pub(crate) fn f_empty_bitmask(ev: &Evaluator<'_>, cap: usize, exact: bool) -> Result<EmptyValue> {
    let g = ev.graph();
    let n = g.node_count();
    let full = (1usize << n) - 1;
    let values = (0..=full)
        .into_par_iter()
        .map(|mask| {
            if mask == 0 || mask == full {
                Ok(0.0)
            } else {
                objective_uncached(g, &mask_set(mask))
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let best = (1..full)
        .into_par_iter()
        .filter(|x: &usize| x.count_ones() as usize <= cap)
        .map(|x| {
            let comp = full & !x;
            let low = x & x.wrapping_neg();
            let mut best = (f64::NEG_INFINITY, x, 0usize);
            let mut y = comp;
            while y != 0 {
                // each unordered pair once: X holds the lowest node
                if (y & y.wrapping_neg()) > low && y.count_ones() as usize <= cap {
                    let v = values[x] + values[y] - values[x | y];
                    if v > best.0 {
                        best = (v, x, y);
                    }
                }
                y = (y - 1) & comp;
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, 0, 0),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) { b } else { a },
        );
    Ok(EmptyValue {
        value: best.0,
        exact,
        max_part_size: cap,
        witness: (mask_set(best.1), mask_set(best.2)),
    })
}

fn f_empty_capped(ev: &Evaluator<'_>, cap: usize) -> Result<EmptyValue> {
    let n = ev.node_count();
    let parts_count = count_up_to(n, cap);
    if parts_count * parts_count / 2 > EMPTY_PAIR_CAP {
        return Err(Error::TooLarge {
            count: parts_count * parts_count / 2,
            cap: EMPTY_PAIR_CAP,
        });
    }
    let parts: Vec<NodeSet> = (1..=cap)
        .flat_map(|k| Combinations::new(n, k).map(NodeSet::from_sorted_unchecked))
        .collect();
    let values = parts
        .par_iter()
        .map(|p| ev.objective(p))
        .collect::<Result<Vec<f64>>>()?;
    let best = (0..parts.len())
        .into_par_iter()
        .map(|xi| -> Result<(f64, usize, usize)> {
            let x = &parts[xi];
            let low = x.as_slice()[0];
            let mut best = (f64::NEG_INFINITY, xi, usize::MAX);
            if x.len() == n {
                return Ok(best);
            }
            let fund = ev.fundamental(x)?;
            for (yi, y) in parts.iter().enumerate() {
                if y.as_slice()[0] <= low || !y.is_disjoint(x) {
                    continue;
                }
                let joint = if x.len() + y.len() == n { 0.0 } else { fund.with_nodes(y.as_slice()) };
                let v = values[xi] + values[yi] - joint;
                if v > best.0 {
                    best = (v, xi, yi);
                }
            }
            Ok(best)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold((f64::NEG_INFINITY, 0, usize::MAX), |a, b| if b.0 > a.0 { b } else { a });
    let (x, y) = (parts[best.1].clone(), parts[best.2].clone());
    // report the direct-solve value for the maximising pair
    let value = values[best.1] + values[best.2] - ev.objective(&x.union(&y))?;
    Ok(EmptyValue {
        value,
        exact: cap >= n - 1,
        max_part_size: cap,
        witness: (x, y),
    })
}

/// Frozen normalisation constants.
#[derive(Debug, Clone, PartialEq)]
pub struct RankContext {
    pub cover: NodeSet,
    pub cover_size: usize,
    pub f_max: f64,
    pub f_max_argmax: Vec<NodeSet>,
    pub f_min: f64,
    pub f_empty: f64,
    pub exact_empty: bool,
    pub empty_part_cap: usize,
    pub empty_witness: Option<(NodeSet, NodeSet)>,
    pub rho_bar_empty: f64,
}

impl RankContext {
    /// Builds the context for a reference vertex cover; `empty_cap` of `None`
    /// uses [`default_empty_cap`].
    pub fn build(ev: &Evaluator<'_>, cover: &NodeSet, empty_cap: Option<usize>) -> Result<Self> {
        let (f_max, argmax) = f_max(ev)?;
        let f_min = f_min(ev, cover)?;
        let cap = empty_cap.unwrap_or_else(|| default_empty_cap(ev.node_count()));
        let empty = f_empty(ev, cap)?;
        let mut ctx = RankContext::from_values(cover.len(), f_max, f_min, empty.value)?;
        ctx.cover = cover.clone();
        ctx.f_max_argmax = argmax;
        ctx.exact_empty = empty.exact;
        ctx.empty_part_cap = empty.max_part_size;
        ctx.empty_witness = Some(empty.witness);
        Ok(ctx)
    }

    /// Context from raw constants, for set functions that are not hitting times.
    pub fn from_values(cover_size: usize, f_max: f64, f_min: f64, f_empty: f64) -> Result<Self> {
        if !(f_max - f_min > 0.0) {
            return Err(Error::DegenerateContext(f_max));
        }
        Ok(RankContext {
            cover: NodeSet::empty(),
            cover_size,
            f_max,
            f_max_argmax: Vec::new(),
            f_min,
            f_empty,
            exact_empty: true,
            empty_part_cap: 0,
            empty_witness: None,
            rho_bar_empty: (f_max - f_empty) / (f_max - f_min),
        })
    }

    pub fn spread(&self) -> f64 {
        self.f_max - self.f_min
    }

    pub fn rho_bar(&self, f: f64) -> f64 {
        (self.f_max - f) / self.spread()
    }

    pub fn rho(&self, f: f64) -> f64 {
        self.rho_bar(f) - self.rho_bar_empty
    }

    /// `rho_bar` of a set; the empty set maps to `rho_bar(empty)`.
    pub fn rho_bar_of(&self, ev: &Evaluator<'_>, a: &NodeSet) -> Result<f64> {
        if a.is_empty() {
            return Ok(self.rho_bar_empty);
        }
        ev.objective(a).map(|f| self.rho_bar(f))
    }

    /// `rho` of a set; zero on the empty set.
    pub fn rho_of(&self, ev: &Evaluator<'_>, a: &NodeSet) -> Result<f64> {
        if a.is_empty() {
            return Ok(0.0);
        }
        ev.objective(a).map(|f| self.rho(f))
    }

    /// `F` extended to the empty set.
    pub fn objective_with_empty(&self, ev: &Evaluator<'_>, a: &NodeSet) -> Result<f64> {
        if a.is_empty() {
            Ok(self.f_empty)
        } else {
            ev.objective(a)
        }
    }
}
