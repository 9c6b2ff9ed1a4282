//! Set selection: classic greedy, greedy extension of starter sets, backward
//! greedy, single-swap refinement and the brute-force oracle.
//!
//! Ties are broken by smallest node label for element choices and by the
//! lexicographically smallest set for set choices. Objective values within
//! [`TIE_TOL`](crate::rank::TIE_TOL) (relative) count as ties.

use rayon::prelude::*;
use serde::Serialize;

use crate::candidates::{enumerate_family, starter_sets, Scope, StarterMode};
use crate::error::{Error, Result};
use crate::graph::NodeSet;
use crate::hitting::{objective_uncached, Evaluator};
use crate::rank::{ties, RankContext};
use crate::subsets::{binomial, Combinations};

/// Largest exhaustive search the oracle accepts.
pub const ORACLE_CAP: u128 = 10_000_000;

const ONE_MINUS_INV_E: f64 = 1.0 - 1.0 / std::f64::consts::E;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Step {
    /// Node added (forward) or removed (backward).
    pub node: usize,
    /// Objective after the step.
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extension {
    pub start: NodeSet,
    pub set: NodeSet,
    pub f: f64,
    pub steps: Vec<Step>,
}

/// Index of the minimum score, smallest index among ties.
fn argmin_first(scores: &[f64]) -> Option<usize> {
    let best = scores.iter().copied().fold(f64::INFINITY, f64::min);
    scores.iter().position(|&s| ties(s, best))
}

/// Candidate additions to `current` with their scores, in label order.
fn score_additions(ev: &Evaluator<'_>, current: &NodeSet) -> Result<(Vec<usize>, Vec<f64>)> {
    let n = ev.node_count();
    let outside: Vec<usize> = (0..n).filter(|&u| !current.contains(u)).collect();
    let scores = if current.is_empty() {
        outside
            .par_iter()
            .map(|&u| ev.objective(&NodeSet::singleton(u)))
            .collect::<Result<Vec<_>>>()?
    } else {
        let fund = ev.fundamental(current)?;
        outside.iter().map(|&u| fund.with_node(u)).collect()
    };
    Ok((outside, scores))
}

/// Greedily adds the element with the smallest resulting `F` until `k`
/// elements are present.
pub fn greedy_extend(ev: &Evaluator<'_>, start: &NodeSet, k: usize) -> Result<Extension> {
    let n = ev.node_count();
    if k > n || k == 0 {
        return Err(Error::InvalidCardinality { k, n });
    }
    if start.len() > k {
        return Err(Error::StarterTooLarge { size: start.len(), k });
    }
    let mut current = start.clone();
    let mut steps = Vec::with_capacity(k - start.len());
    while current.len() < k {
        let (outside, scores) = score_additions(ev, &current)?;
        let pick = outside[argmin_first(&scores).expect("k <= n leaves a candidate")];
        current = current.with(pick);
        steps.push(Step { node: pick, f: ev.objective(&current)? });
    }
    let f = ev.objective(&current)?;
    Ok(Extension { start: start.clone(), set: current, f, steps })
}

/// Classic greedy from the empty set.
pub fn greedy(ev: &Evaluator<'_>, k: usize) -> Result<Extension> {
    greedy_extend(ev, &NodeSet::empty(), k)
}

/// Greedy extension of every starter; the offered set is the extension with
/// the lowest `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarterOutcome {
    pub offered: Extension,
    pub extensions: Vec<Extension>,
}

pub fn solve_starter(ev: &Evaluator<'_>, starters: &[NodeSet], k: usize) -> Result<StarterOutcome> {
    if starters.is_empty() {
        return Err(Error::NoStarters);
    }
    let extensions = starters
        .par_iter()
        .map(|s| greedy_extend(ev, s, k))
        .collect::<Result<Vec<_>>>()?;
    let offered = best_extension(&extensions).clone();
    Ok(StarterOutcome { offered, extensions })
}

fn best_extension(exts: &[Extension]) -> &Extension {
    let best = exts.iter().map(|e| e.f).fold(f64::INFINITY, f64::min);
    exts.iter()
        .filter(|e| ties(e.f, best))
        .min_by(|a, b| a.set.cmp(&b.set))
        .expect("nonempty")
}

/// Worst-out deletion from `target` down to `k` elements.
pub fn backward_greedy(ev: &Evaluator<'_>, target: &NodeSet, k: usize) -> Result<Extension> {
    if target.len() <= k {
        return Err(Error::TargetTooSmall { size: target.len(), k });
    }
    if k == 0 {
        return Err(Error::InvalidCardinality { k, n: ev.node_count() });
    }
    let mut current = target.clone();
    let mut steps = Vec::new();
    while current.len() > k {
        let members: Vec<usize> = current.iter().collect();
        let scores = members
            .par_iter()
            .map(|&u| ev.objective(&current.without(u)))
            .collect::<Result<Vec<_>>>()?;
        let drop = members[argmin_first(&scores).expect("nonempty")];
        current = current.without(drop);
        steps.push(Step { node: drop, f: ev.objective(&current)? });
    }
    let f = ev.objective(&current)?;
    Ok(Extension { start: target.clone(), set: current, f, steps })
}

/// Exhaustive minimum of `F` over all `k`-element sets, solved directly and
/// without the memo.
pub fn brute_force_oracle(ev: &Evaluator<'_>, k: usize) -> Result<(NodeSet, f64)> {
    let g = ev.graph();
    let n = g.node_count();
    if k == 0 || k > n {
        return Err(Error::InvalidCardinality { k, n });
    }
    if k == n {
        return Ok((NodeSet::full(n), 0.0));
    }
    let count = binomial(n, k);
    if count > ORACLE_CAP {
        return Err(Error::TooLarge { count, cap: ORACLE_CAP });
    }
    const CHUNK: usize = 4096;
    let mut values = Vec::with_capacity(count as usize);
    let mut combos = Combinations::new(n, k);
    loop {
        let chunk: Vec<Vec<usize>> = combos.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let v = chunk
            .into_par_iter()
            .map(|c| objective_uncached(g, &NodeSet::from_sorted_unchecked(c)))
            .collect::<Result<Vec<_>>>()?;
        values.extend(v);
    }
    let idx = argmin_first(&values).expect("nonempty");
    let set = NodeSet::from_sorted_unchecked(Combinations::new(n, k).nth(idx).expect("index in range"));
    Ok((set, values[idx]))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Swap {
    pub removed: usize,
    pub added: usize,
    pub f: f64,
}

/// Applies the best strictly improving single swap until none remains.
pub fn swap_refine(ev: &Evaluator<'_>, set: &NodeSet) -> Result<(NodeSet, f64, Vec<Swap>)> {
    let n = ev.node_count();
    let mut current = set.clone();
    let mut f = ev.objective(&current)?;
    let mut swaps = Vec::new();
    if current.is_empty() || current.len() == n {
        return Ok((current, f, swaps));
    }
    loop {
        let members: Vec<usize> = current.iter().collect();
        let candidates = members
            .par_iter()
            .map(|&u| -> Result<Vec<(f64, NodeSet, usize, usize)>> {
                let reduced = current.without(u);
                let scored: Vec<(usize, f64)> = if reduced.is_empty() {
                    (0..n)
                        .filter(|&v| v != u)
                        .map(|v| Ok((v, ev.objective(&NodeSet::singleton(v))?)))
                        .collect::<Result<_>>()?
                } else {
                    let fund = ev.fundamental(&reduced)?;
                    (0..n)
                        .filter(|&v| v != u && !reduced.contains(v))
                        .map(|v| (v, fund.with_node(v)))
                        .collect()
                };
                Ok(scored.into_iter().map(|(v, s)| (s, reduced.with(v), u, v)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        let candidates: Vec<_> = candidates.into_iter().flatten().collect();
        let best = candidates.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
        if best >= f || ties(best, f) {
            break;
        }
        let pick = candidates
            .iter()
            .filter(|c| ties(c.0, best))
            .min_by(|a, b| a.1.cmp(&b.1))
            .expect("nonempty");
        let next_f = ev.objective(&pick.1)?;
        if next_f >= f || ties(next_f, f) {
            break;
        }
        swaps.push(Swap { removed: pick.2, added: pick.3, f: next_f });
        current = pick.1.clone();
        f = next_f;
    }
    Ok((current, f, swaps))
}

/// `chi` with `rho(S*) = (1 + chi) rho(S_g)`.
pub fn improvement_factor(rho_offered: f64, rho_greedy: f64) -> Result<f64> {
    if rho_greedy <= 0.0 {
        return Err(Error::ZeroGreedyRank);
    }
    Ok(rho_offered / rho_greedy - 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scored {
    #[serde(skip)]
    pub set: NodeSet,
    pub f: f64,
    pub rho: f64,
    pub rho_bar: f64,
}

impl Scored {
    pub fn new(ctx: &RankContext, set: NodeSet, f: f64) -> Self {
        Scored { set, f, rho: ctx.rho(f), rho_bar: ctx.rho_bar(f) }
    }
}

/// Guarantee checks on a finished run; `None` when the inputs for a check
/// are absent.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BoundChecks {
    pub greedy_prefix_in_starters: Option<bool>,
    pub offered_le_greedy: Option<bool>,
    pub offered_ratio: Option<bool>,
    pub greedy_ratio: Option<bool>,
    pub improvement_factor_holds: Option<bool>,
    pub offered_in_family: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationReport {
    pub method: &'static str,
    pub k: usize,
    pub nu: Option<f64>,
    pub m: Option<usize>,
    pub mode: Option<StarterMode>,
    pub starter_fallback: bool,
    pub offered: Scored,
    pub greedy: Option<Scored>,
    pub greedy_trace: Vec<Step>,
    pub oracle: Option<Scored>,
    pub chi: Option<f64>,
    pub extensions: Vec<Extension>,
    pub swaps: Vec<Swap>,
    pub checks: BoundChecks,
}

/// Computes `chi` and the guarantee flags. `chi` stays `None` when the
/// greedy rank is zero.
pub fn compare(report: &mut OptimizationReport, tol: f64) {
    let Some(greedy) = &report.greedy else {
        return;
    };
    let offered = &report.offered;
    report.chi = improvement_factor(offered.rho, greedy.rho).ok();
    let checks = &mut report.checks;
    if checks.greedy_prefix_in_starters == Some(true) {
        checks.offered_le_greedy = Some(offered.f <= greedy.f + tol);
    }
    if let Some(oracle) = &report.oracle {
        let floor = ONE_MINUS_INV_E * oracle.rho;
        checks.offered_ratio = Some(offered.rho >= floor - tol);
        checks.greedy_ratio = Some(greedy.rho >= floor - tol);
        if let Some(chi) = report.chi.filter(|&c| c > tol) {
            checks.improvement_factor_holds = Some(offered.rho >= (1.0 + chi) * floor - tol);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub k: usize,
    pub nu: f64,
    pub max_card: usize,
    pub mode: StarterMode,
    /// Add the greedy `m`-prefix to the starters when it is missing.
    pub include_greedy_prefix: bool,
    pub swap_refine: bool,
    pub with_oracle: bool,
    pub tol: f64,
}

/// The full starter-set pipeline: family, starters, extensions, greedy
/// baseline, optional refinement and oracle, and the comparison.
pub fn run_starter_method(
    ev: &Evaluator<'_>,
    ctx: &RankContext,
    opts: &SolveOptions,
) -> Result<OptimizationReport> {
    let n = ev.node_count();
    if opts.k == 0 || opts.k > n {
        return Err(Error::InvalidCardinality { k: opts.k, n });
    }
    let fam = enumerate_family(ev, ctx, opts.nu, opts.max_card, Scope::MinimumLevel)?;
    let m = fam.m.ok_or(Error::CapTooSmall(fam.enumeration_cap))?;
    if opts.k < m {
        return Err(Error::KBelowMinimum { k: opts.k, m });
    }
    let (mut starters, fallback) = match starter_sets(&fam, opts.mode, Some(&ctx.cover)) {
        Ok(s) => (s, false),
        Err(Error::NoStarters) => (starter_sets(&fam, StarterMode::AllMinimum, None)?, true),
        Err(e) => return Err(e),
    };
    let greedy_run = greedy(ev, opts.k)?;
    let prefix = NodeSet::from_indices(greedy_run.steps[..m].iter().map(|s| s.node));
    if opts.include_greedy_prefix && !starters.contains(&prefix) {
        starters.push(prefix.clone());
        starters.sort();
    }
    let outcome = solve_starter(ev, &starters, opts.k)?;
    let (offered_set, offered_f, swaps) = if opts.swap_refine {
        swap_refine(ev, &outcome.offered.set)?
    } else {
        (outcome.offered.set.clone(), outcome.offered.f, Vec::new())
    };
    let oracle = if opts.with_oracle {
        let (set, f) = brute_force_oracle(ev, opts.k)?;
        Some(Scored::new(ctx, set, f))
    } else {
        None
    };
    let offered = Scored::new(ctx, offered_set, offered_f);
    let in_family = offered.set.len() <= ctx.cover_size && offered.rho_bar >= opts.nu;
    let mut report = OptimizationReport {
        method: "starter",
        k: opts.k,
        nu: Some(opts.nu),
        m: Some(m),
        mode: Some(if fallback { StarterMode::AllMinimum } else { opts.mode }),
        starter_fallback: fallback,
        offered,
        greedy: Some(Scored::new(ctx, greedy_run.set.clone(), greedy_run.f)),
        greedy_trace: greedy_run.steps,
        oracle,
        chi: None,
        extensions: outcome.extensions,
        swaps,
        checks: BoundChecks {
            greedy_prefix_in_starters: Some(starters.contains(&prefix)),
            offered_in_family: Some(in_family),
            ..BoundChecks::default()
        },
    };
    compare(&mut report, opts.tol);
    Ok(report)
}
