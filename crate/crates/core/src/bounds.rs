//! Rank increments, elemental curvature, rank lower bounds on subsets of a
//! vertex cover, and the improvement-factor bound.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::candidates::{enumerate_family, starter_sets, CandidateFamily, Scope, StarterMode};
use crate::error::{Error, Result};
use crate::graph::NodeSet;
use crate::hitting::Evaluator;
use crate::optimizer::{
    backward_greedy, brute_force_oracle, greedy, improvement_factor, solve_starter, ORACLE_CAP,
};
use crate::rank::{ties, RankContext};
use crate::subsets::{binomial, permutations};

/// Increments at or below this are treated as zero.
pub const ZERO_INCREMENT: f64 = 1e-12;

const ONE_MINUS_INV_E: f64 = 1.0 - 1.0 / std::f64::consts::E;

/// How many top-scoring curvature triples are re-solved directly.
const DIRECT_RECHECK: usize = 8;

/// `rho(a u {i}) - rho(a)`.
pub fn rank_increment(ev: &Evaluator<'_>, ctx: &RankContext, a: &NodeSet, i: usize) -> Result<f64> {
    if a.contains(i) {
        return Err(Error::ElementInSet(ev.graph().label(i)));
    }
    let before = ctx.objective_with_empty(ev, a)?;
    let after = ev.objective(&a.with(i))?;
    Ok((before - after) / ctx.spread())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub kappa: f64,
    /// `None` when the family has no nonempty proper subset of the cover.
    pub gamma: Option<f64>,
    /// `(A, i, j)` attaining `kappa`.
    #[serde(skip)]
    pub arg_kappa: (NodeSet, usize, usize),
    /// `(S, j)` attaining `gamma`.
    #[serde(skip)]
    pub arg_gamma: Option<(NodeSet, usize)>,
    pub increments_computed: u64,
    pub skipped_zero_denominators: u64,
}

type Triple = (f64, NodeSet, usize, usize);
type Witness = (NodeSet, usize);

fn curvature_ratios(ev: &Evaluator<'_>, ctx: &RankContext, a: &NodeSet) -> Result<(Vec<Triple>, u64, u64)> {
    let n = ev.node_count();
    let outside: Vec<usize> = (0..n).filter(|&u| !a.contains(u)).collect();
    if outside.len() < 2 {
        return Ok((Vec::new(), 0, 0));
    }
    let fund = ev.fundamental(a)?;
    let fa = ev.objective(a)?;
    let spread = ctx.spread();
    let single: Vec<f64> = outside.iter().map(|&u| fund.with_node(u)).collect();
    let mut out = Vec::new();
    let mut computed = 0;
    let mut skipped = 0;
    for (p, &i) in outside.iter().enumerate() {
        let den = (fa - single[p]) / spread;
        for (q, &j) in outside.iter().enumerate() {
            if i == j {
                continue;
            }
            computed += 1;
            if den <= ZERO_INCREMENT {
                skipped += 1;
                continue;
            }
            let pair = if i < j { [i, j] } else { [j, i] };
            let num = (single[q] - fund.with_nodes(&pair)) / spread;
            out.push((num / den, a.clone(), i, j));
        }
    }
    Ok((out, computed, skipped))
}

fn direct_ratio(ev: &Evaluator<'_>, ctx: &RankContext, a: &NodeSet, i: usize, j: usize) -> Result<Option<f64>> {
    let den = rank_increment(ev, ctx, a, i)?;
    if den <= ZERO_INCREMENT {
        return Ok(None);
    }
    Ok(Some(rank_increment(ev, ctx, &a.with(j), i)? / den))
}

fn witness_order(x: &Triple, y: &Triple) -> std::cmp::Ordering {
    y.0.total_cmp(&x.0)
        .then_with(|| x.1.cmp(&y.1))
        .then_with(|| (x.2, x.3).cmp(&(y.2, y.3)))
}

/// Forward elemental curvature over the family, and the largest single
/// increment from a member that is a nonempty proper subset of the cover.
///
/// Ratios are screened through each member's fundamental matrix; the top
/// candidates are re-solved directly and the reported `kappa` and `gamma`
/// are direct values.
pub fn elemental_curvature(ev: &Evaluator<'_>, ctx: &RankContext, fam: &CandidateFamily) -> Result<CurvatureReport> {
    let per_member = fam
        .members
        .par_iter()
        .map(|m| curvature_ratios(ev, ctx, &m.set))
        .collect::<Result<Vec<_>>>()?;
    let mut computed = 0;
    let mut skipped = 0;
    let mut triples = Vec::new();
    for (t, c, s) in per_member {
        triples.extend(t);
        computed += c;
        skipped += s;
    }
    if triples.is_empty() {
        return Err(Error::NoValidPairs);
    }
    triples.sort_by(witness_order);
    let mut best: Option<Triple> = None;
    for (_, a, i, j) in triples.into_iter().take(DIRECT_RECHECK) {
        if let Some(r) = direct_ratio(ev, ctx, &a, i, j)? {
            let cand = (r, a, i, j);
            if best.as_ref().is_none_or(|b| witness_order(&cand, b).is_lt()) {
                best = Some(cand);
            }
        }
    }
    let Some((kappa, a, i, j)) = best else {
        return Err(Error::NoValidPairs);
    };

    let (gamma, arg_gamma) = gamma_over_cover(ev, ctx, fam)?;
    Ok(CurvatureReport {
        kappa,
        gamma,
        arg_kappa: (a, i, j),
        arg_gamma,
        increments_computed: computed,
        skipped_zero_denominators: skipped,
    })
}

fn gamma_over_cover(
    ev: &Evaluator<'_>,
    ctx: &RankContext,
    fam: &CandidateFamily,
) -> Result<(Option<f64>, Option<Witness>)> {
    let cover = &ctx.cover;
    let cands = fam
        .members
        .par_iter()
        .filter(|m| m.set.is_subset(cover) && m.set.len() < cover.len())
        .map(|m| -> Result<Vec<(f64, NodeSet, usize)>> {
            cover
                .difference(&m.set)
                .iter()
                .map(|j| Ok((rank_increment(ev, ctx, &m.set, j)?, m.set.clone(), j)))
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    let best = cands
        .into_iter()
        .flatten()
        .min_by(|x, y| y.0.total_cmp(&x.0).then_with(|| (&x.1, x.2).cmp(&(&y.1, y.2))));
    Ok(match best {
        Some((g, s, j)) => (Some(g), Some((s, j))),
        None => (None, None),
    })
}

/// `1 - gamma * sum_{t=1..r} kappa^(t-1)`.
pub fn rank_lower_bound(kappa: f64, gamma: f64, r: usize) -> f64 {
    let sum = if r == 0 {
        0.0
    } else if kappa == 1.0 {
        r as f64
    } else {
        (1.0 - kappa.powi(r as i32)) / (1.0 - kappa)
    };
    1.0 - gamma * sum
}

/// Largest `r <= C - 1` whose rank lower bound still reaches `nu`, and
/// `m(nu) = C - r`.
pub fn m_of_nu(kappa: f64, gamma: f64, nu: f64, cover_size: usize) -> (usize, usize) {
    let mut r = 0;
    while r + 1 < cover_size && rank_lower_bound(kappa, gamma, r + 1) >= nu {
        r += 1;
    }
    (r, cover_size - r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiBound {
    pub preconditions_met: bool,
    pub delta: Option<f64>,
    pub chi_lower: Option<f64>,
}

/// `delta = 1 - rho(S_g)/eta` and `chi > delta/(1-delta)`, claimed only
/// when `rho(S_g) < eta`.
pub fn chi_lower_bound(eta: f64, rho_greedy: f64) -> Result<ChiBound> {
    if !(eta > 0.0) {
        return Err(Error::NonPositiveEta(eta));
    }
    if rho_greedy >= eta {
        return Ok(ChiBound { preconditions_met: false, delta: None, chi_lower: None });
    }
    let delta = 1.0 - rho_greedy / eta;
    Ok(ChiBound {
        preconditions_met: true,
        delta: Some(delta),
        chi_lower: Some(delta / (1.0 - delta)),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub k: usize,
    pub nu: f64,
    pub cover_size: usize,
    pub r: usize,
    pub kappa: f64,
    pub gamma: Option<f64>,
    pub eta_bar: Option<f64>,
    pub eta: Option<f64>,
    pub r_of_nu: Option<usize>,
    pub m_of_nu: Option<usize>,
    pub rho_greedy: f64,
    pub rho_offered: f64,
    pub chi: Option<f64>,
    /// Best `K`-element extension lying inside the cover, if any.
    #[serde(skip)]
    pub witness: Option<NodeSet>,
    pub rho_witness: Option<f64>,
    #[serde(skip)]
    pub backward: Option<NodeSet>,
    pub rho_backward: Option<f64>,
    pub witness_above_eta: bool,
    pub greedy_below_nu_and_eta: bool,
    pub chi_bound: Option<ChiBound>,
    /// `chi > chi_lower` on the computed instance, when a bound is claimed.
    pub chi_exceeds_bound: Option<bool>,
}

/// Everything the improvement-factor bound needs, from the graph up.
///
/// Curvature is computed over the family up to `max_card`. Starters are the
/// minimum-level family members inside the cover, falling back to every
/// minimum-level member.
pub fn bound_report(ev: &Evaluator<'_>, ctx: &RankContext, k: usize, nu: f64, max_card: usize) -> Result<BoundReport> {
    let n = ev.node_count();
    if k == 0 || k > n {
        return Err(Error::InvalidCardinality { k, n });
    }
    let c = ctx.cover_size;
    let fam = enumerate_family(ev, ctx, nu, max_card, Scope::Full)?;
    let curv = match elemental_curvature(ev, ctx, &fam) {
        Ok(cr) => Some(cr),
        Err(Error::NoValidPairs) => None,
        Err(e) => return Err(e),
    };
    let kappa = curv.as_ref().map_or(0.0, |cr| cr.kappa);
    let gamma = curv.as_ref().and_then(|cr| cr.gamma);
    let r = c.saturating_sub(k);
    let eta_bar = gamma.map(|g| rank_lower_bound(kappa, g, r));
    let eta = eta_bar.map(|e| e - ctx.rho_bar_empty);
    let (r_of_nu, m_nu) = match gamma {
        Some(g) => {
            let (r, m) = m_of_nu(kappa, g, nu, c);
            (Some(r), Some(m))
        }
        None => (None, None),
    };

    let sg = greedy(ev, k)?;
    let rho_greedy = ctx.rho(sg.f);

    let mut extensions = Vec::new();
    if let Some(m) = fam.m.filter(|&m| m <= k) {
        let min_fam = CandidateFamily {
            members: fam.minimum_members().cloned().collect(),
            m: Some(m),
            ..fam.clone()
        };
        let starters = starter_sets(&min_fam, StarterMode::CoverSubsets, Some(&ctx.cover))
            .or_else(|_| starter_sets(&min_fam, StarterMode::AllMinimum, None))?;
        extensions = solve_starter(ev, &starters, k)?.extensions;
    }
    let offered_f = extensions.iter().map(|e| e.f).fold(sg.f, f64::min);
    let rho_offered = ctx.rho(offered_f);
    let chi = improvement_factor(rho_offered, rho_greedy).ok();

    let witness = extensions
        .iter()
        .filter(|e| e.set.is_subset(&ctx.cover))
        .min_by(|a, b| a.f.total_cmp(&b.f).then_with(|| a.set.cmp(&b.set)));
    let rho_witness = witness.map(|e| ctx.rho(e.f));
    let backward = if c > k {
        Some(backward_greedy(ev, &ctx.cover, k)?)
    } else {
        None
    };
    let rho_backward = backward.as_ref().map(|b| ctx.rho(b.f));

    let witness_above_eta = matches!((rho_witness, eta), (Some(rw), Some(e)) if e > 0.0 && rw > e);
    let greedy_below_nu_and_eta = eta.is_some_and(|e| rho_greedy < nu.min(e));
    let chi_bound = match eta {
        Some(e) if e > 0.0 => Some(chi_lower_bound(e, rho_greedy)?),
        _ => None,
    };
    let chi_exceeds_bound = match (chi_bound.and_then(|b| b.chi_lower), chi) {
        (Some(lo), Some(x)) if witness_above_eta => Some(x > lo),
        _ => None,
    };
    Ok(BoundReport {
        k,
        nu,
        cover_size: c,
        r,
        kappa,
        gamma,
        eta_bar,
        eta,
        r_of_nu,
        m_of_nu: m_nu,
        rho_greedy,
        rho_offered,
        chi,
        witness: witness.map(|e| e.set.clone()),
        rho_witness,
        backward: backward.map(|b| b.set),
        rho_backward,
        witness_above_eta,
        greedy_below_nu_and_eta,
        chi_bound,
        chi_exceeds_bound,
    })
}

/// Orderings of `T \ S` checked per subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainPolicy {
    /// Enumerate every ordering when there are at most this many.
    pub exhaustive_limit: usize,
    /// Otherwise draw this many seeded orderings.
    pub samples: usize,
    pub seed: u64,
}

impl Default for ChainPolicy {
    fn default() -> Self {
        ChainPolicy { exhaustive_limit: 720, samples: 64, seed: 0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GuaranteeReport {
    pub kappa: f64,
    pub gamma: Option<f64>,
    pub subsets_checked: u64,
    pub chains_checked: u64,
    pub telescoping_violations: u64,
    pub max_telescoping_error: f64,
    pub curvature_chain_violations: u64,
    pub lower_bound_violations: u64,
    /// Largest `1 - gamma * sum kappa^(t-1)` slack over the checked subsets.
    pub min_lower_bound_slack: Option<f64>,
    pub zero_rank_bound_is_one: bool,
    pub greedy_ratio: Option<bool>,
    pub offered_ratio: Option<bool>,
    pub offered_le_greedy: Option<bool>,
    pub improvement_factor_holds: Option<bool>,
    pub chi: Option<f64>,
    #[serde(skip)]
    pub findings: Vec<String>,
}

fn chains(items: &[usize], policy: &ChainPolicy, salt: u64) -> Vec<Vec<usize>> {
    let r = items.len();
    let count: u128 = (1..=r as u128).product();
    if count <= policy.exhaustive_limit as u128 {
        return permutations(items);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    rng.set_stream(salt);
    (0..policy.samples)
        .map(|_| {
            let mut v = items.to_vec();
            v.shuffle(&mut rng);
            v
        })
        .collect()
}

/// Checks the telescoping identity, the curvature chain inequality and the
/// rank lower bound on every family member `S` strictly inside the cover,
/// plus the approximation guarantees against the oracle.
///
/// The family is enumerated up to the cover size, so this is only practical
/// on small graphs. Violations are counted and described, not raised.
pub fn verify_guarantees(
    ev: &Evaluator<'_>,
    ctx: &RankContext,
    k: usize,
    nu: f64,
    policy: &ChainPolicy,
    tol: f64,
) -> Result<GuaranteeReport> {
    let c = ctx.cover_size;
    let fam = enumerate_family(ev, ctx, nu, c, Scope::Full)?;
    let mut rep = GuaranteeReport {
        zero_rank_bound_is_one: rank_lower_bound(0.5, 0.5, 0) == 1.0,
        ..GuaranteeReport::default()
    };
    match elemental_curvature(ev, ctx, &fam) {
        Ok(cr) => {
            rep.kappa = cr.kappa;
            rep.gamma = cr.gamma;
        }
        Err(Error::NoValidPairs) => rep.kappa = 0.0,
        Err(e) => return Err(e),
    }

    let cover = &ctx.cover;
    let rho_bar_t = ctx.rho_bar(ev.objective(cover)?);
    let inside: Vec<&NodeSet> = fam
        .members
        .iter()
        .map(|m| &m.set)
        .filter(|s| s.is_subset(cover) && s.len() < cover.len())
        .collect();
    for (idx, s) in inside.iter().enumerate() {
        rep.subsets_checked += 1;
        let rest: Vec<usize> = cover.difference(s).iter().collect();
        let rho_bar_s = ctx.rho_bar_of(ev, s)?;
        let gap = rho_bar_t - rho_bar_s;
        let base_incr: Vec<(usize, f64)> = rest
            .iter()
            .map(|&j| Ok((j, rank_increment(ev, ctx, s, j)?)))
            .collect::<Result<_>>()?;
        let incr_at = |j: usize| base_incr.iter().find(|(x, _)| *x == j).map(|p| p.1).unwrap_or(0.0);
        for chain in chains(&rest, policy, idx as u64) {
            rep.chains_checked += 1;
            let mut cur = (*s).clone();
            let mut telescoped = 0.0;
            let mut curved = 0.0;
            let mut weight = 1.0;
            for &j in &chain {
                telescoped += rank_increment(ev, ctx, &cur, j)?;
                curved += weight * incr_at(j);
                weight *= rep.kappa;
                cur = cur.with(j);
            }
            let err = (gap - telescoped).abs();
            rep.max_telescoping_error = rep.max_telescoping_error.max(err);
            if err > tol {
                rep.telescoping_violations += 1;
                rep.findings.push(format!("telescoping error {err:e} on {s} chain {chain:?}"));
            }
            if gap > curved + tol {
                rep.curvature_chain_violations += 1;
                rep.findings.push(format!("curvature chain bound fails on {s} chain {chain:?}"));
            }
        }
        if let Some(gamma) = rep.gamma {
            let bound = rank_lower_bound(rep.kappa, gamma, rest.len());
            let slack = rho_bar_s - bound;
            rep.min_lower_bound_slack = Some(rep.min_lower_bound_slack.map_or(slack, |x: f64| x.min(slack)));
            if slack < -tol {
                rep.lower_bound_violations += 1;
                rep.findings.push(format!("rank lower bound {bound} exceeds rho_bar {rho_bar_s} on {s}"));
            }
        }
    }

    let n = ev.node_count();
    if k >= 1 && k <= n && binomial(n, k) <= ORACLE_CAP {
        let (o_set, o_f) = brute_force_oracle(ev, k)?;
        let rho_o = ctx.rho(o_f);
        let floor = ONE_MINUS_INV_E * rho_o;
        let sg = greedy(ev, k)?;
        let rho_g = ctx.rho(sg.f);
        rep.greedy_ratio = Some(rho_g >= floor - tol);
        if let Some(m) = fam.m.filter(|&m| m <= k) {
            let mut starters: Vec<NodeSet> = fam.minimum_members().map(|x| x.set.clone()).collect();
            let prefix = NodeSet::from_indices(sg.steps[..m].iter().map(|s| s.node));
            if !starters.contains(&prefix) {
                starters.push(prefix);
            }
            starters.sort();
            let out = solve_starter(ev, &starters, k)?;
            let rho_s = ctx.rho(out.offered.f);
            rep.offered_ratio = Some(rho_s >= floor - tol);
            rep.offered_le_greedy = Some(out.offered.f <= sg.f + tol * sg.f.max(1.0));
            rep.chi = improvement_factor(rho_s, rho_g).ok();
            if let Some(chi) = rep.chi.filter(|&x| x > tol) {
                rep.improvement_factor_holds = Some(rho_s >= (1.0 + chi) * floor - tol);
            }
            if o_f > out.offered.f && !ties(o_f, out.offered.f) {
                rep.findings.push(format!("oracle {o_set} is worse than the offered set"));
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::vertex_cover_from_matching;
    use crate::graph::Graph;

    fn g(text: &str) -> Graph {
        Graph::parse_edge_list(text).unwrap().graph
    }

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }

    fn p3_ctx(p3: &Graph) -> RankContext {
        RankContext::build(&Evaluator::new(p3), &vertex_cover_from_matching(p3), None).unwrap()
    }

    #[test]
    fn increments_on_path() {
        let p3 = g("1 2\n2 3");
        let ev = Evaluator::new(&p3);
        let ctx = p3_ctx(&p3);
        close(rank_increment(&ev, &ctx, &NodeSet::singleton(0), 2).unwrap(), 1.0);
        close(rank_increment(&ev, &ctx, &NodeSet::from_indices([0, 1]), 2).unwrap(), 1.0 / 6.0);
        // from the empty set the increment is the rank of the singleton
        close(rank_increment(&ev, &ctx, &NodeSet::empty(), 0).unwrap(), ctx.rho(7.0));
        assert_eq!(
            rank_increment(&ev, &ctx, &NodeSet::singleton(0), 0).unwrap_err(),
            Error::ElementInSet(1)
        );
    }

    #[test]
    fn lower_bound_values() {
        close(rank_lower_bound(0.5, 0.5, 1), 0.5);
        close(rank_lower_bound(0.5, 0.5, 2), 0.25);
        assert_eq!(rank_lower_bound(0.3, 0.9, 0), 1.0);
        close(rank_lower_bound(1.0, 0.1, 3), 0.7);
        close(rank_lower_bound(0.0, 0.4, 5), 0.6);
    }

    #[test]
    fn m_of_nu_values() {
        assert_eq!(m_of_nu(0.5, 0.5, 0.4, 6), (1, 5));
        assert_eq!(m_of_nu(0.5, 0.5, 0.6, 6), (0, 6));
        assert_eq!(m_of_nu(0.0, 0.3, 0.7, 6), (5, 1));
    }

    #[test]
    fn chi_bound_values() {
        let b = chi_lower_bound(1.0, 0.8).unwrap();
        close(b.delta.unwrap(), 0.2);
        close(b.chi_lower.unwrap(), 0.25);
        let b = chi_lower_bound(0.5, 0.25).unwrap();
        close(b.delta.unwrap(), 0.5);
        close(b.chi_lower.unwrap(), 1.0);
        assert!(!chi_lower_bound(0.5, 0.5).unwrap().preconditions_met);
        assert_eq!(chi_lower_bound(0.0, 0.1).unwrap_err(), Error::NonPositiveEta(0.0));
    }

    #[test]
    fn curvature_on_path_family() {
        let p3 = g("1 2\n2 3");
        let ev = Evaluator::new(&p3);
        let ctx = p3_ctx(&p3);
        let fam = enumerate_family(&ev, &ctx, 0.8, 2, Scope::Full).unwrap();
        let cr = elemental_curvature(&ev, &ctx, &fam).unwrap();
        assert!(cr.kappa <= 1.0 + 1e-9 && cr.kappa >= 0.0);
        // only {2} is a proper subset of the cover {1,2} in the family
        close(cr.gamma.unwrap(), rank_increment(&ev, &ctx, &NodeSet::singleton(1), 0).unwrap());
        assert!(cr.gamma.unwrap() < 1.0);
    }

    #[test]
    fn cycle_covers_have_no_curvature_pairs() {
        let c4 = g("1 2\n2 3\n3 4\n4 1");
        let ev = Evaluator::new(&c4);
        let ctx = RankContext::build(&ev, &NodeSet::from_indices([0, 2]), None).unwrap();
        let fam = enumerate_family(&ev, &ctx, 1.0, 2, Scope::Full).unwrap();
        match elemental_curvature(&ev, &ctx, &fam) {
            Err(Error::NoValidPairs) => {}
            Ok(cr) => assert!(cr.kappa <= 1.0 + 1e-9),
            Err(e) => panic!("{e:?}"),
        }
    }

    #[test]
    fn one_term_telescope() {
        let p3 = g("1 2\n2 3");
        let ev = Evaluator::new(&p3);
        let ctx = p3_ctx(&p3);
        let t = ctx.rho_of(&ev, &NodeSet::from_indices([0, 1])).unwrap();
        let s = ctx.rho_of(&ev, &NodeSet::singleton(1)).unwrap();
        close(t - s, rank_increment(&ev, &ctx, &NodeSet::singleton(1), 0).unwrap());
    }

    #[test]
    fn guarantees_hold_on_small_graphs() {
        for text in ["1 2\n2 3", "1 2\n2 3\n3 4\n4 5\n5 1", "1 2\n1 3\n1 4\n4 5\n5 6"] {
            let gr = g(text);
            let ev = Evaluator::new(&gr);
            let ctx = RankContext::build(&ev, &vertex_cover_from_matching(&gr), None).unwrap();
            let rep = verify_guarantees(&ev, &ctx, 2, 0.5, &ChainPolicy::default(), 1e-9).unwrap();
            assert_eq!(rep.telescoping_violations, 0, "{:?}", rep.findings);
            assert_eq!(rep.curvature_chain_violations, 0, "{:?}", rep.findings);
            assert_eq!(rep.lower_bound_violations, 0, "{:?}", rep.findings);
            assert_eq!(rep.greedy_ratio, Some(true));
            assert!(rep.zero_rank_bound_is_one);
        }
    }

    #[test]
    fn bound_report_is_consistent() {
        let gr = g("1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n1 4");
        let ev = Evaluator::new(&gr);
        let ctx = RankContext::build(&ev, &vertex_cover_from_matching(&gr), None).unwrap();
        let rep = bound_report(&ev, &ctx, 2, 0.5, 3).unwrap();
        if let (Some(eb), Some(e)) = (rep.eta_bar, rep.eta) {
            close(e, eb - ctx.rho_bar_empty);
        }
        if let Some(b) = rep.chi_bound.filter(|b| b.preconditions_met) {
            let d = b.delta.unwrap();
            close(b.chi_lower.unwrap(), d / (1.0 - d));
        }
    }
}
