//! The family of optimal and near optimal sets
//! `L = { A : 0 < |A| <= C, rho_bar(A) >= nu }`, its minimum cardinality `m`,
//! starter collections and greedoid structure.

mod greedoid;

pub use greedoid::{build_greedoid, check_greedoid, Greedoid, GreedoidReport, SetFamily};

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::NodeSet;
use crate::hitting::Evaluator;
use crate::rank::RankContext;
use crate::subsets::{count_up_to, Combinations};

/// Refuse enumerations larger than this many set evaluations.
pub const ENUMERATION_CAP: u128 = 10_000_000;
/// Default enumeration depth.
pub const DEFAULT_MAX_CARD: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub set: NodeSet,
    pub f: f64,
    pub rho_bar: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateFamily {
    pub nu: f64,
    pub cover_size: usize,
    /// Sorted by cardinality, then lexicographically.
    pub members: Vec<Member>,
    pub m: Option<usize>,
    /// Largest cardinality actually enumerated.
    pub enumeration_cap: usize,
}

impl CandidateFamily {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn minimum_members(&self) -> impl Iterator<Item = &Member> {
        let m = self.m;
        self.members.iter().filter(move |x| Some(x.set.len()) == m)
    }

    pub fn contains(&self, set: &NodeSet) -> bool {
        self.members
            .binary_search_by(|x| x.set.cmp_shortlex(set))
            .is_ok()
    }
}

/// How far [`enumerate_family`] goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Every qualifying set up to `max_card`.
    Full,
    /// Stop after the first cardinality with a qualifying set.
    MinimumLevel,
}

fn check_nu(nu: f64) -> Result<()> {
    if nu > 0.0 && nu <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidThreshold(nu))
    }
}

/// Objective values of every `k`-subset, in lexicographic order. Level 1 is
/// solved directly; level `k >= 2` scores each set as an extension of its
/// `(k-1)`-prefix through the prefix's fundamental matrix.
fn level_scores(ev: &Evaluator<'_>, k: usize) -> Result<Vec<(NodeSet, f64)>> {
    let n = ev.node_count();
    if k == 1 {
        return (0..n)
            .into_par_iter()
            .map(|i| {
                let s = NodeSet::singleton(i);
                ev.objective(&s).map(|f| (s, f))
            })
            .collect();
    }
    let prefixes: Vec<Vec<usize>> = Combinations::new(n, k - 1)
        .filter(|p| *p.last().unwrap() < n - 1)
        .collect();
    let chunks = prefixes
        .par_iter()
        .map(|p| -> Result<Vec<(NodeSet, f64)>> {
            let base = NodeSet::from_sorted_unchecked(p.clone());
            let last = *p.last().unwrap();
            if k == n {
                return Ok(vec![(NodeSet::full(n), 0.0)]);
            }
            let fund = ev.fundamental(&base)?;
            Ok(((last + 1)..n).map(|u| (base.with(u), fund.with_node(u))).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Enumerates `L` up to cardinality `max_card`.
///
/// Sets are screened with the update route; anything within `1e-9` of the
/// threshold or above it is re-solved directly and the membership decision
/// is taken on the direct value.
pub fn enumerate_family(
    ev: &Evaluator<'_>,
    ctx: &RankContext,
    nu: f64,
    max_card: usize,
    scope: Scope,
) -> Result<CandidateFamily> {
    check_nu(nu)?;
    let n = ev.node_count();
    let max_card = max_card.min(ctx.cover_size).min(n);
    let total = count_up_to(n, max_card);
    if total > ENUMERATION_CAP {
        return Err(Error::TooLarge { count: total, cap: ENUMERATION_CAP });
    }
    let mut members = Vec::new();
    let mut m = None;
    let mut reached = 0;
    for k in 1..=max_card {
        reached = k;
        let scores = level_scores(ev, k)?;
        let level = scores
            .into_par_iter()
            .filter(|(_, f)| ctx.rho_bar(*f) >= nu - 1e-9)
            .map(|(set, _)| -> Result<Option<Member>> {
                let f = ev.objective(&set)?;
                let rho_bar = ctx.rho_bar(f);
                Ok((rho_bar >= nu).then_some(Member { set, f, rho_bar }))
            })
            .collect::<Result<Vec<_>>>()?;
        let level: Vec<Member> = level.into_iter().flatten().collect();
        if !level.is_empty() && m.is_none() {
            m = Some(k);
        }
        members.extend(level);
        if m.is_some() && scope == Scope::MinimumLevel {
            break;
        }
    }
    Ok(CandidateFamily {
        nu,
        cover_size: ctx.cover_size,
        members,
        m,
        enumeration_cap: reached,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StarterMode {
    CoverSubsets,
    GreedoidFeasible,
    AllMinimum,
}

impl std::str::FromStr for StarterMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cover-subsets" => Ok(StarterMode::CoverSubsets),
            "greedoid-feasible" => Ok(StarterMode::GreedoidFeasible),
            "all-minimum" => Ok(StarterMode::AllMinimum),
            other => Err(format!(
                "unknown mode {other:?} (expected cover-subsets, greedoid-feasible or all-minimum)"
            )),
        }
    }
}

/// Selects the `m`-element starters. `cover` is required for
/// [`StarterMode::CoverSubsets`].
pub fn starter_sets(
    fam: &CandidateFamily,
    mode: StarterMode,
    cover: Option<&NodeSet>,
) -> Result<Vec<NodeSet>> {
    if fam.is_empty() {
        return Err(Error::NoStarters);
    }
    let out: Vec<NodeSet> = match mode {
        StarterMode::AllMinimum => fam.minimum_members().map(|x| x.set.clone()).collect(),
        StarterMode::CoverSubsets => {
            let cover = cover.ok_or(Error::NoStarters)?;
            fam.minimum_members()
                .filter(|x| x.set.is_subset(cover))
                .map(|x| x.set.clone())
                .collect()
        }
        StarterMode::GreedoidFeasible => {
            let m = fam.m.ok_or(Error::NoStarters)?;
            let gr = build_greedoid(fam)?;
            gr.family.sets().iter().filter(|s| s.len() == m).cloned().collect()
        }
    };
    if out.is_empty() {
        Err(Error::NoStarters)
    } else {
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct G3ClosureReport {
    pub pairs_checked: u64,
    pub exhaustive: bool,
    #[serde(skip)]
    pub violations: Vec<(NodeSet, NodeSet)>,
    pub violation_count: usize,
}

/// Above this many ordered pairs the check samples instead.
pub const G3_EXHAUSTIVE_PAIRS: u64 = 2_000_000;

/// Checks that for `X, Y` in the family with `|X| > |Y|`, some `x` in `X \ Y`
/// keeps `Y u {x}` in `L`. Membership of `Y u {x}` is decided by evaluating
/// its rank, not by looking it up in the (possibly truncated) family.
pub fn g3_closure_check(
    ev: &Evaluator<'_>,
    ctx: &RankContext,
    fam: &CandidateFamily,
    trials: u64,
    seed: u64,
) -> Result<G3ClosureReport> {
    let sets: Vec<&NodeSet> = fam.members.iter().map(|x| &x.set).collect();
    let in_l = |s: &NodeSet| -> Result<bool> {
        Ok(s.len() <= ctx.cover_size && ctx.rho_bar(ev.objective(s)?) >= fam.nu)
    };
    let check = |x: &NodeSet, y: &NodeSet| -> Result<bool> {
        for e in x.difference(y).iter() {
            if in_l(&y.with(e))? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let pairs: u64 = {
        let mut by_len = vec![0u64; ctx.cover_size.max(1) + 2];
        for s in &sets {
            let top = by_len.len() - 1;
            by_len[s.len().min(top)] += 1;
        }
        let mut smaller = 0u64;
        let mut total = 0u64;
        for c in by_len {
            total += c * smaller;
            smaller += c;
        }
        total
    };
    let mut violations = Vec::new();
    let mut checked = 0u64;
    let exhaustive = pairs <= G3_EXHAUSTIVE_PAIRS;
    if exhaustive {
        let found = sets
            .par_iter()
            .map(|x| -> Result<Vec<(NodeSet, NodeSet)>> {
                let mut v = Vec::new();
                for y in sets.iter().filter(|y| y.len() < x.len()) {
                    if !check(x, y)? {
                        v.push(((*x).clone(), (*y).clone()));
                    }
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        violations = found.into_iter().flatten().collect();
        checked = pairs;
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut attempts = 0u64;
        while checked < trials && attempts < trials.saturating_mul(100) {
            attempts += 1;
            let x = sets[rng.random_range(0..sets.len())];
            let y = sets[rng.random_range(0..sets.len())];
            if x.len() <= y.len() {
                continue;
            }
            checked += 1;
            if !check(x, y)? {
                violations.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(G3ClosureReport {
        pairs_checked: checked,
        exhaustive,
        violation_count: violations.len(),
        violations,
    })
}

/// `m`-element members none of whose single deletions lie in the family.
pub fn minimum_level_g2_failures(fam: &CandidateFamily) -> Vec<NodeSet> {
    let index: HashSet<&NodeSet> = fam.members.iter().map(|x| &x.set).collect();
    fam.minimum_members()
        .filter(|x| x.set.iter().all(|a| !index.contains(&x.set.without(a))))
        .map(|x| x.set.clone())
        .collect()
}
