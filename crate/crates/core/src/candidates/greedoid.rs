//! Greedoid axioms over explicit set families, and a best-effort greedoid
//! built from the minimum level of a candidate family.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::CandidateFamily;
use crate::error::{Error, Result};
use crate::graph::NodeSet;

/// Finite family of distinct sets, kept in (cardinality, lexicographic) order.
/// The empty set is an ordinary member.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SetFamily {
    sets: Vec<NodeSet>,
    index: HashSet<NodeSet>,
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = NodeSet>>(sets: I) -> Self {
        let mut sets: Vec<NodeSet> = sets.into_iter().collect();
        sets.sort_by(|a, b| a.cmp_shortlex(b));
        sets.dedup();
        let index = sets.iter().cloned().collect();
        SetFamily { sets, index }
    }

    pub fn sets(&self) -> &[NodeSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &NodeSet) -> bool {
        self.index.contains(s)
    }

    pub fn contains_empty(&self) -> bool {
        self.index.contains(&NodeSet::empty())
    }

    fn insert(&mut self, s: NodeSet) {
        if self.index.insert(s.clone()) {
            let pos = self
                .sets
                .binary_search_by(|x| x.cmp_shortlex(&s))
                .unwrap_or_else(|p| p);
            self.sets.insert(pos, s);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedoidReport {
    pub g1: bool,
    pub g2: bool,
    /// Nonempty feasible set with no feasible single deletion.
    #[serde(skip)]
    pub g2_witness: Option<NodeSet>,
    pub g3: bool,
    /// `(X, Y)` with `|X| > |Y|` and no augmenting element.
    #[serde(skip)]
    pub g3_witness: Option<(NodeSet, NodeSet)>,
}

impl GreedoidReport {
    pub fn is_greedoid(&self) -> bool {
        self.g1 && self.g2 && self.g3
    }
}

impl fmt::Display for GreedoidReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G1={} G2={} G3={}", self.g1, self.g2, self.g3)?;
        if let Some(w) = &self.g2_witness {
            write!(f, " G2 witness {w}")?;
        }
        if let Some((x, y)) = &self.g3_witness {
            write!(f, " G3 witness X={x} Y={y}")?;
        }
        Ok(())
    }
}

fn augments(fam: &SetFamily, x: &NodeSet, y: &NodeSet) -> bool {
    x.iter().any(|e| !y.contains(e) && fam.contains(&y.with(e)))
}

fn find_g3_violation(fam: &SetFamily, local_only: bool) -> Option<(NodeSet, NodeSet)> {
    for x in fam.sets() {
        for y in fam.sets() {
            let larger = if local_only { x.len() == y.len() + 1 } else { x.len() > y.len() };
            if larger && !augments(fam, x, y) {
                return Some((x.clone(), y.clone()));
            }
        }
    }
    None
}

/// Checks all three greedoid axioms exhaustively, returning the first
/// violation of each in family order.
///
/// When G1 and G2 hold, every feasible `X` has feasible subsets of every
/// smaller size, so augmentation only needs checking for `|X| = |Y| + 1`.
pub fn check_greedoid(fam: &SetFamily) -> GreedoidReport {
    let g1 = fam.contains_empty();
    let g2_witness = fam
        .sets()
        .iter()
        .filter(|a| !a.is_empty())
        .find(|a| a.iter().all(|e| !fam.contains(&a.without(e))))
        .cloned();
    let g2 = g2_witness.is_none();
    let g3_witness = find_g3_violation(fam, g1 && g2);
    GreedoidReport {
        g1,
        g2,
        g2_witness,
        g3: g3_witness.is_none(),
        g3_witness,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Greedoid {
    pub family: SetFamily,
    /// Minimum-level members kept as bases.
    pub retained: Vec<NodeSet>,
    pub report: GreedoidReport,
}

fn all_subsets(a: &NodeSet) -> Vec<NodeSet> {
    let items = a.as_slice();
    (0u64..(1u64 << items.len()))
        .map(|mask| {
            NodeSet::from_sorted_unchecked(
                items
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect(),
            )
        })
        .collect()
}

/// Builds a greedoid from the minimum level `G_m` of a candidate family.
///
/// Minimum-level members are tried best objective first. A member is
/// retained when the downward closure of everything retained so far stays
/// augmentable. The result is that downward closure plus every larger family
/// member containing a retained set, validated with [`check_greedoid`].
/// Different orders can give different valid greedoids; this one is
/// deterministic.
pub fn build_greedoid(fam: &CandidateFamily) -> Result<Greedoid> {
    let m = fam
        .m
        .ok_or_else(|| Error::ConstructionFailed("family has no minimum level".into()))?;
    let mut level: Vec<_> = fam.minimum_members().collect();
    level.sort_by(|a, b| a.f.total_cmp(&b.f).then_with(|| a.set.cmp(&b.set)));

    let mut closure = SetFamily::new([NodeSet::empty()]);
    let mut retained = Vec::new();
    for member in level {
        let fresh: Vec<NodeSet> = all_subsets(&member.set)
            .into_iter()
            .filter(|s| !closure.contains(s))
            .collect();
        let mut trial = closure.clone();
        for s in &fresh {
            trial.insert(s.clone());
        }
        // old pairs stay augmentable; only pairs touching a new set can fail
        let ok = fresh.iter().all(|s| {
            trial.sets().iter().all(|t| {
                let xy_ok = if s.len() == t.len() + 1 { augments(&trial, s, t) } else { true };
                let yx_ok = if t.len() == s.len() + 1 { augments(&trial, t, s) } else { true };
                xy_ok && yx_ok
            })
        });
        if ok {
            closure = trial;
            retained.push(member.set.clone());
        }
    }

    let mut family = closure;
    for x in fam.members.iter().filter(|x| x.set.len() > m) {
        if retained.iter().any(|r| r.is_subset(&x.set)) {
            family.insert(x.set.clone());
        }
    }
    let report = check_greedoid(&family);
    if !report.is_greedoid() {
        return Err(Error::ConstructionFailed(report.to_string()));
    }
    retained.sort();
    Ok(Greedoid { family, retained, report })
}

#[cfg(test)]
mod tests {
    use super::super::Member;
    use super::*;

    fn ns(v: &[usize]) -> NodeSet {
        NodeSet::from_indices(v.iter().copied())
    }

    fn family_of(sets: &[&[usize]], m: usize) -> CandidateFamily {
        let mut members: Vec<Member> = sets
            .iter()
            .map(|s| Member { set: ns(s), f: 0.0, rho_bar: 1.0 })
            .collect();
        members.sort_by(|a, b| a.set.cmp_shortlex(&b.set));
        CandidateFamily { nu: 0.5, cover_size: 8, members, m: Some(m), enumeration_cap: 8 }
    }

    #[test]
    fn axiom_checks() {
        let ok = SetFamily::new([ns(&[]), ns(&[1]), ns(&[2]), ns(&[1, 2])]);
        assert!(check_greedoid(&ok).is_greedoid());

        let r = check_greedoid(&SetFamily::new([ns(&[]), ns(&[1, 2])]));
        assert!(r.g1);
        assert!(!r.g2);
        assert_eq!(r.g2_witness, Some(ns(&[1, 2])));

        let r = check_greedoid(&SetFamily::new([ns(&[1])]));
        assert!(!r.g1);

        // accessible but not augmentable: {1,2} cannot augment {3}
        let r = check_greedoid(&SetFamily::new([ns(&[]), ns(&[1]), ns(&[3]), ns(&[1, 2])]));
        assert!(r.g1 && r.g2);
        assert_eq!(r.g3_witness, Some((ns(&[1, 2]), ns(&[3]))));
    }

    #[test]
    fn simplex_downward_closure() {
        // all 2-subsets of {0,1,2}: bases of the uniform matroid
        let fam = family_of(&[&[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]], 2);
        let gr = build_greedoid(&fam).unwrap();
        assert!(gr.report.is_greedoid());
        assert_eq!(gr.retained.len(), 3);
        assert_eq!(gr.family.len(), 8);
    }

    #[test]
    fn disjoint_bases_are_culled() {
        // {0,1} and {2,3} cannot coexist: {0,1} cannot augment {2}
        let fam = family_of(&[&[0, 1], &[2, 3], &[0, 1, 4]], 2);
        let gr = build_greedoid(&fam).unwrap();
        assert_eq!(gr.retained, vec![ns(&[0, 1])]);
        assert!(gr.family.contains(&ns(&[0, 1, 4])));
        assert!(!gr.family.contains(&ns(&[2, 3])));
    }

    #[test]
    fn construction_failure_is_reported() {
        // {0,1,2,3} contains a retained base but none of its 3-subsets is feasible
        let fam = family_of(&[&[0, 1], &[0, 1, 2, 3]], 2);
        match build_greedoid(&fam).unwrap_err() {
            Error::ConstructionFailed(msg) => assert!(msg.contains("G2=false"), "{msg}"),
            e => panic!("unexpected {e:?}"),
        }
    }
}
