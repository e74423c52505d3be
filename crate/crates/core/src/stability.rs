//! Blocking pairs at three strengths, stability predicates, deferred
//! acceptance and brute-force enumeration of stable matchings.

use std::fmt;

use crate::error::{IcrError, Result};
use crate::model::{AgentRef, Comparison, Instance, Matching, Side, StrictProfile};

/// How one member of a pair regards the other relative to its partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attitude {
    Unmatched,
    StrictlyPrefers,
    CannotCompare,
    PrefersPartner,
}

impl Attitude {
    fn eager(self) -> bool {
        matches!(self, Attitude::Unmatched | Attitude::StrictlyPrefers)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockingLevel {
    Strong,
    Weak,
    VeryWeak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityLevel {
    Weak,
    Strong,
    Super,
}

impl StabilityLevel {
    /// The blocking pairs that rule this level of stability out.
    pub fn excluded_blockers(self) -> BlockingLevel {
        match self {
            StabilityLevel::Weak => BlockingLevel::Strong,
            StabilityLevel::Strong => BlockingLevel::Weak,
            StabilityLevel::Super => BlockingLevel::VeryWeak,
        }
    }
}

impl fmt::Display for StabilityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityLevel::Weak => "weak",
            StabilityLevel::Strong => "strong",
            StabilityLevel::Super => "super",
        })
    }
}

/// A blocking pair, tagged with the strongest level it reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockingPair {
    pub man: usize,
    pub woman: usize,
    pub level: BlockingLevel,
    pub man_attitude: Attitude,
    pub woman_attitude: Attitude,
}

impl BlockingPair {
    pub fn satisfies(&self, level: BlockingLevel) -> bool {
        self.level <= level
    }
}

fn attitude(instance: &Instance, agent: AgentRef, candidate: usize, partner: Option<usize>) -> Attitude {
    match partner {
        None => Attitude::Unmatched,
        Some(p) => match instance.relation(agent).compare(candidate, p) {
            Comparison::PrefersFirst => Attitude::StrictlyPrefers,
            Comparison::PrefersSecond => Attitude::PrefersPartner,
            Comparison::Incomparable => Attitude::CannotCompare,
        },
    }
}

/// Strongest blocking level of an unmatched acceptable pair, if any.
pub(crate) fn classify_pair(
    instance: &Instance,
    matching: &Matching,
    man: usize,
    woman: usize,
) -> Option<BlockingPair> {
    let man_attitude = attitude(instance, AgentRef::man(man), woman, matching.wife(man));
    if man_attitude == Attitude::PrefersPartner {
        return None;
    }
    let woman_attitude = attitude(instance, AgentRef::woman(woman), man, matching.husband(woman));
    if woman_attitude == Attitude::PrefersPartner {
        return None;
    }
    let level = match (man_attitude.eager(), woman_attitude.eager()) {
        (true, true) => BlockingLevel::Strong,
        (true, false) | (false, true) => BlockingLevel::Weak,
        (false, false) => BlockingLevel::VeryWeak,
    };
    Some(BlockingPair {
        man,
        woman,
        level,
        man_attitude,
        woman_attitude,
    })
}

/// All pairs blocking `matching` at `level` or stronger, in lexicographic order.
pub fn blocking_pairs(
    instance: &Instance,
    matching: &Matching,
    level: BlockingLevel,
) -> Result<Vec<BlockingPair>> {
    matching.check_against(instance)?;
    Ok(blockers_unchecked(instance, matching, level).collect())
}

pub(crate) fn blockers_unchecked<'a>(
    instance: &'a Instance,
    matching: &'a Matching,
    level: BlockingLevel,
) -> impl Iterator<Item = BlockingPair> + 'a {
    instance
        .acceptable_pairs()
        .into_iter()
        .filter(|&(m, w)| !matching.contains(m, w))
        .filter_map(move |(m, w)| classify_pair(instance, matching, m, w))
        .filter(move |bp| bp.satisfies(level))
}

pub fn is_stable(instance: &Instance, matching: &Matching, level: StabilityLevel) -> Result<bool> {
    matching.check_against(instance)?;
    Ok(is_stable_unchecked(instance, matching, level))
}

pub(crate) fn is_stable_unchecked(instance: &Instance, matching: &Matching, level: StabilityLevel) -> bool {
    let excluded = level.excluded_blockers();
    for (m, rel) in instance.men().iter().enumerate() {
        for &w in rel.acceptable() {
            if matching.contains(m, w) || !instance.women()[w].accepts(m) {
                continue;
            }
            if classify_pair(instance, matching, m, w).is_some_and(|bp| bp.satisfies(excluded)) {
                return false;
            }
        }
    }
    true
}

/// First pair (lexicographically) that strongly blocks `matching` under `truth`.
pub(crate) fn strict_blocking_pair(truth: &StrictProfile, matching: &Matching) -> Option<(usize, usize)> {
    for m in 0..truth.n_men() {
        let man = AgentRef::man(m);
        let mut sorted: Vec<usize> = truth.list(man).to_vec();
        sorted.sort_unstable();
        for w in sorted {
            let woman = AgentRef::woman(w);
            if matching.contains(m, w) || truth.rank(woman, m).is_none() {
                continue;
            }
            if truth.prefers_to_partner(man, w, matching.wife(m))
                && truth.prefers_to_partner(woman, m, matching.husband(w))
            {
                return Some((m, w));
            }
        }
    }
    None
}

/// Classical stability with respect to strict preferences.
pub fn is_weakly_stable_strict(truth: &StrictProfile, matching: &Matching) -> bool {
    strict_blocking_pair(truth, matching).is_none()
}

pub(crate) fn require_weakly_stable(truth: &StrictProfile, matching: &Matching) -> Result<()> {
    match strict_blocking_pair(truth, matching) {
        Some((m, w)) => Err(IcrError::MatchingNotWeaklyStable {
            man: AgentRef::man(m),
            woman: AgentRef::woman(w),
        }),
        None => Ok(()),
    }
}

/// Deferred acceptance with `proposing` making offers; returns the
/// proposing-side-optimal stable matching. Only mutually ranked pairs can match.
pub fn gale_shapley(truth: &StrictProfile, proposing: Side) -> Matching {
    let proposer = |i| AgentRef { side: proposing, index: i };
    let receiver = |i| AgentRef { side: proposing.other(), index: i };
    let (n_prop, n_recv) = match proposing {
        Side::Man => (truth.n_men(), truth.n_women()),
        Side::Woman => (truth.n_women(), truth.n_men()),
    };
    let mut next = vec![0usize; n_prop];
    let mut held: Vec<Option<usize>> = vec![None; n_recv];
    let mut free: Vec<usize> = (0..n_prop).rev().collect();
    while let Some(p) = free.pop() {
        let list = truth.list(proposer(p));
        while next[p] < list.len() {
            let r = list[next[p]];
            next[p] += 1;
            if truth.rank(receiver(r), p).is_none() {
                continue;
            }
            match held[r] {
                None => {
                    held[r] = Some(p);
                    break;
                }
                Some(current) if truth.prefers(receiver(r), p, current) => {
                    held[r] = Some(p);
                    free.push(current);
                    break;
                }
                Some(_) => {}
            }
        }
    }
    let pairs = held
        .iter()
        .enumerate()
        .filter_map(|(r, p)| p.map(|p| (r, p)))
        .map(|(r, p)| match proposing {
            Side::Man => (p, r),
            Side::Woman => (r, p),
        });
    Matching::from_pairs(truth.n_men(), truth.n_women(), pairs).expect("deferred acceptance is one-to-one")
}

/// Calls `visit` on every matching over mutually acceptable pairs, in a
/// fixed order (each man in turn tries: no partner, then women by index).
/// Stops early when `visit` returns `false`.
pub fn for_each_matching(instance: &Instance, mut visit: impl FnMut(&Matching) -> bool) {
    let options: Vec<Vec<usize>> = (0..instance.n_men())
        .map(|m| {
            instance.men()[m]
                .acceptable()
                .iter()
                .copied()
                .filter(|&w| instance.is_acceptable(m, w))
                .collect()
        })
        .collect();
    let mut current = Matching::empty(instance.n_men(), instance.n_women());
    let mut taken = vec![false; instance.n_women()];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    fn rec(
        m: usize,
        options: &[Vec<usize>],
        taken: &mut [bool],
        pairs: &mut Vec<(usize, usize)>,
        current: &mut Matching,
        visit: &mut dyn FnMut(&Matching) -> bool,
        n_women: usize,
    ) -> bool {
        if m == options.len() {
            *current = Matching::from_pairs(options.len(), n_women, pairs.iter().copied())
                .expect("search keeps matchings one-to-one");
            return visit(current);
        }
        if !rec(m + 1, options, taken, pairs, current, visit, n_women) {
            return false;
        }
        for &w in &options[m] {
            if taken[w] {
                continue;
            }
            taken[w] = true;
            pairs.push((m, w));
            let go_on = rec(m + 1, options, taken, pairs, current, visit, n_women);
            pairs.pop();
            taken[w] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(
        0,
        &options,
        &mut taken,
        &mut pairs,
        &mut current,
        &mut visit,
        instance.n_women(),
    );
}

pub(crate) fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(IcrError::SizeLimitExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

/// Every matching stable under `truth`, found by exhaustive search, sorted.
pub fn enumerate_stable_matchings(truth: &StrictProfile, size_cap: usize) -> Result<Vec<Matching>> {
    check_cap("agents per side", truth.n_men().max(truth.n_women()), size_cap)?;
    let strict = truth.to_instance();
    let mut found = Vec::new();
    for_each_matching(&strict, |mu| {
        if is_weakly_stable_strict(truth, mu) {
            found.push(mu.clone());
        }
        true
    });
    found.sort();
    Ok(found)
}

/// Whether super-stability of `matching` agrees with weak stability under
/// every combination of per-agent linear extensions.
pub fn check_super_stability_extension_equivalence(
    instance: &Instance,
    matching: &Matching,
    cap: usize,
) -> Result<bool> {
    matching.check_against(instance)?;
    let super_stable = is_stable_unchecked(instance, matching, StabilityLevel::Super);
    Ok(super_stable == stable_in_every_extension(instance, matching, cap)?)
}

/// Weak stability of `matching` in every strict profile extending `instance`.
pub fn stable_in_every_extension(instance: &Instance, matching: &Matching, cap: usize) -> Result<bool> {
    let mut per_agent = Vec::new();
    let mut product: usize = 1;
    for agent in instance.agents() {
        let ext = instance.relation(agent).linear_extensions(cap);
        if ext.overflow {
            return Err(IcrError::SizeLimitExceeded {
                what: "linear extensions of one agent",
                size: cap + 1,
                cap,
            });
        }
        product = product.saturating_mul(ext.orders.len().max(1));
        check_cap("linear extension profiles", product, cap)?;
        per_agent.push((agent, ext.orders));
    }
    let n_men = instance.n_men();
    let mut choice = vec![0usize; per_agent.len()];
    loop {
        let lists: Vec<Vec<usize>> = per_agent
            .iter()
            .zip(&choice)
            .map(|((_, orders), &i)| orders.get(i).cloned().unwrap_or_default())
            .collect();
        let (men, women) = lists.split_at(n_men);
        let profile = StrictProfile::new(men.to_vec(), women.to_vec())?;
        if !is_weakly_stable_strict(&profile, matching) {
            return Ok(false);
        }
        // Odometer over the per-agent choices.
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(true);
            }
            choice[k] += 1;
            if choice[k] < per_agent[k].1.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{InterviewSet, PreferenceRelation};
    use crate::refine::apply_interviews;

    fn pairs_of(bps: &[BlockingPair]) -> Vec<(usize, usize)> {
        bps.iter().map(|b| (b.man, b.woman)).collect()
    }

    #[test]
    fn fig1_base_every_other_pair_very_weakly_blocks() {
        let f = fixtures::fig1();
        let bps = blocking_pairs(&f.instance, &f.matching, BlockingLevel::VeryWeak).unwrap();
        assert_eq!(pairs_of(&bps), vec![(0, 1), (1, 0)]);
        assert!(bps.iter().all(|b| b.level == BlockingLevel::VeryWeak));
        assert!(!is_stable(&f.instance, &f.matching, StabilityLevel::Super).unwrap());
        assert!(is_stable(&f.instance, &f.matching, StabilityLevel::Weak).unwrap());
    }

    #[test]
    fn fig1_truth_has_no_strong_blockers() {
        let f = fixtures::fig1();
        let strict = f.truth.to_instance();
        assert!(blocking_pairs(&strict, &f.matching, BlockingLevel::Strong).unwrap().is_empty());
    }

    #[test]
    fn fig1_after_three_interviews_is_super_stable() {
        let f = fixtures::fig1();
        let t: InterviewSet = [(1, 0), (1, 1), (0, 1)].into_iter().collect();
        let refined = apply_interviews(&f.instance, &f.truth, &t).unwrap();
        assert!(is_stable(&refined, &f.matching, StabilityLevel::Super).unwrap());
    }

    #[test]
    fn partner_preference_excludes_pair() {
        // m1 knows he prefers w1 (his partner) to w2.
        let men = vec![
            PreferenceRelation::new([0, 1], [(0, 1)]),
            PreferenceRelation::incomparable([0, 1]),
        ];
        let women = vec![PreferenceRelation::incomparable([0, 1]); 2];
        let inst = Instance::new(men, women).unwrap();
        let mu = Matching::identity(2);
        let bps = blocking_pairs(&inst, &mu, BlockingLevel::VeryWeak).unwrap();
        assert_eq!(pairs_of(&bps), vec![(1, 0)]);
    }

    #[test]
    fn unmatched_agents_are_eager() {
        let inst = Instance::new(
            vec![PreferenceRelation::incomparable([0])],
            vec![PreferenceRelation::incomparable([0])],
        )
        .unwrap();
        let bps = blocking_pairs(&inst, &Matching::empty(1, 1), BlockingLevel::Strong).unwrap();
        assert_eq!(bps[0].level, BlockingLevel::Strong);
        assert_eq!(bps[0].man_attitude, Attitude::Unmatched);
    }

    #[test]
    fn invalid_matching_is_rejected() {
        let f = fixtures::tri();
        let bad = Matching::from_pairs(3, 3, [(0, 2)]).unwrap();
        assert!(matches!(
            is_stable(&f.instance, &bad, StabilityLevel::Weak),
            Err(IcrError::InvalidMatching(_))
        ));
    }

    #[test]
    fn deferred_acceptance_on_fixtures() {
        let f = fixtures::fig1();
        assert_eq!(gale_shapley(&f.truth, Side::Man), f.matching);
        assert_eq!(gale_shapley(&f.truth, Side::Woman), f.matching);
        let t = fixtures::tt2();
        assert_eq!(gale_shapley(&t.truth, Side::Man), Matching::identity(2));
        assert_eq!(gale_shapley(&t.truth, Side::Woman), Matching::identity(2));
    }

    #[test]
    fn enumerate_on_fixtures() {
        assert_eq!(enumerate_stable_matchings(&fixtures::fig1().truth, 8).unwrap(), vec![fixtures::fig1().matching]);
        assert_eq!(enumerate_stable_matchings(&fixtures::tt2().truth, 8).unwrap(), vec![Matching::identity(2)]);
        let one = StrictProfile::new(vec![vec![0]], vec![vec![0]]).unwrap();
        assert_eq!(enumerate_stable_matchings(&one, 8).unwrap(), vec![Matching::identity(1)]);
        assert!(matches!(
            enumerate_stable_matchings(&fixtures::mt3().truth, 2),
            Err(IcrError::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn extension_equivalence_on_fixtures() {
        let f = fixtures::fig1();
        assert!(check_super_stability_extension_equivalence(&f.instance, &f.matching, 1000).unwrap());
        assert!(!stable_in_every_extension(&f.instance, &f.matching, 1000).unwrap());
        let strict = f.truth.to_instance();
        assert!(stable_in_every_extension(&strict, &f.matching, 1000).unwrap());
        let t = fixtures::tt2();
        let all: InterviewSet = t.instance.acceptable_pairs().into_iter().collect();
        let full = apply_interviews(&t.instance, &t.truth, &all).unwrap();
        assert!(is_stable(&full, &t.matching, StabilityLevel::Super).unwrap());
        assert!(check_super_stability_extension_equivalence(&full, &t.matching, 1000).unwrap());
    }
}
