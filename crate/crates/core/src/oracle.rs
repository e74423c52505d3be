//! Brute-force ground truth. Nothing here relies on the reduction machinery
//! except the `Pruned` search mode, which seeds candidates with the
//! interviews every optimum is known to contain.

use crate::error::Result;
use crate::model::{Instance, InterviewSet, Matching, StrictProfile};
use crate::pbp::classify_pbps;
use crate::refine::apply_unchecked;
use crate::stability::{check_cap, classify_pair, is_stable_unchecked, require_weakly_stable, BlockingLevel, StabilityLevel};
use crate::vc::CoverGraph;

/// Default cap on acceptable pairs for the unpruned interview search.
pub const DEFAULT_PURE_CAP: usize = 16;
/// Default cap on acceptable pairs for the pruned interview search.
pub const DEFAULT_PRUNED_CAP: usize = 24;
/// Default cap on agents per side for exhaustive matching search.
pub const DEFAULT_AGENT_CAP: usize = 8;
/// Default cap on vertices for brute-force vertex cover.
pub const DEFAULT_VC_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Pure,
    Pruned,
}

/// Visits the `k`-subsets of `0..n` in lexicographic order until `visit`
/// returns `false`. Returns whether the enumeration ran to completion.
pub fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return true;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn subset(pairs: &[(usize, usize)], picks: &[usize]) -> InterviewSet {
    picks.iter().map(|&i| pairs[i]).collect()
}

/// Fewest interviews making `matching` super-stable, by exhaustive search in
/// increasing size. Returns the lexicographically least optimal set.
pub fn oracle_icr_exact(
    instance: &Instance,
    truth: &StrictProfile,
    matching: &Matching,
    mode: OracleMode,
    size_cap: usize,
) -> Result<(usize, InterviewSet)> {
    truth.check_refines(instance)?;
    matching.check_against(instance)?;
    require_weakly_stable(truth, matching)?;
    let pairs = instance.acceptable_pairs();
    check_cap("acceptable pairs", pairs.len(), size_cap)?;

    let works = |t: &InterviewSet| {
        let refined = apply_unchecked(instance, truth, t);
        is_stable_unchecked(&refined, matching, StabilityLevel::Super)
    };

    match mode {
        OracleMode::Pure => {
            for k in 0..=pairs.len() {
                let mut found = None;
                for_each_combination(pairs.len(), k, |picks| {
                    let t = subset(&pairs, picks);
                    if works(&t) {
                        found = Some(t);
                        false
                    } else {
                        true
                    }
                });
                if let Some(t) = found {
                    return Ok((k, t));
                }
            }
        }
        OracleMode::Pruned => {
            let mandatory = classify_pbps(instance, truth, matching)?.mandatory_interviews(matching);
            let rest: Vec<(usize, usize)> = pairs
                .iter()
                .copied()
                .filter(|&(m, w)| !mandatory.contains(m, w))
                .collect();
            for k in 0..=rest.len() {
                let mut best: Option<InterviewSet> = None;
                for_each_combination(rest.len(), k, |picks| {
                    let mut t = mandatory.clone();
                    t.extend(picks.iter().map(|&i| rest[i]));
                    if works(&t) && best.as_ref().is_none_or(|b| t < *b) {
                        best = Some(t);
                    }
                    true
                });
                if let Some(t) = best {
                    return Ok((t.len(), t));
                }
            }
        }
    }
    unreachable!("interviewing every acceptable pair makes a truth-stable matching super-stable")
}

/// Fewest interviews after which some matching is super-stable.
pub fn oracle_min_icr(
    instance: &Instance,
    truth: &StrictProfile,
    size_cap: usize,
) -> Result<(usize, InterviewSet, Matching)> {
    truth.check_refines(instance)?;
    let pairs = instance.acceptable_pairs();
    check_cap("acceptable pairs", pairs.len(), size_cap)?;
    for k in 0..=pairs.len() {
        let mut found = None;
        for_each_combination(pairs.len(), k, |picks| {
            let t = subset(&pairs, picks);
            let refined = apply_unchecked(instance, truth, &t);
            match super_stable_search(&refined) {
                Some(mu) => {
                    found = Some((t, mu));
                    false
                }
                None => true,
            }
        });
        if let Some((t, mu)) = found {
            return Ok((k, t, mu));
        }
    }
    unreachable!("the fully interviewed instance admits a stable matching")
}

/// A super-stable matching of `instance` if one exists: the least one in
/// the order where each man in turn prefers being unmatched, then women by index.
pub fn exists_super_stable(instance: &Instance, size_cap: usize) -> Result<Option<Matching>> {
    check_cap("agents per side", instance.n_men().max(instance.n_women()), size_cap)?;
    Ok(super_stable_search(instance))
}

struct SuperSearch<'a> {
    instance: &'a Instance,
    options: Vec<Vec<usize>>,
    current: Matching,
    pairs: Vec<(usize, usize)>,
}

impl SuperSearch<'_> {
    fn blocks(&self, m: usize, w: usize) -> bool {
        !self.current.contains(m, w)
            && self.instance.is_acceptable(m, w)
            && classify_pair(self.instance, &self.current, m, w).is_some_and(|bp| bp.satisfies(BlockingLevel::VeryWeak))
    }

    /// Pairs whose verdict became final once man `m` was placed.
    fn newly_decided_ok(&self, m: usize) -> bool {
        let n_women = self.instance.n_women();
        // Man m against every already-matched woman.
        for w in 0..n_women {
            if self.current.husband(w).is_some() && self.blocks(m, w) {
                return false;
            }
        }
        // Earlier men against m's new partner.
        if let Some(w) = self.current.wife(m) {
            for i in 0..m {
                if self.blocks(i, w) {
                    return false;
                }
            }
        }
        true
    }

    fn leaf_ok(&self) -> bool {
        for w in 0..self.instance.n_women() {
            if self.current.husband(w).is_none() {
                for m in 0..self.instance.n_men() {
                    if self.blocks(m, w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn rebuild(&mut self) {
        self.current = Matching::from_pairs(
            self.instance.n_men(),
            self.instance.n_women(),
            self.pairs.iter().copied(),
        )
        .expect("search keeps matchings one-to-one");
    }

    fn run(&mut self, m: usize) -> bool {
        if m == self.options.len() {
            return self.leaf_ok();
        }
        // Unmatched first, then women by index.
        let choices: Vec<Option<usize>> = std::iter::once(None)
            .chain(self.options[m].iter().copied().map(Some))
            .collect();
        for choice in choices {
            if let Some(w) = choice {
                if self.current.husband(w).is_some() {
                    continue;
                }
                self.pairs.push((m, w));
            }
            self.rebuild();
            if self.newly_decided_ok(m) && self.run(m + 1) {
                return true;
            }
            if choice.is_some() {
                self.pairs.pop();
            }
            self.rebuild();
        }
        false
    }
}

pub(crate) fn super_stable_search(instance: &Instance) -> Option<Matching> {
    let options = (0..instance.n_men())
        .map(|m| {
            instance.men()[m]
                .acceptable()
                .iter()
                .copied()
                .filter(|&w| instance.is_acceptable(m, w))
                .collect()
        })
        .collect();
    let mut search = SuperSearch {
        instance,
        options,
        current: Matching::empty(instance.n_men(), instance.n_women()),
        pairs: Vec::new(),
    };
    search.run(0).then(|| search.current.clone())
}

/// Minimum vertex cover by trying vertex subsets in increasing size; the
/// lexicographically least one is returned.
pub fn brute_force_vc<G: CoverGraph + ?Sized>(graph: &G, size_cap: usize) -> Result<Vec<usize>> {
    let n = graph.vertex_count();
    check_cap("vertices", n, size_cap)?;
    let edges = graph.edge_list();
    for k in 0..=n {
        let mut found = None;
        for_each_combination(n, k, |picks| {
            if edges.iter().all(|(u, v)| picks.contains(u) || picks.contains(v)) {
                found = Some(picks.to_vec());
                false
            } else {
                true
            }
        });
        if let Some(c) = found {
            return Ok(c);
        }
    }
    unreachable!("all vertices form a cover")
}
