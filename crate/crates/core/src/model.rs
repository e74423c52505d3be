//! Instances, knowledge states, true preferences, matchings and interview sets.
//!
//! Agents are addressed by side and a zero-based index; the text formats and
//! all `Display` output use the one-based names `m1`, `w3`, ...
//!
//! A [`PreferenceRelation`] is the literal set of strict comparisons an agent
//! currently knows. Base instances must hold genuine partial orders. Relations
//! produced by interviews are kept as explicit edge sets and are never closed
//! transitively: two candidates are comparable exactly when an edge joins them.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{IcrError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Man,
    Woman,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Man => Side::Woman,
            Side::Woman => Side::Man,
        }
    }

    pub fn prefix(self) -> char {
        match self {
            Side::Man => 'm',
            Side::Woman => 'w',
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Man => f.write_str("men"),
            Side::Woman => f.write_str("women"),
        }
    }
}

/// One agent of the market. `index` is zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentRef {
    pub side: Side,
    pub index: usize,
}

impl AgentRef {
    pub const fn man(index: usize) -> Self {
        AgentRef {
            side: Side::Man,
            index,
        }
    }

    pub const fn woman(index: usize) -> Self {
        AgentRef {
            side: Side::Woman,
            index,
        }
    }

    /// The candidate with index `index` on the other side of the market.
    pub fn candidate(self, index: usize) -> AgentRef {
        AgentRef {
            side: self.side.other(),
            index,
        }
    }
}

impl fmt::Display for AgentRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.prefix(), self.index + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    PrefersFirst,
    PrefersSecond,
    Incomparable,
}

/// What one agent knows about its acceptable candidates.
///
/// An edge `(c1, c2)` means the agent strictly prefers candidate `c1` to `c2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PreferenceRelation {
    acceptable: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl PreferenceRelation {
    pub fn new(
        acceptable: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        PreferenceRelation {
            acceptable: acceptable.into_iter().collect(),
            edges: edges.into_iter().collect(),
        }
    }

    /// Total ignorance over `acceptable`.
    pub fn incomparable(acceptable: impl IntoIterator<Item = usize>) -> Self {
        Self::new(acceptable, [])
    }

    /// A strict total order, best first.
    pub fn strict(ranked: &[usize]) -> Self {
        Self::from_classes(ranked.iter().map(|&c| vec![c]))
    }

    /// A weak order given as indifference classes, best class first.
    pub fn from_classes<I, C>(classes: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: AsRef<[usize]>,
    {
        let classes: Vec<Vec<usize>> = classes
            .into_iter()
            .map(|c| c.as_ref().to_vec())
            .collect();
        let acceptable = classes.iter().flatten().copied().collect();
        let mut edges = BTreeSet::new();
        for (i, better) in classes.iter().enumerate() {
            for worse in &classes[i + 1..] {
                for &b in better {
                    for &w in worse {
                        edges.insert((b, w));
                    }
                }
            }
        }
        PreferenceRelation { acceptable, edges }
    }

    pub fn acceptable(&self) -> &BTreeSet<usize> {
        &self.acceptable
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn accepts(&self, candidate: usize) -> bool {
        self.acceptable.contains(&candidate)
    }

    pub fn prefers(&self, c1: usize, c2: usize) -> bool {
        self.edges.contains(&(c1, c2))
    }

    pub fn comparable(&self, c1: usize, c2: usize) -> bool {
        self.prefers(c1, c2) || self.prefers(c2, c1)
    }

    /// Literal edge lookup; no closure is taken.
    pub fn compare(&self, c1: usize, c2: usize) -> Comparison {
        if self.prefers(c1, c2) {
            Comparison::PrefersFirst
        } else if self.prefers(c2, c1) {
            Comparison::PrefersSecond
        } else {
            Comparison::Incomparable
        }
    }

    /// True when every acceptable pair is comparable.
    pub fn is_total(&self) -> bool {
        let n = self.acceptable.len();
        self.edges.len() == n * n.saturating_sub(1) / 2 && self.is_acyclic()
    }

    pub fn is_transitive(&self) -> bool {
        self.first_transitivity_gap().is_none()
    }

    /// Some `(a, b, c)` with edges `a > b`, `b > c` but no `a > c`.
    pub fn first_transitivity_gap(&self) -> Option<(usize, usize, usize)> {
        for &(a, b) in &self.edges {
            for &(_, c) in self.edges.range((b, 0)..(b + 1, 0)) {
                if !self.edges.contains(&(a, c)) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm over the acceptable candidates.
        let mut indegree: std::collections::BTreeMap<usize, usize> =
            self.acceptable.iter().map(|&c| (c, 0)).collect();
        for &(_, w) in &self.edges {
            if let Some(d) = indegree.get_mut(&w) {
                *d += 1;
            }
        }
        let mut ready: Vec<usize> = indegree
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&c, _)| c)
            .collect();
        let mut seen = 0;
        while let Some(c) = ready.pop() {
            seen += 1;
            for &(_, w) in self.edges.range((c, 0)..(c + 1, 0)) {
                let d = indegree.get_mut(&w).expect("edge endpoint outside list");
                *d -= 1;
                if *d == 0 {
                    ready.push(w);
                }
            }
        }
        seen == self.acceptable.len()
    }

    pub(crate) fn insert_edge(&mut self, better: usize, worse: usize) -> bool {
        self.edges.insert((better, worse))
    }

    pub(crate) fn retain_candidates(&mut self, keep: impl Fn(usize) -> bool) {
        self.acceptable.retain(|&c| keep(c));
        self.edges.retain(|&(a, b)| keep(a) && keep(b));
    }

    /// Linear extensions in lexicographic order of their candidate sequences.
    ///
    /// Emission stops after `cap` orders, in which case `overflow` is set.
    pub fn linear_extensions(&self, cap: usize) -> LinearExtensions {
        let candidates: Vec<usize> = self.acceptable.iter().copied().collect();
        let mut out = LinearExtensions::default();
        let mut placed = vec![false; candidates.len()];
        let mut prefix = Vec::with_capacity(candidates.len());
        self.extend_orders(&candidates, &mut placed, &mut prefix, cap, &mut out);
        out
    }

    fn extend_orders(
        &self,
        candidates: &[usize],
        placed: &mut [bool],
        prefix: &mut Vec<usize>,
        cap: usize,
        out: &mut LinearExtensions,
    ) {
        if out.overflow {
            return;
        }
        if prefix.len() == candidates.len() {
            if out.orders.len() == cap {
                out.overflow = true;
            } else {
                out.orders.push(prefix.clone());
            }
            return;
        }
        for i in 0..candidates.len() {
            if placed[i] {
                continue;
            }
            let c = candidates[i];
            let blocked = candidates
                .iter()
                .zip(placed.iter())
                .any(|(&other, &done)| !done && other != c && self.prefers(other, c));
            if blocked {
                continue;
            }
            placed[i] = true;
            prefix.push(c);
            self.extend_orders(candidates, placed, prefix, cap, out);
            prefix.pop();
            placed[i] = false;
            if out.overflow {
                return;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearExtensions {
    pub orders: Vec<Vec<usize>>,
    pub overflow: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    Smpi,
    Smti,
    Smi,
    Smt,
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceKind::Smpi => "SMPI",
            InstanceKind::Smti => "SMTI",
            InstanceKind::Smi => "SMI",
            InstanceKind::Smt => "SMT",
        })
    }
}

/// A two-sided market together with every agent's current knowledge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    men: Vec<PreferenceRelation>,
    women: Vec<PreferenceRelation>,
    base: bool,
}

impl Instance {
    /// Builds a base instance, rejecting anything `validate_instance` would flag.
    pub fn new(men: Vec<PreferenceRelation>, women: Vec<PreferenceRelation>) -> Result<Self> {
        let instance = Instance {
            men,
            women,
            base: true,
        };
        let report = crate::validate_instance(&instance);
        if report.is_valid() {
            Ok(instance)
        } else {
            Err(IcrError::InvalidInstance(report.to_string()))
        }
    }

    /// Like [`Instance::new`], but first drops one-sided acceptability.
    ///
    /// Returns the instance and one warning per dropped (man, woman) pair.
    pub fn normalized(
        mut men: Vec<PreferenceRelation>,
        mut women: Vec<PreferenceRelation>,
    ) -> Result<(Self, Vec<String>)> {
        let mut warnings = Vec::new();
        let mut drop = BTreeSet::new();
        for (m, rel) in men.iter().enumerate() {
            for &w in rel.acceptable() {
                if !women.get(w).is_some_and(|r| r.accepts(m)) {
                    drop.insert((m, w));
                }
            }
        }
        for (w, rel) in women.iter().enumerate() {
            for &m in rel.acceptable() {
                if !men.get(m).is_some_and(|r| r.accepts(w)) {
                    drop.insert((m, w));
                }
            }
        }
        for &(m, w) in &drop {
            let msg = format!(
                "{} and {} are not mutually acceptable; dropping the pair",
                AgentRef::man(m),
                AgentRef::woman(w)
            );
            log::warn!("{msg}");
            warnings.push(msg);
            if let Some(rel) = men.get_mut(m) {
                rel.retain_candidates(|c| c != w);
            }
            if let Some(rel) = women.get_mut(w) {
                rel.retain_candidates(|c| c != m);
            }
        }
        Ok((Self::new(men, women)?, warnings))
    }

    /// Assembles an instance without any checking. Use `validate_instance` on
    /// the result to find out what is wrong with it.
    pub fn from_parts_unchecked(
        men: Vec<PreferenceRelation>,
        women: Vec<PreferenceRelation>,
        base: bool,
    ) -> Self {
        Instance { men, women, base }
    }

    pub fn n_men(&self) -> usize {
        self.men.len()
    }

    pub fn n_women(&self) -> usize {
        self.women.len()
    }

    pub fn count(&self, side: Side) -> usize {
        match side {
            Side::Man => self.men.len(),
            Side::Woman => self.women.len(),
        }
    }

    /// Whether relations are required to be transitive.
    pub fn is_base(&self) -> bool {
        self.base
    }

    pub(crate) fn into_refined(mut self) -> Self {
        self.base = false;
        self
    }

    pub fn men(&self) -> &[PreferenceRelation] {
        &self.men
    }

    pub fn women(&self) -> &[PreferenceRelation] {
        &self.women
    }

    pub fn relation(&self, agent: AgentRef) -> &PreferenceRelation {
        match agent.side {
            Side::Man => &self.men[agent.index],
            Side::Woman => &self.women[agent.index],
        }
    }

    pub(crate) fn relation_mut(&mut self, agent: AgentRef) -> &mut PreferenceRelation {
        match agent.side {
            Side::Man => &mut self.men[agent.index],
            Side::Woman => &mut self.women[agent.index],
        }
    }

    /// All agents, men first, each side by index.
    pub fn agents(&self) -> impl Iterator<Item = AgentRef> {
        let (n_men, n_women) = (self.n_men(), self.n_women());
        (0..n_men)
            .map(AgentRef::man)
            .chain((0..n_women).map(AgentRef::woman))
    }

    pub fn contains(&self, agent: AgentRef) -> bool {
        agent.index < self.count(agent.side)
    }

    pub fn is_acceptable(&self, man: usize, woman: usize) -> bool {
        self.men.get(man).is_some_and(|r| r.accepts(woman))
            && self.women.get(woman).is_some_and(|r| r.accepts(man))
    }

    /// Mutually acceptable (man, woman) pairs in lexicographic order.
    pub fn acceptable_pairs(&self) -> Vec<(usize, usize)> {
        self.men
            .iter()
            .enumerate()
            .flat_map(|(m, rel)| rel.acceptable().iter().map(move |&w| (m, w)))
            .filter(|&(m, w)| self.is_acceptable(m, w))
            .collect()
    }

    /// How `agent` ranks candidates `c1` and `c2` (both indices on the other side).
    pub fn compare(&self, agent: AgentRef, c1: usize, c2: usize) -> Result<Comparison> {
        let rel = self.relation(agent);
        for c in [c1, c2] {
            if !rel.accepts(c) {
                return Err(IcrError::UnacceptableCandidate {
                    agent,
                    candidate: agent.candidate(c),
                });
            }
        }
        Ok(rel.compare(c1, c2))
    }

    pub fn kind(&self) -> InstanceKind {
        crate::ties::detect_tie_structure(self).kind
    }

    pub fn total_edges(&self) -> usize {
        self.men
            .iter()
            .chain(self.women.iter())
            .map(|r| r.edges().len())
            .sum()
    }

    pub(crate) fn same_shape(&self, other: &Instance) -> Result<()> {
        if self.n_men() != other.n_men() || self.n_women() != other.n_women() {
            return Err(IcrError::ShapeMismatch(format!(
                "{}x{} vs {}x{} agents",
                self.n_men(),
                self.n_women(),
                other.n_men(),
                other.n_women()
            )));
        }
        for agent in self.agents() {
            if self.relation(agent).acceptable() != other.relation(agent).acceptable() {
                return Err(IcrError::ShapeMismatch(format!(
                    "{agent} has different acceptable candidates"
                )));
            }
        }
        Ok(())
    }
}

/// True iff every comparison of `base` survives in `candidate`.
pub fn is_refinement(base: &Instance, candidate: &Instance) -> Result<bool> {
    base.same_shape(candidate)?;
    Ok(first_lost_edge(base, candidate).is_none())
}

pub(crate) fn first_lost_edge(
    base: &Instance,
    candidate: &Instance,
) -> Option<(AgentRef, usize, usize)> {
    base.agents().find_map(|a| {
        let refined = candidate.relation(a);
        base.relation(a)
            .edges()
            .iter()
            .find(|&&(x, y)| !refined.prefers(x, y))
            .map(|&(x, y)| (a, x, y))
    })
}

/// Linear extensions of `agent`'s relation; see [`PreferenceRelation::linear_extensions`].
pub fn linear_extensions(instance: &Instance, agent: AgentRef, cap: usize) -> LinearExtensions {
    instance.relation(agent).linear_extensions(cap)
}

/// The true, strict preferences of every agent, best first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrictProfile {
    men: Vec<Vec<usize>>,
    women: Vec<Vec<usize>>,
    men_rank: Vec<Vec<Option<usize>>>,
    women_rank: Vec<Vec<Option<usize>>>,
}

impl StrictProfile {
    pub fn new(men: Vec<Vec<usize>>, women: Vec<Vec<usize>>) -> Result<Self> {
        let men_rank = rank_tables(&men, women.len(), Side::Man)?;
        let women_rank = rank_tables(&women, men.len(), Side::Woman)?;
        Ok(StrictProfile {
            men,
            women,
            men_rank,
            women_rank,
        })
    }

    pub fn n_men(&self) -> usize {
        self.men.len()
    }

    pub fn n_women(&self) -> usize {
        self.women.len()
    }

    pub fn list(&self, agent: AgentRef) -> &[usize] {
        match agent.side {
            Side::Man => &self.men[agent.index],
            Side::Woman => &self.women[agent.index],
        }
    }

    /// Zero-based rank of `candidate` for `agent`, if acceptable.
    pub fn rank(&self, agent: AgentRef, candidate: usize) -> Option<usize> {
        let table = match agent.side {
            Side::Man => &self.men_rank[agent.index],
            Side::Woman => &self.women_rank[agent.index],
        };
        table.get(candidate).copied().flatten()
    }

    pub fn prefers(&self, agent: AgentRef, c1: usize, c2: usize) -> bool {
        match (self.rank(agent, c1), self.rank(agent, c2)) {
            (Some(r1), Some(r2)) => r1 < r2,
            _ => false,
        }
    }

    /// Whether `agent` would rather have `candidate` than `partner` (None = unmatched).
    pub fn prefers_to_partner(&self, agent: AgentRef, candidate: usize, partner: Option<usize>) -> bool {
        match partner {
            None => self.rank(agent, candidate).is_some(),
            Some(p) => self.prefers(agent, candidate, p),
        }
    }

    /// Checks that these preferences cover each agent's list and respect every known edge.
    pub fn check_refines(&self, instance: &Instance) -> Result<()> {
        if self.n_men() != instance.n_men() || self.n_women() != instance.n_women() {
            return Err(IcrError::TruthInconsistent(format!(
                "profile has {}x{} agents, instance has {}x{}",
                self.n_men(),
                self.n_women(),
                instance.n_men(),
                instance.n_women()
            )));
        }
        for agent in instance.agents() {
            let rel = instance.relation(agent);
            let list = self.list(agent);
            if list.len() != rel.acceptable().len() || list.iter().any(|&c| !rel.accepts(c)) {
                return Err(IcrError::TruthInconsistent(format!(
                    "{agent} ranks a different set of candidates than it finds acceptable"
                )));
            }
            if let Some(&(b, w)) = rel.edges().iter().find(|&&(b, w)| !self.prefers(agent, b, w)) {
                return Err(IcrError::TruthInconsistent(format!(
                    "{agent} is known to prefer {} to {}, but the true order says otherwise",
                    agent.candidate(b),
                    agent.candidate(w)
                )));
            }
        }
        Ok(())
    }

    pub fn refines(&self, instance: &Instance) -> bool {
        self.check_refines(instance).is_ok()
    }

    /// The strict instance in which every agent knows its full order.
    ///
    /// One-sided acceptability in the profile is normalized away.
    pub fn to_instance(&self) -> Instance {
        let men = self.men.iter().map(|l| PreferenceRelation::strict(l)).collect();
        let women = self
            .women
            .iter()
            .map(|l| PreferenceRelation::strict(l))
            .collect();
        Instance::normalized(men, women)
            .expect("strict orders are always valid")
            .0
    }
}

fn rank_tables(lists: &[Vec<usize>], n_other: usize, side: Side) -> Result<Vec<Vec<Option<usize>>>> {
    lists
        .iter()
        .enumerate()
        .map(|(i, list)| {
            let agent = AgentRef { side, index: i };
            let mut ranks = vec![None; n_other];
            for (r, &c) in list.iter().enumerate() {
                match ranks.get_mut(c) {
                    None => {
                        return Err(IcrError::TruthInconsistent(format!(
                            "{agent} ranks {} which does not exist",
                            agent.candidate(c)
                        )))
                    }
                    Some(Some(_)) => {
                        return Err(IcrError::TruthInconsistent(format!(
                            "{agent} ranks {} twice",
                            agent.candidate(c)
                        )))
                    }
                    Some(slot) => *slot = Some(r),
                }
            }
            Ok(ranks)
        })
        .collect()
}

/// A one-to-one pairing of some men with some women.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    man_partner: Vec<Option<usize>>,
    woman_partner: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n_men: usize, n_women: usize) -> Self {
        Matching {
            man_partner: vec![None; n_men],
            woman_partner: vec![None; n_women],
        }
    }

    pub fn from_pairs(
        n_men: usize,
        n_women: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut matching = Matching::empty(n_men, n_women);
        for (m, w) in pairs {
            if m >= n_men || w >= n_women {
                return Err(IcrError::InvalidMatching(format!(
                    "pair ({}, {}) is outside the {n_men}x{n_women} market",
                    AgentRef::man(m),
                    AgentRef::woman(w)
                )));
            }
            if matching.man_partner[m].is_some() {
                return Err(IcrError::InvalidMatching(format!(
                    "{} is matched twice",
                    AgentRef::man(m)
                )));
            }
            if matching.woman_partner[w].is_some() {
                return Err(IcrError::InvalidMatching(format!(
                    "{} is matched twice",
                    AgentRef::woman(w)
                )));
            }
            matching.man_partner[m] = Some(w);
            matching.woman_partner[w] = Some(m);
        }
        Ok(matching)
    }

    /// `m_i` with `w_i` for every `i < n`.
    pub fn identity(n: usize) -> Self {
        Matching::from_pairs(n, n, (0..n).map(|i| (i, i))).expect("identity is one-to-one")
    }

    pub fn n_men(&self) -> usize {
        self.man_partner.len()
    }

    pub fn n_women(&self) -> usize {
        self.woman_partner.len()
    }

    pub fn partner(&self, agent: AgentRef) -> Option<usize> {
        match agent.side {
            Side::Man => self.man_partner.get(agent.index).copied().flatten(),
            Side::Woman => self.woman_partner.get(agent.index).copied().flatten(),
        }
    }

    pub fn wife(&self, man: usize) -> Option<usize> {
        self.man_partner[man]
    }

    pub fn husband(&self, woman: usize) -> Option<usize> {
        self.woman_partner[woman]
    }

    pub fn contains(&self, man: usize, woman: usize) -> bool {
        self.man_partner.get(man) == Some(&Some(woman))
    }

    /// Matched pairs ordered by man.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.man_partner
            .iter()
            .enumerate()
            .filter_map(|(m, w)| w.map(|w| (m, w)))
    }

    pub fn len(&self) -> usize {
        self.pairs().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks market size and that every pair is mutually acceptable.
    pub fn check_against(&self, instance: &Instance) -> Result<()> {
        if self.n_men() != instance.n_men() || self.n_women() != instance.n_women() {
            return Err(IcrError::InvalidMatching(format!(
                "matching is over {}x{} agents, instance has {}x{}",
                self.n_men(),
                self.n_women(),
                instance.n_men(),
                instance.n_women()
            )));
        }
        if let Some((m, w)) = self.pairs().find(|&(m, w)| !instance.is_acceptable(m, w)) {
            return Err(IcrError::InvalidMatching(format!(
                "{} and {} are not mutually acceptable",
                AgentRef::man(m),
                AgentRef::woman(w)
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (m, w)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", AgentRef::man(m), AgentRef::woman(w))?;
        }
        f.write_str("}")
    }
}

/// A set of (man, woman) interviews. Each pair costs one unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct InterviewSet {
    pairs: BTreeSet<(usize, usize)>,
}

impl InterviewSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, man: usize, woman: usize) -> bool {
        self.pairs.insert((man, woman))
    }

    pub fn contains(&self, man: usize, woman: usize) -> bool {
        self.pairs.contains(&(man, woman))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn is_subset(&self, other: &InterviewSet) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// Candidates `agent` has interviewed.
    pub fn partners_of(&self, agent: AgentRef) -> BTreeSet<usize> {
        self.iter()
            .filter_map(|(m, w)| match agent.side {
                Side::Man if m == agent.index => Some(w),
                Side::Woman if w == agent.index => Some(m),
                _ => None,
            })
            .collect()
    }

    pub fn check_against(&self, instance: &Instance) -> Result<()> {
        match self.iter().find(|&(m, w)| !instance.is_acceptable(m, w)) {
            Some((m, w)) => Err(IcrError::UnacceptablePair {
                man: AgentRef::man(m),
                woman: AgentRef::woman(w),
            }),
            None => Ok(()),
        }
    }
}

impl FromIterator<(usize, usize)> for InterviewSet {
    fn from_iter<T: IntoIterator<Item = (usize, usize)>>(iter: T) -> Self {
        InterviewSet {
            pairs: iter.into_iter().collect(),
        }
    }
}

impl Extend<(usize, usize)> for InterviewSet {
    fn extend<T: IntoIterator<Item = (usize, usize)>>(&mut self, iter: T) {
        self.pairs.extend(iter)
    }
}

impl fmt::Display for InterviewSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (m, w)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", AgentRef::man(m), AgentRef::woman(w))?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_incomparable(n: usize) -> Instance {
        let rel = || PreferenceRelation::incomparable(0..n);
        Instance::new(vec![rel(); n], vec![rel(); n]).unwrap()
    }

    #[test]
    fn compare_is_literal_edge_lookup() {
        let inst = all_incomparable(2);
        assert_eq!(
            inst.compare(AgentRef::man(0), 0, 1).unwrap(),
            Comparison::Incomparable
        );
        let rel = PreferenceRelation::new([0, 1], [(0, 1)]);
        assert_eq!(rel.compare(0, 1), Comparison::PrefersFirst);
        assert_eq!(rel.compare(1, 0), Comparison::PrefersSecond);
    }

    #[test]
    fn compare_rejects_unacceptable_candidates() {
        let men = vec![PreferenceRelation::incomparable([0])];
        let women = vec![PreferenceRelation::incomparable([0]), PreferenceRelation::default()];
        let inst = Instance::new(men, women).unwrap();
        let err = inst.compare(AgentRef::man(0), 0, 1).unwrap_err();
        assert!(matches!(err, IcrError::UnacceptableCandidate { .. }));
    }

    #[test]
    fn refinement_is_edge_superset() {
        let base = all_incomparable(2);
        let mut men = base.men().to_vec();
        men[0] = PreferenceRelation::new([0, 1], [(0, 1)]);
        let finer = Instance::new(men, base.women().to_vec()).unwrap();
        assert!(is_refinement(&base, &base).unwrap());
        assert!(is_refinement(&base, &finer).unwrap());
        assert!(!is_refinement(&finer, &base).unwrap());
    }

    #[test]
    fn refinement_requires_same_shape() {
        let a = all_incomparable(2);
        let b = all_incomparable(3);
        assert!(matches!(
            is_refinement(&a, &b),
            Err(IcrError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn linear_extension_counts() {
        assert_eq!(PreferenceRelation::incomparable([0, 1]).linear_extensions(100).orders.len(), 2);
        assert_eq!(PreferenceRelation::strict(&[2, 0, 1]).linear_extensions(100).orders, vec![vec![2, 0, 1]]);
        let tie3 = PreferenceRelation::incomparable([0, 1, 2]).linear_extensions(100);
        assert_eq!(tie3.orders.len(), 6);
        assert_eq!(tie3.orders[0], vec![0, 1, 2]);
        assert_eq!(tie3.orders[5], vec![2, 1, 0]);
        assert!(!tie3.overflow);
    }

    #[test]
    fn linear_extensions_flag_overflow() {
        let ext = PreferenceRelation::incomparable([0, 1, 2]).linear_extensions(4);
        assert_eq!(ext.orders.len(), 4);
        assert!(ext.overflow);
    }

    #[test]
    fn matching_rejects_double_assignment() {
        assert!(Matching::from_pairs(2, 2, [(0, 0), (1, 0)]).is_err());
        assert!(Matching::from_pairs(2, 2, [(0, 0), (0, 1)]).is_err());
        assert!(Matching::from_pairs(2, 2, [(0, 2)]).is_err());
    }

    #[test]
    fn profile_refinement_check() {
        let base = all_incomparable(2);
        let truth = StrictProfile::new(vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert!(truth.refines(&base));
        let mut men = base.men().to_vec();
        men[0] = PreferenceRelation::new([0, 1], [(1, 0)]);
        let known = Instance::new(men, base.women().to_vec()).unwrap();
        assert!(matches!(
            truth.check_refines(&known),
            Err(IcrError::TruthInconsistent(_))
        ));
    }

    #[test]
    fn normalization_drops_one_sided_pairs() {
        let men = vec![PreferenceRelation::new([0, 1], [(0, 1)])];
        let women = vec![PreferenceRelation::incomparable([0]), PreferenceRelation::default()];
        let (inst, warnings) = Instance::normalized(men, women).unwrap();
        assert_eq!(warnings.len(), 1);
        assert_eq!(inst.acceptable_pairs(), vec![(0, 0)]);
        assert!(inst.men()[0].edges().is_empty());
    }
}
