//! Potential blocking pairs of a target matching, the interviews they make
//! mandatory, and the reduction graph on matched pairs whose minimum vertex
//! cover prices the remaining degree-2 pairs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use crate::error::{IcrError, Result};
use crate::model::{AgentRef, Instance, InterviewSet, Matching, Side, StrictProfile};
use crate::stability::{blockers_unchecked, require_weakly_stable, BlockingLevel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PbpDegree {
    /// Exactly one member truly prefers the other to its partner.
    D1,
    /// Both members truly prefer their partners.
    D2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbpRecord {
    pub man: usize,
    pub woman: usize,
    pub degree: PbpDegree,
    /// For D1 pairs: the side that truly prefers the other member.
    pub truly_preferring_side: Option<Side>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbpReport {
    pub all_pbps: Vec<PbpRecord>,
    /// For each agent `a`: candidates `c` in a D1 pair with `a` who truly
    /// prefer `a` to their own partner. Only non-empty entries are stored.
    pub pbp1_of: BTreeMap<AgentRef, BTreeSet<usize>>,
    /// Men whose matched pair must interview.
    pub m_prime: BTreeSet<usize>,
    /// D2 pairs not already settled by a mandatory partner interview.
    pub pbp2_prime: Vec<PbpRecord>,
}

impl PbpReport {
    pub fn pbp1_count(&self) -> usize {
        self.all_pbps.iter().filter(|p| p.degree == PbpDegree::D1).count()
    }

    pub fn pbp2_count(&self) -> usize {
        self.all_pbps.iter().filter(|p| p.degree == PbpDegree::D2).count()
    }

    pub fn pbp1_of(&self, agent: AgentRef) -> BTreeSet<usize> {
        self.pbp1_of.get(&agent).cloned().unwrap_or_default()
    }

    /// Interviews every optimum contains: all PBP pairs and each M' man with
    /// his partner.
    pub fn mandatory_interviews(&self, matching: &Matching) -> InterviewSet {
        let mut set: InterviewSet = self.all_pbps.iter().map(|p| (p.man, p.woman)).collect();
        for &m in &self.m_prime {
            let w = matching.wife(m).expect("men in M' are matched");
            set.insert(m, w);
        }
        set
    }
}

impl fmt::Display for PbpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "potential blocking pairs: {} (D1: {}, D2: {})",
            self.all_pbps.len(),
            self.pbp1_count(),
            self.pbp2_count()
        )?;
        for p in &self.all_pbps {
            write!(f, "  ({}, {}) {:?}", AgentRef::man(p.man), AgentRef::woman(p.woman), p.degree)?;
            match p.truly_preferring_side {
                Some(Side::Man) => writeln!(f, ", {} truly prefers {}", AgentRef::man(p.man), AgentRef::woman(p.woman))?,
                Some(Side::Woman) => writeln!(f, ", {} truly prefers {}", AgentRef::woman(p.woman), AgentRef::man(p.man))?,
                None => writeln!(f)?,
            }
        }
        for (agent, cands) in &self.pbp1_of {
            let list: Vec<String> = cands.iter().map(|&c| agent.candidate(c).to_string()).collect();
            writeln!(f, "  PBP1({agent}) = {{{}}}", list.join(", "))?;
        }
        let mp: Vec<String> = self.m_prime.iter().map(|&m| AgentRef::man(m).to_string()).collect();
        writeln!(f, "M' = {{{}}}", mp.join(", "))?;
        let p2: Vec<String> = self
            .pbp2_prime
            .iter()
            .map(|p| format!("({}, {})", AgentRef::man(p.man), AgentRef::woman(p.woman)))
            .collect();
        writeln!(f, "PBP2' = {{{}}}", p2.join(", "))
    }
}

/// Classifies every potential blocking pair of `matching` in `instance`.
///
/// `matching` must be stable under `truth`, and `truth` must refine `instance`.
pub fn classify_pbps(instance: &Instance, truth: &StrictProfile, matching: &Matching) -> Result<PbpReport> {
    truth.check_refines(instance)?;
    matching.check_against(instance)?;
    require_weakly_stable(truth, matching)?;

    let mut all_pbps = Vec::new();
    let mut pbp1_of: BTreeMap<AgentRef, BTreeSet<usize>> = BTreeMap::new();
    for bp in blockers_unchecked(instance, matching, BlockingLevel::VeryWeak) {
        let (m, w) = (bp.man, bp.woman);
        let man_wants = truth.prefers_to_partner(AgentRef::man(m), w, matching.wife(m));
        let woman_wants = truth.prefers_to_partner(AgentRef::woman(w), m, matching.husband(w));
        let (degree, side) = match (man_wants, woman_wants) {
            (false, false) => (PbpDegree::D2, None),
            (true, false) => {
                pbp1_of.entry(AgentRef::woman(w)).or_default().insert(m);
                (PbpDegree::D1, Some(Side::Man))
            }
            (false, true) => {
                pbp1_of.entry(AgentRef::man(m)).or_default().insert(w);
                (PbpDegree::D1, Some(Side::Woman))
            }
            (true, true) => unreachable!("weak stability under the truth was checked"),
        };
        all_pbps.push(PbpRecord {
            man: m,
            woman: w,
            degree,
            truly_preferring_side: side,
        });
    }

    let m_prime: BTreeSet<usize> = matching
        .pairs()
        .filter(|&(m, w)| pbp1_of.contains_key(&AgentRef::man(m)) || pbp1_of.contains_key(&AgentRef::woman(w)))
        .map(|(m, _)| m)
        .collect();
    // The non-preferring member of a D1 pair is always matched, so every
    // agent with a PBP1 set was accounted for above.
    for agent in pbp1_of.keys() {
        if matching.partner(*agent).is_none() {
            return Err(IcrError::InternalAssumptionViolated(format!(
                "{agent} has PBP1 candidates but no partner"
            )));
        }
    }

    let pbp2_prime = all_pbps
        .iter()
        .filter(|p| p.degree == PbpDegree::D2)
        .filter(|p| {
            let husband = matching.husband(p.woman).expect("D2 members are matched");
            !m_prime.contains(&p.man) && !m_prime.contains(&husband)
        })
        .copied()
        .collect();

    Ok(PbpReport {
        all_pbps,
        pbp1_of,
        m_prime,
        pbp2_prime,
    })
}

/// Graph on matched pairs, identified by the man. Edges join the two matched
/// pairs a PBP2' member straddles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReductionGraph {
    /// Matched pairs `(m, w)` with at least one incident edge.
    pub vertices: Vec<(usize, usize)>,
    /// Edges as sorted pairs of positions into `vertices`.
    pub edges: BTreeSet<(usize, usize)>,
    /// The PBP2' members inducing each edge.
    pub provenance: BTreeMap<(usize, usize), Vec<(usize, usize)>>,
}

impl ReductionGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Machine-readable listing: one `m<i>-w<j>: m<k>-w<l> ...` line per vertex.
    pub fn adjacency_listing(&self) -> String {
        let label = |v: usize| {
            let (m, w) = self.vertices[v];
            format!("{}-{}", AgentRef::man(m), AgentRef::woman(w))
        };
        let mut out = String::new();
        for (v, nbrs) in self.adjacency().iter().enumerate() {
            let list: Vec<String> = nbrs.iter().map(|&u| label(u)).collect();
            writeln!(out, "{}: {}", label(v), list.join(" ")).unwrap();
        }
        out
    }
}

impl fmt::Display for ReductionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reduction graph: {} vertices, {} edges", self.vertex_count(), self.edge_count())?;
        for (&(a, b), why) in &self.provenance {
            let (ma, wa) = self.vertices[a];
            let (mb, wb) = self.vertices[b];
            let why: Vec<String> = why
                .iter()
                .map(|&(m, w)| format!("({}, {})", AgentRef::man(m), AgentRef::woman(w)))
                .collect();
            writeln!(
                f,
                "  {}-{} -- {}-{} via {}",
                AgentRef::man(ma),
                AgentRef::woman(wa),
                AgentRef::man(mb),
                AgentRef::woman(wb),
                why.join(", ")
            )?;
        }
        Ok(())
    }
}

/// Builds the reduction graph for a report produced on the same market.
pub fn build_reduction_graph(report: &PbpReport, matching: &Matching) -> ReductionGraph {
    let mut raw: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for p in &report.pbp2_prime {
        let a = p.man;
        let b = matching.husband(p.woman).expect("D2 members are matched");
        let key = (a.min(b), a.max(b));
        raw.entry(key).or_default().push((p.man, p.woman));
    }
    let used: BTreeSet<usize> = raw.keys().flat_map(|&(a, b)| [a, b]).collect();
    let vertices: Vec<(usize, usize)> = used
        .iter()
        .map(|&m| (m, matching.wife(m).expect("vertex men are matched")))
        .collect();
    let pos = |m: usize| vertices.iter().position(|&(x, _)| x == m).expect("vertex exists");
    let mut edges = BTreeSet::new();
    let mut provenance = BTreeMap::new();
    for ((a, b), why) in raw {
        let e = (pos(a), pos(b));
        edges.insert(e);
        provenance.insert(e, why);
    }
    ReductionGraph {
        vertices,
        edges,
        provenance,
    }
}

/// Structural facts the reduction relies on; an error names the first breach.
pub fn check_reduction_invariants(report: &PbpReport, graph: &ReductionGraph, matching: &Matching) -> Result<()> {
    if let Some(p) = report.all_pbps.iter().find(|p| matching.contains(p.man, p.woman)) {
        return Err(IcrError::InternalAssumptionViolated(format!(
            "matched pair ({}, {}) classified as potential blocking pair",
            AgentRef::man(p.man),
            AgentRef::woman(p.woman)
        )));
    }
    for &(m, _) in &graph.vertices {
        if report.m_prime.contains(&m) {
            return Err(IcrError::InternalAssumptionViolated(format!(
                "reduction graph vertex for {} whose pair is already mandatory",
                AgentRef::man(m)
            )));
        }
    }
    if let Some(v) = (0..graph.vertex_count()).find(|&v| graph.degree(v) == 0) {
        return Err(IcrError::InternalAssumptionViolated(format!(
            "isolated reduction graph vertex {v}"
        )));
    }
    if graph.edges.iter().any(|&(a, b)| a == b) {
        return Err(IcrError::InternalAssumptionViolated(
            "reduction graph has a self-loop".into(),
        ));
    }
    Ok(())
}

/// Whether `pbp` is settled in `refined`: the man now ranks his partner above
/// the woman, or she ranks hers above him. An unmatched member can never be
/// the one who settles it.
pub fn is_resolved(refined: &Instance, pbp: &PbpRecord, matching: &Matching) -> bool {
    let by_man = matching
        .wife(pbp.man)
        .is_some_and(|w0| refined.relation(AgentRef::man(pbp.man)).prefers(w0, pbp.woman));
    let by_woman = matching
        .husband(pbp.woman)
        .is_some_and(|m0| refined.relation(AgentRef::woman(pbp.woman)).prefers(m0, pbp.man));
    by_man || by_woman
}
