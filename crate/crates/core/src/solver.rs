//! Minimum interview sets. For a fixed target matching the optimum is every
//! potential blocking pair, every mandatory partner interview, and one
//! partner interview per vertex of a minimum cover of the reduction graph.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{IcrError, Result};
use crate::format::{parse_interviews, parse_refined_instance, write_instance, write_interviews, InstanceFormat};
use crate::model::{Instance, InterviewSet, Matching, StrictProfile};
use crate::pbp::{build_reduction_graph, check_reduction_invariants, classify_pbps, PbpReport, ReductionGraph};
use crate::refine::apply_unchecked;
use crate::stability::{enumerate_stable_matchings, is_stable_unchecked, StabilityLevel};
use crate::ties::detect_tie_structure;
use crate::vc::{min_vertex_cover, VcMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    /// One side holds total orders, so the reduction graph is empty.
    OneSideStrict,
    /// Every tie has at most two members; the graph is paths and cycles.
    TiesAtMost2,
    /// All men share one tie structure and all women share one; the graph is
    /// a union of cliques.
    MasterTies,
    GeneralExactVC,
}

impl Structure {
    pub fn name(self) -> &'static str {
        match self {
            Structure::OneSideStrict => "OneSideStrict",
            Structure::TiesAtMost2 => "TiesAtMost2",
            Structure::MasterTies => "MasterTies",
            Structure::GeneralExactVC => "GeneralExactVC",
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Structure {
    type Err = IcrError;

    fn from_str(s: &str) -> Result<Self> {
        [
            Structure::OneSideStrict,
            Structure::TiesAtMost2,
            Structure::MasterTies,
            Structure::GeneralExactVC,
        ]
        .into_iter()
        .find(|x| x.name() == s)
        .ok_or_else(|| IcrError::parse(0, format!("unknown structure `{s}`")))
    }
}

/// Which shortcut the instance qualifies for.
pub fn detect_structure(instance: &Instance) -> Structure {
    if instance.men().iter().all(|r| r.is_total()) || instance.women().iter().all(|r| r.is_total()) {
        return Structure::OneSideStrict;
    }
    let report = detect_tie_structure(instance);
    if report.max_tie_size().is_some_and(|s| s <= 2) {
        return Structure::TiesAtMost2;
    }
    let shared = |rels: &[crate::model::PreferenceRelation]| rels.windows(2).all(|p| p[0] == p[1]);
    if report.all_tied() && shared(instance.men()) && shared(instance.women()) {
        return Structure::MasterTies;
    }
    Structure::GeneralExactVC
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Breakdown {
    pub pbp: usize,
    pub m_prime: usize,
    pub vc: usize,
}

impl Breakdown {
    pub fn total(&self) -> usize {
        self.pbp + self.m_prime + self.vc
    }
}

impl fmt::Display for Breakdown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.pbp, self.m_prime, self.vc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IcrSolution {
    pub cost: usize,
    pub interviews: InterviewSet,
    pub refined: Instance,
    pub breakdown: Breakdown,
    pub structure_used: Structure,
}

/// Everything computed on the way to a solution, for reporting.
#[derive(Debug, Clone)]
pub struct SolveTrace {
    pub report: PbpReport,
    pub graph: ReductionGraph,
    /// Matched pairs chosen by the vertex cover.
    pub cover: Vec<(usize, usize)>,
}

/// Cheapest interview set that makes `matching` super-stable.
///
/// `truth` must refine `instance` and `matching` must be stable under it.
pub fn solve_icr_exact(instance: &Instance, truth: &StrictProfile, matching: &Matching) -> Result<IcrSolution> {
    solve_icr_traced(instance, truth, matching, VcMode::AutoStructured).map(|(s, _)| s)
}

pub fn solve_icr_traced(
    instance: &Instance,
    truth: &StrictProfile,
    matching: &Matching,
    vc_mode: VcMode,
) -> Result<(IcrSolution, SolveTrace)> {
    let report = classify_pbps(instance, truth, matching)?;
    let graph = build_reduction_graph(&report, matching);
    check_reduction_invariants(&report, &graph, matching)?;
    let cover: Vec<(usize, usize)> = min_vertex_cover(&graph, vc_mode)
        .into_iter()
        .map(|v| graph.vertices[v])
        .collect();

    let mut interviews = report.mandatory_interviews(matching);
    interviews.extend(cover.iter().copied());
    let breakdown = Breakdown {
        pbp: report.all_pbps.len(),
        m_prime: report.m_prime.len(),
        vc: cover.len(),
    };
    if interviews.len() != breakdown.total() {
        return Err(IcrError::InternalAssumptionViolated(format!(
            "interview set has {} pairs but the breakdown sums to {}",
            interviews.len(),
            breakdown.total()
        )));
    }
    let refined = apply_unchecked(instance, truth, &interviews);
    if !is_stable_unchecked(&refined, matching, StabilityLevel::Super) {
        return Err(IcrError::InternalAssumptionViolated(format!(
            "target matching is not super-stable after interviews {interviews}"
        )));
    }
    log::debug!("solved with breakdown {breakdown}, graph {} vertices", graph.vertex_count());
    let solution = IcrSolution {
        cost: interviews.len(),
        interviews,
        refined,
        breakdown,
        structure_used: detect_structure(instance),
    };
    Ok((solution, SolveTrace { report, graph, cover }))
}

/// Cheapest interview set after which some matching is super-stable: the
/// best exact solution over every matching stable under `truth`. Ties go to
/// the first matching in enumeration order.
pub fn solve_min_icr(instance: &Instance, truth: &StrictProfile, size_cap: usize) -> Result<(IcrSolution, Matching)> {
    truth.check_refines(instance)?;
    let mut best: Option<(IcrSolution, Matching)> = None;
    for mu in enumerate_stable_matchings(truth, size_cap)? {
        let sol = solve_icr_exact(instance, truth, &mu)?;
        if best.as_ref().is_none_or(|(b, _)| sol.cost < b.cost) {
            best = Some((sol, mu));
        }
    }
    Ok(best.expect("every strict market has a stable matching"))
}

/// Interviewing every acceptable pair.
pub fn naive_cost(instance: &Instance) -> usize {
    instance.acceptable_pairs().len()
}

/// Certificate text: summary header, the interview list and the refined
/// instance, each section introduced by a bracketed line.
pub fn write_certificate(solution: &IcrSolution, naive: usize) -> Result<String> {
    let mut out = String::new();
    let b = solution.breakdown;
    writeln!(out, "cost: {}", solution.cost).unwrap();
    writeln!(out, "breakdown: {} {} {}", b.pbp, b.m_prime, b.vc).unwrap();
    writeln!(out, "structure: {}", solution.structure_used).unwrap();
    writeln!(out, "naive: {naive}").unwrap();
    out.push_str("[interviews]\n");
    out.push_str(&write_interviews(&solution.interviews));
    out.push_str("[refined]\n");
    out.push_str(&write_instance(&solution.refined, Some(InstanceFormat::Smpi))?);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub solution: IcrSolution,
    pub naive: usize,
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let find = |marker: &str| {
        text.match_indices(marker)
            .find(|(i, _)| *i == 0 || text.as_bytes()[i - 1] == b'\n')
            .map(|(i, _)| i)
            .ok_or_else(|| IcrError::parse(0, format!("certificate lacks a `{}` section", marker.trim())))
    };
    let iv = find("[interviews]\n")?;
    let rf = find("[refined]\n")?;
    if rf < iv {
        return Err(IcrError::parse(0, "`[refined]` must follow `[interviews]`"));
    }
    let line_of = |offset: usize| text[..offset].lines().count() + 1;

    let (mut cost, mut breakdown, mut structure, mut naive) = (None, None, None, None);
    for (i, line) in text[..iv].lines().enumerate() {
        let no = i + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| IcrError::parse(no, "expected `key: value`"))?;
        let num = |v: &str| v.parse::<usize>().map_err(|_| IcrError::parse(no, format!("`{v}` is not a count")));
        match key.trim() {
            "cost" => cost = Some(num(value.trim())?),
            "naive" => naive = Some(num(value.trim())?),
            "structure" => {
                structure = Some(value.trim().parse::<Structure>().map_err(|_| {
                    IcrError::parse(no, format!("unknown structure `{}`", value.trim()))
                })?)
            }
            "breakdown" => {
                let parts = value.split_whitespace().map(num).collect::<Result<Vec<_>>>()?;
                let [pbp, m_prime, vc] = parts[..] else {
                    return Err(IcrError::parse(no, "breakdown needs three counts"));
                };
                breakdown = Some(Breakdown { pbp, m_prime, vc });
            }
            other => return Err(IcrError::parse(no, format!("unknown key `{other}`"))),
        }
    }
    let missing = |what: &str| IcrError::parse(line_of(iv), format!("certificate header lacks `{what}`"));
    let shift = |e: IcrError, base: usize| match e {
        IcrError::Parse { line, message } => IcrError::Parse { line: line + base, message },
        other => other,
    };
    let interviews = parse_interviews(&text[iv + "[interviews]\n".len()..rf]).map_err(|e| shift(e, line_of(iv)))?;
    let refined = parse_refined_instance(&text[rf + "[refined]\n".len()..]).map_err(|e| shift(e, line_of(rf)))?;
    let solution = IcrSolution {
        cost: cost.ok_or_else(|| missing("cost"))?,
        interviews,
        refined,
        breakdown: breakdown.ok_or_else(|| missing("breakdown"))?,
        structure_used: structure.ok_or_else(|| missing("structure"))?,
    };
    Ok(Certificate { solution, naive: naive.ok_or_else(|| missing("naive"))? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fig1_breakdown() {
        let f = fixtures::fig1();
        let sol = solve_icr_exact(&f.instance, &f.truth, &f.matching).unwrap();
        assert_eq!(sol.cost, 3);
        assert_eq!(sol.breakdown, Breakdown { pbp: 2, m_prime: 1, vc: 0 });
        assert_eq!(sol.interviews.iter().collect::<Vec<_>>(), vec![(0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn tt2_and_mt3() {
        let t = fixtures::tt2();
        let sol = solve_icr_exact(&t.instance, &t.truth, &t.matching).unwrap();
        assert_eq!((sol.cost, sol.breakdown), (3, Breakdown { pbp: 2, m_prime: 0, vc: 1 }));
        assert_eq!(sol.structure_used, Structure::TiesAtMost2);
        let m = fixtures::mt3();
        let sol = solve_icr_exact(&m.instance, &m.truth, &m.matching).unwrap();
        assert_eq!((sol.cost, sol.breakdown), (8, Breakdown { pbp: 6, m_prime: 0, vc: 2 }));
        assert_eq!(sol.structure_used, Structure::MasterTies);
        assert_eq!(naive_cost(&m.instance), 9);
    }

    #[test]
    fn min_icr_fixtures() {
        let f = fixtures::fig1();
        let (sol, mu) = solve_min_icr(&f.instance, &f.truth, 8).unwrap();
        assert_eq!((sol.cost, mu), (3, f.matching));
        let tri = fixtures::tri();
        assert_eq!(solve_min_icr(&tri.instance, &tri.truth, 8).unwrap().0.cost, 5);
        assert_eq!(naive_cost(&tri.instance), 6);
    }

    #[test]
    fn strict_market_costs_nothing() {
        let f = fixtures::fig1();
        let strict = f.truth.to_instance();
        let sol = solve_icr_exact(&strict, &f.truth, &f.matching).unwrap();
        assert_eq!(sol.cost, 0);
        assert!(sol.interviews.is_empty());
        assert_eq!(sol.breakdown, Breakdown::default());
        assert_eq!(sol.structure_used, Structure::OneSideStrict);
    }

    #[test]
    fn certificate_round_trip() {
        let m = fixtures::mt3();
        let sol = solve_icr_exact(&m.instance, &m.truth, &m.matching).unwrap();
        let text = write_certificate(&sol, 9).unwrap();
        let back = parse_certificate(&text).unwrap();
        assert_eq!(back.solution, sol);
        assert_eq!(back.naive, 9);
        assert!(parse_certificate("cost: 1\n").is_err());
    }
}
