//! Interview semantics: applying interviews, recognizing which refinements
//! interviews can reach, and recovering the cheapest interview set behind one.

use std::collections::BTreeSet;

use crate::error::{IcrError, Result};
use crate::model::{first_lost_edge, AgentRef, Instance, InterviewSet, Side, StrictProfile};

/// Refines `instance` by the outcome of `interviews` under the true preferences.
///
/// Every agent who interviewed at least two candidates learns the true order
/// among them; everything else stays as it was. The result is a refined
/// (non-base) knowledge state.
pub fn apply_interviews(
    instance: &Instance,
    truth: &StrictProfile,
    interviews: &InterviewSet,
) -> Result<Instance> {
    truth.check_refines(instance)?;
    interviews.check_against(instance)?;
    Ok(apply_unchecked(instance, truth, interviews))
}

/// [`apply_interviews`] without the consistency checks, for hot loops.
pub(crate) fn apply_unchecked(
    instance: &Instance,
    truth: &StrictProfile,
    interviews: &InterviewSet,
) -> Instance {
    let mut met_by_man: Vec<Vec<usize>> = vec![Vec::new(); instance.n_men()];
    let mut met_by_woman: Vec<Vec<usize>> = vec![Vec::new(); instance.n_women()];
    for (m, w) in interviews.iter() {
        met_by_man[m].push(w);
        met_by_woman[w].push(m);
    }
    let mut refined = instance.clone().into_refined();
    let sides = [(Side::Man, met_by_man), (Side::Woman, met_by_woman)];
    for (side, met) in sides {
        for (index, seen) in met.into_iter().enumerate() {
            if seen.len() < 2 {
                continue;
            }
            let agent = AgentRef { side, index };
            let rel = refined.relation_mut(agent);
            for (i, &c1) in seen.iter().enumerate() {
                for &c2 in &seen[i + 1..] {
                    if truth.prefers(agent, c1, c2) {
                        rel.insert_edge(c1, c2);
                    } else {
                        rel.insert_edge(c2, c1);
                    }
                }
            }
        }
    }
    refined
}

/// Why a refinement cannot be produced by interviews.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Incompatibility {
    /// Two candidates `agent` must have interviewed are still incomparable.
    NotAClique {
        agent: AgentRef,
        first: AgentRef,
        second: AgentRef,
    },
    /// The refined relation of `agent` has no linear extension.
    Cyclic { agent: AgentRef },
}

impl std::fmt::Display for Incompatibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Incompatibility::NotAClique { agent, first, second } => write!(
                f,
                "{agent} must have interviewed {first} and {second} but cannot compare them"
            ),
            Incompatibility::Cyclic { agent } => {
                write!(f, "{agent} holds cyclic preferences")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityWitness {
    pub compatible: bool,
    /// Per agent, the endpoints of comparisons that are new in the refinement.
    pub endpoints: Vec<(AgentRef, BTreeSet<usize>)>,
    /// Per agent, every candidate it must have interviewed: its own endpoints
    /// plus candidates whose new comparisons involve it.
    pub interviewed: Vec<(AgentRef, BTreeSet<usize>)>,
    pub offending: Option<Incompatibility>,
}

impl CompatibilityWitness {
    pub fn endpoints_of(&self, agent: AgentRef) -> &BTreeSet<usize> {
        &self
            .endpoints
            .iter()
            .find(|(a, _)| *a == agent)
            .expect("agent not in witness")
            .1
    }
}

fn new_edge_endpoints(base: &Instance, refined: &Instance, agent: AgentRef) -> BTreeSet<usize> {
    let before = base.relation(agent);
    refined
        .relation(agent)
        .edges()
        .iter()
        .filter(|&&(b, w)| !before.prefers(b, w))
        .flat_map(|&(b, w)| [b, w])
        .collect()
}

/// The interview pairs forced by new comparisons: an agent that newly compares
/// two candidates must have interviewed both.
fn forced_pairs(base: &Instance, refined: &Instance) -> (Vec<(AgentRef, BTreeSet<usize>)>, InterviewSet) {
    let mut endpoints = Vec::new();
    let mut forced = InterviewSet::new();
    for agent in base.agents() {
        let s = new_edge_endpoints(base, refined, agent);
        for &c in &s {
            match agent.side {
                Side::Man => forced.insert(agent.index, c),
                Side::Woman => forced.insert(c, agent.index),
            };
        }
        endpoints.push((agent, s));
    }
    (endpoints, forced)
}

/// Decides whether some interview set turns `base` into `refined`.
///
/// Beyond the per-agent endpoint clique test, the check also follows every
/// forced interview to the other participant: whoever took part in two or
/// more forced interviews must end up comparing all of those candidates too.
pub fn recognize_interview_compatible(
    base: &Instance,
    refined: &Instance,
) -> Result<CompatibilityWitness> {
    base.same_shape(refined)?;
    if let Some((agent, better, worse)) = first_lost_edge(base, refined) {
        return Err(IcrError::NotARefinement {
            agent,
            better: agent.candidate(better),
            worse: agent.candidate(worse),
        });
    }
    let (endpoints, forced) = forced_pairs(base, refined);
    let interviewed: Vec<_> = base
        .agents()
        .map(|a| (a, forced.partners_of(a)))
        .collect();

    let mut offending = None;
    'agents: for (agent, seen) in &interviewed {
        let rel = refined.relation(*agent);
        if seen.len() >= 2 {
            let seen: Vec<usize> = seen.iter().copied().collect();
            for (i, &c1) in seen.iter().enumerate() {
                for &c2 in &seen[i + 1..] {
                    if !rel.comparable(c1, c2) {
                        offending = Some(Incompatibility::NotAClique {
                            agent: *agent,
                            first: agent.candidate(c1),
                            second: agent.candidate(c2),
                        });
                        break 'agents;
                    }
                }
            }
        }
        if !rel.is_acyclic() {
            offending = Some(Incompatibility::Cyclic { agent: *agent });
            break;
        }
    }
    Ok(CompatibilityWitness {
        compatible: offending.is_none(),
        endpoints,
        interviewed,
        offending,
    })
}

/// The minimum interview set reaching `refined` from `base`, and its size.
pub fn interview_cost(base: &Instance, refined: &Instance) -> Result<(usize, InterviewSet)> {
    let witness = recognize_interview_compatible(base, refined)?;
    if let Some(why) = witness.offending {
        return Err(IcrError::NotInterviewCompatible(why.to_string()));
    }
    let (_, forced) = forced_pairs(base, refined);
    Ok((forced.len(), forced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::PreferenceRelation;

    fn set(pairs: &[(usize, usize)]) -> InterviewSet {
        pairs.iter().copied().collect()
    }

    #[test]
    fn fig1_single_agent_learns() {
        let f = fixtures::fig1();
        let out = apply_interviews(&f.instance, &f.truth, &set(&[(1, 0), (1, 1)])).unwrap();
        assert_eq!(out.relation(AgentRef::man(1)).edges().iter().copied().collect::<Vec<_>>(), vec![(1, 0)]);
        assert!(out.relation(AgentRef::woman(0)).edges().is_empty());
        assert!(out.relation(AgentRef::woman(1)).edges().is_empty());
        assert!(out.relation(AgentRef::man(0)).edges().is_empty());
    }

    #[test]
    fn empty_interview_set_changes_nothing() {
        let f = fixtures::fig1();
        let out = apply_interviews(&f.instance, &f.truth, &InterviewSet::new()).unwrap();
        assert_eq!(out.men(), f.instance.men());
        assert_eq!(out.women(), f.instance.women());
    }

    #[test]
    fn full_interviews_reveal_the_truth() {
        let f = fixtures::tt2();
        let all: InterviewSet = f.instance.acceptable_pairs().into_iter().collect();
        let out = apply_interviews(&f.instance, &f.truth, &all).unwrap();
        let strict = f.truth.to_instance();
        assert_eq!(out.men(), strict.men());
        assert_eq!(out.women(), strict.women());
    }

    #[test]
    fn unacceptable_interview_is_rejected() {
        let f = fixtures::tri();
        // m1 does not find w3 acceptable in the triangle construction.
        let err = apply_interviews(&f.instance, &f.truth, &set(&[(0, 2)])).unwrap_err();
        assert!(matches!(err, IcrError::UnacceptablePair { .. }));
    }

    #[test]
    fn inconsistent_truth_is_rejected() {
        let f = fixtures::fig1();
        let wrong = fixtures::tt2().truth;
        let mut men = f.instance.men().to_vec();
        men[0] = PreferenceRelation::new([0, 1], [(1, 0)]);
        let known = Instance::new(men, f.instance.women().to_vec()).unwrap();
        let err = apply_interviews(&known, &wrong, &InterviewSet::new()).unwrap_err();
        assert!(matches!(err, IcrError::TruthInconsistent(_)));
    }

    #[test]
    fn unreachable_partial_ranking() {
        // One man, three women, all incomparable; refined: w1 above w2 and w3 only.
        let women = vec![PreferenceRelation::incomparable([0]); 3];
        let base = Instance::new(vec![PreferenceRelation::incomparable([0, 1, 2])], women.clone()).unwrap();
        let refined = Instance::from_parts_unchecked(
            vec![PreferenceRelation::new([0, 1, 2], [(0, 1), (0, 2)])],
            women,
            false,
        );
        let w = recognize_interview_compatible(&base, &refined).unwrap();
        assert!(!w.compatible);
        assert_eq!(
            w.offending,
            Some(Incompatibility::NotAClique {
                agent: AgentRef::man(0),
                first: AgentRef::woman(1),
                second: AgentRef::woman(2),
            })
        );
        assert!(matches!(
            interview_cost(&base, &refined),
            Err(IcrError::NotInterviewCompatible(_))
        ));
    }

    #[test]
    fn identity_is_compatible_and_free() {
        let f = fixtures::fig1();
        let w = recognize_interview_compatible(&f.instance, &f.instance).unwrap();
        assert!(w.compatible);
        assert!(w.endpoints.iter().all(|(_, s)| s.is_empty()));
        assert_eq!(interview_cost(&f.instance, &f.instance).unwrap(), (0, InterviewSet::new()));
    }

    #[test]
    fn lost_edge_is_not_a_refinement() {
        let f = fixtures::fig1();
        let refined = apply_interviews(&f.instance, &f.truth, &set(&[(1, 0), (1, 1)])).unwrap();
        assert!(matches!(
            recognize_interview_compatible(&refined, &f.instance),
            Err(IcrError::NotARefinement { .. })
        ));
    }

    #[test]
    fn tt2_round_trip() {
        let f = fixtures::tt2();
        let t = set(&[(0, 0), (0, 1)]);
        let refined = apply_interviews(&f.instance, &f.truth, &t).unwrap();
        let w = recognize_interview_compatible(&f.instance, &refined).unwrap();
        assert!(w.compatible);
        assert_eq!(w.endpoints_of(AgentRef::man(0)).iter().copied().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(interview_cost(&f.instance, &refined).unwrap(), (2, t));
    }

    #[test]
    fn fig1_three_interviews_cost_three() {
        let f = fixtures::fig1();
        let t = set(&[(1, 0), (1, 1), (0, 1)]);
        let refined = apply_interviews(&f.instance, &f.truth, &t).unwrap();
        assert!(refined.relation(AgentRef::woman(1)).prefers(1, 0));
        assert!(refined.relation(AgentRef::man(1)).prefers(1, 0));
        assert_eq!(interview_cost(&f.instance, &refined).unwrap(), (3, t));
    }

    #[test]
    fn partner_side_must_also_compare() {
        // m1 and m2 both learn w1 > w2, which forces w1 to have met both men,
        // yet w1 is left unable to compare them.
        let base = fixtures::tt2().instance;
        let mut men = base.men().to_vec();
        men[0] = PreferenceRelation::new([0, 1], [(0, 1)]);
        men[1] = PreferenceRelation::new([0, 1], [(0, 1)]);
        let refined = Instance::from_parts_unchecked(men, base.women().to_vec(), false);
        let w = recognize_interview_compatible(&base, &refined).unwrap();
        assert!(!w.compatible);
        assert!(matches!(
            w.offending,
            Some(Incompatibility::NotAClique { agent, .. }) if agent.side == Side::Woman
        ));
    }
}
