//! Indifference-class decomposition of knowledge states.

use crate::model::{AgentRef, Instance, InstanceKind, PreferenceRelation};

/// Indifference classes of one agent, best class first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TieStructure {
    pub classes: Vec<Vec<usize>>,
}

impl TieStructure {
    pub fn max_class_size(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn to_relation(&self) -> PreferenceRelation {
        PreferenceRelation::from_classes(&self.classes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieReport {
    /// `None` for agents whose incomparability is not transitive.
    pub per_agent: Vec<(AgentRef, Option<TieStructure>)>,
    pub kind: InstanceKind,
}

impl TieReport {
    pub fn get(&self, agent: AgentRef) -> Option<&TieStructure> {
        self.per_agent
            .iter()
            .find(|(a, _)| *a == agent)
            .and_then(|(_, t)| t.as_ref())
    }

    pub fn all_tied(&self) -> bool {
        self.per_agent.iter().all(|(_, t)| t.is_some())
    }

    /// Largest indifference class, if every agent is tie-shaped.
    pub fn max_tie_size(&self) -> Option<usize> {
        self.per_agent
            .iter()
            .map(|(_, t)| t.as_ref().map(TieStructure::max_class_size))
            .try_fold(0, |acc, s| s.map(|s| acc.max(s)))
    }
}

/// Decomposes a relation into indifference classes if it is a weak order.
pub fn tie_structure_of(rel: &PreferenceRelation) -> Option<TieStructure> {
    let candidates: Vec<usize> = rel.acceptable().iter().copied().collect();
    // Group by incomparability and require it to be an equivalence.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &c in &candidates {
        let home = classes
            .iter()
            .position(|class| !rel.comparable(class[0], c));
        match home {
            Some(i) => {
                if classes[i].iter().any(|&d| rel.comparable(d, c)) {
                    return None;
                }
                classes[i].push(c);
            }
            None => classes.push(vec![c]),
        }
    }
    // Order classes by how many candidates beat their representative.
    let beaten_by = |c: usize| candidates.iter().filter(|&&d| rel.prefers(d, c)).count();
    classes.sort_by_key(|class| beaten_by(class[0]));
    let structure = TieStructure { classes };
    (structure.to_relation().edges() == rel.edges()).then_some(structure)
}

/// Per-agent tie decomposition plus the instance kind derived from it.
pub fn detect_tie_structure(instance: &Instance) -> TieReport {
    let per_agent: Vec<_> = instance
        .agents()
        .map(|a| (a, tie_structure_of(instance.relation(a))))
        .collect();
    let all_tied = per_agent.iter().all(|(_, t)| t.is_some());
    let kind = if !all_tied {
        InstanceKind::Smpi
    } else if per_agent
        .iter()
        .all(|(_, t)| t.as_ref().is_some_and(|t| t.max_class_size() <= 1))
    {
        InstanceKind::Smi
    } else if complete_lists(instance) {
        InstanceKind::Smt
    } else {
        InstanceKind::Smti
    };
    TieReport { per_agent, kind }
}

fn complete_lists(instance: &Instance) -> bool {
    instance
        .men()
        .iter()
        .all(|r| r.acceptable().len() == instance.n_women())
        && instance
            .women()
            .iter()
            .all(|r| r.acceptable().len() == instance.n_men())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn mt3_men_have_one_full_tie() {
        let report = detect_tie_structure(&fixtures::mt3().instance);
        for m in 0..3 {
            assert_eq!(
                report.get(AgentRef::man(m)).unwrap().classes,
                vec![vec![0, 1, 2]]
            );
        }
        assert_eq!(report.kind, InstanceKind::Smt);
    }

    #[test]
    fn strict_lists_give_singleton_classes() {
        let truth = fixtures::fig1().truth;
        let report = detect_tie_structure(&truth.to_instance());
        assert_eq!(report.kind, InstanceKind::Smi);
        assert_eq!(
            report.get(AgentRef::man(1)).unwrap().classes,
            vec![vec![1], vec![0]]
        );
    }

    #[test]
    fn top_then_tie() {
        let rel = PreferenceRelation::new([0, 1, 2], [(0, 1), (0, 2)]);
        assert_eq!(
            tie_structure_of(&rel).unwrap().classes,
            vec![vec![0], vec![1, 2]]
        );
    }

    #[test]
    fn non_transitive_incomparability_is_general() {
        // w1 > w2 only: w3 is incomparable with both, but w1 and w2 are comparable.
        let rel = PreferenceRelation::new([0, 1, 2], [(0, 1)]);
        assert!(tie_structure_of(&rel).is_none());
        // A cycle is never a weak order.
        let cyc = PreferenceRelation::new([0, 1, 2], [(0, 1), (1, 2), (2, 0)]);
        assert!(tie_structure_of(&cyc).is_none());
    }

    #[test]
    fn empty_list_has_no_classes() {
        let rel = PreferenceRelation::default();
        assert_eq!(tie_structure_of(&rel).unwrap().classes, Vec::<Vec<usize>>::new());
    }
}
