use std::fmt;

use crate::model::{AgentRef, Instance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    CandidateOutOfRange {
        agent: AgentRef,
        candidate: usize,
    },
    EdgeOutsideList {
        agent: AgentRef,
        better: AgentRef,
        worse: AgentRef,
    },
    Reflexive {
        agent: AgentRef,
        candidate: AgentRef,
    },
    Asymmetry {
        agent: AgentRef,
        first: AgentRef,
        second: AgentRef,
    },
    /// `a > b` and `b > c` are known but `a > c` is not.
    NonTransitive {
        agent: AgentRef,
        a: AgentRef,
        b: AgentRef,
        c: AgentRef,
    },
    NonMutual {
        man: AgentRef,
        woman: AgentRef,
    },
}

impl ValidationIssue {
    pub fn agent(&self) -> AgentRef {
        match *self {
            ValidationIssue::CandidateOutOfRange { agent, .. }
            | ValidationIssue::EdgeOutsideList { agent, .. }
            | ValidationIssue::Reflexive { agent, .. }
            | ValidationIssue::Asymmetry { agent, .. }
            | ValidationIssue::NonTransitive { agent, .. } => agent,
            ValidationIssue::NonMutual { man, .. } => man,
        }
    }
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::CandidateOutOfRange { agent, candidate } => {
                write!(f, "{agent}: candidate index {} does not exist", candidate + 1)
            }
            ValidationIssue::EdgeOutsideList { agent, better, worse } => write!(
                f,
                "{agent}: comparison {better} > {worse} involves an unacceptable candidate"
            ),
            ValidationIssue::Reflexive { agent, candidate } => {
                write!(f, "{agent}: reflexive comparison {candidate} > {candidate}")
            }
            ValidationIssue::Asymmetry { agent, first, second } => write!(
                f,
                "{agent}: asymmetry violated, both {first} > {second} and {second} > {first}"
            ),
            ValidationIssue::NonTransitive { agent, a, b, c } => write!(
                f,
                "{agent}: transitivity violated, {a} > {b} and {b} > {c} but not {a} > {c}"
            ),
            ValidationIssue::NonMutual { man, woman } => {
                write!(f, "{man} and {woman}: acceptability is not mutual")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return f.write_str("valid");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

/// Lists every violated instance invariant. Transitivity is only required of
/// base instances.
pub fn validate_instance(instance: &Instance) -> ValidationReport {
    let mut issues = Vec::new();
    for agent in instance.agents() {
        let rel = instance.relation(agent);
        let n_other = instance.count(agent.side.other());
        for &c in rel.acceptable() {
            if c >= n_other {
                issues.push(ValidationIssue::CandidateOutOfRange { agent, candidate: c });
            }
        }
        for &(b, w) in rel.edges() {
            if b == w {
                issues.push(ValidationIssue::Reflexive {
                    agent,
                    candidate: agent.candidate(b),
                });
                continue;
            }
            if !rel.accepts(b) || !rel.accepts(w) {
                issues.push(ValidationIssue::EdgeOutsideList {
                    agent,
                    better: agent.candidate(b),
                    worse: agent.candidate(w),
                });
            }
            if b < w && rel.prefers(w, b) {
                issues.push(ValidationIssue::Asymmetry {
                    agent,
                    first: agent.candidate(b),
                    second: agent.candidate(w),
                });
            }
        }
        if instance.is_base() {
            if let Some((a, b, c)) = rel.first_transitivity_gap() {
                if a != c {
                    issues.push(ValidationIssue::NonTransitive {
                        agent,
                        a: agent.candidate(a),
                        b: agent.candidate(b),
                        c: agent.candidate(c),
                    });
                }
            }
        }
    }
    for (m, rel) in instance.men().iter().enumerate() {
        for &w in rel.acceptable() {
            if w < instance.n_women() && !instance.women()[w].accepts(m) {
                issues.push(ValidationIssue::NonMutual {
                    man: AgentRef::man(m),
                    woman: AgentRef::woman(w),
                });
            }
        }
    }
    for (w, rel) in instance.women().iter().enumerate() {
        for &m in rel.acceptable() {
            if m < instance.n_men() && !instance.men()[m].accepts(w) {
                issues.push(ValidationIssue::NonMutual {
                    man: AgentRef::man(m),
                    woman: AgentRef::woman(w),
                });
            }
        }
    }
    ValidationReport { issues }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PreferenceRelation;

    fn with_man_relation(rel: PreferenceRelation, base: bool) -> Instance {
        let others = || PreferenceRelation::incomparable([0]);
        Instance::from_parts_unchecked(vec![rel], vec![others(), others(), others()], base)
    }

    #[test]
    fn fig1_is_valid() {
        assert!(validate_instance(&crate::fixtures::fig1().instance).is_valid());
    }

    #[test]
    fn asymmetry_breach_is_reported() {
        let inst = with_man_relation(PreferenceRelation::new([0, 1, 2], [(0, 1), (1, 0)]), true);
        let report = validate_instance(&inst);
        assert_eq!(report.issues.len(), 1, "{report}");
        assert!(matches!(
            report.issues[0],
            ValidationIssue::Asymmetry { agent, .. } if agent == AgentRef::man(0)
        ));
    }

    #[test]
    fn missing_transitive_edge_is_reported() {
        let inst = with_man_relation(PreferenceRelation::new([0, 1, 2], [(0, 1), (1, 2)]), true);
        let report = validate_instance(&inst);
        assert_eq!(
            report.issues,
            vec![ValidationIssue::NonTransitive {
                agent: AgentRef::man(0),
                a: AgentRef::woman(0),
                b: AgentRef::woman(1),
                c: AgentRef::woman(2),
            }]
        );
        // Refined knowledge states may be non-transitive.
        let refined = with_man_relation(PreferenceRelation::new([0, 1, 2], [(0, 1), (1, 2)]), false);
        assert!(validate_instance(&refined).is_valid());
    }

    #[test]
    fn reflexive_and_out_of_list_edges() {
        let inst = with_man_relation(PreferenceRelation::new([0, 1], [(0, 0), (1, 2)]), false);
        let report = validate_instance(&inst);
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::Reflexive { .. })));
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::EdgeOutsideList { .. })));
        // w3 lists m1 but m1 does not list w3.
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::NonMutual { woman, .. } if *woman == AgentRef::woman(2))));
    }
}
