//! Canonical small markets used throughout the tests, the guide and the CLI.
//!
//! Each fixture is also shipped as text under `crates/core/data/`; the tests
//! check that both copies agree.

use crate::forge::{vc3_to_smti, SimpleGraph};
use crate::model::{Instance, Matching, PreferenceRelation, StrictProfile};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub instance: Instance,
    pub truth: StrictProfile,
    pub matching: Matching,
}

fn full_ties(n: usize) -> Instance {
    let rel = || PreferenceRelation::incomparable(0..n);
    Instance::new(vec![rel(); n], vec![rel(); n]).expect("full ties are valid")
}

/// Two residents, two hospitals, nobody can compare anyone.
///
/// Truth: `m1: w1 w2`, `m2: w2 w1`, `w1: m2 m1`, `w2: m2 m1`; the only stable
/// matching pairs `m1` with `w1` and `m2` with `w2`.
pub fn fig1() -> Fixture {
    Fixture {
        name: "FIG1",
        instance: full_ties(2),
        truth: StrictProfile::new(vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![1, 0]])
            .expect("valid profile"),
        matching: Matching::identity(2),
    }
}

/// 2x2, every agent holds a single tie of size two; mutual top choices.
pub fn tt2() -> Fixture {
    Fixture {
        name: "TT2",
        instance: full_ties(2),
        truth: StrictProfile::new(vec![vec![0, 1], vec![1, 0]], vec![vec![0, 1], vec![1, 0]])
            .expect("valid profile"),
        matching: Matching::identity(2),
    }
}

/// The triangle pushed through the VC-3 to SMTI construction.
pub fn tri() -> Fixture {
    let k3 = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).expect("triangle is simple");
    let red = vc3_to_smti(&k3).expect("triangle has max degree 2");
    Fixture {
        name: "TRI",
        instance: red.instance,
        truth: red.truth,
        matching: red.matching,
    }
}

/// 3x3 master tie: one full tie for everybody; `m_i` and `w_i` top each other
/// and rank the rest by index.
pub fn mt3() -> Fixture {
    let rank = |i: usize| {
        let mut list = vec![i];
        list.extend((0..3).filter(|&j| j != i));
        list
    };
    Fixture {
        name: "MT3",
        instance: full_ties(3),
        truth: StrictProfile::new((0..3).map(rank).collect(), (0..3).map(rank).collect())
            .expect("valid profile"),
        matching: Matching::identity(3),
    }
}

pub fn all() -> Vec<Fixture> {
    vec![fig1(), tt2(), tri(), mt3()]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name.eq_ignore_ascii_case(name))
}
