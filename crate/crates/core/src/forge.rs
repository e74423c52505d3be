//! Instance generation: the vertex-cover constructions, degree-bounded edge
//! orientation and seeded random market families.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{IcrError, Result};
use crate::model::{Instance, Matching, PreferenceRelation, StrictProfile};
use crate::vc::CoverGraph;

/// Undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    /// Edges are stored with the smaller endpoint first. Self-loops, repeated
    /// edges and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(IcrError::InvalidInstance(format!(
                    "edge {}-{} leaves the vertex range 1..={n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(IcrError::InvalidInstance(format!("self-loop at vertex {}", u + 1)));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(IcrError::InvalidInstance(format!("repeated edge {}-{}", u + 1, v + 1)));
            }
        }
        Ok(SimpleGraph { n, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbours(&self, v: usize) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn check_degree(&self, cap: usize) -> Result<()> {
        for v in 0..self.n {
            let degree = self.degree(v);
            if degree > cap {
                return Err(IcrError::DegreeTooHigh { vertex: v + 1, degree });
            }
        }
        Ok(())
    }
}

impl CoverGraph for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().collect()
    }
}

/// Directed graph produced by orienting every edge of a [`SimpleGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl OrientedGraph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.arcs.contains(&(from, to))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.0 == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.1 == v).count()
    }

    pub fn out_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().filter(move |a| a.0 == v).map(|a| a.1)
    }

    pub fn in_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().filter(move |a| a.1 == v).map(|a| a.0)
    }

    /// Whether this orients every edge of `graph` exactly once and nothing else.
    pub fn orients(&self, graph: &SimpleGraph) -> bool {
        self.n == graph.vertex_count()
            && self.arcs.len() == graph.edge_count()
            && self.arcs.iter().all(|&(u, v)| graph.has_edge(u, v) && !self.arcs.contains(&(v, u)))
    }
}

/// Orients each edge so that every vertex has in- and out-degree at most 2.
///
/// Odd-degree vertices are joined to an extra vertex, which makes every
/// degree even; walking closed trails greedily and orienting along the walk
/// then balances in- and out-degree everywhere.
pub fn orient_bounded_degree(graph: &SimpleGraph) -> Result<OrientedGraph> {
    graph.check_degree(3)?;
    let n = graph.vertex_count();
    let hub = n;
    let mut ends: Vec<(usize, usize)> = graph.edges().collect();
    let real = ends.len();
    for v in 0..n {
        if graph.degree(v) % 2 == 1 {
            ends.push((v, hub));
        }
    }
    let mut incident = vec![Vec::new(); n + 1];
    for (id, &(u, v)) in ends.iter().enumerate() {
        incident[u].push(id);
        incident[v].push(id);
    }
    let mut used = vec![false; ends.len()];
    let mut next = vec![0; n + 1];
    let mut arcs = BTreeSet::new();
    for start in 0..=n {
        let mut at = start;
        loop {
            while next[at] < incident[at].len() && used[incident[at][next[at]]] {
                next[at] += 1;
            }
            let Some(&id) = incident[at].get(next[at]) else { break };
            used[id] = true;
            let (u, v) = ends[id];
            let to = if u == at { v } else { u };
            if id < real {
                arcs.insert((at, to));
            }
            at = to;
        }
    }
    Ok(OrientedGraph { n, arcs })
}

/// A market built from a graph, with the intended truth and matching.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub instance: Instance,
    pub truth: StrictProfile,
    pub matching: Matching,
    /// Interviews charged on top of the vertex-cover budget.
    pub offset: usize,
}

impl Reduction {
    /// Interview budget that corresponds to a vertex cover of size `k`.
    pub fn cost_map(&self, k: usize) -> usize {
        k + self.offset
    }
}

fn own_first(i: usize, rest: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut list = vec![i];
    list.extend(rest.into_iter().filter(|&j| j != i));
    list
}

/// Vertex cover in graphs of maximum degree 3 as an interview problem with
/// ties of size at most 3.
///
/// Man `i` finds woman `i` and the women at the heads of his vertex's
/// outgoing arcs acceptable, all in one tie; woman `i` likewise accepts man
/// `i` and the tails of incoming arcs. Everyone truly ranks their own index
/// first and the rest by index; the intended matching is the identity.
pub fn vc3_to_smti(graph: &SimpleGraph) -> Result<Reduction> {
    let oriented = orient_bounded_degree(graph)?;
    let n = graph.vertex_count();
    let men_lists: Vec<Vec<usize>> = (0..n)
        .map(|i| own_first(i, oriented.out_neighbours(i).collect::<BTreeSet<_>>()))
        .collect();
    let women_lists: Vec<Vec<usize>> = (0..n)
        .map(|i| own_first(i, oriented.in_neighbours(i).collect::<BTreeSet<_>>()))
        .collect();
    let tie = |list: &Vec<usize>| PreferenceRelation::incomparable(list.iter().copied());
    let instance = Instance::new(men_lists.iter().map(tie).collect(), women_lists.iter().map(tie).collect())?;
    let truth = StrictProfile::new(men_lists, women_lists)?;
    Ok(Reduction {
        instance,
        truth,
        matching: Matching::identity(n),
        offset: graph.edge_count(),
    })
}

/// Vertex cover as an interview problem with complete lists.
///
/// Men are indifferent between all women. Woman `i` has a top class of man
/// `i` and the men of neighbouring vertices, then everybody else. True
/// orders put the own index first, then the rest of the same class by index.
pub fn vc3_to_smt(graph: &SimpleGraph) -> Reduction {
    let n = graph.vertex_count();
    let men = vec![PreferenceRelation::incomparable(0..n); n];
    let mut women = Vec::with_capacity(n);
    let mut women_lists = Vec::with_capacity(n);
    for i in 0..n {
        let top: BTreeSet<usize> = graph.neighbours(i).into_iter().chain([i]).collect();
        let second: Vec<usize> = (0..n).filter(|j| !top.contains(j)).collect();
        women.push(PreferenceRelation::from_classes([top.iter().copied().collect::<Vec<_>>(), second.clone()]));
        let mut list = own_first(i, top);
        list.extend(second);
        women_lists.push(list);
    }
    let men_lists = (0..n).map(|i| own_first(i, 0..n)).collect();
    Reduction {
        instance: Instance::new(men, women).expect("complete lists with two classes are valid"),
        truth: StrictProfile::new(men_lists, women_lists).expect("each list is a permutation"),
        matching: Matching::identity(n),
        offset: 2 * graph.edge_count(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Both sides share one tier partition; strict across tiers, tied within.
    Tiered,
    /// Random acceptability and random ties of bounded size.
    RandomSmti,
    /// Every man holds the same tie classes, and so does every woman.
    MasterTies,
    /// Women strictly ordered, men with random ties.
    OneSideStrict,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Tiered, Family::RandomSmti, Family::MasterTies, Family::OneSideStrict];

    pub fn name(self) -> &'static str {
        match self {
            Family::Tiered => "tiered",
            Family::RandomSmti => "random-smti",
            Family::MasterTies => "master-ties",
            Family::OneSideStrict => "one-side-strict",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = IcrError;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| IcrError::BadParams(format!("unknown family `{s}`")))
    }
}

/// Generator parameters. Families ignore the fields they do not use.
#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub n_men: usize,
    pub n_women: usize,
    /// Tier sizes for `Tiered`; fixed class sizes for `MasterTies` when non-empty.
    pub tiers: Vec<usize>,
    /// Largest tie drawn by the random families.
    pub tie_cap: usize,
    /// Probability that a pair is mutually acceptable.
    pub density: f64,
}

impl GenParams {
    pub fn square(n: usize) -> Self {
        GenParams { n_men: n, n_women: n, ..GenParams::default() }
    }

    /// Checks the parameters `family` relies on.
    pub fn validate(&self, family: Family) -> Result<()> {
        let bad = |msg: String| Err(IcrError::BadParams(msg));
        if self.tie_cap == 0 {
            return bad("tie cap must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.density) {
            return bad(format!("density {} is outside [0, 1]", self.density));
        }
        match family {
            Family::Tiered => {
                if self.n_men != self.n_women {
                    return bad("tiered markets need equal sides".into());
                }
                if self.tiers.iter().sum::<usize>() != self.n_men || self.tiers.contains(&0) {
                    return bad(format!("tiers {:?} must be positive and sum to {}", self.tiers, self.n_men));
                }
            }
            Family::MasterTies if !self.tiers.is_empty() => {
                if self.n_men != self.n_women {
                    return bad("fixed master classes need equal sides".into());
                }
                if self.tiers.iter().sum::<usize>() != self.n_men || self.tiers.contains(&0) {
                    return bad(format!("classes {:?} must be positive and sum to {}", self.tiers, self.n_men));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { n_men: 4, n_women: 4, tiers: Vec::new(), tie_cap: 2, density: 1.0 }
    }
}

impl fmt::Display for GenParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "men={} women={} tie-cap={} density={}",
            self.n_men, self.n_women, self.tie_cap, self.density
        )?;
        if !self.tiers.is_empty() {
            let tiers: Vec<String> = self.tiers.iter().map(usize::to_string).collect();
            write!(f, " tiers={}", tiers.join(","))?;
        }
        Ok(())
    }
}

/// Seeded random market from one of the families, with a truth that refines it.
pub fn generate(family: Family, params: &GenParams, seed: u64) -> Result<(Instance, StrictProfile)> {
    params.validate(family)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (men, women) = match family {
        Family::Tiered => {
            let classes = consecutive_classes(&params.tiers);
            let rel = PreferenceRelation::from_classes(classes.iter().cloned());
            (vec![rel.clone(); params.n_men], vec![rel; params.n_women])
        }
        Family::MasterTies => {
            let shared = |size: usize, other: usize, rng: &mut ChaCha8Rng| {
                let classes = if params.tiers.is_empty() {
                    random_ties((0..other).collect(), params.tie_cap, rng)
                } else {
                    consecutive_classes(&params.tiers)
                };
                vec![PreferenceRelation::from_classes(classes); size]
            };
            let men = shared(params.n_men, params.n_women, &mut rng);
            let women = shared(params.n_women, params.n_men, &mut rng);
            (men, women)
        }
        Family::RandomSmti | Family::OneSideStrict => {
            let lists = random_acceptability(params, &mut rng);
            let men = lists
                .0
                .into_iter()
                .map(|l| PreferenceRelation::from_classes(random_ties(l, params.tie_cap, &mut rng)))
                .collect();
            let women = lists
                .1
                .into_iter()
                .map(|mut l| {
                    if family == Family::OneSideStrict {
                        l.shuffle(&mut rng);
                        PreferenceRelation::strict(&l)
                    } else {
                        PreferenceRelation::from_classes(random_ties(l, params.tie_cap, &mut rng))
                    }
                })
                .collect();
            (men, women)
        }
    };
    let instance = Instance::new(men, women)?;
    let truth = random_truth(&instance, &mut rng);
    Ok((instance, truth))
}

fn consecutive_classes(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let class = (start..start + s).collect();
            start += s;
            class
        })
        .collect()
}

fn random_acceptability(params: &GenParams, rng: &mut impl Rng) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut men = vec![Vec::new(); params.n_men];
    let mut women = vec![Vec::new(); params.n_women];
    for (m, list) in men.iter_mut().enumerate() {
        for (w, wl) in women.iter_mut().enumerate() {
            if rng.gen_bool(params.density) {
                list.push(w);
                wl.push(m);
            }
        }
    }
    (men, women)
}

/// Shuffles `items` and cuts them into classes of random size `1..=cap`.
pub fn random_ties(mut items: Vec<usize>, cap: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    items.shuffle(rng);
    let mut classes = Vec::new();
    let mut rest = &items[..];
    while !rest.is_empty() {
        let size = rng.gen_range(1..=cap.min(rest.len()));
        let (head, tail) = rest.split_at(size);
        let mut class = head.to_vec();
        class.sort_unstable();
        classes.push(class);
        rest = tail;
    }
    classes
}

/// A linear extension of `rel`, built by repeatedly placing a random
/// candidate none of whose known betters is still unplaced. This is not
/// uniform over extensions.
pub fn random_linear_extension(rel: &PreferenceRelation, rng: &mut impl Rng) -> Vec<usize> {
    let mut pending: BTreeMap<usize, usize> = rel.acceptable().iter().map(|&c| (c, 0)).collect();
    for &(_, worse) in rel.edges() {
        *pending.get_mut(&worse).expect("edges stay inside the list") += 1;
    }
    let mut order = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let ready: Vec<usize> = pending.iter().filter(|e| *e.1 == 0).map(|e| *e.0).collect();
        let pick = *ready.choose(rng).expect("relation is acyclic");
        pending.remove(&pick);
        for &(better, worse) in rel.edges() {
            if better == pick {
                *pending.get_mut(&worse).expect("edges stay inside the list") -= 1;
            }
        }
        order.push(pick);
    }
    order
}

pub fn random_truth(instance: &Instance, rng: &mut impl Rng) -> StrictProfile {
    let men = instance.men().iter().map(|r| random_linear_extension(r, rng)).collect();
    let women = instance.women().iter().map(|r| random_linear_extension(r, rng)).collect();
    StrictProfile::new(men, women).expect("extensions are permutations of the lists")
}

/// Random base instance with arbitrary strict partial orders: each agent
/// keeps a random subset of the comparisons of a random order, closed under
/// transitivity.
pub fn random_smpi(n_men: usize, n_women: usize, density: f64, edge_prob: f64, rng: &mut impl Rng) -> Instance {
    let params = GenParams { n_men, n_women, density, ..GenParams::default() };
    let (men, women) = random_acceptability(&params, rng);
    let mut order = |mut list: Vec<usize>| {
        list.shuffle(rng);
        let mut edges = BTreeSet::new();
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                if rng.gen_bool(edge_prob) {
                    edges.insert((list[i], list[j]));
                }
            }
        }
        close_transitively(&list, &mut edges);
        PreferenceRelation::new(list, edges)
    };
    let men = men.into_iter().map(&mut order).collect();
    let women = women.into_iter().map(&mut order).collect();
    Instance::new(men, women).expect("random partial orders are valid")
}

fn close_transitively(items: &[usize], edges: &mut BTreeSet<(usize, usize)>) {
    for &k in items {
        for &i in items {
            for &j in items {
                if edges.contains(&(i, k)) && edges.contains(&(k, j)) {
                    edges.insert((i, j));
                }
            }
        }
    }
}

/// Random graph on `n` vertices with maximum degree at most `max_degree`,
/// built by proposing `attempts` random edges and keeping those that fit.
pub fn random_bounded_graph(n: usize, max_degree: usize, attempts: usize, rng: &mut impl Rng) -> SimpleGraph {
    let mut edges = BTreeSet::new();
    let mut degree = vec![0; n];
    if n >= 2 {
        for _ in 0..attempts {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            let key = (u.min(v), u.max(v));
            if u != v && degree[u] < max_degree && degree[v] < max_degree && edges.insert(key) {
                degree[u] += 1;
                degree[v] += 1;
            }
        }
    }
    SimpleGraph::new(n, edges).expect("edges are distinct and loop-free")
}

/// Every connected graph with `1..=max_vertices` vertices and maximum degree
/// at most `max_degree`, one per isomorphism class.
pub fn connected_graphs(max_vertices: usize, max_degree: usize) -> Vec<SimpleGraph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for mask in 0u64..(1 << slots.len()) {
            let edges: Vec<(usize, usize)> =
                slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = SimpleGraph::new(n, edges).expect("slots are distinct pairs");
            if g.max_degree() > max_degree || !g.is_connected() {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut relabeled: Vec<(usize, usize)> =
                        g.edges().map(|(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
                    relabeled.sort_unstable();
                    relabeled
                })
                .min()
                .expect("at least one permutation");
            if seen.insert(canon) {
                out.push(g);
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut current, &mut out);
    out
}

fn heap_permute(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, items, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ties::detect_tie_structure;

    #[test]
    fn graph_rejects_loops_and_repeats() {
        assert!(SimpleGraph::new(2, [(0, 0)]).is_err());
        assert!(SimpleGraph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(SimpleGraph::new(2, [(0, 2)]).is_err());
        let g = SimpleGraph::new(3, [(2, 0)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2)]);
        assert!(!g.is_connected());
    }

    #[test]
    fn triangle_becomes_directed_cycle() {
        let k3 = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let o = orient_bounded_degree(&k3).unwrap();
        assert_eq!(o.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        assert!(o.orients(&k3));
    }

    #[test]
    fn star_centre_is_balanced() {
        let star = SimpleGraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let o = orient_bounded_degree(&star).unwrap();
        assert!(o.orients(&star));
        let (i, out) = (o.in_degree(0), o.out_degree(0));
        assert!((i, out) == (2, 1) || (i, out) == (1, 2));
    }

    #[test]
    fn degree_four_is_refused() {
        let star = SimpleGraph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(matches!(
            orient_bounded_degree(&star),
            Err(IcrError::DegreeTooHigh { vertex: 1, degree: 4 })
        ));
        assert!(vc3_to_smti(&star).is_err());
    }

    #[test]
    fn smti_construction_shapes() {
        let tri = fixtures::tri();
        let total: usize = tri.instance.men().iter().map(|r| r.acceptable().len()).sum();
        assert_eq!(total, 6);
        let edge = vc3_to_smti(&SimpleGraph::new(2, [(0, 1)]).unwrap()).unwrap();
        assert_eq!(edge.cost_map(1), 2);
        let empty = vc3_to_smti(&SimpleGraph::new(3, []).unwrap()).unwrap();
        assert_eq!(empty.instance.acceptable_pairs(), vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn smt_construction_shapes() {
        let k3 = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let red = vc3_to_smt(&k3);
        assert_eq!(red.cost_map(2), 8);
        assert!(red.truth.refines(&red.instance));
        let path = SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let red = vc3_to_smt(&path);
        let report = detect_tie_structure(&red.instance);
        let first: usize = (0..3)
            .map(|w| report.get(crate::model::AgentRef::woman(w)).unwrap().classes[0].len())
            .sum();
        assert_eq!(first, 2 * 2 + 3);
        assert_eq!(red.truth.list(crate::model::AgentRef::woman(2)), &[2, 1, 0]);
    }

    #[test]
    fn generation_is_seeded() {
        let p = GenParams { tie_cap: 3, density: 0.7, ..GenParams::square(4) };
        for family in [Family::RandomSmti, Family::OneSideStrict, Family::MasterTies] {
            let a = generate(family, &p, 7).unwrap();
            let b = generate(family, &p, 7).unwrap();
            assert_eq!(a.0, b.0);
            assert_eq!(a.1, b.1);
            assert!(a.1.refines(&a.0));
        }
    }

    #[test]
    fn master_ties_with_one_class_is_mt3_shape() {
        let p = GenParams { tiers: vec![3], ..GenParams::square(3) };
        let (inst, _) = generate(Family::MasterTies, &p, 1).unwrap();
        assert_eq!(inst, fixtures::mt3().instance);
    }

    #[test]
    fn bad_params() {
        let p = GenParams { tiers: vec![2, 1], ..GenParams::square(4) };
        assert!(matches!(generate(Family::Tiered, &p, 0), Err(IcrError::BadParams(_))));
        let p = GenParams { tie_cap: 0, ..GenParams::square(2) };
        assert!(generate(Family::RandomSmti, &p, 0).is_err());
        assert!("nope".parse::<Family>().is_err());
        assert_eq!("master-ties".parse::<Family>().unwrap(), Family::MasterTies);
    }

    #[test]
    fn graph_census() {
        // Connected graphs up to isomorphism with max degree 3.
        let counts: Vec<usize> = (1..=5)
            .map(|n| connected_graphs(n, 3).iter().filter(|g| g.vertex_count() == n).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 10]);
    }
}
