//! Exact minimum vertex cover.
//!
//! Components that are paths, cycles or cliques are covered by formula; the
//! rest goes to a branch-and-bound search that removes isolated vertices,
//! forces the neighbour of every degree-one vertex, solves max-degree-two
//! remainders directly and otherwise branches on a vertex of maximum degree.

use std::collections::BTreeSet;

use crate::pbp::ReductionGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VcMode {
    AutoStructured,
    ForceGeneral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentShape {
    Path,
    Cycle,
    Clique,
    General,
}

/// Anything with numbered vertices and undirected edges.
pub trait CoverGraph {
    fn vertex_count(&self) -> usize;
    fn edge_list(&self) -> Vec<(usize, usize)>;

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (u, v) in self.edge_list() {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        adj
    }
}

impl CoverGraph for ReductionGraph {
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().collect()
    }
}

/// Connected components with at least one edge, each sorted.
pub fn components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for start in 0..adj.len() {
        if seen[start] || adj[start].is_empty() {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            for &u in &adj[comp[i]] {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn component_shape(adj: &[Vec<usize>], comp: &[usize]) -> ComponentShape {
    let k = comp.len();
    let edges: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges == k * (k - 1) / 2 {
        return ComponentShape::Clique;
    }
    if comp.iter().all(|&v| adj[v].len() <= 2) {
        if edges == k {
            ComponentShape::Cycle
        } else {
            ComponentShape::Path
        }
    } else {
        ComponentShape::General
    }
}

/// An exact minimum vertex cover, sorted.
///
/// `ForceGeneral` returns the lexicographically least minimum cover.
/// `AutoStructured` covers path and cycle components by taking every other
/// vertex along a walk from their smallest vertex, and clique components by
/// all vertices but the largest; other components get the general search.
pub fn min_vertex_cover<G: CoverGraph + ?Sized>(graph: &G, mode: VcMode) -> Vec<usize> {
    let adj = graph.adjacency();
    let mut cover = Vec::new();
    for comp in components(&adj) {
        let shape = match mode {
            VcMode::AutoStructured => component_shape(&adj, &comp),
            VcMode::ForceGeneral => ComponentShape::General,
        };
        match shape {
            ComponentShape::Clique => cover.extend(&comp[..comp.len() - 1]),
            ComponentShape::Path | ComponentShape::Cycle => {
                let walk = walk_component(&adj, &comp, shape);
                let skip = usize::from(shape == ComponentShape::Path);
                cover.extend(walk.iter().skip(skip).step_by(2));
            }
            ComponentShape::General => cover.extend(lex_least_cover(&adj, &comp)),
        }
    }
    cover.sort_unstable();
    cover
}

/// Vertex order along a path (from its smaller endpoint) or a cycle (from
/// its smallest vertex towards the smaller neighbour).
fn walk_component(adj: &[Vec<usize>], comp: &[usize], shape: ComponentShape) -> Vec<usize> {
    let start = match shape {
        ComponentShape::Path => *comp.iter().find(|&&v| adj[v].len() == 1).expect("paths have endpoints"),
        _ => comp[0],
    };
    let mut walk = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = adj[cur].iter().copied().find(|&u| u != prev && !walk.contains(&u));
        match next {
            Some(u) => {
                walk.push(u);
                prev = cur;
                cur = u;
            }
            None => break,
        }
    }
    walk
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    alive: Vec<bool>,
}

impl Search<'_> {
    fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&u| self.alive[u]).count()
    }

    fn alive_neighbours(&self, v: usize) -> Vec<usize> {
        self.adj[v].iter().copied().filter(|&u| self.alive[u]).collect()
    }

    fn greedy_matching_bound(&self) -> usize {
        let mut used = vec![false; self.adj.len()];
        let mut size = 0;
        for v in 0..self.adj.len() {
            if !self.alive[v] || used[v] {
                continue;
            }
            if let Some(u) = self.adj[v].iter().copied().find(|&u| self.alive[u] && !used[u]) {
                used[v] = true;
                used[u] = true;
                size += 1;
            }
        }
        size
    }

    /// Cover size of a graph whose alive part has max degree two.
    fn paths_and_cycles(&self) -> usize {
        let mut seen = vec![false; self.adj.len()];
        let mut total = 0;
        for s in 0..self.adj.len() {
            if !self.alive[s] || seen[s] || self.degree(s) == 0 {
                continue;
            }
            let mut stack = vec![s];
            seen[s] = true;
            let (mut verts, mut deg_sum) = (0usize, 0usize);
            while let Some(v) = stack.pop() {
                verts += 1;
                for u in self.alive_neighbours(v) {
                    deg_sum += 1;
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            let edges = deg_sum / 2;
            total += if edges == verts { edges.div_ceil(2) } else { verts / 2 };
        }
        total
    }

    /// Minimum cover size of the alive subgraph if it is at most `budget`.
    fn solve(&mut self, budget: usize) -> Option<usize> {
        let mut forced = Vec::new();
        let result = self.solve_inner(budget, &mut forced);
        for v in forced {
            self.alive[v] = true;
        }
        result
    }

    fn solve_inner(&mut self, budget: usize, forced: &mut Vec<usize>) -> Option<usize> {
        let mut taken = 0;
        // Degree-one forcing.
        loop {
            let pendant = (0..self.adj.len()).find(|&v| self.alive[v] && self.degree(v) == 1);
            let Some(v) = pendant else { break };
            let u = self.alive_neighbours(v)[0];
            self.alive[u] = false;
            forced.push(u);
            taken += 1;
            if taken > budget {
                return None;
            }
        }
        let budget = budget - taken;
        let best = (0..self.adj.len())
            .filter(|&v| self.alive[v])
            .map(|v| (self.degree(v), std::cmp::Reverse(v)))
            .max();
        let Some((max_deg, std::cmp::Reverse(v))) = best else {
            return Some(taken);
        };
        if max_deg == 0 {
            return Some(taken);
        }
        if max_deg <= 2 {
            let need = self.paths_and_cycles();
            return (need <= budget).then_some(taken + need);
        }
        if self.greedy_matching_bound() > budget {
            return None;
        }
        let mut best_here: Option<usize> = None;
        // Take v.
        if budget >= 1 {
            self.alive[v] = false;
            if let Some(s) = self.solve(budget - 1) {
                best_here = Some(s + 1);
            }
            self.alive[v] = true;
        }
        // Leave v out: all its neighbours go in.
        let nbrs = self.alive_neighbours(v);
        let limit = best_here.map_or(budget, |b| b.saturating_sub(1).min(budget));
        if nbrs.len() <= limit {
            for &u in &nbrs {
                self.alive[u] = false;
            }
            self.alive[v] = false;
            if let Some(s) = self.solve(limit - nbrs.len()) {
                let cand = s + nbrs.len();
                if best_here.is_none_or(|b| cand < b) {
                    best_here = Some(cand);
                }
            }
            self.alive[v] = true;
            for &u in &nbrs {
                self.alive[u] = true;
            }
        }
        best_here.map(|s| s + taken)
    }
}

/// Size of a minimum vertex cover of the subgraph induced by `comp`.
pub(crate) fn min_cover_size(adj: &[Vec<usize>], comp: &[usize]) -> usize {
    let mut alive = vec![false; adj.len()];
    for &v in comp {
        alive[v] = true;
    }
    let mut search = Search { adj, alive };
    search.solve(comp.len()).expect("the whole vertex set is a cover")
}

fn lex_least_cover(adj: &[Vec<usize>], comp: &[usize]) -> Vec<usize> {
    let k = min_cover_size(adj, comp);
    let mut alive = vec![false; adj.len()];
    for &v in comp {
        alive[v] = true;
    }
    let mut search = Search { adj, alive };
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    for &v in comp {
        if !search.alive[v] {
            continue;
        }
        if search.degree(v) == 0 {
            search.alive[v] = false;
            continue;
        }
        search.alive[v] = false;
        let used = chosen.len() + 1;
        if used <= k && search.solve(k - used).is_some() {
            chosen.insert(v);
            continue;
        }
        for u in search.alive_neighbours(v) {
            search.alive[u] = false;
            chosen.insert(u);
        }
    }
    debug_assert_eq!(chosen.len(), k);
    chosen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Edges(usize, Vec<(usize, usize)>);

    impl CoverGraph for Edges {
        fn vertex_count(&self) -> usize {
            self.0
        }
        fn edge_list(&self) -> Vec<(usize, usize)> {
            self.1.clone()
        }
    }

    fn is_cover(g: &Edges, cover: &[usize]) -> bool {
        g.1.iter().all(|(u, v)| cover.contains(u) || cover.contains(v))
    }

    #[test]
    fn formula_cases() {
        let edge = Edges(2, vec![(0, 1)]);
        assert_eq!(min_vertex_cover(&edge, VcMode::AutoStructured).len(), 1);
        let k3 = Edges(3, vec![(0, 1), (1, 2), (0, 2)]);
        assert_eq!(min_vertex_cover(&k3, VcMode::AutoStructured), vec![0, 1]);
        assert_eq!(min_vertex_cover(&k3, VcMode::ForceGeneral), vec![0, 1]);
        let empty = Edges(4, vec![]);
        assert!(min_vertex_cover(&empty, VcMode::AutoStructured).is_empty());
    }

    #[test]
    fn paths_and_cycles() {
        for len in 1..9usize {
            let path = Edges(len + 1, (0..len).map(|i| (i, i + 1)).collect());
            let c = min_vertex_cover(&path, VcMode::AutoStructured);
            assert_eq!(c.len(), len.div_ceil(2), "path {len}");
            assert!(is_cover(&path, &c));
            assert_eq!(min_vertex_cover(&path, VcMode::ForceGeneral).len(), c.len());
        }
        for len in 3..9usize {
            let cycle = Edges(len, (0..len).map(|i| (i, (i + 1) % len)).collect());
            let c = min_vertex_cover(&cycle, VcMode::AutoStructured);
            assert_eq!(c.len(), len.div_ceil(2), "cycle {len}");
            assert!(is_cover(&cycle, &c));
        }
    }

    #[test]
    fn petersen_needs_six() {
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let g = Edges(10, [outer, spokes, inner].concat());
        let c = min_vertex_cover(&g, VcMode::AutoStructured);
        assert_eq!(c.len(), 6);
        assert!(is_cover(&g, &c));
    }

    #[test]
    fn general_cover_is_lexicographically_least() {
        // Star centred at 3: {3} beats any leaf set.
        let star = Edges(4, vec![(0, 3), (1, 3), (2, 3)]);
        assert_eq!(min_vertex_cover(&star, VcMode::ForceGeneral), vec![3]);
        // Path 0-1-2-3: minimum covers {0,2}, {1,2}, {1,3}; least is {0,2}.
        let p = Edges(4, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(min_vertex_cover(&p, VcMode::ForceGeneral), vec![0, 2]);
    }
}
