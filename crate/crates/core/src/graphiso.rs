//! Deduplication by isomorphism of reduced T/S graphs, and the cross-check
//! against symmetry orbits.
//!
//! The canonical form is the least adjacency string over all labelings
//! reachable by colour refinement plus individualization, with search
//! branches pruned by automorphisms found along the way.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{reduced_graph, BaseComplex, EdgeTemplate, ReducedGraph};
use crate::enumerate::Assignment;
use crate::error::{Error, Result};
use crate::symmetry::OrbitClass;

/// A simple graph on at most 32 vertices with a colour per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedGraph {
    pub colors: Vec<u8>,
    pub rows: Vec<u32>,
}

impl TypedGraph {
    pub fn new(colors: Vec<u8>, rows: Vec<u32>) -> Self {
        assert_eq!(colors.len(), rows.len());
        assert!(rows.len() <= 32);
        Self { colors, rows }
    }

    /// T vertices get colour 0, S vertices colour 1.
    pub fn from_reduced(g: &ReducedGraph) -> Self {
        let colors = (0..g.n()).map(|i| (i >= g.n_t) as u8).collect();
        Self::new(colors, g.rows.clone())
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    /// Relabels so that old vertex `order[k]` becomes new vertex `k`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let mut inv = vec![0usize; self.n()];
        for (k, &v) in order.iter().enumerate() {
            inv[v] = k;
        }
        let colors = order.iter().map(|&v| self.colors[v]).collect();
        let rows = order
            .iter()
            .map(|&v| (0..self.n()).filter(|&w| self.adjacent(v, w)).fold(0u32, |acc, w| acc | 1 << inv[w]))
            .collect();
        Self { colors, rows }
    }

    /// Colour letters, then `|`, then the upper triangle row by row.
    fn encode(&self) -> String {
        let n = self.n();
        let mut s: String = self.colors.iter().map(|&c| (b'A' + c) as char).collect();
        s.push('|');
        for i in 0..n {
            for j in i + 1..n {
                s.push(if self.adjacent(i, j) { '1' } else { '0' });
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub code: String,
    /// `order[k]` is the vertex placed at canonical position `k`.
    pub order: Vec<usize>,
}

type Partition = Vec<Vec<usize>>;

/// Splits cells by neighbour counts into every cell until stable.
fn refine(g: &TypedGraph, mut p: Partition) -> Partition {
    loop {
        let mut cell_of = vec![0usize; g.n()];
        for (c, cell) in p.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let mut next: Partition = Vec::with_capacity(p.len());
        for cell in &p {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
            for &v in cell {
                let mut sig = vec![0usize; p.len()];
                for w in 0..g.n() {
                    if g.adjacent(v, w) {
                        sig[cell_of[w]] += 1;
                    }
                }
                groups.entry(sig).or_default().push(v);
            }
            next.extend(groups.into_values());
        }
        if next.len() == p.len() {
            return next;
        }
        p = next;
    }
}

struct Search<'a> {
    g: &'a TypedGraph,
    best: Option<(String, Vec<usize>)>,
    /// Automorphisms found so far, as vertex maps.
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf(&mut self, order: Vec<usize>) {
        let code = self.g.permuted(&order).encode();
        match &self.best {
            None => self.best = Some((code, order)),
            Some((best, best_order)) => {
                if code == *best {
                    // best_order[k] ↦ order[k] preserves the graph.
                    let mut auto = vec![0usize; self.g.n()];
                    for (k, &v) in best_order.iter().enumerate() {
                        auto[v] = order[k];
                    }
                    self.autos.push(auto);
                } else if code < *best {
                    self.best = Some((code, order));
                }
            }
        }
    }

    fn node(&mut self, p: Partition, path: &mut Vec<usize>) {
        let p = refine(self.g, p);
        if p.iter().all(|c| c.len() == 1) {
            self.leaf(p.into_iter().map(|c| c[0]).collect());
            return;
        }
        let (target, _) = p
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .expect("non-discrete partition");
        let mut explored: Vec<usize> = Vec::new();
        for &v in &p[target] {
            if explored.iter().any(|&w| self.same_orbit(path, w, v)) {
                continue;
            }
            explored.push(v);
            let mut child = p.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&x| x != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            path.push(v);
            self.node(child, path);
            path.pop();
        }
    }

    /// Whether `w` and `v` are joined by automorphisms fixing `path`.
    fn same_orbit(&self, path: &[usize], w: usize, v: usize) -> bool {
        let gens: Vec<&Vec<usize>> = self.autos.iter().filter(|a| path.iter().all(|&x| a[x] == x)).collect();
        if gens.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.g.n()];
        let mut stack = vec![w];
        seen[w] = true;
        while let Some(x) = stack.pop() {
            if x == v {
                return true;
            }
            for a in &gens {
                let y = a[x];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }
}

pub fn canonical_form(g: &TypedGraph) -> CanonicalForm {
    // Initial cells by (colour, degree).
    let mut cells: BTreeMap<(u8, usize), Vec<usize>> = BTreeMap::new();
    for v in 0..g.n() {
        cells.entry((g.colors[v], g.degree(v))).or_default().push(v);
    }
    let mut s = Search { g, best: None, autos: Vec::new() };
    s.node(cells.into_values().collect(), &mut Vec::new());
    let (code, order) = s.best.expect("at least one leaf");
    CanonicalForm { code, order }
}

#[derive(Clone, Debug)]
pub struct GraphClass {
    pub code: String,
    /// Members in ascending order; the first is the representative.
    pub members: Vec<Assignment>,
}

impl GraphClass {
    pub fn rep(&self) -> Assignment {
        self.members[0]
    }
}

/// Groups assignments by canonical form of their reduced graph, ordered by
/// representative.
pub fn dedupe_graphs(cx: &BaseComplex, template: &EdgeTemplate, assignments: &[Assignment]) -> Vec<GraphClass> {
    let mut by_code: HashMap<String, Vec<Assignment>> = HashMap::new();
    for a in assignments {
        let g = TypedGraph::from_reduced(&reduced_graph(cx, template, a.bits()));
        by_code.entry(canonical_form(&g).code).or_default().push(*a);
    }
    let mut classes: Vec<GraphClass> = by_code
        .into_iter()
        .map(|(code, mut members)| {
            members.sort();
            GraphClass { code, members }
        })
        .collect();
    classes.sort_by_key(|c| c.rep());
    classes
}

/// The matching between the two deduplications: `(orbit index, graph class
/// index)` pairs. Fails unless both induce the same partition.
pub fn cross_check(
    orbits: &[OrbitClass],
    orbit_of: impl Fn(&Assignment) -> Assignment,
    graphs: &[GraphClass],
) -> Result<Vec<(usize, usize)>> {
    if orbits.len() != graphs.len() {
        return Err(Error::CrossCheck(format!(
            "{} symmetry classes but {} graph classes",
            orbits.len(),
            graphs.len()
        )));
    }
    let orbit_index: HashMap<Assignment, usize> = orbits.iter().enumerate().map(|(i, o)| (o.rep, i)).collect();
    let mut matched = vec![None; orbits.len()];
    let mut pairs = Vec::with_capacity(graphs.len());
    for (j, gc) in graphs.iter().enumerate() {
        let mut hit: Option<usize> = None;
        for a in &gc.members {
            let i = *orbit_index
                .get(&orbit_of(a))
                .ok_or_else(|| Error::CrossCheck(format!("{a:?} is in no symmetry class")))?;
            if hit.is_some_and(|h| h != i) {
                return Err(Error::CrossCheck(format!("graph class {j} spans two symmetry classes")));
            }
            hit = Some(i);
        }
        let i = hit.ok_or_else(|| Error::CrossCheck(format!("graph class {j} is empty")))?;
        if matched[i].replace(j).is_some() {
            return Err(Error::CrossCheck(format!("symmetry class {i} splits into several graph classes")));
        }
        if gc.members.len() != orbits[i].members {
            return Err(Error::CrossCheck(format!("class sizes differ for symmetry class {i}")));
        }
        pairs.push((i, j));
    }
    pairs.sort_unstable();
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> TypedGraph {
        let rows = (0..n).map(|i| 1u32 << ((i + 1) % n) | 1u32 << ((i + n - 1) % n)).collect();
        TypedGraph::new(vec![0; n], rows)
    }

    fn path(n: usize) -> TypedGraph {
        let rows = (0..n)
            .map(|i| {
                let mut r = 0u32;
                if i > 0 {
                    r |= 1 << (i - 1);
                }
                if i + 1 < n {
                    r |= 1 << (i + 1);
                }
                r
            })
            .collect();
        TypedGraph::new(vec![0; n], rows)
    }

    fn random_graph(n: usize, edges: &[(usize, usize)], colors: &[u8]) -> TypedGraph {
        let mut rows = vec![0u32; n];
        for &(a, b) in edges {
            let (a, b) = (a % n, b % n);
            if a != b {
                rows[a] |= 1 << b;
                rows[b] |= 1 << a;
            }
        }
        TypedGraph::new(colors[..n].to_vec(), rows)
    }

    #[test]
    fn cycle_and_path_differ() {
        assert_ne!(canonical_form(&cycle(6)).code, canonical_form(&path(6)).code);
    }

    #[test]
    fn colours_matter() {
        let mut a = path(3);
        let mut b = path(3);
        a.colors = vec![0, 1, 0];
        b.colors = vec![1, 0, 0];
        assert_ne!(canonical_form(&a).code, canonical_form(&b).code);
    }

    #[test]
    fn canonical_order_reproduces_code() {
        let g = cycle(7);
        let cf = canonical_form(&g);
        assert_eq!(g.permuted(&cf.order).encode(), cf.code);
    }

    #[test]
    fn regular_graphs_with_equal_refinement_are_told_apart() {
        // Two 6-vertex 2-regular graphs: a hexagon and two triangles.
        let tri = random_graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], &[0; 6]);
        assert_ne!(canonical_form(&cycle(6)).code, canonical_form(&tri).code);
    }

    proptest! {
        #[test]
        fn invariant_under_relabeling(
            n in 2usize..12,
            edges in proptest::collection::vec((0usize..12, 0usize..12), 0..30),
            colors in proptest::collection::vec(0u8..2, 12),
            perm in Just((0..12).collect::<Vec<usize>>()).prop_shuffle(),
        ) {
            let g = random_graph(n, &edges, &colors);
            let order: Vec<usize> = perm.into_iter().filter(|&v| v < n).collect();
            let h = g.permuted(&order);
            prop_assert_eq!(canonical_form(&g).code, canonical_form(&h).code);
        }
    }
}
