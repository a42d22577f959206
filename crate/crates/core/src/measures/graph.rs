use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::Result;
use crate::function::{binary_msb_first, TruthTable};
use crate::measures::sensitivity::check_cap;

/// Explicit edge lists and graph exports are limited to this arity.
pub const EXPORT_CAP: usize = 16;

/// Sensitivity graph G_f: the hypercube edges {x, x^{(i)}} with
/// f(x) ≠ f(x^{(i)}). Edges are answered from the truth table on demand.
#[derive(Clone, Debug)]
pub struct SensitivityGraph {
    table: TruthTable,
}

impl SensitivityGraph {
    pub fn new(table: TruthTable) -> Self {
        SensitivityGraph { table }
    }

    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    pub fn arity(&self) -> usize {
        self.table.arity()
    }

    pub fn vertex_count(&self) -> u64 {
        self.table.len()
    }

    #[inline]
    pub fn is_edge(&self, x: u64, i: usize) -> bool {
        self.table.is_sensitive(x, i)
    }

    #[inline]
    pub fn degree(&self, x: u64) -> u32 {
        self.table.sensitivity_at(x)
    }

    pub fn neighbors(&self, x: u64) -> impl Iterator<Item = u64> + '_ {
        (0..self.arity())
            .filter(move |&i| self.is_edge(x, i))
            .map(move |i| x ^ (1 << i))
    }

    /// |E|, counted as half the degree sum.
    pub fn edge_count(&self) -> u64 {
        let sum: u64 = (0..self.table.len())
            .into_par_iter()
            .map(|x| u64::from(self.degree(x)))
            .sum();
        sum / 2
    }

    /// All edges as (x, y) with x < y, sorted.
    pub fn edges(&self) -> Result<Vec<(u64, u64)>> {
        check_cap("explicit edge list", self.arity(), EXPORT_CAP)?;
        let mut out = Vec::new();
        for x in 0..self.table.len() {
            for y in self.neighbors(x) {
                if x < y {
                    out.push((x, y));
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Connected components over the vertices with at least one edge.
    pub fn components(&self) -> Components {
        let len = self.table.len() as usize;
        let mut seen = vec![0u64; len.div_ceil(64)];
        let mut offsets = vec![0usize];
        let mut vertices = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.table.len() {
            let s = start as usize;
            if seen[s >> 6] >> (s & 63) & 1 == 1 || self.degree(start) == 0 {
                continue;
            }
            seen[s >> 6] |= 1 << (s & 63);
            let first = vertices.len();
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                vertices.push(v);
                for w in self.neighbors(v) {
                    let wi = w as usize;
                    if seen[wi >> 6] >> (wi & 63) & 1 == 0 {
                        seen[wi >> 6] |= 1 << (wi & 63);
                        queue.push_back(w);
                    }
                }
            }
            vertices[first..].sort_unstable();
            offsets.push(vertices.len());
        }
        Components { offsets, vertices }
    }

    /// The induced subgraph on `vertices` (sorted), with local indices.
    pub fn local(&self, vertices: &[u64]) -> LocalGraph {
        let adjacency = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self
                    .neighbors(v)
                    .filter_map(|w| vertices.binary_search(&w).ok())
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        LocalGraph { adjacency }
    }

    /// Plain edge list, one `<x> <y>` line per edge with x < y, vertices as
    /// fixed-width binary (x_n first). `vertices` restricts to a component.
    pub fn to_edge_list(&self, vertices: Option<&[u64]>) -> Result<String> {
        let n = self.arity();
        let mut out = String::new();
        for (x, y) in self.selected_edges(vertices)? {
            writeln!(out, "{} {}", binary_msb_first(x, n), binary_msb_first(y, n)).unwrap();
        }
        Ok(out)
    }

    /// Graphviz DOT; 1-inputs are drawn filled.
    pub fn to_dot(&self, vertices: Option<&[u64]>) -> Result<String> {
        let n = self.arity();
        let edges = self.selected_edges(vertices)?;
        let mut nodes: Vec<u64> = edges.iter().flat_map(|&(x, y)| [x, y]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        let mut out = String::from("graph sensitivity {\n");
        for v in nodes {
            let style = if self.table.get(v) {
                ", style=filled, fillcolor=gray80"
            } else {
                ""
            };
            writeln!(
                out,
                "  \"{}\" [label=\"{}\"{}];",
                binary_msb_first(v, n),
                binary_msb_first(v, n),
                style
            )
            .unwrap();
        }
        for (x, y) in edges {
            writeln!(out, "  \"{}\" -- \"{}\";", binary_msb_first(x, n), binary_msb_first(y, n)).unwrap();
        }
        out.push_str("}\n");
        Ok(out)
    }

    fn selected_edges(&self, vertices: Option<&[u64]>) -> Result<Vec<(u64, u64)>> {
        let all = self.edges()?;
        Ok(match vertices {
            None => all,
            Some(vs) => all
                .into_iter()
                .filter(|(x, _)| vs.binary_search(x).is_ok())
                .collect(),
        })
    }
}

/// Components stored contiguously: component `i` is
/// `vertices[offsets[i]..offsets[i + 1]]`, sorted. Components are ordered
/// by their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    offsets: Vec<usize>,
    vertices: Vec<u64>,
}

impl Components {
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> Option<&[u64]> {
        (i < self.len()).then(|| &self.vertices[self.offsets[i]..self.offsets[i + 1]])
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u64]> + '_ {
        (0..self.len()).map(move |i| &self.vertices[self.offsets[i]..self.offsets[i + 1]])
    }
}

/// Adjacency lists over local vertex indices 0..len.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGraph {
    pub adjacency: Vec<Vec<usize>>,
}

impl LocalGraph {
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(a, b) in edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        LocalGraph { adjacency }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn shape(&self) -> ComponentShape {
        classify(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentShape {
    /// K_{1,d}; a single edge is `Star { center_degree: 1 }`.
    Star { center_degree: usize },
    /// A center of degree `center_degree` whose neighbours all have degree
    /// `layer_degree` ≥ 2, every other vertex being a leaf on the first layer.
    TwoLayerStar {
        center_degree: usize,
        layer_degree: usize,
    },
    Other,
}

fn classify(g: &LocalGraph) -> ComponentShape {
    let v = g.len();
    if v < 2 || g.edge_count() != v - 1 {
        return ComponentShape::Other;
    }
    // connected trees only
    let mut seen = vec![false; v];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(a) = stack.pop() {
        for &b in &g.adjacency[a] {
            if !seen[b] {
                seen[b] = true;
                reached += 1;
                stack.push(b);
            }
        }
    }
    if reached != v {
        return ComponentShape::Other;
    }
    if let Some(c) = (0..v).find(|&c| g.degree(c) == v - 1) {
        return ComponentShape::Star {
            center_degree: g.degree(c),
        };
    }
    for c in 0..v {
        let layer = &g.adjacency[c];
        let d = g.degree(layer[0]);
        if d < 2 || layer.iter().any(|&u| g.degree(u) != d) {
            continue;
        }
        let s0 = layer.len();
        if v != 1 + s0 + s0 * (d - 1) {
            continue;
        }
        let leaves_ok = (0..v).filter(|&u| u != c && layer.binary_search(&u).is_err()).all(|u| {
            g.degree(u) == 1 && layer.binary_search(&g.adjacency[u][0]).is_ok()
        });
        if leaves_ok {
            return ComponentShape::TwoLayerStar {
                center_degree: s0,
                layer_degree: d,
            };
        }
    }
    ComponentShape::Other
}

/// The two-layer star: center 0, first layer 1..=s0, each first-layer vertex
/// carrying s1 − 1 leaves.
pub fn two_layer_star_edges(s0: usize, s1: usize) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    let mut next = 1 + s0;
    for a in 1..=s0 {
        edges.push((0, a));
        for _ in 1..s1 {
            edges.push((a, next));
            next += 1;
        }
    }
    (next, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::haf;
    use crate::function::BooleanFunction;

    fn graph(f: BooleanFunction) -> SensitivityGraph {
        SensitivityGraph::new(f.materialize().unwrap())
    }

    #[test]
    fn and2_is_a_two_star() {
        let g = graph(BooleanFunction::and(2).unwrap());
        let comps = g.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps.get(0).unwrap(), &[1, 2, 3]);
        assert_eq!(g.local(comps.get(0).unwrap()).shape(), ComponentShape::Star { center_degree: 2 });
        assert_eq!(g.to_edge_list(None).unwrap(), "01 11\n10 11\n");
    }

    #[test]
    fn constant_has_no_components() {
        let g = graph(BooleanFunction::constant(3, true));
        assert!(g.components().is_empty());
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.to_edge_list(None).unwrap(), "");
    }

    #[test]
    fn haf2_components_are_four_stars() {
        let g = graph(haf(2).unwrap());
        let comps = g.components();
        assert_eq!(comps.len(), 4);
        for c in comps.iter() {
            let local = g.local(c);
            assert_eq!(local.shape(), ComponentShape::Star { center_degree: 4 });
            let center = c.iter().find(|&&v| g.degree(v) == 4).unwrap();
            assert!(g.table().get(*center));
        }
        assert_eq!(g.edge_count(), 16);
    }

    #[test]
    fn parity2_edges() {
        let g = graph(BooleanFunction::parity(2).unwrap());
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.local(g.components().get(0).unwrap()).shape(), ComponentShape::Other);
    }

    #[test]
    fn two_layer_star_is_recognized() {
        let (v, edges) = two_layer_star_edges(5, 4);
        assert_eq!(v, 21);
        let g = LocalGraph::from_edges(v, &edges);
        assert_eq!(
            g.shape(),
            ComponentShape::TwoLayerStar {
                center_degree: 5,
                layer_degree: 4
            }
        );
        let (v, edges) = two_layer_star_edges(4, 4);
        assert_eq!(v, 17);
        assert_eq!(
            LocalGraph::from_edges(v, &edges).shape(),
            ComponentShape::TwoLayerStar {
                center_degree: 4,
                layer_degree: 4
            }
        );
        // s1 = 1 degenerates to a star.
        let (v, edges) = two_layer_star_edges(3, 1);
        assert_eq!(LocalGraph::from_edges(v, &edges).shape(), ComponentShape::Star { center_degree: 3 });
    }

    #[test]
    fn dot_output_mentions_every_edge() {
        let g = graph(BooleanFunction::and(2).unwrap());
        let dot = g.to_dot(None).unwrap();
        assert!(dot.starts_with("graph sensitivity {"));
        assert!(dot.contains("\"01\" -- \"11\";"));
        assert!(dot.contains("\"10\" -- \"11\";"));
    }

    #[test]
    fn tradeoff_components_are_classified() {
        let g = graph(crate::constructions::tradeoff(&[2], &[2]).unwrap());
        let mut shapes = std::collections::BTreeMap::new();
        for c in g.components().iter() {
            let local = g.local(c);
            assert!(local.adjacency.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
            *shapes.entry(local.shape()).or_insert(0) += 1;
        }
        assert_eq!(shapes.get(&ComponentShape::Star { center_degree: 3 }), Some(&768));
        assert_eq!(
            shapes.get(&ComponentShape::TwoLayerStar { center_degree: 4, layer_degree: 4 }),
            Some(&256)
        );
        assert_eq!(shapes.len(), 2);
    }
}
