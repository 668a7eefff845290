//! Serre multigraphs: half-edges paired by a fixed-point-free involution,
//! each rooted at a vertex. Loops and parallel edges are ordinary citizens.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;

use crate::algebra::Matrix;
use crate::error::{Error, Result};

/// Half-edge handle. Edge `i` owns half-edges `2i` (at its source) and
/// `2i + 1` (at its target), so the involution is `h ^ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge(pub usize);

impl HalfEdge {
    pub fn edge(self) -> usize {
        self.0 / 2
    }

    pub fn opposite(self) -> HalfEdge {
        HalfEdge(self.0 ^ 1)
    }

    /// True for the half-edge at the source of the canonical orientation.
    pub fn is_source_side(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.src == self.tgt
    }
}

/// An immutable multigraph with sorted vertex and edge ids.
///
/// Each edge carries the orientation it was built with (`src -> tgt`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

/// A connected piece of a graph, by vertex and edge indices of the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Component {
    /// `|E| - |V| + 1`, the cycle rank of a connected piece.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }
}

/// Disjoint-set forest over vertex indices.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl Graph {
    /// Builds a graph from vertex ids and `(edge id, source, target)` triples.
    pub fn new<V, E>(vertex_ids: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut vertices: Vec<String> = vertex_ids.into_iter().map(Into::into).collect();
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateId(w[0].clone()));
        }
        let vertex_index: HashMap<String, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut built = Vec::new();
        for (id, s, t) in edges {
            let src = *vertex_index.get(&s).ok_or(Error::UnknownVertex(s))?;
            let tgt = *vertex_index.get(&t).ok_or(Error::UnknownVertex(t))?;
            built.push(Edge { id, src, tgt });
        }
        built.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = built.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateId(w[0].id.clone()));
        }
        let edge_index = built
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i))
            .collect();
        Ok(Graph {
            vertices,
            edges: built,
            vertex_index,
            edge_index,
        })
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(vertex_ids: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        Graph::new(
            vertex_ids.iter().copied(),
            edges
                .iter()
                .map(|(e, s, t)| (e.to_string(), s.to_string(), t.to_string())),
        )
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Resolves edge ids to sorted, deduplicated indices.
    pub fn edge_indices<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>> {
        let set: BTreeSet<usize> = ids
            .iter()
            .map(|s| self.edge_index(s.as_ref()))
            .collect::<Result<_>>()?;
        Ok(set.into_iter().collect())
    }

    pub fn edge_ids(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.edges[i].id.clone()).collect()
    }

    pub fn edge_id_list(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> {
        (0..2 * self.edges.len()).map(HalfEdge)
    }

    pub fn involution(&self, h: HalfEdge) -> HalfEdge {
        h.opposite()
    }

    /// The vertex a half-edge is attached to.
    pub fn root(&self, h: HalfEdge) -> usize {
        let e = &self.edges[h.edge()];
        if h.is_source_side() {
            e.src
        } else {
            e.tgt
        }
    }

    /// Readable half-edge name: `"<edge>:s"` or `"<edge>:t"`.
    pub fn half_edge_id(&self, h: HalfEdge) -> String {
        let side = if h.is_source_side() { "s" } else { "t" };
        format!("{}:{}", self.edges[h.edge()].id, side)
    }

    pub fn source(&self, e: usize) -> usize {
        self.edges[e].src
    }

    pub fn target(&self, e: usize) -> usize {
        self.edges[e].tgt
    }

    /// Half-edges rooted at `v`, in half-edge order.
    pub fn half_edges_at(&self, v: usize) -> Vec<HalfEdge> {
        self.half_edges().filter(|&h| self.root(h) == v).collect()
    }

    /// Number of half-edges at `v`; a loop counts twice.
    pub fn valency(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.src == v) as usize + (e.tgt == v) as usize)
            .sum()
    }

    /// Components after deleting the edges in `removed` (vertices stay).
    pub fn components_without(&self, removed: &[bool]) -> Vec<Component> {
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for (i, e) in self.edges.iter().enumerate() {
            if !removed[i] {
                uf.union(e.src, e.tgt);
            }
        }
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut comps: Vec<Component> = Vec::new();
        for v in 0..n {
            let r = uf.find(v);
            let k = *slot.entry(r).or_insert_with(|| {
                comps.push(Component {
                    vertices: Vec::new(),
                    edges: Vec::new(),
                });
                comps.len() - 1
            });
            comps[k].vertices.push(v);
        }
        for (i, e) in self.edges.iter().enumerate() {
            if !removed[i] {
                let k = slot[&uf.find(e.src)];
                comps[k].edges.push(i);
            }
        }
        comps
    }

    /// Maximal connected pieces, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Component> {
        self.components_without(&vec![false; self.edges.len()])
    }

    /// Exactly one component; the empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// `|E| - |V| + 1` for a connected graph.
    pub fn genus(&self) -> Result<i64> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.edges.len() as i64 - self.vertices.len() as i64 + 1)
    }

    /// The subgraph induced on a component, with its own sorted ids.
    pub fn component_graph(&self, c: &Component) -> Graph {
        Graph::new(
            c.vertices.iter().map(|&v| self.vertices[v].clone()),
            c.edges.iter().map(|&i| {
                let e = &self.edges[i];
                (
                    e.id.clone(),
                    self.vertices[e.src].clone(),
                    self.vertices[e.tgt].clone(),
                )
            }),
        )
        .expect("subgraph of a valid graph is valid")
    }

    /// Deletes edges, keeping all vertices.
    pub fn delete_edges(&self, removed: &[usize]) -> Graph {
        let set: BTreeSet<usize> = removed.iter().copied().collect();
        Graph::new(
            self.vertices.iter().cloned(),
            self.edges.iter().enumerate().filter(|(i, _)| !set.contains(i)).map(|(_, e)| {
                (
                    e.id.clone(),
                    self.vertices[e.src].clone(),
                    self.vertices[e.tgt].clone(),
                )
            }),
        )
        .expect("deletion preserves validity")
    }

    /// Contracts the edges `f`: every component of the subgraph spanned by
    /// `f` collapses to a single vertex and the edges of `f` disappear.
    ///
    /// A collapsed component with several vertices is named by joining its
    /// sorted member ids with `+` (primed until the name is fresh); a
    /// component with one vertex keeps its id. Returns the contracted graph
    /// and the vertex projection, indexed by old vertex index.
    pub fn contract(&self, f: &[usize]) -> Result<(Graph, Vec<usize>)> {
        if let Some(&bad) = f.iter().find(|&&i| i >= self.edges.len()) {
            return Err(Error::UnknownEdge(format!("#{bad}")));
        }
        let fset: BTreeSet<usize> = f.iter().copied().collect();
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for &i in &fset {
            uf.union(self.edges[i].src, self.edges[i].tgt);
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for v in 0..n {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        let taken: BTreeSet<&str> = self.vertices.iter().map(String::as_str).collect();
        let mut name_of_root: HashMap<usize, String> = HashMap::new();
        let mut used: BTreeSet<String> = BTreeSet::new();
        let mut roots: Vec<usize> = groups.keys().copied().collect();
        roots.sort();
        for r in &roots {
            let members = &groups[r];
            let name = if members.len() == 1 {
                self.vertices[members[0]].clone()
            } else {
                let mut ids: Vec<&str> = members.iter().map(|&v| self.vertices[v].as_str()).collect();
                ids.sort();
                let mut name = ids.join("+");
                while taken.contains(name.as_str()) || used.contains(&name) {
                    name.push('\'');
                }
                name
            };
            used.insert(name.clone());
            name_of_root.insert(*r, name);
        }
        let new_vertices: Vec<String> = roots.iter().map(|r| name_of_root[r].clone()).collect();
        let contracted = Graph::new(
            new_vertices,
            self.edges
                .iter()
                .enumerate()
                .filter(|(i, _)| !fset.contains(i))
                .map(|(_, e)| {
                    (
                        e.id.clone(),
                        name_of_root[&uf.find(e.src)].clone(),
                        name_of_root[&uf.find(e.tgt)].clone(),
                    )
                }),
        )?;
        let projection = (0..n)
            .map(|v| contracted.vertex_index[&name_of_root[&uf.find(v)]])
            .collect();
        Ok((contracted, projection))
    }

    /// All spanning trees as sorted edge-index lists, in lexicographic order.
    pub fn spanning_trees(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        let uf = UnionFind::new(self.vertices.len());
        self.grow_trees(0, uf, &mut chosen, &mut out);
        Ok(out)
    }

    fn grow_trees(
        &self,
        next: usize,
        uf: UnionFind,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let need = self.vertices.len() - 1;
        if chosen.len() == need {
            out.push(chosen.clone());
            return;
        }
        if next == self.edges.len() {
            return;
        }
        // prune: the chosen forest plus all remaining edges must still span
        let mut probe = uf.clone();
        for e in &self.edges[next..] {
            probe.union(e.src, e.tgt);
        }
        let r0 = probe.find(0);
        if (1..self.vertices.len()).any(|v| probe.find(v) != r0) {
            return;
        }
        let e = &self.edges[next];
        let mut with = uf.clone();
        if with.union(e.src, e.tgt) {
            chosen.push(next);
            self.grow_trees(next + 1, with, chosen, out);
            chosen.pop();
        }
        self.grow_trees(next + 1, uf, chosen, out);
    }

    /// Valency matrix `Q` and adjacency matrix `A`; a loop adds 2 to both.
    pub fn valency_adjacency(&self) -> (Matrix<BigInt>, Matrix<BigInt>) {
        let n = self.vertices.len();
        let mut q = vec![0i64; n];
        let mut a = vec![0i64; n * n];
        for e in &self.edges {
            q[e.src] += 1;
            q[e.tgt] += 1;
            a[e.src * n + e.tgt] += 1;
            a[e.tgt * n + e.src] += 1;
        }
        (
            Matrix::from_fn(n, n, |i, j| BigInt::from(if i == j { q[i] } else { 0 })),
            Matrix::from_fn(n, n, |i, j| BigInt::from(a[i * n + j])),
        )
    }
}
