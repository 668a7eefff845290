//! Harmonic G-covers built from a dilation datum and dilated voltages.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{AbelianGroup, GroupElement, Subgroup};

/// Classifying data of an abelian harmonic cover.
///
/// Vertex and edge data are indexed like the base graph's sorted vertex and
/// edge lists. Voltages are read along each base edge's orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverSpec {
    base: Graph,
    group: AbelianGroup,
    dilation: Vec<Subgroup>,
    voltage: Vec<GroupElement>,
}

/// An oriented traversal of a base edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub edge: usize,
    pub reversed: bool,
}

impl CoverSpec {
    /// Builds a spec from generator lists and voltages keyed by id.
    /// Missing entries mean trivial dilation and zero voltage.
    pub fn new(
        base: Graph,
        group: AbelianGroup,
        dilation: &BTreeMap<String, Vec<GroupElement>>,
        voltage: &BTreeMap<String, GroupElement>,
    ) -> Result<Self> {
        let mut dil = vec![group.trivial_subgroup(); base.num_vertices()];
        for (v, gens) in dilation {
            let i = base.vertex_index(v)?;
            dil[i] = group.subgroup(gens)?;
        }
        let mut volt = vec![group.zero(); base.num_edges()];
        for (e, g) in voltage {
            let i = base.edge_index(e)?;
            if !group.contains(g) {
                return Err(Error::MalformedElement {
                    element: g.0.iter().map(|&x| x as i64).collect(),
                    orders: group.orders().to_vec(),
                });
            }
            volt[i] = g.clone();
        }
        Ok(CoverSpec {
            base,
            group,
            dilation: dil,
            voltage: volt,
        })
    }

    /// Builds a spec from already-indexed data.
    pub fn from_parts(
        base: Graph,
        group: AbelianGroup,
        dilation: Vec<Subgroup>,
        voltage: Vec<GroupElement>,
    ) -> Result<Self> {
        if dilation.len() != base.num_vertices() || voltage.len() != base.num_edges() {
            return Err(Error::Spec("data length does not match the base graph".into()));
        }
        if dilation.iter().any(|d| d.group() != &group) {
            return Err(Error::ParentMismatch);
        }
        if let Some(g) = voltage.iter().find(|g| !group.contains(g)) {
            return Err(Error::MalformedElement {
                element: g.0.iter().map(|&x| x as i64).collect(),
                orders: group.orders().to_vec(),
            });
        }
        Ok(CoverSpec {
            base,
            group,
            dilation,
            voltage,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn dilation(&self, v: usize) -> &Subgroup {
        &self.dilation[v]
    }

    pub fn dilations(&self) -> &[Subgroup] {
        &self.dilation
    }

    pub fn voltage(&self, e: usize) -> &GroupElement {
        &self.voltage[e]
    }

    pub fn voltages(&self) -> &[GroupElement] {
        &self.voltage
    }

    /// True when no vertex is dilated.
    pub fn is_free(&self) -> bool {
        self.dilation.iter().all(Subgroup::is_trivial)
    }

    /// `D(s(e)) + D(t(e))`, the ambiguity of the voltage on `e`.
    pub fn edge_subgroup(&self, e: usize) -> Subgroup {
        let edge = &self.base.edges()[e];
        self.dilation[edge.src]
            .sum(&self.dilation[edge.tgt])
            .expect("dilations share the group")
    }

    /// Replaces every voltage by the smallest representative of its coset
    /// modulo the edge subgroup. Returns the new spec and the ids of the
    /// edges whose voltage changed.
    pub fn normalize(&self) -> (CoverSpec, Vec<String>) {
        let mut spec = self.clone();
        let mut changed = Vec::new();
        for e in 0..self.base.num_edges() {
            let rep = self.edge_subgroup(e).coset_rep(&self.voltage[e]);
            if rep != self.voltage[e] {
                changed.push(self.base.edges()[e].id.clone());
                spec.voltage[e] = rep;
            }
        }
        (spec, changed)
    }

    /// Sum of the oriented voltages along a path; a reversed step counts
    /// `-eta(e)`.
    pub fn frobenius(&self, path: &[Step]) -> Result<GroupElement> {
        let mut acc = self.group.zero();
        let mut at: Option<usize> = None;
        for (i, step) in path.iter().enumerate() {
            if step.edge >= self.base.num_edges() {
                return Err(Error::UnknownEdge(format!("#{}", step.edge)));
            }
            let e = &self.base.edges()[step.edge];
            let (from, to, g) = if step.reversed {
                (e.tgt, e.src, self.group.neg(&self.voltage[step.edge]))
            } else {
                (e.src, e.tgt, self.voltage[step.edge].clone())
            };
            if at.is_some_and(|v| v != from) {
                return Err(Error::NonComposablePath(i));
            }
            at = Some(to);
            acc = self.group.add(&acc, &g);
        }
        Ok(acc)
    }

    /// Attaches one loop per greedy generator of each dilation group, with
    /// that generator as voltage, and drops all dilation. Loop ids are
    /// `"<vertex>#<i>"`, primed if the name is taken.
    pub fn free_resolution(&self) -> (CoverSpec, Vec<String>) {
        let mut taken: std::collections::BTreeSet<String> = self.base.edge_id_list().into_iter().collect();
        let mut edges: Vec<(String, String, String)> = self
            .base
            .edges()
            .iter()
            .map(|e| {
                (
                    e.id.clone(),
                    self.base.vertices()[e.src].clone(),
                    self.base.vertices()[e.tgt].clone(),
                )
            })
            .collect();
        let mut voltage: BTreeMap<String, GroupElement> = edges
            .iter()
            .zip(&self.voltage)
            .map(|((id, _, _), g)| (id.clone(), g.clone()))
            .collect();
        let mut added = Vec::new();
        for (v, d) in self.dilation.iter().enumerate() {
            let name = &self.base.vertices()[v];
            for (i, g) in d.generators().into_iter().enumerate() {
                let mut id = format!("{name}#{i}");
                while taken.contains(&id) {
                    id.push('\'');
                }
                taken.insert(id.clone());
                edges.push((id.clone(), name.clone(), name.clone()));
                voltage.insert(id.clone(), g);
                added.push(id);
            }
        }
        let base = Graph::new(self.base.vertices().iter().cloned(), edges)
            .expect("adding fresh loops keeps the graph valid");
        let spec = CoverSpec::new(base, self.group.clone(), &BTreeMap::new(), &voltage)
            .expect("resolution data is consistent");
        added.sort();
        (spec, added)
    }

    /// The dilation group at the root of loop `e0` after contracting it:
    /// `D(v0) + <eta(e0)>`.
    pub fn dilation_after_loop_contraction(&self, e0: usize) -> Result<Subgroup> {
        let e = self
            .base
            .edges()
            .get(e0)
            .ok_or_else(|| Error::UnknownEdge(format!("#{e0}")))?;
        if !e.is_loop() {
            return Err(Error::NotALoop(e.id.clone()));
        }
        let cyc = self.group.subgroup(std::slice::from_ref(&self.voltage[e0]))?;
        self.dilation[e.src].sum(&cyc)
    }

    /// The spec of the contraction along base edges `f`.
    ///
    /// Each component `C` of the subgraph spanned by `f` becomes one vertex
    /// whose dilation is generated by the `D(v)`, `v` in `C`, and the
    /// Frobenius elements of the cycles of `C`. Surviving edges get their
    /// voltages corrected by tree potentials.
    pub fn contract(&self, f: &[usize]) -> Result<(CoverSpec, Vec<usize>)> {
        let (contracted, proj) = self.base.contract(f)?;
        let g = &self.group;
        let fset: std::collections::BTreeSet<usize> = f.iter().copied().collect();
        // incidence restricted to f
        let n = self.base.num_vertices();
        let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n];
        for &i in &fset {
            let e = &self.base.edges()[i];
            adj[e.src].push((i, e.tgt, false));
            adj[e.tgt].push((i, e.src, true));
        }
        let mut potential: Vec<Option<GroupElement>> = vec![None; n];
        let mut tree_edge = vec![false; self.base.num_edges()];
        let mut new_dil: Vec<Vec<GroupElement>> = vec![Vec::new(); contracted.num_vertices()];
        for root in 0..n {
            if potential[root].is_some() {
                continue;
            }
            potential[root] = Some(g.zero());
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let pv = potential[v].clone().unwrap();
                for &(i, w, rev) in &adj[v] {
                    if potential[w].is_none() {
                        let eta = &self.voltage[i];
                        let step = if rev { g.neg(eta) } else { eta.clone() };
                        potential[w] = Some(g.add(&pv, &step));
                        tree_edge[i] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let pot: Vec<GroupElement> = potential.into_iter().map(Option::unwrap).collect();
        let shifted = |i: usize| {
            let e = &self.base.edges()[i];
            g.sub(&g.add(&self.voltage[i], &pot[e.src]), &pot[e.tgt])
        };
        for v in 0..n {
            new_dil[proj[v]].extend(self.dilation[v].generators());
        }
        for &i in &fset {
            if !tree_edge[i] {
                new_dil[proj[self.base.edges()[i].src]].push(shifted(i));
            }
        }
        let dilation: Vec<Subgroup> = new_dil
            .iter()
            .map(|gens| g.subgroup(gens))
            .collect::<Result<_>>()?;
        let voltage: Vec<GroupElement> = contracted
            .edges()
            .iter()
            .map(|e| shifted(self.base.edge_index(&e.id).unwrap()))
            .collect();
        let spec = CoverSpec::from_parts(contracted, g.clone(), dilation, voltage)?;
        Ok((spec, proj))
    }
}

/// The total graph of a cover together with its projection and fibers.
#[derive(Clone, Debug)]
pub struct Cover {
    spec: CoverSpec,
    total: Graph,
    vertex_proj: Vec<usize>,
    edge_proj: Vec<usize>,
    vertex_label: Vec<GroupElement>,
    edge_label: Vec<GroupElement>,
    vertex_at: HashMap<(usize, GroupElement), usize>,
    edge_at: HashMap<(usize, GroupElement), usize>,
}

impl Cover {
    /// Constructs the cover: the fiber over `v` is `G / D(v)`, the fiber over
    /// `e` is `G`, and `e_g` runs from `s(e)_[g]` to `t(e)_[g + eta(e)]`.
    pub fn build(spec: &CoverSpec) -> Cover {
        let (spec, _) = spec.normalize();
        let g = spec.group.clone();
        let base = &spec.base;
        let mut vertex_names = Vec::new();
        let mut vkey = Vec::new();
        for (v, name) in base.vertices().iter().enumerate() {
            for rep in spec.dilation[v].coset_reps() {
                vertex_names.push(format!("{name}@{rep}"));
                vkey.push((v, rep));
            }
        }
        let mut edge_triples = Vec::new();
        let mut ekey = Vec::new();
        for (i, e) in base.edges().iter().enumerate() {
            for x in g.elements() {
                let s = spec.dilation[e.src].coset_rep(&x);
                let t = spec.dilation[e.tgt].coset_rep(&g.add(&x, &spec.voltage[i]));
                edge_triples.push((
                    format!("{}@{}", e.id, x),
                    format!("{}@{}", base.vertices()[e.src], s),
                    format!("{}@{}", base.vertices()[e.tgt], t),
                ));
                ekey.push((i, x));
            }
        }
        let names_by_key: Vec<String> = vertex_names.clone();
        let edge_names: Vec<String> = edge_triples.iter().map(|t| t.0.clone()).collect();
        let total = Graph::new(vertex_names, edge_triples).expect("cover ids are unique");
        let mut vertex_proj = vec![0; total.num_vertices()];
        let mut vertex_label = vec![g.zero(); total.num_vertices()];
        let mut vertex_at = HashMap::new();
        for (name, (v, rep)) in names_by_key.iter().zip(vkey) {
            let idx = total.vertex_index(name).unwrap();
            vertex_proj[idx] = v;
            vertex_label[idx] = rep.clone();
            vertex_at.insert((v, rep), idx);
        }
        let mut edge_proj = vec![0; total.num_edges()];
        let mut edge_label = vec![g.zero(); total.num_edges()];
        let mut edge_at = HashMap::new();
        for (name, (i, x)) in edge_names.iter().zip(ekey) {
            let idx = total.edge_index(name).unwrap();
            edge_proj[idx] = i;
            edge_label[idx] = x.clone();
            edge_at.insert((i, x), idx);
        }
        Cover {
            spec,
            total,
            vertex_proj,
            edge_proj,
            vertex_label,
            edge_label,
            vertex_at,
            edge_at,
        }
    }

    /// The normalized spec the cover was built from.
    pub fn spec(&self) -> &CoverSpec {
        &self.spec
    }

    pub fn base(&self) -> &Graph {
        &self.spec.base
    }

    pub fn total(&self) -> &Graph {
        &self.total
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.spec.group
    }

    pub fn vertex_projection(&self) -> &[usize] {
        &self.vertex_proj
    }

    pub fn edge_projection(&self) -> &[usize] {
        &self.edge_proj
    }

    /// Coset representative labelling a total vertex within its fiber.
    pub fn vertex_label(&self, v: usize) -> &GroupElement {
        &self.vertex_label[v]
    }

    pub fn edge_label(&self, e: usize) -> &GroupElement {
        &self.edge_label[e]
    }

    /// Total vertices over base vertex `v`.
    pub fn vertex_fiber(&self, v: usize) -> Vec<usize> {
        (0..self.total.num_vertices())
            .filter(|&x| self.vertex_proj[x] == v)
            .collect()
    }

    /// Total edges over base edge `e`.
    pub fn edge_fiber(&self, e: usize) -> Vec<usize> {
        (0..self.total.num_edges())
            .filter(|&x| self.edge_proj[x] == e)
            .collect()
    }

    /// `d_p(v~) = |D(p(v~))|`.
    pub fn local_degree(&self, v: usize) -> u64 {
        self.spec.dilation[self.vertex_proj[v]].order()
    }

    /// Action of `h` on a total vertex.
    pub fn act_vertex(&self, h: &GroupElement, v: usize) -> usize {
        let b = self.vertex_proj[v];
        let moved = self.spec.group.add(&self.vertex_label[v], h);
        self.vertex_at[&(b, self.spec.dilation[b].coset_rep(&moved))]
    }

    /// Action of `h` on a total edge.
    pub fn act_edge(&self, h: &GroupElement, e: usize) -> usize {
        let b = self.edge_proj[e];
        let moved = self.spec.group.add(&self.edge_label[e], h);
        self.edge_at[&(b, moved)]
    }

    pub fn is_connected(&self) -> bool {
        self.total.is_connected()
    }

    /// Checks the local balancing condition: at every total vertex, each
    /// base half-edge at its image has exactly `d_p` preimages.
    pub fn is_harmonic(&self) -> bool {
        for v in 0..self.total.num_vertices() {
            let d = self.local_degree(v) as usize;
            let b = self.vertex_proj[v];
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for h in self.total.half_edges_at(v) {
                let base_half = 2 * self.edge_proj[h.edge()] + (h.0 % 2);
                *counts.entry(base_half).or_default() += 1;
            }
            for h in self.spec.base.half_edges_at(b) {
                if counts.get(&h.0).copied().unwrap_or(0) != d {
                    return false;
                }
            }
        }
        true
    }

    /// Contracts the cover along base edges `f`. The result is rebuilt from
    /// the contracted spec; [`Cover::contract_total`] contracts the total graph
    /// directly for comparison.
    pub fn contract(&self, f: &[usize]) -> Result<Cover> {
        let (spec, _) = self.spec.contract(f)?;
        Ok(Cover::build(&spec))
    }

    /// Contracts the preimage of `f` inside the total graph.
    pub fn contract_total(&self, f: &[usize]) -> Result<Graph> {
        let fset: std::collections::BTreeSet<usize> = f.iter().copied().collect();
        let lifted: Vec<usize> = (0..self.total.num_edges())
            .filter(|e| fset.contains(&self.edge_proj[*e]))
            .collect();
        Ok(self.total.contract(&lifted)?.0)
    }
}
