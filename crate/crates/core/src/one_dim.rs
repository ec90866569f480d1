//! Exact analysis of one-dimensional SFTs through their word graphs.
//!
//! `G_{X,n}` has the admissible words of length `n` as vertices and an edge
//! `w0..w(n-1) -> w1..wn` whenever `w0..wn` is admissible. Once `n` reaches
//! the longest forbidden word minus one, bi-infinite walks of the trimmed
//! graph are exactly the configurations of `X`, so every question below is
//! decided on a finite graph.
//!
//! When the graph has no middle cycle, its strongly connected components are
//! plain cycles and every subsystem is a finite union of cycle and barbell
//! subsystems. A subsystem is then represented by a downward-closed set of
//! those irreducible pieces (a barbell sits above its two cycles).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::{self, Write as _};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::lang::window_language;
use crate::pattern::{Symbol, Window};
use crate::spec::ShiftSpec;

const MAX_BARBELLS: usize = 100_000;
const MAX_ELEMENTS: usize = 1 << 14;

/// Vertices and edges of a word graph, before or after trimming.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGraph {
    pub vertices: Vec<Vec<Symbol>>,
    pub edges: Vec<(usize, usize)>,
}

/// The essential part of `G_{X,n}`; the untrimmed graph is kept alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph1D {
    n: usize,
    vertices: Vec<Vec<Symbol>>,
    edges: Vec<(usize, usize)>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    untrimmed: RawGraph,
}

impl Graph1D {
    /// Builds the essential part of an arbitrary labelled graph.
    pub fn from_edges(n: usize, vertices: Vec<Vec<Symbol>>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let v = vertices.len();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= v || b >= v) {
            return Err(Error::InvalidArgument(format!("edge {a}->{b} names a missing vertex")));
        }
        let untrimmed = RawGraph { vertices, edges };
        let mut edges = untrimmed.edges.clone();
        edges.sort_unstable();
        edges.dedup();
        let mut alive = vec![true; v];
        loop {
            let mut indeg = vec![0usize; v];
            let mut outdeg = vec![0usize; v];
            for &(a, b) in edges.iter().filter(|&&(a, b)| alive[a] && alive[b]) {
                outdeg[a] += 1;
                indeg[b] += 1;
            }
            let mut changed = false;
            for i in 0..v {
                if alive[i] && (indeg[i] == 0 || outdeg[i] == 0) {
                    alive[i] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut remap = vec![usize::MAX; v];
        let mut kept = Vec::new();
        for i in (0..v).filter(|&i| alive[i]) {
            remap[i] = kept.len();
            kept.push(untrimmed.vertices[i].clone());
        }
        let edges: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|&(a, b)| alive[a] && alive[b])
            .map(|(a, b)| (remap[a], remap[b]))
            .collect();
        let mut succ = vec![Vec::new(); kept.len()];
        let mut pred = vec![Vec::new(); kept.len()];
        for &(a, b) in &edges {
            succ[a].push(b);
            pred[b].push(a);
        }
        Ok(Graph1D {
            n,
            vertices: kept,
            edges,
            succ,
            pred,
            untrimmed,
        })
    }

    pub fn word_length(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<Symbol>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn untrimmed(&self) -> &RawGraph {
        &self.untrimmed
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a, b)).is_ok()
    }

    pub fn vertex_index(&self, word: &[Symbol]) -> Option<usize> {
        self.vertices.binary_search_by(|w| w.as_slice().cmp(word)).ok()
    }

    pub fn label(&self, v: usize) -> String {
        fmt_word(&self.vertices[v])
    }

    /// Labels of walks with `k - n` edges, i.e. words of length `k >= n`.
    pub fn words(&self, k: usize) -> BTreeSet<Vec<Symbol>> {
        let mut out = BTreeSet::new();
        if k < self.n {
            for w in &self.vertices {
                out.insert(w[..k].to_vec());
            }
            return out;
        }
        let mut frontier: Vec<(usize, Vec<Symbol>)> =
            (0..self.vertices.len()).map(|v| (v, self.vertices[v].clone())).collect();
        for _ in self.n..k {
            let mut next = Vec::new();
            for (v, w) in frontier {
                for &s in &self.succ[v] {
                    let mut w2 = w.clone();
                    w2.push(*self.vertices[s].last().expect("n >= 1"));
                    next.push((s, w2));
                }
            }
            frontier = next;
        }
        frontier.into_iter().map(|(_, w)| w).collect()
    }

    /// Graphviz digraph of the essential graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for v in 0..self.vertices.len() {
            let _ = writeln!(out, "  v{v} [label=\"{}\"];", self.label(v));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  v{a} -> v{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Digits run together when every symbol is a single digit, else comma-separated.
pub fn fmt_word(w: &[Symbol]) -> String {
    if w.iter().all(|s| (0..10).contains(s)) {
        w.iter().map(|s| s.to_string()).collect()
    } else {
        w.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Smallest word length for which `G_{X,n}` presents `X` exactly.
pub fn exactness_threshold(spec: &ShiftSpec) -> usize {
    spec.diameter().saturating_sub(1).max(1)
}

fn require_1d(spec: &ShiftSpec) -> Result<()> {
    if spec.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: spec.dim(),
        });
    }
    Ok(())
}

pub fn build_graph(spec: &ShiftSpec, n: usize) -> Result<Graph1D> {
    require_1d(spec)?;
    let required = exactness_threshold(spec);
    if n < required {
        return Err(Error::BelowThreshold { n, required });
    }
    let vertices: Vec<Vec<Symbol>> = window_language(spec, &Window::corner(1, n as u32), 0)?
        .rows()
        .to_vec();
    let long = window_language(spec, &Window::corner(1, n as u32 + 1), 0)?;
    let index: HashMap<&[Symbol], usize> =
        vertices.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let edges = long
        .rows()
        .iter()
        .map(|w| (index[&w[..n]], index[&w[1..]]))
        .collect();
    Graph1D::from_edges(n, vertices, edges)
}

/// The SFT `X_G` whose alphabet is the vertex set of `G` (vertices `0..v`).
pub fn spec_from_graph(v: usize, edges: &[(usize, usize)]) -> Result<ShiftSpec> {
    let set: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    let mut words = Vec::new();
    for a in 0..v {
        for b in 0..v {
            if !set.contains(&(a, b)) {
                words.push(vec![a as Symbol, b as Symbol]);
            }
        }
    }
    let refs: Vec<&[Symbol]> = words.iter().map(Vec::as_slice).collect();
    ShiftSpec::forbid_words((0..v as Symbol).collect(), &refs)
}

/// Strongly connected components, sorted by smallest vertex.
struct Components {
    comp: Vec<usize>,
    members: Vec<Vec<usize>>,
    nontrivial: Vec<bool>,
}

impl Components {
    fn new(g: &Graph1D) -> Self {
        let mut dg: DiGraph<(), ()> = DiGraph::new();
        let nodes: Vec<_> = (0..g.vertices.len()).map(|_| dg.add_node(())).collect();
        for &(a, b) in &g.edges {
            dg.add_edge(nodes[a], nodes[b], ());
        }
        let mut members: Vec<Vec<usize>> = tarjan_scc(&dg)
            .into_iter()
            .map(|c| {
                let mut m: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                m.sort_unstable();
                m
            })
            .collect();
        members.sort();
        let mut comp = vec![0; g.vertices.len()];
        for (i, m) in members.iter().enumerate() {
            for &v in m {
                comp[v] = i;
            }
        }
        let nontrivial = members
            .iter()
            .map(|m| m.len() > 1 || g.has_edge(m[0], m[0]))
            .collect();
        Components {
            comp,
            members,
            nontrivial,
        }
    }

    fn internal_edges(&self, g: &Graph1D, c: usize) -> usize {
        g.edges
            .iter()
            .filter(|&&(a, b)| self.comp[a] == c && self.comp[b] == c)
            .count()
    }

    /// A component that is a single chordless cycle.
    fn is_plain_cycle(&self, g: &Graph1D, c: usize) -> bool {
        self.nontrivial[c] && self.internal_edges(g, c) == self.members[c].len()
    }

    /// The vertices of a plain-cycle component in walking order, from the smallest.
    fn cycle_order(&self, g: &Graph1D, c: usize) -> Vec<usize> {
        let start = self.members[c][0];
        let mut cycle = vec![start];
        let mut v = start;
        loop {
            v = *g.succ[v]
                .iter()
                .find(|&&s| self.comp[s] == c)
                .expect("cycle component has an inner successor");
            if v == start {
                return cycle;
            }
            cycle.push(v);
        }
    }
}

/// A cycle with an edge entering it and an edge leaving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleCycle {
    /// Vertices in walking order; the closing edge goes from the last to the first.
    pub cycle: Vec<usize>,
    pub incoming: (usize, usize),
    pub outgoing: (usize, usize),
}

impl MiddleCycle {
    /// Re-checks the certificate against raw edge membership.
    pub fn validate(&self, g: &Graph1D) -> bool {
        let k = self.cycle.len();
        if k == 0 {
            return false;
        }
        let distinct: BTreeSet<usize> = self.cycle.iter().copied().collect();
        if distinct.len() != k {
            return false;
        }
        let closed = (0..k).all(|i| g.has_edge(self.cycle[i], self.cycle[(i + 1) % k]));
        let on = |v: usize| distinct.contains(&v);
        closed
            && g.has_edge(self.incoming.0, self.incoming.1)
            && !on(self.incoming.0)
            && on(self.incoming.1)
            && g.has_edge(self.outgoing.0, self.outgoing.1)
            && on(self.outgoing.0)
            && !on(self.outgoing.1)
    }

    pub fn describe(&self, g: &Graph1D) -> String {
        let cyc: Vec<String> = self.cycle.iter().map(|&v| g.label(v)).collect();
        format!(
            "cycle ({}) entered by {} -> {} and left by {} -> {}",
            cyc.join(" "),
            g.label(self.incoming.0),
            g.label(self.incoming.1),
            g.label(self.outgoing.0),
            g.label(self.outgoing.1)
        )
    }
}

/// Shortest cycle inside one component; ties go to the smallest start vertex.
fn shortest_cycle(g: &Graph1D, comps: &Components, c: usize) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for &s in &comps.members[c] {
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut dist: HashMap<usize, usize> = HashMap::from([(s, 0)]);
        let mut queue = VecDeque::from([s]);
        let mut closing = None;
        while let Some(u) = queue.pop_front() {
            if g.has_edge(u, s) {
                closing = Some(u);
                break;
            }
            for &w in &g.succ[u] {
                if comps.comp[w] == c && !dist.contains_key(&w) {
                    dist.insert(w, dist[&u] + 1);
                    parent.insert(w, u);
                    queue.push_back(w);
                }
            }
        }
        let Some(mut u) = closing else { continue };
        let mut path = vec![u];
        while u != s {
            u = parent[&u];
            path.push(u);
        }
        path.reverse();
        if best.as_ref().is_none_or(|b| path.len() < b.len()) {
            best = Some(path);
        }
    }
    let mut cycle = best.expect("nontrivial component has a cycle");
    let min_pos = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle.rotate_left(min_pos);
    cycle
}

/// Finds a middle cycle by component shape analysis, without listing cycles.
pub fn find_middle_cycle(g: &Graph1D) -> Option<MiddleCycle> {
    let comps = Components::new(g);
    for c in 0..comps.members.len() {
        if !comps.nontrivial[c] {
            continue;
        }
        let cycle = if comps.is_plain_cycle(g, c) {
            comps.cycle_order(g, c)
        } else {
            shortest_cycle(g, &comps, c)
        };
        let on: BTreeSet<usize> = cycle.iter().copied().collect();
        let incoming = g.edges.iter().find(|&&(a, b)| !on.contains(&a) && on.contains(&b));
        let outgoing = g.edges.iter().find(|&&(a, b)| on.contains(&a) && !on.contains(&b));
        if let (Some(&incoming), Some(&outgoing)) = (incoming, outgoing) {
            return Some(MiddleCycle {
                cycle,
                incoming,
                outgoing,
            });
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NmcVerdict {
    /// `G_{X,n}` has no middle cycle from this word length on.
    Holds { from: usize },
    /// Still a middle cycle at the largest word length tried.
    Persists {
        n: usize,
        graph: Box<Graph1D>,
        certificate: MiddleCycle,
    },
}

pub fn has_nmc_property(spec: &ShiftSpec, n_max: usize) -> Result<NmcVerdict> {
    require_1d(spec)?;
    let start = exactness_threshold(spec);
    if n_max < start {
        return Err(Error::BelowThreshold {
            n: n_max,
            required: start,
        });
    }
    let mut last = None;
    for n in start..=n_max {
        let g = build_graph(spec, n)?;
        match find_middle_cycle(&g) {
            None => {
                let next = build_graph(spec, n + 1)?;
                if let Some(mc) = find_middle_cycle(&next) {
                    return Err(Error::Defect(format!(
                        "no middle cycle at n={n} but one at n={}: {}",
                        n + 1,
                        mc.describe(&next)
                    )));
                }
                return Ok(NmcVerdict::Holds { from: n });
            }
            Some(mc) => last = Some((n, g, mc)),
        }
    }
    let (n, g, certificate) = last.expect("at least one word length tried");
    Ok(NmcVerdict::Persists {
        n,
        graph: Box::new(g),
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsolationVerdict {
    Isolated { nmc_from: usize },
    NotIsolated {
        n: usize,
        graph: Box<Graph1D>,
        certificate: MiddleCycle,
    },
}

impl IsolationVerdict {
    pub fn is_isolated(&self) -> bool {
        matches!(self, IsolationVerdict::Isolated { .. })
    }
}

impl fmt::Display for IsolationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsolationVerdict::Isolated { nmc_from } => {
                write!(f, "Isolated (no middle cycle from n={nmc_from})")
            }
            IsolationVerdict::NotIsolated {
                n,
                graph,
                certificate,
            } => write!(f, "NotIsolated (n={n}: {})", certificate.describe(graph)),
        }
    }
}

/// Isolated in the space of 1D shifts iff the no-middle-cycle property holds.
pub fn isolated_verdict_1d(spec: &ShiftSpec, n_max: usize) -> Result<IsolationVerdict> {
    Ok(match has_nmc_property(spec, n_max)? {
        NmcVerdict::Holds { from } => IsolationVerdict::Isolated { nmc_from: from },
        NmcVerdict::Persists {
            n,
            graph,
            certificate,
        } => IsolationVerdict::NotIsolated {
            n,
            graph,
            certificate,
        },
    })
}

/// Cycle or barbell of a graph without middle cycles.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Irreducible {
    /// Vertices in walking order, starting at the smallest.
    Cycle(Vec<usize>),
    /// `from`/`to` index the cycles; `path` runs from a vertex of the first
    /// cycle to a vertex of the second.
    Barbell {
        from: usize,
        path: Vec<usize>,
        to: usize,
    },
}

impl Irreducible {
    pub fn is_cycle(&self) -> bool {
        matches!(self, Irreducible::Cycle(_))
    }
}

fn refuse_middle(g: &Graph1D) -> Result<()> {
    match find_middle_cycle(g) {
        Some(mc) => Err(Error::Refused(format!(
            "graph has a middle cycle, so there are infinitely many subsystems: {}",
            mc.describe(g)
        ))),
        None => Ok(()),
    }
}

pub fn enumerate_irreducibles(g: &Graph1D) -> Result<Vec<Irreducible>> {
    refuse_middle(g)?;
    let comps = Components::new(g);
    let cycle_comps: Vec<usize> = (0..comps.members.len()).filter(|&c| comps.nontrivial[c]).collect();
    let mut cycle_of_comp = vec![None; comps.members.len()];
    let mut out = Vec::new();
    for (i, &c) in cycle_comps.iter().enumerate() {
        cycle_of_comp[c] = Some(i);
        out.push(Irreducible::Cycle(comps.cycle_order(g, c)));
    }

    fn extend(
        g: &Graph1D,
        comps: &Components,
        cycle_of_comp: &[Option<usize>],
        from: usize,
        path: &mut Vec<usize>,
        found: &mut Vec<Irreducible>,
    ) -> Result<()> {
        let v = *path.last().expect("path starts on a cycle");
        for &w in &g.succ[v] {
            if found.len() > MAX_BARBELLS {
                return Err(Error::Refused(format!("more than {MAX_BARBELLS} barbells")));
            }
            match cycle_of_comp[comps.comp[w]] {
                Some(to) if to == from => {}
                Some(to) => {
                    let mut p = path.clone();
                    p.push(w);
                    found.push(Irreducible::Barbell { from, path: p, to });
                }
                None => {
                    path.push(w);
                    extend(g, comps, cycle_of_comp, from, path, found)?;
                    path.pop();
                }
            }
        }
        Ok(())
    }

    let mut barbells = Vec::new();
    for (i, &c) in cycle_comps.iter().enumerate() {
        for &a in &comps.members[c] {
            let mut path = vec![a];
            extend(g, &comps, &cycle_of_comp, i, &mut path, &mut barbells)?;
        }
    }
    barbells.sort_by(|x, y| match (x, y) {
        (
            Irreducible::Barbell { from, path, to },
            Irreducible::Barbell {
                from: f2,
                path: p2,
                to: t2,
            },
        ) => (from, to, path).cmp(&(f2, t2, p2)),
        _ => x.cmp(y),
    });
    barbells.dedup();
    out.extend(barbells);
    Ok(out)
}

/// A subsystem, as a set of irreducible indices closed downward.
pub type Element = BTreeSet<usize>;

/// All nonempty subsystems of an SFT without middle cycles.
#[derive(Clone, Debug)]
pub struct SubsystemLattice {
    graph: Graph1D,
    irreducibles: Vec<Irreducible>,
    below: Vec<Element>,
    elements: Vec<Element>,
}

pub fn subsystem_lattice(g: &Graph1D) -> Result<SubsystemLattice> {
    let irreducibles = enumerate_irreducibles(g)?;
    let below: Vec<Element> = irreducibles
        .iter()
        .enumerate()
        .map(|(i, h)| match h {
            Irreducible::Cycle(_) => BTreeSet::from([i]),
            Irreducible::Barbell { from, to, .. } => BTreeSet::from([i, *from, *to]),
        })
        .collect();
    let mut seen: BTreeSet<Element> = below.iter().cloned().collect();
    let mut work: Vec<Element> = seen.iter().cloned().collect();
    while let Some(e) = work.pop() {
        for gen in &below {
            if gen.is_subset(&e) {
                continue;
            }
            let u: Element = e.union(gen).copied().collect();
            if seen.insert(u.clone()) {
                if seen.len() > MAX_ELEMENTS {
                    return Err(Error::Refused(format!(
                        "subsystem lattice exceeds {MAX_ELEMENTS} elements"
                    )));
                }
                work.push(u);
            }
        }
    }
    let mut elements: Vec<Element> = seen.into_iter().collect();
    elements.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(SubsystemLattice {
        graph: g.clone(),
        irreducibles,
        below,
        elements,
    })
}

impl SubsystemLattice {
    pub fn graph(&self) -> &Graph1D {
        &self.graph
    }

    pub fn irreducibles(&self) -> &[Irreducible] {
        &self.irreducibles
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The whole shift.
    pub fn top(&self) -> Element {
        (0..self.irreducibles.len()).collect()
    }

    /// Smallest element containing the given irreducibles (empty stays empty).
    pub fn downclose<'a>(&self, items: impl IntoIterator<Item = &'a usize>) -> Element {
        items.into_iter().flat_map(|&i| self.below[i].iter().copied()).collect()
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.is_empty() || self.elements.binary_search_by(|x| (x.len(), x).cmp(&(e.len(), e))).is_ok()
    }

    /// Maximal lattice elements strictly inside `e`.
    pub fn maximal_below(&self, e: &Element) -> Vec<Element> {
        let inside: Vec<&Element> = self
            .elements
            .iter()
            .filter(|x| x.len() < e.len() && x.is_subset(e))
            .collect();
        inside
            .iter()
            .filter(|x| !inside.iter().any(|y| y.len() > x.len() && x.is_subset(y)))
            .map(|x| (*x).clone())
            .collect()
    }

    pub fn is_minimal(&self, e: &Element) -> bool {
        !e.is_empty() && self.maximal_below(e).is_empty()
    }

    /// Transitive iff not the union of its proper subsystems.
    pub fn is_transitive(&self, e: &Element) -> bool {
        if e.is_empty() {
            return false;
        }
        let covered: Element = self.maximal_below(e).into_iter().flatten().collect();
        covered != *e
    }

    pub fn element_type(&self, e: &Element) -> usize {
        self.maximal_below(e).len()
    }

    pub fn describe_irreducible(&self, i: usize) -> String {
        let g = &self.graph;
        let walk = |vs: &[usize]| vs.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" ");
        match &self.irreducibles[i] {
            Irreducible::Cycle(c) => format!("{} = cycle ({})", self.name(i), walk(c)),
            Irreducible::Barbell { from, path, to } => format!(
                "{} = barbell {} -[{}]-> {}",
                self.name(i),
                self.name(*from),
                walk(path),
                self.name(*to)
            ),
        }
    }

    /// `C<k>` for the k-th cycle, `B<k>` for the k-th barbell.
    pub fn name(&self, i: usize) -> String {
        let cycles = self.irreducibles.iter().filter(|h| h.is_cycle()).count();
        if i < cycles {
            format!("C{i}")
        } else {
            format!("B{}", i - cycles)
        }
    }

    pub fn describe(&self, e: &Element) -> String {
        let names: Vec<String> = e.iter().map(|&i| self.name(i)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// Maximal proper subsystems, in lattice order.
pub fn maximal_subsystems(lat: &SubsystemLattice) -> Vec<Element> {
    lat.maximal_below(&lat.top())
}

pub fn maximality_type(lat: &SubsystemLattice) -> usize {
    maximal_subsystems(lat).len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCheck {
    pub finite_maximals: bool,
    /// Proper subsystems below no maximal one.
    pub outcasts: Vec<Element>,
}

impl StarCheck {
    pub fn holds(&self) -> bool {
        self.finite_maximals && self.outcasts.is_empty()
    }
}

pub fn star_check(lat: &SubsystemLattice) -> StarCheck {
    let top = lat.top();
    let maximals = maximal_subsystems(lat);
    let outcasts = lat
        .elements()
        .iter()
        .filter(|e| **e != top && !maximals.iter().any(|m| e.is_subset(m)))
        .cloned()
        .collect();
    StarCheck {
        finite_maximals: true,
        outcasts,
    }
}

/// Why a graph presents (or fails to present) a transitive shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transitivity {
    StronglyConnected,
    /// Two recurrent components joined by exactly one path; the point
    /// walking the first component, the path, then the second is dense.
    Chain { path: Vec<usize> },
    NotTransitive(String),
}

impl Transitivity {
    pub fn holds(&self) -> bool {
        !matches!(self, Transitivity::NotTransitive(_))
    }
}

/// Exact for any essential graph: a dense orbit can only linger in its two
/// end components, and must read every edge outside them exactly once.
pub fn is_transitive(g: &Graph1D) -> Transitivity {
    if g.vertices.is_empty() {
        return Transitivity::NotTransitive("empty shift".into());
    }
    let comps = Components::new(g);
    let recurrent: Vec<usize> = (0..comps.members.len()).filter(|&c| comps.nontrivial[c]).collect();
    match recurrent.len() {
        1 if comps.members.len() == 1 => return Transitivity::StronglyConnected,
        2 => {}
        k => {
            return Transitivity::NotTransitive(format!("{k} recurrent components"));
        }
    }
    let outer: Vec<(usize, usize)> = g
        .edges
        .iter()
        .copied()
        .filter(|&(a, b)| comps.comp[a] != comps.comp[b] || !comps.nontrivial[comps.comp[a]])
        .collect();
    let starts: Vec<(usize, usize)> = outer
        .iter()
        .copied()
        .filter(|&(a, _)| comps.nontrivial[comps.comp[a]])
        .collect();
    if starts.len() != 1 {
        return Transitivity::NotTransitive(format!("{} edges leave a recurrent component", starts.len()));
    }
    let mut path = vec![starts[0].0, starts[0].1];
    let mut used = 1;
    while !comps.nontrivial[comps.comp[*path.last().expect("nonempty")]] {
        let v = *path.last().expect("nonempty");
        if g.succ[v].len() != 1 || g.pred[v].len() != 1 {
            return Transitivity::NotTransitive(format!("path branches at {}", g.label(v)));
        }
        path.push(g.succ[v][0]);
        used += 1;
    }
    let (first, last) = (path[0], *path.last().expect("nonempty"));
    if used != outer.len() || comps.comp[first] == comps.comp[last] {
        return Transitivity::NotTransitive("edges outside the recurrent components do not form one path".into());
    }
    Transitivity::Chain { path }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub label: &'static str,
    pub holds: bool,
}

/// `X = K ∪ E` with `T` the closures of complements of maximal subsystems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition1D {
    pub k: Element,
    pub t_list: Vec<Element>,
    pub e: Element,
    pub conditions: Vec<Condition>,
    /// `K ∪ (union of the other T) ∪ M(T)` for each `T`.
    pub reconstructed: Vec<Element>,
    pub maximals: Vec<Element>,
}

impl Decomposition1D {
    pub fn conditions_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn reproduces_maximals(&self) -> bool {
        let a: BTreeSet<&Element> = self.reconstructed.iter().collect();
        let b: BTreeSet<&Element> = self.maximals.iter().collect();
        a == b && self.reconstructed.len() == self.maximals.len()
    }
}

pub fn maximality_decomposition(lat: &SubsystemLattice) -> Decomposition1D {
    let top = lat.top();
    let maximals = maximal_subsystems(lat);
    let t_list: Vec<Element> = maximals
        .iter()
        .map(|z| {
            let rest: Vec<usize> = top.difference(z).copied().collect();
            lat.downclose(&rest)
        })
        .collect();
    let e: Element = t_list.iter().flatten().copied().collect();
    let rest: Vec<usize> = top.difference(&e).copied().collect();
    let k = lat.downclose(&rest);

    let unique_sub = |t: &Element| -> Element {
        let below = lat.maximal_below(t);
        below.into_iter().next().unwrap_or_default()
    };
    let whole_minimal = lat.is_minimal(&top);
    let cond_i = t_list
        .iter()
        .all(|t| lat.is_minimal(t) || (lat.is_transitive(t) && lat.element_type(t) == 1));
    let cond_ii = k.is_empty()
        || (lat.element_type(&k) == 0 && !lat.is_minimal(&k))
        || (whole_minimal && k == top);
    let union: Element = k.union(&e).copied().collect();
    let cond_iii = union == top;
    let cond_iv = t_list
        .iter()
        .enumerate()
        .all(|(i, a)| t_list.iter().enumerate().all(|(j, b)| i == j || !a.is_subset(b)));
    let cond_v = t_list.iter().all(|t| !t.is_subset(&k));
    let conditions = vec![
        Condition { label: "(i) each T minimal or transitive of type 1", holds: cond_i },
        Condition { label: "(ii) K empty or non-minimal of type 0", holds: cond_ii },
        Condition { label: "(iii) X = K ∪ E", holds: cond_iii },
        Condition { label: "(iv) T pairwise incomparable", holds: cond_iv },
        Condition { label: "(v) no T inside K", holds: cond_v },
        Condition { label: "(vi) finitely many T", holds: true },
    ];

    let reconstructed = t_list
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let mut s: Element = k.clone();
            for (j, other) in t_list.iter().enumerate() {
                if j != i {
                    s.extend(other.iter().copied());
                }
            }
            if !lat.is_minimal(t) {
                s.extend(unique_sub(t));
            }
            s
        })
        .collect();
    Decomposition1D {
        k,
        t_list,
        e,
        conditions,
        reconstructed,
        maximals,
    }
}

/// Block-gluing outcome for words of length `2n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gluing {
    /// Every ordered pair joins through connecting words of every length `>= gap`.
    Gap(usize),
    /// This pair is never joined at arbitrarily large separations.
    NotGluing { u: Vec<Symbol>, v: Vec<Symbol> },
}

impl fmt::Display for Gluing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gluing::Gap(g) => write!(f, "{g}"),
            Gluing::NotGluing { u, v } => write!(f, "not gluing ({} then {})", fmt_word(u), fmt_word(v)),
        }
    }
}

/// `g(n)` for `n = 0..=n_max`.
pub fn block_gluing_gap(spec: &ShiftSpec, n_max: usize) -> Result<Vec<(usize, Gluing)>> {
    require_1d(spec)?;
    (0..=n_max).map(|n| Ok((n, gluing_at(spec, n)?))).collect()
}

fn gluing_at(spec: &ShiftSpec, n: usize) -> Result<Gluing> {
    let len = 2 * n + 1;
    let k = exactness_threshold(spec).max(len);
    let g = build_graph(spec, k)?;
    let v = g.vertices.len();
    let mut by_suffix: BTreeMap<&[Symbol], Vec<usize>> = BTreeMap::new();
    let mut by_prefix: BTreeMap<&[Symbol], Vec<bool>> = BTreeMap::new();
    for (i, w) in g.vertices.iter().enumerate() {
        by_suffix.entry(&w[k - len..]).or_default().push(i);
        by_prefix.entry(&w[..len]).or_insert_with(|| vec![false; v])[i] = true;
    }
    let mut worst = 0usize;
    for (u, sources) in &by_suffix {
        // Exact-step reachable sets are eventually periodic.
        let mut steps: Vec<Vec<bool>> = Vec::new();
        let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut cur = vec![false; v];
        for &s in sources {
            cur[s] = true;
        }
        let (pre, period) = loop {
            if let Some(&t0) = seen.get(&cur) {
                break (t0, steps.len() - t0);
            }
            seen.insert(cur.clone(), steps.len());
            let mut next = vec![false; v];
            for a in (0..v).filter(|&a| cur[a]) {
                for &b in &g.succ[a] {
                    next[b] = true;
                }
            }
            steps.push(std::mem::replace(&mut cur, next));
        };
        let tail = pre.max(k);
        for (vw, targets) in &by_prefix {
            let hit = |t: usize| {
                let idx = if t < steps.len() { t } else { pre + (t - pre) % period };
                steps[idx].iter().zip(targets).any(|(a, b)| *a && *b)
            };
            if (tail..tail + period).any(|t| !hit(t)) {
                return Ok(Gluing::NotGluing {
                    u: u.to_vec(),
                    v: vw.to_vec(),
                });
            }
            if let Some(t) = (k..tail).rev().find(|&t| !hit(t)) {
                worst = worst.max(t + 1 - k);
            }
        }
    }
    Ok(Gluing::Gap(worst))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(words: &[&[Symbol]]) -> ShiftSpec {
        ShiftSpec::forbid_words(vec![0, 1], words).unwrap()
    }

    #[test]
    fn golden_mean_graph() {
        let g = build_graph(&spec(&[&[1, 1]]), 1).unwrap();
        assert_eq!(g.vertices(), &[vec![0], vec![1]]);
        assert_eq!(g.edges(), &[(0, 0), (0, 1), (1, 0)]);
    }

    #[test]
    fn threshold_is_enforced() {
        let s = spec(&[&[1, 0, 1]]);
        assert_eq!(build_graph(&s, 1).unwrap_err(), Error::BelowThreshold { n: 1, required: 2 });
        assert!(build_graph(&s, 2).is_ok());
    }

    #[test]
    fn trimming_drops_transient_vertices() {
        // 1 can only be followed by 1 and only preceded by 0: after trimming,
        // the graph keeps the two loops and the edge between them.
        let g = build_graph(&spec(&[&[1, 0]]), 1).unwrap();
        assert_eq!(g.edges(), &[(0, 0), (0, 1), (1, 1)]);
        let g = Graph1D::from_edges(1, vec![vec![0], vec![1], vec![2]], vec![(0, 0), (1, 0)]).unwrap();
        assert_eq!(g.vertices(), &[vec![0]]);
        assert_eq!(g.untrimmed().edges.len(), 2);
    }

    #[test]
    fn middle_cycles() {
        let g = build_graph(&spec(&[&[1, 1]]), 1).unwrap();
        let mc = find_middle_cycle(&g).unwrap();
        assert_eq!(mc, MiddleCycle { cycle: vec![0], incoming: (1, 0), outgoing: (0, 1) });
        assert!(mc.validate(&g));
        assert!(find_middle_cycle(&build_graph(&spec(&[&[1, 0]]), 1).unwrap()).is_none());
    }

    #[test]
    fn gluing_of_simple_shifts() {
        let full = ShiftSpec::full(1, vec![0, 1]).unwrap();
        assert!(block_gluing_gap(&full, 2).unwrap().iter().all(|(_, g)| *g == Gluing::Gap(0)));
        let golden = block_gluing_gap(&spec(&[&[1, 1]]), 3).unwrap();
        assert!(golden.iter().all(|(_, g)| *g == Gluing::Gap(1)), "{golden:?}");
        let one_way = block_gluing_gap(&spec(&[&[1, 0]]), 0).unwrap();
        assert_eq!(one_way[0].1, Gluing::NotGluing { u: vec![1], v: vec![0] });
    }

    #[test]
    fn dot_output() {
        let g = build_graph(&spec(&[&[1, 1]]), 1).unwrap();
        assert_eq!(
            g.to_dot(),
            "digraph G {\n  v0 [label=\"0\"];\n  v1 [label=\"1\"];\n  v0 -> v0;\n  v0 -> v1;\n  v1 -> v0;\n}\n"
        );
    }
}
