//! Self-similar graphs (G, E, σ, φ): finite sourceless graphs, path words,
//! finite-state group elements given by Mealy-style generator machines, the
//! cocycle extension, actions on finite and eventually periodic infinite
//! paths, the word problem via bisimulation, and strongly fixed paths.
//!
//! Paths compose right to left: αβ is defined iff r(β) = s(α), and a path
//! word stores e_1…e_n with e_1 on the range side. Actions consume e_1 first
//! and extensions attach on the source side.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SelfSimError {
    #[error("malformed system: {0}")]
    Malformed(String),
    #[error("bisimulation state cap {0} exceeded; element may not be finite-state")]
    StateCap(usize),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

type Result<T> = std::result::Result<T, SelfSimError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub rng: usize,
}

/// A finite directed graph without sources: every vertex receives an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl DirectedGraph {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(SelfSimError::Malformed("graph has no vertices".into()));
        }
        for e in &self.edges {
            if e.src >= self.vertices.len() || e.rng >= self.vertices.len() {
                return Err(SelfSimError::Malformed(format!(
                    "edge {} has an endpoint out of range",
                    e.id
                )));
            }
        }
        for (v, name) in self.vertices.iter().enumerate() {
            if !self.edges.iter().any(|e| e.rng == v) {
                return Err(SelfSimError::Malformed(format!(
                    "vertex {name} is a source (no incoming edge)"
                )));
            }
        }
        let mut ids: Vec<&str> = self.edges.iter().map(|e| e.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != self.edges.len() {
            return Err(SelfSimError::Malformed("duplicate edge ids".into()));
        }
        Ok(())
    }

    /// Edges e with r(e) = v, the extensions attachable at source vertex v.
    pub fn edges_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.rng == v)
            .map(|(i, _)| i)
    }
}

/// A finite path e_1…e_n with r(e_{k+1}) = s(e_k), or the empty path at a
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathWord {
    pub edges: Vec<usize>,
    /// The range vertex; redundant for nonempty paths, load-bearing for
    /// empty ones.
    pub base: usize,
}

impl PathWord {
    pub fn empty(v: usize) -> Self {
        PathWord {
            edges: Vec::new(),
            base: v,
        }
    }

    pub fn from_edges(graph: &DirectedGraph, edges: Vec<usize>) -> Result<Self> {
        for w in edges.windows(2) {
            if graph.edges[w[1]].rng != graph.edges[w[0]].src {
                return Err(SelfSimError::Malformed(format!(
                    "edges {} and {} do not compose",
                    graph.edges[w[0]].id, graph.edges[w[1]].id
                )));
            }
        }
        let base = edges
            .first()
            .map(|&e| graph.edges[e].rng)
            .unwrap_or(0);
        Ok(PathWord { edges, base })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn rng(&self, graph: &DirectedGraph) -> usize {
        self.edges
            .first()
            .map(|&e| graph.edges[e].rng)
            .unwrap_or(self.base)
    }

    pub fn src(&self, graph: &DirectedGraph) -> usize {
        self.edges
            .last()
            .map(|&e| graph.edges[e].src)
            .unwrap_or(self.base)
    }

    /// Concatenation αβ; requires r(β) = s(α).
    pub fn concat(&self, graph: &DirectedGraph, beta: &PathWord) -> Result<PathWord> {
        if beta.rng(graph) != self.src(graph) {
            return Err(SelfSimError::Domain(
                "paths do not compose: r(β) ≠ s(α)".into(),
            ));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&beta.edges);
        Ok(PathWord {
            edges,
            base: self.rng(graph),
        })
    }

    /// True iff `self` is an initial segment (range side) of `other`. The
    /// empty path at v is a prefix only of paths ranged at v; both sides keep
    /// `base` equal to the range vertex, so no graph lookup is needed.
    pub fn is_prefix_of(&self, other: &PathWord) -> bool {
        if self.edges.is_empty() {
            return self.base == other.base;
        }
        self.edges.len() <= other.edges.len()
            && self.edges[..] == other.edges[..self.edges.len()]
    }

    /// Writes other = self·ε and returns ε, if self is a prefix of other.
    pub fn strip_prefix(&self, graph: &DirectedGraph, other: &PathWord) -> Option<PathWord> {
        if !self.is_prefix_of(other) {
            return None;
        }
        let edges: Vec<usize> = other.edges[self.edges.len()..].to_vec();
        let base = self.src(graph);
        Some(PathWord { edges, base })
    }

    pub fn prefix(&self, graph: &DirectedGraph, len: usize) -> PathWord {
        let edges: Vec<usize> = self.edges[..len].to_vec();
        PathWord {
            edges,
            base: self.rng(graph),
        }
    }

    pub fn display(&self, graph: &DirectedGraph) -> String {
        if self.edges.is_empty() {
            graph.vertices[self.base].clone()
        } else {
            self.edges
                .iter()
                .map(|&e| graph.edges[e].id.clone())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

/// An infinite path prefix·period^∞ in canonical form: the period is
/// primitive and cannot be slid further into the prefix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventuallyPeriodicPath {
    pub prefix: PathWord,
    pub period: PathWord,
}

impl EventuallyPeriodicPath {
    pub fn new(
        graph: &DirectedGraph,
        prefix: PathWord,
        period: PathWord,
    ) -> Result<Self> {
        if period.is_empty() {
            return Err(SelfSimError::Domain("period must be nonempty".into()));
        }
        if period.src(graph) != period.rng(graph) {
            return Err(SelfSimError::Domain(
                "period must return to its range vertex".into(),
            ));
        }
        if period.rng(graph) != prefix.src(graph) {
            return Err(SelfSimError::Domain(
                "period does not attach at the prefix source".into(),
            ));
        }
        let mut xi = EventuallyPeriodicPath { prefix, period };
        xi.canonicalize(graph);
        Ok(xi)
    }

    fn canonicalize(&mut self, graph: &DirectedGraph) {
        // primitive period root
        let c = self.period.len();
        for d in 1..c {
            if c % d == 0 && (0..c).all(|i| self.period.edges[i] == self.period.edges[i % d]) {
                self.period.edges.truncate(d);
                break;
            }
        }
        // slide shared edges from the prefix into a period rotation
        while let (Some(&pl), Some(&ql)) =
            (self.prefix.edges.last(), self.period.edges.last())
        {
            if pl != ql {
                break;
            }
            self.prefix.edges.pop();
            let last = self.period.edges.pop().unwrap();
            self.period.edges.insert(0, last);
        }
        self.period.base = self.period.rng(graph);
        self.prefix.base = self.prefix.rng(graph);
        if self.prefix.is_empty() {
            self.prefix.base = self.period.rng(graph);
        }
    }

    /// The range vertex of the infinite path.
    pub fn rng(&self, graph: &DirectedGraph) -> usize {
        self.prefix.rng(graph)
    }

    /// The first n edges of the infinite path.
    pub fn prefix_of_length(&self, graph: &DirectedGraph, n: usize) -> PathWord {
        let mut edges = Vec::with_capacity(n);
        edges.extend_from_slice(&self.prefix.edges[..n.min(self.prefix.len())]);
        let mut i = 0usize;
        while edges.len() < n {
            edges.push(self.period.edges[i % self.period.len()]);
            i += 1;
        }
        PathWord {
            edges,
            base: self.rng(graph),
        }
    }

    /// Drops the first n edges.
    pub fn shift(&self, graph: &DirectedGraph, n: usize) -> EventuallyPeriodicPath {
        if n <= self.prefix.len() {
            let edges = self.prefix.edges[n..].to_vec();
            let base = edges
                .first()
                .map(|&e| graph.edges[e].rng)
                .unwrap_or_else(|| self.prefix.src(graph));
            let prefix = PathWord { edges, base };
            EventuallyPeriodicPath::new(graph, prefix, self.period.clone()).unwrap()
        } else {
            let k = (n - self.prefix.len()) % self.period.len();
            let mut period = self.period.edges[k..].to_vec();
            period.extend_from_slice(&self.period.edges[..k]);
            let period = PathWord::from_edges(graph, period).unwrap();
            let prefix = PathWord::empty(period.rng(graph));
            EventuallyPeriodicPath::new(graph, prefix, period).unwrap()
        }
    }

    pub fn display(&self, graph: &DirectedGraph) -> String {
        let period = self
            .period
            .edges
            .iter()
            .map(|&e| graph.edges[e].id.clone())
            .collect::<Vec<_>>()
            .join(",");
        if self.prefix.is_empty() {
            format!("({period})*")
        } else {
            format!("{},({period})*", self.prefix.display(graph))
        }
    }
}

/// One letter of a group word: a generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum WordRep {
    /// g^k over the lone generator of a single-generator system.
    Power(BigInt),
    /// Freely reduced word over the generator alphabet.
    Letters(Vec<Letter>),
}

/// A group element as a word over generators. Structural equality is only
/// free reduction; semantic equality is `SelfSimilarSystem::equal`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElementWord {
    rep: WordRep,
}

fn reduce(mut letters: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters.drain(..) {
        match out.last() {
            Some(&t) if t.gen == l.gen && t.inverse != l.inverse => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

impl GroupElementWord {
    pub fn identity_letters() -> Self {
        GroupElementWord {
            rep: WordRep::Letters(Vec::new()),
        }
    }

    pub fn power(k: BigInt) -> Self {
        GroupElementWord {
            rep: WordRep::Power(k),
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        GroupElementWord {
            rep: WordRep::Letters(reduce(letters)),
        }
    }

    pub fn generator(gen: usize) -> Self {
        GroupElementWord {
            rep: WordRep::Letters(vec![Letter {
                gen,
                inverse: false,
            }]),
        }
    }

    pub fn is_structural_identity(&self) -> bool {
        match &self.rep {
            WordRep::Power(k) => k.is_zero(),
            WordRep::Letters(ls) => ls.is_empty(),
        }
    }

    /// Exponent sum, treating every letter as a power of one generator.
    fn exponent(&self) -> BigInt {
        match &self.rep {
            WordRep::Power(k) => k.clone(),
            WordRep::Letters(ls) => ls
                .iter()
                .map(|l| if l.inverse { -1 } else { 1 })
                .sum::<i64>()
                .into(),
        }
    }

    pub fn concat(&self, other: &GroupElementWord) -> GroupElementWord {
        match (&self.rep, &other.rep) {
            (WordRep::Letters(a), WordRep::Letters(b)) => {
                let mut ls = a.clone();
                ls.extend_from_slice(b);
                GroupElementWord::from_letters(ls)
            }
            _ => GroupElementWord::power(self.exponent() + other.exponent()),
        }
    }

    pub fn inverse(&self) -> GroupElementWord {
        match &self.rep {
            WordRep::Power(k) => GroupElementWord::power(-k),
            WordRep::Letters(ls) => GroupElementWord {
                rep: WordRep::Letters(
                    ls.iter()
                        .rev()
                        .map(|l| Letter {
                            gen: l.gen,
                            inverse: !l.inverse,
                        })
                        .collect(),
                ),
            },
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        match &self.rep {
            WordRep::Power(k) => {
                let name = names.first().map(|s| s.as_str()).unwrap_or("g");
                if k.is_zero() {
                    "1".into()
                } else if *k == BigInt::from(1) {
                    name.into()
                } else {
                    format!("{name}^{k}")
                }
            }
            WordRep::Letters(ls) => {
                if ls.is_empty() {
                    return "1".into();
                }
                let mut parts: Vec<String> = Vec::new();
                let mut i = 0;
                while i < ls.len() {
                    let mut j = i;
                    while j < ls.len() && ls[j] == ls[i] {
                        j += 1;
                    }
                    let name = &names[ls[i].gen];
                    let count = (j - i) as i64 * if ls[i].inverse { -1 } else { 1 };
                    parts.push(if count == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{count}")
                    });
                    i = j;
                }
                parts.join("*")
            }
        }
    }

    /// Best effort display without a system at hand.
    pub fn display(&self) -> String {
        self.display_with(&[])
    }
}

#[derive(Debug, Clone)]
pub struct MealyGenerator {
    pub name: String,
    /// Permutation of the vertices.
    pub vertex_action: Vec<usize>,
    /// Bijection of the edges, respecting endpoints.
    pub edge_action: Vec<usize>,
    /// Section word per edge: φ(g, e) over the generator alphabet.
    pub cocycle: Vec<GroupElementWord>,
    vertex_action_inv: Vec<usize>,
    edge_action_inv: Vec<usize>,
}

impl MealyGenerator {
    pub fn new(
        name: String,
        vertex_action: Vec<usize>,
        edge_action: Vec<usize>,
        cocycle: Vec<GroupElementWord>,
    ) -> Self {
        MealyGenerator {
            name,
            vertex_action,
            edge_action,
            cocycle,
            vertex_action_inv: Vec::new(),
            edge_action_inv: Vec::new(),
        }
    }
}

fn invert_permutation(p: &[usize], what: &str) -> Result<Vec<usize>> {
    let mut inv = vec![usize::MAX; p.len()];
    for (i, &j) in p.iter().enumerate() {
        if j >= p.len() || inv[j] != usize::MAX {
            return Err(SelfSimError::Malformed(format!(
                "{what} is not a bijection"
            )));
        }
        inv[j] = i;
    }
    Ok(inv)
}

/// Per-edge cycle data for the single-generator fast path: the orbit of each
/// edge under g, with cocycle exponents along the orbit.
#[derive(Debug, Clone)]
struct SingleGenTables {
    /// Per edge: (cycle index, position in cycle).
    edge_pos: Vec<(usize, usize)>,
    cycles: Vec<EdgeCycle>,
    /// Per vertex: orbit under the vertex action, starting at that vertex.
    vertex_orbits: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
struct EdgeCycle {
    edges: Vec<usize>,
    /// prefix[j] = Σ of cocycle exponents over the first j steps.
    prefix: Vec<BigInt>,
    total: BigInt,
}

impl EdgeCycle {
    /// Sum of cocycle exponents over `steps ≥ 0` steps starting at position
    /// `pos`.
    fn walk_sum(&self, pos: usize, steps: &BigInt) -> BigInt {
        let c = self.edges.len();
        let (q, r) = steps.div_mod_floor(&BigInt::from(c));
        let r = r.to_usize().unwrap();
        let partial = if pos + r <= c {
            &self.prefix[pos + r] - &self.prefix[pos]
        } else {
            &self.total - &self.prefix[pos] + &self.prefix[pos + r - c]
        };
        q * &self.total + partial
    }
}

/// An immutable self-similar graph system.
#[derive(Debug, Clone)]
pub struct SelfSimilarSystem {
    pub name: String,
    pub graph: DirectedGraph,
    pub generators: Vec<MealyGenerator>,
    /// Bisimulation explorations give up past this many reachable sections.
    pub state_cap: usize,
    single_gen: Option<SingleGenTables>,
}

pub const DEFAULT_STATE_CAP: usize = 4096;

impl SelfSimilarSystem {
    pub fn new(
        name: String,
        graph: DirectedGraph,
        mut generators: Vec<MealyGenerator>,
    ) -> Result<Arc<Self>> {
        graph.validate()?;
        let nv = graph.vertices.len();
        let ne = graph.edges.len();
        for g in &mut generators {
            if g.vertex_action.len() != nv || g.edge_action.len() != ne {
                return Err(SelfSimError::Malformed(format!(
                    "generator {} has action tables of the wrong size",
                    g.name
                )));
            }
            g.vertex_action_inv =
                invert_permutation(&g.vertex_action, &format!("{} vertex action", g.name))?;
            g.edge_action_inv =
                invert_permutation(&g.edge_action, &format!("{} edge action", g.name))?;
            if g.cocycle.len() != ne {
                return Err(SelfSimError::Malformed(format!(
                    "generator {} is missing cocycle entries",
                    g.name
                )));
            }
            for (e, edge) in graph.edges.iter().enumerate() {
                let img = &graph.edges[g.edge_action[e]];
                if img.src != g.vertex_action[edge.src] || img.rng != g.vertex_action[edge.rng] {
                    return Err(SelfSimError::Malformed(format!(
                        "generator {} does not respect endpoints on edge {}",
                        g.name, edge.id
                    )));
                }
            }
        }
        let gen_count = generators.len();
        for g in &generators {
            for w in &g.cocycle {
                if let WordRep::Letters(ls) = &w.rep {
                    if ls.iter().any(|l| l.gen >= gen_count) {
                        return Err(SelfSimError::Malformed(format!(
                            "cocycle of {} mentions an unknown generator",
                            g.name
                        )));
                    }
                }
            }
        }
        let single_gen = if gen_count == 1 {
            Some(Self::build_single_gen_tables(&graph, &generators[0]))
        } else {
            None
        };
        Ok(Arc::new(SelfSimilarSystem {
            name,
            graph,
            generators,
            state_cap: DEFAULT_STATE_CAP,
            single_gen,
        }))
    }

    fn build_single_gen_tables(graph: &DirectedGraph, g: &MealyGenerator) -> SingleGenTables {
        let ne = graph.edges.len();
        let mut edge_pos = vec![(usize::MAX, usize::MAX); ne];
        let mut cycles = Vec::new();
        for start in 0..ne {
            if edge_pos[start].0 != usize::MAX {
                continue;
            }
            let mut edges = Vec::new();
            let mut e = start;
            loop {
                edge_pos[e] = (cycles.len(), edges.len());
                edges.push(e);
                e = g.edge_action[e];
                if e == start {
                    break;
                }
            }
            let mut prefix = vec![BigInt::zero()];
            for &ce in &edges {
                let d = g.cocycle[ce].exponent();
                prefix.push(prefix.last().unwrap() + d);
            }
            let total = prefix.last().unwrap().clone();
            cycles.push(EdgeCycle {
                edges,
                prefix,
                total,
            });
        }
        let vertex_orbits = (0..graph.vertices.len())
            .map(|start| {
                let mut orbit = vec![start];
                let mut v = g.vertex_action[start];
                while v != start {
                    orbit.push(v);
                    v = g.vertex_action[v];
                }
                orbit
            })
            .collect();
        SingleGenTables {
            edge_pos,
            cycles,
            vertex_orbits,
        }
    }

    pub fn with_state_cap(self: &Arc<Self>, cap: usize) -> Arc<Self> {
        let mut s = (**self).clone();
        s.state_cap = cap;
        Arc::new(s)
    }

    pub fn identity(&self) -> GroupElementWord {
        if self.single_gen.is_some() {
            GroupElementWord::power(BigInt::zero())
        } else {
            GroupElementWord::identity_letters()
        }
    }

    pub fn generator_word(&self, name: &str) -> Option<GroupElementWord> {
        let i = self.generators.iter().position(|g| g.name == name)?;
        Some(if self.single_gen.is_some() {
            GroupElementWord::power(BigInt::from(1))
        } else {
            GroupElementWord::generator(i)
        })
    }

    pub fn display_element(&self, g: &GroupElementWord) -> String {
        let names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        g.display_with(&names)
    }

    /// g.v via the vertex action.
    pub fn act_on_vertex(&self, g: &GroupElementWord, v: usize) -> usize {
        match &g.rep {
            WordRep::Power(k) => {
                let orbit = &self.single_gen.as_ref().unwrap().vertex_orbits[v];
                let r = k.mod_floor(&BigInt::from(orbit.len())).to_usize().unwrap();
                // the orbit is stored starting at v, so step r lands here
                let mut w = v;
                for _ in 0..r {
                    w = self.generators[0].vertex_action[w];
                }
                w
            }
            WordRep::Letters(ls) => {
                let mut w = v;
                for l in ls.iter().rev() {
                    let gen = &self.generators[l.gen];
                    w = if l.inverse {
                        gen.vertex_action_inv[w]
                    } else {
                        gen.vertex_action[w]
                    };
                }
                w
            }
        }
    }

    /// (g.e, φ(g, e)) for a single edge.
    pub fn act_on_edge(&self, g: &GroupElementWord, e: usize) -> (usize, GroupElementWord) {
        match &g.rep {
            WordRep::Power(k) => {
                let tables = self.single_gen.as_ref().unwrap();
                let (ci, pos) = tables.edge_pos[e];
                let cycle = &tables.cycles[ci];
                let c = cycle.edges.len();
                let r = (BigInt::from(pos) + k)
                    .mod_floor(&BigInt::from(c))
                    .to_usize()
                    .unwrap();
                let image = cycle.edges[r];
                let exp = if k.is_negative() {
                    -cycle.walk_sum(r, &-k)
                } else {
                    cycle.walk_sum(pos, k)
                };
                (image, GroupElementWord::power(exp))
            }
            WordRep::Letters(ls) => {
                let mut edge = e;
                let mut section: Vec<Letter> = Vec::new();
                // rightmost letter acts first; φ(gh, e) = φ(g, h.e) φ(h, e)
                for l in ls.iter().rev() {
                    let gen = &self.generators[l.gen];
                    let sec = if l.inverse {
                        let pre = gen.edge_action_inv[edge];
                        let s = gen.cocycle[pre].inverse();
                        edge = pre;
                        s
                    } else {
                        let s = gen.cocycle[edge].clone();
                        edge = gen.edge_action[edge];
                        s
                    };
                    if let WordRep::Letters(sl) = &sec.rep {
                        let mut next = sl.clone();
                        next.extend_from_slice(&section);
                        section = next;
                    }
                }
                (edge, GroupElementWord::from_letters(section))
            }
        }
    }

    /// (g.α, φ(g, α)) by threading: consume e_1 first, replace g by its
    /// section, recurse.
    pub fn act_with_cocycle(
        &self,
        g: &GroupElementWord,
        alpha: &PathWord,
    ) -> (PathWord, GroupElementWord) {
        let mut cur = g.clone();
        let mut edges = Vec::with_capacity(alpha.len());
        for &e in &alpha.edges {
            let (img, sec) = self.act_on_edge(&cur, e);
            edges.push(img);
            cur = sec;
        }
        let base = self.act_on_vertex(g, alpha.rng(&self.graph));
        (PathWord { edges, base }, cur)
    }

    pub fn act_on_path(&self, g: &GroupElementWord, alpha: &PathWord) -> PathWord {
        self.act_with_cocycle(g, alpha).0
    }

    /// φ(g, α), with φ(g, v) = g.
    pub fn cocycle(&self, g: &GroupElementWord, alpha: &PathWord) -> GroupElementWord {
        self.act_with_cocycle(g, alpha).1
    }

    /// g.ξ for an eventually periodic ξ, by threading until the section at a
    /// period boundary repeats.
    pub fn act_on_infinite(
        &self,
        g: &GroupElementWord,
        xi: &EventuallyPeriodicPath,
    ) -> Result<EventuallyPeriodicPath> {
        let (prefix_img, mut cur) = self.act_with_cocycle(g, &xi.prefix);
        let mut seen: BTreeMap<GroupElementWord, usize> = BTreeMap::new();
        let mut chunks: Vec<Vec<usize>> = Vec::new();
        loop {
            if let Some(&i) = seen.get(&cur) {
                let mut pre_edges = prefix_img.edges.clone();
                for chunk in &chunks[..i] {
                    pre_edges.extend_from_slice(chunk);
                }
                let mut per_edges = Vec::new();
                for chunk in &chunks[i..] {
                    per_edges.extend_from_slice(chunk);
                }
                let prefix = PathWord {
                    base: prefix_img.base,
                    edges: pre_edges,
                };
                let period = PathWord::from_edges(&self.graph, per_edges)?;
                return EventuallyPeriodicPath::new(&self.graph, prefix, period);
            }
            if seen.len() >= self.state_cap {
                return Err(SelfSimError::StateCap(self.state_cap));
            }
            seen.insert(cur.clone(), chunks.len());
            let (img, sec) = self.act_with_cocycle(&cur, &xi.period);
            chunks.push(img.edges);
            cur = sec;
        }
    }

    /// True iff g acts trivially on every finite path, by bisimulation over
    /// reachable sections.
    pub fn is_identity(&self, g: &GroupElementWord) -> Result<bool> {
        let mut seen: std::collections::BTreeSet<GroupElementWord> =
            std::collections::BTreeSet::new();
        let mut queue = vec![g.clone()];
        while let Some(cur) = queue.pop() {
            if !seen.insert(cur.clone()) {
                continue;
            }
            if seen.len() > self.state_cap {
                return Err(SelfSimError::StateCap(self.state_cap));
            }
            for v in 0..self.graph.vertices.len() {
                if self.act_on_vertex(&cur, v) != v {
                    return Ok(false);
                }
            }
            for e in 0..self.graph.edges.len() {
                let (img, sec) = self.act_on_edge(&cur, e);
                if img != e {
                    return Ok(false);
                }
                if !sec.is_structural_identity() {
                    queue.push(sec);
                }
            }
        }
        Ok(true)
    }

    /// Semantic equality of words: g = h iff g·h⁻¹ acts trivially.
    pub fn equal(&self, g: &GroupElementWord, h: &GroupElementWord) -> Result<bool> {
        self.is_identity(&g.concat(&h.inverse()))
    }

    /// g.α = α and φ(g, α) = 1.
    pub fn strongly_fixed(&self, g: &GroupElementWord, alpha: &PathWord) -> Result<bool> {
        let (img, sec) = self.act_with_cocycle(g, alpha);
        if img != *alpha {
            return Ok(false);
        }
        self.is_identity(&sec)
    }

    /// All strongly fixed paths of length ≤ depth with no strongly fixed
    /// proper prefix, in length-lexicographic order.
    pub fn minimal_strongly_fixed(
        &self,
        g: &GroupElementWord,
        depth: usize,
    ) -> Result<Vec<PathWord>> {
        if self.is_identity(g)? {
            return Err(SelfSimError::Domain(
                "minimal strongly fixed paths are undefined for the identity".into(),
            ));
        }
        let mut found = Vec::new();
        // frontier of fixed paths with their sections; extensions attach on
        // the source side, so tree ancestors are exactly the proper prefixes
        let mut frontier: Vec<(PathWord, GroupElementWord)> = (0..self.graph.vertices.len())
            .filter(|&v| self.act_on_vertex(g, v) == v)
            .map(|v| (PathWord::empty(v), g.clone()))
            .collect();
        for _ in 0..depth {
            let mut next = Vec::new();
            for (path, sec) in frontier {
                let sv = path.src(&self.graph);
                for e in self.graph.edges_into(sv) {
                    let (img, child_sec) = self.act_on_edge(&sec, e);
                    if img != e {
                        continue;
                    }
                    let mut edges = path.edges.clone();
                    edges.push(e);
                    let child = PathWord {
                        edges,
                        base: path.rng(&self.graph),
                    };
                    if self.is_identity(&child_sec)? {
                        found.push(child);
                    } else {
                        next.push((child, child_sec));
                    }
                }
            }
            frontier = next;
        }
        Ok(found)
    }

    /// The members of {g, h, gh, ...} of word length ≤ radius over all
    /// generators and inverses, excluding words structurally equal to ones
    /// already listed. Used by probes that scan a word ball.
    pub fn word_ball(&self, radius: usize) -> Vec<GroupElementWord> {
        let mut letters: Vec<GroupElementWord> = Vec::new();
        for (i, _) in self.generators.iter().enumerate() {
            if self.single_gen.is_some() {
                letters.push(GroupElementWord::power(BigInt::from(1)));
                letters.push(GroupElementWord::power(BigInt::from(-1)));
            } else {
                letters.push(GroupElementWord::generator(i));
                letters.push(GroupElementWord::from_letters(vec![Letter {
                    gen: i,
                    inverse: true,
                }]));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut frontier = vec![self.identity()];
        seen.insert(self.identity());
        let mut out = Vec::new();
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                for l in &letters {
                    let cand = w.concat(l);
                    if seen.insert(cand.clone()) {
                        out.push(cand.clone());
                        next.push(cand);
                    }
                }
            }
            frontier = next;
        }
        out
    }
}

// ---------------------------------------------------------------------------
// parsing

/// Parses a path literal: comma-separated edge ids, or a vertex name for the
/// empty path.
pub fn parse_path(sys: &SelfSimilarSystem, text: &str) -> Result<PathWord> {
    let text = text.trim();
    if let Some(v) = sys.graph.vertex_index(text) {
        return Ok(PathWord::empty(v));
    }
    let mut edges = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        let e = sys
            .graph
            .edge_index(tok)
            .ok_or_else(|| SelfSimError::Parse(format!("unknown edge or vertex '{tok}'")))?;
        edges.push(e);
    }
    PathWord::from_edges(&sys.graph, edges)
}

/// Parses an eventually periodic path literal `prefix,(period)*`, e.g.
/// `e0,(e1)*` or `(e1)*`. The bare form `e1*` is shorthand for `(e1)*`.
pub fn parse_xi(sys: &SelfSimilarSystem, text: &str) -> Result<EventuallyPeriodicPath> {
    let text = text.trim();
    let Some(open) = text.find('(') else {
        let body = text
            .strip_suffix('*')
            .ok_or_else(|| SelfSimError::Parse("expected '(period)*' part".into()))?;
        let period = parse_path(sys, body)?;
        if period.is_empty() {
            return Err(SelfSimError::Parse("period must be nonempty".into()));
        }
        let prefix = PathWord::empty(period.rng(&sys.graph));
        return EventuallyPeriodicPath::new(&sys.graph, prefix, period);
    };
    if !text.ends_with(")*") {
        return Err(SelfSimError::Parse("literal must end with ')*'".into()));
    }
    let period_part = &text[open + 1..text.len() - 2];
    let prefix_part = text[..open].trim_end_matches(',').trim();
    let period = parse_path(sys, period_part)?;
    if period.is_empty() {
        return Err(SelfSimError::Parse("period must be nonempty".into()));
    }
    let prefix = if prefix_part.is_empty() {
        PathWord::empty(period.rng(&sys.graph))
    } else {
        parse_path(sys, prefix_part)?
    };
    EventuallyPeriodicPath::new(&sys.graph, prefix, period)
}

/// Parses a group word literal: factors separated by `*`, each `name` or
/// `name^k` with integer k, e.g. `a*b^-1*a^2`; `1` is the identity.
pub fn parse_element(sys: &SelfSimilarSystem, text: &str) -> Result<GroupElementWord> {
    let text = text.trim();
    if text == "1" {
        return Ok(sys.identity());
    }
    let mut word = sys.identity();
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let k: BigInt = e
                    .trim()
                    .parse()
                    .map_err(|_| SelfSimError::Parse(format!("bad exponent '{e}'")))?;
                (n.trim(), k)
            }
            None => (factor, BigInt::from(1)),
        };
        let gen = sys
            .generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| SelfSimError::Parse(format!("unknown generator '{name}'")))?;
        if sys.single_gen.is_some() {
            word = word.concat(&GroupElementWord::power(exp));
        } else {
            let reps = exp
                .abs()
                .to_usize()
                .filter(|&r| r <= 1 << 20)
                .ok_or_else(|| {
                    SelfSimError::Parse("exponent too large for a multi-generator word".into())
                })?;
            let letter = Letter {
                gen,
                inverse: exp.is_negative(),
            };
            word = word.concat(&GroupElementWord::from_letters(vec![letter; reps]));
        }
    }
    Ok(word)
}

// ---------------------------------------------------------------------------
// built-in systems and JSON loading

fn letters_of(names: &[&str], word: &[(usize, bool)]) -> GroupElementWord {
    let _ = names;
    GroupElementWord::from_letters(
        word.iter()
            .map(|&(gen, inverse)| Letter { gen, inverse })
            .collect(),
    )
}

/// The binary odometer: one vertex, edges e0 and e1, generator a with
/// a.e0 = e1, φ(a,e0) = 1 and a.e1 = e0, φ(a,e1) = a.
pub fn odometer() -> Arc<SelfSimilarSystem> {
    let graph = DirectedGraph {
        vertices: vec!["v".into()],
        edges: vec![
            Edge {
                id: "e0".into(),
                src: 0,
                rng: 0,
            },
            Edge {
                id: "e1".into(),
                src: 0,
                rng: 0,
            },
        ],
    };
    let a = MealyGenerator::new(
        "a".into(),
        vec![0],
        vec![1, 0],
        vec![letters_of(&["a"], &[]), letters_of(&["a"], &[(0, false)])],
    );
    SelfSimilarSystem::new("odometer".into(), graph, vec![a]).unwrap()
}

/// The Grigorchuk machine on the binary tree: a swaps e0 and e1 with trivial
/// sections; b, c, d fix both edges with sections (a,c), (a,d), (1,b).
pub fn grigorchuk() -> Arc<SelfSimilarSystem> {
    let graph = DirectedGraph {
        vertices: vec!["v".into()],
        edges: vec![
            Edge {
                id: "e0".into(),
                src: 0,
                rng: 0,
            },
            Edge {
                id: "e1".into(),
                src: 0,
                rng: 0,
            },
        ],
    };
    let names = ["a", "b", "c", "d"];
    let gens = vec![
        MealyGenerator::new(
            "a".into(),
            vec![0],
            vec![1, 0],
            vec![letters_of(&names, &[]), letters_of(&names, &[])],
        ),
        MealyGenerator::new(
            "b".into(),
            vec![0],
            vec![0, 1],
            vec![
                letters_of(&names, &[(0, false)]),
                letters_of(&names, &[(2, false)]),
            ],
        ),
        MealyGenerator::new(
            "c".into(),
            vec![0],
            vec![0, 1],
            vec![
                letters_of(&names, &[(0, false)]),
                letters_of(&names, &[(3, false)]),
            ],
        ),
        MealyGenerator::new(
            "d".into(),
            vec![0],
            vec![0, 1],
            vec![letters_of(&names, &[]), letters_of(&names, &[(1, false)])],
        ),
    ];
    SelfSimilarSystem::new("grigorchuk".into(), graph, gens).unwrap()
}

/// The 3×3 instance used throughout, with edge set {e11_0, e11_1, e12, e13,
/// e21, e22_0, e22_1, e23, e32, e33_0, e33_1}:
/// A = [[2,1,1],[1,2,1],[0,1,2]], B = [[1,2,0],[2,1,2],[0,2,1]].
pub fn katsura_default_matrices() -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    (
        vec![vec![2, 1, 1], vec![1, 2, 1], vec![0, 1, 2]],
        vec![vec![1, 2, 0], vec![2, 1, 2], vec![0, 2, 1]],
    )
}

/// A Katsura system from matrices A, B: vertices v_i, edges e_ij^k for
/// 0 ≤ k < a_ij with r = v_i and s = v_j, action and cocycle by division
/// with remainder: k + b_ij = q·a_ij + r gives g.e_ij^k = e_ij^r and
/// φ(g, e_ij^k) = g^q.
pub fn katsura(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Arc<SelfSimilarSystem>> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) || b.len() != n || b.iter().any(|r| r.len() != n)
    {
        return Err(SelfSimError::Malformed(
            "A and B must be square matrices of the same size".into(),
        ));
    }
    for i in 0..n {
        if a[i].iter().all(|&x| x == 0) {
            return Err(SelfSimError::Malformed(format!(
                "row {} of A is zero (vertex v{} would be a source)",
                i + 1,
                i + 1
            )));
        }
        for j in 0..n {
            if a[i][j] < 0 {
                return Err(SelfSimError::Malformed(format!(
                    "a_{}{} is negative",
                    i + 1,
                    j + 1
                )));
            }
            if a[i][j] == 0 && b[i][j] != 0 {
                return Err(SelfSimError::Malformed(format!(
                    "a_{}{} = 0 requires b_{}{} = 0",
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut slots: Vec<(usize, usize, i64)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..a[i][j] {
                let id = if a[i][j] == 1 {
                    format!("e{}{}", i + 1, j + 1)
                } else {
                    format!("e{}{}_{}", i + 1, j + 1, k)
                };
                edges.push(Edge {
                    id,
                    src: j,
                    rng: i,
                });
                slots.push((i, j, k));
            }
        }
    }
    let graph = DirectedGraph { vertices, edges };
    let mut edge_action = Vec::with_capacity(slots.len());
    let mut cocycle = Vec::with_capacity(slots.len());
    let index_of = |i: usize, j: usize, k: i64| -> usize {
        slots
            .iter()
            .position(|&(si, sj, sk)| si == i && sj == j && sk == k)
            .unwrap()
    };
    for &(i, j, k) in &slots {
        let (q, r) = (k + b[i][j]).div_mod_floor(&a[i][j]);
        edge_action.push(index_of(i, j, r));
        cocycle.push(GroupElementWord::power(BigInt::from(q)));
    }
    let g = MealyGenerator::new("g".into(), (0..n).collect(), edge_action, cocycle);
    SelfSimilarSystem::new("katsura".into(), graph, vec![g])
}

pub fn builtin_system(name: &str) -> Result<Arc<SelfSimilarSystem>> {
    match name {
        "odometer" => Ok(odometer()),
        "grigorchuk" => Ok(grigorchuk()),
        "katsura" => {
            let (a, b) = katsura_default_matrices();
            katsura(&a, &b)
        }
        other => Err(SelfSimError::Parse(format!("unknown builtin '{other}'"))),
    }
}

#[derive(Deserialize)]
struct SystemJson {
    graph: GraphJson,
    generators: Vec<GeneratorJson>,
}

#[derive(Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

#[derive(Deserialize)]
struct EdgeJson {
    id: String,
    src: String,
    rng: String,
}

#[derive(Deserialize)]
struct GeneratorJson {
    name: String,
    #[serde(rename = "vertexAction")]
    vertex_action: BTreeMap<String, String>,
    #[serde(rename = "edgeAction")]
    edge_action: BTreeMap<String, String>,
    cocycle: BTreeMap<String, Vec<String>>,
}

/// Loads a system from its JSON file format.
pub fn system_from_json(name: &str, text: &str) -> Result<Arc<SelfSimilarSystem>> {
    let raw: SystemJson =
        serde_json::from_str(text).map_err(|e| SelfSimError::Parse(e.to_string()))?;
    let vertices = raw.graph.vertices.clone();
    let vidx = |n: &str| -> Result<usize> {
        vertices
            .iter()
            .position(|v| v == n)
            .ok_or_else(|| SelfSimError::Parse(format!("unknown vertex '{n}'")))
    };
    let mut edges = Vec::new();
    for e in &raw.graph.edges {
        edges.push(Edge {
            id: e.id.clone(),
            src: vidx(&e.src)?,
            rng: vidx(&e.rng)?,
        });
    }
    let graph = DirectedGraph {
        vertices: vertices.clone(),
        edges,
    };
    let eidx = |n: &str| -> Result<usize> {
        graph
            .edge_index(n)
            .ok_or_else(|| SelfSimError::Parse(format!("unknown edge '{n}'")))
    };
    let gen_names: Vec<String> = raw.generators.iter().map(|g| g.name.clone()).collect();
    let gidx = |n: &str| -> Result<usize> {
        gen_names
            .iter()
            .position(|g| g == n)
            .ok_or_else(|| SelfSimError::Parse(format!("unknown generator '{n}'")))
    };
    let mut generators = Vec::new();
    for g in &raw.generators {
        let mut vertex_action = vec![usize::MAX; graph.vertices.len()];
        for (from, to) in &g.vertex_action {
            vertex_action[vidx(from)?] = vidx(to)?;
        }
        if vertex_action.contains(&usize::MAX) {
            return Err(SelfSimError::Parse(format!(
                "generator {} has an incomplete vertex action",
                g.name
            )));
        }
        let mut edge_action = vec![usize::MAX; graph.edges.len()];
        for (from, to) in &g.edge_action {
            edge_action[eidx(from)?] = eidx(to)?;
        }
        if edge_action.contains(&usize::MAX) {
            return Err(SelfSimError::Parse(format!(
                "generator {} has an incomplete edge action",
                g.name
            )));
        }
        let mut cocycle = vec![GroupElementWord::identity_letters(); graph.edges.len()];
        for (edge, word) in &g.cocycle {
            let mut letters = Vec::new();
            for tok in word {
                let (name, inverse) = match tok.strip_suffix("^-1") {
                    Some(n) => (n, true),
                    None => (tok.as_str(), false),
                };
                letters.push(Letter {
                    gen: gidx(name)?,
                    inverse,
                });
            }
            cocycle[eidx(edge)?] = GroupElementWord::from_letters(letters);
        }
        generators.push(MealyGenerator::new(
            g.name.clone(),
            vertex_action,
            edge_action,
            cocycle,
        ));
    }
    SelfSimilarSystem::new(name.to_string(), graph, generators)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(sys: &SelfSimilarSystem, s: &str) -> PathWord {
        parse_path(sys, s).unwrap()
    }

    fn elem(sys: &SelfSimilarSystem, s: &str) -> GroupElementWord {
        parse_element(sys, s).unwrap()
    }

    #[test]
    fn odometer_basic_action() {
        let sys = odometer();
        let a = elem(&sys, "a");
        assert_eq!(
            sys.act_on_path(&a, &path(&sys, "e0,e1")),
            path(&sys, "e1,e1")
        );
        assert_eq!(
            sys.act_on_path(&a, &path(&sys, "e1,e1,e0")),
            path(&sys, "e0,e0,e1")
        );
        let alpha = path(&sys, "e1,e0,e1");
        assert_eq!(sys.act_on_path(&sys.identity(), &alpha), alpha);
    }

    #[test]
    fn odometer_cocycle() {
        let sys = odometer();
        let a = elem(&sys, "a");
        assert_eq!(sys.cocycle(&a, &path(&sys, "e1,e1")), a);
        assert_eq!(sys.cocycle(&a, &path(&sys, "v")), a);
        assert!(sys
            .cocycle(&a, &path(&sys, "e0"))
            .is_structural_identity());
    }

    #[test]
    fn odometer_order_of_a() {
        let sys = odometer();
        for k in 0..=4usize {
            let full = elem(&sys, &format!("a^{}", 1u64 << k));
            // a^(2^k) fixes every path of length k
            let mut fixes_all = true;
            for bits in 0..(1u64 << k) {
                let edges: Vec<usize> = (0..k).map(|i| ((bits >> i) & 1) as usize).collect();
                let alpha = PathWord::from_edges(&sys.graph, edges).unwrap();
                if sys.act_on_path(&full, &alpha) != alpha {
                    fixes_all = false;
                }
            }
            assert!(fixes_all, "a^(2^{k}) should fix all length-{k} paths");
            if k > 0 {
                let half = elem(&sys, &format!("a^{}", 1u64 << (k - 1)));
                let moved = (0..(1u64 << k)).any(|bits| {
                    let edges: Vec<usize> =
                        (0..k).map(|i| ((bits >> i) & 1) as usize).collect();
                    let alpha = PathWord::from_edges(&sys.graph, edges).unwrap();
                    sys.act_on_path(&half, &alpha) != alpha
                });
                assert!(moved);
            }
        }
    }

    #[test]
    fn odometer_infinite_carry() {
        let sys = odometer();
        let a = elem(&sys, "a");
        let xi = parse_xi(&sys, "(e1)*").unwrap();
        let img = sys.act_on_infinite(&a, &xi).unwrap();
        assert_eq!(img, parse_xi(&sys, "(e0)*").unwrap());
    }

    #[test]
    fn odometer_no_strongly_fixed() {
        let sys = odometer();
        for j in 1..=4 {
            let g = elem(&sys, &format!("a^{j}"));
            assert!(sys.minimal_strongly_fixed(&g, 10).unwrap().is_empty());
        }
    }

    #[test]
    fn grigorchuk_relations() {
        let sys = grigorchuk();
        for w in ["a*a", "b*b", "c*c", "d*d", "b*c*d"] {
            assert!(sys.is_identity(&elem(&sys, w)).unwrap(), "{w} should be 1");
        }
        assert!(sys.equal(&elem(&sys, "b*c"), &elem(&sys, "d")).unwrap());
        assert!(!sys.equal(&elem(&sys, "a"), &elem(&sys, "b")).unwrap());
    }

    #[test]
    fn grigorchuk_strongly_fixed() {
        let sys = grigorchuk();
        let d = elem(&sys, "d");
        let b = elem(&sys, "b");
        assert!(sys.strongly_fixed(&d, &path(&sys, "e0")).unwrap());
        assert!(!sys.strongly_fixed(&b, &path(&sys, "e0")).unwrap());
        assert!(sys
            .strongly_fixed(&sys.identity(), &path(&sys, "e1,e0"))
            .unwrap());
    }

    #[test]
    fn grigorchuk_minimal_strongly_fixed_of_d() {
        let sys = grigorchuk();
        let d = elem(&sys, "d");
        let found = sys.minimal_strongly_fixed(&d, 7).unwrap();
        let expected = vec![
            path(&sys, "e0"),
            path(&sys, "e1,e1,e1,e0"),
            path(&sys, "e1,e1,e1,e1,e1,e1,e0"),
        ];
        assert_eq!(found, expected);
    }

    #[test]
    fn grigorchuk_d_fixes_e0_tail() {
        let sys = grigorchuk();
        let d = elem(&sys, "d");
        let xi = parse_xi(&sys, "e0,(e1)*").unwrap();
        assert_eq!(sys.act_on_infinite(&d, &xi).unwrap(), xi);
    }

    #[test]
    fn minimal_strongly_fixed_rejects_identity() {
        let sys = grigorchuk();
        assert!(matches!(
            sys.minimal_strongly_fixed(&elem(&sys, "a*a"), 5),
            Err(SelfSimError::Domain(_))
        ));
    }

    #[test]
    fn katsura_builtin_table() {
        let sys = builtin_system("katsura").unwrap();
        assert_eq!(sys.graph.edges.len(), 11);
        let ids: Vec<&str> = sys.graph.edges.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(
            ids,
            vec![
                "e11_0", "e11_1", "e12", "e13", "e21", "e22_0", "e22_1", "e23", "e32",
                "e33_0", "e33_1"
            ]
        );
        let g = elem(&sys, "g");
        // g.e11_0 = e11_1 and φ(g, e12) = g², φ(g, e13) = 1, φ(g, e23) = g²
        assert_eq!(sys.act_on_path(&g, &path(&sys, "e11_0")), path(&sys, "e11_1"));
        assert_eq!(sys.cocycle(&g, &path(&sys, "e12")), elem(&sys, "g^2"));
        assert!(sys.cocycle(&g, &path(&sys, "e13")).is_structural_identity());
        assert_eq!(sys.cocycle(&g, &path(&sys, "e23")), elem(&sys, "g^2"));
        assert_eq!(sys.act_on_path(&g, &path(&sys, "e13")), path(&sys, "e13"));
    }

    #[test]
    fn katsura_minimal_strongly_fixed_depth_one() {
        let sys = builtin_system("katsura").unwrap();
        let g = elem(&sys, "g");
        assert_eq!(
            sys.minimal_strongly_fixed(&g, 1).unwrap(),
            vec![path(&sys, "e13")]
        );
    }

    #[test]
    fn katsura_validation() {
        // zero row in A
        let a = vec![vec![0, 0], vec![1, 1]];
        let b = vec![vec![0, 0], vec![1, 0]];
        assert!(katsura(&a, &b).is_err());
        // a_ij = 0 with b_ij ≠ 0
        let a = vec![vec![1, 0], vec![1, 1]];
        let b = vec![vec![0, 2], vec![0, 0]];
        assert!(katsura(&a, &b).is_err());
    }

    #[test]
    fn cocycle_law_battery() {
        for sys in [odometer(), grigorchuk()] {
            let words: Vec<GroupElementWord> = sys.word_ball(2);
            let mut paths = Vec::new();
            for len in 1..=3usize {
                for bits in 0..(1usize << len) {
                    let edges: Vec<usize> = (0..len).map(|i| (bits >> i) & 1).collect();
                    paths.push(PathWord::from_edges(&sys.graph, edges).unwrap());
                }
            }
            for g in &words {
                for h in &words {
                    for alpha in &paths {
                        let lhs = sys.cocycle(&g.concat(h), alpha);
                        let rhs = sys
                            .cocycle(g, &sys.act_on_path(h, alpha))
                            .concat(&sys.cocycle(h, alpha));
                        assert!(sys.equal(&lhs, &rhs).unwrap());
                        assert_eq!(sys.act_on_path(g, alpha).len(), alpha.len());
                    }
                }
            }
        }
    }

    #[test]
    fn power_fast_path_matches_letter_threading() {
        // odometer exponents walked letter by letter must agree with the
        // closed-form cycle arithmetic
        let sys = odometer();
        for m in -6i64..=6 {
            let fast = elem(&sys, &format!("a^{m}"));
            for len in 1..=4usize {
                for bits in 0..(1usize << len) {
                    let edges: Vec<usize> = (0..len).map(|i| (bits >> i) & 1).collect();
                    let alpha = PathWord::from_edges(&sys.graph, edges).unwrap();
                    let (img, sec) = sys.act_with_cocycle(&fast, &alpha);
                    // slow path: repeat the single step |m| times
                    let step = GroupElementWord::power(BigInt::from(m.signum()));
                    let mut slow_img = alpha.clone();
                    let mut slow_sec = sys.identity();
                    for _ in 0..m.unsigned_abs() {
                        let (i2, s2) = sys.act_with_cocycle(&step, &slow_img);
                        slow_img = i2;
                        slow_sec = s2.concat(&slow_sec);
                    }
                    assert_eq!(img, slow_img);
                    assert!(sys.equal(&sec, &slow_sec).unwrap());
                }
            }
        }
    }

    #[test]
    fn xi_canonical_form() {
        let sys = odometer();
        let a = parse_xi(&sys, "e1,(e1)*").unwrap();
        let b = parse_xi(&sys, "(e1)*").unwrap();
        assert_eq!(a, b);
        let c = parse_xi(&sys, "(e1,e1)*").unwrap();
        assert_eq!(b, c);
        let d = parse_xi(&sys, "e0,(e1,e0)*").unwrap();
        let e = parse_xi(&sys, "(e0,e1)*").unwrap();
        assert_eq!(d, e);
    }

    #[test]
    fn xi_prefix_and_shift() {
        let sys = odometer();
        let xi = parse_xi(&sys, "e0,(e1)*").unwrap();
        assert_eq!(
            xi.prefix_of_length(&sys.graph, 3),
            parse_path(&sys, "e0,e1,e1").unwrap()
        );
        assert_eq!(xi.shift(&sys.graph, 1), parse_xi(&sys, "(e1)*").unwrap());
    }

    #[test]
    fn json_round_trip_odometer() {
        let text = r#"{
            "graph": {"vertices": ["v"],
                      "edges": [{"id":"e0","src":"v","rng":"v"},
                                 {"id":"e1","src":"v","rng":"v"}]},
            "generators": [{"name":"a",
                            "vertexAction":{"v":"v"},
                            "edgeAction":{"e0":"e1","e1":"e0"},
                            "cocycle":{"e0":[],"e1":["a"]}}]
        }"#;
        let sys = system_from_json("custom", text).unwrap();
        let a = elem(&sys, "a");
        assert_eq!(
            sys.act_on_path(&a, &path(&sys, "e1,e1,e0")),
            path(&sys, "e0,e0,e1")
        );
    }

    #[test]
    fn malformed_system_rejected() {
        // a source vertex
        let text = r#"{
            "graph": {"vertices": ["v","w"],
                      "edges": [{"id":"e0","src":"w","rng":"v"}]},
            "generators": []
        }"#;
        assert!(system_from_json("bad", text).is_err());
    }

    #[test]
    fn element_display() {
        let sys = grigorchuk();
        let w = elem(&sys, "a*b^-1*a^2");
        assert_eq!(sys.display_element(&w), "a*b^-1*a^2");
        let sys2 = odometer();
        assert_eq!(sys2.display_element(&elem(&sys2, "a^5")), "a^5");
        assert_eq!(sys2.display_element(&sys2.identity()), "1");
    }
}
