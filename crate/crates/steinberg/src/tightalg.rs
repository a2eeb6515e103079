//! The inverse semigroup S_{G,E} of a self-similar graph, germs, basic
//! bisections of the tight groupoid, compact open sets of the Boolean
//! convolution algebra, and the depth-bounded probes: fixed and trivially
//! fixed points, Condition (S) sampling, ω-faithfulness, and Hausdorffness.
//!
//! Everything that quantifies over the infinite path space is depth-bounded
//! and answers with a ternary verdict; Unknown only ever means a cap was
//! reached, never a logic gap.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::selfsim::{
    DirectedGraph, EventuallyPeriodicPath, GroupElementWord, PathWord, SelfSimError,
    SelfSimilarSystem,
};

#[derive(Debug, Error)]
pub enum TightError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    SelfSim(#[from] SelfSimError),
}

type Result<T> = std::result::Result<T, TightError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TernaryVerdict {
    True,
    False,
    Unknown,
}

impl TernaryVerdict {
    pub fn is_true(self) -> bool {
        self == TernaryVerdict::True
    }

    pub fn is_false(self) -> bool {
        self == TernaryVerdict::False
    }

    /// Conjunction with Unknown propagation: False dominates.
    pub fn and(self, other: TernaryVerdict) -> TernaryVerdict {
        use TernaryVerdict::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Unknown,
        }
    }
}

/// Maps a state-capped boolean to a ternary verdict.
fn ternary(r: std::result::Result<bool, SelfSimError>) -> Result<TernaryVerdict> {
    match r {
        Ok(true) => Ok(TernaryVerdict::True),
        Ok(false) => Ok(TernaryVerdict::False),
        Err(SelfSimError::StateCap(_)) => Ok(TernaryVerdict::Unknown),
        Err(e) => Err(e.into()),
    }
}

/// An element (α, g, β) of S_{G,E} with s(α) = g.s(β), or the absorbing
/// zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Triple {
    Zero,
    Elem {
        alpha: PathWord,
        g: GroupElementWord,
        beta: PathWord,
    },
}

impl Triple {
    pub fn new(
        sys: &SelfSimilarSystem,
        alpha: PathWord,
        g: GroupElementWord,
        beta: PathWord,
    ) -> Result<Triple> {
        let need = sys.act_on_vertex(&g, beta.src(&sys.graph));
        if alpha.src(&sys.graph) != need {
            return Err(TightError::Domain(
                "triple violates s(α) = g.s(β)".into(),
            ));
        }
        Ok(Triple::Elem { alpha, g, beta })
    }

    pub fn idempotent(gamma: PathWord, sys: &SelfSimilarSystem) -> Triple {
        Triple::Elem {
            alpha: gamma.clone(),
            g: sys.identity(),
            beta: gamma,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Triple::Zero)
    }

    pub fn display(&self, sys: &SelfSimilarSystem) -> String {
        match self {
            Triple::Zero => "0".into(),
            Triple::Elem { alpha, g, beta } => format!(
                "({}, {}, {})",
                alpha.display(&sys.graph),
                sys.display_element(g),
                beta.display(&sys.graph)
            ),
        }
    }
}

/// The three-case product of S_{G,E}.
pub fn triple_multiply(sys: &SelfSimilarSystem, s: &Triple, t: &Triple) -> Result<Triple> {
    let (Triple::Elem { alpha, g, beta }, Triple::Elem { alpha: gamma, g: h, beta: delta }) =
        (s, t)
    else {
        return Ok(Triple::Zero);
    };
    if beta.is_prefix_of(gamma) {
        // γ = βε: (α·(g.ε), φ(g,ε)·h, δ)
        let eps = beta.strip_prefix(&sys.graph, gamma).unwrap();
        let (img, sec) = sys.act_with_cocycle(g, &eps);
        let new_alpha = alpha.concat(&sys.graph, &img).map_err(|_| {
            TightError::Domain("product produced a non-composable path".into())
        })?;
        Ok(Triple::Elem {
            alpha: new_alpha,
            g: sec.concat(h),
            beta: delta.clone(),
        })
    } else if gamma.is_prefix_of(beta) {
        // β = γε: (α, g·φ(h⁻¹,ε)⁻¹, δ·(h⁻¹.ε))
        let eps = gamma.strip_prefix(&sys.graph, beta).unwrap();
        let h_inv = h.inverse();
        let (img, sec) = sys.act_with_cocycle(&h_inv, &eps);
        let new_beta = delta.concat(&sys.graph, &img).map_err(|_| {
            TightError::Domain("product produced a non-composable path".into())
        })?;
        Ok(Triple::Elem {
            alpha: alpha.clone(),
            g: g.concat(&sec.inverse()),
            beta: new_beta,
        })
    } else {
        Ok(Triple::Zero)
    }
}

/// The involution (α, g, β)* = (β, g⁻¹, α).
pub fn triple_star(t: &Triple) -> Triple {
    match t {
        Triple::Zero => Triple::Zero,
        Triple::Elem { alpha, g, beta } => Triple::Elem {
            alpha: beta.clone(),
            g: g.inverse(),
            beta: alpha.clone(),
        },
    }
}

/// Semantic equality: path parts structurally, group parts by bisimulation.
pub fn triple_equal(sys: &SelfSimilarSystem, a: &Triple, b: &Triple) -> Result<TernaryVerdict> {
    match (a, b) {
        (Triple::Zero, Triple::Zero) => Ok(TernaryVerdict::True),
        (Triple::Zero, _) | (_, Triple::Zero) => Ok(TernaryVerdict::False),
        (
            Triple::Elem { alpha, g, beta },
            Triple::Elem { alpha: a2, g: g2, beta: b2 },
        ) => {
            if alpha != a2 || beta != b2 {
                return Ok(TernaryVerdict::False);
            }
            ternary(sys.equal(g, g2))
        }
    }
}

/// s·s = s iff s is zero or (γ, 1, γ).
pub fn is_idempotent(sys: &SelfSimilarSystem, t: &Triple) -> Result<TernaryVerdict> {
    match t {
        Triple::Zero => Ok(TernaryVerdict::True),
        Triple::Elem { alpha, g, beta } => {
            if alpha != beta {
                return Ok(TernaryVerdict::False);
            }
            ternary(sys.is_identity(g))
        }
    }
}

/// True iff ξ ∈ Z(γ).
pub fn in_cylinder(
    sys: &SelfSimilarSystem,
    xi: &EventuallyPeriodicPath,
    gamma: &PathWord,
) -> bool {
    if gamma.is_empty() {
        return xi.rng(&sys.graph) == gamma.src(&sys.graph);
    }
    xi.prefix_of_length(&sys.graph, gamma.len()) == *gamma
}

/// σ_s(ξ) = α·(g.ζ) for ξ = βζ; None when ξ is outside the domain Z(β).
pub fn sigma_apply(
    sys: &SelfSimilarSystem,
    s: &Triple,
    xi: &EventuallyPeriodicPath,
) -> Result<Option<EventuallyPeriodicPath>> {
    let Triple::Elem { alpha, g, beta } = s else {
        return Ok(None);
    };
    if !in_cylinder(sys, xi, beta) {
        return Ok(None);
    }
    let tail = xi.shift(&sys.graph, beta.len());
    let moved = sys.act_on_infinite(g, &tail)?;
    let mut prefix_edges = alpha.edges.clone();
    prefix_edges.extend_from_slice(&moved.prefix.edges);
    let prefix = PathWord {
        edges: prefix_edges,
        base: alpha.rng(&sys.graph),
    };
    Ok(Some(EventuallyPeriodicPath::new(
        &sys.graph,
        prefix,
        moved.period,
    )?))
}

// ---------------------------------------------------------------------------
// basic bisections and compact open sets

/// A basic bisection Θ(α, g, β; Z(γ)) in normal form: the cylinder is slid
/// into the triple so the stored domain is always the full Z(β) of the
/// stored triple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasicBisection {
    pub triple: Triple,
}

impl BasicBisection {
    /// Θ over the full domain cylinder of the triple.
    pub fn whole(triple: Triple) -> Option<BasicBisection> {
        if triple.is_zero() {
            None
        } else {
            Some(BasicBisection { triple })
        }
    }

    /// Θ(α, g, β; Z(γ)); returns None for the empty set (γ incomparable
    /// with β).
    pub fn theta(
        sys: &SelfSimilarSystem,
        triple: Triple,
        gamma: &PathWord,
    ) -> Result<Option<BasicBisection>> {
        let Triple::Elem { beta, .. } = &triple else {
            return Ok(None);
        };
        if gamma.is_prefix_of(beta) {
            // the constraint is vacuous
            return Ok(Some(BasicBisection { triple }));
        }
        if !beta.is_prefix_of(gamma) {
            return Ok(None);
        }
        let u = Triple::idempotent(gamma.clone(), sys);
        let slid = triple_multiply(sys, &triple, &u)?;
        Ok(BasicBisection::whole(slid))
    }

    pub fn domain(&self) -> &PathWord {
        match &self.triple {
            Triple::Elem { beta, .. } => beta,
            Triple::Zero => unreachable!("bisections are never zero"),
        }
    }

    pub fn display(&self, sys: &SelfSimilarSystem) -> String {
        format!("Θ{}", self.triple.display(sys))
    }
}

/// A finite union of basic bisections: an element of the Boolean algebra of
/// compact open sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenSetElement {
    pub bisections: Vec<BasicBisection>,
}

impl OpenSetElement {
    pub fn empty() -> Self {
        OpenSetElement {
            bisections: Vec::new(),
        }
    }

    pub fn from_bisections(mut bs: Vec<BasicBisection>) -> Self {
        bs.sort();
        bs.dedup();
        OpenSetElement { bisections: bs }
    }

    pub fn is_empty(&self) -> bool {
        self.bisections.is_empty()
    }
}

/// The setwise product UV, computed pairwise through the semigroup product;
/// sliding makes every composite a basic bisection again, so no cylinder
/// enumeration is needed.
pub fn open_product(
    sys: &SelfSimilarSystem,
    x: &OpenSetElement,
    y: &OpenSetElement,
    _depth: usize,
) -> Result<OpenSetElement> {
    let mut out = Vec::new();
    for s in &x.bisections {
        for t in &y.bisections {
            let p = triple_multiply(sys, &s.triple, &t.triple)?;
            if let Some(b) = BasicBisection::whole(p) {
                out.push(b);
            }
        }
    }
    Ok(OpenSetElement::from_bisections(out))
}

// ---------------------------------------------------------------------------
// germs

/// A deterministic point of Z(γ): extend greedily along the lowest-index
/// incoming edge until a vertex repeats, then split into prefix and period.
pub fn canonical_point(graph: &DirectedGraph, gamma: &PathWord) -> EventuallyPeriodicPath {
    let mut edges = gamma.edges.clone();
    let mut walk_vertices = vec![gamma.src(graph)];
    loop {
        let v = *walk_vertices.last().unwrap();
        let e = graph
            .edges_into(v)
            .next()
            .expect("sourceless graph has an incoming edge");
        edges.push(e);
        let next = graph.edges[e].src;
        if let Some(pos) = walk_vertices.iter().position(|&w| w == next) {
            let cycle_len = walk_vertices.len() - pos;
            let split = edges.len() - cycle_len;
            let prefix = PathWord {
                edges: edges[..split].to_vec(),
                base: gamma.rng(graph),
            };
            let period = PathWord::from_edges(graph, edges[split..].to_vec()).unwrap();
            return EventuallyPeriodicPath::new(graph, prefix, period).unwrap();
        }
        walk_vertices.push(next);
    }
}

/// Decides whether [s; η] = [t; η]: true if some idempotent u = (γ, 1, γ)
/// with γ a prefix of η of length ≤ depth satisfies s·u = t·u; certified
/// false on diverging images, mismatched length shift, or a recurring
/// section pair that never coincides.
pub fn germ_equal(
    sys: &SelfSimilarSystem,
    s: &Triple,
    t: &Triple,
    eta: &EventuallyPeriodicPath,
    depth: usize,
) -> Result<TernaryVerdict> {
    let (Triple::Elem { alpha: a_s, g: g_s, beta: b_s },
         Triple::Elem { alpha: a_t, g: g_t, beta: b_t }) = (s, t)
    else {
        return Ok(TernaryVerdict::False);
    };
    if !in_cylinder(sys, eta, b_s) || !in_cylinder(sys, eta, b_t) {
        return Ok(TernaryVerdict::False);
    }
    // path parts of s·u and t·u have lengths |α| + k - |β|; they can only
    // coincide when the shifts match
    if a_s.len() + b_t.len() != a_t.len() + b_s.len() {
        return Ok(TernaryVerdict::False);
    }
    match (sigma_apply(sys, s, eta), sigma_apply(sys, t, eta)) {
        (Ok(Some(img_s)), Ok(Some(img_t))) => {
            if img_s != img_t {
                return Ok(TernaryVerdict::False);
            }
        }
        (Err(TightError::SelfSim(SelfSimError::StateCap(_))), _)
        | (_, Err(TightError::SelfSim(SelfSimError::StateCap(_)))) => {}
        (Err(e), _) | (_, Err(e)) => return Err(e),
        _ => unreachable!("η is in both domains"),
    }
    // thread the residual sections along η, checking for coincidence at each
    // prefix and for recurrence of the pair at period boundaries
    let start = b_s.len().max(b_t.len());
    let mut cur_s = {
        let eps = b_s
            .strip_prefix(&sys.graph, &eta.prefix_of_length(&sys.graph, start))
            .unwrap();
        sys.cocycle(g_s, &eps)
    };
    let mut cur_t = {
        let eps = b_t
            .strip_prefix(&sys.graph, &eta.prefix_of_length(&sys.graph, start))
            .unwrap();
        sys.cocycle(g_t, &eps)
    };
    // the path parts of s·u_γ and t·u_γ at |γ| = start are equal prefixes of
    // the common image iff they agree; check them once
    {
        let u = Triple::idempotent(eta.prefix_of_length(&sys.graph, start), sys);
        let su = triple_multiply(sys, s, &u)?;
        let tu = triple_multiply(sys, t, &u)?;
        if let (Triple::Elem { alpha: x, .. }, Triple::Elem { alpha: y, .. }) = (&su, &tu) {
            if x != y {
                return Ok(TernaryVerdict::False);
            }
        }
    }
    let mut seen: BTreeSet<(GroupElementWord, GroupElementWord)> = BTreeSet::new();
    let mut saw_unknown = false;
    let mut pos = start;
    loop {
        match sys.equal(&cur_s, &cur_t) {
            Ok(true) => return Ok(TernaryVerdict::True),
            Ok(false) => {}
            Err(SelfSimError::StateCap(_)) => saw_unknown = true,
            Err(e) => return Err(e.into()),
        }
        if pos >= eta.prefix.len() && (pos - eta.prefix.len()) % eta.period.len() == 0 {
            if !seen.insert((cur_s.clone(), cur_t.clone())) {
                return Ok(if saw_unknown {
                    TernaryVerdict::Unknown
                } else {
                    TernaryVerdict::False
                });
            }
        }
        if pos >= start + depth {
            return Ok(TernaryVerdict::Unknown);
        }
        let next_edge = eta.prefix_of_length(&sys.graph, pos + 1).edges[pos];
        let step = PathWord {
            edges: vec![next_edge],
            base: sys.graph.edges[next_edge].rng,
        };
        cur_s = sys.cocycle(&cur_s, &step);
        cur_t = sys.cocycle(&cur_t, &step);
        pos += 1;
    }
}

// ---------------------------------------------------------------------------
// set equality of compact opens

fn extensions(graph: &DirectedGraph, gamma: &PathWord) -> Vec<PathWord> {
    graph
        .edges_into(gamma.src(graph))
        .map(|e| {
            let mut edges = gamma.edges.clone();
            edges.push(e);
            PathWord {
                edges,
                base: gamma.rng(graph),
            }
        })
        .collect()
}

fn comparable(a: &PathWord, b: &PathWord) -> bool {
    a.is_prefix_of(b) || b.is_prefix_of(a)
}

/// Does the restriction of s to Z(γ) coincide with a germ of some member of
/// y everywhere on the cell?
fn match_cell(
    sys: &SelfSimilarSystem,
    s: &BasicBisection,
    y: &OpenSetElement,
    gamma: &PathWord,
    depth_left: usize,
    germ_depth: usize,
) -> Result<TernaryVerdict> {
    let relevant: Vec<&BasicBisection> = y
        .bisections
        .iter()
        .filter(|t| comparable(t.domain(), gamma))
        .collect();
    if relevant.is_empty() {
        return Ok(TernaryVerdict::False);
    }
    let u = Triple::idempotent(gamma.clone(), sys);
    let su = triple_multiply(sys, &s.triple, &u)?;
    let mut saw_unknown = false;
    for t in &relevant {
        if !t.domain().is_prefix_of(gamma) {
            continue;
        }
        let tu = triple_multiply(sys, &t.triple, &u)?;
        match triple_equal(sys, &su, &tu)? {
            TernaryVerdict::True => return Ok(TernaryVerdict::True),
            TernaryVerdict::False => {}
            TernaryVerdict::Unknown => saw_unknown = true,
        }
    }
    if depth_left == 0 {
        // last resort: falsify at the canonical point of the cell
        let eta = canonical_point(&sys.graph, gamma);
        let mut all_false = true;
        for t in &relevant {
            match germ_equal(sys, &s.triple, &t.triple, &eta, germ_depth)? {
                TernaryVerdict::True => return Ok(TernaryVerdict::Unknown),
                TernaryVerdict::False => {}
                TernaryVerdict::Unknown => all_false = false,
            }
        }
        return Ok(if all_false && !saw_unknown {
            TernaryVerdict::False
        } else {
            TernaryVerdict::Unknown
        });
    }
    let mut verdict = TernaryVerdict::True;
    for child in extensions(&sys.graph, gamma) {
        let v = match_cell(sys, s, y, &child, depth_left - 1, germ_depth)?;
        if v.is_false() {
            return Ok(TernaryVerdict::False);
        }
        verdict = verdict.and(v);
    }
    Ok(verdict)
}

fn contained(
    sys: &SelfSimilarSystem,
    x: &OpenSetElement,
    y: &OpenSetElement,
    depth: usize,
) -> Result<TernaryVerdict> {
    let mut verdict = TernaryVerdict::True;
    for s in &x.bisections {
        let v = match_cell(sys, s, y, s.domain(), depth, depth + 8)?;
        if v.is_false() {
            return Ok(TernaryVerdict::False);
        }
        verdict = verdict.and(v);
    }
    Ok(verdict)
}

#[derive(Debug, Clone, Copy)]
pub struct OpenEqualReport {
    pub verdict: TernaryVerdict,
    /// No certified unmatched germ was found on the sampled points: evidence
    /// for equality on a dense set even when the verdict is Unknown.
    pub dense_agreement: bool,
}

/// Set equality of unions of bisections as subsets of the tight groupoid,
/// by symmetric germ containment over cylinder refinements up to `depth`.
pub fn open_equal(
    sys: &SelfSimilarSystem,
    x: &OpenSetElement,
    y: &OpenSetElement,
    depth: usize,
) -> Result<OpenEqualReport> {
    if x.is_empty() || y.is_empty() {
        let verdict = if x.is_empty() == y.is_empty() {
            TernaryVerdict::True
        } else {
            TernaryVerdict::False
        };
        return Ok(OpenEqualReport {
            verdict,
            dense_agreement: verdict.is_true(),
        });
    }
    let forward = contained(sys, x, y, depth)?;
    if forward.is_false() {
        return Ok(OpenEqualReport {
            verdict: TernaryVerdict::False,
            dense_agreement: false,
        });
    }
    let backward = contained(sys, y, x, depth)?;
    let verdict = forward.and(backward);
    Ok(OpenEqualReport {
        verdict,
        dense_agreement: !verdict.is_false(),
    })
}

// ---------------------------------------------------------------------------
// fixed points

/// (ξ ∈ F_s, ξ ∈ TF_s).
pub fn fixed_and_trivially_fixed(
    sys: &SelfSimilarSystem,
    s: &Triple,
    xi: &EventuallyPeriodicPath,
    depth: usize,
) -> Result<(TernaryVerdict, TernaryVerdict)> {
    let Triple::Elem { alpha, g, beta } = s else {
        return Ok((TernaryVerdict::False, TernaryVerdict::False));
    };
    if !in_cylinder(sys, xi, beta) {
        return Ok((TernaryVerdict::False, TernaryVerdict::False));
    }
    let fixed = match sigma_apply(sys, s, xi) {
        Ok(Some(img)) => {
            if img == *xi {
                TernaryVerdict::True
            } else {
                TernaryVerdict::False
            }
        }
        Ok(None) => TernaryVerdict::False,
        Err(TightError::SelfSim(SelfSimError::StateCap(_))) => TernaryVerdict::Unknown,
        Err(e) => return Err(e),
    };
    // TF needs an idempotent u = (γ, 1, γ) below ξ with s·u = u, which
    // forces α = β, γ = βε with g.ε = ε and φ(g, ε) = 1
    if alpha != beta {
        return Ok((fixed, TernaryVerdict::False));
    }
    let tail = xi.shift(&sys.graph, beta.len());
    let mut cur = g.clone();
    let mut seen: BTreeSet<GroupElementWord> = BTreeSet::new();
    let mut saw_unknown = false;
    let mut pos = 0usize;
    let tf = loop {
        match sys.is_identity(&cur) {
            Ok(true) => break TernaryVerdict::True,
            Ok(false) => {}
            Err(SelfSimError::StateCap(_)) => saw_unknown = true,
            Err(e) => return Err(e.into()),
        }
        if pos >= tail.prefix.len() && (pos - tail.prefix.len()) % tail.period.len() == 0 {
            if !seen.insert(cur.clone()) {
                break if saw_unknown {
                    TernaryVerdict::Unknown
                } else {
                    TernaryVerdict::False
                };
            }
        }
        if pos >= depth {
            break TernaryVerdict::Unknown;
        }
        let e = tail.prefix_of_length(&sys.graph, pos + 1).edges[pos];
        let (img, sec) = sys.act_on_edge(&cur, e);
        if img != e {
            // the prefix is moved, so no idempotent below ξ can absorb s
            break TernaryVerdict::False;
        }
        cur = sec;
        pos += 1;
    };
    Ok((fixed, tf))
}

// ---------------------------------------------------------------------------
// Condition (S) sampling

#[derive(Debug, Serialize)]
pub struct ConditionSSample {
    pub xi: String,
    pub in_intersection: TernaryVerdict,
    /// True means a cylinder around ξ was certified inside the union of
    /// fixed sets: a violation.
    pub violation: TernaryVerdict,
    pub witness: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ConditionSReport {
    pub samples: Vec<ConditionSSample>,
    pub violations: Vec<String>,
    /// True means no violation found on the samples; not a proof.
    pub verdict: TernaryVerdict,
}

/// Is the whole cell Z(δ) certified inside F_s? Only the trivially fixed
/// criterion s·u_δ = u_δ gives a cell-level certificate.
fn cell_in_fixed(sys: &SelfSimilarSystem, s: &Triple, delta: &PathWord) -> Result<TernaryVerdict> {
    let u = Triple::idempotent(delta.clone(), sys);
    let su = triple_multiply(sys, s, &u)?;
    triple_equal(sys, &su, &u)
}

fn cell_escapes_union(
    sys: &SelfSimilarSystem,
    elements: &[Triple],
    delta: &PathWord,
    depth_left: usize,
    sample_depth: usize,
) -> Result<TernaryVerdict> {
    // certified escape: the canonical point of the cell is outside every F_s
    let eta = canonical_point(&sys.graph, delta);
    let mut outside_all = TernaryVerdict::True;
    for s in elements {
        let (f, _) = fixed_and_trivially_fixed(sys, s, &eta, sample_depth)?;
        outside_all = outside_all.and(match f {
            TernaryVerdict::True => TernaryVerdict::False,
            TernaryVerdict::False => TernaryVerdict::True,
            TernaryVerdict::Unknown => TernaryVerdict::Unknown,
        });
    }
    if outside_all.is_true() {
        return Ok(TernaryVerdict::True);
    }
    if depth_left == 0 {
        return Ok(TernaryVerdict::Unknown);
    }
    for child in extensions(&sys.graph, delta) {
        let v = cell_escapes_union(sys, elements, &child, depth_left - 1, sample_depth)?;
        if v.is_true() {
            return Ok(TernaryVerdict::True);
        }
    }
    Ok(TernaryVerdict::Unknown)
}

/// Samples Condition (S): for every sample ξ in ∩(F_s ∖ TF_s), look for a
/// prefix cylinder Z(γ) certified inside ∪F_s (a violation) or exhibit an
/// escaping point in every such cylinder.
pub fn condition_s_sample(
    sys: &SelfSimilarSystem,
    elements: &[Triple],
    samples: &[EventuallyPeriodicPath],
    depth: usize,
) -> Result<ConditionSReport> {
    for s in elements {
        if is_idempotent(sys, s)?.is_true() {
            return Err(TightError::Domain(
                "Condition (S) applies to non-idempotent elements only".into(),
            ));
        }
    }
    let mut out = Vec::new();
    let mut violations = Vec::new();
    let mut verdict = TernaryVerdict::True;
    for xi in samples {
        let mut membership = TernaryVerdict::True;
        for s in elements {
            let (f, tf) = fixed_and_trivially_fixed(sys, s, xi, depth)?;
            let not_tf = match tf {
                TernaryVerdict::True => TernaryVerdict::False,
                TernaryVerdict::False => TernaryVerdict::True,
                TernaryVerdict::Unknown => TernaryVerdict::Unknown,
            };
            membership = membership.and(f).and(not_tf);
        }
        if elements.is_empty() {
            membership = TernaryVerdict::False;
        }
        let mut violation = TernaryVerdict::False;
        let mut witness = None;
        if membership.is_true() {
            for k in 0..=depth {
                let gamma = xi.prefix_of_length(&sys.graph, k);
                // a cylinder certified inside one F_s violates the condition
                let mut inside = TernaryVerdict::False;
                for s in elements {
                    inside = match cell_in_fixed(sys, s, &gamma)? {
                        TernaryVerdict::True => TernaryVerdict::True,
                        v => {
                            if inside.is_true() {
                                TernaryVerdict::True
                            } else if v == TernaryVerdict::Unknown {
                                TernaryVerdict::Unknown
                            } else {
                                inside
                            }
                        }
                    };
                }
                if inside.is_true() {
                    violation = TernaryVerdict::True;
                    witness = Some(gamma.display(&sys.graph));
                    break;
                }
                // otherwise try to certify escape from the whole union
                match cell_escapes_union(sys, elements, &gamma, depth.saturating_sub(k), depth)? {
                    TernaryVerdict::True => {}
                    _ => {
                        if violation.is_false() {
                            violation = TernaryVerdict::Unknown;
                        }
                    }
                }
            }
        }
        if violation.is_true() {
            violations.push(format!(
                "Z({}) ⊆ ∪F at ξ = {}",
                witness.clone().unwrap_or_default(),
                xi.display(&sys.graph)
            ));
            verdict = TernaryVerdict::False;
        } else if violation == TernaryVerdict::Unknown && verdict.is_true() {
            verdict = TernaryVerdict::Unknown;
        }
        out.push(ConditionSSample {
            xi: xi.display(&sys.graph),
            in_intersection: membership,
            violation,
            witness,
        });
    }
    Ok(ConditionSReport {
        samples: out,
        violations,
        verdict,
    })
}

// ---------------------------------------------------------------------------
// ω-faithfulness

#[derive(Debug, Serialize)]
pub struct OmegaFaithfulReport {
    /// Every g_i fixes every prefix of ξ with a nontrivial section, checked
    /// to period closure.
    pub hypothesis_met: TernaryVerdict,
    pub witness_m: Option<usize>,
    pub counterexample_prefix: Option<String>,
    /// True: consistent with ω-faithfulness on this input. False: certified
    /// counterexample behaviour at the probed depths.
    pub verdict: TernaryVerdict,
    pub note: String,
}

/// Probes the ω-faithfulness definition at one ξ and one finite family.
pub fn omega_faithful_probe(
    sys: &SelfSimilarSystem,
    xi: &EventuallyPeriodicPath,
    g_list: &[GroupElementWord],
    m_max: usize,
    alpha_depth: usize,
) -> Result<OmegaFaithfulReport> {
    if sys.graph.vertices.len() != 1 {
        return Err(TightError::Domain(
            "the ω-faithfulness probe needs a one-vertex graph".into(),
        ));
    }
    if g_list.is_empty() {
        return Ok(OmegaFaithfulReport {
            hypothesis_met: TernaryVerdict::True,
            witness_m: None,
            counterexample_prefix: None,
            verdict: TernaryVerdict::True,
            note: "vacuous: empty element family".into(),
        });
    }
    // thread all sections along ξ until the tuple recurs at a period
    // boundary; this covers every prefix
    let mut sections: Vec<GroupElementWord> = g_list.to_vec();
    let mut levels: Vec<Vec<GroupElementWord>> = Vec::new();
    let mut seen: BTreeSet<Vec<GroupElementWord>> = BTreeSet::new();
    let mut pos = 0usize;
    let closure = loop {
        levels.push(sections.clone());
        if pos >= xi.prefix.len() && (pos - xi.prefix.len()) % xi.period.len() == 0 {
            if !seen.insert(sections.clone()) {
                break pos;
            }
        }
        if pos > xi.prefix.len() + sys.state_cap {
            return Ok(OmegaFaithfulReport {
                hypothesis_met: TernaryVerdict::Unknown,
                witness_m: None,
                counterexample_prefix: None,
                verdict: TernaryVerdict::Unknown,
                note: "section tuple did not close before the state cap".into(),
            });
        }
        let e = xi.prefix_of_length(&sys.graph, pos + 1).edges[pos];
        let mut next = Vec::with_capacity(sections.len());
        for sec in &sections {
            let (img, s2) = sys.act_on_edge(sec, e);
            if img != e {
                // the hypothesis fails: g_i moves the prefix of length pos+1
                return Ok(OmegaFaithfulReport {
                    hypothesis_met: TernaryVerdict::False,
                    witness_m: None,
                    counterexample_prefix: Some(
                        xi.prefix_of_length(&sys.graph, pos + 1).display(&sys.graph),
                    ),
                    verdict: TernaryVerdict::True,
                    note: "hypothesis not met: consistent with ω-faithfulness".into(),
                });
            }
            next.push(s2);
        }
        sections = next;
        pos += 1;
    };
    // the hypothesis also needs nontrivial sections at every prefix
    for (k, level) in levels.iter().enumerate() {
        for sec in level {
            match sys.is_identity(sec) {
                Ok(true) => {
                    return Ok(OmegaFaithfulReport {
                        hypothesis_met: TernaryVerdict::False,
                        witness_m: None,
                        counterexample_prefix: Some(
                            xi.prefix_of_length(&sys.graph, k).display(&sys.graph),
                        ),
                        verdict: TernaryVerdict::True,
                        note: "hypothesis not met: a section is trivial".into(),
                    });
                }
                Ok(false) => {}
                Err(SelfSimError::StateCap(_)) => {
                    return Ok(OmegaFaithfulReport {
                        hypothesis_met: TernaryVerdict::Unknown,
                        witness_m: None,
                        counterexample_prefix: None,
                        verdict: TernaryVerdict::Unknown,
                        note: "state cap while checking the hypothesis".into(),
                    })
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    // hypothesis met; search for m: every prefix of length ≥ m must admit a
    // single α moved by all sections simultaneously
    let mut alphas: Vec<PathWord> = Vec::new();
    let mut frontier: Vec<PathWord> = vec![PathWord::empty(0)];
    for _ in 0..alpha_depth {
        let mut next = Vec::new();
        for a in &frontier {
            for child in extensions(&sys.graph, a) {
                alphas.push(child.clone());
                next.push(child);
            }
        }
        frontier = next;
    }
    let level_has_witness = |level: &Vec<GroupElementWord>| -> bool {
        alphas.iter().any(|a| {
            level
                .iter()
                .all(|sec| sys.act_on_path(sec, a) != *a)
        })
    };
    // levels beyond `closure` repeat earlier tuples, so the finite list is
    // exhaustive
    let witnesses: Vec<bool> = levels.iter().map(level_has_witness).collect();
    for m in 0..=m_max.min(closure) {
        if witnesses[m..].iter().all(|&w| w) {
            return Ok(OmegaFaithfulReport {
                hypothesis_met: TernaryVerdict::True,
                witness_m: Some(m),
                counterexample_prefix: None,
                verdict: TernaryVerdict::True,
                note: "witness level found".into(),
            });
        }
    }
    let bad = witnesses[..]
        .iter()
        .rposition(|&w| !w)
        .unwrap_or(0);
    Ok(OmegaFaithfulReport {
        hypothesis_met: TernaryVerdict::True,
        witness_m: None,
        counterexample_prefix: Some(xi.prefix_of_length(&sys.graph, bad).display(&sys.graph)),
        verdict: TernaryVerdict::False,
        note: format!(
            "no joint moved word of length ≤ {alpha_depth} exists at a recurring prefix level"
        ),
    })
}

// ---------------------------------------------------------------------------
// Hausdorff probe

#[derive(Debug, Serialize)]
pub struct HausdorffElementReport {
    pub element: String,
    pub counts_at_checkpoints: Vec<usize>,
    /// The search tree closed: the count is exact, not just depth-bounded.
    pub closed: bool,
    pub verdict: TernaryVerdict,
}

#[derive(Debug, Serialize)]
pub struct HausdorffReport {
    pub elements: Vec<HausdorffElementReport>,
    /// True: Hausdorff evidence at depth. False: non-Hausdorff evidence
    /// (a growth certificate). Unknown otherwise.
    pub verdict: TernaryVerdict,
}

/// Counts minimal strongly fixed paths for every nonidentity element of the
/// word ball; strictly growing counts across three depth checkpoints are
/// non-Hausdorff evidence.
pub fn hausdorff_probe(
    sys: &SelfSimilarSystem,
    radius: usize,
    depth: usize,
) -> Result<HausdorffReport> {
    let checkpoints = [depth.max(3) / 3, 2 * depth.max(3) / 3, depth];
    let mut out = Vec::new();
    let mut any_growth = false;
    let mut all_certain = true;
    for g in sys.word_ball(radius) {
        match sys.is_identity(&g) {
            Ok(true) => continue,
            Ok(false) => {}
            Err(SelfSimError::StateCap(_)) => {
                all_certain = false;
                continue;
            }
            Err(e) => return Err(e.into()),
        }
        let (paths, closed) = match minimal_strongly_fixed_with_closure(sys, &g, depth) {
            Ok(v) => v,
            Err(SelfSimError::StateCap(_)) => {
                all_certain = false;
                out.push(HausdorffElementReport {
                    element: sys.display_element(&g),
                    counts_at_checkpoints: vec![],
                    closed: false,
                    verdict: TernaryVerdict::Unknown,
                });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let counts: Vec<usize> = checkpoints
            .iter()
            .map(|&c| paths.iter().filter(|p| p.len() <= c).count())
            .collect();
        let growth = counts[0] < counts[1] && counts[1] < counts[2];
        let verdict = if growth {
            any_growth = true;
            TernaryVerdict::False
        } else if closed {
            TernaryVerdict::True
        } else {
            TernaryVerdict::Unknown
        };
        if verdict == TernaryVerdict::Unknown {
            all_certain = false;
        }
        out.push(HausdorffElementReport {
            element: sys.display_element(&g),
            counts_at_checkpoints: counts,
            closed,
            verdict,
        });
    }
    let verdict = if any_growth {
        TernaryVerdict::False
    } else if all_certain {
        TernaryVerdict::True
    } else {
        TernaryVerdict::Unknown
    };
    Ok(HausdorffReport {
        elements: out,
        verdict,
    })
}

/// Like `SelfSimilarSystem::minimal_strongly_fixed` but also reports whether
/// the search tree was exhausted before the depth bound.
pub fn minimal_strongly_fixed_with_closure(
    sys: &SelfSimilarSystem,
    g: &GroupElementWord,
    depth: usize,
) -> std::result::Result<(Vec<PathWord>, bool), SelfSimError> {
    let mut found = Vec::new();
    let mut frontier: Vec<(PathWord, GroupElementWord)> = (0..sys.graph.vertices.len())
        .filter(|&v| sys.act_on_vertex(g, v) == v)
        .map(|v| (PathWord::empty(v), g.clone()))
        .collect();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (path, sec) in frontier {
            let sv = path.src(&sys.graph);
            for e in sys.graph.edges_into(sv) {
                let (img, child_sec) = sys.act_on_edge(&sec, e);
                if img != e {
                    continue;
                }
                let mut edges = path.edges.clone();
                edges.push(e);
                let child = PathWord {
                    edges,
                    base: path.rng(&sys.graph),
                };
                if sys.is_identity(&child_sec)? {
                    found.push(child);
                } else {
                    next.push((child, child_sec));
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            return Ok((found, true));
        }
    }
    Ok((found, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selfsim::{
        builtin_system, grigorchuk, odometer, parse_element, parse_path, parse_xi,
    };
    use std::sync::Arc;

    fn triple(sys: &SelfSimilarSystem, a: &str, g: &str, b: &str) -> Triple {
        Triple::new(
            sys,
            parse_path(sys, a).unwrap(),
            parse_element(sys, g).unwrap(),
            parse_path(sys, b).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn product_with_matching_paths() {
        let sys = odometer();
        let s = triple(&sys, "e0", "a", "v");
        let t = triple(&sys, "v", "a", "e1");
        let p = triple_multiply(&sys, &s, &t).unwrap();
        assert_eq!(p, triple(&sys, "e0", "a^2", "e1"));
    }

    #[test]
    fn product_first_case() {
        let sys = odometer();
        // (v, a, v)·(e0, 1, v) = (e1, 1, v): ε = e0, a.e0 = e1, φ(a,e0) = 1
        let s = triple(&sys, "v", "a", "v");
        let t = triple(&sys, "e0", "1", "v");
        let p = triple_multiply(&sys, &s, &t).unwrap();
        assert_eq!(p, triple(&sys, "e1", "1", "v"));
    }

    #[test]
    fn product_incomparable_is_zero() {
        let sys = odometer();
        let s = triple(&sys, "v", "1", "e0");
        let t = triple(&sys, "e1", "1", "v");
        assert!(triple_multiply(&sys, &s, &t).unwrap().is_zero());
    }

    #[test]
    fn star_and_inverse_laws() {
        let sys = odometer();
        let s = triple(&sys, "e0", "a", "e1");
        let st = triple_star(&s);
        assert_eq!(st, triple(&sys, "e1", "a^-1", "e0"));
        let sss = triple_multiply(&sys, &triple_multiply(&sys, &s, &st).unwrap(), &s).unwrap();
        assert!(triple_equal(&sys, &sss, &s).unwrap().is_true());
    }

    fn battery(sys: &Arc<SelfSimilarSystem>) -> Vec<Triple> {
        let mut paths = vec![PathWord::empty(0)];
        let mut frontier = vec![PathWord::empty(0)];
        for _ in 0..2 {
            let mut next = Vec::new();
            for p in &frontier {
                for c in extensions(&sys.graph, p) {
                    paths.push(c.clone());
                    next.push(c);
                }
            }
            frontier = next;
        }
        // include empty paths at every vertex
        for v in 1..sys.graph.vertices.len() {
            paths.push(PathWord::empty(v));
        }
        let mut words = vec![sys.identity()];
        words.extend(sys.word_ball(2));
        let mut out = Vec::new();
        for b in &paths {
            for g in words.iter().take(6) {
                for a in &paths {
                    if let Ok(t) = Triple::new(sys, a.clone(), g.clone(), b.clone()) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn inverse_semigroup_laws_battery() {
        for sys in [odometer(), grigorchuk(), builtin_system("katsura").unwrap()] {
            let triples = battery(&sys);
            for s in triples.iter().take(40) {
                let st = triple_star(s);
                let lhs =
                    triple_multiply(&sys, &triple_multiply(&sys, s, &st).unwrap(), s).unwrap();
                assert!(triple_equal(&sys, &lhs, s).unwrap().is_true());
            }
            for s in triples.iter().take(12) {
                for t in triples.iter().take(12) {
                    let prod = triple_multiply(&sys, s, t).unwrap();
                    let lhs = triple_star(&prod);
                    let rhs =
                        triple_multiply(&sys, &triple_star(t), &triple_star(s)).unwrap();
                    assert!(triple_equal(&sys, &lhs, &rhs).unwrap().is_true());
                }
            }
        }
    }

    #[test]
    fn idempotent_characterization() {
        let sys = grigorchuk();
        for t in battery(&sys).iter().take(60) {
            let sq = triple_multiply(&sys, t, t).unwrap();
            let is_idem_by_square = triple_equal(&sys, &sq, t).unwrap();
            let by_form = is_idempotent(&sys, t).unwrap();
            assert_eq!(is_idem_by_square, by_form, "{}", t.display(&sys));
        }
    }

    #[test]
    fn sliding_normal_form() {
        let sys = grigorchuk();
        let t = triple(&sys, "v", "d", "v");
        let z_e0 = parse_path(&sys, "e0").unwrap();
        let b = BasicBisection::theta(&sys, t.clone(), &z_e0).unwrap().unwrap();
        // Θ(v,d,v;Z(e0)) slides to (e0, 1, e0)
        assert!(
            triple_equal(&sys, &b.triple, &triple(&sys, "e0", "1", "e0"))
                .unwrap()
                .is_true()
        );
    }

    #[test]
    fn open_product_odometer_square() {
        let sys = odometer();
        let x = OpenSetElement::from_bisections(vec![BasicBisection::whole(triple(
            &sys, "v", "a", "v",
        ))
        .unwrap()]);
        let p = open_product(&sys, &x, &x, 4).unwrap();
        assert_eq!(p.bisections.len(), 1);
        assert_eq!(p.bisections[0].triple, triple(&sys, "v", "a^2", "v"));
    }

    #[test]
    fn open_product_with_unit_cylinder() {
        let sys = odometer();
        let x = OpenSetElement::from_bisections(vec![
            BasicBisection::whole(triple(&sys, "v", "a", "e0")).unwrap(),
            BasicBisection::whole(triple(&sys, "v", "a", "e1")).unwrap(),
        ]);
        let e = OpenSetElement::from_bisections(vec![BasicBisection::whole(triple(
            &sys, "e0", "1", "e0",
        ))
        .unwrap()]);
        let p = open_product(&sys, &x, &e, 4).unwrap();
        // only the Z(e0)-domain part survives
        assert_eq!(p.bisections.len(), 1);
        assert_eq!(p.bisections[0].domain(), &parse_path(&sys, "e0").unwrap());
        let empty = open_product(&sys, &x, &OpenSetElement::empty(), 4).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn germ_collapse_true_on_e0() {
        let sys = grigorchuk();
        let s = triple(&sys, "v", "d", "v");
        let t = triple(&sys, "v", "1", "v");
        let eta = parse_xi(&sys, "e0,(e1)*").unwrap();
        assert!(germ_equal(&sys, &s, &t, &eta, 8).unwrap().is_true());
    }

    #[test]
    fn germ_differs_on_e1_tail() {
        let sys = grigorchuk();
        let s = triple(&sys, "v", "d", "v");
        let t = triple(&sys, "v", "1", "v");
        let eta = parse_xi(&sys, "(e1)*").unwrap();
        assert!(germ_equal(&sys, &s, &t, &eta, 12).unwrap().is_false());
    }

    #[test]
    fn germ_self_is_true() {
        let sys = odometer();
        let s = triple(&sys, "e0", "a", "e1");
        let eta = parse_xi(&sys, "e1,(e0)*").unwrap();
        assert!(germ_equal(&sys, &s, &s, &eta, 4).unwrap().is_true());
    }

    #[test]
    fn open_equal_self_and_split() {
        let sys = grigorchuk();
        let whole = OpenSetElement::from_bisections(vec![BasicBisection::whole(triple(
            &sys, "v", "d", "v",
        ))
        .unwrap()]);
        assert!(open_equal(&sys, &whole, &whole, 3).unwrap().verdict.is_true());
        let split = OpenSetElement::from_bisections(vec![
            BasicBisection::theta(
                &sys,
                triple(&sys, "v", "d", "v"),
                &parse_path(&sys, "e0").unwrap(),
            )
            .unwrap()
            .unwrap(),
            BasicBisection::theta(
                &sys,
                triple(&sys, "v", "d", "v"),
                &parse_path(&sys, "e1").unwrap(),
            )
            .unwrap()
            .unwrap(),
        ]);
        assert!(open_equal(&sys, &whole, &split, 3).unwrap().verdict.is_true());
    }

    #[test]
    fn open_equal_germ_collapse() {
        let sys = grigorchuk();
        let lhs = OpenSetElement::from_bisections(vec![BasicBisection::theta(
            &sys,
            triple(&sys, "v", "d", "v"),
            &parse_path(&sys, "e0").unwrap(),
        )
        .unwrap()
        .unwrap()]);
        let rhs = OpenSetElement::from_bisections(vec![BasicBisection::whole(triple(
            &sys, "e0", "1", "e0",
        ))
        .unwrap()]);
        assert!(open_equal(&sys, &lhs, &rhs, 3).unwrap().verdict.is_true());
    }

    #[test]
    fn open_equal_detects_difference() {
        let sys = odometer();
        let x = OpenSetElement::from_bisections(vec![BasicBisection::whole(triple(
            &sys, "v", "a", "v",
        ))
        .unwrap()]);
        let y = OpenSetElement::from_bisections(vec![BasicBisection::whole(triple(
            &sys, "v", "1", "v",
        ))
        .unwrap()]);
        assert!(open_equal(&sys, &x, &y, 3).unwrap().verdict.is_false());
    }

    #[test]
    fn fixed_points_odometer() {
        let sys = odometer();
        let s = triple(&sys, "v", "a", "v");
        let xi = parse_xi(&sys, "(e1)*").unwrap();
        let (f, tf) = fixed_and_trivially_fixed(&sys, &s, &xi, 8).unwrap();
        assert!(f.is_false() && tf.is_false());
    }

    #[test]
    fn fixed_points_grigorchuk_d() {
        let sys = grigorchuk();
        let s = triple(&sys, "v", "d", "v");
        let xi = parse_xi(&sys, "e0,(e1)*").unwrap();
        let (f, tf) = fixed_and_trivially_fixed(&sys, &s, &xi, 8).unwrap();
        assert!(f.is_true() && tf.is_true());
        let xi = parse_xi(&sys, "(e1)*").unwrap();
        let (f, tf) = fixed_and_trivially_fixed(&sys, &s, &xi, 8).unwrap();
        assert!(f.is_true(), "ξ = (e1)* is fixed by d");
        assert!(tf.is_false(), "but not trivially fixed");
    }

    #[test]
    fn condition_s_odometer_no_violation() {
        let sys = odometer();
        let elements = vec![triple(&sys, "v", "a", "v")];
        let samples = vec![
            parse_xi(&sys, "(e1)*").unwrap(),
            parse_xi(&sys, "(e0)*").unwrap(),
            parse_xi(&sys, "e0,(e1)*").unwrap(),
        ];
        let report = condition_s_sample(&sys, &elements, &samples, 6).unwrap();
        assert!(report.violations.is_empty());
        assert!(report.verdict.is_true());
    }

    #[test]
    fn condition_s_grigorchuk_d_escapes() {
        let sys = grigorchuk();
        let elements = vec![triple(&sys, "v", "d", "v")];
        let samples = vec![parse_xi(&sys, "(e1)*").unwrap()];
        let report = condition_s_sample(&sys, &elements, &samples, 8).unwrap();
        assert!(report.samples[0].in_intersection.is_true());
        assert!(report.violations.is_empty());
        assert!(report.verdict.is_true());
    }

    #[test]
    fn condition_s_rejects_idempotents() {
        let sys = odometer();
        let elements = vec![triple(&sys, "v", "1", "v")];
        assert!(condition_s_sample(&sys, &elements, &[], 4).is_err());
    }

    #[test]
    fn omega_odometer_hypothesis_fails() {
        let sys = odometer();
        let xi = parse_xi(&sys, "(e1)*").unwrap();
        let a = parse_element(&sys, "a").unwrap();
        let report = omega_faithful_probe(&sys, &xi, &[a], 6, 4).unwrap();
        assert!(report.hypothesis_met.is_false());
        assert!(report.verdict.is_true());
    }

    #[test]
    fn omega_grigorchuk_counterexample() {
        let sys = grigorchuk();
        let xi = parse_xi(&sys, "(e1)*").unwrap();
        let gs: Vec<GroupElementWord> = ["b", "c", "d"]
            .iter()
            .map(|n| parse_element(&sys, n).unwrap())
            .collect();
        let report = omega_faithful_probe(&sys, &xi, &gs, 8, 5).unwrap();
        assert!(report.hypothesis_met.is_true());
        assert!(report.verdict.is_false());
        assert!(report.counterexample_prefix.is_some());
    }

    #[test]
    fn omega_empty_family_vacuous() {
        let sys = grigorchuk();
        let xi = parse_xi(&sys, "(e1)*").unwrap();
        let report = omega_faithful_probe(&sys, &xi, &[], 4, 3).unwrap();
        assert!(report.verdict.is_true());
    }

    #[test]
    fn hausdorff_odometer_true() {
        let sys = odometer();
        let report = hausdorff_probe(&sys, 4, 10).unwrap();
        assert!(report.verdict.is_true());
        assert!(report
            .elements
            .iter()
            .all(|e| e.counts_at_checkpoints.iter().all(|&c| c == 0)));
    }

    #[test]
    fn hausdorff_grigorchuk_growth() {
        let sys = grigorchuk();
        let report = hausdorff_probe(&sys, 1, 7).unwrap();
        assert!(report.verdict.is_false());
        let d = report
            .elements
            .iter()
            .find(|e| e.element == "d")
            .expect("d is in the radius-1 ball");
        assert_eq!(d.counts_at_checkpoints, vec![1, 2, 3]);
    }

    #[test]
    fn hausdorff_katsura_growth() {
        let sys = builtin_system("katsura").unwrap();
        let report = hausdorff_probe(&sys, 1, 4).unwrap();
        assert!(report.verdict.is_false());
    }
}
