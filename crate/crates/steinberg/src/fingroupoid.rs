//! Finite discrete groupoids and their convolution algebras: structure
//! analysis (orbits, isotropy, minimality, effectiveness), the matrix-algebra
//! decomposition, unit representations, ideals over the Boolean semifield,
//! the agreement-on-T congruence, and the simplicity check cross-validated
//! against the brute-force congruence oracle.
//!
//! Everything here is discrete: every subset of units is open, compact means
//! finite, and "dense" means "all of G".

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::groupkit::FiniteGroupTable;
use crate::semiring::{
    is_congruence_simple, CongruencePartition, FiniteAlgebraTable, SemiringValue,
};

#[derive(Debug, Error)]
pub enum GroupoidError {
    #[error("malformed groupoid: {0}")]
    Malformed(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("materialization needs {required} elements, cap is {cap}")]
    CapExceeded { required: u128, cap: u128 },
    #[error(transparent)]
    Scalar(#[from] crate::semiring::SemiringError),
    #[error(transparent)]
    Group(#[from] crate::groupkit::GroupError),
}

type Result<T> = std::result::Result<T, GroupoidError>;

/// A finite groupoid with a total description of its composable pairs.
/// Units are themselves arrows (the identity arrows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    pub arrows: Vec<String>,
    /// Source unit per arrow, as an arrow index.
    pub src: Vec<usize>,
    pub rng: Vec<usize>,
    pub inv: Vec<usize>,
    /// Sorted indices of the unit arrows.
    pub units: Vec<usize>,
    /// compose[a][b] = a·b, defined iff rng(b) = src(a).
    pub compose: Vec<Vec<Option<usize>>>,
}

impl FiniteGroupoid {
    pub fn size(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.src[a] == a && self.rng[a] == a
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a == id)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.size();
        if n == 0 {
            return Err(GroupoidError::Malformed("no arrows".into()));
        }
        let bad_len = self.src.len() != n
            || self.rng.len() != n
            || self.inv.len() != n
            || self.compose.len() != n
            || self.compose.iter().any(|row| row.len() != n);
        if bad_len {
            return Err(GroupoidError::Malformed("table sizes disagree".into()));
        }
        for a in 0..n {
            if self.src[a] >= n || self.rng[a] >= n || self.inv[a] >= n {
                return Err(GroupoidError::Malformed("index out of range".into()));
            }
            if !self.is_unit(self.src[a]) || !self.is_unit(self.rng[a]) {
                return Err(GroupoidError::Malformed(format!(
                    "endpoints of {} are not units",
                    self.arrows[a]
                )));
            }
        }
        let units: Vec<usize> = (0..n).filter(|&a| self.is_unit(a)).collect();
        if units != self.units {
            return Err(GroupoidError::Malformed(
                "unit list does not match the identity arrows".into(),
            ));
        }
        for a in 0..n {
            for b in 0..n {
                let composable = self.rng[b] == self.src[a];
                match self.compose[a][b] {
                    Some(ab) => {
                        if !composable {
                            return Err(GroupoidError::Malformed(format!(
                                "{}·{} defined but not composable",
                                self.arrows[a], self.arrows[b]
                            )));
                        }
                        if self.src[ab] != self.src[b] || self.rng[ab] != self.rng[a] {
                            return Err(GroupoidError::Malformed(format!(
                                "{}·{} has wrong endpoints",
                                self.arrows[a], self.arrows[b]
                            )));
                        }
                    }
                    None => {
                        if composable {
                            return Err(GroupoidError::Malformed(format!(
                                "composable pair {}·{} has no product",
                                self.arrows[a], self.arrows[b]
                            )));
                        }
                    }
                }
            }
        }
        for &u in &self.units {
            for a in 0..n {
                if self.src[a] == u && self.compose[a][u] != Some(a) {
                    return Err(GroupoidError::Malformed("unit not right-neutral".into()));
                }
                if self.rng[a] == u && self.compose[u][a] != Some(a) {
                    return Err(GroupoidError::Malformed("unit not left-neutral".into()));
                }
            }
        }
        for a in 0..n {
            let i = self.inv[a];
            if self.inv[i] != a || self.src[i] != self.rng[a] || self.rng[i] != self.src[a] {
                return Err(GroupoidError::Malformed(format!(
                    "inverse of {} is inconsistent",
                    self.arrows[a]
                )));
            }
            if self.compose[i][a] != Some(self.src[a]) || self.compose[a][i] != Some(self.rng[a])
            {
                return Err(GroupoidError::Malformed(format!(
                    "{} does not cancel with its inverse",
                    self.arrows[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.compose[a][b] else { continue };
                for c in 0..n {
                    let Some(bc) = self.compose[b][c] else { continue };
                    if self.compose[ab][c] != self.compose[a][bc] {
                        return Err(GroupoidError::Malformed(format!(
                            "associativity fails at ({},{},{})",
                            self.arrows[a], self.arrows[b], self.arrows[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// constructors and the deterministic test family

/// The single-unit groupoid.
pub fn point() -> Arc<FiniteGroupoid> {
    one_object(&FiniteGroupTable::trivial())
}

/// A groupoid with one unit and the given group as isotropy.
pub fn one_object(group: &FiniteGroupTable) -> Arc<FiniteGroupoid> {
    single_orbit(1, group)
}

/// The full equivalence groupoid R_n on n units.
pub fn full_equivalence(n: usize) -> Arc<FiniteGroupoid> {
    single_orbit(n, &FiniteGroupTable::trivial())
}

/// One orbit of n units with the given isotropy group: arrows (i, h, j) from
/// u_j to u_i with (i, h, j)·(j, h', k) = (i, hh', k).
pub fn single_orbit(n: usize, iso: &FiniteGroupTable) -> Arc<FiniteGroupoid> {
    assert!(n >= 1);
    let g = iso.size();
    let index = |i: usize, h: usize, j: usize| (i * n + j) * g + h;
    let mut arrows = Vec::with_capacity(n * n * g);
    let mut src = Vec::new();
    let mut rng = Vec::new();
    let mut inv = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for h in 0..g {
                let label = if i == j && h == iso.identity && g == 1 {
                    format!("u{}", i + 1)
                } else if i == j && h == iso.identity {
                    format!("u{}", i + 1)
                } else if g == 1 {
                    format!("a{}{}", i + 1, j + 1)
                } else {
                    format!("a{}{}.{}", i + 1, j + 1, iso.elements[h])
                };
                arrows.push(label);
                src.push(index(j, iso.identity, j));
                rng.push(index(i, iso.identity, i));
                inv.push(index(j, iso.inv(h), i));
            }
        }
    }
    let total = n * n * g;
    let mut compose = vec![vec![None; total]; total];
    for i in 0..n {
        for j in 0..n {
            for h in 0..g {
                for k in 0..n {
                    for h2 in 0..g {
                        compose[index(i, h, j)][index(j, h2, k)] =
                            Some(index(i, iso.mul(h, h2), k));
                    }
                }
            }
        }
    }
    let units = (0..total)
        .filter(|&a| src[a] == a && rng[a] == a)
        .collect();
    let g = FiniteGroupoid {
        arrows,
        src,
        rng,
        inv,
        units,
        compose,
    };
    debug_assert!(g.validate().is_ok());
    Arc::new(g)
}

/// Disjoint union; arrow labels get part prefixes to stay unique.
pub fn disjoint_union(a: &FiniteGroupoid, b: &FiniteGroupoid) -> Arc<FiniteGroupoid> {
    let na = a.size();
    let total = na + b.size();
    let mut arrows: Vec<String> = a.arrows.iter().map(|s| format!("L.{s}")).collect();
    arrows.extend(b.arrows.iter().map(|s| format!("R.{s}")));
    let mut src = a.src.clone();
    src.extend(b.src.iter().map(|&x| x + na));
    let mut rng = a.rng.clone();
    rng.extend(b.rng.iter().map(|&x| x + na));
    let mut inv = a.inv.clone();
    inv.extend(b.inv.iter().map(|&x| x + na));
    let mut compose = vec![vec![None; total]; total];
    for x in 0..na {
        for y in 0..na {
            compose[x][y] = a.compose[x][y];
        }
    }
    for x in 0..b.size() {
        for y in 0..b.size() {
            compose[x + na][y + na] = b.compose[x][y].map(|z| z + na);
        }
    }
    let units = (0..total).filter(|&x| src[x] == x && rng[x] == x).collect();
    let g = FiniteGroupoid {
        arrows,
        src,
        rng,
        inv,
        units,
        compose,
    };
    debug_assert!(g.validate().is_ok());
    Arc::new(g)
}

/// The deterministic cross-check family: thirteen groupoids small enough to
/// materialize over three-element coefficient tables.
pub fn test_family() -> Vec<(String, Arc<FiniteGroupoid>)> {
    let z2 = FiniteGroupTable::cyclic(2);
    let z3 = FiniteGroupTable::cyclic(3);
    let pt = point();
    let r2 = full_equivalence(2);
    let oz2 = one_object(&z2);
    let oz3 = one_object(&z3);
    vec![
        ("pt".into(), pt.clone()),
        ("pt+pt".into(), disjoint_union(&pt, &pt)),
        ("pt+pt+pt".into(), {
            let pp = disjoint_union(&pt, &pt);
            disjoint_union(&pp, &pt)
        }),
        ("z2".into(), oz2.clone()),
        ("z3".into(), oz3.clone()),
        ("r2".into(), r2.clone()),
        ("r2+pt".into(), disjoint_union(&r2, &pt)),
        ("z2+pt".into(), disjoint_union(&oz2, &pt)),
        ("z3+pt".into(), disjoint_union(&oz3, &pt)),
        ("z2+z2".into(), disjoint_union(&oz2, &oz2)),
        ("z2+z3".into(), disjoint_union(&oz2, &oz3)),
        ("r2+z2".into(), disjoint_union(&r2, &oz2)),
        ("r2+z3".into(), disjoint_union(&r2, &oz3)),
    ]
}

/// The wider family for the decomposition check: orbit sizes up to 3 and
/// isotropy in {trivial, Z/2, Z/3}, including unions. Decomposition is
/// verified combinatorially, so larger members cost nothing.
pub fn decomposition_family() -> Vec<(String, Arc<FiniteGroupoid>)> {
    let z2 = FiniteGroupTable::cyclic(2);
    let z3 = FiniteGroupTable::cyclic(3);
    let mut out = test_family();
    out.push(("r3".into(), full_equivalence(3)));
    out.push(("orbit2.z2".into(), single_orbit(2, &z2)));
    out.push(("orbit2.z3".into(), single_orbit(2, &z3)));
    out.push(("orbit3.z2".into(), single_orbit(3, &z2)));
    out.push(("orbit3.z3".into(), single_orbit(3, &z3)));
    out.push((
        "r2+r2".into(),
        disjoint_union(&full_equivalence(2), &full_equivalence(2)),
    ));
    out
}

pub fn builtin_groupoid(name: &str) -> Option<Arc<FiniteGroupoid>> {
    decomposition_family()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, g)| g)
}

// ---------------------------------------------------------------------------
// JSON loading

#[derive(Deserialize)]
struct GroupoidJson {
    units: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowJson>,
    #[serde(default)]
    compose: Vec<(String, String, String)>,
}

#[derive(Deserialize)]
struct ArrowJson {
    id: String,
    src: String,
    rng: String,
    inv: String,
}

/// Loads a groupoid from the JSON file format. Unit arrows are implicit (one
/// per listed unit); products with units are filled in automatically, and
/// every other composable pair must appear in `compose`.
pub fn groupoid_from_json(text: &str) -> Result<Arc<FiniteGroupoid>> {
    let raw: GroupoidJson =
        serde_json::from_str(text).map_err(|e| GroupoidError::Malformed(e.to_string()))?;
    let mut arrows: Vec<String> = raw.units.clone();
    arrows.extend(raw.arrows.iter().map(|a| a.id.clone()));
    let idx = |id: &str| -> Result<usize> {
        arrows
            .iter()
            .position(|a| a == id)
            .ok_or_else(|| GroupoidError::Malformed(format!("unknown arrow '{id}'")))
    };
    let nu = raw.units.len();
    let n = arrows.len();
    let mut src: Vec<usize> = (0..nu).collect();
    let mut rng: Vec<usize> = (0..nu).collect();
    let mut inv: Vec<usize> = (0..nu).collect();
    for a in &raw.arrows {
        let s = idx(&a.src)?;
        let r = idx(&a.rng)?;
        if s >= nu || r >= nu {
            return Err(GroupoidError::Malformed(format!(
                "arrow {} has non-unit endpoints",
                a.id
            )));
        }
        src.push(s);
        rng.push(r);
        inv.push(idx(&a.inv)?);
    }
    let mut compose = vec![vec![None; n]; n];
    for a in 0..n {
        for b in 0..n {
            if rng[b] != src[a] {
                continue;
            }
            if a < nu {
                compose[a][b] = Some(b);
            } else if b < nu {
                compose[a][b] = Some(a);
            }
        }
    }
    for (a, b, ab) in &raw.compose {
        let (a, b, ab) = (idx(a)?, idx(b)?, idx(ab)?);
        compose[a][b] = Some(ab);
    }
    let units = (0..nu).collect();
    let g = FiniteGroupoid {
        arrows,
        src,
        rng,
        inv,
        units,
        compose,
    };
    g.validate()?;
    Ok(Arc::new(g))
}

// ---------------------------------------------------------------------------
// algebra elements

/// A finitely supported map arrow → scalar, zero coefficients dropped.
#[derive(Debug, Clone)]
pub struct GroupoidAlgebraElement {
    pub groupoid: Arc<FiniteGroupoid>,
    pub support: BTreeMap<usize, SemiringValue>,
}

impl PartialEq for GroupoidAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.groupoid, &other.groupoid) || self.groupoid == other.groupoid)
            && self.support == other.support
    }
}

impl GroupoidAlgebraElement {
    pub fn zero(groupoid: Arc<FiniteGroupoid>) -> Self {
        GroupoidAlgebraElement {
            groupoid,
            support: BTreeMap::new(),
        }
    }

    pub fn delta(groupoid: Arc<FiniteGroupoid>, arrow: usize, coeff: SemiringValue) -> Self {
        let mut support = BTreeMap::new();
        if !coeff.is_zero() {
            support.insert(arrow, coeff);
        }
        GroupoidAlgebraElement { groupoid, support }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    fn same_parent(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.groupoid, &other.groupoid) || self.groupoid == other.groupoid {
            Ok(())
        } else {
            Err(GroupoidError::Domain(
                "elements belong to different groupoids".into(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let mut support = self.support.clone();
        for (a, c) in &other.support {
            match support.remove(a) {
                None => {
                    support.insert(*a, c.clone());
                }
                Some(existing) => {
                    let sum = existing.checked_add(c)?;
                    if !sum.is_zero() {
                        support.insert(*a, sum);
                    }
                }
            }
        }
        Ok(GroupoidAlgebraElement {
            groupoid: self.groupoid.clone(),
            support,
        })
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.support
            .iter()
            .map(|(a, c)| format!("{:?}·{}", c, self.groupoid.arrows[*a]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// (f ∗ g)(γ) = Σ over factorizations γ = αβ with r(β) = s(α).
pub fn convolve(
    f: &GroupoidAlgebraElement,
    g: &GroupoidAlgebraElement,
) -> Result<GroupoidAlgebraElement> {
    f.same_parent(g)?;
    let gpd = &f.groupoid;
    let mut support: BTreeMap<usize, SemiringValue> = BTreeMap::new();
    for (&a, ca) in &f.support {
        for (&b, cb) in &g.support {
            let Some(ab) = gpd.compose[a][b] else { continue };
            let c = ca.checked_mul(cb)?;
            if c.is_zero() {
                continue;
            }
            match support.remove(&ab) {
                None => {
                    support.insert(ab, c);
                }
                Some(existing) => {
                    let sum = existing.checked_add(&c)?;
                    if !sum.is_zero() {
                        support.insert(ab, sum);
                    }
                }
            }
        }
    }
    Ok(GroupoidAlgebraElement {
        groupoid: f.groupoid.clone(),
        support,
    })
}

/// f*(γ) = f(γ⁻¹).
pub fn involution(f: &GroupoidAlgebraElement) -> GroupoidAlgebraElement {
    let support = f
        .support
        .iter()
        .map(|(&a, c)| (f.groupoid.inv[a], c.clone()))
        .collect();
    GroupoidAlgebraElement {
        groupoid: f.groupoid.clone(),
        support,
    }
}

// ---------------------------------------------------------------------------
// structure analysis

#[derive(Debug, Clone)]
pub struct IsotropyGroup {
    pub base_unit: usize,
    /// Isotropy arrows at the base, in index order.
    pub arrows: Vec<usize>,
    pub table: FiniteGroupTable,
}

#[derive(Debug, Clone)]
pub struct StructuralAnalysis {
    /// Orbits as sorted unit lists, ordered by smallest member.
    pub orbits: Vec<Vec<usize>>,
    /// One isotropy group per orbit, at the orbit's smallest unit.
    pub isotropy: Vec<IsotropyGroup>,
    /// T: units with trivial isotropy.
    pub trivial_isotropy_units: Vec<usize>,
    /// Iso(G): arrows with equal source and range.
    pub iso_arrows: Vec<usize>,
    pub is_minimal: bool,
    pub is_effective: bool,
    /// Source in T forces range in T; always true for a valid groupoid.
    pub t_invariant: bool,
}

fn isotropy_at(g: &FiniteGroupoid, u: usize) -> IsotropyGroup {
    let arrows: Vec<usize> = (0..g.size())
        .filter(|&a| g.src[a] == u && g.rng[a] == u)
        .collect();
    let pos = |a: usize| arrows.iter().position(|&x| x == a).unwrap();
    let mut table = FiniteGroupTable {
        elements: arrows.iter().map(|&a| g.arrows[a].clone()).collect(),
        mul: arrows
            .iter()
            .map(|&a| arrows.iter().map(|&b| pos(g.compose[a][b].unwrap())).collect())
            .collect(),
        identity: pos(u),
        inverse: vec![],
    };
    table.validate().expect("isotropy arrows form a group");
    IsotropyGroup {
        base_unit: u,
        arrows,
        table,
    }
}

pub fn structural_analysis(g: &FiniteGroupoid) -> StructuralAnalysis {
    let n = g.size();
    // orbit partition: in a groupoid the single-arrow relation on units is
    // already an equivalence
    let mut orbit_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for &u in &g.units {
        if orbit_of.contains_key(&u) {
            continue;
        }
        let members: Vec<usize> = g
            .units
            .iter()
            .copied()
            .filter(|&v| {
                (0..n).any(|a| g.src[a] == u && g.rng[a] == v)
            })
            .collect();
        for &v in &members {
            orbit_of.insert(v, orbits.len());
        }
        orbits.push(members);
    }
    let isotropy: Vec<IsotropyGroup> = orbits.iter().map(|o| isotropy_at(g, o[0])).collect();
    let trivial_isotropy_units: Vec<usize> = g
        .units
        .iter()
        .copied()
        .filter(|&u| (0..n).filter(|&a| g.src[a] == u && g.rng[a] == u).count() == 1)
        .collect();
    let iso_arrows: Vec<usize> = (0..n).filter(|&a| g.src[a] == g.rng[a]).collect();
    let is_minimal = orbits.len() == 1;
    let is_effective = iso_arrows.len() == g.units.len();
    let t_set: BTreeSet<usize> = trivial_isotropy_units.iter().copied().collect();
    let t_invariant = (0..n)
        .all(|a| !t_set.contains(&g.src[a]) || t_set.contains(&g.rng[a]));
    StructuralAnalysis {
        orbits,
        isotropy,
        trivial_isotropy_units,
        iso_arrows,
        is_minimal,
        is_effective,
        t_invariant,
    }
}

// ---------------------------------------------------------------------------
// decomposition into matrix algebras over isotropy group algebras

#[derive(Debug, Clone)]
pub struct OrbitBlock {
    /// Units of the orbit; units[0] is the base point.
    pub units: Vec<usize>,
    /// transversal[k]: a chosen arrow from the base to units[k].
    pub transversal: Vec<usize>,
    pub isotropy: IsotropyGroup,
}

/// The basis map of the decomposition: each arrow goes to a matrix unit over
/// an isotropy group algebra. Arrow γ maps to g_{r(γ)}⁻¹ γ g_{s(γ)} in
/// coordinates (orbit, row of r(γ), column of s(γ)).
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub blocks: Vec<OrbitBlock>,
    /// Per arrow: (orbit, row, column, isotropy element).
    pub image: Vec<(usize, usize, usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub bijective: bool,
    pub multiplicative: bool,
    pub failures: Vec<String>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.multiplicative
    }
}

pub fn decompose(g: &FiniteGroupoid) -> Decomposition {
    let analysis = structural_analysis(g);
    let n = g.size();
    let mut blocks = Vec::new();
    for orbit in &analysis.orbits {
        let base = orbit[0];
        let transversal: Vec<usize> = orbit
            .iter()
            .map(|&v| {
                (0..n)
                    .find(|&a| g.src[a] == base && g.rng[a] == v)
                    .expect("orbit members are connected by an arrow")
            })
            .collect();
        blocks.push(OrbitBlock {
            units: orbit.clone(),
            transversal,
            isotropy: isotropy_at(g, base),
        });
    }
    let orbit_of = |u: usize| -> usize {
        blocks
            .iter()
            .position(|b| b.units.contains(&u))
            .unwrap()
    };
    let image = (0..n)
        .map(|gamma| {
            let o = orbit_of(g.src[gamma]);
            let block = &blocks[o];
            let row = block.units.iter().position(|&u| u == g.rng[gamma]).unwrap();
            let col = block.units.iter().position(|&u| u == g.src[gamma]).unwrap();
            let g_r = block.transversal[row];
            let g_s = block.transversal[col];
            let t1 = g.compose[gamma][g_s].unwrap();
            let t2 = g.compose[g.inv[g_r]][t1].unwrap();
            let iso = block
                .isotropy
                .arrows
                .iter()
                .position(|&a| a == t2)
                .unwrap();
            (o, row, col, iso)
        })
        .collect();
    Decomposition { blocks, image }
}

/// Checks that the basis map is a bijection onto matrix units and turns
/// composition into matrix multiplication (with zero for non-composable
/// pairs).
pub fn verify_decomposition(g: &FiniteGroupoid, d: &Decomposition) -> DecompositionReport {
    let mut failures = Vec::new();
    let n = g.size();
    let mut seen: BTreeSet<(usize, usize, usize, usize)> = BTreeSet::new();
    for (a, &img) in d.image.iter().enumerate() {
        if !seen.insert(img) {
            failures.push(format!("image of {} collides", g.arrows[a]));
        }
    }
    let expected: usize = d
        .blocks
        .iter()
        .map(|b| b.units.len() * b.units.len() * b.isotropy.table.size())
        .sum();
    let bijective = failures.is_empty() && seen.len() == n && expected == n;
    if expected != n {
        failures.push(format!(
            "basis count mismatch: {n} arrows vs {expected} matrix units"
        ));
    }
    let mut multiplicative = true;
    for a in 0..n {
        for b in 0..n {
            let (oa, ra, ca, ha) = d.image[a];
            let (ob, rb, cb, hb) = d.image[b];
            match g.compose[a][b] {
                Some(ab) => {
                    let (oc, rc, cc, hc) = d.image[ab];
                    let product_matches = oa == ob
                        && ca == rb
                        && oc == oa
                        && rc == ra
                        && cc == cb
                        && hc == d.blocks[oa].isotropy.table.mul(ha, hb);
                    if !product_matches {
                        multiplicative = false;
                        failures.push(format!(
                            "φ({})·φ({}) ≠ φ({})",
                            g.arrows[a], g.arrows[b], g.arrows[ab]
                        ));
                    }
                }
                None => {
                    if oa == ob && ca == rb {
                        multiplicative = false;
                        failures.push(format!(
                            "φ({})·φ({}) should vanish",
                            g.arrows[a], g.arrows[b]
                        ));
                    }
                }
            }
        }
    }
    DecompositionReport {
        bijective,
        multiplicative,
        failures,
    }
}

/// A human-readable shape of the decomposition target, e.g. "M_2(S) × S[Z2]".
pub fn decomposition_shape(d: &Decomposition) -> String {
    d.blocks
        .iter()
        .map(|b| {
            let n = b.units.len();
            let g = b.isotropy.table.size();
            match (n, g) {
                (1, 1) => "S".to_string(),
                (1, _) => format!("S[G{g}]"),
                (_, 1) => format!("M_{n}(S)"),
                _ => format!("M_{n}(S[G{g}])"),
            }
        })
        .collect::<Vec<_>>()
        .join(" × ")
}

// ---------------------------------------------------------------------------
// restriction and unit representation

/// Restricts f to the complement D of an invariant unit set V, together with
/// the restricted groupoid G|_D.
pub fn restriction_hom(
    g: &Arc<FiniteGroupoid>,
    v_units: &[usize],
    f: &GroupoidAlgebraElement,
) -> Result<(Arc<FiniteGroupoid>, GroupoidAlgebraElement)> {
    let v_set: BTreeSet<usize> = v_units.iter().copied().collect();
    for &u in &v_set {
        if !g.is_unit(u) {
            return Err(GroupoidError::Domain(format!(
                "{} is not a unit",
                g.arrows[u]
            )));
        }
    }
    // invariance: an arrow may not cross the boundary
    for a in 0..g.size() {
        if v_set.contains(&g.src[a]) != v_set.contains(&g.rng[a]) {
            return Err(GroupoidError::Domain(
                "the given unit set is not invariant".into(),
            ));
        }
    }
    let keep: Vec<usize> = (0..g.size())
        .filter(|&a| !v_set.contains(&g.src[a]) && !v_set.contains(&g.rng[a]))
        .collect();
    if keep.is_empty() {
        return Err(GroupoidError::Domain(
            "the complement of the unit set is empty".into(),
        ));
    }
    let reindex: BTreeMap<usize, usize> =
        keep.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let restricted = FiniteGroupoid {
        arrows: keep.iter().map(|&a| g.arrows[a].clone()).collect(),
        src: keep.iter().map(|&a| reindex[&g.src[a]]).collect(),
        rng: keep.iter().map(|&a| reindex[&g.rng[a]]).collect(),
        inv: keep.iter().map(|&a| reindex[&g.inv[a]]).collect(),
        units: keep
            .iter()
            .filter(|&&a| g.is_unit(a))
            .map(|a| reindex[a])
            .collect(),
        compose: keep
            .iter()
            .map(|&a| {
                keep.iter()
                    .map(|&b| g.compose[a][b].map(|ab| reindex[&ab]))
                    .collect()
            })
            .collect(),
    };
    restricted.validate()?;
    let restricted = Arc::new(restricted);
    let support = f
        .support
        .iter()
        .filter_map(|(a, c)| reindex.get(a).map(|&i| (i, c.clone())))
        .collect();
    let image = GroupoidAlgebraElement {
        groupoid: restricted.clone(),
        support,
    };
    Ok((restricted, image))
}

/// ψ(f): the Boolean unit-indexed matrix with a 1 at (r(α), s(α)) for every
/// α in the support.
pub fn unit_representation(f: &GroupoidAlgebraElement) -> Result<Vec<Vec<bool>>> {
    let g = &f.groupoid;
    let nu = g.units.len();
    let unit_pos = |u: usize| g.units.iter().position(|&x| x == u).unwrap();
    let mut m = vec![vec![false; nu]; nu];
    for (&a, c) in &f.support {
        match c {
            SemiringValue::Boolean(true) => {
                m[unit_pos(g.rng[a])][unit_pos(g.src[a])] = true;
            }
            SemiringValue::Boolean(false) => {}
            _ => {
                return Err(GroupoidError::Domain(
                    "unit representation requires Boolean coefficients".into(),
                ))
            }
        }
    }
    Ok(m)
}

pub fn boolean_matrix_multiply(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).any(|k| a[i][k] && b[k][j]))
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// ideals over the Boolean semifield

#[derive(Debug, Clone)]
pub struct IdealReport {
    /// Supports of the ideal members, as sorted arrow sets; the empty set is
    /// the zero element.
    pub elements: Vec<BTreeSet<usize>>,
    pub is_full: bool,
    /// The sum closure stopped at the cap; `is_full` is still exact.
    pub truncated: bool,
}

pub const DEFAULT_IDEAL_CAP: usize = 1 << 12;

/// The two-sided ideal generated by a Boolean element: closure of the
/// sandwich products δ_α ∗ f ∗ δ_β under addition. Full iff every basis
/// arrow appears, which needs only the products.
pub fn ideal_generated(
    g: &Arc<FiniteGroupoid>,
    f: &GroupoidAlgebraElement,
    cap: usize,
) -> Result<IdealReport> {
    let support: BTreeSet<usize> = f
        .support
        .iter()
        .map(|(&a, c)| match c {
            SemiringValue::Boolean(true) => Ok(a),
            _ => Err(GroupoidError::Domain(
                "ideal closure requires Boolean coefficients".into(),
            )),
        })
        .collect::<Result<_>>()?;
    let n = g.size();
    let mut products: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            let mut prod = BTreeSet::new();
            for &x in &support {
                let Some(xb) = g.compose[x][b] else { continue };
                let Some(axb) = g.compose[a][xb] else { continue };
                prod.insert(axb);
            }
            if !prod.is_empty() {
                products.insert(prod);
            }
        }
    }
    let is_full = (0..n).all(|gamma| products.contains(&BTreeSet::from([gamma])));
    // sum closure
    let mut elements: BTreeSet<BTreeSet<usize>> = products.clone();
    elements.insert(BTreeSet::new());
    let mut truncated = false;
    let mut frontier: Vec<BTreeSet<usize>> = elements.iter().cloned().collect();
    'outer: while let Some(x) = frontier.pop() {
        for p in &products {
            let mut sum = x.clone();
            sum.extend(p.iter().copied());
            if !elements.contains(&sum) {
                if elements.len() >= cap {
                    truncated = true;
                    break 'outer;
                }
                elements.insert(sum.clone());
                frontier.push(sum);
            }
        }
    }
    Ok(IdealReport {
        elements: elements.into_iter().collect(),
        is_full,
        truncated,
    })
}

// ---------------------------------------------------------------------------
// materialization and the simplicity cross-check

pub const DEFAULT_GROUPOID_CAP: u128 = 1 << 12;

#[derive(Debug)]
pub struct MaterializedGroupoidAlgebra {
    pub table: Arc<FiniteAlgebraTable>,
    pub semiring: Arc<FiniteAlgebraTable>,
    pub groupoid: Arc<FiniteGroupoid>,
}

impl MaterializedGroupoidAlgebra {
    pub fn coeff(&self, index: usize, arrow: usize) -> usize {
        let s = self.semiring.size();
        (index / s.pow(arrow as u32)) % s
    }

    pub fn encode(&self, coeffs: &dyn Fn(usize) -> usize) -> usize {
        let s = self.semiring.size();
        let mut index = 0usize;
        let mut weight = 1usize;
        for a in 0..self.groupoid.size() {
            index += coeffs(a) * weight;
            weight *= s;
        }
        index
    }
}

/// Enumerates the full convolution algebra into oracle table form: carrier
/// indices are mixed-radix with one semiring digit per arrow.
pub fn materialize_groupoid_algebra(
    g: &Arc<FiniteGroupoid>,
    s: &Arc<FiniteAlgebraTable>,
    cap: u128,
) -> Result<MaterializedGroupoidAlgebra> {
    let base = s.size();
    let slots = g.size();
    let required = (base as u128)
        .checked_pow(slots as u32)
        .unwrap_or(u128::MAX);
    if required > cap {
        return Err(GroupoidError::CapExceeded { required, cap });
    }
    let size = required as usize;
    let decode = |index: usize| -> Vec<usize> {
        let mut digits = Vec::with_capacity(slots);
        let mut rest = index;
        for _ in 0..slots {
            digits.push(rest % base);
            rest /= base;
        }
        digits
    };
    let encode =
        |digits: &[usize]| -> usize { digits.iter().rev().fold(0, |acc, &d| acc * base + d) };
    let all: Vec<Vec<usize>> = (0..size).map(decode).collect();
    let triples: Vec<(usize, usize, usize)> = (0..slots)
        .flat_map(|a| {
            (0..slots).filter_map(move |b| Some((a, b, g.compose[a][b]?)))
        })
        .collect();
    let mut add = vec![vec![0usize; size]; size];
    let mut mul = vec![vec![0usize; size]; size];
    for x in 0..size {
        for y in 0..size {
            let sum: Vec<usize> = all[x]
                .iter()
                .zip(&all[y])
                .map(|(&p, &q)| s.add(p, q))
                .collect();
            add[x][y] = encode(&sum);
            let mut prod = vec![s.zero; slots];
            for &(a, b, ab) in &triples {
                let p = all[x][a];
                if p == s.zero {
                    continue;
                }
                let q = all[y][b];
                if q == s.zero {
                    continue;
                }
                prod[ab] = s.add(prod[ab], s.mul(p, q));
            }
            mul[x][y] = encode(&prod);
        }
    }
    let label = |digits: &[usize]| -> String {
        let terms: Vec<String> = (0..slots)
            .filter(|&a| digits[a] != s.zero)
            .map(|a| {
                if Some(digits[a]) == s.one {
                    g.arrows[a].clone()
                } else {
                    format!("{}·{}", s.carrier[digits[a]], g.arrows[a])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    };
    let carrier: Vec<String> = all.iter().map(|d| label(d)).collect();
    let one = s.one.map(|one| {
        let mut digits = vec![s.zero; slots];
        for &u in &g.units {
            digits[u] = one;
        }
        encode(&digits)
    });
    let table = Arc::new(FiniteAlgebraTable {
        carrier,
        add,
        mul,
        zero: 0,
        one,
    });
    Ok(MaterializedGroupoidAlgebra {
        table,
        semiring: s.clone(),
        groupoid: g.clone(),
    })
}

// ---------------------------------------------------------------------------
// the agreement-on-T congruence

#[derive(Debug)]
pub struct EquivTReport {
    pub partition: CongruencePartition,
    pub is_congruence: bool,
    pub quotient: FiniteAlgebraTable,
    /// Arrow indices with both endpoints in T.
    pub t_arrows: Vec<usize>,
}

/// The congruence identifying elements that agree on every arrow with both
/// endpoints among the trivial-isotropy units, on the materialized algebra.
pub fn equiv_t_congruence(
    g: &Arc<FiniteGroupoid>,
    s: &Arc<FiniteAlgebraTable>,
    cap: u128,
) -> Result<EquivTReport> {
    let m = materialize_groupoid_algebra(g, s, cap)?;
    let analysis = structural_analysis(g);
    let t_set: BTreeSet<usize> = analysis.trivial_isotropy_units.iter().copied().collect();
    let t_arrows: Vec<usize> = (0..g.size())
        .filter(|&a| t_set.contains(&g.src[a]) && t_set.contains(&g.rng[a]))
        .collect();
    let size = m.table.size();
    let mut key_to_class: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut class_of = Vec::with_capacity(size);
    for x in 0..size {
        let key: Vec<usize> = t_arrows.iter().map(|&a| m.coeff(x, a)).collect();
        let next = key_to_class.len();
        class_of.push(*key_to_class.entry(key).or_insert(next));
    }
    let partition = CongruencePartition::from_class_map(class_of);
    let is_congruence = partition.is_congruence_of(&m.table);
    // quotient on the smallest representative of each class
    let reps: Vec<usize> = partition.blocks.iter().map(|b| b[0]).collect();
    let class = |x: usize| partition.class_of[x];
    let quotient = FiniteAlgebraTable {
        carrier: reps
            .iter()
            .map(|&r| format!("[{}]", m.table.carrier[r]))
            .collect(),
        add: reps
            .iter()
            .map(|&a| reps.iter().map(|&b| class(m.table.add(a, b))).collect())
            .collect(),
        mul: reps
            .iter()
            .map(|&a| reps.iter().map(|&b| class(m.table.mul(a, b))).collect())
            .collect(),
        zero: class(0),
        one: m.table.one.map(class),
    };
    Ok(EquivTReport {
        partition,
        is_congruence,
        quotient,
        t_arrows,
    })
}

// ---------------------------------------------------------------------------
// simplicity

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientKind {
    Boolean,
    Field,
    Other,
}

pub fn coefficient_kind(s: &FiniteAlgebraTable) -> CoefficientKind {
    if s.is_boolean_semifield() {
        CoefficientKind::Boolean
    } else if s.is_field() {
        CoefficientKind::Field
    } else {
        CoefficientKind::Other
    }
}

#[derive(Debug)]
pub struct SimplicityReport {
    pub by_theorem: bool,
    pub by_bruteforce: bool,
    pub is_minimal: bool,
    pub is_effective: bool,
    pub coefficient_kind: CoefficientKind,
}

impl SimplicityReport {
    pub fn agree(&self) -> bool {
        self.by_theorem == self.by_bruteforce
    }
}

/// The theorem route (minimal ∧ effective ∧ coefficients Boolean or a field;
/// the density condition is automatic in the finite discrete case) against
/// the brute-force congruence oracle on the materialized algebra.
pub fn simplicity_check(
    g: &Arc<FiniteGroupoid>,
    s: &Arc<FiniteAlgebraTable>,
    cap: u128,
) -> Result<SimplicityReport> {
    let analysis = structural_analysis(g);
    let kind = coefficient_kind(s);
    let by_theorem = analysis.is_minimal
        && analysis.is_effective
        && matches!(kind, CoefficientKind::Boolean | CoefficientKind::Field);
    let m = materialize_groupoid_algebra(g, s, cap)?;
    let by_bruteforce = is_congruence_simple(&m.table)?;
    Ok(SimplicityReport {
        by_theorem,
        by_bruteforce,
        is_minimal: analysis.is_minimal,
        is_effective: analysis.is_effective,
        coefficient_kind: kind,
    })
}

/// Convenience for tests: the ideal generated by the indicator of one unit.
pub fn unit_indicator_ideal_full(g: &Arc<FiniteGroupoid>, u: usize) -> Result<bool> {
    let f = GroupoidAlgebraElement::delta(g.clone(), u, SemiringValue::Boolean(true));
    Ok(ideal_generated(g, &f, DEFAULT_IDEAL_CAP)?.is_full)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bone() -> SemiringValue {
        SemiringValue::Boolean(true)
    }

    fn boolean() -> Arc<FiniteAlgebraTable> {
        Arc::new(FiniteAlgebraTable::boolean())
    }

    fn delta(g: &Arc<FiniteGroupoid>, id: &str) -> GroupoidAlgebraElement {
        GroupoidAlgebraElement::delta(g.clone(), g.arrow_index(id).unwrap(), bone())
    }

    #[test]
    fn family_members_validate() {
        for (name, g) in decomposition_family() {
            assert!(g.validate().is_ok(), "{name} should validate");
        }
    }

    #[test]
    fn convolution_basis_arrows() {
        let r2 = full_equivalence(2);
        // a12: u2 → u1, a21: u1 → u2
        let a12 = delta(&r2, "a12");
        let a21 = delta(&r2, "a21");
        let u1 = delta(&r2, "u1");
        let u2 = delta(&r2, "u2");
        assert_eq!(convolve(&a12, &a21).unwrap(), u1);
        assert_eq!(convolve(&a21, &a12).unwrap(), u2);
        assert!(convolve(&a12, &a12).unwrap().is_zero());
        assert_eq!(convolve(&u1, &u1).unwrap(), u1);
    }

    #[test]
    fn convolution_r2_square() {
        let r2 = full_equivalence(2);
        let f = delta(&r2, "a12").add(&delta(&r2, "a21")).unwrap();
        let sq = convolve(&f, &f).unwrap();
        let expected = delta(&r2, "u1").add(&delta(&r2, "u2")).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn involution_examples() {
        let r2 = full_equivalence(2);
        assert_eq!(involution(&delta(&r2, "a12")), delta(&r2, "a21"));
        let f = delta(&r2, "a12").add(&delta(&r2, "u1")).unwrap();
        let expected = delta(&r2, "a21").add(&delta(&r2, "u1")).unwrap();
        assert_eq!(involution(&f), expected);
        // (f∗g)* = g*∗f* on a sample
        let g = delta(&r2, "a21").add(&delta(&r2, "u2")).unwrap();
        let lhs = involution(&convolve(&f, &g).unwrap());
        let rhs = convolve(&involution(&g), &involution(&f)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn analysis_r2() {
        let r2 = full_equivalence(2);
        let a = structural_analysis(&r2);
        assert_eq!(a.orbits.len(), 1);
        assert_eq!(a.orbits[0].len(), 2);
        assert!(a.is_minimal && a.is_effective);
        assert_eq!(a.trivial_isotropy_units, r2.units);
        assert!(a.t_invariant);
    }

    #[test]
    fn analysis_z2_one_object() {
        let g = one_object(&FiniteGroupTable::cyclic(2));
        let a = structural_analysis(&g);
        assert_eq!(a.orbits.len(), 1);
        assert!(a.is_minimal);
        assert!(!a.is_effective);
        assert!(a.trivial_isotropy_units.is_empty());
        assert_eq!(a.isotropy[0].table.size(), 2);
    }

    #[test]
    fn analysis_r2_plus_point() {
        let g = disjoint_union(&full_equivalence(2), &point());
        let a = structural_analysis(&g);
        assert_eq!(a.orbits.len(), 2);
        assert!(!a.is_minimal);
        assert!(a.is_effective);
    }

    #[test]
    fn decompose_family_verifies() {
        for (name, g) in decomposition_family() {
            let d = decompose(&g);
            let report = verify_decomposition(&g, &d);
            assert!(report.passed(), "{name}: {:?}", report.failures);
        }
    }

    #[test]
    fn decompose_shapes() {
        let r2 = full_equivalence(2);
        assert_eq!(decomposition_shape(&decompose(&r2)), "M_2(S)");
        let z2 = one_object(&FiniteGroupTable::cyclic(2));
        assert_eq!(decomposition_shape(&decompose(&z2)), "S[G2]");
        let g = disjoint_union(&r2, &point());
        assert_eq!(decomposition_shape(&decompose(&g)), "M_2(S) × S");
    }

    #[test]
    fn restriction_examples() {
        let g = disjoint_union(&full_equivalence(2), &point());
        let pt_unit = g.arrow_index("R.u1").unwrap();
        let r2_units: Vec<usize> = [g.arrow_index("L.u1").unwrap(), g.arrow_index("L.u2").unwrap()]
            .to_vec();
        let f = delta(&g, "R.u1").add(&delta(&g, "L.a12")).unwrap();
        let (restricted, image) = restriction_hom(&g, &r2_units, &f).unwrap();
        assert_eq!(restricted.size(), 1);
        assert_eq!(image.support.len(), 1);
        // restriction along the empty set is the identity
        let (same, id_img) = restriction_hom(&g, &[], &f).unwrap();
        assert_eq!(same.size(), g.size());
        assert_eq!(id_img.support.len(), f.support.len());
        // one unit of an orbit is not invariant
        let r2 = full_equivalence(2);
        let u1 = r2.arrow_index("u1").unwrap();
        let f2 = delta(&r2, "u2");
        assert!(restriction_hom(&r2, &[u1], &f2).is_err());
        let _ = pt_unit;
    }

    #[test]
    fn unit_representation_examples() {
        let r2 = full_equivalence(2);
        // a12: u2 → u1 gives the matrix unit E_{12} in unit coordinates
        let m = unit_representation(&delta(&r2, "a12")).unwrap();
        assert_eq!(m, vec![vec![false, true], vec![false, false]]);
        assert_eq!(
            unit_representation(&GroupoidAlgebraElement::zero(r2.clone())).unwrap(),
            vec![vec![false; 2]; 2]
        );
        // non-injectivity on the non-effective one-object Z/2
        let z2 = one_object(&FiniteGroupTable::cyclic(2));
        let psi_g = unit_representation(&delta(&z2, "a11.g1")).unwrap();
        let psi_u = unit_representation(&delta(&z2, "u1")).unwrap();
        assert_eq!(psi_g, psi_u);
    }

    #[test]
    fn unit_representation_multiplicative() {
        let g = disjoint_union(&full_equivalence(2), &one_object(&FiniteGroupTable::cyclic(2)));
        for a in 0..g.size() {
            for b in 0..g.size() {
                let fa = GroupoidAlgebraElement::delta(g.clone(), a, bone());
                let fb = GroupoidAlgebraElement::delta(g.clone(), b, bone());
                let lhs = unit_representation(&convolve(&fa, &fb).unwrap()).unwrap();
                let rhs = boolean_matrix_multiply(
                    &unit_representation(&fa).unwrap(),
                    &unit_representation(&fb).unwrap(),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ideal_examples() {
        let r2 = full_equivalence(2);
        let u = delta(&r2, "u1");
        let report = ideal_generated(&r2, &u, DEFAULT_IDEAL_CAP).unwrap();
        assert!(report.is_full);
        let g = disjoint_union(&full_equivalence(2), &point());
        let pt = delta(&g, "R.u1");
        let report = ideal_generated(&g, &pt, DEFAULT_IDEAL_CAP).unwrap();
        assert!(!report.is_full);
        let zero = GroupoidAlgebraElement::zero(g.clone());
        let report = ideal_generated(&g, &zero, DEFAULT_IDEAL_CAP).unwrap();
        assert!(!report.is_full);
        assert_eq!(report.elements, vec![BTreeSet::new()]);
    }

    #[test]
    fn lemma_minimal_iff_unit_ideals_full() {
        for (name, g) in test_family() {
            let minimal = structural_analysis(&g).is_minimal;
            let all_full = g
                .units
                .iter()
                .all(|&u| unit_indicator_ideal_full(&g, u).unwrap());
            assert_eq!(minimal, all_full, "{name}");
        }
    }

    #[test]
    fn equiv_t_r2_diagonal() {
        let r2 = full_equivalence(2);
        let report = equiv_t_congruence(&r2, &boolean(), DEFAULT_GROUPOID_CAP).unwrap();
        assert!(report.is_congruence);
        assert!(report.partition.is_diagonal());
    }

    #[test]
    fn equiv_t_z2_full() {
        let z2 = one_object(&FiniteGroupTable::cyclic(2));
        let report = equiv_t_congruence(&z2, &boolean(), DEFAULT_GROUPOID_CAP).unwrap();
        assert!(report.is_congruence);
        assert!(report.partition.is_full());
        assert_eq!(report.quotient.size(), 1);
    }

    #[test]
    fn equiv_t_r2_plus_z2_blocks() {
        let g = disjoint_union(&full_equivalence(2), &one_object(&FiniteGroupTable::cyclic(2)));
        let report = equiv_t_congruence(&g, &boolean(), DEFAULT_GROUPOID_CAP).unwrap();
        assert!(report.is_congruence);
        // elements are identified iff they agree on the four R_2 arrows
        assert_eq!(report.partition.blocks.len(), 16);
        assert_eq!(report.t_arrows.len(), 4);
    }

    #[test]
    fn simplicity_spec_examples() {
        let r2 = full_equivalence(2);
        let rep = simplicity_check(&r2, &boolean(), DEFAULT_GROUPOID_CAP).unwrap();
        assert!(rep.by_theorem && rep.by_bruteforce);
        let z2 = one_object(&FiniteGroupTable::cyclic(2));
        let rep = simplicity_check(&z2, &boolean(), DEFAULT_GROUPOID_CAP).unwrap();
        assert!(!rep.by_theorem && !rep.by_bruteforce);
        let g = disjoint_union(&r2, &point());
        let rep = simplicity_check(&g, &boolean(), DEFAULT_GROUPOID_CAP).unwrap();
        assert!(!rep.by_theorem && !rep.by_bruteforce);
    }

    #[test]
    fn materialized_convolution_associative() {
        let r2 = full_equivalence(2);
        let m = materialize_groupoid_algebra(&r2, &boolean(), DEFAULT_GROUPOID_CAP).unwrap();
        let t = &m.table;
        assert!(t.validate_axioms().unwrap().is_empty());
        for a in 0..t.size() {
            for b in 0..t.size() {
                for c in 0..t.size() {
                    assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "units": ["u", "v"],
            "arrows": [
                {"id": "a", "src": "v", "rng": "u", "inv": "b"},
                {"id": "b", "src": "u", "rng": "v", "inv": "a"}
            ],
            "compose": [["a", "b", "u"], ["b", "a", "v"]]
        }"#;
        let g = groupoid_from_json(text).unwrap();
        assert_eq!(g.size(), 4);
        let a = structural_analysis(&g);
        assert!(a.is_minimal && a.is_effective);
        // missing compose entry is rejected
        let bad = r#"{
            "units": ["u", "v"],
            "arrows": [
                {"id": "a", "src": "v", "rng": "u", "inv": "b"},
                {"id": "b", "src": "u", "rng": "v", "inv": "a"}
            ],
            "compose": [["a", "b", "u"]]
        }"#;
        assert!(groupoid_from_json(bad).is_err());
    }
}
