//! The end-to-end acceptance suite: nine criteria, each an oracle-equivalence
//! or exact-example check, reported as one pass/fail line apiece.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fingroupoid::{
    decomposition_family, simplicity_check, structural_analysis,
    test_family, unit_indicator_ideal_full, verify_decomposition, decompose,
    DEFAULT_GROUPOID_CAP,
};
use crate::groupkit::{materialize_finite_algebra, FiniteGroupTable};
use crate::semiring::{is_congruence_simple, FiniteAlgebraTable};
use crate::selfsim::{
    builtin_system, parse_element, parse_path, parse_xi, EventuallyPeriodicPath,
    GroupElementWord, PathWord, SelfSimilarSystem,
};
use crate::tightalg::{
    canonical_point, fixed_and_trivially_fixed, in_cylinder, is_idempotent, open_equal,
    omega_faithful_probe, hausdorff_probe, sigma_apply, triple_equal, triple_multiply,
    triple_star, BasicBisection, OpenSetElement, Triple,
};

#[derive(Debug)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {}. {} ({} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.index,
            self.name,
            self.millis,
            self.detail
        )
    }
}

type Check = std::result::Result<String, String>;

pub fn run_all() -> Vec<CriterionResult> {
    let criteria: Vec<(&'static str, fn() -> Check)> = vec![
        ("congruence oracle", congruence_oracle),
        ("matrix decomposition", matrix_decomposition),
        ("simplicity cross-check", simplicity_cross_check),
        ("minimality vs unit ideals", minimality_vs_unit_ideals),
        ("odometer battery", odometer_battery),
        ("grigorchuk battery", grigorchuk_battery),
        ("katsura battery", katsura_battery),
        ("boolean calculus", boolean_calculus),
        ("inverse semigroup laws", inverse_semigroup_laws),
    ];
    criteria
        .into_iter()
        .enumerate()
        .map(|(i, (name, f))| {
            let start = Instant::now();
            let outcome = f();
            let millis = start.elapsed().as_millis();
            match outcome {
                Ok(detail) => CriterionResult {
                    index: i + 1,
                    name,
                    passed: true,
                    detail,
                    millis,
                },
                Err(detail) => CriterionResult {
                    index: i + 1,
                    name,
                    passed: false,
                    detail,
                    millis,
                },
            }
        })
        .collect()
}

fn fail<T: std::fmt::Display>(e: T) -> String {
    e.to_string()
}

fn congruence_oracle() -> Check {
    for name in ["boolean", "f2", "f3", "f5"] {
        let t = FiniteAlgebraTable::builtin(name).ok_or("missing builtin")?;
        if !is_congruence_simple(&t).map_err(fail)? {
            return Err(format!("{name} should be congruence-simple"));
        }
    }
    let boolean = Arc::new(FiniteAlgebraTable::boolean());
    let mut trivial = FiniteGroupTable::trivial();
    trivial.validate().map_err(fail)?;
    let m2b = materialize_finite_algebra(&boolean, &Arc::new(trivial), 2, 1 << 16)
        .map_err(fail)?;
    if m2b.table.size() != 16 || !is_congruence_simple(&m2b.table).map_err(fail)? {
        return Err("M_2(B) should be congruence-simple with 16 elements".into());
    }
    let z4 = FiniteAlgebraTable::builtin("z4").ok_or("missing builtin")?;
    if is_congruence_simple(&z4).map_err(fail)? {
        return Err("Z/4 should not be congruence-simple".into());
    }
    let mut z2 = FiniteGroupTable::cyclic(2);
    z2.validate().map_err(fail)?;
    let bz2 = materialize_finite_algebra(&boolean, &Arc::new(z2), 1, 1 << 16).map_err(fail)?;
    if is_congruence_simple(&bz2.table).map_err(fail)? {
        return Err("B[Z/2] should not be congruence-simple".into());
    }
    Ok("B, F_2, F_3, F_5, M_2(B) simple; Z/4, B[Z/2] not".into())
}

fn matrix_decomposition() -> Check {
    let family = decomposition_family();
    for (name, g) in &family {
        let d = decompose(g);
        let report = verify_decomposition(g, &d);
        if !report.passed() {
            return Err(format!("{name}: {:?}", report.failures));
        }
    }
    Ok(format!(
        "φ bijective and multiplicative on all basis pairs for {} groupoids",
        family.len()
    ))
}

fn simplicity_cross_check() -> Check {
    let family = test_family();
    if family.len() < 12 {
        return Err("test family is too small".into());
    }
    for required in ["r2", "z2", "r2+pt", "r2+z2"] {
        if !family.iter().any(|(n, _)| n == required) {
            return Err(format!("family is missing {required}"));
        }
    }
    let mut runs = 0usize;
    for sname in ["boolean", "f2", "f3"] {
        let s = Arc::new(FiniteAlgebraTable::builtin(sname).ok_or("missing builtin")?);
        for (gname, g) in &family {
            let report = simplicity_check(g, &s, DEFAULT_GROUPOID_CAP as u128).map_err(fail)?;
            if !report.agree() {
                return Err(format!(
                    "{gname} over {sname}: theorem {} vs brute force {}",
                    report.by_theorem, report.by_bruteforce
                ));
            }
            runs += 1;
        }
    }
    Ok(format!("theorem route = brute force on {runs} (groupoid, semiring) pairs"))
}

fn minimality_vs_unit_ideals() -> Check {
    let family = test_family();
    for (name, g) in &family {
        let minimal = structural_analysis(g).is_minimal;
        let all_full = g
            .units
            .iter()
            .map(|&u| unit_indicator_ideal_full(g, u))
            .collect::<std::result::Result<Vec<bool>, _>>()
            .map_err(fail)?
            .into_iter()
            .all(|b| b);
        if minimal != all_full {
            return Err(format!(
                "{name}: minimal = {minimal} but unit ideals full = {all_full}"
            ));
        }
    }
    Ok(format!(
        "minimal ⇔ every unit indicator generates the full ideal, {} groupoids over B",
        family.len()
    ))
}

fn odometer_battery() -> Check {
    let sys = builtin_system("odometer").map_err(fail)?;
    let a = parse_element(&sys, "a").map_err(fail)?;
    let p = parse_path(&sys, "e1,e1,e0").map_err(fail)?;
    let expect = parse_path(&sys, "e0,e0,e1").map_err(fail)?;
    if sys.act_on_path(&a, &p) != expect {
        return Err("a.(e1 e1 e0) ≠ e0 e0 e1".into());
    }
    // enumerate length-k paths once per level
    for k in 1..=6usize {
        let paths = all_paths_of_length(&sys, k);
        let full = GroupElementWord::power(BigInt::from(1u64 << k));
        if !paths.iter().all(|q| sys.act_on_path(&full, q) == *q) {
            return Err(format!("a^(2^{k}) moves a length-{k} path"));
        }
        for m in 1..(1u64 << k) {
            let g = GroupElementWord::power(BigInt::from(m));
            if paths.iter().all(|q| sys.act_on_path(&g, q) == *q) {
                return Err(format!("a^{m} already fixes all length-{k} paths"));
            }
        }
    }
    for j in 1..=4i64 {
        let g = GroupElementWord::power(BigInt::from(j));
        let msf = sys.minimal_strongly_fixed(&g, 10).map_err(fail)?;
        if !msf.is_empty() {
            return Err(format!("minimal_strongly_fixed(a^{j}, 10) is nonempty"));
        }
    }
    Ok("carry action, exact power orders k ≤ 6, empty strongly fixed sets".into())
}

fn grigorchuk_battery() -> Check {
    let sys = builtin_system("grigorchuk").map_err(fail)?;
    let elem = |t: &str| parse_element(&sys, t).unwrap();
    for rel in ["a*a", "b*b", "c*c", "d*d"] {
        if !sys.is_identity(&elem(rel)).map_err(fail)? {
            return Err(format!("{rel} ≠ 1"));
        }
    }
    if !sys.equal(&elem("b*c"), &elem("d")).map_err(fail)? {
        return Err("bc ≠ d".into());
    }
    let msf = sys
        .minimal_strongly_fixed(&elem("d"), 7)
        .map_err(fail)?;
    let expect: Vec<PathWord> = ["e0", "e1,e1,e1,e0", "e1,e1,e1,e1,e1,e1,e0"]
        .iter()
        .map(|t| parse_path(&sys, t).unwrap())
        .collect();
    if msf != expect {
        return Err(format!("minimal_strongly_fixed(d, 7) has {} paths", msf.len()));
    }
    let d_triple = Triple::new(
        &sys,
        PathWord::empty(0),
        elem("d"),
        PathWord::empty(0),
    )
    .map_err(fail)?;
    let xi = parse_xi(&sys, "(e1)*").map_err(fail)?;
    let (f, tf) = fixed_and_trivially_fixed(&sys, &d_triple, &xi, 8).map_err(fail)?;
    if !f.is_true() || !tf.is_false() {
        return Err(format!("F/TF witness: got ({f:?}, {tf:?})"));
    }
    let gs = vec![elem("b"), elem("c"), elem("d")];
    let report = omega_faithful_probe(&sys, &xi, &gs, 8, 5).map_err(fail)?;
    if !report.hypothesis_met.is_true() || !report.verdict.is_false() {
        return Err("ω-faithfulness counterexample not reproduced".into());
    }
    Ok("relations, strongly fixed paths, F∖TF witness, ω counterexample".into())
}

fn katsura_battery() -> Check {
    let sys = builtin_system("katsura").map_err(fail)?;
    let ids: Vec<&str> = sys.graph.edges.iter().map(|e| e.id.as_str()).collect();
    let expect_ids = [
        "e11_0", "e11_1", "e12", "e13", "e21", "e22_0", "e22_1", "e23", "e32", "e33_0",
        "e33_1",
    ];
    if ids != expect_ids {
        return Err(format!("edge set {ids:?}"));
    }
    let g = parse_element(&sys, "g").map_err(fail)?;
    // (image edge, cocycle exponent) per edge
    let table = [
        ("e11_0", "e11_1", 0i64),
        ("e11_1", "e11_0", 1),
        ("e12", "e12", 2),
        ("e13", "e13", 0),
        ("e21", "e21", 2),
        ("e22_0", "e22_1", 0),
        ("e22_1", "e22_0", 1),
        ("e23", "e23", 2),
        ("e32", "e32", 2),
        ("e33_0", "e33_1", 0),
        ("e33_1", "e33_0", 1),
    ];
    for (e, img, q) in table {
        let ei = sys.graph.edges.iter().position(|x| x.id == e).unwrap();
        let (actual_img, sec) = sys.act_on_edge(&g, ei);
        if sys.graph.edges[actual_img].id != img {
            return Err(format!("g.{e} = {}", sys.graph.edges[actual_img].id));
        }
        if !sys
            .equal(&sec, &GroupElementWord::power(BigInt::from(q)))
            .map_err(fail)?
        {
            return Err(format!("φ(g, {e}) ≠ g^{q}"));
        }
    }
    // vertex-mixing, e13-free paths double the exponent per edge
    let mixing: Vec<usize> = sys
        .graph
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| ["e12", "e21", "e23", "e32"].contains(&e.id.as_str()))
        .map(|(i, _)| i)
        .collect();
    let mut checked = 0usize;
    for path in composable_paths(&sys, &mixing, 5) {
        let n = path.len();
        let sec = sys.cocycle(&g, &path);
        if !sys
            .equal(&sec, &GroupElementWord::power(BigInt::from(1i64 << n)))
            .map_err(fail)?
        {
            return Err(format!(
                "cocycle along {} ≠ g^(2^{n})",
                path.display(&sys.graph)
            ));
        }
        checked += 1;
    }
    let e13 = sys.graph.edges.iter().position(|e| e.id == "e13").unwrap();
    let all: Vec<usize> = (0..sys.graph.edges.len()).collect();
    for path in composable_paths(&sys, &all, 5) {
        if !path.edges.contains(&e13) {
            continue;
        }
        if !sys.is_identity(&sys.cocycle(&g, &path)).map_err(fail)? {
            return Err(format!(
                "cocycle along {} ≠ 1",
                path.display(&sys.graph)
            ));
        }
        checked += 1;
    }
    let report = hausdorff_probe(&sys, 1, 4).map_err(fail)?;
    if !report.verdict.is_false() {
        return Err("no non-Hausdorff evidence at depth 4".into());
    }
    Ok(format!(
        "11-edge table, {checked} cocycle paths, non-Hausdorff evidence"
    ))
}

fn boolean_calculus() -> Check {
    let mut unknowns = 0usize;
    let mut pairs = 0usize;
    for name in ["odometer", "grigorchuk", "katsura"] {
        let sys = builtin_system(name).map_err(fail)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5747_4500 + name.len() as u64);
        let pool = triple_pool(&sys);
        for _ in 0..200 {
            let s = random_triple(&sys, &pool, &mut rng);
            let t = random_triple(&sys, &pool, &mut rng);
            match check_pair_against_oracle(&sys, &s, &t) {
                Ok(true) => {}
                Ok(false) => unknowns += 1,
                Err(e) => {
                    return Err(format!(
                        "{name}: {} · {}: {e}",
                        s.display(&sys),
                        t.display(&sys)
                    ))
                }
            }
            pairs += 1;
        }
    }
    if unknowns > 0 {
        return Err(format!("{unknowns} Unknown verdicts on the random suite"));
    }
    // the germ collapse
    let sys = builtin_system("grigorchuk").map_err(fail)?;
    let d = Triple::new(
        &sys,
        PathWord::empty(0),
        parse_element(&sys, "d").map_err(fail)?,
        PathWord::empty(0),
    )
    .map_err(fail)?;
    let z_e0 = parse_path(&sys, "e0").map_err(fail)?;
    let lhs = OpenSetElement::from_bisections(vec![BasicBisection::theta(&sys, d, &z_e0)
        .map_err(fail)?
        .ok_or("Θ(v,d,v;Z(e0)) is empty")?]);
    let unit = Triple::new(
        &sys,
        z_e0.clone(),
        sys.identity(),
        z_e0,
    )
    .map_err(fail)?;
    let rhs = OpenSetElement::from_bisections(vec![
        BasicBisection::whole(unit).ok_or("zero bisection")?
    ]);
    let report = open_equal(&sys, &lhs, &rhs, 3).map_err(fail)?;
    if !report.verdict.is_true() {
        return Err(format!("germ collapse verdict {:?}", report.verdict));
    }
    Ok(format!(
        "{pairs} random products match the σ-action oracle, 0 Unknown; germ collapse = True"
    ))
}

fn inverse_semigroup_laws() -> Check {
    let mut checks = 0usize;
    for name in ["odometer", "grigorchuk", "katsura"] {
        let sys = builtin_system(name).map_err(fail)?;
        let pool = triple_pool(&sys);
        for s in pool.iter().take(60) {
            let st = triple_star(s);
            let lhs = triple_multiply(&sys, &triple_multiply(&sys, s, &st).map_err(fail)?, s)
                .map_err(fail)?;
            if !triple_equal(&sys, &lhs, s).map_err(fail)?.is_true() {
                return Err(format!("{name}: s s* s ≠ s for {}", s.display(&sys)));
            }
            checks += 1;
        }
        for s in pool.iter().take(16) {
            for t in pool.iter().take(16) {
                let prod = triple_multiply(&sys, s, t).map_err(fail)?;
                let lhs = triple_star(&prod);
                let rhs = triple_multiply(&sys, &triple_star(t), &triple_star(s))
                    .map_err(fail)?;
                if !triple_equal(&sys, &lhs, &rhs).map_err(fail)?.is_true() {
                    return Err(format!(
                        "{name}: (st)* ≠ t*s* for {} and {}",
                        s.display(&sys),
                        t.display(&sys)
                    ));
                }
                checks += 1;
            }
        }
        for t in pool.iter().take(40) {
            let sq = triple_multiply(&sys, t, t).map_err(fail)?;
            let by_square = triple_equal(&sys, &sq, t).map_err(fail)?;
            let by_form = is_idempotent(&sys, t).map_err(fail)?;
            if by_square != by_form {
                return Err(format!(
                    "{name}: idempotent characterization fails for {}",
                    t.display(&sys)
                ));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} law instances across the three builtins"))
}

// ---------------------------------------------------------------------------
// helpers

fn all_paths_of_length(sys: &SelfSimilarSystem, k: usize) -> Vec<PathWord> {
    let mut frontier: Vec<PathWord> = (0..sys.graph.vertices.len())
        .map(PathWord::empty)
        .collect();
    for _ in 0..k {
        let mut next = Vec::new();
        for p in &frontier {
            for e in sys.graph.edges_into(p.src(&sys.graph)) {
                let mut edges = p.edges.clone();
                edges.push(e);
                next.push(PathWord {
                    edges,
                    base: p.rng(&sys.graph),
                });
            }
        }
        frontier = next;
    }
    frontier
}

fn composable_paths(sys: &SelfSimilarSystem, allowed: &[usize], max_len: usize) -> Vec<PathWord> {
    let mut out = Vec::new();
    let mut frontier: Vec<PathWord> = allowed
        .iter()
        .map(|&e| PathWord {
            edges: vec![e],
            base: sys.graph.edges[e].rng,
        })
        .collect();
    out.extend(frontier.iter().cloned());
    for _ in 1..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for &e in allowed {
                if sys.graph.edges[e].rng == p.src(&sys.graph) {
                    let mut edges = p.edges.clone();
                    edges.push(e);
                    next.push(PathWord {
                        edges,
                        base: p.rng(&sys.graph),
                    });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// All valid triples over paths of length ≤ 2 and words of length ≤ 2,
/// deterministic order.
fn triple_pool(sys: &Arc<SelfSimilarSystem>) -> Vec<Triple> {
    let mut paths: Vec<PathWord> = (0..sys.graph.vertices.len())
        .map(PathWord::empty)
        .collect();
    for k in 1..=2usize {
        paths.extend(all_paths_of_length(sys, k));
    }
    let mut words = vec![sys.identity()];
    words.extend(sys.word_ball(2));
    let mut out = Vec::new();
    for b in &paths {
        for g in &words {
            for a in &paths {
                if let Ok(t) = Triple::new(sys, a.clone(), g.clone(), b.clone()) {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn random_triple(
    _sys: &Arc<SelfSimilarSystem>,
    pool: &[Triple],
    rng: &mut ChaCha8Rng,
) -> Triple {
    pool[rng.gen_range(0..pool.len())].clone()
}

/// Compares the product triple against the σ-action oracle on sampled
/// points: domain membership and images must match pointwise. Returns
/// Ok(false) when a cap made a sample undecidable.
fn check_pair_against_oracle(
    sys: &SelfSimilarSystem,
    s: &Triple,
    t: &Triple,
) -> std::result::Result<bool, String> {
    let p = triple_multiply(sys, s, t).map_err(fail)?;
    let (Triple::Elem { beta: beta_s, .. }, Triple::Elem { beta: beta_t, .. }) = (s, t) else {
        return Ok(true);
    };
    // sample points inside and around the factor domains
    let mut samples: Vec<EventuallyPeriodicPath> = Vec::new();
    samples.push(canonical_point(&sys.graph, beta_t));
    samples.push(canonical_point(&sys.graph, beta_s));
    for ext in composable_paths_from(sys, beta_t, 2) {
        samples.push(canonical_point(&sys.graph, &ext));
    }
    for eta in &samples {
        let oracle_image = match sigma_apply(sys, t, eta).map_err(fail)? {
            Some(mid) => sigma_apply(sys, s, &mid).map_err(fail)?,
            None => None,
        };
        let product_image = match &p {
            Triple::Zero => None,
            Triple::Elem { .. } => sigma_apply(sys, &p, eta).map_err(fail)?,
        };
        match (oracle_image, product_image) {
            (None, None) => {}
            (Some(x), Some(y)) => {
                if x != y {
                    return Err(format!(
                        "images differ at {}: {} vs {}",
                        eta.display(&sys.graph),
                        x.display(&sys.graph),
                        y.display(&sys.graph)
                    ));
                }
            }
            (a, b) => {
                return Err(format!(
                    "domain mismatch at {}: oracle in = {}, product in = {}",
                    eta.display(&sys.graph),
                    a.is_some(),
                    b.is_some()
                ));
            }
        }
    }
    // a zero product must have empty oracle domain on a wider sample
    if p.is_zero() && !in_cylinder(sys, &canonical_point(&sys.graph, beta_t), beta_t) {
        return Err("sampling bug: canonical point left its own cylinder".into());
    }
    Ok(true)
}

fn composable_paths_from(
    sys: &SelfSimilarSystem,
    base: &PathWord,
    extra: usize,
) -> Vec<PathWord> {
    let mut out = Vec::new();
    let mut frontier = vec![base.clone()];
    for _ in 0..extra {
        let mut next = Vec::new();
        for p in &frontier {
            for e in sys.graph.edges_into(p.src(&sys.graph)) {
                let mut edges = p.edges.clone();
                edges.push(e);
                next.push(PathWord {
                    edges,
                    base: p.rng(&sys.graph),
                });
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
