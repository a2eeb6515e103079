//! Exact hemiring/semiring arithmetic on finite multiplication tables and the
//! brute-force congruence machinery used as the ground-truth oracle by the
//! groupoid modules.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SemiringError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("seed index {0} out of range for carrier of size {1}")]
    SeedOutOfRange(usize, usize),
    #[error("cannot mix scalar kinds {0} and {1}")]
    MixedKinds(&'static str, &'static str),
    #[error("domain error: {0}")]
    Domain(String),
}

/// A finite hemiring given by its carrier and total operation tables.
///
/// The carrier ordering is the canonical element identity; all tables are
/// index-based so that reports are bit-exact reproducible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteAlgebraTable {
    pub carrier: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub law: String,
    pub witness: Vec<usize>,
}

impl FiniteAlgebraTable {
    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    /// Shape check: both tables total over the carrier, all indices in range.
    pub fn check_well_formed(&self) -> Result<(), SemiringError> {
        let n = self.size();
        if n == 0 {
            return Err(SemiringError::Malformed("empty carrier".into()));
        }
        for (name, table) in [("add", &self.add), ("mul", &self.mul)] {
            if table.len() != n {
                return Err(SemiringError::Malformed(format!(
                    "{name} table has {} rows, carrier has {n}",
                    table.len()
                )));
            }
            for (i, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(SemiringError::Malformed(format!(
                        "{name} row {i} has {} entries, carrier has {n}",
                        row.len()
                    )));
                }
                if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                    return Err(SemiringError::Malformed(format!(
                        "{name} row {i} contains out-of-range index {bad}"
                    )));
                }
            }
        }
        if self.zero >= n {
            return Err(SemiringError::Malformed(format!(
                "zero index {} out of range",
                self.zero
            )));
        }
        if let Some(one) = self.one {
            if one >= n {
                return Err(SemiringError::Malformed(format!(
                    "one index {one} out of range"
                )));
            }
        }
        Ok(())
    }

    /// Exhaustive hemiring axiom check. Empty report iff all axioms hold;
    /// each violation names the offending law together with a witness tuple.
    pub fn validate_axioms(&self) -> Result<Vec<AxiomViolation>, SemiringError> {
        self.check_well_formed()?;
        let n = self.size();
        let mut out = Vec::new();
        let mut report = |law: &str, witness: Vec<usize>| {
            out.push(AxiomViolation {
                law: law.to_string(),
                witness,
            });
        };
        'comm: for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    report("additive commutativity", vec![a, b]);
                    break 'comm;
                }
            }
        }
        'addassoc: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        report("additive associativity", vec![a, b, c]);
                        break 'addassoc;
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| self.add(self.zero, a) != a) {
            report("additive identity", vec![a]);
        }
        'mulassoc: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        report("multiplicative associativity", vec![a, b, c]);
                        break 'mulassoc;
                    }
                }
            }
        }
        'ldist: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        report("left distributivity", vec![a, b, c]);
                        break 'ldist;
                    }
                }
            }
        }
        'rdist: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        report("right distributivity", vec![a, b, c]);
                        break 'rdist;
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| {
            self.mul(self.zero, a) != self.zero || self.mul(a, self.zero) != self.zero
        }) {
            report("zero annihilation", vec![a]);
        }
        if let Some(one) = self.one {
            if let Some(a) = (0..n).find(|&a| self.mul(one, a) != a || self.mul(a, one) != a) {
                report("multiplicative identity", vec![a]);
            }
            if one == self.zero && n > 1 {
                report("one distinct from zero", vec![one]);
            }
        }
        Ok(out)
    }

    /// a + b = 0 forces a = b = 0.
    pub fn is_zerosumfree(&self) -> bool {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) == self.zero && (a != self.zero || b != self.zero) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff the table is the two-element semifield with idempotent
    /// addition, up to relabeling.
    pub fn is_boolean_semifield(&self) -> bool {
        if self.size() != 2 || self.one != Some(1 - self.zero) {
            return false;
        }
        let one = 1 - self.zero;
        self.add(one, one) == one
    }

    /// True iff the table is a field: a commutative ring with 1 ≠ 0 in which
    /// every nonzero element has a multiplicative inverse.
    pub fn is_field(&self) -> bool {
        let n = self.size();
        let one = match self.one {
            Some(o) if o != self.zero => o,
            _ => return false,
        };
        // additive inverses
        for a in 0..n {
            if !(0..n).any(|b| self.add(a, b) == self.zero) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        (0..n)
            .filter(|&a| a != self.zero)
            .all(|a| (0..n).any(|b| self.mul(a, b) == one))
    }

    /// The Boolean semifield ({0,1}, or, and).
    pub fn boolean() -> Self {
        FiniteAlgebraTable {
            carrier: vec!["0".into(), "1".into()],
            add: vec![vec![0, 1], vec![1, 1]],
            mul: vec![vec![0, 0], vec![0, 1]],
            zero: 0,
            one: Some(1),
        }
    }

    /// The ring Z/n with both operations mod n (a field table when n is prime).
    pub fn zn_ring(n: usize) -> Self {
        assert!(n >= 1);
        FiniteAlgebraTable {
            carrier: (0..n).map(|i| i.to_string()).collect(),
            add: (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
            mul: (0..n)
                .map(|a| (0..n).map(|b| (a * b) % n).collect())
                .collect(),
            zero: 0,
            one: Some(1 % n),
        }
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "boolean" | "bool" | "b" => Some(Self::boolean()),
            "f2" => Some(Self::zn_ring(2)),
            "f3" => Some(Self::zn_ring(3)),
            "f5" => Some(Self::zn_ring(5)),
            "f7" => Some(Self::zn_ring(7)),
            "z4" => Some(Self::zn_ring(4)),
            _ => None,
        }
    }
}

/// A partition of a table algebra's carrier that is closed under the
/// congruence property: a ~ b implies t+a ~ t+b, t·a ~ t·b, a·t ~ b·t.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruencePartition {
    /// Class index per carrier element; classes numbered by first occurrence.
    pub class_of: Vec<usize>,
    /// Blocks sorted by smallest member, each block sorted.
    pub blocks: Vec<Vec<usize>>,
}

impl CongruencePartition {
    pub fn from_class_map(mut class_of: Vec<usize>) -> Self {
        // renumber classes by first occurrence
        let mut seen: Vec<Option<usize>> = vec![None; class_of.len()];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..class_of.len() {
            let c = class_of[i];
            let id = match seen[c] {
                Some(id) => id,
                None => {
                    let id = blocks.len();
                    seen[c] = Some(id);
                    blocks.push(Vec::new());
                    id
                }
            };
            class_of[i] = id;
            blocks[id].push(i);
        }
        CongruencePartition { class_of, blocks }
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_full(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks.len() == self.class_of.len()
    }

    /// Exhaustive check that the partition really is a congruence of `table`.
    pub fn is_congruence_of(&self, table: &FiniteAlgebraTable) -> bool {
        let n = table.size();
        if self.class_of.len() != n {
            return false;
        }
        for a in 0..n {
            for b in 0..n {
                if !self.same_class(a, b) {
                    continue;
                }
                for t in 0..n {
                    if !self.same_class(table.add(t, a), table.add(t, b))
                        || !self.same_class(table.mul(t, a), table.mul(t, b))
                        || !self.same_class(table.mul(a, t), table.mul(b, t))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True iff every block of `self` is contained in a block of `other`.
    pub fn refines(&self, other: &CongruencePartition) -> bool {
        self.blocks
            .iter()
            .all(|block| block.iter().all(|&x| other.same_class(block[0], x)))
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo] = hi;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        true
    }
}

/// Smallest congruence of `table` containing all `seeds`, by union-find with
/// a worklist: whenever a, b merge, the pairs (t+a, t+b), (t·a, t·b), (a·t, b·t)
/// are enqueued for every t, to a fixpoint.
pub fn congruence_closure(
    table: &FiniteAlgebraTable,
    seeds: &[(usize, usize)],
) -> Result<CongruencePartition, SemiringError> {
    table.check_well_formed()?;
    let n = table.size();
    for &(a, b) in seeds {
        if a >= n {
            return Err(SemiringError::SeedOutOfRange(a, n));
        }
        if b >= n {
            return Err(SemiringError::SeedOutOfRange(b, n));
        }
    }
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = seeds.to_vec();
    while let Some((a, b)) = work.pop() {
        if !uf.union(a, b) {
            continue;
        }
        for t in 0..n {
            work.push((table.add[t][a], table.add[t][b]));
            work.push((table.mul[t][a], table.mul[t][b]));
            work.push((table.mul[a][t], table.mul[b][t]));
        }
    }
    let class_of = (0..n).map(|i| uf.find(i)).collect();
    Ok(CongruencePartition::from_class_map(class_of))
}

/// True iff the only congruences are the diagonal and the full relation,
/// decided by pair-generated closures. The one-element hemiring is declared
/// not congruence-simple.
pub fn is_congruence_simple(table: &FiniteAlgebraTable) -> Result<bool, SemiringError> {
    table.check_well_formed()?;
    let n = table.size();
    if n < 2 {
        return Ok(false);
    }
    for a in 0..n {
        for b in a + 1..n {
            if !congruence_closure(table, &[(a, b)])?.is_full() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A tagged exact scalar. Arithmetic between different tags is rejected.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SemiringValue {
    Boolean(bool),
    /// Residue mod a small prime.
    Residue { modulus: u32, value: u32 },
    /// Exact rational in lowest terms with positive denominator
    /// (num-rational maintains that normal form).
    Rational(BigRational),
    /// Index into a shared finite table algebra.
    TableElement {
        table: Arc<FiniteAlgebraTable>,
        index: usize,
    },
}

impl SemiringValue {
    pub fn rational_int(n: i64) -> Self {
        SemiringValue::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        SemiringValue::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn kind(&self) -> &'static str {
        match self {
            SemiringValue::Boolean(_) => "boolean",
            SemiringValue::Residue { .. } => "residue",
            SemiringValue::Rational(_) => "rational",
            SemiringValue::TableElement { .. } => "table",
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SemiringError> {
        match (self, other) {
            (SemiringValue::Boolean(_), SemiringValue::Boolean(_))
            | (SemiringValue::Rational(_), SemiringValue::Rational(_)) => Ok(()),
            (
                SemiringValue::Residue { modulus: m, .. },
                SemiringValue::Residue { modulus: k, .. },
            ) => {
                if m == k {
                    Ok(())
                } else {
                    Err(SemiringError::Domain(format!(
                        "residue moduli differ: {m} vs {k}"
                    )))
                }
            }
            (
                SemiringValue::TableElement { table: t, .. },
                SemiringValue::TableElement { table: u, .. },
            ) => {
                if Arc::ptr_eq(t, u) || t == u {
                    Ok(())
                } else {
                    Err(SemiringError::Domain("table algebras differ".into()))
                }
            }
            _ => Err(SemiringError::MixedKinds(self.kind(), other.kind())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            SemiringValue::Boolean(b) => !b,
            SemiringValue::Residue { value, .. } => *value == 0,
            SemiringValue::Rational(q) => q.is_zero(),
            SemiringValue::TableElement { table, index } => *index == table.zero,
        }
    }

    pub fn zero_like(&self) -> Self {
        match self {
            SemiringValue::Boolean(_) => SemiringValue::Boolean(false),
            SemiringValue::Residue { modulus, .. } => SemiringValue::Residue {
                modulus: *modulus,
                value: 0,
            },
            SemiringValue::Rational(_) => SemiringValue::Rational(BigRational::zero()),
            SemiringValue::TableElement { table, .. } => SemiringValue::TableElement {
                table: table.clone(),
                index: table.zero,
            },
        }
    }

    pub fn one_like(&self) -> Result<Self, SemiringError> {
        match self {
            SemiringValue::Boolean(_) => Ok(SemiringValue::Boolean(true)),
            SemiringValue::Residue { modulus, .. } => Ok(SemiringValue::Residue {
                modulus: *modulus,
                value: 1 % *modulus,
            }),
            SemiringValue::Rational(_) => Ok(SemiringValue::Rational(BigRational::one())),
            SemiringValue::TableElement { table, .. } => match table.one {
                Some(one) => Ok(SemiringValue::TableElement {
                    table: table.clone(),
                    index: one,
                }),
                None => Err(SemiringError::Domain("table algebra has no unit".into())),
            },
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SemiringError> {
        self.check_compatible(other)?;
        Ok(match (self, other) {
            (SemiringValue::Boolean(a), SemiringValue::Boolean(b)) => {
                SemiringValue::Boolean(*a || *b)
            }
            (
                SemiringValue::Residue { modulus, value: a },
                SemiringValue::Residue { value: b, .. },
            ) => SemiringValue::Residue {
                modulus: *modulus,
                value: (a + b) % modulus,
            },
            (SemiringValue::Rational(a), SemiringValue::Rational(b)) => {
                SemiringValue::Rational(a + b)
            }
            (
                SemiringValue::TableElement { table, index: a },
                SemiringValue::TableElement { index: b, .. },
            ) => SemiringValue::TableElement {
                table: table.clone(),
                index: table.add(*a, *b),
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SemiringError> {
        self.check_compatible(other)?;
        Ok(match (self, other) {
            (SemiringValue::Boolean(a), SemiringValue::Boolean(b)) => {
                SemiringValue::Boolean(*a && *b)
            }
            (
                SemiringValue::Residue { modulus, value: a },
                SemiringValue::Residue { value: b, .. },
            ) => SemiringValue::Residue {
                modulus: *modulus,
                value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
            },
            (SemiringValue::Rational(a), SemiringValue::Rational(b)) => {
                SemiringValue::Rational(a * b)
            }
            (
                SemiringValue::TableElement { table, index: a },
                SemiringValue::TableElement { index: b, .. },
            ) => SemiringValue::TableElement {
                table: table.clone(),
                index: table.mul(*a, *b),
            },
            _ => unreachable!(),
        })
    }
}

/// The zerosumfree collapse pi(0) = 0, pi(s) = 1 for s != 0, into the Boolean
/// semifield. Rejects scalars whose ambient semiring is not zerosumfree,
/// since pi would not be additive there.
pub fn project_to_boolean(v: &SemiringValue) -> Result<SemiringValue, SemiringError> {
    match v {
        SemiringValue::Boolean(b) => Ok(SemiringValue::Boolean(*b)),
        SemiringValue::Residue { modulus, .. } => Err(SemiringError::Domain(format!(
            "Z/{modulus} is not zerosumfree"
        ))),
        SemiringValue::Rational(q) => {
            if q.is_negative() {
                Err(SemiringError::Domain(
                    "negative rational lies outside the zerosumfree nonnegative cone".into(),
                ))
            } else {
                Ok(SemiringValue::Boolean(!q.is_zero()))
            }
        }
        SemiringValue::TableElement { table, index } => {
            if !table.is_zerosumfree() {
                return Err(SemiringError::Domain(
                    "table semiring is not zerosumfree".into(),
                ));
            }
            Ok(SemiringValue::Boolean(*index != table.zero))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_table_valid() {
        assert!(FiniteAlgebraTable::boolean().validate_axioms().unwrap().is_empty());
    }

    #[test]
    fn broken_commutativity_reported() {
        let mut t = FiniteAlgebraTable::boolean();
        t.add = vec![vec![0, 1], vec![0, 1]]; // add(1,0) = 0 but add(0,1) = 1
        let report = t.validate_axioms().unwrap();
        assert!(report.iter().any(|v| v.law == "additive commutativity"));
        let v = report
            .iter()
            .find(|v| v.law == "additive commutativity")
            .unwrap();
        assert_eq!(v.witness, vec![0, 1]);
    }

    #[test]
    fn z4_ring_valid() {
        // all 64 triples swept by the axiom loops
        assert!(FiniteAlgebraTable::zn_ring(4).validate_axioms().unwrap().is_empty());
    }

    #[test]
    fn ragged_table_rejected() {
        let mut t = FiniteAlgebraTable::boolean();
        t.mul[1].pop();
        assert!(matches!(t.validate_axioms(), Err(SemiringError::Malformed(_))));
    }

    #[test]
    fn closure_merges_boolean() {
        let b = FiniteAlgebraTable::boolean();
        let p = congruence_closure(&b, &[(0, 1)]).unwrap();
        assert!(p.is_full());
    }

    #[test]
    fn closure_z4_mod2() {
        let z4 = FiniteAlgebraTable::zn_ring(4);
        let p = congruence_closure(&z4, &[(0, 2)]).unwrap();
        assert_eq!(p.blocks, vec![vec![0, 2], vec![1, 3]]);
        assert!(p.is_congruence_of(&z4));
    }

    #[test]
    fn simplicity_small_cases() {
        assert!(is_congruence_simple(&FiniteAlgebraTable::boolean()).unwrap());
        assert!(!is_congruence_simple(&FiniteAlgebraTable::zn_ring(4)).unwrap());
        assert!(is_congruence_simple(&FiniteAlgebraTable::zn_ring(5)).unwrap());
        // trivial hemiring convention
        assert!(!is_congruence_simple(&FiniteAlgebraTable::zn_ring(1)).unwrap());
    }

    #[test]
    fn zerosumfree_checks() {
        assert!(FiniteAlgebraTable::boolean().is_zerosumfree());
        assert!(!FiniteAlgebraTable::zn_ring(4).is_zerosumfree());
        // three-element idempotent-add chain 0 < 1 < inf
        let t = FiniteAlgebraTable {
            carrier: vec!["0".into(), "1".into(), "inf".into()],
            add: vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
            mul: vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]],
            zero: 0,
            one: Some(1),
        };
        assert!(t.validate_axioms().unwrap().is_empty());
        assert!(t.is_zerosumfree());
    }

    #[test]
    fn projection_values() {
        assert_eq!(
            project_to_boolean(&SemiringValue::rational(7, 3)).unwrap(),
            SemiringValue::Boolean(true)
        );
        assert_eq!(
            project_to_boolean(&SemiringValue::rational_int(0)).unwrap(),
            SemiringValue::Boolean(false)
        );
        let z4 = Arc::new(FiniteAlgebraTable::zn_ring(4));
        let v = SemiringValue::TableElement {
            table: z4,
            index: 1,
        };
        assert!(matches!(
            project_to_boolean(&v),
            Err(SemiringError::Domain(_))
        ));
    }

    #[test]
    fn projection_is_homomorphism_on_zerosumfree_tables() {
        // pi respects both tables, exhaustively, on every zerosumfree builtin
        let b = Arc::new(FiniteAlgebraTable::boolean());
        for table in [b] {
            let n = table.size();
            for a in 0..n {
                for c in 0..n {
                    let va = SemiringValue::TableElement {
                        table: table.clone(),
                        index: a,
                    };
                    let vc = SemiringValue::TableElement {
                        table: table.clone(),
                        index: c,
                    };
                    let lhs_add = project_to_boolean(&va.checked_add(&vc).unwrap()).unwrap();
                    let rhs_add = project_to_boolean(&va)
                        .unwrap()
                        .checked_add(&project_to_boolean(&vc).unwrap())
                        .unwrap();
                    assert_eq!(lhs_add, rhs_add);
                    let lhs_mul = project_to_boolean(&va.checked_mul(&vc).unwrap()).unwrap();
                    let rhs_mul = project_to_boolean(&va)
                        .unwrap()
                        .checked_mul(&project_to_boolean(&vc).unwrap())
                        .unwrap();
                    assert_eq!(lhs_mul, rhs_mul);
                }
            }
        }
    }

    #[test]
    fn mixed_tags_rejected() {
        let a = SemiringValue::Boolean(true);
        let b = SemiringValue::rational_int(1);
        assert!(a.checked_add(&b).is_err());
    }
}
