//! Finite groups, the integers, group algebras S G with convolution, matrix
//! algebras M_n(S G), and materialization of small such algebras into
//! `FiniteAlgebraTable` form for the congruence oracle.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::selfsim::{GroupElementWord, SelfSimilarSystem};
use crate::semiring::{FiniteAlgebraTable, SemiringValue};

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("malformed group table: {0}")]
    Malformed(String),
    #[error("operation between elements of different groups ({0} vs {1})")]
    ParentMismatch(String, String),
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("materialization needs {required} elements, cap is {cap}")]
    CapExceeded { required: u128, cap: u128 },
    #[error(transparent)]
    Scalar(#[from] crate::semiring::SemiringError),
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroupTable {
    pub elements: Vec<String>,
    pub mul: Vec<Vec<usize>>,
    pub identity: usize,
    /// Derived from `mul` when loading from JSON.
    #[serde(default, skip_serializing)]
    pub inverse: Vec<usize>,
}

impl FiniteGroupTable {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Fill the inverse table from `mul` and check the group axioms
    /// exhaustively.
    pub fn validate(&mut self) -> Result<(), GroupError> {
        let n = self.size();
        if n == 0 {
            return Err(GroupError::Malformed("empty group".into()));
        }
        if self.mul.len() != n || self.mul.iter().any(|row| row.len() != n) {
            return Err(GroupError::Malformed("multiplication table not total".into()));
        }
        if self.mul.iter().flatten().any(|&v| v >= n) {
            return Err(GroupError::Malformed("table entry out of range".into()));
        }
        if self.identity >= n {
            return Err(GroupError::Malformed("identity index out of range".into()));
        }
        let e = self.identity;
        if (0..n).any(|a| self.mul(e, a) != a || self.mul(a, e) != a) {
            return Err(GroupError::Malformed("identity element does not act neutrally".into()));
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| self.mul(a, b) == e && self.mul(b, a) == e) {
                Some(b) => inverse[a] = b,
                None => {
                    return Err(GroupError::Malformed(format!(
                        "element {} has no inverse",
                        self.elements[a]
                    )))
                }
            }
        }
        self.inverse = inverse;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::Malformed(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        let mut g = FiniteGroupTable {
            elements: vec!["1".into()],
            mul: vec![vec![0]],
            identity: 0,
            inverse: vec![],
        };
        g.validate().unwrap();
        g
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mut g = FiniteGroupTable {
            elements: (0..n)
                .map(|i| if i == 0 { "1".into() } else { format!("g{i}") })
                .collect(),
            mul: (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
            identity: 0,
            inverse: vec![],
        };
        g.validate().unwrap();
        g
    }
}

/// Identifies the group a handle or algebra element belongs to.
#[derive(Debug, Clone)]
pub enum GroupParent {
    Finite(Arc<FiniteGroupTable>),
    /// The free cyclic group written multiplicatively as g^k.
    FreeCyclic,
    SelfSimilar(Arc<SelfSimilarSystem>),
}

impl GroupParent {
    fn describe(&self) -> String {
        match self {
            GroupParent::Finite(t) => format!("finite group of order {}", t.size()),
            GroupParent::FreeCyclic => "free cyclic group".into(),
            GroupParent::SelfSimilar(s) => format!("self-similar system '{}'", s.name),
        }
    }

    fn same(&self, other: &GroupParent) -> bool {
        match (self, other) {
            (GroupParent::Finite(a), GroupParent::Finite(b)) => Arc::ptr_eq(a, b) || a == b,
            (GroupParent::FreeCyclic, GroupParent::FreeCyclic) => true,
            (GroupParent::SelfSimilar(a), GroupParent::SelfSimilar(b)) => {
                Arc::ptr_eq(a, b) || a.name == b.name
            }
            _ => false,
        }
    }
}

/// A group element: a table index, an integer exponent, or a word over
/// self-similar generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroupElementHandle {
    Table(usize),
    Integer(BigInt),
    Word(GroupElementWord),
}

impl GroupElementHandle {
    fn label(&self, parent: &GroupParent) -> String {
        match (self, parent) {
            (GroupElementHandle::Table(i), GroupParent::Finite(t)) => t.elements[*i].clone(),
            (GroupElementHandle::Integer(k), _) => {
                if k == &BigInt::from(0) {
                    "1".into()
                } else {
                    format!("g^{k}")
                }
            }
            (GroupElementHandle::Word(w), _) => w.display(),
            _ => "?".into(),
        }
    }
}

fn handle_mul(
    parent: &GroupParent,
    a: &GroupElementHandle,
    b: &GroupElementHandle,
) -> Result<GroupElementHandle, GroupError> {
    match (parent, a, b) {
        (GroupParent::Finite(t), GroupElementHandle::Table(x), GroupElementHandle::Table(y)) => {
            Ok(GroupElementHandle::Table(t.mul(*x, *y)))
        }
        (GroupParent::FreeCyclic, GroupElementHandle::Integer(x), GroupElementHandle::Integer(y)) => {
            Ok(GroupElementHandle::Integer(x + y))
        }
        (GroupParent::SelfSimilar(_), GroupElementHandle::Word(x), GroupElementHandle::Word(y)) => {
            Ok(GroupElementHandle::Word(x.concat(y)))
        }
        _ => Err(GroupError::ParentMismatch(
            parent.describe(),
            "handle of another tag".into(),
        )),
    }
}

/// A finitely supported map from group elements to scalars; support never
/// contains zero coefficients, so equality is structural.
#[derive(Debug, Clone)]
pub struct GroupAlgebraElement {
    pub parent: GroupParent,
    pub support: BTreeMap<GroupElementHandle, SemiringValue>,
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same(&other.parent) && self.support == other.support
    }
}

impl GroupAlgebraElement {
    pub fn zero(parent: GroupParent) -> Self {
        GroupAlgebraElement {
            parent,
            support: BTreeMap::new(),
        }
    }

    /// The scaled delta function c·delta_g; a zero coefficient gives the zero
    /// element.
    pub fn delta(parent: GroupParent, g: GroupElementHandle, coeff: SemiringValue) -> Self {
        let mut support = BTreeMap::new();
        if !coeff.is_zero() {
            support.insert(g, coeff);
        }
        GroupAlgebraElement { parent, support }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    fn check_parent(&self, other: &Self) -> Result<(), GroupError> {
        if self.parent.same(&other.parent) {
            Ok(())
        } else {
            Err(GroupError::ParentMismatch(
                self.parent.describe(),
                other.parent.describe(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_parent(other)?;
        let mut support = self.support.clone();
        for (g, c) in &other.support {
            match support.remove(g) {
                None => {
                    support.insert(g.clone(), c.clone());
                }
                Some(existing) => {
                    let sum = existing.checked_add(c)?;
                    if !sum.is_zero() {
                        support.insert(g.clone(), sum);
                    }
                }
            }
        }
        Ok(GroupAlgebraElement {
            parent: self.parent.clone(),
            support,
        })
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.support
            .iter()
            .map(|(g, c)| format!("{:?}·{}", c, g.label(&self.parent)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Convolution (f ∗ h)(γ) = Σ_{αβ=γ} f(α) h(β), in normal form.
pub fn group_algebra_multiply(
    f: &GroupAlgebraElement,
    h: &GroupAlgebraElement,
) -> Result<GroupAlgebraElement, GroupError> {
    f.check_parent(h)?;
    let mut support: BTreeMap<GroupElementHandle, SemiringValue> = BTreeMap::new();
    for (a, ca) in &f.support {
        for (b, cb) in &h.support {
            let g = handle_mul(&f.parent, a, b)?;
            let c = ca.checked_mul(cb)?;
            if c.is_zero() {
                continue;
            }
            match support.remove(&g) {
                None => {
                    support.insert(g, c);
                }
                Some(existing) => {
                    let sum = existing.checked_add(&c)?;
                    if !sum.is_zero() {
                        support.insert(g, sum);
                    }
                }
            }
        }
    }
    Ok(GroupAlgebraElement {
        parent: f.parent.clone(),
        support,
    })
}

/// An n×n matrix over a group algebra, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixAlgebraElement {
    pub n: usize,
    pub entries: Vec<GroupAlgebraElement>,
}

impl MatrixAlgebraElement {
    pub fn zero(n: usize, parent: GroupParent) -> Self {
        MatrixAlgebraElement {
            n,
            entries: (0..n * n)
                .map(|_| GroupAlgebraElement::zero(parent.clone()))
                .collect(),
        }
    }

    /// The scaled matrix unit c·delta_g·E_{uv}.
    pub fn unit(
        n: usize,
        parent: GroupParent,
        u: usize,
        v: usize,
        g: GroupElementHandle,
        coeff: SemiringValue,
    ) -> Self {
        let mut m = Self::zero(n, parent.clone());
        m.entries[u * n + v] = GroupAlgebraElement::delta(parent, g, coeff);
        m
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupAlgebraElement {
        &self.entries[i * self.n + j]
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        if self.n != other.n {
            return Err(GroupError::SizeMismatch(self.n, other.n));
        }
        Ok(MatrixAlgebraElement {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// Row-by-column product with entrywise convolution.
pub fn matrix_multiply(
    a: &MatrixAlgebraElement,
    b: &MatrixAlgebraElement,
) -> Result<MatrixAlgebraElement, GroupError> {
    if a.n != b.n {
        return Err(GroupError::SizeMismatch(a.n, b.n));
    }
    let n = a.n;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = GroupAlgebraElement::zero(a.entries[0].parent.clone());
            for l in 0..n {
                let prod = group_algebra_multiply(a.entry(i, l), b.entry(l, j))?;
                acc = acc.add(&prod)?;
            }
            entries.push(acc);
        }
    }
    Ok(MatrixAlgebraElement { n, entries })
}

pub const DEFAULT_MATERIALIZE_CAP: u128 = 1 << 16;

/// The materialized algebra M_n(S G) with a decoding of carrier indices back
/// to matrices.
#[derive(Debug)]
pub struct MaterializedAlgebra {
    pub table: Arc<FiniteAlgebraTable>,
    pub semiring: Arc<FiniteAlgebraTable>,
    pub group: Arc<FiniteGroupTable>,
    pub n: usize,
}

impl MaterializedAlgebra {
    /// Coefficient index of group element `g` in entry (i, j) of carrier
    /// element `index`.
    pub fn coeff(&self, index: usize, i: usize, j: usize, g: usize) -> usize {
        let s = self.semiring.size();
        let slot = (i * self.n + j) * self.group.size() + g;
        (index / s.pow(slot as u32)) % s
    }

    /// Carrier index of the matrix with the given coefficient assignment.
    pub fn encode(&self, coeffs: &dyn Fn(usize, usize, usize) -> usize) -> usize {
        let s = self.semiring.size();
        let mut index = 0usize;
        let mut weight = 1usize;
        for i in 0..self.n {
            for j in 0..self.n {
                for g in 0..self.group.size() {
                    index += coeffs(i, j, g) * weight;
                    weight *= s;
                }
            }
        }
        index
    }
}

/// Enumerate all of M_n(S G) into a `FiniteAlgebraTable` for the congruence
/// oracle. Carrier indices are mixed-radix over (entry, group element) slots
/// with the semiring as digit set, slot order row-major then group order.
pub fn materialize_finite_algebra(
    semiring: &Arc<FiniteAlgebraTable>,
    group: &Arc<FiniteGroupTable>,
    n: usize,
    cap: u128,
) -> Result<MaterializedAlgebra, GroupError> {
    let s = semiring.size();
    let slots = n * n * group.size();
    let required = (s as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    if required > cap {
        return Err(GroupError::CapExceeded { required, cap });
    }
    let size = required as usize;
    let gsize = group.size();

    let decode = |index: usize| -> Vec<usize> {
        let mut digits = Vec::with_capacity(slots);
        let mut rest = index;
        for _ in 0..slots {
            digits.push(rest % s);
            rest /= s;
        }
        digits
    };
    let encode = |digits: &[usize]| -> usize {
        digits.iter().rev().fold(0usize, |acc, &d| acc * s + d)
    };
    let slot = |i: usize, j: usize, g: usize| (i * n + j) * gsize + g;

    let mut add = vec![vec![0usize; size]; size];
    let mut mul = vec![vec![0usize; size]; size];
    let all: Vec<Vec<usize>> = (0..size).map(decode).collect();
    for a in 0..size {
        for b in 0..size {
            let sum: Vec<usize> = all[a]
                .iter()
                .zip(&all[b])
                .map(|(&x, &y)| semiring.add(x, y))
                .collect();
            add[a][b] = encode(&sum);
            let mut prod = vec![semiring.zero; slots];
            for i in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        for g1 in 0..gsize {
                            let x = all[a][slot(i, l, g1)];
                            if x == semiring.zero {
                                continue;
                            }
                            for g2 in 0..gsize {
                                let y = all[b][slot(l, j, g2)];
                                if y == semiring.zero {
                                    continue;
                                }
                                let target = slot(i, j, group.mul(g1, g2));
                                prod[target] =
                                    semiring.add(prod[target], semiring.mul(x, y));
                            }
                        }
                    }
                }
            }
            mul[a][b] = encode(&prod);
        }
    }

    let label = |digits: &[usize]| -> String {
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut cols = Vec::with_capacity(n);
            for j in 0..n {
                let terms: Vec<String> = (0..gsize)
                    .filter(|&g| digits[slot(i, j, g)] != semiring.zero)
                    .map(|g| {
                        let c = &semiring.carrier[digits[slot(i, j, g)]];
                        if gsize == 1 {
                            c.clone()
                        } else if Some(digits[slot(i, j, g)]) == semiring.one {
                            group.elements[g].clone()
                        } else {
                            format!("{c}{}", group.elements[g])
                        }
                    })
                    .collect();
                cols.push(if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                });
            }
            rows.push(format!("[{}]", cols.join(",")));
        }
        format!("[{}]", rows.join(","))
    };

    let carrier: Vec<String> = all.iter().map(|d| label(d)).collect();
    let zero = 0usize;
    let one = semiring.one.map(|one| {
        let mut digits = vec![semiring.zero; slots];
        for i in 0..n {
            digits[slot(i, i, group.identity)] = one;
        }
        encode(&digits)
    });
    let table = Arc::new(FiniteAlgebraTable {
        carrier,
        add,
        mul,
        zero,
        one,
    });
    Ok(MaterializedAlgebra {
        table,
        semiring: semiring.clone(),
        group: group.clone(),
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{congruence_closure, is_congruence_simple};

    fn boolean() -> Arc<FiniteAlgebraTable> {
        Arc::new(FiniteAlgebraTable::boolean())
    }

    fn bool_one() -> SemiringValue {
        SemiringValue::Boolean(true)
    }

    #[test]
    fn convolution_over_boolean_z2() {
        let z2 = Arc::new(FiniteGroupTable::cyclic(2));
        let parent = GroupParent::Finite(z2);
        let f = GroupAlgebraElement::delta(parent.clone(), GroupElementHandle::Table(0), bool_one())
            .add(&GroupAlgebraElement::delta(
                parent.clone(),
                GroupElementHandle::Table(1),
                bool_one(),
            ))
            .unwrap();
        let sq = group_algebra_multiply(&f, &f).unwrap();
        // (δ_1 + δ_g)² = δ_1 + δ_g over the Boolean semifield
        assert_eq!(sq, f);
    }

    #[test]
    fn convolution_identity() {
        let z2 = Arc::new(FiniteGroupTable::cyclic(2));
        let parent = GroupParent::Finite(z2);
        let one = GroupAlgebraElement::delta(parent.clone(), GroupElementHandle::Table(0), bool_one());
        let f = GroupAlgebraElement::delta(parent, GroupElementHandle::Table(1), bool_one());
        assert_eq!(group_algebra_multiply(&one, &f).unwrap(), f);
    }

    #[test]
    fn convolution_over_rationals() {
        let z2 = Arc::new(FiniteGroupTable::cyclic(2));
        let parent = GroupParent::Finite(z2);
        let f = GroupAlgebraElement::delta(
            parent.clone(),
            GroupElementHandle::Table(0),
            SemiringValue::rational_int(1),
        )
        .add(&GroupAlgebraElement::delta(
            parent.clone(),
            GroupElementHandle::Table(1),
            SemiringValue::rational_int(1),
        ))
        .unwrap();
        let sq = group_algebra_multiply(&f, &f).unwrap();
        let expected = GroupAlgebraElement::delta(
            parent.clone(),
            GroupElementHandle::Table(0),
            SemiringValue::rational_int(2),
        )
        .add(&GroupAlgebraElement::delta(
            parent,
            GroupElementHandle::Table(1),
            SemiringValue::rational_int(2),
        ))
        .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn delta_products_small_groups() {
        for order in 1..=6 {
            let g = Arc::new(FiniteGroupTable::cyclic(order));
            let parent = GroupParent::Finite(g.clone());
            for a in 0..order {
                for b in 0..order {
                    let fa = GroupAlgebraElement::delta(
                        parent.clone(),
                        GroupElementHandle::Table(a),
                        bool_one(),
                    );
                    let fb = GroupAlgebraElement::delta(
                        parent.clone(),
                        GroupElementHandle::Table(b),
                        bool_one(),
                    );
                    let prod = group_algebra_multiply(&fa, &fb).unwrap();
                    let expected = GroupAlgebraElement::delta(
                        parent.clone(),
                        GroupElementHandle::Table(g.mul(a, b)),
                        bool_one(),
                    );
                    assert_eq!(prod, expected);
                }
            }
        }
    }

    #[test]
    fn matrix_unit_identities() {
        let parent = GroupParent::Finite(Arc::new(FiniteGroupTable::trivial()));
        let id = GroupElementHandle::Table(0);
        let e12 = MatrixAlgebraElement::unit(2, parent.clone(), 0, 1, id.clone(), bool_one());
        let e21 = MatrixAlgebraElement::unit(2, parent.clone(), 1, 0, id.clone(), bool_one());
        let e11 = MatrixAlgebraElement::unit(2, parent.clone(), 0, 0, id.clone(), bool_one());
        assert_eq!(matrix_multiply(&e12, &e21).unwrap(), e11);
        assert_eq!(
            matrix_multiply(&e12, &e12).unwrap(),
            MatrixAlgebraElement::zero(2, parent)
        );
    }

    #[test]
    fn matrix_over_group_algebra() {
        let z2 = Arc::new(FiniteGroupTable::cyclic(2));
        let parent = GroupParent::Finite(z2);
        let g = GroupElementHandle::Table(1);
        let a = MatrixAlgebraElement::unit(2, parent.clone(), 0, 0, g.clone(), bool_one());
        let b = MatrixAlgebraElement::unit(2, parent.clone(), 0, 1, g, bool_one());
        // (δ_g E_11)(δ_g E_12) = δ_1 E_12 since gg = 1
        let expected =
            MatrixAlgebraElement::unit(2, parent, 0, 1, GroupElementHandle::Table(0), bool_one());
        assert_eq!(matrix_multiply(&a, &b).unwrap(), expected);
    }

    #[test]
    fn materialize_m2_boolean() {
        let trivial = Arc::new(FiniteGroupTable::trivial());
        let m = materialize_finite_algebra(&boolean(), &trivial, 2, DEFAULT_MATERIALIZE_CAP)
            .unwrap();
        assert_eq!(m.table.size(), 16);
        assert!(m.table.validate_axioms().unwrap().is_empty());
        assert!(is_congruence_simple(&m.table).unwrap());
    }

    #[test]
    fn materialize_boolean_z2_group_algebra() {
        let z2 = Arc::new(FiniteGroupTable::cyclic(2));
        let m =
            materialize_finite_algebra(&boolean(), &z2, 1, DEFAULT_MATERIALIZE_CAP).unwrap();
        assert_eq!(m.table.size(), 4);
        assert!(m.table.validate_axioms().unwrap().is_empty());
        assert!(!is_congruence_simple(&m.table).unwrap());
    }

    #[test]
    fn materialize_f2_trivial() {
        let f2 = Arc::new(FiniteAlgebraTable::zn_ring(2));
        let trivial = Arc::new(FiniteGroupTable::trivial());
        let m = materialize_finite_algebra(&f2, &trivial, 1, DEFAULT_MATERIALIZE_CAP).unwrap();
        assert_eq!(m.table.size(), 2);
        assert_eq!(m.table.add, FiniteAlgebraTable::zn_ring(2).add);
        assert_eq!(m.table.mul, FiniteAlgebraTable::zn_ring(2).mul);
    }

    #[test]
    fn materialize_cap_enforced() {
        let trivial = Arc::new(FiniteGroupTable::trivial());
        let err = materialize_finite_algebra(&boolean(), &trivial, 5, 1 << 16).unwrap_err();
        assert!(matches!(err, GroupError::CapExceeded { .. }));
    }

    #[test]
    fn matrix_unit_closure_is_full_in_m2_boolean() {
        let trivial = Arc::new(FiniteGroupTable::trivial());
        let m = materialize_finite_algebra(&boolean(), &trivial, 2, DEFAULT_MATERIALIZE_CAP)
            .unwrap();
        // E_11 has coefficient one in slot (0,0) only
        let e11 = m.encode(&|i, j, _| if i == 0 && j == 0 { 1 } else { 0 });
        let p = congruence_closure(&m.table, &[(m.table.zero, e11)]).unwrap();
        assert!(p.is_full());
    }

    #[test]
    fn materialized_laws_exhaustive() {
        // associativity and distributivity of the materialized product on
        // every carrier triple of the 16-element algebra
        let trivial = Arc::new(FiniteGroupTable::trivial());
        let m = materialize_finite_algebra(&boolean(), &trivial, 2, DEFAULT_MATERIALIZE_CAP)
            .unwrap();
        let t = &m.table;
        let n = t.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
                    assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn parent_mismatch_rejected() {
        let z2 = Arc::new(FiniteGroupTable::cyclic(2));
        let z3 = Arc::new(FiniteGroupTable::cyclic(3));
        let f = GroupAlgebraElement::delta(
            GroupParent::Finite(z2),
            GroupElementHandle::Table(1),
            bool_one(),
        );
        let h = GroupAlgebraElement::delta(
            GroupParent::Finite(z3),
            GroupElementHandle::Table(1),
            bool_one(),
        );
        assert!(group_algebra_multiply(&f, &h).is_err());
    }
}
