//! Finite magmas, quasigroups, loops and piques on dense indices `[0, n)`.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::perm::Permutation;
use crate::{Error, Result};

/// An `n × n` multiplication table with every entry in `[0, n)`.
///
/// No algebraic property is assumed; see [`Quasigroup`] for the Latin-square
/// refinement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CayleyTable {
    n: usize,
    data: Vec<usize>,
}

/// Which line of a table broke the Latin property, and the repeated value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatinViolation {
    Row { row: usize, value: usize },
    Column { column: usize, value: usize },
}

impl CayleyTable {
    pub fn new(n: usize, data: Vec<usize>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::MalformedTable(format!("expected {} entries for order {n}, got {}", n * n, data.len())));
        }
        if let Some(pos) = data.iter().position(|&x| x >= n) {
            return Err(Error::MalformedTable(format!(
                "entry ({}, {}) = {} is outside [0,{n})",
                pos / n,
                pos % n,
                data[pos]
            )));
        }
        Ok(CayleyTable { n, data })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::MalformedTable(format!("row {i} has {} entries, expected {n}", r.len())));
        }
        CayleyTable::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                data.push(f(a, b));
            }
        }
        CayleyTable::new(n, data)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data[a * self.n + b]
    }

    pub fn entries(&self) -> &[usize] {
        &self.data
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.data[a * self.n..(a + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| self.row(a).to_vec()).collect()
    }

    /// First row, then first column, that repeats a value.
    pub fn latin_violation(&self) -> Option<LatinViolation> {
        let n = self.n;
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let v = self.mul(a, b);
                if seen[v] == a {
                    return Some(LatinViolation::Row { row: a, value: v });
                }
                seen[v] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let v = self.mul(a, b);
                if seen[v] == b {
                    return Some(LatinViolation::Column { column: b, value: v });
                }
                seen[v] = b;
            }
        }
        None
    }

    pub fn is_latin_square(&self) -> bool {
        self.latin_violation().is_none()
    }

    /// The unique two-sided identity, if one exists.
    pub fn identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// First triple `(a, b, c)` with `(ab)c ≠ a(bc)`.
    pub fn associativity_witness(&self) -> Option<[usize; 3]> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// Direct product under the index map `(a, b) ↦ a * n2 + b`.
    pub fn direct_product(&self, other: &CayleyTable) -> CayleyTable {
        let n2 = other.n;
        CayleyTable::from_fn(self.n * n2, |x, y| self.mul(x / n2, y / n2) * n2 + other.mul(x % n2, y % n2))
            .expect("product of valid tables is valid")
    }

    /// The table transported along `f`: `(f(a), f(b)) ↦ f(ab)`.
    pub fn relabel(&self, f: &Permutation) -> CayleyTable {
        assert_eq!(f.len(), self.n);
        let inv = f.inverse();
        CayleyTable::from_fn(self.n, |x, y| f.apply(self.mul(inv.apply(x), inv.apply(y))))
            .expect("relabelled table is valid")
    }
}

/// A Latin-square table together with its two division tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasigroup {
    table: CayleyTable,
    // ldiv[a*n + b] = a\b, the x with a·x = b
    ldiv: Vec<usize>,
    // rdiv[a*n + b] = b/a, the y with y·a = b
    rdiv: Vec<usize>,
}

impl Quasigroup {
    pub fn new(table: CayleyTable) -> Result<Self> {
        if let Some(v) = table.latin_violation() {
            return Err(Error::NotLatin(match v {
                LatinViolation::Row { row, value } => {
                    format!("row {row} repeats the value {value}")
                }
                LatinViolation::Column { column, value } => {
                    format!("column {column} repeats the value {value}")
                }
            }));
        }
        let n = table.order();
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for a in 0..n {
            for x in 0..n {
                let b = table.mul(a, x);
                ldiv[a * n + b] = x;
                // here a plays the right factor: x·a = table.mul(x, a)
                rdiv[a * n + table.mul(x, a)] = x;
            }
        }
        Ok(Quasigroup { table, ldiv, rdiv })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        Quasigroup::new(CayleyTable::from_rows(rows)?)
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn into_table(self) -> CayleyTable {
        self.table
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.table.order()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.mul(a, b)
    }

    /// `a\b`: the unique `x` with `a·x = b`.
    #[inline]
    pub fn left_divide(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.order() + b]
    }

    /// `b/a`: the unique `y` with `y·a = b`.
    #[inline]
    pub fn right_divide(&self, a: usize, b: usize) -> usize {
        self.rdiv[a * self.order() + b]
    }

    /// Left translation `L_a : x ↦ a·x`.
    pub fn left_translation(&self, a: usize) -> Permutation {
        Permutation::new(self.table.row(a).to_vec()).expect("rows of a Latin square are bijective")
    }

    pub fn right_translation(&self, a: usize) -> Permutation {
        Permutation::new((0..self.order()).map(|x| self.mul(x, a)).collect())
            .expect("columns of a Latin square are bijective")
    }

    /// First pair `(x, y)` with `f(xy) ≠ f(x)f(y)`.
    pub fn automorphism_witness(&self, f: &Permutation) -> Option<[usize; 2]> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                if f.apply(self.mul(x, y)) != self.mul(f.apply(x), f.apply(y)) {
                    return Some([x, y]);
                }
            }
        }
        None
    }

    pub fn is_automorphism(&self, f: &Permutation) -> bool {
        f.len() == self.order() && self.automorphism_witness(f).is_none()
    }

    pub fn direct_product(&self, other: &Quasigroup) -> Quasigroup {
        Quasigroup::new(self.table.direct_product(&other.table)).expect("direct product of quasigroups is a quasigroup")
    }
}

/// A quasigroup with a two-sided identity `δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loop {
    q: Quasigroup,
    delta: usize,
}

impl Loop {
    /// Build a loop, locating the identity.
    pub fn new(table: CayleyTable) -> Result<Self> {
        let q = Quasigroup::new(table)?;
        Loop::from_quasigroup(q)
    }

    pub fn from_quasigroup(q: Quasigroup) -> Result<Self> {
        let delta = q.table().identity().ok_or(Error::NoIdentity)?;
        Ok(Loop { q, delta })
    }

    /// Build a loop with a declared identity; the declaration is checked.
    pub fn with_identity(table: CayleyTable, delta: usize) -> Result<Self> {
        let q = Quasigroup::new(table)?;
        let n = q.order();
        if delta >= n || (0..n).any(|x| q.mul(delta, x) != x || q.mul(x, delta) != x) {
            return Err(Error::NoIdentity);
        }
        Ok(Loop { q, delta })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        Loop::new(CayleyTable::from_rows(rows)?)
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.delta
    }

    pub fn quasigroup(&self) -> &Quasigroup {
        &self.q
    }

    /// `x^λ = δ/x`, so that `x^λ·x = δ`.
    #[inline]
    pub fn left_inverse(&self, x: usize) -> usize {
        self.q.right_divide(x, self.delta)
    }

    /// `x^σ = x\δ`, so that `x·x^σ = δ`.
    #[inline]
    pub fn right_inverse(&self, x: usize) -> usize {
        self.q.left_divide(x, self.delta)
    }

    pub fn has_two_sided_inverses(&self) -> bool {
        (0..self.order()).all(|x| self.left_inverse(x) == self.right_inverse(x))
    }

    pub fn is_group(&self) -> bool {
        self.q.table().is_associative()
    }

    pub fn direct_product(&self, other: &Loop) -> Loop {
        let n2 = other.order();
        Loop { q: self.q.direct_product(&other.q), delta: self.delta * n2 + other.delta }
    }
}

impl Deref for Loop {
    type Target = Quasigroup;
    fn deref(&self) -> &Quasigroup {
        &self.q
    }
}

/// A quasigroup with a distinguished idempotent `δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pique {
    q: Quasigroup,
    delta: usize,
}

impl Pique {
    pub fn new(table: CayleyTable, delta: usize) -> Result<Self> {
        let q = Quasigroup::new(table)?;
        if delta >= q.order() {
            return Err(Error::MalformedTable(format!("pointed element {delta} out of range")));
        }
        if q.mul(delta, delta) != delta {
            return Err(Error::NotIdempotent { delta });
        }
        Ok(Pique { q, delta })
    }

    pub fn point(&self) -> usize {
        self.delta
    }

    pub fn quasigroup(&self) -> &Quasigroup {
        &self.q
    }

    /// The corresponding loop `B(Q)`: `x ∗ y = (x/δ)(δ\y)` with identity `δ`.
    pub fn cloop(&self) -> Loop {
        let d = self.delta;
        let table = CayleyTable::from_fn(self.q.order(), |x, y| {
            self.q.mul(self.q.right_divide(d, x), self.q.left_divide(d, y))
        })
        .expect("cloop entries are in range");
        Loop::with_identity(table, d).expect("the cloop of a pique is a loop with identity δ")
    }

    /// Rebuild the pique table from its cloop: `xy = (xδ) ∗ (δy)`.
    pub fn recover_from_cloop(&self, cloop: &Loop) -> CayleyTable {
        let d = self.delta;
        CayleyTable::from_fn(self.q.order(), |x, y| cloop.mul(self.q.mul(x, d), self.q.mul(d, y)))
            .expect("recovered entries are in range")
    }
}

impl Deref for Pique {
    type Target = Quasigroup;
    fn deref(&self) -> &Quasigroup {
        &self.q
    }
}

/// Outcome of a homotopy check `α(x)β(y) = γ(xy)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyCheck {
    pub holds: bool,
    /// All three maps bijective (only meaningful when `holds`).
    pub isotopy: bool,
    pub witness: Option<[usize; 2]>,
}

/// Check whether `(alpha, beta, gamma)` is a homotopy from `q1` to `q2`.
///
/// Maps are given as image arrays over the carrier of `q1`.
pub fn check_homotopy(
    alpha: &[usize],
    beta: &[usize],
    gamma: &[usize],
    q1: &CayleyTable,
    q2: &CayleyTable,
) -> Result<HomotopyCheck> {
    let n1 = q1.order();
    let n2 = q2.order();
    for (name, f) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
        if f.len() != n1 {
            return Err(Error::SizeMismatch(format!("{name} has {} entries, carrier has {n1}", f.len())));
        }
        if let Some(&bad) = f.iter().find(|&&v| v >= n2) {
            return Err(Error::MalformedTable(format!("{name} maps to {bad}, outside [0,{n2})")));
        }
    }
    let mut witness = None;
    'outer: for x in 0..n1 {
        for y in 0..n1 {
            if q2.mul(alpha[x], beta[y]) != gamma[q1.mul(x, y)] {
                witness = Some([x, y]);
                break 'outer;
            }
        }
    }
    let bij = |f: &[usize]| n1 == n2 && Permutation::new(f.to_vec()).is_ok();
    Ok(HomotopyCheck {
        holds: witness.is_none(),
        isotopy: witness.is_none() && bij(alpha) && bij(beta) && bij(gamma),
        witness,
    })
}

pub fn is_homotopy(alpha: &[usize], beta: &[usize], gamma: &[usize], q1: &CayleyTable, q2: &CayleyTable) -> bool {
    check_homotopy(alpha, beta, gamma, q1, q2).map(|c| c.holds).unwrap_or(false)
}

pub fn is_homomorphism(f: &[usize], q1: &CayleyTable, q2: &CayleyTable) -> bool {
    is_homotopy(f, f, f, q1, q2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn z3_divisions() {
        let z3 = catalog::cyclic(3);
        assert_eq!(z3.left_divide(1, 2), 1);
        assert_eq!(z3.right_divide(1, 2), 1);
        assert_eq!(z3.left_divide(2, 0), 1);
    }

    #[test]
    fn rejects_out_of_range_and_ragged() {
        assert!(matches!(CayleyTable::new(2, vec![0, 1, 1, 2]), Err(Error::MalformedTable(_))));
        assert!(CayleyTable::from_rows(&[vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn repeated_row_entry_is_not_latin() {
        let t = CayleyTable::from_rows(&[vec![0, 0, 2], vec![1, 2, 0], vec![2, 1, 1]]).unwrap();
        assert_eq!(t.latin_violation(), Some(LatinViolation::Row { row: 0, value: 0 }));
        assert!(matches!(Quasigroup::new(t), Err(Error::NotLatin(_))));
    }

    #[test]
    fn group_inverses_are_two_sided() {
        let s3 = catalog::symmetric3();
        for x in 0..6 {
            assert_eq!(s3.left_inverse(x), s3.right_inverse(x));
            assert_eq!(s3.mul(x, s3.right_inverse(x)), s3.identity());
        }
        assert_eq!(s3.left_inverse(s3.identity()), s3.identity());
    }

    #[test]
    fn identity_declaration_is_checked() {
        let z3 = catalog::cyclic(3).quasigroup().table().clone();
        assert!(Loop::with_identity(z3.clone(), 1).is_err());
        assert_eq!(Loop::with_identity(z3, 0).unwrap().identity(), 0);
    }

    #[test]
    fn cloop_of_group_is_the_group() {
        let s3 = catalog::symmetric3();
        let p = Pique::new(s3.table().clone(), s3.identity()).unwrap();
        assert_eq!(p.cloop().table(), s3.table());
    }

    #[test]
    fn pique_requires_idempotent_point() {
        // x·y = -x-y on Z3 is idempotent everywhere
        let t = CayleyTable::from_fn(3, |x, y| (6 - x - y) % 3).unwrap();
        assert!(Pique::new(t, 0).is_ok());
        let t2 = catalog::cyclic(3).quasigroup().table().clone();
        assert!(matches!(Pique::new(t2, 1), Err(Error::NotIdempotent { delta: 1 })));
    }

    #[test]
    fn homotopy_identity_and_failure() {
        let s3 = catalog::symmetric3();
        let t = s3.table();
        let id: Vec<usize> = (0..6).collect();
        assert!(is_homomorphism(&id, t, t));
        let c = check_homotopy(&id, &id, &id, t, t).unwrap();
        assert!(c.isotopy);
        // constant gamma cannot match the pointwise product
        let zero = vec![0; 6];
        let c = check_homotopy(&id, &id, &zero, t, t).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness, Some([0, 1]));
    }
}
