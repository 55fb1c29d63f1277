//! Sparse exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(n.into())
}

/// A sparse array of scalars keyed by basis labels; zero entries are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sparse<K: Ord>(BTreeMap<K, Scalar>);

pub type Vector = Sparse<usize>;
pub type Tensor2 = Sparse<(usize, usize)>;
pub type Tensor3 = Sparse<(usize, usize, usize)>;

impl<K: Ord> Default for Sparse<K> {
    fn default() -> Self {
        Sparse(BTreeMap::new())
    }
}

impl<K: Ord + Copy> Sparse<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(k: K) -> Self {
        let mut s = Self::default();
        s.0.insert(k, Scalar::one());
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut s = Self::default();
        for (k, c) in terms {
            s.add_term(k, &c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: K) -> Scalar {
        self.0.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (K, &Scalar)> {
        self.0.iter().map(|(k, c)| (*k, c))
    }

    pub fn keys(&self) -> impl Iterator<Item = K> + '_ {
        self.0.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, k: K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    /// `self += c · other`.
    pub fn axpy(&mut self, c: &Scalar, other: &Self) {
        for (k, v) in &other.0 {
            self.add_term(*k, &(c * v));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        Sparse(self.0.iter().map(|(k, v)| (*k, v * c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&-Scalar::one(), other);
        out
    }

    pub fn map_keys<L: Ord + Copy>(&self, f: impl Fn(K) -> L) -> Sparse<L> {
        Sparse::from_terms(self.0.iter().map(|(k, c)| (f(*k), c.clone())))
    }
}

/// `Σ a_i b_j e_{i·d + j}`, the tensor of two vectors in the product basis.
pub fn outer(a: &Vector, b: &Vector, d: usize) -> Vector {
    let mut out = Vector::zero();
    for (i, x) in a.terms() {
        for (j, y) in b.terms() {
            out.add_term(i * d + j, &(x * y));
        }
    }
    out
}

/// `a ⊗ b` with the two legs kept as separate labels.
pub fn tensor(a: &Vector, b: &Vector) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (i, x) in a.terms() {
        for (j, y) in b.terms() {
            out.add_term((i, j), &(x * y));
        }
    }
    out
}

/// A linear map given by the images of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub dim_out: usize,
    pub cols: Vec<Vector>,
}

impl LinearMap {
    pub fn identity(n: usize) -> Self {
        LinearMap { dim_out: n, cols: (0..n).map(Vector::unit).collect() }
    }

    pub fn dim_in(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, c) in v.terms() {
            out.axpy(c, &self.cols[i]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap { dim_out: self.dim_out, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    /// Gauss–Jordan elimination; `None` when singular or not square.
    pub fn inverse(&self) -> Option<LinearMap> {
        let n = self.dim_in();
        if self.dim_out != n {
            return None;
        }
        let mut a: Vec<Vec<Scalar>> = (0..n).map(|r| (0..n).map(|c| self.cols[c].get(r)).collect()).collect();
        let mut inv: Vec<Vec<Scalar>> =
            (0..n).map(|r| (0..n).map(|c| if r == c { Scalar::one() } else { Scalar::zero() }).collect()).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *x /= &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..n {
                        let (da, di) = (&a[col][c] * &f, &inv[col][c] * &f);
                        a[r][c] -= da;
                        inv[r][c] -= di;
                    }
                }
            }
        }
        let cols = (0..n).map(|c| Vector::from_terms((0..n).map(|r| (r, inv[r][c].clone())))).collect();
        Some(LinearMap { dim_out: n, cols })
    }

    /// `self^m`; negative powers need an invertible map.
    pub fn pow(&self, m: i64) -> Result<LinearMap> {
        let base = if m < 0 { self.inverse().ok_or(Error::Singular)? } else { self.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = LinearMap::identity(self.dim_in());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq);
            }
        }
        Ok(acc)
    }
}
