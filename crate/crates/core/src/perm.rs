use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A bijection of `[0, n)`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (i, &x) in image.iter().enumerate() {
            if x >= n {
                return Err(Error::InvalidPermutation(format!("image of {i} is {x}, outside [0,{n})")));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!("{x} is hit twice")));
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { image: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation { image: other.image.iter().map(|&x| self.image[x]).collect() }
    }

    /// `J^m`; negative exponents go through the inverse.
    pub fn pow(&self, m: i64) -> Self {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut e = m.unsigned_abs();
        // reduce modulo the order so huge exponents stay cheap
        let ord = self.order();
        e %= ord;
        let mut acc = Permutation::identity(self.len());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = b.compose(&acc);
            }
            b = b.compose(&b);
            e >>= 1;
        }
        acc
    }

    /// Order in the symmetric group: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// Componentwise product on `[0, n1*n2)` under `(a, b) ↦ a*n2 + b`.
    pub fn product(&self, other: &Permutation) -> Self {
        let n2 = other.len();
        let mut image = Vec::with_capacity(self.len() * n2);
        for a in 0..self.len() {
            for b in 0..n2 {
                image.push(self.image[a] * n2 + other.image[b]);
            }
        }
        Permutation { image }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.image)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.image
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
