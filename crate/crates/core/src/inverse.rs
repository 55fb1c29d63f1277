//! Inverse properties of loops: WIP, CI, m-inverse and (r,s,t)-inverse,
//! the automorphism-power order of `J`, and the congruence solver used by
//! every product construction.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::perm::{gcd, lcm, Permutation};
use crate::quasigroup::{Loop, Quasigroup};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RstTriple {
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

impl RstTriple {
    pub fn new(r: i64, s: i64, t: i64) -> Self {
        RstTriple { r, s, t }
    }

    /// `(m, m+1, m)`.
    pub fn m_inverse(m: i64) -> Self {
        RstTriple::new(m, m + 1, m)
    }

    pub fn weak_inverse() -> Self {
        RstTriple::new(-1, 0, -1)
    }

    pub fn crossed_inverse() -> Self {
        RstTriple::m_inverse(0)
    }

    pub fn shifted(self, by: i64) -> Self {
        RstTriple::new(self.r + by, self.s + by, self.t + by)
    }
}

/// The right-inverse map `x ↦ x\δ`, so that `x·J(x) = δ`.
pub fn right_inverse_permutation(l: &Loop) -> Permutation {
    Permutation::new((0..l.order()).map(|x| l.right_inverse(x)).collect()).expect("x ↦ x\\δ is a bijection in a loop")
}

/// First pair `(x, y)` violating `J^r(xy)·J^s(x) = J^t(y)`.
pub fn rst_witness(q: &Quasigroup, j: &Permutation, rst: RstTriple) -> Option<[usize; 2]> {
    assert_eq!(j.len(), q.order(), "J must act on the carrier");
    let jr = j.pow(rst.r);
    let js = j.pow(rst.s);
    let jt = j.pow(rst.t);
    let n = q.order();
    for x in 0..n {
        let jsx = js.apply(x);
        for y in 0..n {
            if q.mul(jr.apply(q.mul(x, y)), jsx) != jt.apply(y) {
                return Some([x, y]);
            }
        }
    }
    None
}

pub fn is_rst_inverse(q: &Quasigroup, j: &Permutation, rst: RstTriple) -> bool {
    rst_witness(q, j, rst).is_none()
}

/// `J^m(xy)·J^{m+1}(x) = J^m(y)` for all `x, y`.
pub fn is_m_inverse(q: &Quasigroup, j: &Permutation, m: i64) -> bool {
    is_rst_inverse(q, j, RstTriple::m_inverse(m))
}

pub fn m_inverse_witness(q: &Quasigroup, j: &Permutation, m: i64) -> Option<[usize; 2]> {
    rst_witness(q, j, RstTriple::m_inverse(m))
}

/// Weak inverse property `x·J(yx) = J(y)`, i.e. the `(-1, 0, -1)` case.
pub fn is_wip(q: &Quasigroup, j: &Permutation) -> bool {
    is_rst_inverse(q, j, RstTriple::weak_inverse())
}

/// Crossed inverse property `(xy)·J(x) = y`, i.e. the 0-inverse case.
pub fn is_ci(q: &Quasigroup, j: &Permutation) -> bool {
    is_m_inverse(q, j, 0)
}

/// Least `h ≥ 1` with `J^h` an automorphism.
///
/// Always exists: `J^{ord(J)}` is the identity.
pub fn aut_power_order(q: &Quasigroup, j: &Permutation) -> u64 {
    let ord = j.order();
    let mut p = j.clone();
    for h in 1..ord {
        if q.is_automorphism(&p) {
            return h;
        }
        p = j.compose(&p);
    }
    ord
}

/// Least non-negative `m` with `m ≡ m1 (mod h1)` and `m ≡ m2 (mod h2)`,
/// or `None` when `gcd(h1, h2)` does not divide `m1 - m2`.
pub fn crt_solve(m1: i64, h1: u64, m2: i64, h2: u64) -> Option<i64> {
    assert!(h1 >= 1 && h2 >= 1, "moduli must be positive");
    let g = gcd(h1, h2) as i128;
    let (m1, m2, h1i, h2i) = (m1 as i128, m2 as i128, h1 as i128, h2 as i128);
    if (m2 - m1).rem_euclid(g) != 0 {
        return None;
    }
    // m = m1 + h1·k with h1·k ≡ m2 - m1 (mod h2)
    let h2g = h2i / g;
    let rhs = ((m2 - m1) / g).rem_euclid(h2g);
    let k = if h2g == 1 { 0 } else { rhs * mod_inverse((h1i / g).rem_euclid(h2g), h2g) % h2g };
    let l = lcm(h1, h2) as i128;
    Some((m1 + h1i * k).rem_euclid(l) as i64)
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    // extended Euclid; a and m are coprime here
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m)
}

/// Summary of the inverse properties of a loop over a window of `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub order: usize,
    pub h: u64,
    pub valid_m: Vec<i64>,
    /// Valid `m` reduced to their least non-negative residue mod `h`.
    pub residues: Vec<i64>,
    pub wip: bool,
    pub ci: bool,
}

pub const DEFAULT_WINDOW: RangeInclusive<i64> = -4..=4;

pub fn classify(l: &Loop, j: &Permutation, window: RangeInclusive<i64>) -> Result<ClassifyReport> {
    if j.len() != l.order() {
        return Err(Error::SizeMismatch(format!("J acts on {} points, loop has {}", j.len(), l.order())));
    }
    let q = l.quasigroup();
    let h = aut_power_order(q, j);
    let valid_m: Vec<i64> = window.clone().filter(|&m| is_m_inverse(q, j, m)).collect();
    let hi = h as i64;
    for &m in &valid_m {
        for cand in [m - hi, m + hi] {
            if window.contains(&cand) && !valid_m.contains(&cand) {
                return Err(Error::Internal(format!(
                    "valid m not closed under shifts by h={h}: {m} valid, {cand} not"
                )));
            }
        }
    }
    let mut residues: Vec<i64> = valid_m.iter().map(|m| m.rem_euclid(hi)).collect();
    residues.sort_unstable();
    residues.dedup();
    Ok(ClassifyReport { order: l.order(), h, valid_m, residues, wip: is_wip(q, j), ci: is_ci(q, j) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn group_inversion_is_one_inverse() {
        for (name, g) in catalog::group_presets() {
            let j = right_inverse_permutation(&g);
            assert!(is_m_inverse(&g, &j, 1), "{name}");
        }
    }

    #[test]
    fn z2_and_s3_zero_inverse() {
        let z2 = catalog::cyclic(2);
        assert!(is_m_inverse(&z2, &right_inverse_permutation(&z2), 0));
        let s3 = catalog::symmetric3();
        assert!(!is_m_inverse(&s3, &right_inverse_permutation(&s3), 0));
    }

    #[test]
    fn aut_power_orders() {
        let z5 = catalog::cyclic(5);
        assert_eq!(aut_power_order(&z5, &right_inverse_permutation(&z5)), 1);
        let s3 = catalog::symmetric3();
        assert_eq!(aut_power_order(&s3, &right_inverse_permutation(&s3)), 2);
        assert_eq!(aut_power_order(&s3, &Permutation::identity(6)), 1);
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_solve(1, 2, 1, 2), Some(1));
        assert_eq!(crt_solve(1, 2, 2, 2), None);
        assert_eq!(crt_solve(1, 2, 0, 3), Some(3));
        assert_eq!(crt_solve(-1, 4, 5, 6), Some(11));
        assert_eq!(crt_solve(7, 1, 3, 1), Some(0));
    }

    #[test]
    fn classify_s3_window() {
        let s3 = catalog::symmetric3();
        let r = classify(&s3, &right_inverse_permutation(&s3), -2..=2).unwrap();
        assert_eq!(r.valid_m, vec![-1, 1]);
        assert_eq!(r.h, 2);
        assert_eq!(r.residues, vec![1]);
        assert!(r.wip);
        assert!(!r.ci);
    }

    #[test]
    fn classify_z2_window() {
        let z2 = catalog::cyclic(2);
        let r = classify(&z2, &right_inverse_permutation(&z2), -2..=2).unwrap();
        assert_eq!(r.valid_m, vec![-2, -1, 0, 1, 2]);
        assert_eq!(r.h, 1);
        assert_eq!(r.residues, vec![0]);
    }

    #[test]
    fn classify_rejects_wrong_size() {
        let z2 = catalog::cyclic(2);
        assert!(classify(&z2, &Permutation::identity(3), -1..=1).is_err());
    }
}
