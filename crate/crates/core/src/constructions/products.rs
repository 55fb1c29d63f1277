//! Direct products, the `θ`-twisted product of groups, and the transassociant
//! product of a quasigroup.

use std::collections::HashMap;

use crate::diagnostics::first_failure;
use crate::inverse::{self, RstTriple};
use crate::perm::{lcm, Permutation};
use crate::quasigroup::{CayleyTable, Loop, Quasigroup};
use crate::{Error, Result};

/// Inverse-property data of one factor: its `J`, the order `h`, and the valid
/// residues of `m` modulo `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorProfile {
    pub h: u64,
    pub residues: Vec<i64>,
}

impl FactorProfile {
    pub fn of(q: &Quasigroup, j: &Permutation) -> Self {
        let h = inverse::aut_power_order(q, j);
        let residues = (0..h as i64).filter(|&m| inverse::is_m_inverse(q, j, m)).collect();
        FactorProfile { h, residues }
    }
}

#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub quasigroup: Quasigroup,
    pub j: Permutation,
    pub left: FactorProfile,
    pub right: FactorProfile,
    /// Least non-negative `m` solving the congruence pair for some valid
    /// residues of the two factors.
    pub valid_m: Option<i64>,
    /// Every solution is `valid_m` plus a multiple of this.
    pub modulus: u64,
}

/// `Q1 × Q2` with `J1 × J2`; index `(a, b) ↦ a * |Q2| + b`.
pub fn direct_product(q1: &Quasigroup, j1: &Permutation, q2: &Quasigroup, j2: &Permutation) -> Result<DirectProduct> {
    if j1.len() != q1.order() || j2.len() != q2.order() {
        return Err(Error::SizeMismatch("J does not act on its quasigroup".into()));
    }
    let left = FactorProfile::of(q1, j1);
    let right = FactorProfile::of(q2, j2);
    let valid_m = left
        .residues
        .iter()
        .flat_map(|&a| right.residues.iter().filter_map(move |&b| (a, b).into()))
        .filter_map(|(a, b)| inverse::crt_solve(a, left.h, b, right.h))
        .min();
    Ok(DirectProduct {
        quasigroup: q1.direct_product(q2),
        j: j1.product(j2),
        modulus: lcm(left.h, right.h),
        left,
        right,
        valid_m,
    })
}

pub fn direct_product_loops(l1: &Loop, j1: &Permutation, l2: &Loop, j2: &Permutation) -> Result<(Loop, DirectProduct)> {
    let dp = direct_product(l1, j1, l2, j2)?;
    Ok((l1.direct_product(l2), dp))
}

/// The `(r,s,t)` triple for which the direct product is guaranteed inverse:
/// `r - r_i = s - s_i = t - t_i = u_i h_i`.
pub fn direct_product_rst(rst1: RstTriple, h1: u64, rst2: RstTriple, h2: u64) -> Option<RstTriple> {
    if rst1.s - rst1.r != rst2.s - rst2.r || rst1.t - rst1.r != rst2.t - rst2.r {
        return None;
    }
    let base = inverse::crt_solve(rst1.r, h1, rst2.r, h2)?;
    Some(rst1.shifted(base - rst1.r))
}

/// `G × H` with `(g,h)(g',h') = (gg', θ(g')(h)·h')`.
///
/// `theta[g]` must be an automorphism of `H`; `θ` itself need not be a
/// homomorphism.
pub fn semidirect_group_theta(g: &Loop, h: &Loop, theta: &[Permutation]) -> Result<Quasigroup> {
    if theta.len() != g.order() {
        return Err(Error::SizeMismatch(format!("θ has {} entries, G has {} elements", theta.len(), g.order())));
    }
    for (x, t) in theta.iter().enumerate() {
        if t.len() != h.order() {
            return Err(Error::Precondition(format!("θ({x}) does not act on H")));
        }
        if let Some(w) = h.automorphism_witness(t) {
            return Err(Error::Precondition(format!("θ({x}) is not multiplicative on the pair {w:?}")));
        }
    }
    let hn = h.order();
    let t = CayleyTable::from_fn(g.order() * hn, |a, b| {
        let (x, u) = (a / hn, a % hn);
        let (y, w) = (b / hn, b % hn);
        g.mul(x, y) * hn + h.mul(theta[y].apply(u), w)
    })?;
    Quasigroup::new(t)
}

/// Default cap on the size of the transassociant.
pub const TRANSASSOCIANT_CAP: usize = 10_000;

/// The subgroup of `Sym(Q)` generated by `ℓ(q,q') = L⁻¹_{qq'} ∘ L_q ∘ L_{q'}`.
#[derive(Clone, Debug)]
pub struct TransassociantGroup {
    pub generators: Vec<Permutation>,
    /// Element 0 is the identity.
    pub elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl TransassociantGroup {
    pub fn generate(q: &Quasigroup, cap: usize) -> Result<Self> {
        let n = q.order();
        let lt: Vec<Permutation> = (0..n).map(|a| q.left_translation(a)).collect();
        let mut generators: Vec<Permutation> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let l = lt[q.mul(a, b)].inverse().compose(&lt[a]).compose(&lt[b]);
                if !l.is_identity() && !generators.contains(&l) {
                    generators.push(l);
                }
            }
        }
        let id = Permutation::identity(n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut next = 0;
        while next < elements.len() {
            let p = elements[next].clone();
            next += 1;
            for gen in &generators {
                let q = gen.compose(&p);
                if !index.contains_key(&q) {
                    if elements.len() >= cap {
                        return Err(Error::ResourceCap {
                            what: "transassociant closure",
                            reached: elements.len(),
                            cap,
                        });
                    }
                    index.insert(q.clone(), elements.len());
                    elements.push(q);
                }
            }
        }
        Ok(TransassociantGroup { generators, elements, index })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| self.elements.iter().all(|b| self.index.contains_key(&a.compose(b))))
    }
}

#[derive(Clone, Debug)]
pub struct SabininProduct {
    pub quasigroup: Quasigroup,
    pub transassociant: TransassociantGroup,
}

/// `Q × H` over the transassociant `H`, with
/// `(q,h)(q',h') = (q·h(q'), ℓ(q,h(q')) ∘ m_{q'}(h) ∘ h ∘ h')` and
/// `m_q(h) = L⁻¹_{h(q)} ∘ h ∘ L_q ∘ h⁻¹`.
///
/// Element `(q, h)` has index `q * |H| + index(h)`.
pub fn sabinin_product(q: &Quasigroup, cap: usize) -> Result<SabininProduct> {
    let n = q.order();
    let group = TransassociantGroup::generate(q, cap)?;
    let hn = group.len();
    let lt: Vec<Permutation> = (0..n).map(|a| q.left_translation(a)).collect();
    let lt_inv: Vec<Permutation> = lt.iter().map(Permutation::inverse).collect();
    let ell = |a: usize, b: usize| lt_inv[q.mul(a, b)].compose(&lt[a]).compose(&lt[b]);

    // second coordinate depends on (q, h, q'); tabulate it before h'
    let mut twist = vec![0usize; n * hn * n];
    for a in 0..n {
        for (hi, h) in group.elements.iter().enumerate() {
            let h_inv = h.inverse();
            for b in 0..n {
                let hb = h.apply(b);
                let m = lt_inv[hb].compose(h).compose(&lt[b]).compose(&h_inv);
                let p = ell(a, hb).compose(&m).compose(h);
                twist[(a * hn + hi) * n + b] = group.index_of(&p).ok_or_else(|| {
                    Error::Internal(format!("second coordinate leaves the transassociant at q={a}, h={hi}, q'={b}"))
                })?;
            }
        }
    }
    let t = CayleyTable::from_fn(n * hn, |x, y| {
        let (a, hi) = (x / hn, x % hn);
        let (b, hj) = (y / hn, y % hn);
        let h = &group.elements[hi];
        let p = &group.elements[twist[(a * hn + hi) * n + b]];
        let second = group.index_of(&p.compose(&group.elements[hj])).expect("H is closed");
        q.mul(a, h.apply(b)) * hn + second
    })?;
    let quasigroup = Quasigroup::new(t)?;
    Ok(SabininProduct { quasigroup, transassociant: group })
}

/// First pair witnessing that `q` is not the direct product table of its
/// factors under the product index map (used for the `θ ≡ id` case).
pub fn direct_product_witness(q: &CayleyTable, left: &CayleyTable, right: &CayleyTable) -> Option<Vec<usize>> {
    let expected = left.direct_product(right);
    if expected.order() != q.order() {
        return Some(vec![]);
    }
    let n = q.order();
    first_failure(&[n, n], |t| q.mul(t[0], t[1]) == expected.mul(t[0], t[1]))
}
