//! Structure constants of a finite-dimensional Hopf quasigroup and the
//! axiom scan.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{int, outer, tensor, LinearMap, Scalar, Tensor2, Tensor3, Vector};
use crate::diagnostics::{first_failure, Check, Diagnostics};
use crate::perm::Permutation;
use crate::quasigroup::Loop;
use crate::{Error, Result};

/// Default limit on the dimension of constructed products.
pub const HOPF_DIM_CAP: usize = 64;

/// `(H, μ, η, Δ, ε, S)` in a fixed basis `e_0 .. e_{dim-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "HopfJson", try_from = "HopfJson")]
pub struct HopfQuasigroupData {
    pub dim: usize,
    /// `e_i e_j` at `i * dim + j`.
    pub mu: Vec<Vector>,
    pub eta: Vector,
    /// `Δ(e_i)`.
    pub delta: Vec<Tensor2>,
    /// `ε(e_i)` as a sparse covector.
    pub eps: Vector,
    pub s: LinearMap,
}

impl HopfQuasigroupData {
    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        if self.mu.len() != d * d || self.delta.len() != d || self.s.cols.len() != d || self.s.dim_out != d {
            return Err(Error::SizeMismatch(format!("structure tensors inconsistent with dim {d}")));
        }
        let bad_vec = |v: &Vector| v.keys().any(|k| k >= d);
        let bad_t2 = |t: &Tensor2| t.keys().any(|(a, b)| a >= d || b >= d);
        if self.mu.iter().any(bad_vec)
            || bad_vec(&self.eta)
            || bad_vec(&self.eps)
            || self.s.cols.iter().any(bad_vec)
            || self.delta.iter().any(bad_t2)
        {
            return Err(Error::MalformedTable(format!("basis index out of range for dim {d}")));
        }
        Ok(())
    }

    pub fn basis_mul(&self, i: usize, j: usize) -> &Vector {
        &self.mu[i * self.dim + j]
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                out.axpy(&(x * y), self.basis_mul(i, j));
            }
        }
        out
    }

    pub fn coproduct(&self, v: &Vector) -> Tensor2 {
        let mut out = Tensor2::zero();
        for (i, c) in v.terms() {
            out.axpy(c, &self.delta[i]);
        }
        out
    }

    /// `(Δ ⊗ id)Δ(e_i)`, the three-leg coproduct.
    pub fn coproduct3(&self, i: usize) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ((a, b), c) in self.delta[i].terms() {
            for ((x, y), c2) in self.delta[a].terms() {
                out.add_term((x, y, b), &(c * c2));
            }
        }
        out
    }

    pub fn counit(&self, v: &Vector) -> Scalar {
        v.terms().fold(Scalar::zero(), |acc, (i, c)| acc + c * self.eps.get(i))
    }

    pub fn antipode(&self, v: &Vector) -> Vector {
        self.s.apply(v)
    }

    /// Componentwise product in `H ⊗ H`.
    pub fn tensor_mul(&self, t: &Tensor2, u: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((a, b), x) in t.terms() {
            for ((c, d), y) in u.terms() {
                let xy = x * y;
                for (p, z) in self.basis_mul(a, c).terms() {
                    for (q, w) in self.basis_mul(b, d).terms() {
                        out.add_term((p, q), &(&xy * z * w));
                    }
                }
            }
        }
        out
    }

    /// `S^m(h₂g)S^{m+1}(h₁) − ε(h)S^m(g)`, linear in `h` and in `g`.
    pub fn s_m_defect(&self, sm: &LinearMap, sm1: &LinearMap, h: &Vector, g: &Vector) -> Vector {
        let mut lhs = Vector::zero();
        for ((a, b), c) in self.coproduct(h).terms() {
            let left = sm.apply(&self.mul(&Vector::unit(b), g));
            lhs.axpy(c, &self.mul(&left, &sm1.cols[a]));
        }
        lhs.sub(&sm.apply(g).scaled(&self.counit(h)))
    }

    /// Least `r ≥ 1` (up to `max`) with `S^r` an algebra and coalgebra
    /// automorphism.
    pub fn antipode_aut_order(&self, max: u64) -> Option<u64> {
        let mut p = self.s.clone();
        for r in 1..=max {
            if self.is_hopf_automorphism(&p) {
                return Some(r);
            }
            p = p.compose(&self.s);
        }
        None
    }

    pub fn is_hopf_automorphism(&self, f: &LinearMap) -> bool {
        let d = self.dim;
        let mult =
            first_failure(&[d, d], |t| f.apply(self.basis_mul(t[0], t[1])) == self.mul(&f.cols[t[0]], &f.cols[t[1]]));
        let comult = (0..d).all(|i| {
            let lhs = self.coproduct(&f.cols[i]);
            let mut rhs = Tensor2::zero();
            for ((a, b), c) in self.delta[i].terms() {
                rhs.axpy(c, &tensor(&f.cols[a], &f.cols[b]));
            }
            lhs == rhs
        });
        mult.is_none() && comult && f.inverse().is_some()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub m: i64,
    pub holds: bool,
    pub diagnostics: Diagnostics,
}

/// The axioms other than the `m`-dependent one. Witnesses are basis indices.
pub fn hopf_axiom_checks(h: &HopfQuasigroupData) -> Result<Diagnostics> {
    h.validate()?;
    let d = h.dim;
    let one = Scalar::one();
    let mut diag = Diagnostics::new();
    diag.record(
        "unital",
        first_failure(&[d], |t| {
            let e = Vector::unit(t[0]);
            h.mul(&h.eta, &e) == e && h.mul(&e, &h.eta) == e
        }),
    );
    diag.record(
        "coassociative",
        first_failure(&[d], |t| {
            let mut left = Tensor3::zero();
            let mut right = Tensor3::zero();
            for ((a, b), c) in h.delta[t[0]].terms() {
                left.axpy(c, &h.delta[a].map_keys(|(x, y)| (x, y, b)));
                right.axpy(c, &h.delta[b].map_keys(|(x, y)| (a, x, y)));
            }
            left == right
        }),
    );
    diag.record(
        "counital",
        first_failure(&[d], |t| {
            let mut left = Vector::zero();
            let mut right = Vector::zero();
            for ((a, b), c) in h.delta[t[0]].terms() {
                left.add_term(b, &(c * h.eps.get(a)));
                right.add_term(a, &(c * h.eps.get(b)));
            }
            let e = Vector::unit(t[0]);
            left == e && right == e
        }),
    );
    diag.record(
        "Delta-multiplicative",
        first_failure(&[d, d], |t| {
            h.coproduct(h.basis_mul(t[0], t[1])) == h.tensor_mul(&h.delta[t[0]], &h.delta[t[1]])
        }),
    );
    diag.record(
        "eps-multiplicative",
        first_failure(&[d, d], |t| h.counit(h.basis_mul(t[0], t[1])) == h.eps.get(t[0]) * h.eps.get(t[1])),
    );
    diag.push(if h.coproduct(&h.eta) == tensor(&h.eta, &h.eta) && h.counit(&h.eta) == one {
        Check::pass("unit-grouplike")
    } else {
        Check {
            name: "unit-grouplike".into(), ok: false, witness: None, note: Some("Δ(η) ≠ η⊗η or ε(η) ≠ 1".into())
        }
    });
    diag.record(
        "S-anti-coalgebra",
        first_failure(&[d], |t| {
            let i = t[0];
            let mut flipped = Tensor2::zero();
            for ((a, b), c) in h.delta[i].terms() {
                flipped.axpy(c, &tensor(&h.s.cols[b], &h.s.cols[a]));
            }
            h.coproduct(&h.s.cols[i]) == flipped && h.counit(&h.s.cols[i]) == h.eps.get(i)
        }),
    );
    diag.push(if h.s.inverse().is_some() {
        Check::pass("S-bijective")
    } else {
        Check { name: "S-bijective".into(), ok: false, witness: None, note: Some("S is singular".into()) }
    });
    diag.record(
        "S-prop",
        first_failure(&[d], |t| {
            let i = t[0];
            let target = h.eta.scaled(&h.eps.get(i));
            let mut left = Vector::zero();
            let mut right = Vector::zero();
            for ((a, b), c) in h.delta[i].terms() {
                left.axpy(c, &h.mul(&Vector::unit(a), &h.s.cols[b]));
                right.axpy(c, &h.mul(&h.s.cols[a], &Vector::unit(b)));
            }
            left == target && right == target
        }),
    );
    Ok(diag)
}

/// Witness `[h, g]` of the first basis pair violating the `m`-inverse law.
pub fn s_m_prop_witness(h: &HopfQuasigroupData, m: i64) -> Result<Option<Vec<usize>>> {
    h.validate()?;
    let sm = h.s.pow(m)?;
    let sm1 = h.s.pow(m + 1)?;
    let d = h.dim;
    Ok(first_failure(&[d, d], |t| h.s_m_defect(&sm, &sm1, &Vector::unit(t[0]), &Vector::unit(t[1])).is_zero()))
}

/// Checks every axiom of an `m`-inverse property Hopf quasigroup on basis
/// elements, with exact arithmetic.
pub fn verify_hopf_quasigroup(h: &HopfQuasigroupData, m: i64) -> Result<HopfReport> {
    let mut diagnostics = hopf_axiom_checks(h)?;
    diagnostics.push(Check::from_witness("S-m-prop", s_m_prop_witness(h, m)?));
    Ok(HopfReport { m, holds: diagnostics.all_ok(), diagnostics })
}

/// `kQ`: `μ` from the table, `Δ(q) = q⊗q`, `ε(q) = 1`, `S(q) = J(q)`.
pub fn group_algebra(q: &Loop, j: &Permutation) -> Result<HopfQuasigroupData> {
    let n = q.order();
    if j.len() != n {
        return Err(Error::SizeMismatch("J does not act on Q".into()));
    }
    Ok(HopfQuasigroupData {
        dim: n,
        mu: (0..n * n).map(|k| Vector::unit(q.mul(k / n, k % n))).collect(),
        eta: Vector::unit(q.identity()),
        delta: (0..n).map(|i| Tensor2::unit((i, i))).collect(),
        eps: Vector::from_terms((0..n).map(|i| (i, int(1)))),
        s: LinearMap { dim_out: n, cols: (0..n).map(|i| Vector::unit(j.apply(i))).collect() },
    })
}

/// The tensor product with the middle flip, basis `e_i ⊗ f_a` at
/// `i * dim₂ + a`.
pub fn tensor_product(h1: &HopfQuasigroupData, h2: &HopfQuasigroupData) -> Result<HopfQuasigroupData> {
    tensor_product_capped(h1, h2, HOPF_DIM_CAP)
}

pub fn tensor_product_capped(
    h1: &HopfQuasigroupData,
    h2: &HopfQuasigroupData,
    cap: usize,
) -> Result<HopfQuasigroupData> {
    h1.validate()?;
    h2.validate()?;
    let (d1, d2) = (h1.dim, h2.dim);
    let dim = d1 * d2;
    if dim > cap {
        return Err(Error::ResourceCap { what: "tensor dimension", reached: dim, cap });
    }
    let mu = (0..dim * dim)
        .map(|k| {
            let (x, y) = (k / dim, k % dim);
            outer(h1.basis_mul(x / d2, y / d2), h2.basis_mul(x % d2, y % d2), d2)
        })
        .collect();
    let delta = (0..dim)
        .map(|x| {
            let mut t = Tensor2::zero();
            for ((a, b), c) in h1.delta[x / d2].terms() {
                for ((p, q), c2) in h2.delta[x % d2].terms() {
                    t.add_term((a * d2 + p, b * d2 + q), &(c * c2));
                }
            }
            t
        })
        .collect();
    Ok(HopfQuasigroupData {
        dim,
        mu,
        eta: outer(&h1.eta, &h2.eta, d2),
        delta,
        eps: outer(&h1.eps, &h2.eps, d2),
        s: LinearMap {
            dim_out: dim,
            cols: (0..dim).map(|x| outer(&h1.s.cols[x / d2], &h2.s.cols[x % d2], d2)).collect(),
        },
    })
}

/// A rational scalar in JSON: an integer when it fits, else a decimal string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(n: &BigInt) -> Self {
        i64::try_from(n).map(JsonInt::Small).unwrap_or_else(|_| JsonInt::Big(n.to_string()))
    }
}

impl JsonInt {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            JsonInt::Small(n) => Ok((*n).into()),
            JsonInt::Big(s) => s.parse().map_err(|_| Error::MalformedTable(format!("bad integer {s:?}"))),
        }
    }
}

fn split(c: &Scalar) -> (JsonInt, JsonInt) {
    (c.numer().into(), c.denom().into())
}

fn join(num: &JsonInt, den: &JsonInt) -> Result<Scalar> {
    let den = den.to_bigint()?;
    if den.is_zero() {
        return Err(Error::MalformedTable("zero denominator".into()));
    }
    Ok(Scalar::new(num.to_bigint()?, den))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HopfJson {
    dim: usize,
    mu: Vec<(usize, usize, usize, JsonInt, JsonInt)>,
    delta: Vec<(usize, usize, usize, JsonInt, JsonInt)>,
    eps: Vec<(usize, JsonInt, JsonInt)>,
    #[serde(rename = "S")]
    s: Vec<(usize, usize, JsonInt, JsonInt)>,
    eta: Vec<(usize, JsonInt, JsonInt)>,
}

impl From<HopfQuasigroupData> for HopfJson {
    fn from(h: HopfQuasigroupData) -> Self {
        let d = h.dim;
        let vec_terms = |v: &Vector| -> Vec<(usize, JsonInt, JsonInt)> {
            v.terms()
                .map(|(i, c)| {
                    let (n, q) = split(c);
                    (i, n, q)
                })
                .collect()
        };
        HopfJson {
            dim: d,
            mu: h
                .mu
                .iter()
                .enumerate()
                .flat_map(|(k, v)| {
                    v.terms().map(move |(x, c)| {
                        let (n, q) = split(c);
                        (k / d, k % d, x, n, q)
                    })
                })
                .collect(),
            delta: h
                .delta
                .iter()
                .enumerate()
                .flat_map(|(i, t)| {
                    t.terms().map(move |((a, b), c)| {
                        let (n, q) = split(c);
                        (i, a, b, n, q)
                    })
                })
                .collect(),
            eps: vec_terms(&h.eps),
            s: h.s
                .cols
                .iter()
                .enumerate()
                .flat_map(|(i, v)| {
                    v.terms().map(move |(j, c)| {
                        let (n, q) = split(c);
                        (i, j, n, q)
                    })
                })
                .collect(),
            eta: vec_terms(&h.eta),
        }
    }
}

impl TryFrom<HopfJson> for HopfQuasigroupData {
    type Error = Error;

    fn try_from(j: HopfJson) -> Result<Self> {
        let d = j.dim;
        let check = |idx: &[usize]| -> Result<()> {
            match idx.iter().find(|&&i| i >= d) {
                Some(i) => Err(Error::MalformedTable(format!("basis index {i} out of range for dim {d}"))),
                None => Ok(()),
            }
        };
        let mut mu = vec![Vector::zero(); d * d];
        for (i, k, x, n, q) in &j.mu {
            check(&[*i, *k, *x])?;
            mu[i * d + k].add_term(*x, &join(n, q)?);
        }
        let mut delta = vec![Tensor2::zero(); d];
        for (i, a, b, n, q) in &j.delta {
            check(&[*i, *a, *b])?;
            delta[*i].add_term((*a, *b), &join(n, q)?);
        }
        let mut eps = Vector::zero();
        for (i, n, q) in &j.eps {
            check(&[*i])?;
            eps.add_term(*i, &join(n, q)?);
        }
        let mut cols = vec![Vector::zero(); d];
        for (i, x, n, q) in &j.s {
            check(&[*i, *x])?;
            cols[*i].add_term(*x, &join(n, q)?);
        }
        let mut eta = Vector::zero();
        for (i, n, q) in &j.eta {
            check(&[*i])?;
            eta.add_term(*i, &join(n, q)?);
        }
        Ok(HopfQuasigroupData { dim: d, mu, eta, delta, eps, s: LinearMap { dim_out: d, cols } })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, odd_loop, symmetric3};
    use crate::inverse::{aut_power_order, is_m_inverse, right_inverse_permutation};

    fn k(q: &Loop) -> HopfQuasigroupData {
        group_algebra(q, &right_inverse_permutation(q)).unwrap()
    }

    #[test]
    fn kz2_is_one_inverse_with_identity_antipode() {
        let h = k(&cyclic(2));
        assert_eq!(h.s, LinearMap::identity(2));
        assert!(verify_hopf_quasigroup(&h, 1).unwrap().holds);
    }

    #[test]
    fn ks3_matches_set_level_classification() {
        let q = symmetric3();
        let j = right_inverse_permutation(&q);
        let h = k(&q);
        for m in -3..=3 {
            assert_eq!(verify_hopf_quasigroup(&h, m).unwrap().holds, is_m_inverse(&q, &j, m), "m = {m}");
        }
        assert!(!verify_hopf_quasigroup(&h, 0).unwrap().holds);
        assert!(verify_hopf_quasigroup(&h, 1).unwrap().holds);
    }

    #[test]
    fn odd_loop_algebra_follows_parity() {
        let q = odd_loop();
        let h = k(&q);
        for m in -3..=3 {
            assert_eq!(verify_hopf_quasigroup(&h, m).unwrap().holds, m % 2 != 0, "m = {m}");
        }
    }

    #[test]
    fn perturbed_antipode_fails_s_prop() {
        let mut h = k(&symmetric3());
        h.s.cols[3].add_term(0, &int(1));
        let r = verify_hopf_quasigroup(&h, 1).unwrap();
        let c = r.diagnostics.get("S-prop").unwrap();
        assert!(!c.ok);
        assert_eq!(c.witness, Some(vec![3]));
    }

    #[test]
    fn tensor_of_group_algebras_is_algebra_of_product() {
        let (a, b) = (cyclic(2), cyclic(3));
        let t = tensor_product(&k(&a), &k(&b)).unwrap();
        assert_eq!(t, k(&a.direct_product(&b)));
        let one = k(&cyclic(1));
        assert_eq!(tensor_product(&k(&a), &one).unwrap(), k(&a));
        let big = tensor_product(&k(&symmetric3()), &k(&cyclic(11)));
        assert!(matches!(big, Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn singular_antipode_with_negative_power() {
        let mut h = k(&cyclic(3));
        h.s.cols[2] = Vector::unit(2);
        assert!(matches!(verify_hopf_quasigroup(&h, -1), Err(Error::Singular)));
        assert!(!verify_hopf_quasigroup(&h, 1).unwrap().holds);
    }

    #[test]
    fn json_round_trip() {
        let mut h = k(&symmetric3());
        h.s.cols[1].add_term(2, &Scalar::new(3.into(), 7.into()));
        let text = serde_json::to_string(&h).unwrap();
        let back: HopfQuasigroupData = serde_json::from_str(&text).unwrap();
        assert_eq!(back, h);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dim"], 6);
        assert!(v["S"].as_array().unwrap().iter().any(|e| e[3] == 7));
    }

    #[test]
    fn aut_order_of_kq() {
        for q in [symmetric3(), odd_loop(), cyclic(5)] {
            let expected = aut_power_order(&q, &right_inverse_permutation(&q));
            assert_eq!(k(&q).antipode_aut_order(12), Some(expected));
        }
    }
}
