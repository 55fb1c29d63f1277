//! Matched pairs `R ⋈ S` of m-inverse loops and the one-sided special case
//! `R ⋊ S`.
//!
//! Condition witnesses list the variables a law quantifies over in the order
//! `(r, r', s, s')`, omitting those it does not use.

use serde::{Deserialize, Serialize};

use crate::diagnostics::{first_failure, Check, Diagnostics};
use crate::inverse;
use crate::perm::Permutation;
use crate::quasigroup::{CayleyTable, Loop};
use crate::{Error, Result};

/// `φ: S×R → R` and `ψ: S×R → S` as lookup tables indexed `s * |R| + r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ActionPair {
    pub r_order: usize,
    pub s_order: usize,
    pub phi: Vec<usize>,
    pub psi: Vec<usize>,
}

impl ActionPair {
    pub fn new(r_order: usize, s_order: usize, phi: Vec<usize>, psi: Vec<usize>) -> Result<Self> {
        let len = r_order * s_order;
        if phi.len() != len || psi.len() != len {
            return Err(Error::SizeMismatch(format!(
                "action tables need {len} entries, got φ: {}, ψ: {}",
                phi.len(),
                psi.len()
            )));
        }
        if let Some(i) = phi.iter().position(|&x| x >= r_order) {
            return Err(Error::MalformedTable(format!("φ entry {i} out of range")));
        }
        if let Some(i) = psi.iter().position(|&x| x >= s_order) {
            return Err(Error::MalformedTable(format!("ψ entry {i} out of range")));
        }
        Ok(ActionPair { r_order, s_order, phi, psi })
    }

    /// `φ(s,r) = r`, `ψ(s,r) = s`.
    pub fn trivial(r_order: usize, s_order: usize) -> Self {
        let idx = 0..r_order * s_order;
        ActionPair {
            r_order,
            s_order,
            phi: idx.clone().map(|i| i % r_order).collect(),
            psi: idx.map(|i| i / r_order).collect(),
        }
    }

    /// The pair with left action `phi` and `ψ(s,r) = s`.
    pub fn left_only(r_order: usize, s_order: usize, phi: Vec<usize>) -> Result<Self> {
        let psi = (0..r_order * s_order).map(|i| i / r_order).collect();
        ActionPair::new(r_order, s_order, phi, psi)
    }

    pub fn phi(&self, s: usize, r: usize) -> usize {
        self.phi[s * self.r_order + r]
    }

    pub fn psi(&self, s: usize, r: usize) -> usize {
        self.psi[s * self.r_order + r]
    }

    pub fn is_trivial(&self) -> bool {
        *self == ActionPair::trivial(self.r_order, self.s_order)
    }

    pub fn has_trivial_phi(&self) -> bool {
        self.phi.iter().enumerate().all(|(i, &x)| x == i % self.r_order)
    }

    pub fn has_trivial_psi(&self) -> bool {
        self.psi.iter().enumerate().all(|(i, &x)| x == i / self.r_order)
    }

    fn check_carriers(&self, r: &Loop, s: &Loop) -> Result<()> {
        if self.r_order != r.order() || self.s_order != s.order() {
            return Err(Error::SizeMismatch(format!(
                "actions are for |R| = {}, |S| = {}; got {} and {}",
                self.r_order,
                self.s_order,
                r.order(),
                s.order()
            )));
        }
        Ok(())
    }
}

/// `(r,s)(r',s') = (r·φ(s,r'), ψ(s,r')·s')`, element `(r,s)` at `r * |S| + s`.
pub fn matched_pair_table(r: &Loop, s: &Loop, a: &ActionPair) -> Result<CayleyTable> {
    a.check_carriers(r, s)?;
    let ns = s.order();
    CayleyTable::from_fn(r.order() * ns, |x, y| {
        let (r1, s1) = (x / ns, x % ns);
        let (r2, s2) = (y / ns, y % ns);
        r.mul(r1, a.phi(s1, r2)) * ns + s.mul(a.psi(s1, r2), s2)
    })
}

/// `J(r,s) = (φ(J_S s, J_R r), ψ(J_S s, J_R r))`.
pub fn matched_pair_permutation(
    r: &Loop,
    jr: &Permutation,
    s: &Loop,
    js: &Permutation,
    a: &ActionPair,
) -> Result<Permutation> {
    a.check_carriers(r, s)?;
    let ns = s.order();
    let image = (0..r.order() * ns)
        .map(|x| {
            let (rr, ss) = (jr.apply(x / ns), js.apply(x % ns));
            a.phi(ss, rr) * ns + a.psi(ss, rr)
        })
        .collect();
    Permutation::new(image)
}

/// Powers of a factor's `J` that the condition displays use.
struct Twists {
    j: Permutation,
    jm: Permutation,
    jm1: Permutation,
    jneg: Permutation,
    jneg_m: Permutation,
}

impl Twists {
    fn new(j: &Permutation, m: i64) -> Self {
        Twists { j: j.clone(), jm: j.pow(m), jm1: j.pow(m + 1), jneg: j.pow(-1), jneg_m: j.pow(-m) }
    }
}

fn check_factors(r: &Loop, jr: &Permutation, s: &Loop, js: &Permutation) -> Result<()> {
    if jr.len() != r.order() || js.len() != s.order() {
        return Err(Error::SizeMismatch("J does not act on its loop".into()));
    }
    if jr.apply(r.identity()) != r.identity() || js.apply(s.identity()) != s.identity() {
        return Err(Error::Precondition("J must fix the identity".into()));
    }
    Ok(())
}

/// Both factors are `m`-inverse, i.e. `m` solves the congruence pair for
/// their valid residues.
fn congruence(r: &Loop, jr: &Permutation, s: &Loop, js: &Permutation, m: i64) -> Result<()> {
    let wr = inverse::m_inverse_witness(r, jr, m);
    let ws = inverse::m_inverse_witness(s, js, m);
    match (wr, ws) {
        (None, None) => Ok(()),
        (wr, ws) => {
            let hr = inverse::aut_power_order(r, jr);
            let hs = inverse::aut_power_order(s, js);
            let mut detail = Vec::new();
            if let Some(w) = wr {
                detail.push(format!("R (h = {hr}) is not {m}-inverse at {w:?}"));
            }
            if let Some(w) = ws {
                detail.push(format!("S (h = {hs}) is not {m}-inverse at {w:?}"));
            }
            Err(Error::Congruence { m, detail: detail.join("; ") })
        }
    }
}

/// The hypotheses on `(φ, ψ)` for the matched pair at `m`, one check per
/// named law.
pub fn matched_pair_conditions(
    r: &Loop,
    jr: &Permutation,
    s: &Loop,
    js: &Permutation,
    a: &ActionPair,
    m: i64,
) -> Diagnostics {
    let (nr, ns) = (r.order(), s.order());
    let (dr, ds) = (r.identity(), s.identity());
    let tr = Twists::new(jr, m);
    let ts = Twists::new(js, m);
    let mut d = Diagnostics::new();

    d.record(
        "unit-action-QR-matched-I",
        first_failure(&[nr, ns], |t| {
            let (x, y) = (t[0], t[1]);
            a.phi(ds, x) == x && a.phi(y, dr) == dr && a.psi(ds, x) == ds && a.psi(y, dr) == y
        }),
    );
    d.record(
        "unit-action-QR-matched-I-I",
        first_failure(&[nr, ns], |t| a.phi(t[1], a.phi(ts.j.apply(t[1]), t[0])) == t[0]),
    );
    d.record(
        "unit-action-QR-matched-II",
        first_failure(&[nr, nr, ns], |t| {
            let (x, x2, y) = (t[0], t[1], t[2]);
            let inner = a.psi(y, tr.jm.apply(r.mul(x, x2)));
            a.psi(inner, tr.jm1.apply(x)) == a.psi(y, tr.jm.apply(x2))
        }),
    );
    d.record(
        "unit-action-QR-matched-III",
        first_failure(&[nr, nr, ns], |t| {
            let (x, x2, y) = (t[0], t[1], t[2]);
            let p = tr.jm.apply(r.mul(x, x2));
            let lhs = r.mul(a.phi(y, p), a.phi(a.psi(y, p), tr.jm1.apply(x)));
            lhs == a.phi(y, tr.jm.apply(x2))
        }),
    );
    d.record(
        "unit-action-QR-matched-IV",
        first_failure(&[nr, ns], |t| {
            let (x, y) = (t[0], t[1]);
            let jy = ts.j.apply(y);
            s.mul(a.psi(y, a.phi(jy, x)), a.psi(jy, x)) == ds
        }),
    );
    d
}

/// The iff-condition on `(φ, ψ)` for `R ⋈ S` to be `m`-inverse, under two
/// readings of the first odd law: as displayed (`J_R^{-m}` inside the left
/// `ψ`, `J_R^{-1}` inside the right one) under `m-inverse-cond-matched`, and
/// with `J_R^{-m}` in both places under `m-inverse-cond-matched-alt`.
pub fn matched_inverse_conditions(
    r: &Loop,
    jr: &Permutation,
    s: &Loop,
    js: &Permutation,
    a: &ActionPair,
    m: i64,
) -> Diagnostics {
    let (nr, ns) = (r.order(), s.order());
    let mut d = Diagnostics::new();
    if m.rem_euclid(2) == 0 {
        let w = first_failure(&[nr, ns], |t| a.phi(t[1], t[0]) == t[0] && a.psi(t[1], t[0]) == t[1]);
        d.record("m-inverse-cond-matched", w.clone());
        d.record("m-inverse-cond-matched-alt", w);
        return d;
    }
    let tr = Twists::new(jr, m);
    let ts = Twists::new(js, m);
    let second = |x: usize, y: usize, y2: usize| {
        let lhs = s.mul(a.psi(ts.jm.apply(s.mul(a.psi(y, x), y2)), tr.jm.apply(a.phi(y, x))), ts.jm1.apply(y));
        lhs == a.psi(ts.jm.apply(y2), tr.jm.apply(x))
    };
    let first = |x: usize, y: usize, y2: usize, inner: &Permutation| {
        let outer = ts.jm.apply(s.mul(a.psi(y, tr.jneg_m.apply(x)), y2));
        a.phi(outer, a.phi(a.psi(y, inner.apply(x)), x)) == a.phi(ts.jm.apply(y2), x)
    };
    d.record(
        "m-inverse-cond-matched",
        first_failure(&[nr, ns, ns], |t| first(t[0], t[1], t[2], &tr.jneg) && second(t[0], t[1], t[2])),
    );
    d.record(
        "m-inverse-cond-matched-alt",
        first_failure(&[nr, ns, ns], |t| first(t[0], t[1], t[2], &tr.jneg_m) && second(t[0], t[1], t[2])),
    );
    d
}

/// `J_R(φ(s,r)) = φ(ψ(s,r), J_R(r))`.
pub fn left_action_inverse_witness(r: &Loop, jr: &Permutation, a: &ActionPair, ns: usize) -> Option<Vec<usize>> {
    first_failure(&[r.order(), ns], |t| {
        let (x, y) = (t[0], t[1]);
        jr.apply(a.phi(y, x)) == a.phi(a.psi(y, x), jr.apply(x))
    })
}

/// Defining-identity scan of a product loop, as a named check.
fn scan_check(l: &Loop, j: &Permutation, m: i64) -> Check {
    Check::from_witness("m-inv", inverse::m_inverse_witness(l, j, m).map(|w| w.to_vec()))
}

/// A product loop together with its permutation and the full condition
/// report.
#[derive(Clone, Debug)]
pub struct ProductLoop {
    pub loop_: Loop,
    pub j: Permutation,
    pub m: i64,
    pub diagnostics: Diagnostics,
}

impl ProductLoop {
    /// Whether the defining-identity scan and the displayed iff-condition
    /// (named `cond`) gave the same verdict.
    fn agreement(&self, cond: &str) -> bool {
        let scan = self.diagnostics.get("m-inv").is_some_and(|c| c.ok);
        self.diagnostics.get(cond).is_some_and(|c| c.ok == scan)
    }
}

/// `R ⋈ S` at `m`.
///
/// Hypotheses (unit laws and the twisted laws) are hard preconditions. The
/// `m`-inverse verdict comes from scanning the defining identity on the built
/// loop; the iff-conditions are reported alongside as diagnostics.
pub fn matched_pair_loop(
    r: &Loop,
    jr: &Permutation,
    s: &Loop,
    js: &Permutation,
    a: &ActionPair,
    m: i64,
) -> Result<ProductLoop> {
    a.check_carriers(r, s)?;
    check_factors(r, jr, s, js)?;
    congruence(r, jr, s, js, m)?;
    let mut diagnostics = matched_pair_conditions(r, jr, s, js, a, m);
    if !diagnostics.all_ok() {
        return Err(Error::Conditions(diagnostics));
    }
    let table = matched_pair_table(r, s, a)?;
    let delta = r.identity() * s.order() + s.identity();
    let l = Loop::with_identity(table, delta)
        .map_err(|e| Error::Internal(format!("hypotheses hold but R ⋈ S is not a loop: {e}")))?;
    let j = matched_pair_permutation(r, jr, s, js, a)
        .map_err(|e| Error::Internal(format!("hypotheses hold but J is not a bijection: {e}")))?;
    if let Some(w) = left_action_inverse_witness(r, jr, a, s.order()) {
        return Err(Error::Internal(format!("hypotheses hold but J_R(φ(s,r)) = φ(ψ(s,r), J_R(r)) fails at {w:?}")));
    }
    diagnostics.push(Check::pass("inverse-of-left-action"));
    diagnostics.extend(matched_inverse_conditions(r, jr, s, js, a, m));
    diagnostics.push(scan_check(&l, &j, m));
    let out = ProductLoop { loop_: l, j, m, diagnostics };
    if !out.diagnostics.get("m-inv").is_some_and(|c| c.ok) {
        return Err(Error::Conditions(out.diagnostics));
    }
    Ok(out)
}

/// Whether the iff-condition (as displayed) agrees with the scan.
pub fn matched_condition_agrees(p: &ProductLoop) -> bool {
    p.agreement("m-inverse-cond-matched")
}

/// Hypotheses of the one-sided product at `m`.
pub fn semidirect_conditions(
    r: &Loop,
    jr: &Permutation,
    s: &Loop,
    js: &Permutation,
    phi: &ActionPair,
    m: i64,
) -> Diagnostics {
    let (nr, ns) = (r.order(), s.order());
    let (dr, ds) = (r.identity(), s.identity());
    let tr = Twists::new(jr, m);
    let ts = Twists::new(js, m);
    let mut d = Diagnostics::new();
    d.record("unit-action-QR", first_failure(&[nr, ns], |t| phi.phi(ds, t[0]) == t[0] && phi.phi(t[1], dr) == dr));
    d.record(
        "unit-action-QR-S",
        first_failure(&[nr, ns, ns], |t| {
            let (x, y, y2) = (t[0], t[1], t[2]);
            phi.phi(ts.jm.apply(s.mul(y, y2)), phi.phi(ts.jm1.apply(y), x)) == phi.phi(ts.jm.apply(y2), x)
        }),
    );
    d.record(
        "unit-action-QR-R",
        first_failure(&[nr, nr, ns], |t| {
            let (x, x2, y) = (t[0], t[1], t[2]);
            r.mul(phi.phi(y, tr.jm.apply(r.mul(x, x2))), phi.phi(y, tr.jm1.apply(x))) == phi.phi(y, tr.jm.apply(x2))
        }),
    );
    d
}

/// The iff-condition of the one-sided product: `φ` trivial for even `m`,
/// `φ(J_S^m(ss'), φ(s,r)) = φ(J_S^m(s'), r)` for odd `m`.
pub fn semidirect_inverse_condition(r: &Loop, s: &Loop, js: &Permutation, phi: &ActionPair, m: i64) -> Check {
    let (nr, ns) = (r.order(), s.order());
    let w = if m.rem_euclid(2) == 0 {
        first_failure(&[nr, ns], |t| phi.phi(t[1], t[0]) == t[0])
    } else {
        let jm = js.pow(m);
        first_failure(&[nr, ns, ns], |t| {
            let (x, y, y2) = (t[0], t[1], t[2]);
            phi.phi(jm.apply(s.mul(y, y2)), phi.phi(y, x)) == phi.phi(jm.apply(y2), x)
        })
    };
    Check::from_witness("m-inverse-cond", w)
}

/// `R ⋊ S` at `m` with `(r,s)(r',s') = (r·φ(s,r'), ss')` and
/// `J(r,s) = (φ(J_S s, J_R r), J_S s)`.
///
/// `phi` is an [`ActionPair`] whose `ψ` must be trivial.
pub fn semidirect_m_inverse(
    r: &Loop,
    jr: &Permutation,
    s: &Loop,
    js: &Permutation,
    phi: &ActionPair,
    m: i64,
) -> Result<ProductLoop> {
    phi.check_carriers(r, s)?;
    if !phi.has_trivial_psi() {
        return Err(Error::Precondition("the one-sided product needs ψ(s,r) = s".into()));
    }
    check_factors(r, jr, s, js)?;
    congruence(r, jr, s, js, m)?;
    let mut diagnostics = semidirect_conditions(r, jr, s, js, phi, m);
    if !diagnostics.all_ok() {
        return Err(Error::Conditions(diagnostics));
    }
    let table = matched_pair_table(r, s, phi)?;
    let delta = r.identity() * s.order() + s.identity();
    let l = Loop::with_identity(table, delta)
        .map_err(|e| Error::Internal(format!("hypotheses hold but R ⋊ S is not a loop: {e}")))?;
    let j = matched_pair_permutation(r, jr, s, js, phi)
        .map_err(|e| Error::Internal(format!("hypotheses hold but J is not a bijection: {e}")))?;
    diagnostics.push(semidirect_inverse_condition(r, s, js, phi, m));
    diagnostics.push(scan_check(&l, &j, m));
    let out = ProductLoop { loop_: l, j, m, diagnostics };
    if !out.diagnostics.get("m-inv").is_some_and(|c| c.ok) {
        return Err(Error::Conditions(out.diagnostics));
    }
    Ok(out)
}

/// Whether the one-sided iff-condition agrees with the scan.
pub fn semidirect_condition_agrees(p: &ProductLoop) -> bool {
    p.agreement("m-inverse-cond")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, symmetric3};
    use crate::inverse::right_inverse_permutation as inv;

    #[test]
    fn trivial_actions_give_the_direct_product() {
        let (r, s) = (symmetric3(), cyclic(3));
        let a = ActionPair::trivial(6, 3);
        let p = matched_pair_loop(&r, &inv(&r), &s, &inv(&s), &a, 1).unwrap();
        assert_eq!(p.loop_.table(), r.direct_product(&s).table());
        assert_eq!(p.j, inv(&r).product(&inv(&s)));
        assert!(matched_condition_agrees(&p));
    }

    #[test]
    fn congruence_failure_is_separate() {
        let (r, s) = (symmetric3(), cyclic(2));
        let err = matched_pair_loop(&r, &inv(&r), &s, &inv(&s), &ActionPair::trivial(6, 2), 0).unwrap_err();
        assert!(matches!(err, Error::Congruence { m: 0, .. }));
    }

    /// `Z2` acting on `Z3` by inversion, with `ψ` trivial: the group `S3`.
    fn inversion_action() -> ActionPair {
        ActionPair::left_only(3, 2, vec![0, 1, 2, 0, 2, 1]).unwrap()
    }

    #[test]
    fn odd_m_semidirect_matches_the_matched_pair() {
        let (r, s) = (cyclic(3), cyclic(2));
        let a = inversion_action();
        let semi = semidirect_m_inverse(&r, &inv(&r), &s, &inv(&s), &a, 1).unwrap();
        let matched = matched_pair_loop(&r, &inv(&r), &s, &inv(&s), &a, 1).unwrap();
        assert_eq!(semi.loop_.table(), matched.loop_.table());
        assert_eq!(semi.j, matched.j);
        assert!(semi.loop_.is_group());
        assert!(semidirect_condition_agrees(&semi));
    }

    #[test]
    fn even_m_nontrivial_action_is_rejected() {
        let (r, s) = (cyclic(3), cyclic(2));
        let err = matched_pair_loop(&r, &inv(&r), &s, &inv(&s), &inversion_action(), 2).unwrap_err();
        let Error::Conditions(d) = err else { panic!("expected conditions error") };
        let c = d.get("m-inverse-cond-matched").unwrap();
        assert_eq!(c.witness, Some(vec![1, 1]));
        assert!(!d.get("m-inv").unwrap().ok);
    }

    #[test]
    fn unit_law_violation_names_the_law() {
        let (r, s) = (cyclic(2), cyclic(2));
        let a = ActionPair::new(2, 2, vec![0, 1, 1, 1], vec![0, 0, 1, 1]).unwrap();
        let Err(Error::Conditions(d)) = matched_pair_loop(&r, &inv(&r), &s, &inv(&s), &a, 1) else {
            panic!("expected conditions error")
        };
        assert_eq!(d.get("unit-action-QR-matched-I").unwrap().witness, Some(vec![0, 1]));
    }

    #[test]
    fn action_tables_are_validated() {
        assert!(ActionPair::new(2, 2, vec![0, 1, 2, 0], vec![0, 0, 1, 1]).is_err());
        assert!(ActionPair::new(2, 2, vec![0, 1], vec![0, 0, 1, 1]).is_err());
        assert!(ActionPair::trivial(3, 2).is_trivial());
    }
}
