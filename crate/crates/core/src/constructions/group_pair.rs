//! Matched pairs of groups (Zappa–Szép products).

use serde::{Deserialize, Serialize};

use crate::diagnostics::{first_failure, Diagnostics};
use crate::quasigroup::{CayleyTable, Loop};
use crate::{Error, Result};

/// `▷: H×G → G` and `◁: H×G → H`, both indexed `y * |G| + x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupActionPair {
    pub g_order: usize,
    pub h_order: usize,
    pub triangleright: Vec<usize>,
    pub triangleleft: Vec<usize>,
}

impl GroupActionPair {
    pub fn new(g_order: usize, h_order: usize, right: Vec<usize>, left: Vec<usize>) -> Result<Self> {
        let len = g_order * h_order;
        if right.len() != len || left.len() != len {
            return Err(Error::SizeMismatch(format!("action tables need {len} entries")));
        }
        if right.iter().any(|&x| x >= g_order) || left.iter().any(|&y| y >= h_order) {
            return Err(Error::MalformedTable("action value out of range".into()));
        }
        Ok(GroupActionPair { g_order, h_order, triangleright: right, triangleleft: left })
    }

    pub fn trivial(g_order: usize, h_order: usize) -> Self {
        let idx = 0..g_order * h_order;
        GroupActionPair {
            g_order,
            h_order,
            triangleright: idx.clone().map(|i| i % g_order).collect(),
            triangleleft: idx.map(|i| i / g_order).collect(),
        }
    }

    /// `y ▷ x`.
    pub fn act(&self, y: usize, x: usize) -> usize {
        self.triangleright[y * self.g_order + x]
    }

    /// `y ◁ x`.
    pub fn back(&self, y: usize, x: usize) -> usize {
        self.triangleleft[y * self.g_order + x]
    }
}

/// The unit, action and matched-pair laws. Witnesses are `(x, x', y, y')`
/// restricted to the variables each law uses.
pub fn group_pair_laws(g: &Loop, h: &Loop, a: &GroupActionPair) -> Diagnostics {
    let (ng, nh) = (g.order(), h.order());
    let (eg, eh) = (g.identity(), h.identity());
    let mut d = Diagnostics::new();
    d.record(
        "unit",
        first_failure(&[ng, nh], |t| {
            let (x, y) = (t[0], t[1]);
            a.act(eh, x) == x && a.act(y, eg) == eg && a.back(eh, x) == eh && a.back(y, eg) == y
        }),
    );
    d.record(
        "left-action",
        first_failure(&[ng, nh, nh], |t| a.act(h.mul(t[1], t[2]), t[0]) == a.act(t[1], a.act(t[2], t[0]))),
    );
    d.record(
        "right-action",
        first_failure(&[ng, ng, nh], |t| a.back(t[2], g.mul(t[0], t[1])) == a.back(a.back(t[2], t[0]), t[1])),
    );
    d.record(
        "matched-G",
        first_failure(&[ng, ng, nh], |t| {
            let (x, x2, y) = (t[0], t[1], t[2]);
            a.act(y, g.mul(x, x2)) == g.mul(a.act(y, x), a.act(a.back(y, x), x2))
        }),
    );
    d.record(
        "matched-H",
        first_failure(&[ng, nh, nh], |t| {
            let (x, y, y2) = (t[0], t[1], t[2]);
            a.back(h.mul(y, y2), x) == h.mul(a.back(y, a.act(y2, x)), a.back(y2, x))
        }),
    );
    d
}

/// `G ⋈ H` with `(x,y)(x',y') = (x(y▷x'), (y◁x')y')`, element `(x,y)` at
/// `x * |H| + y`.
pub fn group_matched_pair(g: &Loop, h: &Loop, a: &GroupActionPair) -> Result<Loop> {
    if a.g_order != g.order() || a.h_order != h.order() {
        return Err(Error::SizeMismatch("actions do not match the groups".into()));
    }
    if !g.is_group() || !h.is_group() {
        return Err(Error::Precondition("both factors must be groups".into()));
    }
    group_pair_laws(g, h, a).into_result()?;
    let nh = h.order();
    let t = CayleyTable::from_fn(g.order() * nh, |p, q| {
        let (x, y) = (p / nh, p % nh);
        let (x2, y2) = (q / nh, q % nh);
        g.mul(x, a.act(y, x2)) * nh + h.mul(a.back(y, x2), y2)
    })?;
    let l = Loop::with_identity(t, g.identity() * nh + h.identity())
        .map_err(|e| Error::Internal(format!("matched-pair laws hold but G ⋈ H is not a loop: {e}")))?;
    if let Some(w) = l.table().associativity_witness() {
        return Err(Error::Internal(format!("G ⋈ H is not associative at {w:?}")));
    }
    Ok(l)
}

/// `Z3 ⋈ Z2` with `Z2` inverting `Z3` and `◁` trivial.
pub fn s3_action_pair() -> GroupActionPair {
    GroupActionPair::new(3, 2, vec![0, 1, 2, 0, 2, 1], vec![0, 0, 0, 1, 1, 1]).expect("static table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, symmetric3};
    use crate::perm::Permutation;

    fn isomorphic(a: &CayleyTable, b: &CayleyTable) -> bool {
        // brute force over all bijections; fine for order 6
        fn rec(a: &CayleyTable, b: &CayleyTable, f: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let n = a.order();
            if f.len() == n {
                return (0..n).all(|x| (0..n).all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])));
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    f.push(v);
                    if rec(a, b, f, used) {
                        return true;
                    }
                    f.pop();
                    used[v] = false;
                }
            }
            false
        }
        a.order() == b.order() && rec(a, b, &mut Vec::new(), &mut vec![false; a.order()])
    }

    #[test]
    fn trivial_actions_give_the_direct_product() {
        let (g, h) = (cyclic(3), cyclic(2));
        let k = group_matched_pair(&g, &h, &GroupActionPair::trivial(3, 2)).unwrap();
        assert_eq!(k.table(), g.direct_product(&h).table());
    }

    #[test]
    fn inversion_action_gives_s3() {
        let k = group_matched_pair(&cyclic(3), &cyclic(2), &s3_action_pair()).unwrap();
        assert!(!k.table().is_commutative());
        assert!(isomorphic(k.table(), symmetric3().table()));
        let swap = Permutation::new(vec![0, 1, 2, 3, 5, 4]).unwrap();
        assert!(!isomorphic(k.table(), &cyclic(6).table().relabel(&swap)));
    }

    #[test]
    fn broken_action_is_rejected_with_witness() {
        // y ▷ x = x + 1 for y = 1 is not an automorphism of Z3
        let a = GroupActionPair::new(3, 2, vec![0, 1, 2, 1, 2, 0], vec![0, 0, 0, 1, 1, 1]).unwrap();
        let Err(Error::Conditions(d)) = group_matched_pair(&cyclic(3), &cyclic(2), &a) else {
            panic!("expected law failure")
        };
        assert!(!d.get("matched-G").unwrap().ok);
        assert!(!d.get("unit").unwrap().ok);
    }
}
