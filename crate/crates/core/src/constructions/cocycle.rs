//! Cocycle-type extensions `G ×_φ V` and the odd-invertible loops built on them.

use serde::{Deserialize, Serialize};

use crate::diagnostics::{first_failure, Diagnostics};
use crate::perm::Permutation;
use crate::quasigroup::{CayleyTable, Loop, Quasigroup};
use crate::{inverse, Error, Result};

/// A map `φ: G × G → V`, with an optional right action `◁: V × G → V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CocycleMap {
    pub g_order: usize,
    pub v_order: usize,
    /// `values[x * g_order + x'] = φ(x, x')`.
    pub values: Vec<usize>,
    /// `action[v * g_order + x] = v ◁ x`; `None` means the trivial action.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<usize>>,
}

impl CocycleMap {
    pub fn new(g_order: usize, v_order: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != g_order * g_order {
            return Err(Error::SizeMismatch(format!(
                "cocycle needs {} values, got {}",
                g_order * g_order,
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= v_order) {
            return Err(Error::MalformedTable(format!("cocycle value {v} outside V")));
        }
        Ok(CocycleMap { g_order, v_order, values, action: None })
    }

    pub fn zero(g_order: usize, v_order: usize, zero: usize) -> Self {
        CocycleMap { g_order, v_order, values: vec![zero; g_order * g_order], action: None }
    }

    pub fn with_action(mut self, action: Vec<usize>) -> Result<Self> {
        if action.len() != self.v_order * self.g_order {
            return Err(Error::SizeMismatch("action table has the wrong size".into()));
        }
        if action.iter().any(|&v| v >= self.v_order) {
            return Err(Error::MalformedTable("action value outside V".into()));
        }
        self.action = Some(action);
        Ok(self)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.values[x * self.g_order + y]
    }

    #[inline]
    pub fn act(&self, v: usize, x: usize) -> usize {
        match &self.action {
            Some(a) => a[v * self.g_order + x],
            None => v,
        }
    }

    pub fn has_trivial_action(&self) -> bool {
        match &self.action {
            None => true,
            Some(a) => (0..self.v_order).all(|v| (0..self.g_order).all(|x| a[v * self.g_order + x] == v)),
        }
    }
}

fn check_orders(g: &Loop, v: &Loop, c: &CocycleMap) -> Result<()> {
    if c.g_order != g.order() || c.v_order != v.order() {
        return Err(Error::SizeMismatch(format!(
            "cocycle is for |G|={}, |V|={}, got groups of order {} and {}",
            c.g_order,
            c.v_order,
            g.order(),
            v.order()
        )));
    }
    Ok(())
}

fn require_groups(g: &Loop, v: &Loop) -> Result<()> {
    if let Some(w) = g.table().associativity_witness() {
        return Err(Error::Precondition(format!("G is not a group: {w:?} is not associative")));
    }
    if !v.is_group() || !v.table().is_commutative() {
        return Err(Error::Precondition("V must be an abelian group".into()));
    }
    Ok(())
}

/// The action must be a right action of `G` on `V` by automorphisms.
fn check_action(g: &Loop, v: &Loop, c: &CocycleMap) -> Result<()> {
    if c.action.is_none() {
        return Ok(());
    }
    let (gn, vn) = (g.order(), v.order());
    let w = first_failure(&[vn], |t| c.act(t[0], g.identity()) == t[0]);
    if let Some(w) = w {
        return Err(Error::Precondition(format!("action does not fix v={} under the unit", w[0])));
    }
    let w = first_failure(&[vn, gn, gn], |t| c.act(c.act(t[0], t[1]), t[2]) == c.act(t[0], g.mul(t[1], t[2])));
    if let Some(w) = w {
        return Err(Error::Precondition(format!("(v◁x)◁x' ≠ v◁(xx') at {w:?}")));
    }
    let w =
        first_failure(&[vn, vn, gn], |t| c.act(v.mul(t[0], t[1]), t[2]) == v.mul(c.act(t[0], t[2]), c.act(t[1], t[2])));
    if let Some(w) = w {
        return Err(Error::Precondition(format!("action is not additive at {w:?}")));
    }
    Ok(())
}

/// `dφ(x,x',x'') = φ(x',x'') − φ(xx',x'') + φ(x,x'x'') − φ(x,x')◁x''`.
pub fn coboundary_value(g: &Loop, v: &Loop, c: &CocycleMap, x: usize, y: usize, z: usize) -> usize {
    let neg = |a: usize| v.right_inverse(a);
    let terms = [c.get(y, z), neg(c.get(g.mul(x, y), z)), c.get(x, g.mul(y, z)), neg(c.act(c.get(x, y), z))];
    terms.into_iter().fold(v.identity(), |acc, t| v.mul(acc, t))
}

/// First triple on which `dφ` is nonzero.
pub fn cocycle_witness(g: &Loop, v: &Loop, c: &CocycleMap) -> Result<Option<[usize; 3]>> {
    check_orders(g, v, c)?;
    require_groups(g, v)?;
    check_action(g, v, c)?;
    let n = g.order();
    let zero = v.identity();
    Ok(first_failure(&[n, n, n], |t| coboundary_value(g, v, c, t[0], t[1], t[2]) == zero).map(|w| [w[0], w[1], w[2]]))
}

pub fn is_2cocycle(g: &Loop, v: &Loop, c: &CocycleMap) -> Result<bool> {
    Ok(cocycle_witness(g, v, c)?.is_none())
}

/// The quasigroup on `G × V` with `(x,v)(x',v') = (xx', φ(x,x') + v◁x' + v')`.
///
/// Element `(x, v)` has index `x * |V| + v`.
pub fn cocycle_extension(g: &Loop, v: &Loop, c: &CocycleMap) -> Result<Quasigroup> {
    check_orders(g, v, c)?;
    require_groups(g, v)?;
    check_action(g, v, c)?;
    let vn = v.order();
    let t = CayleyTable::from_fn(g.order() * vn, |a, b| {
        let (x, va) = (a / vn, a % vn);
        let (y, vb) = (b / vn, b % vn);
        g.mul(x, y) * vn + v.mul(v.mul(c.get(x, y), c.act(va, y)), vb)
    })?;
    Quasigroup::new(t)
}

/// The unit law `φ(1,x) = 0 = φ(x,1)`.
pub fn quasi_0_witness(g: &Loop, v: &Loop, c: &CocycleMap) -> Option<Vec<usize>> {
    let (e, z) = (g.identity(), v.identity());
    first_failure(&[g.order()], |t| c.get(e, t[0]) == z && c.get(t[0], e) == z)
}

/// `φ(x, x⁻¹) = 0`.
pub fn quasi_i_witness(g: &Loop, v: &Loop, c: &CocycleMap) -> Option<Vec<usize>> {
    let z = v.identity();
    first_failure(&[g.order()], |t| c.get(t[0], g.right_inverse(t[0])) == z)
}

/// `φ(x'⁻¹x⁻¹, x) = φ(x, x')`.
pub fn quasi_ii_witness(g: &Loop, c: &CocycleMap) -> Option<Vec<usize>> {
    let n = g.order();
    first_failure(&[n, n], |t| {
        let (x, y) = (t[0], t[1]);
        let lhs = c.get(g.mul(g.right_inverse(y), g.right_inverse(x)), x);
        lhs == c.get(x, y)
    })
}

/// The three constraints of the odd-invertible loop construction.
pub fn odd_invertible_conditions(g: &Loop, v: &Loop, c: &CocycleMap) -> Diagnostics {
    let mut d = Diagnostics::new();
    d.record("quasi-0", quasi_0_witness(g, v, c));
    d.record("quasi-I", quasi_i_witness(g, v, c));
    d.record("quasi-II", quasi_ii_witness(g, c));
    d
}

/// `J(x, v) = (x⁻¹, −v)` on `G × V`.
pub fn odd_invertible_permutation(g: &Loop, v: &Loop) -> Permutation {
    let vn = v.order();
    Permutation::new((0..g.order() * vn).map(|a| g.right_inverse(a / vn) * vn + v.right_inverse(a % vn)).collect())
        .expect("product of inversions is a permutation")
}

/// `G ×_φ V` with `J(x,v) = (x⁻¹, −v)`, an `m`-inverse loop for every odd `m`.
pub fn odd_invertible_loop(g: &Loop, v: &Loop, c: &CocycleMap) -> Result<(Loop, Permutation)> {
    if !c.has_trivial_action() {
        return Err(Error::Precondition("odd-invertible loops need the trivial action".into()));
    }
    let q = cocycle_extension(g, v, c)?;
    odd_invertible_conditions(g, v, c).into_result()?;
    let delta = g.identity() * v.order() + v.identity();
    let l = Loop::with_identity(q.into_table(), delta)?;
    let j = odd_invertible_permutation(g, v);
    if !j.compose(&j).is_identity() {
        return Err(Error::Internal("J is not an involution".into()));
    }
    for m in [-1, 1] {
        if let Some(w) = inverse::m_inverse_witness(&l, &j, m) {
            return Err(Error::Internal(format!("quasi conditions hold but the {m}-inverse identity fails at {w:?}")));
        }
    }
    Ok((l, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, odd_loop_cocycle, symmetric3};
    use crate::inverse::is_m_inverse;

    fn z3z2(values: Vec<usize>) -> CocycleMap {
        CocycleMap::new(3, 2, values).unwrap()
    }

    #[test]
    fn zero_cochain_is_a_cocycle_and_gives_the_direct_product() {
        let (g, v) = (cyclic(3), cyclic(2));
        let c = CocycleMap::zero(3, 2, 0);
        assert!(is_2cocycle(&g, &v, &c).unwrap());
        let q = cocycle_extension(&g, &v, &c).unwrap();
        assert_eq!(q.table(), g.direct_product(&v).table());
    }

    #[test]
    fn unit_law_gives_a_loop_and_its_failure_does_not() {
        let (g, v) = (cyclic(3), cyclic(2));
        let q = cocycle_extension(&g, &v, &odd_loop_cocycle()).unwrap();
        assert_eq!(q.table().identity(), Some(0));
        let mut bad = vec![0; 9];
        bad[1] = 1; // φ(0,1) = 1 breaks the unit law
        let c = z3z2(bad);
        assert!(quasi_0_witness(&g, &v, &c).is_some());
        let q = cocycle_extension(&g, &v, &c).unwrap();
        assert_eq!(q.table().identity(), None);
    }

    #[test]
    fn quasi_i_rejects_with_witness_one() {
        let (g, v) = (cyclic(3), cyclic(2));
        let mut vals = vec![0; 9];
        vals[3 + 2] = 1; // φ(1,2) = 1
        let err = odd_invertible_loop(&g, &v, &z3z2(vals)).unwrap_err();
        match err {
            Error::Conditions(d) => {
                let c = d.get("quasi-I").unwrap();
                assert!(!c.ok);
                assert_eq!(c.witness, Some(vec![1]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn abelian_zero_cochain_gives_inversion_and_all_m() {
        let (g, v) = (cyclic(4), cyclic(3));
        let (l, j) = odd_invertible_loop(&g, &v, &CocycleMap::zero(4, 3, 0)).unwrap();
        assert!(l.is_group());
        for m in -3..=3 {
            assert!(is_m_inverse(&l, &j, m));
        }
    }

    #[test]
    fn phi_11_and_22_is_a_cocycle_so_the_loop_is_abelian() {
        // φ(1,1) = φ(2,2) = 1 on Z3 → Z2 is cohomologous to zero
        let (g, v) = (cyclic(3), cyclic(2));
        let mut vals = vec![0; 9];
        vals[4] = 1;
        vals[8] = 1;
        let c = z3z2(vals);
        assert!(is_2cocycle(&g, &v, &c).unwrap());
        let (l, j) = odd_invertible_loop(&g, &v, &c).unwrap();
        assert!(l.is_group() && l.table().is_commutative());
        for m in [-1, 0, 1, 2, 3] {
            assert!(is_m_inverse(&l, &j, m), "m={m}");
        }
    }

    #[test]
    fn phi_11_loop_is_odd_only() {
        let (g, v) = (cyclic(3), cyclic(2));
        let (l, j) = odd_invertible_loop(&g, &v, &odd_loop_cocycle()).unwrap();
        assert!(!is_2cocycle(&g, &v, &odd_loop_cocycle()).unwrap());
        for m in -5..=5 {
            assert_eq!(is_m_inverse(&l, &j, m), m % 2 != 0, "m={m}");
        }
        // J(x, v) = (-x, -v)
        assert_eq!(j.image(), &[0, 1, 4, 5, 2, 3]);
    }

    #[test]
    fn coboundaries_are_cocycles() {
        // φ = dψ for ψ: S3 → Z3: φ(x,y) = ψ(y) - ψ(xy) + ψ(x)
        let g = symmetric3();
        let v = cyclic(3);
        let psi = [0usize, 2, 1, 1, 0, 2];
        let vals = (0..36)
            .map(|i| {
                let (x, y) = (i / 6, i % 6);
                (psi[y] + 3 - psi[g.mul(x, y)] + psi[x]) % 3
            })
            .collect();
        let c = CocycleMap::new(6, 3, vals).unwrap();
        assert!(is_2cocycle(&g, &v, &c).unwrap());
        assert!(cocycle_extension(&g, &v, &c).unwrap().table().is_associative());
    }

    #[test]
    fn nontrivial_action_twists_the_cocycle_condition() {
        // Z2 acting on Z3 by negation; zero cochain is still a cocycle
        let g = cyclic(2);
        let v = cyclic(3);
        let action = vec![0, 0, 1, 2, 2, 1];
        let c = CocycleMap::zero(2, 3, 0).with_action(action).unwrap();
        assert!(is_2cocycle(&g, &v, &c).unwrap());
        let q = cocycle_extension(&g, &v, &c).unwrap();
        assert!(q.table().is_associative());
        assert!(!q.table().is_commutative());
    }

    #[test]
    fn rejects_non_abelian_coefficients() {
        let g = cyclic(2);
        let v = symmetric3();
        let c = CocycleMap::zero(2, 6, 0);
        assert!(matches!(cocycle_extension(&g, &v, &c), Err(Error::Precondition(_))));
    }
}
