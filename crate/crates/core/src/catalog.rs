//! Built-in groups and loops used as presets and test fixtures.

use std::collections::BTreeSet;

use crate::constructions::cocycle::{cocycle_extension, CocycleMap};
use crate::perm::Permutation;
use crate::quasigroup::{CayleyTable, Loop};

/// `Z_n` written additively, identity 0.
pub fn cyclic(n: usize) -> Loop {
    assert!(n >= 1);
    let t = CayleyTable::from_fn(n, |a, b| (a + b) % n).expect("Z_n table");
    Loop::with_identity(t, 0).expect("Z_n is a loop")
}

/// `Z2 × Z2`.
pub fn klein() -> Loop {
    cyclic(2).direct_product(&cyclic(2))
}

/// The group generated by `gens` inside `Sym(n)`, elements in lexicographic
/// order of their image arrays (so the identity is element 0).
pub fn permutation_group(n: usize, gens: &[Permutation]) -> (Loop, Vec<Permutation>) {
    let mut elems: BTreeSet<Vec<usize>> = BTreeSet::new();
    let id = Permutation::identity(n);
    elems.insert(id.image().to_vec());
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = g.compose(&p);
            if elems.insert(q.image().to_vec()) {
                frontier.push(q);
            }
        }
    }
    let list: Vec<Permutation> =
        elems.into_iter().map(|v| Permutation::new(v).expect("closure of permutations")).collect();
    let index = |p: &Permutation| list.iter().position(|q| q == p).expect("closed set");
    let t = CayleyTable::from_fn(list.len(), |a, b| index(&list[a].compose(&list[b]))).expect("group table");
    (Loop::with_identity(t, 0).expect("permutation group is a loop"), list)
}

/// `S3` as all permutations of three points.
pub fn symmetric3() -> Loop {
    let gens = [Permutation::new(vec![1, 0, 2]).unwrap(), Permutation::new(vec![1, 2, 0]).unwrap()];
    permutation_group(3, &gens).0
}

/// Dihedral group of order 8 (symmetries of a square).
pub fn dihedral4() -> Loop {
    let gens = [Permutation::new(vec![1, 2, 3, 0]).unwrap(), Permutation::new(vec![0, 3, 2, 1]).unwrap()];
    permutation_group(4, &gens).0
}

/// Quaternion group: index `4*sign + unit`, units ordered `1, i, j, k`.
pub fn quaternion8() -> Loop {
    // unit products: (sign flip, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let t = CayleyTable::from_fn(8, |a, b| {
        let (sa, ua) = (a / 4, a % 4);
        let (sb, ub) = (b / 4, b % 4);
        let (flip, u) = UNIT[ua][ub];
        ((sa + sb + flip) % 2) * 4 + u
    })
    .expect("Q8 table");
    Loop::with_identity(t, 0).expect("Q8 is a loop")
}

/// The cocycle used by the order-6 odd-invertible preset: `φ(1,1) = 1` on
/// `Z3 × Z3 → Z2`, zero elsewhere. It is not a 2-cocycle, so the extension
/// is a commutative nonassociative loop.
pub fn odd_loop_cocycle() -> CocycleMap {
    let mut values = vec![0; 9];
    values[3 + 1] = 1;
    CocycleMap::new(3, 2, values).expect("valid cocycle values")
}

/// `Z3 ×_φ Z2` with [`odd_loop_cocycle`]; element `(x, v)` has index `2x + v`.
pub fn odd_loop() -> Loop {
    let t =
        cocycle_extension(&cyclic(3), &cyclic(2), &odd_loop_cocycle()).expect("Z3, Z2 are groups and Z2 is abelian");
    Loop::with_identity(t.into_table(), 0).expect("φ satisfies the unit law")
}

/// Named group presets shipped with the binary.
pub fn group_presets() -> Vec<(String, Loop)> {
    let mut v: Vec<(String, Loop)> = (1..=8).map(|n| (format!("z{n}"), cyclic(n))).collect();
    v.push(("klein".into(), klein()));
    v.push(("s3".into(), symmetric3()));
    v.push(("d4".into(), dihedral4()));
    v.push(("q8".into(), quaternion8()));
    v
}

/// Look up a loop preset by name (groups plus `odd-loop`).
pub fn loop_preset(name: &str) -> Option<Loop> {
    if name == "odd-loop" {
        return Some(odd_loop());
    }
    group_presets().into_iter().find(|(n, _)| n == name).map(|(_, l)| l)
}

pub fn preset_names() -> Vec<String> {
    let mut v: Vec<String> = group_presets().into_iter().map(|(n, _)| n).collect();
    v.push("odd-loop".into());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_groups_of_the_right_order() {
        let orders: Vec<(String, usize)> = group_presets().into_iter().map(|(n, l)| (n, l.order())).collect();
        for (name, l) in group_presets() {
            assert!(l.is_group(), "{name} is not associative");
        }
        assert!(orders.contains(&("s3".to_string(), 6)));
        assert!(orders.contains(&("d4".to_string(), 8)));
        assert!(orders.contains(&("q8".to_string(), 8)));
    }

    #[test]
    fn commutativity_of_presets() {
        assert!(klein().table().is_commutative());
        assert!(!symmetric3().table().is_commutative());
        assert!(!dihedral4().table().is_commutative());
        assert!(!quaternion8().table().is_commutative());
    }

    #[test]
    fn q8_has_a_single_involution() {
        let q = quaternion8();
        let involutions = (1..8).filter(|&x| q.mul(x, x) == 0).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn odd_loop_is_commutative_and_nonassociative() {
        let l = odd_loop();
        assert_eq!(l.order(), 6);
        assert!(l.table().is_commutative());
        assert!(!l.is_group());
    }
}
