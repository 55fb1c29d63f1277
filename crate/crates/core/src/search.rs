//! Exhaustive desk-scale searches: admissible cocycles, admissible action
//! pairs, and normalized loops of small order.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::cocycle::CocycleMap;
use crate::constructions::matched::{matched_condition_agrees, matched_pair_conditions, matched_pair_loop, ActionPair};
use crate::inverse;
use crate::perm::Permutation;
use crate::quasigroup::{CayleyTable, Loop, Pique};
use crate::{Error, Result};

/// Results of a capped search. `complete` is false when the cap stopped the
/// enumeration early.
#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome<T> {
    pub results: Vec<T>,
    pub complete: bool,
    /// Candidates examined; for cocycle searches, the number of admissible
    /// maps, which may exceed `results.len()`.
    pub examined: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CocycleConstraint {
    Quasi0,
    QuasiI,
    QuasiII,
}

impl CocycleConstraint {
    pub const ALL: [CocycleConstraint; 3] = [Self::Quasi0, Self::QuasiI, Self::QuasiII];

    pub fn name(self) -> &'static str {
        match self {
            Self::Quasi0 => "quasi-0",
            Self::QuasiI => "quasi-I",
            Self::QuasiII => "quasi-II",
        }
    }
}

impl fmt::Display for CocycleConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CocycleConstraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(format!("unknown constraint {s:?}; known: quasi-0, quasi-I, quasi-II")))
    }
}

/// Union-find over table cells, with a distinguished "zero" class.
struct CellClasses {
    parent: Vec<usize>,
}

impl CellClasses {
    fn new(cells: usize) -> Self {
        // cell `cells` stands for the constant 0
        CellClasses { parent: (0..=cells).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Every `φ: G×G → V` (trivial action) satisfying `constraints`, in
/// lexicographic order of the flattened table, materializing at most `cap`.
///
/// All three constraints either pin a cell to 0 or equate two cells, so the
/// admissible set is a product over cell classes.
pub fn search_cocycles(
    g: &Loop,
    v: &Loop,
    constraints: &[CocycleConstraint],
    cap: usize,
) -> Result<SearchOutcome<CocycleMap>> {
    let (n, vn) = (g.order(), v.order());
    let cells = n * n;
    let zero_cell = cells;
    let mut uf = CellClasses::new(cells);
    let e = g.identity();
    for &c in constraints {
        match c {
            CocycleConstraint::Quasi0 => {
                for x in 0..n {
                    uf.union(e * n + x, zero_cell);
                    uf.union(x * n + e, zero_cell);
                }
            }
            CocycleConstraint::QuasiI => {
                for x in 0..n {
                    uf.union(x * n + g.right_inverse(x), zero_cell);
                }
            }
            CocycleConstraint::QuasiII => {
                for x in 0..n {
                    for y in 0..n {
                        let a = g.mul(g.right_inverse(y), g.right_inverse(x));
                        uf.union(a * n + x, x * n + y);
                    }
                }
            }
        }
    }
    let zero_root = uf.find(zero_cell);
    // free classes ordered by their smallest cell
    let mut class_of = vec![usize::MAX; cells];
    let mut roots: Vec<usize> = Vec::new();
    for (cell, slot) in class_of.iter_mut().enumerate() {
        let r = uf.find(cell);
        if r == zero_root {
            continue;
        }
        let k = match roots.iter().position(|&x| x == r) {
            Some(k) => k,
            None => {
                roots.push(r);
                roots.len() - 1
            }
        };
        *slot = k;
    }
    let free = roots.len() as u32;
    let total = (vn as u128).checked_pow(free).ok_or(Error::ResourceCap {
        what: "cocycle search space",
        reached: usize::MAX,
        cap,
    })?;
    let z = v.identity();
    let mut results = Vec::new();
    let mut digits = vec![0usize; roots.len()];
    let mut produced: u128 = 0;
    while produced < total && results.len() < cap {
        let values = (0..cells).map(|c| if class_of[c] == usize::MAX { z } else { digits[class_of[c]] }).collect();
        results.push(CocycleMap::new(n, vn, values)?);
        produced += 1;
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < vn {
                break;
            }
            *d = 0;
        }
    }
    Ok(SearchOutcome { complete: produced == total, results, examined: total })
}

/// Count of maps satisfying `constraints` without materializing any.
pub fn count_cocycles(g: &Loop, v: &Loop, constraints: &[CocycleConstraint]) -> Result<u128> {
    Ok(search_cocycles(g, v, constraints, 0)?.examined)
}

/// Action pairs found by [`search_matched_actions`].
#[derive(Clone, Debug, Serialize)]
pub struct ActionSearch {
    #[serde(flatten)]
    pub outcome: SearchOutcome<ActionPair>,
    /// Admissible pairs on which the iff-condition (as displayed) and the
    /// defining-identity scan disagree.
    pub disagreements: Vec<ActionPair>,
}

/// Permutations of `0..n` fixing `fixed`, in lexicographic order.
fn perms_fixing(n: usize, fixed: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, fixed: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if used[v] || (i == fixed) != (v == fixed) {
                continue;
            }
            used[v] = true;
            cur.push(v);
            rec(n, fixed, cur, used, out);
            cur.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    rec(n, fixed, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// All action pairs for which `R ⋈ S` is an `m`-inverse loop under the
/// hypotheses of the matched-pair construction, in lexicographic order of
/// `(φ, ψ)` flattened, examining at most `cap` candidates.
///
/// Rows `φ(s, ·)` range over permutations (forced by
/// `φ(s, φ(J_S s, r)) = r`); unit laws fix the `δ` row and column of both
/// tables. Each survivor is built with [`matched_pair_loop`], so every
/// returned pair passes the defining-identity scan.
pub fn search_matched_actions(
    r: &Loop,
    jr: &Permutation,
    s: &Loop,
    js: &Permutation,
    m: i64,
    cap: u128,
) -> Result<ActionSearch> {
    let (nr, ns) = (r.order(), s.order());
    let (dr, ds) = (r.identity(), s.identity());
    if !inverse::is_m_inverse(r, jr, m) || !inverse::is_m_inverse(s, js, m) {
        // surfaces the congruence error with detail
        matched_pair_loop(r, jr, s, js, &ActionPair::trivial(nr, ns), m)?;
    }
    let rows = perms_fixing(nr, dr);
    let free_s: Vec<usize> = (0..ns).filter(|&y| y != ds).collect();
    let free_r: Vec<usize> = (0..nr).filter(|&x| x != dr).collect();
    let psi_cells: Vec<usize> = free_s.iter().flat_map(|&y| free_r.iter().map(move |&x| y * nr + x)).collect();

    let mut phi = ActionPair::trivial(nr, ns).phi;
    let base_psi = ActionPair::trivial(nr, ns).psi;
    let mut row_idx = vec![0usize; free_s.len()];
    let mut results = Vec::new();
    let mut disagreements = Vec::new();
    let mut examined: u128 = 0;
    let mut complete = true;

    'phi: loop {
        for (k, &y) in free_s.iter().enumerate() {
            phi[y * nr..(y + 1) * nr].copy_from_slice(&rows[row_idx[k]]);
        }
        let phi_ok = (0..ns).all(|y| {
            let jy = js.apply(y);
            (0..nr).all(|x| phi[y * nr + phi[jy * nr + x]] == x)
        });
        if phi_ok {
            let mut psi = base_psi.clone();
            for &c in &psi_cells {
                psi[c] = 0;
            }
            loop {
                if examined >= cap {
                    complete = false;
                    break 'phi;
                }
                examined += 1;
                let a = ActionPair { r_order: nr, s_order: ns, phi: phi.clone(), psi: psi.clone() };
                if matched_pair_conditions(r, jr, s, js, &a, m).all_ok() {
                    match matched_pair_loop(r, jr, s, js, &a, m) {
                        Ok(p) => {
                            if !matched_condition_agrees(&p) {
                                disagreements.push(a.clone());
                            }
                            results.push(a);
                        }
                        Err(Error::Conditions(d)) => {
                            let cond = d.get("m-inverse-cond-matched").is_some_and(|c| c.ok);
                            if cond {
                                disagreements.push(a);
                            }
                        }
                        Err(e) => return Err(e),
                    }
                }
                if !odometer_step(&mut psi, &psi_cells, ns) {
                    break;
                }
            }
        }
        let mut k = free_s.len();
        loop {
            if k == 0 {
                break 'phi;
            }
            k -= 1;
            row_idx[k] += 1;
            if row_idx[k] < rows.len() {
                continue 'phi;
            }
            row_idx[k] = 0;
        }
    }
    Ok(ActionSearch { outcome: SearchOutcome { results, complete, examined }, disagreements })
}

/// Advances the digits at `positions` (last fastest) in base `base`;
/// false once every combination has been produced.
fn odometer_step(digits: &mut [usize], positions: &[usize], base: usize) -> bool {
    for &p in positions.iter().rev() {
        digits[p] += 1;
        if digits[p] < base {
            return true;
        }
        digits[p] = 0;
    }
    false
}

/// Largest order supported by [`enumerate_loops`].
pub const MAX_EXHAUSTIVE_ORDER: usize = 6;

/// Calls `visit` on every normalized loop of order `n` (identity 0, first
/// row and column in natural order), in lexicographic order of the table.
pub fn for_each_normalized_loop<F>(n: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&CayleyTable) -> bool,
{
    if n == 0 {
        return Err(Error::Precondition("order must be positive".into()));
    }
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::TooLargeForExhaustive { n });
    }
    let mut cells = vec![0usize; n * n];
    let mut row_used = vec![0u64; n];
    let mut col_used = vec![0u64; n];
    for i in 0..n {
        cells[i] = i;
        cells[i * n] = i;
        row_used[i] |= 1 << i;
        col_used[i] |= 1 << i;
    }
    // row 0 also uses every value; column 0 likewise
    row_used[0] = (1 << n) - 1;
    col_used[0] = (1 << n) - 1;
    let free: Vec<usize> = (1..n).flat_map(|i| (1..n).map(move |j| i * n + j)).collect();
    fn rec<F: FnMut(&CayleyTable) -> bool>(
        n: usize,
        k: usize,
        free: &[usize],
        cells: &mut [usize],
        row_used: &mut [u64],
        col_used: &mut [u64],
        visit: &mut F,
    ) -> bool {
        if k == free.len() {
            let t = CayleyTable::new(n, cells.to_vec()).expect("entries in range");
            return visit(&t);
        }
        let (i, j) = (free[k] / n, free[k] % n);
        for v in 0..n {
            let bit = 1u64 << v;
            if row_used[i] & bit != 0 || col_used[j] & bit != 0 {
                continue;
            }
            row_used[i] |= bit;
            col_used[j] |= bit;
            cells[free[k]] = v;
            let go_on = rec(n, k + 1, free, cells, row_used, col_used, visit);
            row_used[i] &= !bit;
            col_used[j] &= !bit;
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(n, 0, &free, &mut cells, &mut row_used, &mut col_used, &mut visit);
    Ok(())
}

/// Every normalized loop of order `n ≤ 6` satisfying `predicate`.
pub fn enumerate_loops<P>(n: usize, mut predicate: P) -> Result<Vec<Loop>>
where
    P: FnMut(&Loop) -> bool,
{
    let mut out = Vec::new();
    for_each_normalized_loop(n, |t| {
        let l = Loop::with_identity(t.clone(), 0).expect("normalized Latin square is a loop");
        if predicate(&l) {
            out.push(l);
        }
        true
    })?;
    Ok(out)
}

/// `count` random normalized loops of order `n`, reproducible from `seed`.
///
/// Each loop comes from a randomized backtracking fill, so the sample is not
/// uniform over all loops; it is meant for orders where exhaustive
/// enumeration is out of reach.
pub fn sample_loops(n: usize, count: usize, seed: u64) -> Result<Vec<Loop>> {
    if n == 0 || n > 64 {
        return Err(Error::Precondition("sampling supports orders 1..=64".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut cells = vec![usize::MAX; n * n];
        for i in 0..n {
            cells[i] = i;
            cells[i * n] = i;
        }
        if fill_random(n, 1, 1, &mut cells, &mut rng, &mut 0) {
            let t = CayleyTable::new(n, cells)?;
            out.push(Loop::with_identity(t, 0)?);
        }
    }
    Ok(out)
}

fn fill_random(n: usize, i: usize, j: usize, cells: &mut [usize], rng: &mut ChaCha8Rng, steps: &mut usize) -> bool {
    if i == n {
        return true;
    }
    *steps += 1;
    if *steps > 100_000 {
        return false;
    }
    let (ni, nj) = if j + 1 == n { (i + 1, 1) } else { (i, j + 1) };
    let mut vals: Vec<usize> =
        (0..n).filter(|&v| (0..j).all(|c| cells[i * n + c] != v) && (0..i).all(|r| cells[r * n + j] != v)).collect();
    vals.shuffle(rng);
    for v in vals {
        cells[i * n + j] = v;
        if fill_random(n, ni, nj, cells, rng, steps) {
            return true;
        }
    }
    cells[i * n + j] = usize::MAX;
    false
}

/// Automorphisms of a loop by backtracking over images of each element.
pub fn loop_automorphisms(l: &Loop) -> Vec<Permutation> {
    let n = l.order();
    let mut out = Vec::new();
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    f[l.identity()] = l.identity();
    used[l.identity()] = true;
    fn consistent(l: &Loop, f: &[usize]) -> bool {
        let n = l.order();
        (0..n).all(|x| {
            f[x] == usize::MAX
                || (0..n).all(|y| {
                    let p = l.mul(x, y);
                    f[y] == usize::MAX || f[p] == usize::MAX || f[p] == l.mul(f[x], f[y])
                })
        })
    }
    fn rec(l: &Loop, k: usize, f: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        let n = l.order();
        if k == n {
            out.push(Permutation::new(f.clone()).expect("bijective by construction"));
            return;
        }
        if f[k] != usize::MAX {
            return rec(l, k + 1, f, used, out);
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            f[k] = v;
            used[v] = true;
            if consistent(l, f) {
                rec(l, k + 1, f, used, out);
            }
            f[k] = usize::MAX;
            used[v] = false;
        }
    }
    rec(l, 0, &mut f, &mut used, &mut out);
    out
}

/// Whether `B(Q)` is an abelian group and the group generated by the left
/// and right translations of `Q` fixing `δ` is exactly `Aut(B(Q))`.
pub fn is_central_pique(p: &Pique) -> bool {
    let b = p.cloop();
    if !b.is_group() || !b.table().is_commutative() {
        return false;
    }
    let d = p.point();
    let n = p.order();
    let gens: Vec<Permutation> = (0..n)
        .filter(|&a| p.mul(a, d) == d)
        .map(|a| p.left_translation(a))
        .chain((0..n).filter(|&a| p.mul(d, a) == d).map(|a| p.right_translation(a)))
        .collect();
    let mut group = vec![Permutation::identity(n)];
    let mut i = 0;
    while i < group.len() {
        for g in &gens {
            let c = g.compose(&group[i]);
            if !group.contains(&c) {
                group.push(c);
            }
        }
        i += 1;
    }
    let mut aut = loop_automorphisms(&b);
    group.sort_by(|x, y| x.image().cmp(y.image()));
    aut.sort_by(|x, y| x.image().cmp(y.image()));
    group == aut
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::cyclic;
    use crate::constructions::cocycle::odd_invertible_conditions;
    use crate::inverse::right_inverse_permutation as inv;

    #[test]
    fn z2_quasi_0_and_i_collapse_to_zero() {
        let (g, v) = (cyclic(2), cyclic(2));
        let c = [CocycleConstraint::Quasi0, CocycleConstraint::QuasiI];
        let out = search_cocycles(&g, &v, &c, 100).unwrap();
        assert_eq!(out.results.len(), 1);
        assert_eq!(out.results[0].get(1, 1), 0);
        assert!(out.complete);
    }

    #[test]
    fn pruned_cocycle_search_matches_brute_force() {
        let (g, v) = (cyclic(3), cyclic(2));
        let out = search_cocycles(&g, &v, &CocycleConstraint::ALL, 1000).unwrap();
        let brute: Vec<CocycleMap> = (0..512usize)
            .map(|bits| CocycleMap::new(3, 2, (0..9).map(|i| (bits >> (8 - i)) & 1).collect()).unwrap())
            .filter(|c| odd_invertible_conditions(&g, &v, c).all_ok())
            .collect();
        assert_eq!(out.results, brute);
    }

    #[test]
    fn empty_constraints_only_count() {
        let (g, v) = (cyclic(4), cyclic(3));
        assert_eq!(count_cocycles(&g, &v, &[]).unwrap(), 3u128.pow(16));
        let out = search_cocycles(&g, &v, &[], 5).unwrap();
        assert_eq!(out.results.len(), 5);
        assert!(!out.complete);
    }

    #[test]
    fn constraint_names_parse() {
        assert_eq!("quasi-II".parse::<CocycleConstraint>().unwrap(), CocycleConstraint::QuasiII);
        assert!("quasi-III".parse::<CocycleConstraint>().is_err());
    }

    #[test]
    fn normalized_loop_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_loops(n, |_| true).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 4, 56]);
        assert!(matches!(enumerate_loops(7, |_| true), Err(Error::TooLargeForExhaustive { n: 7 })));
    }

    #[test]
    fn sampled_loops_are_loops_and_reproducible() {
        let a = sample_loops(7, 3, 11).unwrap();
        let b = sample_loops(7, 3, 11).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.table(), y.table());
            assert_eq!(x.identity(), 0);
        }
    }

    #[test]
    fn matched_search_on_z2_z2() {
        let z2 = cyclic(2);
        let out = search_matched_actions(&z2, &inv(&z2), &z2, &inv(&z2), 1, u128::MAX).unwrap();
        assert!(out.outcome.complete);
        assert!(out.outcome.results.contains(&ActionPair::trivial(2, 2)));
        let even = search_matched_actions(&z2, &inv(&z2), &z2, &inv(&z2), 2, u128::MAX).unwrap();
        assert_eq!(even.outcome.results, vec![ActionPair::trivial(2, 2)]);
    }

    #[test]
    fn central_piques() {
        // x·y = -x-y on Z3 with δ = 0
        let t = CayleyTable::from_fn(3, |a, b| (6 - a - b) % 3).unwrap();
        assert!(is_central_pique(&Pique::new(t, 0).unwrap()));
        // a group is its own cloop; its δ-fixing translations are trivial
        let z3 = cyclic(3);
        assert!(!is_central_pique(&Pique::new(z3.table().clone(), 0).unwrap()));
        assert_eq!(loop_automorphisms(&cyclic(5)).len(), 4);
    }
}
