//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.
//!
//! Every comparison is exact (integer tables, rational structure constants),
//! so the tolerance is zero throughout. Each criterion also has a wall-clock
//! limit; exceeding it fails the criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use loopforge::catalog::{cyclic, group_presets};
use loopforge::constructions::cocycle::{cocycle_extension, is_2cocycle, odd_invertible_loop, CocycleMap};
use loopforge::constructions::lambda::{lambda_example, ChiReading, LambdaInput};
use loopforge::constructions::matched::{matched_pair_loop, ActionPair};
use loopforge::constructions::products::direct_product_loops;
use loopforge::factorization::exact_factorization;
use loopforge::hopf::linalg::outer;
use loopforge::hopf::{group_algebra, linearize_matched_pair, verify_hopf_quasigroup, Vector};
use loopforge::inverse::{aut_power_order, crt_solve, is_m_inverse, right_inverse_permutation};
use loopforge::perm::{lcm, Permutation};
use loopforge::quasigroup::{CayleyTable, Loop};
use loopforge::search::{enumerate_loops, sample_loops, search_cocycles, search_matched_actions, CocycleConstraint};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_260_415;
const CAP: u128 = u128::MAX;

/// `J^m` by repeated application, independent of the library's `pow`.
fn j_power(j: &[usize], m: i64) -> Vec<usize> {
    let n = j.len();
    let mut inv = vec![0; n];
    for (x, &y) in j.iter().enumerate() {
        inv[y] = x;
    }
    let step = if m < 0 { &inv } else { j };
    (0..n).map(|x| (0..m.unsigned_abs()).fold(x, |a, _| step[a])).collect()
}

/// The defining identity `J^m(xy) J^{m+1}(x) = J^m(y)` scanned on all pairs.
fn oracle_m_inverse(t: &CayleyTable, j: &[usize], m: i64) -> bool {
    let (jm, jm1) = (j_power(j, m), j_power(j, m + 1));
    let n = t.order();
    (0..n).all(|x| (0..n).all(|y| t.mul(jm[t.mul(x, y)], jm1[x]) == jm[y]))
}

fn j_of(l: &Loop) -> Permutation {
    right_inverse_permutation(l)
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_group_baseline() -> Outcome {
    let mut checked = 0;
    for (name, g) in group_presets() {
        let t = g.table();
        let abelian = (0..g.order()).all(|a| (0..g.order()).all(|b| t.mul(a, b) == t.mul(b, a)));
        let j = j_of(&g);
        for m in -3..=3i64 {
            let got = is_m_inverse(&g, &j, m);
            let want = m.rem_euclid(2) == 1 || abelian;
            ensure(got == want, || format!("{name}, m = {m}: is_m_inverse = {got}, expected {want}"))?;
            ensure(oracle_m_inverse(t, j.image(), m) == want, || format!("{name}, m = {m}: oracle disagrees"))?;
            checked += 1;
        }
    }
    Ok(format!("{} groups, {checked} (group, m) cases", group_presets().len()))
}

fn all_maps(g_order: usize, v_order: usize) -> impl Iterator<Item = Vec<usize>> {
    let cells = g_order * g_order;
    let total = v_order.pow(cells as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0; cells];
        for c in v.iter_mut() {
            *c = k % v_order;
            k /= v_order;
        }
        v
    })
}

fn c2_cocycle_iff_associative() -> Outcome {
    let (z3, z2) = (cyclic(3), cyclic(2));
    let (mut maps, mut cocycles) = (0, 0);
    for values in all_maps(3, 2) {
        let c = CocycleMap::new(3, 2, values.clone()).map_err(|e| e.to_string())?;
        let cocycle = is_2cocycle(&z3, &z2, &c).map_err(|e| e.to_string())?;
        let assoc = cocycle_extension(&z3, &z2, &c).map_err(|e| e.to_string())?.table().is_associative();
        ensure(cocycle == assoc, || format!("{values:?}: cocycle {cocycle}, associative {assoc}"))?;
        maps += 1;
        cocycles += cocycle as usize;
    }
    // Z² = B² when H²(Z3, Z2) = 0, and B² ≅ C¹/Z¹ = (Z2)^3 since Hom(Z3, Z2) = 0
    ensure(maps == 512 && cocycles == 8, || format!("{maps} maps, {cocycles} cocycles; expected 512 and 8"))?;
    Ok(format!("{maps} maps, {cocycles} cocycles, all equivalences hold"))
}

/// The three odd-invertibility constraints on `Z3 × Z3 → Z2`, written out
/// with `x⁻¹ = −x mod 3`.
fn oracle_quasi(phi: &[usize]) -> bool {
    let f = |x: usize, y: usize| phi[x * 3 + y];
    let neg = |x: usize| (3 - x) % 3;
    let unit = (0..3).all(|x| f(0, x) == 0 && f(x, 0) == 0);
    let inverse = (0..3).all(|x| f(x, neg(x)) == 0);
    let twisted = (0..3).all(|x| (0..3).all(|y| f((neg(y) + neg(x)) % 3, x) == f(x, y)));
    unit && inverse && twisted
}

fn c3_odd_invertibility() -> Outcome {
    let (z3, z2) = (cyclic(3), cyclic(2));
    let found = search_cocycles(&z3, &z2, &CocycleConstraint::ALL, usize::MAX).map_err(|e| e.to_string())?;
    ensure(found.complete, || "search incomplete".into())?;
    let mut pruned: Vec<Vec<usize>> = found.results.iter().map(|c| c.values.clone()).collect();
    let mut unpruned: Vec<Vec<usize>> = all_maps(3, 2).filter(|v| oracle_quasi(v)).collect();
    pruned.sort();
    unpruned.sort();
    ensure(pruned == unpruned, || format!("pruned {pruned:?} != unpruned {unpruned:?}"))?;
    let mut hs = Vec::new();
    for c in &found.results {
        let (l, j) = odd_invertible_loop(&z3, &z2, c).map_err(|e| e.to_string())?;
        for m in [-3, -1, 1, 3] {
            ensure(oracle_m_inverse(l.table(), j.image(), m), || format!("{:?} fails m = {m}", c.values))?;
            ensure(is_m_inverse(&l, &j, m), || format!("{:?}: library disagrees at m = {m}", c.values))?;
        }
        let j2 = j.compose(&j);
        ensure(l.is_automorphism(&j2), || format!("{:?}: J² is not an automorphism", c.values))?;
        let h = aut_power_order(&l, &j);
        ensure(h == 1 || h == 2, || format!("{:?}: h = {h}", c.values))?;
        hs.push(h);
    }
    hs.sort_unstable();
    hs.dedup();
    Ok(format!("{} admissible maps (matches unpruned scan of 512), J² ∈ Aut, h ∈ {hs:?}", pruned.len()))
}

fn corpus_up_to_6() -> Result<Vec<Loop>, String> {
    let mut corpus = Vec::new();
    for n in 1..=5 {
        corpus.extend(enumerate_loops(n, |_| true).map_err(|e| e.to_string())?);
    }
    corpus.extend(sample_loops(6, 40, SEED).map_err(|e| e.to_string())?);
    corpus.extend(group_presets().into_iter().filter(|(_, g)| g.order() <= 6).map(|(_, g)| g));
    corpus.push(loopforge::catalog::odd_loop());
    Ok(corpus)
}

fn c4_direct_product() -> Outcome {
    let corpus: Vec<Loop> = corpus_up_to_6()?
        .into_iter()
        .filter(|l| {
            let j = j_of(l);
            (0..aut_power_order(l, &j) as i64).any(|m| is_m_inverse(l, &j, m))
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut solved, mut unsolved, mut scanned) = (0, 0, 0);
    let mut forced_without_crt = 0;
    for _ in 0..20 {
        let a = corpus.choose(&mut rng).expect("non-empty corpus");
        let b = corpus.choose(&mut rng).expect("non-empty corpus");
        let (ja, jb) = (j_of(a), j_of(b));
        let (p, dp) = direct_product_loops(a, &ja, b, &jb).map_err(|e| e.to_string())?;
        let (h1, h2) = (dp.left.h, dp.right.h);
        let mut any = false;
        for &m1 in &dp.left.residues {
            for &m2 in &dp.right.residues {
                let Some(m) = crt_solve(m1, h1, m2, h2) else { continue };
                any = true;
                for shift in [-1i64, 0, 1] {
                    let mm = m + shift * lcm(h1, h2) as i64;
                    ensure(oracle_m_inverse(p.table(), dp.j.image(), mm), || {
                        format!("orders {}×{}: crt m = {mm} fails the scan", a.order(), b.order())
                    })?;
                    scanned += 1;
                }
            }
        }
        if any {
            solved += 1;
        } else {
            unsolved += 1;
            // report-only: m where both factors are m-inverse but no congruence solution exists
            forced_without_crt +=
                (0..lcm(h1, h2) as i64).filter(|&m| is_m_inverse(a, &ja, m) && is_m_inverse(b, &jb, m)).count();
        }
    }
    ensure(forced_without_crt == 0, || {
        format!("{forced_without_crt} m forced by the hypotheses without a CRT solution")
    })?;
    Ok(format!(
        "20 pairs: {solved} with CRT solutions ({scanned} m scanned, all pass), {unsolved} without (report-only: 0 forced m)"
    ))
}

fn c5_even_rigidity() -> Outcome {
    let mut parts = Vec::new();
    for (r, s) in [(2, 2), (3, 2), (3, 3)] {
        let (r, s) = (cyclic(r), cyclic(s));
        let out = search_matched_actions(&r, &j_of(&r), &s, &j_of(&s), 2, CAP).map_err(|e| e.to_string())?;
        ensure(out.outcome.complete, || "search incomplete".into())?;
        let trivial = ActionPair::trivial(r.order(), s.order());
        ensure(out.outcome.results == [trivial.clone()], || {
            format!("(Z{},Z{}): {} pairs found", r.order(), s.order(), out.outcome.results.len())
        })?;
        parts.push(format!("(Z{},Z{}) {} candidates", r.order(), s.order(), out.outcome.examined));
    }
    Ok(format!("only the trivial pair; {}", parts.join(", ")))
}

fn c6_lambda_round_trip() -> Outcome {
    let ex = lambda_example(&LambdaInput::s3_z2z2(), 1, ChiReading::Intended).map_err(|e| e.to_string())?;
    ensure(ex.q.order() == 24, || format!("order {}", ex.q.order()))?;
    ensure(oracle_m_inverse(ex.q.table(), ex.j_q.image(), 1), || "Q fails the 1-inverse scan".into())?;
    ensure(is_m_inverse(&ex.q, &ex.j_q, 1), || "library says Q is not 1-inverse".into())?;
    let ns = ex.s.order();
    let r_embed: Vec<usize> = (0..ex.r.order()).map(|a| ex.theta.apply(a * ns + ex.s.identity())).collect();
    let s_embed: Vec<usize> = (0..ns).map(|b| ex.theta.apply(ex.r.identity() * ns + b)).collect();
    let w = exact_factorization(&ex.q, &ex.j_q, &r_embed, &s_embed, 1).map_err(|e| e.to_string())?;
    ensure(w.holds(), || format!("laws fail: {:?}", w.laws.failed_names()))?;
    ensure(w.actions() == ex.actions, || "recovered actions differ from the construction".into())?;
    let rebuilt =
        matched_pair_loop(&w.r.loop_, &w.r.j, &w.s.loop_, &w.s.j, &w.actions(), 1).map_err(|e| e.to_string())?;
    ensure(rebuilt.loop_.table() == ex.matched.loop_.table(), || "rebuilt R ⋈ S table differs".into())?;
    ensure(rebuilt.j == ex.matched.j, || "rebuilt J differs".into())?;
    ensure(rebuilt.loop_.table().relabel(&ex.theta) == *ex.q.table(), || "Θ does not carry R ⋈ S onto Q".into())?;
    Ok("order 24, 1-inverse, actions recovered table-for-table, R ⋈ S rebuilt bit-exactly".into())
}

fn c7_linearization() -> Outcome {
    let mut corpus = Vec::new();
    for n in 1..=5 {
        corpus.extend(enumerate_loops(n, |_| true).map_err(|e| e.to_string())?);
    }
    let exhaustive = corpus.len();
    corpus.extend(sample_loops(6, 200, SEED).map_err(|e| e.to_string())?);
    let (mut cases, mut mismatches, mut explained) = (0, 0, 0);
    let mut first = None;
    for l in &corpus {
        let j = j_of(l);
        let kq = group_algebra(l, &j).map_err(|e| e.to_string())?;
        for m in -2..=2 {
            let hopf = verify_hopf_quasigroup(&kq, m).map_err(|e| e.to_string())?.holds;
            let set = is_m_inverse(l, &j, m);
            cases += 1;
            if hopf != set {
                mismatches += 1;
                explained += (!l.has_two_sided_inverses()) as usize;
                first.get_or_insert_with(|| format!("order {} m = {m}: Hopf {hopf}, set {set}", l.order()));
            }
        }
    }
    let summary = format!(
        "{exhaustive} enumerated + 200 sampled loops, {cases} cases, {mismatches} mismatches ({explained} on loops without two-sided inverses)"
    );
    match first {
        None => Ok(summary),
        Some(f) => Err(format!("{summary}; first: {f}")),
    }
}

fn c8_hopf_matched_pair() -> Outcome {
    let (mut pairs, mut basis_pairs) = (0, 0);
    for (r, s) in [(2, 2), (3, 2)] {
        let (r, s) = (cyclic(r), cyclic(s));
        let (jr, js) = (j_of(&r), j_of(&s));
        let out = search_matched_actions(&r, &jr, &s, &js, 1, CAP).map_err(|e| e.to_string())?;
        ensure(out.outcome.complete, || "search incomplete".into())?;
        let (h1, h2) =
            (group_algebra(&r, &jr).map_err(|e| e.to_string())?, group_algebra(&s, &js).map_err(|e| e.to_string())?);
        let (d1, d2) = (h1.dim, h2.dim);
        for a in &out.outcome.results {
            let lifted = linearize_matched_pair(&r, &jr, &s, &js, a, 1).map_err(|e| e.to_string())?;
            let p = &lifted.data;
            for h in 0..d1 {
                for hp in 0..d2 {
                    let left = Vector::unit(r.identity() * d2 + hp);
                    let right = Vector::unit(h * d2 + s.identity());
                    let lhs = p.antipode(&p.mul(&left, &right));
                    let rhs = outer(&h1.antipode(&Vector::unit(h)), &h2.antipode(&Vector::unit(hp)), d2);
                    ensure(lhs == rhs, || format!("antipode identity fails at (h, h') = ({h}, {hp}) for {a:?}"))?;
                    basis_pairs += 1;
                }
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} action pairs lift with identical structure constants; antipode identity on {basis_pairs} basis pairs"
    ))
}

fn c9_factorization_inverse() -> Outcome {
    let (mut instances, mut skipped_m) = (0, 0);
    for nr in 1..=3 {
        for ns in 1..=3 {
            let (r, s) = (cyclic(nr), cyclic(ns));
            let (jr, js) = (j_of(&r), j_of(&s));
            for m in -2..=3 {
                let out = match search_matched_actions(&r, &jr, &s, &js, m, CAP) {
                    Ok(o) => o,
                    Err(loopforge::Error::Congruence { .. }) => {
                        skipped_m += 1;
                        continue;
                    }
                    Err(e) => return Err(e.to_string()),
                };
                ensure(out.outcome.complete, || "search incomplete".into())?;
                for a in &out.outcome.results {
                    let p = matched_pair_loop(&r, &jr, &s, &js, a, m).map_err(|e| e.to_string())?;
                    let r_embed: Vec<usize> = (0..nr).map(|x| x * ns + s.identity()).collect();
                    let s_embed: Vec<usize> = (0..ns).map(|y| r.identity() * ns + y).collect();
                    let w = exact_factorization(&p.loop_, &p.j, &r_embed, &s_embed, m).map_err(|e| e.to_string())?;
                    let ctx = || format!("Z{nr} ⋈ Z{ns}, m = {m}, {a:?}");
                    ensure(w.holds(), || format!("{}: laws fail {:?}", ctx(), w.laws.failed_names()))?;
                    ensure(w.actions() == *a, || format!("{}: actions not recovered", ctx()))?;
                    ensure(w.r.loop_.table() == r.table() && w.s.loop_.table() == s.table(), || {
                        format!("{}: factors not recovered", ctx())
                    })?;
                    ensure(w.r.j == jr && w.s.j == js, || format!("{}: J not recovered", ctx()))?;
                    instances += 1;
                }
            }
        }
    }
    Ok(format!(
        "{instances} admissible (R, S, φ, ψ, m) recovered exactly; {skipped_m} (R, S, m) outside the congruence"
    ))
}

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
    /// Known to fail, with the reason; an unexpected pass fails the run.
    expected_failure: Option<&'static str>,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, title: "group baseline", limit: secs(1), run: c1_group_baseline, expected_failure: None },
        Criterion { id: 2, title: "cocycle iff associative", limit: secs(1), run: c2_cocycle_iff_associative, expected_failure: None },
        Criterion { id: 3, title: "odd-invertibility", limit: secs(1), run: c3_odd_invertibility, expected_failure: None },
        Criterion { id: 4, title: "direct product", limit: secs(10), run: c4_direct_product, expected_failure: None },
        Criterion { id: 5, title: "even-m rigidity", limit: secs(30), run: c5_even_rigidity, expected_failure: None },
        Criterion { id: 6, title: "lambda-example round trip", limit: secs(5), run: c6_lambda_round_trip, expected_failure: None },
        Criterion {
            id: 7,
            title: "linearization equivalence",
            limit: secs(60),
            run: c7_linearization,
            expected_failure: Some(
                "kQ has antipode J only when J(q)q = δ = qJ(q); loops with one-sided inverses are m-inverse but kQ is not",
            ),
        },
        Criterion { id: 8, title: "Hopf matched pair", limit: secs(30), run: c8_hopf_matched_pair, expected_failure: None },
        Criterion { id: 9, title: "factorization inverse", limit: secs(30), run: c9_factorization_inverse, expected_failure: None },
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let in_time = elapsed < c.limit;
        let (ok, detail) = match outcome {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        println!(
            "criterion {} {} {}: {} [tolerance exact, {:.3} s < {} s limit: {}]",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            detail,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            if in_time { "yes" } else { "no" },
        );
        match (ok, c.expected_failure) {
            (false, Some(reason)) => println!("criterion {} expected failure: {reason}", c.id),
            (false, None) => failed.push(c.id),
            (true, Some(_)) => {
                println!("criterion {} passed unexpectedly; its expected-failure entry is stale", c.id);
                failed.push(c.id);
            }
            (true, None) => {}
        }
    }
    if failed.is_empty() {
        let expected: Vec<u8> = criteria.iter().filter(|c| c.expected_failure.is_some()).map(|c| c.id).collect();
        println!("acceptance: no unexpected results; expected failures {expected:?}");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected results for criteria {failed:?}");
        ExitCode::FAILURE
    }
}
