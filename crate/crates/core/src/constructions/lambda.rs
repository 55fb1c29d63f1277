//! The cocycle extension `(G ⋈ H) ×_Λ (V × W)` and its factorization as a
//! matched pair `(G ×_φ V) ⋈ (H ×_χ W)`.

use crate::catalog::cyclic;
use crate::constructions::cocycle::{odd_invertible_loop, quasi_0_witness, CocycleMap};
use crate::constructions::group_pair::{group_matched_pair, s3_action_pair, GroupActionPair};
use crate::constructions::matched::{matched_pair_loop, ActionPair, ProductLoop};
use crate::diagnostics::{first_failure, Check, Diagnostics};
use crate::perm::Permutation;
use crate::quasigroup::Loop;
use crate::{Error, Result};

/// Which reading of the `χ` invariance law to enforce.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChiReading {
    /// `χ(y,y') = χ(y◁x, y')`, the law the right compatibility needs.
    #[default]
    Intended,
    /// `χ(y,y') = φ(y◁x, y')` as printed; only typeable when `|G| = |H|`
    /// and `|V| = |W|`, in which case values are compared by index.
    Literal,
}

#[derive(Clone, Debug)]
pub struct LambdaInput {
    pub g: Loop,
    pub h: Loop,
    pub actions: GroupActionPair,
    pub v: Loop,
    pub w: Loop,
    pub phi: CocycleMap,
    pub chi: CocycleMap,
}

impl LambdaInput {
    /// `Z3 ⋈ Z2 ≅ S3` with `V = W = Z2` and `φ = χ = 0`.
    pub fn s3_z2z2() -> Self {
        LambdaInput {
            g: cyclic(3),
            h: cyclic(2),
            actions: s3_action_pair(),
            v: cyclic(2),
            w: cyclic(2),
            phi: CocycleMap::zero(3, 2, 0),
            chi: CocycleMap::zero(2, 2, 0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LambdaExample {
    /// `(G ⋈ H) ×_Λ (V × W)`, element `((x,y),(v,w))` at
    /// `(x|H| + y)|V||W| + v|W| + w`.
    pub q: Loop,
    pub j_q: Permutation,
    /// `G ×_φ V`, element `(x,v)` at `x|V| + v`.
    pub r: Loop,
    pub j_r: Permutation,
    /// `H ×_χ W`, element `(y,w)` at `y|W| + w`.
    pub s: Loop,
    pub j_s: Permutation,
    /// `φ((y,w),(x,v)) = (y▷x, v)`, `ψ((y,w),(x,v)) = (y◁x, w)`.
    pub actions: ActionPair,
    /// `Θ`: index `r|S| + s` of `R ⋈ S` to its index in `Q`.
    pub theta: Permutation,
    pub matched: ProductLoop,
    pub m: i64,
    pub diagnostics: Diagnostics,
}

fn invariance_checks(input: &LambdaInput, reading: ChiReading) -> Diagnostics {
    let LambdaInput { g, h, actions: a, v, w, phi, chi } = input;
    let (ng, nh) = (g.order(), h.order());
    let mut d = Diagnostics::new();
    d.record("quasi-0-phi", quasi_0_witness(g, v, phi));
    d.record("quasi-0-chi", quasi_0_witness(h, w, chi));
    d.record(
        "vp-invariance",
        first_failure(&[ng, ng, nh], |t| phi.get(t[0], t[1]) == phi.get(t[0], a.act(t[2], t[1]))),
    );
    match reading {
        ChiReading::Intended => {
            d.record(
                "chi-invariance",
                first_failure(&[ng, nh, nh], |t| chi.get(t[1], t[2]) == chi.get(a.back(t[1], t[0]), t[2])),
            );
        }
        ChiReading::Literal if ng == nh && v.order() == w.order() => {
            d.record(
                "chi-invariance",
                first_failure(&[ng, nh, nh], |t| chi.get(t[1], t[2]) == phi.get(a.back(t[1], t[0]), t[2])),
            );
        }
        ChiReading::Literal => d.push(Check {
            name: "chi-invariance".into(),
            ok: false,
            witness: None,
            note: Some("as printed the law compares χ with φ, which needs |G| = |H| and |V| = |W|".into()),
        }),
    }
    d
}

/// The `Λ`-twisted cocycle on `G ⋈ H` with values in `V × W`.
fn lambda_cocycle(input: &LambdaInput) -> Result<CocycleMap> {
    let (nh, nw) = (input.h.order(), input.w.order());
    let nk = input.g.order() * nh;
    let values = (0..nk * nk)
        .map(|i| {
            let (p, q) = (i / nk, i % nk);
            let (x, y) = (p / nh, p % nh);
            let (x2, y2) = (q / nh, q % nh);
            input.phi.get(x, x2) * nw + input.chi.get(y, y2)
        })
        .collect();
    CocycleMap::new(nk, input.v.order() * nw, values)
}

/// Builds `Q = (G ⋈ H) ×_Λ (V × W)`, the factor loops, the induced actions,
/// and `R ⋈ S`; checks `Θ` is an isomorphism `R ⋈ S → Q` by table comparison.
pub fn lambda_example(input: &LambdaInput, m: i64, reading: ChiReading) -> Result<LambdaExample> {
    if m.rem_euclid(2) == 0 {
        return Err(Error::Precondition(format!("the Λ-example is odd-invertible; m = {m} is even")));
    }
    let mut diagnostics = invariance_checks(input, reading);
    if !diagnostics.all_ok() {
        return Err(Error::Conditions(diagnostics));
    }
    let LambdaInput { g, h, actions: a, v, w, phi, chi } = input;
    let k = group_matched_pair(g, h, a)?;
    let vw = v.direct_product(w);
    let (q, j_q) = odd_invertible_loop(&k, &vw, &lambda_cocycle(input)?)?;
    let (r, j_r) = odd_invertible_loop(g, v, phi)?;
    let (s, j_s) = odd_invertible_loop(h, w, chi)?;

    let (nv, nw, nh) = (v.order(), w.order(), h.order());
    let (nr, ns) = (r.order(), s.order());
    let mut phi_t = Vec::with_capacity(nr * ns);
    let mut psi_t = Vec::with_capacity(nr * ns);
    for sy in 0..ns {
        let (y, wv) = (sy / nw, sy % nw);
        for rx in 0..nr {
            let (x, vv) = (rx / nv, rx % nv);
            phi_t.push(a.act(y, x) * nv + vv);
            psi_t.push(a.back(y, x) * nw + wv);
        }
    }
    let actions = ActionPair::new(nr, ns, phi_t, psi_t)?;
    let theta = Permutation::new(
        (0..nr * ns)
            .map(|i| {
                let (rx, sy) = (i / ns, i % ns);
                let (x, vv) = (rx / nv, rx % nv);
                let (y, wv) = (sy / nw, sy % nw);
                (x * nh + y) * nv * nw + vv * nw + wv
            })
            .collect(),
    )?;
    let matched = matched_pair_loop(&r, &j_r, &s, &j_s, &actions, m)?;
    let n = nr * ns;
    let iso = first_failure(&[n, n], |t| {
        theta.apply(matched.loop_.mul(t[0], t[1])) == q.mul(theta.apply(t[0]), theta.apply(t[1]))
    });
    if let Some(wit) = iso {
        return Err(Error::Internal(format!("Θ is not multiplicative at {wit:?}")));
    }
    let j_iso = first_failure(&[n], |t| theta.apply(matched.j.apply(t[0])) == j_q.apply(theta.apply(t[0])));
    if let Some(wit) = j_iso {
        return Err(Error::Internal(format!("Θ does not intertwine J at {wit:?}")));
    }
    diagnostics.push(Check::pass("theta-isomorphism"));
    Ok(LambdaExample { q, j_q, r, j_r, s, j_s, actions, theta, matched, m, diagnostics })
}
