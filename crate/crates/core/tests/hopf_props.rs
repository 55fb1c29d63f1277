//! Property tests of the Hopf layer on random rational vectors.

use loopforge::catalog::{odd_loop, symmetric3};
use loopforge::hopf::linalg::outer;
use loopforge::hopf::{group_algebra, tensor_product, HopfQuasigroupData, LinearMap, Scalar, Vector};
use loopforge::inverse::right_inverse_permutation;
use num_rational::BigRational;
use proptest::prelude::*;

fn ks3() -> HopfQuasigroupData {
    let l = symmetric3();
    group_algebra(&l, &right_inverse_permutation(&l)).unwrap()
}

fn kodd() -> HopfQuasigroupData {
    let l = odd_loop();
    group_algebra(&l, &right_inverse_permutation(&l)).unwrap()
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn vector(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(rational(), dim).prop_map(|cs| Vector::from_terms(cs.into_iter().enumerate()))
}

/// `Σ h_i g_j f(e_i, e_j)`.
fn expand(h: &Vector, g: &Vector, f: impl Fn(usize, usize) -> Vector) -> Vector {
    let mut out = Vector::zero();
    for (i, a) in h.terms() {
        for (j, b) in g.terms() {
            out.axpy(&(a * b), &f(i, j));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn s_m_defect_is_bilinear(h in vector(6), g in vector(6), m in -3i64..=3) {
        let k = kodd();
        let s = LinearMap { dim_out: k.dim, cols: (0..k.dim).map(|i| k.antipode(&Vector::unit(i))).collect() };
        let (sm, sm1) = (s.pow(m).unwrap(), s.pow(m + 1).unwrap());
        let whole = k.s_m_defect(&sm, &sm1, &h, &g);
        let parts = expand(&h, &g, |i, j| k.s_m_defect(&sm, &sm1, &Vector::unit(i), &Vector::unit(j)));
        prop_assert_eq!(&whole, &parts);
        // the odd loop is m-inverse exactly for odd m, so the defect vanishes there
        if m.rem_euclid(2) == 1 {
            prop_assert!(whole.is_zero());
        }
    }

    #[test]
    fn multiplication_is_bilinear_and_counit_multiplicative(h in vector(6), g in vector(6)) {
        let k = ks3();
        let prod = k.mul(&h, &g);
        prop_assert_eq!(&prod, &expand(&h, &g, |i, j| k.basis_mul(i, j).clone()));
        prop_assert_eq!(k.counit(&prod), k.counit(&h) * k.counit(&g));
    }

    #[test]
    fn coproduct_is_multiplicative(h in vector(6), g in vector(6)) {
        let k = ks3();
        prop_assert_eq!(k.coproduct(&k.mul(&h, &g)), k.tensor_mul(&k.coproduct(&h), &k.coproduct(&g)));
    }

    #[test]
    fn antipode_law_on_random_elements(h in vector(6)) {
        // Σ h₁ S(h₂) = ε(h) δ in kS3
        let k = ks3();
        let mut acc = Vector::zero();
        for ((a, b), c) in k.coproduct(&h).terms() {
            acc.axpy(c, &k.mul(&Vector::unit(a), &k.antipode(&Vector::unit(b))));
        }
        prop_assert_eq!(acc, Vector::unit(0).scaled(&k.counit(&h)));
    }

    #[test]
    fn tensor_product_multiplies_factorwise(a in vector(6), b in vector(2), c in vector(6), d in vector(2)) {
        let (k1, k2) = (ks3(), {
            let z2 = loopforge::catalog::cyclic(2);
            group_algebra(&z2, &right_inverse_permutation(&z2)).unwrap()
        });
        let t = tensor_product(&k1, &k2).unwrap();
        let lhs = t.mul(&outer(&a, &b, 2), &outer(&c, &d, 2));
        let rhs = outer(&k1.mul(&a, &c), &k2.mul(&b, &d), 2);
        prop_assert_eq!(lhs, rhs);
    }
}
