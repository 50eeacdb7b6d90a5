//! Property tests of the exact calculus and the numeric engines.

use diskpoly::disk::{zernike_exact, zernike_explicit, DiskIndex};
use diskpoly::exact::{BigRational, GammaPoly, Mono, QComplex, TriPoly, WeightedExpr};
use diskpoly::scalar::pochhammer;
use diskpoly::ComplexValue;
use proptest::prelude::*;

/// Random trivariate polynomial of total degree ≤ 4 with small integer
/// coefficients.
fn arb_tri_poly() -> impl Strategy<Value = TriPoly> {
    let term = (0u32..=4, 0u32..=4, 0u32..=2, -4i64..=4).prop_map(|(i, j, k, c)| (i, j, k, c));
    proptest::collection::vec(term, 1..6).prop_map(|terms| {
        let mut p = TriPoly::zero();
        for (i, j, k, c) in terms {
            if i + j + k > 4 || c == 0 {
                continue;
            }
            p = &p + &TriPoly::monomial(Mono::new(i, j, k), GammaPoly::from_int(c));
        }
        p
    })
}

fn arb_weighted() -> impl Strategy<Value = WeightedExpr> {
    (arb_tri_poly(), -2i64..=3, 0i8..=1)
        .prop_map(|(p, t, g)| WeightedExpr::with_exponent(g, t, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // ∂/∂z and ∂/∂z̄ commute exactly on the weighted calculus
    #[test]
    fn derivatives_commute(e in arb_weighted()) {
        let a = e.d_dz().d_dzbar();
        let b = e.d_dzbar().d_dz();
        prop_assert!(WeightedExpr::exact_equal(&a, &b).unwrap());
    }

    // normalize is a ring homomorphism: additive on aligned expressions,
    // multiplicative against plain polynomials
    #[test]
    fn normalize_is_homomorphism(p in arb_tri_poly(), q in arb_tri_poly(), t in 0i64..=3) {
        let a = WeightedExpr::with_exponent(0, t, p.clone());
        let b = WeightedExpr::poly(q.clone());
        let sum = a.add(&b).unwrap();
        let lhs = sum.normalize(false).unwrap();
        let rhs = &a.normalize(false).unwrap() + &b.normalize(false).unwrap();
        prop_assert_eq!(lhs, rhs.subst_w());

        let prod = a.mul_poly(&q);
        let lhs = prod.normalize(false).unwrap();
        let rhs = &a.normalize(false).unwrap() * &q.subst_w();
        prop_assert_eq!(lhs, rhs.subst_w());
    }

    // central finite differences of the floating evaluation reproduce d_dz
    #[test]
    fn d_dz_matches_finite_differences(
        p in arb_tri_poly(),
        gamma in 0.0f64..3.0,
        re in -0.5f64..0.5,
        im in -0.5f64..0.5,
    ) {
        let e = WeightedExpr::gamma_weighted(1, p);
        let d = e.d_dz();
        let z = ComplexValue::new(re, im);
        let h = 1e-5;
        // Wirtinger: ∂/∂z = (∂/∂x - i ∂/∂y)/2
        let fx = (e.eval_f64(gamma, z + ComplexValue::new(h, 0.0))
            - e.eval_f64(gamma, z - ComplexValue::new(h, 0.0)))
            / (2.0 * h);
        let fy = (e.eval_f64(gamma, z + ComplexValue::new(0.0, h))
            - e.eval_f64(gamma, z - ComplexValue::new(0.0, h)))
            / (2.0 * h);
        let fd = (fx - ComplexValue::new(0.0, 1.0) * fy) / 2.0;
        let exact = d.eval_f64(gamma, z);
        let scale = exact.norm().max(1.0);
        prop_assert!(
            (fd - exact).norm() <= 1e-7 * scale,
            "fd {} vs exact {}", fd, exact
        );
    }

    // exact rational evaluation agrees with the floating evaluation of the
    // normalized polynomial at small integer gamma
    #[test]
    fn eval_exact_matches_numeric(
        p in arb_tri_poly(),
        gamma in 0i64..5,
        a in -7i64..7,
        b in -7i64..7,
    ) {
        let e = WeightedExpr::with_exponent(0, 1, p);
        let z = QComplex::from_ratio(a, 16, b, 16);
        let exact = e.eval_exact(&BigRational::from_integer(gamma.into()), &z).unwrap();
        let numeric = e.eval_f64(gamma as f64, z.to_c64());
        let scale = numeric.norm().max(1.0);
        prop_assert!((exact.to_c64() - numeric).norm() <= 1e-12 * scale);
    }

    // conjugation symmetry of the family, numerically across engines
    #[test]
    fn conjugation_symmetry_numeric(
        m in 0u32..6,
        n in 0u32..6,
        gamma in -0.9f64..3.0,
        re in -0.7f64..0.7,
        im in -0.7f64..0.7,
    ) {
        let z = ComplexValue::new(re, im);
        let a = zernike_explicit(DiskIndex::new(m, n), gamma, z).value;
        let b = zernike_explicit(DiskIndex::new(n, m), gamma, z).value.conj();
        let scale = a.norm().max(1.0);
        prop_assert!((a - b).norm() <= 1e-13 * scale);
    }

    // pochhammer forward recurrence (the library-level contract)
    #[test]
    fn pochhammer_recurrence(a in -5.0f64..5.0, n in 0u32..50) {
        let lhs = pochhammer(a, n + 1);
        let rhs = pochhammer(a, n) * (a + n as f64);
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
    }
}

/// Exact-by-construction agreement: the exact polynomial evaluated with
/// rational arithmetic at integer γ is bit-identical to the rational
/// evaluation of the explicit sum.
#[test]
fn zernike_exact_is_bit_exact_at_integer_gamma() {
    for gamma in 0..4i64 {
        for (m, n) in [(2u32, 2u32), (3, 1), (1, 4)] {
            let poly = zernike_exact(DiskIndex::new(m, n));
            let z = QComplex::from_ratio(3, 7, -2, 9);
            let via_poly = poly.eval_exact(&BigRational::from_integer(gamma.into()), &z);

            // independent exact evaluation of the explicit sum
            let mut acc = QComplex::zero();
            let zb = z.conj();
            let w = &QComplex::one() - &QComplex::real(z.norm_sqr());
            for j in 0..=m.min(n) {
                let mut c = BigRational::from_integer(1.into());
                for i in 0..(m + n - j) {
                    c = &c * BigRational::from_integer((gamma + j as i64 + 1 + i as i64).into());
                }
                let num = diskpoly::scalar::factorial_big(m) * diskpoly::scalar::factorial_big(n);
                let den = diskpoly::scalar::factorial_big(j)
                    * diskpoly::scalar::factorial_big(m - j)
                    * diskpoly::scalar::factorial_big(n - j);
                c = &c * BigRational::new(num, den);
                if j % 2 == 1 {
                    c = -c;
                }
                let term = &(&w.pow(j) * &zb.pow(m - j)) * &z.pow(n - j);
                acc = &acc + &(&QComplex::real(c) * &term);
            }
            assert_eq!(via_poly, acc, "m={m} n={n} gamma={gamma}");
        }
    }
}
