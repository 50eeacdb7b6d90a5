//! The polynomial family itself: numeric evaluation engines for
//! `Z_{m,n}^γ(z, z̄)`, the exact symbolic constructor, normalization
//! conversions, complex Hermite polynomials, Jacobi polynomials and the
//! eigenfunction weight relation.

use crate::exact::{GammaPoly, Mono, TriPoly};
use crate::scalar::{self, factorial_big, ln_gamma, pochhammer};
use crate::{ComplexValue, Error, Result};
use num_rational::BigRational;
use serde::Serialize;
use std::ops::{Add, Mul};

/// Degree indices of `Z_{m,n}^γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DiskIndex {
    pub m: u32,
    pub n: u32,
}

impl DiskIndex {
    pub fn new(m: u32, n: u32) -> Self {
        DiskIndex { m, n }
    }
}

/// Indices of the complex Hermite polynomial `H_{p,q}(z, z̄)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HermiteIndex {
    pub p: u32,
    pub q: u32,
}

/// Which numeric route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Explicit finite double-index sum.
    Explicit,
    /// Jacobi-polynomial route with integer angular powers.
    Jacobi,
    /// Terminating Gauss hypergeometric form.
    Hyp2f1,
    /// Three-term recurrence sweep seeded at `Z_{0,s}`.
    Recurrence,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Explicit => "explicit",
            Engine::Jacobi => "jacobi",
            Engine::Hyp2f1 => "hyp2f1",
            Engine::Recurrence => "recurrence",
        }
    }
}

/// A numeric evaluation together with its provenance and a cancellation
/// indicator (max summand magnitude over result magnitude, clamped to ≥ 1).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiskPolyValue {
    pub value: ComplexValue,
    pub engine: Engine,
    pub condition_estimate: f64,
}

impl DiskPolyValue {
    pub(crate) fn with_condition(
        value: ComplexValue,
        engine: Engine,
        max_term: f64,
    ) -> Self {
        let condition_estimate = if value.norm() > 0.0 {
            (max_term / value.norm()).max(1.0)
        } else if max_term > 0.0 {
            f64::INFINITY
        } else {
            1.0
        };
        DiskPolyValue { value, engine, condition_estimate }
    }
}

/// `C_{m,n}^γ = (γ+m+1)_n`.
pub fn c_coeff(m: u32, n: u32, gamma: f64) -> f64 {
    pochhammer(gamma + m as f64 + 1.0, n)
}

/// Explicit finite sum:
///
/// ```text
/// Z_{m,n}^γ = m! n! Σ_{j=0}^{m∧n} (γ+j+1)_{m+n-j} (-1)^j (1-|z|²)^j z̄^{m-j} z^{n-j}
///                                  / (j! (m-j)! (n-j)!)
/// ```
///
/// Summed with compensated summation; the polynomial is entire, so |z| ≥ 1 is
/// allowed (callers treating z as a disk argument should warn).
pub fn zernike_explicit(idx: DiskIndex, gamma: f64, z: ComplexValue) -> DiskPolyValue {
    let (value, max_term) = zernike_explicit_scaled(idx, gamma, z, 0.0);
    DiskPolyValue::with_condition(value, Engine::Explicit, max_term)
}

/// The explicit sum times `exp(ln_scale)`, every summand assembled in log
/// space. Series over large n fold their `v^n/n!`-type prefactors into
/// `ln_scale` so nothing overflows past index ~170.
pub(crate) fn zernike_explicit_scaled(
    idx: DiskIndex,
    gamma: f64,
    z: ComplexValue,
    ln_scale: f64,
) -> (ComplexValue, f64) {
    let (m, n) = (idx.m, idx.n);
    let zbar = z.conj();
    let w = ComplexValue::new(1.0 - z.norm_sqr(), 0.0);
    // direct coefficients while the factorials are representable; the log
    // path only for scaled series terms or very large degrees
    let direct = ln_scale == 0.0 && m + n <= 150;
    let mut max_term = 0.0f64;
    let terms = (0..=m.min(n)).map(|j| {
        let coeff = if direct {
            pochhammer(gamma + j as f64 + 1.0, m + n - j)
                * binom(m, j)
                * binom(n, j)
                * scalar::factorial(j)
                * if j % 2 == 0 { 1.0 } else { -1.0 }
        } else {
            let lp = scalar::pochhammer_ln(gamma + j as f64 + 1.0, m + n - j);
            let ln_mag = lp.ln_abs + ln_gamma(m as f64 + 1.0) + ln_gamma(n as f64 + 1.0)
                - ln_gamma(j as f64 + 1.0)
                - ln_gamma((m - j) as f64 + 1.0)
                - ln_gamma((n - j) as f64 + 1.0)
                + ln_scale;
            lp.sign * ln_mag.exp() * if j % 2 == 0 { 1.0 } else { -1.0 }
        };
        let t = coeff * w.powu(j) * zbar.powu(m - j) * z.powu(n - j);
        max_term = max_term.max(t.norm());
        t
    });
    (scalar::stable_sum(terms), max_term)
}

/// The same finite sum in `Q[γ][z, z̄, w]`, γ symbolic.
pub fn zernike_exact(idx: DiskIndex) -> TriPoly {
    let (m, n) = (idx.m, idx.n);
    let mf = factorial_big(m);
    let nf = factorial_big(n);
    let mut out = TriPoly::zero();
    for j in 0..=m.min(n) {
        let num = &mf * &nf;
        let den = factorial_big(j) * factorial_big(m - j) * factorial_big(n - j);
        let mut c = BigRational::new(num, den);
        if j % 2 == 1 {
            c = -c;
        }
        let coeff = GammaPoly::poch_gamma(j as i64 + 1, m + n - j).scale(&c);
        out = &out + &TriPoly::monomial(Mono::new(n - j, m - j, j), coeff);
    }
    out
}

/// Jacobi polynomial `P_k^{(α,β)}(x)` by the standard three-term recurrence,
/// generic over real or complex argument.
pub fn jacobi_p_generic<T>(k: u32, alpha: f64, beta: f64, x: T) -> T
where
    T: Copy
        + From<f64>
        + Add<T, Output = T>
        + Mul<T, Output = T>
        + Mul<f64, Output = T>,
{
    if k == 0 {
        return T::from(1.0);
    }
    let (a, b) = (alpha, beta);
    let mut pkm1 = T::from(1.0);
    let mut pk = x * ((a + b + 2.0) / 2.0) + T::from(a + 1.0 - (a + b + 2.0) / 2.0);
    for kk in 2..=k {
        let kk = kk as f64;
        let a1 = 2.0 * kk * (kk + a + b) * (2.0 * kk + a + b - 2.0);
        let a2 = (2.0 * kk + a + b - 1.0) * (a * a - b * b);
        let a3 = (2.0 * kk + a + b - 1.0) * (2.0 * kk + a + b) * (2.0 * kk + a + b - 2.0);
        let a4 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * (2.0 * kk + a + b);
        let next = (pk * x * (a3 / a1)) + pk * (a2 / a1) + pkm1 * (-a4 / a1);
        pkm1 = pk;
        pk = next;
    }
    pk
}

/// `P_k^{(α,β)}(x)` for real x.
pub fn jacobi_p(k: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    jacobi_p_generic(k, alpha, beta, x)
}

/// `P_k^{(α,β)}(x)` for complex x.
pub fn jacobi_p_complex(k: u32, alpha: f64, beta: f64, x: ComplexValue) -> ComplexValue {
    jacobi_p_generic(k, alpha, beta, x)
}

/// Jacobi-polynomial route:
///
/// ```text
/// Z_{m,n}^γ = (γ + m∧n + 1)_{m∨n} (-1)^{m∧n} (m∧n)! · A(z) · P_{m∧n}^{(|m-n|, γ)}(1 - 2|z|²)
/// ```
///
/// with the angular factor `A(z) = z^{n-m}` for n ≥ m and `z̄^{m-n}`
/// otherwise — integer powers remove the `arg z` phase singularity at the
/// origin and keep the function single-valued.
pub fn zernike_jacobi(idx: DiskIndex, gamma: f64, z: ComplexValue) -> DiskPolyValue {
    let (m, n) = (idx.m, idx.n);
    let (lo, hi) = (m.min(n), m.max(n));
    let angular = if n >= m {
        z.powu(n - m)
    } else {
        z.conj().powu(m - n)
    };
    let sign = if lo % 2 == 0 { 1.0 } else { -1.0 };
    let pref = pochhammer(gamma + lo as f64 + 1.0, hi) * sign * scalar::factorial(lo);
    let pj = jacobi_p(lo, (hi - lo) as f64, gamma, 1.0 - 2.0 * z.norm_sqr());
    let value = angular * (pref * pj);
    DiskPolyValue::with_condition(value, Engine::Jacobi, value.norm())
}

/// Terminating hypergeometric form
///
/// ```text
/// Z_{m,n}^γ = (γ+1)_{m+n} z̄^m z^n ₂F₁(-m, -n; γ+1 | 1 - 1/|z|²)
/// ```
///
/// The argument is singular at the origin while the polynomial is not, so
/// z = 0 falls back to the explicit engine.
pub fn zernike_2f1(idx: DiskIndex, gamma: f64, z: ComplexValue) -> DiskPolyValue {
    if z.norm_sqr() == 0.0 {
        return zernike_explicit(idx, gamma, z);
    }
    let (m, n) = (idx.m, idx.n);
    let x = 1.0 - 1.0 / z.norm_sqr();
    // terminating 2F1 at a real argument; incremental term ratios
    let mut term = 1.0f64;
    let mut sum = scalar::NeumaierSum::new();
    let mut max_term = 1.0f64;
    sum.add(term);
    for k in 0..m.min(n) {
        let kf = k as f64;
        term *= (kf - m as f64) * (kf - n as f64) * x
            / ((gamma + 1.0 + kf) * (kf + 1.0));
        sum.add(term);
        max_term = max_term.max(term.abs());
    }
    let pref = pochhammer(gamma + 1.0, m + n) * z.conj().powu(m) * z.powu(n);
    let value = pref * sum.value();
    DiskPolyValue::with_condition(value, Engine::Hyp2f1, pref.norm() * max_term)
}

/// Complex Hermite polynomial
/// `H_{p,q}(z, z̄) = Σ_k (-1)^k k! C(p,k) C(q,k) z^{p-k} z̄^{q-k}`,
/// normalized so that `∂^j/∂z^j (z^r e^{-|z|²}) = (-1)^j e^{-|z|²} H_{r,j}`.
pub fn hermite_complex(idx: HermiteIndex, z: ComplexValue) -> ComplexValue {
    let (p, q) = (idx.p, idx.q);
    let zbar = z.conj();
    let terms = (0..=p.min(q)).map(|k| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let c = sign * scalar::factorial(k) * binom(p, k) * binom(q, k);
        c * z.powu(p - k) * zbar.powu(q - k)
    });
    scalar::stable_sum(terms)
}

/// `H_{p,q}` as an exact polynomial (used by the operational-formula checks).
pub fn hermite_exact(p: u32, q: u32) -> TriPoly {
    let mut out = TriPoly::zero();
    for k in 0..=p.min(q) {
        let num = factorial_big(k) * binom_big(p, k) * binom_big(q, k);
        let mut c = BigRational::from_integer(num);
        if k % 2 == 1 {
            c = -c;
        }
        out = &out
            + &TriPoly::monomial(Mono::new(p - k, q - k, 0), GammaPoly::constant(c));
    }
    out
}

fn binom(n: u32, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

fn binom_big(n: u32, k: u32) -> num_bigint::BigInt {
    let num = factorial_big(n);
    let den = factorial_big(k) * factorial_big(n - k);
    num / den
}

/// Dunkl normalization `R_{m,n}^{(γ)}(z) = conj(Z_{m,n}^γ(z,z̄)) / (γ+1)_{m+n}`.
pub fn to_dunkl(idx: DiskIndex, gamma: f64, z: ComplexValue) -> ComplexValue {
    zernike_explicit(idx, gamma, z).value.conj() / pochhammer(gamma + 1.0, idx.m + idx.n)
}

/// Wünsche normalization `P_{m,n}^γ(z, z̄)`; identical to the Dunkl one.
pub fn to_wunsche(idx: DiskIndex, gamma: f64, z: ComplexValue) -> ComplexValue {
    to_dunkl(idx, gamma, z)
}

/// Real (radial) Zernike polynomial `R^ν_k(ρ)` recovered from
/// `Z_{m,n}^0(ρ, ρ) = (m+n)! R^{n-m}_{m+n}(ρ)` with `m = (k-ν)/2`,
/// `n = (k+ν)/2`.
///
/// Errors when `ν > k` or `k - ν` is odd.
pub fn real_zernike_radial(k: u32, nu: u32, rho: f64) -> Result<f64> {
    if nu > k {
        return Err(Error::Domain(format!(
            "radial Zernike needs nu <= k, got nu={nu} k={k}"
        )));
    }
    if (k - nu) % 2 != 0 {
        return Err(Error::Domain(format!(
            "radial Zernike needs k - nu even, got nu={nu} k={k}"
        )));
    }
    let m = (k - nu) / 2;
    let n = (k + nu) / 2;
    let v = zernike_explicit(DiskIndex::new(m, n), 0.0, ComplexValue::new(rho, 0.0));
    Ok(v.value.re / scalar::factorial(k))
}

/// Weighted `L²`-eigenfunction
/// `ψ^ν_{m,n}(z) = (1-|z|²)^{(γ+1)/2} Z_{m,n}^γ(z,z̄) / C_{m,n}^γ`
/// with `γ = 2(ν-m)-1`.
///
/// Domain: `|z| < 1`, `ν > 1/2`, `0 ≤ m < ν - 1/2`.
pub fn psi_eigenfunction(idx: DiskIndex, nu: f64, z: ComplexValue) -> Result<ComplexValue> {
    if nu <= 0.5 {
        return Err(Error::Domain(format!("psi needs nu > 1/2, got {nu}")));
    }
    if (idx.m as f64) >= nu - 0.5 {
        return Err(Error::Domain(format!(
            "psi needs m < nu - 1/2, got m={} nu={nu}",
            idx.m
        )));
    }
    if z.norm_sqr() >= 1.0 {
        return Err(Error::Domain("psi is defined on the open unit disk".into()));
    }
    let gamma = 2.0 * (nu - idx.m as f64) - 1.0;
    let weight = (1.0 - z.norm_sqr()).powf((gamma + 1.0) / 2.0);
    let zv = zernike_explicit(idx, gamma, z).value;
    Ok(zv * (weight / c_coeff(idx.m, idx.n, gamma)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{QComplex, WeightedExpr};
    use num_traits::{One, ToPrimitive, Zero};

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    #[test]
    fn c_coeff_cases() {
        assert_eq!(c_coeff(0, 0, 5.0), 1.0);
        assert_eq!(c_coeff(1, 1, 0.0), 2.0);
        assert_eq!(c_coeff(2, 3, 1.0), 120.0); // 4*5*6
    }

    #[test]
    fn explicit_known_values() {
        // Z_{0,0} = 1 for any gamma, z
        let v = zernike_explicit(DiskIndex::new(0, 0), 2.7, c(0.3, -0.8));
        assert!((v.value - c(1.0, 0.0)).norm() < 1e-15);
        // Z_{0,1}^0(0.5) = (0+1)_1 * 0.5 = 0.5
        let v = zernike_explicit(DiskIndex::new(0, 1), 0.0, c(0.5, 0.0));
        assert!((v.value - c(0.5, 0.0)).norm() < 1e-15);
        // Rodrigues oracle: d²/dzdz̄ (1-zz̄)² = 4|z|² - 2, so Z_{1,1}^0(0.5) = -1
        let v = zernike_explicit(DiskIndex::new(1, 1), 0.0, c(0.5, 0.0));
        assert!((v.value - c(-1.0, 0.0)).norm() < 1e-14);
        assert!(v.condition_estimate >= 1.0);
    }

    #[test]
    fn exact_small_polynomials() {
        assert_eq!(zernike_exact(DiskIndex::new(0, 0)), TriPoly::one());
        // Z_{1,0} = (γ+1) z̄
        let expect = TriPoly::zbar().scale_gamma(&GammaPoly::poch_gamma(1, 1));
        assert_eq!(zernike_exact(DiskIndex::new(1, 0)), expect);
        // Z_{1,1} = (γ+1)(γ+2) z z̄ - (γ+2) w
        let expect = &TriPoly::powers(1, 1, 0).scale_gamma(&GammaPoly::poch_gamma(1, 2))
            - &TriPoly::w().scale_gamma(&GammaPoly::poch_gamma(2, 1));
        assert_eq!(zernike_exact(DiskIndex::new(1, 1)), expect);
    }

    #[test]
    fn exact_matches_explicit_at_integer_gamma() {
        // bit-exact agreement of the exact polynomial against exact rational
        // evaluation of the explicit sum, integer gamma
        for gamma_int in 0..5i64 {
            let gamma = BigRational::from_integer(gamma_int.into());
            let z = QComplex::from_ratio(1, 3, -2, 7);
            for (m, n) in [(0, 2), (1, 1), (2, 1), (3, 2)] {
                let poly = zernike_exact(DiskIndex::new(m, n));
                let exact = poly.eval_exact(&gamma, &z);
                let num = zernike_explicit(
                    DiskIndex::new(m, n),
                    gamma_int as f64,
                    z.to_c64(),
                );
                assert!(
                    (exact.to_c64() - num.value).norm() <= 1e-12 * num.value.norm().max(1.0),
                    "m={m} n={n} gamma={gamma_int}"
                );
            }
        }
    }

    #[test]
    fn jacobi_p_values() {
        assert_eq!(jacobi_p(0, 1.5, -0.5, 0.3), 1.0);
        // P_1^{(0,0)}(x) = x
        assert!((jacobi_p(1, 0.0, 0.0, 0.3) - 0.3).abs() < 1e-15);
        // P_m^{(α,β)}(-1) = (-1)^m (1+β)_m / m!
        for m in 0..7u32 {
            for &(a, b) in &[(0.0, 0.5), (1.0, 2.0), (2.5, 0.0)] {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let expect = sign * pochhammer(1.0 + b, m) / scalar::factorial(m);
                assert!(
                    (jacobi_p(m, a, b, -1.0) - expect).abs() < 1e-12 * expect.abs().max(1.0),
                    "m={m} a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn jacobi_engine_values() {
        // must match the explicit engine
        let v = zernike_jacobi(DiskIndex::new(1, 1), 0.0, c(0.5, 0.0));
        assert!((v.value - c(-1.0, 0.0)).norm() < 1e-14);
        // Z_{0,2}^1(0.4i) = (2)_2 (0.4i)² = -0.96
        let v = zernike_jacobi(DiskIndex::new(0, 2), 1.0, c(0.0, 0.4));
        assert!((v.value - c(-0.96, 0.0)).norm() < 1e-14);
        // |z|^{|m-n|} factor kills z = 0 when m != n
        let v = zernike_jacobi(DiskIndex::new(3, 1), 2.0, c(0.0, 0.0));
        assert_eq!(v.value, c(0.0, 0.0));
    }

    #[test]
    fn hyp2f1_engine_values() {
        let v = zernike_2f1(DiskIndex::new(1, 1), 0.0, c(0.5, 0.0));
        assert!((v.value - c(-1.0, 0.0)).norm() < 1e-14);
        // Z_{1,0}^2(z) = 3 z̄
        let v = zernike_2f1(DiskIndex::new(1, 0), 2.0, c(0.3, 0.4));
        assert!((v.value - c(0.9, -1.2)).norm() < 1e-14);
        // cross-engine at an interior point
        let a = zernike_2f1(DiskIndex::new(2, 2), 1.0, c(0.6, 0.0)).value;
        let b = zernike_explicit(DiskIndex::new(2, 2), 1.0, c(0.6, 0.0)).value;
        assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
        // origin falls back to the explicit engine
        let v = zernike_2f1(DiskIndex::new(2, 2), 1.0, c(0.0, 0.0));
        assert_eq!(v.engine, Engine::Explicit);
    }

    #[test]
    fn hermite_values() {
        assert_eq!(hermite_complex(HermiteIndex { p: 0, q: 0 }, c(0.7, 0.1)), c(1.0, 0.0));
        // H_{1,0} = z (symbolic differentiation oracle for p+q=1)
        assert_eq!(hermite_complex(HermiteIndex { p: 1, q: 0 }, c(0.7, 0.1)), c(0.7, 0.1));
        // H_{1,1} = z z̄ - 1
        let v = hermite_complex(HermiteIndex { p: 1, q: 1 }, c(0.5, 0.0));
        assert!((v - c(-0.75, 0.0)).norm() < 1e-15);
        // exact form agrees
        let he = hermite_exact(2, 1);
        let expect = &TriPoly::powers(2, 1, 0)
            - &TriPoly::powers(1, 0, 0).scale_gamma(&GammaPoly::from_int(2));
        assert_eq!(he, expect);
    }

    #[test]
    fn dunkl_normalization() {
        assert_eq!(to_dunkl(DiskIndex::new(0, 0), 1.5, c(0.2, 0.2)), c(1.0, 0.0));
        // conj(Z_{0,1})/(γ+1)_1 at γ=0, z=0.5 -> 0.5
        let v = to_dunkl(DiskIndex::new(0, 1), 0.0, c(0.5, 0.0));
        assert!((v - c(0.5, 0.0)).norm() < 1e-15);
        // boundary normalization |R_{n,n}| = 1 at |z| = 1
        for n in 1..4 {
            for &gamma in &[0.0, 1.0, 2.5] {
                let z = ComplexValue::from_polar(1.0, 0.77);
                let v = to_dunkl(DiskIndex::new(n, n), gamma, z);
                assert!((v.norm() - 1.0).abs() < 1e-12, "n={n} gamma={gamma}");
            }
        }
        assert_eq!(
            to_wunsche(DiskIndex::new(2, 1), 1.0, c(0.3, 0.1)),
            to_dunkl(DiskIndex::new(2, 1), 1.0, c(0.3, 0.1))
        );
    }

    #[test]
    fn radial_zernike() {
        assert_eq!(real_zernike_radial(0, 0, 0.37).unwrap(), 1.0);
        // R^0_2(0) = Z_{1,1}^0(0,0)/2! = -1
        assert!((real_zernike_radial(2, 0, 0.0).unwrap() + 1.0).abs() < 1e-15);
        // R^1_1(ρ) = ρ
        assert!((real_zernike_radial(1, 1, 0.6).unwrap() - 0.6).abs() < 1e-15);
        // parity violation
        assert!(real_zernike_radial(2, 1, 0.5).is_err());
        assert!(real_zernike_radial(1, 2, 0.5).is_err());
    }

    #[test]
    fn psi_values() {
        let v = psi_eigenfunction(DiskIndex::new(0, 0), 1.0, c(0.0, 0.0)).unwrap();
        assert_eq!(v, c(1.0, 0.0));
        // (0.75)^1 · 0.5·(γ+1)_1/C_{0,1}^γ with γ = 1 -> 0.375
        let v = psi_eigenfunction(DiskIndex::new(0, 1), 1.0, c(0.5, 0.0)).unwrap();
        assert!((v - c(0.375, 0.0)).norm() < 1e-15);
        // weight vanishes toward the boundary
        let v = psi_eigenfunction(DiskIndex::new(0, 2), 1.5, c(0.99999, 0.0)).unwrap();
        assert!(v.norm() < 1e-3);
        assert!(psi_eigenfunction(DiskIndex::new(0, 0), 0.4, c(0.0, 0.0)).is_err());
        assert!(psi_eigenfunction(DiskIndex::new(2, 0), 1.0, c(0.0, 0.0)).is_err());
        assert!(psi_eigenfunction(DiskIndex::new(0, 0), 1.0, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn conjugation_symmetry() {
        // Z_{m,n}(z,z̄) = conj(Z_{n,m}(z,z̄)): exact and numeric
        for m in 0..5u32 {
            for n in 0..5u32 {
                let a = zernike_exact(DiskIndex::new(m, n));
                let b = zernike_exact(DiskIndex::new(n, m)).swap_vars();
                assert_eq!(a, b, "exact m={m} n={n}");
                let z = c(0.31, -0.47);
                let va = zernike_explicit(DiskIndex::new(m, n), 1.7, z).value;
                let vb = zernike_explicit(DiskIndex::new(n, m), 1.7, z).value.conj();
                assert!((va - vb).norm() <= 1e-13 * va.norm().max(1.0));
            }
        }
    }

    #[test]
    fn rodrigues_forms_reproduce_exact() {
        // (2.13): (-1)^{m+n} w^{-γ} ∂^{m+n}/∂z^m∂z̄^n (w^{γ+m+n}) == Z_{m,n}
        // (2.12): (-1)^m C^γ_{m,n} w^{-γ} ∂^m/∂z^m (z^n w^{γ+m}) == Z_{m,n}
        for m in 0..4u32 {
            for n in 0..4u32 {
                let mut e = WeightedExpr::gamma_weighted((m + n) as i64, TriPoly::one());
                for _ in 0..m {
                    e = e.d_dz();
                }
                for _ in 0..n {
                    e = e.d_dzbar();
                }
                let sign = if (m + n) % 2 == 0 { 1 } else { -1 };
                let e = e
                    .mul(&WeightedExpr::with_exponent(-1, 0, TriPoly::one()))
                    .unwrap()
                    .scale_gamma(&GammaPoly::from_int(sign));
                let got = e.normalize(false).unwrap();
                let want = zernike_exact(DiskIndex::new(m, n)).subst_w();
                assert_eq!(got, want, "(2.13) m={m} n={n}");

                let mut e = WeightedExpr::gamma_weighted(
                    m as i64,
                    TriPoly::powers(n, 0, 0),
                );
                for _ in 0..m {
                    e = e.d_dz();
                }
                let sign = if m % 2 == 0 { 1 } else { -1 };
                let coeff = GammaPoly::poch_gamma(m as i64 + 1, n)
                    .scale(&BigRational::from_integer(sign.into()));
                let e = e
                    .mul(&WeightedExpr::with_exponent(-1, 0, TriPoly::one()))
                    .unwrap()
                    .scale_gamma(&coeff);
                let got = e.normalize(false).unwrap();
                assert_eq!(got, want, "(2.12) m={m} n={n}");
            }
        }
    }

    #[test]
    fn mixed_derivative_formula() {
        // ∂^{j+k}/∂z^j∂z̄^k Z_{r,s}^γ
        //   = r! s! (γ+r+1)_j (γ+s+1)_k / ((r-k)!(s-j)!) · Z_{r-k,s-j}^{γ+j+k},
        // valid for j ≤ s, k ≤ r
        for r in 0..4u32 {
            for s in 0..4u32 {
                for j in 0..=s {
                    for k in 0..=r {
                        let mut d = zernike_exact(DiskIndex::new(r, s));
                        for _ in 0..j {
                            d = d.d_dz();
                        }
                        for _ in 0..k {
                            d = d.d_dzbar();
                        }
                        let num = &factorial_big(r) * &factorial_big(s);
                        let den = factorial_big(r - k) * factorial_big(s - j);
                        let scale = &GammaPoly::poch_gamma(r as i64 + 1, j)
                            * &GammaPoly::poch_gamma(s as i64 + 1, k);
                        let scale = scale.scale(&BigRational::new(num, den));
                        let rhs = zernike_exact(DiskIndex::new(r - k, s - j))
                            .shift_gamma((j + k) as i64)
                            .scale_gamma(&scale);
                        assert_eq!(
                            d.subst_w(),
                            rhs.subst_w(),
                            "r={r} s={s} j={j} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn exact_eval_matches_numeric_at_integer_gamma() {
        for g in 0..5 {
            let poly = zernike_exact(DiskIndex::new(2, 3));
            let z = QComplex::from_ratio(2, 5, 1, 4);
            let exact = poly.eval_exact(&BigRational::from_integer(g.into()), &z);
            let approx = poly.eval_f64(g as f64, z.to_c64());
            assert!((exact.to_c64() - approx).norm() < 1e-12 * approx.norm().max(1.0));
        }
        let _ = (BigRational::one().to_f64(), BigRational::zero());
    }
}
