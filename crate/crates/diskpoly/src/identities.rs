//! The differential operators of the calculus and exact verification of the
//! algebraic identities: operator composition, the three operational
//! formulae of Burchnall type, their corollaries (including the
//! Chu-Vandermonde reduction and the complex-Hermite expansion), the Nielsen
//! quadratic recurrences, and the Runge addition formula.
//!
//! Residual functions assemble `LHS - RHS` from [`zernike_exact`] building
//! blocks; identities with rational coefficients in γ are multiplied through
//! by the common denominator first, so a correct identity yields the zero
//! polynomial of `Q[γ][z, z̄]` exactly.

use crate::disk::{hermite_exact, zernike_exact, zernike_explicit, DiskIndex};
use crate::exact::{BigRational, GammaPoly, QComplex, TriPoly, WeightedExpr};
use crate::scalar::{factorial, factorial_big, stable_sum};
use crate::{ComplexValue, Error, Result};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

/// The operators of the calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OperatorId {
    /// `𝒜_m(f) = (1-|z|²)^{m+1} ∂^m/∂z^m ((1-|z|²)^{m-1} f)`.
    Am,
    /// `𝒜_{m,n}^γ(f) = (-1)^m C_{m,n}^γ (1-|z|²)^{-γ} ∂^m/∂z^m (z^n (1-|z|²)^{γ+m} f)`.
    OpA,
    /// `ℬ_{m,n}^γ(f) = (-1)^{m+n} (1-|z|²)^{-γ} ∂^{m+n}/∂z^m∂z̄^n ((1-|z|²)^{γ+m+n} f)`.
    OpB,
    /// `∇_{m,n}^{γ,γ'} = ∇_m^γ ∘ conj-∇_n^{γ'}`.
    OpNabla,
}

/// Multi-index `(s₁, s₂, s₃, s₄)` for the Runge addition formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiIndex4 {
    pub s1: u32,
    pub s2: u32,
    pub s3: u32,
    pub s4: u32,
}

impl MultiIndex4 {
    pub fn total(&self) -> u32 {
        self.s1 + self.s2 + self.s3 + self.s4
    }

    /// `s! = s₁!s₂!s₃!s₄!` as f64.
    pub fn factorial(&self) -> f64 {
        factorial(self.s1) * factorial(self.s2) * factorial(self.s3) * factorial(self.s4)
    }

    /// All multi-indices with `|s| = total`.
    pub fn compositions(total: u32) -> Vec<MultiIndex4> {
        let mut out = Vec::new();
        for s1 in 0..=total {
            for s2 in 0..=(total - s1) {
                for s3 in 0..=(total - s1 - s2) {
                    out.push(MultiIndex4 { s1, s2, s3, s4: total - s1 - s2 - s3 });
                }
            }
        }
        out
    }
}

/// The affine parameter γ' of the ∇ operator: `gcoeff·γ + offset` with
/// `gcoeff ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineGamma {
    pub gcoeff: i8,
    pub offset: i64,
}

impl AffineGamma {
    pub fn constant(c: i64) -> Self {
        AffineGamma { gcoeff: 0, offset: c }
    }

    pub fn gamma_plus(c: i64) -> Self {
        AffineGamma { gcoeff: 1, offset: c }
    }

    fn as_poly(&self) -> GammaPoly {
        GammaPoly::linear(
            BigRational::from_integer(BigInt::from(self.offset)),
            BigRational::from_integer(BigInt::from(self.gcoeff)),
        )
    }
}

fn q_int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `(-a)_k = (-1)^k a!/(a-k)!` for integer a ≥ k, else the plain product.
fn poch_neg_int(a: u32, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc = &acc * q_int(i as i64 - a as i64);
    }
    acc
}

/// `𝒜_m` applied to a weighted expression:
/// `w^{m+1} ∂^m/∂z^m ( w^{m-1} · e )`. Exact; the exponents are integers, so
/// a plain-polynomial input yields a plain-polynomial output.
pub fn apply_a_m_weighted(m: u32, e: &WeightedExpr) -> WeightedExpr {
    let mut acc = e.mul_w_pow(m as i64 - 1);
    for _ in 0..m {
        acc = acc.d_dz();
    }
    acc.mul_w_pow(m as i64 + 1)
}

/// `𝒜_m(f)` for a plain polynomial `f`, normalized to `Q[γ][z, z̄]`.
pub fn apply_a_m(m: u32, f: &TriPoly) -> WeightedExpr {
    apply_a_m_weighted(m, &WeightedExpr::poly(f.clone()))
}

/// `𝒜_{m,n}^γ(f) = (-1)^m C_{m,n}^γ w^{-γ} ∂^m/∂z^m (z^n w^{γ+m} f)`.
///
/// `f` may carry its own `w^{-γ+t}` weight (that is how the corollaries
/// instantiate it); a combined `w^{2γ}` exponent is rejected.
pub fn apply_op_a(m: u32, n: u32, f: &WeightedExpr) -> Result<WeightedExpr> {
    let inner = WeightedExpr::gamma_weighted(m as i64, TriPoly::powers(n, 0, 0));
    let mut acc = inner.mul(f)?;
    for _ in 0..m {
        acc = acc.d_dz();
    }
    let acc = acc.mul(&WeightedExpr::with_exponent(-1, 0, TriPoly::one()))?;
    let sign = if m % 2 == 0 { 1 } else { -1 };
    Ok(acc.scale_gamma(&GammaPoly::poch_gamma(m as i64 + 1, n).scale_int(sign)))
}

/// `ℬ_{m,n}^γ(f) = (-1)^{m+n} w^{-γ} ∂^{m+n}/∂z^m∂z̄^n (w^{γ+m+n} f)`.
pub fn apply_op_b(m: u32, n: u32, f: &WeightedExpr) -> Result<WeightedExpr> {
    let inner = WeightedExpr::gamma_weighted((m + n) as i64, TriPoly::one());
    let mut acc = inner.mul(f)?;
    for _ in 0..n {
        acc = acc.d_dzbar();
    }
    for _ in 0..m {
        acc = acc.d_dz();
    }
    let acc = acc.mul(&WeightedExpr::with_exponent(-1, 0, TriPoly::one()))?;
    let sign = if (m + n) % 2 == 0 { 1 } else { -1 };
    Ok(acc.scale_gamma(&GammaPoly::from_int(sign)))
}

/// `∇_{m,n}^{γ,γ'}(f)` by the closed form
///
/// ```text
/// (-1)^{m+n} w^{m+1-γ} ∂^m/∂z^m ( w^{γ-γ'+n} ∂^n/∂z̄^n ( w^{γ'-1} f ) )
/// ```
///
/// γ is the symbol of the coefficient ring; γ' is an affine expression in it.
pub fn apply_op_nabla(m: u32, n: u32, gp: AffineGamma, f: &WeightedExpr) -> Result<WeightedExpr> {
    let w_gp = WeightedExpr::with_exponent(gp.gcoeff, gp.offset - 1, TriPoly::one());
    let mut acc = w_gp.mul(f)?;
    for _ in 0..n {
        acc = acc.d_dzbar();
    }
    let w_mid = WeightedExpr::with_exponent(1 - gp.gcoeff, n as i64 - gp.offset, TriPoly::one());
    acc = acc.mul(&w_mid)?;
    for _ in 0..m {
        acc = acc.d_dz();
    }
    let w_out = WeightedExpr::with_exponent(-1, m as i64 + 1, TriPoly::one());
    let acc = acc.mul(&w_out)?;
    let sign = if (m + n) % 2 == 0 { 1 } else { -1 };
    Ok(acc.scale_gamma(&GammaPoly::from_int(sign)))
}

/// Single step `∇_α(f) = -w ∂f/∂z + α z̄ f` (product form, cross-check for
/// the closed form above).
pub fn nabla_step(alpha: &GammaPoly, f: &TriPoly) -> TriPoly {
    &(&TriPoly::zbar() * f).scale_gamma(alpha) - &(&TriPoly::w() * &f.d_dz())
}

/// Single step `conj-∇_α(f) = -w ∂f/∂z̄ + α z f`.
pub fn nabla_bar_step(alpha: &GammaPoly, f: &TriPoly) -> TriPoly {
    &(&TriPoly::z() * f).scale_gamma(alpha) - &(&TriPoly::w() * &f.d_dzbar())
}

/// `∇_m^γ ∘ conj-∇_n^{γ'}` by composing the first-order factors.
pub fn apply_op_nabla_product(m: u32, n: u32, gp: AffineGamma, f: &TriPoly) -> TriPoly {
    let gp_poly = gp.as_poly();
    let mut acc = f.clone();
    for i in (1..=n as i64).rev() {
        acc = nabla_bar_step(&(&gp_poly - &GammaPoly::from_int(i)), &acc);
    }
    for i in (1..=m as i64).rev() {
        acc = nabla_step(&GammaPoly::gamma_plus(-i), &acc);
    }
    acc
}

/// Which operational formula to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
pub enum BurchnallFormula {
    /// Expansion of `𝒜_{m,n}^γ(f)` over `∂^j f/∂z^j`.
    OpA,
    /// Expansion of `ℬ_{m,n}^γ(f)` over mixed derivatives of f.
    OpB,
    /// Expansion of `∇_{m,n}^{γ,γ'}(f)`; the residual is cleared by `(γ)_n`.
    Nabla,
}

/// Table of mixed derivatives `∂^{j+k} f / ∂z^j ∂z̄^k`.
fn derivative_table(f: &TriPoly, jmax: u32, kmax: u32) -> Vec<Vec<TriPoly>> {
    let mut rows = Vec::with_capacity(jmax as usize + 1);
    let mut cur = f.clone();
    for j in 0..=jmax {
        if j > 0 {
            cur = cur.d_dz();
        }
        let mut row = Vec::with_capacity(kmax as usize + 1);
        let mut cell = cur.clone();
        for k in 0..=kmax {
            if k > 0 {
                cell = cell.d_dzbar();
            }
            row.push(cell.clone());
        }
        rows.push(row);
    }
    rows
}

/// `LHS - RHS` of the chosen operational formula applied to a polynomial
/// test function `f`; zero expected.
///
/// For [`BurchnallFormula::Nabla`] the parameter γ' must be supplied.
pub fn burchnall_residual(
    formula: BurchnallFormula,
    m: u32,
    n: u32,
    gamma_prime: Option<AffineGamma>,
    f: &TriPoly,
) -> Result<TriPoly> {
    let (mi, ni) = (m as i64, n as i64);
    let mf = factorial_big(m);
    let nf = factorial_big(n);
    match formula {
        BurchnallFormula::OpA => {
            let lhs = apply_op_a(m, n, &WeightedExpr::poly(f.clone()))?.normalize(false)?;
            let derivs = derivative_table(f, m, 0);
            let mut rhs = TriPoly::zero();
            for j in 0..=m {
                let c = BigRational::new(
                    mf.clone(),
                    factorial_big(j) * factorial_big(m - j),
                );
                let c = if j % 2 == 0 { c } else { -c };
                let term = &zernike_exact(DiskIndex::new(m - j, n)).shift_gamma(j as i64)
                    * &derivs[j as usize][0];
                rhs = &rhs + &term.mul_powers(0, 0, j).scale_rational(&c);
            }
            Ok((&lhs - &rhs.subst_w()).subst_w())
        }
        BurchnallFormula::OpB => {
            let lhs = apply_op_b(m, n, &WeightedExpr::poly(f.clone()))?.normalize(false)?;
            let derivs = derivative_table(f, m, n);
            let mut rhs = TriPoly::zero();
            for j in 0..=m {
                for k in 0..=n {
                    let c = BigRational::new(
                        &mf * &nf,
                        factorial_big(j)
                            * factorial_big(k)
                            * factorial_big(m - j)
                            * factorial_big(n - k),
                    );
                    let c = if (j + k) % 2 == 0 { c } else { -c };
                    let term = &zernike_exact(DiskIndex::new(m - j, n - k))
                        .shift_gamma((j + k) as i64)
                        * &derivs[j as usize][k as usize];
                    rhs = &rhs + &term.mul_powers(0, 0, j + k).scale_rational(&c);
                }
            }
            Ok((&lhs - &rhs.subst_w()).subst_w())
        }
        BurchnallFormula::Nabla => {
            let gp = gamma_prime.ok_or_else(|| {
                Error::Domain("the nabla formula needs gamma_prime".into())
            })?;
            let lhs = apply_op_nabla(m, n, gp, &WeightedExpr::poly(f.clone()))?
                .normalize(false)?
                .scale_gamma(&GammaPoly::poch_gamma(0, n));
            let gp_poly = gp.as_poly();
            let derivs = derivative_table(f, m, n);
            let mut rhs = TriPoly::zero();
            for j in 0..=m {
                for k in 0..=n {
                    // (γ'+k-n)_{n-k} · (γ)_k  — the (γ)_n multiplier divided
                    // by (γ+k)_{n-k}
                    let base = &gp_poly + &GammaPoly::from_int(k as i64 - ni);
                    let coeff = &GammaPoly::poch_of(&base, n - k) * &GammaPoly::poch_gamma(0, k);
                    let c = BigRational::new(
                        &mf * &nf,
                        factorial_big(j)
                            * factorial_big(k)
                            * factorial_big(m - j)
                            * factorial_big(n - k),
                    );
                    let c = if (j + k) % 2 == 0 { c } else { -c };
                    let zblock = zernike_exact(DiskIndex::new(m - j, n - k))
                        .shift_gamma(k as i64 + j as i64 - 1 - mi);
                    let term = &(&zblock * &derivs[j as usize][k as usize])
                        .scale_gamma(&coeff)
                        .mul_powers(0, 0, j + k)
                        .scale_rational(&c);
                    rhs = &rhs + term;
                }
            }
            Ok((&lhs - &rhs.subst_w()).subst_w())
        }
    }
}

/// `𝒜_{m+m'} - 𝒜_m ∘ 𝒜_{m'}`, applied to `f` and normalized; zero expected.
pub fn composition_residual(m: u32, mprime: u32, f: &TriPoly) -> Result<TriPoly> {
    let direct = apply_a_m(m + mprime, f);
    let composed = apply_a_m_weighted(m, &apply_a_m(mprime, f));
    Ok(direct.sub(&composed)?.normalize(false)?)
}

/// Corollary of the first operational formula with `f = (1-|z|²)^{-γ-m}`:
///
/// ```text
/// Σ_j (-m)_j (γ+m)_j / j! · z̄^j Z_{m-j,n}^{γ+j}
///     = 0                                      (m > n)
///     = (-n)_m (γ+1+m)_n z^{n-m} (1-|z|²)^m    (m ≤ n)
/// ```
pub fn corollary32_residual(m: u32, n: u32) -> TriPoly {
    let mut lhs = TriPoly::zero();
    for j in 0..=m {
        let c = &poch_neg_int(m, j) / &BigRational::from_integer(factorial_big(j));
        let coeff = GammaPoly::poch_gamma(m as i64, j).scale(&c);
        let term = zernike_exact(DiskIndex::new(m - j, n))
            .shift_gamma(j as i64)
            .mul_powers(0, j, 0)
            .scale_gamma(&coeff);
        lhs = &lhs + &term;
    }
    let rhs = if m > n {
        TriPoly::zero()
    } else {
        let c = poch_neg_int(n, m);
        TriPoly::powers(n - m, 0, m)
            .scale_gamma(&GammaPoly::poch_gamma(m as i64 + 1, n).scale(&c))
    };
    (&lhs - &rhs).subst_w()
}

/// Chu-Vandermonde reduction of the previous identity at n = 0:
/// `₂F₁(-m, γ+m; γ+1 | 1)` cleared of denominators,
/// `Σ_j (-m)_j (γ+m)_j (γ+j+1)_{m-j} / j!`; the zero polynomial for m ≥ 1.
pub fn chu_vandermonde_residual(m: u32) -> GammaPoly {
    let mut acc = GammaPoly::zero();
    for j in 0..=m {
        let c = &poch_neg_int(m, j) / &BigRational::from_integer(factorial_big(j));
        let term = &GammaPoly::poch_gamma(m as i64, j)
            * &GammaPoly::poch_gamma(j as i64 + 1, m - j);
        acc = &acc + &term.scale(&c);
    }
    acc
}

/// Complex-Hermite expansion over disk polynomials (the operational
/// corollary with `f = (1-|z|²)^{-γ-m} e^{-|z|²}`), cleared of the
/// `(1-|z|²)^{-m}` prefactor and the `(γ+m+1)_n` denominator:
///
/// ```text
/// (γ+m+1)_n w^m H_{n,m}(z,z̄)
///   = m! Σ_{j=0}^m Σ_{k=0}^j (-1)^k (γ+m)_k z̄^j w^{j-k}
///         Z_{m-j,n}^{γ+j} / (k!(j-k)!(m-j)!)
/// ```
///
/// (The Hermite factor produced by `𝒜^γ_{m,n}` carries the transposed
/// indices `H_{n,m}`; see `∂²/∂z²(e^{-|z|²}) = z̄² e^{-|z|²} = H_{0,2} e^{-|z|²}`.)
pub fn hermite_corollary_residual(m: u32, n: u32) -> TriPoly {
    let lhs = (&hermite_exact(n, m).mul_powers(0, 0, m))
        .scale_gamma(&GammaPoly::poch_gamma(m as i64 + 1, n));
    let mf = factorial_big(m);
    let mut rhs = TriPoly::zero();
    for j in 0..=m {
        for k in 0..=j {
            let c = BigRational::new(
                mf.clone(),
                factorial_big(k) * factorial_big(j - k) * factorial_big(m - j),
            );
            let c = if k % 2 == 0 { c } else { -c };
            let coeff = GammaPoly::poch_gamma(m as i64, k).scale(&c);
            let term = zernike_exact(DiskIndex::new(m - j, n))
                .shift_gamma(j as i64)
                .mul_powers(0, j, j - k)
                .scale_gamma(&coeff);
            rhs = &rhs + &term;
        }
    }
    (&lhs - &rhs).subst_w()
}

/// Which quadratic (Nielsen-type) identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
pub enum NielsenKind {
    /// `Z_{m,n+s}` expanded with `f = z^s`.
    Eq41,
    /// `Z_{m,n}^{γ+s}` expanded with `f = (1-|z|²)^s`, cleared by `C_{m,n}^γ`.
    Eq42,
    /// The full quadratic recurrence for `Z_{m+r,n+s}`.
    Nielsen1,
    /// The single-sum quadratic recurrence for `Z_{m+r,n}`.
    Nielsen2,
}

/// `LHS - RHS` of the chosen quadratic identity; zero expected. Unused
/// indices are ignored per formula (`eq41`/`eq42` ignore r, `nielsen2`
/// ignores s).
pub fn nielsen_residual(kind: NielsenKind, m: u32, n: u32, r: u32, s: u32) -> TriPoly {
    let (mi, ni, ri, si) = (m as i64, n as i64, r as i64, s as i64);
    let fact = |a: u32| BigRational::from_integer(factorial_big(a));
    let diff = match kind {
        NielsenKind::Eq41 => {
            // Z_{m,n+s} = m!n!s! C^γ_{m+n,s} Σ_j (-1)^j z^{s-j} w^j
            //             Z^{γ+j}_{m-j,n} / ((s-j)! j! (m-j)! n!)
            let lhs = zernike_exact(DiskIndex::new(m, n + s));
            let mut sum = TriPoly::zero();
            for j in 0..=m.min(s) {
                let c = &(&fact(m) * &fact(s))
                    / &(&(&fact(s - j) * &fact(j)) * &fact(m - j));
                let c = if j % 2 == 0 { c } else { -c };
                let term = zernike_exact(DiskIndex::new(m - j, n))
                    .shift_gamma(j as i64)
                    .mul_powers(s - j, 0, j)
                    .scale_rational(&c);
                sum = &sum + &term;
            }
            let rhs = sum.scale_gamma(&GammaPoly::poch_gamma(mi + ni + 1, s));
            &lhs - &rhs
        }
        NielsenKind::Eq42 => {
            // C^γ_{m,n} Z^{γ+s}_{m,n} = m!n!s! C^{γ+s}_{m,n} Σ_j z̄^j
            //             Z^{γ+j}_{m-j,n} / ((s-j)! j! (m-j)! n!)
            let lhs = zernike_exact(DiskIndex::new(m, n))
                .shift_gamma(si)
                .scale_gamma(&GammaPoly::poch_gamma(mi + 1, n));
            let mut sum = TriPoly::zero();
            for j in 0..=m.min(s) {
                let c = &(&fact(m) * &fact(s))
                    / &(&(&fact(s - j) * &fact(j)) * &fact(m - j));
                let term = zernike_exact(DiskIndex::new(m - j, n))
                    .shift_gamma(j as i64)
                    .mul_powers(0, j, 0)
                    .scale_rational(&c);
                sum = &sum + &term;
            }
            let rhs = sum.scale_gamma(&GammaPoly::poch_gamma(si + mi + 1, n));
            &lhs - &rhs
        }
        NielsenKind::Nielsen1 => {
            // Z_{m+r,n+s}/(m!n!r!s!) = Σ_{j,k} (γ+m+n+r+1)_j (γ+m+n+s+1)_k
            //   (-1)^{j+k} w^{j+k} Z^{γ+j+k}_{m-j,n-k} Z^{γ+m+n+j+k}_{r-k,s-j}
            //   / (j! k! (m-j)! (n-k)! (s-j)! (r-k)!)
            let lhs = zernike_exact(DiskIndex::new(m + r, n + s)).scale_rational(
                &(&BigRational::one()
                    / &(&(&fact(m) * &fact(n)) * &(&fact(r) * &fact(s)))),
            );
            let mut rhs = TriPoly::zero();
            for j in 0..=m.min(s) {
                for k in 0..=n.min(r) {
                    let coeff = &GammaPoly::poch_gamma(mi + ni + ri + 1, j)
                        * &GammaPoly::poch_gamma(mi + ni + si + 1, k);
                    let den = &(&(&fact(j) * &fact(k)) * &(&fact(m - j) * &fact(n - k)))
                        * &(&fact(s - j) * &fact(r - k));
                    let c = &BigRational::one() / &den;
                    let c = if (j + k) % 2 == 0 { c } else { -c };
                    let za = zernike_exact(DiskIndex::new(m - j, n - k))
                        .shift_gamma((j + k) as i64);
                    let zb = zernike_exact(DiskIndex::new(r - k, s - j))
                        .shift_gamma(mi + ni + j as i64 + k as i64);
                    let term = (&za * &zb)
                        .mul_powers(0, 0, j + k)
                        .scale_gamma(&coeff)
                        .scale_rational(&c);
                    rhs = &rhs + &term;
                }
            }
            &lhs - &rhs
        }
        NielsenKind::Nielsen2 => {
            // Z_{m+r,n}/(m!n!) = Σ_j (γ+m+r+1)_j (γ+j+1)_{m-j} (-1)^j z̄^{m-j}
            //   w^j Z^{γ+m+j}_{r,n-j} / ((m-j)! j! (n-j)!)
            let lhs = zernike_exact(DiskIndex::new(m + r, n))
                .scale_rational(&(&BigRational::one() / &(&fact(m) * &fact(n))));
            let mut rhs = TriPoly::zero();
            for j in 0..=m.min(n) {
                let coeff = &GammaPoly::poch_gamma(mi + ri + 1, j)
                    * &GammaPoly::poch_gamma(j as i64 + 1, m - j);
                let den = &(&fact(m - j) * &fact(j)) * &fact(n - j);
                let c = &BigRational::one() / &den;
                let c = if j % 2 == 0 { c } else { -c };
                let term = zernike_exact(DiskIndex::new(r, n - j))
                    .shift_gamma(mi + j as i64)
                    .mul_powers(0, m - j, j)
                    .scale_gamma(&coeff)
                    .scale_rational(&c);
                rhs = &rhs + &term;
            }
            &lhs - &rhs
        }
    };
    diff.subst_w()
}

/// Numeric residual of the Runge addition formula at the point pair `(z, w)`:
///
/// ```text
/// (1-|(z+w)/√2|²)^γ Z_{m,n}^γ((z+w)/√2, ·)
///   - 2^{-(γ+m+(m+n)/2)} m! n! (γ+m+n)! Σ_{j,k,|s|=γ+m} (...)
/// ```
///
/// γ + m must be a positive integer; the √2 scaling makes this check
/// intrinsically numeric.
pub fn runge_residual(
    m: u32,
    n: u32,
    gamma: u32,
    z: ComplexValue,
    w: ComplexValue,
) -> Result<ComplexValue> {
    if gamma + m == 0 {
        return Err(Error::Domain("runge needs gamma + m >= 1".into()));
    }
    if z.norm() >= 1.0 || w.norm() >= 1.0 || (z + w).norm() >= std::f64::consts::SQRT_2 {
        return Err(Error::Domain(
            "runge needs |z| < 1, |w| < 1, |z+w| < sqrt(2)".into(),
        ));
    }
    let g = gamma as f64;
    let u = (z + w) / std::f64::consts::SQRT_2;
    let lhs = (1.0 - u.norm_sqr()).powf(g)
        * zernike_explicit(DiskIndex::new(m, n), g, u).value;

    let hz = 1.0 - z.norm_sqr();
    let hw = 1.0 - w.norm_sqr();
    let zb = z.conj();
    let wb = w.conj();
    let pref = 0.5f64.powf(g + m as f64 + (m + n) as f64 / 2.0)
        * factorial(m)
        * factorial(n)
        * factorial(gamma + m + n);
    let mut terms = Vec::new();
    for j in 0..=m {
        for k in 0..=n {
            for s in MultiIndex4::compositions(gamma + m) {
                let sign = if (s.s3 + s.s4) % 2 == 0 { 1.0 } else { -1.0 };
                let za = zernike_explicit(
                    DiskIndex::new(j, s.s3 + k),
                    s.s1 as f64 - j as f64,
                    z,
                )
                .value;
                let zw = zernike_explicit(
                    DiskIndex::new(m - j, s.s4 + n - k),
                    s.s2 as f64 - (m - j) as f64,
                    w,
                )
                .value;
                let denom = s.factorial()
                    * factorial(j)
                    * factorial(k)
                    * factorial(m - j)
                    * factorial(n - k)
                    * crate::scalar::pochhammer(s.s1 as f64 + 1.0, s.s3 + k)
                    * crate::scalar::pochhammer(s.s2 as f64 + 1.0, s.s4 + n - k);
                let t = sign
                    * zb.powu(s.s4)
                    * wb.powu(s.s3)
                    * hz.powi(s.s1 as i32 - j as i32)
                    * hw.powi(s.s2 as i32 - (m - j) as i32)
                    * za
                    * zw
                    / denom;
                terms.push(t);
            }
        }
    }
    Ok(lhs - pref * stable_sum(terms))
}

/// The scalar identity obtained from the addition formula at `z + w = 0`,
/// `m = n = 0`:
///
/// ```text
/// Σ_{|s|=γ} |z|^{2(s₃+s₄)} (1-|z|²)^{s₁+s₂} / s!  =  2^γ / γ!
/// ```
///
/// Returns the multi-index sum; it is constant in z.
pub fn runge_remark_value(gamma: u32, z: ComplexValue) -> f64 {
    let r2 = z.norm_sqr();
    let w = 1.0 - r2;
    let mut acc = crate::scalar::NeumaierSum::new();
    for s in MultiIndex4::compositions(gamma) {
        acc.add(r2.powi((s.s3 + s.s4) as i32) * w.powi((s.s1 + s.s2) as i32) / s.factorial());
    }
    acc.value()
}

/// Exact-rational variant of [`runge_remark_value`]; equals `2^γ/γ!` exactly
/// for every rational z.
pub fn runge_remark_exact(gamma: u32, z: &QComplex) -> BigRational {
    let r2 = z.norm_sqr();
    let w = &BigRational::one() - &r2;
    let mut acc = BigRational::from_integer(0.into());
    let pow = |b: &BigRational, e: u32| -> BigRational {
        let mut p = BigRational::one();
        for _ in 0..e {
            p = &p * b;
        }
        p
    };
    for s in MultiIndex4::compositions(gamma) {
        let sf = factorial_big(s.s1) * factorial_big(s.s2) * factorial_big(s.s3) * factorial_big(s.s4);
        acc = &acc + &(&pow(&r2, s.s3 + s.s4) * &pow(&w, s.s1 + s.s2) / BigRational::from_integer(sf));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_m_operator_cases() {
        // m = 0 is the identity
        let f = TriPoly::powers(1, 1, 0);
        let r = apply_a_m(0, &f);
        assert_eq!(r.normalize(false).unwrap(), f.subst_w());
        // A_1(1) = w² ∂z(1) = 0
        assert!(apply_a_m(1, &TriPoly::one()).is_zero() || apply_a_m(1, &TriPoly::one()).normalize(false).unwrap().is_zero());
        // A_1(z) = (1-zz̄)²
        let r = apply_a_m(1, &TriPoly::z()).normalize(false).unwrap();
        let expect = (&TriPoly::w() * &TriPoly::w()).subst_w();
        assert_eq!(r, expect);
    }

    #[test]
    fn op_a_and_op_b_reproduce_zernike() {
        // 𝒜^γ_{m,n}(1) = ℬ^γ_{m,n}(1) = Z_{m,n}
        for m in 0..4 {
            for n in 0..4 {
                let one = WeightedExpr::poly(TriPoly::one());
                let a = apply_op_a(m, n, &one).unwrap().normalize(false).unwrap();
                let b = apply_op_b(m, n, &one).unwrap().normalize(false).unwrap();
                let z = zernike_exact(DiskIndex::new(m, n)).subst_w();
                assert_eq!(a, z, "opA m={m} n={n}");
                assert_eq!(b, z, "opB m={m} n={n}");
            }
        }
    }

    #[test]
    fn op_a_on_inverse_weight() {
        // 𝒜^γ_{1,2}(w^{-γ-1}) = -2!(γ+2)_2 z w^{-γ}
        let f = WeightedExpr::with_exponent(-1, -1, TriPoly::one());
        let r = apply_op_a(1, 2, &f).unwrap();
        assert_eq!(r.gamma_coeff(), -1);
        let expect = TriPoly::z().scale_gamma(&GammaPoly::poch_gamma(2, 2).scale_int(-2));
        let got = r.mul(&WeightedExpr::gamma_weighted(0, TriPoly::one())).unwrap();
        assert_eq!(got.normalize(false).unwrap(), expect.subst_w());
    }

    #[test]
    fn nabla_closed_form_matches_product_form() {
        let f = &TriPoly::powers(2, 1, 0) + &TriPoly::one();
        for m in 0..3 {
            for n in 0..3 {
                for gp in [
                    AffineGamma::constant(0),
                    AffineGamma::constant(3),
                    AffineGamma::gamma_plus(0),
                    AffineGamma::gamma_plus(2),
                ] {
                    let closed = apply_op_nabla(m, n, gp, &WeightedExpr::poly(f.clone()))
                        .unwrap()
                        .normalize(false)
                        .unwrap();
                    let product = apply_op_nabla_product(m, n, gp, &f).subst_w();
                    assert_eq!(closed, product, "m={m} n={n} gp={gp:?}");
                }
            }
        }
    }

    #[test]
    fn nabla_single_step_value() {
        // ∇^γ_1(1) = (γ-1) z̄
        let r = apply_op_nabla(1, 0, AffineGamma::constant(0), &WeightedExpr::poly(TriPoly::one()))
            .unwrap()
            .normalize(false)
            .unwrap();
        let expect = TriPoly::zbar().scale_gamma(&GammaPoly::gamma_plus(-1));
        assert_eq!(r, expect.subst_w());
    }

    #[test]
    fn burchnall_formulae_small() {
        let f = &(&TriPoly::powers(1, 0, 0) * &TriPoly::powers(0, 1, 0)) + &TriPoly::z();
        for m in 0..3 {
            for n in 0..3 {
                let r = burchnall_residual(BurchnallFormula::OpA, m, n, None, &f).unwrap();
                assert!(r.is_zero(), "opA m={m} n={n}: {r}");
                let r = burchnall_residual(BurchnallFormula::OpB, m, n, None, &f).unwrap();
                assert!(r.is_zero(), "opB m={m} n={n}: {r}");
                for gp in [AffineGamma::constant(1), AffineGamma::gamma_plus(1)] {
                    let r =
                        burchnall_residual(BurchnallFormula::Nabla, m, n, Some(gp), &f).unwrap();
                    assert!(r.is_zero(), "nabla m={m} n={n}: {r}");
                }
            }
        }
    }

    #[test]
    fn composition_property() {
        let cases: [(u32, u32, TriPoly); 3] = [
            (1, 1, &TriPoly::z() * &TriPoly::z()),
            (0, 3, TriPoly::zbar()),
            (2, 1, &TriPoly::z() * &TriPoly::zbar()),
        ];
        for (m, mp, f) in cases {
            let r = composition_residual(m, mp, &f).unwrap();
            assert!(r.is_zero(), "m={m} m'={mp}");
        }
    }

    #[test]
    fn corollary32_cases() {
        for (m, n) in [(2, 1), (1, 2), (0, 0), (3, 3), (4, 1)] {
            let r = corollary32_residual(m, n);
            assert!(r.is_zero(), "m={m} n={n}: {r}");
        }
    }

    #[test]
    fn chu_vandermonde_cases() {
        for m in 1..=10 {
            let r = chu_vandermonde_residual(m);
            assert!(r.is_zero(), "m={m}: {r}");
        }
    }

    #[test]
    fn hermite_corollary_cases() {
        for m in 0..4 {
            for n in 0..4 {
                let r = hermite_corollary_residual(m, n);
                assert!(r.is_zero(), "m={m} n={n}: {r}");
            }
        }
    }

    #[test]
    fn nielsen_cases() {
        assert!(nielsen_residual(NielsenKind::Nielsen1, 1, 1, 1, 1).is_zero());
        assert!(nielsen_residual(NielsenKind::Nielsen2, 2, 1, 1, 0).is_zero());
        assert!(nielsen_residual(NielsenKind::Eq41, 1, 0, 0, 2).is_zero());
        assert!(nielsen_residual(NielsenKind::Eq42, 2, 1, 0, 2).is_zero());
    }

    #[test]
    fn runge_small_cases() {
        let r = runge_residual(
            0,
            0,
            1,
            ComplexValue::new(0.3, 0.0),
            ComplexValue::new(-0.3, 0.0),
        )
        .unwrap();
        assert!(r.norm() <= 1e-12, "residual {r}");
        let r = runge_residual(
            1,
            1,
            2,
            ComplexValue::new(0.2, 0.1),
            ComplexValue::new(0.1, -0.3),
        )
        .unwrap();
        assert!(r.norm() <= 1e-9, "residual {r}");
        let r = runge_residual(
            0,
            2,
            1,
            ComplexValue::new(0.5, 0.0),
            ComplexValue::new(0.0, 0.4),
        )
        .unwrap();
        assert!(r.norm() <= 1e-9, "residual {r}");
        assert!(runge_residual(0, 0, 0, ComplexValue::new(0.1, 0.0), ComplexValue::new(0.1, 0.0)).is_err());
        assert!(runge_residual(0, 0, 1, ComplexValue::new(1.2, 0.0), ComplexValue::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn runge_remark_cases() {
        // γ=0: single zero multi-index
        assert_eq!(runge_remark_value(0, ComplexValue::new(0.9, 0.0)), 1.0);
        // γ=1 at z=0.6: 2|z|² + 2(1-|z|²) = 2
        assert!((runge_remark_value(1, ComplexValue::new(0.6, 0.0)) - 2.0).abs() < 1e-15);
        // γ=4: 16/24 = 2/3
        assert!(
            (runge_remark_value(4, ComplexValue::new(0.0, 0.3)) - 2.0 / 3.0).abs() < 1e-14
        );
        // exact variant: equals 2^γ/γ! identically
        for gamma in 0..=8u32 {
            let z = QComplex::from_ratio(2, 7, -1, 5);
            let got = runge_remark_exact(gamma, &z);
            let expect = BigRational::new(
                BigInt::from(2).pow(gamma),
                factorial_big(gamma),
            );
            assert_eq!(got, expect, "gamma={gamma}");
        }
    }
}
