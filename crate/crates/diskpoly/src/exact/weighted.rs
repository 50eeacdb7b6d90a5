//! Weighted expressions `w^{g·γ + t} · p(z, z̄, w)` with `g ∈ {-1, 0, +1}`.
//!
//! This is the closure of polynomials under the paper-style operators: the
//! derivative rule
//!
//! ```text
//! ∂/∂z ( w^{γ+t} p ) = w^{γ+t-1} ( -(γ+t) z̄ p + w ∂p/∂z )
//! ```
//!
//! keeps the γ-exponent intact while the offset drops by one, and products
//! may cancel a `w^{-γ}` prefactor against a `w^{+γ}` weight. Exponents
//! `w^{2γ}` have no use in the calculus and are rejected.

use super::gamma_poly::GammaPoly;
use super::tri_poly::TriPoly;
use super::QComplex;
use crate::{ComplexValue, Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// `w^{gamma_coeff·γ + offset} · body`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedExpr {
    gamma_coeff: i8,
    offset: i64,
    body: TriPoly,
}

impl WeightedExpr {
    /// Plain polynomial, `w^0 · p`.
    pub fn poly(body: TriPoly) -> Self {
        WeightedExpr { gamma_coeff: 0, offset: 0, body }
    }

    /// `w^{γ+offset} · body`.
    pub fn gamma_weighted(offset: i64, body: TriPoly) -> Self {
        WeightedExpr { gamma_coeff: 1, offset, body }
    }

    /// General form; `gamma_coeff` must be -1, 0 or +1.
    pub fn with_exponent(gamma_coeff: i8, offset: i64, body: TriPoly) -> Self {
        assert!(
            gamma_coeff.abs() <= 1,
            "gamma exponent coefficient out of range"
        );
        WeightedExpr { gamma_coeff, offset, body }
    }

    pub fn gamma_coeff(&self) -> i8 {
        self.gamma_coeff
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn body(&self) -> &TriPoly {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// The exponent `g·γ + t` as a polynomial in γ.
    fn exponent(&self) -> GammaPoly {
        GammaPoly::linear(
            BigRational::from_integer(BigInt::from(self.offset)),
            BigRational::from_integer(BigInt::from(self.gamma_coeff)),
        )
    }

    /// Sum, aligned to the smaller offset: `w^{e} p + w^{e+Δ} q = w^{e}(p + w^Δ q)`.
    ///
    /// Zero operands are absorbed; otherwise both sides must carry the same
    /// γ-coefficient.
    pub fn add(&self, rhs: &WeightedExpr) -> Result<WeightedExpr> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.gamma_coeff != rhs.gamma_coeff {
            return Err(Error::Unsupported(
                "cannot add weights with different gamma exponents".into(),
            ));
        }
        let t = self.offset.min(rhs.offset);
        let lift = |e: &WeightedExpr| -> TriPoly {
            let d = u32::try_from(e.offset - t).expect("offset delta fits u32");
            e.body.mul_powers(0, 0, d)
        };
        Ok(WeightedExpr {
            gamma_coeff: self.gamma_coeff,
            offset: t,
            body: &lift(self) + &lift(rhs),
        })
    }

    pub fn sub(&self, rhs: &WeightedExpr) -> Result<WeightedExpr> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> WeightedExpr {
        WeightedExpr {
            gamma_coeff: self.gamma_coeff,
            offset: self.offset,
            body: -&self.body,
        }
    }

    /// Product; exponents add. Rejected when the combined γ-coefficient
    /// leaves {-1, 0, +1} (that would need `w^{2γ}`).
    pub fn mul(&self, rhs: &WeightedExpr) -> Result<WeightedExpr> {
        let g = self.gamma_coeff + rhs.gamma_coeff;
        if g.abs() > 1 {
            return Err(Error::Unsupported(
                "product would need a w^(2*gamma) exponent".into(),
            ));
        }
        Ok(WeightedExpr {
            gamma_coeff: g,
            offset: self.offset + rhs.offset,
            body: &self.body * &rhs.body,
        })
    }

    /// Multiply by a plain polynomial (offset 0, no γ).
    pub fn mul_poly(&self, p: &TriPoly) -> WeightedExpr {
        WeightedExpr {
            gamma_coeff: self.gamma_coeff,
            offset: self.offset,
            body: &self.body * p,
        }
    }

    /// Multiply every coefficient by a γ-polynomial.
    pub fn scale_gamma(&self, c: &GammaPoly) -> WeightedExpr {
        WeightedExpr {
            gamma_coeff: self.gamma_coeff,
            offset: self.offset,
            body: self.body.scale_gamma(c),
        }
    }

    /// Multiply by `w^k` (k may be negative: the exponent absorbs it).
    pub fn mul_w_pow(&self, k: i64) -> WeightedExpr {
        WeightedExpr {
            gamma_coeff: self.gamma_coeff,
            offset: self.offset + k,
            body: self.body.clone(),
        }
    }

    /// ∂/∂z of `w^e p`: `w^{e-1} ( -e z̄ p + w ∂p/∂z )`, where `∂p/∂z`
    /// chains through `∂w/∂z = -z̄`.
    pub fn d_dz(&self) -> WeightedExpr {
        if self.gamma_coeff == 0 && self.offset == 0 {
            return WeightedExpr::poly(self.body.d_dz());
        }
        let e = self.exponent();
        let weight_term = (&self.body * &TriPoly::zbar()).scale_gamma(&-&e);
        let chain_term = self.body.d_dz().mul_powers(0, 0, 1);
        WeightedExpr {
            gamma_coeff: self.gamma_coeff,
            offset: self.offset - 1,
            body: &weight_term + &chain_term,
        }
    }

    /// ∂/∂z̄ of `w^e p`: `w^{e-1} ( -e z p + w ∂p/∂z̄ )`.
    pub fn d_dzbar(&self) -> WeightedExpr {
        if self.gamma_coeff == 0 && self.offset == 0 {
            return WeightedExpr::poly(self.body.d_dzbar());
        }
        let e = self.exponent();
        let weight_term = (&self.body * &TriPoly::z()).scale_gamma(&-&e);
        let chain_term = self.body.d_dzbar().mul_powers(0, 0, 1);
        WeightedExpr {
            gamma_coeff: self.gamma_coeff,
            offset: self.offset - 1,
            body: &weight_term + &chain_term,
        }
    }

    /// Fold the integer offset into the body and substitute `w := 1 - z z̄`,
    /// returning the canonical element of `Q[γ][z, z̄]`.
    ///
    /// With `drop_gamma_weight` the `w^{g·γ}` factor is discarded (legitimate
    /// when comparing two sides that carry the identical γ-weight); otherwise
    /// a nonzero γ-coefficient is an error. A negative offset is folded by
    /// dividing the body by `w^{-t}` when the body allows it.
    pub fn normalize(&self, drop_gamma_weight: bool) -> Result<TriPoly> {
        if self.is_zero() {
            return Ok(TriPoly::zero());
        }
        if self.gamma_coeff != 0 && !drop_gamma_weight {
            return Err(Error::Unsupported(
                "expression carries a symbolic gamma weight".into(),
            ));
        }
        let folded = if self.offset >= 0 {
            self.body
                .mul_powers(0, 0, u32::try_from(self.offset).expect("offset fits u32"))
        } else {
            let k = u32::try_from(-self.offset).expect("offset fits u32");
            if !self.body.divisible_by_w(k) {
                return Err(Error::Unsupported(
                    "negative w offset not divisible out of the body".into(),
                ));
            }
            self.body.div_w(k)
        };
        Ok(folded.subst_w())
    }

    /// True iff the two expressions are the same element of the calculus:
    /// offsets are aligned by the integer difference and the difference of
    /// the normalized bodies must vanish in `Q[γ][z, z̄]`.
    pub fn exact_equal(a: &WeightedExpr, b: &WeightedExpr) -> Result<bool> {
        if a.is_zero() && b.is_zero() {
            return Ok(true);
        }
        if a.is_zero() || b.is_zero() {
            // compare against literal zero: the weight factor never vanishes
            let nz = if a.is_zero() { b } else { a };
            return Ok(nz.normalize(true)?.is_zero());
        }
        if a.gamma_coeff != b.gamma_coeff {
            return Err(Error::Unsupported(
                "offsets not alignable: different gamma exponents".into(),
            ));
        }
        let diff = a.sub(b)?;
        Ok(diff.normalize(true)?.is_zero())
    }

    /// Exact value at rational γ and exact complex z.
    ///
    /// The exponent `g·γ + t` must evaluate to an integer (fractional powers
    /// of `w` have no exact representation here); negative integer exponents
    /// are fine away from the unit circle.
    pub fn eval_exact(&self, gamma: &BigRational, z: &QComplex) -> Result<QComplex> {
        let e = &(gamma * BigRational::from_integer(BigInt::from(self.gamma_coeff)))
            + &BigRational::from_integer(BigInt::from(self.offset));
        if !e.is_integer() {
            return Err(Error::Unsupported(format!(
                "fractional w exponent {e} in exact evaluation"
            )));
        }
        let e = e.to_integer().to_i64().ok_or_else(|| {
            Error::Unsupported("w exponent out of range".into())
        })?;
        let w = &QComplex::one() - &QComplex::real(z.norm_sqr());
        let weight = if e >= 0 {
            w.pow(u32::try_from(e).expect("exponent fits u32"))
        } else {
            let inv = w.inv().ok_or_else(|| {
                Error::Domain("negative w power at |z| = 1".into())
            })?;
            inv.pow(u32::try_from(-e).expect("exponent fits u32"))
        };
        Ok(&weight * &self.body.eval_exact(gamma, z))
    }

    /// Floating value at real γ and complex z (weight via `powf`; needs
    /// `1 - |z|² > 0` when the exponent is not an integer).
    pub fn eval_f64(&self, gamma: f64, z: ComplexValue) -> ComplexValue {
        let e = self.gamma_coeff as f64 * gamma + self.offset as f64;
        let w = 1.0 - z.norm_sqr();
        self.body.eval_f64(gamma, z) * w.powf(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn add_aligns_offsets() {
        // (t=1, p=1) + (t=0, p=1) -> (t=0, p=w+1)
        let a = WeightedExpr::gamma_weighted(1, TriPoly::one());
        let b = WeightedExpr::gamma_weighted(0, TriPoly::one());
        let s = a.add(&b).unwrap();
        assert_eq!(s.offset(), 0);
        assert_eq!(s.body(), &(&TriPoly::w() + &TriPoly::one()));
        // additive identity keeps the nonzero side untouched
        let z = WeightedExpr::gamma_weighted(0, TriPoly::zero());
        let kept = a.add(&z).unwrap();
        assert_eq!(kept.offset(), 1);
        // exact cancellation
        let c = a.sub(&a).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn mul_rejects_double_gamma() {
        let a = WeightedExpr::gamma_weighted(0, TriPoly::one());
        assert!(a.mul(&a).is_err());
        // +γ times -γ cancels to a plain exponent
        let b = WeightedExpr::with_exponent(-1, 0, TriPoly::one());
        let p = a.mul(&b).unwrap();
        assert_eq!(p.gamma_coeff(), 0);
    }

    #[test]
    fn mul_by_w_is_offset_bump() {
        let a = WeightedExpr::gamma_weighted(2, TriPoly::one());
        let via_offset = a.mul_w_pow(1);
        let via_body = a.mul_poly(&TriPoly::w());
        assert!(WeightedExpr::exact_equal(&via_offset, &via_body).unwrap());
    }

    #[test]
    fn d_dz_of_weight_is_minus_gamma_zbar() {
        // ∂/∂z (w^γ) = w^{γ-1} · (-γ z̄)
        let e = WeightedExpr::gamma_weighted(0, TriPoly::one());
        let d = e.d_dz();
        assert_eq!(d.offset(), -1);
        let expect = TriPoly::zbar().scale_gamma(&-&GammaPoly::gamma());
        assert_eq!(d.body(), &expect);
        // ∂/∂z (w^γ z) = w^{γ-1} (w - γ z z̄)
        let e = WeightedExpr::gamma_weighted(0, TriPoly::z());
        let d = e.d_dz();
        let expect = &TriPoly::w()
            - &(&TriPoly::z() * &TriPoly::zbar()).scale_gamma(&GammaPoly::gamma());
        assert_eq!(d.body(), &expect);
        // the z̄ rule mirrors it
        let e = WeightedExpr::gamma_weighted(0, TriPoly::one());
        let d = e.d_dzbar();
        let expect = TriPoly::z().scale_gamma(&-&GammaPoly::gamma());
        assert_eq!(d.body(), &expect);
    }

    #[test]
    fn normalize_and_equality() {
        // (t=0, p=w) -> 1 - z z̄
        let e = WeightedExpr::poly(TriPoly::w());
        let n = e.normalize(false).unwrap();
        assert_eq!(n, (&TriPoly::one() - &TriPoly::powers(1, 1, 0)));
        // w^{γ+1}·1 equals w^{γ}·w
        let a = WeightedExpr::gamma_weighted(1, TriPoly::one());
        let b = WeightedExpr::gamma_weighted(0, TriPoly::w());
        assert!(WeightedExpr::exact_equal(&a, &b).unwrap());
        let c = WeightedExpr::gamma_weighted(0, TriPoly::z());
        let d = WeightedExpr::gamma_weighted(0, TriPoly::zbar());
        assert!(!WeightedExpr::exact_equal(&c, &d).unwrap());
        // unalignable gamma exponents error out
        let e1 = WeightedExpr::with_exponent(-1, 0, TriPoly::one());
        assert!(WeightedExpr::exact_equal(&a, &e1).is_err());
    }

    #[test]
    fn eval_exact_cases() {
        // w^{γ+1}·1 at γ=1, z=1/2: (3/4)² = 9/16
        let e = WeightedExpr::gamma_weighted(1, TriPoly::one());
        let v = e
            .eval_exact(&BigRational::one(), &QComplex::from_ratio(1, 2, 0, 1))
            .unwrap();
        assert_eq!(v.re, q(9, 16));
        assert!(v.im.is_zero());
        // z z̄ at γ=0, z=1/2 -> 1/4
        let e = WeightedExpr::poly(TriPoly::powers(1, 1, 0));
        let v = e
            .eval_exact(&BigRational::zero(), &QComplex::from_ratio(1, 2, 0, 1))
            .unwrap();
        assert_eq!(v.re, q(1, 4));
        // fractional exponent rejected
        let e = WeightedExpr::gamma_weighted(0, TriPoly::one());
        assert!(e.eval_exact(&q(1, 2), &QComplex::zero()).is_err());
    }
}
