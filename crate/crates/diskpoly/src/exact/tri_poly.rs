//! Polynomials in the formal variables `z`, `z̄`, `w` with [`GammaPoly`]
//! coefficients.
//!
//! `w` stands for `1 - z z̄` but is carried as a third variable: the
//! differential operators of the calculus multiply and divide by powers of
//! `1-|z|²`, and eager substitution would destroy that bookkeeping.
//! Derivatives therefore chain through `∂w/∂z = -z̄` and `∂w/∂z̄ = -z`.

use super::gamma_poly::GammaPoly;
use super::QComplex;
use crate::ComplexValue;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Monomial exponents `z^z_pow · z̄^zbar_pow · w^w_pow`.
///
/// Ordered graded-lexicographically with precedence `w > z > z̄`; the map
/// iteration order under this `Ord` is the canonical term order used for
/// serialization and snapshots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mono {
    pub z_pow: u32,
    pub zbar_pow: u32,
    pub w_pow: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { z_pow: 0, zbar_pow: 0, w_pow: 0 };

    pub fn new(z_pow: u32, zbar_pow: u32, w_pow: u32) -> Self {
        Mono { z_pow, zbar_pow, w_pow }
    }

    pub fn total_degree(&self) -> u32 {
        self.z_pow + self.zbar_pow + self.w_pow
    }

    fn key(&self) -> (u32, u32, u32, u32) {
        (self.total_degree(), self.w_pow, self.z_pow, self.zbar_pow)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `Q[γ][z, z̄, w]`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriPoly {
    terms: BTreeMap<Mono, GammaPoly>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn one() -> Self {
        TriPoly::monomial(Mono::ONE, GammaPoly::one())
    }

    pub fn constant(c: GammaPoly) -> Self {
        TriPoly::monomial(Mono::ONE, c)
    }

    /// The variable `z`.
    pub fn z() -> Self {
        TriPoly::monomial(Mono::new(1, 0, 0), GammaPoly::one())
    }

    /// The variable `z̄`.
    pub fn zbar() -> Self {
        TriPoly::monomial(Mono::new(0, 1, 0), GammaPoly::one())
    }

    /// The variable `w`.
    pub fn w() -> Self {
        TriPoly::monomial(Mono::new(0, 0, 1), GammaPoly::one())
    }

    pub fn monomial(m: Mono, c: GammaPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TriPoly { terms }
    }

    /// `z^i z̄^j w^k` with coefficient 1.
    pub fn powers(i: u32, j: u32, k: u32) -> Self {
        TriPoly::monomial(Mono::new(i, j, k), GammaPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GammaPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::total_degree).max().unwrap_or(0)
    }

    fn insert_add(&mut self, m: Mono, c: GammaPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn scale_gamma(&self, c: &GammaPoly) -> Self {
        if c.is_zero() {
            return TriPoly::zero();
        }
        let mut out = TriPoly::zero();
        for (m, a) in &self.terms {
            out.insert_add(*m, a * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        self.scale_gamma(&GammaPoly::constant(c.clone()))
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale_gamma(&GammaPoly::from_int(c))
    }

    /// Multiply by `z^i z̄^j w^k`.
    pub fn mul_powers(&self, i: u32, j: u32, k: u32) -> Self {
        let mut out = TriPoly::zero();
        for (m, a) in &self.terms {
            out.insert_add(
                Mono::new(m.z_pow + i, m.zbar_pow + j, m.w_pow + k),
                a.clone(),
            );
        }
        out
    }

    /// Substitute γ → γ + delta in every coefficient.
    pub fn shift_gamma(&self, delta: i64) -> Self {
        if delta == 0 {
            return self.clone();
        }
        let mut out = TriPoly::zero();
        for (m, a) in &self.terms {
            out.insert_add(*m, a.shift(delta));
        }
        out
    }

    /// Swap the roles of `z` and `z̄` (conjugation of the variables).
    pub fn swap_vars(&self) -> Self {
        let mut out = TriPoly::zero();
        for (m, a) in &self.terms {
            out.insert_add(Mono::new(m.zbar_pow, m.z_pow, m.w_pow), a.clone());
        }
        out
    }

    /// Full derivative ∂/∂z, chaining through `∂w/∂z = -z̄`.
    pub fn d_dz(&self) -> Self {
        let mut out = TriPoly::zero();
        for (m, a) in &self.terms {
            if m.z_pow > 0 {
                out.insert_add(
                    Mono::new(m.z_pow - 1, m.zbar_pow, m.w_pow),
                    a.scale(&BigRational::from_integer(m.z_pow.into())),
                );
            }
            if m.w_pow > 0 {
                out.insert_add(
                    Mono::new(m.z_pow, m.zbar_pow + 1, m.w_pow - 1),
                    a.scale(&BigRational::from_integer((-i64::from(m.w_pow)).into())),
                );
            }
        }
        out
    }

    /// Full derivative ∂/∂z̄, chaining through `∂w/∂z̄ = -z`.
    pub fn d_dzbar(&self) -> Self {
        let mut out = TriPoly::zero();
        for (m, a) in &self.terms {
            if m.zbar_pow > 0 {
                out.insert_add(
                    Mono::new(m.z_pow, m.zbar_pow - 1, m.w_pow),
                    a.scale(&BigRational::from_integer(m.zbar_pow.into())),
                );
            }
            if m.w_pow > 0 {
                out.insert_add(
                    Mono::new(m.z_pow + 1, m.zbar_pow, m.w_pow - 1),
                    a.scale(&BigRational::from_integer((-i64::from(m.w_pow)).into())),
                );
            }
        }
        out
    }

    /// Substitute `w := 1 - z z̄`, returning the bivariate normal form
    /// (every surviving monomial has `w_pow = 0`).
    pub fn subst_w(&self) -> Self {
        let mut out = TriPoly::zero();
        for (m, a) in &self.terms {
            if m.w_pow == 0 {
                out.insert_add(*m, a.clone());
                continue;
            }
            // (1 - z z̄)^k expanded binomially
            let k = m.w_pow;
            let mut binom = BigRational::from_integer(1.into());
            for t in 0..=k {
                if t > 0 {
                    binom = &binom * BigRational::from_integer((k - t + 1).into())
                        / BigRational::from_integer(t.into());
                }
                let sign = if t % 2 == 0 { 1 } else { -1 };
                let c = a.scale(&(&binom * BigRational::from_integer(sign.into())));
                out.insert_add(Mono::new(m.z_pow + t, m.zbar_pow + t, 0), c);
            }
        }
        out
    }

    /// True when every monomial carries at least `w^k`.
    pub fn divisible_by_w(&self, k: u32) -> bool {
        self.terms.keys().all(|m| m.w_pow >= k)
    }

    /// Divide by `w^k`; caller must have checked divisibility.
    pub fn div_w(&self, k: u32) -> Self {
        debug_assert!(self.divisible_by_w(k));
        let mut out = TriPoly::zero();
        for (m, a) in &self.terms {
            out.insert_add(Mono::new(m.z_pow, m.zbar_pow, m.w_pow - k), a.clone());
        }
        out
    }

    /// Exact evaluation at rational γ and exact complex z (with `w = 1 - |z|²`).
    pub fn eval_exact(&self, gamma: &BigRational, z: &QComplex) -> QComplex {
        let zbar = z.conj();
        let w = &QComplex::one() - &(z * &zbar);
        let mut acc = QComplex::zero();
        for (m, a) in &self.terms {
            let mut t = QComplex::real(a.eval(gamma));
            t = &t * &z.pow(m.z_pow);
            t = &t * &zbar.pow(m.zbar_pow);
            t = &t * &w.pow(m.w_pow);
            acc = &acc + &t;
        }
        acc
    }

    /// Floating evaluation at real γ and complex z (with `w = 1 - |z|²`).
    pub fn eval_f64(&self, gamma: f64, z: ComplexValue) -> ComplexValue {
        let zbar = z.conj();
        let w = ComplexValue::new(1.0 - (z * zbar).re, 0.0);
        let mut acc = ComplexValue::new(0.0, 0.0);
        for (m, a) in &self.terms {
            acc += a.eval_f64(gamma)
                * z.powu(m.z_pow)
                * zbar.powu(m.zbar_pow)
                * w.powu(m.w_pow);
        }
        acc
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (m, a) in &rhs.terms {
            out.insert_add(*m, a.clone());
        }
        out
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (m, a) in &rhs.terms {
            out.insert_add(*m, -a);
        }
        out
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_add(
                    Mono::new(
                        ma.z_pow + mb.z_pow,
                        ma.zbar_pow + mb.zbar_pow,
                        ma.w_pow + mb.w_pow,
                    ),
                    ca * cb,
                );
            }
        }
        out
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        let mut out = TriPoly::zero();
        for (m, a) in &self.terms {
            out.insert_add(*m, -a);
        }
        out
    }
}

impl fmt::Display for TriPoly {
    /// Canonical text form: `coeff(g) * z^i zbar^j w^k` terms, leading
    /// (highest-order) term first. Byte-identical for equal polynomials.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(
                f,
                "({c}) * z^{} zbar^{} w^{}",
                m.z_pow, m.zbar_pow, m.w_pow
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_chains_through_w() {
        // d/dz (w) = -z̄,  d/dz̄ (w) = -z
        assert_eq!(TriPoly::w().d_dz(), -&TriPoly::zbar());
        assert_eq!(TriPoly::w().d_dzbar(), -&TriPoly::z());
        // d/dz (z w) = w - z z̄
        let p = &TriPoly::z() * &TriPoly::w();
        let expect = &TriPoly::w() - &(&TriPoly::z() * &TriPoly::zbar());
        assert_eq!(p.d_dz(), expect);
    }

    #[test]
    fn subst_w_examples() {
        // w -> 1 - z z̄
        let one_minus = &TriPoly::one() - &(&TriPoly::z() * &TriPoly::zbar());
        assert_eq!(TriPoly::w().subst_w(), one_minus);
        // w z - z -> -z² z̄
        let p = &(&TriPoly::w() * &TriPoly::z()) - &TriPoly::z();
        let expect = -&TriPoly::powers(2, 1, 0);
        assert_eq!(p.subst_w(), expect);
        assert_eq!(TriPoly::zero().subst_w(), TriPoly::zero());
    }

    #[test]
    fn term_order_is_graded_lex_w_z_zbar() {
        // total degree dominates; within a degree w beats z beats z̄
        let p = &(&TriPoly::w() + &TriPoly::z()) + &TriPoly::zbar();
        let monos: Vec<_> = p.terms().map(|(m, _)| *m).collect();
        assert_eq!(
            monos,
            vec![Mono::new(0, 1, 0), Mono::new(1, 0, 0), Mono::new(0, 0, 1)]
        );
        assert_eq!(
            p.to_string(),
            "(1) * z^0 zbar^0 w^1 + (1) * z^1 zbar^0 w^0 + (1) * z^0 zbar^1 w^0"
        );
    }

    #[test]
    fn display_deterministic_round_trip() {
        let p = &TriPoly::powers(2, 1, 0).scale_gamma(&GammaPoly::poch_gamma(1, 1))
            - &TriPoly::w();
        let s1 = p.to_string();
        let s2 = p.clone().to_string();
        assert_eq!(s1, s2);
        assert_eq!(s1, "(g + 1) * z^2 zbar^1 w^0 + (-1) * z^0 zbar^0 w^1");
    }
}
