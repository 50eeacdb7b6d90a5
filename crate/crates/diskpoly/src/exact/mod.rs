//! Exact computer-algebra layer: arbitrary-precision rationals, polynomials
//! in γ, trivariate polynomials in `(z, z̄, w)`, and the weighted-expression
//! calculus `w^{γ+t}·p` closed under `∂/∂z` and `∂/∂z̄`.

mod gamma_poly;
mod tri_poly;
mod weighted;

pub use gamma_poly::GammaPoly;
pub use num_rational::BigRational;
pub use tri_poly::{Mono, TriPoly};
pub use weighted::WeightedExpr;

use crate::ComplexValue;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Complex number with exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl QComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        QComplex { re, im }
    }

    pub fn zero() -> Self {
        QComplex::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        QComplex::new(BigRational::one(), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        QComplex::new(re, BigRational::zero())
    }

    /// `(a/b) + (c/d)i` from integer numerators and denominators.
    pub fn from_ratio(a: i64, b: i64, c: i64, d: i64) -> Self {
        QComplex::new(
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        QComplex::new(self.re.clone(), -&self.im)
    }

    /// `|z|²` as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QComplex::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(QComplex::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn to_c64(&self) -> ComplexValue {
        ComplexValue::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &QComplex {
    type Output = QComplex;
    fn add(self, rhs: &QComplex) -> QComplex {
        QComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &QComplex {
    type Output = QComplex;
    fn sub(self, rhs: &QComplex) -> QComplex {
        QComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &QComplex {
    type Output = QComplex;
    fn mul(self, rhs: &QComplex) -> QComplex {
        QComplex::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Neg for &QComplex {
    type Output = QComplex;
    fn neg(self) -> QComplex {
        QComplex::new(-&self.re, -&self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qcomplex_field_ops() {
        let z = QComplex::from_ratio(1, 2, -1, 3); // 1/2 - i/3
        let prod = &z * &z.conj();
        assert_eq!(prod.im, BigRational::zero());
        assert_eq!(prod.re, z.norm_sqr());
        let inv = z.inv().unwrap();
        let unit = &z * &inv;
        assert_eq!(unit, QComplex::one());
        assert_eq!(QComplex::zero().inv(), None);
    }
}
