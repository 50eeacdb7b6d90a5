//! Univariate polynomials in the parameter γ with arbitrary-precision
//! rational coefficients.
//!
//! Identity verification keeps γ fully symbolic: coefficients such as
//! `C_{m,n}^γ = (γ+m+1)_n` live here, so one exact zero-check covers every
//! admissible γ at once.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in γ, coefficients indexed by power, no trailing zeros stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GammaPoly {
    coeffs: Vec<BigRational>,
}

impl GammaPoly {
    pub fn zero() -> Self {
        GammaPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        GammaPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = GammaPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_int(c: i64) -> Self {
        GammaPoly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable γ itself.
    pub fn gamma() -> Self {
        GammaPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    /// `c0 + c1·γ`.
    pub fn linear(c0: BigRational, c1: BigRational) -> Self {
        let mut p = GammaPoly { coeffs: vec![c0, c1] };
        p.trim();
        p
    }

    /// `γ + a` for integer `a`.
    pub fn gamma_plus(a: i64) -> Self {
        GammaPoly::linear(
            BigRational::from_integer(BigInt::from(a)),
            BigRational::one(),
        )
    }

    /// Rising factorial `(γ + a)_n = ∏_{i=0}^{n-1} (γ + a + i)`.
    pub fn poch_gamma(a: i64, n: u32) -> Self {
        let mut acc = GammaPoly::one();
        for i in 0..n as i64 {
            acc = &acc * &GammaPoly::gamma_plus(a + i);
        }
        acc
    }

    /// Rising factorial of an arbitrary polynomial base, `(p)_n`.
    pub fn poch_of(base: &GammaPoly, n: u32) -> Self {
        let mut acc = GammaPoly::one();
        for i in 0..n as i64 {
            acc = &acc * &(base + &GammaPoly::from_int(i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return GammaPoly::zero();
        }
        GammaPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Horner evaluation at a rational γ.
    pub fn eval(&self, gamma: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * gamma + c;
        }
        acc
    }

    /// Horner evaluation at a floating γ.
    pub fn eval_f64(&self, gamma: f64) -> f64 {
        let mut acc = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc * gamma + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Substitution γ → γ + delta (integer shift), by Horner composition.
    pub fn shift(&self, delta: i64) -> Self {
        if delta == 0 || self.is_zero() {
            return self.clone();
        }
        let lin = GammaPoly::gamma_plus(delta);
        let mut acc = GammaPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &GammaPoly::constant(c.clone());
        }
        acc
    }
}

impl Add for &GammaPoly {
    type Output = GammaPoly;
    fn add(self, rhs: &GammaPoly) -> GammaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        let mut p = GammaPoly { coeffs };
        p.trim();
        p
    }
}

impl Sub for &GammaPoly {
    type Output = GammaPoly;
    fn sub(self, rhs: &GammaPoly) -> GammaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        let mut p = GammaPoly { coeffs };
        p.trim();
        p
    }
}

impl Mul for &GammaPoly {
    type Output = GammaPoly;
    fn mul(self, rhs: &GammaPoly) -> GammaPoly {
        if self.is_zero() || rhs.is_zero() {
            return GammaPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = GammaPoly { coeffs };
        p.trim();
        p
    }
}

impl Neg for &GammaPoly {
    type Output = GammaPoly;
    fn neg(self) -> GammaPoly {
        GammaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for GammaPoly {
    /// Deterministic text form, highest power first, e.g. `g^2 + 3*g - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = mag.is_one();
            match k {
                0 => write!(f, "{}", fmt_rational(&mag))?,
                1 => {
                    if coeff_is_one {
                        write!(f, "g")?;
                    } else {
                        write!(f, "{}*g", fmt_rational(&mag))?;
                    }
                }
                _ => {
                    if coeff_is_one {
                        write!(f, "g^{k}")?;
                    } else {
                        write!(f, "{}*g^{k}", fmt_rational(&mag))?;
                    }
                }
            }
        }
        Ok(())
    }
}
