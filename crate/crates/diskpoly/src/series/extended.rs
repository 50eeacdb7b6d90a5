//! Dyadic big-floats for the two summation checks whose double series only
//! converge in iterated order with massive intra-row cancellation (the terms
//! reach ~2^{1.13 m} inside row m while the row sums stay O(1)); f64 loses
//! everything past |z| ≈ 0.5 there. Values are `mant · 2^exp` with the
//! mantissa truncated to [`PRECISION`] bits after each operation.

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

/// Working precision in bits. Rows needed on the acceptance grid stay below
/// ~800, so the worst cancellation is ~2^900 and this leaves a wide margin.
pub const PRECISION: u64 = 1600;

#[derive(Debug, Clone)]
pub struct ExtFloat {
    mant: BigInt,
    exp: i64,
}

impl ExtFloat {
    pub fn zero() -> Self {
        ExtFloat { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_f64(x: f64) -> Self {
        debug_assert!(x.is_finite());
        if x == 0.0 {
            return ExtFloat::zero();
        }
        // f64 is mant · 2^e with |mant| < 2^53
        let (m, e, s) = {
            let bits = x.abs().to_bits();
            let exponent = ((bits >> 52) & 0x7ff) as i64;
            let fraction = bits & 0xf_ffff_ffff_ffff;
            if exponent == 0 {
                (fraction, -1074i64, x.is_sign_negative())
            } else {
                (fraction | (1 << 52), exponent - 1075, x.is_sign_negative())
            }
        };
        let mut mant = BigInt::from(m);
        if s {
            mant = -mant;
        }
        ExtFloat { mant, exp: e }
    }

    pub fn from_i64(x: i64) -> Self {
        ExtFloat { mant: BigInt::from(x), exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    fn round(mut self) -> Self {
        let bits = self.mant.bits();
        if bits > PRECISION {
            let drop = (bits - PRECISION) as u64;
            self.mant >>= drop;
            self.exp += drop as i64;
        }
        self
    }

    pub fn add(&self, rhs: &ExtFloat) -> ExtFloat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.exp <= rhs.exp { (self, rhs) } else { (rhs, self) };
        let shift = (hi.exp - lo.exp) as u64;
        // aligning the larger exponent down; cap the shift so a huge gap
        // degenerates to the dominant operand
        if shift > 4 * PRECISION {
            return hi.clone();
        }
        let mant = (&hi.mant << shift) + &lo.mant;
        ExtFloat { mant, exp: lo.exp }.round()
    }

    pub fn neg(&self) -> ExtFloat {
        ExtFloat { mant: -&self.mant, exp: self.exp }
    }

    pub fn sub(&self, rhs: &ExtFloat) -> ExtFloat {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &ExtFloat) -> ExtFloat {
        if self.is_zero() || rhs.is_zero() {
            return ExtFloat::zero();
        }
        ExtFloat {
            mant: &self.mant * &rhs.mant,
            exp: self.exp + rhs.exp,
        }
        .round()
    }

    /// Quotient at working precision.
    pub fn div(&self, rhs: &ExtFloat) -> ExtFloat {
        debug_assert!(!rhs.is_zero());
        if self.is_zero() {
            return ExtFloat::zero();
        }
        let scale = PRECISION + rhs.mant.bits();
        let mant = (&self.mant << scale) / &rhs.mant;
        ExtFloat {
            mant,
            exp: self.exp - rhs.exp - scale as i64,
        }
        .round()
    }

    /// log2 of the magnitude, -inf for zero; used for tail tests.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.mant.bits() as f64 + self.exp as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        // keep 63 magnitude bits so the signed value always fits an i64
        let (mant, exp) = if bits > 63 {
            let drop = bits - 63;
            ((&self.mant >> drop).to_i64(), self.exp + drop as i64)
        } else {
            (self.mant.to_i64(), self.exp)
        };
        match mant {
            Some(m) => m as f64 * 2f64.powi(exp.clamp(-2000, 2000) as i32),
            None => {
                let sign = if self.mant.sign() == Sign::Minus { -1.0 } else { 1.0 };
                sign * f64::INFINITY
            }
        }
    }
}

/// Complex number over [`ExtFloat`].
#[derive(Debug, Clone)]
pub struct ExtComplex {
    pub re: ExtFloat,
    pub im: ExtFloat,
}

impl ExtComplex {
    pub fn zero() -> Self {
        ExtComplex { re: ExtFloat::zero(), im: ExtFloat::zero() }
    }

    pub fn real(x: ExtFloat) -> Self {
        ExtComplex { re: x, im: ExtFloat::zero() }
    }

    pub fn add(&self, rhs: &ExtComplex) -> ExtComplex {
        ExtComplex {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &ExtComplex) -> ExtComplex {
        ExtComplex {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn mul(&self, rhs: &ExtComplex) -> ExtComplex {
        ExtComplex {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn scale(&self, c: &ExtFloat) -> ExtComplex {
        ExtComplex {
            re: self.re.mul(c),
            im: self.im.mul(c),
        }
    }

    pub fn log2_abs(&self) -> f64 {
        self.re.log2_abs().max(self.im.log2_abs())
    }

    pub fn to_c64(&self) -> crate::ComplexValue {
        crate::ComplexValue::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_arithmetic() {
        let a = ExtFloat::from_f64(1.5);
        let b = ExtFloat::from_f64(-0.25);
        assert_eq!(a.add(&b).to_f64(), 1.25);
        assert_eq!(a.mul(&b).to_f64(), -0.375);
        assert!((a.div(&b).to_f64() + 6.0).abs() < 1e-15);
        assert_eq!(ExtFloat::from_i64(7).to_f64(), 7.0);
    }

    #[test]
    fn cancellation_survives_well_past_f64() {
        // (2^200 + 1) - 2^200 = 1, exactly representable at 1600 bits
        let big = {
            let mut x = ExtFloat::from_i64(1);
            let two = ExtFloat::from_i64(2);
            for _ in 0..200 {
                x = x.mul(&two);
            }
            x
        };
        let one = ExtFloat::from_i64(1);
        let r = big.add(&one).sub(&big);
        assert_eq!(r.to_f64(), 1.0);
    }

    #[test]
    fn log2_abs_tracks_magnitude() {
        let x = ExtFloat::from_f64(1024.0);
        assert!((x.log2_abs() - 11.0).abs() <= 1.0);
        assert_eq!(ExtFloat::zero().log2_abs(), f64::NEG_INFINITY);
    }
}
