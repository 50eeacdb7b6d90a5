//! Numerically robust scalar primitives shared by the numeric engines:
//! Pochhammer symbols, factorials, binomial/multinomial coefficients and
//! compensated summation.

use crate::ComplexValue;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Magnitude at which the running Pochhammer product switches to the
/// log-gamma path; the §6–§8 style sums reach indices where the direct
/// product overflows.
const POCHHAMMER_OVERFLOW: f64 = 1e300;

/// Rising factorial `(a)_n = a(a+1)···(a+n-1)`, with `(a)_0 = 1`.
///
/// Exact zero is detected first (a nonpositive integer base whose product
/// window crosses zero), so terminating hypergeometric series terminate
/// exactly. The direct product is used while it stays below `1e300` in
/// magnitude; past that the value is assembled from log-gamma with explicit
/// sign tracking.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if is_nonpositive_integer(a) && a + (n as f64) - 1.0 >= -0.5 {
        // the window a, a+1, ..., a+n-1 contains 0
        return 0.0;
    }
    let mut acc = 1.0f64;
    for k in 0..n {
        acc *= a + k as f64;
        if acc.abs() > POCHHAMMER_OVERFLOW {
            return pochhammer_ln(a, n).into_f64();
        }
    }
    acc
}

/// `(a)_n` via log-gamma, as `(magnitude ln, sign)`.
///
/// Usable whenever the exact-zero case is excluded; negative bases are
/// reduced with the gamma reflection so the sign is carried explicitly.
pub fn pochhammer_ln(a: f64, n: u32) -> SignedLn {
    if n == 0 {
        return SignedLn { ln_abs: 0.0, sign: 1.0 };
    }
    let top = ln_abs_gamma_signed(a + n as f64);
    let bot = ln_abs_gamma_signed(a);
    SignedLn {
        ln_abs: top.ln_abs - bot.ln_abs,
        sign: top.sign * bot.sign,
    }
}

/// A real number stored as `sign * exp(ln_abs)`.
#[derive(Debug, Clone, Copy)]
pub struct SignedLn {
    pub ln_abs: f64,
    pub sign: f64,
}

impl SignedLn {
    pub fn into_f64(self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

fn is_nonpositive_integer(a: f64) -> bool {
    a <= 0.5 && a == a.round()
}

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7, 9 coefficients).
pub fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    debug_assert!(x > 0.0);
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 0.5 {
        // reflection keeps the Lanczos argument above 1/2
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEF[0];
    for (i, c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// `ln |Γ(x)|` with the sign of `Γ(x)`, valid for any non-pole `x`.
fn ln_abs_gamma_signed(x: f64) -> SignedLn {
    if x > 0.0 {
        return SignedLn { ln_abs: ln_gamma(x), sign: 1.0 };
    }
    // Γ(x) = π / (sin(πx) Γ(1-x)); sign follows sin(πx)
    let s = (std::f64::consts::PI * x).sin();
    SignedLn {
        ln_abs: std::f64::consts::PI.ln() - s.abs().ln() - ln_gamma(1.0 - x),
        sign: s.signum(),
    }
}

/// `n!` as f64; infinite past 170.
pub fn factorial(n: u32) -> f64 {
    pochhammer(1.0, n)
}

/// Exact `n!` for the exact-algebra layer.
pub fn factorial_big(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Exact multinomial coefficient `total! / ∏ parts!`.
///
/// Errors when the parts do not sum to `total`.
pub fn multinomial(total: u32, parts: &[u32]) -> crate::Result<BigRational> {
    let sum: u64 = parts.iter().map(|&p| p as u64).sum();
    if sum != total as u64 {
        return Err(crate::Error::Domain(format!(
            "multinomial parts sum to {sum}, expected {total}"
        )));
    }
    let mut denom = BigInt::one();
    for &p in parts {
        denom *= factorial_big(p);
    }
    Ok(BigRational::new(factorial_big(total), denom))
}

/// Compensated (Neumaier) summation of a complex sequence.
///
/// The result is within 2 ulp of the exact sum of the given floating terms;
/// cancellation between terms survives the compensation.
pub fn stable_sum<I: IntoIterator<Item = ComplexValue>>(terms: I) -> ComplexValue {
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for t in terms {
        re.add(t.re);
        im.add(t.im);
    }
    ComplexValue::new(re.value(), im.value())
}

/// Neumaier variant of Kahan summation for a single real accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn pochhammer_basics() {
        assert_eq!(pochhammer(2.5, 0), 1.0);
        assert_eq!(pochhammer(1.0, 5), 120.0); // (1)_n = n!
        assert_eq!(pochhammer(3.0, 2), 12.0);
    }

    #[test]
    fn pochhammer_recurrence_property() {
        let bases = [-3.5, -1.0, -0.5, 0.0, 0.3, 1.0, 2.5, 7.0];
        for &a in &bases {
            for n in 0..50u32 {
                let lhs = pochhammer(a, n + 1);
                let rhs = pochhammer(a, n) * (a + n as f64);
                let scale = lhs.abs().max(rhs.abs()).max(1.0);
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * scale,
                    "a={a} n={n}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn pochhammer_terminates_at_negative_integers() {
        // (-k)_n = 0 for 0 <= k < n
        for k in 0..6u32 {
            for n in (k + 1)..10 {
                assert_eq!(pochhammer(-(k as f64), n), 0.0, "k={k} n={n}");
            }
        }
        // but (-5)_3 = -5*-4*-3 = -60 is not zero
        assert_eq!(pochhammer(-5.0, 3), -60.0);
    }

    #[test]
    fn pochhammer_log_path_matches_direct() {
        for &a in &[0.25, 1.0, 3.7, 10.0, -4.5] {
            for &n in &[1u32, 5, 20, 80] {
                let direct = pochhammer(a, n);
                let logged = pochhammer_ln(a, n).into_f64();
                if direct.is_finite() && direct != 0.0 {
                    assert!(
                        ((direct - logged) / direct).abs() < 1e-12,
                        "a={a} n={n}: {direct} vs {logged}"
                    );
                }
            }
        }
    }

    #[test]
    fn pochhammer_overflow_switches_to_log() {
        // (1)_200 = 200! ~ 1e374: direct product overflows, log path does not
        let v = pochhammer_ln(1.0, 200);
        assert!((v.ln_abs - ln_gamma(201.0)).abs() < 1e-9);
        assert_eq!(v.sign, 1.0);
        // pochhammer itself returns +inf there, consistently with f64 limits
        assert!(pochhammer(1.0, 200).is_infinite());
    }

    #[test]
    fn ln_gamma_spot_values() {
        assert!((ln_gamma(1.0)).abs() < 1e-14);
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-13);
        assert!((ln_gamma(0.5) - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-13);
    }

    #[test]
    fn multinomial_cases() {
        assert_eq!(multinomial(2, &[1, 1, 0, 0]).unwrap().to_f64().unwrap(), 2.0);
        assert_eq!(multinomial(0, &[0, 0, 0, 0]).unwrap().to_f64().unwrap(), 1.0);
        // direct factorial evaluation: 4!/(1!1!1!1!) = 24
        assert_eq!(multinomial(4, &[1, 1, 1, 1]).unwrap().to_f64().unwrap(), 24.0);
        assert!(multinomial(3, &[1, 1]).is_err());
    }

    #[test]
    fn stable_sum_cases() {
        assert_eq!(stable_sum([]), ComplexValue::new(0.0, 0.0));
        let s = stable_sum([
            ComplexValue::new(1.0, 0.0),
            ComplexValue::new(-1.0, 0.0),
            ComplexValue::new(1e-16, 0.0),
        ]);
        assert_eq!(s.re, 1e-16);
        // ten copies of 0.1 sum to exactly 1.0 under compensation
        // (oracle: 10 * 1/10 = 1 in exact rationals)
        let s = stable_sum(std::iter::repeat(ComplexValue::new(0.1, 0.0)).take(10));
        assert_eq!(s.re, 1.0);
    }
}
