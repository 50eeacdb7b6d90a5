//! Hypergeometric evaluators (₂F₁, ₁F₁) and truncated-series verification of
//! the generating functions and summation formulae.
//!
//! Single sums and the absolutely convergent double sum are evaluated in f64
//! with per-term log-Pochhammer scaling. The two diagonal-restricted double
//! sums (`gz2`, `gz4`) converge only in iterated row order with intra-row
//! cancellation far beyond f64, so their rows are accumulated in 1600-bit
//! dyadic floats (see [`extended`]), row values generated by the basic
//! three-term recurrence.

mod extended;

use crate::disk::{
    hermite_complex, jacobi_p_complex, zernike_explicit, zernike_explicit_scaled, DiskIndex,
    HermiteIndex,
};
use crate::scalar::{factorial, ln_gamma, pochhammer, pochhammer_ln, NeumaierSum};
use crate::{ComplexValue, Error, Result};
use extended::{ExtComplex, ExtFloat};
use serde::Serialize;

/// Tail criterion and cap for truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncationPolicy {
    /// Relative tail tolerance.
    pub tol: f64,
    /// Number of consecutive below-tolerance units (terms, shells or rows)
    /// required before stopping.
    pub consecutive_small: u32,
    /// Cap on summation units.
    pub max_terms: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { tol: 1e-12, consecutive_small: 3, max_terms: 10_000 }
    }
}

/// Outcome of one partial-sum-versus-closed-form check.
///
/// `terms_used` counts the summation unit of the series: individual terms
/// for single sums, diagonal shells for the absolutely convergent double
/// sums, rows for the iterated ones.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeriesReport {
    pub partial_sum: ComplexValue,
    pub closed_form: ComplexValue,
    pub residual: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl SeriesReport {
    fn new(partial: ComplexValue, closed: ComplexValue, terms_used: usize, converged: bool) -> Self {
        SeriesReport {
            partial_sum: partial,
            closed_form: closed,
            residual: (partial - closed).norm() / (1.0 + closed.norm()),
            terms_used,
            converged,
        }
    }
}

/// Gauss hypergeometric series `₂F₁(a, b; c | x)` by term-ratio recursion
/// `t_{k+1} = t_k (a+k)(b+k) x / ((c+k)(k+1))`.
///
/// Terminates exactly when a or b is a nonpositive integer; otherwise needs
/// |x| < 1 to meet the tail criterion. A pole of the coefficient sequence
/// (c a nonpositive integer reached before termination) is a domain error;
/// exhausting `max_terms` is a non-convergence error.
pub fn hyp2f1(
    a: f64,
    b: f64,
    c: f64,
    x: ComplexValue,
    policy: &TruncationPolicy,
) -> Result<ComplexValue> {
    let mut term = ComplexValue::new(1.0, 0.0);
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    re.add(1.0);
    let mut consec = 0;
    for k in 0.. {
        let kf = k as f64;
        if a + kf == 0.0 || b + kf == 0.0 {
            // terminating series: all further terms vanish
            return Ok(ComplexValue::new(re.value(), im.value()));
        }
        if c + kf == 0.0 {
            return Err(Error::Domain(format!(
                "2F1 pole: c = {c} is a nonpositive integer reached at k = {k}"
            )));
        }
        if k >= policy.max_terms {
            return Err(Error::NonConvergence { terms: k });
        }
        term *= x * ((a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)));
        re.add(term.re);
        im.add(term.im);
        let sum_norm = ComplexValue::new(re.value(), im.value()).norm();
        if term.norm() <= policy.tol * (1.0 + sum_norm) {
            consec += 1;
            if consec >= policy.consecutive_small {
                return Ok(ComplexValue::new(re.value(), im.value()));
            }
        } else {
            consec = 0;
        }
    }
    unreachable!()
}

/// Confluent hypergeometric series `₁F₁(a; c | x)`, same contract as
/// [`hyp2f1`].
pub fn hyp1f1(a: f64, c: f64, x: f64, policy: &TruncationPolicy) -> Result<f64> {
    let mut term = 1.0f64;
    let mut sum = NeumaierSum::new();
    sum.add(1.0);
    let mut consec = 0;
    for k in 0.. {
        let kf = k as f64;
        if a + kf == 0.0 {
            return Ok(sum.value());
        }
        if c + kf == 0.0 {
            return Err(Error::Domain(format!(
                "1F1 pole: c = {c} is a nonpositive integer reached at k = {k}"
            )));
        }
        if k >= policy.max_terms {
            return Err(Error::NonConvergence { terms: k });
        }
        term *= (a + kf) * x / ((c + kf) * (kf + 1.0));
        sum.add(term);
        if term.abs() <= policy.tol * (1.0 + sum.value().abs()) {
            consec += 1;
            if consec >= policy.consecutive_small {
                return Ok(sum.value());
            }
        } else {
            consec = 0;
        }
    }
    unreachable!()
}

/// ln|v| and arg v, with the m = 0 power handled so `0·ln 0` never appears.
fn scaled_pow(v: ComplexValue, n: u32) -> (f64, f64) {
    if n == 0 {
        return (0.0, 0.0);
    }
    (n as f64 * v.norm().ln(), n as f64 * v.arg())
}

/// One scaled series term `Z_{m,n}^γ(z) · exp(ln_mag) · e^{i·phase}`.
fn z_term(m: u32, n: u32, gamma: f64, z: ComplexValue, ln_mag: f64, phase: f64) -> ComplexValue {
    if ln_mag == f64::NEG_INFINITY {
        return ComplexValue::new(0.0, 0.0);
    }
    let (v, _) = zernike_explicit_scaled(DiskIndex::new(m, n), gamma, z, ln_mag);
    v * ComplexValue::from_polar(1.0, phase)
}

/// Generic single-sum driver: accumulates `term(n)` under the tail policy.
/// The tail criterion is suppressed for the first `min_terms` terms (a
/// series can open with structural zeros, e.g. at z = 0 only the n = m term
/// of the generating function survives).
fn sum_single<F: FnMut(usize) -> ComplexValue>(
    mut term: F,
    policy: &TruncationPolicy,
    min_terms: usize,
) -> (ComplexValue, usize, bool) {
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    let mut consec = 0;
    for n in 0..policy.max_terms {
        let t = term(n);
        re.add(t.re);
        im.add(t.im);
        let sum_norm = ComplexValue::new(re.value(), im.value()).norm();
        if t.norm() <= policy.tol * (1.0 + sum_norm) {
            consec += 1;
            if n + 1 >= min_terms && consec >= policy.consecutive_small {
                return (ComplexValue::new(re.value(), im.value()), n + 1, true);
            }
        } else {
            consec = 0;
        }
    }
    (
        ComplexValue::new(re.value(), im.value()),
        policy.max_terms,
        false,
    )
}

/// Single generating function over n:
///
/// ```text
/// Σ_n v^n/n! Z_{m,n}^γ = m! z̄^m (1-vz)^{-γ-m-1} P_m^{(γ,0)}(1 - 2v(1-zz̄)/(z̄(1-vz)))
/// ```
///
/// The closed form is evaluated through the expanded Jacobi sum, which
/// cancels the `1/z̄` inside the argument symbolically and so is regular at
/// z = 0.
pub fn genfct_single(
    m: u32,
    gamma: f64,
    v: ComplexValue,
    z: ComplexValue,
    policy: &TruncationPolicy,
) -> Result<SeriesReport> {
    if v.norm() >= 1.0 || z.norm() >= 1.0 {
        return Err(Error::Domain("genfct_single needs |v| < 1 and |z| < 1".into()));
    }
    let (partial, used, converged) = sum_single(
        |n| {
            let n = n as u32;
            if v.norm() == 0.0 && n > 0 {
                return ComplexValue::new(0.0, 0.0);
            }
            let (lm, ph) = scaled_pow(v, n);
            z_term(m, n, gamma, z, lm - ln_gamma(n as f64 + 1.0), ph)
        },
        policy,
        m as usize + 1,
    );
    let closed = genfct_single_closed(m, gamma, v, z);
    Ok(SeriesReport::new(partial, closed, used, converged))
}

/// The z = 0 safe closed form of the single generating function:
/// `(γ+1)_m (1-vz)^{-γ-m-1} Σ_{s≤m} (-m)_s(m+γ+1)_s/((γ+1)_s s!) ·
///  v^s (1-zz̄)^s z̄^{m-s} (1-vz)^{-s}`.
fn genfct_single_closed(m: u32, gamma: f64, v: ComplexValue, z: ComplexValue) -> ComplexValue {
    let zb = z.conj();
    let w = 1.0 - z.norm_sqr();
    let one_m_vz = ComplexValue::new(1.0, 0.0) - v * z;
    let mut acc = ComplexValue::new(0.0, 0.0);
    for s in 0..=m {
        let c = pochhammer(-(m as f64), s) * pochhammer(m as f64 + gamma + 1.0, s)
            / (pochhammer(gamma + 1.0, s) * factorial(s));
        acc += c
            * v.powu(s)
            * w.powi(s as i32)
            * zb.powu(m - s)
            * one_m_vz.powf(-(s as f64));
    }
    pochhammer(gamma + 1.0, m) * one_m_vz.powf(-gamma - m as f64 - 1.0) * acc
}

/// The Jacobi-polynomial factor of the single generating function at its
/// complex argument (used by the bound check; singular at z = 0).
pub fn genfct_single_jacobi_factor(
    m: u32,
    gamma: f64,
    v: ComplexValue,
    z: ComplexValue,
) -> ComplexValue {
    let zb = z.conj();
    let arg = ComplexValue::new(1.0, 0.0)
        - v * (1.0 - z.norm_sqr()) * 2.0 / (zb * (ComplexValue::new(1.0, 0.0) - v * z));
    jacobi_p_complex(m, gamma, 0.0, arg)
}

/// Double generating function over (m, n), truncated by diagonal shells
/// `m + n = N` (matching the `|u| + |v| < 1` convergence geometry):
///
/// ```text
/// Σ u^m v^n/(m!n!) Z_{m,n}^γ
///   = (1-vz-uz̄)^{-γ-1} ₂F₁((γ+1)/2, (γ+2)/2; γ+1 | -4uv(1-zz̄)/(1-vz-uz̄)²)
/// ```
pub fn genfct_double(
    gamma: f64,
    u: ComplexValue,
    v: ComplexValue,
    z: ComplexValue,
    policy: &TruncationPolicy,
) -> Result<SeriesReport> {
    if u.norm() + v.norm() >= 1.0 || z.norm() >= 1.0 {
        return Err(Error::Domain(
            "genfct_double needs |u| + |v| < 1 and |z| < 1".into(),
        ));
    }
    let den = ComplexValue::new(1.0, 0.0) - v * z - u * z.conj();
    let x = -u * v * (1.0 - z.norm_sqr()) * 4.0 / (den * den);
    if x.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "2F1 argument modulus {} is outside the unit disk",
            x.norm()
        )));
    }
    let closed =
        den.powf(-gamma - 1.0) * hyp2f1((gamma + 1.0) / 2.0, (gamma + 2.0) / 2.0, gamma + 1.0, x, policy)?;

    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    let mut consec = 0;
    let mut shells = 0usize;
    let mut converged = false;
    'outer: for nn in 0..policy.max_terms {
        let mut shell = ComplexValue::new(0.0, 0.0);
        for mm in 0..=nn {
            let (m, n) = (mm as u32, (nn - mm) as u32);
            if (u.norm() == 0.0 && m > 0) || (v.norm() == 0.0 && n > 0) {
                continue;
            }
            let (lu, pu) = scaled_pow(u, m);
            let (lv, pv) = scaled_pow(v, n);
            let lm = lu + lv - ln_gamma(m as f64 + 1.0) - ln_gamma(n as f64 + 1.0);
            shell += z_term(m, n, gamma, z, lm, pu + pv);
        }
        re.add(shell.re);
        im.add(shell.im);
        shells = nn + 1;
        let total = ComplexValue::new(re.value(), im.value());
        if shell.norm() <= policy.tol * (1.0 + total.norm()) {
            consec += 1;
            if consec >= policy.consecutive_small {
                converged = true;
                break 'outer;
            }
        } else {
            consec = 0;
        }
    }
    let partial = ComplexValue::new(re.value(), im.value());
    Ok(SeriesReport::new(partial, closed, shells, converged))
}

/// Which summation formula to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SummationKind {
    /// `Σ_n z̄^n/n! Z_{m,n} = (-1)^m m! z̄^m (1-|z|²)^{-γ-m-1}` (fixed m).
    Gz1,
    /// `Σ_{m,n} z^m z̄^n/(m!n!) Z_{m,n} = (1-|z|²)^{-γ}`.
    Gz2,
    /// `Σ_{m,n} (1-|z|²)^m z̄^n/(m!n!) Z_{m,n} = (1-|z|²)^{-γ-1}/(1+z̄)`.
    Gz4,
    /// `Σ_k (-1)^k z̄^k/k! Z_{m,k}/(γ+m+1)_k
    ///   = (γ+1)_m z̄^m e^{-|z|²} ₁F₁(-m; γ+1 | |z|²-1)` (fixed m).
    Confluent,
    /// The mixed expansion over `Z^{γ+j}_{m-j,n} H_{r,j}` (fixed m, n, r).
    HermiteMixed,
    /// The expansion of the monomial `z̄^m` (fixed m).
    Monomial,
    /// The triple-sum expansion of `e^{z̄(1+z)}`.
    Exponential,
}

/// Fixed indices for the summation checks; unused fields are ignored.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct SummationParams {
    pub m: u32,
    pub n: u32,
    pub r: u32,
}

/// Partial sum versus closed form for one summation formula.
pub fn summation_check(
    kind: SummationKind,
    params: SummationParams,
    gamma: f64,
    z: ComplexValue,
    policy: &TruncationPolicy,
) -> Result<SeriesReport> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain("summation checks need |z| < 1".into()));
    }
    let zb = z.conj();
    let w = 1.0 - z.norm_sqr();
    let m = params.m;
    match kind {
        SummationKind::Gz1 => {
            let (partial, used, conv) = sum_single(
                |n| {
                    let n = n as u32;
                    if z.norm() == 0.0 && n > 0 {
                        return ComplexValue::new(0.0, 0.0);
                    }
                    let (lm, ph) = scaled_pow(zb, n);
                    z_term(m, n, gamma, z, lm - ln_gamma(n as f64 + 1.0), ph)
                },
                policy,
                1,
            );
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let closed = zb.powu(m) * (sign * factorial(m) * w.powf(-gamma - m as f64 - 1.0));
            Ok(SeriesReport::new(partial, closed, used, conv))
        }
        SummationKind::Gz2 => {
            let (partial, rows, conv) = iterated_double_ext(gamma, z, RowWeight::Z, policy);
            let closed = ComplexValue::new(w.powf(-gamma), 0.0);
            Ok(SeriesReport::new(partial, closed, rows, conv))
        }
        SummationKind::Gz4 => {
            let (partial, rows, conv) = iterated_double_ext(gamma, z, RowWeight::W, policy);
            let closed = w.powf(-gamma - 1.0) / (ComplexValue::new(1.0, 0.0) + zb);
            Ok(SeriesReport::new(partial, closed, rows, conv))
        }
        SummationKind::Confluent => {
            let (partial, used, conv) = sum_single(
                |k| {
                    let k = k as u32;
                    if z.norm() == 0.0 && k > 0 {
                        return ComplexValue::new(0.0, 0.0);
                    }
                    let (lm, ph) = scaled_pow(zb, k);
                    let lp = pochhammer_ln(gamma + m as f64 + 1.0, k);
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    z_term(m, k, gamma, z, lm - ln_gamma(k as f64 + 1.0) - lp.ln_abs, ph)
                        * (sign * lp.sign)
                },
                policy,
                1,
            );
            let f = hyp1f1(-(m as f64), gamma + 1.0, z.norm_sqr() - 1.0, policy)?;
            let closed =
                zb.powu(m) * (pochhammer(gamma + 1.0, m) * (-z.norm_sqr()).exp() * f);
            Ok(SeriesReport::new(partial, closed, used, conv))
        }
        SummationKind::HermiteMixed => {
            let (n, r) = (params.n, params.r);
            let (partial, used, conv) = sum_single(
                |k| {
                    let k = k as u32;
                    if z.norm() == 0.0 && k > 0 {
                        return ComplexValue::new(0.0, 0.0);
                    }
                    let (lm, ph) = scaled_pow(zb, k);
                    let lp = pochhammer_ln(gamma + (m + n) as f64 + 1.0, r + k);
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    z_term(
                        m,
                        n + r + k,
                        gamma,
                        z,
                        lm - ln_gamma(k as f64 + 1.0) - lp.ln_abs,
                        ph,
                    ) * (sign * lp.sign)
                },
                policy,
                1,
            );
            let mut closed = ComplexValue::new(0.0, 0.0);
            for j in 0..=m {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let c = sign * pochhammer(-(m as f64), j) * w.powi(j as i32) / factorial(j);
                closed += c
                    * zernike_explicit(DiskIndex::new(m - j, n), gamma + j as f64, z).value
                    * hermite_complex(HermiteIndex { p: r, q: j }, z);
            }
            closed *= (-z.norm_sqr()).exp();
            Ok(SeriesReport::new(partial, closed, used, conv))
        }
        SummationKind::Monomial => {
            let e = (-z.norm_sqr()).exp() * factorial(m);
            let (partial, used, conv) = sum_single(
                |n| {
                    let n = n as u32;
                    if z.norm() == 0.0 && n > 0 {
                        return ComplexValue::new(0.0, 0.0);
                    }
                    let mut t = ComplexValue::new(0.0, 0.0);
                    for j in 0..=m {
                        let (lmz, ph) = scaled_pow(zb, n + j);
                        let lp = pochhammer_ln(gamma + 1.0, m + n);
                        let lm = lmz + (j as f64) * w.ln()
                            - ln_gamma(j as f64 + 1.0)
                            - lp.ln_abs
                            - ln_gamma((m - j) as f64 + 1.0)
                            - ln_gamma(n as f64 + 1.0);
                        t += z_term(m - j, n, gamma + j as f64, z, lm, ph) * lp.sign;
                    }
                    t * e
                },
                policy,
                1,
            );
            let closed = zb.powu(m);
            Ok(SeriesReport::new(partial, closed, used, conv))
        }
        SummationKind::Exponential => {
            // triple sum over (m, n, j), truncated by shells m + n + j = N
            let mut re = NeumaierSum::new();
            let mut im = NeumaierSum::new();
            let mut consec = 0;
            let mut shells = 0usize;
            let mut converged = false;
            'outer: for nn in 0..policy.max_terms {
                let mut shell = ComplexValue::new(0.0, 0.0);
                for mm in 0..=nn {
                    for n in 0..=(nn - mm) {
                        let j = (nn - mm - n) as u32;
                        let (mm32, n32) = (mm as u32, n as u32);
                        if z.norm() == 0.0 && n32 + j > 0 {
                            continue;
                        }
                        let (lmz, ph) = scaled_pow(zb, n32 + j);
                        let lp = pochhammer_ln(gamma + 1.0, mm32 + j + n32);
                        let lm = lmz + (j as f64) * w.ln()
                            - ln_gamma(j as f64 + 1.0)
                            - lp.ln_abs
                            - ln_gamma(mm as f64 + 1.0)
                            - ln_gamma(n as f64 + 1.0);
                        shell += z_term(mm32, n32, gamma + j as f64, z, lm, ph) * lp.sign;
                    }
                }
                re.add(shell.re);
                im.add(shell.im);
                shells = nn + 1;
                let total = ComplexValue::new(re.value(), im.value());
                if shell.norm() <= policy.tol * (1.0 + total.norm()) {
                    consec += 1;
                    if consec >= policy.consecutive_small {
                        converged = true;
                        break 'outer;
                    }
                } else {
                    consec = 0;
                }
            }
            let partial = ComplexValue::new(re.value(), im.value());
            let closed = (zb * (ComplexValue::new(1.0, 0.0) + z)).exp();
            Ok(SeriesReport::new(partial, closed, shells, converged))
        }
    }
}

/// Prefactor of the iterated double sums: `z^m` for gz2, `(1-|z|²)^m` for gz4.
#[derive(Clone, Copy, PartialEq)]
enum RowWeight {
    Z,
    W,
}

/// Iterated (row-ordered) evaluation of `Σ_m Σ_n a^m z̄^n Z_{m,n}/(m!n!)`
/// in extended precision, rows advanced by the basic recurrence
///
/// ```text
/// Z_{m+1,n} = (γ+m+n+1)/(γ+m+1) [ (γ+m+n+1) z̄ Z_{m,n} - n (γ+m+n) Z_{m,n-1} ]
/// ```
///
/// expressed directly on the scaled row entries `Y_{m,n} = a^m z̄^n Z_{m,n}/(m!n!)`.
/// Returns (partial, rows used, converged).
fn iterated_double_ext(
    gamma: f64,
    z: ComplexValue,
    weight: RowWeight,
    policy: &TruncationPolicy,
) -> (ComplexValue, usize, bool) {
    let u = z.norm_sqr();
    let ln_z = if u > 0.0 { z.norm().ln() } else { f64::NEG_INFINITY };
    let ln_w = (1.0 - u).ln();
    let (ln_a, ln_b) = match weight {
        RowWeight::Z => (ln_z, ln_z),
        RowWeight::W => (ln_w, ln_z),
    };
    let ln_floor = (policy.tol.ln() - 35.0).max(-900.0);

    let mut rows_cap = 64usize;
    loop {
        let width = estimate_width(rows_cap, gamma, z, ln_a, ln_b, ln_floor);
        let (total, rows_used, converged) =
            run_ext_table(gamma, z, weight, rows_cap, width, policy);
        if converged || rows_cap >= policy.max_terms {
            return (total, rows_used, converged);
        }
        rows_cap = (rows_cap * 2).min(policy.max_terms.max(1));
    }
}

/// Width of the rectangular row table: columns needed before every term of
/// the deepest row drops below the tail floor. Magnitudes only (no
/// cancellation), estimated from the explicit-sum summands in log space.
fn estimate_width(
    rows: usize,
    gamma: f64,
    z: ComplexValue,
    ln_a: f64,
    ln_b: f64,
    ln_floor: f64,
) -> usize {
    let m = rows as u32;
    let ln_z = if z.norm() > 0.0 { z.norm().ln() } else { f64::NEG_INFINITY };
    let ln_w = (1.0 - z.norm_sqr()).ln();
    let term_ln = |n: u32| -> f64 {
        let mut best = f64::NEG_INFINITY;
        for j in 0..=m.min(n) {
            let lp = pochhammer_ln(gamma + j as f64 + 1.0, m + n - j);
            let v = lp.ln_abs + ln_gamma(m as f64 + 1.0) + ln_gamma(n as f64 + 1.0)
                - ln_gamma(j as f64 + 1.0)
                - ln_gamma((m - j) as f64 + 1.0)
                - ln_gamma((n - j) as f64 + 1.0)
                + j as f64 * ln_w
                + ((m + n - 2 * j) as f64) * ln_z;
            best = best.max(v);
        }
        best + m as f64 * ln_a + n as f64 * ln_b
            - ln_gamma(m as f64 + 1.0)
            - ln_gamma(n as f64 + 1.0)
    };
    let mut n = m + 1;
    let mut below = 0;
    while below < 5 && (n as usize) < 20 * rows + 400 {
        if term_ln(n) < ln_floor {
            below += 1;
        } else {
            below = 0;
        }
        n += 1;
    }
    n as usize + 8
}

fn run_ext_table(
    gamma: f64,
    z: ComplexValue,
    weight: RowWeight,
    rows_cap: usize,
    width: usize,
    policy: &TruncationPolicy,
) -> (ComplexValue, usize, bool) {
    let g = ExtFloat::from_f64(gamma);
    let zre = ExtFloat::from_f64(z.re);
    let zim = ExtFloat::from_f64(z.im);
    let u = zre.mul(&zre).add(&zim.mul(&zim)); // |z|² exactly from the f64 parts
    let w = ExtFloat::from_i64(1).sub(&u);
    let zbar = ExtComplex { re: zre, im: zim.neg() };

    // row m = 0: Y_{0,n} = (γ+1)_n u^n / n!, real
    let mut row: Vec<ExtComplex> = Vec::with_capacity(width);
    let mut seed = ExtComplex::real(ExtFloat::from_i64(1));
    row.push(seed.clone());
    for n in 0..width - 1 {
        let factor = g
            .add(&ExtFloat::from_i64(n as i64 + 1))
            .mul(&u)
            .div(&ExtFloat::from_i64(n as i64 + 1));
        seed = seed.scale(&factor);
        row.push(seed.clone());
    }

    // the per-row multiplier of the scaled recurrence:
    //   gz2: a = z, the z̄ of the relation joins z into |z|² (real);
    //   gz4: a = w, the complex w·z̄ factor stays
    let mut total = ExtComplex::zero();
    let mut consec = 0;
    let mut converged = false;
    let mut rows_used = 0usize;
    let row_sum = |r: &[ExtComplex]| -> ExtComplex {
        let mut s = ExtComplex::zero();
        for y in r {
            s = s.add(y);
        }
        s
    };
    for m in 0..rows_cap {
        let rs = row_sum(&row);
        total = total.add(&rs);
        rows_used = m + 1;
        let tail_ok = rs.log2_abs()
            <= (policy.tol.log2() + (1.0 + total.to_c64().norm()).log2());
        if tail_ok {
            consec += 1;
            if consec >= policy.consecutive_small {
                converged = true;
                break;
            }
        } else {
            consec = 0;
        }
        // advance to row m+1
        let mf = m as i64;
        let denom = g
            .add(&ExtFloat::from_i64(mf + 1))
            .mul(&ExtFloat::from_i64(mf + 1));
        let scale_re = match weight {
            RowWeight::Z => ExtComplex::real(u.div(&denom)),
            RowWeight::W => zbar.scale(&w).scale(&ExtFloat::from_i64(1).div(&denom)),
        };
        let mut next: Vec<ExtComplex> = Vec::with_capacity(width);
        for n in 0..width {
            let e1 = g.add(&ExtFloat::from_i64(mf + n as i64 + 1));
            let e0 = g.add(&ExtFloat::from_i64(mf + n as i64));
            let mut inner = row[n].scale(&e1);
            if n > 0 {
                inner = inner.sub(&row[n - 1].scale(&e0));
            }
            next.push(inner.scale(&e1).mul(&scale_re));
        }
        row = next;
    }
    (total.to_c64(), rows_used, converged)
}

/// Both sides of the quadratic-transformation identity
///
/// ```text
/// (1-2ξ)^{-2a} ₂F₁(a, a+1/2; a+b+1/2 | 4ξ(ξ-1)/(2ξ-1)²) = ₂F₁(2a, 2b; a+b+1/2 | ξ)
/// ```
///
/// For ξ > 0 the left side's argument leaves the unit disk, so it is
/// evaluated in the algebraically identical Pfaff-transformed form
/// `₂F₁(a, b; a+b+1/2 | 4ξ(1-ξ))` (note `x/(x-1) = 4ξ(1-ξ)` and
/// `(1-x)^{-a} = (1-2ξ)^{2a}` here); every series argument then stays inside
/// the unit disk for |ξ| ≤ 0.4.
pub fn quad_transform_check(
    a: f64,
    b: f64,
    xi: f64,
    policy: &TruncationPolicy,
) -> Result<(f64, f64)> {
    let c = a + b + 0.5;
    let rhs = hyp2f1(2.0 * a, 2.0 * b, c, ComplexValue::new(xi, 0.0), policy)?.re;
    let lhs = if xi == 0.0 {
        1.0
    } else if xi < 0.0 {
        let x = 4.0 * xi * (xi - 1.0) / (2.0 * xi - 1.0).powi(2);
        (1.0 - 2.0 * xi).powf(-2.0 * a)
            * hyp2f1(a, a + 0.5, c, ComplexValue::new(x, 0.0), policy)?.re
    } else {
        hyp2f1(a, b, c, ComplexValue::new(4.0 * xi * (1.0 - xi), 0.0), policy)?.re
    };
    Ok((lhs, rhs))
}
