//! Batch verification suites over index grids, shared by the CLI and the
//! acceptance tests. Exact suites count a case as failed when its residual
//! polynomial is not identically zero; numeric suites compare against a
//! tolerance.

use crate::disk::{zernike_explicit, zernike_jacobi, zernike_2f1, DiskIndex};
use crate::exact::{GammaPoly, Mono, QComplex, TriPoly};
use crate::identities::{
    burchnall_residual, chu_vandermonde_residual, composition_residual, corollary32_residual,
    hermite_corollary_residual, nielsen_residual, runge_remark_exact, runge_remark_value,
    runge_residual, AffineGamma, BurchnallFormula, NielsenKind,
};
use crate::recurrence::{conjugate_counterpart, eval_by_recurrence, recurrence_residual, RecurrenceId};
use crate::scalar::factorial_big;
use crate::{ComplexValue, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

/// Aggregate outcome of one verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite_name: String,
    pub cases_run: usize,
    pub cases_failed: usize,
    pub worst_residual: f64,
    pub elapsed_seconds: f64,
}

struct Tally {
    name: &'static str,
    run: usize,
    failed: usize,
    worst: f64,
    started: Instant,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, run: 0, failed: 0, worst: 0.0, started: Instant::now() }
    }

    fn exact(&mut self, residual_is_zero: bool) {
        self.run += 1;
        if !residual_is_zero {
            self.failed += 1;
            self.worst = f64::INFINITY;
        }
    }

    fn numeric(&mut self, residual: f64, tol: f64) {
        self.run += 1;
        self.worst = self.worst.max(residual);
        if !(residual <= tol) {
            self.failed += 1;
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            suite_name: self.name.to_string(),
            cases_run: self.run,
            cases_failed: self.failed,
            worst_residual: self.worst,
            elapsed_seconds: self.started.elapsed().as_secs_f64(),
        }
    }
}

/// Pseudo-random polynomial in z, z̄ of total degree ≤ `deg` with small
/// integer coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, deg: u32) -> TriPoly {
    let mut p = TriPoly::zero();
    for i in 0..=deg {
        for j in 0..=(deg - i) {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                p = &p + &TriPoly::monomial(Mono::new(i, j, 0), GammaPoly::from_int(c));
            }
        }
    }
    if p.is_zero() {
        p = TriPoly::one();
    }
    p
}

/// Seeded points uniform on the disk of the given radius.
pub fn seeded_points(seed: u64, count: usize, radius: f64) -> Vec<ComplexValue> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            let theta = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
            ComplexValue::from_polar(r, theta)
        })
        .collect()
}

/// Operational formulae (3 Burchnall expansions) for m, n ≤ cap with
/// `nfuncs` seeded random polynomial test functions of degree ≤ 3, plus the
/// operator composition law and the two §3 corollaries.
pub fn run_burchnall(cap: u32, nfuncs: usize, seed: u64) -> Result<SuiteResult> {
    let mut t = Tally::new("burchnall");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let funcs: Vec<TriPoly> = (0..nfuncs).map(|_| random_poly(&mut rng, 3)).collect();
    for f in &funcs {
        for m in 0..=cap {
            for n in 0..=cap {
                let r = burchnall_residual(BurchnallFormula::OpA, m, n, None, f)?;
                t.exact(r.is_zero());
                let r = burchnall_residual(BurchnallFormula::OpB, m, n, None, f)?;
                t.exact(r.is_zero());
                // γ' runs over n+1 constants (degree in γ' is ≤ n, so these
                // pin the bivariate identity) plus two affine-in-γ picks
                let mut gps: Vec<AffineGamma> =
                    (0..=n as i64).map(AffineGamma::constant).collect();
                gps.push(AffineGamma::gamma_plus(0));
                gps.push(AffineGamma::gamma_plus(2));
                for gp in gps {
                    let r = burchnall_residual(BurchnallFormula::Nabla, m, n, Some(gp), f)?;
                    t.exact(r.is_zero());
                }
            }
        }
        // index-reversal invariance is structural in exact arithmetic but
        // exercised here: reversed-order assembly must match
        for mprime in 0..=cap {
            for m in 0..=cap {
                let r = composition_residual(m, mprime, f)?;
                t.exact(r.is_zero());
            }
        }
    }
    Ok(t.finish())
}

/// Cor. 3.2 for m, n ≤ `cap32`, the Hermite corollary for m, n ≤ `cap34`.
pub fn run_corollaries(cap32: u32, cap34: u32) -> SuiteResult {
    let mut t = Tally::new("corollaries");
    for m in 0..=cap32 {
        for n in 0..=cap32 {
            t.exact(corollary32_residual(m, n).is_zero());
        }
    }
    for m in 0..=cap34 {
        for n in 0..=cap34 {
            t.exact(hermite_corollary_residual(m, n).is_zero());
        }
    }
    t.finish()
}

/// Chu-Vandermonde reduction for 1 ≤ m ≤ max_m.
pub fn run_chu(max_m: u32) -> SuiteResult {
    let mut t = Tally::new("chu");
    for m in 1..=max_m {
        t.exact(chu_vandermonde_residual(m).is_zero());
    }
    t.finish()
}

/// The Hermite-expansion corollary alone (CLI suite `hermite`).
pub fn run_hermite(cap: u32) -> SuiteResult {
    let mut t = Tally::new("hermite");
    for m in 0..=cap {
        for n in 0..=cap {
            t.exact(hermite_corollary_residual(m, n).is_zero());
        }
    }
    t.finish()
}

/// Nielsen quadratic identities: `nielsen1` for indices ≤ cap1, `nielsen2`
/// for indices ≤ cap2, Eqs. (4.1)-(4.2) for m, n ≤ cap1 and s ≤ cap_s.
pub fn run_nielsen(cap1: u32, cap2: u32, cap_s: u32) -> SuiteResult {
    let mut t = Tally::new("nielsen");
    for m in 0..=cap1 {
        for n in 0..=cap1 {
            for r in 0..=cap1 {
                for s in 0..=cap1 {
                    t.exact(nielsen_residual(NielsenKind::Nielsen1, m, n, r, s).is_zero());
                }
            }
        }
    }
    for m in 0..=cap2 {
        for n in 0..=cap2 {
            for r in 0..=cap2 {
                t.exact(nielsen_residual(NielsenKind::Nielsen2, m, n, r, 0).is_zero());
            }
        }
    }
    for m in 0..=cap1 {
        for n in 0..=cap1 {
            for s in 0..=cap_s {
                t.exact(nielsen_residual(NielsenKind::Eq41, m, n, 0, s).is_zero());
                t.exact(nielsen_residual(NielsenKind::Eq42, m, n, 0, s).is_zero());
            }
        }
    }
    t.finish()
}

/// All seven recurrence relations plus conjugate counterparts, m, n ≤ cap.
pub fn run_recurrences(cap: u32) -> SuiteResult {
    let mut t = Tally::new("recurrences");
    for rid in RecurrenceId::ALL {
        for m in 0..=cap {
            for n in 0..=cap {
                let idx = DiskIndex::new(m, n);
                t.exact(recurrence_residual(rid, idx).is_zero());
                t.exact(conjugate_counterpart(rid, idx).is_zero());
            }
        }
    }
    t.finish()
}

/// Runge addition formula on seeded point pairs, plus the scalar identity of
/// its z + w = 0 special case (exact in rationals, z-independent numerically).
pub fn run_runge(
    gammas: &[u32],
    cap: u32,
    pairs: usize,
    seed: u64,
    tol: f64,
) -> Result<SuiteResult> {
    let mut t = Tally::new("runge");
    let zs = seeded_points(seed, pairs, 0.6);
    let ws = seeded_points(seed.wrapping_add(1), pairs, 0.6);
    for &gamma in gammas {
        for m in 0..=cap {
            for n in 0..=cap {
                for (z, w) in zs.iter().zip(&ws) {
                    let r = runge_residual(m, n, gamma, *z, *w)?;
                    t.numeric(r.norm(), tol);
                }
            }
        }
    }
    // the remark identity: exact value 2^γ/γ!, and z-independence numerically
    for gamma in 0..=8u32 {
        let expect = BigRational::new(BigInt::from(2).pow(gamma), factorial_big(gamma));
        let z = QComplex::from_ratio(3, 8, -1, 4);
        t.exact(runge_remark_exact(gamma, &z) == expect);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in seeded_points(seed.wrapping_add(2), 20, 0.95) {
            let v = runge_remark_value(gamma, p);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        t.numeric(hi - lo, 1e-13);
    }
    Ok(t.finish())
}

/// Pairwise agreement of the four numeric engines over a seeded grid.
pub fn run_cross_engine(
    cap: u32,
    gammas: &[f64],
    points: usize,
    seed: u64,
    tol: f64,
) -> Result<SuiteResult> {
    let mut t = Tally::new("cross_engine");
    let zs = seeded_points(seed, points, 0.95);
    for &gamma in gammas {
        for m in 0..=cap {
            for n in 0..=cap {
                let idx = DiskIndex::new(m, n);
                for &z in &zs {
                    let vals = [
                        zernike_explicit(idx, gamma, z).value,
                        zernike_jacobi(idx, gamma, z).value,
                        zernike_2f1(idx, gamma, z).value,
                        eval_by_recurrence(idx, gamma, z)?.value,
                    ];
                    let scale = vals.iter().map(|v| v.norm()).fold(1e-30, f64::max);
                    let mut worst = 0.0f64;
                    for i in 0..vals.len() {
                        for j in (i + 1)..vals.len() {
                            worst = worst.max((vals[i] - vals[j]).norm() / scale);
                        }
                    }
                    t.numeric(worst, tol);
                }
            }
        }
    }
    Ok(t.finish())
}

/// The named CLI suites.
pub fn run_named_suite(name: &str, cap: Option<u32>, max_m: Option<u32>, tol: Option<f64>, seed: u64)
    -> Result<Vec<SuiteResult>>
{
    match name {
        "burchnall" => Ok(vec![
            run_burchnall(cap.unwrap_or(3), 5, seed)?,
            run_corollaries(cap.unwrap_or(3) + 2, cap.unwrap_or(3) + 1),
        ]),
        "nielsen" => {
            let c = cap.unwrap_or(3);
            Ok(vec![run_nielsen(c, c + 1, c)])
        }
        "recurrences" => Ok(vec![run_recurrences(cap.unwrap_or(6))]),
        "runge" => Ok(vec![run_runge(
            &[1, 2, 3],
            cap.unwrap_or(2),
            20,
            seed,
            tol.unwrap_or(1e-9),
        )?]),
        "chu" => Ok(vec![run_chu(max_m.unwrap_or(10))]),
        "hermite" => Ok(vec![run_hermite(cap.unwrap_or(4))]),
        "all" => {
            let mut out = run_named_suite("burchnall", cap.min(Some(3)), max_m, tol, seed)?;
            out.extend(run_named_suite("nielsen", Some(cap.unwrap_or(3).min(3)), max_m, tol, seed)?);
            out.extend(run_named_suite("recurrences", Some(cap.unwrap_or(6).min(6)), max_m, tol, seed)?);
            out.extend(run_named_suite("runge", Some(cap.unwrap_or(2).min(2)), max_m, tol, seed)?);
            out.extend(run_named_suite("chu", cap, max_m.or(Some(10)), tol, seed)?);
            out.extend(run_named_suite("hermite", Some(cap.unwrap_or(4).min(4)), max_m, tol, seed)?);
            Ok(out)
        }
        other => Err(crate::Error::Domain(format!("unknown suite '{other}'"))),
    }
}
