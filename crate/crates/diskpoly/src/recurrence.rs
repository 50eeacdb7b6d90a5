//! Three-term recurrence relations: the basic one, the four mixed-argument
//! relations, the derivative relation and its multiplication-operator
//! companion, plus a recurrence-based evaluation engine seeded at
//! `Z_{0,s} = (γ+1)_s z^s`.
//!
//! Every relation is also assembled exactly over `Q[γ][z, z̄]`; relations
//! with rational coefficients in γ are cleared of denominators first, so the
//! residual is a polynomial that must vanish identically.

use crate::disk::{zernike_exact, DiskIndex, DiskPolyValue, Engine};
use crate::exact::{GammaPoly, TriPoly};
use crate::{ComplexValue, Error, Result};
use serde::Serialize;

/// The seven relations of the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RecurrenceId {
    /// `(γ+m+1)/(γ+m+n+1) · Z_{m+1,n} = (γ+m+n+1) z̄ Z_{m,n} - n(γ+m+n) Z_{m,n-1}`.
    Basic,
    /// `Z_{m,n+1} = (γ+m+n+1) { z Z_{m,n} - m (1-|z|²) Z_{m-1,n}^{γ+1} }`.
    Ttr11,
    /// `Z_{m,n} = (γ+m+1)/(γ+m+n+1) · Z_{m,n}^{γ+1} - m z̄ Z_{m-1,n}^{γ+1}`.
    Ttr21,
    /// `Z_{m,n} = { z̄ Z_{m,n+1} + (γ+m+1)(1-|z|²) Z_{m,n}^{γ+1} } / (γ+m+n+1)`.
    Ttr41,
    /// `Z_{m+1,n} = (γ+1) z̄ Z_{m,n}^{γ+1} - n(γ+m+2)(1-|z|²) Z_{m,n-1}^{γ+2}`.
    Ttr51,
    /// `(1-|z|²) ∂/∂z Z_{m,n}^{γ+1} = (γ+1) z̄ Z_{m,n}^{γ+1} - Z_{m+1,n}`.
    Ttr31,
    /// `{ (γ+m+1) z̄ - (1-|z|²) ∂/∂z } Z_{m,n} = (γ+m+1)/(γ+m+n+1) · Z_{m+1,n}`.
    Ttr61,
}

impl RecurrenceId {
    pub const ALL: [RecurrenceId; 7] = [
        RecurrenceId::Basic,
        RecurrenceId::Ttr11,
        RecurrenceId::Ttr21,
        RecurrenceId::Ttr41,
        RecurrenceId::Ttr51,
        RecurrenceId::Ttr31,
        RecurrenceId::Ttr61,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RecurrenceId::Basic => "basic",
            RecurrenceId::Ttr11 => "ttr11",
            RecurrenceId::Ttr21 => "ttr21",
            RecurrenceId::Ttr41 => "ttr41",
            RecurrenceId::Ttr51 => "ttr51",
            RecurrenceId::Ttr31 => "ttr31",
            RecurrenceId::Ttr61 => "ttr61",
        }
    }
}

/// Evaluate `Z_{m,n}^γ` by raising m with the basic relation from the seed
/// row `Z_{0,k} = (γ+1)_k z^k`.
///
/// Refuses γ ≤ -1, where the division by `(γ+m+1)` can hit zero along the
/// sweep; the explicit engine covers that range.
pub fn eval_by_recurrence(idx: DiskIndex, gamma: f64, z: ComplexValue) -> Result<DiskPolyValue> {
    if gamma <= -1.0 {
        return Err(Error::Domain(format!(
            "recurrence engine needs gamma > -1, got {gamma} (use the explicit engine)"
        )));
    }
    let (m, n) = (idx.m, idx.n);
    let zbar = z.conj();
    // seed row
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut seed = ComplexValue::new(1.0, 0.0);
    row.push(seed);
    for k in 0..n {
        seed *= (gamma + 1.0 + k as f64) * z;
        row.push(seed);
    }
    let mut max_mag = row.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    // raise m
    for mp in 0..m {
        let mpf = mp as f64;
        let mut next = Vec::with_capacity(row.len());
        for (k, &cur) in row.iter().enumerate() {
            let kf = k as f64;
            let a = gamma + mpf + kf + 1.0;
            let lower = if k == 0 {
                ComplexValue::new(0.0, 0.0)
            } else {
                kf * (gamma + mpf + kf) * row[k - 1]
            };
            let v = (a / (gamma + mpf + 1.0)) * (a * zbar * cur - lower);
            max_mag = max_mag.max(v.norm());
            next.push(v);
        }
        row = next;
    }
    let value = row[n as usize];
    Ok(DiskPolyValue::with_condition(value, Engine::Recurrence, max_mag))
}

/// Building blocks for one relation, optionally conjugated
/// (`Z_{a,b} → Z_{b,a}`, `z ↔ z̄`, `∂/∂z → ∂/∂z̄`).
struct Blocks {
    conj: bool,
}

impl Blocks {
    fn zp(&self, m: u32, n: u32, shift: i64) -> TriPoly {
        let idx = if self.conj {
            DiskIndex::new(n, m)
        } else {
            DiskIndex::new(m, n)
        };
        zernike_exact(idx).shift_gamma(shift)
    }

    fn z(&self) -> TriPoly {
        if self.conj {
            TriPoly::zbar()
        } else {
            TriPoly::z()
        }
    }

    fn zb(&self) -> TriPoly {
        if self.conj {
            TriPoly::z()
        } else {
            TriPoly::zbar()
        }
    }

    fn dz(&self, p: &TriPoly) -> TriPoly {
        if self.conj {
            p.d_dzbar()
        } else {
            p.d_dz()
        }
    }
}

fn residual_impl(rid: RecurrenceId, idx: DiskIndex, conj: bool) -> TriPoly {
    let (m, n) = (idx.m, idx.n);
    let (mi, ni) = (m as i64, n as i64);
    let b = Blocks { conj };
    let g = |a: i64| GammaPoly::gamma_plus(a);
    let w = TriPoly::w();
    let diff = match rid {
        RecurrenceId::Basic => {
            // cleared by (γ+m+n+1)
            let lhs = b.zp(m + 1, n, 0).scale_gamma(&g(mi + 1));
            let mut rhs = (&b.zb() * &b.zp(m, n, 0))
                .scale_gamma(&(&g(mi + ni + 1) * &g(mi + ni + 1)));
            if n >= 1 {
                let t = b
                    .zp(m, n - 1, 0)
                    .scale_gamma(&(&g(mi + ni) * &g(mi + ni + 1)).scale_int(ni));
                rhs = &rhs - &t;
            }
            &lhs - &rhs
        }
        RecurrenceId::Ttr11 => {
            let lhs = b.zp(m, n + 1, 0);
            let mut inner = &b.z() * &b.zp(m, n, 0);
            if m >= 1 {
                let t = (&w * &b.zp(m - 1, n, 1)).scale_int(mi);
                inner = &inner - &t;
            }
            &lhs - &inner.scale_gamma(&g(mi + ni + 1))
        }
        RecurrenceId::Ttr21 => {
            // cleared by (γ+m+n+1)
            let lhs = b.zp(m, n, 0).scale_gamma(&g(mi + ni + 1));
            let mut rhs = b.zp(m, n, 1).scale_gamma(&g(mi + 1));
            if m >= 1 {
                let t = (&b.zb() * &b.zp(m - 1, n, 1))
                    .scale_gamma(&g(mi + ni + 1).scale_int(mi));
                rhs = &rhs - &t;
            }
            &lhs - &rhs
        }
        RecurrenceId::Ttr41 => {
            // cleared by (γ+m+n+1)
            let lhs = b.zp(m, n, 0).scale_gamma(&g(mi + ni + 1));
            let rhs = &(&b.zb() * &b.zp(m, n + 1, 0))
                + &(&w * &b.zp(m, n, 1)).scale_gamma(&g(mi + 1));
            &lhs - &rhs
        }
        RecurrenceId::Ttr51 => {
            let lhs = b.zp(m + 1, n, 0);
            let mut rhs = (&b.zb() * &b.zp(m, n, 1)).scale_gamma(&g(1));
            if n >= 1 {
                let t = (&w * &b.zp(m, n - 1, 2))
                    .scale_gamma(&g(mi + 2).scale_int(ni));
                rhs = &rhs - &t;
            }
            &lhs - &rhs
        }
        RecurrenceId::Ttr31 => {
            let lhs = &w * &b.dz(&b.zp(m, n, 1));
            let rhs = &(&b.zb() * &b.zp(m, n, 1)).scale_gamma(&g(1)) - &b.zp(m + 1, n, 0);
            &lhs - &rhs
        }
        RecurrenceId::Ttr61 => {
            // cleared by (γ+m+n+1)
            let zmn = b.zp(m, n, 0);
            let lhs = (&(&b.zb() * &zmn).scale_gamma(&g(mi + 1)) - &(&w * &b.dz(&zmn)))
                .scale_gamma(&g(mi + ni + 1));
            let rhs = b.zp(m + 1, n, 0).scale_gamma(&g(mi + 1));
            &lhs - &rhs
        }
    };
    diff.subst_w()
}

/// `LHS - RHS` of the chosen relation in `Q[γ][z, z̄]`; the theorems assert
/// this is the zero polynomial.
pub fn recurrence_residual(rid: RecurrenceId, idx: DiskIndex) -> TriPoly {
    residual_impl(rid, idx, false)
}

/// Residual of the conjugate counterpart (`Z_{a,b} → Z_{b,a}`, `z ↔ z̄`).
pub fn conjugate_counterpart(rid: RecurrenceId, idx: DiskIndex) -> TriPoly {
    residual_impl(rid, idx, true)
}
