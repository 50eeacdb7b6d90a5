//! Numerical inner products on the weighted disk `L²(D, (1-|z|²)^γ dλ)`.
//!
//! In polar coordinates with `u = r²` the measure splits as
//! `dλ = (du/2) dθ`, so a product rule of Gauss nodes for the weight
//! `(1-u)^γ` on (0,1) times a uniform angular grid integrates
//! `p(z, z̄)(1-|z|²)^γ` exactly up to the rule's degree.

use crate::disk::{zernike_explicit, DiskIndex};
use crate::scalar::ln_gamma;
use crate::{ComplexValue, Error, Result};
use nalgebra::DMatrix;

/// Product quadrature rule: Gauss radial nodes in `u = r² ∈ (0,1)` for the
/// weight `(1-u)^γ`, uniform trapezoid angular grid.
#[derive(Debug, Clone)]
pub struct DiskRule {
    /// Nodes in u = r².
    pub radial_nodes: Vec<f64>,
    /// Weights for `∫₀¹ p(u) (1-u)^γ du`.
    pub radial_weights: Vec<f64>,
    pub angular_count: usize,
    pub gamma: f64,
}

/// Gauss-Jacobi nodes/weights on [-1, 1] for `(1-x)^α (1+x)^β` via the
/// Golub-Welsch eigen decomposition of the recurrence tridiagonal.
fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let (a, b) = (alpha, beta);
    let mut mat = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let diag = if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / ((2.0 * kf + a + b) * (2.0 * kf + a + b + 2.0))
        };
        mat[(k, k)] = diag;
        if k + 1 < n {
            let kf = kf + 1.0;
            let b2 = if k == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
            } else {
                4.0 * kf * (kf + a) * (kf + b) * (kf + a + b)
                    / ((2.0 * kf + a + b).powi(2)
                        * (2.0 * kf + a + b + 1.0)
                        * (2.0 * kf + a + b - 1.0))
            };
            let off = b2.sqrt();
            mat[(k, k + 1)] = off;
            mat[(k + 1, k)] = off;
        }
    }
    let eig = mat.symmetric_eigen();
    // μ₀ = ∫ (1-x)^α (1+x)^β dx = 2^{α+β+1} B(α+1, β+1)
    let mu0 = ((a + b + 1.0) * 2f64.ln() + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
        - ln_gamma(a + b + 2.0))
    .exp();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.into_iter().unzip()
}

/// Build the product rule. Radial exactness: polynomials in u of degree
/// ≤ 2·radial_order - 1; angular exactness: trigonometric polynomials of
/// degree < angular_count.
pub fn build_rule(gamma: f64, radial_order: usize, angular_count: usize) -> Result<DiskRule> {
    if gamma <= -1.0 {
        return Err(Error::Domain(format!(
            "disk weight needs gamma > -1, got {gamma}"
        )));
    }
    if radial_order < 1 || angular_count < 1 {
        return Err(Error::Domain(
            "rule needs radial_order >= 1 and angular_count >= 1".into(),
        ));
    }
    let (x, wx) = gauss_jacobi(radial_order, gamma, 0.0);
    // u = (x+1)/2 maps the weight to (1-u)^γ with ∫ dx = 2^{γ+1} ∫ du
    let scale = 2f64.powf(-gamma - 1.0);
    let radial_nodes = x.iter().map(|&xi| (xi + 1.0) / 2.0).collect();
    let radial_weights = wx.iter().map(|&wi| wi * scale).collect();
    Ok(DiskRule { radial_nodes, radial_weights, angular_count, gamma })
}

impl DiskRule {
    /// Total mass `∫_D (1-|z|²)^γ dλ`; equals `π/(γ+1)`.
    pub fn weight_mass(&self) -> f64 {
        let radial: f64 = self.radial_weights.iter().sum();
        radial * std::f64::consts::PI
    }

    /// Grid points `√u_i e^{iθ_j}` with their combined measure weights.
    pub fn points(&self) -> Vec<(ComplexValue, f64)> {
        let mut out = Vec::with_capacity(self.radial_nodes.len() * self.angular_count);
        let dtheta = 2.0 * std::f64::consts::PI / self.angular_count as f64;
        for (u, wu) in self.radial_nodes.iter().zip(&self.radial_weights) {
            let r = u.sqrt();
            for j in 0..self.angular_count {
                let theta = dtheta * j as f64;
                // dλ = (du/2) dθ
                out.push((ComplexValue::from_polar(r, theta), wu * dtheta / 2.0));
            }
        }
        out
    }
}

/// `⟨f, g⟩ = ∫_D f(z) conj(g(z)) (1-|z|²)^γ dλ` under the rule.
pub fn inner_product<F, G>(f: F, g: G, rule: &DiskRule) -> ComplexValue
where
    F: Fn(ComplexValue) -> ComplexValue,
    G: Fn(ComplexValue) -> ComplexValue,
{
    let terms = rule
        .points()
        .into_iter()
        .map(|(z, w)| f(z) * g(z).conj() * w);
    crate::scalar::stable_sum(terms)
}

/// All pairwise inner products of `{Z_{m,n} : m+n ≤ degree_cap}`.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    pub basis: Vec<DiskIndex>,
    pub entries: Vec<Vec<ComplexValue>>,
    pub gamma: f64,
    pub degree_cap: u32,
}

pub fn gram_matrix(degree_cap: u32, gamma: f64, rule: &DiskRule) -> GramMatrix {
    let mut basis = Vec::new();
    for m in 0..=degree_cap {
        for n in 0..=(degree_cap - m) {
            basis.push(DiskIndex::new(m, n));
        }
    }
    let pts = rule.points();
    // evaluate every basis element once over the grid
    let values: Vec<Vec<ComplexValue>> = basis
        .iter()
        .map(|&idx| {
            pts.iter()
                .map(|&(z, _)| zernike_explicit(idx, gamma, z).value)
                .collect()
        })
        .collect();
    let b = basis.len();
    let mut entries = vec![vec![ComplexValue::new(0.0, 0.0); b]; b];
    for i in 0..b {
        for j in 0..=i {
            let acc = crate::scalar::stable_sum(
                pts.iter()
                    .enumerate()
                    .map(|(p, &(_, w))| values[i][p] * values[j][p].conj() * w),
            );
            entries[i][j] = acc;
            entries[j][i] = acc.conj();
        }
    }
    GramMatrix { basis, entries, gamma, degree_cap }
}

impl GramMatrix {
    /// Largest `|G_ij| / √(G_ii G_jj)` over i ≠ j.
    pub fn worst_offdiag_ratio(&self) -> f64 {
        let b = self.basis.len();
        let mut worst = 0.0f64;
        for i in 0..b {
            for j in 0..b {
                if i == j {
                    continue;
                }
                let scale = (self.entries[i][i].re * self.entries[j][j].re).sqrt();
                worst = worst.max(self.entries[i][j].norm() / scale);
            }
        }
        worst
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.basis.len()).map(|i| self.entries[i][i].re).collect()
    }
}
