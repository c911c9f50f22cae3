//! Bethe-type spectral points as minima of strictly convex Morse functions.
//!
//! For a coweight `μ` the potential is
//! `V_μ(ξ) = (c/2)<ξ,ξ> − 2π<ρ∨+μ, ξ> + Σ_{α>0} (2/<α,α>) ∫_0^{<ξ,α>} v_α`,
//! where `v_α` is the odd, strictly increasing, quasi-periodic phase function
//! of the two-particle scattering factor. Its unique minimum solves the
//! Bethe-type equations; Newton iteration with the analytic Hessian converges
//! from the `τ → 0` seed, with parameter continuation towards `τ² → 1`.
//!
//! Everything here is a function of `τ²` alone and stays real in the whole
//! regime `−1 < τ² < 1`.

use crate::affine_weyl::Alcove;
use crate::root_system::{rat_to_f64, Coweight, RootSystem};
use crate::tau::TauParams;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Phase function `v(x)` for scattering parameter `r = τ_{α∨}²`: principal
/// branch on `(−π, π)` extended by `v(x + 2π) = v(x) + 2π`.
pub fn v_fn(r: f64, x: f64) -> f64 {
    let m = ((x + PI) / (2.0 * PI)).floor();
    let x0 = x - 2.0 * PI * m;
    let kappa = (1.0 + r) / (1.0 - r);
    2.0 * (kappa * (0.5 * x0).sin()).atan2((0.5 * x0).cos()) + 2.0 * PI * m
}

/// `v'(x) = (1 − r²) / (1 − 2r cos x + r²)`.
pub fn v_prime(r: f64, x: f64) -> f64 {
    (1.0 - r * r) / (1.0 - 2.0 * r * x.cos() + r * r)
}

/// `∫_0^x v = x²/2 + 2 Σ_{k≥1} r^k (1 − cos kx)/k²`; geometric convergence
/// for `|r| < 1`, which is the only regime the solver admits.
pub fn v_antideriv(r: f64, x: f64) -> f64 {
    let mut s = 0.5 * x * x;
    let mut rk = r;
    let mut k = 1u64;
    loop {
        let term = 2.0 * rk * (1.0 - (k as f64 * x).cos()) / ((k * k) as f64);
        s += term;
        if rk.abs() * 4.0 / ((k * k) as f64) < 1e-16 * s.abs().max(1.0) || k > 4_000_000 {
            return s;
        }
        rk *= r;
        k += 1;
    }
}

/// One Bethe minimization instance.
#[derive(Clone, Copy)]
pub struct MorseProblem<'a> {
    pub alc: &'a Alcove<'a>,
    pub tau: TauParams,
}

/// A solved and certified spectral point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub mu: Coweight,
    /// ξ in fundamental-coweight coordinates.
    pub xi: Vec<f64>,
    pub grad_norm: f64,
    pub hessian_det: f64,
    pub in_alcove: bool,
    pub moment_gap_ok: bool,
    pub bae_residual: f64,
    pub newton_iters: usize,
}

impl<'a> MorseProblem<'a> {
    pub fn new(alc: &'a Alcove<'a>, tau: &TauParams) -> MorseProblem<'a> {
        MorseProblem { alc, tau: *tau }
    }

    fn rs(&self) -> &RootSystem {
        self.alc.rs
    }

    fn r_of(&self, idx: usize) -> f64 {
        self.tau.tau2_root(self.rs(), idx)
    }

    fn rho_check_plus(&self, mu: &Coweight) -> Vec<f64> {
        mu.0.iter().map(|&k| (k + 1) as f64).collect()
    }

    /// `V_μ(ξ)`.
    pub fn value(&self, mu: &Coweight, xi: &[f64]) -> f64 {
        let rs = self.rs();
        let rp: Vec<f64> = self.rho_check_plus(mu);
        let mut s = 0.5 * self.alc.c as f64 * rs.ip_cw_f64(xi, xi)
            - 2.0 * PI * rs.ip_cw_f64(&rp, xi);
        for (i, root) in rs.positive.iter().enumerate() {
            let x = rs.pair_vec_root(xi, i);
            s += 2.0 / rat_to_f64(&root.len2) * v_antideriv(self.r_of(i), x);
        }
        s
    }

    /// Gradient of `V_μ` in fundamental-coweight coordinates:
    /// `F = cξ + Σ_α v_α(<ξ,α>) α∨ − 2π(ρ∨+μ)`.
    pub fn gradient(&self, mu: &Coweight, xi: &[f64]) -> DVector<f64> {
        let rs = self.rs();
        let n = rs.rank;
        let mut f = DVector::zeros(n);
        for j in 0..n {
            f[j] = self.alc.c as f64 * xi[j] - 2.0 * PI * (mu.0[j] + 1) as f64;
        }
        for (i, root) in rs.positive.iter().enumerate() {
            let x = rs.pair_vec_root(xi, i);
            let v = v_fn(self.r_of(i), x);
            for j in 0..n {
                f[j] += v * root.coroot_fwv[j] as f64;
            }
        }
        f
    }

    /// True norm of a gradient vector (fundamental-coweight coordinates).
    pub fn v_norm(&self, f: &DVector<f64>) -> f64 {
        let rs = self.rs();
        let mut s = 0.0;
        for j in 0..rs.rank {
            for k in 0..rs.rank {
                s += f[j] * rs.gram_fwv_f64[j][k] * f[k];
            }
        }
        s.max(0.0).sqrt()
    }

    /// Matrix of the Hessian endomorphism in fundamental-coweight
    /// coordinates; its determinant is the basis-independent `det H(ξ)`.
    pub fn hessian_matrix(&self, xi: &[f64]) -> DMatrix<f64> {
        let rs = self.rs();
        let n = rs.rank;
        let mut m = DMatrix::<f64>::identity(n, n) * self.alc.c as f64;
        for (i, root) in rs.positive.iter().enumerate() {
            let x = rs.pair_vec_root(xi, i);
            let vp = v_prime(self.r_of(i), x);
            for j in 0..n {
                for k in 0..n {
                    m[(j, k)] += vp * root.coroot_fwv[j] as f64 * root.simple[k] as f64;
                }
            }
        }
        m
    }

    /// Positive-definiteness certificate: Cholesky of the quadratic form
    /// `<H·, ·>` in coordinates, i.e. `G∨ M` symmetrized.
    pub fn hessian_posdef(&self, xi: &[f64]) -> bool {
        let rs = self.rs();
        let n = rs.rank;
        let m = self.hessian_matrix(xi);
        let mut q = DMatrix::<f64>::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    q[(j, k)] += rs.gram_fwv_f64[j][i] * m[(i, k)];
                }
            }
        }
        let sym = (q.clone() + q.transpose()) * 0.5;
        nalgebra::Cholesky::new(sym).is_some()
    }

    /// `τ → 0` seed `ξ⁰ = 2π(ρ∨+μ)/(c+h)`.
    pub fn seed(&self, mu: &Coweight) -> Vec<f64> {
        let scale = 2.0 * PI / (self.alc.c + self.rs().coxeter) as f64;
        self.rho_check_plus(mu).iter().map(|x| scale * x).collect()
    }

    /// Damped Newton minimization to gradient norm `tol`; Armijo on the value
    /// when the antiderivative series converges comfortably, monotone
    /// residual descent otherwise.
    pub fn minimize(&self, mu: &Coweight, tol: f64) -> Result<(Vec<f64>, f64, usize)> {
        let max_r = self.tau.tau2_s.abs().max(self.tau.tau2_l.abs());
        let use_value = max_r <= 0.99;
        let mut xi = self.seed(mu);
        let mut trace = Vec::new();
        for iter in 0..200 {
            let f = self.gradient(mu, &xi);
            let norm = self.v_norm(&f);
            trace.push(norm);
            if norm <= tol {
                return Ok((xi, norm, iter));
            }
            let m = self.hessian_matrix(&xi);
            let lu = m.clone().lu();
            let d = lu.solve(&(-&f)).ok_or_else(|| Error::NoConvergence {
                iters: iter,
                residual: norm,
                trace: trace.clone(),
            })?;
            let mut step = 1.0;
            let base_val = if use_value { self.value(mu, &xi) } else { 0.0 };
            // directional derivative <∇V, d> in V-coordinates
            let rs = self.rs();
            let mut slope = 0.0;
            for j in 0..rs.rank {
                for k in 0..rs.rank {
                    slope += f[j] * rs.gram_fwv_f64[j][k] * d[k];
                }
            }
            loop {
                let cand: Vec<f64> = xi.iter().zip(d.iter()).map(|(x, dd)| x + step * dd).collect();
                // Near the minimum the Armijo decrease drops below the float
                // granularity of the value; a strict residual decrease is the
                // reliable acceptance test there.
                let ok = self.v_norm(&self.gradient(mu, &cand)) < norm
                    || (use_value && self.value(mu, &cand) <= base_val + 1e-4 * step * slope);
                if ok {
                    xi = cand;
                    break;
                }
                step *= 0.5;
                if step < 1e-12 {
                    return Err(Error::NoConvergence { iters: iter, residual: norm, trace });
                }
            }
        }
        let norm = self.v_norm(&self.gradient(mu, &xi));
        Err(Error::NoConvergence { iters: 200, residual: norm, trace })
    }

    /// Regularity margin of ξ: the distance of the root pairings to `2πZ`.
    pub fn regularity_margin(&self, xi: &[f64]) -> f64 {
        let rs = self.rs();
        let mut m = f64::INFINITY;
        for i in 0..rs.num_positive() {
            let x = rs.pair_vec_root(xi, i) / (2.0 * PI);
            m = m.min((x - x.round()).abs() * 2.0 * PI);
        }
        m
    }

    /// Max residual of the Bethe-type equations over the simple roots.
    pub fn bae_residual(&self, xi: &[f64]) -> Result<f64> {
        if self.regularity_margin(xi) < 1e-8 {
            return Err(Error::NonRegular(self.regularity_margin(xi)));
        }
        let rs = self.rs();
        let mut worst: f64 = 0.0;
        for k in 0..rs.rank {
            let root = rs.simple_idx[k];
            let nu = crate::root_system::Weight(rs.positive[root].fw.clone());
            let lhs_phase = self.alc.c as f64 * rs.pair_vec_root(xi, root);
            let lhs = crate::C64::new(0.0, lhs_phase).exp();
            let mut rhs = crate::C64::new(1.0, 0.0);
            for a in 0..rs.num_positive() {
                let exp = rs.pair_wc(&nu, a, false);
                if exp == 0 {
                    continue;
                }
                let r = self.r_of(a);
                let z = crate::C64::new(0.0, rs.pair_vec_root(xi, a)).exp();
                let ratio = (crate::C64::new(1.0, 0.0) - r * z) / (crate::C64::new(r, 0.0) - z);
                rhs *= ratio.powi(exp as i32);
            }
            worst = worst.max((lhs - rhs).norm());
        }
        Ok(worst)
    }

    /// Moment-gap bounds `2π<ρ∨+μ,α>/(c+κ∓)` around `<ξ,α>`.
    pub fn moment_gaps_ok(&self, mu: &Coweight, xi: &[f64]) -> bool {
        let rs = self.rs();
        let n = rs.rank as f64;
        let mut kp = 0.0;
        let mut km = 0.0;
        for i in 0..rs.num_positive() {
            let r = self.r_of(i);
            kp += (1.0 - r * r) / (1.0 + r.abs()).powi(2);
            km += (1.0 - r * r) / (1.0 - r.abs()).powi(2);
        }
        kp *= 2.0 / n;
        km *= 2.0 / n;
        let c = self.alc.c as f64;
        let rp = self.rho_check_plus(mu);
        (0..rs.num_positive()).all(|i| {
            let top = 2.0 * PI * rs.pair_vec_root(&rp, i);
            let x = rs.pair_vec_root(xi, i);
            let lo = top / (c + km) - 1e-9;
            let hi = top / (c + kp) + 1e-9;
            lo <= x && x <= hi
        })
    }

    pub fn in_open_alcove(&self, xi: &[f64]) -> bool {
        let rs = self.rs();
        (0..rs.num_positive()).all(|i| {
            let x = rs.pair_vec_root(xi, i);
            0.0 < x && x < 2.0 * PI
        })
    }

    /// Full pipeline for one coweight: minimize, then certify.
    pub fn solve(&self, mu: &Coweight, grad_tol: f64, bae_tol: f64) -> Result<SpectralPoint> {
        let (xi, grad_norm, iters) = self.minimize(mu, grad_tol)?;
        let det = self.hessian_matrix(&xi).determinant();
        let posdef = self.hessian_posdef(&xi);
        let in_alcove = self.in_open_alcove(&xi);
        let gaps = self.moment_gaps_ok(mu, &xi);
        let bae = self.bae_residual(&xi)?;
        let point = SpectralPoint {
            mu: mu.clone(),
            xi,
            grad_norm,
            hessian_det: det,
            in_alcove,
            moment_gap_ok: gaps,
            bae_residual: bae,
            newton_iters: iters,
        };
        let dominant = mu.is_dominant()
            && (0..self.rs().num_positive())
                .all(|i| self.rs().pair_cw(mu, i, false) <= self.alc.c);
        if dominant {
            if !posdef || det <= 0.0 {
                return Err(Error::Certification("Hessian not positive definite".into()));
            }
            if !point.in_alcove {
                return Err(Error::Certification("minimum left the open alcove".into()));
            }
            if !point.moment_gap_ok {
                return Err(Error::Certification("moment gaps violated".into()));
            }
            if point.bae_residual > bae_tol {
                return Err(Error::Certification(format!(
                    "Bethe residual {:.3e} above {:.1e}",
                    point.bae_residual, bae_tol
                )));
            }
        }
        Ok(point)
    }
}

/// Continuation ladder towards extreme `τ²`, warm-starting each Newton solve.
pub fn solve_continued(
    alc: &Alcove,
    tau2_s: f64,
    tau2_l: f64,
    mu: &Coweight,
    grad_tol: f64,
) -> Result<Vec<f64>> {
    let target = tau2_s.abs().max(tau2_l.abs());
    let mut stages: Vec<f64> = Vec::new();
    if target > 0.9 {
        let mut cur = 0.8;
        stages.push(cur);
        while 1.0 - cur > 1.5 * (1.0 - target) {
            cur = 1.0 - (1.0 - cur) * 0.25;
            stages.push(cur);
        }
    }
    stages.push(1.0);
    let mut xi: Option<Vec<f64>> = None;
    for s in &stages {
        let t2s = tau2_s * s;
        let t2l = tau2_l * s;
        let tau = TauParams::from_tau2(t2s, t2l)?;
        let p = MorseProblem::new(alc, &tau);
        let mut cur = xi.unwrap_or_else(|| p.seed(mu));
        // refine from the warm start
        for iter in 0..200 {
            let f = p.gradient(mu, &cur);
            let norm = p.v_norm(&f);
            if norm <= grad_tol {
                break;
            }
            let m = p.hessian_matrix(&cur);
            let d = m.lu().solve(&(-&f)).ok_or(Error::NoConvergence {
                iters: iter,
                residual: norm,
                trace: vec![],
            })?;
            let mut step = 1.0;
            loop {
                let cand: Vec<f64> =
                    cur.iter().zip(d.iter()).map(|(x, dd)| x + step * dd).collect();
                if p.v_norm(&p.gradient(mu, &cand)) < norm {
                    cur = cand;
                    break;
                }
                step *= 0.5;
                if step < 1e-12 {
                    return Err(Error::NoConvergence { iters: iter, residual: norm, trace: vec![] });
                }
            }
        }
        xi = Some(cur);
    }
    Ok(xi.unwrap())
}

/// Solve the whole spectrum over `P_c^{∨,+}` in parallel.
pub fn spectrum(
    alc: &Alcove,
    tau: &TauParams,
    grad_tol: f64,
    bae_tol: f64,
) -> Result<Vec<SpectralPoint>> {
    let mus = alc.alcove_coweights();
    let results: Vec<Result<SpectralPoint>> = mus
        .par_iter()
        .map(|mu| MorseProblem::new(alc, tau).solve(mu, grad_tol, bae_tol))
        .collect();
    results.into_iter().collect()
}

/// Dot action `v·μ = v(μ + ρ∨) − ρ∨` of a finite Weyl element on coweights.
pub fn dot_action(_rs: &RootSystem, v: &crate::affine_weyl::FinEl, mu: &Coweight) -> Coweight {
    let shifted: Vec<i64> = mu.0.iter().map(|&k| k + 1).collect();
    let moved = v.mc.apply(&shifted);
    Coweight(moved.iter().map(|&k| k - 1).collect())
}

/// Dot-regularity criterion: `ξ_μ` is regular iff `<ρ∨+μ, α> ∉ (c+h)Z`.
pub fn dot_regular(alc: &Alcove, mu: &Coweight) -> bool {
    let rs = alc.rs;
    let rp = Coweight(mu.0.iter().map(|&k| k + 1).collect());
    let modulus = alc.c + rs.coxeter;
    (0..rs.num_positive()).all(|i| rs.pair_cw(&rp, i, false).rem_euclid(modulus) != 0)
}
