//! Multiplicity / length-multiplicative function parameters.
//!
//! The primary parameters are `tau_s^2` and `tau_l^2`; the repulsive regime of
//! the analysis is `-1 < tau^2 < 1`, so `tau` itself may be imaginary and is
//! stored as a complex principal square root. All quantities that must stay
//! real in that regime (`tau_w^2`, `e_tau`, `h_tau`, ...) are evaluated
//! through integer powers of `tau^2`.

use crate::affine_weyl::AffineWeylElement;
use crate::root_system::{Coweight, RootSystem, Weight};
use crate::{C64, Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct TauParams {
    pub tau2_s: f64,
    pub tau2_l: f64,
    pub tau_s: C64,
    pub tau_l: C64,
}

impl TauParams {
    /// Equal or unequal labels from real `tau` values in `(0, 1)`.
    pub fn new(tau_s: f64, tau_l: f64) -> Result<TauParams> {
        Self::from_tau2(tau_s * tau_s, tau_l * tau_l)
    }

    pub fn equal(tau: f64) -> Result<TauParams> {
        Self::new(tau, tau)
    }

    pub fn from_tau2(tau2_s: f64, tau2_l: f64) -> Result<TauParams> {
        for t2 in [tau2_s, tau2_l] {
            if !(t2.abs() < 1.0) || t2 == 0.0 {
                return Err(Error::TauRange(tau2_s, tau2_l));
            }
        }
        let sqrt = |t2: f64| -> C64 { C64::new(t2, 0.0).sqrt() };
        Ok(TauParams { tau2_s, tau2_l, tau_s: sqrt(tau2_s), tau_l: sqrt(tau2_l) })
    }

    pub fn positive_regime(&self) -> bool {
        self.tau2_s > 0.0 && self.tau2_l > 0.0
    }

    /// Is the simple affine root `a_j` built on a short root? (`a_0` is, since
    /// it comes from the highest short root.)
    pub fn short_j(rs: &RootSystem, j: usize) -> bool {
        if j == 0 {
            true
        } else {
            rs.simple_short[j - 1]
        }
    }

    pub fn tau_j(&self, rs: &RootSystem, j: usize) -> C64 {
        if Self::short_j(rs, j) {
            self.tau_s
        } else {
            self.tau_l
        }
    }

    pub fn tau2_j(&self, rs: &RootSystem, j: usize) -> f64 {
        if Self::short_j(rs, j) {
            self.tau2_s
        } else {
            self.tau2_l
        }
    }

    /// `q_j = tau_j - tau_j^{-1}`.
    pub fn q_j(&self, rs: &RootSystem, j: usize) -> C64 {
        let t = self.tau_j(rs, j);
        t - t.inv()
    }

    /// Multiplicity value on the orbit of a finite root.
    pub fn tau_root(&self, rs: &RootSystem, idx: usize) -> C64 {
        if rs.positive[idx].short {
            self.tau_s
        } else {
            self.tau_l
        }
    }

    pub fn tau2_root(&self, rs: &RootSystem, idx: usize) -> f64 {
        if rs.positive[idx].short {
            self.tau2_s
        } else {
            self.tau2_l
        }
    }

    /// `tau_w = prod_{a in R(w)} tau_a` (complex in the negative regime).
    pub fn tau_w(&self, rs: &RootSystem, w: &AffineWeylElement) -> C64 {
        let (ns, nl) = w.tau_exponents(rs);
        self.tau_s.powi(ns as i32) * self.tau_l.powi(nl as i32)
    }

    /// `tau_w^2`, always real.
    pub fn tau_w2(&self, rs: &RootSystem, w: &AffineWeylElement) -> f64 {
        let (ns, nl) = w.tau_exponents(rs);
        self.tau2_s.powi(ns as i32) * self.tau2_l.powi(nl as i32)
    }

    /// `e_tau(eta) = prod_{alpha > 0} tau_{alpha_vee}^{<eta, alpha>}` for a
    /// coweight `eta`; the exponents split per length class and are even for
    /// all coweights in `Q_vee`, which is the only lattice this is used on.
    pub fn e_tau(&self, rs: &RootSystem, eta: &Coweight) -> f64 {
        let mut es = 0i64;
        let mut el = 0i64;
        for i in 0..rs.num_positive() {
            let p = rs.pair_cw(eta, i, false);
            if rs.positive[i].short {
                es += p;
            } else {
                el += p;
            }
        }
        assert!(es % 2 == 0 && el % 2 == 0, "odd e_tau exponent");
        self.tau2_s.powi((es / 2) as i32) * self.tau2_l.powi((el / 2) as i32)
    }

    /// `e_tau_vee(eta) = prod_{alpha > 0} tau_{alpha_vee}^{<eta, alpha_vee>}`
    /// for a weight `eta` (used on the short-root orbit, even exponents).
    pub fn e_tau_vee(&self, rs: &RootSystem, eta: &Weight) -> f64 {
        let mut es = 0i64;
        let mut el = 0i64;
        for i in 0..rs.num_positive() {
            let p = rs.pair_wc(eta, i, false);
            if rs.positive[i].short {
                es += p;
            } else {
                el += p;
            }
        }
        assert!(es % 2 == 0 && el % 2 == 0, "odd e_tau_vee exponent");
        self.tau2_s.powi((es / 2) as i32) * self.tau2_l.powi((el / 2) as i32)
    }

    /// `h_tau = tau_0^2 e_tau(theta_vee)`.
    pub fn h_tau(&self, rs: &RootSystem) -> f64 {
        let theta_vee = Coweight(rs.positive[rs.theta].coroot_fwv.clone());
        self.tau2_s * self.e_tau(rs, &theta_vee)
    }

    /// `h_tau_vee = tau_0^2 e_tau_vee(theta)`.
    pub fn h_tau_vee(&self, rs: &RootSystem) -> f64 {
        self.tau2_s * self.e_tau_vee(rs, &rs.theta_weight())
    }
}
