//! Lattice-function representations: difference-reflection operators `T̂`,
//! integral-reflection operators `I`, the triangular intertwiner `𝒥`, the
//! discrete Dunkl-type operators `X̂^ν`, and the integrable Laplacians `L_ω`.
//!
//! Operators are realized through their *rows*: for an output point `λ` the
//! row is the finite functional `f ↦ Σ_μ row[μ] f(μ)`. Rows make the
//! dependency footprint of every operator explicit, so window violations are
//! hard errors instead of silent zero-extensions, and they expose linearity
//! (the Dunkl operators and the intertwiner are assembled once per point and
//! applied to any number of functions).

use crate::affine_weyl::{simple_affine_root, AffineRoot, AffineWeylElement, Alcove};
use crate::hecke::CoeffCache;
use crate::root_system::Weight;
use crate::tau::TauParams;
use crate::{C64, Error, Result};
use num_complex::Complex;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

/// Finitely supported complex function on the weight lattice; the key set of
/// `vals` is the window on which values are tracked.
#[derive(Clone, Debug, Default)]
pub struct LatticeFunction {
    pub vals: HashMap<Weight, C64>,
}

impl LatticeFunction {
    pub fn from_fn(window: &[Weight], mut f: impl FnMut(&Weight) -> C64) -> LatticeFunction {
        LatticeFunction { vals: window.iter().map(|w| (w.clone(), f(w))).collect() }
    }

    pub fn indicator(at: &Weight, window: &[Weight]) -> LatticeFunction {
        Self::from_fn(window, |w| {
            if w == at {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn get(&self, x: &Weight) -> Result<C64> {
        self.vals.get(x).copied().ok_or_else(|| Error::OutOfWindow(x.clone()))
    }

    pub fn window(&self) -> Vec<Weight> {
        let mut v: Vec<Weight> = self.vals.keys().cloned().collect();
        v.sort();
        v
    }

    pub fn dot_row(&self, row: &Row) -> Result<C64> {
        let mut s = C64::new(0.0, 0.0);
        for (w, c) in row {
            s += *c * self.get(w)?;
        }
        Ok(s)
    }

    pub fn max_diff(&self, other: &LatticeFunction) -> f64 {
        let mut m: f64 = 0.0;
        for (w, c) in &self.vals {
            if let Some(d) = other.vals.get(w) {
                m = m.max((c - d).norm());
            }
        }
        m
    }

    /// Restriction of both functions to the common window, max-norm distance.
    pub fn common_window(&self, other: &LatticeFunction) -> Vec<Weight> {
        let mut v: Vec<Weight> =
            self.vals.keys().filter(|k| other.vals.contains_key(*k)).cloned().collect();
        v.sort();
        v
    }
}

pub type Row = HashMap<Weight, C64>;

fn row_add(row: &mut Row, key: Weight, c: C64) {
    if c.norm_sqr() == 0.0 {
        return;
    }
    *row.entry(key).or_insert(C64::new(0.0, 0.0)) += c;
}

fn row_axpy(acc: &mut Row, coef: C64, row: &Row) {
    for (k, c) in row {
        row_add(acc, k.clone(), coef * *c);
    }
}

/// `{λ ∈ P : |<λ, α∨>| ≤ radius}`, a `W_0`-stable window.
pub fn weight_window(rs: &crate::root_system::RootSystem, radius: i64) -> Vec<Weight> {
    let n = rs.rank;
    let mut out = Vec::new();
    let mut cur = vec![-radius; n];
    loop {
        let w = Weight(cur.clone());
        if (0..rs.num_positive()).all(|a| rs.pair_wc(&w, a, false).abs() <= radius) {
            out.push(w);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            cur[i] += 1;
            if cur[i] <= radius {
                break;
            }
            cur[i] = -radius;
            i += 1;
        }
    }
}

/// Operator context: alcove + multiplicity parameters + table cache.
pub struct LatticeOps<'a> {
    pub alc: &'a Alcove<'a>,
    pub tau: &'a TauParams,
    coeff_cache: RefCell<CoeffCache<C64>>,
    /// `e_tau(alpha_vee)` per positive root.
    e_tau_root: Vec<f64>,
    h_tau: f64,
}

impl<'a> LatticeOps<'a> {
    pub fn new(alc: &'a Alcove<'a>, tau: &'a TauParams) -> LatticeOps<'a> {
        let rs = alc.rs;
        let e_tau_root = (0..rs.num_positive())
            .map(|i| tau.e_tau(rs, &crate::root_system::Coweight(rs.positive[i].coroot_fwv.clone())))
            .collect();
        LatticeOps {
            alc,
            tau,
            coeff_cache: RefCell::new(CoeffCache::new()),
            e_tau_root,
            h_tau: tau.h_tau(rs),
        }
    }

    fn rs(&self) -> &crate::root_system::RootSystem {
        self.alc.rs
    }

    pub fn tau_aff(&self, a: &AffineRoot) -> C64 {
        self.tau.tau_root(self.rs(), a.idx)
    }

    /// `s_a(x) = x − a(x)·α` with `α` the (signed) gradient root of `a`.
    pub fn reflect(&self, a: &AffineRoot, x: &Weight) -> Weight {
        let val = a.value(self.rs(), self.alc.c, x);
        let root = &self.rs().positive[a.idx].fw;
        let mut v = x.0.clone();
        for (t, &r) in v.iter_mut().zip(root) {
            let step = if a.neg { -r } else { r };
            *t -= val * step;
        }
        Weight(v)
    }

    /// Difference-reflection operator for an arbitrary affine root, on the
    /// maximal output window.
    pub fn apply_t_hat(&self, a: &AffineRoot, f: &LatticeFunction) -> LatticeFunction {
        let t = self.tau_aff(a);
        let ti = t.inv();
        let mut vals = HashMap::new();
        for x in f.vals.keys() {
            let v = a.value(self.rs(), self.alc.c, x);
            let sx = self.reflect(a, x);
            let out = if v > 0 {
                match f.vals.get(&sx) {
                    Some(&fx) => t * fx,
                    None => continue,
                }
            } else if v == 0 {
                t * f.vals[x]
            } else {
                match f.vals.get(&sx) {
                    Some(&fsx) => ti * fsx + (t - ti) * f.vals[x],
                    None => continue,
                }
            };
            vals.insert(x.clone(), out);
        }
        LatticeFunction { vals }
    }

    pub fn apply_t_hat_j(&self, j: usize, f: &LatticeFunction) -> LatticeFunction {
        self.apply_t_hat(&simple_affine_root(self.rs(), j), f)
    }

    /// The group action `(wf)(x) = f(w^{-1}x)` (used for the `Ω` generators).
    pub fn apply_group(&self, w: &AffineWeylElement, f: &LatticeFunction) -> LatticeFunction {
        let mut vals = HashMap::new();
        for (x, &c) in &f.vals {
            vals.insert(w.act_weight(self.alc.c, x), c);
        }
        LatticeFunction { vals }
    }

    /// Integral-reflection operator `I_a = τ_a s_a + (τ_a − τ_a^{-1}) J_a`.
    pub fn apply_i(&self, a: &AffineRoot, f: &LatticeFunction) -> LatticeFunction {
        let t = self.tau_aff(a);
        let q = t - t.inv();
        let root = &self.rs().positive[a.idx].fw;
        let step: Vec<i64> = if a.neg { root.iter().map(|x| -x).collect() } else { root.clone() };
        let mut vals = HashMap::new();
        'outer: for x in f.vals.keys() {
            let k = a.value(self.rs(), self.alc.c, x);
            let sx = self.reflect(a, x);
            let mut out;
            match f.vals.get(&sx) {
                Some(&fsx) => out = t * fsx,
                None => continue,
            }
            if k > 0 {
                for i in 1..=k {
                    let mut p = x.0.clone();
                    for (tt, &s) in p.iter_mut().zip(&step) {
                        *tt -= i * s;
                    }
                    match f.vals.get(&Weight(p)) {
                        Some(&fp) => out -= q * fp,
                        None => continue 'outer,
                    }
                }
            } else if k < 0 {
                for i in 0..(-k) {
                    let mut p = x.0.clone();
                    for (tt, &s) in p.iter_mut().zip(&step) {
                        *tt += i * s;
                    }
                    match f.vals.get(&Weight(p)) {
                        Some(&fp) => out += q * fp,
                        None => continue 'outer,
                    }
                }
            }
            vals.insert(x.clone(), out);
        }
        LatticeFunction { vals }
    }

    pub fn apply_i_j(&self, j: usize, f: &LatticeFunction) -> LatticeFunction {
        self.apply_i(&simple_affine_root(self.rs(), j), f)
    }

    /// `I_w` along a reduced word (with the `Ω`-part acting as the group).
    pub fn apply_i_word(&self, w: &AffineWeylElement, f: &LatticeFunction) -> LatticeFunction {
        let (u, letters) = w.reduced_word(self.rs());
        let mut g = f.clone();
        for &j in letters.iter().rev() {
            g = self.apply_i_j(j, &g);
        }
        if !u.is_identity() {
            g = self.apply_group(&u, &g);
        }
        g
    }

    /// Row of `(T̂_{s_{letters[0]}} ∘ ⋯ ∘ T̂_{s_{letters[last]}} f)(x)`.
    pub fn t_word_row_at(&self, letters: &[usize], x: &Weight) -> Row {
        let mut memo: HashMap<(usize, Weight), Rc<Row>> = HashMap::new();
        self.t_word_row_rec(letters, 0, x, &mut memo).as_ref().clone()
    }

    fn t_word_row_rec(
        &self,
        letters: &[usize],
        k: usize,
        x: &Weight,
        memo: &mut HashMap<(usize, Weight), Rc<Row>>,
    ) -> Rc<Row> {
        if let Some(r) = memo.get(&(k, x.clone())) {
            return r.clone();
        }
        let row = if k == letters.len() {
            let mut r = Row::new();
            row_add(&mut r, x.clone(), C64::new(1.0, 0.0));
            r
        } else {
            let j = letters[k];
            let a = simple_affine_root(self.rs(), j);
            let t = self.tau.tau_j(self.rs(), j);
            let v = a.value(self.rs(), self.alc.c, x);
            let sx = self.reflect(&a, x);
            let mut r = Row::new();
            if v > 0 {
                row_axpy(&mut r, t, &self.t_word_row_rec(letters, k + 1, &sx, memo));
            } else if v == 0 {
                row_axpy(&mut r, t, &self.t_word_row_rec(letters, k + 1, x, memo));
            } else {
                row_axpy(&mut r, t.inv(), &self.t_word_row_rec(letters, k + 1, &sx, memo));
                row_axpy(&mut r, t - t.inv(), &self.t_word_row_rec(letters, k + 1, x, memo));
            }
            r
        };
        let rc = Rc::new(row);
        memo.insert((k, x.clone()), rc.clone());
        rc
    }

    /// Row of `(I_{s_{letters[0]}} ∘ ⋯ ∘ I_{s_{letters[last]}} f)(x)`.
    pub fn i_word_row_at(&self, letters: &[usize], x: &Weight) -> Row {
        let mut memo: HashMap<(usize, Weight), Rc<Row>> = HashMap::new();
        self.i_word_row_rec(letters, 0, x, &mut memo).as_ref().clone()
    }

    fn i_word_row_rec(
        &self,
        letters: &[usize],
        k: usize,
        x: &Weight,
        memo: &mut HashMap<(usize, Weight), Rc<Row>>,
    ) -> Rc<Row> {
        if let Some(r) = memo.get(&(k, x.clone())) {
            return r.clone();
        }
        let row = if k == letters.len() {
            let mut r = Row::new();
            row_add(&mut r, x.clone(), C64::new(1.0, 0.0));
            r
        } else {
            let j = letters[k];
            let a = simple_affine_root(self.rs(), j);
            let t = self.tau.tau_j(self.rs(), j);
            let q = t - t.inv();
            let val = a.value(self.rs(), self.alc.c, x);
            let sx = self.reflect(&a, x);
            let alpha = crate::hecke::simple_aff_as_weight(self.rs(), j);
            let mut r = Row::new();
            if val == 0 {
                row_axpy(&mut r, t, &self.i_word_row_rec(letters, k + 1, x, memo));
            } else {
                row_axpy(&mut r, t, &self.i_word_row_rec(letters, k + 1, &sx, memo));
                if val > 0 {
                    for i in 1..=val {
                        let p = x.sub(&alpha.scaled(i));
                        row_axpy(&mut r, -q, &self.i_word_row_rec(letters, k + 1, &p, memo));
                    }
                } else {
                    for i in 0..(-val) {
                        let p = x.add(&alpha.scaled(i));
                        row_axpy(&mut r, q, &self.i_word_row_rec(letters, k + 1, &p, memo));
                    }
                }
            }
            r
        };
        let rc = Rc::new(row);
        memo.insert((k, x.clone()), rc.clone());
        rc
    }

    /// Row of the intertwiner: `(𝒥 f)(λ) = τ_{w_λ}^{-1} (I_{w_λ} f)(λ₊)`.
    pub fn j_row(&self, lam: &Weight) -> Row {
        let (w, plus) = self.alc.minimal_rep(lam);
        let (u, letters) = w.reduced_word(self.rs());
        debug_assert!(u.is_identity());
        let scale = self.tau.tau_w(self.rs(), &w).inv();
        let mut row = Row::new();
        row_axpy(&mut row, scale, &self.i_word_row_at(&letters, &plus));
        row
    }

    /// Forward intertwiner on an explicit output window.
    pub fn intertwiner(&self, f: &LatticeFunction, out: &[Weight]) -> Result<LatticeFunction> {
        let mut vals = HashMap::new();
        for lam in out {
            let row = self.j_row(lam);
            vals.insert(lam.clone(), f.dot_row(&row)?);
        }
        Ok(LatticeFunction { vals })
    }

    /// Forward intertwiner on the largest window it can fill.
    pub fn intertwiner_max(&self, f: &LatticeFunction) -> LatticeFunction {
        let mut vals = HashMap::new();
        for lam in f.vals.keys() {
            let row = self.j_row(lam);
            if let Ok(v) = f.dot_row(&row) {
                vals.insert(lam.clone(), v);
            }
        }
        LatticeFunction { vals }
    }

    /// Inverse intertwiner by back-substitution along the triangular order;
    /// the window of `g` must be downward closed under `⪯`.
    pub fn intertwiner_inverse(&self, g: &LatticeFunction) -> Result<LatticeFunction> {
        let window = g.window();
        let wset: std::collections::HashSet<&Weight> = window.iter().collect();
        let mut order: Vec<(usize, Weight)> = Vec::new();
        for lam in &window {
            let pred = self.alc.predecessors(lam);
            for p in &pred {
                if !wset.contains(p) {
                    return Err(Error::NotDownwardClosed(lam.clone()));
                }
            }
            order.push((pred.len(), lam.clone()));
        }
        order.sort();
        let mut vals: HashMap<Weight, C64> = HashMap::new();
        for (_, lam) in order {
            let row = self.j_row(&lam);
            let diag = row.get(&lam).copied().expect("triangular diagonal");
            let mut s = g.vals[&lam];
            for (mu, c) in &row {
                if *mu != lam {
                    s -= *c * vals[mu];
                }
            }
            vals.insert(lam, s / diag);
        }
        Ok(LatticeFunction { vals })
    }

    /// `a_{λ,ν} = τ_{w_{w_λ(λ−ν)}} · τ_{w_{w_λ(λ−ν)} w_λ} · τ_{w_λ}^{-1}`.
    pub fn a_coef(&self, lam: &Weight, nu: &Weight) -> C64 {
        let (w_l, _) = self.alc.minimal_rep(lam);
        let mu = w_l.act_weight(self.alc.c, &lam.sub(nu));
        let (w_mu, _) = self.alc.minimal_rep(&mu);
        let prod = w_mu.mul(&w_l);
        self.tau.tau_w(self.rs(), &w_mu) * self.tau.tau_w(self.rs(), &prod)
            * self.tau.tau_w(self.rs(), &w_l).inv()
    }

    /// `c_{λ,η} = θ(λ−η) e_τ^∨(η) (h_τ^∨)^{−sign<λ,η∨>}` with `sign(0) = 0`.
    pub fn c_coef(&self, lam: &Weight, eta: &Weight) -> f64 {
        let th = self.alc.theta_fn(&lam.sub(eta));
        if th == 0 {
            return 0.0;
        }
        // θ > 0 forces η ∈ W_0 θ, so η is a root with a coroot.
        let (idx, neg) = self.rs().root_by_fw(&eta.0).expect("eta in the short-root orbit");
        let pairing = self.rs().pair_wc(lam, idx, neg);
        let h = self.tau.h_tau_vee(self.rs());
        let e = self.tau.e_tau_vee(self.rs(), eta);
        th as f64 * e * h.powi(-pairing.signum() as i32)
    }

    /// `b_{λ,ν}`, split by whether `λ − ν` leaves the alcove class of `λ`.
    pub fn b_coef(&self, lam: &Weight, nu: &Weight) -> C64 {
        let (w_l, plus) = self.alc.minimal_rep(lam);
        let (_, minus_plus) = self.alc.minimal_rep(&lam.sub(nu));
        if minus_plus != plus {
            Complex::new(self.c_coef(&plus, &w_l.derivative_weight(nu)), 0.0)
        } else {
            // χ(ν∨ + (1 − <λ,ν∨>)), the argument is an affine root here.
            let (idx, neg) = self.rs().root_by_fw(&nu.0).expect("nu in the short-root orbit");
            let pairing = self.rs().pair_wc(lam, idx, neg);
            let num = 1 - pairing;
            debug_assert_eq!(num.rem_euclid(self.alc.c), 0);
            let level = num.div_euclid(self.alc.c);
            let aroot = AffineRoot { idx, neg, level };
            if aroot.is_positive() {
                C64::new(0.0, 0.0)
            } else {
                let mu = w_l.act_weight(self.alc.c, &lam.sub(nu));
                let (w_mu, _) = self.alc.minimal_rep(&mu);
                C64::new(self.tau.tau_w2(self.rs(), &w_mu), 0.0)
            }
        }
    }

    fn one_minus_tau0_inv2(&self) -> f64 {
        1.0 - 1.0 / self.tau.tau2_s
    }

    /// Row of the discrete Dunkl-type operator `X̂^ν` at `λ`.
    pub fn x_nu_row(&self, nu: &Weight, lam: &Weight) -> Result<Row> {
        let rs = self.rs();
        if nu.is_zero() {
            let mut r = Row::new();
            row_add(&mut r, lam.clone(), C64::new(1.0, 0.0));
            return Ok(r);
        }
        if !crate::hecke::in_p_theta(rs, nu) {
            return Err(Error::NotGenerator(nu.clone()));
        }
        let (w_l, plus) = self.alc.minimal_rep(lam);
        let b_factor = self.one_minus_tau0_inv2();
        let mut row = Row::new();
        row_add(&mut row, lam.sub(nu), self.a_coef(lam, nu));
        row_add(&mut row, lam.clone(), self.b_coef(lam, nu) * b_factor);
        if w_l.length(rs) > 0 {
            let q_of = |j: usize| self.tau.q_j(rs, j);
            let table = self.coeff_cache.borrow_mut().get_or_build(rs, &w_l, nu, &q_of)?;
            let inv_tau_wl = self.tau.tau_w(rs, &w_l).inv();
            let mut words: HashMap<AffineWeylElement, Vec<usize>> = HashMap::new();
            let mut point_terms: HashMap<AffineWeylElement, C64> = HashMap::new();
            for ((v, eta), a_ve) in &table.a {
                if *v == w_l {
                    continue;
                }
                let letters = words.entry(v.clone()).or_insert_with(|| {
                    let (u, ls) = v.reduced_word(rs);
                    debug_assert!(u.is_identity());
                    ls
                });
                let target = plus.sub(eta);
                let (w_t, _) = self.alc.minimal_rep(&target);
                let coef = inv_tau_wl * a_ve * self.tau.tau_w2(rs, &w_t);
                let trow = self.t_word_row_at(letters, &target);
                row_axpy(&mut row, coef, &trow);
                let c = self.c_coef(&plus, eta);
                if c != 0.0 {
                    *point_terms.entry(v.clone()).or_insert(C64::new(0.0, 0.0)) +=
                        *a_ve * c * b_factor;
                }
            }
            for (v, b_v) in &table.b {
                if *v == w_l {
                    continue;
                }
                *point_terms.entry(v.clone()).or_insert(C64::new(0.0, 0.0)) += *b_v;
            }
            for (v, coef) in point_terms {
                let tau_v = self.tau.tau_w(rs, &v);
                let point = v.inv().act_weight(self.alc.c, &plus);
                row_add(&mut row, point, inv_tau_wl * tau_v * coef);
            }
        }
        Ok(row)
    }

    pub fn apply_x_nu(&self, nu: &Weight, f: &LatticeFunction, out: &[Weight]) -> Result<LatticeFunction> {
        let mut vals = HashMap::new();
        for lam in out {
            let row = self.x_nu_row(nu, lam)?;
            vals.insert(lam.clone(), f.dot_row(&row)?);
        }
        Ok(LatticeFunction { vals })
    }

    fn check_minuscule_class(&self, omega: &Weight) -> Result<()> {
        if self.rs().is_minuscule(omega) || self.rs().is_quasi_minuscule(omega) {
            Ok(())
        } else {
            Err(Error::NotMinusculeClass)
        }
    }

    /// Row of `L_ω` on all of `P`: only the `a` and `b` coefficient terms
    /// survive the orbit sum.
    pub fn laplacian_full_row(&self, omega: &Weight, lam: &Weight) -> Result<Row> {
        self.check_minuscule_class(omega)?;
        let b_factor = self.one_minus_tau0_inv2();
        let mut row = Row::new();
        for nu in self.rs().weyl_orbit(omega) {
            row_add(&mut row, lam.sub(&nu), self.a_coef(lam, &nu));
            row_add(&mut row, lam.clone(), self.b_coef(lam, &nu) * b_factor);
        }
        Ok(row)
    }

    pub fn apply_laplacian_full(
        &self,
        omega: &Weight,
        f: &LatticeFunction,
        out: &[Weight],
    ) -> Result<LatticeFunction> {
        let mut vals = HashMap::new();
        for lam in out {
            let row = self.laplacian_full_row(omega, lam)?;
            vals.insert(lam.clone(), f.dot_row(&row)?);
        }
        Ok(LatticeFunction { vals })
    }

    /// `V_{λ,ν}(τ²)`: the wall-crossing factor of the reduced Laplacian.
    pub fn v_entry(&self, lam: &Weight, nu: &Weight) -> Result<f64> {
        let rs = self.rs();
        let h_tau = self.h_tau;
        let mut out = 1.0;
        for i in 0..rs.num_positive() {
            let p_lam = rs.pair_wc(lam, i, false);
            let p_nu = rs.pair_wc(nu, i, false);
            let e = self.e_tau_root[i];
            let t2 = self.tau.tau2_root(rs, i);
            if p_lam == 0 && p_nu < 0 {
                let den = 1.0 - e;
                if den.abs() < 1e-10 {
                    return Err(Error::PoincarePole);
                }
                out *= (1.0 - t2 * e) / den;
            } else if p_lam == self.alc.c && p_nu > 0 {
                let den = 1.0 - h_tau / e;
                if den.abs() < 1e-10 {
                    return Err(Error::PoincarePole);
                }
                out *= (1.0 - t2 * h_tau / e) / den;
            }
        }
        Ok(out)
    }

    /// `U_{λ,ω}(τ²)`: the diagonal term of the reduced Laplacian.
    pub fn u_entry(&self, lam: &Weight, omega: &Weight) -> f64 {
        let rs = self.rs();
        let mut out = 0.0;
        for nu in rs.weyl_orbit(omega) {
            let shifted = lam.sub(&nu);
            let (w, plus) = self.alc.minimal_rep(&shifted);
            if plus == *lam {
                out += self.tau.tau_w2(rs, &w);
            }
            if w.act_weight(self.alc.c, lam) == *lam {
                out += self.one_minus_tau0_inv2() * self.c_coef(lam, &nu);
            }
        }
        out
    }

    /// The matrix of `L_ω` on `C(P_c^+)` (rows and columns indexed by the
    /// lexicographically ordered alcove weights).
    pub fn laplacian_matrix(&self, omega: &Weight) -> Result<LaplacianSymmetric> {
        self.check_minuscule_class(omega)?;
        let basis = self.alc.alcove_weights();
        let index: HashMap<&Weight, usize> =
            basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let n = basis.len();
        let mut mat = nalgebra::DMatrix::<f64>::zeros(n, n);
        let orbit = self.rs().weyl_orbit(omega);
        for (i, lam) in basis.iter().enumerate() {
            mat[(i, i)] += self.u_entry(lam, omega);
            for nu in &orbit {
                let target = lam.sub(nu);
                if let Some(&j) = index.get(&target) {
                    mat[(i, j)] += self.v_entry(lam, nu)?;
                }
            }
        }
        Ok(LaplacianSymmetric { omega: omega.clone(), basis, mat })
    }
}

/// The reduced Laplacian on the alcove, as a dense real matrix.
#[derive(Clone, Debug)]
pub struct LaplacianSymmetric {
    pub omega: Weight,
    pub basis: Vec<Weight>,
    pub mat: nalgebra::DMatrix<f64>,
}

impl LaplacianSymmetric {
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<f64>> = (0..self.basis.len())
            .map(|i| (0..self.basis.len()).map(|j| self.mat[(i, j)]).collect())
            .collect();
        serde_json::json!({
            "omega": self.omega.0,
            "basis": self.basis.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
            "matrix": rows,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str("lambda");
        for w in &self.basis {
            s.push_str(&format!(",{:?}", w.0).replace(' ', ""));
        }
        s.push('\n');
        for (i, w) in self.basis.iter().enumerate() {
            s.push_str(&format!("{:?}", w.0).replace(' ', ""));
            for j in 0..self.basis.len() {
                s.push_str(&format!(",{}", self.mat[(i, j)]));
            }
            s.push('\n');
        }
        s
    }
}
