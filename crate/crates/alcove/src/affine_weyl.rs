//! The affine Weyl group `W_R = W_0 ⋉ t(cQ)` and its extension `W = W_0 ⋉ t(cP)`.
//!
//! Elements are kept in the normal form `w = v ∘ t_{cλ}` with `v ∈ W_0` stored
//! as an integer matrix pair (action on fundamental-weight and on
//! fundamental-coweight coordinates) and `λ ∈ P`. Affine roots `a = α∨ + rc`
//! are kept with the level `r` in units of `c`, so the whole group
//! combinatorics is independent of the scale; `c` enters only when an affine
//! root is evaluated at a point.

use crate::root_system::{Coweight, RootSystem, Weight};
use crate::{Error, Result};
use std::collections::{HashMap, HashSet, VecDeque};

/// Small dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<i64>,
}

impl Mat {
    pub fn identity(n: usize) -> Mat {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Mat { n, a }
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        let n = self.n;
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let s = self.a[i * n + k];
                if s != 0 {
                    for j in 0..n {
                        a[i * n + j] += s * rhs.a[k * n + j];
                    }
                }
            }
        }
        Mat { n, a }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| self.a[i * n + j] * v[j]).sum()).collect()
    }

    pub fn apply_f64(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| self.a[i * n + j] as f64 * v[j]).sum()).collect()
    }

    pub fn det_sign(&self) -> i64 {
        // Exact determinant of a unimodular matrix by fraction-free elimination
        // over i128; only the sign is used.
        let n = self.n;
        let mut m: Vec<i128> = self.a.iter().map(|&x| x as i128).collect();
        let mut det: i128 = 1;
        let mut denom: i128 = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| m[r * n + c] != 0) else { return 0 };
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m[c * n + c];
            for r in c + 1..n {
                let f = m[r * n + c];
                if f != 0 {
                    for j in c..n {
                        m[r * n + j] = m[r * n + j] * pivot - f * m[c * n + j];
                    }
                    denom *= pivot;
                }
            }
            det *= pivot;
        }
        (det / denom).signum() as i64
    }
}

/// A finite Weyl group element with its action on both coordinate systems
/// and the inverses, so that composition and inversion stay integer-exact.
#[derive(Clone, Debug)]
pub struct FinEl {
    /// Action on fundamental-weight coordinates.
    pub m: Mat,
    pub m_inv: Mat,
    /// Action on fundamental-coweight coordinates.
    pub mc: Mat,
    pub mc_inv: Mat,
}

impl FinEl {
    pub fn identity(n: usize) -> FinEl {
        let id = Mat::identity(n);
        FinEl { m: id.clone(), m_inv: id.clone(), mc: id.clone(), mc_inv: id }
    }

    pub fn mul(&self, rhs: &FinEl) -> FinEl {
        FinEl {
            m: self.m.mul(&rhs.m),
            m_inv: rhs.m_inv.mul(&self.m_inv),
            mc: self.mc.mul(&rhs.mc),
            mc_inv: rhs.mc_inv.mul(&self.mc_inv),
        }
    }

    pub fn inv(&self) -> FinEl {
        FinEl {
            m: self.m_inv.clone(),
            m_inv: self.m.clone(),
            mc: self.mc_inv.clone(),
            mc_inv: self.mc.clone(),
        }
    }
}

/// Reflection `s_alpha` for a root of the finite system.
pub fn root_reflection(rs: &RootSystem, idx: usize) -> FinEl {
    let n = rs.rank;
    let root = &rs.positive[idx];
    let mut m = Mat::identity(n);
    let mut mc = Mat::identity(n);
    for i in 0..n {
        for k in 0..n {
            m.a[i * n + k] -= root.coroot_simple[k] * root.fw[i];
            mc.a[i * n + k] -= root.simple[k] * root.coroot_fwv[i];
        }
    }
    FinEl { m_inv: m.clone(), mc_inv: mc.clone(), m, mc }
}

/// Affine root `±α∨ + (level)·c` regarded as the affine function
/// `x ↦ <x, ±α∨> + level·c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AffineRoot {
    pub idx: usize,
    pub neg: bool,
    pub level: i64,
}

impl AffineRoot {
    pub fn is_positive(&self) -> bool {
        self.level > 0 || (self.level == 0 && !self.neg)
    }

    /// Value at a weight, for scale `c`.
    pub fn value(&self, rs: &RootSystem, c: i64, x: &Weight) -> i64 {
        rs.pair_wc(x, self.idx, self.neg) + self.level * c
    }
}

/// Element of the extended affine Weyl group in the normal form `v ∘ t_{cλ}`.
#[derive(Clone, Debug)]
pub struct AffineWeylElement {
    pub fin: FinEl,
    /// Translation weight λ, fundamental-weight coordinates.
    pub lam: Vec<i64>,
}

impl PartialEq for AffineWeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.fin.m == other.fin.m && self.lam == other.lam
    }
}
impl Eq for AffineWeylElement {}
impl std::hash::Hash for AffineWeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.fin.m.a.hash(state);
        self.lam.hash(state);
    }
}

impl AffineWeylElement {
    pub fn identity(rank: usize) -> AffineWeylElement {
        AffineWeylElement { fin: FinEl::identity(rank), lam: vec![0; rank] }
    }

    /// Simple affine generator: `s_j` for `j >= 1`, and
    /// `s_0 = s_theta ∘ t_{-c theta}`.
    pub fn simple(rs: &RootSystem, j: usize) -> AffineWeylElement {
        if j == 0 {
            let fin = root_reflection(rs, rs.theta);
            let lam = rs.positive[rs.theta].fw.iter().map(|x| -x).collect();
            AffineWeylElement { fin, lam }
        } else {
            AffineWeylElement { fin: root_reflection(rs, rs.simple_idx[j - 1]), lam: vec![0; rs.rank] }
        }
    }

    pub fn translation(lam: &Weight) -> AffineWeylElement {
        AffineWeylElement { fin: FinEl::identity(lam.0.len()), lam: lam.0.clone() }
    }

    pub fn from_finite(fin: FinEl, rank: usize) -> AffineWeylElement {
        AffineWeylElement { fin, lam: vec![0; rank] }
    }

    pub fn is_identity(&self) -> bool {
        self.lam.iter().all(|&x| x == 0) && self.fin.m == Mat::identity(self.fin.m.n)
    }

    /// `(v t_{cλ})(ṽ t_{cλ̃}) = vṽ t_{c(ṽ^{-1}λ + λ̃)}`.
    pub fn mul(&self, rhs: &AffineWeylElement) -> AffineWeylElement {
        let lam: Vec<i64> = rhs
            .fin
            .m_inv
            .apply(&self.lam)
            .iter()
            .zip(&rhs.lam)
            .map(|(a, b)| a + b)
            .collect();
        AffineWeylElement { fin: self.fin.mul(&rhs.fin), lam }
    }

    pub fn inv(&self) -> AffineWeylElement {
        let lam = self.fin.m.apply(&self.lam).iter().map(|x| -x).collect();
        AffineWeylElement { fin: self.fin.inv(), lam }
    }

    /// `w(x) = v(x) + c·v(λ)` on fundamental-weight coordinates.
    pub fn act_weight(&self, c: i64, x: &Weight) -> Weight {
        let vx = self.fin.m.apply(&x.0);
        let vl = self.fin.m.apply(&self.lam);
        Weight(vx.iter().zip(&vl).map(|(a, b)| a + c * b).collect())
    }

    /// `w(x)` for an arbitrary point of `V` in fundamental-weight coordinates.
    pub fn act_point_f64(&self, c: i64, x: &[f64]) -> Vec<f64> {
        let vx = self.fin.m.apply_f64(x);
        let lam_f: Vec<f64> = self.lam.iter().map(|&k| k as f64).collect();
        let vl = self.fin.m.apply_f64(&lam_f);
        vx.iter().zip(&vl).map(|(a, b)| a + c as f64 * b).collect()
    }

    /// Dual action on an affine root:
    /// `w(εα∨ + rc) = v(εα)∨ + (r − ε<λ, α∨>)c`.
    pub fn act_affine_root(&self, rs: &RootSystem, a: &AffineRoot) -> AffineRoot {
        let mut vec = rs.positive[a.idx].fw.clone();
        if a.neg {
            for x in vec.iter_mut() {
                *x = -*x;
            }
        }
        let image = self.fin.m.apply(&vec);
        let (idx, neg) = rs.root_by_fw(&image).expect("root image");
        let pairing = rs.pair_wc(&Weight(self.lam.clone()), a.idx, a.neg);
        AffineRoot { idx, neg, level: a.level - pairing }
    }

    /// Finite part applied to a weight (the "derivative" `w' = v`).
    pub fn derivative_weight(&self, x: &Weight) -> Weight {
        Weight(self.fin.m.apply(&x.0))
    }

    /// Coxeter length in `W`, by counting positive affine roots sent negative.
    pub fn length(&self, rs: &RootSystem) -> i64 {
        let lam = Weight(self.lam.clone());
        let mut ell = 0i64;
        for (i, r) in rs.positive.iter().enumerate() {
            let k = rs.pair_wc(&lam, i, false);
            let v_alpha_neg = rs.root_by_fw(&self.fin.m.apply(&r.fw)).expect("root image").1;
            ell += match k.signum() {
                1 => k + i64::from(v_alpha_neg),
                0 => i64::from(v_alpha_neg),
                _ => -k - 1 + i64::from(!v_alpha_neg),
            };
        }
        ell
    }

    /// The inversion set `R(w) = R^+ ∩ w^{-1}(R^-)`.
    pub fn inversions(&self, rs: &RootSystem) -> Vec<AffineRoot> {
        let lam = Weight(self.lam.clone());
        let mut out = Vec::new();
        for (i, r) in rs.positive.iter().enumerate() {
            let k = rs.pair_wc(&lam, i, false);
            let v_alpha_neg = rs.root_by_fw(&self.fin.m.apply(&r.fw)).expect("root image").1;
            for rr in 0..k.max(0) {
                out.push(AffineRoot { idx: i, neg: false, level: rr });
            }
            if k >= 0 && v_alpha_neg {
                out.push(AffineRoot { idx: i, neg: false, level: k });
            }
            for rr in 1..(-k).max(0) {
                out.push(AffineRoot { idx: i, neg: true, level: rr });
            }
            if k <= -1 && !v_alpha_neg {
                out.push(AffineRoot { idx: i, neg: true, level: -k });
            }
        }
        out
    }

    /// Exponents `(n_short, n_long)` such that `τ_w = τ_s^{n_s} τ_l^{n_l}`.
    pub fn tau_exponents(&self, rs: &RootSystem) -> (i64, i64) {
        let mut ns = 0;
        let mut nl = 0;
        for a in self.inversions(rs) {
            if rs.positive[a.idx].short {
                ns += 1;
            } else {
                nl += 1;
            }
        }
        (ns, nl)
    }

    /// Reduced word: returns the length-zero part `u` and letters such that
    /// `w = u · s_{j_1} ⋯ s_{j_ℓ}`.
    pub fn reduced_word(&self, rs: &RootSystem) -> (AffineWeylElement, Vec<usize>) {
        let mut w = self.clone();
        let mut letters = Vec::new();
        loop {
            let mut found = None;
            for j in 0..=rs.rank {
                let aj = simple_affine_root(rs, j);
                if !w.act_affine_root(rs, &aj).is_positive() {
                    found = Some(j);
                    break;
                }
            }
            match found {
                Some(j) => {
                    letters.push(j);
                    w = w.mul(&AffineWeylElement::simple(rs, j));
                }
                None => break,
            }
        }
        letters.reverse();
        (w, letters)
    }

    /// Translation part in the root lattice, i.e. membership in `W_R`.
    pub fn in_affine_weyl_group(&self, rs: &RootSystem) -> bool {
        rs.in_root_lattice(&Weight(self.lam.clone()))
    }

    /// Rendering as `u·s_{j_1}…s_{j_ℓ}`.
    pub fn word_string(&self, rs: &RootSystem) -> String {
        let (u, letters) = self.reduced_word(rs);
        let mut s = String::new();
        if !u.is_identity() {
            s.push_str(&format!("u[{:?}]", u.lam));
        } else if letters.is_empty() {
            s.push('1');
        }
        for (k, j) in letters.iter().enumerate() {
            if k > 0 || !u.is_identity() {
                s.push('·');
            }
            s.push_str(&format!("s{j}"));
        }
        s
    }
}

pub fn simple_affine_root(rs: &RootSystem, j: usize) -> AffineRoot {
    if j == 0 {
        AffineRoot { idx: rs.theta, neg: true, level: 1 }
    } else {
        AffineRoot { idx: rs.simple_idx[j - 1], neg: false, level: 0 }
    }
}

/// Bruhat order on `W`: elements in different `W/W_R` cosets are not
/// comparable; within a coset the order is computed by the lifting property.
pub fn bruhat_leq(rs: &RootSystem, v: &AffineWeylElement, w: &AffineWeylElement) -> bool {
    if !v.mul(&w.inv()).in_affine_weyl_group(rs) {
        return false;
    }
    let mut v = v.clone();
    let mut w = w.clone();
    let mut lv = v.length(rs);
    let mut lw = w.length(rs);
    loop {
        if lv > lw {
            return false;
        }
        if lw == 0 {
            return v == w;
        }
        let j = (0..=rs.rank)
            .find(|&j| {
                let aj = simple_affine_root(rs, j);
                !w.inv().act_affine_root(rs, &aj).is_positive()
            })
            .expect("descent of a positive-length element");
        let s = AffineWeylElement::simple(rs, j);
        let sv = s.mul(&v);
        let lsv = sv.length(rs);
        w = s.mul(&w);
        lw -= 1;
        if lsv < lv {
            v = sv;
            lv = lsv;
        }
    }
}

/// All `v ≤ w`, by subword dynamic programming over one reduced word.
pub fn lower_interval(rs: &RootSystem, w: &AffineWeylElement) -> Vec<AffineWeylElement> {
    let (u, letters) = w.reduced_word(rs);
    let mut set: HashSet<AffineWeylElement> = HashSet::new();
    set.insert(AffineWeylElement::identity(rs.rank));
    for j in letters {
        let s = AffineWeylElement::simple(rs, j);
        let mut next = set.clone();
        for x in &set {
            next.insert(x.mul(&s));
        }
        set = next;
    }
    set.into_iter().map(|x| u.mul(&x)).collect()
}

/// The enumerated finite Weyl group.
pub struct WeylData {
    pub elems: Vec<FinEl>,
    pub length: Vec<i64>,
    pub det: Vec<i64>,
    pub inverse: Vec<usize>,
    pub longest: usize,
    index: HashMap<Vec<i64>, usize>,
}

impl WeylData {
    pub fn new(rs: &RootSystem) -> WeylData {
        let n = rs.rank;
        let gens: Vec<FinEl> = (0..n).map(|j| root_reflection(rs, j)).collect();
        let mut elems = vec![FinEl::identity(n)];
        let mut length = vec![0i64];
        let mut index = HashMap::new();
        index.insert(elems[0].m.a.clone(), 0);
        let mut queue = VecDeque::new();
        queue.push_back(0usize);
        while let Some(i) = queue.pop_front() {
            let cur = elems[i].clone();
            let cur_len = length[i];
            for g in &gens {
                let next = cur.mul(g);
                if !index.contains_key(&next.m.a) {
                    index.insert(next.m.a.clone(), elems.len());
                    elems.push(next);
                    length.push(cur_len + 1);
                    queue.push_back(elems.len() - 1);
                }
            }
        }
        let det: Vec<i64> = length.iter().map(|&l| if l % 2 == 0 { 1 } else { -1 }).collect();
        let inverse: Vec<usize> =
            elems.iter().map(|e| *index.get(&e.m_inv.a).expect("inverse present")).collect();
        let longest = (0..elems.len()).max_by_key(|&i| length[i]).unwrap();
        WeylData { elems, length, det, inverse, longest, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn index_of(&self, e: &FinEl) -> usize {
        *self.index.get(&e.m.a).expect("element of W_0")
    }
}

/// The fundamental alcove context: a root system together with the scale `c`.
pub struct Alcove<'a> {
    pub rs: &'a RootSystem,
    pub c: i64,
}

impl<'a> Alcove<'a> {
    pub fn new(rs: &'a RootSystem, c: i64) -> Result<Alcove<'a>> {
        if c <= 1 {
            return Err(Error::InvalidScale(c));
        }
        Ok(Alcove { rs, c })
    }

    /// `a_j(λ)`, with `a_0(λ) = c − <λ, θ∨>`.
    pub fn simple_value(&self, j: usize, x: &Weight) -> i64 {
        simple_affine_root(self.rs, j).value(self.rs, self.c, x)
    }

    pub fn in_alcove(&self, x: &Weight) -> bool {
        (0..=self.rs.rank).all(|j| self.simple_value(j, x) >= 0)
    }

    pub fn alcove_weights(&self) -> Vec<Weight> {
        self.rs.alcove_weights(self.c).expect("validated scale")
    }

    pub fn alcove_coweights(&self) -> Vec<Coweight> {
        self.rs.alcove_coweights(self.c).expect("validated scale")
    }

    /// Greedy wall crossing: the unique shortest `w_x ∈ W_R` with
    /// `x₊ = w_x x ∈ A_c`. Ties are broken by the lowest wall index, which
    /// fixes a deterministic reduced word.
    pub fn minimal_rep(&self, x: &Weight) -> (AffineWeylElement, Weight) {
        let mut cur = x.clone();
        let mut w = AffineWeylElement::identity(self.rs.rank);
        loop {
            let mut found = None;
            for j in 0..=self.rs.rank {
                if self.simple_value(j, &cur) < 0 {
                    found = Some(j);
                    break;
                }
            }
            match found {
                Some(j) => {
                    let s = AffineWeylElement::simple(self.rs, j);
                    cur = s.act_weight(self.c, &cur);
                    w = s.mul(&w);
                }
                None => return (w, cur),
            }
        }
    }

    /// `θ(λ) = #{a ∈ R(w_λ) : a(λ) = −2}`; since those `a` are negative at λ
    /// they all lie in `R(w_λ)`, so it suffices to count affine roots with
    /// value −2.
    pub fn theta_fn(&self, lam: &Weight) -> i64 {
        let mut count = 0;
        for i in 0..self.rs.num_positive() {
            let k = self.rs.pair_wc(lam, i, false);
            // ε = +1: k + rc = −2 with r >= 0
            if (-2 - k) % self.c == 0 && (-2 - k) / self.c >= 0 {
                count += 1;
            }
            // ε = −1: −k + rc = −2 with r >= 1
            if (k - 2) % self.c == 0 && (k - 2) / self.c >= 1 {
                count += 1;
            }
        }
        count
    }

    /// Stabilizer subgroup of a point of the closed alcove, generated by the
    /// simple reflections fixing it.
    pub fn stabilizer(&self, lam: &Weight) -> Result<Vec<AffineWeylElement>> {
        if !self.in_alcove(lam) {
            return Err(Error::NotInAlcove(lam.clone()));
        }
        let gens: Vec<AffineWeylElement> = (0..=self.rs.rank)
            .filter(|&j| self.simple_value(j, lam) == 0)
            .map(|j| AffineWeylElement::simple(self.rs, j))
            .collect();
        let mut set = HashSet::new();
        let id = AffineWeylElement::identity(self.rs.rank);
        set.insert(id.clone());
        let mut queue = VecDeque::new();
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.mul(g);
                if set.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(set.into_iter().collect())
    }

    /// The group `Ω` of length-zero elements, as the `Ω`-parts of the
    /// translations by minuscule weights.
    pub fn omega_group(&self) -> Vec<AffineWeylElement> {
        let mut out = vec![AffineWeylElement::identity(self.rs.rank)];
        for m in self.rs.minuscule_fundamental_weights() {
            let t = AffineWeylElement::translation(&m);
            let (u, _) = t.reduced_word(self.rs);
            debug_assert_eq!(u.length(self.rs), 0);
            out.push(u);
        }
        out
    }

    /// For `u ∈ Ω`: the permutation `j ↦ u_j` with `u a_j = a_{u_j}`.
    pub fn omega_permutation(&self, u: &AffineWeylElement) -> Vec<usize> {
        (0..=self.rs.rank)
            .map(|j| {
                let img = u.act_affine_root(self.rs, &simple_affine_root(self.rs, j));
                (0..=self.rs.rank)
                    .find(|&k| simple_affine_root(self.rs, k) == img)
                    .expect("Ω permutes the simple affine roots")
            })
            .collect()
    }

    /// The interval `[λ₊, λ]`: all points of the `W_R`-orbit reachable from λ
    /// by reflections that lower the minimal representative.
    pub fn orbit_interval(&self, lam: &Weight) -> Vec<Weight> {
        let mut seen = HashSet::new();
        seen.insert(lam.clone());
        let mut queue = VecDeque::new();
        queue.push_back(lam.clone());
        while let Some(z) = queue.pop_front() {
            for (i, root) in self.rs.positive.iter().enumerate() {
                let k = self.rs.pair_wc(&z, i, false);
                // affine roots negative at z: ε=+1 with r < −k/c, ε=−1 with r < k/c
                let mut images: Vec<Weight> = Vec::new();
                let mut push = |val: i64, neg: bool| {
                    // s_a z = z − a(z)·(±α)
                    let mut v = z.0.clone();
                    for (t, &f) in v.iter_mut().zip(&root.fw) {
                        let step = if neg { -f } else { f };
                        *t -= val * step;
                    }
                    images.push(Weight(v));
                };
                let mut r = 0;
                while k + r * self.c < 0 {
                    push(k + r * self.c, false);
                    r += 1;
                }
                let mut r = 1;
                while -k + r * self.c < 0 {
                    push(-k + r * self.c, true);
                    r += 1;
                }
                for im in images {
                    if seen.insert(im.clone()) {
                        queue.push_back(im);
                    }
                }
            }
        }
        let mut v: Vec<Weight> = seen.into_iter().collect();
        v.sort();
        v
    }

    /// The partial order `μ ⪯ λ`: `λ − μ ∈ Q` and
    /// `Conv[μ₊, μ] ⊆ Conv[λ₊, λ]`.
    pub fn partial_leq(&self, mu: &Weight, lam: &Weight) -> bool {
        if !self.rs.in_root_lattice(&lam.sub(mu)) {
            return false;
        }
        let hull: Vec<Vec<crate::Rat>> = self
            .orbit_interval(lam)
            .into_iter()
            .map(|w| w.0.iter().map(|&x| crate::Rat::from_integer(x.into())).collect())
            .collect();
        self.orbit_interval(mu).into_iter().all(|p| {
            let q: Vec<crate::Rat> =
                p.0.iter().map(|&x| crate::Rat::from_integer(x.into())).collect();
            crate::ratlin::in_convex_hull(&hull, &q)
        })
    }

    /// Lattice points `{μ : μ ⪯ λ} = Conv[λ₊, λ] ∩ (λ + Q)`.
    pub fn predecessors(&self, lam: &Weight) -> Vec<Weight> {
        let interval = self.orbit_interval(lam);
        let hull: Vec<Vec<crate::Rat>> = interval
            .iter()
            .map(|w| w.0.iter().map(|&x| crate::Rat::from_integer(x.into())).collect())
            .collect();
        let n = self.rs.rank;
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for w in &interval {
            for j in 0..n {
                lo[j] = lo[j].min(w.0[j]);
                hi[j] = hi[j].max(w.0[j]);
            }
        }
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        box_scan(&lo, &hi, 0, &mut cur, &mut |pt: &[i64]| {
            let w = Weight(pt.to_vec());
            if self.rs.in_root_lattice(&lam.sub(&w)) {
                let q: Vec<crate::Rat> =
                    pt.iter().map(|&x| crate::Rat::from_integer(x.into())).collect();
                if crate::ratlin::in_convex_hull(&hull, &q) {
                    out.push(w);
                }
            }
        });
        out.sort();
        out
    }

    /// Order of the stabilizer of a coweight `μ ∈ P_c^{∨,+}` inside the dual
    /// affine Weyl group `W_0 ⋉ t(cQ∨)` (walls `<μ,α> ∈ {0, c}`).
    pub fn dual_stabilizer_order(&self, mu: &Coweight) -> usize {
        let n = self.rs.rank;
        // Elements act on fundamental-coweight coordinates as (matrix, shift).
        let mut gens: Vec<(Mat, Vec<i64>)> = Vec::new();
        for (i, root) in self.rs.positive.iter().enumerate() {
            let p = self.rs.pair_cw(mu, i, false);
            if p == 0 || p == self.c {
                // s(x) = x − (<x,α> − kc)·α∨ with k = p/c
                let mut m = Mat::identity(n);
                for r in 0..n {
                    for k in 0..n {
                        m.a[r * n + k] -= root.simple[k] * root.coroot_fwv[r];
                    }
                }
                let shift: Vec<i64> = root.coroot_fwv.iter().map(|&x| x * p).collect();
                gens.push((m, shift));
            }
        }
        let mut set: HashSet<(Vec<i64>, Vec<i64>)> = HashSet::new();
        let id = (Mat::identity(n), vec![0i64; n]);
        set.insert((id.0.a.clone(), id.1.clone()));
        let mut queue = VecDeque::new();
        queue.push_back(id);
        while let Some((m, t)) = queue.pop_front() {
            for (gm, gt) in &gens {
                // (m,t) ∘ (gm,gt): x ↦ m(gm x + gt) + t
                let nm = m.mul(gm);
                let nt: Vec<i64> =
                    m.apply(gt).iter().zip(&t).map(|(a, b)| a + b).collect();
                if set.insert((nm.a.clone(), nt.clone())) {
                    queue.push_back((nm, nt));
                }
            }
        }
        set.len()
    }
}

fn box_scan(lo: &[i64], hi: &[i64], pos: usize, cur: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if pos == lo.len() {
        f(cur);
        return;
    }
    for v in lo[pos]..=hi[pos] {
        if cur.len() == pos {
            cur.push(v);
        } else {
            cur[pos] = v;
        }
        box_scan(lo, hi, pos + 1, cur, f);
    }
    cur.truncate(pos);
}
