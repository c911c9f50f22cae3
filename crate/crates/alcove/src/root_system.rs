//! Irreducible reduced crystallographic root systems with exact arithmetic.
//!
//! Cartesian models follow the Bourbaki tables; positive roots are generated
//! by reflection closure from the simple basis. Weights are stored as integer
//! vectors of fundamental-weight coordinates, coweights as integer vectors of
//! fundamental-coweight coordinates, so that all pairings used by the Weyl
//! group combinatorics are integer dot products:
//!
//! * `<lambda, alpha_vee>` pairs fundamental-weight coordinates with the
//!   decomposition of `alpha_vee` in the simple-coroot basis;
//! * `<mu, alpha>` pairs fundamental-coweight coordinates with the
//!   decomposition of `alpha` in the simple-root basis.

use crate::ratlin;
use crate::{Error, Rat, Result};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLabel {
    pub fn from_char(c: char) -> Option<TypeLabel> {
        match c.to_ascii_uppercase() {
            'A' => Some(TypeLabel::A),
            'B' => Some(TypeLabel::B),
            'C' => Some(TypeLabel::C),
            'D' => Some(TypeLabel::D),
            'E' => Some(TypeLabel::E),
            'F' => Some(TypeLabel::F),
            'G' => Some(TypeLabel::G),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E => 'E',
            TypeLabel::F => 'F',
            TypeLabel::G => 'G',
        }
    }
}

/// Weight in fundamental-weight coordinates: `lambda = sum_j coords[j] omega_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

/// Coweight in fundamental-coweight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coweight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl Coweight {
    pub fn zero(rank: usize) -> Coweight {
        Coweight(vec![0; rank])
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// One positive root with all cached coordinate systems.
#[derive(Clone, Debug)]
pub struct Root {
    /// Cartesian vector in the ambient Bourbaki model.
    pub cartesian: Vec<Rat>,
    /// `alpha` in the simple-root basis (nonnegative integers).
    pub simple: Vec<i64>,
    /// `alpha` as an element of `Q subset P`, in fundamental-weight coords.
    pub fw: Vec<i64>,
    /// `alpha_vee` in the simple-coroot basis.
    pub coroot_simple: Vec<i64>,
    /// `alpha_vee` as an element of `Q_vee subset P_vee`, in fundamental-coweight coords.
    pub coroot_fwv: Vec<i64>,
    pub len2: Rat,
    pub short: bool,
    pub height: i64,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: TypeLabel,
    pub rank: usize,
    /// Ambient dimension of the Cartesian model.
    pub ambient: usize,
    pub simple_cartesian: Vec<Vec<Rat>>,
    pub positive: Vec<Root>,
    /// `cartan[j][k] = <alpha_k, alpha_j_vee>`.
    pub cartan: Vec<Vec<i64>>,
    /// Index of the highest short root `theta` in `positive`.
    pub theta: usize,
    /// Index of the highest root `phi` in `positive`.
    pub phi: usize,
    /// Marks: `theta_vee = sum_j marks[j] alpha_j_vee`.
    pub marks: Vec<i64>,
    /// Dual marks: `phi = sum_j dual_marks[j] alpha_j`; these are the marks of
    /// the dual root system and bound the coweight alcove.
    pub dual_marks: Vec<i64>,
    pub coxeter: i64,
    pub dual_coxeter: i64,
    /// `|P/Q| = det(cartan)`.
    pub index: i64,
    /// Whether `alpha_j` is short (everything is short when simply laced).
    pub simple_short: Vec<bool>,
    /// Index of the simple root `alpha_j` in `positive`.
    pub simple_idx: Vec<usize>,
    pub fundamental_weights_cartesian: Vec<Vec<Rat>>,
    pub fundamental_coweights_cartesian: Vec<Vec<Rat>>,
    /// `<omega_j, omega_k>`.
    pub gram_fw: Vec<Vec<Rat>>,
    /// `<omega_j_vee, omega_k_vee>`.
    pub gram_fwv: Vec<Vec<Rat>>,
    /// `<omega_j_vee, omega_k>`.
    pub pair_vfw: Vec<Vec<Rat>>,
    pub gram_fw_f64: Vec<Vec<f64>>,
    pub gram_fwv_f64: Vec<Vec<f64>>,
    pub pair_vfw_f64: Vec<Vec<f64>>,
    /// Inverse Cartan matrix, for root-lattice membership tests.
    pub inv_cartan: Vec<Vec<Rat>>,
    /// Positive-root lookup by fundamental-weight coordinates.
    root_index: HashMap<Vec<i64>, usize>,
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn simple_roots_cartesian(label: TypeLabel, n: usize) -> Result<Vec<Vec<Rat>>> {
    let e = |dim: usize, i: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::one();
        v
    };
    let sub = |a: &[Rat], b: &[Rat]| -> Vec<Rat> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let ok = match label {
        TypeLabel::A => n >= 1,
        TypeLabel::B => n >= 2,
        TypeLabel::C => n >= 3,
        TypeLabel::D => n >= 4,
        TypeLabel::E => (6..=8).contains(&n),
        TypeLabel::F => n == 4,
        TypeLabel::G => n == 2,
    };
    if !ok {
        return Err(Error::InvalidType(label.as_char(), n));
    }
    let roots = match label {
        TypeLabel::A => {
            let dim = n + 1;
            (0..n).map(|i| sub(&e(dim, i), &e(dim, i + 1))).collect()
        }
        TypeLabel::B => {
            let mut v: Vec<Vec<Rat>> = (0..n - 1).map(|i| sub(&e(n, i), &e(n, i + 1))).collect();
            v.push(e(n, n - 1));
            v
        }
        TypeLabel::C => {
            let mut v: Vec<Vec<Rat>> = (0..n - 1).map(|i| sub(&e(n, i), &e(n, i + 1))).collect();
            let mut last = e(n, n - 1);
            last[n - 1] = int(2);
            v.push(last);
            v
        }
        TypeLabel::D => {
            let mut v: Vec<Vec<Rat>> = (0..n - 1).map(|i| sub(&e(n, i), &e(n, i + 1))).collect();
            let mut last = e(n, n - 2);
            last[n - 1] = Rat::one();
            v.push(last);
            v
        }
        TypeLabel::E => {
            // Bourbaki E8 simple basis; E7/E6 are the first 7/6 nodes.
            let dim = 8;
            let mut a1 = vec![rat(-1, 2); dim];
            a1[0] = rat(1, 2);
            a1[7] = rat(1, 2);
            let mut a2 = e(dim, 0);
            a2[1] = Rat::one();
            let mut v = vec![a1, a2];
            for i in 0..6 {
                v.push(sub(&e(dim, i + 1), &e(dim, i)));
            }
            v.truncate(n);
            v
        }
        TypeLabel::F => {
            let dim = 4;
            vec![
                sub(&e(dim, 1), &e(dim, 2)),
                sub(&e(dim, 2), &e(dim, 3)),
                e(dim, 3),
                vec![rat(1, 2), rat(-1, 2), rat(-1, 2), rat(-1, 2)],
            ]
        }
        TypeLabel::G => {
            let dim = 3;
            vec![sub(&e(dim, 0), &e(dim, 1)), {
                let mut v = vec![int(-2), Rat::one(), Rat::one()];
                v.swap(0, 0);
                v
            }]
        }
    };
    Ok(roots)
}

impl RootSystem {
    pub fn new(label: TypeLabel, rank: usize) -> Result<RootSystem> {
        let simple_cartesian = simple_roots_cartesian(label, rank)?;
        let ambient = simple_cartesian[0].len();
        let ip = |a: &[Rat], b: &[Rat]| ratlin::dot(a, b);
        let simple_len2: Vec<Rat> =
            simple_cartesian.iter().map(|a| ip(a, a)).collect();
        // cartan[j][k] = <alpha_k, alpha_j_vee> = 2 <alpha_k, alpha_j> / <alpha_j, alpha_j>
        let mut cartan = vec![vec![0i64; rank]; rank];
        for j in 0..rank {
            for k in 0..rank {
                let v = int(2) * ip(&simple_cartesian[k], &simple_cartesian[j]) / &simple_len2[j];
                assert!(v.is_integer(), "non-integer Cartan entry");
                cartan[j][k] = i64::try_from(v.to_integer()).unwrap();
            }
        }

        // Reflection closure on simple-root coordinates.
        let pair_simple = |coords: &[i64], j: usize| -> i64 {
            coords.iter().zip(0..rank).map(|(&c, k)| c * cartan[j][k]).sum()
        };
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for j in 0..rank {
            let mut v = vec![0i64; rank];
            v[j] = 1;
            seen.insert(v.clone());
            queue.push_back(v);
        }
        while let Some(r) = queue.pop_front() {
            for j in 0..rank {
                let mut r2 = r.clone();
                r2[j] -= pair_simple(&r, j);
                if seen.insert(r2.clone()) {
                    queue.push_back(r2);
                }
            }
        }
        let mut pos_coords: Vec<Vec<i64>> = seen
            .into_iter()
            .filter(|c| c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x != 0))
            .collect();
        pos_coords.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));

        let min_len2 = pos_coords
            .iter()
            .map(|c| {
                let cart = cartesian_of(c, &simple_cartesian);
                ip(&cart, &cart)
            })
            .min()
            .unwrap();

        let mut positive = Vec::with_capacity(pos_coords.len());
        for coords in &pos_coords {
            let cartesian = cartesian_of(coords, &simple_cartesian);
            let len2 = ip(&cartesian, &cartesian);
            let mut fw = vec![0i64; rank];
            for j in 0..rank {
                fw[j] = (0..rank).map(|k| coords[k] * cartan[j][k]).sum();
            }
            // alpha_vee = sum_k coords[k] (len2_k / len2) alpha_k_vee
            let mut coroot_simple = vec![0i64; rank];
            for k in 0..rank {
                let v = int(coords[k]) * &simple_len2[k] / &len2;
                assert!(v.is_integer(), "non-integer coroot coordinate");
                coroot_simple[k] = i64::try_from(v.to_integer()).unwrap();
            }
            let mut coroot_fwv = vec![0i64; rank];
            for j in 0..rank {
                coroot_fwv[j] = (0..rank).map(|k| coroot_simple[k] * cartan[k][j]).sum();
            }
            positive.push(Root {
                cartesian,
                simple: coords.clone(),
                fw,
                short: len2 == min_len2,
                len2,
                coroot_simple,
                coroot_fwv,
                height: coords.iter().sum(),
            });
        }

        let theta = positive
            .iter()
            .position(|r| r.short && r.fw.iter().all(|&x| x >= 0))
            .expect("highest short root");
        let phi = positive
            .iter()
            .position(|r| !r.short && r.fw.iter().all(|&x| x >= 0))
            .unwrap_or(theta);
        let marks = positive[theta].coroot_simple.clone();
        let dual_marks = positive[phi].simple.clone();
        assert!(marks.iter().all(|&m| m >= 1));
        let coxeter = marks.iter().sum::<i64>() + 1;
        let dual_coxeter = positive[phi].coroot_simple.iter().sum::<i64>() + 1;
        assert_eq!(
            2 * positive.len() as i64,
            rank as i64 * coxeter,
            "|R_0| = n h"
        );

        let cartan_rat: Vec<Vec<Rat>> =
            cartan.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect();
        let index_rat = ratlin::det(&cartan_rat);
        assert!(index_rat.is_integer());
        let index = i64::try_from(index_rat.to_integer()).unwrap();
        let inv_cartan = ratlin::invert(&cartan_rat);

        // omega_j = sum_m ((A^T)^{-1})_{jm} alpha_m with A = cartan.
        let cartan_t: Vec<Vec<Rat>> = (0..rank)
            .map(|i| (0..rank).map(|j| int(cartan[j][i])).collect())
            .collect();
        let c_w = ratlin::invert(&cartan_t);
        let fundamental_weights_cartesian: Vec<Vec<Rat>> = (0..rank)
            .map(|j| {
                (0..ambient)
                    .map(|d| (0..rank).map(|m| &c_w[j][m] * &simple_cartesian[m][d]).sum())
                    .collect()
            })
            .collect();
        // omega_j_vee = sum_m (A^{-1})_{jm} alpha_m_vee
        let simple_coroots_cartesian: Vec<Vec<Rat>> = (0..rank)
            .map(|m| {
                simple_cartesian[m]
                    .iter()
                    .map(|x| int(2) * x / &simple_len2[m])
                    .collect()
            })
            .collect();
        let fundamental_coweights_cartesian: Vec<Vec<Rat>> = (0..rank)
            .map(|j| {
                (0..ambient)
                    .map(|d| {
                        (0..rank)
                            .map(|m| &inv_cartan[j][m] * &simple_coroots_cartesian[m][d])
                            .sum()
                    })
                    .collect()
            })
            .collect();

        let gram = |a: &[Vec<Rat>], b: &[Vec<Rat>]| -> Vec<Vec<Rat>> {
            a.iter().map(|x| b.iter().map(|y| ip(x, y)).collect()).collect()
        };
        let gram_fw = gram(&fundamental_weights_cartesian, &fundamental_weights_cartesian);
        let gram_fwv = gram(&fundamental_coweights_cartesian, &fundamental_coweights_cartesian);
        let pair_vfw = gram(&fundamental_coweights_cartesian, &fundamental_weights_cartesian);

        let to_f64 = |m: &Vec<Vec<Rat>>| -> Vec<Vec<f64>> {
            m.iter().map(|row| row.iter().map(rat_to_f64).collect()).collect()
        };
        let gram_fw_f64 = to_f64(&gram_fw);
        let gram_fwv_f64 = to_f64(&gram_fwv);
        let pair_vfw_f64 = to_f64(&pair_vfw);

        let mut root_index = HashMap::new();
        for (i, r) in positive.iter().enumerate() {
            root_index.insert(r.fw.clone(), i);
        }
        let simple_short: Vec<bool> = (0..rank)
            .map(|j| simple_len2[j] == min_len2)
            .collect();
        let simple_idx: Vec<usize> = (0..rank)
            .map(|j| {
                positive
                    .iter()
                    .position(|r| {
                        r.simple.iter().enumerate().all(|(k, &c)| c == i64::from(k == j))
                    })
                    .expect("simple root present")
            })
            .collect();

        let rs = RootSystem {
            label,
            rank,
            ambient,
            simple_cartesian,
            positive,
            cartan,
            theta,
            phi,
            marks,
            dual_marks,
            coxeter,
            dual_coxeter,
            index,
            simple_short,
            simple_idx,
            fundamental_weights_cartesian,
            fundamental_coweights_cartesian,
            gram_fw,
            gram_fwv,
            pair_vfw,
            gram_fw_f64,
            gram_fwv_f64,
            pair_vfw_f64,
            inv_cartan,
            root_index,
        };
        rs.validate();
        Ok(rs)
    }

    fn validate(&self) {
        // |<alpha, beta_vee>| <= 3 for alpha != +-beta, and the fundamental
        // weights pair to delta_{jk} against the simple coroots.
        for (i, a) in self.positive.iter().enumerate() {
            for (j, b) in self.positive.iter().enumerate() {
                let p = self.pair_wc(&Weight(a.fw.clone()), j, false);
                if i != j {
                    assert!(p.abs() <= 3, "pairing out of range");
                } else {
                    assert_eq!(p, 2);
                }
                let _ = b;
            }
        }
        for j in 0..self.rank {
            for k in 0..self.rank {
                let p = ratlin::dot(
                    &self.fundamental_weights_cartesian[j],
                    &self.coroot_cartesian(k),
                );
                assert_eq!(p, if j == k { Rat::one() } else { Rat::zero() });
            }
        }
        // rho = omega_1 + ... + omega_n pairs with theta_vee to h - 1.
        let rho = self.rho();
        assert_eq!(self.pair_wc(&rho, self.theta, false), self.coxeter - 1);
    }

    fn coroot_cartesian(&self, j: usize) -> Vec<Rat> {
        let len2 = ratlin::dot(&self.simple_cartesian[j], &self.simple_cartesian[j]);
        self.simple_cartesian[j].iter().map(|x| int(2) * x / &len2).collect()
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    pub fn rho_check(&self) -> Coweight {
        Coweight(vec![1; self.rank])
    }

    pub fn theta_weight(&self) -> Weight {
        Weight(self.positive[self.theta].fw.clone())
    }

    pub fn phi_weight(&self) -> Weight {
        Weight(self.positive[self.phi].fw.clone())
    }

    pub fn simply_laced(&self) -> bool {
        self.positive.iter().all(|r| r.short)
    }

    /// `<x, alpha_vee>` for `x` in fundamental-weight coordinates; the root is
    /// `(idx, neg)` with `neg` selecting `-alpha`.
    pub fn pair_wc(&self, x: &Weight, idx: usize, neg: bool) -> i64 {
        let s: i64 = x
            .0
            .iter()
            .zip(&self.positive[idx].coroot_simple)
            .map(|(&a, &b)| a * b)
            .sum();
        if neg {
            -s
        } else {
            s
        }
    }

    /// `<mu, alpha>` for a coweight `mu`.
    pub fn pair_cw(&self, mu: &Coweight, idx: usize, neg: bool) -> i64 {
        let s: i64 =
            mu.0.iter().zip(&self.positive[idx].simple).map(|(&a, &b)| a * b).sum();
        if neg {
            -s
        } else {
            s
        }
    }

    /// `<x, alpha>` for a real vector `x` in fundamental-coweight coordinates.
    pub fn pair_vec_root(&self, x: &[f64], idx: usize) -> f64 {
        x.iter().zip(&self.positive[idx].simple).map(|(&a, &b)| a * b as f64).sum()
    }

    /// `<x, lambda>` for `x` in fundamental-coweight coordinates (f64) and a weight.
    pub fn pair_vec_weight(&self, x: &[f64], lambda: &Weight) -> f64 {
        let mut s = 0.0;
        for j in 0..self.rank {
            for k in 0..self.rank {
                s += x[j] * self.pair_vfw_f64[j][k] * lambda.0[k] as f64;
            }
        }
        s
    }

    /// `<mu, nu>` inner product of two coweights via the Gram matrix.
    pub fn ip_cw_f64(&self, x: &[f64], y: &[f64]) -> f64 {
        let mut s = 0.0;
        for j in 0..self.rank {
            for k in 0..self.rank {
                s += x[j] * self.gram_fwv_f64[j][k] * y[k];
            }
        }
        s
    }

    pub fn root_by_fw(&self, fw: &[i64]) -> Option<(usize, bool)> {
        if let Some(&i) = self.root_index.get(fw) {
            return Some((i, false));
        }
        let neg: Vec<i64> = fw.iter().map(|x| -x).collect();
        self.root_index.get(&neg).map(|&i| (i, true))
    }

    /// Simple reflection on fundamental-weight coordinates.
    pub fn simple_reflect_weight(&self, lambda: &Weight, j: usize) -> Weight {
        let mut v = lambda.0.clone();
        let k = lambda.0[j];
        for i in 0..self.rank {
            v[i] -= k * self.cartan[i][j];
        }
        Weight(v)
    }

    /// Simple reflection on fundamental-coweight coordinates.
    pub fn simple_reflect_coweight(&self, mu: &Coweight, j: usize) -> Coweight {
        let mut v = mu.0.clone();
        let k = mu.0[j];
        for i in 0..self.rank {
            v[i] -= k * self.cartan[j][i];
        }
        Coweight(v)
    }

    /// Finite Weyl orbit of a weight.
    pub fn weyl_orbit(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.clone());
        queue.push_back(lambda.clone());
        while let Some(w) = queue.pop_front() {
            for j in 0..self.rank {
                let w2 = self.simple_reflect_weight(&w, j);
                if seen.insert(w2.clone()) {
                    queue.push_back(w2);
                }
            }
        }
        let mut v: Vec<Weight> = seen.into_iter().collect();
        v.sort();
        v
    }

    /// Dominant representative of the finite Weyl orbit.
    pub fn dominant_rep(&self, lambda: &Weight) -> Weight {
        let mut w = lambda.clone();
        loop {
            match (0..self.rank).find(|&j| w.0[j] < 0) {
                Some(j) => w = self.simple_reflect_weight(&w, j),
                None => return w,
            }
        }
    }

    /// Is `lambda - mu` in the root lattice `Q`?
    pub fn in_root_lattice(&self, d: &Weight) -> bool {
        // simple-root coordinates of d are inv_cartan * fw-coordinates
        for j in 0..self.rank {
            let mut s = Rat::zero();
            for k in 0..self.rank {
                s += &self.inv_cartan[j][k] * int(d.0[k]);
            }
            if !s.is_integer() {
                return false;
            }
        }
        true
    }

    /// Is a coweight in the coroot lattice `Q_vee`?
    pub fn in_coroot_lattice(&self, d: &Coweight) -> bool {
        for j in 0..self.rank {
            let mut s = Rat::zero();
            for k in 0..self.rank {
                s += &self.inv_cartan[k][j] * int(d.0[k]);
            }
            if !s.is_integer() {
                return false;
            }
        }
        true
    }

    /// Fundamental weights that are minuscule; a fundamental weight is
    /// minuscule exactly when its mark is 1.
    pub fn minuscule_fundamental_weights(&self) -> Vec<Weight> {
        (0..self.rank)
            .filter(|&j| self.marks[j] == 1)
            .map(|j| {
                let mut v = vec![0i64; self.rank];
                v[j] = 1;
                Weight(v)
            })
            .collect()
    }

    /// The quasi-minuscule weight equals the highest short root.
    pub fn quasi_minuscule_weight(&self) -> Weight {
        self.theta_weight()
    }

    pub fn is_minuscule(&self, omega: &Weight) -> bool {
        omega.is_dominant()
            && !omega.is_zero()
            && (0..self.positive.len()).all(|a| self.pair_wc(omega, a, false) <= 1)
    }

    pub fn is_quasi_minuscule(&self, omega: &Weight) -> bool {
        *omega == self.theta_weight()
    }

    /// The saturated generating set `P_theta`: all weights pairing in
    /// `{-1,0,1}` with every root other than `+-nu` itself.
    pub fn quasi_minuscule_set(&self) -> Vec<Weight> {
        let n = self.rank;
        let mut cands: Vec<Weight> = Vec::new();
        let mut stack = vec![Vec::<i64>::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == n {
                cands.push(Weight(prefix));
                continue;
            }
            for v in -1..=1 {
                let mut p = prefix.clone();
                p.push(v);
                stack.push(p);
            }
        }
        for r in &self.positive {
            cands.push(Weight(r.fw.clone()));
            cands.push(Weight(r.fw.iter().map(|x| -x).collect()));
        }
        cands.sort();
        cands.dedup();
        cands
            .into_iter()
            .filter(|nu| {
                let neg = nu.neg();
                (0..self.positive.len()).all(|a| {
                    let is_self = self.positive[a].fw == nu.0 || self.positive[a].fw == neg.0;
                    is_self || self.pair_wc(nu, a, false).abs() <= 1
                })
            })
            .collect()
    }

    /// `P_c^+` in lexicographic order on fundamental-weight coordinates.
    pub fn alcove_weights(&self, c: i64) -> Result<Vec<Weight>> {
        if c <= 1 {
            return Err(Error::InvalidScale(c));
        }
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank];
        enumerate_bounded(&self.marks, c, 0, &mut cur, &mut out);
        out.sort();
        Ok(out.into_iter().map(Weight).collect())
    }

    /// `P_c^{vee,+}` in lexicographic order on fundamental-coweight coordinates.
    pub fn alcove_coweights(&self, c: i64) -> Result<Vec<Coweight>> {
        if c <= 1 {
            return Err(Error::InvalidScale(c));
        }
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank];
        enumerate_bounded(&self.dual_marks, c, 0, &mut cur, &mut out);
        out.sort();
        Ok(out.into_iter().map(Coweight).collect())
    }

    /// Coefficient of `q^c` in `(1-q)^{-1} prod_j (1-q^{m_j})^{-1}`.
    pub fn alcove_count_generating_function(&self, c: i64) -> u64 {
        let c = c as usize;
        let mut series = vec![0u64; c + 1];
        // 1/(1-q)
        for x in series.iter_mut() {
            *x = 1;
        }
        for &m in &self.marks {
            let m = m as usize;
            let mut next = vec![0u64; c + 1];
            for d in 0..=c {
                // next[d] = sum_{k: km <= d} series[d - km]
                let mut k = 0;
                while k * m <= d {
                    next[d] += series[d - k * m];
                    k += 1;
                }
            }
            series = next;
        }
        series[c]
    }

    pub fn describe_json(&self, c: Option<i64>) -> serde_json::Value {
        let simple: Vec<Vec<String>> = self
            .simple_cartesian
            .iter()
            .map(|r| r.iter().map(|x| format!("{}/{}", x.numer(), x.denom())).collect())
            .collect();
        let mut v = serde_json::json!({
            "type": self.label.as_char().to_string(),
            "rank": self.rank,
            "simple_roots": simple,
            "num_positive_roots": self.num_positive(),
            "marks": self.marks,
            "dual_marks": self.dual_marks,
            "coxeter_number": self.coxeter,
            "dual_coxeter_number": self.dual_coxeter,
            "index": self.index,
        });
        if let Some(c) = c {
            if let Ok(ws) = self.alcove_weights(c) {
                v["c"] = serde_json::json!(c);
                v["alcove_weight_count"] = serde_json::json!(ws.len());
                v["alcove_coweight_count"] =
                    serde_json::json!(self.alcove_coweights(c).map(|x| x.len()).unwrap_or(0));
            }
        }
        v
    }
}

fn cartesian_of(coords: &[i64], simple: &[Vec<Rat>]) -> Vec<Rat> {
    let dim = simple[0].len();
    (0..dim)
        .map(|d| coords.iter().zip(simple).map(|(&c, s)| int(c) * &s[d]).sum())
        .collect()
}

fn enumerate_bounded(
    weights: &[i64],
    budget: i64,
    pos: usize,
    cur: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if pos == weights.len() {
        out.push(cur.clone());
        return;
    }
    let mut k = 0;
    while k * weights[pos] <= budget {
        cur[pos] = k;
        enumerate_bounded(weights, budget - k * weights[pos], pos + 1, cur, out);
        k += 1;
    }
    cur[pos] = 0;
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    let n = x.numer();
    let d = x.denom();
    // Desk-scale rationals fit i128 comfortably.
    let nf = i128::try_from(n.clone()).map(|v| v as f64).unwrap_or(f64::NAN);
    let df = i128::try_from(d.clone()).map(|v| v as f64).unwrap_or(f64::NAN);
    nf / df
}
