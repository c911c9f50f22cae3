//! Exact coefficient rings for the Hecke expansion tables.
//!
//! `QPoly` is the polynomial ring `Z[q_s, q_l]` in the deformation parameters
//! `q_j = tau_j - tau_j^{-1}`; the expansion coefficients of `T_w X^nu` are
//! integer polynomials in these. `LaurentTau` is the Laurent ring `Z[t, t^-1]`
//! in a single equal-label `tau`, used to compare against rank-one closed
//! forms via the substitution `q = t - t^-1`.

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Ring bound for Hecke coefficient tables.
pub trait CoeffRing:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
{
}

impl<T> CoeffRing for T where
    T: Clone
        + PartialEq
        + std::fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
{
}

/// `Z[q_s, q_l]`, sparse in the exponent pair.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly {
    pub terms: BTreeMap<(u32, u32), i64>,
}

impl QPoly {
    pub fn constant(c: i64) -> QPoly {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((0, 0), c);
        }
        QPoly { terms }
    }

    pub fn gen_qs() -> QPoly {
        let mut terms = BTreeMap::new();
        terms.insert((1, 0), 1);
        QPoly { terms }
    }

    pub fn gen_ql() -> QPoly {
        let mut terms = BTreeMap::new();
        terms.insert((0, 1), 1);
        QPoly { terms }
    }

    fn insert(&mut self, key: (u32, u32), c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(key).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    /// Substitute `q_s = q_l = t - t^{-1}`.
    pub fn eval_equal_label(&self) -> LaurentTau {
        let q = LaurentTau::from_terms(vec![(-1, -1), (1, 1)]);
        let mut out = LaurentTau::zero();
        for (&(es, el), &c) in &self.terms {
            let mut term = LaurentTau::from_terms(vec![(0, c)]);
            for _ in 0..es + el {
                term = term * q.clone();
            }
            out = out + term;
        }
        out
    }

    /// Numerical evaluation at given `q_s, q_l`.
    pub fn eval_f64(&self, qs: f64, ql: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(es, el), &c)| c as f64 * qs.powi(es as i32) * ql.powi(el as i32))
            .sum()
    }
}

impl Zero for QPoly {
    fn zero() -> Self {
        QPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for QPoly {
    fn one() -> Self {
        QPoly::constant(1)
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        let mut out = self;
        for (k, c) in rhs.terms {
            out.insert(k, c);
        }
        out
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        let mut out = self;
        for (k, c) in rhs.terms {
            out.insert(k, -c);
        }
        out
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &rhs.terms {
                out.insert((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

/// `Z[t, t^{-1}]` in one variable.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentTau {
    pub terms: BTreeMap<i64, i64>,
}

impl LaurentTau {
    pub fn from_terms(v: Vec<(i64, i64)>) -> LaurentTau {
        let mut t = LaurentTau::default();
        for (e, c) in v {
            t.insert(e, c);
        }
        t
    }

    pub fn monomial(e: i64, c: i64) -> LaurentTau {
        Self::from_terms(vec![(e, c)])
    }

    fn insert(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    /// Exact division, panics if the division is not exact.
    pub fn div_exact(&self, rhs: &LaurentTau) -> LaurentTau {
        assert!(!rhs.terms.is_empty());
        let mut rem = self.clone();
        let mut out = LaurentTau::zero();
        let (&d_hi, &d_coef) = rhs.terms.iter().next_back().unwrap();
        while !rem.terms.is_empty() {
            let (&r_hi, &r_coef) = rem.terms.iter().next_back().unwrap();
            assert!(r_coef % d_coef == 0, "inexact Laurent division");
            let q = LaurentTau::monomial(r_hi - d_hi, r_coef / d_coef);
            rem = rem - q.clone() * rhs.clone();
            out = out + q;
        }
        out
    }
}

impl Zero for LaurentTau {
    fn zero() -> Self {
        LaurentTau::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentTau {
    fn one() -> Self {
        LaurentTau::monomial(0, 1)
    }
}

impl Add for LaurentTau {
    type Output = LaurentTau;
    fn add(self, rhs: LaurentTau) -> LaurentTau {
        let mut out = self;
        for (e, c) in rhs.terms {
            out.insert(e, c);
        }
        out
    }
}

impl Sub for LaurentTau {
    type Output = LaurentTau;
    fn sub(self, rhs: LaurentTau) -> LaurentTau {
        let mut out = self;
        for (e, c) in rhs.terms {
            out.insert(e, -c);
        }
        out
    }
}

impl Neg for LaurentTau {
    type Output = LaurentTau;
    fn neg(self) -> LaurentTau {
        LaurentTau { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Mul for LaurentTau {
    type Output = LaurentTau;
    fn mul(self, rhs: LaurentTau) -> LaurentTau {
        let mut out = LaurentTau::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.insert(e1 + e2, c1 * c2);
            }
        }
        out
    }
}
