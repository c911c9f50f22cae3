//! Small exact linear-algebra helpers over `BigRational`.

use crate::Rat;
use num_traits::{One, Signed, Zero};

#[cfg(test)]
fn from_i64(k: i64) -> Rat {
    Rat::from_integer(k.into())
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Invert a square matrix by Gauss-Jordan elimination. Panics on a singular
/// matrix (all call sites invert Cartan/Gram matrices, which are invertible).
pub fn invert(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("singular matrix in exact inversion");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - &t;
                    let t = &inv[col][j] * &f;
                    inv[r][j] = &inv[r][j] - &t;
                }
            }
        }
    }
    inv
}

pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            d = -d;
        }
        let p = a[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &p;
                for j in col..n {
                    let t = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - &t;
                }
            }
        }
    }
    d
}

/// Exact membership of `q` in the convex hull of `points`, by phase-1 simplex
/// (Bland's rule) on `sum_i c_i p_i = q`, `sum_i c_i = 1`, `c_i >= 0`.
pub fn in_convex_hull(points: &[Vec<Rat>], q: &[Rat]) -> bool {
    let m = points.len();
    if m == 0 {
        return false;
    }
    let d = q.len();
    let rows = d + 1;
    // Tableau columns: m structural variables then `rows` artificials.
    let cols = m + rows;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut row: Vec<Rat> = Vec::with_capacity(cols + 1);
        for p in points {
            row.push(if r < d { p[r].clone() } else { Rat::one() });
        }
        for k in 0..rows {
            row.push(if k == r { Rat::one() } else { Rat::zero() });
        }
        row.push(if r < d { q[r].clone() } else { Rat::one() });
        t.push(row);
    }
    // Make all right-hand sides nonnegative.
    for r in 0..rows {
        if t[r][cols].is_negative() {
            for j in 0..=cols {
                t[r][j] = -t[r][j].clone();
            }
            // Fix the artificial column sign back to +1.
            t[r][m + r] = Rat::one();
        }
    }
    let mut basis: Vec<usize> = (m..m + rows).collect();
    // Objective: minimize the sum of artificials. Reduced costs for the
    // current all-artificial basis.
    let mut obj: Vec<Rat> = vec![Rat::zero(); cols + 1];
    for r in 0..rows {
        for j in 0..=cols {
            let t_rj = t[r][j].clone();
            obj[j] = &obj[j] - &t_rj;
        }
    }
    for k in m..m + rows {
        obj[k] = Rat::zero();
    }
    loop {
        // Bland: entering column = smallest index with negative reduced cost.
        let Some(enter) = (0..cols).find(|&j| obj[j].is_negative()) else {
            break;
        };
        // Ratio test, Bland tie-break on smallest basis index.
        let mut leave: Option<(usize, Rat)> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][cols] / &t[r][enter];
                match &leave {
                    None => leave = Some((r, ratio)),
                    Some((lr, lv)) => {
                        if ratio < *lv || (ratio == *lv && basis[r] < basis[*lr]) {
                            leave = Some((r, ratio));
                        }
                    }
                }
            }
        }
        let Some((lr, _)) = leave else {
            // Unbounded phase-1 cannot happen; treat defensively as infeasible.
            return false;
        };
        let p = t[lr][enter].clone();
        for j in 0..=cols {
            t[lr][j] = &t[lr][j] / &p;
        }
        for r in 0..rows {
            if r != lr && !t[r][enter].is_zero() {
                let f = t[r][enter].clone();
                for j in 0..=cols {
                    let s = &t[lr][j] * &f;
                    t[r][j] = &t[r][j] - &s;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..=cols {
                let s = &t[lr][j] * &f;
                obj[j] = &obj[j] - &s;
            }
        }
        basis[lr] = enter;
    }
    // Feasible iff the artificial objective reaches zero.
    obj[cols].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(k: i64) -> Rat {
        from_i64(k)
    }

    #[test]
    fn invert_2x2() {
        let m = vec![vec![r(2), r(-1)], vec![r(-1), r(2)]];
        let inv = invert(&m);
        assert_eq!(inv[0][0], Rat::new(2.into(), 3.into()));
        assert_eq!(inv[0][1], Rat::new(1.into(), 3.into()));
    }

    #[test]
    fn det_cartan_a2() {
        let m = vec![vec![r(2), r(-1)], vec![r(-1), r(2)]];
        assert_eq!(det(&m), r(3));
    }

    #[test]
    fn hull_membership_1d() {
        let pts = vec![vec![r(-1)], vec![r(3)]];
        assert!(in_convex_hull(&pts, &[r(0)]));
        assert!(in_convex_hull(&pts, &[r(3)]));
        assert!(!in_convex_hull(&pts, &[r(4)]));
    }

    #[test]
    fn hull_membership_2d() {
        let pts = vec![vec![r(0), r(0)], vec![r(2), r(0)], vec![r(0), r(2)]];
        assert!(in_convex_hull(&pts, &[r(1), r(1)]));
        assert!(in_convex_hull(&pts, &[Rat::new(1.into(), 2.into()), Rat::new(1.into(), 2.into())]));
        assert!(!in_convex_hull(&pts, &[r(2), r(1)]));
        assert!(!in_convex_hull(&pts, &[r(-1), r(0)]));
    }
}
