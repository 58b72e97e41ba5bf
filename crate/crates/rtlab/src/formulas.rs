//! Closed-form density constants and threshold functions.
//!
//! `b(k)` is the asymptotic edge-density coefficient of the extremal
//! K_k-free graphs with sublinear independence number; `a(t)` is the
//! triangle-density analogue (exact rational for odd t, a 1-D maximization
//! for even t). All rationals are exact.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

pub type Rational = Ratio<i64>;

/// Edge-density coefficient: (k-3)/(2(k-1)) for odd k, (3k-10)/(2(3k-4))
/// for even k.
pub fn b(k: usize) -> Rational {
    assert!(k >= 3, "b(k) requires k >= 3");
    let k = k as i64;
    if k % 2 == 1 {
        Ratio::new(k - 3, 2 * (k - 1))
    } else {
        Ratio::new(3 * k - 10, 2 * (3 * k - 4))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Odd,
    Even,
}

/// Result of the triangle-density evaluation.
#[derive(Clone, Debug)]
pub struct OptResult {
    pub value: f64,
    /// Exact value when the branch admits one (odd t).
    pub exact: Option<Rational>,
    /// Maximizing x for the even branch.
    pub argmax_x: Option<f64>,
    pub branch: Branch,
}

/// The even-branch objective: with l = t/2,
/// C(l-2,3)((1-x)/(l-2))^3 + x C(l-2,2)((1-x)/(l-2))^2 + (1/2)(x/2)^2(1-x).
pub fn even_branch_objective(l: usize, x: f64) -> f64 {
    assert!(l >= 3);
    let q = (l - 2) as f64;
    let c3 = binom(l - 2, 3) as f64;
    let c2 = binom(l - 2, 2) as f64;
    let y = (1.0 - x) / q;
    c3 * y * y * y + x * c2 * y * y + 0.5 * (x / 2.0) * (x / 2.0) * (1.0 - x)
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// Ternary search maximizer on [lo, hi] for a unimodal slice; used as the
/// cross-check for the closed-form root.
pub fn ternary_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    while hi - lo > tol {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) < f(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Grid scan followed by ternary refinement; robust when the objective is
/// not globally unimodal.
pub fn grid_then_ternary(f: impl Fn(f64) -> f64 + Copy, lo: f64, hi: f64, step: f64) -> (f64, f64) {
    let mut best_x = lo;
    let mut best_v = f(lo);
    let mut x = lo;
    while x <= hi {
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_x = x;
        }
        x += step;
    }
    let a = (best_x - step).max(lo);
    let b = (best_x + step).min(hi);
    ternary_max(f, a, b, 1e-12)
}

/// Triangle-density coefficient for forbidden clique size t >= 6,
/// l = floor(t/2). Odd t: exact C(l,3)/l^3. Even t: maximize the cubic
/// over x in [0,1] (closed-form critical point, ternary cross-checked to
/// 1e-9).
pub fn a(t: usize) -> Result<OptResult> {
    if t < 6 {
        return Err(Error::OutOfRange(format!(
            "a(t) requires t >= 6 (got {t}); use the exhaustive oracle for t in {{4,5}}"
        )));
    }
    let l = t / 2;
    if t % 2 == 1 {
        let exact = Ratio::new(binom(l, 3) as i64, (l * l * l) as i64);
        Ok(OptResult {
            value: *exact.numer() as f64 / *exact.denom() as f64,
            exact: Some(exact),
            argmax_x: None,
            branch: Branch::Odd,
        })
    } else {
        let f = |x: f64| even_branch_objective(l, x);
        let (x_grid, v_grid) = grid_then_ternary(f, 0.0, 1.0, 1e-4);
        let (x_root, v_root) = even_branch_closed_form(l);
        debug_assert!(
            (x_grid - x_root).abs() < 1e-6 && (v_grid - v_root).abs() < 1e-12,
            "closed-form root and ternary search disagree: {x_grid} vs {x_root}"
        );
        Ok(OptResult {
            value: v_root,
            exact: None,
            argmax_x: Some(x_root),
            branch: Branch::Even,
        })
    }
}

/// Critical point of the even-branch cubic: the objective is a cubic in x,
/// so its derivative is a quadratic with an explicit root in [0,1].
fn even_branch_closed_form(l: usize) -> (f64, f64) {
    let q = (l - 2) as f64;
    let c3 = binom(l - 2, 3) as f64;
    let c2 = binom(l - 2, 2) as f64;
    // f(x) = c3 (1-x)^3/q^3 + c2 x (1-x)^2/q^2 + x^2(1-x)/8
    // expand: f(x) = A (1-x)^3 + B x(1-x)^2 + C x^2(1-x)
    let a3 = c3 / (q * q * q);
    let b3 = c2 / (q * q);
    let c = 1.0 / 8.0;
    // f'(x) = -3A(1-x)^2 + B[(1-x)^2 - 2x(1-x)] + C[2x(1-x) - x^2]
    //       = x^2(-3A+3B-3C) + x(6A-4B+2C) + (-3A+B)
    let q0 = -3.0 * a3 + b3;
    let q1 = 6.0 * a3 - 4.0 * b3 + 2.0 * c;
    let q2 = -3.0 * a3 + 3.0 * b3 - 3.0 * c;
    // roots of q2 x^2 + q1 x + q0 = 0
    let mut candidates = vec![0.0, 1.0];
    if q2.abs() < 1e-15 {
        if q1.abs() > 1e-15 {
            candidates.push(-q0 / q1);
        }
    } else {
        let disc = q1 * q1 - 4.0 * q2 * q0;
        if disc >= 0.0 {
            let s = disc.sqrt();
            candidates.push((-q1 + s) / (2.0 * q2));
            candidates.push((-q1 - s) / (2.0 * q2));
        }
    }
    let f = |x: f64| even_branch_objective(l, x);
    candidates
        .into_iter()
        .filter(|x| (0.0..=1.0).contains(x))
        .map(|x| (x, f(x)))
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap()
}

/// Exponent coefficient of the 2-edge-coloring count: 0 for k = 3, and
/// b(4t+i) for k = 3t+i with t >= 1, i in {1,2,3}.
pub fn rf_exponent(k: usize) -> Rational {
    assert!(k >= 3, "rf_exponent requires k >= 3");
    if k == 3 {
        return Ratio::new(0, 1);
    }
    // k = 3t + i with t >= 1 and i in {1,2,3}
    let t = (k - 1) / 3;
    let i = k - 3 * t;
    debug_assert!((1..=3).contains(&i) && t >= 1);
    b(4 * t + i)
}

/// Clique-count coefficient 2^{-C(s,2)} / s^s for the K_{s+2}-forbidden
/// problem; exact big rational.
pub fn rt_clique_coefficient(s: usize) -> BigRational {
    assert!(s >= 3);
    let choose2 = s * (s - 1) / 2;
    let denom = BigInt::from(2u32).pow(choose2 as u32) * BigInt::from(s as u64).pow(s as u32);
    BigRational::new(BigInt::from(1), denom)
}

/// Phase-transition threshold n * 2^{-omega * (log2 n)^{1-1/r}}.
/// Logarithm base 2 throughout.
pub fn g_threshold(r: usize, n: f64, omega: f64) -> f64 {
    assert!(r >= 2 && n >= 2.0 && omega > 0.0);
    let e = 1.0 - 1.0 / r as f64;
    n * (2f64).powf(-omega * n.log2().powf(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_small_values() {
        assert_eq!(b(4), Ratio::new(1, 8));
        assert_eq!(b(5), Ratio::new(1, 4));
        assert_eq!(b(6), Ratio::new(2, 7));
        assert_eq!(b(7), Ratio::new(1, 3));
        assert_eq!(b(8), Ratio::new(7, 20));
        assert_eq!(b(3), Ratio::new(0, 1));
    }

    #[test]
    fn b_monotone_within_parity_and_interleaved() {
        for k in 4..=38 {
            assert!(b(k + 2) > b(k), "b not increasing at k={k}");
        }
        for l in 2..=19 {
            assert!(b(2 * l) < b(2 * l + 1), "b(2l) >= b(2l+1) at l={l}");
        }
    }

    #[test]
    fn a_odd_values() {
        assert_eq!(a(7).unwrap().exact.unwrap(), Ratio::new(1, 27));
        assert_eq!(a(9).unwrap().exact.unwrap(), Ratio::new(1, 16));
    }

    #[test]
    fn a6_is_1_54_at_x_two_thirds() {
        // Derived: for l=3 the first two terms vanish, leaving
        // (1/2)(x/2)^2(1-x) = x^2(1-x)/8, maximized at x = 2/3 with 1/54.
        let r = a(6).unwrap();
        assert!((r.value - 1.0 / 54.0).abs() < 1e-12);
        assert!((r.argmax_x.unwrap() - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn a_rejects_small_t() {
        assert!(a(5).is_err());
        assert!(a(4).is_err());
    }

    #[test]
    fn a_even_ternary_agrees_with_closed_form() {
        for t in [6usize, 8, 10, 12, 20] {
            let l = t / 2;
            let f = |x: f64| even_branch_objective(l, x);
            let (xg, vg) = grid_then_ternary(f, 0.0, 1.0, 1e-4);
            let r = a(t).unwrap();
            assert!((xg - r.argmax_x.unwrap()).abs() < 1e-6, "t={t}");
            assert!((vg - r.value).abs() < 1e-9, "t={t}");
        }
    }

    #[test]
    fn rf_exponent_values() {
        assert_eq!(rf_exponent(3), Ratio::new(0, 1));
        assert_eq!(rf_exponent(4), Ratio::new(1, 4)); // b(5)
        assert_eq!(rf_exponent(6), Ratio::new(1, 3)); // b(7)
    }

    #[test]
    fn rf_exponent_mapping_table() {
        for k in 4..=30 {
            let t = (k - 1) / 3;
            let i = k - 3 * t;
            assert!(t >= 1 && (1..=3).contains(&i));
            assert_eq!(k, 3 * t + i);
            assert_eq!(rf_exponent(k), b(4 * t + i));
        }
    }

    #[test]
    fn rt_clique_coefficient_values() {
        assert_eq!(
            rt_clique_coefficient(3),
            BigRational::new(BigInt::from(1), BigInt::from(216))
        );
        assert_eq!(
            rt_clique_coefficient(4),
            BigRational::new(BigInt::from(1), BigInt::from(16384))
        );
    }

    #[test]
    fn g_threshold_values() {
        // Independent high-precision evaluation: 1024 * 2^{-10^{2/3}}.
        let expected = 1024.0 * (2f64).powf(-(10f64).powf(2.0 / 3.0));
        let got = g_threshold(3, 1024.0, 1.0);
        assert!((got - expected).abs() / expected < 1e-12);
        // omega -> 0 limit approaches n
        assert!((g_threshold(3, 1000.0, 1e-9) - 1000.0).abs() < 1e-3);
    }

    #[test]
    fn g_threshold_monotone_in_n() {
        for r in [2usize, 3, 4] {
            let mut prev = 0.0;
            let mut n = 4.0f64;
            while n <= 1e6 {
                let v = g_threshold(r, n, 1.0);
                assert!(v > prev, "g_{r} not increasing at n={n}");
                prev = v;
                n *= 1.37;
            }
        }
    }

    #[test]
    fn a_odd_matches_turan_triangle_density() {
        use crate::constructions::build_turan;
        for l in [3usize, 4, 5] {
            let n = 60 * l;
            let g = build_turan(n, l);
            let density = g.count_cliques(3) as f64 / (n as f64).powi(3);
            let exact = a(2 * l + 1).unwrap();
            let target = *exact.exact.unwrap().numer() as f64
                / *exact.exact.unwrap().denom() as f64;
            // finite-n correction is O(1/n)
            assert!((density - target).abs() < 3.0 / n as f64, "l={l}");
        }
    }
}
