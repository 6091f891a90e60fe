//! Executable binomial and trigonometric identities backing the
//! multi-sum evaluator: Chu-Vandermonde, its j-block generalization with
//! the `k_{i,j}` shifts, and the paired-sum identity mixing a three-block
//! product with a product of separate sums.

use crate::area_enum::k_shift;
use crate::kreft::{b_tilde, RationalFlux};

/// Binomial coefficient in fixed-width arithmetic; arguments stay small
/// enough (`n <= 60`) that `i128` never overflows.
fn binom(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: i128 = 1;
    for i in 0..k {
        result = result * (n - i) as i128 / (i + 1) as i128;
    }
    result
}

/// `binom(l1+l2, l1'+l2') == Σ_A binom(l1, l1'+A) binom(l2, l2'-A)`,
/// checked by exact summation over the finite support.
pub fn chu_vandermonde(l1: i64, l2: i64, l1p: i64, l2p: i64) -> bool {
    let span = l1 + l2;
    let sum: i128 = (-span..=span)
        .map(|a| binom(l1, l1p + a) * binom(l2, l2p - a))
        .sum();
    sum == binom(l1 + l2, l1p + l2p)
}

/// The j-block generalization:
/// `binom(Σl, Σl') == Σ_A Σ_{k_3..k_j} Π_i binom(l_i, l_i' - k_{i,j} +
/// A(δ_{i,j-1} - δ_{i,j}))`.
///
/// Single-block inputs are padded with a zero block, which turns the
/// `A` sum into a Kronecker delta. The `k_r` loops run over the exact
/// support window of block `r` (blocks are resolved from the last one
/// backwards, so each window is known when its variable is chosen).
pub fn multi_binomial_identity(l: &[i64], primed: &[i64]) -> bool {
    assert_eq!(l.len(), primed.len());
    assert!(!l.is_empty());
    let mut l = l.to_vec();
    let mut primed = primed.to_vec();
    if l.len() == 1 {
        l.push(0);
        primed.push(0);
    }
    let j = l.len();
    let span: i64 = l.iter().sum();

    let mut sum: i128 = 0;
    let mut k = vec![0i64; j - 2];
    for a in -span..=span {
        sum += multi_sum_rec(&l, &primed, a, j, &mut k);
    }
    sum == binom(l.iter().sum(), primed.iter().sum())
}

/// Recursion over `k_r` for `r = j` down to `3`; at `r = 2` every shift
/// is determined and the block product is evaluated.
fn multi_sum_rec(l: &[i64], primed: &[i64], a: i64, r: usize, k: &mut Vec<i64>) -> i128 {
    let j = l.len();
    if r == 2 {
        let mut product: i128 = 1;
        for i in 1..=j {
            let delta = if i == j - 1 {
                a
            } else if i == j {
                -a
            } else {
                0
            };
            product *= binom(l[i - 1], primed[i - 1] - k_shift(i, j, k) + delta);
            if product == 0 {
                return 0;
            }
        }
        return product;
    }
    // block r's argument is primed_r + k_r + offset with the offset
    // fixed by the already-chosen k_{r+1}..k_j
    let delta = if r == j - 1 {
        a
    } else if r == j {
        -a
    } else {
        0
    };
    k[r - 3] = 0;
    let offset = -k_shift(r, j, k) + delta;
    let mut total: i128 = 0;
    for kr in -(primed[r - 1] + offset)..=(l[r - 1] - primed[r - 1] - offset) {
        k[r - 3] = kr;
        total += multi_sum_rec(l, primed, a, r - 1, k);
    }
    k[r - 3] = 0;
    total
}

/// Exact right-hand side of the paired-sum identity: the `A = 0` slice
/// and, per harmonic `A >= 1`, the two one-sided `k_3` sums with lower
/// limit `-floor(A/2)`.
fn paired_sum_rhs_terms(l1: i64, l2: i64, l3: i64) -> Vec<i128> {
    let bound = 2 * (l1 + l2 + l3) + 2;
    let mut terms = Vec::new();
    let zero: i128 = (0..=bound)
        .map(|k3| binom(2 * l1, l1 - k3) * binom(2 * l2, l2 + 2 * k3) * binom(2 * l3, l3 - k3))
        .sum();
    terms.push(2 * zero);
    for a in 1..=bound {
        let one_sided = |x1: i64, x3: i64| -> i128 {
            (-(a / 2)..=bound)
                .map(|k3| {
                    binom(2 * x1, x1 - k3 - a)
                        * binom(2 * l2, l2 + 2 * k3 + a)
                        * binom(2 * x3, x3 - k3)
                })
                .sum()
        };
        terms.push(2 * (one_sided(l1, l3) + one_sided(l3, l1)));
    }
    terms
}

/// Verifies the paired-sum identity both ways: the flux-dependent form
/// numerically (1e-9) and its pure-binomial shadow exactly. The strict
/// regime `q > 2(l1+l2+l3)` is assumed.
pub fn paired_sum_identity(l1: i64, l2: i64, l3: i64, flux: RationalFlux) -> bool {
    let rhs_terms = paired_sum_rhs_terms(l1, l2, l3);

    // exact binomial shadow (all cosines set to 1)
    let s = l1 + l2 + l3;
    let binomial_lhs = binom(2 * s, s) + binom(2 * l2, l2) * binom(2 * (l1 + l3), l1 + l3);
    let binomial_rhs: i128 = rhs_terms.iter().sum();
    if binomial_lhs != binomial_rhs {
        return false;
    }

    // flux-dependent form
    let q = flux.q() as i64;
    let triple: f64 = (1..=q)
        .map(|k| {
            b_tilde(flux, k).powi(l1 as i32)
                * b_tilde(flux, k - 1).powi(l2 as i32)
                * b_tilde(flux, k - 2).powi(l3 as i32)
        })
        .sum::<f64>()
        / q as f64;
    let middle: f64 = (1..=q)
        .map(|k| b_tilde(flux, k - 1).powi(l2 as i32))
        .sum::<f64>()
        / q as f64;
    let outer: f64 = (1..=q)
        .map(|k| b_tilde(flux, k).powi(l1 as i32) * b_tilde(flux, k - 2).powi(l3 as i32))
        .sum::<f64>()
        / q as f64;
    let lhs = triple + middle * outer;

    let base = flux.angle();
    let rhs: f64 = rhs_terms
        .iter()
        .enumerate()
        .map(|(a, t)| *t as f64 * (a as f64 * base).cos())
        .sum();

    let scale = lhs.abs().max(rhs.abs()).max(1.0);
    (lhs - rhs).abs() <= 1e-9 * scale
}
