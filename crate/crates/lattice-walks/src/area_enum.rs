//! Evaluation of the composition-indexed binomial multi-sums assembling
//! the area distribution `C_n(A)`, its generating polynomial `Z_n(Q)`,
//! and the step-resolved (horizontal versus vertical) refinement.
//!
//! Each composition `(l_1, ..., l_j)` of `n/2` contributes an exact cosine
//! expansion of `(1/q) Σ_k b̃^{l_1}(k) b̃^{l_2}(k-1) ... b̃^{l_j}(k-j+1)`.
//! The expansion is computed by the finite-bound multi-sum with
//! `k_i ∈ [0, 2 l_i]` for `i ≥ 3`, first-block binomial argument
//! `l_1 + A + Σ_{i≥3} (i-2)(k_i - l_i)` and second-block argument
//! `l_2 - A - Σ_{i≥3} (i-1)(k_i - l_i)`; zero-extended binomials make the
//! bounds exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::combinatorics::{binomial, compositions, Composition};
use crate::kreft::RationalFlux;
use crate::{Error, Result};

/// Exact map from harmonic index `A >= 0` to a rational coefficient,
/// representing `c_0 + Σ_{A>0} c_A cos(2Aπp/q)`. The `A = 0` coefficient
/// is stored un-doubled, matching the printed expansions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CosinePolynomial {
    coeffs: BTreeMap<u64, BigRational>,
}

impl CosinePolynomial {
    pub fn coefficient(&self, harmonic: u64) -> BigRational {
        self.coeffs.get(&harmonic).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coefficients(&self) -> &BTreeMap<u64, BigRational> {
        &self.coeffs
    }

    pub fn insert(&mut self, harmonic: u64, coeff: BigRational) {
        if !coeff.is_zero() {
            self.coeffs.insert(harmonic, coeff);
        }
    }

    pub fn add_assign(&mut self, harmonic: u64, delta: &BigRational) {
        if delta.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(harmonic)
            .or_insert_with(BigRational::zero);
        *entry += delta;
        if entry.is_zero() {
            self.coeffs.remove(&harmonic);
        }
    }

    pub fn scaled(&self, factor: &BigRational) -> CosinePolynomial {
        let mut out = CosinePolynomial::default();
        for (&a, c) in &self.coeffs {
            out.insert(a, c * factor);
        }
        out
    }

    pub fn add(&mut self, other: &CosinePolynomial) {
        for (&a, c) in &other.coeffs {
            self.add_assign(a, c);
        }
    }

    /// Value with every cosine set to 1, i.e. at flux 0.
    pub fn value_at_one(&self) -> BigRational {
        self.coeffs.values().sum()
    }

    /// Numeric value `c_0 + Σ_{A>0} c_A cos(2Aπp/q)`.
    pub fn evaluate(&self, flux: RationalFlux) -> f64 {
        self.evaluate_stride(flux, 1)
    }

    /// Numeric value with harmonics dilated `A -> rA`:
    /// `c_0 + Σ_{A>0} c_A cos(2rAπp/q)`.
    pub fn evaluate_stride(&self, flux: RationalFlux, stride: u64) -> f64 {
        let base = 2.0 * std::f64::consts::PI * flux.p() as f64 / flux.q() as f64;
        self.coeffs
            .iter()
            .map(|(&a, c)| rational_to_f64(c) * ((stride * a) as f64 * base).cos())
            .sum()
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

/// Exact distribution of closed walks of length `n` over the algebraic
/// area `A`. Symmetric (`counts[A] == counts[-A]`), supported on
/// `|A| <= floor(n^2/16)`, and summing to `binom(n, n/2)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaDistribution {
    n: u64,
    counts: BTreeMap<i64, BigInt>,
}

impl AreaDistribution {
    pub fn from_counts(n: u64, counts: BTreeMap<i64, BigInt>) -> AreaDistribution {
        let counts = counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        AreaDistribution { n, counts }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn count(&self, area: i64) -> BigInt {
        self.counts.get(&area).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn counts(&self) -> &BTreeMap<i64, BigInt> {
        &self.counts
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    /// Largest `|A|` that can carry walks: `floor(n^2/16)`.
    pub fn support_bound(&self) -> i64 {
        (self.n * self.n / 16) as i64
    }

    pub fn is_symmetric(&self) -> bool {
        self.counts.iter().all(|(&a, c)| self.count(-a) == *c)
    }

    /// `Σ_A C_n(A) e^{2iπAp/q}`. The imaginary part vanishes up to
    /// rounding because the counts are symmetric in `A`.
    pub fn evaluate_at_flux(&self, flux: RationalFlux) -> Complex64 {
        let base = 2.0 * std::f64::consts::PI * flux.p() as f64 / flux.q() as f64;
        self.counts
            .iter()
            .map(|(&a, c)| {
                let angle = a as f64 * base;
                c.to_f64().unwrap() * Complex64::new(angle.cos(), angle.sin())
            })
            .sum()
    }
}

/// Finitely supported exact map from integer exponent to count,
/// representing `Z_n(Q) = Σ_A C_n(A) Q^A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn coefficient(&self, exponent: i64) -> BigInt {
        self.coeffs.get(&exponent).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coefficients(&self) -> &BTreeMap<i64, BigInt> {
        &self.coeffs
    }

    /// `Z_n(1)`, the total walk count.
    pub fn evaluate_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }
}

impl From<&AreaDistribution> for LaurentPolynomial {
    fn from(d: &AreaDistribution) -> LaurentPolynomial {
        LaurentPolynomial {
            coeffs: d.counts.clone(),
        }
    }
}

/// Binomial shift `k_{i,j}` of block `i` among `j` blocks:
/// `-Σ_{r=i..j} k_r + (i-1) k_{2i-2} + (2i-1) k_{2i-1} + i k_{2i}`,
/// a term entering only when its index lies in `3..=j` (`k_1` and `k_2`
/// never exist).
pub fn k_shift(i: usize, j: usize, k: &[i64]) -> i64 {
    debug_assert!(i >= 1 && i <= j);
    debug_assert_eq!(k.len(), j.saturating_sub(2));
    let get = |r: usize| -> i64 {
        if (3..=j).contains(&r) {
            k[r - 3]
        } else {
            0
        }
    };
    let mut shift = 0i64;
    for r in i.max(3)..=j {
        shift -= get(r);
    }
    shift += (i as i64 - 1) * get(2 * i - 2);
    shift += (2 * i as i64 - 1) * get(2 * i - 1);
    shift += i as i64 * get(2 * i);
    shift
}

/// The weight table of the shifts: for each summation index `r` in
/// `3..=j`, row `r` lists the coefficient of `k_r` in `k_{i,j}` for
/// `i = 1..=j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KWeightMatrix {
    j: usize,
    rows: Vec<Vec<i64>>,
}

impl KWeightMatrix {
    pub fn new(j: usize) -> KWeightMatrix {
        assert!(j >= 2);
        let rows = (3..=j)
            .map(|r| {
                let mut unit = vec![0i64; j - 2];
                unit[r - 3] = 1;
                (1..=j).map(|i| k_shift(i, j, &unit)).collect()
            })
            .collect();
        KWeightMatrix { j, rows }
    }

    pub fn block_count(&self) -> usize {
        self.j
    }

    /// Row for summation variable `k_r`, `3 <= r <= j`.
    pub fn row(&self, r: usize) -> &[i64] {
        &self.rows[r - 3]
    }
}

/// Exact cosine expansion of the shifted product attached to one
/// composition. All coefficients are integers; evaluation at flux 0
/// (every cosine set to 1) gives `binom(2h, h)` with `h` the
/// composition's half-length.
pub fn composition_term(c: &Composition) -> CosinePolynomial {
    let mut out = CosinePolynomial::default();
    for_each_harmonic_term(c, |a, value| {
        let entry = BigRational::from(value);
        out.add_assign(a.unsigned_abs(), &entry);
    });
    out
}

/// Walks the trans-form multi-sum, invoking `sink(A, term)` for every
/// signed harmonic `A` with its (nonzero) integer contribution.
fn for_each_harmonic_term<F: FnMut(i64, BigInt)>(c: &Composition, mut sink: F) {
    // Pad single-part compositions with a zero second block: the second
    // binomial then collapses to a Kronecker delta at A = 0.
    let mut l: Vec<i64> = c.parts().iter().map(|&p| p as i64).collect();
    if l.len() == 1 {
        l.push(0);
    }
    let j = l.len();
    let h: i64 = l.iter().sum();
    let bound = h * h / 4;

    let mut k = vec![0i64; j - 2];
    loop {
        // product over blocks i >= 3 plus the accumulated A-free shifts
        let mut tail = BigInt::one();
        let mut shift_a = 0i64; // Σ (i-2)(k_i - l_i)
        let mut shift_b = 0i64; // Σ (i-1)(k_i - l_i)
        for (idx, &ki) in k.iter().enumerate() {
            let i = idx as i64 + 3;
            let li = l[idx + 2];
            tail *= binomial(2 * li, ki);
            shift_a += (i - 2) * (ki - li);
            shift_b += (i - 1) * (ki - li);
        }
        if !tail.is_zero() {
            for a in -bound..=bound {
                let first = binomial(2 * l[0], l[0] + a + shift_a);
                if first.is_zero() {
                    continue;
                }
                let second = binomial(2 * l[1], l[1] - a - shift_b);
                if second.is_zero() {
                    continue;
                }
                sink(a, &tail * first * second);
            }
        }
        // odometer over k_i in 0..=2 l_i
        let mut idx = 0;
        loop {
            if idx == k.len() {
                return;
            }
            if k[idx] < 2 * l[idx + 2] {
                k[idx] += 1;
                break;
            }
            k[idx] = 0;
            idx += 1;
        }
    }
}

/// First-order slice `[q] a_{p,q}(n)` as an exact cosine polynomial:
/// the coefficient-weighted sum of `composition_term` over all
/// compositions of `n/2`. Compositions are independent work items
/// reduced by exact addition, so the result is identical for any
/// thread count.
pub fn first_order_q(n: u64) -> Result<CosinePolynomial> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if n % 2 != 0 {
        return Err(Error::OddLength(n));
    }
    let terms: Vec<Composition> = compositions(n / 2).collect();
    let total = terms
        .par_iter()
        .map(|c| composition_term(c).scaled(&c.coefficient()))
        .reduce(CosinePolynomial::default, |mut acc, t| {
            acc.add(&t);
            acc
        });
    Ok(total)
}

/// The area distribution `C_n(A)` for closed walks of length `n`.
///
/// `n = 2` is the degenerate case `C_2(A) = 4 δ_{A,0}`; for `n >= 4`
/// the counts come from the first-order slice: `C_n(0) = n c_0` and
/// `C_n(±A) = n c_A / 2` for `A > 0`. Both are guaranteed integral;
/// a non-integer here is an implementation bug and fails loudly.
pub fn enumerate_areas(n: u64) -> Result<AreaDistribution> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if n % 2 != 0 {
        return Err(Error::OddLength(n));
    }
    if n == 2 {
        let mut counts = BTreeMap::new();
        counts.insert(0i64, BigInt::from(4));
        return Ok(AreaDistribution { n, counts });
    }
    let slice = first_order_q(n)?;
    let mut counts = BTreeMap::new();
    for (&a, coeff) in slice.coefficients() {
        let scaled = if a == 0 {
            coeff * BigRational::from(BigInt::from(n))
        } else {
            coeff * BigRational::new(BigInt::from(n), BigInt::from(2))
        };
        let count = rational_to_integer(&scaled)?;
        if count.is_negative() {
            return Err(Error::NotIntegral(format!(
                "negative count {count} at A = {a}"
            )));
        }
        if !count.is_zero() {
            counts.insert(a as i64, count.clone());
            if a > 0 {
                counts.insert(-(a as i64), count);
            }
        }
    }
    Ok(AreaDistribution { n, counts })
}

fn rational_to_integer(r: &BigRational) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NotIntegral(r.to_string()))
    }
}

/// `Z_n(Q) = Σ_A C_n(A) Q^A`.
pub fn generating_polynomial(n: u64) -> Result<LaurentPolynomial> {
    Ok(LaurentPolynomial::from(&enumerate_areas(n)?))
}

/// A dense polynomial in the formal deformation variable `t = (λ/2)^2`,
/// with exact integer coefficients.
type TPoly = Vec<BigInt>;

fn tpoly_mul(a: &TPoly, b: &TPoly) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (jx, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + jx] += ai * bj;
            }
        }
    }
    out
}

fn tpoly_add_into(acc: &mut TPoly, delta: &TPoly) {
    if acc.len() < delta.len() {
        acc.resize(delta.len(), BigInt::zero());
    }
    for (a, d) in acc.iter_mut().zip(delta) {
        *a += d;
    }
}

/// Deformed block factor: `binom(2l, x)` opened up as
/// `Σ_j binom(l, j) binom(l, x - j) t^j`.
fn deformed_binomial(l: i64, x: i64) -> TPoly {
    (0..=l)
        .map(|ji| binomial(l, ji) * binomial(l, x - ji))
        .collect()
}

/// Per-composition cosine expansion with every binomial deformed into its
/// `t`-polynomial; returns harmonic `A >= 0` mapped to a `t`-polynomial.
fn composition_term_deformed(c: &Composition) -> BTreeMap<u64, TPoly> {
    let mut l: Vec<i64> = c.parts().iter().map(|&p| p as i64).collect();
    if l.len() == 1 {
        l.push(0);
    }
    let j = l.len();
    let h: i64 = l.iter().sum();
    let bound = h * h / 4;

    let mut out: BTreeMap<u64, TPoly> = BTreeMap::new();
    let mut k = vec![0i64; j - 2];
    loop {
        let mut tail: TPoly = vec![BigInt::one()];
        let mut shift_a = 0i64;
        let mut shift_b = 0i64;
        for (idx, &ki) in k.iter().enumerate() {
            let i = idx as i64 + 3;
            let li = l[idx + 2];
            tail = tpoly_mul(&tail, &deformed_binomial(li, ki));
            shift_a += (i - 2) * (ki - li);
            shift_b += (i - 1) * (ki - li);
        }
        if tail.iter().any(|c| !c.is_zero()) {
            for a in -bound..=bound {
                let first = deformed_binomial(l[0], l[0] + a + shift_a);
                let second = deformed_binomial(l[1], l[1] - a - shift_b);
                let product = tpoly_mul(&tpoly_mul(&tail, &first), &second);
                if product.iter().any(|c| !c.is_zero()) {
                    tpoly_add_into(
                        out.entry(a.unsigned_abs()).or_default(),
                        &product,
                    );
                }
            }
        }
        let mut idx = 0;
        loop {
            if idx == k.len() {
                return out;
            }
            if k[idx] < 2 * l[idx + 2] {
                k[idx] += 1;
                break;
            }
            k[idx] = 0;
            idx += 1;
        }
    }
}

/// The full step-resolved table: entry `m` is the distribution
/// `C_{m,m,n/2-m,n/2-m}(A)` of closed walks with exactly `m` right and
/// `m` left steps. Summed over `m` it reproduces `enumerate_areas(n)`.
pub fn lambda_area_table(n: u64) -> Result<Vec<BTreeMap<i64, BigInt>>> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if n % 2 != 0 {
        return Err(Error::OddLength(n));
    }
    if n == 2 {
        // up-down / down-up, then right-left / left-right
        let two = || {
            let mut m = BTreeMap::new();
            m.insert(0i64, BigInt::from(2));
            m
        };
        return Ok(vec![two(), two()]);
    }
    let h = n / 2;
    let terms: Vec<Composition> = compositions(h).collect();
    // Σ_c coeff(c) * deformed term(c): harmonic -> polynomial in t with
    // rational coefficients.
    let combined: BTreeMap<u64, Vec<BigRational>> = terms
        .par_iter()
        .map(|c| {
            let coeff = c.coefficient();
            let term = composition_term_deformed(c);
            let mut scaled: BTreeMap<u64, Vec<BigRational>> = BTreeMap::new();
            for (a, poly) in term {
                scaled.insert(
                    a,
                    poly.iter()
                        .map(|p| BigRational::from(p.clone()) * &coeff)
                        .collect(),
                );
            }
            scaled
        })
        .reduce(BTreeMap::new, |mut acc, part| {
            for (a, poly) in part {
                let entry = acc.entry(a).or_default();
                if entry.len() < poly.len() {
                    entry.resize(poly.len(), BigRational::zero());
                }
                for (e, p) in entry.iter_mut().zip(&poly) {
                    *e += p;
                }
            }
            acc
        });

    let mut table = vec![BTreeMap::new(); (h + 1) as usize];
    for (a, poly) in combined {
        for (m, coeff) in poly.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let scaled = if a == 0 {
                coeff * BigRational::from(BigInt::from(n))
            } else {
                coeff * BigRational::new(BigInt::from(n), BigInt::from(2))
            };
            let count = rational_to_integer(&scaled)?;
            if count.is_zero() {
                continue;
            }
            table[m].insert(a as i64, count.clone());
            if a > 0 {
                table[m].insert(-(a as i64), count);
            }
        }
    }
    Ok(table)
}

/// `C_{m,m,n/2-m,n/2-m}(A)` for a single horizontal pair count `m`.
pub fn lambda_area_counts(n: u64, m: u64) -> Result<BTreeMap<i64, BigInt>> {
    let table = lambda_area_table(n)?;
    if m as usize >= table.len() {
        return Err(Error::StepCountOutOfRange { m, max: n / 2 });
    }
    Ok(table[m as usize].clone())
}
