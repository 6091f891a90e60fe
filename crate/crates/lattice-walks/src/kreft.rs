//! Kreft coefficients `a_{p,q}(2j)` of the Hofstadter secular equation
//! at rational flux `2πp/q`: the defining nested sum (valid for
//! `q >= 2j`), the printed closed forms for `j <= 4`, the extrapolation
//! onto `q < 2j`, and the coalesced power-series form that covers both
//! regimes.
//!
//! Floating point is used wherever the `4 sin^2` building block appears;
//! all combinatorial assembly (multinomials, the `a_{1,1}` partial
//! products) stays in exact arithmetic. Identities are checked to 1e-9
//! relative everywhere floats appear.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::area_enum::{enumerate_areas, first_order_q, CosinePolynomial};
use crate::combinatorics::{binomial, multinomial, Composition};
use crate::{Error, Result};

/// Coprime pair `(p, q)` representing magnetic flux `2πp/q` per cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalFlux {
    p: u64,
    q: u64,
}

impl RationalFlux {
    pub fn new(p: u64, q: u64) -> Result<RationalFlux> {
        if q == 0 {
            return Err(Error::ZeroDenominator);
        }
        if p.gcd(&q) != 1 {
            return Err(Error::FluxNotCoprime { p, q });
        }
        Ok(RationalFlux { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Flux angle `2πp/q`.
    pub fn angle(&self) -> f64 {
        2.0 * PI * self.p as f64 / self.q as f64
    }
}

impl std::fmt::Display for RationalFlux {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// The building block `b̃_{p/q}(k) = 4 sin^2(πkp/q)`; periodic in `k`
/// with period `q`, bounded by `[0, 4]`.
pub fn b_tilde(flux: RationalFlux, k: i64) -> f64 {
    let s = (PI * k as f64 * flux.p as f64 / flux.q as f64).sin();
    4.0 * s * s
}

/// Kreft coefficient by the defining `j`-fold nested sum with sign
/// `(-1)^(j+1)`; only defined in the `q >= 2j` regime.
pub fn kreft_direct(flux: RationalFlux, j: u64) -> Result<f64> {
    if flux.q < 2 * j {
        return Err(Error::DirectFormUndefined {
            q: flux.q,
            min_q: 2 * j,
        });
    }
    fn nest(flux: RationalFlux, j: u64, depth: u64, upper: i64, acc: f64) -> f64 {
        if depth == j {
            return acc;
        }
        let mut sum = 0.0;
        for k in 0..=upper {
            let arg = k + 2 * (j - depth - 1) as i64 + 1;
            sum += nest(flux, j, depth + 1, k, acc * b_tilde(flux, arg));
        }
        sum
    }
    let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
    Ok(sign * nest(flux, j, 0, flux.q as i64 - 2 * j as i64, 1.0))
}

/// `(1/q) Σ_{k=1..q} b̃^j(k)`; equals `binom(2j, j)` whenever `q > j`.
pub fn power_sum(j: u64, flux: RationalFlux) -> f64 {
    (1..=flux.q as i64)
        .map(|k| b_tilde(flux, k).powi(j as i32))
        .sum::<f64>()
        / flux.q as f64
}

/// Exact map from `(power of q, harmonic A)` to a rational coefficient,
/// representing a polynomial in `q` whose coefficients are cosine
/// polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QCosinePolynomial {
    terms: BTreeMap<(u32, u64), BigRational>,
}

impl QCosinePolynomial {
    pub fn terms(&self) -> &BTreeMap<(u32, u64), BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, q_power: u32, harmonic: u64) -> BigRational {
        self.terms
            .get(&(q_power, harmonic))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// The order-`q^1` slice as a plain cosine polynomial.
    pub fn first_order_slice(&self) -> CosinePolynomial {
        let mut out = CosinePolynomial::default();
        for (&(pow, a), c) in &self.terms {
            if pow == 1 {
                out.insert(a, c.clone());
            }
        }
        out
    }

    pub fn evaluate(&self, flux: RationalFlux) -> f64 {
        let base = flux.angle();
        self.terms
            .iter()
            .map(|(&(pow, a), c)| {
                let c = c.numer().to_f64().unwrap() / c.denom().to_f64().unwrap();
                (flux.q as f64).powi(pow as i32) * c * (a as f64 * base).cos()
            })
            .sum()
    }
}

/// The printed closed forms of `a_{p,q}(2j)` for `j <= 4`, hard-coded as
/// regression anchors.
pub fn kreft_closed_form(j: u64) -> Result<QCosinePolynomial> {
    let entries: &[(u32, u64, i64, i64)] = match j {
        1 => &[(1, 0, 2, 1)],
        2 => &[(1, 0, 7, 1), (1, 1, 2, 1), (2, 0, -2, 1)],
        3 => &[
            (1, 0, 116, 3),
            (1, 1, 24, 1),
            (1, 2, 4, 1),
            (2, 0, -14, 1),
            (2, 1, -4, 1),
            (3, 0, 4, 3),
        ],
        4 => &[
            (1, 0, 539, 2),
            (1, 1, 252, 1),
            (1, 2, 77, 1),
            (1, 3, 12, 1),
            (1, 4, 2, 1),
            (2, 0, -617, 6),
            (2, 1, -62, 1),
            (2, 2, -9, 1),
            (3, 0, 14, 1),
            (3, 1, 4, 1),
            (4, 0, -2, 3),
        ],
        _ => return Err(Error::NoClosedForm(j)),
    };
    let mut terms = BTreeMap::new();
    for &(pow, a, num, den) in entries {
        terms.insert(
            (pow, a),
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        );
    }
    Ok(QCosinePolynomial { terms })
}

/// Enumerates all vectors `(l_1..l_max)` of non-negative integers with
/// `Σ i * l_i = target`, invoking `f` on each.
fn for_each_weighted_vector<F: FnMut(&[u64])>(max: u64, target: u64, f: &mut F) {
    fn rec<F: FnMut(&[u64])>(prefix: &mut Vec<u64>, i: u64, max: u64, rem: u64, f: &mut F) {
        if i > max {
            if rem == 0 {
                f(prefix);
            }
            return;
        }
        for li in 0..=rem / i {
            prefix.push(li);
            rec(prefix, i + 1, max, rem - i * li, f);
            prefix.pop();
        }
    }
    let mut prefix = Vec::new();
    rec(&mut prefix, 1, max, target, f);
}

/// Flux-independent value `a_{1,1}(2j)`, in exact rationals:
/// `-Σ_{Σ i l_i = j} Π (1/l_i!) (-binom(2i,i)^2 / (2i))^{l_i}`.
/// Integral in practice (`2, 7, 50, ...`).
pub fn a11(j: u64) -> BigRational {
    let mut total = BigRational::zero();
    for_each_weighted_vector(j, j, &mut |ls| {
        let mut term = BigRational::one();
        for (idx, &li) in ls.iter().enumerate() {
            if li == 0 {
                continue;
            }
            let i = idx as i64 + 1;
            let square = binomial(2 * i, i).pow(2u32);
            let base = BigRational::new(-square, BigInt::from(2 * i));
            let mut factorial = BigInt::one();
            for f in 1..=li {
                factorial *= BigInt::from(f);
            }
            term *= base.pow(li as i32) / BigRational::from(factorial);
        }
        total += term;
    });
    -total
}

/// Extrapolated Kreft coefficient for the `q < 2j` regime: zero for
/// `j+1 <= q <= 2j-1`, and for `q <= j` the sum over `k >= 0` and
/// constrained vectors consuming the strict-regime coefficients
/// `a_{p,q}(2i)`, `i <= floor(q/2)`, together with `a_{1,1}`.
pub fn kreft_extrapolated(flux: RationalFlux, j: u64) -> Result<f64> {
    let q = flux.q;
    if q >= 2 * j {
        return Err(Error::ExtrapolationNotNeeded { q, j });
    }
    if q >= j + 1 {
        return Ok(0.0);
    }
    let half_q = q / 2;
    let lower: Vec<f64> = (1..=half_q)
        .map(|i| kreft_direct(flux, i))
        .collect::<Result<_>>()?;
    let mut total = 0.0;
    let mut k = 0u64;
    while j >= q * (k + 1) {
        let rem = j - q * (k + 1);
        let a11k = rational_to_f64(&a11(k + 1));
        for_each_weighted_vector(half_q, rem, &mut |ls| {
            let mut parts: Vec<u64> = ls.to_vec();
            parts.push(2 * k);
            let weight = multinomial(&parts).to_f64().unwrap();
            let mut product = 1.0;
            for (idx, &li) in ls.iter().enumerate() {
                product *= lower[idx].powi(li as i32);
            }
            total += a11k * weight * product;
        });
        k += 1;
    }
    Ok(total)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

/// The Kreft coefficient in whichever regime applies: the nested sum for
/// `q >= 2j`, the extrapolation otherwise.
pub fn kreft_any(flux: RationalFlux, j: u64) -> Result<f64> {
    if flux.q >= 2 * j {
        kreft_direct(flux, j)
    } else {
        kreft_extrapolated(flux, j)
    }
}

/// Coalesced series form: builds the Kreft polynomial
/// `b_{p,q}(z) = -Σ a_{p,q}(2i) z^{2i}` (constant term 1) and evaluates
/// `a_{p,q}(2j) = Σ_k a_{1,1}(2k) [z^(2j-2qk)] b(z)^(1-2k)` by truncated
/// series inversion. Agrees with the direct / extrapolated value on both
/// regimes.
pub fn kreft_series(flux: RationalFlux, j: u64) -> Result<f64> {
    let q = flux.q;
    let order = (2 * j + 1) as usize;
    // b(z) to the truncation order; only even powers appear
    let mut b = vec![0.0f64; order];
    b[0] = 1.0;
    for i in 1..=q / 2 {
        if (2 * i as usize) < order {
            b[2 * i as usize] = -kreft_direct(flux, i)?;
        }
    }
    let inv = series_inverse(&b);
    let mut total = 0.0;
    let mut k = 0u64;
    while j >= q * k {
        let a11k = if k == 0 {
            -1.0
        } else {
            rational_to_f64(&a11(k))
        };
        let power = if k == 0 {
            b.clone()
        } else {
            series_power(&inv, 2 * k - 1)
        };
        let idx = (2 * j - 2 * q * k) as usize;
        total += a11k * power[idx];
        k += 1;
    }
    Ok(total)
}

/// Truncated reciprocal of a power series with constant term 1.
fn series_inverse(b: &[f64]) -> Vec<f64> {
    let mut inv = vec![0.0; b.len()];
    inv[0] = 1.0;
    for m in 1..b.len() {
        let mut acc = 0.0;
        for i in 1..=m {
            acc += b[i] * inv[m - i];
        }
        inv[m] = -acc;
    }
    inv
}

fn series_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len()];
    for i in 0..a.len() {
        if a[i] == 0.0 {
            continue;
        }
        for jx in 0..a.len() - i {
            out[i + jx] += a[i] * b[jx];
        }
    }
    out
}

fn series_power(base: &[f64], exp: u64) -> Vec<f64> {
    let mut out = vec![0.0; base.len()];
    out[0] = 1.0;
    for _ in 0..exp {
        out = series_mul(&out, base);
    }
    out
}

/// Numeric `(1/q) Σ_k Π_i b̃^{l_i}(k - (i-1)r)` paired with the stride-1
/// cosine expansion of the same product, harmonics dilated `A -> rA`.
/// The two values agree for `q` in the strict regime.
pub fn shifted_product_sum(
    flux: RationalFlux,
    exponents: &Composition,
    stride: u64,
) -> (f64, f64) {
    let q = flux.q as i64;
    let direct = (1..=q)
        .map(|k| {
            exponents
                .parts()
                .iter()
                .enumerate()
                .map(|(i, &l)| b_tilde(flux, k - (i as i64) * stride as i64).powi(l as i32))
                .product::<f64>()
        })
        .sum::<f64>()
        / q as f64;
    let expansion =
        crate::area_enum::composition_term(exponents).evaluate_stride(flux, stride);
    (direct, expansion)
}

/// Both sides of the order-`q` link: `(1/n) Σ_A C_n(A) e^{2iπAp/q}`
/// against the first-order slice evaluated at the same flux.
pub fn first_order_link(n: u64, flux: RationalFlux) -> Result<(f64, f64)> {
    let distribution = enumerate_areas(n)?;
    let lhs = distribution.evaluate_at_flux(flux).re / n as f64;
    let rhs = first_order_q(n)?.evaluate(flux);
    Ok((lhs, rhs))
}

/// Reconstructs the full `a_{p,q}(n)` from the first-order slices
/// `[q] a_{p,q}(2j)` via the exponential-formula sum over
/// `{k_j >= 0, Σ j k_j = n/2}`.
pub fn q_expansion_reconstruct(n: u64, flux: RationalFlux) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if n % 2 != 0 {
        return Err(Error::OddLength(n));
    }
    let half = n / 2;
    let slices: Vec<f64> = (1..=half)
        .map(|j| Ok(first_order_q(2 * j)?.evaluate(flux)))
        .collect::<Result<_>>()?;
    let mut total = 0.0;
    for_each_weighted_vector(half, half, &mut |ks| {
        let mut term = 1.0;
        for (idx, &kj) in ks.iter().enumerate() {
            if kj == 0 {
                continue;
            }
            let sign = if kj % 2 == 0 { 1.0 } else { -1.0 };
            let mut factorial = 1.0;
            for f in 1..=kj {
                factorial *= f as f64;
            }
            term *= sign / factorial * (flux.q as f64 * slices[idx]).powi(kj as i32);
        }
        total += term;
    });
    Ok(-total)
}
