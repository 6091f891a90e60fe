//! Exact integer and rational primitives: binomial coefficients,
//! integer compositions, and the per-composition rational coefficient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Binomial coefficient `C(n, k)` as an arbitrary-precision integer.
///
/// Zero-extended: returns 0 when `k < 0`, `k > n`, or `n < 0`. This
/// convention is what keeps the formally infinite binomial multi-sums
/// finite; generalized (negative-argument) binomials are never needed.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut result = BigInt::one();
    for i in 0..k {
        result = result * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    result
}

/// Multinomial coefficient `(Σ parts)! / Π parts_i!`, as a product of
/// binomials.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let mut total: i64 = 0;
    let mut result = BigInt::one();
    for &p in parts {
        total += p as i64;
        result *= binomial(total, p as i64);
    }
    result
}

/// An ordered tuple of positive parts summing to `n/2`; the first part is
/// always at least 1 and trailing zeros are stripped, so every stored part
/// is positive. For a fixed half-length `h` there are exactly `2^(h-1)`
/// compositions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    /// Builds a composition from its parts, validating that every part is
    /// positive and the tuple is non-empty.
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidComposition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of blocks `j`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The half-length `h = n/2` this composition sums to.
    pub fn half_length(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn reversed(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }

    pub fn is_palindromic(&self) -> bool {
        self.parts.iter().eq(self.parts.iter().rev())
    }

    pub fn classify(&self) -> CompositionClass {
        if self.is_palindromic() {
            CompositionClass::Palindromic
        } else {
            CompositionClass::MirrorPair
        }
    }

    /// The rational coefficient `c(l_1, ..., l_j)` attached to this
    /// composition in the first-order reduction:
    ///
    /// ```text
    /// c = binom(l1+l2, l1)/(l1+l2) * l2 * binom(l2+l3, l2)/(l2+l3) * ...
    ///       ... * l_{j-1} * binom(l_{j-1}+l_j, l_{j-1})/(l_{j-1}+l_j)
    /// ```
    ///
    /// A single-part composition `(l)` yields `1/l` (its padded blocks all
    /// collapse to 1). The coefficient is mirror symmetric:
    /// `c(l_1..l_j) = c(l_j..l_1)`.
    pub fn coefficient(&self) -> BigRational {
        let l = &self.parts;
        let j = l.len();
        if j == 1 {
            return BigRational::new(BigInt::one(), BigInt::from(l[0]));
        }
        let block = |a: u64, b: u64| {
            BigRational::new(binomial((a + b) as i64, a as i64), BigInt::from(a + b))
        };
        let mut c = block(l[0], l[1]);
        for i in 1..j - 1 {
            c *= BigRational::from(BigInt::from(l[i])) * block(l[i], l[i + 1]);
        }
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionClass {
    Palindromic,
    MirrorPair,
}

/// Iterates the `2^(h-1)` compositions of `h` in lexicographic order of
/// the `(h-1)`-bit cut-set encoding, smallest mask first: mask bit `b`
/// set means a cut after position `h-1-b`, so `h=3` yields
/// `(3), (2,1), (1,2), (1,1,1)`.
#[derive(Debug, Clone)]
pub struct Compositions {
    h: u64,
    mask: u64,
    end: u64,
}

/// All compositions of `h`, as a deterministic value-type iterator.
/// `h = 0` gives the empty stream.
pub fn compositions(h: u64) -> Compositions {
    assert!(h < 64, "composition half-length too large");
    let end = if h == 0 { 0 } else { 1u64 << (h - 1) };
    Compositions { h, mask: 0, end }
}

impl Compositions {
    fn decode(&self, mask: u64) -> Composition {
        let h = self.h;
        let mut parts = Vec::new();
        let mut run = 0u64;
        for pos in 1..=h {
            run += 1;
            // cut after position `pos` iff bit h-1-pos is set (pos < h)
            let cut = pos < h && (mask >> (h - 1 - pos)) & 1 == 1;
            if cut || pos == h {
                parts.push(run);
                run = 0;
            }
        }
        Composition { parts }
    }

    /// Splits off the sub-range `[start, end)` of the stream by index,
    /// for parallel consumption.
    pub fn slice(&self, start: u64, end: u64) -> Compositions {
        Compositions {
            h: self.h,
            mask: start.min(self.end),
            end: end.min(self.end),
        }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.mask >= self.end {
            return None;
        }
        let c = self.decode(self.mask);
        self.mask += 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.mask) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Compositions {}

/// Sum of `coefficient()` over all compositions of `h`; equals
/// `binom(2h, h) / (2h)`.
pub fn coefficient_sum(h: u64) -> BigRational {
    compositions(h).map(|c| c.coefficient()).sum()
}

/// Number of palindromic compositions of `h`: `2^floor(h/2)`.
pub fn palindromic_count(h: u64) -> u64 {
    1u64 << (h / 2)
}

/// Number of mirror-free composition classes of `h`:
/// `(2^(h-1) + 2^floor(h/2)) / 2`.
pub fn mirror_free_class_count(h: u64) -> u64 {
    ((1u64 << (h - 1)) + palindromic_count(h)) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[u64]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(-2, 1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn composition_order() {
        let h2: Vec<_> = compositions(2).map(|c| c.parts().to_vec()).collect();
        assert_eq!(h2, vec![vec![2], vec![1, 1]]);

        let h3: Vec<_> = compositions(3).map(|c| c.parts().to_vec()).collect();
        assert_eq!(h3, vec![vec![3], vec![2, 1], vec![1, 2], vec![1, 1, 1]]);

        let h4: Vec<_> = compositions(4).map(|c| c.parts().to_vec()).collect();
        assert_eq!(h4.len(), 8);
        assert!(h4.contains(&vec![1, 2, 1]));
        assert!(h4.contains(&vec![2, 2]));
    }

    #[test]
    fn composition_stream_empty_for_zero() {
        assert_eq!(compositions(0).count(), 0);
    }

    #[test]
    fn composition_counts() {
        for h in 1..=16 {
            assert_eq!(compositions(h).count() as u64, 1 << (h - 1));
        }
    }

    #[test]
    fn coefficients_printed_values() {
        assert_eq!(comp(&[2]).coefficient(), ratio(1, 2));
        assert_eq!(comp(&[1, 1]).coefficient(), ratio(1, 1));

        assert_eq!(comp(&[3]).coefficient(), ratio(1, 3));
        assert_eq!(comp(&[2, 1]).coefficient(), ratio(1, 1));
        assert_eq!(comp(&[1, 2]).coefficient(), ratio(1, 1));
        assert_eq!(comp(&[1, 1, 1]).coefficient(), ratio(1, 1));

        assert_eq!(comp(&[2, 2]).coefficient(), ratio(3, 2));
        assert_eq!(comp(&[1, 2, 1]).coefficient(), ratio(2, 1));
        assert_eq!(comp(&[4]).coefficient(), ratio(1, 4));
    }

    #[test]
    fn coefficient_sums() {
        assert_eq!(coefficient_sum(2), ratio(3, 2));
        assert_eq!(coefficient_sum(3), ratio(10, 3));
        assert_eq!(coefficient_sum(4), ratio(35, 4));
        for h in 1..=16i64 {
            let expected =
                BigRational::new(binomial(2 * h, h), BigInt::from(2 * h));
            assert_eq!(coefficient_sum(h as u64), expected, "h = {h}");
        }
    }

    #[test]
    fn mirror_symmetry() {
        for h in 1..=10 {
            for c in compositions(h) {
                assert_eq!(c.coefficient(), c.reversed().coefficient(), "{c:?}");
            }
        }
    }

    #[test]
    fn classification() {
        assert_eq!(comp(&[1, 2, 1]).classify(), CompositionClass::Palindromic);
        assert_eq!(comp(&[2, 1, 1]).classify(), CompositionClass::MirrorPair);
        assert_eq!(comp(&[2, 1, 1]).reversed(), comp(&[1, 1, 2]));

        assert_eq!(palindromic_count(4), 4);
        assert_eq!(mirror_free_class_count(4), 6);
        for h in 1..=12 {
            let palin = compositions(h).filter(|c| c.is_palindromic()).count() as u64;
            assert_eq!(palin, palindromic_count(h), "h = {h}");
        }
    }

    #[test]
    fn empty_composition_rejected() {
        assert!(matches!(
            Composition::new(vec![]),
            Err(Error::EmptyComposition)
        ));
        assert!(Composition::new(vec![1, 0, 1]).is_err());
    }

    #[test]
    fn slice_covers_stream() {
        let all: Vec<_> = compositions(5).collect();
        let left: Vec<_> = compositions(5).slice(0, 7).collect();
        let right: Vec<_> = compositions(5).slice(7, 16).collect();
        let glued: Vec<_> = left.into_iter().chain(right).collect();
        assert_eq!(all, glued);
    }
}
