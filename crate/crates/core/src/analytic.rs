//! Exact decisions for bounds involving square roots and natural logs.
//!
//! `ln d` is bracketed by rational intervals from the series
//! atanh(z) = Σ z^{2j+1}/(2j+1), refined until a comparison is decided.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use crate::Rational;

fn rat(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Bounds on atanh(z) for 0 ≤ z < 1 from the first `terms` series terms.
fn atanh_bounds(z: &Rational, terms: usize) -> (Rational, Rational) {
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = Rational::zero();
    for j in 0..terms {
        sum += &power / rat(2 * j as u64 + 1);
        power *= &z2;
    }
    let tail = power / (rat(2 * terms as u64 + 1) * (Rational::one() - z2));
    let hi = &sum + tail;
    (sum, hi)
}

/// Rational `lo ≤ ln d ≤ hi` using `terms` series terms per atanh.
pub fn ln_interval(d: u64, terms: usize) -> (Rational, Rational) {
    assert!(d >= 1, "ln of zero");
    if d == 1 {
        return (Rational::zero(), Rational::zero());
    }
    let a = 63 - d.leading_zeros() as u64;
    // d = 2^a · r with 1 ≤ r < 2, and ln r = 2 atanh((r − 1)/(r + 1))
    let r = Rational::new(BigInt::from(d), BigInt::from(1u8) << a);
    let z = (&r - Rational::one()) / (&r + Rational::one());
    let (r_lo, r_hi) = atanh_bounds(&z, terms);
    let (t_lo, t_hi) = atanh_bounds(&Rational::new(BigInt::from(1), BigInt::from(3)), terms);
    let two = rat(2);
    let two_a = rat(2 * a);
    (&two_a * t_lo + &two * r_lo, two_a * t_hi + two * r_hi)
}

/// Decides `x ≤ ln d` exactly (ln d is irrational for d ≥ 2).
pub fn at_most_ln(x: &Rational, d: u64) -> bool {
    at_most_ln_power(x, d, 1)
}

/// Decides `x ≤ (ln d)^p` exactly for p ∈ {1, 2}.
fn at_most_ln_power(x: &Rational, d: u64, p: u32) -> bool {
    if d == 1 {
        return *x <= Rational::zero();
    }
    if *x <= Rational::zero() {
        return true;
    }
    let mut terms = 8;
    loop {
        let (lo, hi) = ln_interval(d, terms);
        let (lo, hi) = if p == 2 { (&lo * &lo, &hi * &hi) } else { (lo, hi) };
        if *x <= lo {
            return true;
        }
        if *x > hi {
            return false;
        }
        assert!(terms < 1 << 16, "ln interval failed to separate");
        terms *= 2;
    }
}

/// Whether `c ≤ s·d/k + 3s·√(d·ln d / k)`.
pub fn lemma_holds(c: u64, s: u64, d: u64, k: u64) -> bool {
    assert!(k >= 1);
    if d == 0 {
        return c == 0;
    }
    let (c, s, d_, k) = (BigInt::from(c), BigInt::from(s), BigInt::from(d), BigInt::from(k));
    let gap = &c * &k - &s * &d_;
    if gap <= BigInt::zero() {
        return true;
    }
    if s.is_zero() {
        return false;
    }
    // (ck − sd)² ≤ 9 s² d k ln d
    let lhs = Rational::new(&gap * &gap, BigInt::from(9) * &s * &s * &d_ * &k);
    at_most_ln(&lhs, d)
}

/// Largest integer `c` with [`lemma_holds`]`(c, s, d, k)`.
pub fn lemma_threshold(s: u64, d: u64, k: u64) -> u64 {
    let mut lo = s * d / k;
    // ln d < d, so the square-root term is below 3s·d/√k + 1
    let mut hi = s * d / k + 3 * s * (isqrt(d * d / k) + 1) + 1;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if lemma_holds(mid, s, d, k) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Whether `count ≤ d + c·d^{3/4}·(ln d)^{1/2}`.
pub fn budget_holds(count: u64, d: u64, c: u64) -> bool {
    if count <= d {
        return true;
    }
    if c == 0 || d <= 1 {
        return false;
    }
    // (count − d)^4 ≤ c^4 d^3 (ln d)^2
    let excess = BigInt::from(count - d);
    let lhs = Rational::new(excess.pow(4u32), BigInt::from(c).pow(4u32) * BigInt::from(d).pow(3u32));
    at_most_ln_power(&lhs, d, 2)
}

/// ⌊d + c·d^{3/4}·(ln d)^{1/2}⌋.
pub fn budget_floor(d: u64, c: u64) -> u64 {
    let (mut lo, mut hi) = (d, d + c * d + 1);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if budget_holds(mid, d, c) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

pub fn isqrt(x: u64) -> u64 {
    if x < 2 {
        return x;
    }
    // Newton's method from above
    let mut r = x;
    let mut next = (r + x / r) / 2;
    while next < r {
        r = next;
        next = (r + x / r) / 2;
    }
    r
}

pub fn ceil_sqrt(x: u64) -> u64 {
    let r = isqrt(x);
    if r * r == x { r } else { r + 1 }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Smallest prime in [⌈5√d⌉, ⌊10√d⌋].
pub fn prime_in_window(d: u64) -> Option<u64> {
    (ceil_sqrt(25 * d)..=isqrt(100 * d)).find(|&p| is_prime(p))
}

/// Whether k > d^{9/10}, i.e. k^10 > d^9.
pub fn exceeds_nine_tenths(k: u64, d: u64) -> bool {
    BigUint::from(k).pow(10u32) > BigUint::from(d).pow(9u32)
}
