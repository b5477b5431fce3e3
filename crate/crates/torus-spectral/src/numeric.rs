//! Exact numeric utilities shared across modules: integer root and logarithm
//! enclosures, small-integer factorization, and least-squares fitting for the
//! heuristic classifiers.

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact integer power of a rational, with negative exponents allowed.
pub fn rational_pow(r: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let p = r.pow(e.unsigned_abs() as i32);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// A rational `u` with `u^2 >= r` and `u` within relative `2^-bits` of
/// `sqrt(r)`. Requires `r >= 0`.
pub fn sqrt_upper_bound(r: &BigRational, bits: u32) -> BigRational {
    assert!(!r.is_negative(), "sqrt of negative rational");
    if r.is_zero() {
        return BigRational::zero();
    }
    // sqrt(a/b) = sqrt(a*b)/b; floor-root of the scaled integer plus one
    // rounds up.
    let t = r.numer() * r.denom();
    let scale = BigInt::one() << bits;
    let root = (&t * &scale * &scale).sqrt() + 1u32;
    BigRational::new(root, r.denom() * scale)
}

/// Enclosure `lo <= r^(1/n) <= hi` for `r > 0`, width shrinking with `bits`.
pub fn nth_root_enclosure(r: &BigRational, n: u32, bits: u32) -> (BigRational, BigRational) {
    assert!(n >= 1);
    assert!(r.is_positive(), "nth root of non-positive rational");
    let scale = BigInt::one() << bits;
    let scale_n = num::pow::pow(scale.clone(), n as usize);
    let a_root = (r.numer() * &scale_n).nth_root(n);
    let b_root = (r.denom() * &scale_n).nth_root(n);
    let lo = BigRational::new(a_root.clone(), &b_root + 1u32);
    let hi = BigRational::new(&a_root + 1u32, b_root);
    (lo, hi)
}

/// Enclosure of `r^(p/q)` for `r > 0` and reduced rational exponent.
pub fn rational_pow_enclosure(
    r: &BigRational,
    num: i64,
    den: u64,
    bits: u32,
) -> (BigRational, BigRational) {
    debug_assert!(den >= 1);
    let base = rational_pow(r, num);
    if den == 1 {
        return (base.clone(), base);
    }
    nth_root_enclosure(&base, den as u32, bits)
}

/// Enclosure `lo <= ln(x) <= hi` for `x > 0`, width at most `2^-prec_bits`.
pub fn ln_enclosure(x: &BigRational, prec_bits: u32) -> (BigRational, BigRational) {
    assert!(x.is_positive(), "ln of non-positive rational");
    // Reduce to m in [1, 2): x = 2^t * m, then ln x = t ln 2 + ln m.
    let mut t: i64 = 0;
    let mut m = x.clone();
    let two = BigRational::from_integer(2.into());
    let one = BigRational::one();
    while m >= two {
        m /= &two;
        t += 1;
    }
    while m < one {
        m *= &two;
        t -= 1;
    }
    let budget = prec_bits + 2;
    let (m_lo, m_hi) = ln_series(&m, budget);
    if t == 0 {
        return (m_lo, m_hi);
    }
    let (l2_lo, l2_hi) = ln_series(&two, budget + 8);
    let tr = BigRational::from_integer(t.into());
    if t > 0 {
        (&tr * l2_lo + m_lo, &tr * l2_hi + m_hi)
    } else {
        (&tr * l2_hi + m_lo, &tr * l2_lo + m_hi)
    }
}

/// atanh series for `ln m`, `m` in `[1, 2]`: `2 sum z^(2i+1)/(2i+1)` with
/// `z = (m-1)/(m+1)` and an explicit geometric tail bound.
fn ln_series(m: &BigRational, prec_bits: u32) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let z = (m - &one) / (m + &one);
    if z.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let z2 = &z * &z;
    let eps = BigRational::new(BigInt::one(), BigInt::one() << prec_bits);
    let mut term = z.clone();
    let mut sum = BigRational::zero();
    let mut i: u64 = 0;
    loop {
        sum += &term / BigRational::from_integer((2 * i + 1).into());
        term *= &z2;
        i += 1;
        // tail <= term/(2i+1) * 1/(1-z^2)
        let tail = (&term / BigRational::from_integer((2 * i + 1).into())) / (&one - &z2);
        if tail < eps {
            let lo = &sum * BigRational::from_integer(2.into());
            let hi = (&sum + &tail) * BigRational::from_integer(2.into());
            return (lo, hi);
        }
    }
}

/// Trial-division factorization of `n >= 1` into `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e = 0;
    while n % 2 == 0 {
        n /= 2;
        e += 1;
    }
    push(2, e);
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        push(p, e);
        p += 2;
    }
    if n > 1 {
        push(n, 1);
    }
    out
}

/// Prime factorization of `n!` by Legendre's formula.
pub fn factorial_factorization(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in primes_up_to(n) {
        let mut e: u64 = 0;
        let mut q = p;
        while q <= n {
            e += n / q;
            q = match q.checked_mul(p) {
                Some(q) => q,
                None => break,
            };
        }
        out.push((p, e as u32));
    }
    out
}

/// Primes `<= n` by a simple sieve.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// Least-squares line fit with a scale-free residual measure.
#[derive(Debug, Clone, Copy)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// `sqrt(SSR / SST)`: residual norm relative to the spread of `y`.
    pub rel_residual: f64,
    pub points: usize,
}

/// Fit `y = intercept + slope * x`. Returns `None` when fewer than two
/// distinct abscissae are available.
pub fn fit_line(points: &[(f64, f64)]) -> Option<LineFit> {
    let n = points.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx < 1e-12 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let sst: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    let rel_residual = if ssr < 1e-18 {
        0.0
    } else {
        (ssr / sst.max(1e-12)).sqrt()
    };
    Some(LineFit {
        slope,
        intercept,
        rel_residual,
        points: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use num::ToPrimitive;

    #[test]
    fn sqrt_bound_is_upper_and_tight() {
        let r = ratio(2, 1);
        let u = sqrt_upper_bound(&r, 30);
        assert!(&u * &u >= r);
        assert!((u.to_f64().unwrap() - 2f64.sqrt()).abs() < 1e-8);
        assert_eq!(sqrt_upper_bound(&rat(0), 30), rat(0));
    }

    #[test]
    fn nth_root_encloses() {
        let r = ratio(5, 3);
        let (lo, hi) = nth_root_enclosure(&r, 3, 40);
        let v = (5f64 / 3.0).powf(1.0 / 3.0);
        assert!(lo.to_f64().unwrap() <= v && v <= hi.to_f64().unwrap());
        assert!(&hi - &lo < ratio(1, 1 << 30));
    }

    #[test]
    fn ln_encloses_known_values() {
        for (x, v) in [(ratio(2, 1), std::f64::consts::LN_2), (ratio(10, 1), 10f64.ln()), (ratio(1, 3), -(3f64.ln()))] {
            let (lo, hi) = ln_enclosure(&x, 60);
            assert!(lo.to_f64().unwrap() <= v + 1e-12, "{x}");
            assert!(v - 1e-12 <= hi.to_f64().unwrap(), "{x}");
            assert!(&hi - &lo <= ratio(1, 1 << 50));
        }
        let (lo, hi) = ln_enclosure(&rat(1), 60);
        assert!(lo.is_zero() && hi.is_zero());
    }

    #[test]
    fn factorization_basics() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(8193), vec![(3, 1), (2731, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        // 10! = 2^8 3^4 5^2 7
        assert_eq!(
            factorial_factorization(10),
            vec![(2, 8), (3, 4), (5, 2), (7, 1)]
        );
    }

    #[test]
    fn line_fit_exact_and_noisy() {
        let pts: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, 3.0 + 2.0 * i as f64)).collect();
        let f = fit_line(&pts).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!(f.rel_residual < 1e-9);
        assert!(fit_line(&pts[..1]).is_none());
    }
}
