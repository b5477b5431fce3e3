//! Exact arithmetic for logarithms of envelope values.
//!
//! Every envelope evaluation at a lattice point has the form
//! `q0 + sum_p q_p ln p` with rational `q`s and primes `p`: the
//! polynomial factor contributes the logarithm of an integer, the
//! factorial factors contribute prime logarithms through Legendre's
//! formula, and the exponential factor contributes a plain rational.
//! Such a combination is zero only when every coefficient is zero
//! (unique factorization handles the logs; a nonzero rational in the
//! exponent would make `e^{q0}` algebraic otherwise), so comparisons
//! can always be decided: identical coefficient vectors are equal, and
//! anything else is separated from zero by refining the `ln p`
//! enclosures far enough.

use crate::numeric::{factorial_factorization, factorize, ln_enclosure};
use num::{BigRational, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub};

/// A number `lin + sum_p primes[p] * ln(p)`, kept exact.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LogValue {
    lin: BigRational,
    primes: BTreeMap<u64, BigRational>,
}

impl LogValue {
    pub fn zero() -> Self {
        LogValue::default()
    }

    pub fn rational(lin: BigRational) -> Self {
        LogValue {
            lin,
            primes: BTreeMap::new(),
        }
    }

    /// `coeff * ln(n)` for a positive integer `n`.
    pub fn ln_integer(n: u64, coeff: &BigRational) -> Self {
        assert!(n > 0, "logarithm of a nonpositive integer");
        let mut v = LogValue::zero();
        if coeff.is_zero() || n == 1 {
            return v;
        }
        for (p, e) in factorize(n) {
            v.bump(p, coeff * BigRational::from_integer(e.into()));
        }
        v
    }

    /// `coeff * ln(n!)`.
    pub fn ln_factorial(n: u64, coeff: &BigRational) -> Self {
        let mut v = LogValue::zero();
        if coeff.is_zero() {
            return v;
        }
        for (p, e) in factorial_factorization(n) {
            v.bump(p, coeff * BigRational::from_integer(e.into()));
        }
        v
    }

    /// `coeff * ln(q)` for a positive rational `q`, when its parts fit
    /// in machine words.
    pub fn ln_rational(q: &BigRational, coeff: &BigRational) -> Option<Self> {
        if !q.is_positive() {
            return None;
        }
        let n = u64::try_from(q.numer()).ok()?;
        let d = u64::try_from(q.denom()).ok()?;
        Some(LogValue::ln_integer(n, coeff) + LogValue::ln_integer(d, &-coeff))
    }

    fn bump(&mut self, p: u64, delta: BigRational) {
        let slot = self.primes.entry(p).or_insert_with(BigRational::zero);
        *slot += delta;
        if slot.is_zero() {
            self.primes.remove(&p);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LogValue::zero();
        }
        LogValue {
            lin: &self.lin * c,
            primes: self.primes.iter().map(|(p, q)| (*p, q * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lin.is_zero() && self.primes.is_empty()
    }

    /// Sign of the represented real number, decided exactly.
    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if self.primes.is_empty() {
            return self.lin.cmp(&BigRational::zero());
        }
        // Fast path: float evaluation with a conservative rounding
        // budget. Each conversion and product is within a few ulp, so a
        // sum that clears `O(terms * eps)` times the accumulated
        // magnitude has a certain sign.
        let to_f = crate::rational::rational_to_f64;
        let mut sum = to_f(&self.lin);
        let mut mag = sum.abs();
        for (&p, c) in &self.primes {
            let term = to_f(c) * (p as f64).ln();
            sum += term;
            mag += term.abs();
        }
        let budget = mag * (self.primes.len() + 5) as f64 * 8.0 * f64::EPSILON;
        if sum.is_finite() && mag.is_finite() && sum.abs() > budget {
            return if sum > 0.0 {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        // Nonzero by the coefficient criterion, so some precision wins.
        let mut bits = 32;
        loop {
            let mut lo = self.lin.clone();
            let mut hi = self.lin.clone();
            for (&p, c) in &self.primes {
                let (l, h) = ln_enclosure(&BigRational::from_integer(p.into()), bits);
                if c.is_positive() {
                    lo += c * &l;
                    hi += c * &h;
                } else {
                    lo += c * &h;
                    hi += c * &l;
                }
            }
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    /// Float value together with the accumulated magnitude of the terms,
    /// for rounding-error budgets.
    fn approx_with_mag(&self) -> (f64, f64) {
        let to_f = crate::rational::rational_to_f64;
        let mut sum = to_f(&self.lin);
        let mut mag = sum.abs();
        for (&p, c) in &self.primes {
            let term = to_f(c) * (p as f64).ln();
            sum += term;
            mag += term.abs();
        }
        (sum, mag)
    }

    pub fn cmp_value(&self, other: &LogValue) -> Ordering {
        // Well-separated values are decided in floats without building
        // the exact difference.
        let (a, mag_a) = self.approx_with_mag();
        let (b, mag_b) = other.approx_with_mag();
        let terms = self.primes.len() + other.primes.len() + 10;
        let budget = (mag_a + mag_b) * terms as f64 * 8.0 * f64::EPSILON;
        if a.is_finite() && b.is_finite() && mag_a.is_finite() && mag_b.is_finite() {
            if a - b > budget {
                return Ordering::Greater;
            }
            if b - a > budget {
                return Ordering::Less;
            }
        }
        (self - other).sign()
    }

    /// Float approximation, for diagnostics and plotting only.
    pub fn to_f64(&self) -> f64 {
        let mut acc = crate::rational::rational_to_f64(&self.lin);
        for (&p, c) in &self.primes {
            acc += crate::rational::rational_to_f64(c) * (p as f64).ln();
        }
        acc
    }
}

impl Add for LogValue {
    type Output = LogValue;
    fn add(mut self, rhs: LogValue) -> LogValue {
        self.lin += rhs.lin;
        for (p, q) in rhs.primes {
            self.bump(p, q);
        }
        self
    }
}

impl AddAssign for LogValue {
    fn add_assign(&mut self, rhs: LogValue) {
        self.lin += rhs.lin;
        for (p, q) in rhs.primes {
            self.bump(p, q);
        }
    }
}

impl Neg for &LogValue {
    type Output = LogValue;
    fn neg(self) -> LogValue {
        LogValue {
            lin: -self.lin.clone(),
            primes: self.primes.iter().map(|(p, q)| (*p, -q)).collect(),
        }
    }
}

impl Sub for &LogValue {
    type Output = LogValue;
    fn sub(self, rhs: &LogValue) -> LogValue {
        self.clone() + (-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn factorization_identities_cancel_exactly() {
        // ln 12 = 2 ln 2 + ln 3.
        let a = LogValue::ln_integer(12, &rat(1, 1));
        let b = LogValue::ln_integer(2, &rat(2, 1)) + LogValue::ln_integer(3, &rat(1, 1));
        assert_eq!((&a - &b).sign(), Ordering::Equal);
        // ln 6! = ln 720.
        let a = LogValue::ln_factorial(6, &rat(1, 1));
        let b = LogValue::ln_integer(720, &rat(1, 1));
        assert!((&a - &b).is_zero());
    }

    #[test]
    fn close_values_are_separated() {
        // 7/5 vs ln 4: 1.4 vs 1.3862...: needs genuine precision.
        let a = LogValue::rational(rat(7, 5));
        let b = LogValue::ln_integer(4, &rat(1, 1));
        assert_eq!(a.cmp_value(&b), Ordering::Greater);
        // ln 2 + ln 3 vs ln 6 + 1/10^6.
        let a = LogValue::ln_integer(2, &rat(1, 1)) + LogValue::ln_integer(3, &rat(1, 1));
        let b = LogValue::ln_integer(6, &rat(1, 1)) + LogValue::rational(rat(1, 1_000_000));
        assert_eq!(a.cmp_value(&b), Ordering::Less);
    }

    #[test]
    fn rational_logs_split_into_integer_parts() {
        let v = LogValue::ln_rational(&rat(8, 3), &rat(1, 2)).unwrap();
        let w = LogValue::ln_integer(8, &rat(1, 2)) + LogValue::ln_integer(3, &rat(-1, 2));
        assert!((&v - &w).is_zero());
        assert!(LogValue::ln_rational(&rat(-2, 3), &rat(1, 1)).is_none());
    }

    #[test]
    fn float_view_tracks_the_exact_value() {
        let v = LogValue::ln_integer(10, &rat(3, 2)) + LogValue::rational(rat(-2, 1));
        assert!((v.to_f64() - (1.5 * 10f64.ln() - 2.0)).abs() < 1e-12);
    }
}
