//! Exact univariate polynomial arithmetic over the rationals.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// A dense univariate polynomial with rational coefficients, lowest degree
/// first. The leading coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnivariatePoly {
    coeffs: Vec<BigRational>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UnivariatePoly::new(vec![BigRational::one()])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        UnivariatePoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UnivariatePoly {
        UnivariatePoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn neg(&self) -> UnivariatePoly {
        UnivariatePoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UnivariatePoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UnivariatePoly) -> UnivariatePoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UnivariatePoly) -> UnivariatePoly {
        if self.is_zero() || other.is_zero() {
            return UnivariatePoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> UnivariatePoly {
        UnivariatePoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder with `deg r < deg d`. Panics on zero divisor.
    pub fn div_rem(&self, d: &UnivariatePoly) -> (UnivariatePoly, UnivariatePoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UnivariatePoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                let sub = c * &q;
                rem[idx] -= sub;
            }
            quot[i - dd] = q;
        }
        (UnivariatePoly::new(quot), UnivariatePoly::new(rem))
    }

    /// Exact quotient; `None` when the division leaves a remainder.
    pub fn div_exact(&self, d: &UnivariatePoly) -> Option<UnivariatePoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &UnivariatePoly) -> UnivariatePoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) => {
                let inv = l.recip();
                a.scale(&inv)
            }
            None => a,
        }
    }

    /// Scale to integer coefficients with content 1 and positive leading
    /// coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        for c in &mut ints {
            *c /= &content;
        }
        ints
    }

    /// Squarefree part `P / gcd(P, P')`, monic.
    pub fn squarefree_part(&self) -> UnivariatePoly {
        if self.degree().unwrap_or(0) == 0 {
            return UnivariatePoly::one();
        }
        let g = self.gcd(&self.derivative());
        let q = self.div_exact(&g).expect("gcd divides");
        let inv = q.leading().unwrap().recip();
        q.scale(&inv)
    }

    /// Squarefree decomposition: pairs `(factor, multiplicity)` with the
    /// factors monic, squarefree, pairwise coprime, and
    /// `P = lead * prod factor^multiplicity`.
    pub fn squarefree_decomposition(&self) -> Vec<(UnivariatePoly, u32)> {
        // Yun's algorithm.
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let monic = {
            let inv = self.leading().unwrap().recip();
            self.scale(&inv)
        };
        let d = monic.derivative();
        let g = monic.gcd(&d);
        let mut b = monic.div_exact(&g).expect("gcd divides");
        let mut c = d.div_exact(&g).expect("gcd divides derivative");
        let mut i = 1u32;
        while b.degree() != Some(0) {
            let diff = c.sub(&b.derivative());
            let p = b.gcd(&diff);
            if p.degree().unwrap_or(0) > 0 {
                out.push((p.clone(), i));
            }
            b = b.div_exact(&p).expect("factor divides");
            c = diff.div_exact(&p).expect("factor divides");
            i += 1;
        }
        out
    }

    /// All rational roots with multiplicities, found exactly by the rational
    /// root theorem on the primitive integer form.
    pub fn rational_roots(&self) -> Vec<(BigRational, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        // Strip x^v.
        let v = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial");
        let mut reduced = UnivariatePoly::new(self.coeffs[v..].to_vec());
        if v > 0 {
            out.push((BigRational::zero(), v as u32));
        }
        if reduced.degree().unwrap_or(0) == 0 {
            out.sort_by(|x, y| x.0.cmp(&y.0));
            return out;
        }
        let ints = reduced.primitive_integer();
        let a0 = ints.first().unwrap().clone();
        let an = ints.last().unwrap().clone();
        let mut candidates: Vec<BigRational> = Vec::new();
        for p in divisors(&a0) {
            for q in divisors(&an) {
                for sign in [1i64, -1] {
                    let c = BigRational::new(&p * BigInt::from(sign), q.clone());
                    if !candidates.contains(&c) {
                        candidates.push(c);
                    }
                }
            }
        }
        candidates.sort();
        for c in candidates {
            if !reduced.eval(&c).is_zero() {
                continue;
            }
            // Divide out (x - c) repeatedly to count multiplicity.
            let factor = UnivariatePoly::new(vec![-c.clone(), BigRational::one()]);
            let mut mult = 0u32;
            while let Some(q) = reduced.div_exact(&factor) {
                reduced = q;
                mult += 1;
                if reduced.is_zero() {
                    break;
                }
            }
            out.push((c, mult));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// Cauchy bound: every real root lies in `(-M, M)`.
    pub fn root_bound(&self) -> BigRational {
        let lead = match self.leading() {
            Some(l) => l.abs(),
            None => return BigRational::one(),
        };
        let mut max = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = c.abs() / &lead;
            if r > max {
                max = r;
            }
        }
        max + BigRational::one()
    }
}

/// Positive divisors of `n != 0` by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let p = UnivariatePoly::from_integers(&[-1, 0, 1]);
        let d = UnivariatePoly::from_integers(&[-1, 1]);
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, UnivariatePoly::from_integers(&[1, 1]));
        let g = p.gcd(&d);
        assert_eq!(g, d);
        assert!(p.div_exact(&UnivariatePoly::from_integers(&[1, 1, 1])).is_none());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (2x - 3)^2 (x + 1) x
        let p = UnivariatePoly::from_integers(&[-3, 2])
            .mul(&UnivariatePoly::from_integers(&[-3, 2]))
            .mul(&UnivariatePoly::from_integers(&[1, 1]))
            .mul(&UnivariatePoly::from_integers(&[0, 1]));
        let roots = p.rational_roots();
        assert_eq!(
            roots,
            vec![
                (rat(-1), 1),
                (rat(0), 1),
                (ratio(3, 2), 2),
            ]
        );
        // x^2 - 2 has no rational roots.
        assert!(UnivariatePoly::from_integers(&[-2, 0, 1])
            .rational_roots()
            .is_empty());
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        // (x - 1)^3 (x^2 - 2)
        let p = {
            let a = UnivariatePoly::from_integers(&[-1, 1]);
            let b = a.mul(&a).mul(&a);
            b.mul(&UnivariatePoly::from_integers(&[-2, 0, 1]))
        };
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert!(dec.contains(&(UnivariatePoly::from_integers(&[-2, 0, 1]), 1)));
        assert!(dec.contains(&(UnivariatePoly::from_integers(&[-1, 1]), 3)));
        let sf = p.squarefree_part();
        assert_eq!(sf.degree(), Some(3));
        assert!(sf.gcd(&sf.derivative()).degree() == Some(0));
    }

    #[test]
    fn primitive_integer_form() {
        // (1/6)x^2 - (1/4) -> 2x^2 - 3
        let p = UnivariatePoly::new(vec![ratio(-1, 4), rat(0), ratio(1, 6)]);
        let ints = p.primitive_integer();
        assert_eq!(ints, vec![BigInt::from(-3), BigInt::from(0), BigInt::from(2)]);
    }

    #[test]
    fn root_bound_contains_roots() {
        let p = UnivariatePoly::from_integers(&[-6, 11, -6, 1]); // roots 1, 2, 3
        let b = p.root_bound();
        assert!(b > rat(3));
    }
}
