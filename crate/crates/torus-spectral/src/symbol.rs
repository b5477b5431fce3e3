//! Polynomial symbols in the momentum variables `(xi1, xi2)`.

use crate::lattice::LatticeIndex;
use crate::rational::GaussianRational;
use num::{BigInt, BigRational};
use std::collections::BTreeMap;
use std::fmt;

/// A multi-index `a = (a1, a2)` of differentiation orders.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MultiIndex {
    pub a1: u32,
    pub a2: u32,
}

impl MultiIndex {
    pub fn new(a1: u32, a2: u32) -> Self {
        MultiIndex { a1, a2 }
    }

    pub fn order(&self) -> u32 {
        self.a1 + self.a2
    }
}

/// A polynomial `P(xi1, xi2)` with Gaussian rational coefficients, keyed by
/// exponent pair. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SymbolPolynomial {
    terms: BTreeMap<(u32, u32), GaussianRational>,
}

impl SymbolPolynomial {
    pub fn zero() -> Self {
        SymbolPolynomial::default()
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), GaussianRational)>,
    {
        let mut p = SymbolPolynomial::zero();
        for (e, c) in terms {
            p.accumulate(e, &c);
        }
        p
    }

    pub fn monomial(c: GaussianRational, a1: u32, a2: u32) -> Self {
        SymbolPolynomial::from_terms([((a1, a2), c)])
    }

    pub fn constant(c: GaussianRational) -> Self {
        SymbolPolynomial::monomial(c, 0, 0)
    }

    pub fn accumulate(&mut self, e: (u32, u32), c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(e)
            .or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &GaussianRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    /// `Some(p)` when every term has total degree `p` (and the polynomial is
    /// nonzero).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|(a, b)| a + b);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn coeff(&self, e: (u32, u32)) -> GaussianRational {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &SymbolPolynomial) -> SymbolPolynomial {
        let mut p = self.clone();
        for (e, c) in other.iter() {
            p.accumulate(*e, c);
        }
        p
    }

    pub fn scale(&self, c: &GaussianRational) -> SymbolPolynomial {
        SymbolPolynomial::from_terms(self.terms.iter().map(|(e, v)| (*e, v * c)))
    }

    pub fn mul(&self, other: &SymbolPolynomial) -> SymbolPolynomial {
        let mut p = SymbolPolynomial::zero();
        for (e1, c1) in self.iter() {
            for (e2, c2) in other.iter() {
                p.accumulate((e1.0 + e2.0, e1.1 + e2.1), &(c1 * c2));
            }
        }
        p
    }

    /// Exact evaluation at an integer lattice point.
    pub fn eval(&self, m: LatticeIndex) -> GaussianRational {
        let x1 = BigInt::from(m.0);
        let x2 = BigInt::from(m.1);
        let mut sum = GaussianRational::zero();
        for ((a1, a2), c) in self.iter() {
            let p = num::pow::pow(x1.clone(), *a1 as usize) * num::pow::pow(x2.clone(), *a2 as usize);
            let p = BigRational::from_integer(p);
            sum += &GaussianRational::new(&c.re * &p, &c.im * &p);
        }
        sum
    }
}

impl fmt::Display for SymbolPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a1, a2), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut vars = String::new();
            for (name, e) in [("xi1", *a1), ("xi2", *a2)] {
                if e == 1 {
                    vars.push_str(&format!("*{name}"));
                } else if e > 1 {
                    vars.push_str(&format!("*{name}^{e}"));
                }
            }
            if vars.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}){vars}")?;
            }
        }
        Ok(())
    }
}
