//! Sturm chains and exact real-root counting and isolation.

use super::univariate::UnivariatePoly;
use num::{BigRational, Signed, Zero};

/// The Sturm chain of a nonzero polynomial.
pub struct SturmChain {
    chain: Vec<UnivariatePoly>,
}

impl SturmChain {
    pub fn new(p: &UnivariatePoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let mut chain = vec![p.clone()];
        if p.degree().unwrap_or(0) >= 1 {
            chain.push(p.derivative());
            loop {
                let n = chain.len();
                let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg());
            }
        }
        SturmChain { chain }
    }

    fn variations<F>(&self, sign_of: F) -> usize
    where
        F: Fn(&UnivariatePoly) -> i8,
    {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let s = sign_of(p);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        self.variations(|p| {
            let v = p.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
    }

    /// Number of distinct real roots in `(a, b]`; requires `a <= b`.
    pub fn count_roots_in(&self, a: &BigRational, b: &BigRational) -> usize {
        assert!(a <= b);
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Number of distinct real roots of `p` (via its squarefree part).
pub fn count_distinct_real_roots(p: &UnivariatePoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let sf = p.squarefree_part();
    let chain = SturmChain::new(&sf);
    let bound = sf.root_bound();
    chain.count_roots_in(&-bound.clone(), &bound)
}

/// Disjoint intervals `(lo, hi]`, sorted, each containing exactly one
/// distinct real root of `p`. `p` must be squarefree.
pub fn isolate_real_roots(p: &UnivariatePoly) -> Vec<(BigRational, BigRational)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    debug_assert!(p.gcd(&p.derivative()).degree() == Some(0), "squarefree input");
    let chain = SturmChain::new(p);
    let bound = p.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        match chain.count_roots_in(&a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = (&a + &b) / BigRational::from_integer(2.into());
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Shrink an isolating interval of a squarefree `p` below `width`.
pub fn refine_interval(
    p: &UnivariatePoly,
    mut iv: (BigRational, BigRational),
    width: &BigRational,
) -> (BigRational, BigRational) {
    let chain = SturmChain::new(p);
    debug_assert_eq!(chain.count_roots_in(&iv.0, &iv.1), 1);
    let two = BigRational::from_integer(2.into());
    while &iv.1 - &iv.0 > *width {
        let mid = (&iv.0 + &iv.1) / &two;
        if chain.count_roots_in(&iv.0, &mid) == 1 {
            iv.1 = mid;
        } else {
            iv.0 = mid;
        }
    }
    iv
}

/// Convenience: `true` when `p` has no real roots at all.
pub fn has_no_real_roots(p: &UnivariatePoly) -> bool {
    count_distinct_real_roots(p) == 0
}

/// Isolating intervals paired against known widths for reporting.
pub fn interval_midpoint_f64(iv: &(BigRational, BigRational)) -> f64 {
    let two = BigRational::from_integer(2.into());
    crate::rational::rational_to_f64(&((&iv.0 + &iv.1) / two))
}
