//! Growth-envelope atoms and min/max expression trees.

use super::value::LogValue;
use crate::lattice::LatticeIndex;
use num::{BigRational, Signed, Zero};
use std::cmp::Ordering;

/// One multiplicative growth scale:
/// `(1+|k|^2)^a * e^{b1|k1| + b2|k2|} * (|k1|!)^{c1} * (|k2|!)^{c2}`.
///
/// The polynomial exponent lives on the `(1+|k|^2)` scale, so a Sobolev
/// `H^m` envelope is the atom with `a = m/2` and nothing else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomEnvelope {
    pub a: BigRational,
    pub b1: BigRational,
    pub b2: BigRational,
    pub c1: BigRational,
    pub c2: BigRational,
}

impl AtomEnvelope {
    pub fn new(
        a: BigRational,
        b1: BigRational,
        b2: BigRational,
        c1: BigRational,
        c2: BigRational,
    ) -> Self {
        AtomEnvelope { a, b1, b2, c1, c2 }
    }

    /// The purely polynomial atom `(1+|k|^2)^a`.
    pub fn polynomial(a: BigRational) -> Self {
        let z = BigRational::zero;
        AtomEnvelope::new(a, z(), z(), z(), z())
    }

    /// The Sobolev-scale atom for order `m`: `a = m/2`.
    pub fn sobolev(m: &BigRational) -> Self {
        AtomEnvelope::polynomial(m / BigRational::from_integer(2.into()))
    }

    /// The exponential atom `e^{d1|k1| + d2|k2|}`.
    pub fn exponential(d1: BigRational, d2: BigRational) -> Self {
        let z = BigRational::zero;
        AtomEnvelope::new(z(), d1, d2, z(), z())
    }

    /// The factorial atom `(|k1|!)^{c1} (|k2|!)^{c2}`.
    pub fn factorial(c1: BigRational, c2: BigRational) -> Self {
        let z = BigRational::zero;
        AtomEnvelope::new(z(), z(), z(), c1, c2)
    }

    /// Exact logarithm of the value at `k`.
    pub fn ln_value(&self, k: LatticeIndex) -> LogValue {
        let (t1, t2) = (k.0.unsigned_abs(), k.1.unsigned_abs());
        let norm = 1 + (k.0 * k.0 + k.1 * k.1) as u64;
        let lin = &self.b1 * BigRational::from_integer(t1.into())
            + &self.b2 * BigRational::from_integer(t2.into());
        LogValue::rational(lin)
            + LogValue::ln_integer(norm, &self.a)
            + LogValue::ln_factorial(t1, &self.c1)
            + LogValue::ln_factorial(t2, &self.c2)
    }

    /// Float logarithm of the value at `k`, for probes and plots.
    pub fn ln_f64(&self, k: LatticeIndex) -> f64 {
        let f = crate::rational::rational_to_f64;
        let lnfact = |t: i64| (2..=t).map(|i| (i as f64).ln()).sum::<f64>();
        f(&self.a) * ((1 + k.0 * k.0 + k.1 * k.1) as f64).ln()
            + f(&self.b1) * k.0.abs() as f64
            + f(&self.b2) * k.1.abs() as f64
            + f(&self.c1) * lnfact(k.0.abs())
            + f(&self.c2) * lnfact(k.1.abs())
    }

    /// Growth data along the axis ray: `(c, b, a)`, compared
    /// lexicographically. Along `|k_axis| -> inf` with the other index
    /// fixed, the value is `(t!)^c e^{bt} t^{2a}` up to constants, so
    /// this tuple determines asymptotic dominance on the ray.
    pub fn axis_profile(&self, axis: u8) -> (BigRational, BigRational, BigRational) {
        match axis {
            1 => (self.c1.clone(), self.b1.clone(), self.a.clone()),
            _ => (self.c2.clone(), self.b2.clone(), self.a.clone()),
        }
    }
}

/// Decide `e1/e2 bounded on Z^2` exactly.
///
/// Boundedness on each axis ray is the graded-lexicographic condition
/// on `(c, b, a)` differences; since every mixed ray's leading terms
/// are positive combinations of the per-axis data, the two axis
/// conditions together already bound every ray, making the per-axis
/// test a complete decision procedure for atoms.
pub fn atom_leq(e1: &AtomEnvelope, e2: &AtomEnvelope) -> bool {
    let da = &e1.a - &e2.a;
    let axis_ok = |dc: BigRational, db: BigRational| {
        dc.is_negative()
            || (dc.is_zero() && (db.is_negative() || (db.is_zero() && !da.is_positive())))
    };
    axis_ok(&e1.c1 - &e2.c1, &e1.b1 - &e2.b1) && axis_ok(&e1.c2 - &e2.c2, &e1.b2 - &e2.b2)
}

/// A finite max/min combination of atoms. Constructors flatten nested
/// nodes of the same kind and collapse single-child nodes, so the tree
/// shape is canonical enough for display without affecting evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnvelopeExpr {
    Atom(AtomEnvelope),
    Max(Vec<EnvelopeExpr>),
    Min(Vec<EnvelopeExpr>),
}

impl EnvelopeExpr {
    pub fn atom(a: AtomEnvelope) -> Self {
        EnvelopeExpr::Atom(a)
    }

    pub fn max_of(children: Vec<EnvelopeExpr>) -> Self {
        Self::node(children, true)
    }

    pub fn min_of(children: Vec<EnvelopeExpr>) -> Self {
        Self::node(children, false)
    }

    fn node(children: Vec<EnvelopeExpr>, is_max: bool) -> Self {
        assert!(!children.is_empty(), "envelope nodes need a child");
        let mut flat = Vec::new();
        for c in children {
            match (c, is_max) {
                (EnvelopeExpr::Max(grand), true) => flat.extend(grand),
                (EnvelopeExpr::Min(grand), false) => flat.extend(grand),
                (other, _) => flat.push(other),
            }
        }
        flat.dedup();
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        if is_max {
            EnvelopeExpr::Max(flat)
        } else {
            EnvelopeExpr::Min(flat)
        }
    }

    /// Exact logarithm of the pointwise evaluation at `k`.
    pub fn ln_value(&self, k: LatticeIndex) -> LogValue {
        match self {
            EnvelopeExpr::Atom(a) => a.ln_value(k),
            EnvelopeExpr::Max(cs) => Self::extremum(cs, k, Ordering::Greater),
            EnvelopeExpr::Min(cs) => Self::extremum(cs, k, Ordering::Less),
        }
    }

    fn extremum(cs: &[EnvelopeExpr], k: LatticeIndex, keep: Ordering) -> LogValue {
        let mut best: Option<LogValue> = None;
        for c in cs {
            let v = c.ln_value(k);
            best = Some(match best {
                None => v,
                Some(b) => {
                    if v.cmp_value(&b) == keep {
                        v
                    } else {
                        b
                    }
                }
            });
        }
        best.expect("nonempty by construction")
    }

    pub fn ln_f64(&self, k: LatticeIndex) -> f64 {
        match self {
            EnvelopeExpr::Atom(a) => a.ln_f64(k),
            EnvelopeExpr::Max(cs) => cs
                .iter()
                .map(|c| c.ln_f64(k))
                .fold(f64::NEG_INFINITY, f64::max),
            EnvelopeExpr::Min(cs) => cs.iter().map(|c| c.ln_f64(k)).fold(f64::INFINITY, f64::min),
        }
    }

    pub fn leaves(&self) -> Vec<&AtomEnvelope> {
        match self {
            EnvelopeExpr::Atom(a) => vec![a],
            EnvelopeExpr::Max(cs) | EnvelopeExpr::Min(cs) => {
                cs.iter().flat_map(|c| c.leaves()).collect()
            }
        }
    }

    /// Apply a parameter transformation to every leaf.
    pub fn map_atoms(&self, f: &impl Fn(&AtomEnvelope) -> AtomEnvelope) -> EnvelopeExpr {
        match self {
            EnvelopeExpr::Atom(a) => EnvelopeExpr::Atom(f(a)),
            EnvelopeExpr::Max(cs) => {
                EnvelopeExpr::max_of(cs.iter().map(|c| c.map_atoms(f)).collect())
            }
            EnvelopeExpr::Min(cs) => {
                EnvelopeExpr::min_of(cs.iter().map(|c| c.map_atoms(f)).collect())
            }
        }
    }

    /// The `(c, b, a)` tuple governing growth along one axis ray:
    /// lexicographic max over Max children, min over Min children.
    pub fn axis_profile(&self, axis: u8) -> (BigRational, BigRational, BigRational) {
        match self {
            EnvelopeExpr::Atom(a) => a.axis_profile(axis),
            EnvelopeExpr::Max(cs) => cs
                .iter()
                .map(|c| c.axis_profile(axis))
                .max()
                .expect("nonempty"),
            EnvelopeExpr::Min(cs) => cs
                .iter()
                .map(|c| c.axis_profile(axis))
                .min()
                .expect("nonempty"),
        }
    }

    /// Prune children dominated under `atom_leq` in all-atom nodes:
    /// in a Max a dominated atom is redundant, in a Min a dominating
    /// one is. Sound because sections identify envelopes differing by
    /// a bounded ratio.
    pub fn simplify(&self) -> EnvelopeExpr {
        let prune = |cs: &Vec<EnvelopeExpr>, is_max: bool| -> Option<EnvelopeExpr> {
            let atoms: Option<Vec<&AtomEnvelope>> = cs
                .iter()
                .map(|c| match c {
                    EnvelopeExpr::Atom(a) => Some(a),
                    _ => None,
                })
                .collect();
            let atoms = atoms?;
            // In a Max an atom below a kept one is redundant; dually
            // for Min. Mutually bounded atoms are identical, so the
            // first occurrence survives.
            let below = |x: &AtomEnvelope, y: &AtomEnvelope| {
                if is_max {
                    atom_leq(x, y)
                } else {
                    atom_leq(y, x)
                }
            };
            let mut kept: Vec<AtomEnvelope> = Vec::new();
            for cand in atoms {
                if kept.iter().any(|k| below(cand, k)) {
                    continue;
                }
                kept.retain(|k| !below(k, cand));
                kept.push(cand.clone());
            }
            let children = kept.into_iter().map(EnvelopeExpr::Atom).collect();
            Some(if is_max {
                EnvelopeExpr::max_of(children)
            } else {
                EnvelopeExpr::min_of(children)
            })
        };
        match self {
            EnvelopeExpr::Atom(a) => EnvelopeExpr::Atom(a.clone()),
            EnvelopeExpr::Max(cs) => {
                let cs: Vec<_> = cs.iter().map(|c| c.simplify()).collect();
                prune(&cs, true).unwrap_or(EnvelopeExpr::max_of(cs))
            }
            EnvelopeExpr::Min(cs) => {
                let cs: Vec<_> = cs.iter().map(|c| c.simplify()).collect();
                prune(&cs, false).unwrap_or(EnvelopeExpr::min_of(cs))
            }
        }
    }

    /// Max-of-mins normal form, or `None` past the size cap.
    fn dnf(&self, cap: usize) -> Option<Vec<Vec<AtomEnvelope>>> {
        match self {
            EnvelopeExpr::Atom(a) => Some(vec![vec![a.clone()]]),
            EnvelopeExpr::Max(cs) => {
                let mut out = Vec::new();
                for c in cs {
                    out.extend(c.dnf(cap)?);
                    if out.len() > cap {
                        return None;
                    }
                }
                Some(out)
            }
            EnvelopeExpr::Min(cs) => {
                // min distributes over max: cross products of children.
                let mut acc: Vec<Vec<AtomEnvelope>> = vec![Vec::new()];
                for c in cs {
                    let terms = c.dnf(cap)?;
                    let mut next = Vec::new();
                    for partial in &acc {
                        for t in &terms {
                            let mut merged = partial.clone();
                            merged.extend(t.iter().cloned());
                            next.push(merged);
                        }
                    }
                    if next.len() > cap {
                        return None;
                    }
                    acc = next;
                }
                Some(acc)
            }
        }
    }
}

/// Outcome of the symbolic dominance test between envelopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// Certified `e1 <= C e2` on all of `Z^2`.
    LeCertified,
    /// Certified unbounded ratio `e1/e2` along some axis ray.
    NotLeCertified,
    /// The sound procedure could not decide either way.
    Unknown,
}

/// Sound, incomplete dominance test: certify falsity through the axis
/// profiles (the envelope value realizes its profile tuple along each
/// axis ray), certify truth by distributing both trees to max-of-min
/// form and comparing atoms pairwise, and otherwise report `Unknown`.
/// For single atoms the test is complete.
pub fn compare_envelopes(e1: &EnvelopeExpr, e2: &EnvelopeExpr) -> Comparison {
    for axis in [1u8, 2] {
        if e1.axis_profile(axis) > e2.axis_profile(axis) {
            return Comparison::NotLeCertified;
        }
    }
    const CAP: usize = 64;
    if let (Some(d1), Some(d2)) = (e1.dnf(CAP), e2.dnf(CAP)) {
        let min_le = |s: &Vec<AtomEnvelope>, t: &Vec<AtomEnvelope>| {
            t.iter().all(|b| s.iter().any(|a| atom_leq(a, b)))
        };
        if d1.iter().all(|s| d2.iter().any(|t| min_le(s, t))) {
            return Comparison::LeCertified;
        }
    }
    Comparison::Unknown
}

/// Shell trend of the ratio `e1/e2` on a probe disc, as a fallback
/// when [`compare_envelopes`] returns `Unknown`. HEURISTIC: a finite
/// probe cannot certify asymptotic dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    NonIncreasing,
    Increasing,
    Mixed,
}

/// Per-shell maxima of `ln(e1/e2)` for shells `0..=s_max`, judged
/// non-increasing when the second half of the shells never rises.
pub fn probe_ratio_trend(e1: &EnvelopeExpr, e2: &EnvelopeExpr, s_max: i64) -> (Trend, Vec<f64>) {
    let mut ratios = Vec::new();
    for s in 0..=s_max {
        let mut best = f64::NEG_INFINITY;
        let mut probe = |k: LatticeIndex| {
            let r = e1.ln_f64(k) - e2.ln_f64(k);
            if r > best {
                best = r;
            }
        };
        for t in -s..=s {
            probe((t, s));
            probe((t, -s));
            probe((s, t));
            probe((-s, t));
        }
        ratios.push(best);
    }
    let tail = &ratios[ratios.len() / 2..];
    let tol = 1e-9;
    let rises = tail.windows(2).filter(|w| w[1] > w[0] + tol).count();
    let falls = tail.windows(2).filter(|w| w[1] < w[0] - tol).count();
    let trend = if rises == 0 {
        Trend::NonIncreasing
    } else if falls == 0 {
        Trend::Increasing
    } else {
        Trend::Mixed
    };
    (trend, ratios)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn atom(a: (i64, i64), b1: (i64, i64), b2: (i64, i64), c1: (i64, i64), c2: (i64, i64)) -> AtomEnvelope {
        AtomEnvelope::new(
            rat(a.0, a.1),
            rat(b1.0, b1.1),
            rat(b2.0, b2.1),
            rat(c1.0, c1.1),
            rat(c2.0, c2.1),
        )
    }

    #[test]
    fn polynomial_dominance_is_ordered_by_exponent() {
        let small = AtomEnvelope::polynomial(rat(0, 1));
        let big = AtomEnvelope::polynomial(rat(1, 1));
        assert!(atom_leq(&small, &big));
        assert!(!atom_leq(&big, &small));
        assert!(atom_leq(&small, &small));
    }

    #[test]
    fn cross_axis_exponentials_are_incomparable() {
        let e1 = AtomEnvelope::exponential(rat(1, 1), rat(0, 1));
        let e2 = AtomEnvelope::exponential(rat(0, 1), rat(1, 1));
        assert!(!atom_leq(&e1, &e2));
        assert!(!atom_leq(&e2, &e1));
    }

    #[test]
    fn any_polynomial_sits_below_any_positive_exponential() {
        let poly = AtomEnvelope::polynomial(rat(5, 1));
        let exp = AtomEnvelope::exponential(rat(1, 100), rat(1, 100));
        assert!(atom_leq(&poly, &exp));
        assert!(!atom_leq(&exp, &poly));
    }

    #[test]
    fn exact_evaluation_agrees_with_floats() {
        let e = atom((3, 2), (-1, 3), (0, 1), (1, 2), (0, 1));
        for k in [(0, 0), (3, -2), (-7, 5), (10, 10)] {
            let exact = e.ln_value(k).to_f64();
            assert!((exact - e.ln_f64(k)).abs() < 1e-9, "at {k:?}");
        }
    }

    #[test]
    fn max_min_evaluation_is_pointwise() {
        let p = EnvelopeExpr::atom(AtomEnvelope::polynomial(rat(1, 1)));
        let q = EnvelopeExpr::atom(AtomEnvelope::exponential(rat(-1, 1), rat(-1, 1)));
        let m = EnvelopeExpr::max_of(vec![p.clone(), q.clone()]);
        let n = EnvelopeExpr::min_of(vec![p.clone(), q.clone()]);
        for k in [(0, 0), (2, 1), (-4, 3)] {
            let (vp, vq) = (p.ln_value(k), q.ln_value(k));
            let hi = if vp.cmp_value(&vq) == Ordering::Greater {
                vp.clone()
            } else {
                vq.clone()
            };
            assert!((&m.ln_value(k) - &hi).is_zero());
            let lo = if vp.cmp_value(&vq) == Ordering::Less { vp } else { vq };
            assert!((&n.ln_value(k) - &lo).is_zero());
        }
    }

    #[test]
    fn simplify_prunes_dominated_sobolev_atoms() {
        let h1 = EnvelopeExpr::atom(AtomEnvelope::sobolev(&rat(1, 1)));
        let h2 = EnvelopeExpr::atom(AtomEnvelope::sobolev(&rat(2, 1)));
        let sup = EnvelopeExpr::max_of(vec![h1.clone(), h2.clone()]);
        assert_eq!(sup.simplify(), h2);
        let inf = EnvelopeExpr::min_of(vec![h1.clone(), h2]);
        assert_eq!(inf.simplify(), h1);
    }

    #[test]
    fn tree_comparison_is_sound_and_admits_unknown() {
        let poly = EnvelopeExpr::atom(AtomEnvelope::polynomial(rat(10, 1)));
        let e1 = EnvelopeExpr::atom(AtomEnvelope::exponential(rat(1, 1), rat(0, 1)));
        let e2 = EnvelopeExpr::atom(AtomEnvelope::exponential(rat(0, 1), rat(1, 1)));
        let cover = EnvelopeExpr::max_of(vec![e1.clone(), e2.clone()]);
        // Genuinely true (poly below the max of the two exponentials on
        // every ray) but beyond the pairwise procedure: Unknown is the
        // documented honest answer.
        assert_eq!(compare_envelopes(&poly, &cover), Comparison::Unknown);
        assert_eq!(compare_envelopes(&e1, &e2), Comparison::NotLeCertified);
        assert_eq!(compare_envelopes(&e1, &cover), Comparison::LeCertified);
        assert_eq!(compare_envelopes(&cover, &poly), Comparison::NotLeCertified);
        // The heuristic probe backs up the Unknown case.
        let (trend, _) = probe_ratio_trend(&poly, &cover, 60);
        assert_eq!(trend, Trend::NonIncreasing);
    }
}
