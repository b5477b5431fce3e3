//! Formal trigonometric series on the 2-torus with exact coefficients.

use crate::error::{Error, Result};
use crate::lattice::{Domain, LatticeBox, LatticeIndex};
use crate::numeric::{rational_pow, rational_pow_enclosure};
use crate::rational::GaussianRational;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// A sparse formal series `sum_k u_k e^{i k.x}` over `Z^2`.
///
/// `coeffs` never stores zeros and every stored index lies in `domain`, the
/// region on which the stored values are asserted to be the complete set of
/// coefficients. Indices inside the domain but absent from the map are
/// exactly zero; indices outside the domain are unknown.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TrigSeries {
    coeffs: BTreeMap<LatticeIndex, GaussianRational>,
    domain: Domain,
}

/// Result of a Sobolev norm computation: exact for integer orders, a
/// rigorous rational enclosure otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum NormValue {
    Exact(BigRational),
    Enclosure { lo: BigRational, hi: BigRational },
}

impl NormValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            NormValue::Exact(v) => crate::rational::rational_to_f64(v),
            NormValue::Enclosure { lo, hi } => {
                (crate::rational::rational_to_f64(lo) + crate::rational::rational_to_f64(hi)) / 2.0
            }
        }
    }
}

fn insert_nonzero(
    map: &mut BTreeMap<LatticeIndex, GaussianRational>,
    k: LatticeIndex,
    v: GaussianRational,
) {
    if !v.is_zero() {
        map.insert(k, v);
    }
}

fn accumulate(
    map: &mut BTreeMap<LatticeIndex, GaussianRational>,
    k: LatticeIndex,
    v: &GaussianRational,
) {
    if v.is_zero() {
        return;
    }
    let entry = map.entry(k).or_insert_with(GaussianRational::zero);
    *entry += v;
    if entry.is_zero() {
        map.remove(&k);
    }
}

impl TrigSeries {
    /// The zero trigonometric polynomial (complete everywhere).
    pub fn zero() -> Self {
        TrigSeries {
            coeffs: BTreeMap::new(),
            domain: Domain::Entire,
        }
    }

    /// A series with an empty completeness region and no data.
    pub fn empty() -> Self {
        TrigSeries {
            coeffs: BTreeMap::new(),
            domain: Domain::Empty,
        }
    }

    /// A trigonometric polynomial from `(index, coefficient)` terms; repeated
    /// indices accumulate.
    pub fn polynomial<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (LatticeIndex, GaussianRational)>,
    {
        let mut coeffs = BTreeMap::new();
        for (k, v) in terms {
            accumulate(&mut coeffs, k, &v);
        }
        TrigSeries {
            coeffs,
            domain: Domain::Entire,
        }
    }

    /// A truncated series: complete only on `window`.
    pub fn truncation<I>(terms: I, window: LatticeBox) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticeIndex, GaussianRational)>,
    {
        let mut coeffs = BTreeMap::new();
        for (k, v) in terms {
            if !window.contains(k) {
                return Err(Error::Contract(format!(
                    "stored index ({}, {}) lies outside the declared window {window}",
                    k.0, k.1
                )));
            }
            accumulate(&mut coeffs, k, &v);
        }
        Ok(TrigSeries {
            coeffs,
            domain: Domain::Window(window),
        })
    }

    /// The exponential `e^{i k.x}`.
    pub fn delta(k: LatticeIndex) -> Self {
        TrigSeries::polynomial([(k, GaussianRational::one())])
    }

    pub fn constant(c: GaussianRational) -> Self {
        TrigSeries::polynomial([((0, 0), c)])
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Stored coefficient count.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored-or-zero coefficient value. Meaningful only where
    /// `self.domain().contains(k)`.
    pub fn coeff(&self, k: LatticeIndex) -> GaussianRational {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn get(&self, k: LatticeIndex) -> Option<&GaussianRational> {
        self.coeffs.get(&k)
    }

    /// Sorted iteration over stored terms.
    pub fn iter(&self) -> impl Iterator<Item = (&LatticeIndex, &GaussianRational)> {
        self.coeffs.iter()
    }

    /// Bounding box of the stored support, `None` for the zero series.
    pub fn support_bounding_box(&self) -> Option<LatticeBox> {
        let mut it = self.coeffs.keys();
        let first = *it.next()?;
        let mut b = LatticeBox {
            n1_min: first.0,
            n1_max: first.0,
            n2_min: first.1,
            n2_max: first.1,
        };
        for &(k1, k2) in it {
            b.n1_min = b.n1_min.min(k1);
            b.n1_max = b.n1_max.max(k1);
            b.n2_min = b.n2_min.min(k2);
            b.n2_max = b.n2_max.max(k2);
        }
        Some(b)
    }

    /// Forget completeness outside `window`; stored terms are clipped too.
    /// Error unless the declared region covers all of `b`.
    pub(crate) fn require_complete(&self, b: &LatticeBox, what: &str) -> Result<()> {
        let needed = Domain::Window(*b);
        if self.domain.intersect(&needed) != needed {
            return Err(Error::IncompleteSupport(format!(
                "{what} must be complete on {b}, declared region is {}",
                self.domain
            )));
        }
        Ok(())
    }

    pub fn restrict(&self, window: LatticeBox) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(k, _)| window.contains(**k))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        TrigSeries {
            coeffs,
            domain: self.domain.intersect(&Domain::Window(window)),
        }
    }

    /// First index in `probe` (lexicographically) where the two series
    /// disagree, if any. Both series must be complete on `probe`.
    pub fn difference_witness(
        &self,
        other: &TrigSeries,
        probe: &LatticeBox,
    ) -> Result<Option<LatticeIndex>> {
        for (name, s) in [("left", self), ("right", other)] {
            if s.domain.intersect(&Domain::Window(*probe)) != Domain::Window(*probe) {
                return Err(Error::IncompleteSupport(format!(
                    "{name} series is not complete on {probe}"
                )));
            }
        }
        Ok(probe.iter().find(|&k| self.coeff(k) != other.coeff(k)))
    }

    pub fn add(&self, other: &TrigSeries) -> TrigSeries {
        let domain = self.domain.intersect(&other.domain);
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            if domain.contains(*k) {
                accumulate(&mut coeffs, *k, v);
            }
        }
        for (k, v) in &other.coeffs {
            if domain.contains(*k) {
                accumulate(&mut coeffs, *k, v);
            }
        }
        TrigSeries { coeffs, domain }
    }

    pub fn neg(&self) -> TrigSeries {
        self.scale(&GaussianRational::from_int(-1))
    }

    pub fn sub(&self, other: &TrigSeries) -> TrigSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &GaussianRational) -> TrigSeries {
        if c.is_zero() {
            // Scaling by zero is complete wherever the input was; keep the
            // domain rather than promoting to a global zero.
            return TrigSeries {
                coeffs: BTreeMap::new(),
                domain: self.domain,
            };
        }
        TrigSeries {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
            domain: self.domain,
        }
    }

    /// Multiplication by `e^{i n.x}`: translates every frequency by `n`.
    pub fn shift(&self, n: LatticeIndex) -> TrigSeries {
        TrigSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| ((k.0 + n.0, k.1 + n.1), v.clone()))
                .collect(),
            domain: self.domain.translate(n),
        }
    }

    /// Coefficientwise conjugation with frequency reflection, i.e. the
    /// coefficients of the conjugate function `conj(u)`.
    pub fn conj(&self) -> TrigSeries {
        let domain = match self.domain {
            Domain::Window(b) => Domain::Window(LatticeBox {
                n1_min: -b.n1_max,
                n1_max: -b.n1_min,
                n2_min: -b.n2_max,
                n2_max: -b.n2_min,
            }),
            d => d,
        };
        TrigSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| ((-k.0, -k.1), v.conj()))
                .collect(),
            domain,
        }
    }

    /// The convolution product `u * v` of coefficient arrays, i.e. the
    /// coefficients of the pointwise product of functions. At least one
    /// factor must be a trigonometric polynomial; the completeness window of
    /// the other shrinks by the polynomial's support extent.
    pub fn multiply(&self, other: &TrigSeries) -> Result<TrigSeries> {
        let (kernel, arg) = if self.domain.is_entire() {
            (self, other)
        } else if other.domain.is_entire() {
            (other, self)
        } else {
            return Err(Error::BothUnbounded);
        };
        let domain = match (kernel.support_bounding_box(), arg.domain) {
            // Zero polynomial: the product is identically zero.
            (None, _) => Domain::Entire,
            (_, Domain::Entire) => Domain::Entire,
            (_, Domain::Empty) => Domain::Empty,
            (Some(s), Domain::Window(w)) => LatticeBox::new(
                w.n1_min + s.n1_max,
                w.n1_max + s.n1_min,
                w.n2_min + s.n2_max,
                w.n2_max + s.n2_min,
            )
            .map(Domain::Window)
            .unwrap_or(Domain::Empty),
        };
        let mut coeffs = BTreeMap::new();
        for (n, tn) in &kernel.coeffs {
            for (j, uj) in &arg.coeffs {
                let k = (n.0 + j.0, n.1 + j.1);
                if domain.contains(k) {
                    accumulate(&mut coeffs, k, &(tn * uj));
                }
            }
        }
        Ok(TrigSeries { coeffs, domain })
    }

    /// Coefficientwise (Hadamard) product `(u . v)_k = u_k v_k`.
    pub fn mul_coeffwise(&self, other: &TrigSeries) -> TrigSeries {
        let domain = self.domain.intersect(&other.domain);
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            if domain.contains(*k) {
                if let Some(w) = other.coeffs.get(k) {
                    insert_nonzero(&mut coeffs, *k, v * w);
                }
            }
        }
        TrigSeries { coeffs, domain }
    }

    /// Multiply `u_k` by `k1^{a1} k2^{a2}` (the action of `D^a` with
    /// `D = -i d/dx`).
    pub fn momentum(&self, a1: u32, a2: u32) -> TrigSeries {
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            let m = BigRational::from_integer(BigInt::from(k.0)).pow(a1 as i32)
                * BigRational::from_integer(BigInt::from(k.1)).pow(a2 as i32);
            insert_nonzero(
                &mut coeffs,
                *k,
                GaussianRational::new(&v.re * &m, &v.im * &m),
            );
        }
        TrigSeries {
            coeffs,
            domain: self.domain,
        }
    }

    /// The sesquilinear pairing `<u, v> = sum_k u_k conj(v_k)`; the second
    /// argument is conjugated. Exactness requires one factor to be a
    /// trigonometric polynomial whose support the other covers.
    pub fn pairing(&self, other: &TrigSeries) -> Result<GaussianRational> {
        let (poly, second, poly_is_left) = if self.domain.is_entire() {
            (self, other, true)
        } else if other.domain.is_entire() {
            (other, self, false)
        } else {
            return Err(Error::BothUnbounded);
        };
        let mut sum = GaussianRational::zero();
        for (k, v) in &poly.coeffs {
            if !second.domain.contains(*k) {
                return Err(Error::IncompleteSupport(format!(
                    "pairing needs the coefficient at ({}, {})",
                    k.0, k.1
                )));
            }
            let w = second.coeff(*k);
            let term = if poly_is_left {
                v * &w.conj()
            } else {
                &w * &v.conj()
            };
            sum += &term;
        }
        Ok(sum)
    }

    /// Pairing in the `x1` variable against a polynomial `t(x1)`:
    /// `<u, t>_{x1} = sum_n (sum_m u_{m,n} conj(t_{-m})) e^{i n x2}`,
    /// returned as a series supported on the `k2` axis.
    pub fn partial_pairing_x1(&self, t: &TrigSeries) -> Result<TrigSeries> {
        self.partial_pairing(t, 1)
    }

    /// Pairing in the `x2` variable against a polynomial `t(x2)`, returned as
    /// a series supported on the `k1` axis.
    pub fn partial_pairing_x2(&self, t: &TrigSeries) -> Result<TrigSeries> {
        self.partial_pairing(t, 2)
    }

    fn partial_pairing(&self, t: &TrigSeries, axis: u8) -> Result<TrigSeries> {
        if !t.domain.is_entire() {
            return Err(Error::Contract(
                "pairing polynomial must have entire domain".into(),
            ));
        }
        let onaxis = |k: &LatticeIndex| if axis == 1 { k.1 == 0 } else { k.0 == 0 };
        if let Some(k) = t.coeffs.keys().find(|k| !onaxis(k)) {
            return Err(Error::Contract(format!(
                "pairing polynomial must depend on x{axis} only, found term at ({}, {})",
                k.0, k.1
            )));
        }
        // Coefficients of u are read at reflected indices -m.
        let domain = match self.domain {
            Domain::Entire => Domain::Entire,
            Domain::Empty => {
                return Err(Error::IncompleteSupport(
                    "series has an empty completeness region".into(),
                ))
            }
            Domain::Window(w) => {
                for (m, _) in t.iter() {
                    let m = if axis == 1 { m.0 } else { m.1 };
                    let (lo, hi) = if axis == 1 {
                        (w.n1_min, w.n1_max)
                    } else {
                        (w.n2_min, w.n2_max)
                    };
                    if -m < lo || -m > hi {
                        return Err(Error::IncompleteSupport(format!(
                            "partial pairing reads index {} on axis {axis}, outside {w}",
                            -m
                        )));
                    }
                }
                if axis == 1 {
                    Domain::Window(LatticeBox::new(0, 0, w.n2_min, w.n2_max)?)
                } else {
                    Domain::Window(LatticeBox::new(w.n1_min, w.n1_max, 0, 0)?)
                }
            }
        };
        let mut coeffs = BTreeMap::new();
        for (m, tm) in t.iter() {
            let tbar = tm.conj();
            for (k, v) in &self.coeffs {
                let (read, out) = if axis == 1 { (k.0, k.1) } else { (k.1, k.0) };
                let mval = if axis == 1 { m.0 } else { m.1 };
                if read == -mval {
                    let idx = if axis == 1 { (0, out) } else { (out, 0) };
                    if domain.contains(idx) {
                        accumulate(&mut coeffs, idx, &(v * &tbar));
                    }
                }
            }
        }
        Ok(TrigSeries { coeffs, domain })
    }

    /// Verify the exact parity `u_{sk} = sign * u_k` under reflection of the
    /// given axis, returning the first violating index.
    pub fn check_parity(&self, axis: u8, even: bool) -> Result<()> {
        if !self.domain.is_symmetric(axis) {
            return Err(Error::AsymmetricBox { axis });
        }
        let parity = if even { "even" } else { "odd" };
        for (k, v) in &self.coeffs {
            let sk = if axis == 1 { (-k.0, k.1) } else { (k.0, -k.1) };
            let mirrored = self.coeff(sk);
            let expected = if even { mirrored.clone() } else { -&mirrored };
            if *v != expected {
                return Err(Error::ParityViolation {
                    axis,
                    parity,
                    witness: *k,
                });
            }
        }
        Ok(())
    }

    /// Even or odd part with respect to one axis. The completeness region
    /// must be symmetric in that axis.
    pub fn parity_project(&self, axis: u8, even: bool) -> Result<TrigSeries> {
        if !self.domain.is_symmetric(axis) {
            return Err(Error::AsymmetricBox { axis });
        }
        let half = GaussianRational::from_parts(1, 2, 0, 1);
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            let sk = if axis == 1 { (-k.0, k.1) } else { (k.0, -k.1) };
            let mirrored = self.coeff(sk);
            let combined = if even { v + &mirrored } else { v - &mirrored };
            insert_nonzero(&mut coeffs, *k, &combined * &half);
        }
        Ok(TrigSeries {
            coeffs,
            domain: self.domain,
        })
    }

    /// `sum_k (1 + k.k)^m |u_k|^2` over the stored support: exact for
    /// integer `m`, a rigorous enclosure (at `bits` precision) otherwise.
    pub fn sobolev_norm_sq(&self, m: &BigRational, bits: u32) -> Result<NormValue> {
        if m.denom().is_one() {
            let e = m.numer().to_i64().ok_or_else(|| {
                Error::Contract("Sobolev order is out of supported range".into())
            })?;
            let mut sum = BigRational::zero();
            for (k, v) in &self.coeffs {
                let w = BigRational::from_integer(weight_int(*k));
                sum += rational_pow(&w, e) * v.abs_sq();
            }
            return Ok(NormValue::Exact(sum));
        }
        let p = m.numer().to_i64().ok_or_else(|| {
            Error::Contract("Sobolev order numerator is out of supported range".into())
        })?;
        let q = m.denom().to_u64().ok_or_else(|| {
            Error::Contract("Sobolev order denominator is out of supported range".into())
        })?;
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (k, v) in &self.coeffs {
            let w = BigRational::from_integer(weight_int(*k));
            let (wl, wh) = rational_pow_enclosure(&w, p, q, bits);
            let a = v.abs_sq();
            lo += wl * &a;
            hi += wh * &a;
        }
        Ok(NormValue::Enclosure { lo, hi })
    }
}

fn weight_int(k: LatticeIndex) -> BigInt {
    BigInt::from(1i64) + BigInt::from(k.0) * BigInt::from(k.0) + BigInt::from(k.1) * BigInt::from(k.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn g(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_parts(n, d, 0, 1)
    }

    #[test]
    fn add_intersects_domains() {
        let u = TrigSeries::truncation(
            [((0, 0), g(1, 1)), ((2, 0), g(1, 2))],
            LatticeBox::symmetric(2, 2),
        )
        .unwrap();
        let v = TrigSeries::truncation([((0, 0), g(-1, 1))], LatticeBox::symmetric(1, 1)).unwrap();
        let s = u.add(&v);
        assert_eq!(s.domain(), Domain::Window(LatticeBox::symmetric(1, 1)));
        // The (2,0) term is outside the common window and must not leak in.
        assert!(s.is_zero());
        let t = u.add(&TrigSeries::delta((0, 1)));
        assert_eq!(t.coeff((0, 1)), GaussianRational::one());
        assert_eq!(t.domain(), u.domain());
    }

    #[test]
    fn cancellation_drops_stored_zeros() {
        let u = TrigSeries::delta((1, 1));
        let s = u.add(&u.neg());
        assert!(s.is_zero());
        assert_eq!(s.term_count(), 0);
    }

    #[test]
    fn multiply_matches_hand_convolution() {
        // (e^{ix1} + e^{-ix1}) * (e^{ix1} - e^{-ix1}) = e^{2ix1} - e^{-2ix1}
        let a = TrigSeries::polynomial([((1, 0), g(1, 1)), ((-1, 0), g(1, 1))]);
        let b = TrigSeries::polynomial([((1, 0), g(1, 1)), ((-1, 0), g(-1, 1))]);
        let p = a.multiply(&b).unwrap();
        let expect = TrigSeries::polynomial([((2, 0), g(1, 1)), ((-2, 0), g(-1, 1))]);
        assert_eq!(p, expect);
    }

    #[test]
    fn multiply_shrinks_window_by_kernel_extent() {
        let kernel = TrigSeries::polynomial([((1, 0), g(1, 1)), ((-1, 0), g(1, 1))]);
        let u = TrigSeries::truncation([((0, 0), g(1, 1))], LatticeBox::symmetric(3, 1)).unwrap();
        let p = kernel.multiply(&u).unwrap();
        assert_eq!(p.domain(), Domain::Window(LatticeBox::symmetric(2, 1)));
        let w = TrigSeries::truncation([((0, 0), g(1, 1))], LatticeBox::symmetric(1, 0)).unwrap();
        let q = kernel.multiply(&w).unwrap();
        // The window erodes to the single point (0, 0), where the product
        // is known to vanish because u_{+-1} are asserted zero.
        assert_eq!(q.domain(), Domain::Window(LatticeBox::new(0, 0, 0, 0).unwrap()));
        assert!(q.is_zero());
        let tiny =
            TrigSeries::truncation([((0, 0), g(1, 1))], LatticeBox::new(0, 0, -1, 1).unwrap())
                .unwrap();
        assert_eq!(kernel.multiply(&tiny).unwrap().domain(), Domain::Empty);
        let trunc = TrigSeries::truncation([], LatticeBox::symmetric(1, 1)).unwrap();
        assert!(matches!(
            trunc.multiply(&u),
            Err(Error::BothUnbounded)
        ));
    }

    #[test]
    fn pairing_conjugates_second_argument() {
        let u = TrigSeries::polynomial([((0, 0), GaussianRational::i())]);
        let v = TrigSeries::polynomial([((0, 0), GaussianRational::i())]);
        // <i, i> = i * conj(i) = 1
        assert_eq!(u.pairing(&v).unwrap(), GaussianRational::one());
        let w = TrigSeries::truncation([((1, 1), g(1, 1))], LatticeBox::symmetric(1, 1)).unwrap();
        assert!(u.pairing(&w).is_ok());
        // Polynomial support outside the window is rejected.
        let far = TrigSeries::delta((4, 4));
        assert!(matches!(
            far.pairing(&w),
            Err(Error::IncompleteSupport(_))
        ));
        // Two truncations cannot be paired exactly.
        let w2 = w.clone();
        assert!(matches!(w.pairing(&w2), Err(Error::BothUnbounded)));
    }

    #[test]
    fn partial_pairing_follows_reflected_convention() {
        // u with distinct rows k1 = -1, 0, 1.
        let u = TrigSeries::polynomial([
            ((-1, 2), g(7, 1)),
            ((0, 3), g(5, 1)),
            ((1, 2), g(9, 1)),
        ]);
        // <u, e^{i x1}>_{x1} picks the row k1 = -1.
        let t = TrigSeries::delta((1, 0));
        let got = u.partial_pairing_x1(&t).unwrap();
        assert_eq!(got, TrigSeries::polynomial([((0, 2), g(7, 1))]));
        // <u, 1>_{x1} picks the row k1 = 0.
        let one = TrigSeries::constant(GaussianRational::one());
        let got0 = u.partial_pairing_x1(&one).unwrap();
        assert_eq!(got0, TrigSeries::polynomial([((0, 3), g(5, 1))]));
        // For u even in x1 the e^{i x1} and e^{-i x1} pairings agree.
        let even = TrigSeries::polynomial([((1, 4), g(3, 2)), ((-1, 4), g(3, 2))]);
        let a = even.partial_pairing_x1(&TrigSeries::delta((1, 0))).unwrap();
        let b = even.partial_pairing_x1(&TrigSeries::delta((-1, 0))).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn partial_pairing_windows_project_to_axis() {
        let w = LatticeBox::new(-2, 2, -3, 5).unwrap();
        let u = TrigSeries::truncation([((1, 4), g(1, 1))], w).unwrap();
        let got = u
            .partial_pairing_x1(&TrigSeries::delta((-1, 0)))
            .unwrap();
        assert_eq!(
            got.domain(),
            Domain::Window(LatticeBox::new(0, 0, -3, 5).unwrap())
        );
        assert_eq!(got.coeff((0, 4)), g(1, 1));
        // Reading beyond the window is refused.
        let t = TrigSeries::delta((3, 0));
        assert!(matches!(
            u.partial_pairing_x1(&t),
            Err(Error::IncompleteSupport(_))
        ));
    }

    #[test]
    fn parity_projection_splits_exactly() {
        let u = TrigSeries::polynomial([((1, 0), g(3, 1)), ((-1, 0), g(1, 1)), ((0, 2), g(5, 1))]);
        let e = u.parity_project(1, true).unwrap();
        let o = u.parity_project(1, false).unwrap();
        assert_eq!(e.add(&o), u);
        assert!(e.check_parity(1, true).is_ok());
        assert!(o.check_parity(1, false).is_ok());
        assert_eq!(o.coeff((1, 0)), g(1, 1));
        assert_eq!(o.coeff((-1, 0)), g(-1, 1));
        // Asymmetric windows cannot be split.
        let w = TrigSeries::truncation([], LatticeBox::new(0, 3, 0, 0).unwrap()).unwrap();
        assert!(matches!(
            w.parity_project(1, true),
            Err(Error::AsymmetricBox { axis: 1 })
        ));
    }

    #[test]
    fn parity_check_reports_witness() {
        let u = TrigSeries::polynomial([((2, 1), g(1, 1)), ((-2, 1), g(2, 1))]);
        match u.check_parity(1, true) {
            Err(Error::ParityViolation { witness, .. }) => assert_eq!(witness.0.abs(), 2),
            other => panic!("expected parity violation, got {other:?}"),
        }
        // Odd series must vanish on the fixed axis.
        let v = TrigSeries::polynomial([((0, 1), g(1, 1))]);
        assert!(v.check_parity(1, false).is_err());
    }

    #[test]
    fn sobolev_norm_exact_integer_orders() {
        let u = TrigSeries::delta((1, 2));
        // (1 + 1 + 4)^3 = 216
        match u.sobolev_norm_sq(&rat(3), 32).unwrap() {
            NormValue::Exact(v) => assert_eq!(v, rat(216)),
            _ => panic!("integer order must be exact"),
        }
        match u.sobolev_norm_sq(&rat(-2), 32).unwrap() {
            NormValue::Exact(v) => assert_eq!(v, ratio(1, 36)),
            _ => panic!(),
        }
    }

    #[test]
    fn sobolev_norm_encloses_fractional_orders() {
        let u = TrigSeries::polynomial([((1, 0), g(1, 1)), ((0, 2), g(1, 3))]);
        let m = ratio(3, 2);
        match u.sobolev_norm_sq(&m, 48).unwrap() {
            NormValue::Enclosure { lo, hi } => {
                let expect = 2f64.powf(1.5) + 5f64.powf(1.5) / 9.0;
                let lo = crate::rational::rational_to_f64(&lo);
                let hi = crate::rational::rational_to_f64(&hi);
                assert!(lo <= expect && expect <= hi);
                assert!(hi - lo < 1e-9);
            }
            _ => panic!("fractional order must enclose"),
        }
    }

    #[test]
    fn momentum_multiplies_by_powers() {
        let u = TrigSeries::polynomial([((2, 3), g(1, 1)), ((0, 5), g(1, 1))]);
        let v = u.momentum(2, 1);
        assert_eq!(v.coeff((2, 3)), g(12, 1));
        // k1 = 0 kills the term when a1 > 0.
        assert!(v.get((0, 5)).is_none());
    }

    #[test]
    fn conj_reflects_and_conjugates() {
        let u = TrigSeries::polynomial([((1, 2), GaussianRational::from_parts(1, 2, 3, 4))]);
        let c = u.conj();
        assert_eq!(
            c.coeff((-1, -2)),
            GaussianRational::from_parts(1, 2, -3, 4)
        );
        assert_eq!(c.conj(), u);
    }
}
