//! Differential operators with trigonometric polynomial coefficients.
//!
//! An operator is kept in two equivalent shapes: the alpha form
//! `L = sum_a T_a(x) D^a` the caller writes down, and the frequency form
//! `L = sum_n e^{inx} P_n(D)` the solvers consume. Conversions and
//! applications are exact. `D = -i d/dx`, so the symbol of `d/dx1` is
//! `i xi1`.

use crate::error::{Error, Result};
use crate::lattice::{Domain, LatticeBox, LatticeIndex};
use crate::rational::GaussianRational;
use crate::series::TrigSeries;
use crate::symbol::{MultiIndex, SymbolPolynomial};
use num::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct TorusOperator {
    alpha_form: Vec<(MultiIndex, TrigSeries)>,
    freq_form: BTreeMap<LatticeIndex, SymbolPolynomial>,
    s1: i64,
    s2: i64,
}

impl TorusOperator {
    /// Build from the alpha form. Every coefficient must be a trigonometric
    /// polynomial (entire declared support); duplicates of the same
    /// multi-index are merged.
    pub fn from_alpha_form(
        terms: impl IntoIterator<Item = (MultiIndex, TrigSeries)>,
    ) -> Result<Self> {
        let mut merged: BTreeMap<MultiIndex, TrigSeries> = BTreeMap::new();
        for (alpha, t) in terms {
            if !t.domain().is_entire() {
                return Err(Error::Contract(
                    "operator coefficients must be trigonometric polynomials".into(),
                ));
            }
            let entry = merged
                .entry(alpha)
                .or_insert_with(TrigSeries::zero);
            *entry = entry.add(&t);
        }
        merged.retain(|_, t| !t.is_zero());

        let mut freq: BTreeMap<LatticeIndex, SymbolPolynomial> = BTreeMap::new();
        let (mut s1, mut s2) = (0i64, 0i64);
        for (alpha, t) in &merged {
            for (&n, c) in t.iter() {
                s1 = s1.max(n.0.abs());
                s2 = s2.max(n.1.abs());
                freq.entry(n)
                    .or_insert_with(SymbolPolynomial::zero)
                    .accumulate((alpha.a1, alpha.a2), c);
            }
        }
        freq.retain(|_, p| !p.is_zero());

        Ok(TorusOperator {
            alpha_form: merged.into_iter().collect(),
            freq_form: freq,
            s1,
            s2,
        })
    }

    /// The constant-coefficient operator `P(D)`.
    pub fn from_symbol(p: &SymbolPolynomial) -> Self {
        let terms: Vec<(MultiIndex, TrigSeries)> = p
            .iter()
            .map(|(&(a1, a2), c)| (MultiIndex::new(a1, a2), TrigSeries::constant(c.clone())))
            .collect();
        TorusOperator::from_alpha_form(terms).expect("constants are entire")
    }

    /// The periodic model operator `d/dx1 + i sin(x1) d/dx2`, written in
    /// `D` form as `i D1 - sin(x1) D2`.
    pub fn mizohata() -> Self {
        let half_i = GaussianRational::from_parts(0, 1, 1, 2);
        let minus_sin_x1 = TrigSeries::polynomial([
            ((1, 0), half_i.clone()),
            ((-1, 0), -&half_i),
        ]);
        TorusOperator::from_alpha_form([
            (MultiIndex::new(1, 0), TrigSeries::constant(GaussianRational::i())),
            (MultiIndex::new(0, 1), minus_sin_x1),
        ])
        .expect("entire coefficients")
    }

    pub fn alpha_form(&self) -> &[(MultiIndex, TrigSeries)] {
        &self.alpha_form
    }

    pub fn freq_form(&self) -> &BTreeMap<LatticeIndex, SymbolPolynomial> {
        &self.freq_form
    }

    /// Coefficient frequency radii `(s1, s2)`.
    pub fn shifts(&self) -> (i64, i64) {
        (self.s1, self.s2)
    }

    /// The zero-frequency symbol `P_0`, if present.
    pub fn zero_symbol(&self) -> Option<&SymbolPolynomial> {
        self.freq_form.get(&(0, 0))
    }

    /// Differential order: the largest total symbol degree.
    pub fn order(&self) -> u32 {
        self.freq_form
            .values()
            .filter_map(|p| p.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.freq_form.is_empty()
    }

    /// Multiply every coefficient by `e^{inx}`, shifting the frequency
    /// support.
    pub fn modulate(&self, n: LatticeIndex) -> Self {
        TorusOperator::from_alpha_form(
            self.alpha_form
                .iter()
                .map(|(alpha, t)| (*alpha, t.shift(n))),
        )
        .expect("shifted coefficients stay entire")
    }

    /// The region where `Lu` is completely determined by the stored window
    /// of `u`: the intersection of the window translated by each frequency
    /// shift. (For symmetric frequency support this is the usual shrink by
    /// `(s1, s2)`.)
    pub fn output_domain(&self, d: &Domain) -> Result<Domain> {
        let window = match d {
            Domain::Entire => return Ok(Domain::Entire),
            Domain::Empty => return Ok(Domain::Empty),
            Domain::Window(b) => b,
        };
        let mut acc: Option<LatticeBox> = None;
        for &n in self.freq_form.keys() {
            let t = window.translate(n);
            acc = Some(match acc {
                None => t,
                Some(a) => a.intersect(&t).ok_or_else(|| {
                    Error::EmptyBox(format!(
                        "window {} shrinks to nothing under the frequency shifts",
                        window
                    ))
                })?,
            });
        }
        // A zero operator yields the zero series, complete everywhere.
        Ok(acc.map_or(Domain::Entire, Domain::Window))
    }

    /// Apply through the frequency form: `(Lu)_k = sum_n P_n(k-n) u_{k-n}`,
    /// keeping only coefficients inside the certainly-complete region.
    pub fn apply(&self, u: &TrigSeries) -> Result<TrigSeries> {
        let domain = self.output_domain(&u.domain())?;
        let mut acc: BTreeMap<LatticeIndex, GaussianRational> = BTreeMap::new();
        for (&k, c) in u.iter() {
            for (&n, p) in &self.freq_form {
                let v = &p.eval(k) * c;
                if v.is_zero() {
                    continue;
                }
                let m = (k.0 + n.0, k.1 + n.1);
                let entry = acc.entry(m).or_insert_with(GaussianRational::zero);
                *entry += &v;
                if entry.is_zero() {
                    acc.remove(&m);
                }
            }
        }
        Ok(match domain {
            Domain::Entire => TrigSeries::polynomial(acc),
            Domain::Empty => TrigSeries::empty(),
            Domain::Window(b) => {
                acc.retain(|&m, _| b.contains(m));
                TrigSeries::truncation(acc, b).expect("clipped to the window")
            }
        })
    }

    /// Apply through the alpha form: `sum_a T_a * (D^a u)`. Exactly equal
    /// to `apply` whenever no frequency cancellation occurs in the
    /// conversion; used as an independent route for cross-checks.
    pub fn apply_alpha_form(&self, u: &TrigSeries) -> Result<TrigSeries> {
        let mut acc = match u.domain() {
            Domain::Empty => TrigSeries::empty(),
            _ => TrigSeries::zero(),
        };
        for (alpha, t) in &self.alpha_form {
            let term = t.multiply(&u.momentum(alpha.a1, alpha.a2))?;
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Decide, for every stored frequency, whether its symbol vanishes at a
    /// nonzero integer point. Homogeneous symbols are decided exactly by
    /// the rational-root reduction; everything else is scanned over the
    /// given box and reported honestly as a box-limited verdict.
    pub fn check_assumption1(&self, search_box: &LatticeBox) -> AssumptionVerdict {
        let mut all_certified = true;
        for (&n, p) in &self.freq_form {
            match decide_nonzero_lattice_zeros(p, search_box) {
                ZeroFinding::NoneCertified => {}
                ZeroFinding::NoneOnBox => all_certified = false,
                ZeroFinding::Witness(m) => {
                    return AssumptionVerdict::Fails {
                        frequency: n,
                        witness: m,
                    }
                }
            }
        }
        if all_certified {
            AssumptionVerdict::HoldsCertified
        } else {
            AssumptionVerdict::HoldsOnBox {
                searched: *search_box,
            }
        }
    }

    /// The weaker pointwise condition: some symbol survives at `m`.
    pub fn check_weak_assumption(&self, m: LatticeIndex) -> bool {
        self.freq_form.values().any(|p| !p.eval(m).is_zero())
    }
}

/// Verdict tiers for the no-integer-zeros condition on the frequency
/// symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssumptionVerdict {
    HoldsCertified,
    HoldsOnBox { searched: LatticeBox },
    Fails {
        frequency: LatticeIndex,
        witness: LatticeIndex,
    },
}

impl AssumptionVerdict {
    pub fn holds(&self) -> bool {
        !matches!(self, AssumptionVerdict::Fails { .. })
    }
}

enum ZeroFinding {
    NoneCertified,
    NoneOnBox,
    Witness(LatticeIndex),
}

/// Zeros are sought over nonzero integer points. A complex symbol vanishes
/// where its real and imaginary parts both vanish.
fn decide_nonzero_lattice_zeros(p: &SymbolPolynomial, search_box: &LatticeBox) -> ZeroFinding {
    use crate::hypo::HomogeneousPoly;
    debug_assert!(!p.is_zero(), "zero symbols are never stored");
    if p.total_degree() == Some(0) {
        return ZeroFinding::NoneCertified;
    }
    if let Some(d) = p.homogeneous_degree() {
        if d >= 1 {
            // Split into real and imaginary parts; common zero directions
            // are zero directions of either nonzero part, checked against
            // the other.
            let re = HomogeneousPoly::new(p.iter().map(|(&k, c)| (k, c.re.clone()))).ok();
            let im = HomogeneousPoly::new(p.iter().map(|(&k, c)| (k, c.im.clone()))).ok();
            let (lead, other) = match (&re, &im) {
                (Some(r), o) => (r, o.clone()),
                (None, Some(i)) => (i, None),
                (None, None) => unreachable!("nonzero symbol has a nonzero part"),
            };
            for w in lead.integer_lattice_zeros() {
                if other.as_ref().map_or(true, |q| q.eval(w).is_zero()) {
                    return ZeroFinding::Witness(w);
                }
            }
            return ZeroFinding::NoneCertified;
        }
    }
    if positivity_certificate(p) {
        return ZeroFinding::NoneCertified;
    }
    for m in search_box.iter() {
        if m == (0, 0) {
            continue;
        }
        if p.eval(m).is_zero() {
            return ZeroFinding::Witness(m);
        }
    }
    ZeroFinding::NoneOnBox
}

/// Sufficient sign condition: one of the parts has only even exponents,
/// strictly one-signed coefficients, and a nonzero constant term, so its
/// magnitude never drops below that constant.
fn positivity_certificate(p: &SymbolPolynomial) -> bool {
    use num::Signed;
    for part in [
        p.iter().map(|(&k, c)| (k, c.re.clone())).collect::<Vec<_>>(),
        p.iter().map(|(&k, c)| (k, c.im.clone())).collect::<Vec<_>>(),
    ] {
        let nonzero: Vec<_> = part.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if nonzero.is_empty() {
            continue;
        }
        let has_constant = nonzero.iter().any(|&((a1, a2), _)| a1 == 0 && a2 == 0);
        let all_even = nonzero
            .iter()
            .all(|&((a1, a2), _)| a1 % 2 == 0 && a2 % 2 == 0);
        let positive = nonzero.iter().all(|(_, c)| c.is_positive());
        let negative = nonzero.iter().all(|(_, c)| c.is_negative());
        if has_constant && all_even && (positive || negative) {
            return true;
        }
    }
    false
}
