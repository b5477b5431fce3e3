//! Linear sections of the space of formal trigonometric series.
//!
//! A section is the set of series dominated by a growth envelope, up
//! to a constant. Finitely generated sections form a distributive
//! lattice under sup (pointwise max of generators) and inf (pointwise
//! min); this module realizes that lattice over [`EnvelopeExpr`] trees
//! together with the order relation on concrete series, duality, and
//! the action of an operator on sections.

pub mod envelope;
pub mod value;

pub use envelope::{
    atom_leq, compare_envelopes, probe_ratio_trend, AtomEnvelope, Comparison, EnvelopeExpr,
    Trend,
};
pub use value::LogValue;

use crate::error::{Error, Result};
use crate::growth::{ln_abs, SpaceTag};
use crate::hypo::{self, HomogeneousPoly, HypoCertificate, HypoVerdict};
use crate::lattice::{LatticeBox, LatticeIndex};
use crate::linalg::SparseSystem;
use crate::numeric::sqrt_upper_bound;
use crate::operator::{AssumptionVerdict, TorusOperator};
use crate::rational::{rational_to_f64, GaussianRational};
use crate::series::TrigSeries;
use num::{BigInt, BigRational, FromPrimitive, Zero};
use std::collections::BTreeMap;

/// A principal linear section, named by its generating envelope:
/// the series `u` with `|u_k| <= C * generator(k)` for some `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub generator: EnvelopeExpr,
}

impl Section {
    /// Wrap a generator, pruning dominated leaves.
    pub fn new(generator: EnvelopeExpr) -> Self {
        Section {
            generator: generator.simplify(),
        }
    }

    pub fn atom(a: AtomEnvelope) -> Self {
        Section::new(EnvelopeExpr::Atom(a))
    }

    /// Symbolic inclusion test between sections; sound, incomplete.
    pub fn le(&self, other: &Section) -> Comparison {
        compare_envelopes(&self.generator, &other.generator)
    }
}

/// `sup(α, β) = α + β`: the section generated by the pointwise max.
pub fn section_sup(s1: &Section, s2: &Section) -> Section {
    Section::new(EnvelopeExpr::max_of(vec![
        s1.generator.clone(),
        s2.generator.clone(),
    ]))
}

/// `inf(α, β) = α ∩ β`: the section generated by the pointwise min.
pub fn section_inf(s1: &Section, s2: &Section) -> Section {
    Section::new(EnvelopeExpr::min_of(vec![
        s1.generator.clone(),
        s2.generator.clone(),
    ]))
}

/// Outcome of the box-restricted order test between two series.
#[derive(Debug, Clone)]
pub enum RegularityVerdict {
    /// `|u_k| <= C |v_k|` everywhere on the box, with the minimal `C`.
    YesOnBox {
        /// Exact square of the minimal constant.
        c_sq: BigRational,
        /// Rational upper bound for the constant itself.
        c_upper: BigRational,
        /// Innermost index attaining the maximal ratio.
        attained_at: Option<LatticeIndex>,
        /// False when the maximum is only attained on the outermost
        /// shell of the box, so growing the box will likely grow `C`.
        stabilizing: bool,
    },
    /// `v` vanishes where `u` does not: no constant works.
    No { witness: LatticeIndex },
}

/// Decide `u more regular than v` on the probe box: the minimal `C`
/// with `|u_k| <= C |v_k|` on the box, or a witness where the ratio is
/// undefined. A box verdict, not an asymptotic one; indices where both
/// vanish are ignored.
pub fn more_regular(
    u: &TrigSeries,
    v: &TrigSeries,
    probe: &LatticeBox,
) -> Result<RegularityVerdict> {
    u.require_complete(probe, "left series")?;
    v.require_complete(probe, "right series")?;
    let shell = |k: LatticeIndex| k.0.abs().max(k.1.abs());
    let probe_shell = probe
        .n1_min
        .abs()
        .max(probe.n1_max.abs())
        .max(probe.n2_min.abs())
        .max(probe.n2_max.abs());
    let mut c_sq = BigRational::zero();
    let mut attained: Option<(i64, LatticeIndex)> = None;
    for k in probe.iter() {
        let num = u.coeff(k).abs_sq();
        let den = v.coeff(k).abs_sq();
        if den.is_zero() {
            if !num.is_zero() {
                return Ok(RegularityVerdict::No { witness: k });
            }
            continue;
        }
        let ratio = num / den;
        let s = shell(k);
        match ratio.cmp(&c_sq) {
            std::cmp::Ordering::Greater => {
                c_sq = ratio;
                attained = Some((s, k));
            }
            std::cmp::Ordering::Equal => {
                if let Some((best_s, _)) = attained {
                    if s < best_s {
                        attained = Some((s, k));
                    }
                }
            }
            std::cmp::Ordering::Less => {}
        }
    }
    Ok(RegularityVerdict::YesOnBox {
        c_upper: sqrt_upper_bound(&c_sq, 32),
        c_sq,
        attained_at: attained.map(|(_, k)| k),
        stabilizing: attained.map_or(true, |(s, _)| s < probe_shell),
    })
}

/// The conjugate space of a growth tag; an involution.
pub fn dual_space(tag: &SpaceTag) -> SpaceTag {
    tag.dual()
}

/// Trend of the partial sums `Σ |u_k| gen(k)` over expanding shells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummabilityTrend {
    Summable,
    NonSummable,
    Borderline,
}

/// Box-restricted verdict on membership of `u` in the predual class of
/// a section: whether `Σ |u_k| gen(k)` looks convergent.
#[derive(Debug, Clone)]
pub struct MembershipVerdict {
    pub trend: SummabilityTrend,
    /// `(shell, ln of the shell's contribution to the sum)`.
    pub shell_increments: Vec<(i64, f64)>,
    pub note: &'static str,
}

fn logsumexp(terms: &[f64]) -> f64 {
    let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return f64::NEG_INFINITY;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

/// Test `Σ |u_k| gen(k)` for boundedness by scanning per-shell
/// contributions on the probe box. HEURISTIC: a growth trend over
/// finitely many shells, not a convergence proof.
pub fn dual_membership(
    u: &TrigSeries,
    s: &Section,
    probe: &LatticeBox,
) -> Result<MembershipVerdict> {
    u.require_complete(probe, "series")?;
    let s_max = probe
        .n1_max
        .min(-probe.n1_min)
        .min(probe.n2_max)
        .min(-probe.n2_min);
    if s_max < 2 {
        return Err(Error::Inconclusive(
            "probe box too small for a shell trend".into(),
        ));
    }
    let mut per_shell: Vec<Vec<f64>> = vec![Vec::new(); (s_max + 1) as usize];
    for (k, v) in u.iter() {
        let sh = k.0.abs().max(k.1.abs());
        if sh > s_max {
            continue;
        }
        per_shell[sh as usize].push(ln_abs(v) + s.generator.ln_f64(*k));
    }
    let shell_increments: Vec<(i64, f64)> = per_shell
        .iter()
        .enumerate()
        .map(|(sh, terms)| (sh as i64, logsumexp(terms)))
        .collect();
    let tail: Vec<f64> = shell_increments[shell_increments.len() / 2..]
        .iter()
        .map(|(_, v)| *v)
        .collect();
    let trend = if tail.iter().all(|v| !v.is_finite()) {
        SummabilityTrend::Summable // tail shells contribute nothing
    } else {
        let deltas: Vec<f64> = tail
            .windows(2)
            .filter(|w| w[0].is_finite() && w[1].is_finite())
            .map(|w| w[1] - w[0])
            .collect();
        if deltas.is_empty() {
            SummabilityTrend::Borderline
        } else {
            let mean = deltas.iter().sum::<f64>() / deltas.len() as f64;
            if mean < -0.1 {
                SummabilityTrend::Summable
            } else if mean > 0.1 {
                SummabilityTrend::NonSummable
            } else {
                SummabilityTrend::Borderline
            }
        }
    };
    Ok(MembershipVerdict {
        trend,
        shell_increments,
        note: "HEURISTIC: partial-sum trend on a finite box",
    })
}

/// Image of a section under an operator: each atom's polynomial
/// exponent grows by half the operator order, everything else is
/// preserved. An asymptotic upper-bound rule: symbols add at most
/// degree `d` per application and shifts do not move growth classes.
pub fn operator_image(l: &TorusOperator, s: &Section) -> Section {
    let half_order = BigRational::new(BigInt::from(l.order()), BigInt::from(2));
    Section::new(s.generator.map_atoms(&|a| {
        let mut out = a.clone();
        out.a += &half_order;
        out
    }))
}

/// Exact-at-`k` logarithm of the derived image envelope
/// `w'(k) = Σ_n |P_n(k-n)| w(k-n)`, for probing the atom rule.
pub fn image_value_ln_f64(l: &TorusOperator, s: &Section, k: LatticeIndex) -> f64 {
    let mut terms = Vec::new();
    for (&n, p) in l.freq_form() {
        let src = (k.0 - n.0, k.1 - n.1);
        let c = p.eval(src);
        if c.is_zero() {
            continue;
        }
        terms.push(0.5 * rational_to_f64(&c.abs_sq()).ln() + s.generator.ln_f64(src));
    }
    logsumexp(&terms)
}

/// How a solution section was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionMode {
    /// Pointwise division by the symbol; atoms shifted by `-order/2`.
    ConstCoeff,
    /// The factorial gain of the column recurrences (`c1 + 1`).
    MizohataFactorial,
    /// Fitted from a Galerkin solve on a box; labeled EMPIRICAL.
    Empirical,
}

/// The maximal section `β` with `L β ⊆ G`, as computably approximated.
#[derive(Debug, Clone)]
pub struct SolutionReport {
    pub section: Section,
    pub mode: SolutionMode,
    /// A containing space claimed for the solution class, when one is.
    pub containment: Option<SpaceTag>,
    /// Whether the atom form is backed by a certificate (elliptic
    /// two-sided symbol bounds) rather than an asymptotic heuristic.
    pub certified_atoms: bool,
    pub note: &'static str,
}

/// Exact logarithm of the constant-coefficient solution generator
/// `w_G(k)/|P_0(k)|` at one lattice point; `None` where `P_0(k) = 0`.
pub fn solution_value_ln_f64(l: &TorusOperator, g: &Section, k: LatticeIndex) -> Option<f64> {
    let p0 = l.zero_symbol()?;
    let v = p0.eval(k);
    if v.is_zero() {
        return None;
    }
    Some(g.generator.ln_f64(k) - 0.5 * rational_to_f64(&v.abs_sq()).ln())
}

const ASSUMPTION_SEARCH_RADIUS: i64 = 32;
const EMPIRICAL_RADIUS: i64 = 10;

/// Compute the solution section of `L u = G`.
///
/// Three regimes, in order: the Mizohata operator is matched
/// structurally and returns the factorial gain of its column
/// recurrences together with the claimed containment in
/// `l1*(|k1|!)` (its zero-frequency symbol vanishes on a lattice
/// line, so the general route below would refuse it); for every other
/// operator the no-lattice-zeros assumption is enforced first;
/// constant-coefficient symbols then divide pointwise (atom exponent
/// drops by half the order, certified in the elliptic case); anything
/// else is fitted from a box solve and labeled EMPIRICAL.
pub fn solution_section(l: &TorusOperator, g: &Section) -> Result<SolutionReport> {
    if l.freq_form() == TorusOperator::mizohata().freq_form() {
        let one = BigRational::from_integer(1.into());
        let section = Section::new(g.generator.map_atoms(&|a| {
            let mut out = a.clone();
            out.c1 += &one;
            out
        }));
        return Ok(SolutionReport {
            section,
            mode: SolutionMode::MizohataFactorial,
            containment: Some(SpaceTag::L1FactDual { axis: 1 }),
            certified_atoms: false,
            note: "column recurrences gain one factorial order in k1",
        });
    }
    let search = LatticeBox::symmetric(ASSUMPTION_SEARCH_RADIUS, ASSUMPTION_SEARCH_RADIUS);
    if let AssumptionVerdict::Fails { frequency, witness } = l.check_assumption1(&search) {
        return Err(Error::Contract(format!(
            "solvability assumption fails: symbol at frequency ({}, {}) vanishes at ({}, {})",
            frequency.0, frequency.1, witness.0, witness.1
        )));
    }

    let is_const = l.freq_form().len() == 1 && l.zero_symbol().is_some();
    if is_const {
        let p0 = l.zero_symbol().expect("checked");
        let half_order = BigRational::new(BigInt::from(l.order()), BigInt::from(2));
        let section = Section::new(g.generator.map_atoms(&|a| {
            let mut out = a.clone();
            out.a -= &half_order;
            out
        }));
        let elliptic = HomogeneousPoly::from_symbol(p0)
            .ok()
            .map(|hp| hypo::classify(&hp, hypo::DEFAULT_DEGREE_CAP))
            .is_some_and(|r| {
                matches!(
                    r.verdict,
                    HypoVerdict::Hypoelliptic {
                        certificate: HypoCertificate::Elliptic
                    }
                )
            });
        return Ok(SolutionReport {
            section,
            mode: SolutionMode::ConstCoeff,
            containment: None,
            certified_atoms: elliptic,
            note: if elliptic {
                "elliptic symbol: two-sided bounds make the atom shift sharp"
            } else {
                "atom shift assumes full-order symbol growth; pointwise \
                 generator is exact where the symbol is nonzero"
            },
        });
    }

    empirical_solution(l, g)
}

/// Galerkin solve on a box with the generator sampled as right-hand
/// side, then a least-squares envelope fit to the solution.
fn empirical_solution(l: &TorusOperator, g: &Section) -> Result<SolutionReport> {
    let b = LatticeBox::symmetric(EMPIRICAL_RADIUS, EMPIRICAL_RADIUS);
    let cols: BTreeMap<LatticeIndex, usize> =
        b.iter().enumerate().map(|(i, k)| (k, i)).collect();
    // Normalize the sampled envelope so the rationalized values stay
    // inside the f64 range; a global scale does not move the envelope
    // class of the solution.
    let ln_peak = b
        .iter()
        .map(|k| g.generator.ln_f64(k))
        .fold(f64::NEG_INFINITY, f64::max);
    let origin_zero = l
        .zero_symbol()
        .map_or(true, |p| p.eval((0, 0)).is_zero());
    let mut sys = SparseSystem::new(cols.len());
    for k in b.iter() {
        if k == (0, 0) && origin_zero {
            // The origin equation is the solvability condition; pin the
            // mean instead of imposing it on truncated data.
            sys.add_equation([(cols[&k], GaussianRational::one())], GaussianRational::zero());
            continue;
        }
        let mut row = Vec::new();
        for (&n, p) in l.freq_form() {
            let src = (k.0 - n.0, k.1 - n.1);
            if !b.contains(src) {
                continue;
            }
            let c = p.eval(src);
            if !c.is_zero() {
                row.push((cols[&src], c));
            }
        }
        let sample = (g.generator.ln_f64(k) - ln_peak).exp();
        let rhs = BigRational::from_f64(sample).unwrap_or_else(BigRational::zero);
        sys.add_equation(row, GaussianRational::real(rhs));
    }
    let sol = sys
        .solve()
        .map_err(|e| Error::Inconclusive(format!("empirical box solve failed: {e}")))?;

    // Fit ln|u_k| against the atom features on interior points.
    let mut pts = Vec::new();
    for (&k, &i) in &cols {
        if k.0.abs().max(k.1.abs()) > EMPIRICAL_RADIUS / 2 {
            continue;
        }
        let v = &sol.values[i];
        if v.is_zero() {
            continue;
        }
        pts.push((k, ln_abs(v)));
    }
    let atom = fit_atom(&pts).ok_or_else(|| {
        Error::Inconclusive("too little solve data to fit an envelope".into())
    })?;
    Ok(SolutionReport {
        section: Section::atom(atom),
        mode: SolutionMode::Empirical,
        containment: None,
        certified_atoms: false,
        note: "EMPIRICAL: least-squares envelope of a box solve",
    })
}

/// Least-squares fit of `(a, b1, b2, c1, c2)` to `ln|u_k|` samples.
fn fit_atom(pts: &[(LatticeIndex, f64)]) -> Option<AtomEnvelope> {
    if pts.len() < 12 {
        return None;
    }
    let lnfact = |t: i64| (2..=t).map(|i| (i as f64).ln()).sum::<f64>();
    let features = |k: LatticeIndex| {
        [
            ((1 + k.0 * k.0 + k.1 * k.1) as f64).ln(),
            k.0.abs() as f64,
            k.1.abs() as f64,
            lnfact(k.0.abs()),
            lnfact(k.1.abs()),
            1.0,
        ]
    };
    const N: usize = 6;
    let mut ata = [[0.0f64; N]; N];
    let mut aty = [0.0f64; N];
    for (k, y) in pts {
        let x = features(*k);
        for i in 0..N {
            for j in 0..N {
                ata[i][j] += x[i] * x[j];
            }
            aty[i] += x[i] * y;
        }
    }
    let beta = solve_dense(&mut ata, &mut aty)?;
    let snap = |x: f64| {
        let x = if x.abs() < 0.05 { 0.0 } else { x };
        BigRational::new(BigInt::from((x * 1000.0).round() as i64), BigInt::from(1000))
    };
    Some(AtomEnvelope::new(
        snap(beta[0]),
        snap(beta[1]),
        snap(beta[2]),
        snap(beta[3]),
        snap(beta[4]),
    ))
}

fn solve_dense<const N: usize>(a: &mut [[f64; N]; N], b: &mut [f64; N]) -> Option<[f64; N]> {
    for col in 0..N {
        let pivot = (col..N).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
        })?;
        if a[pivot][col].abs() < 1e-9 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..N {
            if row == col {
                continue;
            }
            let f = a[row][col] / a[col][col];
            for j in col..N {
                a[row][j] -= f * a[col][j];
            }
            b[row] -= f * b[col];
        }
    }
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = b[i] / a[i][i];
    }
    Some(out)
}
