//! Heuristic growth classification of truncated series against the
//! scale of generalized-function spaces.
//!
//! The chain, from most to least regular, is
//!
//! ```text
//! L1Fact ⊂ E0 ⊂ Hinf ⊂ Hm ⊂ HminusInf ⊂ E0dual ⊂ L1FactDual
//! ```
//!
//! Membership in any of these is an asymptotic statement, and a finite
//! box can only vote: except for the eventually-zero case everything
//! here is a least-squares fit over per-shell maxima and is labeled as
//! such. Floats appear in this module only; all certified computation
//! elsewhere in the crate stays rational.

use crate::error::{Error, Result};
use crate::lattice::Domain;
use crate::numeric::fit_line;
use crate::rational::rational_to_f64;
use crate::series::TrigSeries;
use num::rational::BigRational;
use num::BigInt;

/// Fewest nonzero shells the classifier accepts by default.
pub const DEFAULT_MIN_SHELLS: usize = 6;

/// Best-fit models with a relative residual above this are discarded.
pub const FIT_TOLERANCE: f64 = 0.1;

/// A coefficient-growth space in the dual chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceTag {
    /// Summable against `(|k_axis|!)`: faster-than-factorial decay.
    L1Fact { axis: u8 },
    /// Exponential decay (entire-function scale).
    E0,
    /// Rapid decay: in every Sobolev space.
    Hinf,
    /// The Sobolev space of order `m`.
    Hm { m: BigRational },
    /// Polynomially bounded: in some Sobolev space (a distribution).
    HminusInf,
    /// Exponentially bounded (analytic-functional scale).
    E0dual,
    /// Factorially bounded along one axis.
    L1FactDual { axis: u8 },
}

impl SpaceTag {
    /// The conjugate space. An involution: `Hm(m)` pairs with `Hm(-m)`
    /// and each bounded-growth class pairs with its summable class.
    pub fn dual(&self) -> SpaceTag {
        match self {
            SpaceTag::L1Fact { axis } => SpaceTag::L1FactDual { axis: *axis },
            SpaceTag::L1FactDual { axis } => SpaceTag::L1Fact { axis: *axis },
            SpaceTag::E0 => SpaceTag::E0dual,
            SpaceTag::E0dual => SpaceTag::E0,
            SpaceTag::Hinf => SpaceTag::HminusInf,
            SpaceTag::HminusInf => SpaceTag::Hinf,
            SpaceTag::Hm { m } => SpaceTag::Hm { m: -m.clone() },
        }
    }

    /// Position in the regularity chain; smaller is more regular.
    pub fn regularity_rank(&self) -> u8 {
        match self {
            SpaceTag::L1Fact { .. } => 0,
            SpaceTag::E0 => 1,
            SpaceTag::Hinf => 2,
            SpaceTag::Hm { .. } => 3,
            SpaceTag::HminusInf => 4,
            SpaceTag::E0dual => 5,
            SpaceTag::L1FactDual { .. } => 6,
        }
    }
}

impl std::fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpaceTag::L1Fact { axis } => write!(f, "l1(|k{axis}|!)"),
            SpaceTag::E0 => write!(f, "E0"),
            SpaceTag::Hinf => write!(f, "H^inf"),
            SpaceTag::Hm { m } => write!(f, "H^({m})"),
            SpaceTag::HminusInf => write!(f, "H^-inf"),
            SpaceTag::E0dual => write!(f, "E0*"),
            SpaceTag::L1FactDual { axis } => write!(f, "l1*(|k{axis}|!)"),
        }
    }
}

/// The growth law a fit compares the shell maxima against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthModel {
    /// `ln M(s)` against `ln(1 + s^2)`: rate `a` means `M ~ (1+s^2)^a`.
    Polynomial,
    /// `ln M(s)` against `s`: rate `r` means `M ~ e^{rs}`.
    Exponential,
    /// `ln M(t)` against `ln t!` on one axis profile: rate `c` means
    /// `M ~ (t!)^c`.
    Factorial { axis: u8 },
}

/// Least-squares diagnostics for one model.
#[derive(Debug, Clone)]
pub struct ModelFit {
    pub model: GrowthModel,
    pub rate: f64,
    pub intercept: f64,
    /// RMS residual over the RMS spread of the ordinates.
    pub relative_residual: f64,
    pub points: usize,
}

/// Classification outcome. Everything except the eventually-zero path
/// is a vote from finite data, never a certificate.
#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub tag: SpaceTag,
    /// Model chosen by the residual comparison; `None` on exact paths.
    pub chosen: Option<GrowthModel>,
    /// All fits computed, for display and plotting.
    pub fits: Vec<ModelFit>,
    /// `(shell index, max |u_k| on the shell)` used by the fits.
    pub shell_maxima: Vec<(i64, f64)>,
    pub note: &'static str,
}

pub const HEURISTIC_NOTE: &str =
    "HEURISTIC: fitted from finitely many shells; no asymptotic certificate";
const EXACT_NOTE: &str = "exact: coefficients are eventually zero on the observed region";

fn model_fit(model: GrowthModel, pts: &[(f64, f64)]) -> Option<ModelFit> {
    fit_line(pts).map(|lf| ModelFit {
        model,
        rate: lf.slope,
        intercept: lf.intercept,
        relative_residual: lf.rel_residual,
        points: lf.points,
    })
}

/// Natural log of `|v|` robust to magnitudes outside the f64 range.
pub(crate) fn ln_abs(v: &crate::rational::GaussianRational) -> f64 {
    let sq = v.abs_sq();
    let approx = rational_to_f64(&sq);
    if approx.is_finite() && approx > 0.0 {
        return 0.5 * approx.ln();
    }
    let bits = |x: &BigInt| x.bits() as f64;
    0.5 * (bits(sq.numer()) - bits(sq.denom())) * std::f64::consts::LN_2
}

fn ln_factorial(t: i64) -> f64 {
    (2..=t).map(|i| (i as f64).ln()).sum()
}

/// Classify with the default minimum shell count.
pub fn classify_growth(u: &TrigSeries) -> Result<GrowthReport> {
    classify_growth_with(u, DEFAULT_MIN_SHELLS)
}

/// Classify the growth of `u` from per-shell maxima over the shells
/// `max(|k1|, |k2|) = s` that the declared region covers completely.
///
/// Exact shortcut: a series that is eventually zero on the observed
/// region is `Hinf`. Otherwise polynomial, exponential and per-axis
/// factorial laws are fitted; the best residual under
/// [`FIT_TOLERANCE`] wins, with near-ties broken toward the more
/// regular space. Refuses (rather than guesses) when fewer than
/// `min_shells` nonzero shells are available or no model fits.
pub fn classify_growth_with(u: &TrigSeries, min_shells: usize) -> Result<GrowthReport> {
    let window = match u.domain() {
        Domain::Entire => {
            return Ok(GrowthReport {
                tag: SpaceTag::Hinf,
                chosen: None,
                fits: Vec::new(),
                shell_maxima: Vec::new(),
                note: EXACT_NOTE,
            });
        }
        Domain::Empty => {
            return Err(Error::Inconclusive(
                "series carries no completeness region to classify".into(),
            ))
        }
        Domain::Window(w) => w,
    };
    let s_max = window
        .n1_max
        .min(-window.n1_min)
        .min(window.n2_max)
        .min(-window.n2_min);
    if s_max < 0 {
        return Err(Error::Inconclusive(
            "declared region contains no complete shell around the origin".into(),
        ));
    }

    let shell = |k: (i64, i64)| k.0.abs().max(k.1.abs());
    let mut shell_ln = vec![f64::NEG_INFINITY; (s_max + 1) as usize];
    let mut axis_ln = [
        vec![f64::NEG_INFINITY; (s_max + 1) as usize],
        vec![f64::NEG_INFINITY; (s_max + 1) as usize],
    ];
    let mut last_nonzero: Option<i64> = None;
    for (k, v) in u.iter() {
        let s = shell(*k);
        if s > s_max {
            continue;
        }
        let y = ln_abs(v);
        let si = s as usize;
        shell_ln[si] = shell_ln[si].max(y);
        let a1 = k.0.abs() as usize;
        let a2 = k.1.abs() as usize;
        axis_ln[0][a1] = axis_ln[0][a1].max(y);
        axis_ln[1][a2] = axis_ln[1][a2].max(y);
        last_nonzero = Some(last_nonzero.map_or(s, |c: i64| c.max(s)));
    }

    let shell_maxima: Vec<(i64, f64)> = shell_ln
        .iter()
        .enumerate()
        .map(|(s, y)| (s as i64, if y.is_finite() { y.exp() } else { 0.0 }))
        .collect();
    let exact = |tag| {
        Ok(GrowthReport {
            tag,
            chosen: None,
            fits: Vec::new(),
            shell_maxima: shell_maxima.clone(),
            note: EXACT_NOTE,
        })
    };
    match last_nonzero {
        None => return exact(SpaceTag::Hinf),
        Some(last) if last + 2 <= s_max => return exact(SpaceTag::Hinf),
        _ => {}
    }

    let pts: Vec<(i64, f64)> = shell_ln
        .iter()
        .enumerate()
        .filter(|(_, y)| y.is_finite())
        .map(|(s, y)| (s as i64, *y))
        .collect();
    if pts.len() < min_shells {
        return Err(Error::Inconclusive(format!(
            "only {} nonzero shells available, need at least {min_shells}",
            pts.len()
        )));
    }

    let mut fits = Vec::new();
    let mut candidates: Vec<(ModelFit, SpaceTag)> = Vec::new();

    let poly_pts: Vec<(f64, f64)> = pts
        .iter()
        .map(|&(s, y)| (((1 + s * s) as f64).ln(), y))
        .collect();
    if let Some(fit) = model_fit(GrowthModel::Polynomial, &poly_pts) {
        // M ~ (1+s^2)^a gives convergence of the H^m sum exactly below
        // m = -2a - 1; decay maps to that Sobolev order, growth to the
        // tempered class.
        let tag = if fit.rate < -0.025 {
            let m_est = -2.0 * fit.rate - 1.0;
            SpaceTag::Hm {
                m: BigRational::new(
                    BigInt::from((m_est * 1000.0).round() as i64),
                    BigInt::from(1000),
                ),
            }
        } else {
            SpaceTag::HminusInf
        };
        candidates.push((fit.clone(), tag));
        fits.push(fit);
    }

    let exp_pts: Vec<(f64, f64)> = pts.iter().map(|&(s, y)| (s as f64, y)).collect();
    if let Some(fit) = model_fit(GrowthModel::Exponential, &exp_pts) {
        let tag = if fit.rate > 0.02 {
            Some(SpaceTag::E0dual)
        } else if fit.rate < -0.02 {
            Some(SpaceTag::E0)
        } else {
            None // flat on the exponential scale: not an exponential law
        };
        if let Some(tag) = tag {
            candidates.push((fit.clone(), tag));
        }
        fits.push(fit);
    }

    for axis in 0..2usize {
        let fact_pts: Vec<(f64, f64)> = axis_ln[axis]
            .iter()
            .enumerate()
            .filter(|(_, y)| y.is_finite())
            .map(|(t, y)| (ln_factorial(t as i64), *y))
            .collect();
        if fact_pts.len() < min_shells {
            continue;
        }
        let Some(fit) = model_fit(GrowthModel::Factorial { axis: axis as u8 + 1 }, &fact_pts)
        else {
            continue;
        };
        // A near-zero power means the profile is flat on the factorial
        // scale, which is evidence for the other models, not this one.
        let tag = if fit.rate >= 0.5 {
            Some(SpaceTag::L1FactDual { axis: axis as u8 + 1 })
        } else if fit.rate <= -0.5 {
            Some(SpaceTag::L1Fact { axis: axis as u8 + 1 })
        } else {
            None
        };
        if let Some(tag) = tag {
            candidates.push((fit.clone(), tag));
        }
        fits.push(fit);
    }

    let mut best: Option<(ModelFit, SpaceTag)> = None;
    for (fit, tag) in candidates {
        if fit.relative_residual >= FIT_TOLERANCE {
            continue;
        }
        best = match best {
            None => Some((fit, tag)),
            Some((bf, bt)) => {
                let tie = (fit.relative_residual - bf.relative_residual).abs() < 0.01;
                let wins = if tie {
                    tag.regularity_rank() < bt.regularity_rank()
                } else {
                    fit.relative_residual < bf.relative_residual
                };
                if wins {
                    Some((fit, tag))
                } else {
                    Some((bf, bt))
                }
            }
        };
    }
    match best {
        Some((fit, tag)) => Ok(GrowthReport {
            tag,
            chosen: Some(fit.model),
            fits,
            shell_maxima,
            note: HEURISTIC_NOTE,
        }),
        None => Err(Error::Inconclusive(
            "no growth model fits the shell maxima within tolerance".into(),
        )),
    }
}
