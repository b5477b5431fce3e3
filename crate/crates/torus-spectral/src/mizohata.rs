//! Exact Fourier-side solver for the periodic Mizohata equation
//! `i u_x1 - sin(x1) u_x2 = f`, and trace-based reconstruction of
//! solutions of general operators with shifted coefficients.
//!
//! On the Fourier side the equation decouples into one three-term
//! recurrence per column `k2 = const`:
//!
//! ```text
//! k1 u_{k1,k2} + (k2/2) (u_{k1-1,k2} - u_{k1+1,k2}) = -i f_{k1,k2}
//! ```
//!
//! For even right-hand sides with vanishing mean the odd solution is
//! obtained by marching each column outward from `u_{0,k2} = 0`. The
//! march multiplies by `2 k1 / k2` at each step, which is the exact
//! mechanism behind the factorial coefficient growth: the solution
//! operator is smoothing in no Sobolev scale, yet every truncation is
//! computed here without rounding.

use crate::error::{Error, Result};
use crate::lattice::{Domain, LatticeBox, LatticeIndex};
use crate::linalg::SparseSystem;
use crate::numeric::sqrt_upper_bound;
use crate::operator::TorusOperator;
use crate::rational::GaussianRational;
use crate::series::TrigSeries;
use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;

/// Largest box edge accepted by the dense trace reconstruction. The
/// direct solver in [`solve_odd`] has no such cap.
pub const RECONSTRUCTION_CAP: i64 = 64;

/// An exact truncated solution together with its growth certificate.
#[derive(Debug, Clone)]
pub struct MizohataSolution {
    /// Odd-in-`x1` solution coefficients on the requested box.
    pub u: TrigSeries,
    /// Rational `c` with `|u_k| <= c * (|k1| + 1)!` for every stored
    /// coefficient; an upper bound within `2^-32` of the optimum.
    pub growth_constant: BigRational,
    /// The exact square `max_k |u_k|^2 / ((|k1| + 1)!)^2` it bounds.
    pub growth_constant_sq: BigRational,
    /// Region on which `L u = f` was verified coefficientwise.
    pub residual_box: LatticeBox,
}

fn factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Solve `i u_x1 - sin(x1) u_x2 = f` for the odd-in-`x1` solution, with
/// all coefficients on `solve_box` computed exactly.
///
/// Requirements: the box is symmetric in `k1`, `f` is complete on it,
/// `f` is even in `x1`, and the mean `f_{0,0}` vanishes. The returned
/// residual box is the solve box shrunk by one column on each side; the
/// equation is re-verified there by an independent application of the
/// operator.
pub fn solve_odd(f: &TrigSeries, solve_box: LatticeBox) -> Result<MizohataSolution> {
    if !solve_box.is_symmetric(1) {
        return Err(Error::AsymmetricBox { axis: 1 });
    }
    f.require_complete(&solve_box, "right-hand side")?;
    let fb = f.restrict(solve_box);
    fb.check_parity(1, true)?;
    if !fb.coeff((0, 0)).is_zero() {
        return Err(Error::NonzeroMean {
            found: fb.coeff((0, 0)).to_string(),
        });
    }
    let residual_box = solve_box.shrink(1, 0).ok_or_else(|| {
        Error::EmptyBox(format!(
            "box {solve_box} leaves no column on which to verify the residual"
        ))
    })?;

    // March each column with g = -i f, so the recurrence is purely
    // rational: u_{k1+1} = u_{k1-1} + (2/k2)(k1 u_{k1} - g_{k1}).
    let g = fb.scale(&-GaussianRational::i());
    let mut coeffs: BTreeMap<LatticeIndex, GaussianRational> = BTreeMap::new();
    let mut put = |k: LatticeIndex, v: GaussianRational| {
        if !v.is_zero() {
            coeffs.insert(k, v);
        }
    };
    for k2 in solve_box.n2_min..=solve_box.n2_max {
        if k2 == 0 {
            // k1 u_{k1,0} = g_{k1,0}; the mean condition handled k1 = 0.
            for k1 in 1..=solve_box.n1_max {
                let v = g.coeff((k1, 0)).scale_rational(
                    &BigRational::new(BigInt::one(), BigInt::from(k1)),
                );
                put((-k1, 0), -&v);
                put((k1, 0), v);
            }
            continue;
        }
        let two_over_k2 = BigRational::new(BigInt::from(2), BigInt::from(k2));
        let mut prev = GaussianRational::zero(); // u_{0,k2}
        if solve_box.n1_max == 0 {
            continue;
        }
        let mut cur = g
            .coeff((0, k2))
            .scale_rational(&BigRational::new(-BigInt::one(), BigInt::from(k2)));
        put((1, k2), cur.clone());
        put((-1, k2), -&cur);
        for k1 in 1..solve_box.n1_max {
            let drive = &cur.scale_rational(&BigRational::from(BigInt::from(k1)))
                - &g.coeff((k1, k2));
            let next = &prev + &drive.scale_rational(&two_over_k2);
            put((k1 + 1, k2), next.clone());
            put((-(k1 + 1), k2), -&next);
            prev = cur;
            cur = next;
        }
    }
    let u = TrigSeries::truncation(coeffs, solve_box)?;

    // Growth certificate: the exact maximum of |u_k|^2 / ((|k1|+1)!)^2
    // and a rational square-root upper bound for it.
    let mut growth_constant_sq = BigRational::zero();
    for (k, v) in u.iter() {
        let fk = factorial(k.0.abs() + 1);
        let ratio = v.abs_sq() / BigRational::from(&fk * &fk);
        if ratio > growth_constant_sq {
            growth_constant_sq = ratio;
        }
    }
    let growth_constant = sqrt_upper_bound(&growth_constant_sq, 32);

    let lu = TorusOperator::mizohata().apply(&u)?;
    if let Some(k) = lu.difference_witness(f, &residual_box)? {
        return Err(Error::Contract(format!(
            "residual check failed at ({}, {})",
            k.0, k.1
        )));
    }
    Ok(MizohataSolution {
        u,
        growth_constant,
        growth_constant_sq,
        residual_box,
    })
}

/// Boundary data for trace reconstruction: the partial pairings of a
/// solution against the pure oscillations of each variable.
///
/// `row_traces[q]` is `<u, e^{iq x2}>_{x2}`, a series in `x1` reading
/// the lattice line `k2 = -q`; `col_traces[p]` is `<u, e^{ip x1}>_{x1}`
/// reading the line `k1 = -p`. An operator whose coefficients use
/// frequencies up to `(s1, s2)` needs `p = 0..=s1` and `q = 0..=s2`.
#[derive(Debug, Clone)]
pub struct TraceData {
    pub row_traces: Vec<TrigSeries>,
    pub col_traces: Vec<TrigSeries>,
}

impl TraceData {
    /// Extract the traces `p = 0..=s1`, `q = 0..=s2` from a series.
    pub fn extract(u: &TrigSeries, s1: i64, s2: i64) -> Result<TraceData> {
        let mut row_traces = Vec::new();
        for q in 0..=s2 {
            row_traces.push(u.partial_pairing_x2(&TrigSeries::delta((0, q)))?);
        }
        let mut col_traces = Vec::new();
        for p in 0..=s1 {
            col_traces.push(u.partial_pairing_x1(&TrigSeries::delta((p, 0)))?);
        }
        Ok(TraceData {
            row_traces,
            col_traces,
        })
    }

    /// Check every overlap: row trace `q` at `k1 = -p` and column trace
    /// `p` at `k2 = -q` both read the coefficient `u_{-p,-q}` and must
    /// agree. Returns the first failing `(p, q)` in column-major order.
    pub fn compatibility_check(&self) -> Result<()> {
        for (p, col) in self.col_traces.iter().enumerate() {
            for (q, row) in self.row_traces.iter().enumerate() {
                let at_row = (-(p as i64), 0);
                let at_col = (0, -(q as i64));
                if !row.domain().contains(at_row) || !col.domain().contains(at_col) {
                    return Err(Error::IncompleteSupport(format!(
                        "traces do not both cover the overlap ({p}, {q})"
                    )));
                }
                let a = row.coeff(at_row);
                let b = col.coeff(at_col);
                if a != b {
                    return Err(Error::IncompatibleTraces {
                        p: p as u32,
                        q: q as u32,
                        detail: format!(
                            "row trace gives {a}, column trace gives {b}"
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

fn axis_values(
    t: &TrigSeries,
    axis: u8,
    lo: i64,
    hi: i64,
    what: &str,
) -> Result<Vec<GaussianRational>> {
    for (k, _) in t.iter() {
        let off = if axis == 1 { k.1 } else { k.0 };
        if off != 0 {
            return Err(Error::Contract(format!(
                "{what} must depend on x{axis} only, found term at ({}, {})",
                k.0, k.1
            )));
        }
    }
    let mut out = Vec::new();
    for m in lo..=hi {
        let idx = if axis == 1 { (m, 0) } else { (0, m) };
        if !t.domain().contains(idx) {
            return Err(Error::IncompleteSupport(format!(
                "{what} must be complete for indices {lo}..={hi} on axis {axis}"
            )));
        }
        out.push(t.coeff(idx));
    }
    Ok(out)
}

/// Reconstruct the even homogeneous solution of the Mizohata operator
/// from its first two column traces `u0 = u|_{k1=0}` and
/// `u1 = u|_{k1=1}` (series in `x2`), marching the homogeneous
/// recurrence `u_{k1+1} = u_{k1-1} + (2 k1 / k2) u_{k1}` outward on the
/// given box.
pub fn reconstruct_homogeneous(
    u0: &TrigSeries,
    u1: &TrigSeries,
    solve_box: LatticeBox,
) -> Result<TrigSeries> {
    if !solve_box.is_symmetric(1) {
        return Err(Error::AsymmetricBox { axis: 1 });
    }
    let (lo, hi) = (solve_box.n2_min, solve_box.n2_max);
    let a = axis_values(u0, 2, lo, hi, "trace u0")?;
    let b = axis_values(u1, 2, lo, hi, "trace u1")?;
    let mut coeffs: BTreeMap<LatticeIndex, GaussianRational> = BTreeMap::new();
    let mut put = |k: LatticeIndex, v: &GaussianRational| {
        if !v.is_zero() {
            coeffs.insert(k, v.clone());
        }
    };
    for (i, k2) in (lo..=hi).enumerate() {
        if k2 == 0 {
            // The k2 = 0 row of the equation reads k1 u_{k1,0} = 0, so
            // only the mean survives: a nonzero first trace there is
            // not a solution at all.
            if !b[i].is_zero() {
                return Err(Error::InconsistentTrace(format!(
                    "homogeneous solutions have u_(1,0) = 0, trace gives {}",
                    b[i]
                )));
            }
            put((0, 0), &a[i]);
            continue;
        }
        put((0, k2), &a[i]);
        if solve_box.n1_max == 0 {
            continue;
        }
        put((1, k2), &b[i]);
        put((-1, k2), &b[i]);
        let mut prev = a[i].clone();
        let mut cur = b[i].clone();
        for k1 in 1..solve_box.n1_max {
            let step = BigRational::new(BigInt::from(2 * k1), BigInt::from(k2));
            let next = &prev + &cur.scale_rational(&step);
            put((k1 + 1, k2), &next);
            put((-(k1 + 1), k2), &next);
            prev = cur;
            cur = next;
        }
    }
    let u = TrigSeries::truncation(coeffs, solve_box)?;
    if let Some(shrunk) = solve_box.shrink(1, 0) {
        let lu = TorusOperator::mizohata().apply(&u)?;
        if let Some(k) = lu.difference_witness(&TrigSeries::zero(), &shrunk)? {
            return Err(Error::Contract(format!(
                "homogeneous residual check failed at ({}, {})",
                k.0, k.1
            )));
        }
    }
    Ok(u)
}

/// Reconstruct a solution of `L u = rhs` on `solve_box` from trace
/// data, by exact sparse elimination over the Gaussian rationals.
///
/// Equations: `(L u)_k = rhs_k` at every `k` where the box determines
/// the left side completely, plus one equation per trace value pinning
/// the lattice lines `k2 = -q` and `k1 = -p`. Trace overlaps are
/// checked for compatibility first. Returns the solution and whether it
/// is the unique series on the box satisfying all constraints; when
/// free coefficients remain they are set to zero and the flag is false.
pub fn reconstruct_general(
    l: &TorusOperator,
    traces: &TraceData,
    rhs: &TrigSeries,
    solve_box: LatticeBox,
) -> Result<(TrigSeries, bool)> {
    let (s1, s2) = l.shifts();
    let span1 = solve_box.n1_max - solve_box.n1_min + 1;
    let span2 = solve_box.n2_max - solve_box.n2_min + 1;
    if span1 > RECONSTRUCTION_CAP || span2 > RECONSTRUCTION_CAP {
        return Err(Error::Contract(format!(
            "reconstruction box {solve_box} exceeds the {RECONSTRUCTION_CAP}x{RECONSTRUCTION_CAP} cap"
        )));
    }
    if traces.row_traces.len() as i64 != s2 + 1 || traces.col_traces.len() as i64 != s1 + 1 {
        return Err(Error::Contract(format!(
            "operator with shifts ({s1}, {s2}) needs {} row and {} column traces, got {} and {}",
            s2 + 1,
            s1 + 1,
            traces.row_traces.len(),
            traces.col_traces.len()
        )));
    }
    for q in 0..=s2 {
        if -q < solve_box.n2_min || -q > solve_box.n2_max {
            return Err(Error::Contract(format!(
                "trace line k2 = {} lies outside {solve_box}",
                -q
            )));
        }
    }
    for p in 0..=s1 {
        if -p < solve_box.n1_min || -p > solve_box.n1_max {
            return Err(Error::Contract(format!(
                "trace line k1 = {} lies outside {solve_box}",
                -p
            )));
        }
    }
    traces.compatibility_check()?;

    let inner = match l.output_domain(&Domain::Window(solve_box))? {
        Domain::Window(b) => b,
        Domain::Entire => solve_box,
        Domain::Empty => {
            return Err(Error::EmptyBox(
                "no interior equations survive the frequency shifts".into(),
            ))
        }
    };
    rhs.require_complete(&inner, "right-hand side")?;

    let cols: BTreeMap<LatticeIndex, usize> = solve_box
        .iter()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let mut system = SparseSystem::new(cols.len());
    for k in inner.iter() {
        let mut row: Vec<(usize, GaussianRational)> = Vec::new();
        for (&n, p) in l.freq_form() {
            let src = (k.0 - n.0, k.1 - n.1);
            let c = p.eval(src);
            if !c.is_zero() {
                row.push((cols[&src], c));
            }
        }
        system.add_equation(row, rhs.coeff(k));
    }
    for (q, row) in traces.row_traces.iter().enumerate() {
        let vals = axis_values(
            row,
            1,
            solve_box.n1_min,
            solve_box.n1_max,
            &format!("row trace {q}"),
        )?;
        for (i, m) in (solve_box.n1_min..=solve_box.n1_max).enumerate() {
            let k = (m, -(q as i64));
            system.add_equation([(cols[&k], GaussianRational::one())], vals[i].clone());
        }
    }
    for (p, col) in traces.col_traces.iter().enumerate() {
        let vals = axis_values(
            col,
            2,
            solve_box.n2_min,
            solve_box.n2_max,
            &format!("column trace {p}"),
        )?;
        for (i, n) in (solve_box.n2_min..=solve_box.n2_max).enumerate() {
            let k = (-(p as i64), n);
            system.add_equation([(cols[&k], GaussianRational::one())], vals[i].clone());
        }
    }

    let sol = system.solve()?;
    let coeffs: BTreeMap<LatticeIndex, GaussianRational> = cols
        .iter()
        .filter(|(_, &i)| !sol.values[i].is_zero())
        .map(|(&k, &i)| (k, sol.values[i].clone()))
        .collect();
    Ok((TrigSeries::truncation(coeffs, solve_box)?, sol.unique))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, 1, im, 1)
    }

    fn cos_x1_e_ix2() -> TrigSeries {
        let half = GaussianRational::from_parts(1, 2, 0, 1);
        TrigSeries::polynomial([((1, 1), half.clone()), ((-1, 1), half)])
    }

    #[test]
    fn solves_cos_x1_oscillation() {
        let f = cos_x1_e_ix2();
        let b = LatticeBox::new(-4, 4, 0, 2).unwrap();
        let sol = solve_odd(&f, b).unwrap();
        assert!(sol.u.coeff((0, 1)).is_zero());
        assert!(sol.u.coeff((1, 1)).is_zero());
        assert_eq!(sol.u.coeff((2, 1)), gr(0, 1));
        assert_eq!(sol.u.coeff((-2, 1)), gr(0, -1));
        assert_eq!(sol.u.coeff((3, 1)), gr(0, 4));
        sol.u.check_parity(1, false).unwrap();
        assert_eq!(sol.residual_box, LatticeBox::new(-3, 3, 0, 2).unwrap());
        assert!(sol.growth_constant_sq > BigRational::zero());
        assert!(
            &sol.growth_constant * &sol.growth_constant >= sol.growth_constant_sq
        );
    }

    #[test]
    fn truncations_are_nested() {
        let f = cos_x1_e_ix2();
        let small = solve_odd(&f, LatticeBox::new(-5, 5, -1, 3).unwrap()).unwrap();
        let large = solve_odd(&f, LatticeBox::new(-9, 9, -2, 4).unwrap()).unwrap();
        for (k, v) in small.u.iter() {
            assert_eq!(large.u.coeff(*k), *v, "mismatch at {k:?}");
        }
    }

    #[test]
    fn rejects_bad_data() {
        let f = cos_x1_e_ix2();
        assert!(matches!(
            solve_odd(&f, LatticeBox::new(-1, 2, 0, 2).unwrap()),
            Err(Error::AsymmetricBox { axis: 1 })
        ));
        assert!(matches!(
            solve_odd(&f, LatticeBox::new(0, 0, 0, 2).unwrap()),
            Err(Error::EmptyBox(_))
        ));
        let odd = TrigSeries::polynomial([((1, 0), gr(1, 0)), ((-1, 0), gr(-1, 0))]);
        assert!(matches!(
            solve_odd(&odd, LatticeBox::new(-2, 2, 0, 0).unwrap()),
            Err(Error::ParityViolation { .. })
        ));
        let mean = TrigSeries::constant(gr(3, 0));
        assert!(matches!(
            solve_odd(&mean, LatticeBox::new(-2, 2, 0, 0).unwrap()),
            Err(Error::NonzeroMean { .. })
        ));
    }

    #[test]
    fn mean_zero_row_solves_exactly() {
        // f = 2 cos(2 x1): u_{k1,0} = f_{k1,0} / (i k1), odd.
        let f = TrigSeries::polynomial([((2, 0), gr(1, 0)), ((-2, 0), gr(1, 0))]);
        let sol = solve_odd(&f, LatticeBox::new(-3, 3, 0, 0).unwrap()).unwrap();
        assert_eq!(sol.u.coeff((2, 0)), GaussianRational::from_parts(0, 1, -1, 2));
        assert_eq!(sol.u.coeff((-2, 0)), GaussianRational::from_parts(0, 1, 1, 2));
        assert!(sol.u.coeff((1, 0)).is_zero());
    }

    #[test]
    fn trace_extraction_reads_reflected_lines() {
        let u = TrigSeries::polynomial([
            ((0, 0), gr(7, 0)),
            ((2, -1), gr(0, 3)),
            ((-1, 0), gr(5, 0)),
        ]);
        let tr = TraceData::extract(&u, 1, 1).unwrap();
        assert_eq!(tr.row_traces[1].coeff((2, 0)), gr(0, 3));
        assert_eq!(tr.row_traces[0].coeff((0, 0)), gr(7, 0));
        assert_eq!(tr.col_traces[1].coeff((0, 0)), gr(5, 0));
        tr.compatibility_check().unwrap();
    }

    #[test]
    fn incompatible_overlap_is_reported() {
        let row = TrigSeries::polynomial([((-1, 0), gr(1, 0))]);
        let col = TrigSeries::polynomial([((0, -1), gr(2, 0))]);
        let tr = TraceData {
            row_traces: vec![TrigSeries::zero(), row],
            col_traces: vec![TrigSeries::zero(), col],
        };
        match tr.compatibility_check() {
            Err(Error::IncompatibleTraces { p, q, .. }) => {
                assert_eq!((p, q), (1, 1));
            }
            other => panic!("expected incompatible traces, got {other:?}"),
        }
    }

    #[test]
    fn homogeneous_constant_and_growth_column() {
        let b = LatticeBox::new(-4, 4, -1, 1).unwrap();
        let u = reconstruct_homogeneous(
            &TrigSeries::delta((0, 0)),
            &TrigSeries::zero(),
            b,
        )
        .unwrap();
        assert_eq!(u.term_count(), 1);
        assert_eq!(u.coeff((0, 0)), GaussianRational::one());

        // u0 = 0, u1 = e^{ix2}: the column marches 1, 2, 9, 56, ...
        let u = reconstruct_homogeneous(
            &TrigSeries::zero(),
            &TrigSeries::delta((0, 1)),
            b,
        )
        .unwrap();
        assert_eq!(u.coeff((2, 1)), gr(2, 0));
        assert_eq!(u.coeff((3, 1)), gr(9, 0));
        assert_eq!(u.coeff((4, 1)), gr(56, 0));
        assert_eq!(u.coeff((-3, 1)), gr(9, 0));
        u.check_parity(1, true).unwrap();
    }

    #[test]
    fn homogeneous_rejects_constant_in_first_trace() {
        let b = LatticeBox::new(-2, 2, -1, 1).unwrap();
        let err = reconstruct_homogeneous(
            &TrigSeries::zero(),
            &TrigSeries::delta((0, 0)),
            b,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InconsistentTrace(_)));
    }

    #[test]
    fn general_reconstruction_matches_direct_solver() {
        let f = cos_x1_e_ix2();
        let b = LatticeBox::new(-5, 5, -1, 2).unwrap();
        let sol = solve_odd(&f, b).unwrap();
        let l = TorusOperator::mizohata();
        let traces = TraceData::extract(&sol.u, 1, 0).unwrap();
        let (rebuilt, unique) = reconstruct_general(&l, &traces, &f, b).unwrap();
        assert!(unique);
        assert!(rebuilt
            .difference_witness(&sol.u, &b)
            .unwrap()
            .is_none());
    }

    #[test]
    fn general_reconstruction_flags_corrupted_traces() {
        let f = cos_x1_e_ix2();
        let b = LatticeBox::new(-5, 5, -1, 2).unwrap();
        let sol = solve_odd(&f, b).unwrap();
        let l = TorusOperator::mizohata();
        let mut traces = TraceData::extract(&sol.u, 1, 0).unwrap();
        // Poison the row trace away from the overlaps. The interior
        // equation at (2, 0) pins u_(2,0) by itself, so the corrupted
        // pin contradicts it and no solution exists.
        traces.row_traces[0] = traces.row_traces[0].add(&TrigSeries::delta((2, 0)));
        let err = reconstruct_general(&l, &traces, &f, b).unwrap_err();
        assert!(matches!(err, Error::InconsistentSystem(_)), "{err:?}");
    }

    #[test]
    fn general_reconstruction_recovers_homogeneous_solution() {
        let b = LatticeBox::new(-4, 4, -2, 2).unwrap();
        let u = reconstruct_homogeneous(
            &TrigSeries::zero(),
            &TrigSeries::delta((0, 1)),
            b,
        )
        .unwrap();
        let l = TorusOperator::mizohata();
        let traces = TraceData::extract(&u, 1, 0).unwrap();
        let (rebuilt, unique) =
            reconstruct_general(&l, &traces, &TrigSeries::zero(), b).unwrap();
        assert!(unique);
        assert!(rebuilt.difference_witness(&u, &b).unwrap().is_none());
    }
}
