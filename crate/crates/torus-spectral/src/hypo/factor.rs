//! Factorization over the rationals by Kronecker's interpolation method,
//! with an explicit degree cap instead of guessing on large inputs.

use super::univariate::UnivariatePoly;
use num::{BigInt, BigRational, One, Signed, Zero};

/// Kronecker search is exponential; refuse beyond this degree by default.
pub const DEFAULT_DEGREE_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A nontrivial exact divisor, primitive with positive leading
    /// coefficient.
    Reducible { witness: UnivariatePoly },
    /// Degree exceeds the cap; no verdict.
    DegreeCapExceeded { degree: usize, cap: usize },
}

/// Decide irreducibility of `p` over `Q`. Requires `deg p >= 1`.
pub fn irreducible_over_q(p: &UnivariatePoly, cap: usize) -> Irreducibility {
    let d = p.degree().expect("nonzero polynomial");
    assert!(d >= 1, "constants have no irreducibility verdict");
    if d == 1 {
        return Irreducibility::Irreducible;
    }
    if let Some((root, _)) = p.rational_roots().into_iter().next() {
        return Irreducibility::Reducible {
            witness: linear_factor(&root),
        };
    }
    if d <= 3 {
        // A nontrivial factorization of degree <= 3 would contain a linear
        // factor, hence a rational root.
        return Irreducibility::Irreducible;
    }
    if d > cap {
        return Irreducibility::DegreeCapExceeded { degree: d, cap };
    }
    match kronecker_factor(p) {
        Some(f) => Irreducibility::Reducible { witness: f },
        None => Irreducibility::Irreducible,
    }
}

/// Complete factorization into irreducibles with multiplicities, up to a
/// rational constant. Factors are primitive with positive leading
/// coefficients, sorted. Errors with the offending degree when a Kronecker
/// step would exceed the cap.
pub fn factor_over_q(
    p: &UnivariatePoly,
    cap: usize,
) -> Result<Vec<(UnivariatePoly, u32)>, Irreducibility> {
    let mut out: Vec<(UnivariatePoly, u32)> = Vec::new();
    for (sf, mult) in p.squarefree_decomposition() {
        let mut pending = vec![sf];
        while let Some(piece) = pending.pop() {
            match irreducible_over_q(&piece, cap) {
                Irreducibility::Irreducible => {
                    let prim = UnivariatePoly::new(
                        piece
                            .primitive_integer()
                            .into_iter()
                            .map(BigRational::from_integer)
                            .collect(),
                    );
                    match out.iter_mut().find(|(f, _)| *f == prim) {
                        Some((_, m)) => *m += mult,
                        None => out.push((prim, mult)),
                    }
                }
                Irreducibility::Reducible { witness } => {
                    let rest = piece.div_exact(&witness).expect("witness divides");
                    pending.push(witness);
                    pending.push(rest);
                }
                cap_hit @ Irreducibility::DegreeCapExceeded { .. } => return Err(cap_hit),
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| format!("{:?}", a.0).cmp(&format!("{:?}", b.0)))
    });
    Ok(out)
}

fn linear_factor(root: &BigRational) -> UnivariatePoly {
    // x = p/q -> qx - p, primitive with positive leading coefficient.
    UnivariatePoly::new(vec![
        BigRational::from_integer(-root.numer().clone()),
        BigRational::from_integer(root.denom().clone()),
    ])
}

/// Search for a nontrivial factor of degree `2..=deg/2` by interpolating
/// through divisor tuples. `p` must have no rational roots.
fn kronecker_factor(p: &UnivariatePoly) -> Option<UnivariatePoly> {
    let d = p.degree().unwrap();
    let ints = p.primitive_integer();
    let prim = UnivariatePoly::new(ints.into_iter().map(BigRational::from_integer).collect());
    for g in 2..=d / 2 {
        let points: Vec<BigInt> = sample_points(g + 1);
        let values: Vec<BigInt> = points
            .iter()
            .map(|x| {
                let v = prim.eval(&BigRational::from_integer(x.clone()));
                debug_assert!(v.denom().is_one());
                v.numer().clone()
            })
            .collect();
        debug_assert!(values.iter().all(|v| !v.is_zero()), "no integer roots");
        // Divisor choices per point; the first point is restricted to
        // positive divisors to fix the factor's sign.
        let choices: Vec<Vec<BigInt>> = values
            .iter()
            .enumerate()
            .map(|(i, v)| signed_divisors(v, i == 0))
            .collect();
        let mut index = vec![0usize; choices.len()];
        'tuples: loop {
            let tuple: Vec<BigRational> = index
                .iter()
                .zip(&choices)
                .map(|(&i, c)| BigRational::from_integer(c[i].clone()))
                .collect();
            if let Some(f) = interpolate(&points, &tuple) {
                if f.degree() == Some(g) && is_integer_poly(&f) && prim.div_exact(&f).is_some() {
                    return Some(normalize(&f));
                }
            }
            // Odometer increment.
            for pos in (0..index.len()).rev() {
                index[pos] += 1;
                if index[pos] < choices[pos].len() {
                    continue 'tuples;
                }
                index[pos] = 0;
                if pos == 0 {
                    break 'tuples;
                }
            }
        }
    }
    None
}

fn sample_points(n: usize) -> Vec<BigInt> {
    let mut pts = vec![BigInt::zero()];
    let mut k = 1i64;
    while pts.len() < n {
        pts.push(BigInt::from(k));
        if pts.len() < n {
            pts.push(BigInt::from(-k));
        }
        k += 1;
    }
    pts
}

fn signed_divisors(v: &BigInt, positive_only: bool) -> Vec<BigInt> {
    let n = v.abs();
    let mut divs = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            divs.push(d.clone());
            let q = &n / &d;
            if q != d {
                divs.push(q);
            }
        }
        d += 1;
    }
    divs.sort();
    if positive_only {
        return divs;
    }
    let mut out = Vec::with_capacity(divs.len() * 2);
    for d in divs {
        out.push(d.clone());
        out.push(-d);
    }
    out
}

/// Lagrange interpolation; `None` when the points are degenerate (they are
/// distinct here, so this always succeeds).
fn interpolate(points: &[BigInt], values: &[BigRational]) -> Option<UnivariatePoly> {
    let mut sum = UnivariatePoly::zero();
    for (i, (xi, vi)) in points.iter().zip(values).enumerate() {
        let mut basis = UnivariatePoly::one();
        let mut denom = BigRational::one();
        for (j, xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&UnivariatePoly::new(vec![
                BigRational::from_integer(-xj.clone()),
                BigRational::one(),
            ]));
            denom *= BigRational::from_integer(xi - xj);
        }
        sum = sum.add(&basis.scale(&(vi / denom)));
    }
    Some(sum)
}

fn is_integer_poly(p: &UnivariatePoly) -> bool {
    p.coeffs().iter().all(|c| c.denom().is_one())
}

fn normalize(p: &UnivariatePoly) -> UnivariatePoly {
    UnivariatePoly::new(
        p.primitive_integer()
            .into_iter()
            .map(BigRational::from_integer)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn biquadratic_splits() {
        // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2)
        let p = UnivariatePoly::from_integers(&[4, 0, 0, 0, 1]);
        match irreducible_over_q(&p, DEFAULT_DEGREE_CAP) {
            Irreducibility::Reducible { witness } => {
                assert_eq!(witness, UnivariatePoly::from_integers(&[2, -2, 1]));
                let co = p.div_exact(&witness).unwrap();
                assert_eq!(co, UnivariatePoly::from_integers(&[2, 2, 1]));
            }
            other => panic!("expected a factor, got {other:?}"),
        }
    }

    #[test]
    fn known_irreducibles() {
        for coeffs in [
            vec![-2i64, 0, 1],       // x^2 - 2
            vec![-2, 0, 0, 1],       // x^3 - 2
            vec![1, 0, 0, 0, 1],     // x^4 + 1
            vec![1, 1, 1, 1, 1],     // cyclotomic Phi_5
            vec![-2, 0, 0, 0, 0, 1], // x^5 - 2
        ] {
            let p = UnivariatePoly::from_integers(&coeffs);
            assert_eq!(
                irreducible_over_q(&p, DEFAULT_DEGREE_CAP),
                Irreducibility::Irreducible,
                "{coeffs:?}"
            );
        }
    }

    #[test]
    fn degree_cap_is_honest() {
        let mut coeffs = vec![0i64; 10];
        coeffs[0] = -2;
        coeffs[9] = 1; // x^9 - 2, degree above the cap
        let p = UnivariatePoly::from_integers(&coeffs);
        assert!(matches!(
            irreducible_over_q(&p, DEFAULT_DEGREE_CAP),
            Irreducibility::DegreeCapExceeded { degree: 9, cap: 8 }
        ));
    }

    #[test]
    fn full_factorization_with_multiplicities() {
        // (x^2 - 2)^2 (x + 1) x^4+4-part
        let sq = UnivariatePoly::from_integers(&[-2, 0, 1]);
        let p = sq
            .mul(&sq)
            .mul(&UnivariatePoly::from_integers(&[1, 1]))
            .mul(&UnivariatePoly::from_integers(&[4, 0, 0, 0, 1]));
        let factors = factor_over_q(&p, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(
            factors,
            vec![
                (UnivariatePoly::from_integers(&[1, 1]), 1),
                (UnivariatePoly::from_integers(&[-2, 0, 1]), 2),
                (UnivariatePoly::from_integers(&[2, -2, 1]), 1),
                (UnivariatePoly::from_integers(&[2, 2, 1]), 1),
            ]
        );
    }

    #[test]
    fn rational_root_gives_primitive_linear_witness() {
        // (2x + 3)(x^2 + 1)
        let p = UnivariatePoly::from_integers(&[3, 2]).mul(&UnivariatePoly::from_integers(&[1, 0, 1]));
        match irreducible_over_q(&p, DEFAULT_DEGREE_CAP) {
            Irreducibility::Reducible { witness } => {
                assert_eq!(witness, UnivariatePoly::from_integers(&[3, 2]));
            }
            other => panic!("{other:?}"),
        }
    }
}
