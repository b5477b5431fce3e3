//! Property tests for the series algebra and the two operator forms.

use proptest::prelude::*;
use torus_spectral::operator::{AssumptionVerdict, TorusOperator};
use torus_spectral::symbol::MultiIndex;
use torus_spectral::{GaussianRational, LatticeBox, LatticeIndex, TrigSeries};

fn gauss(num: i64, den: i64, i_num: i64) -> GaussianRational {
    GaussianRational::from_parts(num, den, i_num, den)
}

prop_compose! {
    fn arb_coeff()(num in -4i64..=4, den in 1i64..=3, i_num in -4i64..=4) -> GaussianRational {
        gauss(num, den, i_num)
    }
}

prop_compose! {
    fn arb_series(radius: i64, max_terms: usize)(
        terms in prop::collection::vec(
            ((-radius..=radius, -radius..=radius), arb_coeff()),
            1..=max_terms,
        )
    ) -> TrigSeries {
        TrigSeries::polynomial(terms)
    }
}

prop_compose! {
    fn arb_operator()(
        rows in prop::collection::vec(
            ((0u32..=2, 0u32..=1), arb_series(2, 3)),
            1..=4,
        )
    ) -> TorusOperator {
        let alpha: Vec<(MultiIndex, TrigSeries)> = rows
            .into_iter()
            .map(|((a1, a2), c)| (MultiIndex::new(a1, a2), c))
            .collect();
        TorusOperator::from_alpha_form(alpha).expect("entire coefficients")
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// The frequency-side form and the derivative-side form of an operator
    /// must produce the same output series on every input.
    #[test]
    fn both_operator_forms_agree(op in arb_operator(), u in arb_series(4, 6)) {
        let via_freq = op.apply(&u).unwrap();
        let via_alpha = op.apply_alpha_form(&u).unwrap();
        prop_assert_eq!(via_freq, via_alpha);
    }

    /// Application is linear over Gaussian-rational scalars.
    #[test]
    fn application_is_linear(
        op in arb_operator(),
        u in arb_series(3, 5),
        v in arb_series(3, 5),
        a in arb_coeff(),
        b in arb_coeff(),
    ) {
        let lhs = op.apply(&u.scale(&a).add(&v.scale(&b))).unwrap();
        let rhs = op
            .apply(&u)
            .unwrap()
            .scale(&a)
            .add(&op.apply(&v).unwrap().scale(&b));
        prop_assert_eq!(lhs, rhs);
    }

    /// Modulation multiplies every coefficient by e^{i n x}, so the result
    /// of applying the modulated operator is the shifted output series:
    /// (M_n L)(u) = e^{inx} L(u).
    #[test]
    fn modulation_law(op in arb_operator(), u in arb_series(3, 5), n1 in -3i64..=3, n2 in -3i64..=3) {
        let n = (n1, n2);
        let lhs = op.modulate(n).apply(&u).unwrap();
        let rhs = op.apply(&u).unwrap().shift(n);
        prop_assert_eq!(lhs, rhs);
    }

    /// The certified zero-freeness verdict must agree with a brute-force
    /// scan of every frequency symbol over a radius-50 box.
    #[test]
    fn assumption_verdict_matches_brute_scan(op in arb_operator()) {
        let search = LatticeBox::symmetric(50, 50);
        let verdict = op.check_assumption1(&search);

        let mut brute: Option<(LatticeIndex, LatticeIndex)> = None;
        'outer: for (freq, symbol) in op.freq_form() {
            for m in search.iter() {
                if m == (0, 0) {
                    continue;
                }
                if symbol.eval(m).is_zero() {
                    brute = Some((*freq, m));
                    break 'outer;
                }
            }
        }

        match verdict {
            AssumptionVerdict::Fails { frequency, witness } => {
                prop_assert!(brute.is_some(), "certified failure but scan found no zero");
                prop_assert!(
                    op.freq_form()[&frequency].eval(witness).is_zero(),
                    "reported witness does not actually kill the symbol"
                );
            }
            AssumptionVerdict::HoldsCertified | AssumptionVerdict::HoldsOnBox { .. } => {
                prop_assert_eq!(brute, None, "verdict holds but scan found a zero");
            }
        }
    }

    /// Multiplication of series is commutative and distributes over addition
    /// when every factor is an honest polynomial.
    #[test]
    fn polynomial_product_laws(
        u in arb_series(2, 4),
        v in arb_series(2, 4),
        w in arb_series(2, 4),
    ) {
        let uv = u.multiply(&v).unwrap();
        let vu = v.multiply(&u).unwrap();
        prop_assert_eq!(&uv, &vu);

        let lhs = u.multiply(&v.add(&w)).unwrap();
        let rhs = uv.add(&u.multiply(&w).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    /// Shifting respects the group law on the lattice.
    #[test]
    fn shift_composes(u in arb_series(3, 5), a1 in -4i64..=4, a2 in -4i64..=4, b1 in -4i64..=4, b2 in -4i64..=4) {
        let a = (a1, a2);
        let b = (b1, b2);
        let both = (a1 + b1, a2 + b2);
        prop_assert_eq!(u.shift(a).shift(b), u.shift(both));
    }
}

/// Applying an operator to a window-limited series erodes the window by the
/// operator's shift footprint, never more.
#[test]
fn output_window_is_the_eroded_input_window() {
    let op = TorusOperator::mizohata();
    let window = LatticeBox::new(-5, 5, -4, 4).unwrap();
    let u = TrigSeries::truncation(
        vec![
            ((2, 1), GaussianRational::one()),
            ((-3, 2), GaussianRational::i()),
        ],
        window,
    )
    .unwrap();
    let out = op.apply(&u).unwrap();
    match out.domain() {
        torus_spectral::Domain::Window(b) => {
            assert_eq!((b.n1_min, b.n1_max), (-4, 4));
            assert_eq!((b.n2_min, b.n2_max), (-4, 4));
        }
        other => panic!("expected a window domain, got {other:?}"),
    }
}
