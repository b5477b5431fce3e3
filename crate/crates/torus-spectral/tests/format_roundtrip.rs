//! Round-trip stability of every canonical text and JSON format:
//! serialize, parse, serialize again, and require identical bytes.

use proptest::prelude::*;
use torus_spectral::format::{
    parse_envelope, parse_operator, parse_poly, parse_series, serialize_envelope,
    serialize_operator, serialize_poly, serialize_series, series_from_json, series_to_json,
};
use torus_spectral::operator::TorusOperator;
use torus_spectral::sections::{AtomEnvelope, EnvelopeExpr};
use torus_spectral::symbol::MultiIndex;
use torus_spectral::{GaussianRational, LatticeBox, TrigSeries};

prop_compose! {
    fn arb_coeff()(num in -9i64..=9, den in 1i64..=7, i_num in -9i64..=9, i_den in 1i64..=7)
        -> GaussianRational
    {
        GaussianRational::from_parts(num, den, i_num, i_den)
    }
}

prop_compose! {
    fn arb_poly_series()(
        terms in prop::collection::vec(((-6i64..=6, -6i64..=6), arb_coeff()), 0..=8)
    ) -> TrigSeries {
        TrigSeries::polynomial(terms)
    }
}

prop_compose! {
    fn arb_windowed_series()(
        terms in prop::collection::vec(((-5i64..=5, -5i64..=5), arb_coeff()), 0..=8),
        pad in 0i64..=3,
    ) -> TrigSeries {
        TrigSeries::truncation(terms, LatticeBox::symmetric(5 + pad, 5 + pad)).unwrap()
    }
}

prop_compose! {
    fn arb_operator()(
        rows in prop::collection::vec(((0u32..=3, 0u32..=2), arb_poly_series()), 1..=4)
    ) -> TorusOperator {
        TorusOperator::from_alpha_form(
            rows.into_iter().map(|((a1, a2), c)| (MultiIndex::new(a1, a2), c)),
        )
        .unwrap()
    }
}

fn rat(n: i64, d: i64) -> num::BigRational {
    num::BigRational::new(n.into(), d.into())
}

prop_compose! {
    fn arb_atom()(
        a in -8i64..=8, b1 in -4i64..=4, b2 in -4i64..=4,
        c1 in -4i64..=4, c2 in -4i64..=4, d in 1i64..=4,
    ) -> AtomEnvelope {
        AtomEnvelope::new(rat(a, d), rat(b1, 2), rat(b2, 2), rat(c1, 2), rat(c2, 2))
    }
}

fn arb_envelope() -> impl Strategy<Value = EnvelopeExpr> {
    let leaf = || arb_atom().prop_map(EnvelopeExpr::atom);
    let inner = || {
        prop_oneof![
            leaf(),
            prop::collection::vec(leaf(), 2..=3).prop_map(EnvelopeExpr::max_of),
            prop::collection::vec(leaf(), 2..=3).prop_map(EnvelopeExpr::min_of),
        ]
    };
    prop_oneof![
        inner(),
        prop::collection::vec(inner(), 2..=3).prop_map(EnvelopeExpr::max_of),
        prop::collection::vec(inner(), 2..=3).prop_map(EnvelopeExpr::min_of),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn series_text_is_a_fixed_point(u in arb_poly_series()) {
        let first = serialize_series(&u);
        let parsed = parse_series(&first).unwrap();
        prop_assert_eq!(serialize_series(&parsed), first);
        prop_assert_eq!(parsed, u);
    }

    #[test]
    fn windowed_series_text_is_a_fixed_point(u in arb_windowed_series()) {
        let first = serialize_series(&u);
        let parsed = parse_series(&first).unwrap();
        prop_assert_eq!(serialize_series(&parsed), first);
        prop_assert_eq!(parsed, u);
    }

    #[test]
    fn series_json_round_trips(u in arb_windowed_series()) {
        let v = series_to_json(&u);
        let back = series_from_json(&v).unwrap();
        prop_assert_eq!(back, u.clone());
        let text = serde_json::to_string_pretty(&v).unwrap();
        let reparsed = series_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(reparsed, u);
    }

    #[test]
    fn operator_document_is_a_fixed_point(op in arb_operator()) {
        let first = serialize_operator(&op);
        let parsed = parse_operator(&first).unwrap();
        prop_assert_eq!(serialize_operator(&parsed), first);
    }

    #[test]
    fn envelope_text_is_a_fixed_point(e in arb_envelope()) {
        let first = serialize_envelope(&e);
        let parsed = parse_envelope(&first).unwrap();
        prop_assert_eq!(serialize_envelope(&parsed), first);
    }

    /// Whitespace changes outside tokens do not change the parse.
    #[test]
    fn envelope_parse_ignores_extra_spaces(e in arb_envelope()) {
        let text = serialize_envelope(&e);
        let spaced = text.replace(", ", " ,  ").replace('(', "( ");
        let a = parse_envelope(&text).unwrap();
        let b = parse_envelope(&spaced).unwrap();
        prop_assert_eq!(serialize_envelope(&a), serialize_envelope(&b));
    }
}

#[test]
fn poly_term_list_is_a_fixed_point() {
    for text in [
        "1/1 2 0, 1/1 0 2",
        "-2/1 0 2, 1/1 2 0",
        "1/1 4 0, -4/1 2 2, 4/1 0 4",
        "1/3 1 1",
    ] {
        let p = parse_poly(text).unwrap();
        let canon = serialize_poly(&p).unwrap();
        let q = parse_poly(&canon).unwrap();
        assert_eq!(serialize_poly(&q).unwrap(), canon);
    }
}

#[test]
fn unreduced_and_padded_input_canonicalizes() {
    let messy = "box -2 2 -2 2\n  1   0   2/4   -6/-8 \n# comment line\n-1 1 0/9 3/3\n";
    let u = parse_series(messy).unwrap();
    let canon = serialize_series(&u);
    assert_eq!(canon, "box -2 2 -2 2\n-1 1 0/1 1/1\n1 0 1/2 3/4\n");
    assert_eq!(serialize_series(&parse_series(&canon).unwrap()), canon);
}
