//! The distributive lattice of growth sections: sup/inf with dominance
//! pruning, exact pointwise identities, sound-but-incomplete symbolic
//! comparison, and solution sections of operators.

use num::BigRational;
use torus_spectral::error::Result;
use torus_spectral::format::{parse_envelope, serialize_envelope};
use torus_spectral::operator::TorusOperator;
use torus_spectral::sections::{
    compare_envelopes, operator_image, probe_ratio_trend, section_inf, section_sup,
    solution_section, AtomEnvelope, Comparison, EnvelopeExpr, Section,
};
use torus_spectral::symbol::MultiIndex;
use torus_spectral::{GaussianRational, LatticeBox, TrigSeries};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() -> Result<()> {
    // Sobolev atoms H^1 and H^2: sup prunes to the larger class.
    let h1 = Section::atom(AtomEnvelope::sobolev(&rat(1, 1)));
    let h2 = Section::atom(AtomEnvelope::sobolev(&rat(2, 1)));
    println!("sup(H^1, H^2) = {}", serialize_envelope(&section_sup(&h1, &h2).generator));
    println!("inf(H^1, H^2) = {}", serialize_envelope(&section_inf(&h1, &h2).generator));
    println!();

    // Distributivity holds as an exact pointwise identity of envelope
    // values, checked here on a probe box.
    let a = EnvelopeExpr::atom(AtomEnvelope::polynomial(rat(2, 1)));
    let b = EnvelopeExpr::atom(AtomEnvelope::exponential(rat(1, 2), rat(0, 1)));
    let c = EnvelopeExpr::atom(AtomEnvelope::factorial(rat(0, 1), rat(1, 2)));
    let lhs = EnvelopeExpr::min_of(vec![a.clone(), EnvelopeExpr::max_of(vec![b.clone(), c.clone()])]);
    let rhs = EnvelopeExpr::max_of(vec![
        EnvelopeExpr::min_of(vec![a.clone(), b]),
        EnvelopeExpr::min_of(vec![a, c]),
    ]);
    let exact = LatticeBox::new(-8, 8, -8, 8)?
        .iter()
        .all(|k| (&lhs.ln_value(k) - &rhs.ln_value(k)).is_zero());
    println!("min(a, max(b, c)) = max(min(a,b), min(a,c)) pointwise: {exact}");
    println!();

    // Symbolic comparison is sound but incomplete: a true domination can
    // come back Unknown, and the probe trend is the honest fallback.
    let poly = parse_envelope("atom(3, 0, 0, 0, 0)")?;
    let axis_exp = parse_envelope("max(atom(0, 1, 0, 0, 0), atom(0, 0, 1, 0, 0))")?;
    match compare_envelopes(&poly, &axis_exp) {
        Comparison::LeCertified => println!("poly <= max(e^|k1|, e^|k2|): certified"),
        Comparison::NotLeCertified => println!("poly <= max(e^|k1|, e^|k2|): refuted"),
        Comparison::Unknown => {
            let (trend, _) = probe_ratio_trend(&poly, &axis_exp, 60);
            println!("poly <= max(e^|k1|, e^|k2|): symbolically unknown, probe trend {trend:?}");
        }
    }
    let e1 = parse_envelope("atom(0, 1, 0, 0, 0)")?;
    let e2 = parse_envelope("atom(0, 0, 1, 0, 0)")?;
    println!("e^|k1| <= e^|k2|: {:?}", compare_envelopes(&e1, &e2));
    println!();

    // Operators push sections forward by half their order in the
    // polynomial exponent.
    let one = || TrigSeries::constant(GaussianRational::one());
    let lap = TorusOperator::from_alpha_form([
        (MultiIndex::new(2, 0), one()),
        (MultiIndex::new(0, 2), one()),
    ])?;
    let img = operator_image(&lap, &h2);
    println!("laplacian image of H^2 generator: {}", serialize_envelope(&img.generator));
    println!();

    // Solution sections, three regimes. Elliptic constant coefficients
    // divide exactly; the Mizohata operator gains a factorial order; a
    // genuinely variable operator falls back to a labeled empirical fit.
    let g = Section::atom(AtomEnvelope::polynomial(rat(0, 1)));
    let rep = solution_section(&lap, &g)?;
    println!(
        "laplacian:  {} (mode {:?}, certified {})",
        serialize_envelope(&rep.section.generator),
        rep.mode,
        rep.certified_atoms
    );

    let rep = solution_section(&TorusOperator::mizohata(), &g)?;
    println!(
        "mizohata:   {} (mode {:?}, contained in {})",
        serialize_envelope(&rep.section.generator),
        rep.mode,
        rep.containment
            .map_or_else(|| "none".into(), |t| t.to_string())
    );

    let osc = || TrigSeries::delta((1, 0));
    let varied = TorusOperator::from_alpha_form([
        (MultiIndex::new(2, 0), one().add(&osc())),
        (MultiIndex::new(0, 2), one().add(&osc())),
        (MultiIndex::new(0, 0), osc()),
    ])?;
    let rep = solution_section(&varied, &g)?;
    println!(
        "variable:   {} (mode {:?}, note: {})",
        serialize_envelope(&rep.section.generator),
        rep.mode,
        rep.note
    );
    Ok(())
}
