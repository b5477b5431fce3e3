//! Classify the reference family of homogeneous symbols: exact verdicts
//! with number-theoretic certificates, and explicit kernel witnesses for
//! every failure.

use torus_spectral::error::Result;
use torus_spectral::format::parse_poly;
use torus_spectral::hypo::{
    classify_symbol, kernel_witness, HypoCertificate, HypoVerdict, DEFAULT_DEGREE_CAP,
};

fn main() -> Result<()> {
    let table = [
        ("x1^2 + x2^2", "1 2 0, 1 0 2"),
        ("x1^2 - 2 x2^2", "1 2 0, -2 0 2"),
        ("(x1^2 - 2 x2^2)^2", "1 4 0, -4 2 2, 4 0 4"),
        ("x1^2 - x2^2", "1 2 0, -1 0 2"),
        ("x1 x2", "1 1 1"),
        ("x1^3 - x1 x2^2", "1 3 0, -1 1 2"),
        ("x1^3 - 2 x2^3", "1 3 0, -2 0 3"),
    ];

    for (name, terms) in table {
        let report = classify_symbol(&parse_poly(terms)?, DEFAULT_DEGREE_CAP)?;
        print!("{name:20} ");
        match &report.verdict {
            HypoVerdict::Hypoelliptic { certificate } => {
                let kind = match certificate {
                    HypoCertificate::Elliptic => "elliptic, no real roots".to_string(),
                    HypoCertificate::IrreducibleSymbol { degree, roots } => format!(
                        "irreducible of degree {degree}, {} real algebraic root(s)",
                        roots.len()
                    ),
                    HypoCertificate::FactoredSymbol { roots } => format!(
                        "factored, max real multiplicity {}",
                        roots.iter().map(|r| r.multiplicity).max().unwrap_or(0)
                    ),
                };
                println!("HYPOELLIPTIC    {kind}");
            }
            HypoVerdict::NotHypoelliptic { witnesses } => {
                let ws: Vec<String> = witnesses
                    .iter()
                    .map(|w| format!("({}, {})", w.0, w.1))
                    .collect();
                println!("NOT             zero directions {}", ws.join(", "));

                // The witness direction carries an explicit kernel series:
                // every partial sum is annihilated exactly.
                let w = witnesses[0];
                let k = kernel_witness(w, 8);
                println!(
                    "{:20} kernel witness: sum of e^(i j ({}, {}).x), {} terms, all |coeff| = 1",
                    "", w.0, w.1, k.term_count()
                );
            }
            HypoVerdict::Inconclusive { degree, cap } => {
                println!("INCONCLUSIVE    degree {degree} over cap {cap}");
            }
        }
    }
    println!();

    // Root certificates carry isolating intervals and Liouville data.
    let report = classify_symbol(&parse_poly("1 3 0, -2 0 3")?, DEFAULT_DEGREE_CAP)?;
    if let HypoVerdict::Hypoelliptic {
        certificate: HypoCertificate::IrreducibleSymbol { roots, .. },
    } = &report.verdict
    {
        for r in roots {
            println!(
                "root of x^3 - 2: approx {:.6}, isolated in [{}, {}], |a - p/q| > C/q^{}",
                r.approx, r.interval.0, r.interval.1, r.liouville_exponent
            );
        }
    }
    Ok(())
}
