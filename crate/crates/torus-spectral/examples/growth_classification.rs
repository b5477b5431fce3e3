//! Classify series against the scale of growth spaces, from factorial
//! summability up to its dual, and show the duality involution.

use num::{BigInt, BigRational, One};
use torus_spectral::error::Result;
use torus_spectral::growth::{classify_growth, SpaceTag};
use torus_spectral::{GaussianRational, LatticeBox, TrigSeries};

fn real(n: BigInt, d: BigInt) -> GaussianRational {
    GaussianRational::new(BigRational::new(n, d), BigRational::from_integer(0.into()))
}

fn on_box(b: LatticeBox, f: impl Fn((i64, i64)) -> GaussianRational) -> Result<TrigSeries> {
    let terms: Vec<_> = b.iter().map(|k| (k, f(k))).collect();
    Ok(TrigSeries::truncation(terms, b)?)
}

fn main() -> Result<()> {
    let b = LatticeBox::new(-16, 16, -16, 16)?;

    // A trigonometric polynomial is eventually zero: H^inf, exactly.
    let poly = TrigSeries::polynomial([((2, 1), GaussianRational::i())]);
    println!("finite support            -> {}", classify_growth(&poly)?.tag);

    // (1 + |k|^2)^(-3) decays fast enough for H^m up to m < 5.
    let decay = on_box(b, |k| {
        let w = BigInt::from(1 + k.0 * k.0 + k.1 * k.1);
        real(BigInt::one(), &w * &w * &w)
    })?;
    println!("(1+|k|^2)^-3              -> {}", classify_growth(&decay)?.tag);

    // Polynomial growth stays inside the tempered class H^-inf.
    let tempered = on_box(b, |k| real(BigInt::from(1 + k.0 * k.0 + k.1 * k.1), BigInt::one()))?;
    println!("(1+|k|^2)                 -> {}", classify_growth(&tempered)?.tag);

    // Exponential decay and growth split into the dual pair E0 / E0*.
    let shrink = on_box(b, |k| {
        let s = k.0.abs().max(k.1.abs()) as u32;
        real(BigInt::one(), BigInt::from(2).pow(s))
    })?;
    let grow = on_box(b, |k| {
        let s = k.0.abs().max(k.1.abs()) as u32;
        real(BigInt::from(2).pow(s), BigInt::one())
    })?;
    println!("2^-max(|k1|,|k2|)         -> {}", classify_growth(&shrink)?.tag);
    println!("2^+max(|k1|,|k2|)         -> {}", classify_growth(&grow)?.tag);

    // Factorial growth along one axis: the Mizohata solution class.
    let fact = on_box(b, |k| {
        let f: BigInt = (2..=k.0.abs()).product::<BigInt>().max(BigInt::one());
        real(f, BigInt::one())
    })?;
    println!("|k1|!                     -> {}", classify_growth(&fact)?.tag);
    println!();

    // Duality is an involution that swaps each space with its conjugate.
    let tags = [
        SpaceTag::L1Fact { axis: 1 },
        SpaceTag::E0,
        SpaceTag::Hinf,
        SpaceTag::Hm {
            m: BigRational::new(5.into(), 2.into()),
        },
    ];
    for t in tags {
        println!("dual({t}) = {}, dual(dual) = {}", t.dual(), t.dual().dual());
    }
    Ok(())
}
