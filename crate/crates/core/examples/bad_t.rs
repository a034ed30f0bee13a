//! Walks the d = 1 seed through the whole pipeline: split sequence,
//! Drinfel'd polynomial, excluded t values, and a verdict at the bad t.

use tdpair::{build_seed, drinfeld_poly, theorem_verdict, Rational};

fn main() -> Result<(), tdpair::Error> {
    let ps = build_seed("d1")?;
    let zeta = ps.split_sequence()?;
    println!("zeta = {zeta:?}");

    let p = drinfeld_poly(&zeta, ps.ctx())?;
    println!("P(x) = {:?}", p.poly());
    let bad: Rational = "9/4".parse()?;
    assert_eq!(p.rational_bad_t(), vec![bad.clone()]);
    println!("rational bad t = {:?} (plus t = 0)", p.rational_bad_t());

    let verdict = theorem_verdict(&ps, &bad)?;
    assert!(!verdict.predicted && !verdict.actual);
    println!(
        "at t = {bad}: predicted {}, verified {}, witness {:?}",
        verdict.predicted, verdict.actual, verdict.witness
    );
    Ok(())
}
