//! Decomposing a point on a secant line of the embedded Hilbert square:
//! the search for chords through a given 2-vector, the identifiability
//! certificate, and the fiber-dimension probe that confirms the secant
//! map is generically one-to-one in degree 4.
//!
//! Run with `cargo run --example rank_two_identifiability`.

use punctual::harness::report::mv_str;
use punctual::hilb::{
    fiber_rank, identifiability_certificate, secant_decompositions, Certificate, WitnessKind,
};
use punctual::rat::rat;
use punctual::schemes0d::{LinearSeries, Point, Variety, ZeroScheme};

fn main() -> punctual::Result<()> {
    let series = LinearSeries::new(Variety::P1, 4);
    let pt = |t: i64| Point::p1_affine(rat(t));

    // build a rank-4 point: a combination of two disjoint chord duals
    let z1 = ZeroScheme::reduced(Variety::P1, &[pt(0), pt(1)])?;
    let z2 = ZeroScheme::reduced(Variety::P1, &[pt(2), pt(3)])?;
    let h1 = punctual::hilb::embed(&series, &z1)?;
    let h2 = punctual::hilb::embed(&series, &z2)?;
    let omega = h1.plucker_dual().add(&h2.plucker_dual().scale(&rat(2)));
    println!("omega = pl({{0,1}}) + 2 pl({{2,3}})");
    println!("      = {}", mv_str(&omega));
    println!("2-vector rank = {}", omega.two_vector_rank()?);

    // enumerate every secant or tangent line of the image through omega
    let found = secant_decompositions(&series, &omega)?;
    println!();
    println!("decomposition search complete: {}", found.complete);
    for (i, w) in found.witnesses.iter().enumerate() {
        println!("  witness {i}: {}", w.describe());
    }

    // exactly one witness means the point is identifiable: the original
    // pair of schemes is recoverable from omega alone
    match identifiability_certificate(&series, &omega)? {
        Certificate::Identifiable(w) => {
            println!();
            println!("certificate: identifiable, via {}", w.describe());
            match &w.kind {
                WitnessKind::Secant { z1: a, z2: b } => {
                    let pair = [a.scheme(), b.scheme()];
                    assert!(
                        pair.contains(&Some(&z1)) && pair.contains(&Some(&z2)),
                        "the witness chord must recover the two original schemes"
                    );
                    println!("the witness chord passes through the two original schemes");
                }
                WitnessKind::Tangent { .. } => println!("recovered as a tangent line"),
            }
        }
        other => panic!("expected an identifiability certificate, got {other:?}"),
    }

    // the fiber probe looks for degree-r syzygies among the coordinates of
    // the decomposition map near omega; dimension 1 means a 0-dimensional
    // fiber in every tested degree
    println!();
    let witness = &found.witnesses[0];
    for r in 1..=3 {
        let rank = fiber_rank(&series, &omega, witness, r)?;
        println!("fiber rank in degree {r} = {rank}");
        assert_eq!(rank, 1);
    }

    // a decomposable 2-vector is not a secant point at all; the search
    // reports the scheme it lies on instead
    let on_image = secant_decompositions(&series, h1.plucker_dual())?;
    println!();
    match on_image.on_variety {
        Some(z) => println!("pl({{0,1}}) itself lies on the image, colength {}", z.colength()),
        None => println!("unexpectedly off the image"),
    }
    Ok(())
}
