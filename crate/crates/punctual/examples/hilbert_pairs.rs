//! Embedding length-2 subschemes into the Grassmannian: Pluecker duals,
//! the combinatorial distance between Hilbert points, membership testing,
//! and the pencils that realize lines inside the image.
//!
//! Run with `cargo run --example hilbert_pairs`.

use punctual::harness::report::mv_str;
use punctual::hilb::{
    embed, hamming_distance_hilb, hilb_line_test, line_pencil, membership_in_hilb, LineVerdict,
    Membership,
};
use punctual::rat::{rat, ratio};
use punctual::schemes0d::{LinearSeries, Point, Variety, ZeroScheme};

fn main() -> punctual::Result<()> {
    // degree 4 on the line is 3-very-ample, comfortably enough for pairs
    let series = LinearSeries::new(Variety::P1, 4);
    let pt = |t: i64| Point::p1_affine(rat(t));

    let z01 = ZeroScheme::reduced(Variety::P1, &[pt(0), pt(1)])?;
    let z02 = ZeroScheme::reduced(Variety::P1, &[pt(0), pt(2)])?;
    let z23 = ZeroScheme::reduced(Variety::P1, &[pt(2), pt(3)])?;

    // each length-2 scheme embeds as the plane of sections through it,
    // recorded both as a subspace and as its decomposable Pluecker dual
    let h01 = embed(&series, &z01)?;
    println!("z = {{0, 1}} embeds with section space of codim {}", h01.sections().codim());
    println!("  pluecker dual = {}", mv_str(h01.plucker_dual()));
    assert!(h01.plucker_dual().is_decomposable());

    // distance counts the length outside the largest common subscheme
    let h02 = embed(&series, &z02)?;
    let h23 = embed(&series, &z23)?;
    println!();
    println!("distance({{0,1}}, {{0,2}}) = {}", hamming_distance_hilb(&h01, &h02));
    println!("distance({{0,1}}, {{2,3}}) = {}", hamming_distance_hilb(&h01, &h23));

    // membership goes the other way: given a 2-vector, decide whether it
    // is the Pluecker dual of an actual length-2 subscheme
    match membership_in_hilb(&series, h01.plucker_dual())? {
        Membership::Yes(z) => {
            let supp: Vec<String> = z.support().iter().map(|p| p.to_string()).collect();
            println!("membership recovers the scheme with support {}", supp.join(", "));
        }
        Membership::No { reason } => println!("unexpectedly off the image: {reason}"),
    }
    let off = h01.plucker_dual().add(h23.plucker_dual());
    match membership_in_hilb(&series, &off)? {
        Membership::Yes(_) => println!("unexpectedly on the image"),
        Membership::No { reason } => println!("the sum of two duals is off the image: {reason}"),
    }

    // on a curve no line through two distinct Hilbert points stays inside
    // the image
    let test = hilb_line_test(&series, &z01, &z02)?;
    println!();
    println!("line through {{0,1}} and {{0,2}} contained in the image: {:?}", test.verdict);

    // on a surface the contained lines are pencils of tangent directions
    // at a fixed point; walk one such pencil explicitly
    let plane = LinearSeries::new(Variety::P2, 3);
    let o = Point::p2_affine(rat(0), rat(0));
    let dx = ZeroScheme::curvilinear(o.clone(), &[rat(1), rat(0)], 2)?;
    let dy = ZeroScheme::curvilinear(o.clone(), &[rat(0), rat(1)], 2)?;
    let test = hilb_line_test(&plane, &dx, &dy)?;
    assert_eq!(test.verdict, LineVerdict::Contained);
    println!();
    println!("on p2 the pencil of tangent directions at a point is a line in the image:");
    let pencil = line_pencil(&plane, &dx, &dy)?;
    for (c1, c2) in [(rat(1), rat(0)), (rat(0), rat(1)), (rat(1), rat(1)), (rat(2), ratio(-1, 3))] {
        let member = pencil.member(&c1, &c2)?;
        let h = embed(&plane, &member)?;
        println!(
            "  member at [{c1}:{c2}] has colength {} and dual {}",
            member.colength(),
            mv_str(h.plucker_dual())
        );
    }
    Ok(())
}
