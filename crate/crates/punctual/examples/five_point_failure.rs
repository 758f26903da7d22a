//! The classical failure of the chord-intersection principle one degree
//! below the threshold. Five points on the degree-3 rational normal curve
//! are forced into a linear relation, and the two chord lines of the
//! Hilbert square built from them meet in a point that carries no
//! subscheme at all. In degree 4 the same construction is impossible.
//!
//! Run with `cargo run --example five_point_failure`.

use punctual::harness::report::mv_str;
use punctual::hilb::{
    embed, identifiability_certificate, line_intersection, membership_in_hilb, Certificate,
    LineMeet, Membership,
};
use punctual::linalg::{Matrix, Subspace};
use punctual::rat::rat;
use punctual::schemes0d::{LinearSeries, Point, Variety, ZeroScheme};

fn main() -> punctual::Result<()> {
    let series = LinearSeries::new(Variety::P1, 3);
    let points: Vec<Point> = (0..5).map(|t| Point::p1_affine(rat(t))).collect();

    // five evaluation vectors in a 4-dimensional section space must be
    // linearly dependent; solve for the relation explicitly
    let cols: Vec<Vec<_>> = points.iter().map(|p| series.eval_functional(p)).collect();
    let relation = Matrix::from_rows(cols[..4].to_vec())
        .transpose()
        .solve(&cols[4])
        .expect("five vectors in dimension four are dependent");
    println!("v4 = {} v0 + {} v1 + {} v2 + {} v3", relation[0], relation[1], relation[2], relation[3]);

    // chords of the Hilbert square image: pair each of the first four
    // points with the fifth, embed the pairs, and join duals 0-1 and 2-3
    let mut duals = Vec::new();
    for p in &points[..4] {
        let z = ZeroScheme::reduced(Variety::P1, &[p.clone(), points[4].clone()])?;
        duals.push(embed(&series, &z)?.plucker_dual().to_dense());
    }
    let ambient = duals[0].len();
    let l1 = Subspace::span(ambient, vec![duals[0].clone(), duals[1].clone()]);
    let l2 = Subspace::span(ambient, vec![duals[2].clone(), duals[3].clone()]);

    let w = match line_intersection(series.h0(), 2, &l1, &l2)? {
        LineMeet::Point(w) => w,
        other => panic!("the chords must meet in one point, got {other:?}"),
    };
    println!();
    println!("the two chord lines meet in {}", mv_str(&w));
    println!("decomposable: {}", w.is_decomposable());

    // decomposable, yet carrying no subscheme: the base locus of its
    // section space is a single reduced point instead of a length-2 scheme
    match membership_in_hilb(&series, &w)? {
        Membership::No { reason } => println!("not on the Hilbert square image: {reason}"),
        Membership::Yes(_) => panic!("the meeting point must lie off the image"),
    }

    // worse, the meeting point sits on a whole star of chords, so even as
    // a secant point it is maximally non-identifiable
    match identifiability_certificate(&series, &w)? {
        Certificate::NonIdentifiable(ws) => {
            println!();
            println!("chords through the meeting point ({} found, search capped):", ws.len());
            for v in &ws {
                println!("  {}", v.describe());
            }
        }
        other => panic!("expected many decompositions, got {other:?}"),
    }

    // in degree 4 the evaluation vectors of any five distinct points are
    // independent, so the relation that drove the construction is gone
    let series4 = LinearSeries::new(Variety::P1, 4);
    let cols4: Vec<Vec<_>> = points.iter().map(|p| series4.eval_functional(p)).collect();
    let rank = Matrix::from_rows(cols4).rank();
    println!();
    println!("in degree 4 the five evaluation vectors have rank {rank}: no relation, no failure");
    assert_eq!(rank, 5);
    Ok(())
}
