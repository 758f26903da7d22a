//! Zero-dimensional subschemes of the line and the plane: local ideals,
//! colengths, the lattice operations, and the section spaces a linear
//! series cuts out.
//!
//! Run with `cargo run --example points_and_ideals`.

use punctual::rat::rat;
use punctual::schemes0d::{
    parse_scheme, parse_series, section_space, LocalIdeal, Point, Variety, ZeroScheme,
};

fn main() -> punctual::Result<()> {
    // a linear series is the space of degree-a forms on p1 or p2; its
    // basis is the full set of monomials of that degree
    let series = parse_series("p2 O(3)")?;
    println!("h0(p2, O(3)) = {} monomials", series.h0());

    // evaluation at a point is a functional on that space
    let p = Point::p2_affine(rat(1), rat(2));
    let evals: Vec<String> = series.eval_functional(&p).iter().take(3).map(|c| c.to_string()).collect();
    println!("evaluation of the monomial basis at {p} starts with {}, ...", evals.join(", "));

    // reduced schemes are finite point sets; colength counts the points
    let q = Point::p2_affine(rat(0), rat(0));
    let two_points = ZeroScheme::reduced(Variety::P2, &[p.clone(), q.clone()])?;
    println!("reduced pair colength = {}", two_points.colength());

    // non-reduced structure lives in a local ideal at the center; a
    // curvilinear ideal of length 3 remembers a direction and a curving
    let direction = [rat(1), rat(0)];
    let curvi = LocalIdeal::curvilinear(q.clone(), &direction, 3)?;
    println!("curvilinear length-3 ideal at {q}: order {}, colength {}", curvi.order(), curvi.colength());

    // contact ideals come from explicit local generators; (y - x^2) + m^3
    // is the second-order neighborhood of the origin on the parabola
    let text = "point = (0, 0); ideal = (y - x^2) + m^3";
    let contact = parse_scheme(Variety::P2, text)?;
    println!("parsed `{text}`");
    println!("  colength {}", contact.colength());

    // the lattice operations act componentwise at shared centers
    let double_x = ZeroScheme::curvilinear(q.clone(), &[rat(1), rat(0)], 2)?;
    let double_y = ZeroScheme::curvilinear(q.clone(), &[rat(0), rat(1)], 2)?;
    let meet = double_x.sum(&double_y);
    let join = double_x.intersect(&double_y);
    println!();
    println!("two tangent directions at the origin:");
    println!("  largest common subscheme has colength {}", meet.colength());
    println!("  smallest common superscheme has colength {}", join.colength());
    assert!(meet.is_subscheme_of(&double_x) && meet.is_subscheme_of(&double_y));
    assert!(double_x.is_subscheme_of(&join) && double_y.is_subscheme_of(&join));

    // squared ideals encode tangency conditions along the scheme; they
    // drive the tangent space computations of the Hilbert scheme layer
    let sq = double_x.square();
    println!("  squared first direction has colength {}", sq.colength());

    // sections through a scheme form a subspace of the series; for a
    // scheme the series separates, the codimension equals the colength
    let w = section_space(&series, &two_points);
    println!();
    println!(
        "sections of O(3) through the reduced pair: codim {} in h0 = {}",
        w.codim(),
        series.h0()
    );
    let w2 = section_space(&series, &contact);
    println!("sections through the parabola contact scheme: codim {}", w2.codim());

    // on the line everything is a sum of curvilinear germs; a length-4
    // germ at t = 1 imposes 4 conditions on O(5)
    let line_series = parse_series("p1 O(5)")?;
    let germ = ZeroScheme::curvilinear(Point::p1_affine(rat(1)), &[rat(1)], 4)?;
    let w3 = section_space(&line_series, &germ);
    println!("sections of O(5) through a length-4 germ on p1: codim {}", w3.codim());
    Ok(())
}
