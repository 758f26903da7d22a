//! Lines on and through the Grassmannian of planes: Pluecker coordinates,
//! secant lines of two points, pencils through a flag, and first-order
//! tangent data.
//!
//! Run with `cargo run --example grassmann_lines`.

use punctual::grassmann::{hamming_distance, line_flag, secant_line, GrassmannPoint};
use punctual::harness::report::mv_str;
use punctual::hilb::{line_intersection, LineMeet};
use punctual::linalg::{Matrix, Subspace};
use punctual::rat::{rat, Rat};

fn v(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| rat(x)).collect()
}

fn main() -> punctual::Result<()> {
    // two planes in Q^4 and their Pluecker images in wedge^2 Q^4
    let p = GrassmannPoint::from_rows(4, vec![v(&[1, 0, 1, 0]), v(&[0, 1, 0, 2])]);
    let q = GrassmannPoint::from_rows(4, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 1, 0])]);
    println!("pl(p) = {}", mv_str(&p.plucker()));
    println!("pl(q) = {}", mv_str(&q.plucker()));

    // the Pluecker vector remembers the plane: its wedge kernel is p itself
    assert_eq!(&p.plucker().kernel_of_wedge(), p.subspace());
    println!("kernel of wedge recovers the plane exactly");

    // the combinatorial distance counts how far the planes are from
    // sharing a basis: dim p - dim (p meet q)
    println!("hamming distance(p, q) = {}", hamming_distance(&p, &q));

    // the secant line through pl(p) and pl(q) inside P(wedge^2 Q^4)
    let l1 = secant_line(&p, &q)?;
    println!("secant line through p and q has dim {} in ambient {}", l1.dim(), l1.ambient());

    // a second secant line sharing the point p meets the first in pl(p)
    let r = GrassmannPoint::from_rows(4, vec![v(&[1, 1, 0, 0]), v(&[0, 0, 1, 1])]);
    let l2 = secant_line(&p, &r)?;
    match line_intersection(4, 2, &l1, &l2)? {
        LineMeet::Point(w) => {
            println!("the two secant lines meet in {}", mv_str(&w));
            assert_eq!(w.projective_normal_form(), p.plucker().projective_normal_form());
        }
        other => panic!("expected a single meeting point, got {other:?}"),
    }

    // lines lying on the Grassmannian itself are pencils of planes through
    // a common line inside a common 3-space; line_flag recovers that flag
    let a = GrassmannPoint::from_rows(4, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]);
    let b = GrassmannPoint::from_rows(4, vec![v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0])]);
    let on_gr = secant_line(&a, &b)?;
    let flag = line_flag(4, 2, &on_gr)?;
    println!();
    println!("pencil flag: inner dim {}, outer dim {}", flag.inner().dim(), flag.outer().dim());
    for (c1, c2) in [(1i64, 0i64), (0, 1), (1, 1), (2, -3)] {
        let member = flag.member(&rat(c1), &rat(c2))?;
        println!(
            "  member at [{c1}:{c2}] = {}  (decomposable: {})",
            mv_str(&member.plucker()),
            member.plucker().is_decomposable()
        );
    }

    // first-order data: a tangent vector at a is a map from the plane to
    // the quotient, and its wedge direction spans the tangent line
    let images = Matrix::from_rows(vec![v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]);
    let t = punctual::grassmann::GrTangentVector::new(a.clone(), &images)?;
    println!();
    println!("tangent vector rank       = {}", t.rank());
    println!("wedge direction           = {}", mv_str(&t.direction()));
    let moved = t.tangent_line_points(&rat(1));
    println!("point at parameter 1      = {}", mv_str(&moved));
    let span = Subspace::span(
        moved.to_dense().len(),
        vec![a.plucker().to_dense(), t.direction().to_dense(), moved.to_dense()],
    );
    assert_eq!(span.dim(), 2, "the tangent line is a line");
    println!("base, direction and moved point are coplanar, as a line should be");
    Ok(())
}
