//! Tangent vectors of the Hilbert scheme at a length-2 subscheme: the
//! basis produced by `tangent_space`, combinations, the induced line in
//! the Pluecker ambient, and the three compatibility checks every tangent
//! direction must satisfy.
//!
//! Run with `cargo run --example tangent_vectors`.

use punctual::hilb::{dagger_check, embed, lifted_line, tangent_combination, tangent_space};
use punctual::rat::{rat, Rat};
use punctual::schemes0d::{LinearSeries, Point, Variety, ZeroScheme};

fn main() -> punctual::Result<()> {
    let series = LinearSeries::new(Variety::P2, 4);
    let z = ZeroScheme::reduced(
        Variety::P2,
        &[Point::p2_affine(rat(0), rat(0)), Point::p2_affine(rat(1), rat(2))],
    )?;

    // the tangent space at a reduced pair on a surface has dimension 4:
    // two directions per point
    let basis = tangent_space(&z)?;
    println!("tangent space at the reduced pair has dimension {}", basis.len());
    for (i, t) in basis.iter().enumerate() {
        println!("  basis vector {i}: rank {}, kernel scheme colength {}", t.rank(), t.kernel_scheme().colength());
    }

    // combinations with nonzero coordinates at both points have rank 2
    let coeffs: Vec<Rat> = [1, -2, 3, 1].iter().map(|&c| rat(c)).collect();
    let t = tangent_combination(&basis, &coeffs)?;
    println!();
    println!("combination (1, -2, 3, 1): rank {}", t.rank());
    println!("  kernel scheme colength {}", t.kernel_scheme().colength());
    assert!(t.olinearity_ok(), "tangent maps must be linear over the local rings");

    // a rank-2 tangent direction lifts to an honest line through the
    // embedded point in the Pluecker ambient
    let h = embed(&series, &z)?;
    let line = lifted_line(&series, &t)?;
    println!();
    println!("lifted line: dim {} in ambient {}", line.dim(), line.ambient());
    let base_dense = h.plucker_dual().to_dense();
    assert!(line.contains_vector(&base_dense), "the lifted line passes through the base point");
    println!("the line passes through the embedded base point");

    // different combinations lift to different lines through the same point
    let t2 = tangent_combination(&basis, &[rat(1), rat(0), rat(0), rat(1)])?;
    let line2 = lifted_line(&series, &t2)?;
    let joint = line.sum(&line2);
    println!("two independent directions span a plane: joint dim {}", joint.dim());

    // the three compatibilities: the induced map on sections determines
    // the sheaf-level image, its kernel is the sections through the kernel
    // scheme, and that scheme sits over the same support
    let report = dagger_check(&series, &t)?;
    println!();
    println!("compatibility checks for the combination:");
    println!("  section-level image determines the sheaf image: {}", report.preimage_matches);
    println!("  kernel equals sections through the kernel scheme: {}", report.kernel_matches);
    println!("  kernel scheme supported on supp(z): {}", report.support_matches);
    assert!(report.preimage_matches && report.kernel_matches && report.support_matches);

    // rank-1 directions keep one point fixed; their kernel scheme is
    // strictly larger than the base
    let t1 = tangent_combination(&basis, &[rat(1), rat(1), rat(0), rat(0)])?;
    println!();
    println!("rank-1 direction: rank {}, kernel colength {}", t1.rank(), t1.kernel_scheme().colength());
    let l1 = lifted_line(&series, &t1)?;
    assert!(l1.contains_vector(&base_dense));
    println!("its lifted line still passes through the base point");
    Ok(())
}
