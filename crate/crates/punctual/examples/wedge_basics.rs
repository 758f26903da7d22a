//! Tour of the exterior algebra layer: blades, wedge products, the kernel
//! test for decomposability, division by a decomposable factor, and the
//! coarse orbit classification used by the secant machinery.
//!
//! Run with `cargo run --example wedge_basics`.

use punctual::exterior::{classify_orbit, MultiVector, OrbitClass};
use punctual::harness::report::mv_str;
use punctual::rat::rat;

fn main() -> punctual::Result<()> {
    let n = 6;

    // a decomposable 2-vector is a wedge of two honest vectors
    let u = MultiVector::from_vector(&[rat(1), rat(2), rat(0), rat(1), rat(0), rat(0)]);
    let v = MultiVector::from_vector(&[rat(0), rat(1), rat(1), rat(0), rat(0), rat(0)]);
    let uv = u.wedge(&v)?;
    println!("u wedge v             = {}", mv_str(&uv));
    println!("  decomposable        = {}", uv.is_decomposable());
    println!("  kernel of wedge dim = {}", uv.kernel_of_wedge().dim());
    println!("  2-vector rank       = {}", uv.two_vector_rank()?);

    // antisymmetry: v wedge u is the negative
    let vu = v.wedge(&u)?;
    assert!(uv.add(&vu).is_zero(), "wedge must be antisymmetric");
    println!("v wedge u + u wedge v = 0, as it must be");

    // the generic 2-vector in Q^6 has rank 6 and an empty wedge kernel
    let omega = MultiVector::blade(n, &[0, 1])
        .add(&MultiVector::blade(n, &[2, 3]))
        .add(&MultiVector::blade(n, &[4, 5]));
    println!();
    println!("omega                 = {}", mv_str(&omega));
    println!("  decomposable        = {}", omega.is_decomposable());
    println!("  2-vector rank       = {}", omega.two_vector_rank()?);

    // contraction against a covector drops the degree by one
    let e0_dual: Vec<_> = (0..n).map(|i| rat(i64::from(i == 0))).collect();
    let contracted = omega.contract(&e0_dual)?;
    println!("  contracted with e0* = {}", mv_str(&contracted));

    // dividing a blade by a decomposable factor recovers the complement
    let abc = MultiVector::blade(n, &[0, 2, 4]);
    let ab = MultiVector::blade(n, &[0, 2]);
    let c = abc.divide_by_decomposable(&ab)?;
    println!();
    println!("e024 / e02            = {}", mv_str(&c));
    assert_eq!(ab.wedge(&c)?, abc, "division must invert the wedge");

    // the orbit classifier distinguishes the three shapes the secant
    // analysis cares about for 3-vectors
    let samples = [
        ("blade e012", MultiVector::blade(n, &[0, 1, 2])),
        (
            "e0 wedge (e12 + e34)",
            MultiVector::blade(n, &[0, 1, 2]).add(&MultiVector::blade(n, &[0, 3, 4])),
        ),
        (
            "e012 + e345",
            MultiVector::blade(n, &[0, 1, 2]).add(&MultiVector::blade(n, &[3, 4, 5])),
        ),
    ];
    println!();
    for (label, w) in &samples {
        let orbit = match classify_orbit(w)? {
            OrbitClass::OnGrassmannian(s) => format!("decomposable, support dim {s}"),
            OrbitClass::Sigma2Theta2(s) => format!("kappa wedge tau, support dim {s}"),
            OrbitClass::HigherRank(s) => format!("higher rank, support dim {s}"),
        };
        println!("{label:22} -> {orbit}");
    }

    // the projective normal form rescales so the first nonzero Pluecker
    // coordinate is 1, which makes projective comparisons plain equality
    let scaled = uv.scale(&rat(-7));
    assert_eq!(scaled.projective_normal_form(), uv.projective_normal_form());
    println!();
    println!("normal form of -7 (u wedge v) = {}", mv_str(&scaled.projective_normal_form().unwrap()));
    Ok(())
}
