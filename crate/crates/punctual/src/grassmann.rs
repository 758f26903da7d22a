//! Points, lines and tangent vectors of the Grassmannian `Gr(k, Q^n)` in
//! Plücker coordinates.
//!
//! Lines are handled as 2-dimensional subspaces of `∧^k Q^n`, so meeting two
//! lines is a rank computation on four spanning multivectors. Pencils of
//! `k`-planes through a common `(k-1)`-plane inside a common `(k+1)`-plane
//! are the lines that lie on the Grassmannian itself; [`line_flag`] recovers
//! that flag from two decomposable generators.

use crate::exterior::MultiVector;
use crate::linalg::{Matrix, Subspace};
use crate::rat::Rat;
use crate::{Error, Result};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannPoint {
    subspace: Subspace,
}

impl GrassmannPoint {
    pub fn new(subspace: Subspace) -> Self {
        assert!(subspace.dim() >= 1, "a Grassmannian point needs a positive-dimensional plane");
        GrassmannPoint { subspace }
    }

    pub fn from_rows(ambient: usize, rows: Vec<Vec<Rat>>) -> Self {
        GrassmannPoint::new(Subspace::span(ambient, rows))
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn k(&self) -> usize {
        self.subspace.dim()
    }

    pub fn ambient(&self) -> usize {
        self.subspace.ambient()
    }

    /// Wedge of the echelon basis rows. Canonical because the echelon basis
    /// is; `kernel_of_wedge` inverts it back to the plane.
    pub fn plucker(&self) -> MultiVector {
        let mut w = MultiVector::scalar(self.ambient(), num_traits::One::one());
        for r in self.subspace.basis().rows_iter() {
            w = w
                .wedge(&MultiVector::from_vector(r))
                .expect("k <= n so the wedge of basis rows exists");
        }
        w
    }
}

/// `k - dim(p ∩ q)`: the number of basis exchanges needed to pass from one
/// plane to the other, and the secant-variety stratum the pair spans.
pub fn hamming_distance(p: &GrassmannPoint, q: &GrassmannPoint) -> usize {
    assert_eq!(p.k(), q.k(), "distance needs planes of the same dimension");
    assert_eq!(p.ambient(), q.ambient(), "ambient dimensions differ");
    p.k() - p.subspace.intersect(&q.subspace).dim()
}

/// The line through two distinct Plücker images, as a 2-dim subspace of the
/// dense `∧^k` coordinate space.
pub fn secant_line(p: &GrassmannPoint, q: &GrassmannPoint) -> Result<Subspace> {
    assert_eq!(p.k(), q.k(), "secant line needs planes of the same dimension");
    assert_eq!(p.ambient(), q.ambient(), "ambient dimensions differ");
    let a = p.plucker().to_dense();
    let b = q.plucker().to_dense();
    let line = Subspace::span(a.len(), vec![a, b]);
    if line.dim() != 2 {
        return Err(Error::Degenerate("secant line through equal points".into()));
    }
    Ok(line)
}

/// A line contained in the Grassmannian: the pencil of `k`-planes between a
/// fixed `(k-1)`-plane and a fixed `(k+1)`-plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassLine {
    inner: Subspace,
    outer: Subspace,
}

impl GrassLine {
    pub fn new(inner: Subspace, outer: Subspace) -> Result<Self> {
        if inner.ambient() != outer.ambient() || inner.dim() + 2 != outer.dim() {
            return Err(Error::NotALine("flag dimensions must differ by two".into()));
        }
        if !outer.contains(&inner) {
            return Err(Error::NotALine("inner plane not contained in outer plane".into()));
        }
        Ok(GrassLine { inner, outer })
    }

    pub fn inner(&self) -> &Subspace {
        &self.inner
    }

    pub fn outer(&self) -> &Subspace {
        &self.outer
    }

    /// Two vectors completing the inner plane to the outer one.
    pub fn complement_rows(&self) -> Vec<Vec<Rat>> {
        let mut rows = Vec::new();
        for r in self.outer.basis().rows_iter() {
            let reduced = self.inner.reduce_vector(r);
            if reduced.iter().any(|x| !x.is_zero()) {
                rows.push(reduced);
            }
        }
        let comp = Subspace::span(self.outer.ambient(), rows);
        debug_assert_eq!(comp.dim(), 2);
        comp.basis().rows_iter().map(|r| r.to_vec()).collect()
    }

    /// Pencil member `inner + span{c1·w1 + c2·w2}` for the complement basis
    /// `w1, w2`. Degenerates when both coefficients vanish.
    pub fn member(&self, c1: &Rat, c2: &Rat) -> Result<GrassmannPoint> {
        if c1.is_zero() && c2.is_zero() {
            return Err(Error::ZeroInput("pencil member needs a nonzero parameter".into()));
        }
        let comp = self.complement_rows();
        let n = self.outer.ambient();
        let mut v = vec![Rat::zero(); n];
        for i in 0..n {
            v[i] = c1 * &comp[0][i] + c2 * &comp[1][i];
        }
        let mut rows: Vec<Vec<Rat>> =
            self.inner.basis().rows_iter().map(|r| r.to_vec()).collect();
        rows.push(v);
        Ok(GrassmannPoint::from_rows(n, rows))
    }
}

/// Recover the flag of a line lying on the Grassmannian from a 2-dim space
/// of multivectors. Fails when a generator is not decomposable or the two
/// planes are further than distance 1 apart.
pub fn line_flag(n: usize, k: usize, line: &Subspace) -> Result<GrassLine> {
    if line.dim() != 2 {
        return Err(Error::NotALine(format!("expected a 2-dim space, got dim {}", line.dim())));
    }
    let mut planes = Vec::new();
    for row in line.basis().rows_iter() {
        let w = MultiVector::from_dense(n, k, row);
        if !w.is_decomposable() {
            return Err(Error::NotALine("a generator is not decomposable".into()));
        }
        planes.push(w.kernel_of_wedge());
    }
    let inner = planes[0].intersect(&planes[1]);
    if k - inner.dim() != 1 {
        return Err(Error::NotALine(format!(
            "generators lie at distance {}, need 1",
            k - inner.dim()
        )));
    }
    let outer = planes[0].sum(&planes[1]);
    GrassLine::new(inner, outer)
}

/// Tangent vector at `[U]`, presented as a map `U -> V/U` through images of
/// the echelon basis rows of `U`. Images are stored reduced modulo `U`, the
/// canonical coset representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrTangentVector {
    base: GrassmannPoint,
    map: Matrix,
    rank: usize,
}

impl GrTangentVector {
    /// `images` has one row per echelon basis vector of the base plane,
    /// giving its image in `V`; only the class modulo the plane matters.
    pub fn new(base: GrassmannPoint, images: &Matrix) -> Result<Self> {
        let k = base.k();
        let n = base.ambient();
        assert_eq!((images.row_count(), images.col_count()), (k, n), "image matrix shape");
        let mut reduced = Matrix::zeros(k, n);
        for i in 0..k {
            let row = base.subspace().reduce_vector(images.row(i));
            for j in 0..n {
                reduced[(i, j)] = row[j].clone();
            }
        }
        let rank = reduced.rank();
        if rank == 0 {
            return Err(Error::ZeroInput("tangent vector reduces to zero modulo the base".into()));
        }
        Ok(GrTangentVector { base, map: reduced, rank })
    }

    pub fn base(&self) -> &GrassmannPoint {
        &self.base
    }

    pub fn map(&self) -> &Matrix {
        &self.map
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Kernel of the map inside the base plane: combinations of the basis
    /// rows sent to zero in `V/U`.
    pub fn kernel_in_base(&self) -> Subspace {
        // coefficient vectors on the rows, so the left kernel
        let coef = self.map.transpose().kernel();
        let k = self.base.k();
        let n = self.base.ambient();
        let mut rows = Vec::new();
        for c in coef.basis().rows_iter() {
            let mut v = vec![Rat::zero(); n];
            for (i, ci) in c.iter().enumerate().take(k) {
                if ci.is_zero() {
                    continue;
                }
                let u = self.base.subspace().basis().row(i);
                for j in 0..n {
                    v[j] += ci * &u[j];
                }
            }
            rows.push(v);
        }
        Subspace::span(n, rows)
    }

    /// Direction of the tangent line in Plücker coordinates: the sum over
    /// basis slots of the wedge with one row replaced by its image.
    pub fn direction(&self) -> MultiVector {
        wedge_direction(&self.base, &self.map)
    }

    /// Point of the tangent line at parameter `λ`; `λ = 0` is the base point.
    pub fn tangent_line_points(&self, lambda: &Rat) -> MultiVector {
        self.base.plucker().add(&self.direction().scale(lambda))
    }
}

/// Plücker direction for an arbitrary image matrix over the echelon basis of
/// the base plane, without the nonzero-rank requirement of the tangent type:
/// the sum over slots of the wedge with one row replaced.
pub fn wedge_direction(base: &GrassmannPoint, images: &Matrix) -> MultiVector {
    let k = base.k();
    let n = base.ambient();
    assert_eq!((images.row_count(), images.col_count()), (k, n), "image matrix shape");
    let basis = base.subspace().basis();
    let mut dir = MultiVector::zero(n, k);
    for slot in 0..k {
        let mut term = MultiVector::scalar(n, num_traits::One::one());
        for i in 0..k {
            let row = if i == slot { images.row(i) } else { basis.row(i) };
            term = term
                .wedge(&MultiVector::from_vector(row))
                .expect("k <= n so the wedge exists");
        }
        dir = dir.add(&term);
    }
    dir
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{classify_orbit, OrbitClass};
    use crate::linalg::unit_vector;
    use crate::rat::{rat, ratio};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    fn coord_plane(n: usize, idx: &[usize]) -> GrassmannPoint {
        let rows = idx.iter().map(|&i| unit_vector(n, i)).collect();
        GrassmannPoint::from_rows(n, rows)
    }

    #[test]
    fn plucker_of_coordinate_and_skew_planes() {
        let p = coord_plane(4, &[0, 1]);
        assert_eq!(p.plucker(), MultiVector::blade(4, &[0, 1]));

        let q = GrassmannPoint::from_rows(4, vec![v(&[1, 1, 0, 0]), v(&[0, 0, 1, 0])]);
        let expect = MultiVector::blade(4, &[0, 2]).add(&MultiVector::blade(4, &[1, 2]));
        assert_eq!(q.plucker(), expect);
    }

    #[test]
    fn plucker_round_trips_through_kernel_of_wedge() {
        let p = GrassmannPoint::from_rows(
            5,
            vec![v(&[1, 2, 3, 0, 1]), v(&[0, 1, 1, 1, 0]), v(&[2, 0, 0, 1, 1])],
        );
        assert_eq!(&p.plucker().kernel_of_wedge(), p.subspace());
    }

    #[test]
    fn hamming_distances() {
        let p = coord_plane(4, &[0, 1]);
        assert_eq!(hamming_distance(&p, &p), 0);
        assert_eq!(hamming_distance(&p, &coord_plane(4, &[0, 2])), 1);
        assert_eq!(hamming_distance(&p, &coord_plane(4, &[2, 3])), 2);
    }

    #[test]
    fn secant_line_between_skew_planes() {
        let p = coord_plane(4, &[0, 1]);
        let q = coord_plane(4, &[2, 3]);
        let line = secant_line(&p, &q).unwrap();
        assert_eq!(line.dim(), 2);
        let mid = p.plucker().add(&q.plucker());
        assert!(line.contains_vector(&mid.to_dense()));
        assert_eq!(mid.two_vector_rank().unwrap(), 4);
        assert!(secant_line(&p, &p).is_err());
    }

    #[test]
    fn distance_one_lines_stay_on_the_grassmannian() {
        let p = coord_plane(4, &[0, 1]);
        let q = coord_plane(4, &[0, 2]);
        for t in [1i64, 2, 3, -1, 5] {
            let pt = p.plucker().add(&q.plucker().scale(&rat(t)));
            assert!(pt.is_decomposable(), "pencil member at t={t}");
        }
        // at distance 2 only the endpoints are decomposable
        let r = coord_plane(4, &[2, 3]);
        for t in [1i64, 2, 3, -1, 5] {
            let pt = p.plucker().add(&r.plucker().scale(&rat(t)));
            assert!(!pt.is_decomposable(), "secant interior at t={t}");
        }
    }

    #[test]
    fn line_flag_recovers_the_pencil() {
        let p = coord_plane(4, &[0, 1]);
        let q = coord_plane(4, &[0, 2]);
        let line = secant_line(&p, &q).unwrap();
        let flag = line_flag(4, 2, &line).unwrap();
        assert_eq!(flag.inner(), &Subspace::span(4, vec![unit_vector(4, 0)]));
        assert_eq!(
            flag.outer(),
            &Subspace::span(4, vec![unit_vector(4, 0), unit_vector(4, 1), unit_vector(4, 2)])
        );
        for (c1, c2) in [(1i64, 0), (0, 1), (1, 1), (2, -3), (5, 7)] {
            let m = flag.member(&rat(c1), &rat(c2)).unwrap();
            assert!(m.plucker().is_decomposable());
            assert!(flag.outer().contains(m.subspace()));
            assert!(m.subspace().contains(flag.inner()));
        }
        assert!(flag.member(&rat(0), &rat(0)).is_err());

        let far = secant_line(&p, &coord_plane(4, &[2, 3])).unwrap();
        assert!(matches!(line_flag(4, 2, &far), Err(Error::NotALine(_))));
    }

    #[test]
    fn tangent_line_rank_one_and_two() {
        // rank 1: base {e0,e1}, e1 ↦ e2
        let base = coord_plane(4, &[0, 1]);
        let mut images = Matrix::zeros(2, 4);
        images[(1, 2)] = rat(1);
        let t = GrTangentVector::new(base.clone(), &images).unwrap();
        assert_eq!(t.rank(), 1);
        let pt = t.tangent_line_points(&rat(1));
        let expect = MultiVector::blade(4, &[0, 1]).add(&MultiVector::blade(4, &[0, 2]));
        assert_eq!(pt, expect);
        assert!(pt.is_decomposable());
        assert_eq!(t.tangent_line_points(&rat(0)), base.plucker());

        // rank 2: e0 ↦ e2, e1 ↦ e3 gives e0∧e1 + (e2∧e1 + e0∧e3)
        let mut im2 = Matrix::zeros(2, 4);
        im2[(0, 2)] = rat(1);
        im2[(1, 3)] = rat(1);
        let t2 = GrTangentVector::new(base.clone(), &im2).unwrap();
        assert_eq!(t2.rank(), 2);
        let pt2 = t2.tangent_line_points(&rat(1));
        let dir = MultiVector::blade(4, &[2])
            .wedge(&MultiVector::blade(4, &[1]))
            .unwrap()
            .add(&MultiVector::blade(4, &[0, 3]));
        assert_eq!(pt2, base.plucker().add(&dir));
        assert!(!pt2.is_decomposable());
    }

    #[test]
    fn tangent_points_classify_by_rank() {
        let base = coord_plane(6, &[0, 1, 2]);
        let mut rank1 = Matrix::zeros(3, 6);
        rank1[(2, 3)] = rat(1);
        let t1 = GrTangentVector::new(base.clone(), &rank1).unwrap();
        assert_eq!(
            classify_orbit(&t1.tangent_line_points(&ratio(1, 2))).unwrap(),
            OrbitClass::OnGrassmannian(3)
        );

        let mut rank2 = Matrix::zeros(3, 6);
        rank2[(1, 3)] = rat(1);
        rank2[(2, 4)] = rat(1);
        let t2 = GrTangentVector::new(base.clone(), &rank2).unwrap();
        let pt = t2.tangent_line_points(&rat(1));
        assert_eq!(classify_orbit(&pt).unwrap(), OrbitClass::Sigma2Theta2(5));
        // the wedge kernel of any non-base point is the kernel of the map
        assert_eq!(pt.kernel_of_wedge(), t2.kernel_in_base());
        assert_eq!(t2.kernel_in_base().dim(), 1);
        // support is the base plane plus the image
        let support = pt.support();
        assert_eq!(support.dim(), 5);
        for i in 0..5 {
            assert!(support.contains_vector(&unit_vector(6, i)));
        }
    }

    #[test]
    fn zero_tangent_vector_is_rejected() {
        let base = coord_plane(4, &[0, 1]);
        // images inside the base plane reduce to zero mod the base
        let mut images = Matrix::zeros(2, 4);
        images[(0, 1)] = rat(3);
        assert!(GrTangentVector::new(base, &images).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_plane(n: usize, k: usize) -> impl Strategy<Value = Option<GrassmannPoint>> {
            proptest::collection::vec(-3i64..=3, n * k).prop_map(move |xs| {
                let rows: Vec<Vec<Rat>> =
                    xs.chunks(n).map(|c| c.iter().map(|&x| rat(x)).collect()).collect();
                let s = Subspace::span(n, rows);
                (s.dim() == k).then(|| GrassmannPoint::new(s))
            })
        }

        proptest! {
            #[test]
            fn plucker_round_trip(p in arb_plane(5, 2)) {
                if let Some(p) = p {
                    prop_assert_eq!(&p.plucker().kernel_of_wedge(), p.subspace());
                }
            }

            #[test]
            fn distance_is_a_metric(
                a in arb_plane(5, 2), b in arb_plane(5, 2), c in arb_plane(5, 2)
            ) {
                if let (Some(a), Some(b), Some(c)) = (a, b, c) {
                    let ab = hamming_distance(&a, &b);
                    let bc = hamming_distance(&b, &c);
                    let ac = hamming_distance(&a, &c);
                    prop_assert_eq!(ab, hamming_distance(&b, &a));
                    prop_assert_eq!(ab == 0, a.subspace() == b.subspace());
                    prop_assert!(ac <= ab + bc, "triangle inequality: {} > {} + {}", ac, ab, bc);
                }
            }
        }
    }
}
